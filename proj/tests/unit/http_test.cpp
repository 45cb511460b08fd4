// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.

#include "http_api.hpp"

#include <provchain/demo.hpp>

#include "scenario.hpp"

#include <gtest/gtest.h>
#include <httplib.h>

#include <thread>

using namespace provchain;
using nlohmann::json;
using provchain::testkit::filled_address;

namespace
{
class HttpTest : public ::testing::Test
{
protected:
    void SetUp() override
    {
        http::mount(server_, service_);
        port_ = server_.bind_to_any_port("127.0.0.1");
        ASSERT_GT(port_, 0);
        thread_ = std::thread{[this] { server_.listen_after_bind(); }};
        server_.wait_until_ready();
        client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
    }

    void TearDown() override
    {
        server_.stop();
        thread_.join();
    }

    std::pair<int, json> post(const std::string& path, const json& body)
    {
        const auto res = client_->Post(path, body.dump(), "application/json");
        EXPECT_TRUE(res) << path;
        return {res->status, json::parse(res->body)};
    }

    std::pair<int, json> get(const std::string& path)
    {
        const auto res = client_->Get(path);
        EXPECT_TRUE(res) << path;
        return {res->status, json::parse(res->body)};
    }

    Service service_{{}};
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
    std::unique_ptr<httplib::Client> client_;
};

const Address forester = filled_address(0x01);
const Address sawmill = filled_address(0x02);
const Address certifier = filled_address(0x03);
}  // namespace

TEST_F(HttpTest, full_workflow)
{
    auto [s1, logs] = post("/contracts/token", {{"caller", forester.hex()}, {"timestamp", 1}, {"name", "Logs"}, {"unit", "logs"}});
    ASSERT_EQ(s1, 200);
    const std::string logs_address = logs["ids"][0];

    auto [s2, cert] = post("/contracts/certificate", {{"caller", certifier.hex()}, {"timestamp", 2}, {"name", "FSC"}});
    ASSERT_EQ(s2, 200);
    const std::string cert_address = cert["ids"][0];

    EXPECT_EQ(post("/certify", {{"caller", forester.hex()}, {"timestamp", 3}, {"certificate", cert_address}, {"token", logs_address}}).first, 403);
    EXPECT_EQ(post("/certify", {{"caller", certifier.hex()}, {"timestamp", 3}, {"certificate", cert_address}, {"token", logs_address}}).first, 200);

    auto [s3, board] = post("/contracts/token", {{"caller", sawmill.hex()}, {"timestamp", 4}, {"name", "Board"}, {"unit", "u"},
                                                 {"recipe", json::array({{{"kind", "CertifiedBy"}, {"source", cert_address}, {"amount", 2}}})}});
    ASSERT_EQ(s3, 200);
    const std::string board_address = board["ids"][0];

    auto [s4, created] = post("/batches", {{"caller", forester.hex()}, {"timestamp", 5}, {"contract", logs_address}, {"amount", 30}});
    ASSERT_EQ(s4, 200);
    EXPECT_EQ(created["gas"]["total"], 92'756);
    const std::string batch = created["ids"][0];

    auto [s5, split] = post("/batches/split", {{"caller", forester.hex()}, {"timestamp", 6}, {"contract", logs_address}, {"batch", batch}, {"parts", {10, 20}}});
    ASSERT_EQ(s5, 200);
    ASSERT_EQ(split["ids"].size(), 2u);
    const std::string ten = split["ids"][0];
    const std::string twenty = split["ids"][1];

    EXPECT_EQ(post("/batches/split", {{"caller", forester.hex()}, {"timestamp", 6}, {"contract", logs_address}, {"batch", ten}, {"parts", {10}}}).first, 422);

    auto [s6, moved] = post("/batches/transfer", {{"caller", forester.hex()}, {"timestamp", 7}, {"contract", logs_address}, {"batch", ten}, {"to", sawmill.hex()}});
    ASSERT_EQ(s6, 200);

    auto [s7, product] = post("/batches", {{"caller", sawmill.hex()}, {"timestamp", 8}, {"contract", board_address}, {"amount", 2},
                                           {"inputs", json::array({{{"recipe_index", 0}, {"draws", json::array({{{"contract", logs_address}, {"batch", ten}, {"amount", 4}}})}}})}});
    ASSERT_EQ(s7, 200) << product.dump();
    const std::string product_id = product["ids"][0];

    auto [s8, consumed] = post("/batches/consume", {{"caller", sawmill.hex()}, {"timestamp", 9}, {"contract", logs_address}, {"batch", ten}, {"amount", 6}});
    ASSERT_EQ(s8, 200);
    EXPECT_EQ(post("/batches/consume", {{"caller", sawmill.hex()}, {"timestamp", 9}, {"contract", logs_address}, {"batch", ten}, {"amount", 1}}).first, 409);

    auto [s9, second] = post("/batches", {{"caller", forester.hex()}, {"timestamp", 10}, {"contract", logs_address}, {"amount", 5}});
    ASSERT_EQ(s9, 200);
    auto [s10, merged] = post("/batches/merge", {{"caller", forester.hex()}, {"timestamp", 11}, {"contract", logs_address}, {"batches", {twenty, second["ids"][0]}}});
    ASSERT_EQ(s10, 200);

    auto [s11, revoked] = post("/revoke", {{"caller", certifier.hex()}, {"timestamp", 12}, {"certificate", cert_address}, {"token", logs_address}});
    ASSERT_EQ(s11, 200);

    const auto [b1, forester_bal] = get("/balances/" + forester.hex());
    ASSERT_EQ(b1, 200);
    for (const auto& row : forester_bal["balances"])
        EXPECT_EQ(row["balance"], row["name"] == "Logs" ? 25 : 0);
    const auto [b2, sawmill_bal] = get("/balances/" + sawmill.hex());
    for (const auto& row : sawmill_bal["balances"])
        EXPECT_EQ(row["balance"], row["name"] == "Board" ? 2 : 0);

    const auto [p1, tree] = get("/provenance/" + board_address + "/" + product_id);
    ASSERT_EQ(p1, 200);
    EXPECT_EQ(tree["children"][0]["drawn"], 4);
    EXPECT_EQ(tree["children"][0]["node"]["batchId"], ten);
    EXPECT_EQ(tree["children"][0]["node"]["children"][0]["node"]["batchId"], batch);

    const auto [t1, down] = get("/track/" + logs_address + "/" + batch);
    ASSERT_EQ(t1, 200);
    EXPECT_EQ(down.size(), 4u);

    const auto [c1, custody] = get("/custody/" + logs_address + "/" + ten);
    ASSERT_EQ(c1, 200);
    EXPECT_GE(custody.size(), 2u);

    const auto [e1, transfers] = get("/events?kind=BatchTransferred&recipient=" + sawmill.hex());
    ASSERT_EQ(e1, 200);
    ASSERT_EQ(transfers.size(), 1u);
    EXPECT_EQ(transfers[0]["kind"], "BatchTransferred");
    EXPECT_EQ(get("/events?from=2&to=4").second.size(), 2u);
    EXPECT_EQ(get("/events").second.size(), service_.events({}).size());

    EXPECT_EQ(get("/state/digest").second["digest"], service_.digest_hex());
    EXPECT_EQ(get("/participants").second.size(), 3u);
    EXPECT_EQ(get("/contracts").second.size(), 3u);
}

TEST_F(HttpTest, errors)
{
    EXPECT_EQ(get("/provenance/" + forester.hex() + "/000000000000000000000000").first, 404);
    EXPECT_EQ(get("/balances/1234").first, 400);
    EXPECT_EQ(get("/events?kind=Nope").first, 400);
    EXPECT_EQ(get("/events?from=abc").first, 400);

    const auto res = client_->Post("/batches", "{broken", "application/json");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 400);
    EXPECT_EQ(json::parse(res->body)["code"], "BadRequest");

    EXPECT_EQ(post("/batches", {{"caller", forester.hex()}, {"contract", sawmill.hex()}, {"amount", 1}}).first, 404);
    EXPECT_EQ(post("/batches", {{"contract", sawmill.hex()}, {"amount", 1}}).first, 400);
}

TEST_F(HttpTest, gas_estimate)
{
    const auto [s, body] = get("/gas/estimate?op=add_batch&inputs=0&mode=EmitEvents");
    ASSERT_EQ(s, 200);
    EXPECT_EQ(body["total"], 92'756);
    EXPECT_EQ(get("/gas/estimate?op=sourcing_tree&nodes=7&edges=6").second["total"], 764'738);
    EXPECT_EQ(get("/gas/estimate?op=deploy&inputs=3").first, 200);
    EXPECT_EQ(get("/gas/estimate?op=fly").first, 400);
}

TEST_F(HttpTest, demo_over_http_reads)
{
    const auto summary = run_demo(service_);
    const auto [s, sawmill_bal] = get("/balances/" + summary.cast.sawmill.hex());
    ASSERT_EQ(s, 200);
    std::map<std::string, std::uint64_t> by_name;
    for (const auto& row : sawmill_bal["balances"])
        by_name[row["name"]] = row["balance"];
    EXPECT_EQ(by_name["Logs"], 9u);
    EXPECT_EQ(by_name["Glue"], 0u);
    EXPECT_EQ(by_name["EdgeGluedWood"], 1u);

    const auto [p, tree] = get("/provenance/" + summary.edge_glued_wood.hex() + "/" + summary.product.hex());
    ASSERT_EQ(p, 200);
    EXPECT_EQ(tree["children"].size(), 2u);
}

TEST(http, parse_bind)
{
    EXPECT_EQ(http::parse_bind("0.0.0.0:9000"), (std::pair<std::string, int>{"0.0.0.0", 9000}));
    EXPECT_EQ(http::parse_bind("9000").second, 9000);
    EXPECT_ANY_THROW(http::parse_bind("host:notaport"));
}
