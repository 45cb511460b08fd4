// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.

#include <provchain/demo.hpp>
#include <provchain/keccak.hpp>

namespace provchain
{
namespace
{
using nlohmann::json;

Address named(std::string_view who)
{
    const auto h = keccak256(std::string{"provchain-demo:"} + std::string{who});
    return Address::from_span(std::span{h}.last<Address::size>());
}

class Script
{
public:
    explicit Script(Service& service) : service_{service} {}

    json run(std::string_view op, const Address& caller, json params)
    {
        params["caller"] = caller.hex();
        params["timestamp"] = demo_epoch + 60 * step_++;
        auto result = service_.submit(op, params);
        if (result.at("status") != "accepted")
            throw std::logic_error{"demo step " + std::string{op} + " rejected: " + result.dump()};
        return result;
    }

    Address deployed(std::string_view op, const Address& caller, json params)
    {
        return Address::from_hex(run(op, caller, std::move(params)).at("ids").at(0).get<std::string>());
    }

    BatchId created(const Address& caller, json params)
    {
        return BatchId::from_hex(
            run(op::add_batch, caller, std::move(params)).at("ids").at(0).get<std::string>());
    }

private:
    Service& service_;
    std::uint64_t step_ = 0;
};
}  // namespace

DemoCast DemoCast::standard()
{
    return {named("forester"), named("glue-plant"), named("sawmill"), named("certifier")};
}

json DemoSummary::to_json() const
{
    return {{"participants",
             {{"forester", cast.forester.hex()},
              {"gluePlant", cast.glue_plant.hex()},
              {"sawmill", cast.sawmill.hex()},
              {"certifier", cast.certifier.hex()}}},
            {"contracts",
             {{"logs", logs.hex()},
              {"glue", glue.hex()},
              {"certificate", certificate.hex()},
              {"edgeGluedWood", edge_glued_wood.hex()}}},
            {"product", product.hex()},
            {"balances", balances},
            {"provenance", provenance}};
}

DemoSummary run_demo(Service& service)
{
    if (service.read([](const Ledger& l) { return l.height(); }) != 0)
        throw DemoRefused{"the demo needs an empty ledger"};

    DemoSummary s;
    s.cast = DemoCast::standard();
    const auto& c = s.cast;
    Script script{service};

    // 1. resource suppliers set up their token contracts
    s.logs = script.deployed(op::deploy_token, c.forester, {{"name", "Logs"}, {"unit", "logs"}});
    s.glue = script.deployed(op::deploy_token, c.glue_plant, {{"name", "Glue"}, {"unit", "litres"}});

    // 2. the certifier approves the forester's logs
    s.certificate =
        script.deployed(op::deploy_certificate, c.certifier, {{"name", "FSC-Quality"}});
    script.run(op::certify, c.certifier,
               {{"certificate", s.certificate.hex()}, {"token", s.logs.hex()}});

    // 3. the sawmill requires certified logs and this specific glue
    s.edge_glued_wood = script.deployed(
        op::deploy_token, c.sawmill,
        {{"name", "EdgeGluedWood"},
         {"unit", "units"},
         {"recipe", json::array({
                        {{"kind", "CertifiedBy"}, {"source", s.certificate.hex()}, {"amount", 1}},
                        {{"kind", "SpecificToken"}, {"source", s.glue.hex()}, {"amount", 1}},
                    })}});

    // 4. resource batches are added without inputs
    script.created(c.forester, {{"contract", s.logs.hex()}, {"amount", 20}});
    const auto shipped_logs = script.created(c.forester, {{"contract", s.logs.hex()}, {"amount", 10}});
    script.created(c.glue_plant, {{"contract", s.glue.hex()}, {"amount", 59}});
    const auto shipped_glue = script.created(c.glue_plant, {{"contract", s.glue.hex()}, {"amount", 1}});

    // 5. shipments to the sawmill
    script.run(op::transfer_batch, c.forester,
               {{"contract", s.logs.hex()}, {"batch", shipped_logs.hex()}, {"to", c.sawmill.hex()}});
    script.run(op::transfer_batch, c.glue_plant,
               {{"contract", s.glue.hex()}, {"batch", shipped_glue.hex()}, {"to", c.sawmill.hex()}});

    // 6. one unit of edge-glued wood consumes one log and one unit of glue
    s.product = script.created(
        c.sawmill,
        {{"contract", s.edge_glued_wood.hex()},
         {"amount", 1},
         {"inputs",
          json::array({
              {{"recipe_index", 0},
               {"draws", json::array({{{"contract", s.logs.hex()},
                                       {"batch", shipped_logs.hex()},
                                       {"amount", 1}}})}},
              {{"recipe_index", 1},
               {"draws", json::array({{{"contract", s.glue.hex()},
                                       {"batch", shipped_glue.hex()},
                                       {"amount", 1}}})}},
          })}});

    const std::vector<std::pair<std::string, Address>> holders = {
        {"forester", c.forester}, {"gluePlant", c.glue_plant}, {"sawmill", c.sawmill}};
    const std::vector<std::pair<std::string, Address>> products = {
        {"Logs", s.logs}, {"Glue", s.glue}, {"EdgeGluedWood", s.edge_glued_wood}};
    s.balances = json::array();
    service.read([&](const Ledger& ledger) {
        for (const auto& [who, address] : holders)
            for (const auto& [name, token] : products)
                s.balances.push_back({{"participant", who},
                                      {"contract", name},
                                      {"balance", ledger.balance_of(address, token)}});
        return 0;
    });
    s.provenance = service.provenance(s.edge_glued_wood, s.product);
    return s;
}

}  // namespace provchain
