// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.

#include "http_api.hpp"

#include <provchain/demo.hpp>
#include <provchain/gateway.hpp>
#include <provchain/json_codec.hpp>

#include <CLI11.hpp>
#include <httplib.h>

#include <csignal>
#include <cstdlib>
#include <iostream>

namespace
{
using nlohmann::json;
using namespace provchain;

constexpr int exit_rejected = 2;

struct Options
{
    std::string log;
    std::string cost_table;
    std::optional<std::uint64_t> timestamp;
    std::string caller;
};

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;)
    {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos)
            return out;
        start = pos + 1;
    }
}

ServiceConfig config_from(const Options& opts, bool require_log)
{
    ServiceConfig config;
    if (!opts.log.empty())
        config.log_path = opts.log;
    else if (const char* env = std::getenv("PROVCHAIN_LOG"); env && *env)
        config.log_path = env;
    if (require_log && !config.log_path)
        throw std::runtime_error{"no log: pass --log or set PROVCHAIN_LOG"};
    if (!opts.cost_table.empty())
        config.gas.costs = load_cost_table(opts.cost_table);
    return config;
}

void print(const json& j)
{
    std::cout << j.dump(2) << '\n';
}

int submit(const Options& opts, std::string_view op, json body)
{
    Service service{config_from(opts, true)};
    body["caller"] = opts.caller;
    if (opts.timestamp)
        body["timestamp"] = *opts.timestamp;
    const auto result = service.submit(op, body);
    print(result);
    return result.at("status") == "accepted" ? 0 : exit_rejected;
}

int serve(const Options& opts, const std::string& bind)
{
    Service service{config_from(opts, false)};
    httplib::Server server;
    http::mount(server, service);
    const auto [host, port] = http::parse_bind(bind);
    std::cerr << "provchain gateway listening on " << host << ":" << port << '\n';
    if (!server.listen(host, port))
    {
        std::cerr << "error: cannot bind " << bind << '\n';
        return 1;
    }
    return 0;
}
}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"provchain: supply chain traceability ledger"};
    app.require_subcommand(1);

    Options opts;
    app.add_option("--log", opts.log, "Transaction log (.provlog); defaults to $PROVCHAIN_LOG");
    app.add_option("--cost-table", opts.cost_table, "JSON file overriding gas constants");

    const auto writer = [&](const std::string& name, const std::string& help) {
        auto* cmd = app.add_subcommand(name, help);
        cmd->add_option("--caller", opts.caller, "Declared caller address")->required();
        cmd->add_option("--timestamp", opts.timestamp, "Transaction time in seconds");
        return cmd;
    };

    std::function<int()> action;

    // writes
    std::string name, unit, contract, batch, to, certificate, token;
    std::vector<std::string> recipe, draws, batch_list;
    std::vector<std::uint64_t> parts;
    std::uint64_t amount = 0;

    auto* deploy_token = writer("deploy-token", "Deploy a token contract");
    deploy_token->add_option("--name", name)->required();
    deploy_token->add_option("--unit", unit);
    deploy_token->add_option("--input", recipe, "KIND:SOURCE:AMOUNT, KIND is token|certificate");
    deploy_token->callback([&] {
        action = [&] {
            json r = json::array();
            for (const auto& spec : recipe)
            {
                const auto f = split(spec, ':');
                if (f.size() != 3 || (f[0] != "token" && f[0] != "certificate"))
                    throw CLI::ValidationError{"--input", "expected token|certificate:ADDRESS:AMOUNT"};
                r.push_back({{"kind", f[0] == "token" ? "SpecificToken" : "CertifiedBy"},
                             {"source", f[1]},
                             {"amount", std::stoull(f[2])}});
            }
            return submit(opts, op::deploy_token, {{"name", name}, {"unit", unit}, {"recipe", r}});
        };
    });

    auto* deploy_cert = writer("deploy-certificate", "Deploy a certificate contract");
    deploy_cert->add_option("--name", name)->required();
    deploy_cert->callback([&] {
        action = [&] { return submit(opts, op::deploy_certificate, {{"name", name}}); };
    });

    for (const auto& [verb, operation] :
         {std::pair{"certify", op::certify}, std::pair{"revoke", op::revoke}})
    {
        auto* cmd = writer(verb, std::string{"Certificate "} + verb);
        cmd->add_option("--certificate", certificate)->required();
        cmd->add_option("--token", token)->required();
        cmd->callback([&, operation = operation] {
            action = [&, operation] {
                return submit(opts, operation, {{"certificate", certificate}, {"token", token}});
            };
        });
    }

    auto* add_batch = writer("add-batch", "Create a batch, consuming recipe inputs");
    add_batch->add_option("--contract", contract)->required();
    add_batch->add_option("--amount", amount)->required();
    add_batch->add_option("--draw", draws, "RECIPE_INDEX:CONTRACT:BATCH:AMOUNT");
    add_batch->callback([&] {
        action = [&] {
            std::map<std::uint64_t, json> by_index;
            for (const auto& spec : draws)
            {
                const auto f = split(spec, ':');
                if (f.size() != 4)
                    throw CLI::ValidationError{"--draw", "expected INDEX:CONTRACT:BATCH:AMOUNT"};
                by_index[std::stoull(f[0])].push_back(
                    {{"contract", f[1]}, {"batch", f[2]}, {"amount", std::stoull(f[3])}});
            }
            json inputs = json::array();
            for (auto& [index, d] : by_index)
                inputs.push_back({{"recipe_index", index}, {"draws", d}});
            return submit(opts, op::add_batch,
                          {{"contract", contract}, {"amount", amount}, {"inputs", inputs}});
        };
    });

    auto* split_cmd = writer("split", "Split a batch into parts");
    split_cmd->add_option("--contract", contract)->required();
    split_cmd->add_option("--batch", batch)->required();
    split_cmd->add_option("--parts", parts)->required();
    split_cmd->callback([&] {
        action = [&] {
            return submit(opts, op::split_batch,
                          {{"contract", contract}, {"batch", batch}, {"parts", parts}});
        };
    });

    auto* merge_cmd = writer("merge", "Merge batches of one contract");
    merge_cmd->add_option("--contract", contract)->required();
    merge_cmd->add_option("--batches", batch_list)->required();
    merge_cmd->callback([&] {
        action = [&] {
            return submit(opts, op::merge_batch, {{"contract", contract}, {"batches", batch_list}});
        };
    });

    auto* transfer_cmd = writer("transfer", "Transfer a batch");
    transfer_cmd->add_option("--contract", contract)->required();
    transfer_cmd->add_option("--batch", batch)->required();
    transfer_cmd->add_option("--to", to)->required();
    transfer_cmd->callback([&] {
        action = [&] {
            return submit(opts, op::transfer_batch,
                          {{"contract", contract}, {"batch", batch}, {"to", to}});
        };
    });

    auto* consume_cmd = writer("consume", "Consume units of a batch");
    consume_cmd->add_option("--contract", contract)->required();
    consume_cmd->add_option("--batch", batch)->required();
    consume_cmd->add_option("--amount", amount)->required();
    consume_cmd->callback([&] {
        action = [&] {
            return submit(opts, op::consume_batch,
                          {{"contract", contract}, {"batch", batch}, {"amount", amount}});
        };
    });

    // reads
    std::string owner;
    auto* balances = app.add_subcommand("balances", "Live batches and balances of an owner");
    balances->add_option("owner", owner)->required();
    balances->callback([&] {
        action = [&] {
            print(Service{config_from(opts, false)}.balances(Address::from_hex(owner)));
            return 0;
        };
    });

    for (const auto& [verb, member] : {std::pair{"provenance", &Service::provenance},
                                       std::pair{"track", &Service::track},
                                       std::pair{"custody", &Service::custody}})
    {
        auto* cmd = app.add_subcommand(verb, std::string{"Batch "} + verb);
        cmd->add_option("contract", contract)->required();
        cmd->add_option("batch", batch)->required();
        cmd->callback([&, member = member] {
            action = [&, member] {
                Service service{config_from(opts, false)};
                print((service.*member)(Address::from_hex(contract), BatchId::from_hex(batch)));
                return 0;
            };
        });
    }

    std::string kind, recipient;
    std::vector<std::string> topics;
    std::optional<std::uint64_t> from, until;
    auto* events = app.add_subcommand("events", "Query the event log");
    events->add_option("--kind", kind);
    events->add_option("--topic", topics, "POSITION:WORD (64 hex digits)");
    events->add_option("--recipient", recipient);
    events->add_option("--from", from);
    events->add_option("--to", until);
    events->callback([&] {
        action = [&] {
            EventFilter f;
            if (!kind.empty())
            {
                f.kind = parse_event_kind(kind);
                if (!f.kind)
                    throw CLI::ValidationError{"--kind", "unknown event kind"};
            }
            for (const auto& spec : topics)
            {
                const auto fields = split(spec, ':');
                const auto pos = std::stoul(fields.at(0));
                if (fields.size() != 2 || pos >= max_topics)
                    throw CLI::ValidationError{"--topic", "expected POSITION:WORD"};
                f.topics[pos] = Word32::from_hex(fields[1]);
            }
            if (!recipient.empty())
                f.topics[2] = address_word(Address::from_hex(recipient));
            f.from_index = from.value_or(0);
            f.to_index = until;
            print(Service{config_from(opts, false)}.events(f));
            return 0;
        };
    });

    std::map<std::string, std::string> gas_query;
    std::string gas_op, strategy, mode;
    std::optional<std::uint64_t> inputs, cert_checks, nodes, edges;
    auto* gas_cmd = app.add_subcommand("gas-estimate", "Estimate gas of an operation");
    gas_cmd->add_option("--op", gas_op, "deploy | add_batch | sourcing_tree")->required();
    gas_cmd->add_option("--inputs", inputs);
    gas_cmd->add_option("--strategy", strategy, "Uint256 | Uint32Packed");
    gas_cmd->add_option("--mode", mode, "EmitEvents | StoreInputs");
    gas_cmd->add_option("--cert-checks", cert_checks);
    gas_cmd->add_option("--nodes", nodes);
    gas_cmd->add_option("--edges", edges);
    gas_cmd->callback([&] {
        action = [&] {
            gas_query["op"] = gas_op;
            if (inputs)
                gas_query["inputs"] = std::to_string(*inputs);
            if (!strategy.empty())
                gas_query["strategy"] = strategy;
            if (!mode.empty())
                gas_query["mode"] = mode;
            if (cert_checks)
                gas_query["cert_checks"] = std::to_string(*cert_checks);
            if (nodes)
                gas_query["nodes"] = std::to_string(*nodes);
            if (edges)
                gas_query["edges"] = std::to_string(*edges);
            ServiceConfig config;
            if (!opts.cost_table.empty())
                config.gas.costs = load_cost_table(opts.cost_table);
            print(Service{config}.gas_estimate(gas_query));
            return 0;
        };
    });

    app.add_subcommand("digest", "Print the state digest")->callback([&] {
        action = [&] {
            std::cout << Service{config_from(opts, false)}.digest_hex() << '\n';
            return 0;
        };
    });
    app.add_subcommand("participants", "List known participants")->callback([&] {
        action = [&] {
            print(Service{config_from(opts, false)}.participants());
            return 0;
        };
    });
    app.add_subcommand("contracts", "List deployed contracts")->callback([&] {
        action = [&] {
            print(Service{config_from(opts, false)}.contracts());
            return 0;
        };
    });

    app.add_subcommand("demo", "Run the wood/glue scenario on an empty ledger")->callback([&] {
        action = [&] {
            Service service{config_from(opts, false)};
            print(run_demo(service).to_json());
            return 0;
        };
    });

    std::string replay_path;
    auto* replay_cmd = app.add_subcommand("replay", "Replay a log and verify every digest");
    replay_cmd->add_option("log", replay_path)->required();
    replay_cmd->callback([&] {
        action = [&] {
            GasProfile gas;
            if (!opts.cost_table.empty())
                gas.costs = load_cost_table(opts.cost_table);
            const auto result = replay_file(replay_path, gas);
            print({{"records", result.digests.size()}, {"digest", to_hex(result.digest)}});
            return 0;
        };
    });

    std::string out_dir;
    auto* export_cmd = app.add_subcommand("export-gas", "Write gas cost curves as CSV");
    export_cmd->add_option("dir", out_dir)->required();
    export_cmd->callback([&] {
        action = [&] {
            gas::CostTable costs;
            if (!opts.cost_table.empty())
                costs = load_cost_table(opts.cost_table);
            for (const auto& p : export_gas_figures(out_dir, costs))
                std::cout << p.string() << '\n';
            return 0;
        };
    });

    std::string bind = "127.0.0.1:8545";
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP/JSON gateway");
    serve_cmd->add_option("--bind", bind, "host:port");
    serve_cmd->callback([&] { action = [&] { return serve(opts, bind); }; });

    CLI11_PARSE(app, argc, argv);

    try
    {
        return action();
    }
    catch (const ApiError& e)
    {
        std::cerr << "error: " << e.code << ": " << e.message << '\n';
        print(e.body());
        return 1;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
