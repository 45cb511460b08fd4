// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <provchain/gateway.hpp>

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>

namespace provchain
{
/// The wood/glue supply chain: a forester and a glue plant supply a sawmill that produces
/// edge-glued wood from certified logs and one specific glue.
struct DemoCast
{
    Address forester;
    Address glue_plant;
    Address sawmill;
    Address certifier;

    static DemoCast standard();
};

struct DemoSummary
{
    DemoCast cast;
    Address logs;
    Address glue;
    Address certificate;
    Address edge_glued_wood;
    BatchId product;
    /// Rows of {participant, contract, balance}.
    nlohmann::json balances;
    nlohmann::json provenance;

    nlohmann::json to_json() const;
};

class DemoRefused : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

/// First timestamp used by the scenario; each step advances it by one minute.
inline constexpr std::uint64_t demo_epoch = 1'530'403'200;

/// Runs the scenario through the service's transaction loop. Requires an empty ledger and
/// throws DemoRefused otherwise.
DemoSummary run_demo(Service& service);

}  // namespace provchain
