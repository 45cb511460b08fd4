// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <provchain/gateway.hpp>

#include <string>

namespace httplib
{
class Server;
}

namespace provchain::http
{
/// Registers every gateway endpoint on `server`, backed by `service`.
void mount(httplib::Server& server, Service& service);

/// Splits "host:port"; a bare port binds 127.0.0.1.
std::pair<std::string, int> parse_bind(const std::string& bind);

}  // namespace provchain::http
