// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.

#include "http_api.hpp"

#include <provchain/events.hpp>
#include <provchain/json_codec.hpp>

#include <httplib.h>

namespace provchain::http
{
namespace
{
using nlohmann::json;

void reply(httplib::Response& res, int status, const json& body)
{
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

template <class F>
httplib::Server::Handler guarded(F f)
{
    return [f](const httplib::Request& req, httplib::Response& res) {
        try
        {
            f(req, res);
        }
        catch (const ApiError& e)
        {
            reply(res, e.status, e.body());
        }
        catch (const std::invalid_argument& e)
        {
            reply(res, 400, {{"code", "BadRequest"}, {"message", e.what()}});
        }
        catch (const std::out_of_range& e)
        {
            reply(res, 400, {{"code", "BadRequest"}, {"message", e.what()}});
        }
        catch (const StorageError& e)
        {
            reply(res, 503, {{"code", "StorageFailure"}, {"message", e.what()}});
        }
        catch (const std::exception& e)
        {
            reply(res, 500, {{"code", "InternalError"}, {"message", e.what()}});
        }
    };
}

httplib::Server::Handler write(Service& service, std::string_view op)
{
    return guarded([&service, op](const httplib::Request& req, httplib::Response& res) {
        json body;
        try
        {
            body = json::parse(req.body);
        }
        catch (const json::parse_error& e)
        {
            throw ApiError{400, "BadRequest", e.what()};
        }
        auto result = service.submit(op, body);
        const int status = result.at("status") == "accepted"
                               ? 200
                               : http_status(*parse_error_code(result.at("code").get<std::string>()));
        reply(res, status, result);
    });
}

std::map<std::string, std::string> query_map(const httplib::Request& req)
{
    std::map<std::string, std::string> q;
    for (const auto& [k, v] : req.params)
        q[k] = v;
    return q;
}

EventFilter event_filter(const httplib::Request& req)
{
    EventFilter f;
    if (req.has_param("kind"))
    {
        f.kind = parse_event_kind(req.get_param_value("kind"));
        if (!f.kind)
            throw ApiError{400, "BadRequest", "unknown event kind"};
    }
    for (std::size_t i = 0; i < max_topics; ++i)
    {
        const auto key = "topic" + std::to_string(i);
        if (req.has_param(key.c_str()))
            f.topics[i] = Word32::from_hex(req.get_param_value(key.c_str()));
    }
    if (req.has_param("recipient"))
        f.topics[2] = address_word(Address::from_hex(req.get_param_value("recipient")));
    if (req.has_param("from"))
        f.from_index = std::stoull(req.get_param_value("from"));
    if (req.has_param("to"))
        f.to_index = std::stoull(req.get_param_value("to"));
    return f;
}
}  // namespace

void mount(httplib::Server& server, Service& service)
{
    server.Post("/contracts/token", write(service, op::deploy_token));
    server.Post("/contracts/certificate", write(service, op::deploy_certificate));
    server.Post("/certify", write(service, op::certify));
    server.Post("/revoke", write(service, op::revoke));
    server.Post("/batches", write(service, op::add_batch));
    server.Post("/batches/split", write(service, op::split_batch));
    server.Post("/batches/merge", write(service, op::merge_batch));
    server.Post("/batches/transfer", write(service, op::transfer_batch));
    server.Post("/batches/consume", write(service, op::consume_batch));

    server.Get(R"(/balances/([0-9a-fA-Fx]+))",
               guarded([&service](const httplib::Request& req, httplib::Response& res) {
                   reply(res, 200, service.balances(Address::from_hex(req.matches[1].str())));
               }));

    const auto batch_route = [&](const char* prefix, auto member) {
        server.Get(std::string{prefix} + R"(/([0-9a-fA-Fx]+)/([0-9a-fA-Fx]+))",
                   guarded([&service, member](const httplib::Request& req, httplib::Response& res) {
                       reply(res, 200,
                             (service.*member)(Address::from_hex(req.matches[1].str()),
                                               BatchId::from_hex(req.matches[2].str())));
                   }));
    };
    batch_route("/provenance", &Service::provenance);
    batch_route("/track", &Service::track);
    batch_route("/custody", &Service::custody);

    server.Get("/events", guarded([&service](const httplib::Request& req, httplib::Response& res) {
                   reply(res, 200, service.events(event_filter(req)));
               }));
    server.Get("/gas/estimate",
               guarded([&service](const httplib::Request& req, httplib::Response& res) {
                   reply(res, 200, service.gas_estimate(query_map(req)));
               }));
    server.Get("/state/digest",
               guarded([&service](const httplib::Request&, httplib::Response& res) {
                   reply(res, 200, {{"digest", service.digest_hex()}});
               }));
    server.Get("/participants",
               guarded([&service](const httplib::Request&, httplib::Response& res) {
                   reply(res, 200, service.participants());
               }));
    server.Get("/contracts", guarded([&service](const httplib::Request&, httplib::Response& res) {
                   reply(res, 200, service.contracts());
               }));
}

std::pair<std::string, int> parse_bind(const std::string& bind)
{
    const auto colon = bind.rfind(':');
    const auto host = colon == std::string::npos ? std::string{"127.0.0.1"} : bind.substr(0, colon);
    const auto port = colon == std::string::npos ? bind : bind.substr(colon + 1);
    std::size_t used = 0;
    const int p = std::stoi(port, &used);
    if (used != port.size() || p < 0 || p > 65535)
        throw std::invalid_argument{"invalid port in --bind '" + bind + "'"};
    return {host.empty() ? "0.0.0.0" : host, p};
}

}  // namespace provchain::http
