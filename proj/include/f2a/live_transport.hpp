#pragma once

// OpenAI-compatible chat-completions client. The including TU may define
// CPPHTTPLIB_OPENSSL_SUPPORT (and link ssl/crypto) to reach https endpoints.

#include <memory>
#include <string>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "f2a/errors.hpp"
#include "f2a/transport.hpp"

namespace f2a {

class LiveTransport : public Transport {
public:
    LiveTransport(std::string base_url, std::string api_key, int timeout_seconds = 60)
        : api_key_(std::move(api_key)), timeout_seconds_(timeout_seconds) {
        // split "scheme://host[:port]/prefix" into client target and path prefix
        std::string url = std::move(base_url);
        std::size_t scheme = url.find("://");
        std::size_t path_start = scheme == std::string::npos ? url.find('/')
                                                             : url.find('/', scheme + 3);
        if (path_start == std::string::npos) {
            host_ = url;
        } else {
            host_ = url.substr(0, path_start);
            path_prefix_ = url.substr(path_start);
            while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
        }
    }

    std::string send(const ChatRequest& request) override {
        nlohmann::json body;
        body["model"] = request.model;
        body["messages"] = nlohmann::json::array();
        for (const auto& m : request.messages)
            body["messages"].push_back({{"role", role_name(m.role)}, {"content", m.content}});
        body["temperature"] = request.temperature;

        httplib::Client client(host_);
        client.set_connection_timeout(timeout_seconds_, 0);
        client.set_read_timeout(timeout_seconds_, 0);
        httplib::Headers headers;
        if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

        auto res = client.Post(path_prefix_ + "/chat/completions", headers, body.dump(),
                               "application/json");
        if (!res) throw TransportTimeout(host_ + " (" + httplib::to_string(res.error()) + ")");
        if (res->status == 429) throw RateLimited();
        if (res->status != 200) throw EndpointError(res->status, res->body);

        try {
            nlohmann::json reply = nlohmann::json::parse(res->body);
            return reply.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const std::exception& e) {
            throw EndpointError(res->status, std::string("malformed reply: ") + e.what());
        }
    }

private:
    std::string host_;
    std::string path_prefix_;
    std::string api_key_;
    int timeout_seconds_;
};

} // namespace f2a
