#pragma once

#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "f2a/datafile.hpp"
#include "f2a/errors.hpp"

namespace f2a {

enum class Role { System, User, Assistant };

inline std::string role_name(Role r) {
    switch (r) {
        case Role::System: return "system";
        case Role::User: return "user";
        case Role::Assistant: return "assistant";
    }
    throw F2aError("invalid role");
}

inline Role parse_role(const std::string& s) {
    if (s == "system") return Role::System;
    if (s == "user") return Role::User;
    if (s == "assistant") return Role::Assistant;
    throw F2aError("unknown role '" + s + "'");
}

struct ChatMessage {
    Role role;
    std::string content;

    bool operator==(const ChatMessage&) const = default;
};

/// Ordered conversation; roles must alternate user/assistant after any
/// leading system messages.
struct ChatTranscript {
    std::vector<ChatMessage> messages;

    bool operator==(const ChatTranscript&) const = default;

    void validate() const {
        std::size_t i = 0;
        while (i < messages.size() && messages[i].role == Role::System) ++i;
        Role expected = Role::User;
        for (; i < messages.size(); ++i) {
            if (messages[i].role != expected)
                throw F2aError("transcript roles must alternate user/assistant");
            expected = expected == Role::User ? Role::Assistant : Role::User;
        }
    }

    const std::string* last_assistant_reply() const {
        for (auto it = messages.rbegin(); it != messages.rend(); ++it)
            if (it->role == Role::Assistant) return &it->content;
        return nullptr;
    }
};

/// One request to a chat-completion endpoint. `trial_key` is artifact-side
/// context for replay transports; it is never put on the wire.
struct ChatRequest {
    std::string model;
    std::vector<ChatMessage> messages;
    double temperature = 0.0;
    std::string trial_key;
};

/// Delivers chat messages to a target. Implementations must be safely
/// shareable across concurrent trials.
class Transport {
public:
    virtual ~Transport() = default;
    /// Returns the assistant reply, or throws TransportTimeout / RateLimited /
    /// EndpointError.
    virtual std::string send(const ChatRequest& request) = 0;
};

/// Scripted transport for tests and the CLI's offline mode.
class MockTransport : public Transport {
public:
    using Handler = std::function<std::string(const ChatRequest&)>;

    explicit MockTransport(Handler handler) : handler_(std::move(handler)) {}

    static std::shared_ptr<MockTransport> always(std::string reply) {
        return std::make_shared<MockTransport>([reply = std::move(reply)](const ChatRequest&) {
            return reply;
        });
    }

    std::string send(const ChatRequest& request) override {
        std::lock_guard<std::mutex> lock(mu_);
        ++calls_;
        return handler_(request);
    }

    int calls() const { return calls_; }

private:
    Handler handler_;
    std::mutex mu_;
    int calls_ = 0;
};

/// Replays recorded replies keyed by trial key ("model|category|condition").
class ReplayTransport : public Transport {
public:
    explicit ReplayTransport(std::map<std::string, std::string> replies)
        : replies_(std::move(replies)) {}

    static std::shared_ptr<ReplayTransport> from_file(const std::string& path) {
        nlohmann::json doc = nlohmann::json::parse(read_text_file(path));
        std::map<std::string, std::string> replies;
        for (const auto& [key, value] : doc.at("replies").items())
            replies[key] = value.get<std::string>();
        return std::make_shared<ReplayTransport>(std::move(replies));
    }

    std::string send(const ChatRequest& request) override {
        auto it = replies_.find(request.trial_key);
        if (it == replies_.end())
            throw EndpointError(404, "no recorded reply for trial '" + request.trial_key + "'");
        return it->second;
    }

private:
    std::map<std::string, std::string> replies_;
};

/// Reads the bearer token for a target: F2A_API_KEY_{NAME} wins over
/// F2A_API_KEY. NAME is the model name uppercased, with every
/// non-alphanumeric character mapped to '_'.
inline std::string api_key_for(const std::string& model_name) {
    std::string suffix;
    for (char c : model_name)
        suffix += std::isalnum(static_cast<unsigned char>(c))
                      ? static_cast<char>(std::toupper(static_cast<unsigned char>(c)))
                      : '_';
    if (const char* v = std::getenv(("F2A_API_KEY_" + suffix).c_str())) return v;
    if (const char* v = std::getenv("F2A_API_KEY")) return v;
    return "";
}

} // namespace f2a
