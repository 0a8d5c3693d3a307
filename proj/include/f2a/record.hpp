#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "f2a/category.hpp"
#include "f2a/errors.hpp"
#include "f2a/transport.hpp"

namespace f2a {

enum class VerdictKind { Hit, Refused, Misunderstood, Error };

inline std::string verdict_kind_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::Hit: return "hit";
        case VerdictKind::Refused: return "refused";
        case VerdictKind::Misunderstood: return "misunderstood";
        case VerdictKind::Error: return "error";
    }
    throw F2aError("invalid verdict kind");
}

inline VerdictKind parse_verdict_kind(const std::string& s) {
    if (s == "hit") return VerdictKind::Hit;
    if (s == "refused") return VerdictKind::Refused;
    if (s == "misunderstood") return VerdictKind::Misunderstood;
    if (s == "error") return VerdictKind::Error;
    throw F2aError("unknown verdict kind '" + s + "'");
}

struct Verdict {
    VerdictKind kind;
    std::string rationale;

    bool operator==(const Verdict&) const = default;
};

enum class JudgeKind { LlmJudge, Heuristic };

inline std::string judge_kind_name(JudgeKind k) {
    return k == JudgeKind::LlmJudge ? "llm" : "heuristic";
}

inline JudgeKind parse_judge_kind(const std::string& s) {
    if (s == "llm") return JudgeKind::LlmJudge;
    if (s == "heuristic") return JudgeKind::Heuristic;
    throw F2aError("unknown judge kind '" + s + "'");
}

/// One campaign trial.
struct AttackRecord {
    std::string record_id;
    std::string timestamp; // UTC, ISO-8601
    std::string target_model;
    AttackCategory category = AttackCategory::Death;
    bool defense_enabled = false;
    std::string prompt_digest;
    ChatTranscript transcript;
    std::optional<Verdict> verdict;
    JudgeKind judge_kind = JudgeKind::Heuristic;

    bool operator==(const AttackRecord&) const = default;
};

inline std::string utc_timestamp_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// --- JSONL schema, versioned with "v" = 1 ---

inline nlohmann::json record_to_json(const AttackRecord& r) {
    nlohmann::json msgs = nlohmann::json::array();
    for (const auto& m : r.transcript.messages)
        msgs.push_back({{"role", role_name(m.role)}, {"content", m.content}});

    nlohmann::json j{{"v", 1},
                     {"record_id", r.record_id},
                     {"timestamp", r.timestamp},
                     {"target_model", r.target_model},
                     {"category", category_id(r.category)},
                     {"defense_enabled", r.defense_enabled},
                     {"prompt_digest", r.prompt_digest},
                     {"transcript", {{"messages", msgs}}},
                     {"judge_kind", judge_kind_name(r.judge_kind)}};
    if (r.verdict)
        j["verdict"] = {{"kind", verdict_kind_name(r.verdict->kind)},
                        {"rationale", r.verdict->rationale}};
    return j;
}

inline AttackRecord record_from_json(const nlohmann::json& j) {
    if (j.at("v").get<int>() != 1) throw F2aError("unsupported record schema version");
    AttackRecord r;
    r.record_id = j.at("record_id").get<std::string>();
    r.timestamp = j.at("timestamp").get<std::string>();
    r.target_model = j.at("target_model").get<std::string>();
    r.category = parse_category(j.at("category").get<std::string>());
    r.defense_enabled = j.at("defense_enabled").get<bool>();
    r.prompt_digest = j.at("prompt_digest").get<std::string>();
    for (const auto& m : j.at("transcript").at("messages"))
        r.transcript.messages.push_back(
            {parse_role(m.at("role").get<std::string>()), m.at("content").get<std::string>()});
    if (j.contains("verdict"))
        r.verdict = Verdict{parse_verdict_kind(j.at("verdict").at("kind").get<std::string>()),
                            j.at("verdict").at("rationale").get<std::string>()};
    r.judge_kind = parse_judge_kind(j.at("judge_kind").get<std::string>());
    return r;
}

inline std::string records_to_jsonl(const std::vector<AttackRecord>& records) {
    std::string out;
    for (const auto& r : records) out += record_to_json(r).dump() + "\n";
    return out;
}

inline std::vector<AttackRecord> records_from_jsonl(const std::string& jsonl) {
    std::vector<AttackRecord> records;
    std::istringstream in(jsonl);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            records.push_back(record_from_json(nlohmann::json::parse(line)));
        } catch (const std::exception& e) {
            throw F2aError("bad record at line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return records;
}

} // namespace f2a
