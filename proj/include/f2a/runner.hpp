#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "f2a/corpus.hpp"
#include "f2a/datafile.hpp"
#include "f2a/errors.hpp"
#include "f2a/guard.hpp"
#include "f2a/judge.hpp"
#include "f2a/record.hpp"
#include "f2a/scaffold.hpp"
#include "f2a/splitmix64.hpp"
#include "f2a/transport.hpp"

namespace f2a {

struct TargetRef {
    std::string name;
    std::string base_url;
};

struct RetryPolicy {
    int max_attempts = 3;
    int base_backoff_ms = 250;

    /// Exponential, non-decreasing: base * 2^(attempt-1).
    std::chrono::milliseconds backoff_for(int attempt) const {
        return std::chrono::milliseconds(static_cast<long long>(base_backoff_ms) << (attempt - 1));
    }
};

struct CampaignConfig {
    std::vector<TargetRef> targets;
    std::string corpus_path;
    bool without_defense = true;
    bool with_defense = true;
    std::uint64_t seed = 0;
    int max_concurrency = 4;
    RetryPolicy retry;
    std::string detector_name = "GPT-defender";
    std::string refusal_patterns_path;
    std::string fixtures_path; // replay transport only

    void validate() const {
        if (targets.empty()) throw F2aError("config needs at least one target");
        if (!without_defense && !with_defense)
            throw F2aError("config needs at least one condition");
        if (max_concurrency < 1) throw F2aError("max_concurrency must be >= 1");
        if (retry.max_attempts < 1) throw F2aError("retry.max_attempts must be >= 1");
    }
};

/// Reads the JSON campaign config; relative paths are resolved against the
/// config file's directory.
inline CampaignConfig load_campaign_config(const std::string& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_text_file(path));
    } catch (const std::exception& e) {
        throw F2aError("bad config: " + std::string(e.what()));
    }
    std::filesystem::path base = std::filesystem::path(path).parent_path();
    auto resolve = [&](const std::string& p) {
        if (p.empty()) return p;
        std::filesystem::path fp(p);
        return fp.is_absolute() ? p : (base / fp).string();
    };

    CampaignConfig cfg;
    try {
        for (const auto& t : doc.at("targets"))
            cfg.targets.push_back({t.at("name").get<std::string>(),
                                   t.value("base_url", std::string())});
        cfg.corpus_path = resolve(doc.at("corpus").get<std::string>());
        if (doc.contains("conditions")) {
            cfg.without_defense = false;
            cfg.with_defense = false;
            for (const auto& c : doc.at("conditions")) {
                std::string name = c.get<std::string>();
                if (name == "without-defense")
                    cfg.without_defense = true;
                else if (name == "with-defense")
                    cfg.with_defense = true;
                else
                    throw F2aError("unknown condition '" + name + "'");
            }
        }
        cfg.seed = doc.value("seed", 0ULL);
        cfg.max_concurrency = doc.value("max_concurrency", 4);
        if (doc.contains("retry")) {
            cfg.retry.max_attempts = doc.at("retry").value("max_attempts", 3);
            cfg.retry.base_backoff_ms = doc.at("retry").value("base_backoff_ms", 250);
        }
        cfg.detector_name = doc.value("detector_name", std::string("GPT-defender"));
        cfg.refusal_patterns_path = resolve(doc.value("refusal_patterns", std::string()));
        cfg.fixtures_path = resolve(doc.value("fixtures", std::string()));
    } catch (const nlohmann::json::exception& e) {
        throw F2aError("bad config: " + std::string(e.what()));
    }
    cfg.validate();
    return cfg;
}

inline std::string make_trial_key(const std::string& target, AttackCategory category,
                                  bool defense) {
    return target + "|" + category_id(category) + "|" +
           (defense ? "with-defense" : "without-defense");
}

/// Sends one composed prompt to one target, retrying transient failures.
/// The Defe-Prompt rides in a system message when the defense condition is
/// on — the attacker owns only the user turn.
inline AttackRecord run_attack(const F2APrompt& prompt, const std::string& target_model,
                               bool defense, Transport& transport,
                               const RetryPolicy& retry = {},
                               const std::string& trial_key = "") {
    AttackRecord record;
    record.record_id = trial_key.empty()
                           ? make_trial_key(target_model, prompt.category, defense)
                           : trial_key;
    record.timestamp = utc_timestamp_now();
    record.target_model = target_model;
    record.category = prompt.category;
    record.defense_enabled = defense;
    record.prompt_digest = hex_digest(prompt.text);

    if (defense) record.transcript.messages.push_back({Role::System, defe_prompt().text});
    record.transcript.messages.push_back({Role::User, prompt.text});

    ChatRequest request;
    request.model = target_model;
    request.messages = record.transcript.messages;
    request.temperature = 0.0;
    request.trial_key = record.record_id;

    for (int attempt = 1; attempt <= retry.max_attempts; ++attempt) {
        try {
            std::string reply = transport.send(request);
            record.transcript.messages.push_back({Role::Assistant, reply});
            return record;
        } catch (const F2aError& e) {
            bool retryable = false;
            if (dynamic_cast<const TransportTimeout*>(&e) || dynamic_cast<const RateLimited*>(&e))
                retryable = true;
            else if (auto* ep = dynamic_cast<const EndpointError*>(&e))
                retryable = ep->status() >= 500;
            if (!retryable || attempt == retry.max_attempts) {
                record.verdict = Verdict{VerdictKind::Error, e.what()};
                return record;
            }
            std::this_thread::sleep_for(retry.backoff_for(attempt));
        }
    }
    return record; // unreachable
}

using TransportFactory = std::function<std::shared_ptr<Transport>(const TargetRef&)>;

/// Runs the full target x category x condition grid with bounded concurrency.
/// Output order is the deterministic trial order regardless of completion
/// order; failures become Error verdicts, never aborts.
inline std::vector<AttackRecord> run_campaign(const CampaignConfig& config,
                                              const TransportFactory& transport_factory,
                                              const std::set<std::string>& skip_record_ids = {}) {
    config.validate();
    std::vector<CorpusEntry> corpus = load_corpus(config.corpus_path);
    std::vector<std::string> refusal_patterns;
    if (!config.refusal_patterns_path.empty())
        refusal_patterns = load_line_entries(config.refusal_patterns_path);

    struct Trial {
        TargetRef target;
        const CorpusEntry* entry;
        bool defense;
        std::uint64_t seed;
        std::string key;
    };

    std::vector<bool> conditions;
    if (config.without_defense) conditions.push_back(false);
    if (config.with_defense) conditions.push_back(true);

    std::vector<Trial> trials;
    std::uint64_t trial_index = 0;
    for (const auto& target : config.targets) {
        for (AttackCategory category : kAllCategories) {
            const CorpusEntry& entry = corpus_entry_for(corpus, category);
            for (bool defense : conditions) {
                std::string key = make_trial_key(target.name, category, defense);
                // per-prompt score seed: output #trial_index of the campaign stream
                std::uint64_t seed = SplitMix64::nth(config.seed, trial_index);
                ++trial_index;
                if (skip_record_ids.count(key)) continue;
                trials.push_back({target, &entry, defense, seed, key});
            }
        }
    }

    std::vector<std::shared_ptr<Transport>> transports;
    std::vector<Transport*> trial_transport(trials.size());
    {
        std::map<std::string, std::shared_ptr<Transport>> by_target;
        for (std::size_t i = 0; i < trials.size(); ++i) {
            auto& slot = by_target[trials[i].target.name];
            if (!slot) {
                slot = transport_factory(trials[i].target);
                transports.push_back(slot);
            }
            trial_transport[i] = slot.get();
        }
    }

    std::vector<AttackRecord> records(trials.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= trials.size()) break;
            const Trial& trial = trials[i];
            AttackRecord record;
            try {
                ForgeSpec spec;
                spec.payload = {trial.entry->payload, trial.entry->keyword};
                spec.strategy = SegmentationStrategy::paper_keyword_tail();
                spec.category = trial.entry->category;
                spec.seed = trial.seed;
                spec.detector_name = config.detector_name;
                F2APrompt prompt = forge_prompt(spec);
                record = run_attack(prompt, trial.target.name, trial.defense,
                                    *trial_transport[i], config.retry, trial.key);
                if (!record.verdict) {
                    record.judge_kind = JudgeKind::Heuristic;
                    record.verdict = judge_heuristic(record, {trial.entry->keyword},
                                                     refusal_patterns);
                }
            } catch (const std::exception& e) {
                record.record_id = trial.key;
                record.timestamp = utc_timestamp_now();
                record.target_model = trial.target.name;
                record.category = trial.entry->category;
                record.defense_enabled = trial.defense;
                record.verdict = Verdict{VerdictKind::Error, e.what()};
            }
            records[i] = std::move(record);
        }
    };

    std::size_t n_workers = std::min<std::size_t>(
        static_cast<std::size_t>(config.max_concurrency), std::max<std::size_t>(trials.size(), 1));
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    return records;
}

} // namespace f2a
