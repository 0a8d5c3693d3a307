// f2a — operator CLI: forge attack prompts, scan text for feigned-agent
// patterns, run campaigns against chat endpoints, and render reports.

#define CPPHTTPLIB_OPENSSL_SUPPORT

#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "f2a/f2a.hpp"
#include "f2a/live_transport.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitHighRisk = 3;

#ifndef F2A_DEFAULT_DATA_DIR
#define F2A_DEFAULT_DATA_DIR "data"
#endif

std::string default_data_path(const std::string& name) {
    return std::string(F2A_DEFAULT_DATA_DIR) + "/" + name;
}

struct ForgeArgs {
    std::string payload_file;
    std::string keyword;
    std::string category = "Death";
    std::uint64_t seed = 0;
    std::string detector_name = "GPT-defender";
    double score = -1.0; // <0 means sample from seed
    std::string answer_format = "appendix";
    std::string strategy = "paper-keyword-tail";
    std::size_t chunk = 4;
    std::string separator = "-";
    std::string out;
    bool quiet = false;
};

int cmd_forge(const ForgeArgs& args) {
    std::string payload_raw;
    try {
        payload_raw = f2a::read_text_file(args.payload_file);
    } catch (const f2a::F2aError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }

    f2a::ForgeSpec spec;
    try {
        spec.category = f2a::parse_category(args.category);
    } catch (const f2a::F2aError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    spec.payload.raw = f2a::detail::trim(payload_raw);
    if (!args.keyword.empty()) spec.payload.keyword = args.keyword;
    spec.seed = args.seed;
    spec.detector_name = args.detector_name;
    if (args.score >= 0.0) spec.score_override = args.score;
    spec.answer_format = args.answer_format == "instance-c" ? f2a::AnswerFormat::InstanceCForm
                                                            : f2a::AnswerFormat::AppendixForm;
    if (args.separator.size() != 1) {
        std::cerr << "error: --separator must be a single character\n";
        return kExitValidation;
    }
    spec.separator = args.separator[0];
    if (args.strategy == "paper-keyword-tail")
        spec.strategy = f2a::SegmentationStrategy::paper_keyword_tail();
    else if (args.strategy == "per-character")
        spec.strategy = f2a::SegmentationStrategy::per_character();
    else if (args.strategy == "fixed-chunk")
        spec.strategy = f2a::SegmentationStrategy::fixed_chunk(args.chunk);
    else {
        std::cerr << "error: unknown strategy '" << args.strategy << "'\n";
        return kExitValidation;
    }

    if (!args.quiet)
        std::cerr << "notice: forged prompts are for authorized security testing of systems "
                     "you are cleared to probe; keep outputs inside your engagement scope.\n";

    f2a::F2APrompt prompt;
    try {
        prompt = f2a::forge_prompt(spec);
    } catch (const f2a::F2aError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    if (args.out.empty()) {
        std::cout << prompt.text << "\n";
    } else {
        try {
            f2a::write_text_file(args.out, prompt.text + "\n");
            nlohmann::json meta{{"v", 1},
                                {"seed", prompt.seed},
                                {"payload_digest", prompt.payload_digest},
                                {"category", f2a::category_id(prompt.category)},
                                {"detector_name", args.detector_name},
                                {"score", f2a::format_score(spec.score_override
                                                                ? *spec.score_override
                                                                : f2a::sample_score(spec.seed))},
                                {"answer_format", args.answer_format},
                                {"strategy", args.strategy},
                                {"keyword", args.keyword}};
            f2a::write_text_file(args.out + ".meta.json", meta.dump(2) + "\n");
        } catch (const f2a::F2aError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitRuntime;
        }
    }
    return kExitOk;
}

struct ScanArgs {
    std::string in;
    std::string keywords = default_data_path("keywords.txt");
    std::string format = "text";
    std::string separator = "-";
};

int cmd_scan(const ScanArgs& args) {
    std::string text;
    std::vector<std::string> keywords;
    try {
        text = f2a::read_text_file(args.in);
        keywords = f2a::load_keyword_file(args.keywords);
    } catch (const f2a::F2aError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    if (args.separator.size() != 1) {
        std::cerr << "error: --separator must be a single character\n";
        return kExitValidation;
    }

    f2a::RiskReport report = f2a::scan_prompt(text, keywords, args.separator[0]);
    if (args.format == "json") {
        std::cout << f2a::risk_report_to_json(report).dump(2) << "\n";
    } else {
        std::cout << "risk level: " << f2a::risk_level_name(report.level) << "\n";
        for (f2a::FeignPattern p : report.matched_patterns)
            std::cout << "pattern: " << f2a::feign_pattern_name(p) << "\n";
        for (const auto& rp : report.recovered_payloads)
            std::cout << "recovered payload (block " << rp.block_index << "): " << rp.canonical
                      << "\n";
        for (const auto& kh : report.keyword_hits)
            std::cout << "keyword hit (payload " << kh.payload_index << "): " << kh.keyword
                      << "\n";
    }
    return report.level == f2a::RiskLevel::High ? kExitHighRisk : kExitOk;
}

struct RunArgs {
    std::string config;
    std::string transport = "mock";
    std::string out;
    bool resume = false;
};

int cmd_run(const RunArgs& args) {
    f2a::CampaignConfig config;
    try {
        config = f2a::load_campaign_config(args.config);
    } catch (const f2a::F2aError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }

    f2a::TransportFactory factory;
    try {
        if (args.transport == "live") {
            factory = [](const f2a::TargetRef& target) -> std::shared_ptr<f2a::Transport> {
                return std::make_shared<f2a::LiveTransport>(target.base_url,
                                                            f2a::api_key_for(target.name));
            };
        } else if (args.transport == "mock") {
            auto mock = f2a::MockTransport::always("I can't help with that request.");
            factory = [mock](const f2a::TargetRef&) -> std::shared_ptr<f2a::Transport> {
                return mock;
            };
        } else if (args.transport == "replay") {
            if (config.fixtures_path.empty()) {
                std::cerr << "error: replay transport needs a 'fixtures' path in the config\n";
                return kExitRuntime;
            }
            auto replay = f2a::ReplayTransport::from_file(config.fixtures_path);
            factory = [replay](const f2a::TargetRef&) -> std::shared_ptr<f2a::Transport> {
                return replay;
            };
        } else {
            std::cerr << "error: unknown transport '" << args.transport << "'\n";
            return kExitValidation;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }

    std::set<std::string> skip;
    std::vector<f2a::AttackRecord> existing;
    if (args.resume && std::filesystem::exists(args.out)) {
        try {
            existing = f2a::records_from_jsonl(f2a::read_text_file(args.out));
            for (const auto& r : existing) skip.insert(r.record_id);
        } catch (const f2a::F2aError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitRuntime;
        }
    }

    std::vector<f2a::AttackRecord> records;
    try {
        records = f2a::run_campaign(config, factory, skip);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }

    std::string jsonl = f2a::records_to_jsonl(records);
    if (args.out.empty()) {
        std::cout << jsonl;
    } else {
        try {
            if (args.resume && !existing.empty())
                f2a::write_text_file(args.out, f2a::records_to_jsonl(existing) + jsonl);
            else
                f2a::write_text_file(args.out, jsonl);
        } catch (const f2a::F2aError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitRuntime;
        }
        std::cerr << records.size() << " new record(s), " << existing.size()
                  << " carried over -> " << args.out << "\n";
    }
    return kExitOk;
}

struct ReportArgs {
    std::string in;
    std::string format = "markdown";
    std::string condition = "both";
    std::string out;
};

int cmd_report(const ReportArgs& args) {
    std::vector<f2a::AttackRecord> records;
    try {
        records = f2a::records_from_jsonl(f2a::read_text_file(args.in));
    } catch (const f2a::F2aError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    for (const auto& r : records) {
        if (!r.verdict) {
            std::cerr << "error: record '" << r.record_id << "' is unjudged\n";
            return kExitValidation;
        }
    }

    std::vector<bool> conditions;
    if (args.condition == "without-defense")
        conditions = {false};
    else if (args.condition == "with-defense")
        conditions = {true};
    else if (args.condition == "both")
        conditions = {false, true};
    else {
        std::cerr << "error: unknown condition '" << args.condition << "'\n";
        return kExitValidation;
    }

    std::vector<f2a::HitTable> tables;
    std::vector<f2a::HitScore> scores;
    try {
        for (bool defended : conditions) {
            f2a::HitTable table = f2a::aggregate_hit_table(records, defended);
            for (const auto& [model, row] : table.rows)
                scores.push_back(f2a::hit_score(table, model));
            tables.push_back(std::move(table));
        }
    } catch (const f2a::F2aError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    std::string doc = f2a::render_report(
        tables, scores,
        args.format == "csv" ? f2a::ReportFormat::CSV : f2a::ReportFormat::Markdown);
    if (args.out.empty()) {
        std::cout << doc;
    } else {
        try {
            f2a::write_text_file(args.out, doc);
        } catch (const f2a::F2aError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitRuntime;
        }
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"F2A red-team toolkit: forge, scan, run, report"};
    app.require_subcommand(1);

    ForgeArgs forge;
    CLI::App* forge_cmd = app.add_subcommand(
        "forge", "Compose an attack prompt from a payload file");
    forge_cmd->add_option("payload_file", forge.payload_file, "File holding the payload text")
        ->required();
    forge_cmd->add_option("--keyword", forge.keyword, "Sensitive token to shred character-wise");
    forge_cmd->add_option("--category", forge.category,
                          "Category id (Death, Wea, Rac, Po, Fraud, TiA, Abe, MiT, Polit, Tact)");
    forge_cmd->add_option("--seed", forge.seed, "Seed for score sampling and metadata");
    forge_cmd->add_option("--detector-name", forge.detector_name, "Feigned detector name");
    forge_cmd->add_option("--score", forge.score, "Score override in [0.85, 0.99]");
    forge_cmd->add_option("--answer-format", forge.answer_format, "appendix | instance-c")
        ->check(CLI::IsMember({"appendix", "instance-c"}));
    forge_cmd->add_option("--strategy", forge.strategy,
                          "paper-keyword-tail | fixed-chunk | per-character");
    forge_cmd->add_option("--chunk", forge.chunk, "Chunk size for fixed-chunk");
    forge_cmd->add_option("--separator", forge.separator, "Separator character (default '-')");
    forge_cmd->add_option("--out", forge.out, "Output file (metadata sidecar goes to .meta.json)");
    forge_cmd->add_flag("--quiet", forge.quiet, "Suppress the responsible-use notice");

    ScanArgs scan;
    CLI::App* scan_cmd = app.add_subcommand("scan", "Scan text for feigned-agent patterns");
    scan_cmd->add_option("--in", scan.in, "File to scan")->required();
    scan_cmd->add_option("--keywords", scan.keywords, "Keyword list file");
    scan_cmd->add_option("--format", scan.format, "json | text")
        ->check(CLI::IsMember({"json", "text"}));
    scan_cmd->add_option("--separator", scan.separator, "Separator character (default '-')");

    RunArgs run;
    CLI::App* run_cmd = app.add_subcommand("run", "Run an attack campaign");
    run_cmd->add_option("--config", run.config, "Campaign config file")->required();
    run_cmd->add_option("--transport", run.transport, "live | mock | replay")
        ->check(CLI::IsMember({"live", "mock", "replay"}));
    run_cmd->add_option("--out", run.out, "JSONL output path");
    run_cmd->add_flag("--resume", run.resume, "Skip record ids already present in --out");

    ReportArgs report;
    CLI::App* report_cmd = app.add_subcommand("report", "Render hit matrices and scores");
    report_cmd->add_option("--in", report.in, "JSONL records file")->required();
    report_cmd->add_option("--format", report.format, "markdown | csv")
        ->check(CLI::IsMember({"markdown", "csv"}));
    report_cmd->add_option("--condition", report.condition,
                           "with-defense | without-defense | both");
    report_cmd->add_option("--out", report.out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_name() == "CallForHelp" ? kExitOk : kExitValidation;
    }

    try {
        if (forge_cmd->parsed()) return cmd_forge(forge);
        if (scan_cmd->parsed()) return cmd_scan(scan);
        if (run_cmd->parsed()) return cmd_run(run);
        if (report_cmd->parsed()) return cmd_report(report);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitValidation;
}
