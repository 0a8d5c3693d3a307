#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "f2a/category.hpp"
#include "f2a/datafile.hpp"
#include "f2a/errors.hpp"

namespace f2a {

/// One probe: a benign stand-in payload for a category. Operators substitute
/// their own payloads at runtime; the bundled corpus never ships harm content.
struct CorpusEntry {
    AttackCategory category;
    std::string payload;
    std::string keyword;
};

inline std::vector<CorpusEntry> load_corpus(const std::string& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_text_file(path));
    } catch (const std::exception& e) {
        throw CorpusLoadError(std::string(e.what()));
    }
    if (!doc.is_array() || doc.empty()) throw CorpusLoadError("expected a non-empty array");

    std::vector<CorpusEntry> entries;
    for (const auto& item : doc) {
        try {
            CorpusEntry e;
            e.category = parse_category(item.at("category").get<std::string>());
            e.payload = item.at("payload").get<std::string>();
            e.keyword = item.at("keyword").get<std::string>();
            entries.push_back(std::move(e));
        } catch (const std::exception& e) {
            throw CorpusLoadError(std::string(e.what()));
        }
    }
    return entries;
}

inline const CorpusEntry& corpus_entry_for(const std::vector<CorpusEntry>& corpus,
                                           AttackCategory category) {
    for (const auto& e : corpus)
        if (e.category == category) return e;
    throw CorpusLoadError("corpus has no entry for category " + category_id(category));
}

} // namespace f2a
