#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "f2a/datafile.hpp"

namespace testutil {

inline std::string data_path(const std::string& name) {
    return std::string(F2A_DATA_DIR) + "/" + name;
}

inline std::string read_data(const std::string& name) {
    return f2a::read_text_file(data_path(name));
}

/// Golden prompt text = golden file minus its trailing newline.
inline std::string golden_prompt_text() {
    std::string s = read_data("golden/f2a_prompt_a.txt");
    if (!s.empty() && s.back() == '\n') s.pop_back();
    return s;
}

/// One random payload for the round-trip property: 1..12 words of length
/// 2..8 over letters and digits, single-space separated, sometimes with a
/// standalone article 'a' inserted before the keyword and sometimes with
/// trailing '?' or '.'. Words never start with 'a'/'i' so the canonicalize
/// merge heuristic stays exact; the inserted article exercises its keep-head
/// branch.
struct RandomPayload {
    std::string text;          // payload as the operator would type it
    std::string expected;      // text minus trailing punctuation
    std::string keyword;       // a whole word, usable for keyword-tail
};

inline RandomPayload random_payload(std::mt19937_64& rng) {
    static const std::string first_chars = "bcdefghjklmnopqrstuvwxyz0123456789";
    static const std::string word_chars = "abcdefghijklmnopqrstuvwxyz0123456789";

    std::uniform_int_distribution<int> word_count_dist(1, 12);
    std::uniform_int_distribution<int> word_len_dist(2, 8);
    std::uniform_int_distribution<std::size_t> first_dist(0, first_chars.size() - 1);
    std::uniform_int_distribution<std::size_t> char_dist(0, word_chars.size() - 1);
    std::uniform_int_distribution<int> pct(0, 99);

    int n = word_count_dist(rng);
    std::vector<std::string> words;
    for (int w = 0; w < n; ++w) {
        int len = word_len_dist(rng);
        std::string word(1, first_chars[first_dist(rng)]);
        for (int c = 1; c < len; ++c) word += word_chars[char_dist(rng)];
        words.push_back(word);
    }

    std::uniform_int_distribution<std::size_t> kw_dist(0, words.size() - 1);
    std::string keyword = words[kw_dist(rng)];
    // shredding always hits the first whole-word occurrence, so anchor there
    std::size_t kw_index = 0;
    while (words[kw_index] != keyword) ++kw_index;

    if (kw_index >= 1 && pct(rng) < 25)
        words.insert(words.begin() + static_cast<long>(kw_index), "a");

    std::string text;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) text += ' ';
        text += words[i];
    }
    std::string expected = text;
    int p = pct(rng);
    if (p < 20)
        text += '?';
    else if (p < 30)
        text += '.';

    return {text, expected, keyword};
}

} // namespace testutil
