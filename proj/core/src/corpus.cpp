#include "corpusforge/corpus.hpp"

#include <sstream>

#include "corpusforge/unicode.hpp"

namespace corpusforge {

namespace {

// Walks the words of `cps` without building strings.
template <typename Fn>
void for_each_word(std::u32string_view cps, Fn&& fn) {
    std::size_t i = 0;
    const std::size_t n = cps.size();
    while (i < n) {
        if (uni::is_whitespace(cps[i])) {
            ++i;
            continue;
        }
        if (uni::is_punctuation(cps[i])) {
            // Each punctuation character is its own word.
            fn(cps.substr(i, 1));
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && !uni::is_whitespace(cps[j]) && !uni::is_punctuation(cps[j])) {
            ++j;
        }
        fn(cps.substr(i, j - i));
        i = j;
    }
}

} // namespace

std::vector<std::string> pretokenize(std::string_view text) {
    std::vector<std::string> words;
    if (text.empty()) {
        return words;
    }
    const std::u32string cps = uni::decode_utf8_or_throw(text);
    for_each_word(cps, [&](std::u32string_view w) { words.push_back(uni::encode_utf8(w)); });
    return words;
}

std::uint64_t pretokenized_word_count(std::string_view text) {
    if (text.empty()) {
        return 0;
    }
    const std::u32string cps = uni::decode_utf8_or_throw(text);
    std::uint64_t count = 0;
    for_each_word(cps, [&](std::u32string_view) { ++count; });
    return count;
}

void CorpusStats::add(const DocumentRecord& doc) {
    Counts& c = rows[StatsKey{doc.lang, doc.source}];
    const std::u32string cps = uni::decode_utf8_or_throw(doc.text);
    c.docs += 1;
    c.chars += cps.size();
    for_each_word(cps, [&](std::u32string_view) { c.words += 1; });
}

CorpusStats& CorpusStats::merge(const CorpusStats& other) {
    for (const auto& [key, counts] : other.rows) {
        rows[key] += counts;
    }
    return *this;
}

std::uint64_t CorpusStats::words_for(LanguageTag lang, SourceKind source) const {
    const auto it = rows.find(StatsKey{lang, source});
    return it == rows.end() ? 0 : it->second.words;
}

CorpusStats count_tokens(std::span<const DocumentRecord> docs) {
    CorpusStats stats;
    for (const DocumentRecord& doc : docs) {
        stats.add(doc);
    }
    return stats;
}

std::string stats_to_csv(const CorpusStats& stats) {
    std::ostringstream out;
    out << "lang,source,docs,words,chars\n";
    for (const auto& [key, c] : stats.rows) {
        out << key.lang.str() << ',' << source_kind_name(key.source) << ',' << c.docs << ','
            << c.words << ',' << c.chars << '\n';
    }
    return std::move(out).str();
}

} // namespace corpusforge
