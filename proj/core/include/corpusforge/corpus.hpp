#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "corpusforge/document.hpp"

namespace corpusforge {

// Splits NFC text into words: runs of non-whitespace, with every punctuation
// character (category P*) isolated as its own single-character word. Letters,
// marks, digits and symbols stay attached.
std::vector<std::string> pretokenize(std::string_view text);

// Word count without materializing the word list.
std::uint64_t pretokenized_word_count(std::string_view text);

struct StatsKey {
    LanguageTag lang;
    SourceKind source = SourceKind::wikipedia;

    friend auto operator<=>(const StatsKey&, const StatsKey&) = default;
};

struct Counts {
    std::uint64_t docs = 0;
    std::uint64_t words = 0;
    std::uint64_t chars = 0; // code points

    Counts& operator+=(const Counts& o) {
        docs += o.docs;
        words += o.words;
        chars += o.chars;
        return *this;
    }
    friend bool operator==(const Counts&, const Counts&) = default;
};

// Per (language, source) token accounting. Merging is associative and
// commutative, so shard-level stats can be combined in any order.
struct CorpusStats {
    std::map<StatsKey, Counts> rows;

    void add(const DocumentRecord& doc);
    CorpusStats& merge(const CorpusStats& other);
    std::uint64_t words_for(LanguageTag lang, SourceKind source) const;
    bool empty() const { return rows.empty(); }

    friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

CorpusStats count_tokens(std::span<const DocumentRecord> docs);

// CSV with header `lang,source,docs,words,chars`, rows in key order.
std::string stats_to_csv(const CorpusStats& stats);

} // namespace corpusforge
