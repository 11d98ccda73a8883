#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "corpusforge/document.hpp"

namespace corpusforge {

inline constexpr std::array<std::string_view, 5> kSpecialTokens = {"[PAD]", "[UNK]", "[CLS]",
                                                                   "[SEP]", "[MASK]"};
inline constexpr std::string_view kContinuationPrefix = "##";

// Cased WordPiece inventory. Ids are positions in `tokens`; the five special
// tokens always occupy ids 0..4.
struct Vocabulary {
    std::vector<std::string> tokens;
    std::unordered_map<std::string, std::uint32_t> ids;
    std::string continuation_prefix{kContinuationPrefix};

    static constexpr std::uint32_t kPadId = 0;
    static constexpr std::uint32_t kUnkId = 1;
    static constexpr std::uint32_t kClsId = 2;
    static constexpr std::uint32_t kSepId = 3;
    static constexpr std::uint32_t kMaskId = 4;

    std::size_t size() const { return tokens.size(); }
    bool is_special(std::uint32_t id) const { return id < kSpecialTokens.size(); }
    std::uint32_t id_of(std::string_view token) const; // kUnkId when absent

    // Validates uniqueness, special placement and piece shape.
    static Vocabulary from_tokens(std::vector<std::string> tokens);

    // vocab.txt: one token per line, line number = id.
    static Vocabulary load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;
    std::string to_text() const;

    // FNV-1a over the serialized token list; ties record files to the
    // vocabulary that produced them.
    std::uint64_t content_hash() const;
};

struct VocabTrainConfig {
    std::uint32_t target_size = 8000;
    double smoothing_exponent = 1.0; // in (0, 1]
    double min_word_frequency = 2.0;
    std::uint32_t max_word_length = 100;
};

using LanguageWordFreqs = std::map<LanguageTag, std::map<std::string, std::uint64_t>>;

struct WordFreqReport {
    std::uint64_t dropped_too_long = 0;
};

LanguageWordFreqs collect_word_freqs(std::span<const DocumentRecord> docs,
                                     std::uint32_t max_word_length,
                                     WordFreqReport* report = nullptr);

// Rescales each language's mass by (T_l / sum T)^(exponent - 1) and sums the
// reweighted word frequencies; exponent 1 is the plain sum. Throws
// DomainError for exponent outside (0, 1].
std::map<std::string, double> smooth_and_merge(const LanguageWordFreqs& per_lang, double exponent);

// Greedy merge training: seed with the character pieces that occur in the
// words, then repeatedly add the pair with the best
// count(pair) / (count(left) * count(right)) score (ties broken by the
// lexicographically smallest merged token) until target_size is reached or
// no pair has count >= min_word_frequency.
Vocabulary train_vocab(const std::map<std::string, double>& word_freqs,
                       const VocabTrainConfig& config);

// Greedy longest-match WordPiece over pretokenized words. A word with no
// match at any point becomes a single [UNK].
std::vector<std::uint32_t> tokenize(std::string_view text, const Vocabulary& vocab);
std::vector<std::uint32_t> tokenize_word(std::string_view word, const Vocabulary& vocab);

// Joins pieces (continuation prefix stripped) with single spaces between
// words. Throws DomainError on out-of-range ids.
std::string detokenize(std::span<const std::uint32_t> ids, const Vocabulary& vocab);

struct FertilityRow {
    std::uint64_t words = 0;
    std::uint64_t subwords = 0;
    double fertility = 0.0; // subwords / words
};

struct FertilityReport {
    std::map<LanguageTag, FertilityRow> rows;
    std::vector<LanguageTag> skipped; // languages with zero words
};

FertilityReport fertility(std::span<const DocumentRecord> docs, const Vocabulary& vocab);
std::string fertility_to_csv(const FertilityReport& report);

// Script composition of the vocabulary: a token belongs to a script when all
// of its characters (continuation prefix stripped) are of that script or are
// digits; digit-only and mixed tokens fall into Other. Specials are excluded.
struct ScriptComposition {
    std::array<std::uint64_t, kScriptCount> counts{};
    std::uint64_t total = 0;

    double percent(Script s) const;
};

ScriptComposition script_composition(const Vocabulary& vocab);
std::string composition_to_csv(const ScriptComposition& composition);

} // namespace corpusforge
