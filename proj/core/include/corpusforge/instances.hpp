#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "corpusforge/document.hpp"
#include "corpusforge/vocab.hpp"

namespace corpusforge {

struct InstanceConfig {
    std::uint32_t max_seq_len = 512;
    double mask_rate = 0.15;
    double mask_token_frac = 0.8;
    double random_frac = 0.1;
    double keep_frac = 0.1;
    std::uint64_t seed = 0;
    std::uint32_t max_predictions = 0; // 0 = ceil(max_seq_len * mask_rate)

    std::uint32_t effective_max_predictions() const;
    void validate() const; // throws DomainError
};

enum class Objective : std::uint8_t { mlm, tlm };

std::string_view objective_name(Objective o);

struct TrainingInstance {
    Objective objective = Objective::mlm;
    PairKind pair_kind = PairKind::none;
    LanguageTag lang_src;
    std::optional<LanguageTag> lang_tgt; // unset for MLM
    std::vector<std::uint32_t> token_ids;
    std::vector<std::uint8_t> segment_ids;
    std::vector<std::uint32_t> masked_positions; // sorted
    std::vector<std::uint32_t> masked_labels;    // pre-corruption ids

    friend bool operator==(const TrainingInstance&, const TrainingInstance&) = default;
};

// Tokenizes the document, packs chunks of max_seq_len-2 ids into
// [CLS] chunk [SEP], then masks round(mask_rate * n) positions per chunk
// (at least 1, at most max_predictions) with the 80/10/10 corruption rule.
// All randomness derives from (cfg.seed, doc.id, chunk index).
std::vector<TrainingInstance> build_mlm(const DocumentRecord& doc, const Vocabulary& vocab,
                                        const InstanceConfig& cfg);

// [CLS] src [SEP] tgt [SEP] with segment ids 0/1, truncating the longer
// side one token at a time until the instance fits max_seq_len. Masking
// covers both segments.
std::vector<TrainingInstance> build_tlm(const ParallelPair& pair, const Vocabulary& vocab,
                                        const InstanceConfig& cfg);

// Record file: magic "MURC", version byte, 2-byte vocab-hash prefix, then
// length-prefixed records. Round-trips are bit-exact.
inline constexpr std::uint8_t kRecordVersion = 1;

std::uint64_t write_records(std::span<const TrainingInstance> instances,
                            const std::filesystem::path& path, std::uint16_t vocab_hash_prefix);

struct RecordFile {
    std::uint8_t version = kRecordVersion;
    std::uint16_t vocab_hash_prefix = 0;
    std::vector<TrainingInstance> instances;
};

// Throws ParseError naming the byte offset on truncation, and on bad magic
// or version.
RecordFile read_records(const std::filesystem::path& path);

} // namespace corpusforge
