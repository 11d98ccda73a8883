#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "corpusforge/corpus.hpp"

namespace corpusforge {

inline constexpr double kDefaultAlpha = 0.3;

// m = (n_max / n)^(1 - alpha). Throws DomainError for n outside (0, n_max]
// or alpha outside [0, 1].
double upsampling_multiplier(double n, double n_max, double alpha);

struct PlanEntry {
    LanguageTag lang;
    std::uint64_t original_words = 0;
    double multiplier = 1.0;
    std::uint64_t upsampled_words = 0; // round(multiplier * original), half-up

    friend bool operator==(const PlanEntry&, const PlanEntry&) = default;
};

struct SamplingPlan {
    double alpha = kDefaultAlpha;
    SourceKind source = SourceKind::wikipedia;
    std::vector<PlanEntry> entries;          // sorted by language
    std::vector<LanguageTag> zero_count;     // excluded languages, reported separately
};

// Plan over every positive-count language of one source kind in `stats`.
// Throws DomainError when no language has a positive count.
SamplingPlan build_plan(const CorpusStats& stats, SourceKind source, double alpha = kDefaultAlpha);

// CSV `lang,n,multiplier,upsampled` with the multiplier printed to 6 decimals.
std::string plan_to_csv(const SamplingPlan& plan);

// floor(m) full passes in stream order, then a partial pass keeping each
// document with probability m - floor(m). Per-document randomness is derived
// from (seed, doc id), so the result is independent of processing order and
// bit-reproducible for a fixed seed.
std::vector<DocumentRecord> materialize(std::span<const DocumentRecord> docs, double multiplier,
                                        std::uint64_t seed);

} // namespace corpusforge
