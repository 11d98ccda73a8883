#include "corpusforge/sampler.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "corpusforge/error.hpp"
#include "corpusforge/util.hpp"

namespace corpusforge {

double upsampling_multiplier(double n, double n_max, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw DomainError("alpha must be in [0, 1], got " + std::to_string(alpha));
    }
    if (!(n > 0.0)) {
        throw DomainError("token count must be positive");
    }
    if (n > n_max) {
        throw DomainError("token count exceeds the maximum count");
    }
    return std::pow(n_max / n, 1.0 - alpha);
}

SamplingPlan build_plan(const CorpusStats& stats, SourceKind source, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw DomainError("alpha must be in [0, 1], got " + std::to_string(alpha));
    }
    SamplingPlan plan;
    plan.alpha = alpha;
    plan.source = source;

    std::uint64_t n_max = 0;
    for (const auto& [key, counts] : stats.rows) {
        if (key.source != source) {
            continue;
        }
        if (counts.words == 0) {
            plan.zero_count.push_back(key.lang);
            continue;
        }
        n_max = std::max(n_max, counts.words);
    }
    if (n_max == 0) {
        throw DomainError("empty corpus set: no language has a positive count for source '" +
                          std::string(source_kind_name(source)) + "'");
    }
    for (const auto& [key, counts] : stats.rows) {
        if (key.source != source || counts.words == 0) {
            continue;
        }
        const double m = upsampling_multiplier(static_cast<double>(counts.words),
                                               static_cast<double>(n_max), alpha);
        const auto upsampled =
            static_cast<std::uint64_t>(std::floor(m * static_cast<double>(counts.words) + 0.5));
        plan.entries.push_back(PlanEntry{key.lang, counts.words, m, upsampled});
    }
    return plan;
}

std::string plan_to_csv(const SamplingPlan& plan) {
    std::ostringstream out;
    out << "lang,n,multiplier,upsampled\n";
    char buf[64];
    for (const PlanEntry& e : plan.entries) {
        std::snprintf(buf, sizeof(buf), "%.6f", e.multiplier);
        out << e.lang.str() << ',' << e.original_words << ',' << buf << ',' << e.upsampled_words
            << '\n';
    }
    return std::move(out).str();
}

std::vector<DocumentRecord> materialize(std::span<const DocumentRecord> docs, double multiplier,
                                        std::uint64_t seed) {
    if (!(multiplier >= 1.0)) {
        throw DomainError("multiplier must be >= 1, got " + std::to_string(multiplier));
    }
    const auto full_passes = static_cast<std::uint64_t>(std::floor(multiplier));
    const double fraction = multiplier - static_cast<double>(full_passes);

    std::vector<DocumentRecord> out;
    out.reserve(static_cast<std::size_t>(static_cast<double>(docs.size()) * multiplier) + 1);
    for (std::uint64_t pass = 0; pass < full_passes; ++pass) {
        out.insert(out.end(), docs.begin(), docs.end());
    }
    if (fraction > 0.0) {
        for (const DocumentRecord& doc : docs) {
            // Per-document draw keyed by (seed, id): order-independent.
            Rng rng(mix_seed(seed, doc.id));
            if (rng.unit() < fraction) {
                out.push_back(doc);
            }
        }
    }
    return out;
}

} // namespace corpusforge
