#include "corpusforge/instances.hpp"

#include <algorithm>
#include <cmath>

#include "corpusforge/error.hpp"
#include "corpusforge/util.hpp"

namespace corpusforge {

std::string_view objective_name(Objective o) { return o == Objective::mlm ? "MLM" : "TLM"; }

std::uint32_t InstanceConfig::effective_max_predictions() const {
    if (max_predictions != 0) {
        return max_predictions;
    }
    return static_cast<std::uint32_t>(std::ceil(mask_rate * static_cast<double>(max_seq_len)));
}

void InstanceConfig::validate() const {
    if (max_seq_len < 4) {
        throw DomainError("max_seq_len must be at least 4");
    }
    if (max_seq_len > 0xFFFF) {
        throw DomainError("max_seq_len exceeds the record format's 16-bit token count");
    }
    if (!(mask_rate > 0.0 && mask_rate < 1.0)) {
        throw DomainError("mask_rate must be in (0, 1)");
    }
    const double sum = mask_token_frac + random_frac + keep_frac;
    if (std::abs(sum - 1.0) > 1e-9) {
        throw DomainError("corruption fractions must sum to 1, got " + std::to_string(sum));
    }
    if (mask_token_frac < 0.0 || random_frac < 0.0 || keep_frac < 0.0) {
        throw DomainError("corruption fractions must be non-negative");
    }
    if (effective_max_predictions() > max_seq_len) {
        throw DomainError("max_predictions exceeds max_seq_len");
    }
}

namespace {

// Draws a uniform random non-special vocabulary id; requires at least one
// non-special token.
std::uint32_t random_regular_id(Rng& rng, const Vocabulary& vocab) {
    const auto specials = static_cast<std::uint32_t>(kSpecialTokens.size());
    const auto regular = static_cast<std::uint64_t>(vocab.size()) - specials;
    return specials + static_cast<std::uint32_t>(rng.below(regular));
}

// Selects round(mask_rate * n) candidate positions (at least 1, at most
// max_predictions) among `candidates`, corrupts them in place and records
// positions/labels on the instance.
void apply_masking(TrainingInstance& inst, std::vector<std::uint32_t> candidates,
                   const Vocabulary& vocab, const InstanceConfig& cfg, Rng& rng) {
    if (candidates.empty()) {
        return;
    }
    const auto n = static_cast<double>(candidates.size());
    auto k = static_cast<std::size_t>(std::floor(cfg.mask_rate * n + 0.5));
    k = std::max<std::size_t>(k, 1);
    k = std::min<std::size_t>(k, cfg.effective_max_predictions());
    k = std::min(k, candidates.size());

    // Partial Fisher-Yates: the first k entries become the selection.
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(candidates.size() - i));
        std::swap(candidates[i], candidates[j]);
    }
    candidates.resize(k);
    std::sort(candidates.begin(), candidates.end());

    inst.masked_positions.reserve(k);
    inst.masked_labels.reserve(k);
    for (const std::uint32_t pos : candidates) {
        inst.masked_positions.push_back(pos);
        inst.masked_labels.push_back(inst.token_ids[pos]);
        const double u = rng.unit();
        if (u < cfg.mask_token_frac) {
            inst.token_ids[pos] = Vocabulary::kMaskId;
        } else if (u < cfg.mask_token_frac + cfg.random_frac) {
            inst.token_ids[pos] = random_regular_id(rng, vocab);
        } // else: keep the original token
    }
}

} // namespace

std::vector<TrainingInstance> build_mlm(const DocumentRecord& doc, const Vocabulary& vocab,
                                        const InstanceConfig& cfg) {
    cfg.validate();
    if (vocab.size() <= kSpecialTokens.size()) {
        throw DomainError("vocabulary has no regular tokens");
    }
    const std::vector<std::uint32_t> ids = tokenize(doc.text, vocab);
    std::vector<TrainingInstance> out;
    if (ids.empty()) {
        return out;
    }
    const std::size_t body_cap = cfg.max_seq_len - 2;
    const std::size_t chunks = (ids.size() + body_cap - 1) / body_cap;
    out.reserve(chunks);
    for (std::size_t chunk = 0; chunk < chunks; ++chunk) {
        const std::size_t begin = chunk * body_cap;
        const std::size_t end = std::min(begin + body_cap, ids.size());

        TrainingInstance inst;
        inst.objective = Objective::mlm;
        inst.pair_kind = PairKind::none;
        inst.lang_src = doc.lang;
        inst.token_ids.reserve(end - begin + 2);
        inst.token_ids.push_back(Vocabulary::kClsId);
        inst.token_ids.insert(inst.token_ids.end(), ids.begin() + begin, ids.begin() + end);
        inst.token_ids.push_back(Vocabulary::kSepId);
        inst.segment_ids.assign(inst.token_ids.size(), 0);

        std::vector<std::uint32_t> candidates;
        candidates.reserve(end - begin);
        for (std::uint32_t pos = 1; pos + 1 < inst.token_ids.size(); ++pos) {
            candidates.push_back(pos);
        }
        Rng rng(mix_seed(cfg.seed, doc.id, chunk));
        apply_masking(inst, std::move(candidates), vocab, cfg, rng);
        out.push_back(std::move(inst));
    }
    return out;
}

std::vector<TrainingInstance> build_tlm(const ParallelPair& pair, const Vocabulary& vocab,
                                        const InstanceConfig& cfg) {
    cfg.validate();
    if (vocab.size() <= kSpecialTokens.size()) {
        throw DomainError("vocabulary has no regular tokens");
    }
    std::vector<std::uint32_t> src = tokenize(pair.src.text, vocab);
    std::vector<std::uint32_t> tgt = tokenize(pair.tgt.text, vocab);
    std::vector<TrainingInstance> out;
    if (src.empty() || tgt.empty()) {
        return out;
    }
    // Longest-first truncation, one token at a time off the end.
    const std::size_t body_cap = cfg.max_seq_len - 3;
    while (src.size() + tgt.size() > body_cap) {
        if (src.size() >= tgt.size()) {
            src.pop_back();
        } else {
            tgt.pop_back();
        }
    }
    if (src.empty() || tgt.empty()) {
        return out;
    }

    TrainingInstance inst;
    inst.objective = Objective::tlm;
    inst.pair_kind = pair.kind;
    inst.lang_src = pair.src.lang;
    inst.lang_tgt = pair.tgt.lang;
    inst.token_ids.reserve(src.size() + tgt.size() + 3);
    inst.token_ids.push_back(Vocabulary::kClsId);
    inst.token_ids.insert(inst.token_ids.end(), src.begin(), src.end());
    inst.token_ids.push_back(Vocabulary::kSepId);
    const std::size_t segment_boundary = inst.token_ids.size();
    inst.token_ids.insert(inst.token_ids.end(), tgt.begin(), tgt.end());
    inst.token_ids.push_back(Vocabulary::kSepId);
    inst.segment_ids.assign(inst.token_ids.size(), 1);
    std::fill_n(inst.segment_ids.begin(), segment_boundary, 0);

    std::vector<std::uint32_t> candidates;
    candidates.reserve(src.size() + tgt.size());
    for (std::uint32_t pos = 1; pos < segment_boundary - 1; ++pos) {
        candidates.push_back(pos);
    }
    for (auto pos = static_cast<std::uint32_t>(segment_boundary);
         pos + 1 < inst.token_ids.size(); ++pos) {
        candidates.push_back(pos);
    }
    // Chunk slot beyond the 32-bit MLM chunk range so a pair's stream never
    // collides with its source document's MLM stream.
    Rng rng(mix_seed(cfg.seed, pair.src.id, 0x1'0000'0000ull));
    apply_masking(inst, std::move(candidates), vocab, cfg, rng);
    out.push_back(std::move(inst));
    return out;
}

} // namespace corpusforge
