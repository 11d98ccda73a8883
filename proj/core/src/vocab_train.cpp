#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <unordered_map>
#include <vector>

#include "corpusforge/error.hpp"
#include "corpusforge/unicode.hpp"
#include "corpusforge/vocab.hpp"

namespace corpusforge {

namespace {

struct TrainWord {
    std::vector<std::uint32_t> pieces;
    double weight = 0.0;
};

constexpr std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

struct PairStats {
    double weight = 0.0;
    std::vector<std::uint32_t> postings; // word indices, may repeat or go stale
};

class Trainer {
  public:
    Trainer(const std::map<std::string, double>& word_freqs, const VocabTrainConfig& config)
        : config_(config) {
        if (word_freqs.empty()) {
            throw DomainError("cannot train a vocabulary from empty word frequencies");
        }
        seed_words(word_freqs);
    }

    Vocabulary run() {
        // Seed inventory: specials + every character piece that occurs.
        std::vector<std::string> seed(piece_strings_.begin(), piece_strings_.end());
        std::sort(seed.begin(), seed.end());
        const std::size_t seed_size = kSpecialTokens.size() + seed.size();
        if (config_.target_size < seed_size) {
            throw DomainError("target_size " + std::to_string(config_.target_size) +
                              " is smaller than the seed vocabulary (" +
                              std::to_string(seed_size) + " tokens)");
        }

        std::vector<std::string> tokens;
        tokens.reserve(config_.target_size);
        for (const auto special : kSpecialTokens) {
            tokens.emplace_back(special);
        }
        tokens.insert(tokens.end(), seed.begin(), seed.end());

        rebuild_stats();
        while (tokens.size() < config_.target_size) {
            const auto best = select_best_pair();
            if (!best) {
                break; // nothing left above min_word_frequency
            }
            const auto [a, b] = *best;
            const std::string merged_str = merge_string(a, b);
            const auto [pid, added] = intern_piece(merged_str);
            apply_merge(a, b, pid);
            if (added) {
                tokens.push_back(merged_str);
            }
        }
        return Vocabulary::from_tokens(std::move(tokens));
    }

  private:
    void seed_words(const std::map<std::string, double>& word_freqs) {
        words_.reserve(word_freqs.size());
        for (const auto& [word, weight] : word_freqs) {
            if (weight <= 0.0) {
                continue;
            }
            const std::u32string cps = uni::decode_utf8_or_throw(word);
            if (cps.empty()) {
                throw DomainError("empty word in training frequencies");
            }
            TrainWord tw;
            tw.weight = weight;
            tw.pieces.reserve(cps.size());
            std::string piece;
            for (std::size_t i = 0; i < cps.size(); ++i) {
                piece.clear();
                if (i > 0) {
                    piece = std::string(kContinuationPrefix);
                }
                uni::append_utf8(cps[i], piece);
                tw.pieces.push_back(intern_piece(piece).first);
            }
            words_.push_back(std::move(tw));
        }
        if (words_.empty()) {
            throw DomainError("cannot train a vocabulary from empty word frequencies");
        }
    }

    std::pair<std::uint32_t, bool> intern_piece(const std::string& s) {
        const auto it = piece_ids_.find(s);
        if (it != piece_ids_.end()) {
            return {it->second, false};
        }
        const auto pid = static_cast<std::uint32_t>(piece_strings_.size());
        piece_strings_.push_back(s);
        piece_ids_.emplace(s, pid);
        piece_weight_.push_back(0.0);
        return {pid, true};
    }

    std::string merge_string(std::uint32_t a, std::uint32_t b) const {
        std::string_view right = piece_strings_[b];
        if (right.starts_with(kContinuationPrefix)) {
            right.remove_prefix(kContinuationPrefix.size());
        }
        return piece_strings_[a] + std::string(right);
    }

    void rebuild_stats() {
        piece_weight_.assign(piece_strings_.size(), 0.0);
        pairs_.clear();
        for (std::uint32_t w = 0; w < static_cast<std::uint32_t>(words_.size()); ++w) {
            account_word(w, +1.0);
        }
    }

    void account_word(std::uint32_t w, double sign) {
        const TrainWord& tw = words_[w];
        const double delta = sign * tw.weight;
        for (std::size_t i = 0; i < tw.pieces.size(); ++i) {
            piece_weight_[tw.pieces[i]] += delta;
            if (i + 1 < tw.pieces.size()) {
                PairStats& ps = pairs_[pair_key(tw.pieces[i], tw.pieces[i + 1])];
                ps.weight += delta;
                if (sign > 0.0) {
                    ps.postings.push_back(w);
                }
            }
        }
    }

    std::optional<std::pair<std::uint32_t, std::uint32_t>> select_best_pair() {
        double best_score = -1.0;
        std::uint32_t best_a = 0;
        std::uint32_t best_b = 0;
        std::string best_merged;
        bool found = false;
        for (const auto& [key, ps] : pairs_) {
            if (ps.weight < config_.min_word_frequency) {
                continue;
            }
            const auto a = static_cast<std::uint32_t>(key >> 32);
            const auto b = static_cast<std::uint32_t>(key);
            const double score = ps.weight / (piece_weight_[a] * piece_weight_[b]);
            if (found && score < best_score) {
                continue;
            }
            std::string merged = merge_string(a, b);
            // Ties: lexicographically smallest merged token, then smallest
            // left piece (two pairs can merge to the same string).
            if (found && score == best_score &&
                (merged > best_merged ||
                 (merged == best_merged && piece_strings_[a] >= piece_strings_[best_a]))) {
                continue;
            }
            best_score = score;
            best_a = a;
            best_b = b;
            best_merged = std::move(merged);
            found = true;
        }
        if (!found) {
            return std::nullopt;
        }
        return std::make_pair(best_a, best_b);
    }

    void apply_merge(std::uint32_t a, std::uint32_t b, std::uint32_t merged) {
        const auto it = pairs_.find(pair_key(a, b));
        if (it == pairs_.end()) {
            return;
        }
        std::vector<std::uint32_t> affected = std::move(it->second.postings);
        std::sort(affected.begin(), affected.end());
        affected.erase(std::unique(affected.begin(), affected.end()), affected.end());
        for (const std::uint32_t w : affected) {
            TrainWord& tw = words_[w];
            // Check the pair is still present (postings can be stale).
            bool present = false;
            for (std::size_t i = 0; i + 1 < tw.pieces.size(); ++i) {
                if (tw.pieces[i] == a && tw.pieces[i + 1] == b) {
                    present = true;
                    break;
                }
            }
            if (!present) {
                continue;
            }
            account_word(w, -1.0);
            std::vector<std::uint32_t> next;
            next.reserve(tw.pieces.size());
            for (std::size_t i = 0; i < tw.pieces.size();) {
                if (i + 1 < tw.pieces.size() && tw.pieces[i] == a && tw.pieces[i + 1] == b) {
                    next.push_back(merged);
                    i += 2;
                } else {
                    next.push_back(tw.pieces[i]);
                    ++i;
                }
            }
            tw.pieces = std::move(next);
            account_word(w, +1.0);
        }
        pairs_.erase(pair_key(a, b));
    }

    VocabTrainConfig config_;
    std::vector<TrainWord> words_;
    std::vector<std::string> piece_strings_;
    std::unordered_map<std::string, std::uint32_t> piece_ids_;
    std::vector<double> piece_weight_;
    std::unordered_map<std::uint64_t, PairStats> pairs_;
};

} // namespace

Vocabulary train_vocab(const std::map<std::string, double>& word_freqs,
                       const VocabTrainConfig& config) {
    if (!(config.min_word_frequency > 0.0)) {
        throw DomainError("min_word_frequency must be positive");
    }
    return Trainer(word_freqs, config).run();
}

} // namespace corpusforge
