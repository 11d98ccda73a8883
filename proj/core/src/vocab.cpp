#include "corpusforge/vocab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "corpusforge/corpus.hpp"
#include "corpusforge/error.hpp"
#include "corpusforge/unicode.hpp"
#include "corpusforge/util.hpp"

namespace corpusforge {

std::uint32_t Vocabulary::id_of(std::string_view token) const {
    const auto it = ids.find(std::string(token));
    return it == ids.end() ? kUnkId : it->second;
}

Vocabulary Vocabulary::from_tokens(std::vector<std::string> tokens) {
    if (tokens.size() < kSpecialTokens.size()) {
        throw ParseError("vocabulary must start with the five special tokens");
    }
    for (std::size_t i = 0; i < kSpecialTokens.size(); ++i) {
        if (tokens[i] != kSpecialTokens[i]) {
            throw ParseError("vocabulary token " + std::to_string(i) + " must be " +
                             std::string(kSpecialTokens[i]) + ", got '" + tokens[i] + "'");
        }
    }
    Vocabulary vocab;
    vocab.ids.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string& tok = tokens[i];
        if (i >= kSpecialTokens.size()) {
            std::string_view body = tok;
            if (body.starts_with(vocab.continuation_prefix)) {
                body.remove_prefix(vocab.continuation_prefix.size());
            }
            if (body.empty()) {
                throw ParseError("empty vocabulary piece at id " + std::to_string(i));
            }
            for (char32_t cp : uni::decode_utf8_or_throw(tok)) {
                if (uni::is_whitespace(cp)) {
                    throw ParseError("vocabulary piece contains whitespace at id " +
                                     std::to_string(i));
                }
            }
        }
        if (!vocab.ids.emplace(tok, static_cast<std::uint32_t>(i)).second) {
            throw ParseError("duplicate vocabulary token '" + tok + "'");
        }
    }
    vocab.tokens = std::move(tokens);
    return vocab;
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    std::vector<std::string> tokens;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string::npos) {
            nl = text.size();
        }
        std::string line = text.substr(start, nl - start);
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (!(line.empty() && nl == text.size())) {
            tokens.push_back(std::move(line));
        }
        start = nl + 1;
    }
    return from_tokens(std::move(tokens));
}

std::string Vocabulary::to_text() const {
    std::string out;
    for (const std::string& tok : tokens) {
        out += tok;
        out += '\n';
    }
    return out;
}

void Vocabulary::save(const std::filesystem::path& path) const { write_file(path, to_text()); }

std::uint64_t Vocabulary::content_hash() const { return fnv1a64(to_text()); }

LanguageWordFreqs collect_word_freqs(std::span<const DocumentRecord> docs,
                                     std::uint32_t max_word_length, WordFreqReport* report) {
    LanguageWordFreqs freqs;
    WordFreqReport local;
    for (const DocumentRecord& doc : docs) {
        auto& lang_freqs = freqs[doc.lang];
        for (std::string& word : pretokenize(doc.text)) {
            std::u32string cps = uni::decode_utf8_or_throw(word);
            if (cps.size() > max_word_length) {
                local.dropped_too_long += 1;
                continue;
            }
            lang_freqs[std::move(word)] += 1;
        }
    }
    if (report) {
        *report = local;
    }
    return freqs;
}

std::map<std::string, double> smooth_and_merge(const LanguageWordFreqs& per_lang,
                                               double exponent) {
    if (!(exponent > 0.0 && exponent <= 1.0)) {
        throw DomainError("smoothing exponent must be in (0, 1], got " + std::to_string(exponent));
    }
    double total_mass = 0.0;
    std::map<LanguageTag, double> mass;
    for (const auto& [lang, words] : per_lang) {
        double t = 0.0;
        for (const auto& [word, count] : words) {
            t += static_cast<double>(count);
        }
        mass[lang] = t;
        total_mass += t;
    }
    std::map<std::string, double> merged;
    for (const auto& [lang, words] : per_lang) {
        const double t = mass[lang];
        if (t == 0.0) {
            continue;
        }
        // exponent 1 leaves weights untouched; smaller exponents boost
        // low-mass languages by (T_l / total)^(exponent - 1).
        const double factor = exponent == 1.0 ? 1.0 : std::pow(t / total_mass, exponent - 1.0);
        for (const auto& [word, count] : words) {
            merged[word] += static_cast<double>(count) * factor;
        }
    }
    return merged;
}

std::vector<std::uint32_t> tokenize_word(std::string_view word, const Vocabulary& vocab) {
    // Code point boundaries; matches always end on one.
    std::vector<std::size_t> bounds;
    bounds.push_back(0);
    for (std::size_t i = 0; i < word.size();) {
        const auto b = static_cast<unsigned char>(word[i]);
        std::size_t len = 1;
        if (b >= 0xF0) {
            len = 4;
        } else if (b >= 0xE0) {
            len = 3;
        } else if (b >= 0xC0) {
            len = 2;
        }
        i += len;
        bounds.push_back(std::min(i, word.size()));
    }

    std::vector<std::uint32_t> out;
    std::size_t start_idx = 0;
    std::string probe;
    while (start_idx + 1 < bounds.size()) {
        const std::size_t start = bounds[start_idx];
        std::size_t matched_idx = 0;
        std::uint32_t matched_id = 0;
        for (std::size_t end_idx = bounds.size() - 1; end_idx > start_idx; --end_idx) {
            probe.clear();
            if (start_idx > 0) {
                probe = vocab.continuation_prefix;
            }
            probe.append(word.substr(start, bounds[end_idx] - start));
            const auto it = vocab.ids.find(probe);
            if (it != vocab.ids.end() && !vocab.is_special(it->second)) {
                matched_idx = end_idx;
                matched_id = it->second;
                break;
            }
        }
        if (matched_idx == 0) {
            return {Vocabulary::kUnkId}; // no match anywhere: whole word is [UNK]
        }
        out.push_back(matched_id);
        start_idx = matched_idx;
    }
    return out;
}

std::vector<std::uint32_t> tokenize(std::string_view text, const Vocabulary& vocab) {
    std::vector<std::uint32_t> out;
    for (const std::string& word : pretokenize(text)) {
        const auto ids = tokenize_word(word, vocab);
        out.insert(out.end(), ids.begin(), ids.end());
    }
    return out;
}

std::string detokenize(std::span<const std::uint32_t> ids, const Vocabulary& vocab) {
    std::string out;
    bool in_word = false;
    for (const std::uint32_t id : ids) {
        if (id >= vocab.tokens.size()) {
            throw DomainError("token id out of range: " + std::to_string(id));
        }
        const std::string& tok = vocab.tokens[id];
        if (!vocab.is_special(id) && tok.starts_with(vocab.continuation_prefix) && in_word) {
            out.append(tok, vocab.continuation_prefix.size(), std::string::npos);
            continue;
        }
        if (!out.empty()) {
            out += ' ';
        }
        if (!vocab.is_special(id) && tok.starts_with(vocab.continuation_prefix)) {
            out.append(tok, vocab.continuation_prefix.size(), std::string::npos);
        } else {
            out += tok;
        }
        in_word = !vocab.is_special(id);
    }
    return out;
}

FertilityReport fertility(std::span<const DocumentRecord> docs, const Vocabulary& vocab) {
    FertilityReport report;
    for (const DocumentRecord& doc : docs) {
        FertilityRow& row = report.rows[doc.lang];
        for (const std::string& word : pretokenize(doc.text)) {
            row.words += 1;
            row.subwords += tokenize_word(word, vocab).size();
        }
    }
    for (auto it = report.rows.begin(); it != report.rows.end();) {
        if (it->second.words == 0) {
            report.skipped.push_back(it->first);
            it = report.rows.erase(it);
        } else {
            it->second.fertility =
                static_cast<double>(it->second.subwords) / static_cast<double>(it->second.words);
            ++it;
        }
    }
    return report;
}

std::string fertility_to_csv(const FertilityReport& report) {
    std::ostringstream out;
    out << "lang,words,subwords,fertility\n";
    char buf[64];
    for (const auto& [lang, row] : report.rows) {
        std::snprintf(buf, sizeof(buf), "%.6f", row.fertility);
        out << lang.str() << ',' << row.words << ',' << row.subwords << ',' << buf << '\n';
    }
    return std::move(out).str();
}

double ScriptComposition::percent(Script s) const {
    if (total == 0) {
        return 0.0;
    }
    return 100.0 * static_cast<double>(counts[static_cast<std::size_t>(s)]) /
           static_cast<double>(total);
}

ScriptComposition script_composition(const Vocabulary& vocab) {
    ScriptComposition comp;
    for (std::size_t id = kSpecialTokens.size(); id < vocab.tokens.size(); ++id) {
        std::string_view body = vocab.tokens[id];
        if (body.starts_with(vocab.continuation_prefix)) {
            body.remove_prefix(vocab.continuation_prefix.size());
        }
        Script assigned = Script::Other;
        bool single_script = true;
        bool saw_non_digit = false;
        for (char32_t cp : uni::decode_utf8_or_throw(body)) {
            if (uni::is_digit(cp)) {
                continue; // digits are allowed in every category
            }
            const Script s = uni::script_of(cp);
            if (!saw_non_digit) {
                assigned = s;
                saw_non_digit = true;
            } else if (s != assigned) {
                single_script = false;
                break;
            }
        }
        // Digit-only tokens and mixed-script tokens land in Other.
        Script category = Script::Other;
        if (saw_non_digit && single_script && assigned != Script::Other) {
            category = assigned;
        }
        comp.counts[static_cast<std::size_t>(category)] += 1;
        comp.total += 1;
    }
    return comp;
}

std::string composition_to_csv(const ScriptComposition& comp) {
    std::ostringstream out;
    out << "script,count,percent\n";
    char buf[64];
    for (std::size_t i = 0; i < kScriptCount; ++i) {
        const auto s = static_cast<Script>(i);
        std::snprintf(buf, sizeof(buf), "%.4f", comp.percent(s));
        out << script_name(s) << ',' << comp.counts[i] << ',' << buf << '\n';
    }
    return std::move(out).str();
}

} // namespace corpusforge
