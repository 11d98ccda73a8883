#include "corpusforge/translit.hpp"

#include <algorithm>
#include <cstdio>

#include "corpusforge/error.hpp"
#include "corpusforge/unicode.hpp"
#include "corpusforge/util.hpp"

namespace corpusforge {

namespace {

bool ascii_alnum_only(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
    });
}

// The phonetic core of a key: its last code point, skipping trailing nuktas.
char32_t phonetic_tail(std::u32string_view key) {
    std::size_t i = key.size();
    while (i > 1 && uni::combining_class(key[i - 1]) == 7) {
        --i;
    }
    return key[i - 1];
}

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

} // namespace

RomanizationTable RomanizationTable::parse(std::string_view content, const std::string& origin) {
    RomanizationTable table;
    bool script_seen = false;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= content.size()) {
        const std::size_t nl = content.find('\n', start);
        std::string_view line = content.substr(
            start, nl == std::string_view::npos ? content.size() - start : nl - start);
        start = nl == std::string_view::npos ? content.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty() || line.starts_with("##")) {
            continue;
        }
        const std::string where = origin + ":" + std::to_string(line_no);
        if (line.starts_with("#")) {
            const auto fields = split_fields(line, ' ');
            if (fields[0] == "#script" && fields.size() == 2) {
                const auto script = parse_script(fields[1]);
                if (!script || *script == Script::Other) {
                    throw ParseError(where + ": unknown script '" + std::string(fields[1]) + "'");
                }
                table.script = *script;
                script_seen = true;
            } else if (fields[0] == "#implicit_vowel" && fields.size() == 2) {
                if (!ascii_alnum_only(fields[1]) || fields[1].empty()) {
                    throw ParseError(where + ": implicit vowel must be ASCII letters");
                }
                table.implicit_vowel = std::string(fields[1]);
            } else {
                throw ParseError(where + ": unknown directive '" + std::string(line) + "'");
            }
            continue;
        }
        const std::size_t tab = line.find('\t');
        if (tab == std::string_view::npos) {
            throw ParseError(where + ": expected 'native<TAB>latin'");
        }
        const std::string_view native = line.substr(0, tab);
        const std::string_view latin = line.substr(tab + 1);
        if (!script_seen) {
            throw ParseError(where + ": #script directive must precede entries");
        }
        if (!ascii_alnum_only(latin)) {
            throw ParseError(where + ": value must be ASCII letters or digits: '" +
                             std::string(latin) + "'");
        }
        std::u32string key = uni::nfc(uni::decode_utf8_or_throw(native));
        if (key.empty() || key.size() > 3) {
            throw ParseError(where + ": keys must be 1-3 code points");
        }
        for (char32_t cp : key) {
            if (uni::script_of(cp) != table.script) {
                throw ParseError(where + ": key contains a code point outside script " +
                                 std::string(script_name(table.script)));
            }
        }
        if (!table.entries.emplace(std::move(key), std::string(latin)).second) {
            throw ParseError(where + ": duplicate key");
        }
    }
    if (!script_seen) {
        throw ParseError(origin + ": missing #script directive");
    }
    if (table.implicit_vowel.empty()) {
        throw ParseError(origin + ": missing #implicit_vowel directive");
    }
    for (const auto& [key, value] : table.entries) {
        table.max_key_cps = std::max(table.max_key_cps, key.size());
    }

    // Totality: every NFC-stable code point of the script needs a single-cp
    // entry, otherwise romanize could leak native characters.
    std::string missing;
    for (char32_t cp = 0; cp <= 0x10FFFF; ++cp) {
        if (uni::script_of(cp) != table.script || !uni::is_nfc_stable(cp)) {
            continue;
        }
        if (!table.entries.contains(std::u32string(1, cp))) {
            char buf[16];
            std::snprintf(buf, sizeof(buf), " U+%04X", static_cast<unsigned>(cp));
            missing += buf;
        }
    }
    if (!missing.empty()) {
        throw ParseError(origin + ": table does not cover" + missing);
    }
    return table;
}

RomanizationTable RomanizationTable::load(const std::filesystem::path& path) {
    return parse(read_file(path), path.string());
}

std::string romanize(std::string_view text, const RomanizationTable& table) {
    const std::u32string cps = uni::decode_utf8_or_throw(text);
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    std::u32string probe;
    while (i < cps.size()) {
        if (uni::script_of(cps[i]) != table.script) {
            uni::append_utf8(cps[i], out);
            ++i;
            continue;
        }
        // Longest-match over 3, 2, 1 code points; single-cp coverage is
        // guaranteed by the load-time totality check.
        const std::size_t limit = std::min(table.max_key_cps, cps.size() - i);
        std::size_t matched = 0;
        const std::string* value = nullptr;
        for (std::size_t len = limit; len >= 1; --len) {
            probe.assign(cps, i, len);
            const auto it = table.entries.find(probe);
            if (it != table.entries.end()) {
                matched = len;
                value = &it->second;
                break;
            }
        }
        if (value == nullptr) {
            throw Error("romanization table for " + std::string(script_name(table.script)) +
                        " is missing a code point that passed the load check");
        }
        out += *value;
        const char32_t tail = phonetic_tail(std::u32string_view(cps).substr(i, matched));
        i += matched;
        if (uni::is_indic_consonant(tail) && !uni::is_virama(tail)) {
            const bool followed_by_modifier =
                i < cps.size() && (uni::is_vowel_sign(cps[i]) || uni::is_virama(cps[i]));
            if (!followed_by_modifier) {
                out += table.implicit_vowel;
            }
        }
    }
    return out;
}

std::vector<ParallelPair> make_translit_pairs(std::span<const DocumentRecord> docs,
                                              const std::map<Script, RomanizationTable>& tables,
                                              const TranslitOptions& options,
                                              TranslitReport* report) {
    std::vector<ParallelPair> pairs;
    TranslitReport local;
    for (const DocumentRecord& doc : docs) {
        const std::string code{doc.lang.code()};
        if (doc.lang.is_english() || doc.lang.transliterated ||
            options.excluded_langs.contains(code)) {
            local.skipped_by_lang[code] += 1;
            continue;
        }
        const auto it = tables.find(doc.lang.script());
        if (it == tables.end()) {
            local.skipped_by_lang[code] += 1;
            continue;
        }
        // Both sides of the pair carry the parallel kind; the original
        // monolingual record is untouched.
        DocumentRecord src = doc;
        src.source = SourceKind::parallel_transliteration;
        DocumentRecord tgt = src;
        tgt.lang.transliterated = true;
        tgt.text = romanize(doc.text, it->second);
        pairs.push_back(ParallelPair{std::move(src), std::move(tgt), PairKind::transliterated});
        local.pairs += 1;
    }
    if (report) {
        *report = std::move(local);
    }
    return pairs;
}

} // namespace corpusforge
