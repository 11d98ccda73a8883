#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "corpusforge/document.hpp"

namespace corpusforge {

// Table-driven romanization of one script. Keys are NFC grapheme clusters of
// 1-3 code points drawn from the declared script; values are ASCII. The
// table must cover every NFC-stable code point of the script, which is
// verified at load time, so romanization is total over normalized text.
struct RomanizationTable {
    Script script = Script::Other;
    std::string implicit_vowel; // appended after bare consonants
    std::unordered_map<std::u32string, std::string> entries;
    std::size_t max_key_cps = 1;

    // TSV: `native<TAB>latin` entries, `#script <name>` and
    // `#implicit_vowel <latin>` directives, `##` comments.
    static RomanizationTable parse(std::string_view content, const std::string& origin);
    static RomanizationTable load(const std::filesystem::path& path);
};

// Longest-match left-to-right replacement. Bare consonants (not followed by
// a dependent vowel sign or virama) get the implicit vowel appended; code
// points outside the table's script pass through unchanged. The output
// contains no code point of the source script.
std::string romanize(std::string_view text, const RomanizationTable& table);

struct TranslitOptions {
    // Languages never transliterated, mirroring tooling gaps upstream.
    std::set<std::string> excluded_langs = {"ks", "sa", "sd"};
};

struct TranslitReport {
    std::uint64_t pairs = 0;
    std::map<std::string, std::uint64_t> skipped_by_lang;
};

// One transliterated pair per eligible document: not English, not excluded,
// and its script has a table. Everything else is skipped with a counter.
std::vector<ParallelPair> make_translit_pairs(std::span<const DocumentRecord> docs,
                                              const std::map<Script, RomanizationTable>& tables,
                                              const TranslitOptions& options = {},
                                              TranslitReport* report = nullptr);

} // namespace corpusforge
