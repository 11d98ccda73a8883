#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace corpusforge {

// The 17 supported language codes, in canonical order. Indices into this
// array are the wire encoding used by the sharded record formats.
inline constexpr std::array<std::string_view, 17> kLanguageCodes = {
    "as", "bn", "en", "gu", "hi", "kn", "ks", "ml",  "mr",
    "ne", "or", "pa", "sa", "sd", "ta", "te", "ur"};

// Script categories reported by the vocabulary composition metric. `Other`
// collects everything outside the eleven named scripts (Common, Han, ...).
enum class Script : std::uint8_t {
    Latin,
    Devanagari,
    Bengali,
    Gujarati,
    Gurmukhi,
    Kannada,
    Malayalam,
    Oriya,
    Tamil,
    Telugu,
    Arabic,
    Other,
};

inline constexpr std::size_t kScriptCount = 12;

std::string_view script_name(Script s);
std::optional<Script> parse_script(std::string_view name);

// Language identity: code plus the Latin-script "-tr" variant flag.
struct LanguageTag {
    std::uint8_t index = 0; // position in kLanguageCodes
    bool transliterated = false;

    std::string_view code() const { return kLanguageCodes[index]; }
    bool is_english() const { return index == 2; }

    // Native script of the language (Latin when transliterated).
    Script script() const;

    // "hi" or "hi-tr".
    std::string str() const;

    // Accepts "hi" or "hi-tr"; unknown codes and "en-tr" are rejected.
    static LanguageTag parse(std::string_view text);
    static std::optional<LanguageTag> try_parse(std::string_view text);
    static LanguageTag from_index(std::uint8_t index, bool transliterated);

    friend auto operator<=>(const LanguageTag&, const LanguageTag&) = default;
};

enum class SourceKind : std::uint8_t {
    wikipedia,
    crawl,
    parallel_translation,
    parallel_transliteration,
};

inline constexpr std::size_t kSourceKindCount = 4;

std::string_view source_kind_name(SourceKind k);
SourceKind parse_source_kind(std::string_view name); // throws ParseError
std::optional<SourceKind> try_parse_source_kind(std::string_view name);

} // namespace corpusforge
