#include "corpusforge/language.hpp"

#include <algorithm>

#include "corpusforge/error.hpp"

namespace corpusforge {

namespace {

// Native script per language, aligned with kLanguageCodes.
constexpr std::array<Script, 17> kLanguageScripts = {
    Script::Bengali,    // as
    Script::Bengali,    // bn
    Script::Latin,      // en
    Script::Gujarati,   // gu
    Script::Devanagari, // hi
    Script::Kannada,    // kn
    Script::Arabic,     // ks
    Script::Malayalam,  // ml
    Script::Devanagari, // mr
    Script::Devanagari, // ne
    Script::Oriya,      // or
    Script::Gurmukhi,   // pa
    Script::Devanagari, // sa
    Script::Arabic,     // sd
    Script::Tamil,      // ta
    Script::Telugu,     // te
    Script::Arabic,     // ur
};

constexpr std::array<std::string_view, kScriptCount> kScriptNames = {
    "Latin",     "Devanagari", "Bengali", "Gujarati", "Gurmukhi", "Kannada",
    "Malayalam", "Oriya",      "Tamil",   "Telugu",   "Arabic",   "Other"};

constexpr std::array<std::string_view, kSourceKindCount> kSourceNames = {
    "wikipedia", "crawl", "parallel_translation", "parallel_transliteration"};

} // namespace

std::string_view script_name(Script s) { return kScriptNames[static_cast<std::size_t>(s)]; }

std::optional<Script> parse_script(std::string_view name) {
    for (std::size_t i = 0; i < kScriptNames.size(); ++i) {
        if (kScriptNames[i] == name) {
            return static_cast<Script>(i);
        }
    }
    return std::nullopt;
}

Script LanguageTag::script() const {
    return transliterated ? Script::Latin : kLanguageScripts[index];
}

std::string LanguageTag::str() const {
    std::string s{code()};
    if (transliterated) {
        s += "-tr";
    }
    return s;
}

std::optional<LanguageTag> LanguageTag::try_parse(std::string_view text) {
    bool tr = false;
    if (text.size() > 3 && text.substr(text.size() - 3) == "-tr") {
        tr = true;
        text.remove_suffix(3);
    }
    const auto it = std::find(kLanguageCodes.begin(), kLanguageCodes.end(), text);
    if (it == kLanguageCodes.end()) {
        return std::nullopt;
    }
    const auto index = static_cast<std::uint8_t>(it - kLanguageCodes.begin());
    if (tr && index == 2) { // en has no transliterated variant
        return std::nullopt;
    }
    return LanguageTag{index, tr};
}

LanguageTag LanguageTag::parse(std::string_view text) {
    if (auto tag = try_parse(text)) {
        return *tag;
    }
    throw ParseError("unknown language code: '" + std::string(text) + "'");
}

LanguageTag LanguageTag::from_index(std::uint8_t index, bool transliterated) {
    if (index >= kLanguageCodes.size()) {
        throw ParseError("language index out of range: " + std::to_string(index));
    }
    if (transliterated && index == 2) {
        throw ParseError("en has no transliterated variant");
    }
    return LanguageTag{index, transliterated};
}

std::string_view source_kind_name(SourceKind k) {
    return kSourceNames[static_cast<std::size_t>(k)];
}

std::optional<SourceKind> try_parse_source_kind(std::string_view name) {
    for (std::size_t i = 0; i < kSourceNames.size(); ++i) {
        if (kSourceNames[i] == name) {
            return static_cast<SourceKind>(i);
        }
    }
    return std::nullopt;
}

SourceKind parse_source_kind(std::string_view name) {
    if (auto kind = try_parse_source_kind(name)) {
        return *kind;
    }
    throw ParseError("unknown source kind: '" + std::string(name) + "'");
}

} // namespace corpusforge
