#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "corpusforge/language.hpp"

namespace corpusforge::uni {

// UTF-8 <-> code points. decode returns false at the first invalid sequence
// and leaves `out` holding everything decoded before it.
bool decode_utf8(std::string_view text, std::u32string& out);
std::u32string decode_utf8_or_throw(std::string_view text); // ParseError
void append_utf8(char32_t cp, std::string& out);
std::string encode_utf8(std::u32string_view cps);

// Character properties (White_Space, general categories, Script).
bool is_whitespace(char32_t cp);
bool is_punctuation(char32_t cp); // general category P*
bool is_digit(char32_t cp);       // general category Nd
bool is_letter(char32_t cp);      // general category L*
bool is_mark(char32_t cp);        // general category M*
Script script_of(char32_t cp);
std::uint8_t combining_class(char32_t cp);

// Indic structural classes used by the romanizer.
bool is_virama(char32_t cp);          // canonical combining class 9
bool is_indic_consonant(char32_t cp); // consonant letters of the nine Indic scripts
bool is_vowel_sign(char32_t cp);      // dependent vowel signs (matras)

// Canonical composition (NFC). The UTF-8 overload throws ParseError on
// invalid input bytes.
std::u32string nfc(std::u32string_view cps);
std::string nfc(std::string_view utf8);

// True when the code point survives NFC unchanged; code points that
// decompose can never appear in normalized text.
bool is_nfc_stable(char32_t cp);

} // namespace corpusforge::uni
