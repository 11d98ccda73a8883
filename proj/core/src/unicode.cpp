#include "corpusforge/unicode.hpp"

#include <algorithm>
#include <cstddef>

#include "corpusforge/error.hpp"

namespace corpusforge::uni {

namespace {

struct CpRange {
    std::uint32_t lo;
    std::uint32_t hi;
};

struct DecompEntry {
    std::uint32_t cp;
    std::uint32_t a;
    std::uint32_t b; // 0 for singleton decompositions
};

struct CcEntry {
    std::uint32_t cp;
    std::uint8_t ccc;
};

struct CompEntry {
    std::uint32_t a;
    std::uint32_t b;
    std::uint32_t composed;
};

struct ScriptSpan {
    Script script;
    const CpRange* ranges;
    std::size_t count;
};

#include "unicode_tables.inc"

template <std::size_t N>
bool in_ranges(const CpRange (&ranges)[N], char32_t cp) {
    const auto* end = ranges + N;
    const auto* it = std::upper_bound(ranges, end, static_cast<std::uint32_t>(cp),
                                      [](std::uint32_t v, const CpRange& r) { return v < r.lo; });
    return it != ranges && cp <= (it - 1)->hi;
}

bool in_spans(const ScriptSpan* spans, std::size_t n, char32_t cp, Script script) {
    for (std::size_t i = 0; i < n; ++i) {
        if (spans[i].script != script) {
            continue;
        }
        const auto* begin = spans[i].ranges;
        const auto* end = begin + spans[i].count;
        const auto* it =
            std::upper_bound(begin, end, static_cast<std::uint32_t>(cp),
                             [](std::uint32_t v, const CpRange& r) { return v < r.lo; });
        return it != begin && cp <= (it - 1)->hi;
    }
    return false;
}

const DecompEntry* find_decomp(char32_t cp) {
    const auto* begin = kCanonicalDecomp;
    const auto* end = begin + sizeof(kCanonicalDecomp) / sizeof(DecompEntry);
    const auto* it = std::lower_bound(begin, end, static_cast<std::uint32_t>(cp),
                                      [](const DecompEntry& e, std::uint32_t v) { return e.cp < v; });
    return (it != end && it->cp == cp) ? it : nullptr;
}

// Hangul syllable arithmetic (UAX #15).
constexpr std::uint32_t kSBase = 0xAC00;
constexpr std::uint32_t kLBase = 0x1100;
constexpr std::uint32_t kVBase = 0x1161;
constexpr std::uint32_t kTBase = 0x11A7;
constexpr std::uint32_t kLCount = 19;
constexpr std::uint32_t kVCount = 21;
constexpr std::uint32_t kTCount = 28;
constexpr std::uint32_t kNCount = kVCount * kTCount;
constexpr std::uint32_t kSCount = kLCount * kNCount;

bool is_hangul_syllable(char32_t cp) { return cp >= kSBase && cp < kSBase + kSCount; }

void decompose_cp(char32_t cp, std::u32string& out) {
    if (is_hangul_syllable(cp)) {
        const std::uint32_t s = cp - kSBase;
        out.push_back(kLBase + s / kNCount);
        out.push_back(kVBase + (s % kNCount) / kTCount);
        if (s % kTCount != 0) {
            out.push_back(kTBase + s % kTCount);
        }
        return;
    }
    if (const DecompEntry* e = find_decomp(cp)) {
        decompose_cp(e->a, out);
        if (e->b != 0) {
            decompose_cp(e->b, out);
        }
        return;
    }
    out.push_back(cp);
}

char32_t compose_pair(char32_t a, char32_t b) {
    // Hangul L+V and LV+T.
    if (a >= kLBase && a < kLBase + kLCount && b >= kVBase && b < kVBase + kVCount) {
        return kSBase + ((a - kLBase) * kVCount + (b - kVBase)) * kTCount;
    }
    if (is_hangul_syllable(a) && (a - kSBase) % kTCount == 0 && b > kTBase &&
        b < kTBase + kTCount) {
        return a + (b - kTBase);
    }
    const auto* begin = kCanonicalComp;
    const auto* end = begin + sizeof(kCanonicalComp) / sizeof(CompEntry);
    const auto* it = std::lower_bound(begin, end, std::pair{a, b},
                                      [](const CompEntry& e, const std::pair<char32_t, char32_t>& v) {
                                          return e.a != v.first ? e.a < v.first : e.b < v.second;
                                      });
    if (it != end && it->a == a && it->b == b) {
        return it->composed;
    }
    return 0;
}

} // namespace

bool decode_utf8(std::string_view text, std::u32string& out) {
    out.clear();
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        const auto b0 = static_cast<unsigned char>(text[i]);
        if (b0 < 0x80) {
            out.push_back(b0);
            ++i;
            continue;
        }
        int len = 0;
        char32_t cp = 0;
        char32_t min = 0;
        if ((b0 & 0xE0) == 0xC0) {
            len = 2;
            cp = b0 & 0x1F;
            min = 0x80;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3;
            cp = b0 & 0x0F;
            min = 0x800;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4;
            cp = b0 & 0x07;
            min = 0x10000;
        } else {
            return false;
        }
        if (i + len > text.size()) {
            return false;
        }
        for (int k = 1; k < len; ++k) {
            const auto bk = static_cast<unsigned char>(text[i + k]);
            if ((bk & 0xC0) != 0x80) {
                return false;
            }
            cp = (cp << 6) | (bk & 0x3F);
        }
        // Overlongs, surrogates and out-of-range values are invalid.
        if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
            return false;
        }
        out.push_back(cp);
        i += len;
    }
    return true;
}

std::u32string decode_utf8_or_throw(std::string_view text) {
    std::u32string out;
    if (!decode_utf8(text, out)) {
        throw ParseError("invalid UTF-8 byte sequence");
    }
    return out;
}

void append_utf8(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::string encode_utf8(std::u32string_view cps) {
    std::string out;
    out.reserve(cps.size() * 3);
    for (char32_t cp : cps) {
        append_utf8(cp, out);
    }
    return out;
}

bool is_whitespace(char32_t cp) { return in_ranges(kWhitespaceRanges, cp); }
bool is_punctuation(char32_t cp) { return in_ranges(kPunctuationRanges, cp); }
bool is_digit(char32_t cp) { return in_ranges(kDigitRanges, cp); }
bool is_letter(char32_t cp) { return in_ranges(kLetterRanges, cp); }
bool is_mark(char32_t cp) { return in_ranges(kMarkRanges, cp); }

Script script_of(char32_t cp) {
    for (const auto& span : kScriptSpans) {
        const auto* begin = span.ranges;
        const auto* end = begin + span.count;
        const auto* it =
            std::upper_bound(begin, end, static_cast<std::uint32_t>(cp),
                             [](std::uint32_t v, const CpRange& r) { return v < r.lo; });
        if (it != begin && cp <= (it - 1)->hi) {
            return span.script;
        }
    }
    return Script::Other;
}

std::uint8_t combining_class(char32_t cp) {
    const auto* begin = kCombiningClass;
    const auto* end = begin + sizeof(kCombiningClass) / sizeof(CcEntry);
    const auto* it = std::lower_bound(begin, end, static_cast<std::uint32_t>(cp),
                                      [](const CcEntry& e, std::uint32_t v) { return e.cp < v; });
    return (it != end && it->cp == cp) ? it->ccc : 0;
}

bool is_virama(char32_t cp) { return in_ranges(kViramaRanges, cp); }

bool is_indic_consonant(char32_t cp) {
    const Script s = script_of(cp);
    if (s == Script::Latin || s == Script::Arabic || s == Script::Other) {
        return false;
    }
    return in_spans(kConsonantSpans, sizeof(kConsonantSpans) / sizeof(ScriptSpan), cp, s);
}

bool is_vowel_sign(char32_t cp) {
    const Script s = script_of(cp);
    if (s == Script::Latin || s == Script::Arabic || s == Script::Other) {
        return false;
    }
    return in_spans(kVowelSignSpans, sizeof(kVowelSignSpans) / sizeof(ScriptSpan), cp, s);
}

std::u32string nfc(std::u32string_view cps) {
    // Fast path: pure ASCII (and Latin-1 below the first combining mark)
    // never changes under NFC.
    if (std::all_of(cps.begin(), cps.end(), [](char32_t c) { return c < 0xC0; })) {
        return std::u32string(cps);
    }

    // Canonical decomposition.
    std::u32string buf;
    buf.reserve(cps.size() + 8);
    for (char32_t cp : cps) {
        decompose_cp(cp, buf);
    }

    // Canonical ordering: stable sort of nonzero-ccc runs.
    for (std::size_t i = 1; i < buf.size(); ++i) {
        const std::uint8_t cc = combining_class(buf[i]);
        if (cc == 0) {
            continue;
        }
        std::size_t j = i;
        while (j > 0) {
            const std::uint8_t prev = combining_class(buf[j - 1]);
            if (prev == 0 || prev <= cc) {
                break;
            }
            std::swap(buf[j - 1], buf[j]);
            --j;
        }
    }

    // Canonical composition. A char can combine with the last starter when
    // it directly follows it, or when every intervening char has a strictly
    // smaller combining class (canonical order makes last_cc the maximum).
    std::u32string out;
    out.reserve(buf.size());
    std::ptrdiff_t last_starter = -1;
    std::uint8_t last_cc = 0;
    for (char32_t cp : buf) {
        const std::uint8_t cc = combining_class(cp);
        if (last_starter >= 0) {
            const bool adjacent = out.size() == static_cast<std::size_t>(last_starter) + 1;
            if (adjacent || (last_cc != 0 && last_cc < cc)) {
                if (const char32_t composed = compose_pair(out[last_starter], cp)) {
                    out[last_starter] = composed;
                    continue;
                }
            }
        }
        if (cc == 0) {
            last_starter = static_cast<std::ptrdiff_t>(out.size());
        }
        out.push_back(cp);
        last_cc = cc;
    }
    return out;
}

std::string nfc(std::string_view utf8) {
    // Bytes below 0xC2 start only ASCII sequences; pure ASCII is NFC already.
    if (std::all_of(utf8.begin(), utf8.end(),
                    [](char c) { return static_cast<unsigned char>(c) < 0x80; })) {
        return std::string(utf8);
    }
    return encode_utf8(nfc(decode_utf8_or_throw(utf8)));
}

bool is_nfc_stable(char32_t cp) {
    const std::u32string in(1, cp);
    return nfc(in) == in;
}

} // namespace corpusforge::uni
