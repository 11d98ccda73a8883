#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "corpusforge/corpus.hpp"
#include "corpusforge/error.hpp"
#include "corpusforge/translit.hpp"
#include "corpusforge/unicode.hpp"
#include "corpusforge/util.hpp"

using namespace corpusforge;

namespace {

const RomanizationTable& devanagari() {
    static const RomanizationTable table =
        RomanizationTable::load(std::filesystem::path(CORPUSFORGE_TABLE_DIR) / "devanagari.tsv");
    return table;
}

const RomanizationTable& bengali() {
    static const RomanizationTable table =
        RomanizationTable::load(std::filesystem::path(CORPUSFORGE_TABLE_DIR) / "bengali.tsv");
    return table;
}

bool pure_of(std::string_view text, Script script) {
    for (char32_t cp : uni::decode_utf8_or_throw(text)) {
        if (uni::script_of(cp) == script) {
            return false;
        }
    }
    return true;
}

// Akshara-shaped random text over a table's native inventory.
std::string random_native(Rng& rng, const std::vector<char32_t>& consonants,
                          const std::vector<char32_t>& vowel_signs,
                          const std::vector<char32_t>& independents, char32_t virama) {
    std::u32string s;
    const std::size_t words = 1 + rng.below(5);
    for (std::size_t w = 0; w < words; ++w) {
        if (w > 0) {
            s.push_back(' ');
        }
        const std::size_t aksharas = 1 + rng.below(4);
        for (std::size_t a = 0; a < aksharas; ++a) {
            switch (rng.below(6)) {
            case 0:
                s.push_back(independents[rng.below(independents.size())]);
                break;
            case 1:
                s.push_back(consonants[rng.below(consonants.size())]);
                s.push_back(virama);
                s.push_back(consonants[rng.below(consonants.size())]);
                break;
            case 2:
                s.push_back(consonants[rng.below(consonants.size())]);
                s.push_back(vowel_signs[rng.below(vowel_signs.size())]);
                break;
            default:
                s.push_back(consonants[rng.below(consonants.size())]);
                break;
            }
        }
        if (rng.below(4) == 0) {
            s.push_back(U'1' + static_cast<char32_t>(rng.below(9)));
        }
    }
    return uni::encode_utf8(s);
}

} // namespace

TEST_CASE("romanize golden outputs, devanagari") {
    const auto& table = devanagari();
    CHECK(romanize("", table).empty());
    CHECK(romanize("hello", table) == "hello");
    // hand-applied: na + ma + s(virama) + t + e
    CHECK(romanize("नमस्ते", table) == "namaste");
    // k(virama) + y + a-sign
    CHECK(romanize("क्या", table) == "kya");
    // h + i-sign + anusvara + d + ii-sign
    CHECK(romanize("हिंदी", table) == "hindi");
    // conjunct cluster ksh + implicit a, then m + aa-sign
    CHECK(romanize("क्षमा", table) == "kshama");
    // nukta cluster za + r + uu-sign + r + ii-sign
    CHECK(romanize("ज़रूरी", table) == "zaruri");
    CHECK(romanize("भारत", table) == "bharata");
    // native digits map to ascii digits
    CHECK(romanize("१२३", table) == "123");
    // latin, ascii digits and punctuation pass through; danda is Common
    CHECK(romanize("hello दुनिया 123!", table) == "hello duniya 123!");
    CHECK(romanize("घर।", table) == "ghara\xe0\xa5\xa4");
}

TEST_CASE("romanize golden outputs, bengali") {
    const auto& table = bengali();
    CHECK(romanize("বাংলা", table) == "bangla");
    CHECK(romanize("নমস্কার", table) == "namaskara");
    CHECK(romanize("ক্ষমা", table) == "kkhama");
    CHECK(romanize("বড়", table) == "bara");
}

TEST_CASE("romanize leaves other scripts alone") {
    // tamil text passes through a devanagari table unchanged
    const std::string tamil = "தமிழ் மொழி";
    CHECK(romanize(tamil, devanagari()) == tamil);
}

TEST_CASE("romanize purity and idempotence over generated strings") {
    const std::vector<char32_t> deva_cons = {0x0915, 0x0916, 0x0917, 0x091C, 0x0924, 0x0926,
                                             0x0928, 0x092A, 0x092E, 0x092F, 0x0930, 0x0932,
                                             0x0935, 0x0936, 0x0938, 0x0939};
    const std::vector<char32_t> deva_signs = {0x093E, 0x093F, 0x0940, 0x0941, 0x0942,
                                              0x0947, 0x0948, 0x094B, 0x094C, 0x0902};
    const std::vector<char32_t> deva_indep = {0x0905, 0x0906, 0x0907, 0x0909, 0x090F, 0x0913};
    const std::vector<char32_t> beng_cons = {0x0995, 0x0996, 0x0997, 0x099A, 0x099C, 0x09A4,
                                             0x09A6, 0x09A8, 0x09AA, 0x09AE, 0x09B0, 0x09B2,
                                             0x09B8, 0x09B9};
    const std::vector<char32_t> beng_signs = {0x09BE, 0x09BF, 0x09C0, 0x09C1, 0x09C2,
                                              0x09C7, 0x09C8, 0x09CB, 0x0982};
    const std::vector<char32_t> beng_indep = {0x0985, 0x0986, 0x0987, 0x0989, 0x098F, 0x0993};

    Rng rng(424242);
    for (int i = 0; i < 5000; ++i) {
        const std::string text =
            uni::nfc(random_native(rng, deva_cons, deva_signs, deva_indep, 0x094D));
        const std::string out = romanize(text, devanagari());
        CAPTURE(text);
        CHECK(pure_of(out, Script::Devanagari));
        CHECK(romanize(out, devanagari()) == out);
        CHECK(pretokenized_word_count(out) == pretokenized_word_count(text));
    }
    for (int i = 0; i < 5000; ++i) {
        const std::string text =
            uni::nfc(random_native(rng, beng_cons, beng_signs, beng_indep, 0x09CD));
        const std::string out = romanize(text, bengali());
        CAPTURE(text);
        CHECK(pure_of(out, Script::Bengali));
        CHECK(romanize(out, bengali()) == out);
        CHECK(pretokenized_word_count(out) == pretokenized_word_count(text));
    }
}

TEST_CASE("bundled table files load and are total") {
    CHECK(devanagari().script == Script::Devanagari);
    CHECK(devanagari().implicit_vowel == "a");
    CHECK(devanagari().max_key_cps == 3);
    CHECK(bengali().script == Script::Bengali);
}

TEST_CASE("table parse errors") {
    CHECK_THROWS_WITH_AS(RomanizationTable::parse("\xe0\xa4\x95\tk\n", "t"),
                         doctest::Contains("#script"), ParseError);
    CHECK_THROWS_WITH_AS(RomanizationTable::parse("#script Klingon\n", "t"),
                         doctest::Contains("unknown script"), ParseError);
    CHECK_THROWS_WITH_AS(
        RomanizationTable::parse("#script Devanagari\n#implicit_vowel a\n\xe0\xa4\x95\tk!\n", "t"),
        doctest::Contains("ASCII"), ParseError);
    CHECK_THROWS_WITH_AS(
        RomanizationTable::parse("#script Devanagari\n#implicit_vowel a\nabc\tk\n", "t"),
        doctest::Contains("outside script"), ParseError);
    // an otherwise valid but incomplete table fails the totality check
    CHECK_THROWS_WITH_AS(
        RomanizationTable::parse("#script Devanagari\n#implicit_vowel a\n\xe0\xa4\x95\tk\n", "t"),
        doctest::Contains("does not cover"), ParseError);
}

TEST_CASE("make_translit_pairs eligibility") {
    std::map<Script, RomanizationTable> tables;
    tables.emplace(Script::Devanagari, devanagari());
    tables.emplace(Script::Bengali, bengali());

    const auto doc = [](const char* lang, const char* text, std::uint32_t line) {
        return DocumentRecord{make_doc_id(0, line), LanguageTag::parse(lang),
                              SourceKind::wikipedia, text};
    };

    SUBCASE("hindi stream produces one pair per document") {
        std::vector<DocumentRecord> docs;
        for (std::uint32_t i = 0; i < 5; ++i) {
            docs.push_back(doc("hi", "नमस्ते दुनिया", i));
        }
        TranslitReport report;
        const auto pairs = make_translit_pairs(docs, tables, {}, &report);
        REQUIRE(pairs.size() == 5);
        CHECK(report.pairs == 5);
        for (const auto& pair : pairs) {
            CHECK(pair.kind == PairKind::transliterated);
            CHECK(pair.tgt.lang.transliterated);
            CHECK(pair.tgt.lang.index == pair.src.lang.index);
            CHECK(pair.tgt.text == "namaste duniya");
            CHECK_NOTHROW(validate_pair(pair));
        }
    }

    SUBCASE("languages without a table are skipped with a counter") {
        std::vector<DocumentRecord> docs;
        for (std::uint32_t i = 0; i < 5; ++i) {
            docs.push_back(doc("ks", "some text", i));
        }
        TranslitReport report;
        const auto pairs = make_translit_pairs(docs, tables, {}, &report);
        CHECK(pairs.empty());
        CHECK(report.skipped_by_lang.at("ks") == 5);
    }

    SUBCASE("sanskrit is excluded even though its script has a table") {
        std::vector<DocumentRecord> docs{doc("hi", "नमस्ते", 0), doc("sa", "नमस्ते", 1)};
        TranslitReport report;
        const auto pairs = make_translit_pairs(docs, tables, {}, &report);
        REQUIRE(pairs.size() == 1);
        CHECK(pairs[0].src.lang == LanguageTag::parse("hi"));
        CHECK(report.skipped_by_lang.at("sa") == 1);
    }

    SUBCASE("english and already-transliterated docs never pair") {
        DocumentRecord tr = doc("hi", "namaste", 1);
        tr.lang.transliterated = true;
        std::vector<DocumentRecord> docs{doc("en", "hello", 0), tr};
        const auto pairs = make_translit_pairs(docs, tables, {});
        CHECK(pairs.empty());
    }

    SUBCASE("marathi and nepali share the devanagari table") {
        std::vector<DocumentRecord> docs{doc("mr", "नमस्ते", 0), doc("ne", "नमस्ते", 1)};
        const auto pairs = make_translit_pairs(docs, tables, {});
        CHECK(pairs.size() == 2);
    }
}
