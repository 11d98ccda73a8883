#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "corpusforge/error.hpp"
#include "corpusforge/sampler.hpp"
#include "corpusforge/util.hpp"

using namespace corpusforge;

namespace {

CorpusStats stats_of(std::initializer_list<std::pair<const char*, std::uint64_t>> words,
                     SourceKind source = SourceKind::wikipedia) {
    CorpusStats stats;
    for (const auto& [code, n] : words) {
        Counts c;
        c.docs = n > 0 ? 1 : 0;
        c.words = n;
        c.chars = n;
        stats.rows[StatsKey{LanguageTag::parse(code), source}] = c;
    }
    return stats;
}

std::vector<DocumentRecord> single_word_docs(std::size_t n) {
    std::vector<DocumentRecord> docs;
    for (std::size_t i = 0; i < n; ++i) {
        docs.push_back(DocumentRecord{make_doc_id(0, static_cast<std::uint32_t>(i)),
                                      LanguageTag::parse("hi"), SourceKind::wikipedia, "w"});
    }
    return docs;
}

} // namespace

TEST_CASE("multiplier basics") {
    CHECK(upsampling_multiplier(5e6, 5e6, 0.3) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(upsampling_multiplier(123.0, 4.5e9, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(upsampling_multiplier(10.0, 100.0, 0.0) == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("multiplier matches the high-precision reference value") {
    // (2.8e9 / 2.5e6)^0.7 = 1120^0.7, evaluated with 40-digit arithmetic
    const double expected = 136.2864301432216855;
    const double got = upsampling_multiplier(2.5e6, 2.8e9, 0.3);
    CHECK(std::abs(got - expected) / expected < 1e-12);
}

TEST_CASE("multiplier domain errors") {
    CHECK_THROWS_AS(upsampling_multiplier(0.0, 10.0, 0.3), DomainError);
    CHECK_THROWS_AS(upsampling_multiplier(11.0, 10.0, 0.3), DomainError);
    CHECK_THROWS_AS(upsampling_multiplier(5.0, 10.0, -0.1), DomainError);
    CHECK_THROWS_AS(upsampling_multiplier(5.0, 10.0, 1.5), DomainError);
}

TEST_CASE("build_plan single language") {
    const auto plan = build_plan(stats_of({{"hi", 100}}), SourceKind::wikipedia, 0.3);
    REQUIRE(plan.entries.size() == 1);
    CHECK(plan.entries[0].multiplier == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(plan.entries[0].upsampled_words == 100);
}

TEST_CASE("build_plan two languages, alpha 0.3") {
    const auto plan = build_plan(stats_of({{"en", 100}, {"hi", 10}}), SourceKind::wikipedia, 0.3);
    REQUIRE(plan.entries.size() == 2);
    // entries are in language order: en before hi
    CHECK(plan.entries[0].lang == LanguageTag::parse("en"));
    CHECK(plan.entries[0].multiplier == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(plan.entries[0].upsampled_words == 100);
    // 10^0.7 = 5.011872336272722850..., 40-digit reference value
    CHECK(plan.entries[1].multiplier == doctest::Approx(5.0118723362727228).epsilon(1e-14));
    CHECK(plan.entries[1].upsampled_words == 50); // round(50.11872...)
}

TEST_CASE("build_plan alpha 0 equalizes, alpha 1 is identity") {
    const auto flat = build_plan(stats_of({{"en", 100}, {"hi", 10}}), SourceKind::wikipedia, 0.0);
    CHECK(flat.entries[0].upsampled_words == 100);
    CHECK(flat.entries[1].upsampled_words == 100);

    const auto identity =
        build_plan(stats_of({{"en", 100}, {"hi", 10}}), SourceKind::wikipedia, 1.0);
    CHECK(identity.entries[0].upsampled_words == 100);
    CHECK(identity.entries[1].upsampled_words == 10);
    CHECK(identity.entries[1].multiplier == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("build_plan excludes zero counts and rejects empty corpora") {
    const auto plan =
        build_plan(stats_of({{"en", 50}, {"ks", 0}}), SourceKind::wikipedia, 0.3);
    CHECK(plan.entries.size() == 1);
    REQUIRE(plan.zero_count.size() == 1);
    CHECK(plan.zero_count[0] == LanguageTag::parse("ks"));

    CHECK_THROWS_WITH_AS(build_plan(stats_of({{"en", 0}}), SourceKind::wikipedia, 0.3),
                         doctest::Contains("empty corpus set"), DomainError);
    CHECK_THROWS_AS(build_plan(CorpusStats{}, SourceKind::wikipedia, 0.3), DomainError);
}

TEST_CASE("plan multipliers are scale invariant") {
    Rng rng(99);
    for (int iter = 0; iter < 200; ++iter) {
        const double n = 1.0 + static_cast<double>(rng.below(1u << 20));
        const double n_max = n + static_cast<double>(rng.below(1u << 20));
        const double alpha = rng.unit();
        const double c = 1.0 + rng.unit() * 999.0;
        const double m1 = upsampling_multiplier(n, n_max, alpha);
        const double m2 = upsampling_multiplier(c * n, c * n_max, alpha);
        CHECK(std::abs(m1 - m2) / m1 < 1e-12);
    }
}

TEST_CASE("plan multipliers never increase with corpus size") {
    const auto plan = build_plan(
        stats_of({{"en", 2800000}, {"hi", 38000}, {"as", 2500}, {"ta", 26000}}),
        SourceKind::wikipedia, 0.3);
    for (std::size_t i = 0; i < plan.entries.size(); ++i) {
        for (std::size_t j = 0; j < plan.entries.size(); ++j) {
            if (plan.entries[i].original_words < plan.entries[j].original_words) {
                CHECK(plan.entries[i].multiplier >= plan.entries[j].multiplier);
            }
        }
    }
}

TEST_CASE("plan csv format") {
    const auto plan = build_plan(stats_of({{"en", 100}, {"hi", 10}}), SourceKind::wikipedia, 0.3);
    CHECK(plan_to_csv(plan) == "lang,n,multiplier,upsampled\n"
                               "en,100,1.000000,100\n"
                               "hi,10,5.011872,50\n");
}

TEST_CASE("materialize with integral multipliers") {
    const auto docs = single_word_docs(4);
    const auto same = materialize(docs, 1.0, 42);
    CHECK(same == docs);

    const auto tripled = materialize(docs, 3.0, 42);
    REQUIRE(tripled.size() == 12);
    for (std::size_t pass = 0; pass < 3; ++pass) {
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(tripled[pass * 4 + i] == docs[i]);
        }
    }
}

TEST_CASE("materialize partial pass stays within the 3-sigma binomial band") {
    const auto docs = single_word_docs(1000);
    // Binomial(1000, 0.5): mean 500, sigma = sqrt(250)
    const double sigma = std::sqrt(1000.0 * 0.5 * 0.5);
    const auto out = materialize(docs, 2.5, 20260811);
    const double emitted = static_cast<double>(out.size());
    CHECK(emitted > 2500.0 - 3.0 * sigma);
    CHECK(emitted < 2500.0 + 3.0 * sigma);
}

TEST_CASE("materialize is reproducible and order-independent") {
    const auto docs = single_word_docs(500);
    const auto a = materialize(docs, 1.7, 1234);
    const auto b = materialize(docs, 1.7, 1234);
    CHECK(a == b);
    const auto c = materialize(docs, 1.7, 1235);
    CHECK(a != c); // different seed, different partial pass

    // The partial-pass decision depends only on (seed, id): reversing the
    // stream keeps exactly the same document set.
    std::vector<DocumentRecord> reversed(docs.rbegin(), docs.rend());
    const auto d = materialize(reversed, 1.7, 1234);
    auto keys = [](const std::vector<DocumentRecord>& v) {
        std::vector<std::uint64_t> ids;
        for (const auto& doc : v) {
            ids.push_back(doc.id);
        }
        std::sort(ids.begin(), ids.end());
        return ids;
    };
    CHECK(keys(a) == keys(d));
}

TEST_CASE("materialize rejects multipliers below one") {
    CHECK_THROWS_AS(materialize(single_word_docs(3), 0.9, 1), DomainError);
}

TEST_CASE("plan totals match the expected materialized word count within rounding") {
    const auto plan = build_plan(
        stats_of({{"en", 271828}, {"hi", 31415}, {"bn", 2718}, {"ta", 161803}}),
        SourceKind::wikipedia, 0.3);
    double expected = 0.0;
    std::uint64_t reported = 0;
    for (const auto& e : plan.entries) {
        expected += e.multiplier * static_cast<double>(e.original_words);
        reported += e.upsampled_words;
    }
    CHECK(std::abs(static_cast<double>(reported) - expected) <=
          static_cast<double>(plan.entries.size()));
}
