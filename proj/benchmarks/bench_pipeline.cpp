#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "corpusforge/corpus.hpp"
#include "corpusforge/instances.hpp"
#include "corpusforge/sampler.hpp"
#include "corpusforge/translit.hpp"
#include "corpusforge/unicode.hpp"
#include "corpusforge/util.hpp"
#include "corpusforge/vocab.hpp"

namespace {

using namespace corpusforge;

std::string devanagari_text(std::size_t words) {
    const char* pool[] = {"नमस्ते", "दुनिया", "भारत", "पानी", "किताब", "विद्यालय", "सुंदर", "आसमान"};
    Rng rng(1);
    std::string out;
    for (std::size_t i = 0; i < words; ++i) {
        if (i > 0) {
            out += ' ';
        }
        out += pool[rng.below(8)];
    }
    return out;
}

std::string mixed_text(std::size_t words) {
    const char* pool[] = {"the", "river", "नमस्ते", "market", "दुनिया", "evening", "भारत", "water"};
    Rng rng(2);
    std::string out;
    for (std::size_t i = 0; i < words; ++i) {
        if (i > 0) {
            out += ' ';
        }
        out += pool[rng.below(8)];
    }
    return out;
}

Vocabulary bench_vocab() {
    std::vector<DocumentRecord> docs{
        {0, LanguageTag::parse("hi"), SourceKind::wikipedia, devanagari_text(4000)},
        {1, LanguageTag::parse("en"), SourceKind::wikipedia, mixed_text(4000)},
    };
    VocabTrainConfig cfg;
    cfg.target_size = 300;
    cfg.min_word_frequency = 1;
    return train_vocab(smooth_and_merge(collect_word_freqs(docs, 100), 1.0), cfg);
}

void BM_NfcNormalize(benchmark::State& state) {
    const std::string text = devanagari_text(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(uni::nfc(text));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}

void BM_Pretokenize(benchmark::State& state) {
    const std::string text = mixed_text(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(pretokenize(text));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}

void BM_Romanize(benchmark::State& state) {
    const auto table = RomanizationTable::load(CORPUSFORGE_TABLE_DIR "/devanagari.tsv");
    const std::string text = devanagari_text(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(romanize(text, table));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}

void BM_Tokenize(benchmark::State& state) {
    const auto vocab = bench_vocab();
    const std::string text = mixed_text(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(tokenize(text, vocab));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}

void BM_TrainVocab(benchmark::State& state) {
    std::vector<DocumentRecord> docs{
        {0, LanguageTag::parse("hi"), SourceKind::wikipedia, devanagari_text(2000)},
        {1, LanguageTag::parse("en"), SourceKind::wikipedia, mixed_text(2000)},
    };
    const auto merged = smooth_and_merge(collect_word_freqs(docs, 100), 1.0);
    VocabTrainConfig cfg;
    cfg.target_size = static_cast<std::uint32_t>(state.range(0));
    cfg.min_word_frequency = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(train_vocab(merged, cfg));
    }
}

void BM_BuildMlm(benchmark::State& state) {
    const auto vocab = bench_vocab();
    const DocumentRecord doc{7, LanguageTag::parse("hi"), SourceKind::wikipedia,
                             devanagari_text(static_cast<std::size_t>(state.range(0)))};
    InstanceConfig cfg;
    cfg.seed = 3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_mlm(doc, vocab, cfg));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Materialize(benchmark::State& state) {
    std::vector<DocumentRecord> docs;
    for (std::uint32_t i = 0; i < static_cast<std::uint32_t>(state.range(0)); ++i) {
        docs.push_back({make_doc_id(0, i), LanguageTag::parse("hi"), SourceKind::wikipedia,
                        "नमस्ते दुनिया"});
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(materialize(docs, 2.5, 9));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK(BM_NfcNormalize)->Arg(100)->Arg(10000);
BENCHMARK(BM_Pretokenize)->Arg(100)->Arg(10000);
BENCHMARK(BM_Romanize)->Arg(100)->Arg(10000);
BENCHMARK(BM_Tokenize)->Arg(100)->Arg(10000);
BENCHMARK(BM_TrainVocab)->Arg(150)->Arg(300);
BENCHMARK(BM_BuildMlm)->Arg(1000)->Arg(20000);
BENCHMARK(BM_Materialize)->Arg(1000);

} // namespace

BENCHMARK_MAIN();
