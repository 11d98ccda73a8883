#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "corpusforge/corpus.hpp"
#include "corpusforge/ingest.hpp"
#include "corpusforge/instances.hpp"
#include "corpusforge/sampler.hpp"
#include "corpusforge/translit.hpp"
#include "corpusforge/vocab.hpp"

namespace corpusforge {

struct CorpusDecl {
    LanguageTag lang;
    SourceKind source = SourceKind::wikipedia;
    std::filesystem::path path;
    std::string label; // free-form provenance
};

// Line-aligned native/English document pair files (translated data).
struct ParallelDecl {
    LanguageTag lang;
    std::filesystem::path native_path;
    std::filesystem::path english_path;
    std::string label;
};

struct PipelineConfig {
    std::vector<CorpusDecl> corpora;
    std::vector<ParallelDecl> parallel;

    double alpha = kDefaultAlpha;
    SourceKind plan_source = SourceKind::wikipedia;

    VocabTrainConfig vocab;
    InstanceConfig instances;

    bool translit_enabled = true;
    std::vector<std::filesystem::path> translit_tables;
    std::set<std::string> translit_excluded = {"ks", "sa", "sd"};

    std::filesystem::path out_dir = "out";
    std::uint64_t seed = 0;
    std::size_t threads = 0;
    InvalidLinePolicy on_invalid = InvalidLinePolicy::abort;

    // Sectioned key-value text; paths are resolved against the config file's
    // directory. See the repository README for the format.
    static PipelineConfig load(const std::filesystem::path& path);
    static PipelineConfig parse(std::string_view content, const std::filesystem::path& base_dir);

    // Throws MissingFilesError listing every absent declared path.
    void check_paths() const;
};

struct ArtifactInfo {
    std::uint64_t bytes = 0;
    std::string fnv64; // hex digest
};

struct BuildManifest {
    std::map<std::string, ArtifactInfo> artifacts; // filename -> info
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t seed = 0;
    double alpha = kDefaultAlpha;
    std::uint64_t vocab_hash = 0;

    std::string to_json() const; // stable formatting
};

// Ingests every declared corpus (shard index = declaration order).
std::vector<DocumentRecord> run_ingest(const PipelineConfig& cfg);
std::vector<ParallelPair> run_ingest_parallel(const PipelineConfig& cfg);

CorpusStats run_stats(const PipelineConfig& cfg);
SamplingPlan run_plan(const PipelineConfig& cfg);

// Full pipeline: stats, plan, upsampling, transliteration, vocabulary,
// instances, metrics. Writes all artifacts under cfg.out_dir and returns the
// manifest. Failures are rethrown as StageError naming the stage.
BuildManifest run_build(const PipelineConfig& cfg);

// Vocabulary exactly as cmd_build would train it (upsampled monolingual data
// plus parallel/transliterated text).
Vocabulary run_train_vocab(const PipelineConfig& cfg);

} // namespace corpusforge
