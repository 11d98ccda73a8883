#include "corpusforge/pipeline.hpp"

#include <algorithm>
#include <charconv>

#include <nlohmann/json.hpp>

#include "corpusforge/error.hpp"
#include "corpusforge/ingest.hpp"
#include "corpusforge/util.hpp"

namespace corpusforge {

namespace {

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) {
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') {
            ++j;
        }
        if (j > i) {
            out.emplace_back(s.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_double(std::string_view value, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(std::string(value), &pos);
        if (pos != value.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    } catch (const std::exception&) {
        throw ParseError(where + ": expected a number, got '" + std::string(value) + "'");
    }
}

std::uint64_t parse_u64(std::string_view value, const std::string& where) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ParseError(where + ": expected an unsigned integer, got '" + std::string(value) +
                         "'");
    }
    return v;
}

bool parse_bool(std::string_view value, const std::string& where) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") {
        return true;
    }
    if (value == "false" || value == "0" || value == "no" || value == "off") {
        return false;
    }
    throw ParseError(where + ": expected a boolean, got '" + std::string(value) + "'");
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::vector<DocumentRecord> ingest_decl(const CorpusDecl& decl, std::uint32_t shard,
                                        const PipelineConfig& cfg) {
    if (decl.path.extension() == ".rec") {
        return read_sharded(decl.path, shard);
    }
    IngestOptions options;
    options.on_invalid = cfg.on_invalid;
    return ingest_plain(decl.path, decl.lang, decl.source, shard, options);
}

template <typename Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

std::map<Script, RomanizationTable> load_tables(const PipelineConfig& cfg) {
    std::map<Script, RomanizationTable> tables;
    for (const auto& path : cfg.translit_tables) {
        RomanizationTable table = RomanizationTable::load(path);
        const Script script = table.script;
        if (!tables.emplace(script, std::move(table)).second) {
            throw ParseError("duplicate romanization table for script " +
                             std::string(script_name(script)));
        }
    }
    return tables;
}

struct PreparedData {
    std::vector<DocumentRecord> monolingual;
    std::vector<DocumentRecord> upsampled;
    std::vector<ParallelPair> pairs; // translated first, then transliterated
    CorpusStats stats;
    SamplingPlan plan;
    TranslitReport translit_report;
    std::uint64_t translated_pairs = 0;
    std::uint64_t transliterated_pairs = 0;
};

// Upsamples plan-source documents per language; other sources pass through.
std::vector<DocumentRecord> upsample(const PipelineConfig& cfg, const SamplingPlan& plan,
                                     std::span<const DocumentRecord> docs) {
    std::vector<DocumentRecord> out;
    std::map<LanguageTag, std::vector<DocumentRecord>> by_lang;
    for (const DocumentRecord& doc : docs) {
        if (doc.source == cfg.plan_source) {
            by_lang[doc.lang].push_back(doc);
        } else {
            out.push_back(doc);
        }
    }
    for (const PlanEntry& entry : plan.entries) {
        const auto it = by_lang.find(entry.lang);
        if (it == by_lang.end()) {
            continue;
        }
        auto replicated =
            materialize(it->second, entry.multiplier, mix_seed(cfg.seed, entry.lang.index));
        out.insert(out.end(), std::make_move_iterator(replicated.begin()),
                   std::make_move_iterator(replicated.end()));
    }
    return out;
}

// Shared front half of the pipeline: ingest, transliterate, stats, plan,
// upsample.
PreparedData prepare(const PipelineConfig& cfg) {
    PreparedData d;
    d.monolingual = stage("ingest", [&] { return run_ingest(cfg); });
    d.pairs = stage("ingest", [&] { return run_ingest_parallel(cfg); });
    d.translated_pairs = d.pairs.size();

    if (cfg.translit_enabled) {
        stage("translit", [&] {
            const auto tables = load_tables(cfg);
            TranslitOptions options;
            options.excluded_langs = cfg.translit_excluded;
            std::vector<DocumentRecord> sources;
            for (const DocumentRecord& doc : d.monolingual) {
                if (doc.source == cfg.plan_source) {
                    sources.push_back(doc);
                }
            }
            auto pairs = make_translit_pairs(sources, tables, options, &d.translit_report);
            d.transliterated_pairs = pairs.size();
            d.pairs.insert(d.pairs.end(), std::make_move_iterator(pairs.begin()),
                           std::make_move_iterator(pairs.end()));
            return 0;
        });
    }

    d.stats = stage("stats", [&] {
        CorpusStats stats = count_tokens(d.monolingual);
        for (const ParallelPair& pair : d.pairs) {
            stats.add(pair.src);
            stats.add(pair.tgt);
        }
        return stats;
    });
    d.plan = stage("plan", [&] { return build_plan(d.stats, cfg.plan_source, cfg.alpha); });
    d.upsampled = stage("upsample", [&] { return upsample(cfg, d.plan, d.monolingual); });
    return d;
}

// Vocabulary data: upsampled monolingual text plus the parallel sides that
// are not already monolingual documents (translated corpora and the Latin
// transliterations).
Vocabulary train_from_prepared(const PipelineConfig& cfg, const PreparedData& d,
                               WordFreqReport* report) {
    return stage("vocab", [&] {
        std::vector<DocumentRecord> vocab_docs = d.upsampled;
        for (const ParallelPair& pair : d.pairs) {
            if (pair.kind == PairKind::translated) {
                vocab_docs.push_back(pair.src);
                vocab_docs.push_back(pair.tgt);
            } else {
                vocab_docs.push_back(pair.tgt);
            }
        }
        const auto freqs = collect_word_freqs(vocab_docs, cfg.vocab.max_word_length, report);
        const auto merged = smooth_and_merge(freqs, cfg.vocab.smoothing_exponent);
        return train_vocab(merged, cfg.vocab);
    });
}

} // namespace

PipelineConfig PipelineConfig::parse(std::string_view content,
                                     const std::filesystem::path& base_dir) {
    PipelineConfig cfg;
    std::string section;
    std::size_t line_no = 0;
    std::size_t start = 0;
    bool corpora_declared = false;
    while (start <= content.size()) {
        const std::size_t nl = content.find('\n', start);
        std::string_view raw = content.substr(
            start, nl == std::string_view::npos ? content.size() - start : nl - start);
        start = nl == std::string_view::npos ? content.size() + 1 : nl + 1;
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty() || line.starts_with('#')) {
            continue;
        }
        const std::string where = "config line " + std::to_string(line_no);
        if (line.starts_with('[') && line.ends_with(']')) {
            section = std::string(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError(where + ": expected 'key = value'");
        }
        const std::string key{trim(line.substr(0, eq))};
        const std::string value{trim(line.substr(eq + 1))};
        const auto resolve = [&](std::string_view p) { return base_dir / p; };

        if (section == "corpus") {
            if (key == "file") {
                const auto fields = split_ws(value);
                if (fields.size() < 3 || fields.size() > 4) {
                    throw ParseError(where + ": expected 'file = <lang> <source> <path> [label]'");
                }
                CorpusDecl decl;
                decl.lang = LanguageTag::parse(fields[0]);
                decl.source = parse_source_kind(fields[1]);
                // parallel kinds only ever live inside pairs
                if (decl.source != SourceKind::wikipedia && decl.source != SourceKind::crawl) {
                    throw ParseError(where + ": corpus files must be wikipedia or crawl; use "
                                             "'parallel =' for aligned pair files");
                }
                decl.path = resolve(fields[2]);
                decl.label = fields.size() == 4 ? fields[3] : "";
                cfg.corpora.push_back(std::move(decl));
                corpora_declared = true;
            } else if (key == "dir") {
                const std::filesystem::path dir = resolve(value);
                corpora_declared = true;
                if (!std::filesystem::is_directory(dir)) {
                    throw MissingFilesError({dir});
                }
                std::vector<CorpusDecl> found;
                for (const auto& entry : std::filesystem::directory_iterator(dir)) {
                    if (!entry.is_regular_file()) {
                        continue;
                    }
                    if (const auto name =
                            parse_corpus_filename(entry.path().filename().string())) {
                        found.push_back(CorpusDecl{name->lang, name->source, entry.path(), ""});
                    }
                }
                std::sort(found.begin(), found.end(),
                          [](const CorpusDecl& a, const CorpusDecl& b) {
                              return a.path.string() < b.path.string();
                          });
                cfg.corpora.insert(cfg.corpora.end(), found.begin(), found.end());
            } else if (key == "parallel") {
                const auto fields = split_ws(value);
                if (fields.size() < 3 || fields.size() > 4) {
                    throw ParseError(where +
                                     ": expected 'parallel = <lang> <native> <english> [label]'");
                }
                ParallelDecl decl;
                decl.lang = LanguageTag::parse(fields[0]);
                decl.native_path = resolve(fields[1]);
                decl.english_path = resolve(fields[2]);
                decl.label = fields.size() == 4 ? fields[3] : "";
                cfg.parallel.push_back(std::move(decl));
            } else {
                throw ParseError(where + ": unknown corpus key '" + key + "'");
            }
        } else if (section == "pipeline" || section.empty()) {
            if (key == "seed") {
                cfg.seed = parse_u64(value, where);
            } else if (key == "out_dir") {
                cfg.out_dir = resolve(value);
            } else if (key == "threads") {
                cfg.threads = static_cast<std::size_t>(parse_u64(value, where));
            } else if (key == "on_invalid") {
                if (value == "skip") {
                    cfg.on_invalid = InvalidLinePolicy::skip;
                } else if (value == "abort") {
                    cfg.on_invalid = InvalidLinePolicy::abort;
                } else {
                    throw ParseError(where + ": on_invalid must be 'skip' or 'abort'");
                }
            } else {
                throw ParseError(where + ": unknown pipeline key '" + key + "'");
            }
        } else if (section == "sampling") {
            if (key == "alpha") {
                cfg.alpha = parse_double(value, where);
            } else if (key == "source") {
                cfg.plan_source = parse_source_kind(value);
            } else {
                throw ParseError(where + ": unknown sampling key '" + key + "'");
            }
        } else if (section == "vocab") {
            if (key == "target_size") {
                cfg.vocab.target_size = static_cast<std::uint32_t>(parse_u64(value, where));
            } else if (key == "smoothing_exponent") {
                cfg.vocab.smoothing_exponent = parse_double(value, where);
            } else if (key == "min_word_frequency") {
                cfg.vocab.min_word_frequency = parse_double(value, where);
            } else if (key == "max_word_length") {
                cfg.vocab.max_word_length = static_cast<std::uint32_t>(parse_u64(value, where));
            } else {
                throw ParseError(where + ": unknown vocab key '" + key + "'");
            }
        } else if (section == "instances") {
            if (key == "max_seq_len") {
                cfg.instances.max_seq_len = static_cast<std::uint32_t>(parse_u64(value, where));
            } else if (key == "mask_rate") {
                cfg.instances.mask_rate = parse_double(value, where);
            } else if (key == "mask_token_frac") {
                cfg.instances.mask_token_frac = parse_double(value, where);
            } else if (key == "random_frac") {
                cfg.instances.random_frac = parse_double(value, where);
            } else if (key == "keep_frac") {
                cfg.instances.keep_frac = parse_double(value, where);
            } else if (key == "max_predictions") {
                cfg.instances.max_predictions =
                    static_cast<std::uint32_t>(parse_u64(value, where));
            } else {
                throw ParseError(where + ": unknown instances key '" + key + "'");
            }
        } else if (section == "translit") {
            if (key == "table") {
                cfg.translit_tables.push_back(resolve(value));
            } else if (key == "enabled") {
                cfg.translit_enabled = parse_bool(value, where);
            } else if (key == "exclude") {
                cfg.translit_excluded.clear();
                for (const auto& code : split_ws(value)) {
                    cfg.translit_excluded.insert(code);
                }
            } else {
                throw ParseError(where + ": unknown translit key '" + key + "'");
            }
        } else {
            throw ParseError(where + ": unknown section [" + section + "]");
        }
    }
    if (!corpora_declared && cfg.corpora.empty() && cfg.parallel.empty()) {
        throw ParseError("config declares no corpora");
    }
    return cfg;
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
    return parse(read_file(path), path.has_parent_path() ? path.parent_path() : ".");
}

void PipelineConfig::check_paths() const {
    std::vector<std::filesystem::path> missing;
    const auto check = [&](const std::filesystem::path& p) {
        if (!std::filesystem::is_regular_file(p)) {
            missing.push_back(p);
        }
    };
    for (const auto& decl : corpora) {
        check(decl.path);
    }
    for (const auto& decl : parallel) {
        check(decl.native_path);
        check(decl.english_path);
    }
    if (translit_enabled) {
        for (const auto& table : translit_tables) {
            check(table);
        }
    }
    if (!missing.empty()) {
        throw MissingFilesError(std::move(missing));
    }
}

std::vector<DocumentRecord> run_ingest(const PipelineConfig& cfg) {
    cfg.check_paths();
    std::vector<std::vector<DocumentRecord>> shards(cfg.corpora.size());
    parallel_for(cfg.corpora.size(), effective_threads(cfg.threads), [&](std::size_t i) {
        shards[i] = ingest_decl(cfg.corpora[i], static_cast<std::uint32_t>(i), cfg);
    });
    std::vector<DocumentRecord> docs;
    for (auto& shard : shards) {
        docs.insert(docs.end(), std::make_move_iterator(shard.begin()),
                    std::make_move_iterator(shard.end()));
    }
    return docs;
}

std::vector<ParallelPair> run_ingest_parallel(const PipelineConfig& cfg) {
    std::vector<ParallelPair> pairs;
    const auto en = LanguageTag::parse("en");
    // Shard indices continue after the monolingual corpora.
    auto shard = static_cast<std::uint32_t>(cfg.corpora.size());
    IngestOptions options;
    options.on_invalid = cfg.on_invalid;
    for (const ParallelDecl& decl : cfg.parallel) {
        auto native = ingest_plain(decl.native_path, decl.lang, SourceKind::parallel_translation,
                                   shard, options);
        auto english = ingest_plain(decl.english_path, en, SourceKind::parallel_translation,
                                    shard + 1, options);
        if (native.size() != english.size()) {
            throw ParseError("parallel files are not line-aligned: " + decl.native_path.string() +
                             " has " + std::to_string(native.size()) + " documents, " +
                             decl.english_path.string() + " has " +
                             std::to_string(english.size()));
        }
        for (std::size_t i = 0; i < native.size(); ++i) {
            ParallelPair pair{std::move(native[i]), std::move(english[i]), PairKind::translated};
            validate_pair(pair);
            pairs.push_back(std::move(pair));
        }
        shard += 2;
    }
    return pairs;
}

CorpusStats run_stats(const PipelineConfig& cfg) {
    const auto docs = run_ingest(cfg);
    CorpusStats stats = count_tokens(docs);
    for (const ParallelPair& pair : run_ingest_parallel(cfg)) {
        stats.add(pair.src);
        stats.add(pair.tgt);
    }
    return stats;
}

SamplingPlan run_plan(const PipelineConfig& cfg) {
    return build_plan(run_stats(cfg), cfg.plan_source, cfg.alpha);
}

Vocabulary run_train_vocab(const PipelineConfig& cfg) {
    const PreparedData d = prepare(cfg);
    return train_from_prepared(cfg, d, nullptr);
}

std::string BuildManifest::to_json() const {
    nlohmann::ordered_json j;
    j["seed"] = seed;
    j["alpha"] = alpha;
    j["vocab_hash"] = hex64(vocab_hash);
    nlohmann::ordered_json counts_json = nlohmann::ordered_json::object();
    for (const auto& [key, value] : counts) {
        counts_json[key] = value;
    }
    j["counts"] = std::move(counts_json);
    nlohmann::ordered_json artifacts_json = nlohmann::ordered_json::object();
    for (const auto& [name, info] : artifacts) {
        artifacts_json[name] = {{"bytes", info.bytes}, {"fnv64", info.fnv64}};
    }
    j["artifacts"] = std::move(artifacts_json);
    return j.dump(2) + "\n";
}

BuildManifest run_build(const PipelineConfig& cfg) {
    PreparedData d = prepare(cfg);

    WordFreqReport word_report;
    const Vocabulary vocab = train_from_prepared(cfg, d, &word_report);
    const auto vocab_hash_prefix = static_cast<std::uint16_t>(vocab.content_hash() & 0xFFFF);

    InstanceConfig icfg = cfg.instances;
    icfg.seed = mix_seed(cfg.seed, 0x696e7374ull); // instance stream derives from the run seed

    std::vector<TrainingInstance> mlm;
    std::vector<TrainingInstance> tlm;
    std::uint64_t pairs_without_instances = 0;
    stage("instances", [&] {
        std::vector<std::vector<TrainingInstance>> slots(d.upsampled.size());
        parallel_for(d.upsampled.size(), effective_threads(cfg.threads), [&](std::size_t i) {
            slots[i] = build_mlm(d.upsampled[i], vocab, icfg);
        });
        for (auto& slot : slots) {
            mlm.insert(mlm.end(), std::make_move_iterator(slot.begin()),
                       std::make_move_iterator(slot.end()));
        }
        std::vector<std::vector<TrainingInstance>> pair_slots(d.pairs.size());
        parallel_for(d.pairs.size(), effective_threads(cfg.threads), [&](std::size_t i) {
            pair_slots[i] = build_tlm(d.pairs[i], vocab, icfg);
        });
        for (auto& slot : pair_slots) {
            if (slot.empty()) {
                pairs_without_instances += 1;
            }
            tlm.insert(tlm.end(), std::make_move_iterator(slot.begin()),
                       std::make_move_iterator(slot.end()));
        }
        return 0;
    });

    const FertilityReport fert = stage("metrics", [&] {
        std::vector<DocumentRecord> eval_docs = d.monolingual;
        for (const ParallelPair& pair : d.pairs) {
            if (pair.kind == PairKind::transliterated) {
                eval_docs.push_back(pair.tgt);
            }
        }
        return fertility(eval_docs, vocab);
    });
    const ScriptComposition comp = stage("metrics", [&] { return script_composition(vocab); });

    BuildManifest manifest;
    return stage("report", [&] {
        std::filesystem::create_directories(cfg.out_dir);
        const auto emit = [&](const std::string& name, std::string_view content) {
            write_file(cfg.out_dir / name, content);
            manifest.artifacts[name] = ArtifactInfo{content.size(), hex64(fnv1a64(content))};
        };
        emit("stats.csv", stats_to_csv(d.stats));
        emit("plan.csv", plan_to_csv(d.plan));
        emit("vocab.txt", vocab.to_text());
        emit("fertility.csv", fertility_to_csv(fert));
        emit("script_composition.csv", composition_to_csv(comp));

        write_records(mlm, cfg.out_dir / "instances.mlm.rec", vocab_hash_prefix);
        write_records(tlm, cfg.out_dir / "instances.tlm.rec", vocab_hash_prefix);
        for (const auto* name : {"instances.mlm.rec", "instances.tlm.rec"}) {
            const std::string content = read_file(cfg.out_dir / name);
            manifest.artifacts[name] = ArtifactInfo{content.size(), hex64(fnv1a64(content))};
        }

        manifest.seed = cfg.seed;
        manifest.alpha = cfg.alpha;
        manifest.vocab_hash = vocab.content_hash();
        manifest.counts["monolingual_docs"] = d.monolingual.size();
        manifest.counts["upsampled_docs"] = d.upsampled.size();
        manifest.counts["translated_pairs"] = d.translated_pairs;
        manifest.counts["transliterated_pairs"] = d.transliterated_pairs;
        std::uint64_t translit_skips = 0;
        for (const auto& [lang, n] : d.translit_report.skipped_by_lang) {
            translit_skips += n;
        }
        manifest.counts["translit_skipped_docs"] = translit_skips;
        manifest.counts["vocab_size"] = vocab.size();
        manifest.counts["words_dropped_too_long"] = word_report.dropped_too_long;
        manifest.counts["mlm_instances"] = mlm.size();
        manifest.counts["tlm_instances"] = tlm.size();
        manifest.counts["pairs_without_instances"] = pairs_without_instances;

        // The manifest itself is not listed in its own artifact table.
        write_file(cfg.out_dir / "manifest.json", manifest.to_json());
        return manifest;
    });
}

} // namespace corpusforge
