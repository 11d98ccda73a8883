#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "corpusforge/error.hpp"
#include "corpusforge/pipeline.hpp"
#include "corpusforge/translit.hpp"
#include "corpusforge/unicode.hpp"
#include "corpusforge/util.hpp"

namespace {

using namespace corpusforge;

struct CommonArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<double> alpha;
    std::optional<std::string> out;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required = true) {
    auto* opt = cmd->add_option("-c,--config", args.config_path, "pipeline config file");
    if (config_required) {
        opt->required();
    }
    cmd->add_option("--seed", args.seed, "override the config seed");
    cmd->add_option("--alpha", args.alpha, "override the upsampling alpha");
    cmd->add_option("--out", args.out, "override the output location");
}

PipelineConfig load_config(const CommonArgs& args) {
    PipelineConfig cfg = PipelineConfig::load(args.config_path);
    if (args.seed) {
        cfg.seed = *args.seed;
    }
    if (args.alpha) {
        cfg.alpha = *args.alpha;
    }
    if (args.out) {
        cfg.out_dir = *args.out;
    }
    return cfg;
}

// CSV reports go to --out when given, stdout otherwise.
void emit_report(const CommonArgs& args, const std::string& default_name,
                 const std::string& content) {
    if (args.out) {
        const std::filesystem::path p = *args.out;
        if (std::filesystem::is_directory(p)) {
            write_file(p / default_name, content);
        } else {
            write_file(p, content);
        }
    } else {
        std::cout << content;
    }
}

int run_cli(int argc, char** argv) {
    CLI::App app{"corpusforge: multilingual pretraining-corpus pipeline"};
    app.require_subcommand(1);

    CommonArgs stats_args;
    auto* cmd_stats = app.add_subcommand("stats", "per-corpus document/word/char counts");
    add_common(cmd_stats, stats_args);

    CommonArgs plan_args;
    auto* cmd_plan = app.add_subcommand("plan", "language upsampling plan");
    add_common(cmd_plan, plan_args);
    std::string plan_source;
    cmd_plan->add_option("--source", plan_source, "source kind to plan over");

    auto* cmd_translit = app.add_subcommand("translit", "romanize stdin lines to stdout");
    std::string translit_table;
    cmd_translit->add_option("--table", translit_table, "romanization table (TSV)")->required();

    CommonArgs vocab_args;
    auto* cmd_vocab = app.add_subcommand("train-vocab", "train the WordPiece vocabulary");
    add_common(cmd_vocab, vocab_args);

    auto* cmd_tokenize = app.add_subcommand("tokenize", "tokenize stdin lines to stdout");
    std::string tokenize_vocab;
    bool tokenize_pieces = false;
    cmd_tokenize->add_option("--vocab", tokenize_vocab, "vocab.txt file")->required();
    cmd_tokenize->add_flag("--pieces", tokenize_pieces, "print piece strings instead of ids");

    CommonArgs fertility_args;
    auto* cmd_fertility = app.add_subcommand("fertility", "per-language fertility report");
    add_common(cmd_fertility, fertility_args);
    std::string fertility_vocab;
    cmd_fertility->add_option("--vocab", fertility_vocab, "vocab.txt file")->required();

    CommonArgs build_args;
    auto* cmd_build = app.add_subcommand("build", "run the full pipeline");
    add_common(cmd_build, build_args);

    CLI11_PARSE(app, argc, argv);

    if (cmd_stats->parsed()) {
        const PipelineConfig cfg = load_config(stats_args);
        emit_report(stats_args, "stats.csv", stats_to_csv(run_stats(cfg)));
        return 0;
    }
    if (cmd_plan->parsed()) {
        PipelineConfig cfg = load_config(plan_args);
        if (!plan_source.empty()) {
            cfg.plan_source = parse_source_kind(plan_source);
        }
        emit_report(plan_args, "plan.csv", plan_to_csv(run_plan(cfg)));
        return 0;
    }
    if (cmd_translit->parsed()) {
        const RomanizationTable table = RomanizationTable::load(translit_table);
        std::string line;
        while (std::getline(std::cin, line)) {
            std::cout << romanize(uni::nfc(line), table) << '\n';
        }
        return 0;
    }
    if (cmd_vocab->parsed()) {
        const PipelineConfig cfg = load_config(vocab_args);
        const Vocabulary vocab = run_train_vocab(cfg);
        const std::filesystem::path out =
            vocab_args.out ? std::filesystem::path(*vocab_args.out) : cfg.out_dir / "vocab.txt";
        vocab.save(std::filesystem::is_directory(out) ? out / "vocab.txt" : out);
        std::cerr << "wrote " << vocab.size() << " tokens\n";
        return 0;
    }
    if (cmd_tokenize->parsed()) {
        const Vocabulary vocab = Vocabulary::load(tokenize_vocab);
        std::string line;
        while (std::getline(std::cin, line)) {
            const auto ids = tokenize(uni::nfc(line), vocab);
            for (std::size_t i = 0; i < ids.size(); ++i) {
                if (i > 0) {
                    std::cout << ' ';
                }
                if (tokenize_pieces) {
                    std::cout << vocab.tokens[ids[i]];
                } else {
                    std::cout << ids[i];
                }
            }
            std::cout << '\n';
        }
        return 0;
    }
    if (cmd_fertility->parsed()) {
        const PipelineConfig cfg = load_config(fertility_args);
        const Vocabulary vocab = Vocabulary::load(fertility_vocab);
        const auto docs = run_ingest(cfg);
        emit_report(fertility_args, "fertility.csv", fertility_to_csv(fertility(docs, vocab)));
        return 0;
    }
    if (cmd_build->parsed()) {
        const PipelineConfig cfg = load_config(build_args);
        const BuildManifest manifest = run_build(cfg);
        std::cout << manifest.to_json();
        return 0;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const corpusforge::MissingFilesError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const corpusforge::StageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
