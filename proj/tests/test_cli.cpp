#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "corpusforge/util.hpp"

using corpusforge::read_file;
using corpusforge::write_file;

namespace {

const std::filesystem::path kFixtures{CORPUSFORGE_TEST_DATA_DIR};
const std::filesystem::path kTables{CORPUSFORGE_TABLE_DIR};
const std::string kCli{CORPUSFORGE_CLI_PATH};

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::filesystem::path fresh_dir(const char* name) {
    const auto dir = std::filesystem::temp_directory_path() / "corpusforge-test-cli" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

RunResult run(const std::string& args, const std::string& stdin_text = "") {
    const auto dir = fresh_dir("io");
    if (!stdin_text.empty()) {
        write_file(dir / "stdin.txt", stdin_text);
    }
    std::ostringstream cmd;
    cmd << '"' << kCli << "\" " << args;
    if (!stdin_text.empty()) {
        cmd << " < \"" << (dir / "stdin.txt").string() << '"';
    }
    cmd << " > \"" << (dir / "stdout.txt").string() << "\" 2> \""
        << (dir / "stderr.txt").string() << '"';
    const int status = std::system(cmd.str().c_str());
    RunResult result;
    result.exit_code = WEXITSTATUS(status);
    result.out = read_file(dir / "stdout.txt");
    result.err = read_file(dir / "stderr.txt");
    return result;
}

std::filesystem::path mini_config(const char* name, bool with_missing = false) {
    const auto dir = fresh_dir(name);
    const auto mini = kFixtures / "minicorpus";
    std::string cfg;
    cfg += "[pipeline]\nseed = 11\n";
    cfg += "[corpus]\n";
    cfg += "file = hi wikipedia " + (mini / "hi.wikipedia.txt").string() + "\n";
    cfg += "file = en wikipedia " + (mini / "en.wikipedia.txt").string() + "\n";
    if (with_missing) {
        cfg += "file = bn wikipedia " + (dir / "missing-bn.txt").string() + "\n";
        cfg += "file = ta crawl " + (dir / "missing-ta.txt").string() + "\n";
    }
    cfg += "[vocab]\ntarget_size = 600\nmin_word_frequency = 2\n";
    cfg += "[instances]\nmax_seq_len = 128\n";
    cfg += "[translit]\ntable = " + (kTables / "devanagari.tsv").string() + "\n";
    const auto path = dir / "pipeline.cfg";
    write_file(path, cfg);
    return path;
}

} // namespace

TEST_CASE("stats subcommand prints csv") {
    const auto result = run("stats -c \"" + mini_config("stats").string() + "\"");
    CHECK(result.exit_code == 0);
    CHECK(result.out.starts_with("lang,source,docs,words,chars\n"));
    CHECK(result.out.find("hi,wikipedia,150,1634,6624") != std::string::npos);
}

TEST_CASE("stats over an empty corpus dir prints only the header") {
    const auto dir = fresh_dir("empty-corpus");
    const auto cfg_path = dir / "cfg";
    write_file(cfg_path, "[corpus]\ndir = " + dir.string() + "\n");
    const auto result = run("stats -c \"" + cfg_path.string() + "\"");
    CHECK(result.exit_code == 0);
    CHECK(result.out == "lang,source,docs,words,chars\n");
}

TEST_CASE("declared-but-missing files exit with code 2 and the path list") {
    const auto result = run("stats -c \"" + mini_config("missing", true).string() + "\"");
    CHECK(result.exit_code == 2);
    CHECK(result.err.find("missing-bn.txt") != std::string::npos);
    CHECK(result.err.find("missing-ta.txt") != std::string::npos);
}

TEST_CASE("plan subcommand honors --alpha") {
    const auto cfg = mini_config("plan");
    const auto result = run("plan -c \"" + cfg.string() + "\" --alpha 1.0");
    CHECK(result.exit_code == 0);
    CHECK(result.out.starts_with("lang,n,multiplier,upsampled\n"));
    // alpha = 1: every multiplier is exactly 1
    std::istringstream lines(result.out);
    std::string line;
    std::getline(lines, line);
    while (std::getline(lines, line)) {
        CHECK(line.find(",1.000000,") != std::string::npos);
    }
}

TEST_CASE("translit subcommand is a stdin filter") {
    const auto result = run("translit --table \"" + (kTables / "devanagari.tsv").string() + "\"",
                            "नमस्ते दुनिया\nक्या हाल\n");
    CHECK(result.exit_code == 0);
    CHECK(result.out == "namaste duniya\nkya hala\n");
}

TEST_CASE("tokenize subcommand emits ids and pieces") {
    const auto dir = fresh_dir("tok");
    std::string vocab_text;
    for (const char* tok : {"[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]", "ab", "##c", "x"}) {
        vocab_text += tok;
        vocab_text += '\n';
    }
    write_file(dir / "vocab.txt", vocab_text);

    auto result = run("tokenize --vocab \"" + (dir / "vocab.txt").string() + "\"", "abc x\nzz\n");
    CHECK(result.exit_code == 0);
    CHECK(result.out == "5 6 7\n1\n");

    result = run("tokenize --pieces --vocab \"" + (dir / "vocab.txt").string() + "\"", "abc\n");
    CHECK(result.out == "ab ##c\n");
}

TEST_CASE("build then fertility with the emitted vocabulary") {
    const auto cfg = mini_config("build");
    const auto out_dir = fresh_dir("build-out");
    const auto build = run("build -c \"" + cfg.string() + "\" --out \"" + out_dir.string() + "\"");
    CHECK(build.exit_code == 0);
    CHECK(build.out.find("\"artifacts\"") != std::string::npos);
    CHECK(std::filesystem::exists(out_dir / "vocab.txt"));
    CHECK(std::filesystem::exists(out_dir / "manifest.json"));

    const auto fert = run("fertility -c \"" + cfg.string() + "\" --vocab \"" +
                          (out_dir / "vocab.txt").string() + "\"");
    CHECK(fert.exit_code == 0);
    CHECK(fert.out.starts_with("lang,words,subwords,fertility\n"));
    CHECK(fert.out.find("hi,") != std::string::npos);
}

TEST_CASE("train-vocab writes the vocabulary file") {
    const auto cfg = mini_config("trainvocab");
    const auto out = fresh_dir("trainvocab-out") / "v.txt";
    const auto result = run("train-vocab -c \"" + cfg.string() + "\" --out \"" + out.string() +
                            "\"");
    CHECK(result.exit_code == 0);
    const auto text = read_file(out);
    CHECK(text.starts_with("[PAD]\n[UNK]\n[CLS]\n[SEP]\n[MASK]\n"));
}

TEST_CASE("stage failures exit nonzero and name the stage") {
    // alpha outside [0,1] fails the plan stage inside build
    const auto cfg = mini_config("stagefail");
    const auto result = run("build -c \"" + cfg.string() + "\" --alpha 2.0 --out \"" +
                            fresh_dir("stagefail-out").string() + "\"");
    CHECK(result.exit_code == 1);
    CHECK(result.err.find("stage plan failed") != std::string::npos);
}
