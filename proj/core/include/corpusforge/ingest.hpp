#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "corpusforge/document.hpp"

namespace corpusforge {

enum class InvalidLinePolicy : std::uint8_t {
    abort, // throw on the first bad line
    skip,  // drop bad lines, record them in the report
};

struct IngestOptions {
    InvalidLinePolicy on_invalid = InvalidLinePolicy::abort;
};

struct IngestReport {
    std::uint64_t records = 0;
    std::uint64_t skipped_empty = 0;
    std::uint64_t skipped_invalid = 0;
    // (1-based line number, message) for lines dropped under `skip`.
    std::vector<std::pair<std::uint64_t, std::string>> errors;
};

// Plain format: UTF-8, one document per line. Lines empty after
// normalization and trimming are dropped; ids are (shard_index, line_index)
// with line_index counting emitted records from 0.
std::vector<DocumentRecord> ingest_plain(const std::filesystem::path& path, LanguageTag lang,
                                         SourceKind source, std::uint32_t shard_index,
                                         const IngestOptions& options = {},
                                         IngestReport* report = nullptr);

// Sharded record format: 4-byte LE payload length, then payload =
// lang index byte, source kind byte, transliterated flag byte, UTF-8 text.
std::vector<DocumentRecord> read_sharded(const std::filesystem::path& path,
                                         std::uint32_t shard_index);
void write_sharded(const std::filesystem::path& path, std::span<const DocumentRecord> docs);

// Filename convention `<lang>[-tr].<source>.txt` for corpus directories.
struct CorpusFileName {
    LanguageTag lang;
    SourceKind source;
};
std::optional<CorpusFileName> parse_corpus_filename(std::string_view filename);

} // namespace corpusforge
