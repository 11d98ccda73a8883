#include "corpusforge/ingest.hpp"

#include <cstring>
#include <fstream>

#include "corpusforge/error.hpp"
#include "corpusforge/unicode.hpp"
#include "corpusforge/util.hpp"

namespace corpusforge {

namespace {

// NFC-normalize and trim; empty result means the line carries no document.
std::string normalize_line(std::string_view line) {
    std::u32string cps = uni::decode_utf8_or_throw(line);
    cps = uni::nfc(cps);
    std::size_t begin = 0;
    std::size_t end = cps.size();
    while (begin < end && uni::is_whitespace(cps[begin])) {
        ++begin;
    }
    while (end > begin && uni::is_whitespace(cps[end - 1])) {
        --end;
    }
    return uni::encode_utf8(std::u32string_view(cps).substr(begin, end - begin));
}

void put_u32le(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
    out.push_back(static_cast<char>((v >> 16) & 0xFF));
    out.push_back(static_cast<char>((v >> 24) & 0xFF));
}

std::uint32_t get_u32le(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

} // namespace

std::vector<DocumentRecord> ingest_plain(const std::filesystem::path& path, LanguageTag lang,
                                         SourceKind source, std::uint32_t shard_index,
                                         const IngestOptions& options, IngestReport* report) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open corpus file: " + path.string());
    }
    std::vector<DocumentRecord> docs;
    IngestReport local;
    std::string line;
    std::uint64_t line_no = 0;
    std::uint32_t next_line_index = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        std::string text;
        try {
            text = normalize_line(line);
        } catch (const ParseError&) {
            const std::string msg = path.string() + ":" + std::to_string(line_no) +
                                    ": invalid UTF-8 byte sequence";
            if (options.on_invalid == InvalidLinePolicy::abort) {
                throw ParseError(msg);
            }
            local.skipped_invalid += 1;
            local.errors.emplace_back(line_no, msg);
            continue;
        }
        if (text.empty()) {
            local.skipped_empty += 1;
            continue;
        }
        docs.push_back(DocumentRecord{make_doc_id(shard_index, next_line_index), lang, source,
                                      std::move(text)});
        ++next_line_index;
    }
    local.records = docs.size();
    if (report) {
        *report = std::move(local);
    }
    return docs;
}

std::vector<DocumentRecord> read_sharded(const std::filesystem::path& path,
                                         std::uint32_t shard_index) {
    const std::string data = read_file(path);
    std::vector<DocumentRecord> docs;
    std::size_t offset = 0;
    std::uint32_t next_line_index = 0;
    const auto* bytes = reinterpret_cast<const unsigned char*>(data.data());
    while (offset < data.size()) {
        if (offset + 4 > data.size()) {
            throw ParseError(path.string() + ": truncated record length at byte offset " +
                             std::to_string(offset));
        }
        const std::uint32_t len = get_u32le(bytes + offset);
        offset += 4;
        if (len < 3 || offset + len > data.size()) {
            throw ParseError(path.string() + ": truncated record payload at byte offset " +
                             std::to_string(offset));
        }
        const std::uint8_t lang_index = bytes[offset];
        const std::uint8_t source_byte = bytes[offset + 1];
        const std::uint8_t transliterated = bytes[offset + 2];
        if (source_byte >= kSourceKindCount) {
            throw ParseError(path.string() + ": bad source kind at byte offset " +
                             std::to_string(offset + 1));
        }
        if (transliterated > 1) {
            throw ParseError(path.string() + ": bad transliterated flag at byte offset " +
                             std::to_string(offset + 2));
        }
        std::string text = uni::nfc(std::string_view(data).substr(offset + 3, len - 3));
        docs.push_back(DocumentRecord{make_doc_id(shard_index, next_line_index),
                                      LanguageTag::from_index(lang_index, transliterated != 0),
                                      static_cast<SourceKind>(source_byte), std::move(text)});
        ++next_line_index;
        offset += len;
    }
    return docs;
}

void write_sharded(const std::filesystem::path& path, std::span<const DocumentRecord> docs) {
    std::string out;
    for (const DocumentRecord& doc : docs) {
        put_u32le(out, static_cast<std::uint32_t>(3 + doc.text.size()));
        out.push_back(static_cast<char>(doc.lang.index));
        out.push_back(static_cast<char>(doc.source));
        out.push_back(static_cast<char>(doc.lang.transliterated ? 1 : 0));
        out.append(doc.text);
    }
    write_file(path, out);
}

std::optional<CorpusFileName> parse_corpus_filename(std::string_view filename) {
    if (filename.size() < 5 || filename.substr(filename.size() - 4) != ".txt") {
        return std::nullopt;
    }
    filename.remove_suffix(4);
    const std::size_t dot = filename.find('.');
    if (dot == std::string_view::npos) {
        return std::nullopt;
    }
    const auto lang = LanguageTag::try_parse(filename.substr(0, dot));
    const auto source = try_parse_source_kind(filename.substr(dot + 1));
    if (!lang || !source) {
        return std::nullopt;
    }
    return CorpusFileName{*lang, *source};
}

} // namespace corpusforge
