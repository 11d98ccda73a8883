#pragma once

#include <cstdint>
#include <string>

#include "corpusforge/language.hpp"

namespace corpusforge {

// One normalized document. `text` is NFC, whitespace-trimmed and non-empty;
// ids are (shard index, line index) packed into 64 bits.
struct DocumentRecord {
    std::uint64_t id = 0;
    LanguageTag lang;
    SourceKind source = SourceKind::wikipedia;
    std::string text;

    friend bool operator==(const DocumentRecord&, const DocumentRecord&) = default;
};

constexpr std::uint64_t make_doc_id(std::uint32_t shard, std::uint32_t line) {
    return (static_cast<std::uint64_t>(shard) << 32) | line;
}
constexpr std::uint32_t doc_shard(std::uint64_t id) { return static_cast<std::uint32_t>(id >> 32); }
constexpr std::uint32_t doc_line(std::uint64_t id) { return static_cast<std::uint32_t>(id); }

enum class PairKind : std::uint8_t {
    none,
    translated,
    transliterated,
};

std::string_view pair_kind_name(PairKind k);

// Two aligned documents consumed by TLM instance building. Translated pairs
// target English; transliterated pairs target the source language's "-tr"
// variant and the target text is free of the native script.
struct ParallelPair {
    DocumentRecord src;
    DocumentRecord tgt;
    PairKind kind = PairKind::translated;

    friend bool operator==(const ParallelPair&, const ParallelPair&) = default;
};

// Throws DomainError when the pair breaks the invariants above.
void validate_pair(const ParallelPair& pair);

} // namespace corpusforge
