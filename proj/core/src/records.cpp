#include <cstring>

#include "corpusforge/error.hpp"
#include "corpusforge/instances.hpp"
#include "corpusforge/util.hpp"

namespace corpusforge {

namespace {

constexpr char kMagic[4] = {'M', 'U', 'R', 'C'};
constexpr std::uint8_t kLangUnset = 0xFF;
constexpr std::uint8_t kLangTranslitBit = 0x80;

void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>(v >> 8));
}

void put_u32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
    out.push_back(static_cast<char>((v >> 16) & 0xFF));
    out.push_back(static_cast<char>((v >> 24) & 0xFF));
}

std::uint8_t encode_lang(const std::optional<LanguageTag>& lang) {
    if (!lang) {
        return kLangUnset;
    }
    return static_cast<std::uint8_t>(lang->index | (lang->transliterated ? kLangTranslitBit : 0));
}

std::optional<LanguageTag> decode_lang(std::uint8_t byte, const std::string& where) {
    if (byte == kLangUnset) {
        return std::nullopt;
    }
    const std::uint8_t index = byte & 0x7F;
    if (index >= kLanguageCodes.size()) {
        throw ParseError(where + ": bad language byte");
    }
    return LanguageTag::from_index(index, (byte & kLangTranslitBit) != 0);
}

std::string encode_instance(const TrainingInstance& inst) {
    if (inst.token_ids.size() > 0xFFFF || inst.masked_positions.size() > 0xFFFF) {
        throw DomainError("instance exceeds the record format's 16-bit counts");
    }
    if (inst.masked_labels.size() != inst.masked_positions.size()) {
        throw DomainError("masked positions and labels are out of step");
    }
    if (inst.segment_ids.size() != inst.token_ids.size()) {
        throw DomainError("segment ids and token ids are out of step");
    }
    std::string payload;
    payload.reserve(10 + inst.token_ids.size() * 4 + inst.masked_positions.size() * 8);
    payload.push_back(static_cast<char>(inst.objective));
    payload.push_back(static_cast<char>(inst.pair_kind));
    payload.push_back(static_cast<char>(encode_lang(inst.lang_src)));
    payload.push_back(static_cast<char>(encode_lang(inst.lang_tgt)));
    put_u16(payload, static_cast<std::uint16_t>(inst.token_ids.size()));
    for (const std::uint32_t id : inst.token_ids) {
        put_u32(payload, id);
    }
    // Segment bits, LSB first within each byte.
    const std::size_t seg_bytes = (inst.segment_ids.size() + 7) / 8;
    for (std::size_t byte = 0; byte < seg_bytes; ++byte) {
        std::uint8_t bits = 0;
        for (std::size_t bit = 0; bit < 8; ++bit) {
            const std::size_t idx = byte * 8 + bit;
            if (idx < inst.segment_ids.size() && inst.segment_ids[idx] != 0) {
                bits |= static_cast<std::uint8_t>(1u << bit);
            }
        }
        payload.push_back(static_cast<char>(bits));
    }
    put_u16(payload, static_cast<std::uint16_t>(inst.masked_positions.size()));
    for (const std::uint32_t pos : inst.masked_positions) {
        put_u32(payload, pos);
    }
    for (const std::uint32_t label : inst.masked_labels) {
        put_u32(payload, label);
    }
    return payload;
}

class Reader {
  public:
    Reader(const std::string& data, const std::string& origin) : data_(data), origin_(origin) {}

    std::size_t offset() const { return offset_; }
    bool done() const { return offset_ >= data_.size(); }

    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(data_[offset_++]);
    }

    std::uint16_t u16() {
        need(2);
        const auto* p = reinterpret_cast<const unsigned char*>(data_.data() + offset_);
        offset_ += 2;
        return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
    }

    std::uint32_t u32() {
        need(4);
        const auto* p = reinterpret_cast<const unsigned char*>(data_.data() + offset_);
        offset_ += 4;
        return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
               (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
    }

    void need(std::size_t n) const {
        if (offset_ + n > data_.size()) {
            throw ParseError(origin_ + ": truncated record file at byte offset " +
                             std::to_string(offset_));
        }
    }

    std::string where() const { return origin_ + ":" + std::to_string(offset_); }

  private:
    const std::string& data_;
    std::string origin_;
    std::size_t offset_ = 0;
};

} // namespace

std::uint64_t write_records(std::span<const TrainingInstance> instances,
                            const std::filesystem::path& path, std::uint16_t vocab_hash_prefix) {
    std::string out;
    out.append(kMagic, sizeof(kMagic));
    out.push_back(static_cast<char>(kRecordVersion));
    put_u16(out, vocab_hash_prefix);
    for (const TrainingInstance& inst : instances) {
        const std::string payload = encode_instance(inst);
        put_u32(out, static_cast<std::uint32_t>(payload.size()));
        out.append(payload);
    }
    write_file(path, out);
    return instances.size();
}

RecordFile read_records(const std::filesystem::path& path) {
    const std::string data = read_file(path);
    Reader r(data, path.string());
    char magic[4];
    r.need(4);
    std::memcpy(magic, data.data(), 4);
    if (std::memcmp(magic, kMagic, 4) != 0) {
        throw ParseError(path.string() + ": bad magic, not a record file");
    }
    for (int i = 0; i < 4; ++i) {
        r.u8();
    }
    RecordFile file;
    file.version = r.u8();
    if (file.version != kRecordVersion) {
        throw ParseError(path.string() + ": unsupported record version " +
                         std::to_string(file.version) + " (expected " +
                         std::to_string(kRecordVersion) + ")");
    }
    file.vocab_hash_prefix = r.u16();
    while (!r.done()) {
        const std::uint32_t len = r.u32();
        const std::size_t record_end = r.offset() + len;
        r.need(len);

        TrainingInstance inst;
        const std::uint8_t objective = r.u8();
        if (objective > 1) {
            throw ParseError(r.where() + ": bad objective byte");
        }
        inst.objective = static_cast<Objective>(objective);
        const std::uint8_t pair_kind = r.u8();
        if (pair_kind > 2) {
            throw ParseError(r.where() + ": bad pair kind byte");
        }
        inst.pair_kind = static_cast<PairKind>(pair_kind);
        const auto src = decode_lang(r.u8(), r.where());
        if (!src) {
            throw ParseError(r.where() + ": source language unset");
        }
        inst.lang_src = *src;
        inst.lang_tgt = decode_lang(r.u8(), r.where());

        const std::uint16_t token_count = r.u16();
        inst.token_ids.reserve(token_count);
        for (std::uint16_t i = 0; i < token_count; ++i) {
            inst.token_ids.push_back(r.u32());
        }
        const std::size_t seg_bytes = (token_count + 7u) / 8u;
        inst.segment_ids.resize(token_count);
        for (std::size_t byte = 0; byte < seg_bytes; ++byte) {
            const std::uint8_t bits = r.u8();
            for (std::size_t bit = 0; bit < 8; ++bit) {
                const std::size_t idx = byte * 8 + bit;
                if (idx < token_count) {
                    inst.segment_ids[idx] = (bits >> bit) & 1;
                }
            }
        }
        const std::uint16_t mask_count = r.u16();
        inst.masked_positions.reserve(mask_count);
        inst.masked_labels.reserve(mask_count);
        for (std::uint16_t i = 0; i < mask_count; ++i) {
            inst.masked_positions.push_back(r.u32());
        }
        for (std::uint16_t i = 0; i < mask_count; ++i) {
            inst.masked_labels.push_back(r.u32());
        }
        if (r.offset() != record_end) {
            throw ParseError(path.string() + ": record length mismatch at byte offset " +
                             std::to_string(r.offset()));
        }
        file.instances.push_back(std::move(inst));
    }
    return file;
}

} // namespace corpusforge
