#include "corpusforge/document.hpp"

#include "corpusforge/error.hpp"
#include "corpusforge/unicode.hpp"

namespace corpusforge {

std::string_view pair_kind_name(PairKind k) {
    switch (k) {
    case PairKind::none:
        return "none";
    case PairKind::translated:
        return "translated";
    case PairKind::transliterated:
        return "transliterated";
    }
    return "none";
}

void validate_pair(const ParallelPair& pair) {
    switch (pair.kind) {
    case PairKind::translated:
        if (!pair.tgt.lang.is_english()) {
            throw DomainError("translated pair must target en, got " + pair.tgt.lang.str());
        }
        break;
    case PairKind::transliterated: {
        if (pair.tgt.lang.index != pair.src.lang.index || !pair.tgt.lang.transliterated) {
            throw DomainError("transliterated pair must target " + pair.src.lang.str() + "-tr");
        }
        const Script native = pair.src.lang.script();
        for (char32_t cp : uni::decode_utf8_or_throw(pair.tgt.text)) {
            if (uni::script_of(cp) == native && native != Script::Latin) {
                throw DomainError("transliterated target still contains " +
                                  std::string(script_name(native)) + " code points");
            }
        }
        break;
    }
    case PairKind::none:
        throw DomainError("parallel pair kind must be translated or transliterated");
    }
}

} // namespace corpusforge
