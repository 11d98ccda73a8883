#!/usr/bin/env python3
"""Regenerates core/src/unicode_tables.inc from the Python unicodedata + regex
modules. Run from the repository root:

    python3 scripts/gen_unicode_tables.py > core/src/unicode_tables.inc

The emitted file is committed so the C++ build does not depend on Python.
"""

import sys
import unicodedata

try:
    import regex
except ImportError:
    sys.exit("the 'regex' package is required: pip install regex")

MAX_CP = 0x110000

# Script categories used by the vocabulary composition report, in report order.
SCRIPTS = [
    "Latin", "Devanagari", "Bengali", "Gujarati", "Gurmukhi", "Kannada",
    "Malayalam", "Oriya", "Tamil", "Telugu", "Arabic",
]

# Official White_Space property (PropList).
WHITESPACE = [
    (0x0009, 0x000D), (0x0020, 0x0020), (0x0085, 0x0085), (0x00A0, 0x00A0),
    (0x1680, 0x1680), (0x2000, 0x200A), (0x2028, 0x2029), (0x202F, 0x202F),
    (0x205F, 0x205F), (0x3000, 0x3000),
]

# ISCII-derived Indic blocks share a parallel layout: consonants, dependent
# vowel signs and the virama sit at fixed offsets from the block base.
INDIC_BLOCKS = {
    "Devanagari": 0x0900, "Bengali": 0x0980, "Gurmukhi": 0x0A00,
    "Gujarati": 0x0A80, "Oriya": 0x0B00, "Tamil": 0x0B80,
    "Telugu": 0x0C00, "Kannada": 0x0C80, "Malayalam": 0x0D00,
}
CONSONANT_OFFSETS = list(range(0x15, 0x3A)) + list(range(0x58, 0x60))
VOWEL_SIGN_OFFSETS = list(range(0x3E, 0x4D)) + [0x4E, 0x4F, 0x55, 0x56, 0x57, 0x62, 0x63]

# Per-script consonants outside the shared offsets.
EXTRA_CONSONANTS = {
    "Devanagari": list(range(0x0978, 0x0980)),
    "Bengali": [0x09CE, 0x09F0, 0x09F1],
    "Oriya": [0x0B71],
    "Gujarati": [0x0AF9],
    "Malayalam": list(range(0x0D54, 0x0D57)) + list(range(0x0D7A, 0x0D80)),
}
# Per-script dependent vowel signs outside the shared offsets.
EXTRA_VOWEL_SIGNS = {
    "Devanagari": [0x0955, 0xA8FF],
}


def assigned(cp):
    return unicodedata.category(chr(cp)) != "Cn"


def ranges(cps):
    out = []
    for cp in sorted(cps):
        if out and cp == out[-1][1] + 1:
            out[-1][1] = cp
        else:
            out.append([cp, cp])
    return [(a, b) for a, b in out]


def emit_ranges(name, rs, out):
    out.append(f"static const CpRange {name}[] = {{")
    line = "   "
    for a, b in rs:
        piece = f" {{0x{a:04X}, 0x{b:04X}}},"
        if len(line) + len(piece) > 100:
            out.append(line)
            line = "   "
        line += piece
    if line.strip():
        out.append(line)
    out.append("};")
    out.append("")


def category_ranges(pred):
    return ranges([cp for cp in range(MAX_CP) if assigned(cp) and pred(unicodedata.category(chr(cp)))])


def script_cps(script):
    pat = regex.compile(r"\p{Script=%s}" % script)
    return [cp for cp in range(MAX_CP) if assigned(cp) and pat.match(chr(cp))]


def canonical_decomposition(cp):
    d = unicodedata.decomposition(chr(cp))
    if not d or d.startswith("<"):
        return None
    parts = [int(x, 16) for x in d.split()]
    return parts


def main():
    out = []
    out.append("// Generated by scripts/gen_unicode_tables.py (Unicode %s). Do not edit." % unicodedata.unidata_version)
    out.append("")

    emit_ranges("kWhitespaceRanges", WHITESPACE, out)
    emit_ranges("kPunctuationRanges", category_ranges(lambda c: c.startswith("P")), out)
    emit_ranges("kDigitRanges", category_ranges(lambda c: c == "Nd"), out)
    emit_ranges("kLetterRanges", category_ranges(lambda c: c.startswith("L")), out)
    emit_ranges("kMarkRanges", category_ranges(lambda c: c.startswith("M")), out)

    script_sets = {}
    for s in SCRIPTS:
        cps = script_cps(s)
        script_sets[s] = set(cps)
        emit_ranges(f"k{s}Ranges", ranges(cps), out)
    out.append("static const ScriptSpan kScriptSpans[] = {")
    for s in SCRIPTS:
        out.append(f"    {{Script::{s}, k{s}Ranges, sizeof(k{s}Ranges) / sizeof(CpRange)}},")
    out.append("};")
    out.append("")

    # Canonical combining classes.
    cc = [(cp, unicodedata.combining(chr(cp))) for cp in range(MAX_CP)
          if assigned(cp) and unicodedata.combining(chr(cp)) != 0]
    out.append("static const CcEntry kCombiningClass[] = {")
    line = "   "
    for cp, c in cc:
        piece = f" {{0x{cp:04X}, {c}}},"
        if len(line) + len(piece) > 100:
            out.append(line)
            line = "   "
        line += piece
    if line.strip():
        out.append(line)
    out.append("};")
    out.append("")

    # Canonical decompositions (Hangul is algorithmic and excluded).
    decomps = []
    for cp in range(MAX_CP):
        if not assigned(cp) or 0xAC00 <= cp <= 0xD7A3:
            continue
        parts = canonical_decomposition(cp)
        if parts:
            a = parts[0]
            b = parts[1] if len(parts) > 1 else 0
            decomps.append((cp, a, b))
    out.append("static const DecompEntry kCanonicalDecomp[] = {")
    line = "   "
    for cp, a, b in decomps:
        piece = f" {{0x{cp:04X}, 0x{a:04X}, 0x{b:04X}}},"
        if len(line) + len(piece) > 100:
            out.append(line)
            line = "   "
        line += piece
    if line.strip():
        out.append(line)
    out.append("};")
    out.append("")

    # Primary composites: pair -> composed, skipping exclusions (detected by
    # round-tripping through the reference normalizer).
    comps = []
    for cp, a, b in decomps:
        if b == 0:
            continue
        if unicodedata.normalize("NFC", chr(a) + chr(b)) == chr(cp):
            comps.append((a, b, cp))
    comps.sort(key=lambda t: (t[0], t[1]))
    out.append("static const CompEntry kCanonicalComp[] = {")
    line = "   "
    for a, b, cp in comps:
        piece = f" {{0x{a:04X}, 0x{b:04X}, 0x{cp:04X}}},"
        if len(line) + len(piece) > 100:
            out.append(line)
            line = "   "
        line += piece
    if line.strip():
        out.append(line)
    out.append("};")
    out.append("")

    # Virama marks carry canonical combining class 9 in every Indic script.
    viramas = [cp for cp, c in cc if c == 9]
    emit_ranges("kViramaRanges", ranges(viramas), out)

    consonants = {}
    vowel_signs = {}
    for script, base in INDIC_BLOCKS.items():
        cons = set()
        vows = set()
        for off in CONSONANT_OFFSETS:
            cp = base + off
            if assigned(cp) and cp in script_sets[script] and unicodedata.category(chr(cp)).startswith("L"):
                cons.add(cp)
        for cp in EXTRA_CONSONANTS.get(script, []):
            if assigned(cp) and cp in script_sets[script]:
                cons.add(cp)
        for off in VOWEL_SIGN_OFFSETS:
            cp = base + off
            if (assigned(cp) and cp in script_sets[script]
                    and unicodedata.category(chr(cp)) in ("Mc", "Mn")
                    and unicodedata.combining(chr(cp)) != 9):
                vows.add(cp)
        for cp in EXTRA_VOWEL_SIGNS.get(script, []):
            if (assigned(cp) and cp in script_sets[script]
                    and unicodedata.category(chr(cp)) in ("Mc", "Mn")):
                vows.add(cp)
        consonants[script] = cons
        vowel_signs[script] = vows

    for script in INDIC_BLOCKS:
        emit_ranges(f"k{script}Consonants", ranges(consonants[script]), out)
        emit_ranges(f"k{script}VowelSigns", ranges(vowel_signs[script]), out)
    out.append("static const ScriptSpan kConsonantSpans[] = {")
    for script in INDIC_BLOCKS:
        out.append(f"    {{Script::{script}, k{script}Consonants, sizeof(k{script}Consonants) / sizeof(CpRange)}},")
    out.append("};")
    out.append("")
    out.append("static const ScriptSpan kVowelSignSpans[] = {")
    for script in INDIC_BLOCKS:
        out.append(f"    {{Script::{script}, k{script}VowelSigns, sizeof(k{script}VowelSigns) / sizeof(CpRange)}},")
    out.append("};")
    out.append("")

    sys.stdout.write("\n".join(out))
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
