#!/usr/bin/env python3
"""Regenerate include/mtst/unicode_tables.hpp from the Python unicodedata
database plus the `regex` module's Emoji property.

Run from the repository root:

    python3 scripts/gen_unicode_tables.py > include/mtst/unicode_tables.hpp

The emitted header contains everything the C++ side needs for NFC
normalization (canonical decompositions, combining classes, primary
composites) and for codepoint classification (whitespace, punctuation,
emoji). Hangul syllables are handled algorithmically in C++ and are
excluded from the tables.
"""

import sys
import unicodedata

try:
    import regex
except ImportError:
    sys.exit("the `regex` package is required (pip install regex)")

MAX_CP = 0x110000
HANGUL_S_BASE, HANGUL_S_COUNT = 0xAC00, 11172


def is_hangul_syllable(cp: int) -> bool:
    return HANGUL_S_BASE <= cp < HANGUL_S_BASE + HANGUL_S_COUNT


def ranges_from_predicate(pred):
    out = []
    start = None
    for cp in range(MAX_CP):
        if 0xD800 <= cp <= 0xDFFF:
            hit = False
        else:
            hit = pred(cp)
        if hit and start is None:
            start = cp
        elif not hit and start is not None:
            out.append((start, cp - 1))
            start = None
    if start is not None:
        out.append((start, MAX_CP - 1))
    return out


def main():
    # Full canonical decompositions (NFD), Hangul excluded.
    decomp_entries = []  # (cp, [codepoints])
    pool = []
    for cp in range(MAX_CP):
        if 0xD800 <= cp <= 0xDFFF or is_hangul_syllable(cp):
            continue
        c = chr(cp)
        nfd = unicodedata.normalize("NFD", c)
        if nfd != c:
            cps = [ord(x) for x in nfd]
            decomp_entries.append((cp, len(pool), len(cps)))
            pool.extend(cps)

    # Nonzero canonical combining classes.
    ccc_entries = []
    for cp in range(MAX_CP):
        if 0xD800 <= cp <= 0xDFFF:
            continue
        ccc = unicodedata.combining(chr(cp))
        if ccc:
            ccc_entries.append((cp, ccc))

    # Primary composites: two-codepoint canonical decompositions that
    # recompose under NFC (this automatically drops the composition
    # exclusions). Keyed by (starter << 21) | combining.
    comp_entries = []
    for cp in range(MAX_CP):
        if 0xD800 <= cp <= 0xDFFF or is_hangul_syllable(cp):
            continue
        dec = unicodedata.decomposition(chr(cp))
        if not dec or dec.startswith("<"):
            continue
        parts = [int(p, 16) for p in dec.split()]
        if len(parts) != 2:
            continue
        if unicodedata.normalize("NFC", chr(parts[0]) + chr(parts[1])) == chr(cp):
            comp_entries.append(((parts[0] << 21) | parts[1], cp))
    comp_entries.sort()

    emoji_re = regex.compile(r"\p{Emoji}")
    emoji_ranges = ranges_from_predicate(lambda cp: bool(emoji_re.fullmatch(chr(cp))))

    punct_ranges = ranges_from_predicate(
        lambda cp: unicodedata.category(chr(cp)).startswith("P")
    )

    ws_ranges = ranges_from_predicate(lambda cp: chr(cp).isspace())

    w = sys.stdout.write
    w("// Generated by scripts/gen_unicode_tables.py — do not edit by hand.\n")
    w(f"// Unicode data version {unicodedata.unidata_version}\n")
    w("#pragma once\n\n#include <cstdint>\n\nnamespace mtst::uni {\n\n")

    w("struct DecompEntry { uint32_t cp; uint32_t offset; uint32_t len; };\n")
    w("struct CccEntry { uint32_t cp; uint8_t ccc; };\n")
    w("struct CompEntry { uint64_t key; uint32_t composed; };\n")
    w("struct CpRange { uint32_t lo; uint32_t hi; };\n\n")

    w(f"inline constexpr DecompEntry kDecomp[{len(decomp_entries)}] = {{\n")
    for cp, off, n in decomp_entries:
        w(f"  {{0x{cp:X}, {off}, {n}}},\n")
    w("};\n\n")

    w(f"inline constexpr uint32_t kDecompPool[{len(pool)}] = {{\n")
    for i in range(0, len(pool), 12):
        w("  " + ", ".join(f"0x{x:X}" for x in pool[i : i + 12]) + ",\n")
    w("};\n\n")

    w(f"inline constexpr CccEntry kCcc[{len(ccc_entries)}] = {{\n")
    for cp, ccc in ccc_entries:
        w(f"  {{0x{cp:X}, {ccc}}},\n")
    w("};\n\n")

    w(f"inline constexpr CompEntry kComp[{len(comp_entries)}] = {{\n")
    for key, cp in comp_entries:
        w(f"  {{0x{key:X}ull, 0x{cp:X}}},\n")
    w("};\n\n")

    for name, ranges in (
        ("kEmoji", emoji_ranges),
        ("kPunct", punct_ranges),
        ("kSpace", ws_ranges),
    ):
        w(f"inline constexpr CpRange {name}[{len(ranges)}] = {{\n")
        for lo, hi in ranges:
            w(f"  {{0x{lo:X}, 0x{hi:X}}},\n")
        w("};\n\n")

    w("}  // namespace mtst::uni\n")


if __name__ == "__main__":
    main()
