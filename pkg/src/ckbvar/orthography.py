"""Script normalization and Arabic <-> Latin transliteration.

Central Kurdish text arrives with Arabic/Persian codepoint variants (ي vs ی,
ك vs ک, ه + ZWNJ vs ە), stray diacritics, and inconsistent whitespace.
``normalize`` folds these onto one canonical Arabic-script form and computes
token spans. ``transliterate`` converts whole tokens between the Arabic script
and the Latin scheme used for rule authoring (ç ê î ş û, ł for ڵ, ř for ڕ).

The Latin side writes a short vowel ``i`` that the Arabic script leaves out
(دەچم = deçim), so Arabic -> Latin has to re-insert it by syllabifying
consonant runs. The placement heuristics live next to the mapping in
``data/transliteration.tsv``; every inserted ``i`` is dropped again on the way
back, which is what makes the Arabic -> Latin -> Arabic round trip exact.
"""
from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

ZWNJ = "‌"
APOSTROPHE = "'"

# two-consonant codas that close a syllable without an epenthetic vowel
CODA_CLUSTERS = {
    "st", "şt", "ft", "xt", "rt",
    "rd", "rg", "rm", "rz",
    "nd", "ng", "nc", "nk",
}

LATIN_VOWELS = set("aeêîouû")
LATIN_VOWELS_WITH_I = LATIN_VOWELS | {"i"}

_ARABIC_RANGES = (
    (0x0600, 0x06FF),
    (0x0750, 0x077F),
    (0x08A0, 0x08FF),
    (0xFB50, 0xFDFF),
    (0xFE70, 0xFEFF),
)


class TableError(ValueError):
    """Raised when a mapping table file is malformed."""


def _data_text(name: str) -> str:
    return resources.files("ckbvar").joinpath(f"data/{name}").read_text("utf-8")


def _parse_escape(spec: str) -> str | None:
    if re.fullmatch(r"U\+[0-9A-Fa-f]{4,6}", spec):
        return chr(int(spec[2:], 16))
    return None


def _parse_range(spec: str) -> tuple[int, int] | None:
    m = re.fullmatch(r"U\+([0-9A-Fa-f]{4,6})\.\.U\+([0-9A-Fa-f]{4,6})", spec)
    if not m:
        return None
    return int(m.group(1), 16), int(m.group(2), 16)


def _read_rows(name: str) -> tuple[str, list[tuple[str, str, str]]]:
    version = "unversioned"
    rows = []
    for line_no, line in enumerate(_data_text(name).splitlines(), start=1):
        if line.startswith("#"):
            if line_no == 1:
                version = line.lstrip("# ").strip()
            continue
        if not line.strip():
            continue
        cells = line.split("\t")
        if len(cells) != 3:
            raise TableError(f"{name}:{line_no}: expected 3 tab-separated fields")
        rows.append((cells[0], cells[1], cells[2]))
    return version, rows


@dataclass(frozen=True)
class NormalizationTable:
    version: str
    char_map: dict[str, str]
    multi_map: dict[str, str]
    strip_chars: frozenset[str]
    nfkc_ranges: tuple[tuple[int, int], ...]


@lru_cache(maxsize=None)
def load_normalization_table() -> NormalizationTable:
    version, rows = _read_rows("normalization.tsv")
    char_map: dict[str, str] = {}
    multi_map: dict[str, str] = {}
    strip_chars: set[str] = set()
    nfkc_ranges: list[tuple[int, int]] = []
    for src, tgt, flag in rows:
        if flag == "map":
            if len(src) == 1:
                char_map[src] = tgt
            else:
                multi_map[src] = tgt
        elif flag == "strip":
            rng = _parse_range(src)
            if rng:
                strip_chars.update(chr(c) for c in range(rng[0], rng[1] + 1))
                continue
            ch = _parse_escape(src) or src
            strip_chars.add(ch)
        elif flag == "nfkc":
            rng = _parse_range(src)
            if not rng:
                raise TableError(f"nfkc rows need a U+..U+ range, got {src!r}")
            nfkc_ranges.append(rng)
        else:
            raise TableError(f"unknown normalization flag {flag!r}")
    return NormalizationTable(version, char_map, multi_map,
                              frozenset(strip_chars), tuple(nfkc_ranges))


@dataclass(frozen=True)
class TransliterationTable:
    """Ordered grapheme mapping plus the position rules encoded by row flags."""

    version: str
    rows: tuple[tuple[str, str, str], ...]
    vowels: dict[str, str] = field(default_factory=dict)        # ا -> a
    consonants: dict[str, str] = field(default_factory=dict)    # ب -> b
    duals: dict[str, tuple[str, str]] = field(default_factory=dict)  # و -> (w, u)
    digraphs: dict[str, str] = field(default_factory=dict)      # وو -> û
    hamza: str = "ئ"
    latin_to_arabic: dict[str, str] = field(default_factory=dict)

    @classmethod
    def from_rows(cls, version: str, rows: list[tuple[str, str, str]]) -> "TransliterationTable":
        vowels, consonants, duals, digraphs = {}, {}, {}, {}
        lat2ar: dict[str, str] = {}
        hamza = "ئ"
        for src, tgt, flag in rows:
            if flag == "v":
                vowels[src] = tgt
                lat2ar.setdefault(tgt, src)
            elif flag == "c":
                consonants[src] = tgt
                lat2ar.setdefault(tgt, src)
            elif flag == "dual":
                cons, vow = tgt.split(",")
                duals[src] = (cons, vow)
                lat2ar.setdefault(cons, src)
                lat2ar.setdefault(vow, src)
            elif flag == "digraph":
                digraphs[src] = tgt
                lat2ar.setdefault(tgt, src)
            elif flag == "hamza":
                hamza = src
            elif flag == "epenthetic":
                lat2ar.setdefault(tgt, "")
            else:
                raise TableError(f"unknown transliteration flag {flag!r}")
        return cls(version, tuple(rows), vowels, consonants, duals, digraphs,
                   hamza, lat2ar)

    def arabic_letters(self) -> set[str]:
        letters = set(self.vowels) | set(self.consonants) | set(self.duals)
        letters.add(self.hamza)
        return letters


@lru_cache(maxsize=None)
def load_transliteration_table() -> TransliterationTable:
    version, rows = _read_rows("transliteration.tsv")
    return TransliterationTable.from_rows(version, rows)


@dataclass(frozen=True)
class NormalizedText:
    text: str
    token_spans: tuple[tuple[int, int], ...]
    warnings: tuple[str, ...] = ()

    def tokens(self) -> list[str]:
        return [self.text[a:b] for a, b in self.token_spans]


def _is_word_char(ch: str) -> bool:
    return ch.isalnum() or ch == "_" or ch == ZWNJ


def _token_spans(text: str) -> tuple[tuple[int, int], ...]:
    spans: list[tuple[int, int]] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if _is_word_char(ch):
            j = i + 1
            while j < n:
                nxt = text[j]
                if _is_word_char(nxt):
                    j += 1
                # apostrophes are word-internal (mes'ed), never word-final
                elif nxt == APOSTROPHE and j + 1 < n and _is_word_char(text[j + 1]):
                    j += 2
                else:
                    break
            spans.append((i, j))
            i = j
        else:
            spans.append((i, i + 1))
            i += 1
    return tuple(spans)


def _known_chars(translit: TransliterationTable) -> set[str]:
    known = translit.arabic_letters()
    known.update(translit.latin_to_arabic)
    known.update("abcdefghijklmnopqrstuvwxyz")
    known.update("ABCDEFGHIJKLMNOPQRSTUVWXYZ")
    known.update("0123456789")
    known.update("٠١٢٣٤٥٦٧٨٩۰۱۲۳۴۵۶۷۸۹")
    known.add(ZWNJ)
    return known


def normalize(raw: str, keep_zwnj: bool = True,
              table: NormalizationTable | None = None) -> NormalizedText:
    """Normalize a raw string and compute token spans.

    Idempotent: feeding the resulting text back through changes nothing.
    Characters outside the known repertoire are kept and reported in
    ``warnings`` rather than dropped.
    """
    table = table or load_normalization_table()
    out: list[str] = []
    for ch in raw:
        cp = ord(ch)
        if any(lo <= cp <= hi for lo, hi in table.nfkc_ranges):
            out.append(unicodedata.normalize("NFKC", ch))
        else:
            out.append(ch)
    text = "".join(out)
    text = "".join(table.char_map.get(ch, ch) for ch in text
                   if ch not in table.strip_chars)
    for src, tgt in table.multi_map.items():
        text = text.replace(src, tgt)
    if keep_zwnj:
        edge = re.compile(rf"(?<![^\W\d_]){ZWNJ}|{ZWNJ}(?![^\W\d_])", re.UNICODE)
        # letters only on both sides; loop because stripping can expose edges
        prev = None
        while prev != text:
            prev = text
            text = edge.sub("", text)
    else:
        text = text.replace(ZWNJ, "")
    text = re.sub(r"\s+", " ", text).strip()

    translit = load_transliteration_table()
    known = _known_chars(translit)
    warnings = []
    for offset, ch in enumerate(text):
        if ch in known or ch == " ":
            continue
        if unicodedata.category(ch)[0] in ("P", "S"):
            continue
        warnings.append(f"unknown character U+{ord(ch):04X} kept at offset {offset}")
    return NormalizedText(text, _token_spans(text), tuple(warnings))


def tokenize(text: NormalizedText | str) -> list[str]:
    """Split normalized text into word and punctuation tokens."""
    if isinstance(text, str):
        text = normalize(text)
    return text.tokens()


def is_arabic(text: str) -> bool:
    return any(any(lo <= ord(ch) <= hi for lo, hi in _ARABIC_RANGES) for ch in text)


def _coda_ok(c1: str, c2: str) -> bool:
    return c1 + c2 in CODA_CLUSTERS


def _distribute(run: list[str], left_v: bool, right_v: bool) -> str:
    """Insert epenthetic i into one consonant run between vowels/edges."""
    onset: list[str] = []
    rest = list(run)
    if right_v and rest:
        take = 2 if len(rest) >= 2 and rest[-2] == "x" and rest[-1] == "w" else 1
        onset = rest[-take:]
        rest = rest[:-take]
    pieces: list[str] = []
    rem = rest
    while rem:
        if left_v and len(rem) == 1:
            pieces.insert(0, rem[0])
            rem = []
        elif left_v and len(rem) == 2 and onset:
            # V C1 C2 + reserved onset: C1 closes the left syllable, C2 opens
            # a new one with an epenthetic vowel (xoş-ti-rîn)
            pieces.insert(0, rem[1] + "i")
            pieces.insert(0, rem[0])
            rem = []
        elif left_v and len(rem) == 2 and _coda_ok(rem[0], rem[1]):
            pieces.insert(0, rem[0] + rem[1])
            rem = []
        elif not left_v and len(rem) == 1:
            pieces.insert(0, rem[0] + "i")
            rem = []
        elif not left_v and len(rem) == 2:
            pieces.insert(0, rem[0] + "i" + rem[1])
            rem = []
        elif not left_v and len(rem) == 3 and _coda_ok(rem[1], rem[2]):
            pieces.insert(0, rem[0] + "i" + rem[1] + rem[2])
            rem = []
        else:
            pieces.insert(0, rem[-2] + "i" + rem[-1])
            rem = rem[:-2]
    return "".join(pieces) + "".join(onset)


def to_latin(token: str, table: TransliterationTable | None = None,
             warnings: list[str] | None = None) -> str:
    """Transliterate one Arabic-script token into the Latin scheme."""
    table = table or load_transliteration_table()
    units: list[list[str]] = []  # [kind, value]; kinds: v c dual hamza other
    i = 0
    while i < len(token):
        if token[i:i + 2] in table.digraphs:
            units.append(["v", table.digraphs[token[i:i + 2]]])
            i += 2
            continue
        ch = token[i]
        if ch == table.hamza:
            units.append(["hamza", ch])
        elif ch in table.vowels:
            units.append(["v", table.vowels[ch]])
        elif ch in table.consonants:
            units.append(["c", table.consonants[ch]])
        elif ch in table.duals:
            units.append(["dual", ch])
        else:
            units.append(["other", ch])
            if warnings is not None and ch != ZWNJ and unicodedata.category(ch).startswith("L"):
                warnings.append(f"unmapped letter {ch!r} kept in {token!r}")
        i += 1

    # word-initial hamza introduces a vowel and disappears; elsewhere it stays
    if units and units[0][0] == "hamza":
        if len(units) > 1 and units[1][0] == "v":
            units[0][0] = "skip"
        elif len(units) > 1 and units[1][0] == "dual":
            units[0][0] = "skip"
            units[1] = ["v", table.duals[units[1][1]][1]]
    for idx, unit in enumerate(units):
        if unit[0] == "hamza":
            unit[0] = "other"
            if warnings is not None:
                warnings.append(f"non-initial hamza kept in {token!r}")

    # resolve remaining duals left to right
    resolved: list[list[str]] = []
    for idx, unit in enumerate(units):
        if unit[0] != "dual":
            resolved.append(unit)
            continue
        cons, vow = table.duals[unit[1]]
        prev_v = bool(resolved) and resolved[-1][0] == "v"
        nxt = units[idx + 1] if idx + 1 < len(units) else None
        nxt_v = nxt is not None and nxt[0] == "v"
        first = not any(u[0] in ("v", "c", "other") for u in resolved)
        if first or prev_v or nxt_v:
            resolved.append(["c", cons])
        else:
            resolved.append(["v", vow])

    # epenthesize within contiguous known stretches; opaque units break context
    out: list[str] = []
    i = 0
    while i < len(resolved):
        kind, value = resolved[i]
        if kind == "skip":
            i += 1
        elif kind == "v":
            out.append(value)
            i += 1
        elif kind == "other":
            out.append(value)
            i += 1
        else:
            j = i
            run = []
            while j < len(resolved) and resolved[j][0] == "c":
                run.append(resolved[j][1])
                j += 1
            left_v = i > 0 and resolved[i - 1][0] == "v"
            right_v = j < len(resolved) and resolved[j][0] == "v"
            out.append(_distribute(run, left_v, right_v))
            i = j
    return "".join(out)


def to_arabic(token: str, table: TransliterationTable | None = None,
              initial: bool = True,
              warnings: list[str] | None = None) -> str:
    """Transliterate one Latin-scheme token into Arabic script.

    ``initial=False`` renders an affix fragment: a leading vowel is then not
    given the hamza carrier it would get at a word start.
    """
    table = table or load_transliteration_table()
    out: list[str] = []
    at_start = True
    for ch in token:
        mapped = table.latin_to_arabic.get(ch)
        if mapped is None:
            out.append(ch)
            if warnings is not None and ch != ZWNJ and unicodedata.category(ch).startswith("L"):
                warnings.append(f"unmapped letter {ch!r} kept in {token!r}")
            at_start = False
            continue
        if mapped == "":  # epenthetic i: written nowhere
            continue
        if at_start and initial and ch in LATIN_VOWELS:
            out.append(table.hamza)
        out.append(mapped)
        at_start = False
    return "".join(out)


def transliterate(text: NormalizedText | str, direction: str,
                  table: TransliterationTable | None = None) -> NormalizedText:
    """Convert every word token of ``text`` into the requested script.

    ``direction`` is the target script, ``"latin"`` or ``"arabic"``. Tokens
    already in the target script, digits and punctuation pass through.
    """
    if direction not in ("latin", "arabic"):
        raise ValueError(f"direction must be 'latin' or 'arabic', got {direction!r}")
    if isinstance(text, str):
        text = normalize(text)
    table = table or load_transliteration_table()
    warnings = list(text.warnings)
    pieces: list[str] = []
    cursor = 0
    for a, b in text.token_spans:
        pieces.append(text.text[cursor:a])
        token = text.text[a:b]
        if direction == "latin" and is_arabic(token):
            pieces.append(to_latin(token, table, warnings))
        elif direction == "arabic" and not is_arabic(token) and any(ch.isalpha() for ch in token):
            pieces.append(to_arabic(token, table, warnings=warnings))
        else:
            pieces.append(token)
        cursor = b
    pieces.append(text.text[cursor:])
    rebuilt = "".join(pieces)
    return NormalizedText(rebuilt, _token_spans(rebuilt), tuple(warnings))
