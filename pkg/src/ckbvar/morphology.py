"""Bound-morpheme inventory and template-based analysis/generation.

The inventory (``data/morphemes.tsv``) stores, per category and variety, the
surface forms of the productive noun, verb and adjective affixes. ``analyze``
segments a single token against slot templates and returns every consistent
reading instead of guessing; ``generate`` is its inverse and reattaches
surfaces in canonical slot order.

Segmentation works on the Latin projection. Arabic-script input is
transliterated, analyzed, and the pieces are mapped back so that the returned
surfaces still concatenate to the exact input token.

Known limitation: person/agent clitic order inside the verb complex (the
``birdyanim`` vs ``birdimyan`` contrast) is not modeled here; such pairs are
handled as whole-word vocabulary entries by the rewrite layer.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .orthography import is_arabic, to_arabic, to_latin
from .tags import SUBDIALECT_CODES, DialectTag

CATEGORIES = (
    "INDF_SG", "INDF_PL", "DEF_SG", "DEF_PL", "DEM", "OBL", "IZAFE",
    "INF", "PROG", "SBJV", "NEG", "VSUFF_EWE", "ADVERBIAL_E",
    "CLITIC_ISH", "COMP", "SUP",
)

# a verb prefix is only proposed when the residual stem looks finite
PERSON_ENDINGS = ("im", "î", "ît", "ê", "a", "at", "în", "in", "n")

# slot templates; each group admits at most one morpheme
TEMPLATES = {
    "verb": {
        "prefix": (("NEG", "SBJV", "PROG"),),
        "suffix": (("INF",), ("VSUFF_EWE",), ("ADVERBIAL_E",), ("CLITIC_ISH",)),
    },
    "noun": {
        "prefix": (),
        "suffix": (("INDF_SG", "INDF_PL", "DEF_SG", "DEF_PL", "DEM"),
                   ("OBL",), ("IZAFE",), ("CLITIC_ISH",)),
    },
    "adjective": {
        "prefix": (),
        "suffix": (("COMP", "SUP"), ("CLITIC_ISH",)),
    },
}


class MorphologyError(ValueError):
    pass


class InvalidTokenError(MorphologyError):
    pass


class UnavailableMorphemeError(MorphologyError):
    pass


class TemplateError(MorphologyError):
    pass


def dialect_code(dialect: "DialectTag | str") -> str:
    if isinstance(dialect, DialectTag):
        name = dialect.subdialect or "Standard"
        return SUBDIALECT_CODES[name]
    if dialect in SUBDIALECT_CODES:
        return SUBDIALECT_CODES[dialect]
    if dialect in SUBDIALECT_CODES.values():
        return dialect
    try:
        tag = DialectTag.parse(dialect)
    except Exception as exc:
        raise MorphologyError(f"unknown dialect {dialect!r}") from exc
    return SUBDIALECT_CODES[tag.subdialect or "Standard"]


@dataclass(frozen=True)
class Morpheme:
    category: str
    dialect: str
    surface_latin: str
    surface_arabic: str
    position: str
    available: bool

    @property
    def is_zero(self) -> bool:
        return self.surface_latin == ""


class Inventory:
    def __init__(self, rows: list[Morpheme]):
        self.rows = rows
        self._cells: dict[tuple[str, str], list[Morpheme]] = {}
        for m in rows:
            self._cells.setdefault((m.category, m.dialect), []).append(m)

    def available(self, category: str, dialect: str) -> bool:
        cell = self._cells.get((category, dialect), [])
        return any(m.available for m in cell)

    def surfaces(self, category: str, dialect: str,
                 include_zero: bool = False) -> tuple[str, ...]:
        """Surface forms in preference order; zero surfaces are opt-in."""
        cell = self._cells.get((category, dialect), [])
        out = []
        for m in cell:
            if not m.available:
                continue
            if m.is_zero and not include_zero:
                continue
            out.append(m.surface_latin)
        return tuple(out)

    def has_zero(self, category: str, dialect: str) -> bool:
        cell = self._cells.get((category, dialect), [])
        return any(m.available and m.is_zero for m in cell)

    def position(self, category: str) -> str:
        for m in self.rows:
            if m.category == category:
                return m.position
        raise MorphologyError(f"unknown category {category!r}")

    def populated_cells(self) -> list[tuple[str, str, tuple[str, ...]]]:
        seen = []
        for (category, dialect), cell in self._cells.items():
            surfaces = self.surfaces(category, dialect)
            if any(m.available for m in cell):
                seen.append((category, dialect, surfaces))
        return seen


@lru_cache(maxsize=None)
def load_inventory() -> Inventory:
    text = resources.files("ckbvar").joinpath("data/morphemes.tsv").read_text("utf-8")
    rows = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if line.startswith("#") or not line.strip():
            continue
        cells = line.split("\t")
        if len(cells) != 6:
            raise MorphologyError(f"morphemes.tsv:{line_no}: expected 6 fields")
        category, dialect, latin, arabic, position, available = cells
        if category not in CATEGORIES:
            raise MorphologyError(f"morphemes.tsv:{line_no}: unknown category {category!r}")
        if available not in ("0", "1"):
            raise MorphologyError(f"morphemes.tsv:{line_no}: bad availability {available!r}")
        latin = "" if latin == "∅" else latin
        arabic = "" if arabic == "∅" else arabic
        if available == "0":
            latin = arabic = ""
        rows.append(Morpheme(category, dialect, latin, arabic, position,
                             available == "1"))
    return Inventory(rows)


@dataclass(frozen=True)
class Affix:
    categories: tuple[str, ...]
    surface: str
    position: str

    @property
    def category(self) -> str:
        return self.categories[0]


@dataclass(frozen=True)
class MorphAnalysis:
    stem: str
    prefixes: tuple[Affix, ...]
    suffixes: tuple[Affix, ...]
    confidence_rank: int

    def surface(self) -> str:
        return ("".join(a.surface for a in self.prefixes) + self.stem
                + "".join(a.surface for a in self.suffixes))

    def categories(self) -> tuple[str, ...]:
        return tuple(a.category for a in self.prefixes + self.suffixes)

    @property
    def n_affixes(self) -> int:
        return len(self.prefixes) + len(self.suffixes)


def _suffix_splits(word: str, slots, dialect: str, inv: Inventory):
    """Yield (stem, [(category, surface), ...]) for one suffix slot chain."""
    results = [(word, [])]
    for group in reversed(slots):
        extended = []
        for remaining, picked in results:
            extended.append((remaining, picked))
            for category in group:
                for surface in inv.surfaces(category, dialect):
                    if remaining.endswith(surface) and len(remaining) > len(surface):
                        extended.append((remaining[:-len(surface)],
                                         [(category, surface)] + picked))
        results = extended
    return results


def _latin_candidates(word: str, dialect: str, inv: Inventory):
    candidates = []
    for template in TEMPLATES.values():
        prefix_options: list[list[tuple[str, str]]] = [[]]
        for group in template["prefix"]:
            for category in group:
                for surface in inv.surfaces(category, dialect):
                    if word.startswith(surface) and len(word) > len(surface):
                        prefix_options.append([(category, surface)])
        for prefixes in prefix_options:
            rest = word[len(prefixes[0][1]):] if prefixes else word
            for stem, suffixes in _suffix_splits(rest, template["suffix"], dialect, inv):
                if not stem:
                    continue
                if not prefixes and not suffixes:
                    continue
                if prefixes and (len(stem) < 2
                                 or not stem.endswith(PERSON_ENDINGS)):
                    continue
                candidates.append((prefixes, stem, suffixes))
    return candidates


def _merge_and_rank(word: str, candidates, inv: Inventory) -> list[MorphAnalysis]:
    merged: dict[tuple, dict] = {}
    for prefixes, stem, suffixes in candidates:
        key = (tuple(s for _, s in prefixes), stem, tuple(s for _, s in suffixes))
        slot = merged.setdefault(key, {"prefix_cats": [set() for _ in prefixes],
                                       "suffix_cats": [set() for _ in suffixes]})
        for i, (category, _) in enumerate(prefixes):
            slot["prefix_cats"][i].add(category)
        for i, (category, _) in enumerate(suffixes):
            slot["suffix_cats"][i].add(category)

    def cat_key(cats: tuple[str, ...]) -> int:
        return min(CATEGORIES.index(c) for c in cats)

    analyses = []
    for (pre_surfs, stem, suf_surfs), cats in merged.items():
        prefixes = tuple(
            Affix(tuple(sorted(c, key=CATEGORIES.index)), surf, "prefix")
            for surf, c in zip(pre_surfs, cats["prefix_cats"]))
        suffixes = tuple(
            Affix(tuple(sorted(c, key=CATEGORIES.index)), surf,
                  inv.position(sorted(c, key=CATEGORIES.index)[0]))
            for surf, c in zip(suf_surfs, cats["suffix_cats"]))
        analyses.append((prefixes, stem, suffixes))

    analyses.sort(key=lambda a: (
        len(a[0]) + len(a[2]),
        -len(a[1]),
        tuple(cat_key(x.categories) for x in a[0] + a[2]),
        tuple(x.surface for x in a[0] + a[2]),
    ))
    out = [MorphAnalysis(stem, prefixes, suffixes, rank)
           for rank, (prefixes, stem, suffixes) in enumerate(analyses, start=1)]
    out.append(MorphAnalysis(word, (), (), len(out) + 1))
    return out


def _arabize_analysis(word: str, analysis: MorphAnalysis) -> MorphAnalysis | None:
    """Map a Latin-side analysis back onto the Arabic-script token."""
    if not analysis.prefixes and not analysis.suffixes:
        return MorphAnalysis(word, (), (), analysis.confidence_rank)
    prefixes = tuple(
        Affix(a.categories, to_arabic(a.surface, initial=(i == 0)), a.position)
        for i, a in enumerate(analysis.prefixes))
    stem = to_arabic(analysis.stem, initial=not analysis.prefixes)
    suffixes = tuple(Affix(a.categories, to_arabic(a.surface, initial=False), a.position)
                     for a in analysis.suffixes)
    rebuilt = ("".join(a.surface for a in prefixes) + stem
               + "".join(a.surface for a in suffixes))
    if rebuilt != word:
        return None
    return MorphAnalysis(stem, prefixes, suffixes, analysis.confidence_rank)


def analyze(word: str, dialect: "DialectTag | str" = "std",
            inventory: Inventory | None = None) -> list[MorphAnalysis]:
    """Return all template-consistent segmentations, best-ranked first.

    The zero-affix reading (whole word as stem) is always present and always
    last. Analyses never share a rank; each analysis's parts concatenate to
    the input token exactly.
    """
    inv = inventory or load_inventory()
    code = dialect_code(dialect)
    if not word or not any(ch.isalpha() for ch in word):
        raise InvalidTokenError(f"cannot analyze {word!r}: not a word token")
    if any(ch.isspace() for ch in word):
        raise InvalidTokenError(f"cannot analyze {word!r}: expected a single token")

    arabic = is_arabic(word)
    lat = to_latin(word) if arabic else word
    ranked = _merge_and_rank(lat, _latin_candidates(lat, code, inv), inv)
    if not arabic:
        return ranked
    out = []
    for analysis in ranked:
        back = _arabize_analysis(word, analysis)
        if back is not None:
            out.append(back)
    return [MorphAnalysis(a.stem, a.prefixes, a.suffixes, rank)
            for rank, a in enumerate(out, start=1)]


def _pick_template(categories: list[str]) -> tuple[str, dict]:
    for name, template in TEMPLATES.items():
        groups = list(template["prefix"]) + list(template["suffix"])
        used_groups = []
        ok = True
        for category in categories:
            holder = next((g for g in groups if category in g), None)
            if holder is None:
                ok = False
                break
            if holder in used_groups:
                raise TemplateError(
                    f"categories {categories} compete for one slot")
            used_groups.append(holder)
        if ok:
            return name, template
    raise TemplateError(f"no slot template accepts categories {categories}")


def generate(stem: str, categories: list[str], dialect: "DialectTag | str" = "std",
             surfaces: dict[str, str] | None = None,
             inventory: Inventory | None = None,
             warnings: list[str] | None = None) -> str:
    """Attach the given categories to ``stem`` in canonical slot order.

    ``surfaces`` may pin a listed alternative per category; by default the
    first listed form is used. A zero surface (Sanandaj izafe) yields the bare
    stem and adds a note to ``warnings`` when provided.
    """
    inv = inventory or load_inventory()
    code = dialect_code(dialect)
    if not stem:
        raise InvalidTokenError("empty stem")
    for category in categories:
        if category not in CATEGORIES:
            raise MorphologyError(f"unknown category {category!r}")
        if not inv.available(category, code):
            raise UnavailableMorphemeError(
                f"{category} is unavailable in dialect {code}")
    _, template = _pick_template(list(categories))

    def surface_for(category: str) -> str:
        listed = inv.surfaces(category, code, include_zero=True)
        if surfaces and category in surfaces:
            chosen = surfaces[category]
            if chosen not in listed:
                raise MorphologyError(
                    f"surface {chosen!r} is not listed for {category} in {code}")
        else:
            chosen = listed[0]
        if chosen == "" and warnings is not None:
            warnings.append(f"zero surface used for {category} in {code}")
        return chosen

    arabic = is_arabic(stem)
    parts_pre, parts_suf = [], []
    for group in template["prefix"]:
        for category in categories:
            if category in group:
                s = surface_for(category)
                parts_pre.append(to_arabic(s, initial=True) if arabic else s)
    for group in template["suffix"]:
        for category in categories:
            if category in group:
                s = surface_for(category)
                parts_suf.append(to_arabic(s, initial=False) if arabic else s)
    return "".join(parts_pre) + stem + "".join(parts_suf)
