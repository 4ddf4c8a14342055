"""Variety tags for Central Kurdish.

A tag names a point in the language > dialect > subdialect hierarchy. The
string form is ``language[-subdialect-code]``: ``ckb`` alone refers to the
language level, ``ckb-slm`` to a city subdialect, ``ckb-std`` to the written
standard register.
"""
from __future__ import annotations

from dataclasses import dataclass

LANGUAGE = "ckb"
DIALECT = "Central"

# subdialect name -> short code used in label strings
SUBDIALECT_CODES = {
    "Standard": "std",
    "Sulaymaniyah": "slm",
    "Sanandaj": "snn",
    "Erbil": "hwl",
    "Mahabad": "mhb",
    "Kalar": "klr",
    "Sardasht": "srd",
}
CODE_TO_SUBDIALECT = {v: k for k, v in SUBDIALECT_CODES.items()}

# subdialects the rewrite tables cover (Standard is the identity target)
RULE_COVERED = ("Sulaymaniyah", "Sanandaj", "Erbil", "Mahabad")


class TagError(ValueError):
    """Raised for malformed or unknown variety labels."""


@dataclass(frozen=True)
class DialectTag:
    language: str = LANGUAGE
    dialect: str | None = None
    subdialect: str | None = None

    def __str__(self) -> str:
        if self.subdialect:
            return f"{self.language}-{SUBDIALECT_CODES[self.subdialect]}"
        return self.language

    @classmethod
    def parse(cls, label: str) -> "DialectTag":
        label = label.strip()
        if not label:
            raise TagError("empty variety label")
        parts = label.split("-", 1)
        language = parts[0]
        if len(parts) == 1:
            return cls(language=language)
        code = parts[1]
        if code not in CODE_TO_SUBDIALECT:
            raise TagError(f"unknown subdialect code {code!r} in label {label!r}")
        return cls(language=language, dialect=DIALECT, subdialect=CODE_TO_SUBDIALECT[code])


def subdialect_tag(name: str) -> DialectTag:
    if name not in SUBDIALECT_CODES:
        raise TagError(f"unknown subdialect {name!r}")
    return DialectTag(language=LANGUAGE, dialect=DIALECT, subdialect=name)


def project_label(label: str, level: str) -> str:
    """Project a subdialect label onto a coarser level of the hierarchy.

    ``level`` is one of ``language``, ``dialect``, ``subdialect``. Labels that
    do not parse are returned unchanged so that synthetic label sets keep
    working at the subdialect level.
    """
    if level == "subdialect":
        return label
    try:
        tag = DialectTag.parse(label)
    except TagError:
        return label
    if level == "language":
        return tag.language
    if level == "dialect":
        dialect = tag.dialect or DIALECT
        return f"{tag.language}-{dialect.lower()}"
    raise TagError(f"unknown level {level!r}")
