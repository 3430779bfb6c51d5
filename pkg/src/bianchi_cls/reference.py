"""Reference data: the 48 principal congruence link levels and the eight
levels whose quotients are listed with norm, group order and cusp count.

Each level is stored once per conjugate pair, as a generator list in the
quadint element syntax.  ``source`` records where the level was first shown
to give a link complement: BR1, BR2, Go2, or "final" for the eight levels
settled last.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .quadint import QIdeal, canonical_up_to_conjugation, parse_ideal


@dataclass(frozen=True)
class ReferenceLevel:
    d: int
    generators: str
    source: str

    def ideal(self) -> QIdeal:
        return canonical_up_to_conjugation(parse_ideal(self.d, self.generators))


LINK_LEVELS: tuple[ReferenceLevel, ...] = tuple(
    ReferenceLevel(d, g, src) for d, g, src in [
        (1, "2", "BR1"), (1, "2+i", "BR1"), (1, "2+2*i", "BR1"), (1, "3", "BR1"),
        (1, "3+i", "Go2"), (1, "3+2*i", "Go2"), (1, "4+i", "Go2"),
        (2, "1+sqrt-2", "BR1"), (2, "2", "BR1"), (2, "2+sqrt-2", "BR1"),
        (2, "1+2*sqrt-2", "final"), (2, "3+sqrt-2", "final"),
        (3, "2", "BR1"), (3, "3", "BR1"), (3, "(5+sqrt-3)/2", "BR1"), (3, "3+sqrt-3", "BR1"),
        (3, "(7+sqrt-3)/2", "Go2"), (3, "4+sqrt-3", "Go2"), (3, "(9+sqrt-3)/2", "Go2"),
        (5, "3, 1+sqrt-5", "BR2"),
        (7, "(1+sqrt-7)/2", "BR1"), (7, "2", "BR1"), (7, "(3+sqrt-7)/2", "BR1"), (7, "1+sqrt-7", "BR1"),
        (7, "sqrt-7", "final"), (7, "(5+sqrt-7)/2", "final"), (7, "2+sqrt-7", "final"),
        (7, "(7+sqrt-7)/2", "final"), (7, "(1+3*sqrt-7)/2", "final"),
        (11, "(1+sqrt-11)/2", "BR1"), (11, "(3+sqrt-11)/2", "BR1"), (11, "(5+sqrt-11)/2", "final"),
        (15, "2, (1+sqrt-15)/2", "BR2"), (15, "3, (3+sqrt-15)/2", "BR2"), (15, "(1+sqrt-15)/2", "BR2"),
        (15, "5, (5+sqrt-15)/2", "BR2"), (15, "(3+sqrt-15)/2", "BR2"),
        (19, "(1+sqrt-19)/2", "BR1"),
        (23, "2, (1+sqrt-23)/2", "BR2"), (23, "3, (1+sqrt-23)/2", "BR2"), (23, "4, (3+sqrt-23)/2", "BR2"),
        (31, "2, (1+sqrt-31)/2", "BR2"), (31, "4, (1+sqrt-31)/2", "BR2"), (31, "5, (3+sqrt-31)/2", "BR2"),
        (47, "2, (1+sqrt-47)/2", "BR2"), (47, "3, (1+sqrt-47)/2", "BR2"), (47, "4, (1+sqrt-47)/2", "BR2"),
        (71, "2, (1+sqrt-71)/2", "BR2"),
    ]
)


@dataclass(frozen=True)
class Table1Row:
    d: int
    x: str
    norm: int
    order: int
    cusps: int


TABLE1: tuple[Table1Row, ...] = (
    Table1Row(2, "1+2*sqrt-2", 9, 324, 36),
    Table1Row(2, "3+sqrt-2", 11, 660, 60),
    Table1Row(7, "sqrt-7", 7, 168, 24),
    Table1Row(7, "(5+sqrt-7)/2", 8, 192, 24),
    Table1Row(7, "2+sqrt-7", 11, 660, 60),
    Table1Row(7, "(7+sqrt-7)/2", 14, 1008, 72),
    Table1Row(7, "(1+3*sqrt-7)/2", 16, 1536, 96),
    Table1Row(11, "(5+sqrt-11)/2", 9, 324, 36),
)

# the one level among the final candidates whose quotient group was shown
# infinite only by an external automatic-structure computation
FINAL_CASE = (2, "1+3*sqrt-2")
FINAL_CASE_NOTE = ("not a link group: PSL(2,O_2)/N_2(I) proved infinite by an external "
                   "automatic-structure (MAF) computation, not reproduced here")

ADMISSIBLE_FIELDS = (1, 2, 3, 5, 6, 7, 11, 15, 19, 23, 31, 39, 47, 71)


@lru_cache(maxsize=None)
def reference_ideals() -> dict[tuple[int, QIdeal], ReferenceLevel]:
    return {(lvl.d, lvl.ideal()): lvl for lvl in LINK_LEVELS}


def lookup(d: int, ideal: QIdeal) -> ReferenceLevel | None:
    return reference_ideals().get((d, canonical_up_to_conjugation(ideal)))


def final_case_ideal() -> QIdeal:
    d, g = FINAL_CASE
    return canonical_up_to_conjugation(parse_ideal(d, g))
