"""Reidemeister-Schreier rewriting and abelian invariants."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .cosets import UNDEF, CosetTable
from .snf import smith_normal_form
from .words import Presentation, Word


@dataclass(frozen=True)
class AbelianInvariants:
    """Z^free_rank + Z/d1 + ... + Z/dk with d1 | d2 | ... | dk, all di > 1."""

    free_rank: int
    torsion: tuple[int, ...]

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def relation_matrix(pres: Presentation) -> list[list[int]]:
    return [r.exponent_sums(pres.ngens) for r in pres.relators]


def abelian_invariants_of_matrix(matrix, ngens: int) -> AbelianInvariants:
    factors = smith_normal_form(matrix) if matrix else []
    return AbelianInvariants(ngens - len(factors), tuple(d for d in factors if d != 1))


def abelianization(pres: Presentation) -> AbelianInvariants:
    return abelian_invariants_of_matrix(relation_matrix(pres), pres.ngens)


class TableNotClosed(ValueError):
    pass


def schreier_transversal(table: CosetTable) -> list[tuple[int, int] | None]:
    """BFS spanning tree: parent[c] = (coset, column) of the tree edge into c."""
    n = table.index
    parent: list[tuple[int, int] | None] = [None] * n
    seen = [False] * n
    seen[0] = True
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for col, d in enumerate(table.rows[c]):
            if not seen[d]:
                seen[d] = True
                parent[d] = (c, col)
                queue.append(d)
    return parent


def reidemeister_schreier(pres: Presentation, table: CosetTable) -> Presentation:
    """Presentation of the subgroup H whose closed coset table is given.

    Generators are the Schreier generators s(c, g) = rep(c) g rep(cg)^-1 for
    the non-tree edges; relators are the rewrites of every relator at every
    coset.
    """
    if not table.closed or UNDEF in (x for row in table.rows for x in row):
        raise TableNotClosed("table not closed")
    n = table.index
    parent = schreier_transversal(table)
    tree = set()
    for d, e in enumerate(parent):
        if e is not None:
            c, col = e
            if col % 2 == 0:
                tree.add((c, col // 2))
            else:
                tree.add((d, col // 2))
    index: dict[tuple[int, int], int] = {}
    names = []
    for c in range(n):
        for g in range(pres.ngens):
            if (c, g) not in tree:
                index[(c, g)] = len(names)
                names.append(f"{pres.generators[g]}_{c}")

    def rewrite(start: int, w: Word) -> Word:
        sylls = []
        c = start
        for col in w.columns():
            g = col // 2
            if col % 2 == 0:
                if (c, g) in index:
                    sylls.append((index[(c, g)], 1))
                c = table.rows[c][col]
            else:
                d = table.rows[c][col]
                if (d, g) in index:
                    sylls.append((index[(d, g)], -1))
                c = d
        return Word(sylls)

    rels = [rewrite(c, r) for c in range(n) for r in pres.relators]
    return Presentation(names, rels)


def subgroup_abelianization(pres: Presentation, table: CosetTable) -> AbelianInvariants:
    return abelianization(reidemeister_schreier(pres, table))
