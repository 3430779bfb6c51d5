"""Subgroups of small index, up to conjugacy, by backtrack search over coset tables."""

from __future__ import annotations

import time

from .cosets import UNDEF, CosetTable, Overflow, standardize
from .words import Presentation

DEFAULT_MAX_INDEX = 12


def _propagate(rows, rels, inv) -> bool:
    """Scan every relator at every coset, deducing one-letter gaps.

    Returns False on a contradiction.
    """
    changed = True
    while changed:
        changed = False
        for a in range(len(rows)):
            for w in rels:
                f, i, j = a, 0, len(w) - 1
                while i <= j and rows[f][w[i]] != UNDEF:
                    f = rows[f][w[i]]
                    i += 1
                if i > j:
                    if f != a:
                        return False
                    continue
                b = a
                while j >= i and rows[b][inv[w[j]]] != UNDEF:
                    b = rows[b][inv[w[j]]]
                    j -= 1
                if j < i:
                    if f != b:
                        return False
                elif i == j:
                    rows[f][w[i]] = b
                    rows[b][inv[w[i]]] = f
                    changed = True
    return True


def _canonical(rows) -> tuple:
    """Least standardized table over all choices of base coset."""
    best = None
    for c in range(len(rows)):
        perm = [c] + [x for x in range(len(rows)) if x != c]
        pos = {old: new for new, old in enumerate(perm)}
        moved = [[pos[x] for x in rows[old]] for old in perm]
        key = tuple(map(tuple, standardize(moved)))
        if best is None or key < best:
            best = key
    return best


def low_index_subgroups(pres: Presentation, max_index: int = DEFAULT_MAX_INDEX,
                        max_seconds: float | None = 60.0, up_to_conjugacy: bool = True) -> list[CosetTable]:
    """Coset tables of all subgroups of index <= max_index.

    Tables are filled row-major, new cosets numbered in order of appearance,
    so each subgroup is produced exactly once.  With ``up_to_conjugacy`` one
    table per conjugacy class is kept.
    """
    ncols = 2 * pres.ngens
    inv = [c ^ 1 for c in range(ncols)]
    rels = [r.columns() for r in pres.relators]
    deadline = None if max_seconds is None else time.monotonic() + max_seconds
    found: list[list[list[int]]] = []
    classes = set()
    steps = 0

    def first_undefined(rows):
        for a, row in enumerate(rows):
            for x in range(ncols):
                if row[x] == UNDEF:
                    return a, x
        return None

    def search(rows):
        nonlocal steps
        steps += 1
        if deadline is not None and steps % 256 == 0 and time.monotonic() > deadline:
            raise Overflow("time", steps, len(rows))
        pos = first_undefined(rows)
        if pos is None:
            if up_to_conjugacy:
                key = _canonical(rows)
                if key in classes:
                    return
                classes.add(key)
            found.append([row[:] for row in rows])
            return
        a, x = pos
        xi = inv[x]
        targets = [b for b in range(len(rows)) if rows[b][xi] == UNDEF]
        if len(rows) < max_index:
            targets.append(len(rows))
        for b in targets:
            new = [row[:] for row in rows]
            if b == len(new):
                new.append([UNDEF] * ncols)
            new[a][x] = b
            new[b][xi] = a
            if _propagate(new, rels, inv):
                search(new)

    start = [[UNDEF] * ncols]
    if _propagate(start, rels, inv):
        search(start)
    found.sort(key=lambda r: (len(r), r))
    return [CosetTable(pres, (), rows, {"strategy": "low-index"}) for rows in found]


def infiniteness_certificate(pres: Presentation, max_index: int = DEFAULT_MAX_INDEX,
                             max_seconds: float | None = 60.0):
    """A finite-index subgroup with infinite abelianization, or None.

    Such a subgroup proves the group infinite.  Returns (log, table or None)
    where log lists (index, abelian invariants) for every subgroup tried.
    """
    from .rewriting import subgroup_abelianization

    log = []
    for table in low_index_subgroups(pres, max_index, max_seconds):
        inv = subgroup_abelianization(pres, table)
        log.append((table.index, str(inv)))
        if inv.free_rank > 0:
            return log, table
    return log, None
