"""Todd-Coxeter coset enumeration (HLT with lookahead, and Felsch).

Column ``2g`` of the table holds the action of generator g, column ``2g+1``
that of its inverse.  Coset 0 is the subgroup coset.  Cosets are numbered
in order of definition, and the returned table is standardized, so runs with
the same strategy and limits are reproducible.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

from .words import Presentation, Word

DEFAULT_MAX_COSETS = 2_000_000
DEFAULT_MAX_SECONDS = 60.0

UNDEF = -1


class Overflow(Exception):
    """Enumeration exhausted its limits; the index is unknown (not infinite)."""

    def __init__(self, reason: str, defined: int = 0, live: int = 0):
        self.reason = reason
        self.defined = defined
        self.live = live
        super().__init__(f"coset enumeration overflow ({reason}): {defined} cosets defined, {live} live")


@dataclass(frozen=True)
class Limits:
    max_cosets: int = DEFAULT_MAX_COSETS
    max_seconds: float | None = DEFAULT_MAX_SECONDS


@dataclass
class CosetTable:
    """A closed coset table: ``rows[c][col]`` is the image of coset c."""

    presentation: Presentation
    subgroup: tuple[Word, ...]
    rows: list[list[int]]
    stats: dict = field(default_factory=dict)

    @property
    def index(self) -> int:
        return len(self.rows)

    @property
    def closed(self) -> bool:
        return all(x != UNDEF for row in self.rows for x in row)

    def act(self, coset: int, w: Word) -> int:
        for col in w.columns():
            coset = self.rows[coset][col]
        return coset

    def permutation(self, g: int) -> list[int]:
        return [row[2 * g] for row in self.rows]

    def permutations(self) -> list[list[int]]:
        return [self.permutation(g) for g in range(self.presentation.ngens)]

    def check(self) -> bool:
        """Every relator fixes every coset and every subgroup generator fixes coset 0."""
        n = self.index
        for row in self.rows:
            if any(x == UNDEF or not 0 <= x < n for x in row):
                return False
        for c, row in enumerate(self.rows):
            for g in range(self.presentation.ngens):
                if self.rows[row[2 * g]][2 * g + 1] != c:
                    return False
        for r in self.presentation.relators:
            cols = r.columns()
            for c in range(n):
                x = c
                for col in cols:
                    x = self.rows[x][col]
                if x != c:
                    return False
        return all(self.act(0, w) == 0 for w in self.subgroup)


def standardize(rows: list[list[int]]) -> list[list[int]]:
    """Renumber cosets in BFS order from coset 0, scanning columns in order."""
    order = [0]
    new = {0: 0}
    i = 0
    while i < len(order):
        for x in rows[order[i]]:
            if x != UNDEF and x not in new:
                new[x] = len(order)
                order.append(x)
        i += 1
    return [[new[x] if x != UNDEF else UNDEF for x in rows[c]] for c in order]


class _Enumerator:
    def __init__(self, pres: Presentation, subgroup: Sequence[Word], limits: Limits, felsch: bool):
        self.pres = pres
        self.ncols = 2 * pres.ngens
        self.inv = [c ^ 1 for c in range(self.ncols)]
        self.rels = [r.columns() for r in pres.relators]
        self.subgroup = [w.columns() for w in subgroup]
        self.limits = limits
        self.felsch = felsch
        self.deadline = None if limits.max_seconds is None else time.monotonic() + limits.max_seconds
        self.table: list[list[int]] = [[UNDEF] * self.ncols]
        self.p = [0]
        self.live = 1
        self.total_defined = 1
        self.deductions: list[tuple[int, int]] = []
        # relator conjugates starting with each column, for Felsch deduction scans
        self.by_first: list[list[list[int]]] = [[] for _ in range(self.ncols)]
        if felsch:
            seen = set()
            for r in self.rels:
                for k in range(len(r)):
                    for w in (r[k:] + r[:k], [self.inv[x] for x in reversed(r[k:] + r[:k])]):
                        key = tuple(w)
                        if key not in seen:
                            seen.add(key)
                            self.by_first[w[0]].append(w)

    # --- union-find on cosets
    def rep(self, k: int) -> int:
        p = self.p
        r = k
        while p[r] != r:
            r = p[r]
        while p[k] != r:
            p[k], k = r, p[k]
        return r

    def is_live(self, k: int) -> bool:
        return self.p[k] == k

    def define(self, a: int, x: int):
        if self.live >= self.limits.max_cosets:
            raise _Full()
        if self.deadline is not None and (self.total_defined & 1023) == 0 and time.monotonic() > self.deadline:
            raise Overflow("time", self.total_defined, self.live)
        b = len(self.table)
        self.table.append([UNDEF] * self.ncols)
        self.p.append(b)
        self.live += 1
        self.total_defined += 1
        self.table[a][x] = b
        self.table[b][self.inv[x]] = a
        if self.felsch:
            self.deductions.append((a, x))
        return b

    def coincidence(self, a: int, b: int):
        table, inv, p = self.table, self.inv, self.p
        queue: list[int] = []

        def merge(k, l):
            f, g = self.rep(k), self.rep(l)
            if f != g:
                lo, hi = (f, g) if f < g else (g, f)
                p[hi] = lo
                queue.append(hi)
                self.live -= 1

        merge(a, b)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            row = table[g]
            for x in range(self.ncols):
                d = row[x]
                if d == UNDEF:
                    continue
                xi = inv[x]
                table[d][xi] = UNDEF
                mu, nu = self.rep(g), self.rep(d)
                if table[mu][x] != UNDEF:
                    merge(nu, table[mu][x])
                elif table[nu][xi] != UNDEF:
                    merge(mu, table[nu][xi])
                else:
                    table[mu][x] = nu
                    table[nu][xi] = mu
                    if self.felsch:
                        self.deductions.append((mu, x))

    def scan_and_fill(self, a: int, w: list[int]):
        table, inv = self.table, self.inv
        r = len(w)
        f, i, b, j = a, 0, a, r - 1
        while True:
            while i <= j and table[f][w[i]] != UNDEF:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != a:
                    self.coincidence(f, a)
                return
            while j >= i and table[b][inv[w[j]]] != UNDEF:
                b = table[b][inv[w[j]]]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][inv[w[i]]] = f
                if self.felsch:
                    self.deductions.append((f, w[i]))
                return
            self.define(f, w[i])

    def scan(self, a: int, w: list[int]):
        """Scan without defining; deduce on a one-letter gap."""
        table, inv = self.table, self.inv
        r = len(w)
        f, i, b, j = a, 0, a, r - 1
        while i <= j and table[f][w[i]] != UNDEF:
            f = table[f][w[i]]
            i += 1
        if i > j:
            if f != a:
                self.coincidence(f, a)
            return
        while j >= i and table[b][inv[w[j]]] != UNDEF:
            b = table[b][inv[w[j]]]
            j -= 1
        if j < i:
            self.coincidence(f, b)
        elif i == j:
            table[f][w[i]] = b
            table[b][inv[w[i]]] = f
            if self.felsch:
                self.deductions.append((f, w[i]))

    def process_deductions(self):
        table, by_first, inv = self.table, self.by_first, self.inv
        while self.deductions:
            a, x = self.deductions.pop()
            if not self.is_live(a):
                continue
            for w in by_first[x]:
                self.scan(a, w)
                if not self.is_live(a):
                    break
            if not self.is_live(a):
                continue
            b = table[a][x]
            if b == UNDEF or not self.is_live(b):
                continue
            for w in by_first[inv[x]]:
                self.scan(b, w)
                if not self.is_live(b):
                    break

    def lookahead(self):
        for c in range(len(self.table)):
            if not self.is_live(c):
                continue
            for w in self.rels:
                self.scan(c, w)
                if not self.is_live(c):
                    break

    def compact(self):
        """Drop dead cosets, keeping the order of the live ones."""
        new = {}
        for c in range(len(self.table)):
            if self.p[c] == c:
                new[c] = len(new)
        table = []
        for c in new:
            table.append([new[self.rep(x)] if x != UNDEF else UNDEF for x in self.table[c]])
        self.table = table
        self.p = list(range(len(table)))
        self.deductions = []
        return new

    # --- strategies
    def _make_room(self, a: int) -> int:
        """Coset limit hit: look ahead, drop dead cosets, return a's new number."""
        self.lookahead()
        mapping = self.compact()
        if self.live >= self.limits.max_cosets:
            raise Overflow("cosets", self.total_defined, self.live)
        return min((new for old, new in mapping.items() if old >= a), default=len(self.table))

    def run_hlt(self):
        for w in self.subgroup:
            while True:
                try:
                    self.scan_and_fill(0, w)
                    break
                except _Full:
                    self._make_room(0)
        while True:
            a = 0
            while a < len(self.table):
                if not self.is_live(a):
                    a += 1
                    continue
                try:
                    self._fill_row(a)
                    a += 1
                except _Full:
                    a = self._make_room(a)
            if self._complete():
                return

    def _fill_row(self, a: int):
        for w in self.rels:
            self.scan_and_fill(a, w)
            if not self.is_live(a):
                return
        row = self.table[a]
        for x in range(self.ncols):
            if row[x] == UNDEF:
                self.define(a, x)

    def _complete(self) -> bool:
        return all(UNDEF not in self.table[c] for c in range(len(self.table)) if self.is_live(c))

    def run_felsch(self):
        for w in self.subgroup:
            self._felsch_step(lambda: self.scan_and_fill(0, w))
        self._felsch_step(self.process_deductions)
        a, x = 0, 0
        while True:
            # first undefined entry in row-major order among live cosets
            while a < len(self.table):
                if self.is_live(a):
                    row = self.table[a]
                    while x < self.ncols and row[x] != UNDEF:
                        x += 1
                    if x < self.ncols:
                        break
                a += 1
                x = 0
            if a >= len(self.table):
                return
            aa, xx = a, x
            before = self.live
            self._felsch_step(lambda: (self.define(aa, xx), self.process_deductions()))
            if self.live <= before:
                a = 0
            x = 0

    def _felsch_step(self, step):
        try:
            step()
        except _Full:
            raise Overflow("cosets", self.total_defined, self.live) from None

    def result(self) -> list[list[int]]:
        self.compact()
        return standardize(self.table)


class _Full(Exception):
    pass


def todd_coxeter(pres: Presentation, subgroup_gens: Sequence[Word] = (), limits: Limits | None = None,
                 strategy: str = "hlt") -> CosetTable:
    """Enumerate the cosets of H = <subgroup_gens> in the group presented by pres.

    Returns a closed, standardized coset table whose ``index`` is [G : H].
    Raises Overflow when the coset or time limit is exhausted.
    """
    limits = limits or Limits()
    if strategy not in ("hlt", "felsch"):
        raise ValueError(f"unknown strategy {strategy!r}")
    en = _Enumerator(pres, subgroup_gens, limits, felsch=(strategy == "felsch"))
    start = time.monotonic()
    if strategy == "hlt":
        en.run_hlt()
    else:
        en.run_felsch()
    rows = en.result()
    stats = {"strategy": strategy, "total_defined": en.total_defined,
             "seconds": round(time.monotonic() - start, 3)}
    table = CosetTable(pres, tuple(subgroup_gens), rows, stats)
    return table


def coset_index(pres: Presentation, subgroup_gens: Sequence[Word] = (), limits: Limits | None = None,
                strategy: str = "hlt") -> int:
    return todd_coxeter(pres, subgroup_gens, limits, strategy).index
