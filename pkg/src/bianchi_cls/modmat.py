"""The finite groups SL(2, O_d/I) and PSL(2, O_d/I).

Residues are encoded as integers ``x + a*y`` where ``(x, y)`` is the HNF
coset representative of ``x + y*w`` modulo I.  Ring operations run on
precomputed tables, so matrices are plain 4-tuples of ints and the
breadth-first enumeration of a whole group is cheap.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable

from .quadint import (
    AlgebraicInt,
    FieldLabel,
    QIdeal,
    class_number,
    elements_of_norm,
    factor_ideal,
    prime_factors,
)

DEFAULT_GROUP_BOUND = 10**6


class GroupTooLarge(ValueError):
    pass


class TrivialLevel(ValueError):
    pass


class ResidueRing:
    """O_d / I with table-driven arithmetic."""

    def __init__(self, ideal: QIdeal):
        self.ideal = ideal
        self.field = ideal.field
        (a, _), (_, c) = ideal.basis
        self._a, self._c = a, c
        self.size = a * c
        F = self.field
        self.elements = [F(x, y) for y in range(c) for x in range(a)]
        n = self.size
        self.add_table = [[self.encode(u + v) for v in self.elements] for u in self.elements]
        self.mul_table = [[self.encode(u * v) for v in self.elements] for u in self.elements]
        self.neg = [self.encode(-u) for u in self.elements]
        self.zero = self.encode(F(0))
        self.one = self.encode(F(1))
        assert len(self.add_table) == n

    def encode(self, z) -> int:
        if isinstance(z, int):
            z = self.field(z)
        x, y = self.ideal.reduce(z)
        return x + self._a * y

    def decode(self, k: int) -> AlgebraicInt:
        return self.elements[k]

    def reduce(self, z: AlgebraicInt) -> AlgebraicInt:
        return self.decode(self.encode(z))

    def units(self) -> list[int]:
        one, mt = self.one, self.mul_table
        return [u for u in range(self.size) if one in mt[u]]

    def inverse(self, u: int) -> int:
        row = self.mul_table[u]
        for v in range(self.size):
            if row[v] == self.one:
                return v
        raise ZeroDivisionError(f"{self.decode(u)} is not a unit mod {self.ideal!r}")

    def __len__(self):
        return self.size


# a matrix mod I is a 4-tuple (a, b, c, d) of residue codes
Mat = tuple[int, int, int, int]


@dataclass
class MatModI:
    ring: ResidueRing
    entries: Mat

    def det(self) -> int:
        R = self.ring
        a, b, c, d = self.entries
        return R.add_table[R.mul_table[a][d]][R.neg[R.mul_table[b][c]]]

    def to_elements(self) -> tuple[AlgebraicInt, ...]:
        return tuple(self.ring.decode(k) for k in self.entries)


def mat_mul(R: ResidueRing, m: Mat, n: Mat) -> Mat:
    A, M = R.add_table, R.mul_table
    a, b, c, d = m
    e, f, g, h = n
    return (A[M[a][e]][M[b][g]], A[M[a][f]][M[b][h]],
            A[M[c][e]][M[d][g]], A[M[c][f]][M[d][h]])


def pm_normalize(R: ResidueRing, m: Mat) -> Mat:
    """Lexicographically smaller of m and -m."""
    neg = R.neg
    return min(m, (neg[m[0]], neg[m[1]], neg[m[2]], neg[m[3]]))


def reduce_matrix(R: ResidueRing, m) -> Mat:
    """Reduce a 2x2 matrix over O_d (nested or flat) mod I."""
    flat = [x for row in m for x in row] if len(m) == 2 else list(m)
    return tuple(R.encode(x) for x in flat)


@dataclass
class FiniteMatrixGroup:
    ring: ResidueRing
    generators: list[Mat]
    elements: set[Mat] = dc_field(repr=False)

    @property
    def ideal(self) -> QIdeal:
        return self.ring.ideal

    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, m) -> bool:
        return pm_normalize(self.ring, m) in self.elements


def closure(R: ResidueRing, gens: Iterable[Mat], bound: int = DEFAULT_GROUP_BOUND) -> set[Mat]:
    """Elements of the subgroup of PSL generated by gens (+-normalized)."""
    gens = [pm_normalize(R, g) for g in gens]
    one = R.one
    identity = pm_normalize(R, (one, R.zero, R.zero, one))
    seen = {identity}
    queue = deque([identity])
    while queue:
        m = queue.popleft()
        for g in gens:
            n = pm_normalize(R, mat_mul(R, m, g))
            if n not in seen:
                seen.add(n)
                if len(seen) > bound:
                    raise GroupTooLarge(f"group exceeds {bound} elements")
                queue.append(n)
    return seen


def _check_level(I: QIdeal):
    if I.norm() == 1:
        raise TrivialLevel("trivial level: I = O_d")


def sl2_order(I: QIdeal) -> int:
    _check_level(I)
    n = Fraction(I.norm() ** 3)
    for P, _ in factor_ideal(I):
        n *= 1 - Fraction(1, P.norm() ** 2)
    assert n.denominator == 1
    return int(n)


def psl2_order(I: QIdeal) -> int:
    n = sl2_order(I)
    # -Id = Id in SL(2, O/I) exactly when 2 lies in I
    return n if I.contains(2) else n // 2


def standard_generators(R: ResidueRing) -> list[Mat]:
    """Images of t = [[1,1],[0,1]], u = [[1,w],[0,1]] and a = [[0,1],[-1,0]]."""
    F = R.field
    one, zero = R.one, R.zero
    t = (one, one, zero, one)
    u = (one, R.encode(F.omega), zero, one)
    a = (zero, one, R.neg[one], zero)
    return [t, u, a]


def build_group(I: QIdeal, bound: int = DEFAULT_GROUP_BOUND) -> FiniteMatrixGroup:
    """Enumerate PSL(2, O_d/I) as the closure of the elementary generators.

    SL(2) of a finite ring is generated by elementary matrices, so the closure
    is the whole group.
    """
    _check_level(I)
    expected = psl2_order(I)
    if expected > bound:
        raise GroupTooLarge(f"|PSL(2, O/I)| = {expected} exceeds bound {bound}")
    R = ResidueRing(I)
    gens = standard_generators(R)
    return FiniteMatrixGroup(R, gens, closure(R, gens, bound))


def brute_force_psl2_order(I: QIdeal) -> int:
    """Count det-1 matrices over O/I directly, then divide by |{+-Id}|."""
    R = ResidueRing(I)
    n = R.size
    M, A, neg = R.mul_table, R.add_table, R.neg
    # number of (a, d) with ad = k and (b, c) with bc = k, for each residue k
    prod_count = [0] * n
    for x in range(n):
        for y in range(n):
            prod_count[M[x][y]] += 1
    sl = 0
    for k in range(n):
        # ad - bc = 1  <=>  bc = ad - 1
        target = A[k][neg[R.one]]
        sl += prod_count[k] * prod_count[target]
    return sl if R.neg[R.one] == R.one else sl // 2


def borel_image(I: QIdeal) -> set[Mat]:
    """Image in PSL(2, O/I) of the stabilizer of the cusp infinity."""
    R = ResidueRing(I)
    F = R.field
    one, zero = R.one, R.zero
    gens = standard_generators(R)[:2]
    for v in F.units():
        vi = R.encode(v.conj())
        gens.append((R.encode(v), zero, zero, vi))
    return closure(R, gens)


def cusp_count(d, I: QIdeal) -> int:
    F = d if isinstance(d, FieldLabel) else FieldLabel(int(d))
    if class_number(F) != 1:
        raise ValueError("unsupported: multi-class cusp count")
    order = psl2_order(I)
    B = borel_image(I)
    if order % len(B):
        raise ArithmeticError("stabilizer order does not divide the group order")
    return order // len(B)


# -------------------------------------------------------------- torsion

TORSION_HEIGHT = 10


def torsion_in_gamma(d, I: QIdeal, height: int = TORSION_HEIGHT):
    """An elliptic matrix congruent to +-Id mod I, or None.

    Elliptic elements of PSL(2, O_d) have trace 0 (order 2) or +-1 (order 3).
    Such an element is +-Id mod I only if 2 or 3 lies in I.  For 2 in I or
    3 in I the upper-left entry ranges over a box of the given height; for
    each choice the off-diagonal product is fixed and all its factorizations
    are tried exactly.
    """
    F = I.field
    _check_level(I)
    if not (I.contains(2) or I.contains(3)):
        return None
    for trace in (0, 1, -1):
        for eps in (1, -1):
            if not I.contains(trace - 2 * eps):
                continue
            for a in _box(F, height):
                e = F(trace) - a
                if not (I.contains(a - eps) and I.contains(e - eps)):
                    continue
                n = a * e - 1  # must equal b*c
                w = _factor_in_ideal(I, n)
                if w is not None:
                    b, c = w
                    return ((a, b), (c, e))
    return None


def _factor_in_ideal(I: QIdeal, n: AlgebraicInt):
    """(b, c) with b*c = n and b, c both in I, or None."""
    F = I.field
    if not n:
        return F(0), F(0)
    N, m = n.norm(), I.norm()
    for k in _divisors(N):
        if k % m or (N // k) % m:
            continue
        for b in elements_of_norm(F, k):
            if not I.contains(b):
                continue
            c = b.exact_div(n)
            if c is not None and I.contains(c):
                return b, c
    return None


def _divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in prime_factors(n).items():
        divs = [q * p**k for q in divs for k in range(e + 1)]
    return sorted(divs)


def _box(F: FieldLabel, height: int):
    """Elements x + y*w with max(|x|, |y|) <= height, by increasing height."""
    yield F(0)
    for h in range(1, height + 1):
        for x in range(-h, h + 1):
            for y in range(-h, h + 1):
                if max(abs(x), abs(y)) == h:
                    yield F(x, y)


def is_congruent_to_pm_identity(I: QIdeal, m) -> bool:
    (a, b), (c, e) = m
    return I.contains(b) and I.contains(c) and any(
        I.contains(a - s) and I.contains(e - s) for s in (1, -1))
