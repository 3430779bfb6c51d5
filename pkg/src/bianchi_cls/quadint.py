"""Exact arithmetic in the ring of integers O_d of Q(sqrt(-d)).

Elements are stored as a + b*w in the integral basis (1, w) where
w = sqrt(-d) for d = 1, 2 (mod 4) and w = (1 + sqrt(-d))/2 for d = 3 (mod 4).
Nonzero ideals are full-rank Z-lattices kept in a canonical lower-triangular
Hermite normal form

    [[a, 0],
     [b, c]]        a, c > 0,  0 <= b < a,

whose rows are coordinate vectors of a Z-basis.  Equal ideals have equal
bases, so ideals hash and compare by their HNF.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


def prime_factors(n: int) -> dict[int, int]:
    """Trial-division factorization of a positive integer."""
    out: dict[int, int] = {}
    p = 2
    n = abs(n)
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for n > 0."""
    if n <= 0:
        raise ValueError("n must be positive")
    result = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@dataclass(frozen=True, order=True)
class FieldLabel:
    """The imaginary quadratic field Q(sqrt(-d))."""

    d: int

    def __post_init__(self):
        if not is_squarefree(self.d):
            raise ValueError(f"d={self.d} is not a square-free positive integer")

    @property
    def half_integral(self) -> bool:
        return self.d % 4 == 3

    @property
    def discriminant(self) -> int:
        return -self.d if self.half_integral else -4 * self.d

    @property
    def omega_square(self) -> tuple[int, int]:
        """Coordinates of w^2 in the basis (1, w)."""
        if self.half_integral:
            return (-(1 + self.d) // 4, 1)
        return (-self.d, 0)

    def __call__(self, a: int = 0, b: int = 0) -> "AlgebraicInt":
        return AlgebraicInt(self, a, b)

    @property
    def omega(self) -> "AlgebraicInt":
        return AlgebraicInt(self, 0, 1)

    def units(self) -> list["AlgebraicInt"]:
        if self.d == 1:
            return [self(1), self(-1), self(0, 1), self(0, -1)]
        if self.d == 3:
            # w is a primitive sixth root of unity
            u = [self(1)]
            for _ in range(5):
                u.append(u[-1] * self.omega)
            return u
        return [self(1), self(-1)]

    def __str__(self):
        return f"Q(sqrt(-{self.d}))"


def _field(d) -> FieldLabel:
    return d if isinstance(d, FieldLabel) else FieldLabel(int(d))


@dataclass(frozen=True)
class AlgebraicInt:
    field: FieldLabel
    a: int
    b: int

    @property
    def coords(self) -> tuple[int, int]:
        return (self.a, self.b)

    def _coerce(self, other) -> "AlgebraicInt":
        if isinstance(other, AlgebraicInt):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, int):
            return AlgebraicInt(self.field, other, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return AlgebraicInt(self.field, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicInt(self.field, -self.a, -self.b)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return AlgebraicInt(self.field, self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p, q = self.field.omega_square
        a, b, c, e = self.a, self.b, other.a, other.b
        bb = b * e
        return AlgebraicInt(self.field, a * c + bb * p, a * e + b * c + bb * q)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.field(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return bool(self.a or self.b)

    def trace(self) -> int:
        """z + conj(z) as a rational integer."""
        return 2 * self.a + self.b if self.field.half_integral else 2 * self.a

    def conj(self) -> "AlgebraicInt":
        if self.field.half_integral:
            # conj(w) = 1 - w
            return AlgebraicInt(self.field, self.a + self.b, -self.b)
        return AlgebraicInt(self.field, self.a, -self.b)

    def norm(self) -> int:
        a, b, d = self.a, self.b, self.field.d
        if self.field.half_integral:
            return a * a + a * b + (1 + d) // 4 * b * b
        return a * a + d * b * b

    def divides(self, other: "AlgebraicInt") -> bool:
        return self.exact_div(other) is not None

    def exact_div(self, other: "AlgebraicInt") -> "AlgebraicInt | None":
        """Return other / self if it lies in O_d, else None."""
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero")
        num = other * self.conj()
        if num.a % n or num.b % n:
            return None
        return AlgebraicInt(self.field, num.a // n, num.b // n)

    def is_unit(self) -> bool:
        return self.norm() == 1

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"AlgebraicInt(d={self.field.d}, {self.a}, {self.b})"


def make_int(field, a: int, b: int = 0) -> AlgebraicInt:
    return AlgebraicInt(_field(field), int(a), int(b))


def norm(z: AlgebraicInt) -> int:
    return z.norm()


def conj(z: AlgebraicInt) -> AlgebraicInt:
    return z.conj()


def format_element(z: AlgebraicInt) -> str:
    if not z.b:
        return str(z.a)
    coef = {1: "", -1: "-"}.get(z.b, f"{z.b}*")
    tail = f"{coef}w"
    if not z.a:
        return tail
    return f"{z.a}+{tail}" if z.b > 0 else f"{z.a}{tail}"


_TERM = re.compile(r"([+-]?)(\d*)\*?(w|sqrt-?\d+|i)?")


def parse_element(field, text: str) -> AlgebraicInt:
    """Parse "a+b*w", "1-3*sqrt-2", "(1+3*sqrt-7)/2" or "2+i".

    ``w`` is the integral-basis generator; ``sqrt-d`` (and ``i`` for d = 1)
    denote sqrt(-d) itself.  A trailing ``/2`` is allowed when the result is
    integral.
    """
    F = _field(field)
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty element")
    den = 1
    m = re.fullmatch(r"\((.*)\)/(\d+)", s)
    if m:
        s, den = m.group(1), int(m.group(2))
    # twice the value, in the basis (1, sqrt(-d))
    rat, irr, pos = 0, 0, 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse element {text!r} at position {pos}")
        sign, digits, sym = m.groups()
        if not digits and not sym:
            raise ValueError(f"cannot parse element {text!r} at position {pos}")
        c = int(digits) if digits else 1
        if sign == "-":
            c = -c
        if sym is None:
            rat += 2 * c
        elif sym == "w":
            if F.half_integral:
                rat += c
                irr += c
            else:
                irr += 2 * c
        else:
            if sym == "i":
                if F.d != 1:
                    raise ValueError("'i' is only valid for d=1")
            elif int(sym[4:].lstrip("-")) != F.d:
                raise ValueError(f"{sym} does not belong to {F}")
            irr += 2 * c
        pos = m.end()
    # convert (rat + irr*sqrt(-d)) / (2*den) to the integral basis
    if F.half_integral:
        # sqrt(-d) = 2w - 1
        a2, b2 = rat - irr, 2 * irr
    else:
        a2, b2 = rat, irr
    q = 2 * den
    if a2 % q or b2 % q:
        raise ValueError(f"{text!r} is not an algebraic integer of {F}")
    return AlgebraicInt(F, a2 // q, b2 // q)


def to_sqrt_form(z: AlgebraicInt) -> tuple[int, int, int]:
    """Return (p, q, den) with z = (p + q*sqrt(-d)) / den."""
    if z.field.half_integral:
        p, q = 2 * z.a + z.b, z.b
        if p % 2 == 0 and q % 2 == 0:
            return p // 2, q // 2, 1
        return p, q, 2
    return z.a, z.b, 1


def elements_of_norm(field, n: int) -> Iterator[AlgebraicInt]:
    """All elements of O_d of norm exactly n."""
    F = _field(field)
    d = F.d
    if n < 0:
        return
    if F.half_integral:
        # 4N = (2a+b)^2 + d b^2
        bmax = math.isqrt(4 * n // d)
        for b in range(-bmax, bmax + 1):
            r = 4 * n - d * b * b
            if r < 0:
                continue
            s = math.isqrt(r)
            if s * s != r:
                continue
            for t in {s, -s}:
                if (t - b) % 2 == 0:
                    yield F((t - b) // 2, b)
    else:
        bmax = math.isqrt(n // d)
        for b in range(-bmax, bmax + 1):
            r = n - d * b * b
            s = math.isqrt(r)
            if s * s == r:
                for a in {s, -s}:
                    yield F(a, b)


def elements_up_to_norm(field, nmax: int) -> Iterator[AlgebraicInt]:
    for n in range(nmax + 1):
        yield from elements_of_norm(field, n)


# ----------------------------------------------------------------- lattices

def _hnf_rows(field: FieldLabel, vectors: Sequence[tuple[int, int]]) -> tuple[tuple[int, int], tuple[int, int]]:
    """Canonical lower HNF [[a, 0], [b, c]] of the Z-span of 2-vectors."""
    # gcd of second coordinates, keeping track of the combination
    rows = [tuple(v) for v in vectors if v[0] or v[1]]
    if not rows:
        raise ValueError("zero ideal")
    pivot = None
    rest = []
    for x, y in rows:
        if y == 0:
            rest.append(x)
            continue
        if pivot is None:
            pivot = (x, y)
            continue
        px, py = pivot
        g, s, t = _xgcd(py, y)
        # new pivot has second coordinate g; the combination killing y goes to rest
        pivot = (s * px + t * x, g)
        rest.append((y // g) * px - (py // g) * x)
    if pivot is None:
        raise ValueError("lattice is not full rank")
    a = 0
    for x in rest:
        a = math.gcd(a, x)
    if a == 0:
        raise ValueError("lattice is not full rank")
    bx, c = pivot
    if c < 0:
        bx, c = -bx, -c
    return (a, 0), (bx % a, c)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with g = gcd(a, b) = s*a + t*b and g > 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


@dataclass(frozen=True)
class QIdeal:
    field: FieldLabel
    basis: tuple[tuple[int, int], tuple[int, int]]

    def __post_init__(self):
        (a, z), (b, c) = self.basis
        if z != 0 or a <= 0 or c <= 0 or not 0 <= b < a:
            raise ValueError(f"basis {self.basis} is not in Hermite normal form")

    @classmethod
    def from_lattice(cls, field, vectors) -> "QIdeal":
        F = _field(field)
        ideal = cls(F, _hnf_rows(F, vectors))
        if not ideal._closed_under_omega():
            raise ValueError(f"lattice {ideal.basis} is not an ideal of O_{F.d}")
        return ideal

    def _closed_under_omega(self) -> bool:
        w = self.field.omega
        return all(self.contains(self.field(*row) * w) for row in self.basis)

    def norm(self) -> int:
        return self.basis[0][0] * self.basis[1][1]

    def contains(self, z) -> bool:
        if isinstance(z, int):
            z = self.field(z)
        (a, _), (b, c) = self.basis
        if z.b % c:
            return False
        return (z.a - (z.b // c) * b) % a == 0

    def contains_ideal(self, other: "QIdeal") -> bool:
        return all(self.contains(other.field(*row)) for row in other.basis)

    def reduce(self, z: AlgebraicInt) -> tuple[int, int]:
        """Canonical coset representative (x, y), 0 <= x < a, 0 <= y < c."""
        (a, _), (b, c) = self.basis
        q, y = divmod(z.b, c)
        return ((z.a - q * b) % a, y)

    def zbasis(self) -> list[AlgebraicInt]:
        return [self.field(*row) for row in self.basis]

    def conj(self) -> "QIdeal":
        return QIdeal.from_lattice(self.field, [g.conj().coords for g in self.zbasis()])

    def __mul__(self, other: "QIdeal") -> "QIdeal":
        if other.field != self.field:
            raise ValueError("ideals of different fields")
        prods = [(x * y).coords for x in self.zbasis() for y in other.zbasis()]
        return QIdeal.from_lattice(self.field, prods)

    def __pow__(self, n: int) -> "QIdeal":
        result = unit_ideal(self.field)
        for _ in range(n):
            result = result * self
        return result

    def __add__(self, other: "QIdeal") -> "QIdeal":
        return QIdeal.from_lattice(self.field, list(self.basis) + list(other.basis))

    def is_unit_ideal(self) -> bool:
        return self.norm() == 1

    def sort_key(self):
        return (self.field.d, self.norm(), self.basis)

    def __str__(self):
        gen = is_principal(self)
        if gen is not None:
            return f"<{format_element(gen)}>"
        return "<" + ", ".join(format_element(g) for g in two_generators(self)) + ">"

    def __repr__(self):
        return f"QIdeal(d={self.field.d}, hnf={[list(r) for r in self.basis]})"


def unit_ideal(field) -> QIdeal:
    return QIdeal(_field(field), ((1, 0), (0, 1)))


def ideal_from_gens(field, gens: Sequence) -> QIdeal:
    F = _field(field)
    elems = [g if isinstance(g, AlgebraicInt) else F(int(g)) for g in gens]
    vecs = []
    for g in elems:
        vecs.append(g.coords)
        vecs.append((g * F.omega).coords)
    if not any(a or b for a, b in vecs):
        raise ValueError("zero ideal")
    return QIdeal.from_lattice(F, vecs)


def principal(z: AlgebraicInt) -> QIdeal:
    return ideal_from_gens(z.field, [z])


def parse_ideal(field, text: str) -> QIdeal:
    """Comma-separated generator list, optionally enclosed in <...>."""
    s = text.strip()
    if s.startswith("<") and s.endswith(">"):
        s = s[1:-1]
    parts = _split_top_level(s)
    return ideal_from_gens(field, [parse_element(field, p) for p in parts])


def _split_top_level(s: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [p for p in (q.strip() for q in parts) if p]


def ideal_norm(I: QIdeal) -> int:
    return I.norm()


def conj_ideal(I: QIdeal) -> QIdeal:
    return I.conj()


def two_generators(I: QIdeal) -> tuple[AlgebraicInt, AlgebraicInt]:
    """Generators (n, x) with n the least positive integer of I."""
    (a, _), (b, c) = I.basis
    return I.field(a), I.field(b, c)


def canonical_up_to_conjugation(I: QIdeal) -> QIdeal:
    J = I.conj()
    return min(I, J, key=lambda K: K.basis)


def is_principal(I: QIdeal) -> AlgebraicInt | None:
    """A generator of I if one exists.

    Every generator has norm N(I), so trying all elements of that norm is an
    exhaustive search and None proves that I is not principal.
    """
    for z in elements_of_norm(I.field, I.norm()):
        if I.contains(z) and principal(z) == I:
            return _nice_generator(z)
    return None


def _nice_generator(z: AlgebraicInt) -> AlgebraicInt:
    # prefer an associate with small positive leading coordinates
    def key(g):
        p, q, _ = to_sqrt_form(g)
        return (p <= 0, q < 0, abs(p) + abs(q))
    return min((u * z for u in z.field.units()), key=key)


# ----------------------------------------------------------- factorization

def _residue_roots(F: FieldLabel, p: int) -> list[int]:
    """Roots mod p of the minimal polynomial of w."""
    if F.half_integral:
        c = (1 + F.d) // 4
        return [r for r in range(p) if (r * r - r + c) % p == 0]
    return [r for r in range(p) if (r * r + F.d) % p == 0]


@lru_cache(maxsize=None)
def primes_above(field, p: int) -> tuple[QIdeal, ...]:
    """Prime ideals of O_d lying over the rational prime p."""
    F = _field(field)
    roots = _residue_roots(F, p)
    if not roots:
        return (ideal_from_gens(F, [F(p)]),)
    return tuple(ideal_from_gens(F, [F(p), F(-r, 1)]) for r in roots)


def splitting_type(field, p: int) -> str:
    """'split', 'inert' or 'ramified' via the Kronecker symbol of the discriminant."""
    F = _field(field)
    k = kronecker(F.discriminant, p)
    return {1: "split", -1: "inert", 0: "ramified"}[k]


@dataclass(frozen=True)
class PrimeFactorization:
    ideal: QIdeal
    factors: tuple[tuple[QIdeal, int], ...]

    def product(self) -> QIdeal:
        result = unit_ideal(self.ideal.field)
        for P, e in self.factors:
            result = result * P ** e
        return result

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)


def valuation(I: QIdeal, P: QIdeal) -> int:
    k, Q = 0, P
    while Q.contains_ideal(I):
        k += 1
        Q = Q * P
    return k


def factor_ideal(I: QIdeal) -> PrimeFactorization:
    factors = []
    for p in sorted(prime_factors(I.norm())):
        for P in primes_above(I.field, p):
            e = valuation(I, P)
            if e:
                factors.append((P, e))
    fac = PrimeFactorization(I, tuple(factors))
    if fac.product() != I:
        raise ArithmeticError(f"factorization of {I!r} does not reproduce it")
    return fac


def divisors(I: QIdeal) -> list[QIdeal]:
    """All ideal divisors of I (including O_d and I itself)."""
    fac = factor_ideal(I)
    out = []
    for exps in product(*[range(e + 1) for _, e in fac.factors]):
        J = unit_ideal(I.field)
        for (P, _), k in zip(fac.factors, exps):
            if k:
                J = J * P ** k
        out.append(J)
    return out


# ------------------------------------------------------------ class number

def reduced_forms(D: int) -> list[tuple[int, int, int]]:
    """Reduced positive definite forms (a, b, c) of discriminant D < 0."""
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"bad discriminant {D}")
    forms = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if c == a and b < 0:
                continue
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            forms.append((a, b, c))
        a += 1
    return forms


def class_number(field) -> int:
    return len(reduced_forms(_field(field).discriminant))
