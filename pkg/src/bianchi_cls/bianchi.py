"""Presentations of PSL(2, O_d) for class number one, peripheral words and
quotient presentations PSL(2, O_d) / N_d(I).

Each presentation ships as a data file in ``data/`` written in the fpgroup
text grammar followed by a ``matrix:`` block giving every generator as a
matrix over O_d.  Loading a file checks every relator against the matrices.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .fpgroup import (
    Limits,
    Overflow,
    Presentation,
    Word,
    abelianization,
    add_relators,
    infiniteness_certificate,
    parse_presentation,
    todd_coxeter,
)
from .modmat import psl2_order
from .quadint import AlgebraicInt, FieldLabel, QIdeal, class_number, parse_element

CLASS_NUMBER_ONE = (1, 2, 3, 7, 11, 19)

Matrix = tuple[tuple[AlgebraicInt, AlgebraicInt], tuple[AlgebraicInt, AlgebraicInt]]


class UnsupportedField(ValueError):
    pass


@dataclass(frozen=True)
class BianchiPresentation:
    d: int
    presentation: Presentation
    matrices: dict[str, Matrix]
    t: str = "t"
    u: str = "u"
    version: int = 1
    notes: str = ""

    @property
    def field(self) -> FieldLabel:
        return FieldLabel(self.d)

    def evaluate(self, w: Word) -> Matrix:
        F = self.field
        result = ((F(1), F(0)), (F(0), F(1)))
        for g, e in w.syllables:
            m = self.matrices[self.presentation.generators[g]]
            if e < 0:
                m = _inverse(m)
            result = _mul(result, _power(m, abs(e)))
        return result


def _mul(x: Matrix, y: Matrix) -> Matrix:
    return ((x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]),
            (x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]))


def _inverse(x: Matrix) -> Matrix:
    # determinant one
    return ((x[1][1], -x[0][1]), (-x[1][0], x[0][0]))


def _power(m: Matrix, n: int) -> Matrix:
    F = m[0][0].field
    result = ((F(1), F(0)), (F(0), F(1)))
    while n:
        if n & 1:
            result = _mul(result, m)
        m = _mul(m, m)
        n >>= 1
    return result


def _det(m: Matrix) -> AlgebraicInt:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def is_pm_identity(m: Matrix) -> bool:
    (a, b), (c, e) = m
    return not b and not c and a == e and a.norm() == 1 and not a.b and abs(a.a) == 1


def verify_matrices(bp: BianchiPresentation) -> bool:
    """True iff every generator has determinant 1 and every relator evaluates to +-Id."""
    F = bp.field
    if any(_det(m) != F(1) for m in bp.matrices.values()):
        return False
    return all(is_pm_identity(bp.evaluate(r)) for r in bp.presentation.relators)


# ----------------------------------------------------------------- data files

_MATRIX_LINE = re.compile(r"\s*([A-Za-z_]\w*)\s*=\s*\[\s*\[(.*?)\]\s*,\s*\[(.*?)\]\s*\]\s*")


def parse_presentation_file(text: str) -> BianchiPresentation:
    """Parse the data-file format: header keys, gens/rels, then a matrix block."""
    header: dict[str, str] = {}
    pres_lines: list[str] = []
    matrix_lines: list[str] = []
    section = "header"
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if line.strip() == "matrix:":
            section = "matrix"
            continue
        if section == "matrix":
            matrix_lines.append(line)
        elif line.lstrip().startswith("gens") or pres_lines:
            pres_lines.append(line)
        else:
            key, _, value = line.partition(":")
            header[key.strip()] = value.strip()
    if "d" not in header:
        raise ValueError("presentation file lacks 'd:'")
    d = int(header["d"])
    pres = parse_presentation(" ".join(pres_lines))
    matrices = {}
    for line in matrix_lines:
        m = _MATRIX_LINE.fullmatch(line)
        if not m:
            raise ValueError(f"bad matrix line {line!r}")
        name = m.group(1)
        rows = []
        for row in (m.group(2), m.group(3)):
            entries = [e.strip() for e in row.split(",")]
            if len(entries) != 2:
                raise ValueError(f"bad matrix row in {line!r}")
            rows.append(tuple(parse_element(d, e) for e in entries))
        matrices[name] = tuple(rows)
    missing = set(pres.generators) - set(matrices)
    if missing:
        raise ValueError(f"no matrix for generators {sorted(missing)}")
    return BianchiPresentation(d, pres, matrices, version=int(header.get("version", 1)),
                               notes=header.get("notes", ""))


def format_presentation_file(bp: BianchiPresentation) -> str:
    from .quadint import format_element

    lines = [f"version: {bp.version}", f"d: {bp.d}", str(bp.presentation), "matrix:"]
    for name in bp.presentation.generators:
        (a, b), (c, e) = bp.matrices[name]
        lines.append(f"  {name} = [[{format_element(a)}, {format_element(b)}], "
                     f"[{format_element(c)}, {format_element(e)}]]")
    return "\n".join(lines) + "\n"


@lru_cache(maxsize=None)
def presentation_of(d: int) -> BianchiPresentation:
    d = int(d)
    if d not in CLASS_NUMBER_ONE:
        raise UnsupportedField(f"d={d}: h_d != 1, no embedded presentation")
    text = resources.files("bianchi_cls.data").joinpath(f"psl2_o{d}.pres").read_text()
    bp = parse_presentation_file(text)
    if bp.d != d:
        raise ValueError(f"data file for d={d} declares d={bp.d}")
    if not verify_matrices(bp):
        raise ValueError(f"embedded presentation for d={d} fails matrix verification")
    return bp


# ------------------------------------------------------------- peripheral

@dataclass(frozen=True)
class PeripheralData:
    ideal: QIdeal
    words: tuple[Word, Word]
    exponents: tuple[tuple[int, int], tuple[int, int]]

    def exponent_determinant(self) -> int:
        (p, q), (r, s) = self.exponents
        return p * s - q * r


def _require_class_one(d: int):
    if int(d) not in CLASS_NUMBER_ONE or class_number(int(d)) != 1:
        raise UnsupportedField(f"d={d}: h_d != 1")


def peripheral_words(d: int, I: QIdeal) -> PeripheralData:
    """Words t^p u^q, t^r u^s for the HNF rows (p, q), (r, s) of I.

    t and u act as x -> x+1 and x -> x+w, so t^p u^q is translation by p + q*w;
    the rows span the lattice P(I) of translations lying in Gamma(I).
    """
    _require_class_one(d)
    bp = presentation_of(d)
    ti, ui = bp.presentation.index_of(bp.t), bp.presentation.index_of(bp.u)
    rows = I.basis
    words = tuple(Word([(ti, p), (ui, q)]) for p, q in rows)
    return PeripheralData(I, words, rows)


def lattice_row_span_equal(a, b) -> bool:
    """Equality of the Z-spans of two sets of integer 2-vectors."""
    from .quadint import _hnf_rows

    try:
        return _hnf_rows(None, a) == _hnf_rows(None, b)
    except ValueError:
        return False


def quotient_presentation(d: int, I: QIdeal) -> Presentation:
    """PSL(2, O_d) / N_d(I): the Bianchi relators plus the peripheral words."""
    per = peripheral_words(d, I)
    return add_relators(presentation_of(d).presentation, per.words)


# ------------------------------------------------------ parabolic generation

class Generation(enum.Enum):
    GENERATED = "Generated"
    NOT_GENERATED = "NotGenerated"
    UNKNOWN = "Unknown"


@dataclass
class GenerationResult:
    verdict: Generation
    psl2_order: int
    quotient_order: int | None = None
    evidence: list[str] = field(default_factory=list)


# enumeration budget for the translation-subgroup pass and for the full check
DEFAULT_LIMITS = Limits()


def quotient_order(d: int, I: QIdeal, limits: Limits | None = None, strategy: str = "hlt") -> int:
    """|PSL(2, O_d)/N_d(I)| by enumerating cosets of the trivial subgroup."""
    return todd_coxeter(quotient_presentation(d, I), [], limits, strategy).index


def parabolic_generation_test(d: int, I: QIdeal, limits: Limits | None = None, strategy: str = "hlt",
                              low_index: int = 0) -> GenerationResult:
    """Decide whether Gamma(I) is generated by parabolic elements.

    First the cosets of the translation subgroup T = <t, u> are enumerated.
    In the quotient G, T is abelian and killed by the peripheral lattice, so
    |T| <= N(I); T maps onto the N(I) translations of PSL(2, O_d/I), so
    |T| = N(I) and |G| = [G : T] * N(I) exactly.  If |G| equals the order of
    PSL(2, O_d/I) the verdict is confirmed by a full enumeration over the
    trivial subgroup.  On overflow, an infinite abelianization of G (or of a
    subgroup of index <= low_index) still proves NotGenerated.
    """
    _require_class_one(d)
    limits = limits or DEFAULT_LIMITS
    order = psl2_order(I)
    G = quotient_presentation(d, I)
    bp = presentation_of(d)
    T = [G.word(bp.t), G.word(bp.u)]
    res = GenerationResult(Generation.UNKNOWN, order)
    try:
        table = todd_coxeter(G, T, limits, strategy)
    except Overflow as exc:
        res.evidence.append(f"[G:<t,u>] enumeration: {exc}")
    else:
        size = table.index * I.norm()
        res.quotient_order = size
        res.evidence.append(f"[G:<t,u>] = {table.index}, |G| = {size}")
        if size != order:
            res.verdict = Generation.NOT_GENERATED
            return res
        try:
            full = todd_coxeter(G, [], limits, strategy)
        except Overflow as exc:
            res.evidence.append(f"trivial-subgroup enumeration: {exc}")
            return res
        res.evidence.append(f"[G:1] = {full.index}")
        if full.index == order:
            res.verdict = Generation.GENERATED
        else:
            # cannot happen if the presentation is correct
            res.verdict = Generation.NOT_GENERATED
        return res
    ab = abelianization(G)
    res.evidence.append(f"G^ab = {ab}")
    if not ab.is_finite:
        res.verdict = Generation.NOT_GENERATED
        return res
    if low_index:
        try:
            log, cert = infiniteness_certificate(G, low_index, limits.max_seconds)
        except Overflow as exc:
            res.evidence.append(f"low-index search up to {low_index}: {exc}")
            return res
        res.evidence.append(f"low-index subgroups up to {low_index}: "
                            + ", ".join(f"index {n}: {inv}" for n, inv in log))
        if cert is not None:
            res.verdict = Generation.NOT_GENERATED
        else:
            res.evidence.append("low-index search inconclusive")
    return res
