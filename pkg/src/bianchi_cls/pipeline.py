"""Candidate enumeration, classification and reports."""

from __future__ import annotations

import csv
import enum
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

from . import reference
from .bianchi import CLASS_NUMBER_ONE, Generation, parabolic_generation_test
from .fpgroup import Limits
from .modmat import cusp_count, psl2_order, torsion_in_gamma
from .quadint import (
    QIdeal,
    canonical_up_to_conjugation,
    class_number,
    divisors,
    elements_of_norm,
    format_element,
    is_principal,
    principal,
    to_sqrt_form,
)

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1

# norm bounds equivalent to |x| < 6 (class number one) and |x|^2 < 39
NORM_BOUND_CLASS_ONE = 35
NORM_BOUND_HIGHER = 38

# per-candidate budget; no wall-clock limit so reports are reproducible
PIPELINE_LIMITS = Limits(max_cosets=100_000, max_seconds=None)
PIPELINE_LOW_INDEX = 8


class Status(str, enum.Enum):
    KNOWN_LINK = "KnownLink"
    GENERATED = "Generated"
    NOT_GENERATED = "NotGenerated"
    TORSION_EXCLUDED = "TorsionExcluded"
    UNRESOLVED_DESK = "UnresolvedDesk"


def admissible_fields() -> list[int]:
    return list(reference.ADMISSIBLE_FIELDS)


def candidate_levels(d: int, norm_bound: int | None = None, dedupe: bool = True,
                     strict_bounds: bool = True) -> list[QIdeal]:
    """Proper ideals containing a nonzero element below the norm bound.

    For class number one these are the principal ideals <x> with
    2 <= N(x) <= 35; otherwise every proper divisor of some <x> with
    N(x) <= 38.  ``strict_bounds=False`` admits N(x) = 36 resp. 39.
    """
    h = class_number(d)
    if norm_bound is None:
        norm_bound = NORM_BOUND_CLASS_ONE if h == 1 else NORM_BOUND_HIGHER
        if not strict_bounds:
            norm_bound += 1
    found: set[QIdeal] = set()
    for n in range(2, norm_bound + 1):
        for z in elements_of_norm(d, n):
            I = principal(z)
            for J in ([I] if h == 1 else divisors(I)):
                if J.norm() > 1:
                    found.add(canonical_up_to_conjugation(J) if dedupe else J)
    return sorted(found, key=lambda J: J.sort_key())


@dataclass
class CandidateRecord:
    d: int
    ideal: QIdeal
    generator: str | None
    norm: int
    psl2_order: int
    cusps: int | None
    torsion: bool
    status: Status
    notes: list[str] = field(default_factory=list)
    contradiction: bool = False
    overflow: bool = False

    @property
    def ideal_hnf(self) -> list[list[int]]:
        return [list(r) for r in self.ideal.basis]

    def sort_key(self):
        return (self.d, self.ideal.basis)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "d": self.d,
            "ideal_hnf": self.ideal_hnf,
            "ideal": str(self.ideal),
            "generator": self.generator,
            "norm": self.norm,
            "order": self.psl2_order,
            "cusps": self.cusps,
            "torsion": self.torsion,
            "status": self.status.value,
            "notes": list(self.notes),
        }


def display_generator(z) -> str:
    p, q, den = to_sqrt_form(z)
    s = str(p) if p else ""
    if q:
        coef = {1: "", -1: "-"}.get(q, f"{q}*")
        s += ("+" if q > 0 and s else "") + f"{coef}sqrt-{z.field.d}"
    s = s or "0"
    return f"({s})/{den}" if den != 1 else s


def classify(d: int, I: QIdeal, limits: Limits | None = None, low_index: int = PIPELINE_LOW_INDEX) -> CandidateRecord:
    limits = limits or PIPELINE_LIMITS
    I = canonical_up_to_conjugation(I)
    gen = is_principal(I)
    ref = reference.lookup(d, I)
    is_final = (d == reference.FINAL_CASE[0] and I == reference.final_case_ideal())
    rec = CandidateRecord(d, I, display_generator(gen) if gen is not None else None, I.norm(),
                          psl2_order(I), None, False, Status.UNRESOLVED_DESK)
    h = class_number(d)
    if h == 1:
        rec.cusps = cusp_count(d, I)
    witness = torsion_in_gamma(d, I)
    if witness is not None:
        rec.torsion = True
        rec.status = Status.TORSION_EXCLUDED
        (a, b), (c, e) = witness
        rec.notes.append("elliptic witness [[%s, %s], [%s, %s]]" % tuple(format_element(x) for x in (a, b, c, e)))
        if ref is not None:
            rec.contradiction = True
            rec.notes.append("CONTRADICTION: reference link level has torsion")
        return rec
    if h == 1 and d in CLASS_NUMBER_ONE:
        res = parabolic_generation_test(d, I, limits, low_index=low_index)
        rec.notes.extend(res.evidence)
        if res.verdict is Generation.GENERATED:
            rec.status = Status.GENERATED
        elif res.verdict is Generation.NOT_GENERATED:
            rec.status = Status.NOT_GENERATED
        else:
            rec.overflow = True
        if ref is not None and res.verdict is Generation.NOT_GENERATED:
            rec.contradiction = True
            rec.notes.append("CONTRADICTION: reference link level is not parabolic-generated")
        if is_final and res.verdict is Generation.GENERATED:
            rec.contradiction = True
            rec.notes.append("CONTRADICTION: level known not to be a link group came out Generated")
    else:
        rec.notes.append(f"h_d = {h} > 1: normal-closure test out of scope")
    if ref is not None:
        rec.status = Status.KNOWN_LINK
        rec.notes.append(f"link level ({ref.source})")
    if is_final:
        rec.status = Status.UNRESOLVED_DESK
        rec.notes.append(reference.FINAL_CASE_NOTE)
    return rec


def _classify_job(args):
    d, basis, limits, low_index = args
    return classify(d, QIdeal(_field(d), basis), limits, low_index)


def _field(d):
    from .quadint import FieldLabel
    return FieldLabel(d)


def run(fields=None, limits: Limits | None = None, low_index: int = PIPELINE_LOW_INDEX,
        workers: int = 1, progress=None) -> list[CandidateRecord]:
    """Classify every candidate of the given fields; records sorted by (d, HNF)."""
    fields = admissible_fields() if fields is None else list(fields)
    jobs = [(d, I.basis, limits, low_index) for d in fields for I in candidate_levels(d)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            records = list(pool.map(_classify_job, jobs))
    else:
        records = []
        for job in jobs:
            records.append(_classify_job(job))
            if progress:
                progress(records[-1])
    return sorted(records, key=CandidateRecord.sort_key)


def count_conventions() -> list[dict]:
    """Candidate counts (after removing torsion levels) under each reading of the bounds."""
    rows = []
    torsion_cache: dict[tuple[int, QIdeal], bool] = {}

    def has_torsion(d, I):
        key = (d, canonical_up_to_conjugation(I))
        if key not in torsion_cache:
            torsion_cache[key] = torsion_in_gamma(d, I) is not None
        return torsion_cache[key]

    for strict in (True, False):
        for dedupe in (True, False):
            total = torsion = 0
            for d in admissible_fields():
                for I in candidate_levels(d, dedupe=dedupe, strict_bounds=strict):
                    total += 1
                    torsion += has_torsion(d, I)
            rows.append({
                "bounds": "N<=35 / N<=38" if strict else "N<=36 / N<=39",
                "conjugation_dedup": dedupe,
                "levels": total,
                "torsion": torsion,
                "candidates": total - torsion,
            })
    return rows


# ---------------------------------------------------------- reference table

@dataclass
class Table1Result:
    row: reference.Table1Row
    norm: int
    order: int
    cusps: int

    @property
    def mismatches(self) -> list[str]:
        out = []
        for name in ("norm", "order", "cusps"):
            if getattr(self, name) != getattr(self.row, name):
                out.append(f"{name}: computed {getattr(self, name)}, expected {getattr(self.row, name)}")
        return out


def table1_report() -> list[Table1Result]:
    from .quadint import parse_element

    out = []
    for row in reference.TABLE1:
        I = principal(parse_element(row.d, row.x))
        out.append(Table1Result(row, I.norm(), psl2_order(I), cusp_count(row.d, I)))
    return out


# ------------------------------------------------------------------ reports

def summary(records: list[CandidateRecord]) -> dict:
    counts = {s.value: 0 for s in Status}
    for r in records:
        counts[r.status.value] += 1
    return {
        "levels": len(records),
        "candidates": sum(not r.torsion for r in records),
        "torsion": sum(r.torsion for r in records),
        "status": counts,
        "contradictions": sum(r.contradiction for r in records),
        "overflows": sum(r.overflow for r in records),
    }


def render_report(records: list[CandidateRecord], fmt: str = "json") -> str:
    records = sorted(records, key=CandidateRecord.sort_key)
    if fmt == "json":
        doc = {"schema_version": SCHEMA_VERSION, "summary": summary(records),
               "records": [r.to_dict() for r in records]}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        cols = ["schema_version", "d", "ideal_hnf", "ideal", "generator", "norm", "order", "cusps",
                "torsion", "status", "notes"]
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in records:
            row = r.to_dict()
            row["ideal_hnf"] = json.dumps(row["ideal_hnf"])
            row["notes"] = " | ".join(row["notes"])
            w.writerow(row)
        return buf.getvalue()
    if fmt == "text":
        lines = [f"schema_version {SCHEMA_VERSION}",
                 f"{'d':>3} {'ideal':<28} {'N':>3} {'|PSL|':>6} {'cusps':>5}  status"]
        for r in records:
            cusps = "-" if r.cusps is None else str(r.cusps)
            lines.append(f"{r.d:>3} {str(r.ideal):<28} {r.norm:>3} {r.psl2_order:>6} {cusps:>5}  {r.status.value}")
        s = summary(records)
        lines.append(f"levels {s['levels']}, candidates {s['candidates']}, torsion {s['torsion']}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")


def emit_report(records: list[CandidateRecord], path, fmt: str = "json") -> Path:
    path = Path(path)
    text = render_report(records, fmt)
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc.strerror}") from exc
    return path


def load_report(path) -> list[dict]:
    doc = json.loads(Path(path).read_text())
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported report schema {doc.get('schema_version')!r}")
    return doc["records"]
