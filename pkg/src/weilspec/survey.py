"""Batch survey over fields and exponent classes, plus per-pair reports."""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

from . import algebraic_sets as al
from . import finite_field as ff
from . import group_algebra as ga
from . import weil
from .finite_field import FieldSpec
from .report import Report

EXACT_SUMS_Q = 128
Q_SUITE_Q = 13
ALGEBRA_Q = 16
VERIFY_ALGEBRA_Q = 64

CSV_COLUMNS = [
    "q",
    "p",
    "n",
    "s",
    "num_values",
    "is_degenerate",
    "is_rational",
    "tau_order",
    "cycle_type",
    "values",
    "frequencies",
    "flags_ok",
    "checks_ok",
]

# row flag -> checks in the classification record that feed it
FLAG_CHECKS = {
    "degenerate_ok": ("degenerate_iff_two_valued",),
    "rational_ok": ("rationality_criterion",),
    "three_valued_ok": ("three_valued_rational",),
    "four_valued_ok": ("four_valued_rational",),
    "tau_ok": ("galois_shift", "cycle_length_bound"),
    "frequency_ok": ("frequency_divisibility",),
}


@dataclass
class SurveyConfig:
    q_max: int
    include_prime_powers: bool = True
    lemma_suite: bool = False
    output_path: str | None = None
    format: str = "csv"
    jobs: int = 1
    seed: int = 42

    def __post_init__(self):
        if self.q_max < 2:
            raise ValueError("q_max must be at least 2")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")
        if self.format not in ("csv", "json"):
            raise ValueError(f"unknown format {self.format!r}")


@dataclass
class SurveyRow:
    record: weil.ClassificationRecord
    flags: dict[str, bool]
    wall_time: float
    suite: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.flags.values()) and self.record.ok and all(self.suite.values())

    def csv_fields(self) -> dict[str, Any]:
        r = self.record
        return {
            "q": r.q,
            "p": r.p,
            "n": r.n,
            "s": r.s_canonical,
            "num_values": r.num_values,
            "is_degenerate": str(r.is_degenerate).lower(),
            "is_rational": str(r.is_rational).lower(),
            "tau_order": r.tau_order,
            "cycle_type": " ".join(map(str, r.cycle_type)),
            "values": "; ".join(r.values),
            "frequencies": " ".join(map(str, r.frequencies)),
            "flags_ok": str(all(self.flags.values())).lower(),
            "checks_ok": str(r.ok and all(self.suite.values())).lower(),
        }

    def as_dict(self) -> dict[str, Any]:
        d = self.record.as_dict()
        d["flags"] = dict(self.flags)
        if self.suite:
            d["suite"] = dict(self.suite)
        return d


@dataclass
class SurveySummary:
    three_valued: list[tuple[int, int]]
    four_valued: list[tuple[int, int]]
    irrational_three_valued: list[tuple[int, int]]
    irrational_four_valued: list[tuple[int, int]]
    exceptional_values: list[str]
    failures: list[tuple[int, int, list[str]]]

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict[str, Any]:
        return {
            "three_valued": [list(x) for x in self.three_valued],
            "four_valued": [list(x) for x in self.four_valued],
            "irrational_three_valued": [list(x) for x in self.irrational_three_valued],
            "irrational_four_valued": [list(x) for x in self.irrational_four_valued],
            "exceptional_values": self.exceptional_values,
            "failures": [[q, s, f] for q, s, f in self.failures],
        }


def fields_up_to(q_max: int, prime_powers: bool = True) -> list[FieldSpec]:
    out = []
    for q in range(2, q_max + 1):
        pp = ff.prime_power(q)
        if pp is None or (pp[1] > 1 and not prime_powers):
            continue
        out.append(ff.make_field(*pp))
    return out


def survey_tasks(config: SurveyConfig) -> list[tuple[int, int, int, int, bool]]:
    tasks = []
    for K in fields_up_to(config.q_max, config.include_prime_powers):
        for s in weil.exponent_classes(K.q, K.p):
            tasks.append((K.p, K.n, s, config.seed, config.lemma_suite))
    return tasks


def run_pair(task: tuple[int, int, int, int, bool]) -> SurveyRow:
    p, n, s, seed, suite = task
    K = ff.make_field(p, n)
    start = time.perf_counter()
    small = K.q <= EXACT_SUMS_Q
    rec = weil.analyze(K, s, exact_sums=small, bounds=small)
    flags = {
        name: all(rec.checks.get(c, True) for c in checks) for name, checks in FLAG_CHECKS.items()
    }
    results: dict[str, bool] = {}
    if suite:
        if K.q <= Q_SUITE_Q:
            results["point_counts"] = al.verify_q_lemmas(K, s, seed=seed).ok
        if K.q <= ALGEBRA_Q:
            results["group_algebra"] = ga.verify_identities(K, s, seed=seed).ok
            results["characters"] = ga.verify_characters(K, seed=seed).ok
    return SurveyRow(rec, flags, time.perf_counter() - start, results)


def summarize(rows: list[SurveyRow]) -> SurveySummary:
    def key(r):
        return (r.record.q, r.record.s_canonical)

    three = [key(r) for r in rows if r.record.num_values == 3]
    four = [key(r) for r in rows if r.record.num_values == 4]
    irr3 = [key(r) for r in rows if r.record.num_values == 3 and not r.record.is_rational]
    irr4 = [key(r) for r in rows if r.record.num_values == 4 and not r.record.is_rational]
    exceptional = next((r.record.values for r in rows if key(r) == (5, 3)), [])
    failures = []
    for r in rows:
        if not r.ok:
            bad = list(r.record.failures)
            bad += [f for f, v in r.flags.items() if not v]
            bad += [f for f, v in r.suite.items() if not v]
            failures.append((*key(r), bad))
    return SurveySummary(three, four, irr3, irr4, exceptional, failures)


def survey(config: SurveyConfig) -> tuple[list[SurveyRow], SurveySummary]:
    tasks = survey_tasks(config)
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            rows = list(pool.map(run_pair, tasks, chunksize=4))
    else:
        rows = [run_pair(t) for t in tasks]
    rows.sort(key=lambda r: (r.record.q, r.record.s_canonical))
    return rows, summarize(rows)


def rows_to_csv(rows: list[SurveyRow]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r.csv_fields())
    return buf.getvalue()


def rows_to_json(rows: list[SurveyRow], summary: SurveySummary) -> str:
    doc = {"rows": [r.as_dict() for r in rows], "summary": summary.as_dict()}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def render_output(rows: list[SurveyRow], summary: SurveySummary, fmt: str) -> str:
    return rows_to_csv(rows) if fmt == "csv" else rows_to_json(rows, summary)


# ----------------------------------------------------------------------------
# single pairs


def spectrum_report(field_spec: str, s: int) -> tuple[str, dict[str, Any]]:
    """Human-readable and JSON descriptions of one spectrum."""
    K = ff.parse_field(field_spec)
    weil.require_invertible(K, s)
    spec = weil.spectrum(K, s)
    tau = weil.tau_action(spec)
    rec = weil.analyze(K, s)
    order = sorted(spec.values, key=lambda v: -v.to_complex().real)
    label = {v: str(v) for v in order}

    mod = f" (modulus {K})" if K.n > 1 else ""
    lines = [f"Weil spectrum of x^{s} over F_{K.q}{mod}"]
    lines.append("per unit:")
    for u, v in spec.per_u.items():
        lines.append(f"  W[{u}] = {label[v]}")
    lines.append("values (frequency):")
    for v in order:
        lines.append(f"  {label[v]}  x{spec.values[v]}")
    lines.append(f"num_values = {spec.num_values}")
    lines.append(f"rational = {rec.is_rational}, degenerate = {rec.is_degenerate}")
    lines.append(f"tau multiplier = {tau.lam}, cycle type = {tau.cycle_type}, order = {tau.order}")
    lines.append("checks:")
    for name, ok in rec.checks.items():
        lines.append(f"  {'PASS' if ok else 'FAIL'}  {name}")

    doc = {
        "field": str(K),
        "q": K.q,
        "s": s,
        "per_u": {str(u): label[v] for u, v in spec.per_u.items()},
        "values": [
            {
                "value": label[v],
                "frequency": spec.values[v],
                "coeffs": list(v.coeffs),
                "quad": None
                if spec.details[v].quad is None
                else [spec.details[v].quad.I, spec.details[v].quad.J],
            }
            for v in order
        ],
        "num_values": spec.num_values,
        "is_rational": rec.is_rational,
        "is_degenerate": rec.is_degenerate,
        "cycle_type": list(tau.cycle_type),
        "tau_order": tau.order,
        "checks": rec.checks,
        "failures": rec.failures,
    }
    return "\n".join(lines), doc


def verify_pair(K: FieldSpec, s: int, seed: int = 42) -> Report:
    """Every exact check for one pair, merged into a single report."""
    weil.require_invertible(K, s)
    rep = Report(f"all checks on F_{K.q}, s={s}")
    rec = weil.analyze(K, s)
    for name, ok in rec.checks.items():
        detail = next((f for f in rec.failures if f.startswith(name)), "")
        rep.record(name, ok, detail)
    if K.q <= Q_SUITE_Q:
        rep.merge(al.verify_q_lemmas(K, s, seed=seed))
    else:
        rep.skip("point_counts", f"q > {Q_SUITE_Q}")
    if K.q <= VERIFY_ALGEBRA_Q:
        rep.merge(ga.verify_identities(K, s, seed=seed))
        rep.merge(ga.verify_characters(K, seed=seed))
    else:
        rep.skip("group_algebra", f"q > {VERIFY_ALGEBRA_Q}")
    return rep


def verify_all(field_spec: str, s: int, seed: int = 42) -> int:
    """0 when every check passes, 1 otherwise."""
    K = ff.parse_field(field_spec)
    return 0 if verify_pair(K, s, seed).ok else 1
