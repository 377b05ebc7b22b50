"""Weil sums of binomials, their spectra, and the Galois action on values.

W_u = sum_{x in K} z^{Tr(x^s - u x)} is represented exactly by its trace
histogram (w_0, ..., w_{p-1}).  Two routes compute it:

* :func:`weil_sum` loops over K with element arithmetic (reference path);
* :func:`histogram_matrix` produces every row at once.  Units are indexed
  by discrete log, u = g^a and x = g^j, so Tr(ux) = Tr(g^(a+j)) and the
  whole table is a circulant gather followed by one ``bincount``.

Histograms with equal totals are equal iff their values are equal, so the
value set is the set of distinct histogram rows.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import finite_field as ff
from .cyclotomic import CycInt, Histogram, QuadDecomp, quad_decompose, vp_int
from .errors import CheckFailed, Inconsistent, NotInvertibleExponent
from .finite_field import FieldElement, FieldSpec

_CHUNK = 1 << 22
# spectra with more distinct values are summarized, not rendered value by value
RENDER_CAP = 64


# ----------------------------------------------------------------------------
# exponents


def require_invertible(K: FieldSpec, s: int) -> None:
    if not ff.is_invertible_exponent(K.q, s):
        raise NotInvertibleExponent(f"gcd({s}, {K.q - 1}) != 1 for F_{K.q}")


def is_degenerate(q: int, p: int, s: int) -> bool:
    """True iff s is congruent to a power of p modulo q - 1."""
    m = q - 1
    if m == 1:
        return True
    target = s % m
    x = 1
    while True:
        if x == target:
            return True
        x = x * p % m
        if x == 1:
            return False


def exponent_orbit(q: int, p: int, s: int) -> frozenset[int]:
    """Residues mod q-1 equivalent to s under s -> p*s and s -> 1/s."""
    m = q - 1
    if m == 1:
        return frozenset({1})
    start = s % m
    seen = {start}
    todo = [start]
    while todo:
        x = todo.pop()
        for y in (x * p % m, ff.mod_inverse(x, m)):
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return frozenset(seen)


def canonical_exponent(q: int, p: int, s: int) -> int:
    return min(exponent_orbit(q, p, s))


def exponent_classes(q: int, p: int) -> list[int]:
    """Least member of each equivalence class of invertible exponents."""
    m = q - 1
    if m == 1:
        return [1]
    reps = []
    covered: set[int] = set()
    for s in range(1, m):
        if s in covered or math.gcd(s, m) != 1:
            continue
        orbit = exponent_orbit(q, p, s)
        covered |= orbit
        reps.append(min(orbit))
    return reps


def tau_multiplier(p: int, s: int) -> int:
    """lambda = gamma^(1 - 1/s) in F_p, with 1/s taken modulo p - 1.

    Not the same inverse as the exponent equivalence, which works mod q - 1.
    """
    if p == 2:
        return 1
    gamma = ff.primitive_root_mod_p(p)
    inv_s = ff.mod_inverse(s % (p - 1), p - 1)
    return pow(gamma, (1 - inv_s) % (p - 1), p)


def predicted_tau_order(p: int, s: int) -> int:
    return (p - 1) // math.gcd(p - 1, s - 1)


# ----------------------------------------------------------------------------
# single sums (reference path)


@dataclass(frozen=True)
class WeilValue:
    value: CycInt
    histogram: Histogram
    quad: QuadDecomp | None = None


def _quad_or_none(a: CycInt) -> QuadDecomp | None:
    return quad_decompose(a) if a.p % 4 == 1 else None


def weil_histogram(K: FieldSpec, s: int, u: FieldElement) -> Histogram:
    counts = [0] * K.p
    for x in ff.enumerate_field(K):
        xs = K.zero if x.is_zero() else ff.pow(K, x, s)
        arg = ff.sub(K, xs, ff.mul(K, u, x))
        counts[ff.trace(K, arg)] += 1
    return Histogram(K.p, tuple(counts))


def weil_sum(K: FieldSpec, s: int, u: FieldElement) -> WeilValue:
    require_invertible(K, s)
    h = weil_histogram(K, s, u)
    v = h.reduce()
    return WeilValue(v, h, _quad_or_none(v))


# ----------------------------------------------------------------------------
# all sums at once


def histogram_matrix(K: FieldSpec, s: int) -> np.ndarray:
    """Histograms of W_u for every unit, shape (q-1, p), row a <-> u = g^a."""
    require_invertible(K, s)
    T = ff.tables(K)
    m, p = T.m, T.p
    j = np.arange(m, dtype=np.int64)
    tr_xs = T.trace_exp[(j * s) % m]
    counts = np.empty((m, p), dtype=np.int64)
    rows = max(1, _CHUNK // m)
    for lo in range(0, m, rows):
        a = np.arange(lo, min(m, lo + rows), dtype=np.int64)
        tr_ux = T.trace_exp[(a[:, None] + j[None, :]) % m]
        vals = (tr_xs[None, :] - tr_ux) % p
        offs = (np.arange(len(a), dtype=np.int64) * p)[:, None] + vals
        counts[lo : lo + len(a)] = np.bincount(offs.ravel(), minlength=len(a) * p).reshape(
            len(a), p
        )
    counts[:, 0] += 1  # x = 0
    return counts


# ----------------------------------------------------------------------------
# spectra


@dataclass
class WeilSpectrum:
    field: FieldSpec
    s: int
    values: dict[CycInt, int]
    per_u: dict[FieldElement, CycInt]
    details: dict[CycInt, WeilValue]

    @property
    def num_values(self) -> int:
        return len(self.values)

    def is_rational(self) -> bool:
        return all(v.rational() is not None for v in self.values)

    def value_set(self) -> set[CycInt]:
        return set(self.values)


def spectrum(K: FieldSpec, s: int) -> WeilSpectrum:
    H = histogram_matrix(K, s)
    T = ff.tables(K)
    uniq, inverse = np.unique(H, axis=0, return_inverse=True)
    inverse = inverse.ravel()
    details = []
    for row in uniq:
        h = Histogram(K.p, tuple(int(c) for c in row))
        v = h.reduce()
        details.append(WeilValue(v, h, _quad_or_none(v)))
    per_u = {}
    for a in range(T.m):
        per_u[K.from_code(int(T.exp[a]))] = details[inverse[a]].value
    freq = Counter(per_u.values())
    return WeilSpectrum(
        field=K,
        s=s,
        values=dict(freq),
        per_u=per_u,
        details={d.value: d for d in details},
    )


@dataclass
class TauAction:
    lam: int
    mapping: dict[CycInt, CycInt]
    cycles: list[tuple[CycInt, ...]]

    @property
    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles), reverse=True))

    @property
    def order(self) -> int:
        return math.lcm(*self.cycle_type) if self.cycles else 1


def _cycles(mapping: dict) -> list[tuple]:
    seen = set()
    out = []
    for start in mapping:
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        x = mapping[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = mapping[x]
        out.append(tuple(cyc))
    return out


def tau_action(spec: WeilSpectrum) -> TauAction:
    """The permutation W_u -> W_{lambda u} of the value set."""
    K = spec.field
    lam = tau_multiplier(K.p, spec.s)
    lam_el = K.element(lam)
    mapping: dict[CycInt, CycInt] = {}
    for u, w in spec.per_u.items():
        image = spec.per_u[ff.mul(K, lam_el, u)]
        prev = mapping.setdefault(w, image)
        if prev != image:
            raise Inconsistent(f"tau is not well defined at u={u}")
    return TauAction(lam, mapping, _cycles(mapping))


# ----------------------------------------------------------------------------
# classification and per-pair checks


def _histogram_float(rows: np.ndarray, p: int) -> np.ndarray:
    ang = 2 * np.pi * np.arange(p) / p
    return rows @ np.cos(ang)


def _residues(p: int) -> tuple[np.ndarray, np.ndarray]:
    sq = sorted({i * i % p for i in range(1, p)})
    non = [i for i in range(1, p) if i not in set(sq)]
    return np.array(sq, dtype=np.int64), np.array(non, dtype=np.int64)


def render_histogram(row, p: int) -> str:
    w = [int(c) for c in row]
    if all(c == w[1] for c in w[1:]):
        return str(w[0] - w[-1])
    v = CycInt(p, tuple(w[i] - w[p - 1] for i in range(p - 1)))
    return str(v)


@dataclass
class ClassificationRecord:
    q: int
    p: int
    n: int
    s: int
    s_canonical: int
    num_values: int
    is_rational: bool
    is_degenerate: bool
    rationality_predicate: bool
    cycle_type: tuple[int, ...]
    tau_order: int
    values: list[str]
    frequencies: list[int]
    checks: dict[str, bool] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict[str, Any]:
        return {
            "q": self.q,
            "p": self.p,
            "n": self.n,
            "s": self.s_canonical,
            "num_values": self.num_values,
            "is_degenerate": self.is_degenerate,
            "is_rational": self.is_rational,
            "rationality_predicate": self.rationality_predicate,
            "tau_order": self.tau_order,
            "cycle_type": list(self.cycle_type),
            "values": self.values,
            "frequencies": self.frequencies,
            "checks": self.checks,
        }


@dataclass
class SpectrumData:
    """Array-level view of a spectrum used by :func:`analyze`."""

    K: FieldSpec
    s: int
    H: np.ndarray  # (q-1, p) histograms, rows by discrete log
    uniq: np.ndarray  # distinct histograms, numeric order
    ids: np.ndarray  # value id of each row
    freq: np.ndarray


def spectrum_data(K: FieldSpec, s: int) -> SpectrumData:
    H = histogram_matrix(K, s)
    uniq, ids, counts = np.unique(H, axis=0, return_inverse=True, return_counts=True)
    ids = ids.ravel()
    real = _histogram_float(uniq, K.p)
    # descending numeric value; ties (never expected) broken by histogram order
    order = np.lexsort((np.arange(len(uniq)), -np.round(real, 9)))
    rank = np.empty_like(order)
    rank[order] = np.arange(len(order))
    return SpectrumData(K, s, H, uniq[order], rank[ids], counts[order])


def analyze(
    K: FieldSpec,
    s: int,
    *,
    exact_sums: bool = True,
    bounds: bool = True,
    data: SpectrumData | None = None,
) -> ClassificationRecord:
    """Classify the spectrum for (K, s) and run every per-pair check.

    Failing checks are collected in ``record.failures``; nothing is raised.
    """
    require_invertible(K, s)
    d = data or spectrum_data(K, s)
    q, p, n = K.q, K.p, K.n
    m = q - 1
    T = ff.tables(K)
    uniq, ids, freq = d.uniq, d.ids, d.freq
    nv = len(uniq)

    checks: dict[str, bool] = {}
    failures: list[str] = []

    def check(name: str, ok: bool, detail: str = ""):
        checks[name] = checks.get(name, True) and bool(ok)
        if not ok:
            failures.append(f"{name}: {detail}" if detail else name)

    rational_rows = np.all(uniq[:, 1:] == uniq[:, 1:2], axis=1) if p > 2 else np.ones(nv, bool)
    is_rational = bool(np.all(rational_rows))
    degenerate = is_degenerate(q, p, s)
    hp = (s - 1) % (p - 1) == 0 if p > 2 else True

    # Galois action: sigma(W_u) = W_{lambda u} with sigma: z -> z^gamma
    lam = tau_multiplier(p, s)
    lam_log = int(T.log[T.scalar(lam)])
    shifted = (np.arange(m) + lam_log) % m
    ids_img = ids[shifted]
    mapping = np.full(nv, -1, dtype=np.int64)
    mapping[ids] = ids_img
    if not np.array_equal(mapping[ids], ids_img):
        raise Inconsistent(f"tau not well defined for F_{q}, s={s}")
    gamma = ff.primitive_root_mod_p(p)
    perm = (gamma * np.arange(p)) % p
    galois_img = np.empty_like(d.H)
    galois_img[:, perm] = d.H
    check("galois_shift", np.array_equal(galois_img, d.H[shifted]), "sigma(W_u) != W_{lambda u}")

    cycles = []
    seen = np.zeros(nv, bool)
    for a in range(nv):
        if seen[a]:
            continue
        cyc = [a]
        seen[a] = True
        b = int(mapping[a])
        while b != a:
            cyc.append(b)
            seen[b] = True
            b = int(mapping[b])
        cycles.append(cyc)
    cycle_type = tuple(sorted((len(c) for c in cycles), reverse=True))
    tau_order = math.lcm(*cycle_type)
    lam_order = ff.multiplicative_order(lam, p) if p > 2 else 1
    formula = predicted_tau_order(p, s) if p > 2 else 1
    check(
        "galois_shift",
        tau_order == formula == lam_order,
        f"tau order {tau_order}, formula {formula}, ord(lambda) {lam_order}",
    )
    if p > 2:
        check("galois_shift", (p - 1) % (2 * tau_order) == 0, "p != 1 mod 2m")

    freq_ok = True
    for cyc in cycles:
        k = len(cyc)
        fs = {int(freq[a]) for a in cyc}
        if len(fs) != 1 or tau_order % k or next(iter(fs)) % (tau_order // k):
            freq_ok = False
    check("frequency_divisibility", freq_ok, f"cycles {cycles} freqs {freq.tolist()}")
    if p == 2:
        check("cycle_length_bound", all(len(c) == 1 for c in cycles))
    else:
        check("cycle_length_bound", max(cycle_type) <= (p - 1) // 2, f"cycle type {cycle_type}")
    check("nontrivial_action", (len(cycles) == 1) == (q == 2), f"cycle type {cycle_type}")

    # real values: histogram symmetric under i -> -i
    neg = (-np.arange(p)) % p
    check("real_values", np.array_equal(d.H[:, neg], d.H), "some W_u not real")

    # value-count and rationality criteria
    check("degenerate_iff_two_valued", (nv >= 3) == (not degenerate), f"{nv} values, degenerate={degenerate}")
    if degenerate:
        expected = {(q,)} if q == 2 else {(0,), (q,)}
        got = {(int(r[0] - r[-1]),) for r in uniq}
        check("degenerate_iff_two_valued", rational_rows.all() and got == expected, f"degenerate value set {got}")
    check("rationality_criterion", is_rational == hp, f"rational={is_rational}, s=1 mod p-1: {hp}")
    check("three_valued_rational", nv != 3 or is_rational, "irrational 3-valued spectrum")
    exceptional = q == 5 and s % 4 == 3
    check(
        "four_valued_rational",
        nv != 4 or is_rational or exceptional,
        "irrational 4-valued spectrum outside F_5",
    )
    if exceptional:
        want = sorted([(5, 1), (0, 2), (0, -2), (5, -1)])
        got = []
        for r in uniq:
            w0, wp, wm = int(r[0]), int(r[1]), int(r[2])
            got.append((2 * w0 - wp - wm, wp - wm))
        check("f5_exceptional_spectrum", nv == 4 and sorted(got) == want and cycle_type == (2, 2), str(got))

    # exact global sums
    if exact_sums:
        tot = d.H.sum(axis=0)
        red = tot[:-1] - tot[-1]
        check("sum_of_values", red[0] == q and not np.any(red[1:]), f"sum W_u = {red.tolist()}")
        G = d.H.T @ d.H
        idx = np.arange(p)
        auto = np.array([G[idx, (idx - k) % p].sum() for k in range(p)])
        red2 = auto[:-1] - auto[-1]
        check(
            "sum_of_norms",
            red2[0] == q * q and not np.any(red2[1:]),
            f"sum W_u conj(W_u) = {red2.tolist()}",
        )

    if bounds:
        check("histogram_bounds", bool(np.all(uniq[:, 0] >= 1)), "w_0 = 0")
        if not degenerate:
            check("histogram_bounds", bool(np.all(uniq < q)), "some w_i = q")
            ok_iz = True
            for r in uniq[rational_rows]:
                val = int(r[0] - r[-1])
                v = vp_int(val, p)
                if not (v >= 1 and (val == 0 or v < n)):
                    ok_iz = False
            check("padic_bounds", ok_iz, "rational value fails p-adic bounds")
            if p % 4 == 1:
                res, non = _residues(p)
                quad = np.all(uniq[:, res] == uniq[:, res[:1]], axis=1) & np.all(
                    uniq[:, non] == uniq[:, non[:1]], axis=1
                )
                ok_b = True
                for r in uniq[quad]:
                    w0, wp, wm = int(r[0]), int(r[res[0]]), int(r[non[0]])
                    I, J = 2 * w0 - wp - wm, wp - wm
                    if not (
                        (I - J) % 2 == 0
                        and vp_int(I, p) >= 1
                        and -q < I < 2 * q
                        and abs(J) * (p - 1) <= 2 * (q - 1)
                    ):
                        ok_b = False
                check("quadratic_bounds", ok_b, "quadratic value fails bounds")

    values = [render_histogram(r, p) for r in uniq] if nv <= RENDER_CAP else []
    return ClassificationRecord(
        q=q,
        p=p,
        n=n,
        s=s,
        s_canonical=canonical_exponent(q, p, s),
        num_values=nv,
        is_rational=is_rational,
        is_degenerate=degenerate,
        rationality_predicate=hp,
        cycle_type=cycle_type,
        tau_order=tau_order,
        values=values,
        frequencies=[int(f) for f in freq],
        checks=checks,
        failures=failures,
    )


def classify(K: FieldSpec, s: int) -> ClassificationRecord:
    """Like :func:`analyze` but raises :class:`CheckFailed` on the first failure."""
    rec = analyze(K, s)
    if rec.failures:
        name, _, detail = rec.failures[0].partition(": ")
        raise CheckFailed(name, detail)
    return rec
