"""Point counts Q^t_{a,b} of hyperplane/power-sum systems and the V^{[t]} tables.

Q^t_{a,b} is the number of v in K^k with t.v = a and
v_1^s + ... + v_k^s = b^s.  Writing the second condition with b^s avoids
s-th roots; x -> x^s is a bijection so nothing is lost.

All heavy lifting is on element codes (see :class:`FieldTables`).
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import finite_field as ff
from .errors import TooLargeK, ZeroCoefficient
from .finite_field import FieldElement, FieldSpec
from .report import Report
from .weil import require_invertible

K_MAX = 4


@dataclass(frozen=True)
class QQuery:
    t: tuple[FieldElement, ...]
    a: FieldElement
    b: FieldElement


@dataclass
class VBracket:
    t: tuple[FieldElement, ...]
    coeffs: dict[FieldElement, int]

    def total(self) -> int:
        return sum(self.coeffs.values())

    def __getitem__(self, u: FieldElement) -> int:
        return self.coeffs[u]


def _grid(q: int, k: int) -> list[np.ndarray]:
    """Coordinates of every point of K^k (as codes), each of length q**k."""
    if k == 0:
        return []
    axes = np.indices((q,) * k, dtype=np.int64).reshape(k, -1)
    return list(axes)


def _dot(T: ff.FieldTables, t: Sequence[int], vs: Sequence[np.ndarray]) -> np.ndarray:
    acc = np.zeros_like(vs[0]) if vs else np.zeros(1, dtype=np.int64)
    for ti, vi in zip(t, vs):
        acc = T.add(acc, T.mul(np.full_like(vi, ti), vi))
    return acc


def _power_sum(T: ff.FieldTables, s: int, vs: Sequence[np.ndarray]) -> np.ndarray:
    acc = np.zeros_like(vs[0])
    for vi in vs:
        acc = T.add(acc, T.power(vi, s))
    return acc


def _check_t(t_codes: Sequence[int]):
    if not 1 <= len(t_codes) <= K_MAX:
        raise TooLargeK(f"k = {len(t_codes)} outside 1..{K_MAX}")
    if any(c == 0 for c in t_codes):
        raise ZeroCoefficient("every t_i must be a unit")


# ----------------------------------------------------------------------------
# counting


def q_count(K: FieldSpec, s: int, query: QQuery) -> int:
    """Q^t_{a,b} by solving t.v = a for the last coordinate: O(q^(k-1))."""
    require_invertible(K, s)
    T = ff.tables(K)
    t = [K.code(x) for x in query.t]
    _check_t(t)
    return int(_q_count_codes(T, s, tuple(t), K.code(query.a), K.code(query.b)))


def _q_count_codes(T: ff.FieldTables, s: int, t: tuple[int, ...], a: int, b: int) -> int:
    k = len(t)
    free = _grid(T.q, k - 1)
    if free:
        rest = T.sub(np.full_like(free[0], a), _dot(T, t[:-1], free))
    else:
        rest = np.array([a], dtype=np.int64)
    last = T.mul(rest, np.full_like(rest, int(T.inv(np.array([t[-1]]))[0])))
    vs = free + [last]
    ps = _power_sum(T, s, vs)
    target = int(T.power(np.array([b]), s)[0])
    return int(np.count_nonzero(ps == target))


@functools.lru_cache(maxsize=4096)
def _q_table(K: FieldSpec, s: int, t: tuple[int, ...]) -> np.ndarray:
    """Q^t_{a,b} for every (a, b) by enumerating K^k; indexed [a_code, b_code].

    Zero entries in t are allowed here (they arise inside the reduction
    identity that adds a coordinate).
    """
    T = ff.tables(K)
    q = T.q
    vs = _grid(q, len(t))
    a = _dot(T, t, vs)
    b = T.power(_power_sum(T, s, vs), ff.mod_inverse(s, q - 1))
    table = np.bincount(a * q + b, minlength=q * q).reshape(q, q)
    table.flags.writeable = False
    return table


def q_table(K: FieldSpec, s: int, t: Sequence[FieldElement]) -> np.ndarray:
    require_invertible(K, s)
    codes = tuple(K.code(x) for x in t)
    _check_t(codes)
    return _q_table(K, s, codes)


def q_count_brute(K: FieldSpec, s: int, query: QQuery) -> int:
    """Direct count over all of K^k with element arithmetic (slow oracle)."""
    require_invertible(K, s)
    bs = ff.pow(K, query.b, s) if not query.b.is_zero() else K.zero
    count = 0
    elems = ff.enumerate_field(K)
    for v in itertools.product(elems, repeat=len(query.t)):
        dot = K.zero
        ps = K.zero
        for ti, vi in zip(query.t, v):
            dot = ff.add(K, dot, ff.mul(K, ti, vi))
            if not vi.is_zero():
                ps = ff.add(K, ps, ff.pow(K, vi, s))
        if dot == query.a and ps == bs:
            count += 1
    return count


# ----------------------------------------------------------------------------
# V tables


def hyperplane_counts(K: FieldSpec, s: int, t: tuple[int, ...]) -> np.ndarray:
    """Q^t_{1,b} for every b (indexed by code), from the q^(k-1) points of t.v = 1."""
    return _hyperplane_counts(K, s, tuple(int(c) for c in t))


@functools.lru_cache(maxsize=4096)
def _hyperplane_counts(K: FieldSpec, s: int, t: tuple[int, ...]) -> np.ndarray:
    _check_t(t)
    T = ff.tables(K)
    free = _grid(T.q, len(t) - 1)
    one = T.one
    if free:
        rest = T.sub(np.full_like(free[0], one), _dot(T, t[:-1], free))
    else:
        rest = np.array([one], dtype=np.int64)
    last = T.mul(rest, np.full_like(rest, int(T.inv(np.array([t[-1]]))[0])))
    b = T.power(_power_sum(T, s, free + [last]), ff.mod_inverse(s, T.q - 1))
    out = np.bincount(b, minlength=T.q)
    out.flags.writeable = False
    return out


def v_bracket_log(K: FieldSpec, s: int, t: tuple[int, ...]) -> np.ndarray:
    """V^{[t]}_u = Q^t_{1,u} - Q^t_{1,0} indexed by discrete log of u."""
    T = ff.tables(K)
    counts = hyperplane_counts(K, s, t)
    return counts[T.exp] - counts[0]


def v_bracket(K: FieldSpec, s: int, t: Sequence[FieldElement]) -> VBracket:
    require_invertible(K, s)
    codes = tuple(K.code(x) for x in t)
    _check_t(codes)
    counts = hyperplane_counts(K, s, codes)
    base = int(counts[0])
    coeffs = {K.from_code(c): int(counts[c]) - base for c in range(1, K.q)}
    return VBracket(tuple(t), coeffs)


def u_table(K: FieldSpec, s: int) -> VBracket:
    return v_bracket(K, s, (K.one, ff.neg(K, K.one)))


def v_table(K: FieldSpec, s: int) -> VBracket:
    return v_bracket(K, s, (K.one, K.one))


# ----------------------------------------------------------------------------
# identity suite


def _unit_tuples(q: int, k: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(1, q), repeat=k))


def sample_t(q: int, k: int, exhaustive: bool, samples: int, rng: random.Random):
    if exhaustive:
        return _unit_tuples(q, k)
    return [tuple(rng.randrange(1, q) for _ in range(k)) for _ in range(samples)]


def verify_q_lemmas(
    K: FieldSpec,
    s: int,
    k_max: int = 3,
    *,
    seed: int = 42,
    samples: int = 20,
    exhaustive_k: int = 2,
) -> Report:
    """Check every point-count identity on (K, s).

    t is exhausted for k <= ``exhaustive_k`` and sampled (``samples`` draws
    from a seeded RNG) above that.  Failures are recorded, not raised.
    """
    require_invertible(K, s)
    T = ff.tables(K)
    q, p = K.q, K.p
    rep = Report(f"point-count identities on F_{q}, s={s}")
    rng = random.Random(seed)
    s_inv = ff.mod_inverse(s, q - 1)
    codes = np.arange(q, dtype=np.int64)
    unit_codes = codes[1:]

    def table(t):
        return _q_table(K, s, tuple(int(x) for x in t))

    for k in range(1, k_max + 1):
        ts = sample_t(q, k, k <= exhaustive_k, samples, rng)
        for t in ts:
            Q = table(t)
            # row / column sums
            rep.record(
                "q_margin_sums",
                np.all(Q.sum(axis=0) == q ** (k - 1)) and np.all(Q.sum(axis=1) == q ** (k - 1)),
                f"t={t}",
            )
            # nonnegativity / zero solution
            rep.record("q_nonnegative", bool(Q.min() >= 0 and Q[0, 0] >= 1), f"t={t}")
            # agreement with the hyperplane counter on a few entries
            for a, b in [(0, 0), (T.one, 0), (T.one, T.one), (q - 1, q // 2)]:
                rep.record(
                    "q_count_routes",
                    int(Q[a, b]) == _q_count_codes(T, s, tuple(t), a, b),
                    f"t={t} a={a} b={b}",
                )
            # scaling
            for u in unit_codes:
                ut = tuple(int(x) for x in T.mul(np.full(k, u), np.array(t)))
                Qu = table(ut)
                a_over_u = T.mul(codes, np.full(q, int(T.inv(np.array([u]))[0])))
                ok1 = np.array_equal(Qu, Q[a_over_u, :])
                ua = T.mul(codes, np.full(q, u))
                ok2 = np.array_equal(Q[np.ix_(ua, ua)], Q)
                rep.record("q_scaling", ok1 and ok2, f"t={t} u={u}")
            # zero targets
            q00 = int(Q[0, 0])
            chair = (q ** (k - 1) - q00) // (q - 1) if q > 1 else 0
            ok = (q ** (k - 1) - q00) % (q - 1) == 0
            ok &= bool(np.all(Q[unit_codes, 0] == chair) and np.all(Q[0, unit_codes] == chair))
            rep.record("q_zero_targets", ok, f"t={t}")
            for b in codes:
                lhs1 = int(Q[unit_codes, b].sum())
                lhs2 = int(Q[b, unit_codes].sum())
                if b == 0:
                    rhs = q ** (k - 1) - q00
                else:
                    rhs = (q**k - 2 * q ** (k - 1) + q00) // (q - 1)
                rep.record("q_zero_targets", lhs1 == lhs2 == rhs, f"t={t} b={b}")
            # adding a coordinate: (q-1) Q^t_{a,b} = Q^{(a/b,t)}_{0,0} - Q^t_{0,0}
            if k + 1 <= K_MAX:
                for b in unit_codes:
                    binv = int(T.inv(np.array([b]))[0])
                    for a in codes:
                        c = int(T.mul(np.array([a]), np.array([binv]))[0])
                        big = table((c,) + tuple(t))
                        rep.record(
                            "q_extra_coordinate",
                            (q - 1) * int(Q[a, b]) == int(big[0, 0]) - q00,
                            f"t={t} a={a} b={b}",
                        )
            # V^{[t]} totals
            counts = hyperplane_counts(K, s, tuple(t))
            vtot = int(counts[1:].sum()) - (q - 1) * int(counts[0])
            rep.record(
                "v_total",
                vtot == q ** (k - 1) - q * int(Q[T.one, 0])
                and vtot * (q - 1) == q * q00 - q ** (k - 1),
                f"t={t}",
            )
            if k == 1:
                t1 = t[0]
                want = np.zeros((q, q), dtype=np.int64)
                want[T.mul(np.full(q, t1), codes), codes] = 1
                rep.record("q_small_k", np.array_equal(Q, want), f"t={t}")
            if k == 2:
                d = int(t[0] == t[1])
                ok = int(Q[0, 0]) == 1 + (q - 1) * d
                ok &= bool(np.all(Q[unit_codes, 0] == 1 - d) and np.all(Q[0, unit_codes] == 1 - d))
                rep.record("q_small_k", ok, f"t={t}")
                v = counts[1:] - counts[0]
                if d:
                    ok = bool(v.min() >= 0) and int(counts[0]) == 0 and v.sum() == q
                else:
                    ok = bool(v.min() >= -1) and int(counts[0]) == 1 and v.sum() == 0
                rep.record("v_pair_values", ok, f"t={t}")

    # special values with t = (1, -1) and (1, 1)
    one = T.one
    m1 = int(T.neg(np.array([one]))[0])
    Qpm = table((one, m1))
    Qpp = table((one, one))
    negc = T.neg(codes)
    rep.record("q_reflection", np.array_equal(Qpm[one, :], Qpm[one, negc]), "Q(1,-1)_{1,w}")
    if p % 2:
        rep.record(
            "q_minus_one_values",
            int(Qpm[one, one]) - 1 == int(Qpm[one, m1]) - 1 == int(Qpp[one, m1]),
            f"{int(Qpm[one, one])}, {int(Qpm[one, m1])}, {int(Qpp[one, m1])}",
        )
        two = T.scalar(2)
        w_star = int(T.power(np.array([two]), (s_inv - 1) % (q - 1))[0])
        odd = (Qpp[one, :] % 2) == 1
        expected = codes == w_star
        rep.record("q_parity", np.array_equal(odd, expected), f"w*={w_star}")
    else:
        rep.skip("q_minus_one_values", "p = 2")
        rep.record("q_parity", bool(np.all(Qpp[one, :] % 2 == 0)), "p = 2 parity")
    return rep
