"""The group algebra of K^x with coefficients in Z[zeta_p].

Elements are dense: ``coeffs[a]`` is the coefficient of [g^a] for the
primitive element g, so multiplication is cyclic convolution over Z/(q-1).
Every identity whose two sides lie in Z[zeta_p] is checked exactly; the
multiplicative characters live in a larger cyclotomic field and are only
evaluated as complex floats.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import algebraic_sets as al
from . import finite_field as ff
from . import weil
from .cyclotomic import CycInt, complex_embed
from .errors import MixedField
from .finite_field import FieldElement, FieldSpec
from .report import Report

FLOAT_TOL = 1e-6


class GroupAlgebraElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: Sequence[CycInt]):
        if len(coeffs) != field.q - 1:
            raise ValueError(f"need {field.q - 1} coefficients, got {len(coeffs)}")
        self.field = field
        self.coeffs = tuple(coeffs)

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, K: FieldSpec) -> GroupAlgebraElement:
        z = CycInt.from_int(K.p, 0)
        return cls(K, [z] * (K.q - 1))

    @classmethod
    def from_ints(cls, K: FieldSpec, values: Iterable[int]) -> GroupAlgebraElement:
        return cls(K, [CycInt.from_int(K.p, int(v)) for v in values])

    @classmethod
    def basis_log(cls, K: FieldSpec, a: int, coeff: int = 1) -> GroupAlgebraElement:
        vals = [0] * (K.q - 1)
        vals[a % (K.q - 1)] = coeff
        return cls.from_ints(K, vals)

    @classmethod
    def basis(cls, K: FieldSpec, u: FieldElement) -> GroupAlgebraElement:
        return cls.basis_log(K, unit_log(K, u))

    @classmethod
    def units(cls, K: FieldSpec) -> GroupAlgebraElement:
        """K^x as the sum of all [u]."""
        return cls.from_ints(K, [1] * (K.q - 1))

    @classmethod
    def subgroup(cls, K: FieldSpec, order: int) -> GroupAlgebraElement:
        m = K.q - 1
        if m % order:
            raise ValueError(f"{order} does not divide {m}")
        step = m // order
        return cls.from_ints(K, [1 if a % step == 0 else 0 for a in range(m)])

    @classmethod
    def from_mapping(
        cls, K: FieldSpec, mapping: Mapping[FieldElement, CycInt | int]
    ) -> GroupAlgebraElement:
        out = [CycInt.from_int(K.p, 0)] * (K.q - 1)
        for u, c in mapping.items():
            if u.is_zero():
                continue  # [0] is the zero of the algebra
            out[unit_log(K, u)] = c if isinstance(c, CycInt) else CycInt.from_int(K.p, c)
        return cls(K, out)

    # -- access --------------------------------------------------------------

    def __getitem__(self, u: FieldElement) -> CycInt:
        return self.coeffs[unit_log(self.field, u)]

    def at_log(self, a: int) -> CycInt:
        return self.coeffs[a % len(self.coeffs)]

    def to_mapping(self) -> dict[FieldElement, CycInt]:
        T = ff.tables(self.field)
        return {self.field.from_code(int(T.exp[a])): c for a, c in enumerate(self.coeffs)}

    # -- arithmetic ----------------------------------------------------------

    def _same(self, other: GroupAlgebraElement):
        if other.field != self.field:
            raise MixedField(f"{self.field} vs {other.field}")

    def __add__(self, other: GroupAlgebraElement) -> GroupAlgebraElement:
        self._same(other)
        return GroupAlgebraElement(self.field, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: GroupAlgebraElement) -> GroupAlgebraElement:
        self._same(other)
        return GroupAlgebraElement(self.field, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> GroupAlgebraElement:
        return GroupAlgebraElement(self.field, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, GroupAlgebraElement):
            return convolve(self, other)
        if isinstance(other, (int, CycInt)):
            return GroupAlgebraElement(self.field, [a * other for a in self.coeffs])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, CycInt)):
            return GroupAlgebraElement(self.field, [a * other for a in self.coeffs])
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def conj(self) -> GroupAlgebraElement:
        return conj_elem(self)

    def twist(self, t: int) -> GroupAlgebraElement:
        return twist(self, t)

    def total(self) -> CycInt:
        return total(self)

    def __repr__(self) -> str:
        body = ", ".join(f"g^{a}: {c}" for a, c in enumerate(self.coeffs) if c)
        return f"GroupAlgebraElement(F_{self.field.q}; {body or '0'})"


def unit_log(K: FieldSpec, u: FieldElement) -> int:
    a = int(ff.tables(K).log[K.code(u)])
    if a < 0:
        raise ValueError("zero is not a unit")
    return a


def convolve(S: GroupAlgebraElement, T: GroupAlgebraElement) -> GroupAlgebraElement:
    """(ST)_w = sum over uv = w of S_u T_v."""
    S._same(T)
    m = len(S.coeffs)
    p = S.field.p
    out = [CycInt.from_int(p, 0)] * m
    t_nz = [(b, c) for b, c in enumerate(T.coeffs) if c]
    for a, sa in enumerate(S.coeffs):
        if not sa:
            continue
        for b, tb in t_nz:
            k = (a + b) % m
            out[k] = out[k] + sa * tb
    return GroupAlgebraElement(S.field, out)


def conj_elem(S: GroupAlgebraElement) -> GroupAlgebraElement:
    m = len(S.coeffs)
    return GroupAlgebraElement(S.field, [S.coeffs[(-a) % m].conj() for a in range(m)])


def twist(S: GroupAlgebraElement, t: int) -> GroupAlgebraElement:
    """S^(t) = sum S_u [u^t]."""
    m = len(S.coeffs)
    out = [CycInt.from_int(S.field.p, 0)] * m
    for a, c in enumerate(S.coeffs):
        k = (a * t) % m
        out[k] = out[k] + c
    return GroupAlgebraElement(S.field, out)


def total(S: GroupAlgebraElement) -> CycInt:
    acc = CycInt.from_int(S.field.p, 0)
    for c in S.coeffs:
        acc = acc + c
    return acc


# ----------------------------------------------------------------------------
# the elements built from Weil sums


def psi_element(K: FieldSpec) -> GroupAlgebraElement:
    T = ff.tables(K)
    return GroupAlgebraElement(K, [CycInt.zeta_power(K.p, int(t)) for t in T.trace_exp])


def weil_element(K: FieldSpec, s: int) -> GroupAlgebraElement:
    H = weil.histogram_matrix(K, s)
    p = K.p
    return GroupAlgebraElement(
        K, [CycInt(p, tuple(int(r[i] - r[p - 1]) for i in range(p - 1))) for r in H]
    )


def _bracket_logs(K: FieldSpec, t: Sequence[FieldElement | int]) -> list[int]:
    """Discrete logs of t (elements, or codes given as ints)."""
    T = ff.tables(K)
    out = []
    for x in t:
        code = x if isinstance(x, (int, np.integer)) else K.code(x)
        if code == 0:
            raise ValueError("t must consist of units")
        out.append(int(T.log[code]))
    return out


def w_bracket(
    K: FieldSpec, s: int, t: Sequence[FieldElement | int], W: GroupAlgebraElement | None = None
) -> GroupAlgebraElement:
    """W^{[t]} = sum_u W_{t_1 u} ... W_{t_k u} [u]."""
    if not 1 <= len(t) <= al.K_MAX:
        raise ValueError(f"k must be in 1..{al.K_MAX}")
    W = W or weil_element(K, s)
    logs = _bracket_logs(K, t)
    m = K.q - 1
    out = []
    for a in range(m):
        c = W.coeffs[(a + logs[0]) % m]
        for l in logs[1:]:
            c = c * W.coeffs[(a + l) % m]
        out.append(c)
    return GroupAlgebraElement(K, out)


def v_element(K: FieldSpec, s: int, t: Sequence[FieldElement | int]) -> GroupAlgebraElement:
    codes = tuple(x if isinstance(x, (int, np.integer)) else K.code(x) for x in t)
    return GroupAlgebraElement.from_ints(K, al.v_bracket_log(K, s, codes))


# ----------------------------------------------------------------------------
# characters (floating point)


@dataclass
class CharacterTable:
    """chi_j(g^a) = exp(2 pi i j a / (q-1)) for the primitive element g."""

    field: FieldSpec
    generator: FieldElement
    log: np.ndarray
    values: np.ndarray  # (q-1, q-1) complex, [j, a]

    def chi(self, j: int, u: FieldElement) -> complex:
        return complex(self.values[j % len(self.values), self.log[self.field.code(u)]])


def character_table(K: FieldSpec) -> CharacterTable:
    T = ff.tables(K)
    m = T.m
    ja = np.outer(np.arange(m), np.arange(m)) % m
    return CharacterTable(K, T.generator, T.log.copy(), np.exp(2j * np.pi * ja / m))


def gauss_sum(table: CharacterTable, j: int) -> complex:
    T = ff.tables(table.field)
    psi = np.exp(2j * np.pi * T.trace_exp / T.p)
    return complex(np.sum(psi * table.values[j % T.m]))


def embed_coeffs(S: GroupAlgebraElement) -> np.ndarray:
    return np.array([complex_embed(c) for c in S.coeffs])


def fourier_coefficient(S: GroupAlgebraElement, j: int, table: CharacterTable | None = None) -> complex:
    table = table or character_table(S.field)
    return complex(np.sum(embed_coeffs(S) * table.values[j % len(table.values)]))


def fourier_transform(S: GroupAlgebraElement, table: CharacterTable | None = None) -> np.ndarray:
    table = table or character_table(S.field)
    return table.values @ embed_coeffs(S)


def fourier_inverse(R: np.ndarray, table: CharacterTable) -> np.ndarray:
    """Coefficients (by discrete log) of the element with transform R."""
    m = len(R)
    return (np.conj(table.values).T @ R) / m


# ----------------------------------------------------------------------------
# identity suites


def _random_element(K: FieldSpec, rng: random.Random, bound: int = 3) -> GroupAlgebraElement:
    p = K.p
    return GroupAlgebraElement(
        K,
        [CycInt(p, tuple(rng.randint(-bound, bound) for _ in range(p - 1))) for _ in range(K.q - 1)],
    )


def _moment(coeffs: Iterable[CycInt], e: int, p: int) -> CycInt:
    acc = CycInt.from_int(p, 0)
    for c in coeffs:
        acc = acc + c**e
    return acc


def _neg_one_log(K: FieldSpec) -> int:
    m = K.q - 1
    return m // 2 if K.p % 2 else 0


def verify_basics(K: FieldSpec, seed: int = 42, trials: int = 3) -> Report:
    rep = Report(f"group algebra basics on F_{K.q}")
    rng = random.Random(seed)
    m = K.q - 1
    p = K.p
    Kx = GroupAlgebraElement.units(K)
    for _ in range(trials):
        S, T = _random_element(K, rng), _random_element(K, rng)
        t = rng.randrange(-2 * m, 2 * m + 1)
        rep.record("ga_twist_total", S.twist(t).total() == S.total(), f"t={t}")
        rep.record("ga_conj_total", S.conj().total() == S.total().conj())
        rep.record("ga_sum_total", (S + T).total() == S.total() + T.total())
        rep.record("ga_product_total", (S * T).total() == S.total() * T.total())
        rep.record("ga_units_absorb", S * Kx == Kx * S.total())
        sq = _moment([c * c.conj() for c in S.coeffs], 1, p)
        rep.record("ga_norm_coefficient", (S * S.conj()).at_log(0) == sq)
    for d in range(1, m + 1):
        if m % d:
            continue
        H = GroupAlgebraElement.subgroup(K, d)
        ok = H.conj() == H.twist(-1) == H and H * H == H * d
        rep.record("ga_subgroup", ok, f"subgroup of order {d}")
    return rep


def verify_identities(
    K: FieldSpec,
    s: int,
    *,
    seed: int = 42,
    samples: int = 20,
    exhaustive_q: int = 7,
) -> Report:
    """Exact check of every group-algebra identity for the pair (K, s)."""
    weil.require_invertible(K, s)
    q, p = K.q, K.p
    m = q - 1
    rep = Report(f"group algebra identities on F_{q}, s={s}")
    rng = random.Random(seed)
    Tb = ff.tables(K)
    one = GroupAlgebraElement.basis_log(K, 0)
    Kx = GroupAlgebraElement.units(K)
    Psi = psi_element(K)
    W = weil_element(K, s)

    rep.merge(verify_basics(K, seed))

    # W from Psi
    s_inv = ff.mod_inverse(s, m)
    rep.record("w_from_psi", W == Psi * Psi.twist(s_inv).conj() + Kx)
    for t in range(1, max(m, 2)):
        if math.gcd(t, m) != 1:
            continue
        Pt = Psi.twist(t)
        rep.record("psi_norm", Pt * Pt.conj() == one * q - Kx, f"t={t}")
    rep.record("psi_total", Psi.total() == -1)
    rep.record("w_norm", W.total() == q and W * W.conj() == one * (q * q))
    rep.record("w_total", W.total() == q)

    # W^{[t]} and V^{[t]}
    exhaustive = q <= exhaustive_q
    for k in range(1, 4):
        for t in al.sample_t(q, k, exhaustive, samples, rng):
            Wt = w_bracket(K, s, t, W)
            Vt = v_element(K, s, t)
            rep.record("w_bracket_factor", Wt == W * Vt, f"k={k} t={t}")
            q00 = int(al._q_table(K, s, tuple(t))[0, 0])
            want = (q * q * q00 - q**k) // (q - 1)
            rep.record("w_bracket_total", Wt.total() == want and (q * q * q00 - q**k) % (q - 1) == 0, f"t={t}")
            if k == 3:
                t12 = tuple(t[:2])
                inv3 = int(Tb.log[t[2]])
                v12 = al.v_bracket_log(K, s, t12)
                rep.record("w_triple_totals", Wt.total() == q * q * int(v12[(-inv3) % m]), f"t={t}")
    for t1 in range(1, q):
        for t2 in range(1, q):
            tot = w_bracket(K, s, (t1, t2), W).total()
            rep.record("w_pair_totals", tot == (q * q if t1 == t2 else 0), f"t=({t1},{t2})")
    one_c = Tb.one
    V = al.v_bracket_log(K, s, (one_c, one_c))
    W4 = w_bracket(K, s, (one_c,) * 4, W)
    rep.record("w_fourth_total", W4.total() == q * q * int(np.sum(V.astype(object) ** 2)))

    # laterally symmetrized sums, every k dividing p - 1
    gamma = ff.primitive_root_mod_p(p)
    V1 = int(V[0])
    Vm1 = int(V[_neg_one_log(K)])
    for k in range(1, p):
        if (p - 1) % k:
            continue
        lam = pow(gamma, (p - 1) // k, p) if p > 2 else 1
        lam_log = int(Tb.log[Tb.scalar(lam)])
        Tk = GroupAlgebraElement.zero(K)
        for i in range(k):
            Tk = Tk + GroupAlgebraElement.basis_log(K, i * lam_log)
        Omega = GroupAlgebraElement(
            K,
            [_moment([W.coeffs[(a + i * lam_log) % m] for i in range(k)], 1, p) for a in range(m)],
        )
        rep.record("omega_factor", Omega == W * Tk, f"k={k}")
        rep.record("omega_moment_0", _moment(Omega.coeffs, 0, p) == q - 1, f"k={k}")
        rep.record("omega_moment_1", _moment(Omega.coeffs, 1, p) == k * q, f"k={k}")
        rep.record("omega_moment_2", _moment(Omega.coeffs, 2, p) == k * q * q, f"k={k}")
        if k == 2:
            rep.record(
                "omega_moment_3",
                _moment(Omega.coeffs, 3, p) == 2 * q * q * (V1 + 3 * Vm1),
            )

    if p == 2:
        for name in ("phi_factor", "uv_counts", "u_symmetry", "u_special_values", "uv_totals"):
            rep.skip(name, "p = 2")
        for name in ("phi_moment_1", "phi_moment_2", "phi_omega_moment", "phi_moment_4", "omega_moment_3"):
            rep.skip(name, "p = 2")
        return rep

    # bilateral symmetry (p odd)
    h = _neg_one_log(K)
    m1_code = int(Tb.exp[h])
    U = al.v_bracket_log(K, s, (one_c, m1_code))
    S2 = one - GroupAlgebraElement.basis_log(K, h)
    T2 = one + GroupAlgebraElement.basis_log(K, h)
    Phi = GroupAlgebraElement(K, [W.coeffs[a] - W.coeffs[(a + h) % m] for a in range(m)])
    Omega2 = GroupAlgebraElement(K, [W.coeffs[a] + W.coeffs[(a + h) % m] for a in range(m)])
    Upsilon = GroupAlgebraElement(K, [c * c for c in Phi.coeffs])
    Ue = GroupAlgebraElement.from_ints(K, U)
    Ve = GroupAlgebraElement.from_ints(K, V)
    rep.record("phi_factor", Phi == W * S2 and Upsilon == W * (T2 * Ve - Ue * 2))

    Qpm = al._q_table(K, s, (one_c, m1_code))
    Qpp = al._q_table(K, s, (one_c, one_c))
    units_by_log = Tb.exp
    rep.record(
        "uv_counts",
        np.array_equal(U, Qpm[one_c, units_by_log] - 1)
        and np.array_equal(V, Qpp[one_c, units_by_log])
        and U.min() >= -1
        and V.min() >= 0,
    )
    shift = (np.arange(m) + h) % m
    rep.record("u_symmetry", np.array_equal(U, U[shift]))
    rep.record("u_special_values", int(U[0]) == int(U[h]) == Vm1)
    rep.record("uv_totals", int(U.sum()) == 0 and int(V.sum()) == q)

    rep.record("phi_moment_1", _moment(Phi.coeffs, 1, p) == 0)
    rep.record("phi_moment_2", _moment(Phi.coeffs, 2, p) == 2 * q * q)
    mixed = _moment([a * a * b for a, b in zip(Phi.coeffs, Omega2.coeffs)], 1, p)
    rep.record("phi_omega_moment", mixed == 2 * q * q * (V1 - Vm1))
    rhs = sum(int(V[a] + V[(a + h) % m] - 2 * U[a]) ** 2 for a in range(m))
    rep.record("phi_moment_4", _moment(Phi.coeffs, 4, p) == q * q * rhs)
    return rep


def verify_characters(K: FieldSpec, *, seed: int = 42, trials: int = 3) -> Report:
    """Floating-point checks of Gauss sums and the Fourier transform."""
    rep = Report(f"characters on F_{K.q}")
    rng = random.Random(seed)
    q = K.q
    m = q - 1
    table = character_table(K)
    G = np.array([gauss_sum(table, j) for j in range(m)])
    rep.record("gauss_trivial", abs(G[0] - (-1)) < FLOAT_TOL, f"G(chi_0)={G[0]}")
    for j in range(1, m):
        rep.record("gauss_norm", abs(abs(G[j]) ** 2 - q) < FLOAT_TOL, f"j={j} |G|^2={abs(G[j])**2}")
    h = _neg_one_log(K)
    for j in range(m):
        chi_m1 = table.values[j, h]
        rep.record(
            "gauss_conj",
            abs(np.conj(G[j]) - chi_m1 * G[(-j) % m]) < FLOAT_TOL,
            f"j={j}",
        )
    Kx = GroupAlgebraElement.units(K)
    FK = fourier_transform(Kx, table)
    rep.record("fourier_units", abs(FK[0] - m) < FLOAT_TOL and np.all(np.abs(FK[1:]) < FLOAT_TOL))
    for _ in range(trials):
        S, T = _random_element(K, rng), _random_element(K, rng)
        FS, FT = fourier_transform(S, table), fourier_transform(T, table)
        rep.record("fourier_total", abs(FS[0] - complex_embed(S.total())) < FLOAT_TOL)
        t = rng.randrange(1, 2 * m + 1)
        FSt = fourier_transform(S.twist(t), table)
        rep.record("fourier_twist", np.allclose(FSt, FS[(np.arange(m) * t) % m], atol=FLOAT_TOL))
        rep.record("fourier_conj", np.allclose(fourier_transform(S.conj(), table), np.conj(FS), atol=FLOAT_TOL))
        rep.record("fourier_product", np.allclose(fourier_transform(S * T, table), FS * FT, atol=FLOAT_TOL))
        back = fourier_inverse(FS, table)
        rep.record("fourier_inversion", np.allclose(back, embed_coeffs(S), atol=FLOAT_TOL))
    return rep
