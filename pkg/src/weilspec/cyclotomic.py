"""Exact arithmetic in Z[zeta_p].

A :class:`CycInt` is stored in the reduced basis 1, z, ..., z^(p-2), which
is unique, so equality and hashing are coefficient-wise.  Sums of p-th roots
of unity arrive as a :class:`Histogram` (counts w_0..w_{p-1}) and reduce via
z^(p-1) = -(1 + z + ... + z^(p-2)).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import BadIndex, MixedPrime, WrongResidue
from .finite_field import is_prime, primitive_root_mod_p


def _reduce_full(p: int, w: Sequence[int]) -> tuple[int, ...]:
    """Coefficients of sum w_i z^i (i < p) in the reduced basis."""
    last = w[p - 1]
    return tuple(w[i] - last for i in range(p - 1))


@dataclass(frozen=True)
class CycInt:
    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.p - 1:
            raise ValueError(f"expected {self.p - 1} coefficients, got {len(self.coeffs)}")

    # -- construction ------------------------------------------------------

    @classmethod
    def from_int(cls, p: int, r: int) -> CycInt:
        return cls(p, (r,) + (0,) * (p - 2))

    @classmethod
    def zeta_power(cls, p: int, k: int) -> CycInt:
        w = [0] * p
        w[k % p] = 1
        return cls(p, _reduce_full(p, w))

    @classmethod
    def from_powers(cls, p: int, w: Sequence[int]) -> CycInt:
        """sum w_i z^i for a length-p (or shorter) sequence w."""
        full = list(w) + [0] * (p - len(w))
        if len(full) != p:
            raise ValueError("too many coefficients")
        return cls(p, _reduce_full(p, full))

    # -- ring operations ---------------------------------------------------

    def _check(self, other: CycInt):
        if other.p != self.p:
            raise MixedPrime(f"p={self.p} vs p={other.p}")

    def _coerce(self, other) -> CycInt | None:
        if isinstance(other, CycInt):
            self._check(other)
            return other
        if isinstance(other, int):
            return CycInt.from_int(self.p, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycInt(self.p, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycInt(self.p, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.p, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.p
        w = [0] * p
        a_nz = [(i, a) for i, a in enumerate(self.coeffs) if a]
        b_nz = [(j, b) for j, b in enumerate(o.coeffs) if b]
        for i, a in a_nz:
            for j, b in b_nz:
                k = i + j
                if k >= p:
                    k -= p
                w[k] += a * b
        return CycInt(p, _reduce_full(p, w))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = CycInt.from_int(self.p, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == CycInt.from_int(self.p, other).coeffs
        if isinstance(other, CycInt):
            return self.p == other.p and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    # -- conveniences --------------------------------------------------------

    def galois(self, j: int) -> CycInt:
        return galois_apply(self, j)

    def conj(self) -> CycInt:
        return conj(self)

    def to_complex(self) -> complex:
        return complex_embed(self)

    def rational(self) -> int | None:
        return is_rational(self)

    def __str__(self) -> str:
        return render(self)

    def to_json(self) -> dict:
        return {"p": self.p, "coeffs": list(self.coeffs)}


@dataclass(frozen=True)
class Histogram:
    """Counts w_0..w_{p-1} meaning sum w_i z^i, with ``total == sum(w)``."""

    p: int
    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def reduce(self) -> CycInt:
        return CycInt(self.p, _reduce_full(self.p, self.counts))


@dataclass(frozen=True)
class QuadDecomp:
    """The element (I + J*sqrt(p))/2."""

    I: int  # noqa: E741
    J: int
    p: int

    def __str__(self) -> str:
        return f"({self.I}{self.J:+d}*sqrt({self.p}))/2"

    def to_float(self) -> float:
        return (self.I + self.J * math.sqrt(self.p)) / 2


def _same_p(a: CycInt, b: CycInt):
    if a.p != b.p:
        raise MixedPrime(f"p={a.p} vs p={b.p}")


def add(a: CycInt, b: CycInt) -> CycInt:
    _same_p(a, b)
    return a + b


def mul(a: CycInt, b: CycInt) -> CycInt:
    _same_p(a, b)
    return a * b


def scale(a: CycInt, k: int) -> CycInt:
    return a * int(k)


def galois_apply(a: CycInt, j: int) -> CycInt:
    """Apply the automorphism z -> z^j."""
    p = a.p
    if j % p == 0:
        raise BadIndex(f"{j} is not a unit mod {p}")
    w = [0] * p
    for i, c in enumerate(a.coeffs):
        w[i * j % p] += c
    return CycInt(p, _reduce_full(p, w))


def conj(a: CycInt) -> CycInt:
    return galois_apply(a, -1)


def is_rational(a: CycInt) -> int | None:
    if any(a.coeffs[1:]):
        return None
    return a.coeffs[0]


def _residue_classes(p: int) -> tuple[list[int], list[int]]:
    squares = sorted({i * i % p for i in range(1, p)})
    non = [i for i in range(1, p) if i not in set(squares)]
    return squares, non


def quad_decompose(a: CycInt) -> QuadDecomp | None:
    """Write a as (I + J*sqrt(p))/2 when it lies in Q(sqrt(p)), else None.

    Requires p = 1 (mod 4).  Membership is read off the expansion
    a = sum w_i z^i: the w_i must be constant on the quadratic residues and
    on the non-residues, and then I = 2 w_0 - (w_+ + w_-), J = w_+ - w_-.
    """
    p = a.p
    if p % 4 != 1:
        raise WrongResidue(f"p = {p} is not 1 mod 4")
    w = list(a.coeffs) + [0]
    res, non = _residue_classes(p)
    wp, wm = w[res[0]], w[non[0]]
    if any(w[i] != wp for i in res) or any(w[i] != wm for i in non):
        return None
    return QuadDecomp(2 * w[0] - (wp + wm), wp - wm, p)


def gauss_sum_quadratic(p: int) -> CycInt:
    """sum over i in F_p^x of legendre(i) z^i."""
    res, non = _residue_classes(p)
    w = [0] * p
    for i in res:
        w[i] = 1
    for i in non:
        w[i] = -1
    return CycInt.from_powers(p, w)


def from_quad(d: QuadDecomp) -> CycInt:
    """Inverse of :func:`quad_decompose` (requires I = J mod 2)."""
    if (d.I - d.J) % 2:
        raise ValueError("I and J must have the same parity")
    # (I + J sqrt p)/2 = (I + J)/2 + J * (sqrt(p) - 1)/2 and (sqrt(p)-1)/2 = sum_res z^i
    res, _ = _residue_classes(d.p)
    w = [0] * d.p
    w[0] = (d.I + d.J) // 2
    for i in res:
        w[i] += d.J
    return CycInt.from_powers(d.p, w)


def vp_int(x: int, p: int) -> float | int:
    """p-adic valuation of a rational integer; ``math.inf`` for zero."""
    if x == 0:
        return math.inf
    x = abs(x)
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k


def complex_embed(a: CycInt) -> complex:
    z = cmath.exp(2j * math.pi / a.p)
    total = 0j
    zk = 1 + 0j
    for c in a.coeffs:
        total += c * zk
        zk *= z
    return total


def galois_generator(p: int) -> int:
    """The integer gamma for which z -> z^gamma generates the Galois group."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return primitive_root_mod_p(p)


def render(a: CycInt) -> str:
    """Integer, quadratic form when available, else reduced coefficients."""
    r = is_rational(a)
    if r is not None:
        return str(r)
    if a.p % 4 == 1:
        d = quad_decompose(a)
        if d is not None:
            return str(d)
    terms = []
    for i, c in enumerate(a.coeffs):
        if c == 0:
            continue
        mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
        terms.append(f"{c}*{mono}" if mono else str(c))
    return " + ".join(terms).replace("+ -", "- ") + f" (p={a.p})"
