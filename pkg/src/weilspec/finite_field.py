"""Exact arithmetic in F_{p^n}.

Elements are polynomials over F_p reduced modulo a monic irreducible
``modulus``; coefficient sequences are stored constant term first.

Every element also has an integer *code* in ``[0, q)`` whose base-p digits,
most significant first, are the coefficients ``c_0, c_1, ..., c_{n-1}``.
Code order is therefore the coefficient-lexicographic order with the
constant term most significant, and it is the enumeration order used for
every "first"/"smallest" choice in this package.  The vectorized helpers in
:class:`FieldTables` work on codes.
"""

from __future__ import annotations

import builtins
import functools
import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import DivisionByZero, NotCoprime, NotPrime, Reducible, TooLarge

MAX_Q = 1 << 20

_ipow = builtins.pow  # integer pow; the module-level name is the field power


# ----------------------------------------------------------------------------
# small integer helpers


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in ascending order."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, n)`` with ``q == p**n`` or None if q is not a prime power."""
    if q < 2:
        return None
    fs = prime_factors(q)
    if len(fs) != 1:
        return None
    p = fs[0]
    n = round(math.log(q, p))
    for cand in (n - 1, n, n + 1):
        if cand >= 1 and p**cand == q:
            return p, cand
    return None


def mod_inverse(s: int, m: int) -> int:
    """The unique t in [1, m) with s*t = 1 (mod m); for m == 1 returns 1."""
    if m < 1:
        raise ValueError("modulus must be positive")
    if math.gcd(s, m) != 1:
        raise NotCoprime(f"gcd({s}, {m}) != 1")
    if m == 1:
        return 1
    return _ipow(s, -1, m)


def multiplicative_order(a: int, m: int) -> int:
    a %= m
    if math.gcd(a, m) != 1:
        raise NotCoprime(f"{a} is not a unit mod {m}")
    k, x = 1, a
    while x != 1 % m:
        x = x * a % m
        k += 1
    return k


def primitive_root_mod_p(p: int) -> int:
    """Smallest generator of (Z/p)^x."""
    if not is_prime(p):
        raise NotPrime(p)
    if p == 2:
        return 1
    fs = prime_factors(p - 1)
    for g in range(2, p):
        if all(_ipow(g, (p - 1) // r, p) != 1 for r in fs):
            return g
    raise AssertionError("unreachable")


def is_invertible_exponent(q: int, s: int) -> bool:
    if s < 1:
        return False
    return math.gcd(s, q - 1) == 1


# ----------------------------------------------------------------------------
# polynomials over F_p (lists, constant term first)


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo f over F_p (f need not be monic)."""
    r = [c % p for c in a]
    _trim(r)
    f = _trim([c % p for c in f])
    df = len(f) - 1
    lead_inv = _ipow(f[-1], -1, p)
    while len(r) - 1 >= df and r:
        c = r[-1] * lead_inv % p
        shift = len(r) - 1 - df
        for i, fc in enumerate(f):
            r[shift + i] = (r[shift + i] - c * fc) % p
        _trim(r)
    return r


def _is_irreducible(f: Sequence[int], p: int) -> bool:
    n = len(f) - 1
    if n <= 1:
        return True
    # no roots
    for x in range(p):
        v = 0
        for c in reversed(f):
            v = (v * x + c) % p
        if v == 0:
            return False
    # no monic factor of degree 2..n//2
    for d in range(2, n // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(f, list(low) + [1], p):
                return False
    return True


# ----------------------------------------------------------------------------
# field and element types


@dataclass(frozen=True)
class FieldSpec:
    """The field F_p[x]/(modulus) of order q = p**n."""

    p: int
    n: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.n

    @property
    def zero(self) -> FieldElement:
        return FieldElement((0,) * self.n)

    @property
    def one(self) -> FieldElement:
        return FieldElement((1,) + (0,) * (self.n - 1))

    def element(self, value: int | Sequence[int]) -> FieldElement:
        """Build an element from coefficients, or embed an integer of F_p."""
        if isinstance(value, (int, np.integer)):
            return FieldElement((int(value) % self.p,) + (0,) * (self.n - 1))
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) > self.n:
            raise ValueError(f"too many coefficients for F_{self.q}")
        return FieldElement(coeffs + (0,) * (self.n - len(coeffs)))

    def from_code(self, code: int) -> FieldElement:
        code = int(code)
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} out of range for F_{self.q}")
        digits = []
        for _ in range(self.n):
            code, d = divmod(code, self.p)
            digits.append(d)
        return FieldElement(tuple(reversed(digits)))

    def code(self, x: FieldElement) -> int:
        c = 0
        for d in x.coeffs:
            c = c * self.p + d
        return c

    def __str__(self) -> str:
        base = str(self.p) if self.n == 1 else f"{self.p}^{self.n}"
        if self.n == 1:
            return base
        return base + ":" + ",".join(map(str, self.modulus))


@dataclass(frozen=True)
class FieldElement:
    coeffs: tuple[int, ...]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self) -> str:
        if len(self.coeffs) == 1:
            return str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"


def make_field(p: int, n: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Construct F_{p^n}.

    Without a modulus the lexicographically smallest monic irreducible of
    degree n is used (lower coefficients compared constant term first);
    for n == 1 that is ``x``.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if n < 1:
        raise ValueError("extension degree must be >= 1")
    if p**n > MAX_Q:
        raise TooLarge(f"{p}^{n} exceeds the supported field size {MAX_Q}")
    if modulus is not None:
        mod = tuple(int(c) for c in modulus)
        if len(mod) != n + 1 or mod[-1] % p != 1:
            raise ValueError(f"modulus must be monic of degree {n}")
        if any(not 0 <= c < p for c in mod):
            raise ValueError("modulus coefficients must lie in [0, p)")
        if not _is_irreducible(mod, p):
            raise Reducible(f"{mod} factors over F_{p}")
        return FieldSpec(p, n, mod)
    for low in itertools.product(range(p), repeat=n):
        cand = low + (1,)
        if _is_irreducible(cand, p):
            return FieldSpec(p, n, cand)
    raise AssertionError("no irreducible polynomial found")


def parse_field(text: str) -> FieldSpec:
    """Parse ``"p"``, ``"p^n"`` or ``"p^n:c0,c1,...,cn"``."""
    text = text.strip()
    head, _, mod_text = text.partition(":")
    try:
        if "^" in head:
            ps, ns = head.split("^", 1)
            p, n = int(ps), int(ns)
        else:
            pp = prime_power(int(head))
            if pp is None:
                raise NotPrime(f"{head} is not a prime power")
            p, n = pp
        modulus = [int(c) for c in mod_text.split(",")] if mod_text else None
    except NotPrime:
        raise
    except ValueError as exc:
        raise ValueError(f"cannot parse field spec {text!r}") from exc
    return make_field(p, n, modulus)


# ----------------------------------------------------------------------------
# element arithmetic


def add(K: FieldSpec, x: FieldElement, y: FieldElement) -> FieldElement:
    return FieldElement(tuple((a + b) % K.p for a, b in zip(x.coeffs, y.coeffs)))


def sub(K: FieldSpec, x: FieldElement, y: FieldElement) -> FieldElement:
    return FieldElement(tuple((a - b) % K.p for a, b in zip(x.coeffs, y.coeffs)))


def neg(K: FieldSpec, x: FieldElement) -> FieldElement:
    return FieldElement(tuple(-a % K.p for a in x.coeffs))


def mul(K: FieldSpec, x: FieldElement, y: FieldElement) -> FieldElement:
    p, n = K.p, K.n
    prod = [0] * (2 * n - 1)
    for i, a in enumerate(x.coeffs):
        if a:
            for j, b in enumerate(y.coeffs):
                prod[i + j] += a * b
    r = _poly_mod(prod, K.modulus, p)
    return FieldElement(tuple(r) + (0,) * (n - len(r)))


def pow(K: FieldSpec, x: FieldElement, e: int) -> FieldElement:  # noqa: A001
    """Square-and-multiply; ``pow(K, x, 0)`` is one for every x."""
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    result = K.one
    base = x
    while e:
        if e & 1:
            result = mul(K, result, base)
        base = mul(K, base, base)
        e >>= 1
    return result


def inv(K: FieldSpec, x: FieldElement) -> FieldElement:
    if x.is_zero():
        raise DivisionByZero("inverse of zero")
    return pow(K, x, K.q - 2)


def div(K: FieldSpec, x: FieldElement, y: FieldElement) -> FieldElement:
    return mul(K, x, inv(K, y))


def trace(K: FieldSpec, x: FieldElement) -> int:
    """Absolute trace x + x^p + ... + x^(q/p), returned as an integer mod p."""
    total = K.zero
    y = x
    for _ in range(K.n):
        total = add(K, total, y)
        y = pow(K, y, K.p)
    if any(total.coeffs[1:]):
        raise AssertionError("trace left the prime field")
    return total.coeffs[0]


def enumerate_field(K: FieldSpec) -> list[FieldElement]:
    """All q elements in code order (zero first)."""
    return [K.from_code(c) for c in range(K.q)]


def units(K: FieldSpec) -> list[FieldElement]:
    return [K.from_code(c) for c in range(1, K.q)]


def iter_units(K: FieldSpec) -> Iterator[FieldElement]:
    for c in range(1, K.q):
        yield K.from_code(c)


def element_order(K: FieldSpec, x: FieldElement) -> int:
    if x.is_zero():
        raise DivisionByZero("zero has no multiplicative order")
    m = K.q - 1
    order = m
    for r in prime_factors(m):
        while order % r == 0 and pow(K, x, order // r) == K.one:
            order //= r
    return order


@functools.lru_cache(maxsize=None)
def primitive_element(K: FieldSpec) -> FieldElement:
    """First generator of K^x in enumeration order."""
    m = K.q - 1
    fs = prime_factors(m)
    for code in range(1, K.q):
        x = K.from_code(code)
        if all(pow(K, x, m // r) != K.one for r in fs):
            return x
    raise AssertionError("no primitive element found")


# ----------------------------------------------------------------------------
# vectorized tables over element codes


class FieldTables:
    """Lookup tables for fast arithmetic on arrays of element codes.

    ``exp[k]`` is the code of g**k for the primitive element g and ``log`` is
    its inverse on units (``log[0] == -1``).  ``trace[c]`` is the absolute
    trace of the element with code c.
    """

    def __init__(self, K: FieldSpec):
        self.K = K
        p, n, q = K.p, K.n, K.q
        self.p, self.n, self.q, self.m = p, n, q, q - 1
        self.weights = p ** np.arange(n - 1, -1, -1, dtype=np.int64)
        codes = np.arange(q, dtype=np.int64)
        self.digits = (codes[:, None] // self.weights[None, :]) % p
        self.one = int(self.weights[0])

        g = primitive_element(K)
        self.generator = g
        exp = np.empty(self.m, dtype=np.int64)
        x = K.one
        for k in range(self.m):
            exp[k] = K.code(x)
            x = mul(K, x, g)
        self.exp = exp
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(self.m, dtype=np.int64)
        self.log = log

        basis_tr = np.array(
            [trace(K, K.element([0] * i + [1])) for i in range(n)], dtype=np.int64
        )
        self.trace = (self.digits @ basis_tr) % p
        self.trace_exp = self.trace[exp]

    def _from_digits(self, d: np.ndarray) -> np.ndarray:
        return (d % self.p) @ self.weights

    def add(self, a, b):
        return self._from_digits(self.digits[a] + self.digits[b])

    def sub(self, a, b):
        return self._from_digits(self.digits[a] - self.digits[b])

    def neg(self, a):
        return self._from_digits(-self.digits[a])

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self.exp[(self.log[a] + self.log[b]) % self.m]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero")
        return self.exp[(-self.log[a]) % self.m]

    def power(self, a, e: int):
        """Elementwise a**e for e >= 1 (so 0**e == 0); e == 0 gives one."""
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.full_like(a, self.one)
        out = self.exp[(self.log[a] * (e % self.m)) % self.m]
        return np.where(a == 0, 0, out)

    def scalar(self, c: int) -> int:
        """Code of the prime-field element c."""
        return (c % self.p) * self.one

    def code(self, x: FieldElement) -> int:
        return self.K.code(x)

    def element(self, code: int) -> FieldElement:
        return self.K.from_code(int(code))


@functools.lru_cache(maxsize=64)
def tables(K: FieldSpec) -> FieldTables:
    return FieldTables(K)
