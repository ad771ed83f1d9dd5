"""Exact arithmetic in Z/p^N Z, viewed as precision-N truncations of Z_p.

Every value carries its own (p, N); operations between values with
different parameters are contract violations and raise immediately.
Residues are canonical in [0, p^N), so equality is plain equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import NotInvertibleError


def is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PadicInt:
    """An element of Z_p known modulo p**precision."""

    p: int
    precision: int
    residue: int

    def __post_init__(self):
        if not is_odd_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.precision < 1:
            raise ValueError(f"precision must be a positive integer, got {self.precision}")
        object.__setattr__(self, "residue", self.residue % self.p**self.precision)

    @property
    def modulus(self) -> int:
        return self.p**self.precision

    def _require_compatible(self, other: "PadicInt") -> None:
        if not isinstance(other, PadicInt):
            raise TypeError(f"expected PadicInt, got {type(other).__name__}")
        if (self.p, self.precision) != (other.p, other.precision):
            raise ValueError(
                f"mixed p-adic parameters: (p={self.p}, N={self.precision}) vs "
                f"(p={other.p}, N={other.precision})"
            )

    def __add__(self, other: "PadicInt") -> "PadicInt":
        self._require_compatible(other)
        return PadicInt(self.p, self.precision, self.residue + other.residue)

    def __sub__(self, other: "PadicInt") -> "PadicInt":
        self._require_compatible(other)
        return PadicInt(self.p, self.precision, self.residue - other.residue)

    def __mul__(self, other: "PadicInt") -> "PadicInt":
        self._require_compatible(other)
        return PadicInt(self.p, self.precision, self.residue * other.residue)

    def __neg__(self) -> "PadicInt":
        return PadicInt(self.p, self.precision, -self.residue)

    def __pow__(self, exponent: int) -> "PadicInt":
        """Integer power by repeated multiplication (negative needs a unit base)."""
        if not isinstance(exponent, int):
            raise TypeError("use pow_one_unit for p-adic exponents")
        if exponent < 0 and not self.is_unit():
            raise NotInvertibleError("not invertible at this precision")
        return PadicInt(self.p, self.precision, pow(self.residue, exponent, self.modulus))

    def is_unit(self) -> bool:
        return self.residue % self.p != 0

    def is_zero(self) -> bool:
        return self.residue == 0

    def __int__(self) -> int:
        return self.residue

    def __repr__(self) -> str:
        return f"PadicInt({self.residue} mod {self.p}^{self.precision})"


#: Exponents acting on pro-p groups: plain integers act on anything,
#: a PadicInt exponent only on principal units (bases ≡ 1 mod p).
PadicExponent = Union[int, PadicInt]


def val(x: PadicInt):
    """p-adic valuation of the residue; ``math.inf`` when it is 0 mod p^N.

    A zero residue only certifies valuation >= N, which the infinite
    sentinel encodes (comparisons like ``val(x) >= k`` stay meaningful).
    """
    if x.residue == 0:
        return math.inf
    v = 0
    r = x.residue
    while r % x.p == 0:
        r //= x.p
        v += 1
    return v


def inv(x: PadicInt) -> PadicInt:
    """Multiplicative inverse of a unit mod p^N."""
    if not x.is_unit():
        raise NotInvertibleError("not invertible at this precision")
    return PadicInt(x.p, x.precision, pow(x.residue, -1, x.modulus))


def teichmuller(a: int, p: int, precision: int) -> PadicInt:
    """The unique (p-1)-st root of unity congruent to a mod p.

    Computed as a^(p^(N-1)) mod p^N: iterating x -> x^p contracts the
    unit group onto its torsion, and N-1 steps land exactly at precision N.
    """
    if a % p == 0:
        raise ValueError("no Teichmuller representative for residues divisible by p")
    modulus = p**precision
    z = pow(a % p, p ** (precision - 1), modulus)
    return PadicInt(p, precision, z)


def binom(e: PadicExponent, k: int, *, p: int | None = None, precision: int | None = None) -> PadicInt:
    """Binomial coefficient e(e-1)...(e-k+1)/k! reduced mod p^N.

    Always integral: binomial coefficients of p-adic integers are p-adic
    integers.  For a plain-int exponent the value is exact.  For a
    PadicInt exponent the canonical representative in [0, p^N) is used;
    the result can deviate from the true coefficient only above precision
    N - v_p(k!), which is harmless wherever these coefficients multiply a
    k-th power of something divisible by p (the one-unit power series).
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if isinstance(e, PadicInt):
        p, precision = e.p, e.precision
        rep = e.residue
    else:
        if p is None or precision is None:
            raise ValueError("a plain integer exponent needs explicit p and precision")
        rep = e
    num = 1
    for i in range(k):
        num *= rep - i
    # k consecutive integers are divisible by k!, so this division is exact.
    return PadicInt(p, precision, num // math.factorial(k))


def pow_one_unit(u: PadicInt, e: PadicExponent) -> PadicInt:
    """Raise a principal unit (u ≡ 1 mod p) to an integer or p-adic power.

    Evaluates the binomial series sum_k C(e,k) (u-1)^k truncated at k = N
    terms, which is exact mod p^N because val((u-1)^k) >= k.  For integer
    exponents this agrees with repeated multiplication.
    """
    if u.residue % u.p != 1:
        raise ValueError("base must be a principal unit (≡ 1 mod p)")
    if isinstance(e, PadicInt):
        u._require_compatible(e)
    modulus = u.modulus
    x = (u.residue - 1) % modulus
    acc = 0
    xk = 1
    for k in range(u.precision):
        c = binom(e, k, p=u.p, precision=u.precision)
        acc = (acc + c.residue * xk) % modulus
        xk = (xk * x) % modulus
    return PadicInt(u.p, u.precision, acc)
