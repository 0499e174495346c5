"""The group of truncated reparametrizations of a curve parameter.

An element is a polynomial t -> a_1*t + a_2*t^2 + ... + a_k*t^k with
a_1 != 0, composed modulo t^(k+1). Its matrix realization M has entry
(i, j) equal to the coefficient of t^j in the i-th power of the
polynomial, i.e. the sum over compositions of j into i positive parts
s_1 + ... + s_i = j of the products a_{s_1} * ... * a_{s_i}. The matrix
is upper triangular with diagonal a_1^i, and composition of group
elements corresponds to the matrix product: M(f o g) = M(f) M(g).
Jets are multiplied by M on the right.

Unipotent elements are exactly those with a_1 = 1.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Tuple

from .errors import DomainError
from .exact import ExactMatrix, parse_rat, rat, rat_str


@dataclass(frozen=True)
class Reparam:
    """Coefficients (a_1, ..., a_k) of a truncated reparametrization."""

    k: int
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(rat(c) for c in self.coeffs)
        if len(coeffs) != self.k or self.k < 1:
            raise ValueError(f"need exactly k={self.k} coefficients")
        if coeffs[0] == 0:
            raise DomainError("leading coefficient a_1 must be nonzero")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def of(cls, k: int, coeffs: Sequence) -> "Reparam":
        return cls(k, tuple(rat(c) for c in coeffs))

    @classmethod
    def identity(cls, k: int) -> "Reparam":
        return cls(k, (Fraction(1),) + (Fraction(0),) * (k - 1))

    def is_identity(self) -> bool:
        return self == Reparam.identity(self.k)

    def to_json(self):
        return {"k": self.k, "coeffs": [rat_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data) -> "Reparam":
        return cls(data["k"], tuple(parse_rat(c) for c in data["coeffs"]))


def is_unipotent(f: Reparam) -> bool:
    return f.coeffs[0] == 1


@lru_cache(maxsize=None)
def compositions(total: int, parts: int) -> tuple:
    """Ordered compositions of `total` into `parts` positive parts."""
    if parts < 1 or total < parts:
        return ()
    if parts == 1:
        return ((total,),)
    out = []
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            out.append((first,) + rest)
    # guard on the enumeration itself
    assert len(out) == math.comb(total - 1, parts - 1)
    return tuple(out)


def group_matrix(f: Reparam) -> ExactMatrix:
    """The k x k upper-triangular matrix realizing f on jet columns."""
    k = f.k
    a = f.coeffs
    entries = [[Fraction(0)] * k for _ in range(k)]
    for i in range(1, k + 1):
        for j in range(i, k + 1):
            total = Fraction(0)
            for comp in compositions(j, i):
                prod = Fraction(1)
                for s in comp:
                    prod *= a[s - 1]
                total += prod
            entries[i - 1][j - 1] = total
    return ExactMatrix(k, k, entries)


def _trunc_mul(x: Sequence[Fraction], y: Sequence[Fraction], k: int) -> list:
    """Product of two polynomials with zero constant term, modulo t^(k+1).

    Coefficient lists are 1-based: x[d-1] holds the t^d coefficient.
    """
    out = [Fraction(0)] * k
    for p, xp in enumerate(x, start=1):
        if xp == 0 or p >= k:
            continue
        for q, yq in enumerate(y, start=1):
            if p + q > k:
                break
            if yq:
                out[p + q - 1] += xp * yq
    return out


def compose(f: Reparam, g: Reparam) -> Reparam:
    """The reparametrization t -> f(g(t)), truncated modulo t^(k+1)."""
    if f.k != g.k:
        raise ValueError("jet orders differ")
    k = f.k
    gp = list(g.coeffs)
    out = [c * f.coeffs[0] for c in gp]
    for i in range(2, k + 1):
        gp = _trunc_mul(gp, g.coeffs, k)
        ai = f.coeffs[i - 1]
        if ai:
            for d in range(k):
                if gp[d]:
                    out[d] += ai * gp[d]
    return Reparam(k, tuple(out))


def invert(f: Reparam) -> Reparam:
    """The compositional inverse modulo t^(k+1), by triangular solve.

    The coefficient of t^m in f(g(t)) is a_1*b_m plus terms involving only
    b_1..b_{m-1}, so each b_m is determined by one division by a_1.
    """
    k = f.k
    a1 = f.coeffs[0]
    b = [Fraction(0)] * k
    b[0] = 1 / a1
    for m in range(2, k + 1):
        current = compose(f, Reparam(k, tuple(b)))
        b[m - 1] = -current.coeffs[m - 1] / a1
    return Reparam(k, tuple(b))


def random_reparam(
    rng: random.Random, k: int, box: int = 10, unipotent: bool = False
) -> Reparam:
    """Seeded random element with integer coefficients in [-box, box]."""
    if unipotent:
        a1 = 1
    else:
        a1 = 0
        while a1 == 0:
            a1 = rng.randint(-box, box)
    rest = [rng.randint(-box, box) for _ in range(k - 1)]
    return Reparam.of(k, [a1] + rest)
