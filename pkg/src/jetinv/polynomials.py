"""Sparse multivariate polynomials on jet coordinates, with weighted grading.

Variables are xi[j,i] for derivative order j in 1..k and coordinate
i in 1..n; the weight of xi[j,i] is j, and the weighted degree of a
monomial with exponent vector alpha is sum over (j,i) of j*alpha[j,i].

Variable v = (j-1)*n + (i-1) fixes a flat index; monomials are exponent
tuples of length k*n. The monomial order used everywhere (bases, kernels,
serialized fixtures) is graded lexicographic: sort by (weighted degree,
exponent tuple).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Sequence, Tuple

from .exact import ExactMatrix, rat, rat_str

Exponents = Tuple[int, ...]


def num_vars(k: int, n: int) -> int:
    return k * n


def var_index(k: int, n: int, j: int, i: int) -> int:
    if not (1 <= j <= k and 1 <= i <= n):
        raise ValueError(f"variable xi[{j},{i}] outside the (k={k}, n={n}) grid")
    return (j - 1) * n + (i - 1)


def var_order(n: int, v: int) -> int:
    """Derivative order of flat variable v; equals its weight."""
    return v // n + 1


def var_coord(n: int, v: int) -> int:
    return v % n + 1


def var_label(n: int, v: int) -> str:
    return f"xi[{var_order(n, v)},{var_coord(n, v)}]"


def weighted_degree(exponents: Sequence[int], n: int) -> int:
    return sum(e * (v // n + 1) for v, e in enumerate(exponents) if e)


def monomial_key(exponents: Exponents, n: int):
    return (weighted_degree(exponents, n), exponents)


def monomials(k: int, n: int, m: int) -> list:
    """All exponent tuples of weighted degree exactly m, graded-lex order."""
    if m < 0:
        raise ValueError("weighted degree must be nonnegative")
    nv = num_vars(k, n)
    out = []
    exps = [0] * nv

    def fill(v: int, remaining: int):
        if v == nv:
            if remaining == 0:
                out.append(tuple(exps))
            return
        w = var_order(n, v)
        for e in range(remaining // w + 1):
            exps[v] = e
            fill(v + 1, remaining - e * w)
        exps[v] = 0

    fill(0, m)
    out.sort()
    return out


class WeightedPoly:
    """Polynomial over Q in the xi[j,i] variables of a fixed (k, n) grid."""

    __slots__ = ("k", "n", "terms")

    def __init__(self, k: int, n: int, terms: Dict[Exponents, Fraction] | None = None):
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "n", n)
        clean = {}
        nv = num_vars(k, n)
        for exps, c in (terms or {}).items():
            c = rat(c)
            if c == 0:
                continue
            exps = tuple(exps)
            if len(exps) != nv or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for k={k}, n={n}")
            clean[exps] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *_):
        raise AttributeError("WeightedPoly is immutable")

    @classmethod
    def zero(cls, k: int, n: int) -> "WeightedPoly":
        return cls(k, n, {})

    @classmethod
    def constant(cls, k: int, n: int, c) -> "WeightedPoly":
        return cls(k, n, {(0,) * num_vars(k, n): rat(c)})

    @classmethod
    def variable(cls, k: int, n: int, j: int, i: int) -> "WeightedPoly":
        exps = [0] * num_vars(k, n)
        exps[var_index(k, n, j, i)] = 1
        return cls(k, n, {tuple(exps): Fraction(1)})

    @classmethod
    def from_monomial(cls, k: int, n: int, exponents: Exponents, c=1) -> "WeightedPoly":
        return cls(k, n, {tuple(exponents): rat(c)})

    def _same_space(self, other: "WeightedPoly"):
        if self.k != other.k or self.n != other.n:
            raise ValueError("polynomials live on different jet grids")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WeightedPoly)
            and self.k == other.k
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.k, self.n, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "WeightedPoly") -> "WeightedPoly":
        self._same_space(other)
        out = dict(self.terms)
        for exps, c in other.terms.items():
            s = out.get(exps, Fraction(0)) + c
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return WeightedPoly(self.k, self.n, out)

    def __neg__(self) -> "WeightedPoly":
        return self.scale(-1)

    def __sub__(self, other: "WeightedPoly") -> "WeightedPoly":
        return self + (-other)

    def scale(self, c) -> "WeightedPoly":
        c = rat(c)
        if c == 0:
            return WeightedPoly.zero(self.k, self.n)
        return WeightedPoly(self.k, self.n, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other) -> "WeightedPoly":
        if not isinstance(other, WeightedPoly):
            return self.scale(other)
        self._same_space(other)
        out: Dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return WeightedPoly(self.k, self.n, out)

    def __rmul__(self, other) -> "WeightedPoly":
        return self.scale(other)

    def __pow__(self, e: int) -> "WeightedPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = WeightedPoly.constant(self.k, self.n, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def coefficient(self, exponents: Exponents) -> Fraction:
        return self.terms.get(tuple(exponents), Fraction(0))

    def weighted_components(self) -> dict:
        """Split into weighted-homogeneous parts, keyed by weighted degree."""
        parts: Dict[int, Dict[Exponents, Fraction]] = {}
        for exps, c in self.terms.items():
            parts.setdefault(weighted_degree(exps, self.n), {})[exps] = c
        return {
            m: WeightedPoly(self.k, self.n, t) for m, t in sorted(parts.items())
        }

    def weighted_degree(self):
        """Top weighted degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(weighted_degree(e, self.n) for e in self.terms)

    def is_weighted_homogeneous(self) -> bool:
        return len(self.weighted_components()) <= 1

    def substitute(self, forms: Sequence["WeightedPoly"], cache=None) -> "WeightedPoly":
        """Substitute forms[v] for variable v and expand.

        A shared cache dict may be passed when applying one substitution to
        many polynomials; it memoizes powers of the individual forms.
        """
        if len(forms) != num_vars(self.k, self.n):
            raise ValueError("need one substitution form per variable")
        if cache is None:
            cache = {}
        out = WeightedPoly.zero(self.k, self.n)
        for exps, c in self.terms.items():
            term = WeightedPoly.constant(self.k, self.n, c)
            for v, e in enumerate(exps):
                if not e:
                    continue
                key = (v, e)
                power = cache.get(key)
                if power is None:
                    power = forms[v] ** e
                    cache[key] = power
                term = term * power
            out = out + term
        return out

    def substitute_linear(self, L: ExactMatrix) -> "WeightedPoly":
        """Compose with the linear change of variables xi_v -> sum_w L[w,v] xi_w.

        Variables transform as a row vector hit on the right by L, so
        substituting L1 then L2 equals substituting the single matrix L2*L1.
        """
        nv = num_vars(self.k, self.n)
        if L.shape != (nv, nv):
            raise ValueError("substitution matrix must act on the variable space")
        forms = []
        for v in range(nv):
            terms = {}
            for w in range(nv):
                c = L[w, v]
                if c:
                    exps = [0] * nv
                    exps[w] = 1
                    terms[tuple(exps)] = c
            forms.append(WeightedPoly(self.k, self.n, terms))
        return self.substitute(forms)

    def terms_sorted(self) -> list:
        return sorted(
            self.terms.items(), key=lambda item: monomial_key(item[0], self.n)
        )

    def to_json(self):
        return {
            "k": self.k,
            "n": self.n,
            "terms": [
                {"exponents": list(e), "coeff": rat_str(c)}
                for e, c in self.terms_sorted()
            ],
        }

    @classmethod
    def from_json(cls, data) -> "WeightedPoly":
        return cls(
            data["k"],
            data["n"],
            {tuple(t["exponents"]): rat(t["coeff"]) for t in data["terms"]},
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for exps, c in self.terms_sorted():
            mono = "*".join(
                f"{var_label(self.n, v)}^{e}" if e > 1 else var_label(self.n, v)
                for v, e in enumerate(exps)
                if e
            )
            bits.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(bits)
