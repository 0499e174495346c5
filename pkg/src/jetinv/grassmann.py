"""Embedding of regular jets into a Grassmannian via symmetric powers.

A jet with raw derivative columns f', f'', ..., f^(k) (recovered from the
stored Taylor columns by multiplying column j by j!) maps to k vectors in
the direct sum of symmetric powers Sym^1 + ... + Sym^k of the ambient
space: column d collects, over all compositions i_1 + ... + i_s = d into
positive parts, the symmetric products f^(i_1) ... f^(i_s) weighted by
1/(i_1! ... i_s!). Equivalently, column d is the t^d coefficient of
F + F^2 + ... + F^k where F is the Taylor polynomial of the jet; under a
reparametrization the columns therefore transform by the group matrix on
the right, so the spanned k-plane, and hence the wedge of the columns up
to scale, is invariant on regular jets.

The wedge is coordinatized by its k x k minors over the monomial basis
e_{i_1...i_s} of the symmetric powers (sizes 1..k, each size ordered
lexicographically). Minors are evaluated on integer-rescaled columns and
the rational scale is restored afterwards, so all coordinates are exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb, factorial, lcm
from typing import Dict, List, Sequence, Tuple

from .errors import DomainError
from .exact import ExactMatrix, _int_det, rat, rat_str
from .jets import Jet, act, is_regular
from .reparam import compositions

SymIndex = Tuple[int, ...]


def sym_basis(n: int, k: int) -> List[SymIndex]:
    """Monomial basis of Sym^1 + ... + Sym^k, ordered by (size, lex)."""
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    out: List[SymIndex] = []
    for s in range(1, k + 1):
        out.extend(combinations_with_replacement(range(1, n + 1), s))
    return out


def sym_basis_size(n: int, k: int) -> int:
    return sum(comb(n + s - 1, s) for s in range(1, k + 1))


class SymVector:
    """Element of the truncated symmetric algebra, sparse over SymIndex."""

    __slots__ = ("n", "coords")

    def __init__(self, n: int, coords: Dict[SymIndex, Fraction] | None = None):
        self.n = n
        clean = {}
        for idx, c in (coords or {}).items():
            c = rat(c)
            if c == 0:
                continue
            idx = tuple(idx)
            if idx != tuple(sorted(idx)) or any(not 1 <= i <= n for i in idx):
                raise ValueError(f"bad symmetric index {idx}")
            clean[idx] = c
        self.coords = clean

    @classmethod
    def zero(cls, n: int) -> "SymVector":
        return cls(n, {})

    @classmethod
    def from_vector(cls, entries: Sequence) -> "SymVector":
        """Degree-1 element from a coordinate vector."""
        n = len(entries)
        return cls(n, {(i + 1,): rat(c) for i, c in enumerate(entries) if rat(c)})

    def is_zero(self) -> bool:
        return not self.coords

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SymVector)
            and self.n == other.n
            and self.coords == other.coords
        )

    def __add__(self, other: "SymVector") -> "SymVector":
        out = dict(self.coords)
        for idx, c in other.coords.items():
            s = out.get(idx, Fraction(0)) + c
            if s:
                out[idx] = s
            else:
                out.pop(idx, None)
        return SymVector(self.n, out)

    def scale(self, c) -> "SymVector":
        c = rat(c)
        return SymVector(self.n, {i: c * v for i, v in self.coords.items()})

    def __mul__(self, other: "SymVector") -> "SymVector":
        """Symmetric product: monomial indices merge and re-sort."""
        out: Dict[SymIndex, Fraction] = {}
        for i1, c1 in self.coords.items():
            for i2, c2 in other.coords.items():
                idx = tuple(sorted(i1 + i2))
                s = out.get(idx, Fraction(0)) + c1 * c2
                if s:
                    out[idx] = s
                else:
                    out.pop(idx, None)
        return SymVector(self.n, out)

    def max_size(self) -> int:
        return max((len(i) for i in self.coords), default=0)

    def to_json(self):
        return {
            ".".join(str(i) for i in idx): rat_str(c)
            for idx, c in sorted(self.coords.items(), key=_symindex_key)
        }

    def __repr__(self):
        bits = [
            f"({c})*e{''.join(str(i) for i in idx)}"
            for idx, c in sorted(self.coords.items(), key=_symindex_key)
        ]
        return " + ".join(bits) if bits else "0"


def _symindex_key(item):
    idx = item[0] if isinstance(item, tuple) and isinstance(item[0], tuple) else item
    return (len(idx), idx)


def raw_derivative_columns(jet: Jet) -> List[SymVector]:
    """Raw derivatives f^(j) as degree-1 vectors: Taylor column j times j!."""
    return [
        SymVector.from_vector([c * factorial(j) for c in jet.column(j)])
        for j in range(1, jet.k + 1)
    ]


def phi(jet: Jet) -> List[SymVector]:
    """The k embedded columns of a jet in the symmetric algebra."""
    raw = raw_derivative_columns(jet)
    columns = []
    for d in range(1, jet.k + 1):
        acc = SymVector.zero(jet.n)
        for s in range(1, d + 1):
            for comp in compositions(d, s):
                prod = raw[comp[0] - 1]
                denom = factorial(comp[0])
                for part in comp[1:]:
                    prod = prod * raw[part - 1]
                    denom *= factorial(part)
                acc = acc + prod.scale(Fraction(1, denom))
        columns.append(acc)
    return columns


@dataclass(frozen=True)
class PluckerVector:
    """Sparse wedge coordinates: k-subsets of basis positions to minors.

    Positions index sym_basis(n, k); subsets are stored ascending with no
    extra sign, which fixes the sign convention of every coordinate.
    """

    n: int
    k: int
    coords: Dict[Tuple[int, ...], Fraction]

    def is_zero(self) -> bool:
        return not self.coords

    def support(self):
        return set(self.coords)

    def labels(self) -> List[str]:
        basis = sym_basis(self.n, self.k)
        return [
            "|".join(".".join(str(i) for i in basis[p]) for p in key)
            for key in sorted(self.coords)
        ]

    def to_json(self):
        basis = sym_basis(self.n, self.k)
        return {
            "|".join(".".join(str(i) for i in basis[p]) for p in key): rat_str(c)
            for key, c in sorted(self.coords.items())
        }


def plucker(columns: Sequence[SymVector]) -> PluckerVector:
    """All k x k minors of the column family over the symmetric basis."""
    k = len(columns)
    if k == 0:
        raise ValueError("need at least one column")
    n = columns[0].n
    if any(col.n != n for col in columns):
        raise ValueError("columns live in different ambient dimensions")
    if any(col.max_size() > k for col in columns):
        raise ValueError("column exceeds the symmetric-power truncation")
    basis = sym_basis(n, k)
    position = {idx: p for p, idx in enumerate(basis)}

    # integer-rescale each column; every minor picks up the fixed scale
    scale = 1
    int_cols = []
    for col in columns:
        d = lcm(*(c.denominator for c in col.coords.values())) if col.coords else 1
        scale *= d
        int_cols.append({position[idx]: int(c * d) for idx, c in col.coords.items()})

    rows = sorted(set().union(*[set(c) for c in int_cols]))
    coords: Dict[Tuple[int, ...], Fraction] = {}
    for subset in combinations(rows, k):
        det = _int_det([[col.get(r, 0) for col in int_cols] for r in subset])
        if det:
            coords[subset] = Fraction(det, scale)
    return PluckerVector(n=n, k=k, coords=coords)


def plucker_of_jet(jet: Jet) -> PluckerVector:
    return plucker(phi(jet))


def z_point(n: int, k: int) -> PluckerVector:
    """Wedge coordinates of the jet whose raw derivatives are e_1, ..., e_k."""
    if k > n:
        raise DomainError(f"the distinguished point needs k <= n, got k={k}, n={n}")
    taylor = [
        [Fraction(1 if i + 1 == j else 0, factorial(j)) for j in range(1, k + 1)]
        for i in range(n)
    ]
    return plucker_of_jet(Jet.from_rows(k, n, taylor))


def projective_equal(p: PluckerVector, q: PluckerVector) -> bool:
    """Whether p = c q for some nonzero rational c."""
    if (p.n, p.k) != (q.n, q.k):
        raise ValueError("wedge coordinates live in different spaces")
    if p.is_zero() or q.is_zero():
        raise DomainError("projective comparison of the zero vector")
    if p.support() != q.support():
        return False
    key = next(iter(sorted(p.coords)))
    c = p.coords[key] / q.coords[key]
    return all(p.coords[i] == c * q.coords[i] for i in p.coords)


def invariance_check(jet: Jet, g) -> bool:
    """Projective equality of the embedded wedge along the group orbit."""
    if not is_regular(jet):
        raise DomainError("invariance of the embedding is claimed on regular jets")
    return projective_equal(plucker_of_jet(act(jet, g)), plucker_of_jet(jet))


def a_nk_membership(p: PluckerVector) -> bool:
    """Whether the projection onto the wedge of degree-1 vectors is nonzero."""
    if p.is_zero():
        raise DomainError("membership of the zero vector")
    basis = sym_basis(p.n, p.k)
    return any(
        all(len(basis[pos]) == 1 for pos in key) and c != 0
        for key, c in p.coords.items()
    )


def gl_action(g: ExactMatrix, columns: Sequence[SymVector]) -> List[SymVector]:
    """Change of ambient basis, extended multiplicatively to all sizes."""
    if not columns:
        return []
    n = columns[0].n
    if g.shape != (n, n):
        raise ValueError("matrix size must match the ambient dimension")
    if g.rank() != n:
        raise DomainError("ambient change of basis must be invertible")
    image_of = {
        (i,): SymVector.from_vector(g.column(i - 1)) for i in range(1, n + 1)
    }

    def image_of_index(idx: SymIndex) -> SymVector:
        cached = image_of.get(idx)
        if cached is None:
            cached = image_of_index(idx[:-1]) * image_of[(idx[-1],)]
            image_of[idx] = cached
        return cached

    out = []
    for col in columns:
        acc = SymVector.zero(n)
        for idx, c in col.coords.items():
            acc = acc + image_of_index(idx).scale(c)
        out.append(acc)
    return out


def jet_ambient_transform(g: ExactMatrix, jet: Jet) -> Jet:
    """Apply an ambient linear map to a jet (left multiplication)."""
    return Jet(jet.k, jet.n, g @ jet.matrix)


def plucker_relation_residue(
    p: PluckerVector, s_key: Tuple[int, ...], t_key: Tuple[int, ...]
) -> Fraction:
    """Quadratic relation residue for one (k-1)-subset and (k+1)-subset.

    Vanishes identically on decomposable wedges.
    """

    def signed(base: Tuple[int, ...], extra: int) -> Fraction:
        if extra in base:
            return Fraction(0)
        higher = sum(1 for b in base if b > extra)
        value = p.coords.get(tuple(sorted(base + (extra,))), Fraction(0))
        return -value if higher % 2 else value

    total = Fraction(0)
    for j, t in enumerate(t_key):
        rest = t_key[:j] + t_key[j + 1 :]
        term = signed(s_key, t) * p.coords.get(rest, Fraction(0))
        total += -term if j % 2 else term
    return total


def check_plucker_relations(p: PluckerVector, trials: int, seed: int) -> bool:
    """Sampled quadratic relations on the coordinate vector, all must vanish.

    Exhaustive when the index space is small, seeded random otherwise.
    """
    size = sym_basis_size(p.n, p.k)
    k = p.k
    if k < 2:
        return True
    exhaustive = comb(size, k - 1) * comb(size, k + 1) <= trials
    if exhaustive:
        pairs = (
            (s, t)
            for s in combinations(range(size), k - 1)
            for t in combinations(range(size), k + 1)
        )
    else:
        rng = random.Random(seed)
        pairs = (
            (
                tuple(sorted(rng.sample(range(size), k - 1))),
                tuple(sorted(rng.sample(range(size), k + 1))),
            )
            for _ in range(trials)
        )
    return all(plucker_relation_residue(p, s, t) == 0 for s, t in pairs)
