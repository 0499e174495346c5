"""Invariant weighted polynomials on jet coordinates.

The unipotent part of the reparametrization group is non-reductive, so
there is no invariant averaging; invariance is enforced infinitesimally
instead, as the joint kernel of the derivations induced by the strictly
triangular basis directions of the algebra. For jet order k there are
k - 1 such derivations D_2, ..., D_k, each acting on the variable
xi[q, l] by the l-th coordinate of the generic jet matrix multiplied by
the basis matrix e_i on the right.

The invariant space in weighted degree m is computed as one exact kernel:
stack the matrices of all D_i on the monomial basis of degree m (each D_i
lowers the weighted degree by i - 1) and take the null space. Group-level
invariance can be cross-checked exactly by substituting any unipotent
element into the polynomial.

Full group invariance of a weighted-degree-m element holds up to the
character a_1^m of the diagonal part: diagonal substitution rescales the
element by exactly that power. This is reported by the grading helpers,
not imposed.

Monomial-space sizes grow quickly; computations refuse to start beyond a
configurable cap (JETINV_CAP in the environment, or the cap argument)
rather than truncate silently.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .errors import ResourceCapExceeded
from .exact import ExactMatrix, linear_solve
from .lie import lie_basis
from .polynomials import (
    WeightedPoly,
    monomials,
    num_vars,
    var_coord,
    var_index,
    var_order,
)
from .reparam import Reparam, group_matrix, is_unipotent, random_reparam

DEFAULT_CAP = 20000


def resolve_cap(cap: Optional[int] = None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("JETINV_CAP")
    return int(env) if env else DEFAULT_CAP


@dataclass(frozen=True)
class Derivation:
    """Derivation on the jet polynomial ring, given on the variables.

    images[v] is the linear form the flat variable v maps to; the action
    on polynomials extends by the Leibniz rule.
    """

    k: int
    n: int
    index: int
    images: Tuple[WeightedPoly, ...]

    def apply(self, p: WeightedPoly) -> WeightedPoly:
        if p.k != self.k or p.n != self.n:
            raise ValueError("polynomial lives on a different jet grid")
        out = WeightedPoly.zero(self.k, self.n)
        for exps, c in p.terms.items():
            for v, e in enumerate(exps):
                if not e or self.images[v].is_zero():
                    continue
                lowered = list(exps)
                lowered[v] -= 1
                out = out + (
                    WeightedPoly.from_monomial(self.k, self.n, lowered, c * e)
                    * self.images[v]
                )
        return out

    def annihilates(self, p: WeightedPoly) -> bool:
        return self.apply(p).is_zero()


def unipotent_derivations(k: int, n: int) -> List[Derivation]:
    """The k - 1 derivations induced by the strictly triangular directions.

    The image of xi[q, l] under D_i reads off column q of the generic jet
    matrix multiplied by e_i: sum over p of e_i[p, q] * xi[p, l].
    """
    basis = lie_basis(k)
    out = []
    for i in range(2, k + 1):
        e = basis[i - 1].matrix
        images = []
        for v in range(num_vars(k, n)):
            q = var_order(n, v)
            l = var_coord(n, v)
            terms = {}
            for p in range(1, k + 1):
                c = e[p - 1, q - 1]
                if c:
                    exps = [0] * num_vars(k, n)
                    exps[var_index(k, n, p, l)] = 1
                    terms[tuple(exps)] = c
            images.append(WeightedPoly(k, n, terms))
        out.append(Derivation(k=k, n=n, index=i, images=tuple(images)))
    return out


@dataclass(frozen=True)
class InvariantSpace:
    """Basis of the invariant polynomials of one weighted degree."""

    k: int
    n: int
    m: int
    basis: Tuple[WeightedPoly, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, p: WeightedPoly) -> bool:
        """Exact membership of p in the span of the basis."""
        mons = monomials(self.k, self.n, self.m)
        index = {e: r for r, e in enumerate(mons)}
        if any(e not in index for e in p.terms):
            return False
        cols = []
        for b in self.basis:
            col = [Fraction(0)] * len(mons)
            for e, c in b.terms.items():
                col[index[e]] = c
            cols.append(col)
        target = [Fraction(0)] * len(mons)
        for e, c in p.terms.items():
            target[index[e]] = c
        if not cols:
            return all(c == 0 for c in target)
        a = ExactMatrix(
            len(mons), len(cols), [[col[r] for col in cols] for r in range(len(mons))]
        )
        return linear_solve(a, target) is not None

    def to_json(self):
        return {
            "k": self.k,
            "n": self.n,
            "m": self.m,
            "dim": self.dim,
            "basis": [b.to_json() for b in self.basis],
        }


def invariant_basis(
    k: int, n: int, m: int, cap: Optional[int] = None
) -> InvariantSpace:
    """Joint kernel of the unipotent derivations in weighted degree m."""
    if m < 1:
        raise ValueError("weighted degree must be at least 1")
    cap = resolve_cap(cap)
    mons = monomials(k, n, m)
    if len(mons) > cap:
        raise ResourceCapExceeded(k, n, m, len(mons), cap)
    derivations = unipotent_derivations(k, n)
    if not derivations:
        basis = tuple(WeightedPoly.from_monomial(k, n, e) for e in mons)
        return InvariantSpace(k=k, n=n, m=m, basis=basis)

    rows = []
    for d in derivations:
        # D_i lowers the weighted degree by i - 1 and never hits constants,
        # so below that degree it imposes no conditions
        if m - (d.index - 1) < 1:
            continue
        target = monomials(k, n, m - (d.index - 1))
        index = {e: r for r, e in enumerate(target)}
        block = [[Fraction(0)] * len(mons) for _ in range(len(target))]
        for c_idx, exps in enumerate(mons):
            image = d.apply(WeightedPoly.from_monomial(k, n, exps))
            for e, coeff in image.terms.items():
                block[index[e]][c_idx] = coeff
        rows.extend(block)

    if rows:
        kernel = ExactMatrix(len(rows), len(mons), rows).kernel_basis()
    else:
        kernel = [
            tuple(Fraction(r == c) for c in range(len(mons)))
            for r in range(len(mons))
        ]
    basis = tuple(
        WeightedPoly(k, n, {e: v for e, v in zip(mons, vec) if v}) for vec in kernel
    )
    return InvariantSpace(k=k, n=n, m=m, basis=basis)


class JetSubstitution:
    """Reusable substitution of one group element into many polynomials.

    Holds the per-variable linear forms xi[j,l] -> sum_p M[p,j] xi[p,l]
    and a cache of their powers, so verifying a whole basis against one
    sampled element does each expansion once.
    """

    def __init__(self, k: int, n: int, f: Reparam):
        if f.k != k:
            raise ValueError("jet orders differ")
        m = group_matrix(f)
        forms = []
        for v in range(num_vars(k, n)):
            j = var_order(n, v)
            l = var_coord(n, v)
            terms = {}
            for p in range(1, j + 1):
                c = m[p - 1, j - 1]
                if c:
                    exps = [0] * num_vars(k, n)
                    exps[var_index(k, n, p, l)] = 1
                    terms[tuple(exps)] = c
            forms.append(WeightedPoly(k, n, terms))
        self.k = k
        self.n = n
        self.forms = forms
        self._cache: Dict = {}

    def apply(self, p: WeightedPoly) -> WeightedPoly:
        return p.substitute(self.forms, cache=self._cache)


def act_on_poly(p: WeightedPoly, f: Reparam) -> WeightedPoly:
    """The polynomial pulled back along the jet action of f."""
    return JetSubstitution(p.k, p.n, f).apply(p)


def verify_invariance(p: WeightedPoly, u: Reparam) -> bool:
    """Exact identity check: substituting u leaves p unchanged."""
    return act_on_poly(p, u) == p


def graded_component_invariance_check(
    p: WeightedPoly, trials: int, seed: int, box: int = 10
) -> bool:
    """Each weighted-homogeneous component of an invariant is invariant.

    Checked exactly: every component must be annihilated by all unipotent
    derivations and fixed by `trials` seeded random unipotent elements.
    """
    derivations = unipotent_derivations(p.k, p.n)
    rng = random.Random(seed)
    samples = [random_reparam(rng, p.k, box, unipotent=True) for _ in range(trials)]
    for component in p.weighted_components().values():
        if not all(d.annihilates(component) for d in derivations):
            return False
        for u in samples:
            if not verify_invariance(component, u):
                return False
    return True


@dataclass(frozen=True)
class ProfileRow:
    """One weighted degree of the dimension/generation table."""

    k: int
    n: int
    m: int
    monomial_count: int
    invariant_dim: int
    product_span_dim: int
    new_generators: bool

    def to_json(self):
        return {
            "k": self.k,
            "n": self.n,
            "m": self.m,
            "monomial_count": self.monomial_count,
            "invariant_dim": self.invariant_dim,
            "product_span_dim": self.product_span_dim,
            "new_generators": self.new_generators,
        }


CSV_TABLE_HEADER = ("k", "n", "m", "monomial_count", "invariant_dim", "product_span_dim")


def generation_profile(
    k: int, n: int, m_max: int, cap: Optional[int] = None
) -> List[ProfileRow]:
    """Dimensions and product-span dimensions for every degree up to m_max.

    The product span in degree m is spanned by all products of two
    invariants of lower degrees summing to m; a degree where it falls
    short of the invariant dimension needs new generators. Multi-factor
    products reduce to this case because a product of invariants is again
    an invariant of the intermediate degree.
    """
    spaces = {m: invariant_basis(k, n, m, cap=cap) for m in range(1, m_max + 1)}
    rows = []
    for m in range(1, m_max + 1):
        mons = monomials(k, n, m)
        index = {e: r for r, e in enumerate(mons)}
        vectors = []
        for m1 in range(1, m // 2 + 1):
            m2 = m - m1
            for b1 in spaces[m1].basis:
                for b2 in spaces[m2].basis:
                    prod = b1 * b2
                    vec = [Fraction(0)] * len(mons)
                    for e, c in prod.terms.items():
                        vec[index[e]] = c
                    vectors.append(vec)
        if vectors:
            span_dim = ExactMatrix(len(vectors), len(mons), vectors).rank()
        else:
            span_dim = 0
        inv_dim = spaces[m].dim
        rows.append(
            ProfileRow(
                k=k,
                n=n,
                m=m,
                monomial_count=len(mons),
                invariant_dim=inv_dim,
                product_span_dim=span_dim,
                new_generators=span_dim < inv_dim,
            )
        )
    return rows


def dimension_table(
    k: int, n: int, m_max: int, cap: Optional[int] = None
) -> List[ProfileRow]:
    """Per-degree invariant dimensions; same engine and row schema as the
    generation profile so every serialized row is complete."""
    return generation_profile(k, n, m_max, cap=cap)
