"""The right action of the reparametrization group on jets of curves.

A jet is an n x k matrix whose column j holds the order-j Taylor
coefficient f^(j)(0)/j! of a curve germ; the group acts by multiplying
this matrix by the group matrix on the right. Raw derivatives are never
stored, so the action is literally that matrix product.

A jet is regular when its first column is nonzero; the non-regular locus
is cut out by the n linear equations "first column = 0", hence has
codimension n.

Genericity is always evidential here: orbit-dimension statements are
reported with the sample count, seed, and integer sampling box that
produced them, never asserted from the theory.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from .exact import ExactMatrix, kernel_of_vectors, rank_of_vectors
from .lie import LieElement, Subalgebra, lie_basis
from .reparam import Reparam, group_matrix


@dataclass(frozen=True)
class Jet:
    """n x k matrix of Taylor coefficients; column j is f^(j)(0)/j!."""

    k: int
    n: int
    matrix: ExactMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.n, self.k):
            raise ValueError("jet matrix must be n rows by k columns")

    @classmethod
    def from_rows(cls, k: int, n: int, rows) -> "Jet":
        return cls(k, n, ExactMatrix(n, k, rows))

    @classmethod
    def zero(cls, k: int, n: int) -> "Jet":
        return cls(k, n, ExactMatrix.zeros(n, k))

    def column(self, j: int) -> tuple:
        """Taylor column for derivative order j (1-based)."""
        return self.matrix.column(j - 1)

    def to_json(self):
        return {"k": self.k, "n": self.n, "taylor_columns": self.matrix.to_json()}

    @classmethod
    def from_json(cls, data) -> "Jet":
        return cls(data["k"], data["n"], ExactMatrix.from_json(data["taylor_columns"]))


def act(jet: Jet, f: Reparam) -> Jet:
    """Reparametrize the jet: Taylor matrix times the group matrix."""
    if jet.k != f.k:
        raise ValueError("jet orders differ")
    return Jet(jet.k, jet.n, jet.matrix @ group_matrix(f))


def is_regular(jet: Jet) -> bool:
    return any(c != 0 for c in jet.column(1))


def infinitesimal_action(jet: Jet) -> ExactMatrix:
    """Differential of the orbit map at the identity.

    Row i is the row-major flattening of T * e_i; its row space is the
    tangent space of the orbit and its kernel is the stabilizer algebra.
    """
    rows = [(jet.matrix @ e.matrix).flatten() for e in lie_basis(jet.k)]
    return ExactMatrix(jet.k, jet.n * jet.k, rows)


def orbit_dim(jet: Jet) -> int:
    return infinitesimal_action(jet).rank()


def stabilizer_algebra(jet: Jet) -> Subalgebra:
    """Algebra elements whose infinitesimal action kills the jet.

    These are the coefficient vectors in the left null space of the
    infinitesimal-action matrix, so the kernel is taken of its transpose.
    """
    return Subalgebra.from_coord_vectors(
        jet.k, infinitesimal_action(jet).transpose().kernel_basis()
    )


def _stabilizer_fixed_space_rows(jet_dim: int, n: int, stab: Subalgebra) -> list:
    """Linear conditions cutting out the jets fixed by the stabilizer algebra.

    A flattened jet V is fixed when V * s = 0 for every stabilizer basis
    matrix s; each (s, row l, column q) gives one linear functional.
    """
    k = stab.k
    rows = []
    for s in stab.basis:
        sm = s.matrix
        for l in range(n):
            for q in range(k):
                row = [Fraction(0)] * jet_dim
                for p in range(k):
                    c = sm[p, q]
                    if c:
                        row[l * k + p] = c
                rows.append(row)
    return rows


@dataclass(frozen=True)
class OrbitCertificate:
    """Exact ranks for one jet: orbit and stabilizer dimensions, the
    subspace fixed by the stabilizer, and whether orbit tangent plus fixed
    subspace fill the whole jet space."""

    jet: Jet
    orbit_dim: int
    stabilizer_dim: int
    fixed_space_dim: int
    sum_dim: int
    holds: bool

    def to_json(self):
        return {
            "jet": self.jet.to_json(),
            "dims": {
                "orbit": self.orbit_dim,
                "stabilizer": self.stabilizer_dim,
                "fixed_space": self.fixed_space_dim,
                "sum": self.sum_dim,
                "jet_space": self.jet.n * self.jet.k,
            },
            "holds": self.holds,
        }


def elashvili_jet(jet: Jet) -> OrbitCertificate:
    nk = jet.n * jet.k
    inf = infinitesimal_action(jet)
    stab = Subalgebra.from_coord_vectors(jet.k, inf.transpose().kernel_basis())
    kernel_rows = _stabilizer_fixed_space_rows(nk, jet.n, stab)
    fixed_basis = kernel_of_vectors(kernel_rows, nk)
    orbit_rows = [list(r) for r in inf.entries]
    sum_dim = rank_of_vectors(orbit_rows + [list(v) for v in fixed_basis], nk)
    return OrbitCertificate(
        jet=jet,
        orbit_dim=inf.rank(),
        stabilizer_dim=stab.dim,
        fixed_space_dim=len(fixed_basis),
        sum_dim=sum_dim,
        holds=sum_dim == nk,
    )


def random_jet(
    rng: random.Random,
    k: int,
    n: int,
    box: int = 10,
    regular: bool | None = None,
) -> Jet:
    """Seeded random jet with integer entries in [-box, box].

    regular=True resamples until the first column is nonzero;
    regular=False forces the first column to zero (singular locus).
    """
    while True:
        rows = [[rng.randint(-box, box) for _ in range(k)] for _ in range(n)]
        if regular is False:
            for row in rows:
                row[0] = 0
            return Jet.from_rows(k, n, rows)
        jet = Jet.from_rows(k, n, rows)
        if regular is None or is_regular(jet):
            return jet


@dataclass(frozen=True)
class TrdegReport:
    """Transcendence degree of the invariant field, by orbit-rank census:
    jet-space dimension minus the maximal sampled orbit dimension."""

    k: int
    n: int
    samples: int
    seed: int
    box: int
    max_orbit_dim: int
    trdeg: int
    witness: Jet

    def to_json(self):
        return {
            "k": self.k,
            "n": self.n,
            "samples": self.samples,
            "seed": self.seed,
            "box": self.box,
            "max_orbit_dim": self.max_orbit_dim,
            "trdeg": self.trdeg,
            "witness": self.witness.to_json(),
        }


def trdeg(k: int, n: int, samples: int, seed: int, box: int = 10) -> TrdegReport:
    if samples < 1:
        raise ValueError("need at least one sample")
    rng = random.Random(seed)
    best = None
    best_dim = -1
    for _ in range(samples):
        jet = random_jet(rng, k, n, box)
        d = orbit_dim(jet)
        if d > best_dim:
            best_dim = d
            best = jet
    return TrdegReport(
        k=k,
        n=n,
        samples=samples,
        seed=seed,
        box=box,
        max_orbit_dim=best_dim,
        trdeg=n * k - best_dim,
        witness=best,
    )


@dataclass(frozen=True)
class StrataReport:
    """Census of orbit dimensions over generic samples, forced-singular
    samples (first column zero), and the zero jet."""

    k: int
    n: int
    samples: int
    seed: int
    box: int
    histogram: Tuple[Tuple[int, int], ...]

    def to_json(self):
        return {
            "k": self.k,
            "n": self.n,
            "samples": self.samples,
            "seed": self.seed,
            "box": self.box,
            "histogram": [
                {"orbit_dim": d, "count": c} for d, c in self.histogram
            ],
        }

    def csv_rows(self):
        return [(d, c) for d, c in self.histogram]


def strata_histogram(
    k: int, n: int, samples: int, seed: int, box: int = 10
) -> StrataReport:
    rng = random.Random(seed)
    counts: Dict[int, int] = {}
    for _ in range(samples):
        counts_key = orbit_dim(random_jet(rng, k, n, box))
        counts[counts_key] = counts.get(counts_key, 0) + 1
    for _ in range(samples):
        counts_key = orbit_dim(random_jet(rng, k, n, box, regular=False))
        counts[counts_key] = counts.get(counts_key, 0) + 1
    zero_key = orbit_dim(Jet.zero(k, n))
    counts[zero_key] = counts.get(zero_key, 0) + 1
    return StrataReport(
        k=k,
        n=n,
        samples=samples,
        seed=seed,
        box=box,
        histogram=tuple(sorted(counts.items())),
    )


@dataclass(frozen=True)
class CodimReport:
    """Codimension of the non-regular locus: the first Taylor column
    vanishing imposes n independent linear equations."""

    k: int
    n: int
    codim: int
    codim_at_least_two: bool

    def to_json(self):
        return {
            "k": self.k,
            "n": self.n,
            "codim": self.codim,
            "codim_at_least_two": self.codim_at_least_two,
        }


def singular_locus_codim(k: int, n: int) -> CodimReport:
    return CodimReport(k=k, n=n, codim=n, codim_at_least_two=n >= 2)
