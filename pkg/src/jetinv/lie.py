"""The Lie algebra of the reparametrization group and its adjoint structure.

The basis element e_i is obtained by differentiating the group-matrix
entries at the identity in the direction of the i-th coefficient; the
differentiation is exact (dual numbers over Q on the polynomial entries,
no numerics). In particular e_1 = diag(1, 2, ..., k) and the e_i for
i >= 2 are strictly upper triangular, so the algebra is the span of one
semisimple direction and the strictly triangular part.

Convention: jets form a right module (they are multiplied by group
matrices on the right), and all infinitesimal actions here are derivatives
of right translations. The bracket compatible with that orientation is

    bracket(x, y) = y.matrix * x.matrix - x.matrix * y.matrix,

which gives bracket(e_1, e_j) = (j-1) e_j, and the adjoint conjugation is

    Ad(g) y = M(g)^(-1) * y.matrix * M(g),

so that Ad(g) scales e_j by a_1^(j-1) for diagonal g and the derivative of
c -> Ad(g_c) y along a one-parameter family through the identity equals
bracket(e_i, y). Acting by g then h equals acting by the composition
g o h, exactly as for the jet module itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Tuple

from .errors import BasisClosureError
from .exact import (
    ExactMatrix,
    kernel_of_vectors,
    linear_solve,
    parse_rat,
    rank_of_vectors,
    rat,
    rat_str,
    row_space_basis,
)
from .reparam import Reparam, compositions, group_matrix


class _Dual:
    """Number a + b*eps with eps^2 = 0; exact first derivatives."""

    __slots__ = ("val", "eps")

    def __init__(self, val, eps=0):
        self.val = rat(val)
        self.eps = rat(eps)

    def __add__(self, other):
        return _Dual(self.val + other.val, self.eps + other.eps)

    def __mul__(self, other):
        return _Dual(self.val * other.val, self.val * other.eps + self.eps * other.val)


@dataclass(frozen=True)
class LieElement:
    """Element of the jet algebra: coordinates in the e-basis plus its matrix."""

    k: int
    coords: Tuple[Fraction, ...]
    matrix: ExactMatrix

    def __post_init__(self):
        coords = tuple(rat(c) for c in self.coords)
        if len(coords) != self.k:
            raise ValueError("coordinate length must equal the jet order")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def from_coords(cls, k: int, coords: Sequence) -> "LieElement":
        coords = tuple(rat(c) for c in coords)
        mat = ExactMatrix.zeros(k, k)
        for c, e in zip(coords, lie_basis(k)):
            if c:
                mat = mat + e.matrix.scale(c)
        return cls(k, coords, mat)

    @classmethod
    def zero(cls, k: int) -> "LieElement":
        return cls(k, (Fraction(0),) * k, ExactMatrix.zeros(k, k))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __add__(self, other: "LieElement") -> "LieElement":
        self._check(other)
        return LieElement(
            self.k,
            tuple(a + b for a, b in zip(self.coords, other.coords)),
            self.matrix + other.matrix,
        )

    def __sub__(self, other: "LieElement") -> "LieElement":
        self._check(other)
        return LieElement(
            self.k,
            tuple(a - b for a, b in zip(self.coords, other.coords)),
            self.matrix - other.matrix,
        )

    def scale(self, c) -> "LieElement":
        c = rat(c)
        return LieElement(
            self.k, tuple(c * a for a in self.coords), self.matrix.scale(c)
        )

    def to_json(self):
        return {"k": self.k, "coords": [rat_str(c) for c in self.coords]}

    @classmethod
    def from_json(cls, data) -> "LieElement":
        return cls.from_coords(data["k"], [parse_rat(c) for c in data["coords"]])

    def _check(self, other: "LieElement"):
        if self.k != other.k:
            raise ValueError("jet orders differ")


@lru_cache(maxsize=None)
def lie_basis(k: int) -> tuple:
    """Basis e_1..e_k from exact differentiation of group-matrix entries.

    e_i is the derivative at s = 0 of the matrix of the element with
    coefficients (1, 0, ..., 0) + s * delta_i.
    """
    basis = []
    for i in range(1, k + 1):
        # coefficient a_s as a dual number along the direction delta_i
        a = [
            _Dual(1 if s == 1 else 0, 1 if s == i else 0) for s in range(1, k + 1)
        ]
        entries = [[Fraction(0)] * k for _ in range(k)]
        for p in range(1, k + 1):
            for j in range(p, k + 1):
                acc = _Dual(0)
                for comp in compositions(j, p):
                    prod = _Dual(1)
                    for s in comp:
                        prod = prod * a[s - 1]
                    acc = acc + prod
                entries[p - 1][j - 1] = acc.eps
        coords = tuple(Fraction(1 if t == i else 0) for t in range(1, k + 1))
        basis.append(LieElement(k, coords, ExactMatrix(k, k, entries)))
    return tuple(basis)


@lru_cache(maxsize=None)
def _basis_flattening(k: int) -> ExactMatrix:
    cols = [e.matrix.flatten() for e in lie_basis(k)]
    return ExactMatrix(k * k, k, [[col[r] for col in cols] for r in range(k * k)])


def coords_of_matrix(k: int, mat: ExactMatrix) -> tuple:
    """Express a matrix in the e-basis; raises if it leaves the span."""
    sol = linear_solve(_basis_flattening(k), mat.flatten())
    if sol is None:
        raise BasisClosureError("matrix outside the span of the algebra basis")
    return sol


def bracket(x: LieElement, y: LieElement) -> LieElement:
    """Lie bracket in the right-action orientation: y.matrix x.matrix - x.matrix y.matrix."""
    x._check(y)
    mat = y.matrix @ x.matrix - x.matrix @ y.matrix
    return LieElement(x.k, coords_of_matrix(x.k, mat), mat)


def ad_action_matrix(x: LieElement) -> ExactMatrix:
    """Matrix of y -> bracket(x, y) in the e-basis (column j is bracket(x, e_j))."""
    k = x.k
    cols = [bracket(x, e).coords for e in lie_basis(k)]
    return ExactMatrix(k, k, [[cols[j][i] for j in range(k)] for i in range(k)])


@dataclass(frozen=True)
class Subalgebra:
    """Subspace of the jet algebra given by a linearly independent basis."""

    k: int
    basis: Tuple[LieElement, ...]

    def __post_init__(self):
        basis = tuple(self.basis)
        if rank_of_vectors([e.coords for e in basis], self.k) != len(basis):
            raise ValueError("subalgebra basis is linearly dependent")
        object.__setattr__(self, "basis", basis)

    @classmethod
    def from_coord_vectors(
        cls, k: int, vectors: Sequence[Sequence], check_closed: bool = False
    ) -> "Subalgebra":
        sub = cls(k, tuple(LieElement.from_coords(k, v) for v in vectors))
        if check_closed and not sub.is_closed_under_bracket():
            raise BasisClosureError("span is not closed under the bracket")
        return sub

    @classmethod
    def zero(cls, k: int) -> "Subalgebra":
        return cls(k, ())

    @classmethod
    def full(cls, k: int) -> "Subalgebra":
        return cls(k, lie_basis(k))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coord_rows(self) -> list:
        return [list(e.coords) for e in self.basis]

    def contains(self, x: LieElement) -> bool:
        rows = self.coord_rows()
        return rank_of_vectors(rows + [list(x.coords)], self.k) == self.dim

    def same_span(self, other: "Subalgebra") -> bool:
        if self.dim != other.dim:
            return False
        stacked = self.coord_rows() + other.coord_rows()
        return rank_of_vectors(stacked, self.k) == self.dim

    def is_commutative(self) -> bool:
        b = self.basis
        return all(
            bracket(b[i], b[j]).is_zero()
            for i in range(len(b))
            for j in range(i + 1, len(b))
        )

    def is_closed_under_bracket(self) -> bool:
        b = self.basis
        return all(
            self.contains(bracket(b[i], b[j]))
            for i in range(len(b))
            for j in range(i + 1, len(b))
        )

    def to_json(self):
        return {
            "k": self.k,
            "dim": self.dim,
            "basis": [[rat_str(c) for c in e.coords] for e in self.basis],
        }


def centralizer(x: LieElement) -> Subalgebra:
    """Elements commuting with x: the kernel of ad(x)."""
    return Subalgebra.from_coord_vectors(
        x.k, ad_action_matrix(x).kernel_basis()
    )


def fixed_space(s: Subalgebra) -> Subalgebra:
    """Elements annihilated by every basis element of s."""
    rows = []
    for c in s.basis:
        rows.extend(ad_action_matrix(c).entries)
    return Subalgebra.from_coord_vectors(s.k, kernel_of_vectors(rows, s.k))


def center(k: int) -> Subalgebra:
    return fixed_space(Subalgebra.full(k))


def normalizer(s: Subalgebra) -> Subalgebra:
    """Elements y with bracket(y, c) inside span(s) for every c in s.

    Membership in the span is encoded by the annihilator of the span:
    w ranges over a kernel basis of the coordinate rows of s, and the
    conditions w . bracket(y, c) = 0 are stacked into one exact kernel.
    """
    k = s.k
    annihilator = kernel_of_vectors(s.coord_rows(), k)
    rows = []
    for c in s.basis:
        # column j of m is bracket(e_j, c)
        cols = [bracket(e, c).coords for e in lie_basis(k)]
        for w in annihilator:
            rows.append(
                [sum(w[i] * cols[j][i] for i in range(k)) for j in range(k)]
            )
    return Subalgebra.from_coord_vectors(k, kernel_of_vectors(rows, k))


def bracket_image(x: LieElement) -> Subalgebra:
    """The subspace of all brackets with x (image of the adjoint map at x)."""
    k = x.k
    rows = [bracket(e, x).coords for e in lie_basis(k)]
    return Subalgebra.from_coord_vectors(k, row_space_basis(rows, k))


def derived_subalgebra(k: int) -> Subalgebra:
    """Span of all pairwise brackets of basis elements, with canonical basis."""
    basis = lie_basis(k)
    rows = [
        bracket(basis[i], basis[j]).coords
        for i in range(k)
        for j in range(i + 1, k)
    ]
    return Subalgebra.from_coord_vectors(k, row_space_basis(rows, k))


def adjoint_conjugation(g: Reparam, y: LieElement) -> LieElement:
    """Conjugation action on the algebra: M(g)^(-1) * y.matrix * M(g).

    Oriented so that acting by g and then by h equals acting by the
    composition g o h, matching the right action on jets; diagonal g
    scales e_j by a_1^(j-1).
    """
    if g.k != y.k:
        raise ValueError("jet orders differ")
    m = group_matrix(g)
    mat = m.inverse() @ y.matrix @ m
    return LieElement(y.k, coords_of_matrix(y.k, mat), mat)


# --- certificates -----------------------------------------------------------


@dataclass(frozen=True)
class AdjointStabilizerCertificate:
    """Exact ranks witnessing a generic stabilizer for the conjugation action.

    holds is true when the bracket image at the probe plus the subspace
    fixed by the probe's centralizer fills the whole algebra.
    """

    k: int
    probe: Tuple[Fraction, ...]
    bracket_image_dim: int
    centralizer_dim: int
    centralizer_commutative: bool
    fixed_space_dim: int
    sum_dim: int
    holds: bool

    def to_json(self):
        return {
            "k": self.k,
            "probe_point": [rat_str(c) for c in self.probe],
            "dims": {
                "bracket_image": self.bracket_image_dim,
                "centralizer": self.centralizer_dim,
                "fixed_space_of_centralizer": self.fixed_space_dim,
                "sum": self.sum_dim,
            },
            "centralizer_commutative": self.centralizer_commutative,
            "holds": self.holds,
        }


def elashvili_adjoint(x: LieElement) -> AdjointStabilizerCertificate:
    k = x.k
    image = bracket_image(x)
    z = centralizer(x)
    fixed = fixed_space(z)
    sum_dim = rank_of_vectors(image.coord_rows() + fixed.coord_rows(), k)
    return AdjointStabilizerCertificate(
        k=k,
        probe=x.coords,
        bracket_image_dim=image.dim,
        centralizer_dim=z.dim,
        centralizer_commutative=z.is_commutative(),
        fixed_space_dim=fixed.dim,
        sum_dim=sum_dim,
        holds=sum_dim == k,
    )


@dataclass(frozen=True)
class CartanCertificate:
    """Certifies that the centralizer of the probe is a commutative Cartan
    subalgebra: commutative (hence nilpotent) and self-normalizing."""

    k: int
    probe: Tuple[Fraction, ...]
    dim: int
    commutative: bool
    normalizer_dim: int
    self_normalizing: bool
    is_cartan: bool

    def to_json(self):
        return {
            "k": self.k,
            "probe_point": [rat_str(c) for c in self.probe],
            "dims": {"centralizer": self.dim, "normalizer": self.normalizer_dim},
            "commutative": self.commutative,
            "self_normalizing": self.self_normalizing,
            "is_cartan": self.is_cartan,
        }


def cartan_certificate(x: LieElement) -> CartanCertificate:
    h = centralizer(x)
    n = normalizer(h)
    commutative = h.is_commutative()
    self_normalizing = n.dim == h.dim
    return CartanCertificate(
        k=x.k,
        probe=x.coords,
        dim=h.dim,
        commutative=commutative,
        normalizer_dim=n.dim,
        self_normalizing=self_normalizing,
        is_cartan=commutative and self_normalizing,
    )


@dataclass(frozen=True)
class WeylFinitenessCertificate:
    """Infinitesimal finiteness certificate for the Weyl group of the
    conjugation action: the normalizer of the probe's centralizer equals
    the centralizer. Computed and reported at any probe, generic or not."""

    k: int
    probe: Tuple[Fraction, ...]
    centralizer_dim: int
    normalizer_dim: int
    equality: bool
    cartan_ok: bool

    def to_json(self):
        return {
            "k": self.k,
            "probe_point": [rat_str(c) for c in self.probe],
            "dims": {
                "centralizer": self.centralizer_dim,
                "normalizer": self.normalizer_dim,
            },
            "equality": self.equality,
            "cartan_ok": self.cartan_ok,
        }


def weyl_finiteness_certificate(x: LieElement) -> WeylFinitenessCertificate:
    cartan = cartan_certificate(x)
    return WeylFinitenessCertificate(
        k=x.k,
        probe=x.coords,
        centralizer_dim=cartan.dim,
        normalizer_dim=cartan.normalizer_dim,
        equality=cartan.self_normalizing,
        cartan_ok=cartan.is_cartan,
    )


@dataclass(frozen=True)
class DerivedReport:
    """The computed derived subalgebra and its consistency data.

    equals_full_algebra records whether the span of all brackets is the
    whole algebra; it is reported as data, never presumed either way.
    """

    k: int
    subalgebra: Subalgebra
    closed_under_bracket: bool
    contains_weight_brackets: bool
    equals_full_algebra: bool

    @property
    def dim(self) -> int:
        return self.subalgebra.dim

    def to_json(self):
        return {
            "k": self.k,
            "dim": self.dim,
            "basis": self.subalgebra.to_json()["basis"],
            "closed_under_bracket": self.closed_under_bracket,
            "contains_weight_brackets": self.contains_weight_brackets,
            "equals_full_algebra": self.equals_full_algebra,
        }


def derived_report(k: int) -> DerivedReport:
    sub = derived_subalgebra(k)
    basis = lie_basis(k)
    weight_brackets_in = all(
        sub.contains(bracket(basis[0], basis[j])) for j in range(1, k)
    )
    return DerivedReport(
        k=k,
        subalgebra=sub,
        closed_under_bracket=sub.is_closed_under_bracket(),
        contains_weight_brackets=weight_brackets_in,
        equals_full_algebra=sub.dim == k,
    )
