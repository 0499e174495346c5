"""Exact-arithmetic invariant theory of the jet reparametrization group.

The package models, over the rationals and with no rounding anywhere:

* the group of truncated reparametrizations of a curve parameter, its
  matrix realization and group law;
* its Lie algebra, adjoint structure, centralizers, Cartan data, and the
  rank certificates for generic stabilizers and Weyl-group finiteness;
* the right action on jets of curves, orbit and stabilizer dimensions,
  and the transcendence-degree census of the invariant field;
* invariant weighted polynomials on jet coordinates as kernels of the
  unipotent derivations, with dimension and generation tables;
* the embedding of regular jets into a Grassmannian of subspaces of
  truncated symmetric powers, in wedge coordinates.
"""

__version__ = "0.1.0"

from .errors import BasisClosureError, DomainError, ResourceCapExceeded
from .exact import ExactMatrix, Rational, rat, rat_str
from .polynomials import WeightedPoly, monomials
from .reparam import Reparam, compose, group_matrix, invert, is_unipotent
from .lie import (
    LieElement,
    Subalgebra,
    adjoint_conjugation,
    ad_action_matrix,
    bracket,
    cartan_certificate,
    centralizer,
    derived_report,
    derived_subalgebra,
    elashvili_adjoint,
    fixed_space,
    lie_basis,
    normalizer,
    weyl_finiteness_certificate,
)
from .jets import (
    Jet,
    act,
    elashvili_jet,
    infinitesimal_action,
    is_regular,
    orbit_dim,
    singular_locus_codim,
    stabilizer_algebra,
    strata_histogram,
    trdeg,
)
from .invariants import (
    Derivation,
    InvariantSpace,
    act_on_poly,
    dimension_table,
    generation_profile,
    graded_component_invariance_check,
    invariant_basis,
    unipotent_derivations,
    verify_invariance,
)
from .grassmann import (
    PluckerVector,
    SymVector,
    a_nk_membership,
    check_plucker_relations,
    gl_action,
    invariance_check,
    phi,
    plucker,
    plucker_of_jet,
    projective_equal,
    sym_basis,
    z_point,
)

__all__ = [name for name in dir() if not name.startswith("_")]
