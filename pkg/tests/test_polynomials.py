"""Weighted monomial enumeration and polynomial substitution."""

import random
from fractions import Fraction
from itertools import product
from math import comb

import pytest

from jetinv.exact import ExactMatrix
from jetinv.polynomials import (
    WeightedPoly,
    monomials,
    num_vars,
    var_index,
    weighted_degree,
)


def brute_force_monomials(k, n, m):
    """Independent enumeration: raw product over exponent boxes."""
    nv = num_vars(k, n)
    out = []
    for exps in product(range(m + 1), repeat=nv):
        if weighted_degree(exps, n) == m:
            out.append(exps)
    return sorted(out)


def test_monomials_k1_n2_m2():
    mons = monomials(1, 2, 2)
    assert len(mons) == 3
    assert set(mons) == {(2, 0), (1, 1), (0, 2)}


def test_monomials_k2_n1_m2():
    mons = monomials(2, 1, 2)
    assert set(mons) == {(2, 0), (0, 1)}


def test_monomials_k3_n1_m4_partitions():
    # partitions of 4 into parts of size at most 3
    mons = monomials(3, 1, 4)
    assert len(mons) == 4
    assert mons == brute_force_monomials(3, 1, 4)


@pytest.mark.parametrize("k,n,m", [(2, 2, 3), (3, 1, 5), (2, 3, 4), (4, 1, 6)])
def test_monomials_match_brute_force(k, n, m):
    assert monomials(k, n, m) == brute_force_monomials(k, n, m)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_monomial_count_k1_binomial(n, m):
    assert len(monomials(1, n, m)) == comb(m + n - 1, n - 1)


def test_monomials_deterministic_order():
    assert monomials(2, 2, 2) == sorted(monomials(2, 2, 2))


def xi(k, n, j, i):
    return WeightedPoly.variable(k, n, j, i)


def test_substitute_identity():
    p = xi(2, 1, 1, 1) * xi(2, 1, 2, 1) + xi(2, 1, 1, 1).scale(Fraction(1, 2))
    assert p.substitute_linear(ExactMatrix.identity(2)) == p


def shear_2_1():
    """xi[2,1] -> xi[2,1] + xi[1,1], xi[1,1] fixed."""
    lmat = [[1, 1], [0, 1]]
    return ExactMatrix.from_rows(lmat)


def test_substitute_linear_on_variable():
    p = xi(2, 1, 2, 1)
    assert p.substitute_linear(shear_2_1()) == xi(2, 1, 2, 1) + xi(2, 1, 1, 1)


def test_substitute_linear_expands_product():
    p = xi(2, 1, 1, 1) * xi(2, 1, 2, 1)
    expect = xi(2, 1, 1, 1) * xi(2, 1, 2, 1) + xi(2, 1, 1, 1) * xi(2, 1, 1, 1)
    assert p.substitute_linear(shear_2_1()) == expect


def random_poly(rng, k, n, terms=4, degree=3, box=5):
    p = WeightedPoly.zero(k, n)
    nv = num_vars(k, n)
    for _ in range(terms):
        exps = [0] * nv
        for _ in range(rng.randint(0, degree)):
            exps[rng.randrange(nv)] += 1
        p = p + WeightedPoly.from_monomial(k, n, exps, rng.randint(-box, box))
    return p


def random_varspace_matrix(rng, k, n, box=3):
    nv = num_vars(k, n)
    return ExactMatrix(
        nv, nv, [[rng.randint(-box, box) for _ in range(nv)] for _ in range(nv)]
    )


@pytest.mark.parametrize("seed", range(5))
def test_substitution_composition_order(seed):
    # substituting L1 then L2 composes to the single matrix L2 * L1
    rng = random.Random(seed)
    k, n = 2, 2
    p = random_poly(rng, k, n)
    l1 = random_varspace_matrix(rng, k, n)
    l2 = random_varspace_matrix(rng, k, n)
    left = p.substitute_linear(l1).substitute_linear(l2)
    right = p.substitute_linear(l2 @ l1)
    assert left == right


def test_weighted_components_split_and_recombine():
    p = xi(2, 1, 1, 1) + xi(2, 1, 2, 1) + xi(2, 1, 1, 1) * xi(2, 1, 1, 1)
    parts = p.weighted_components()
    assert sorted(parts) == [1, 2]
    assert parts[1] == xi(2, 1, 1, 1)
    total = WeightedPoly.zero(2, 1)
    for component in parts.values():
        assert component.is_weighted_homogeneous()
        total = total + component
    assert total == p


def test_zero_coefficients_never_stored():
    p = xi(2, 1, 1, 1) - xi(2, 1, 1, 1)
    assert p.is_zero() and p.terms == {}


def test_power_and_degree():
    p = xi(3, 1, 2, 1) + xi(3, 1, 1, 1)
    q = p**3
    assert q.weighted_degree() == 6
    assert q.coefficient((0, 3, 0)) == 1
    assert q.coefficient((1, 2, 0)) == 3


def test_var_index_rejects_out_of_grid():
    with pytest.raises(ValueError):
        var_index(2, 2, 3, 1)


def test_poly_json_round_trip():
    p = xi(2, 2, 1, 1) * xi(2, 2, 2, 2) - xi(2, 2, 1, 2) * xi(2, 2, 2, 1)
    assert WeightedPoly.from_json(p.to_json()) == p
