"""Group law, matrix realization, and the unipotent subgroup."""

import random
from fractions import Fraction
from math import comb

import pytest

from jetinv.errors import DomainError
from jetinv.exact import ExactMatrix
from jetinv.reparam import (
    Reparam,
    compose,
    compositions,
    group_matrix,
    invert,
    is_unipotent,
    random_reparam,
)


def series_powers_oracle(f: Reparam):
    """Row i of the group matrix must be the t-coefficients of f(t)^i.

    Computed here by plain truncated list convolution, independent of the
    composition-sum enumeration inside group_matrix.
    """
    k = f.k
    rows = []
    power = [Fraction(0)] + list(f.coeffs)  # power[d] = coeff of t^d in f^1
    rows.append(power[1:])
    for _ in range(k - 1):
        nxt = [Fraction(0)] * (k + 1)
        for d1 in range(1, k + 1):
            if power[d1] == 0:
                continue
            for d2 in range(1, k - d1 + 1):
                nxt[d1 + d2] += power[d1] * f.coeffs[d2 - 1]
        power = nxt
        rows.append(power[1:])
    return ExactMatrix(k, k, rows)


def test_identity_reparam_matrix():
    assert group_matrix(Reparam.identity(4)) == ExactMatrix.identity(4)


def test_matrix_k2_shape():
    a1, a2 = Fraction(3), Fraction(-5)
    m = group_matrix(Reparam.of(2, [a1, a2]))
    assert m == ExactMatrix.from_rows([[a1, a2], [0, a1**2]])


def test_matrix_k3_supdiagonal_entry():
    a1, a2, a3 = Fraction(2), Fraction(7), Fraction(-1)
    m = group_matrix(Reparam.of(3, [a1, a2, a3]))
    assert m[1, 2] == 2 * a1 * a2
    assert m[0, 2] == a3
    assert m.column(2)[2] == a1**3


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_matrix_matches_series_oracle(k):
    rng = random.Random(17 + k)
    for _ in range(25):
        f = random_reparam(rng, k, box=6)
        assert group_matrix(f) == series_powers_oracle(f)


def test_diagonal_is_powers_of_a1():
    rng = random.Random(2)
    f = random_reparam(rng, 5, box=9)
    m = group_matrix(f)
    for i in range(5):
        assert m[i, i] == f.coeffs[0] ** (i + 1)
    assert m.is_upper_triangular()


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_homomorphism_random_pairs(k):
    rng = random.Random(100 + k)
    for _ in range(60):
        f = random_reparam(rng, k)
        g = random_reparam(rng, k)
        assert group_matrix(compose(f, g)) == group_matrix(f) @ group_matrix(g)


def test_compose_identity_neutral():
    g = Reparam.of(3, [2, -1, 4])
    ident = Reparam.identity(3)
    assert compose(ident, g) == g
    assert compose(g, ident) == g


def test_compose_k2_unipotent_addition():
    b, c = Fraction(4), Fraction(-9)
    assert compose(Reparam.of(2, [1, b]), Reparam.of(2, [1, c])) == Reparam.of(
        2, [1, b + c]
    )


def test_compose_k3_top_coefficient_addition():
    b, c = Fraction(5), Fraction(2)
    assert compose(Reparam.of(3, [1, 0, b]), Reparam.of(3, [1, 0, c])) == Reparam.of(
        3, [1, 0, b + c]
    )


def test_compose_associative():
    rng = random.Random(5)
    for _ in range(40):
        k = rng.randint(2, 5)
        f, g, h = (random_reparam(rng, k) for _ in range(3))
        assert compose(compose(f, g), h) == compose(f, compose(g, h))


def test_invert_identity():
    assert invert(Reparam.identity(3)) == Reparam.identity(3)


def test_invert_k2():
    a = Fraction(7, 2)
    assert invert(Reparam.of(2, [1, a])) == Reparam.of(2, [1, -a])


def test_invert_scaling():
    assert invert(Reparam.of(4, [5, 0, 0, 0])) == Reparam.of(
        4, [Fraction(1, 5), 0, 0, 0]
    )


def test_invert_two_sided():
    rng = random.Random(23)
    for _ in range(40):
        k = rng.randint(1, 6)
        f = random_reparam(rng, k)
        g = invert(f)
        ident = Reparam.identity(k)
        assert compose(f, g) == ident
        assert compose(g, f) == ident


def test_a1_zero_rejected():
    with pytest.raises(DomainError):
        Reparam.of(3, [0, 1, 2])


def test_is_unipotent():
    assert is_unipotent(Reparam.of(3, [1, 5, -3]))
    assert not is_unipotent(Reparam.of(2, [2, 0]))
    assert is_unipotent(Reparam.identity(4))


def test_unipotent_closed_under_group_ops():
    rng = random.Random(31)
    for _ in range(30):
        k = rng.randint(2, 5)
        u = random_reparam(rng, k, unipotent=True)
        v = random_reparam(rng, k, unipotent=True)
        assert is_unipotent(compose(u, v))
        assert is_unipotent(invert(u))


def test_unipotent_matrices_unitriangular_det_one():
    rng = random.Random(37)
    for _ in range(20):
        k = rng.randint(2, 5)
        m = group_matrix(random_reparam(rng, k, unipotent=True))
        assert all(m[i, i] == 1 for i in range(k))
        assert m.det() == 1


def test_compositions_count():
    for total in range(1, 9):
        for parts in range(1, total + 1):
            assert len(compositions(total, parts)) == comb(total - 1, parts - 1)
    assert compositions(3, 5) == ()


def test_reparam_json_round_trip():
    f = Reparam.of(3, [Fraction(1, 2), -3, Fraction(7, 5)])
    assert Reparam.from_json(f.to_json()) == f
