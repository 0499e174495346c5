"""Exact linear algebra: rank, kernel, inverse, against an independent oracle."""

import random
from fractions import Fraction

import pytest
import sympy

from jetinv.exact import (
    ExactMatrix,
    in_row_space,
    kernel_of_vectors,
    linear_solve,
    parse_rat,
    rank_of_vectors,
    rat,
    rat_str,
    row_space_basis,
)


def random_matrix(rng, rows, cols, box=8, denominators=False):
    def entry():
        num = rng.randint(-box, box)
        den = rng.randint(1, 4) if denominators else 1
        return Fraction(num, den)

    return ExactMatrix(rows, cols, [[entry() for _ in range(cols)] for _ in range(rows)])


def test_rational_round_trip():
    assert rat_str(rat("3/4")) == "3/4"
    assert rat_str(rat(5)) == "5/1"
    assert parse_rat("-7/2") == Fraction(-7, 2)
    assert rat(Fraction(2, 6)) == Fraction(1, 3)


def test_rank_identity():
    assert ExactMatrix.identity(3).rank() == 3


def test_rank_zero_matrix():
    assert ExactMatrix.zeros(2, 2).rank() == 0


def test_rank_proportional_rows():
    assert ExactMatrix.from_rows([[1, 2], [2, 4]]).rank() == 1


def test_kernel_identity_empty():
    assert ExactMatrix.identity(4).kernel_basis() == []


def test_kernel_zero_matrix_full():
    basis = ExactMatrix.zeros(2, 3).kernel_basis()
    assert len(basis) == 3


def test_kernel_single_relation():
    basis = ExactMatrix.from_rows([[1, 1]]).kernel_basis()
    assert len(basis) == 1
    v = basis[0]
    # spans the same line as (1, -1)
    assert v[0] * (-1) == v[1] * 1 and any(c != 0 for c in v)


@pytest.mark.parametrize("seed", range(6))
def test_rank_nullity_and_sympy_oracle(seed):
    rng = random.Random(seed)
    for _ in range(12):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 6)
        m = random_matrix(rng, rows, cols, denominators=rng.random() < 0.5)
        rank = m.rank()
        kernel = m.kernel_basis()
        assert rank + len(kernel) == cols
        for v in kernel:
            assert all(x == 0 for x in m.mul_vector(v))
        oracle = sympy.Matrix([[sympy.Rational(x) for x in row] for row in m.entries])
        assert rank == oracle.rank()


def test_inverse_round_trip():
    rng = random.Random(3)
    for _ in range(10):
        n = rng.randint(1, 5)
        m = random_matrix(rng, n, n, denominators=True)
        if m.rank() < n:
            continue
        assert m @ m.inverse() == ExactMatrix.identity(n)
        assert m.inverse() @ m == ExactMatrix.identity(n)


def test_inverse_singular_rejected():
    with pytest.raises(ValueError):
        ExactMatrix.from_rows([[1, 2], [2, 4]]).inverse()


def test_det_matches_sympy():
    rng = random.Random(9)
    for _ in range(10):
        n = rng.randint(1, 5)
        m = random_matrix(rng, n, n, denominators=True)
        oracle = sympy.Matrix([[sympy.Rational(x) for x in row] for row in m.entries])
        assert m.det() == Fraction(sympy.nsimplify(oracle.det()))


def test_linear_solve_consistent_and_inconsistent():
    a = ExactMatrix.from_rows([[1, 2], [3, 4]])
    x = linear_solve(a, [5, 6])
    assert x is not None and a.mul_vector(x) == (Fraction(5), Fraction(6))
    bad = ExactMatrix.from_rows([[1, 1], [2, 2]])
    assert linear_solve(bad, [1, 3]) is None


def test_vector_helpers_handle_empty_families():
    assert rank_of_vectors([], 4) == 0
    basis = kernel_of_vectors([], 3)
    assert len(basis) == 3
    assert row_space_basis([], 2) == []
    assert in_row_space([0, 0], [], 2)
    assert not in_row_space([1, 0], [], 2)


def test_row_space_basis_is_canonical():
    rows = [[2, 4, 0], [1, 2, 1]]
    basis = row_space_basis(rows, 3)
    # RREF rows: leading ones, zeros above and below pivots
    assert basis == [
        (Fraction(1), Fraction(2), Fraction(0)),
        (Fraction(0), Fraction(0), Fraction(1)),
    ]


def test_matrix_json_round_trip():
    m = ExactMatrix.from_rows([[Fraction(1, 3), 2], [0, Fraction(-5, 7)]])
    assert ExactMatrix.from_json(m.to_json()) == m
