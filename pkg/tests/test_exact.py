"""Tests for the exact rational linear algebra helpers.

sympy's Smith normal form is the independent oracle for the elementary
divisor computation; everything else is checked through algebraic
identities that hold exactly over the rationals.
"""

from fractions import Fraction

import numpy as np
import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form

from thetalab import Degenerate
from thetalab.exact import (
    column_lattice_basis,
    det,
    identity,
    integer_snf,
    inverse,
    is_integral,
    mat,
    matmul,
    matvec,
    rational_lattice_basis,
    solve,
    transpose,
    vec,
)


def sympy_divisors(A):
    """Nonnegative elementary divisors via sympy, padded with zeros."""
    M = sympy.Matrix(A)
    S = smith_normal_form(M)
    divs = [abs(S[i, i]) for i in range(min(S.shape))]
    return [int(d) for d in divs]


# ---------------------------------------------------------------------------
# Smith normal form


@pytest.mark.parametrize(
    "A",
    [
        [[1, 0], [0, 1]],
        [[2, 4], [6, 8]],
        [[0, 1], [-1, 0]],
        [[2, 0, 0], [0, 3, 0], [0, 0, 12]],
        [[1, 2, 3], [4, 5, 6], [7, 8, 9]],  # rank 2
        [[0, 0], [0, 0]],
    ],
)
def test_snf_known_matrices(A):
    got = integer_snf(A)
    want = sympy_divisors(A)
    # compare up to the zero padding convention
    assert [d for d in got if d] == [d for d in want if d]
    assert len(got) == min(len(A), len(A[0]))


def test_snf_random_against_sympy(rng):
    for _ in range(50):
        n = int(rng.integers(2, 6))
        m = int(rng.integers(2, 6))
        A = rng.integers(-9, 10, size=(n, m)).tolist()
        got = integer_snf(A)
        want = sympy_divisors(A)
        assert [d for d in got if d] == [d for d in want if d]


def test_snf_divisibility_chain(rng):
    for _ in range(30):
        A = rng.integers(-20, 21, size=(4, 4)).tolist()
        divs = [d for d in integer_snf(A) if d]
        for a, b in zip(divs, divs[1:]):
            assert b % a == 0


def test_snf_unimodular_invariance(rng):
    A = [[2, 1, 0, 0], [1, 2, 1, 0], [0, 1, 2, 1], [0, 0, 1, 8]]
    base = integer_snf(A)
    for _ in range(20):
        U = random_unimodular(rng, 4)
        V = random_unimodular(rng, 4)
        B = np.array(U) @ np.array(A) @ np.array(V)
        assert integer_snf(B.tolist()) == base


def random_unimodular(rng, n):
    """Product of elementary row operations; determinant +-1 by design."""
    U = np.eye(n, dtype=np.int64)
    for _ in range(12):
        i, j = rng.integers(0, n, size=2)
        if i == j:
            continue
        U[i] += int(rng.integers(-3, 4)) * U[j]
    if rng.integers(0, 2):
        U[[0, 1]] = U[[1, 0]]
    return U.tolist()


def test_random_unimodular_really_unimodular(rng):
    for _ in range(10):
        U = random_unimodular(rng, 4)
        assert abs(det(mat(U))) == 1


# ---------------------------------------------------------------------------
# fraction matrices


def test_inverse_roundtrip(rng):
    for _ in range(20):
        A = mat(rng.integers(-5, 6, size=(3, 3)).tolist())
        if det(A) == 0:
            continue
        assert matmul(A, inverse(A)) == identity(3)


def test_inverse_rejects_singular():
    with pytest.raises(Degenerate):
        inverse(mat([[1, 2], [2, 4]]))


def test_det_multiplicative(rng):
    for _ in range(20):
        A = mat(rng.integers(-4, 5, size=(3, 3)).tolist())
        B = mat(rng.integers(-4, 5, size=(3, 3)).tolist())
        assert det(matmul(A, B)) == det(A) * det(B)


def test_solve_exact():
    A = mat([[2, 1], [1, 3]])
    b = vec([1, 0])
    x = solve(A, b)
    assert matvec(A, x) == b
    assert x == [Fraction(3, 5), Fraction(-1, 5)]


def test_transpose_involution(rng):
    A = mat(rng.integers(-5, 6, size=(2, 4)).tolist())
    assert transpose(transpose(A)) == A


def test_is_integral():
    assert is_integral(mat([[1, 2], [3, 4]]))
    assert not is_integral([[Fraction(1, 2), 0], [0, 1]])


# ---------------------------------------------------------------------------
# lattice bases


def test_column_lattice_basis_preserves_lattice(rng):
    # the reduced basis must generate the same integer column lattice:
    # every original generator is an integer combination of the basis
    for _ in range(10):
        gens = rng.integers(-6, 7, size=(6, 4)).tolist()  # six 4-vectors
        A = [[g[i] for g in gens] for i in range(4)]  # as columns
        B = column_lattice_basis(A)
        Bm = mat(B)
        if len(B[0]) < 4 or det(Bm) == 0:
            continue
        for g in gens:
            x = solve(Bm, vec(g))
            assert all(t.denominator == 1 for t in x)


def test_rational_lattice_basis_contains_generators():
    half = Fraction(1, 2)
    gens = [vec([int(i == j) for i in range(4)]) for j in range(4)]
    gens += [vec([half, 0, half, 0]), vec([0, half, 0, 0])]
    Bm = mat(rational_lattice_basis(gens))
    assert det(Bm) != 0
    for g in gens:
        x = solve(Bm, g)
        assert all(t.denominator == 1 for t in x)
    # the enlarged lattice contains Z^4 with index 4 = 2^2
    assert abs(Fraction(1, 1) / det(Bm)) == 4
