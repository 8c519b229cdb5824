"""Test exact linear algebra helpers."""
from fractions import Fraction
import math

import pytest

from bwcousins.exact_linalg import (
    Dyadic,
    cholesky,
    determinant,
    hnf,
    hnf_basis,
    integer_kernel,
    isqrt_floor,
    lll_reduce,
    mat_mul,
    rational_inverse,
    reduced_gram,
    snf,
    transpose,
    two_valuation,
    vec_mat,
)
from bwcousins.exceptions import LatticeError

BIG = 2**64

MATRICES = [
    [[2, 4], [1, 3]],
    [[BIG + 1, BIG, 3], [BIG, BIG - 1, 5], [2 * BIG + 3, 2 * BIG - 1, 7]],
    [[BIG + 1, BIG + 3], [2 * BIG + 2, 2 * BIG + 6], [BIG, BIG + 1]],
    [[6, 4, 2], [3, 1, 5], [9, 5, 7]],
    [[1, 2, 3, 4], [2, 4, 6, 8], [0, 0, 5, 5]],
    [[4, 0, 0], [0, 6, 0], [2, 3, 9], [0, 0, 12]],
]


def test_dyadic_canonical():
    """Test dyadics are stored with an odd mantissa or zero exponent."""
    assert Dyadic(4, 3) == Dyadic(1, 1)
    assert Dyadic(0, 5) == Dyadic(0)
    assert Dyadic(3, -2) == Dyadic(12)
    assert str(Dyadic(6, 2)) == "3/2^1"


def test_dyadic_parse():
    """Test the m/2^e wire format."""
    assert Dyadic.parse("3/2^2") == Dyadic(3, 2)
    assert Dyadic.parse("-5") == Dyadic(-5)
    assert Dyadic.make("1/2^1") == Dyadic(1, 1)
    assert Dyadic.make(Fraction(3, 4)) == Dyadic(3, 2)
    assert Dyadic.make(Dyadic(7)) == Dyadic(7)
    with pytest.raises(ValueError):
        Dyadic.parse("1/3")
    with pytest.raises(ValueError):
        Dyadic.make(Fraction(1, 3))


def test_dyadic_arithmetic():
    """Test addition, negation and multiplication."""
    half = Dyadic(1, 1)
    assert half + half == Dyadic(1)
    assert half - Dyadic(1) == Dyadic(-1, 1)
    assert half * half == Dyadic(1, 2)
    assert 2 * half == Dyadic(1)
    assert Dyadic(3).halve(2) == Dyadic(3, 2)
    assert (half + 1).to_fraction() == Fraction(3, 2)


def test_dyadic_level():
    """Test the 2-adic level."""
    assert Dyadic(1, 2).level == 2
    assert Dyadic(4).level == -2
    assert Dyadic(3).level == 0
    assert Dyadic(0).level == -math.inf


def test_two_valuation():
    """Test the 2-adic valuation of integers."""
    assert two_valuation(12) == 2
    assert two_valuation(-8) == 3
    assert two_valuation(7) == 0


def test_hnf_example():
    """Test the HNF of a small matrix."""
    height, _ = hnf([[2, 4], [1, 3]])
    assert height == [[1, 1], [0, 2]]


@pytest.mark.parametrize("matrix", MATRICES)
def test_hnf_transform(matrix):
    """Test U·M = [H; 0] with H in Hermite normal form."""
    height, trans = hnf(matrix)
    product = mat_mul(trans, matrix)
    assert product[: len(height)] == height
    assert all(not any(row) for row in product[len(height) :])
    assert abs(determinant(trans)) == 1
    for index, row in enumerate(height):
        col = next(j for j, value in enumerate(row) if value)
        assert row[col] > 0
        for above in height[:index]:
            assert 0 <= above[col] < row[col]


@pytest.mark.parametrize("matrix", MATRICES)
def test_hnf_basis_matches(matrix):
    """Test the incremental HNF is the canonical one."""
    height, _ = hnf(matrix)
    assert hnf_basis(matrix) == height


def test_hnf_basis_modulus():
    """Test the modular HNF gives the same canonical form."""
    assert hnf_basis([[2, 4], [1, 3]], modulus=2) == [[1, 1], [0, 2]]
    rows = [[4, 0, 0], [0, 4, 0], [0, 0, 4], [2, 2, 0], [1, 1, 1]]
    assert hnf_basis(rows, modulus=4) == hnf(rows)[0]


def test_hnf_basis_empty():
    """Test the HNF of no rows."""
    assert hnf_basis([]) == []


def test_snf():
    """Test invariant factors."""
    assert snf([[2, 0], [0, 3]]) == (1, 6)
    assert snf([[2, 4], [1, 3]]) == (1, 2)
    assert snf([[2, 0], [0, 2]]) == (2, 2)
    assert snf([]) == ()


def test_integer_kernel():
    """Test the saturated left kernel."""
    assert integer_kernel([[1], [1]]) == [[1, -1]]
    kernel = integer_kernel([[2, 0], [0, 2], [1, 1]])
    assert len(kernel) == 1
    assert vec_mat(kernel[0], [[2, 0], [0, 2], [1, 1]]) == [0, 0]
    assert integer_kernel([[1, 0], [0, 1]]) == []


def test_integer_kernel_large_entries():
    """Test the kernel stays exact for entries beyond machine words."""
    assert integer_kernel([[BIG + 1], [BIG]]) == [[BIG, -BIG - 1]]
    matrix = [[BIG + 1, BIG + 3], [2 * BIG + 2, 2 * BIG + 6], [BIG, BIG + 1]]
    kernel = integer_kernel(matrix)
    assert kernel == [[2, -1, 0]]


def test_determinant_and_inverse():
    """Test exact determinants and inverses."""
    assert determinant([[2, 1], [1, 2]]) == 3
    assert determinant([[Fraction(1, 2), 0], [0, 2]]) == 1
    assert determinant([]) == 1
    assert rational_inverse([[2, 1], [1, 1]]) == [[1, -1], [-1, 2]]
    assert rational_inverse([[2, 0], [0, 4]]) == [
        [Fraction(1, 2), 0],
        [0, Fraction(1, 4)],
    ]
    with pytest.raises(LatticeError):
        rational_inverse([[1, 2], [2, 4]])


def test_lll_small():
    """Test LLL reduces a skewed basis of Z^2."""
    trans = lll_reduce([[1, 0], [5, 1]])
    assert trans == [[1, 0], [-5, 1]]
    assert reduced_gram([[1, 5], [5, 26]], trans) == [[1, 0], [0, 1]]


@pytest.mark.parametrize(
    "rows",
    [
        [[2, 0, 0], [1, 1, 0], [7, 5, 1]],
        [[1, 1, 0, 0], [0, 1, 1, 0], [13, 12, 1, 1]],
        [[2**64 + 1, 3, 0], [2**64, 2, 1]],
    ],
)
def test_lll_transform(rows):
    """Test the transform is unimodular and the reduced Gram is H·G·H^T."""
    gram = mat_mul(rows, transpose(rows))
    trans = lll_reduce(rows)
    assert abs(determinant(trans)) == 1
    reduced = reduced_gram(gram, trans)
    assert reduced == mat_mul(mat_mul(trans, rows), transpose(mat_mul(trans, rows)))
    assert determinant(reduced) == determinant(gram)
    assert reduced[0][0] <= gram[0][0]


def test_lll_dependent_rows():
    """Test LLL rejects linearly dependent rows."""
    with pytest.raises(LatticeError):
        lll_reduce([[1, 2], [2, 4]])


def test_cholesky():
    """Test the quadratic form decomposition."""
    quad = cholesky([[2, 1], [1, 2]])
    assert quad[0][0] == 2
    assert quad[0][1] == Fraction(1, 2)
    assert quad[1][1] == Fraction(3, 2)
    with pytest.raises(LatticeError):
        cholesky([[0, 1], [1, 0]])


def test_isqrt_floor():
    """Test the floor of rational square roots."""
    assert isqrt_floor(Fraction(9, 4)) == 1
    assert isqrt_floor(8) == 2
    assert isqrt_floor(16) == 4
    with pytest.raises(ValueError):
        isqrt_floor(-1)
