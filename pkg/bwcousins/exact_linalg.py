"""Exact integer and dyadic linear algebra."""
from dataclasses import dataclass
from fractions import Fraction
import logging
import math
import re

from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors
from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from .const import LLL_DELTA
from .exceptions import LatticeError

_LOGGER = logging.getLogger(__name__)

DYADIC_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*2\^(\d+))?\s*$")


def two_valuation(value):
    """Return the exponent of 2 in a nonzero integer."""
    value = abs(value)
    return (value & -value).bit_length() - 1


@dataclass(frozen=True)
class Dyadic:
    """Exact element of Z[1/2], value = mantissa / 2^exponent."""

    mantissa: int
    exponent: int = 0

    def __post_init__(self):
        """Bring the value into canonical form."""
        mantissa, exponent = self.mantissa, self.exponent
        if exponent < 0:
            mantissa, exponent = mantissa << -exponent, 0
        if mantissa == 0:
            exponent = 0
        elif exponent:
            shift = min(two_valuation(mantissa), exponent)
            mantissa, exponent = mantissa >> shift, exponent - shift
        object.__setattr__(self, "mantissa", mantissa)
        object.__setattr__(self, "exponent", exponent)

    @classmethod
    def make(cls, value):
        """Return a Dyadic from an int, Fraction, Dyadic or 'm/2^e' string."""
        if isinstance(value, Dyadic):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        value = Fraction(value)
        den = value.denominator
        if den & (den - 1):
            raise ValueError(f"{value} is not a dyadic rational")
        return cls(value.numerator, den.bit_length() - 1)

    @classmethod
    def parse(cls, text):
        """Parse the 'm/2^e' wire format."""
        match = DYADIC_RE.match(text)
        if not match:
            raise ValueError(f"{text!r} is not in the m/2^e format")
        return cls(int(match.group(1)), int(match.group(2) or 0))

    @property
    def level(self):
        """Return the 2-adic level; minus infinity for zero."""
        if self.mantissa == 0:
            return -math.inf
        if self.exponent:
            return self.exponent
        return -two_valuation(self.mantissa)

    def to_fraction(self):
        """Return the value as a Fraction."""
        return Fraction(self.mantissa, 1 << self.exponent)

    def __str__(self):
        """Return the 'm/2^e' wire format."""
        return f"{self.mantissa}/2^{self.exponent}"

    def __add__(self, other):
        """Add two dyadics."""
        other = Dyadic.make(other)
        exp = max(self.exponent, other.exponent)
        return Dyadic(
            (self.mantissa << (exp - self.exponent))
            + (other.mantissa << (exp - other.exponent)),
            exp,
        )

    __radd__ = __add__

    def __neg__(self):
        """Negate."""
        return Dyadic(-self.mantissa, self.exponent)

    def __sub__(self, other):
        """Subtract two dyadics."""
        return self + (-Dyadic.make(other))

    def __mul__(self, other):
        """Multiply two dyadics."""
        other = Dyadic.make(other)
        return Dyadic(self.mantissa * other.mantissa, self.exponent + other.exponent)

    __rmul__ = __mul__

    def halve(self, times=1):
        """Divide by 2^times."""
        return Dyadic(self.mantissa, self.exponent + times)


def identity_matrix(size):
    """Return the identity IntMatrix."""
    return [[int(i == j) for j in range(size)] for i in range(size)]


def transpose(matrix):
    """Return the transpose of a matrix given as a list of rows."""
    return [list(col) for col in zip(*matrix)]


def mat_mul(left, right):
    """Return the product of two matrices."""
    right_t = transpose(right)
    return [[sum(a * b for a, b in zip(row, col)) for col in right_t] for row in left]


def vec_mat(vector, matrix):
    """Return the row vector times matrix."""
    if not matrix:
        return []
    result = [0] * len(matrix[0])
    for coeff, row in zip(vector, matrix):
        if coeff:
            for j, entry in enumerate(row):
                if entry:
                    result[j] += coeff * entry
    return result


def xgcd(a_value, b_value):
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    old_r, r_value = a_value, b_value
    old_s, s_value = 1, 0
    old_t, t_value = 0, 1
    while r_value:
        quotient = old_r // r_value
        old_r, r_value = r_value, old_r - quotient * r_value
        old_s, s_value = s_value, old_s - quotient * s_value
        old_t, t_value = t_value, old_t - quotient * t_value
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _axpy(target, coeff, source, start=0):
    """Set target -= coeff * source in place, from index start."""
    for j in range(start, len(source)):
        if source[j]:
            target[j] -= coeff * source[j]


def hnf(matrix):
    """Return (H, U) with H the row-style Hermite normal form of matrix.

    U is square unimodular with U·M = [H; 0]: its first rank rows give H and
    its remaining rows give a basis of the left kernel of M.
    """
    rows = [list(map(int, row)) for row in matrix]
    m_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    trans = identity_matrix(m_rows)
    pivot_row = 0
    for col in range(n_cols):
        if pivot_row == m_rows:
            break
        while True:
            nonzero = [i for i in range(pivot_row, m_rows) if rows[i][col]]
            if not nonzero:
                break
            best = min(nonzero, key=lambda i: (abs(rows[i][col]), i))
            rows[pivot_row], rows[best] = rows[best], rows[pivot_row]
            trans[pivot_row], trans[best] = trans[best], trans[pivot_row]
            pivot = rows[pivot_row][col]
            done = True
            for i in range(pivot_row + 1, m_rows):
                if rows[i][col]:
                    quotient = rows[i][col] // pivot
                    _axpy(rows[i], quotient, rows[pivot_row], col)
                    _axpy(trans[i], quotient, trans[pivot_row])
                    if rows[i][col]:
                        done = False
            if done:
                break
        if not rows[pivot_row][col]:
            continue
        if rows[pivot_row][col] < 0:
            rows[pivot_row] = [-x for x in rows[pivot_row]]
            trans[pivot_row] = [-x for x in trans[pivot_row]]
        pivot = rows[pivot_row][col]
        for i in range(pivot_row):
            quotient = rows[i][col] // pivot
            if quotient:
                _axpy(rows[i], quotient, rows[pivot_row], col)
                _axpy(trans[i], quotient, trans[pivot_row])
        pivot_row += 1
    return rows[:pivot_row], trans


def _reduce_mod(row, modulus, start):
    """Reduce the entries of row from start on into [0, modulus)."""
    for j in range(start, len(row)):
        if row[j]:
            row[j] %= modulus


def hnf_basis(rows, n_cols=None, modulus=None):
    """Return the canonical row-style HNF of the lattice spanned by rows.

    Rows are inserted one at a time into an echelon table keyed by pivot column.
    With modulus given, the caller asserts that modulus·Z^n lies in the lattice,
    which keeps every entry below modulus during the elimination.
    """
    rows = [list(map(int, row)) for row in rows]
    if n_cols is None:
        if not rows:
            return []
        n_cols = len(rows[0])
    pivots = {}
    if modulus is not None:
        for col in range(n_cols):
            unit = [0] * n_cols
            unit[col] = modulus
            pivots[col] = unit
    for vec in rows:
        if modulus is not None:
            _reduce_mod(vec, modulus, 0)
        col = 0
        while col < n_cols:
            if not vec[col]:
                col += 1
                continue
            prow = pivots.get(col)
            if prow is None:
                if vec[col] < 0:
                    vec = [-x for x in vec]
                pivots[col] = vec
                break
            a_value, b_value = prow[col], vec[col]
            if b_value % a_value == 0:
                _axpy(vec, b_value // a_value, prow, col)
            else:
                gcd, s_value, t_value = xgcd(a_value, b_value)
                new_pivot = [s_value * p + t_value * v for p, v in zip(prow, vec)]
                a_red, b_red = a_value // gcd, b_value // gcd
                vec = [a_red * v - b_red * p for p, v in zip(prow, vec)]
                if modulus is not None:
                    _reduce_mod(new_pivot, modulus, col + 1)
                pivots[col] = new_pivot
            if modulus is not None:
                _reduce_mod(vec, modulus, col + 1)
            col += 1
    cols = sorted(pivots)
    result = [pivots[col] for col in cols]
    for i, col in enumerate(cols):
        pivot = result[i][col]
        for k in range(i):
            quotient = result[k][col] // pivot
            if quotient:
                _axpy(result[k], quotient, result[i], col)
    return result


def snf(matrix):
    """Return the nonzero invariant factors d_1 | d_2 | ... of an integer matrix."""
    if not matrix or not matrix[0]:
        return ()
    factors = invariant_factors(Matrix(matrix), domain=ZZ)
    return tuple(sorted(abs(int(f)) for f in factors if f))


def integer_kernel(matrix):
    """Return a canonical basis of the saturated left kernel {x : xM = 0}."""
    if not matrix:
        return []
    height, trans = hnf(matrix)
    kernel = trans[len(height) :]
    return hnf_basis(kernel, n_cols=len(matrix))


def _domain_matrix(matrix):
    """Return an integer DomainMatrix and the common denominator used."""
    ints, den = integral_form(matrix)
    elements = [[ZZ(entry) for entry in row] for row in ints]
    return DomainMatrix(elements, (len(ints), len(ints[0])), ZZ), den


def determinant(matrix):
    """Return the exact determinant of a square rational matrix."""
    size = len(matrix)
    if size == 0:
        return Fraction(1)
    domain_matrix, den = _domain_matrix(matrix)
    return Fraction(int(domain_matrix.det()), den**size)


def rational_inverse(matrix):
    """Return the exact inverse of a square rational matrix as Fractions."""
    size = len(matrix)
    if size == 0:
        return []
    if determinant(matrix) == 0:
        raise LatticeError("Matrix is singular")
    domain_matrix, den = _domain_matrix(matrix)
    inverse = domain_matrix.convert_to(QQ).inv().to_Matrix()
    return [
        [
            Fraction(int(inverse[i, j].p), int(inverse[i, j].q)) * den
            for j in range(size)
        ]
        for i in range(size)
    ]


def integral_form(gram):
    """Return (M, den) with M an integer matrix and gram = M / den."""
    den = 1
    for row in gram:
        for entry in row:
            entry_den = Fraction(entry).denominator
            den = den * entry_den // math.gcd(den, entry_den)
    return [[int(Fraction(entry) * den) for entry in row] for row in gram], den


def lll_reduce(rows, delta=LLL_DELTA):
    """Return the unimodular H with H·B LLL-reduced for integer basis rows B.

    The rows must be linearly independent; the standard inner product is used.
    """
    if not rows:
        return []
    size = len(rows)
    gram = mat_mul(rows, transpose(rows))
    if determinant(gram) == 0:
        raise LatticeError("Basis rows are linearly dependent")
    basis = DomainMatrix(
        [[ZZ(int(entry)) for entry in row] for row in rows], (size, len(rows[0])), ZZ
    )
    _, trans = basis.lll_transform(delta=QQ(*delta))
    _LOGGER.debug("LLL reduced a basis of rank %s", size)
    return [[int(entry) for entry in row] for row in trans.to_list()]


def reduced_gram(gram, trans):
    """Return H·G·H^T, the Gram matrix in the basis given by the rows of H."""
    return mat_mul(mat_mul(trans, gram), transpose(trans))


def cholesky(gram):
    """Return the exact quadratic-form decomposition used for enumeration.

    Q(x) = sum_i q[i][i] * (x_i + sum_{j>i} q[i][j] x_j)^2.
    """
    size = len(gram)
    quad = [[Fraction(entry) for entry in row] for row in gram]
    for i in range(size):
        if quad[i][i] <= 0:
            raise LatticeError("Gram matrix is not positive definite")
        for j in range(i + 1, size):
            quad[j][i] = quad[i][j]
            quad[i][j] = quad[i][j] / quad[i][i]
        for k in range(i + 1, size):
            for col in range(k, size):
                quad[k][col] -= quad[k][i] * quad[i][col]
    return quad


def isqrt_floor(value):
    """Return floor(sqrt(value)) for a non-negative rational."""
    value = Fraction(value)
    if value < 0:
        raise ValueError("negative value")
    return math.isqrt(value.numerator * value.denominator) // value.denominator
