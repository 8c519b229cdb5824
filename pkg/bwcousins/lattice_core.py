"""Lattices inside Q ⊗ BW_d with exact Gram arithmetic."""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
import logging
import math

from sympy import ilcm

from .const import DEFAULT_BUDGET, ISOMETRY_MAX_RANK, IsometryStatus
from .exact_linalg import (
    Dyadic,
    cholesky,
    determinant,
    hnf_basis,
    identity_matrix,
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
from .exceptions import BudgetExceeded, ConsistencyError, LatticeError, SizeError
from .gf2_codes import nullspace, rref
from .util import popcount
from .validation import check, code_dimension

_LOGGER = logging.getLogger(__name__)


def _lcm_fraction(first, second):
    """Return the least positive rational that is an integer multiple of both."""
    first, second = Fraction(first), Fraction(second)
    num = int(ilcm(first.numerator, second.numerator))
    return Fraction(num, math.gcd(first.denominator, second.denominator))


def _log2_exact(value, what):
    """Return e with value = 2^e, raise LatticeError otherwise."""
    if value <= 0 or value & (value - 1):
        raise LatticeError(f"{what} {value} is not a power of 2")
    return value.bit_length() - 1


@dataclass(frozen=True)
class AmbientSpace:
    """Span of the v_i, i in Omega, with (v_i, v_j) = 2^{⌊d/2⌋}δ_ij."""

    d: int

    def __post_init__(self):
        """Validate the dimension."""
        object.__setattr__(self, "d", check(code_dimension, self.d))

    @property
    def n(self):
        """Return the number of standard basis vectors."""
        return 1 << self.d

    @property
    def scale_log2(self):
        """Return ⌊d/2⌋."""
        return self.d // 2

    @property
    def scale(self):
        """Return the norm of a standard basis vector."""
        return 1 << self.scale_log2


@dataclass(frozen=True)
class DyadicVector:
    """Vector numerators / 2^exponent over the standard basis."""

    ambient: AmbientSpace
    numerators: tuple
    exponent: int = 0

    def __post_init__(self):
        """Bring the vector into canonical form."""
        nums = tuple(int(x) for x in self.numerators)
        if len(nums) != self.ambient.n:
            raise LatticeError(
                f"Vector of length {len(nums)} in ambient of dimension {self.ambient.n}"
            )
        exponent = self.exponent
        if exponent < 0:
            nums = tuple(x << -exponent for x in nums)
            exponent = 0
        if not any(nums):
            exponent = 0
        while exponent > 0 and all(x % 2 == 0 for x in nums):
            nums = tuple(x // 2 for x in nums)
            exponent -= 1
        object.__setattr__(self, "numerators", nums)
        object.__setattr__(self, "exponent", exponent)

    @classmethod
    def zero(cls, ambient):
        """Return the zero vector."""
        return cls(ambient, (0,) * ambient.n)

    @classmethod
    def basis_vector(cls, ambient, index):
        """Return v_index."""
        nums = [0] * ambient.n
        nums[index] = 1
        return cls(ambient, tuple(nums))

    @classmethod
    def from_word(cls, ambient, word, exponent=0, signs=None):
        """Return 2^{-exponent} v_A ε_S for the words A and S."""
        nums = [0] * ambient.n
        sign_bits = signs.bits if signs is not None else 0
        for point in word.points():
            nums[point] = -1 if sign_bits >> point & 1 else 1
        return cls(ambient, tuple(nums), exponent)

    @classmethod
    def from_dyadics(cls, ambient, values):
        """Return the vector with the given Dyadic coordinates."""
        values = [Dyadic.make(value) for value in values]
        exponent = max((value.exponent for value in values), default=0)
        nums = [value.mantissa << (exponent - value.exponent) for value in values]
        return cls(ambient, tuple(nums), exponent)

    @property
    def coords(self):
        """Return the coordinates as Dyadics."""
        return tuple(Dyadic(x, self.exponent) for x in self.numerators)

    def is_zero(self):
        """Return True for the zero vector."""
        return not any(self.numerators)

    @property
    def support(self):
        """Return the mask of coordinates that are nonzero."""
        mask = 0
        for index, value in enumerate(self.numerators):
            if value:
                mask |= 1 << index
        return mask

    @property
    def level(self):
        """Return the least m with 2^m x integral; minus infinity for zero."""
        if self.is_zero():
            return -math.inf
        if self.exponent:
            return self.exponent
        return -min(two_valuation(x) for x in self.numerators if x)

    def _aligned(self, other):
        """Return both numerator tuples over a common exponent."""
        if other.ambient != self.ambient:
            raise LatticeError("Vectors live in different ambient spaces")
        exponent = max(self.exponent, other.exponent)
        left = [x << (exponent - self.exponent) for x in self.numerators]
        right = [x << (exponent - other.exponent) for x in other.numerators]
        return left, right, exponent

    def dot(self, other):
        """Return the exact inner product."""
        left, right, exponent = self._aligned(other)
        total = sum(a * b for a, b in zip(left, right) if a and b)
        return Fraction(total * self.ambient.scale, 1 << (2 * exponent))

    @property
    def norm(self):
        """Return (x, x)."""
        total = sum(x * x for x in self.numerators)
        return Fraction(total * self.ambient.scale, 1 << (2 * self.exponent))

    def __add__(self, other):
        """Add two vectors."""
        left, right, exponent = self._aligned(other)
        return DyadicVector(
            self.ambient, tuple(a + b for a, b in zip(left, right)), exponent
        )

    def __neg__(self):
        """Negate."""
        negated = tuple(-x for x in self.numerators)
        return DyadicVector(self.ambient, negated, self.exponent)

    def __sub__(self, other):
        """Subtract two vectors."""
        return self + (-other)

    def scaled(self, factor):
        """Return factor * x for a dyadic factor."""
        factor = Dyadic.make(factor)
        return DyadicVector(
            self.ambient,
            tuple(x * factor.mantissa for x in self.numerators),
            self.exponent + factor.exponent,
        )


def _support_of(rows):
    """Return the mask of columns where some row is nonzero."""
    mask = 0
    for row in rows:
        for index, value in enumerate(row):
            if value:
                mask |= 1 << index
    return mask


def _columns(mask, size):
    """Return the sorted columns of a mask."""
    return [j for j in range(size) if mask >> j & 1]


def _first_nonzero(row):
    """Return the index of the first nonzero entry."""
    return next(index for index, value in enumerate(row) if value)


class Lattice:
    """Finite rank sublattice of the ambient space with a canonical HNF basis.

    A basis vector is a row of integer numerators divided by 2^exponent. The
    optional frame s records that s·v_i lies in the lattice for every i of its
    support and that the rank equals the size of the support; it only speeds up
    computations and takes no part in equality.
    """

    def __init__(self, ambient, exponent, rows, frame=None):
        """Set up Lattice from canonical rows."""
        self.ambient = ambient
        self.exponent = exponent
        self.rows = rows
        self.frame = frame

    def __eq__(self, other):
        """Compare canonical bases."""
        if not isinstance(other, Lattice):
            return NotImplemented
        return (self.ambient, self.exponent, self.rows) == (
            other.ambient,
            other.exponent,
            other.rows,
        )

    def __hash__(self):
        """Hash the canonical basis."""
        return hash((self.ambient, self.exponent, self.rows))

    def __repr__(self):
        """Return the representation."""
        return (
            f"<{self.__class__.__name__} d={self.ambient.d} rank={self.rank} "
            f"exponent={self.exponent}>"
        )

    @property
    def rank(self):
        """Return the rank."""
        return len(self.rows)

    @cached_property
    def pivots(self):
        """Return the pivot column of each basis row."""
        return tuple(_first_nonzero(row) for row in self.rows)

    @cached_property
    def support(self):
        """Return the mask of coordinates used by the lattice."""
        return _support_of(self.rows)

    @property
    def vectors(self):
        """Return the basis as DyadicVectors."""
        return tuple(
            DyadicVector(self.ambient, row, self.exponent) for row in self.rows
        )

    @cached_property
    def gram(self):
        """Return the exact Gram matrix of the canonical basis."""
        sparse = [[(j, x) for j, x in enumerate(row) if x] for row in self.rows]
        dense = self.rows
        den = 1 << (2 * self.exponent)
        scale = self.ambient.scale
        size = self.rank
        gram = [[Fraction(0)] * size for _ in range(size)]
        for i in range(size):
            for k in range(i, size):
                other = dense[k]
                value = Fraction(sum(x * other[j] for j, x in sparse[i]) * scale, den)
                gram[i][k] = gram[k][i] = value
        return gram

    @cached_property
    def det(self):
        """Return the determinant of the Gram matrix."""
        return determinant(self.gram)

    @cached_property
    def reduction(self):
        """Return the LLL transform of the basis and the reduced Gram matrix."""
        trans = lll_reduce(self.rows)
        return trans, reduced_gram(self.gram, trans)

    @property
    def is_integral(self):
        """Return True if all inner products are integers."""
        return all(entry.denominator == 1 for row in self.gram for entry in row)

    @property
    def is_even(self):
        """Return True if the lattice is integral with even norms."""
        return self.is_integral and all(
            self.gram[i][i] % 2 == 0 for i in range(self.rank)
        )

    @property
    def parity(self):
        """Return 'even', 'odd' or 'non-integral'."""
        if not self.is_integral:
            return "non-integral"
        return "even" if self.is_even else "odd"

    @property
    def modulus(self):
        """Return frame·2^exponent when a frame is known."""
        if self.frame is None:
            return None
        value = self.frame * (1 << self.exponent)
        return value.numerator if value.denominator == 1 else None

    def odd_vector(self):
        """Return a basis vector of odd norm, or None."""
        for index, vector in enumerate(self.vectors):
            norm = self.gram[index][index]
            if norm.denominator == 1 and norm % 2:
                return vector
        return None

    def combination(self, coefficients):
        """Return the lattice vector with the given basis coefficients."""
        nums = vec_mat(list(coefficients), [list(row) for row in self.rows])
        if not nums:
            nums = [0] * self.ambient.n
        return DyadicVector(self.ambient, tuple(nums), self.exponent)

    def coordinates(self, vector):
        """Return the basis coefficients of vector, or None if it is outside."""
        if vector.ambient != self.ambient:
            raise LatticeError("Vector lives in a different ambient space")
        exponent = max(self.exponent, vector.exponent)
        target = [x << (exponent - vector.exponent) for x in vector.numerators]
        shift = exponent - self.exponent
        coefficients = []
        for row, pivot in zip(self.rows, self.pivots):
            quotient, remainder = divmod(target[pivot], row[pivot] << shift)
            if remainder:
                return None
            coefficients.append(quotient)
            if quotient:
                for j in range(pivot, len(row)):
                    if row[j]:
                        target[j] -= quotient * (row[j] << shift)
        if any(target):
            return None
        return coefficients

    def contains(self, vector):
        """Return True if the vector lies in the lattice."""
        return self.coordinates(vector) is not None

    def __contains__(self, vector):
        """Return True if the vector lies in the lattice."""
        return self.contains(vector)

    def contains_lattice(self, other):
        """Return True if every basis vector of other lies in the lattice."""
        return all(self.contains(vector) for vector in other.vectors)

    def scaled(self, factor):
        """Return factor·L for a nonzero rational factor with 2-power denominator."""
        factor = abs(Fraction(factor))
        if factor == 0:
            raise LatticeError("Cannot scale a lattice by zero")
        shift = _log2_exact(factor.denominator, "Scaling denominator")
        rows = [[x * factor.numerator for x in row] for row in self.rows]
        frame = self.frame * factor if self.frame is not None else None
        return _normalized(self.ambient, self.exponent + shift, rows, frame)

    def restrict_to_support(self, mask):
        """Return L ∩ span{v_i : i in mask}."""
        size = self.ambient.n
        outside = _columns(self.support & ~mask, size)
        inside = _columns(self.support & mask, size)
        if not outside:
            return self
        order = outside + inside
        permuted = [[row[j] for j in order] for row in self.rows]
        reduced = hnf_basis(permuted, len(order), self.modulus)
        kept = []
        for row in reduced:
            if _first_nonzero(row) >= len(outside):
                full = [0] * size
                for j, value in zip(order, row):
                    full[j] = value
                kept.append(full)
        return lattice_from_rows(self.ambient, self.exponent, kept, self.frame)


def _normalized(ambient, exponent, basis, frame):
    """Divide out common factors of 2 and build the Lattice."""
    basis = [list(row) for row in basis]
    while exponent > 0 and all(x % 2 == 0 for row in basis for x in row):
        basis = [[x // 2 for x in row] for row in basis]
        exponent -= 1
    if not basis:
        exponent = 0
        frame = None
    elif frame is None and len(basis) == popcount(_support_of(basis)):
        product = 1
        for row in basis:
            product *= row[_first_nonzero(row)]
        frame = Fraction(abs(product), 1 << exponent)
    return Lattice(ambient, exponent, tuple(tuple(row) for row in basis), frame)


def lattice_from_rows(ambient, exponent, rows, frame=None):
    """Return the lattice spanned by integer rows / 2^exponent.

    With frame given the caller asserts that frame·v_i lies in the lattice for
    every i in the support of the rows.
    """
    size = ambient.n
    rows = [list(map(int, row)) for row in rows if any(row)]
    if frame is not None and rows:
        frame = Fraction(frame)
        modulus = frame * (1 << exponent)
        while modulus.denominator != 1:
            rows = [[2 * x for x in row] for row in rows]
            exponent += 1
            modulus *= 2
        cols = _columns(_support_of(rows), size)
        compressed = [[row[j] for j in cols] for row in rows]
        reduced = hnf_basis(compressed, len(cols), modulus.numerator)
        basis = []
        for row in reduced:
            full = [0] * size
            for j, value in zip(cols, row):
                full[j] = value
            basis.append(full)
    else:
        basis = hnf_basis(rows, size) if rows else []
    return _normalized(ambient, exponent, basis, frame)


def make_lattice(ambient, generators, frame=None):
    """Return the lattice spanned by DyadicVectors with a canonical basis."""
    generators = list(generators)
    for vector in generators:
        if vector.ambient != ambient:
            raise LatticeError("Generators live in different ambient spaces")
    exponent = max((vector.exponent for vector in generators), default=0)
    rows = [
        [x << (exponent - vector.exponent) for x in vector.numerators]
        for vector in generators
    ]
    lattice = lattice_from_rows(ambient, exponent, rows, frame)
    _LOGGER.debug(
        "Spanned lattice of rank %s from %s generators", lattice.rank, len(generators)
    )
    return lattice


def zero_lattice(ambient):
    """Return the zero lattice."""
    return Lattice(ambient, 0, ())


def standard_lattice(ambient, mask=None):
    """Return the span of v_i for i in mask, all of Omega by default."""
    if mask is None:
        mask = (1 << ambient.n) - 1
    rows = []
    for index in _columns(mask, ambient.n):
        row = [0] * ambient.n
        row[index] = 1
        rows.append(row)
    return Lattice(ambient, 0, tuple(tuple(row) for row in rows), Fraction(1))


def gram_det(lattice):
    """Return the Gram matrix and its determinant."""
    return lattice.gram, lattice.det


def _check_ambient(first, second):
    """Raise unless both lattices share the ambient space."""
    if first.ambient != second.ambient:
        raise LatticeError("Lattices live in different ambient spaces")


def dual(lattice):
    """Return the dual lattice inside the rational span of L."""
    if lattice.rank == 0:
        return lattice
    inverse = rational_inverse(lattice.gram)
    den = 1
    for row in inverse:
        for entry in row:
            den = int(ilcm(den, entry.denominator))
    if den & (den - 1):
        raise LatticeError("Dual lattice is not dyadic")
    rows = [list(row) for row in lattice.rows]
    dual_rows = [vec_mat([int(entry * den) for entry in row], rows) for row in inverse]
    frame = None
    if lattice.frame is not None:
        frame = Fraction(1 << lattice.exponent, lattice.ambient.scale)
    return lattice_from_rows(
        lattice.ambient,
        lattice.exponent + den.bit_length() - 1,
        dual_rows,
        frame,
    )


def _common_rows(first, second):
    """Return both row lists over a common exponent."""
    exponent = max(first.exponent, second.exponent)
    left = [[x << (exponent - first.exponent) for x in row] for row in first.rows]
    right = [[x << (exponent - second.exponent) for x in row] for row in second.rows]
    return left, right, exponent


def lattice_sum(first, second):
    """Return L1 + L2."""
    _check_ambient(first, second)
    left, right, exponent = _common_rows(first, second)
    frame = None
    if first.frame is not None and second.frame is not None:
        frame = _lcm_fraction(first.frame, second.frame)
    return lattice_from_rows(first.ambient, exponent, left + right, frame)


def intersect(first, second):
    """Return L1 ∩ L2 through the HNF of the stacked map (a, a), (-b, 0)."""
    _check_ambient(first, second)
    ambient = first.ambient
    frame = None
    if first.frame is not None and second.frame is not None:
        common = first.support & second.support
        first = first.restrict_to_support(common)
        second = second.restrict_to_support(common)
        if first.rank == 0 or second.rank == 0:
            return zero_lattice(ambient)
        frame = _lcm_fraction(first.frame, second.frame)
    if first.rank == 0 or second.rank == 0:
        return zero_lattice(ambient)
    left, right, exponent = _common_rows(first, second)
    modulus = None
    if frame is not None:
        value = frame * (1 << exponent)
        while value.denominator != 1:
            left = [[2 * x for x in row] for row in left]
            right = [[2 * x for x in row] for row in right]
            exponent += 1
            value *= 2
        modulus = value.numerator
    cols = _columns(first.support | second.support, ambient.n)
    width = len(cols)
    stacked = [[row[j] for j in cols] * 2 for row in left]
    stacked += [[-row[j] for j in cols] + [0] * width for row in right]
    reduced = hnf_basis(stacked, 2 * width, modulus)
    kept = []
    for row in reduced:
        if _first_nonzero(row) >= width:
            full = [0] * ambient.n
            for j, value in zip(cols, row[width:]):
                full[j] = value
            kept.append(full)
    return lattice_from_rows(ambient, exponent, kept, frame)


def index_in(sublattice, lattice):
    """Return |L : L_sub| for a sublattice of equal rank."""
    _check_ambient(sublattice, lattice)
    if sublattice.rank != lattice.rank:
        raise LatticeError(
            f"Index needs equal ranks, got {sublattice.rank} and {lattice.rank}"
        )
    matrix = []
    for vector in sublattice.vectors:
        coefficients = lattice.coordinates(vector)
        if coefficients is None:
            raise LatticeError("First lattice is not contained in the second")
        matrix.append(coefficients)
    return abs(int(determinant(matrix)))


@dataclass(frozen=True)
class ShortVectors:
    """Short vectors found by enumeration, one per ± pair."""

    bound: Fraction
    coefficients: tuple
    norms: tuple
    nodes: int
    vectors: tuple = ()

    @property
    def count(self):
        """Return the number of vectors, both signs counted."""
        return 2 * len(self.coefficients)


def _fincke_pohst(quad, bound, budget):
    """Return [(norm, coefficients)] with 0 < Q(x) <= bound, last nonzero positive."""
    size = len(quad)
    coeffs = [0] * size
    found = []
    nodes = 0

    def search(index, remaining, nonzero_above):
        """Enumerate coordinate index given the coordinates above it."""
        nonlocal nodes
        center = Fraction(0)
        for j in range(index + 1, size):
            if coeffs[j]:
                center -= quad[index][j] * coeffs[j]
        diag = quad[index][index]
        radius = isqrt_floor(remaining / diag) + 1
        low = math.floor(center) - radius
        high = math.ceil(center) + radius
        if not nonzero_above:
            low = max(low, 0)
        for value in range(low, high + 1):
            gap = value - center
            used = diag * gap * gap
            if used > remaining:
                continue
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(nodes, budget)
            coeffs[index] = value
            nonzero = nonzero_above or value != 0
            if index == 0:
                if nonzero:
                    found.append((bound - remaining + used, tuple(coeffs)))
            else:
                search(index - 1, remaining - used, nonzero)
        coeffs[index] = 0

    search(size - 1, bound, False)
    return found, nodes


def _positive_last(coefficients):
    """Flip the sign so that the last nonzero entry is positive."""
    for value in reversed(coefficients):
        if value:
            return coefficients if value > 0 else [-x for x in coefficients]
    return coefficients


def enumerate_gram(gram, bound, budget=DEFAULT_BUDGET, reduction=None):
    """Enumerate coefficient vectors x with 0 < xGx^T <= bound, one per ± pair.

    reduction is a (transform, reduced Gram) pair such as Lattice.reduction;
    without it the form is enumerated in the basis it is given in.
    """
    bound = Fraction(bound)
    size = len(gram)
    if size == 0 or bound <= 0:
        return ShortVectors(bound, (), (), 0)
    if reduction is None:
        reduction = identity_matrix(size), gram
    trans, reduced = reduction
    quad = cholesky(reduced)
    found, nodes = _fincke_pohst(quad, bound, budget)
    results = sorted(
        (norm, tuple(_positive_last(vec_mat(list(coeffs), trans))))
        for norm, coeffs in found
    )
    _LOGGER.debug(
        "Enumerated %s pairs of norm <= %s at rank %s using %s nodes",
        len(results),
        bound,
        size,
        nodes,
    )
    return ShortVectors(
        bound,
        tuple(coeffs for _, coeffs in results),
        tuple(norm for norm, _ in results),
        nodes,
    )


def enumerate_short(lattice, bound, budget=DEFAULT_BUDGET):
    """Return the lattice vectors with 0 < (x, x) <= bound, one per ± pair."""
    if bound < 0:
        raise LatticeError("Enumeration bound must be non-negative")
    result = enumerate_gram(lattice.gram, bound, budget, lattice.reduction)
    vectors = tuple(lattice.combination(coeffs) for coeffs in result.coefficients)
    return ShortVectors(
        result.bound, result.coefficients, result.norms, result.nodes, vectors
    )


def min_norm(lattice, budget=DEFAULT_BUDGET):
    """Return the minimum norm of a nonzero lattice vector."""
    if lattice.rank == 0:
        raise LatticeError("The zero lattice has no minimum")
    _, reduced = lattice.reduction
    bound = min(reduced[i][i] for i in range(lattice.rank))
    result = enumerate_gram(lattice.gram, bound, budget, lattice.reduction)
    return min(result.norms)


def minimal_vectors(lattice, budget=DEFAULT_BUDGET):
    """Return the vectors of minimum norm, one per ± pair."""
    return enumerate_short(lattice, min_norm(lattice, budget), budget)


@dataclass(frozen=True)
class ThetaSeries:
    """Number of lattice vectors of each norm up to a bound."""

    bound: Fraction
    counts: dict = field(default_factory=dict)

    def __getitem__(self, norm):
        """Return the number of vectors of the given norm."""
        return self.counts.get(Fraction(norm), 0)

    def as_dict(self):
        """Return the counts keyed by the string form of the norm."""
        return {str(norm): count for norm, count in sorted(self.counts.items())}


def theta_from_gram(gram, bound, budget=DEFAULT_BUDGET, reduction=None):
    """Return the theta series of a Gram matrix up to bound."""
    result = enumerate_gram(gram, bound, budget, reduction)
    counts = {Fraction(0): 1}
    for norm in result.norms:
        counts[norm] = counts.get(norm, 0) + 2
    return ThetaSeries(Fraction(bound), counts)


def theta(lattice, bound, budget=DEFAULT_BUDGET):
    """Return the theta series of L up to bound."""
    return theta_from_gram(lattice.gram, bound, budget, lattice.reduction)


def _integer_gram(lattice):
    """Return the Gram matrix as ints, raise unless integral."""
    if not lattice.is_integral:
        raise LatticeError("Lattice is not integral")
    return [[int(entry) for entry in row] for row in lattice.gram]


@dataclass(frozen=True)
class DiscriminantGroup:
    """Invariant factors of dual(L) / L."""

    invariants: tuple

    @property
    def order(self):
        """Return |dual(L) / L|."""
        return math.prod(self.invariants)

    @property
    def rank(self):
        """Return the number of cyclic factors."""
        return len(self.invariants)

    def is_elementary_abelian(self, prime=2):
        """Return True if every invariant factor equals prime."""
        return all(value == prime for value in self.invariants)


def discriminant_group(lattice):
    """Return the discriminant group of an integral lattice."""
    gram = _integer_gram(lattice)
    invariants = tuple(value for value in snf(gram) if value != 1)
    return DiscriminantGroup(invariants)


@dataclass(frozen=True)
class Decomposition:
    """Orthogonal components spanned by connected indecomposable vectors."""

    components: tuple
    index: int
    bound: Fraction

    @property
    def ranks(self):
        """Return the ranks of the components."""
        return tuple(component.rank for component in self.components)


def connected_components(size, edges):
    """Return the connected components of a graph as sorted index lists."""
    parent = list(range(size))

    def find(node):
        """Return the root of node."""
        while parent[node] != node:
            parent[node] = parent[parent[node]]
            node = parent[node]
        return node

    for first, second in edges:
        root_a, root_b = find(first), find(second)
        if root_a != root_b:
            parent[max(root_a, root_b)] = min(root_a, root_b)
    groups = {}
    for node in range(size):
        groups.setdefault(find(node), []).append(node)
    return sorted(groups.values())


def _components_at(lattice, gram, result):
    """Return the component generator lists of the indecomposables in result."""
    rows = len(gram)
    products = [vec_mat(list(coeffs), gram) for coeffs in result.coefficients]
    norms = result.norms
    shortest = norms[0] if norms else None
    indecomposable = []
    for index, coeffs in enumerate(result.coefficients):
        if norms[index] != shortest:
            split = False
            for other in range(index):
                if norms[other] >= norms[index]:
                    break
                value = sum(products[other][j] * coeffs[j] for j in range(rows))
                if abs(value) == norms[other]:
                    split = True
                    break
            if split:
                continue
        indecomposable.append(index)
    edges = []
    for pos_a, first in enumerate(indecomposable):
        for pos_b in range(pos_a + 1, len(indecomposable)):
            second = result.coefficients[indecomposable[pos_b]]
            if sum(products[first][j] * second[j] for j in range(rows)):
                edges.append((pos_a, pos_b))
    groups = connected_components(len(indecomposable), edges)
    return [
        [lattice.combination(result.coefficients[indecomposable[i]]) for i in group]
        for group in groups
    ]


def decompose(lattice, budget=DEFAULT_BUDGET):
    """Return the orthogonal decomposition into indecomposable components."""
    gram = _integer_gram(lattice)
    if lattice.rank == 0:
        return Decomposition((), 1, Fraction(0))
    _, reduced = lattice.reduction
    top = max(reduced[i][i] for i in range(lattice.rank))
    bound = min(reduced[i][i] for i in range(lattice.rank))
    while True:
        result = enumerate_gram(lattice.gram, bound, budget, lattice.reduction)
        groups = _components_at(lattice, gram, result)
        components = [make_lattice(lattice.ambient, group) for group in groups]
        spanned = make_lattice(
            lattice.ambient, [vec for group in groups for vec in group]
        )
        index = 0
        if spanned.rank == lattice.rank:
            index = index_in(spanned, lattice)
        _LOGGER.debug(
            "Decomposition at bound %s: %s components, index %s",
            bound,
            len(components),
            index,
        )
        if index == 1 or bound >= top:
            break
        bound = min(2 * bound, top)
    components.sort(key=lambda comp: (-comp.rank, comp.rows))
    return Decomposition(tuple(components), index, bound)


def level_and_top(vector):
    """Return (level, top) of a nonzero vector."""
    if vector.is_zero():
        raise LatticeError("The zero vector has no level")
    level = vector.level
    if level > 0:
        digits = [(abs(x) & 1) * (1 if x > 0 else -1) for x in vector.numerators]
        return level, DyadicVector(vector.ambient, tuple(digits), level)
    shift = -level
    digits = [
        ((abs(x) >> shift) & 1) * (1 if x > 0 else -1) << shift
        for x in vector.numerators
    ]
    return level, DyadicVector(vector.ambient, tuple(digits), 0)


def level_sublattice(lattice, reference, level):
    """Return the M-level q sublattice 2^{-q}M ∩ L."""
    _check_ambient(lattice, reference)
    if level < 0:
        raise LatticeError(f"Level must be non-negative, got {level}")
    total = lattice_sum(lattice, reference)
    if total.rank != reference.rank:
        raise LatticeError("Lattice is not contained in Z[1/2] ⊗ M")
    _log2_exact(index_in(reference, total), "Index of M in L + M")
    return intersect(lattice, reference.scaled(Fraction(1, 1 << level)))


@dataclass(frozen=True)
class IsometryResult:
    """Outcome of gram_isometric, with W·G2·W^T = G1 when found."""

    status: IsometryStatus
    witness: tuple = None
    reason: str = ""

    def __bool__(self):
        """Return True when an isometry was found."""
        return self.status is IsometryStatus.ISOMETRIC


def _as_form(value):
    """Return (Gram, reduction) from a Lattice or a Gram matrix.

    A bare Gram matrix is taken as its own reduction.
    """
    if isinstance(value, Lattice):
        return value.gram, value.reduction
    gram = [[Fraction(entry) for entry in row] for row in value]
    return gram, (identity_matrix(len(gram)), gram)


def _search_isometry(target, candidates, budget):
    """Backtrack images of a reduced basis among candidates, return rows or None."""
    size = len(target)
    by_norm = {}
    for coeffs, norm, product in candidates:
        by_norm.setdefault(norm, []).append((coeffs, product))
    chosen = []
    nodes = 0

    def search(index):
        """Choose the image of basis vector index."""
        nonlocal nodes
        if index == size:
            return True
        for coeffs, product in by_norm.get(target[index][index], ()):
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(nodes, budget)
            if all(
                sum(p * c for p, c in zip(product, chosen[j][0])) == target[index][j]
                for j in range(index)
            ):
                chosen.append((coeffs, product))
                if search(index + 1):
                    return True
                chosen.pop()
        return False

    if search(0):
        return [list(coeffs) for coeffs, _ in chosen]
    return None


def gram_isometric(first, second, budget=DEFAULT_BUDGET):
    """Decide whether two positive definite forms are isometric."""
    (gram_a, reduction_a), (gram_b, reduction_b) = _as_form(first), _as_form(second)
    if len(gram_a) != len(gram_b):
        return IsometryResult(IsometryStatus.NOT_ISOMETRIC, reason="rank")
    if determinant(gram_a) != determinant(gram_b):
        return IsometryResult(IsometryStatus.NOT_ISOMETRIC, reason="determinant")
    if not gram_a:
        return IsometryResult(IsometryStatus.ISOMETRIC, witness=())
    trans, reduced = reduction_a
    bound = max(reduced[i][i] for i in range(len(reduced)))
    theta_a = theta_from_gram(gram_a, bound, budget, reduction_a)
    short_b = enumerate_gram(gram_b, bound, budget, reduction_b)
    theta_b = {Fraction(0): 1}
    for norm in short_b.norms:
        theta_b[norm] = theta_b.get(norm, 0) + 2
    if theta_a.counts != theta_b:
        return IsometryResult(IsometryStatus.NOT_ISOMETRIC, reason="theta")
    if len(gram_a) > ISOMETRY_MAX_RANK:
        _LOGGER.warning(
            "Rank %s is above %s, isometry backed by fingerprints only",
            len(gram_a),
            ISOMETRY_MAX_RANK,
        )
        return IsometryResult(IsometryStatus.EVIDENCE_ONLY, reason="fingerprint")
    candidates = []
    for coeffs, norm in zip(short_b.coefficients, short_b.norms):
        product = vec_mat(list(coeffs), gram_b)
        candidates.append((coeffs, norm, product))
        negated = tuple(-x for x in coeffs)
        candidates.append((negated, norm, [-x for x in product]))
    images = _search_isometry(reduced, candidates, budget)
    if images is None:
        return IsometryResult(IsometryStatus.NOT_ISOMETRIC, reason="exhausted")
    inverse = rational_inverse([[Fraction(x) for x in row] for row in trans])
    witness = [[int(x) for x in row] for row in mat_mul(inverse, images)]
    if mat_mul(mat_mul(witness, gram_b), transpose(witness)) != gram_a:
        raise ConsistencyError("Isometry witness does not map the forms")
    return IsometryResult(
        IsometryStatus.ISOMETRIC, witness=tuple(tuple(row) for row in witness)
    )


def level_census(lattice, bound):
    """Return every vector of level <= 1 and norm < bound <= scale, one per ± pair.

    Such a vector is ½ Σ_{i∈T} ±v_i with |T| <= 3; the support T must be a word of
    the binary code 2·L(1) mod 2, which is tested through parity-check syndromes.
    """
    ambient = lattice.ambient
    bound = Fraction(bound)
    if bound > ambient.scale:
        raise SizeError(f"Census bound {bound} exceeds the scale {ambient.scale}")
    half = standard_lattice(ambient, lattice.support).scaled(Fraction(1, 2))
    level_one = intersect(lattice, half)
    masks = []
    for row in level_one.rows:
        shift = 1 - level_one.exponent
        mask = 0
        for index, value in enumerate(row):
            if (value << shift) & 1:
                mask |= 1 << index
        masks.append(mask)
    checks = nullspace(rref(masks), ambient.n)
    syndromes = {}
    points = _columns(lattice.support, ambient.n)
    for point in points:
        syndrome = 0
        for bit, row in enumerate(checks):
            if row >> point & 1:
                syndrome |= 1 << bit
        syndromes[point] = syndrome
    by_syndrome = {}
    for point in points:
        by_syndrome.setdefault(syndromes[point], []).append(point)
    supports = []
    for point in points:
        if not syndromes[point]:
            supports.append((point,))
    for group in by_syndrome.values():
        for pos, first in enumerate(group):
            for second in group[pos + 1 :]:
                supports.append((first, second))
    for pos, first in enumerate(points):
        for second in points[pos + 1 :]:
            target = syndromes[first] ^ syndromes[second]
            for third in by_syndrome.get(target, ()):
                if third > second:
                    supports.append((first, second, third))
    found = []
    for support in supports:
        if Fraction(ambient.scale * len(support), 4) >= bound:
            continue
        for signs in range(1 << (len(support) - 1)):
            nums = [0] * ambient.n
            nums[support[0]] = 1
            for pos, point in enumerate(support[1:]):
                nums[point] = -1 if signs >> pos & 1 else 1
            vector = DyadicVector(ambient, tuple(nums), 1)
            if lattice.contains(vector):
                found.append(vector)
    found.sort(key=lambda vec: (vec.norm, vec.numerators))
    _LOGGER.debug("Level census below %s found %s pairs", bound, len(found))
    return tuple(found)


def root_lattice_gram(kind, rank, norm=2):
    """Return the Gram matrix of A_n, D_n or E_8 with roots of the given norm."""
    scale = Fraction(norm, 2)
    edges = []
    if kind == "A" and rank >= 1:
        edges = [(i, i + 1) for i in range(rank - 1)]
    elif kind == "D" and rank >= 3:
        edges = [(i, i + 1) for i in range(rank - 2)] + [(rank - 3, rank - 1)]
    elif kind == "E" and rank == 8:
        edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)]
    else:
        raise SizeError(f"No root lattice {kind}{rank}")
    gram = [[Fraction(0)] * rank for _ in range(rank)]
    for i in range(rank):
        gram[i][i] = 2 * scale
    for first, second in edges:
        gram[first][second] = gram[second][first] = -scale
    return gram


def export_gram(lattice):
    """Return the Gram export document {d, scale_exponent, gram}."""
    exponent = 0
    for row in lattice.gram:
        for entry in row:
            exponent = max(exponent, entry.denominator.bit_length() - 1)
    factor = 1 << exponent
    return {
        "d": lattice.ambient.d,
        "scale_exponent": exponent,
        "gram": [[int(entry * factor) for entry in row] for row in lattice.gram],
    }


def lattice_as_dict(lattice):
    """Return the lattice document {d, scale_log2, basis}."""
    return {
        "d": lattice.ambient.d,
        "scale_log2": lattice.ambient.scale_log2,
        "basis": [
            [str(value) for value in vector.coords] for vector in lattice.vectors
        ],
    }


def lattice_from_dict(data):
    """Return the lattice described by a lattice document."""
    ambient = AmbientSpace(data["d"])
    if data.get("scale_log2", ambient.scale_log2) != ambient.scale_log2:
        raise LatticeError(
            f"scale_log2 {data['scale_log2']} does not match d={ambient.d}"
        )
    vectors = [DyadicVector.from_dyadics(ambient, row) for row in data["basis"]]
    return make_lattice(ambient, vectors)
