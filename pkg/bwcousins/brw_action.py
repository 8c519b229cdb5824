"""Monomial isometries ε_S ∘ (affine map of Omega) acting on the right."""
from dataclasses import dataclass
import itertools
import logging

from .exceptions import IsometryError, SizeError
from .gf2_codes import (
    AffineSubspace,
    BitWord,
    build_rm,
    cubi_codeword,
    defect,
    rref,
)
from .lattice_core import DyadicVector, make_lattice

_LOGGER = logging.getLogger(__name__)


def _apply_linear(linear, point):
    """Return point·A where A has the given row masks."""
    image = 0
    index = 0
    while point:
        if point & 1:
            image ^= linear[index]
        point >>= 1
        index += 1
    return image


def _identity_rows(d):
    """Return the rows of the identity matrix."""
    return tuple(1 << j for j in range(d))


def _invert_rows(d, linear):
    """Return the inverse of an invertible F_2 matrix given by row masks."""
    rows = [(linear[j], 1 << j) for j in range(d)]
    result = [0] * d
    for col in range(d):
        pivot = next((i for i in range(col, d) if rows[i][0] >> col & 1), None)
        if pivot is None:
            raise IsometryError("Linear part is not invertible")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        for i in range(d):
            if i != col and rows[i][0] >> col & 1:
                rows[i] = (rows[i][0] ^ rows[col][0], rows[i][1] ^ rows[col][1])
    for col in range(d):
        result[col] = rows[col][1]
    return tuple(result)


@dataclass(frozen=True)
class MonomialIsometry:
    """Map v_i -> (-1)^{[i in S]} v_{iA + b}."""

    d: int
    sign: int = 0
    linear: tuple = None
    translate: int = 0

    def __post_init__(self):
        """Fill in the identity linear part and validate."""
        if self.linear is None:
            object.__setattr__(self, "linear", _identity_rows(self.d))
        object.__setattr__(self, "linear", tuple(self.linear))
        if len(self.linear) != self.d or len(rref(self.linear)) != self.d:
            raise IsometryError("Linear part is not an invertible d x d matrix")
        if self.sign >> (1 << self.d) or not 0 <= self.translate < 1 << self.d:
            raise IsometryError("Sign word or translation does not fit Omega")

    def __repr__(self):
        """Return the representation."""
        return (
            f"<{self.__class__.__name__} d={self.d} sign={self.sign_word.to_hex()} "
            f"translate={self.translate}>"
        )

    @property
    def sign_word(self):
        """Return S as a BitWord."""
        return BitWord(self.d, self.sign)

    def permute(self, point):
        """Return the image point iA + b."""
        return _apply_linear(self.linear, point) ^ self.translate

    def sign_of(self, point):
        """Return -1 if point lies in S, else 1."""
        return -1 if self.sign >> point & 1 else 1

    @property
    def is_linear_identity(self):
        """Return True if the linear part is the identity."""
        return self.linear == _identity_rows(self.d)

    @property
    def is_brw(self):
        """Return True if the map lies in the BRW group, i.e. S in RM(2,d)."""
        return build_rm(2, self.d).contains(self.sign)

    @property
    def is_lower(self):
        """Return True if the map lies in the extraspecial group R_d."""
        return self.is_linear_identity and build_rm(1, self.d).contains(self.sign)

    def __mul__(self, other):
        """Return self followed by other."""
        return compose(self, other)


def identity(d):
    """Return the identity map."""
    return MonomialIsometry(d)


def minus_identity(d):
    """Return -1 = ε_Omega."""
    return MonomialIsometry(d, BitWord.full(d).bits)


def sign_change(word):
    """Return ε_S."""
    return MonomialIsometry(word.d, word.bits)


def translation(d, c_point):
    """Return τ_c."""
    return MonomialIsometry(d, translate=c_point)


def affine_permutation(d, linear, translate=0):
    """Return the permutation x -> xA + b without signs."""
    return MonomialIsometry(d, 0, tuple(linear), translate)


def compose(first, second):
    """Return first·second, i.e. x(first·second) = (x first) second."""
    if first.d != second.d:
        raise IsometryError("Isometries of different dimensions")
    d = first.d
    sign = first.sign
    for point in range(1 << d):
        if second.sign >> first.permute(point) & 1:
            sign ^= 1 << point
    linear = tuple(_apply_linear(second.linear, row) for row in first.linear)
    translate = _apply_linear(second.linear, first.translate) ^ second.translate
    return MonomialIsometry(d, sign, linear, translate)


def inverse(isometry):
    """Return the inverse map."""
    d = isometry.d
    linear = _invert_rows(d, isometry.linear)
    translate = _apply_linear(linear, isometry.translate)
    sign = 0
    for point in range(1 << d):
        if isometry.sign >> point & 1:
            sign |= 1 << isometry.permute(point)
    return MonomialIsometry(d, sign, linear, translate)


def power(isometry, exponent):
    """Return isometry^exponent for an integer exponent."""
    if exponent < 0:
        return power(inverse(isometry), -exponent)
    result = identity(isometry.d)
    base = isometry
    while exponent:
        if exponent & 1:
            result = compose(result, base)
        base = compose(base, base)
        exponent >>= 1
    return result


def order(isometry):
    """Return the order of the isometry."""
    current = isometry
    count = 1
    unit = identity(isometry.d)
    while current != unit:
        current = compose(current, isometry)
        count += 1
    return count


def commutes_with(first, second):
    """Return True if the two maps commute."""
    return compose(first, second) == compose(second, first)


def apply(isometry, vector):
    """Return x·g."""
    if vector.ambient.d != isometry.d:
        raise IsometryError("Vector and isometry have different dimensions")
    nums = [0] * vector.ambient.n
    for point, value in enumerate(vector.numerators):
        if value:
            sign = -1 if isometry.sign >> point & 1 else 1
            nums[isometry.permute(point)] = sign * value
    return DyadicVector(vector.ambient, tuple(nums), vector.exponent)


def apply_lattice(lattice, isometry):
    """Return the image lattice L·g."""
    images = [apply(isometry, vector) for vector in lattice.vectors]
    return make_lattice(lattice.ambient, images, lattice.frame)


def is_lattice_invariant(lattice, isometry):
    """Return True if L·g = L."""
    return all(lattice.contains(apply(isometry, vector)) for vector in lattice.vectors)


def trace_of(isometry):
    """Return the trace on the natural 2^d-dimensional module."""
    return sum(
        isometry.sign_of(point)
        for point in range(1 << isometry.d)
        if isometry.permute(point) == point
    )


def is_involution(isometry):
    """Return True if g² = 1."""
    return compose(isometry, isometry) == identity(isometry.d)


@dataclass(frozen=True)
class InvolutionSpec:
    """Positive trace involution t = ε_Z for a short defect k word Z."""

    word: BitWord
    isometry: MonomialIsometry
    defect: int
    trace: int
    core: AffineSubspace


@dataclass(frozen=True)
class FourvolutionSpec:
    """Lower fourvolution f = ε_H τ_c."""

    hyperplane: AffineSubspace
    c_point: int
    isometry: MonomialIsometry


def make_fourvolution(d, functional, constant, c_point):
    """Return ε_H τ_c for H = {x : <functional, x> = constant}."""
    hyperplane = AffineSubspace.hyperplane(d, functional, constant)
    if bin(functional & c_point).count("1") % 2 != 1:
        raise IsometryError("Hyperplane is not transverse to the translation")
    isometry = compose(sign_change(hyperplane.word), translation(d, c_point))
    if compose(isometry, isometry) != minus_identity(d):
        raise IsometryError("ε_H τ_c does not square to -1")
    return FourvolutionSpec(hyperplane, c_point, isometry)


def standard_involution(d, k):
    """Return t = ε_Z for the canonical cubi sum Z of defect k."""
    cubi = cubi_codeword(d, k)
    isometry = sign_change(cubi.word)
    trace = trace_of(isometry)
    found = defect(cubi.word)
    if found != k or trace != 1 << (d - k) or not is_involution(isometry):
        raise IsometryError(f"Cubi sum for ({d},{k}) has defect {found}, trace {trace}")
    return InvolutionSpec(cubi.word, isometry, k, trace, cubi.core)


def standard_pair(d, k):
    """Return (t, f) with f = ε_H τ_c, H = {x_d = 0} and c = e_d in the core."""
    involution = standard_involution(d, k)
    if d - 2 * k < 1:
        raise SizeError(f"No core translation for d={d}, k={k}: need d - 2k >= 1")
    c_point = 1 << (d - 1)
    fourvolution = make_fourvolution(d, c_point, 0, c_point)
    if not commutes_with(involution.isometry, fourvolution.isometry):
        raise IsometryError("Fourvolution does not commute with the involution")
    return involution, fourvolution


def _f2_rank(rows):
    """Return the F_2 rank of integer rows reduced mod 2."""
    masks = []
    for row in rows:
        mask = 0
        for index, value in enumerate(row):
            if value & 1:
                mask |= 1 << index
        masks.append(mask)
    return len(rref(masks))


def action_matrix(lattice, isometry):
    """Return the integer matrix of g on the canonical basis of L."""
    rows = []
    for vector in lattice.vectors:
        coefficients = lattice.coordinates(apply(isometry, vector))
        if coefficients is None:
            raise IsometryError("Lattice is not invariant under the isometry")
        rows.append(coefficients)
    return rows


def jordan_number(lattice, isometry):
    """Return the number of size-2 Jordan blocks of t on L/2L."""
    if not is_involution(isometry):
        raise IsometryError("Jordan number needs an involution")
    matrix = action_matrix(lattice, isometry)
    for index, row in enumerate(matrix):
        row[index] -= 1
    return _f2_rank(matrix)


def linear_involutions(d):
    """Yield the row tuples of every linear involution of F_2^d, identity first."""
    yield _identity_rows(d)
    for rows in itertools.product(range(1 << d), repeat=d):
        if rows == _identity_rows(d) or len(rref(rows)) != d:
            continue
        if all(_apply_linear(rows, row) == 1 << j for j, row in enumerate(rows)):
            yield rows


def jordan_witness_search(lattice, limit=100000):
    """Search monomial BRW involutions of BW_d with JNo = 2^{d-1}."""
    d = lattice.ambient.d
    if d > 4:
        raise SizeError(f"Witness search is limited to d <= 4, got {d}")
    target = 1 << (d - 1)
    words = list(build_rm(2, d).words())
    tried = 0
    for linear in linear_involutions(d):
        for translate in range(1 << d):
            permutation = affine_permutation(d, linear, translate)
            if not is_involution(permutation):
                continue
            for sign in words:
                candidate = MonomialIsometry(d, sign, linear, translate)
                if candidate.is_lower or not is_involution(candidate):
                    continue
                tried += 1
                if tried > limit:
                    _LOGGER.warning("No JNo witness among %s involutions", limit)
                    return None
                if not is_lattice_invariant(lattice, candidate):
                    continue
                if jordan_number(lattice, candidate) == target:
                    _LOGGER.debug("JNo witness found after %s candidates", tried)
                    return candidate
    return None


def isometry_as_dict(isometry):
    """Return the isometry document {sign, linear, translate}."""
    return {
        "sign": isometry.sign_word.to_hex(),
        "linear": list(isometry.linear),
        "translate": isometry.translate,
    }


def isometry_from_dict(data):
    """Return the isometry described by an isometry document."""
    linear = tuple(data["linear"])
    d = len(linear)
    return MonomialIsometry(d, int(data["sign"], 16), linear, data["translate"])
