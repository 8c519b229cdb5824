"""Reed-Muller codes over the index set Omega = F_2^d.

A point of Omega is an integer 0 <= x < 2^d; bit i of x is the coordinate
x_{i+1}. A word is a subset of Omega stored as a 2^d bit mask, bit x set when
the point x belongs to the word.
"""
from dataclasses import dataclass, field
from functools import lru_cache
import itertools
import logging
import math

from .const import MAX_EXHAUSTIVE_CODE_DIM, WordClass
from .exceptions import CodeError, ConsistencyError, SizeError
from .util import popcount
from .validation import check, code_dimension

_LOGGER = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def coordinate_masks(d):
    """Return the masks X_j = {x : x_{j+1} = 1} for j < d."""
    masks = []
    for j in range(d):
        mask = 0
        for point in range(1 << d):
            if point >> j & 1:
                mask |= 1 << point
        masks.append(mask)
    return tuple(masks)


def full_mask(d):
    """Return the mask of Omega."""
    return (1 << (1 << d)) - 1


def translate_mask(d, mask, c_point):
    """Return the mask of {x + c : x in mask}."""
    masks = coordinate_masks(d)
    for j in range(d):
        if c_point >> j & 1:
            step = 1 << j
            upper = masks[j]
            mask = ((mask & ~upper) << step) | ((mask & upper) >> step)
    return mask


@dataclass(frozen=True)
class BitWord:
    """Subset of Omega of length 2^d."""

    d: int
    bits: int = 0

    def __post_init__(self):
        """Validate the mask."""
        if self.bits < 0 or self.bits >> (1 << self.d):
            raise CodeError(f"Mask does not fit a word of length 2^{self.d}")

    @classmethod
    def from_points(cls, d, points):
        """Return the word holding the given points."""
        mask = 0
        for point in points:
            if not 0 <= point < 1 << d:
                raise CodeError(f"{point} is not a point of F_2^{d}")
            mask |= 1 << point
        return cls(d, mask)

    @classmethod
    def full(cls, d):
        """Return Omega."""
        return cls(d, full_mask(d))

    @classmethod
    def from_hex(cls, d, text):
        """Parse the lowercase hex serialization."""
        return cls(d, int(text, 16))

    @property
    def length(self):
        """Return 2^d."""
        return 1 << self.d

    @property
    def weight(self):
        """Return the number of points."""
        return popcount(self.bits)

    def is_zero(self):
        """Return True for the empty word."""
        return not self.bits

    def points(self):
        """Return the sorted points of the word."""
        bits, result, point = self.bits, [], 0
        while bits:
            if bits & 1:
                result.append(point)
            bits >>= 1
            point += 1
        return result

    def __contains__(self, point):
        """Return True if point lies in the word."""
        return bool(self.bits >> point & 1)

    def _check(self, other):
        """Raise unless other is a word of the same length."""
        if not isinstance(other, BitWord) or other.d != self.d:
            raise CodeError("Words of different lengths")

    def __add__(self, other):
        """Return the boolean sum."""
        self._check(other)
        return BitWord(self.d, self.bits ^ other.bits)

    def __and__(self, other):
        """Return the intersection."""
        self._check(other)
        return BitWord(self.d, self.bits & other.bits)

    def complement(self):
        """Return Omega minus the word."""
        return BitWord(self.d, self.bits ^ full_mask(self.d))

    def translate(self, c_point):
        """Return the image under the translation by c."""
        return BitWord(self.d, translate_mask(self.d, self.bits, c_point))

    def to_hex(self):
        """Return ceil(2^d / 4) lowercase hex digits, point 0 in the lowest bit."""
        digits = max(1, -(-(1 << self.d) // 4))
        return format(self.bits, f"0{digits}x")


def rref(vectors):
    """Return a fully reduced echelon basis of the F_2 span, highest pivot first."""
    basis = {}
    for vec in vectors:
        vec = _reduce_with(vec, basis)
        if not vec:
            continue
        pivot = vec.bit_length() - 1
        for key, row in basis.items():
            if row >> pivot & 1:
                basis[key] = row ^ vec
        basis[pivot] = vec
    return tuple(basis[key] for key in sorted(basis, reverse=True))


def _reduce_with(vec, basis):
    """Reduce vec against a pivot-keyed reduced basis."""
    for pivot in sorted(basis, reverse=True):
        if vec >> pivot & 1:
            vec ^= basis[pivot]
    return vec


def reduce_vector(vec, rows):
    """Reduce vec against rows returned by rref."""
    for row in rows:
        if vec >> (row.bit_length() - 1) & 1:
            vec ^= row
    return vec


def span(rows):
    """Yield every F_2 combination of rows."""
    rows = list(rows)
    for combo in range(1 << len(rows)):
        vec, index = 0, 0
        while combo:
            if combo & 1:
                vec ^= rows[index]
            combo >>= 1
            index += 1
        yield vec


def nullspace(rows, length):
    """Return a basis of {x : |x & row| even for every row} in F_2^length."""
    reduced = rref(rows)
    pivots = {row.bit_length() - 1: row for row in reduced}
    result = []
    for free in range(length):
        if free in pivots:
            continue
        vec = 1 << free
        for pivot, row in pivots.items():
            if row >> free & 1:
                vec |= 1 << pivot
        result.append(vec)
    return result


def kernel_of_map(images):
    """Return a basis of {a : sum_i a_i images[i] = 0} over F_2."""
    table = {}
    kernel = []
    for index, image in enumerate(images):
        combo = 1 << index
        for pivot in sorted(table, reverse=True):
            if image >> pivot & 1:
                row_image, row_combo = table[pivot]
                image ^= row_image
                combo ^= row_combo
        if image:
            table[image.bit_length() - 1] = (image, combo)
        else:
            kernel.append(combo)
    return kernel


@dataclass(frozen=True)
class AffineSubspace:
    """Affine subspace basepoint + span(directions) of Omega."""

    d: int
    basepoint: int
    directions: tuple = ()

    def __post_init__(self):
        """Canonicalize directions and basepoint."""
        directions = rref(self.directions)
        if len(directions) != len(self.directions):
            raise CodeError("Directions are not linearly independent")
        if not 0 <= self.basepoint < 1 << self.d:
            raise CodeError(f"{self.basepoint} is not a point of F_2^{self.d}")
        object.__setattr__(self, "directions", directions)
        object.__setattr__(
            self, "basepoint", reduce_vector(self.basepoint, directions)
        )

    @classmethod
    def hyperplane(cls, d, functional, constant=0):
        """Return {x : <functional, x> = constant}."""
        if not 0 < functional < 1 << d:
            raise CodeError("Hyperplane needs a nonzero functional")
        pivot = functional.bit_length() - 1
        directions = []
        for j in range(d):
            if j == pivot:
                continue
            vec = 1 << j
            if functional >> j & 1:
                vec |= 1 << pivot
            directions.append(vec)
        basepoint = (1 << pivot) if constant & 1 else 0
        return cls(d, basepoint, tuple(directions))

    @classmethod
    def from_word(cls, word):
        """Return the affine subspace with this point set, or None."""
        points = word.points()
        if not points or len(points) & (len(points) - 1):
            return None
        base = points[0]
        directions = rref(point ^ base for point in points)
        if 1 << len(directions) != len(points):
            return None
        subspace = cls(word.d, base, directions)
        return subspace if subspace.word == word else None

    @property
    def dim(self):
        """Return the dimension."""
        return len(self.directions)

    @property
    def word(self):
        """Return the characteristic word."""
        mask = 0
        for offset in span(self.directions):
            mask |= 1 << (self.basepoint ^ offset)
        return BitWord(self.d, mask)

    def points(self):
        """Return the sorted points."""
        return sorted(self.basepoint ^ offset for offset in span(self.directions))

    def __contains__(self, point):
        """Return True if point lies in the subspace."""
        return reduce_vector(point ^ self.basepoint, self.directions) == 0

    def contains_direction(self, c_point):
        """Return True if c lies in the direction space."""
        return reduce_vector(c_point, self.directions) == 0


def linear_subspaces(d, dim):
    """Yield the direction tuples of all linear subspaces of a given dimension."""
    for pivots in itertools.combinations(range(d), dim):
        pivot_set = set(pivots)
        free = [[q for q in range(p) if q not in pivot_set] for p in pivots]
        for choice in itertools.product(*(range(1 << len(f)) for f in free)):
            rows = []
            for pivot, positions, bits in zip(pivots, free, choice):
                row = 1 << pivot
                for index, position in enumerate(positions):
                    if bits >> index & 1:
                        row |= 1 << position
                rows.append(row)
            yield tuple(rows)


def affine_subspaces(d, dim):
    """Yield every affine subspace of Omega of the given dimension."""
    if not 0 <= dim <= d:
        return
    for directions in linear_subspaces(d, dim):
        pivots = {row.bit_length() - 1 for row in directions}
        others = [j for j in range(d) if j not in pivots]
        for bits in range(1 << len(others)):
            base = 0
            for index, position in enumerate(others):
                if bits >> index & 1:
                    base |= 1 << position
            yield AffineSubspace(d, base, directions)


def coordinate_subcubes(d, dim):
    """Yield the affine subspaces spanned by dim coordinate directions."""
    for free in itertools.combinations(range(d), dim):
        others = [j for j in range(d) if j not in free]
        directions = tuple(1 << j for j in free)
        for bits in range(1 << len(others)):
            base = 0
            for index, position in enumerate(others):
                if bits >> index & 1:
                    base |= 1 << position
            yield AffineSubspace(d, base, directions)


@dataclass(frozen=True)
class Code:
    """Binary linear code of length 2^d with a reduced basis."""

    d: int
    order: object
    basis: tuple = field(default=())

    @property
    def dimension(self):
        """Return the F_2 dimension."""
        return len(self.basis)

    def contains(self, word):
        """Return True if the word lies in the code."""
        bits = word.bits if isinstance(word, BitWord) else word
        return reduce_vector(bits, self.basis) == 0

    def __contains__(self, word):
        """Return True if the word lies in the code."""
        return self.contains(word)

    def same_span(self, other):
        """Return True if both codes have the same words."""
        return self.d == other.d and self.basis == other.basis

    def words(self):
        """Yield every codeword as an integer mask."""
        return span(self.basis)

    def random_word(self, rng):
        """Return a uniformly random codeword."""
        mask = 0
        for row in self.basis:
            if rng.getrandbits(1):
                mask ^= row
        return BitWord(self.d, mask)

    def minimum_weight(self):
        """Return the minimum nonzero weight by exhausting the code."""
        if self.dimension > MAX_EXHAUSTIVE_CODE_DIM:
            raise SizeError(f"Code of dimension {self.dimension} is too large")
        weights = [popcount(word) for word in self.words() if word]
        return min(weights) if weights else None

    def sampled_minimum_weight(self, samples, rng):
        """Return the minimum weight among random nonzero codewords."""
        best = None
        for _ in range(samples):
            word = self.random_word(rng)
            if word.bits and (best is None or word.weight < best):
                best = word.weight
        return best


def span_code(d, words, order=None):
    """Return the code spanned by the given words or masks."""
    masks = [w.bits if isinstance(w, BitWord) else w for w in words]
    return Code(d, order, rref(masks))


def rm_dimension(k, d):
    """Return sum_{i <= k} C(d, i)."""
    return sum(math.comb(d, i) for i in range(0, min(k, d) + 1)) if k >= 0 else 0


@lru_cache(maxsize=None)
def build_rm(k, d):
    """Return RM(k, d), spanned by the subcubes {x : x_j = 1 for j in T}, |T| <= k."""
    d = check(code_dimension, d)
    if k < 0:
        return Code(d, k, ())
    k = min(k, d)
    masks = coordinate_masks(d)
    spanning = []
    for size in range(k + 1):
        for coords in itertools.combinations(range(d), size):
            word = full_mask(d)
            for j in coords:
                word &= masks[j]
            spanning.append(word)
    code = Code(d, k, rref(spanning))
    if code.dimension != rm_dimension(k, d):
        raise ConsistencyError(f"RM({k},{d}) has dimension {code.dimension}")
    _LOGGER.debug("Built RM(%s,%s) of dimension %s", k, d, code.dimension)
    return code


def dual_code(k, d):
    """Return the orthogonal complement of RM(k, d)."""
    d = check(code_dimension, d)
    if not 0 <= k <= d - 1:
        raise SizeError(f"Dual needs 0 <= k <= d - 1, got k={k}, d={d}")
    words = nullspace(build_rm(k, d).basis, 1 << d)
    return Code(d, d - 1 - k, rref(words))


def word_levels(word):
    """Return (rm_level, bw_level) of a nonzero word."""
    if word.is_zero():
        raise CodeError("The zero word has no level")
    d = word.d
    rm_level = next(i for i in range(d, -1, -1) if build_rm(d - i, d).contains(word))
    bw_level = next(
        m for m in range(d // 2, -1, -1) if build_rm(d - 2 * m, d).contains(word)
    )
    return rm_level, bw_level


def affine_functions(d):
    """Yield every word of RM(1, d)."""
    masks = coordinate_masks(d)
    full = full_mask(d)
    for functional in range(1 << d):
        word = 0
        for j in range(d):
            if functional >> j & 1:
                word ^= masks[j]
        yield word
        yield word ^ full


def short_weight(d, k):
    """Return 2^{d-1} - 2^{d-k-1}."""
    return (1 << (d - 1)) - (1 << (d - k - 1))


def defect(word):
    """Return the defect of a word of RM(2, d) by exhausting its RM(1, d) coset."""
    d = word.d
    if not build_rm(2, d).contains(word):
        raise CodeError("Defect is only defined on RM(2,d)")
    weights = {popcount(word.bits ^ affine) for affine in affine_functions(d)}
    for k in range(1, d // 2 + 1):
        if short_weight(d, k) in weights:
            return k
    return 0


def classify_word(word):
    """Return (WordClass, defect) of a word of RM(2, d)."""
    k = defect(word)
    if k:
        if word.weight == short_weight(word.d, k):
            return WordClass.SHORT, k
        if word.weight == (1 << word.d) - short_weight(word.d, k):
            return WordClass.LONG, k
    return WordClass.MID, k


@dataclass(frozen=True)
class CubiDecomposition:
    """Boolean sum Z = S_1 + ... + S_k of codimension 2 subspaces."""

    d: int
    k: int
    parts: tuple
    word: BitWord
    core: AffineSubspace

    def core_translations(self):
        """Return the nonzero elements of the core as a group of translations."""
        return [c for c in self.core.points() if c]


def cubi_codeword(d, k):
    """Return the canonical cubi sum with S_i = {x : x_{2i-1} = x_{2i} = 0}."""
    d = check(code_dimension, d)
    if not 1 <= k <= d // 2:
        raise SizeError(f"k must lie in [1, {d // 2}] for d={d}, got {k}")
    parts = []
    word = BitWord(d)
    for i in range(k):
        directions = tuple(1 << j for j in range(d) if j not in (2 * i, 2 * i + 1))
        part = AffineSubspace(d, 0, directions)
        parts.append(part)
        word = word + part.word
    core = AffineSubspace(d, 0, tuple(1 << j for j in range(2 * k, d)))
    if word.weight != short_weight(d, k):
        raise ConsistencyError(f"Cubi sum for ({d},{k}) has weight {word.weight}")
    return CubiDecomposition(d, k, tuple(parts), word, core)


def translate_word(word, c_point):
    """Return the image of the word under translation by c."""
    return word.translate(c_point)


def augmentation(word, c_point):
    """Return w(tau_c - 1) = w + w tau_c."""
    return word + word.translate(c_point)


def quotient_word(word, gamma):
    """Return the image of a gamma-saturated word in Omega / gamma.

    The quotient coordinates are the non-pivot bits of the reduced basis of gamma,
    in increasing order.
    """
    directions = rref(gamma)
    if len(directions) != len(tuple(gamma)):
        raise CodeError("Quotient directions are not linearly independent")
    for direction in directions:
        if word.translate(direction) != word:
            raise CodeError("Word is not a union of cosets of the subspace")
    pivots = {row.bit_length() - 1 for row in directions}
    kept = [j for j in range(word.d) if j not in pivots]
    mask = 0
    for point in word.points():
        rep = reduce_vector(point, directions)
        image = 0
        for index, position in enumerate(kept):
            if rep >> position & 1:
                image |= 1 << index
        mask |= 1 << image
    return BitWord(len(kept), mask)


def translation_image_code(code, translations):
    """Return the span of w(tau_c - 1) over the basis words and the translations."""
    d = code.d
    images = []
    for row in code.basis:
        word = BitWord(d, row)
        for c_point in translations:
            images.append(augmentation(word, c_point).bits)
    return span_code(d, images)


def translation_kernel_code(d, c_point):
    """Return Ker(tau_c - 1) on the full power set, computed from the map."""
    images = [augmentation(BitWord(d, 1 << i), c_point).bits for i in range(1 << d)]
    return span_code(d, kernel_of_map(images))
