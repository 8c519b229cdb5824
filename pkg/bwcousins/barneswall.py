"""Barnes-Wall lattices, their eigenlattices, twists and commutators."""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
import logging
import random

from .brw_action import (
    action_matrix,
    apply,
    compose,
    is_involution,
    is_lattice_invariant,
    jordan_number,
    make_fourvolution,
    minus_identity,
    sign_change,
    translation,
)
from .const import DEFAULT_BUDGET, MAX_MINVEC_D, MAX_TWIST_MINVEC_D, ClaimStatus, Eps
from .exact_linalg import integer_kernel
from .exceptions import (
    BudgetExceeded,
    CodeError,
    ConsistencyError,
    IsometryError,
    SizeError,
)
from .gf2_codes import (
    AffineSubspace,
    BitWord,
    affine_subspaces,
    build_rm,
    coordinate_masks,
    coordinate_subcubes,
    span_code,
)
from .lattice_core import (
    AmbientSpace,
    DyadicVector,
    enumerate_short,
    lattice_from_rows,
    lattice_sum,
    level_and_top,
    make_lattice,
    minimal_vectors,
    zero_lattice,
)
from .report import Claim, VerificationReport
from .task import CheckRunner
from .util import Registry
from .validation import check, is_budget, lattice_dimension

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class BarnesWall:
    """BW_d with its standard basis labelled by Omega."""

    d: int
    lattice: object
    generators: int

    @property
    def ambient(self):
        """Return the ambient space."""
        return self.lattice.ambient

    @property
    def frame(self):
        """Return the 2^{d+1} frame vectors ±v_i."""
        vectors = []
        for index in range(self.ambient.n):
            vector = DyadicVector.basis_vector(self.ambient, index)
            vectors.extend((vector, -vector))
        return tuple(vectors)


def expected_bw_det(d):
    """Return det BW_d: 1 for odd d, 2^{2^{d-1}} for even d."""
    return 1 if d % 2 else 1 << (1 << (d - 1))


@lru_cache(maxsize=None)
def build_bw(d):
    """Return BW_d spanned by the v_i and 2^{-m} v_A, A a coordinate 2m-subcube."""
    d = check(lattice_dimension, d)
    ambient = AmbientSpace(d)
    exponent = d // 2
    size = ambient.n
    rows = []
    for index in range(size):
        row = [0] * size
        row[index] = 1 << exponent
        rows.append(row)
    for level in range(1, exponent + 1):
        entry = 1 << (exponent - level)
        for subcube in coordinate_subcubes(d, 2 * level):
            row = [0] * size
            for point in subcube.points():
                row[point] = entry
            rows.append(row)
    lattice = lattice_from_rows(ambient, exponent, rows, Fraction(1))
    if lattice.det != expected_bw_det(d):
        raise ConsistencyError(f"BW_{d} has determinant {lattice.det}")
    _LOGGER.info(
        "Built BW_%s of rank %s and determinant %s", d, lattice.rank, lattice.det
    )
    return BarnesWall(d, lattice, len(rows))


def _restricted_signs(d, subspace):
    """Return the restrictions of RM(2, d) to a subspace as masks."""
    mask = subspace.word.bits
    code = span_code(d, [row & mask for row in build_rm(2, d).basis])
    return list(code.words())


def _signed_subspace_vectors(ambient, dim, level):
    """Return {±2^{-level} v_A ε_S : A affine of dimension dim, S in RM(2,d)}."""
    found = set()
    for subspace in affine_subspaces(ambient.d, dim):
        for signs in _restricted_signs(ambient.d, subspace):
            found.add(
                DyadicVector.from_word(
                    ambient, subspace.word, level, BitWord(ambient.d, signs)
                )
            )
    return found


def standard_minimal_vectors(d):
    """Return the set {2^{-m} v_A ε_S : A affine 2m-space, S in RM(2,d)}."""
    d = check(lattice_dimension, d)
    if d > MAX_MINVEC_D:
        raise SizeError(f"Minimal vectors are materialized for d <= {MAX_MINVEC_D}")
    ambient = AmbientSpace(d)
    found = set()
    for level in range(d // 2 + 1):
        found |= _signed_subspace_vectors(ambient, 2 * level, level)
    return frozenset(found)


def bw_twist_minvecs(d):
    """Return the set {2^{-m} v_A ε_S : A affine (2m+1)-space, S in RM(2,d)}."""
    d = check(lattice_dimension, d)
    if d > MAX_TWIST_MINVEC_D:
        raise SizeError(
            f"Twist minimal vectors are materialized for d <= {MAX_TWIST_MINVEC_D}"
        )
    ambient = AmbientSpace(d)
    found = set()
    for level in range((d - 1) // 2 + 1):
        found |= _signed_subspace_vectors(ambient, 2 * level + 1, level)
    return frozenset(found)


def default_fourvolution(d):
    """Return ε_H τ_c with H = {x_d = 0} and c = e_d."""
    c_point = 1 << (d - 1)
    return make_fourvolution(d, c_point, 0, c_point)


def as_isometry(value):
    """Return the MonomialIsometry behind a spec or the isometry itself."""
    return getattr(value, "isometry", value)


def twist(lattice, power, fourvolution):
    """Return the twist L[p] = L(f - 1)^p."""
    isometry = as_isometry(fourvolution)
    if power < 0:
        raise IsometryError(f"Twist power must be non-negative, got {power}")
    if not is_lattice_invariant(lattice, isometry):
        raise IsometryError("Lattice is not invariant under the fourvolution")
    result = lattice
    for _ in range(power):
        images = [apply(isometry, vector) - vector for vector in result.vectors]
        frame = 2 * result.frame if result.frame is not None else None
        result = make_lattice(result.ambient, images, frame)
    return result


def projection(vector, involution, eps):
    """Return P^ε(x) = x(1 + εt)/2."""
    image = apply(as_isometry(involution), vector)
    if Eps.from_symbol(eps) is Eps.MINUS:
        image = -image
    return (vector + image).scaled(Fraction(1, 2))


def _is_diagonal(isometry):
    """Return True for a pure sign change."""
    return isometry.is_linear_identity and isometry.translate == 0


def eigenlattice(lattice, involution, eps):
    """Return L^ε(t), the saturated kernel of t - ε inside L."""
    isometry = as_isometry(involution)
    eps = Eps.from_symbol(eps)
    if not is_involution(isometry):
        raise IsometryError("Eigenlattice needs an involution")
    if _is_diagonal(isometry):
        negated = isometry.sign
        keep = negated if eps is Eps.MINUS else ~negated
        if not is_lattice_invariant(lattice, isometry):
            raise IsometryError("Lattice is not invariant under the involution")
        return lattice.restrict_to_support(keep & ((1 << lattice.ambient.n) - 1))
    matrix = action_matrix(lattice, isometry)
    for index, row in enumerate(matrix):
        row[index] -= int(eps)
    kernel = integer_kernel(matrix)
    if not kernel:
        return zero_lattice(lattice.ambient)
    return make_lattice(lattice.ambient, [lattice.combination(row) for row in kernel])


def projected_lattice(lattice, involution, eps):
    """Return P^ε(L)."""
    isometry = as_isometry(involution)
    eps = Eps.from_symbol(eps)
    images = [projection(vector, isometry, eps) for vector in lattice.vectors]
    frame = None
    if _is_diagonal(isometry) and lattice.frame is not None:
        frame = lattice.frame
    return make_lattice(lattice.ambient, images, frame)


@dataclass(frozen=True)
class EigenData:
    """Eigenlattices of an involution and their orthogonal sum."""

    involution: object
    plus: object
    minus: object
    tel: object


def eigen_data(lattice, involution):
    """Return L^+(t), L^-(t) and Tel(L, t)."""
    plus = eigenlattice(lattice, involution, Eps.PLUS)
    minus = eigenlattice(lattice, involution, Eps.MINUS)
    return EigenData(involution, plus, minus, lattice_sum(plus, minus))


def commutator_sublattice(lattice, isometry):
    """Return [L, g], the span of x(g - 1) over a basis of L."""
    isometry = as_isometry(isometry)
    if not is_lattice_invariant(lattice, isometry):
        raise IsometryError("Lattice is not invariant under the isometry")
    images = [apply(isometry, vector) - vector for vector in lattice.vectors]
    images = [image for image in images if not image.is_zero()]
    if not images:
        return zero_lattice(lattice.ambient)
    return make_lattice(lattice.ambient, images)


def lower_generators(d):
    """Return generators of R_d: ε_{X_j}, τ_{e_j} and -1."""
    generators = [sign_change(BitWord(d, mask)) for mask in coordinate_masks(d)]
    generators += [translation(d, 1 << j) for j in range(d)]
    generators.append(minus_identity(d))
    return generators


def commutator_density(lattice):
    """Return [L, R_d] as the span of x(g - 1) over lower generators g."""
    d = lattice.ambient.d
    images = []
    for generator in lower_generators(d):
        if not is_lattice_invariant(lattice, generator):
            raise IsometryError("Lattice is not invariant under R_d")
        for vector in lattice.vectors:
            image = apply(generator, vector) - vector
            if not image.is_zero():
                images.append(image)
    return make_lattice(lattice.ambient, images)


def lower_dihedral_pair(d, functional, constant, c_point):
    """Return involutions (u, v) = (ε_H, τ_c) with uv a lower fourvolution."""
    fourvolution = make_fourvolution(d, functional, constant, c_point)
    first = sign_change(fourvolution.hyperplane.word)
    second = translation(d, c_point)
    _check_dihedral(first, second)
    return first, second


def _check_dihedral(first, second):
    """Raise unless u, v generate a dihedral group of order 8 with centre ±1."""
    if not (is_involution(first) and is_involution(second)):
        raise IsometryError("Generators of the dihedral group must be involutions")
    product = compose(first, second)
    if compose(product, product) != minus_identity(first.d):
        raise IsometryError("Pair does not generate a dihedral group of order 8")


def check_two_four(lattice, first, second):
    """Return True if L^+(u) + L^+(v) = L."""
    first, second = as_isometry(first), as_isometry(second)
    _check_dihedral(first, second)
    total = lattice_sum(
        eigenlattice(lattice, first, Eps.PLUS),
        eigenlattice(lattice, second, Eps.PLUS),
    )
    return total == lattice


def check_two_four_all(lattice, first, second):
    """Run check_two_four over the four generating pairs (±u, ±v)."""
    minus = minus_identity(first.d)
    pairs = [
        (first, second),
        (compose(first, minus), second),
        (first, compose(second, minus)),
        (compose(first, minus), compose(second, minus)),
    ]
    return all(check_two_four(lattice, u_map, v_map) for u_map, v_map in pairs)


@dataclass(frozen=True)
class TopClosureWitness:
    """Vector x of BW_d whose top is not in BW_d."""

    vector: DyadicVector
    top: DyadicVector
    first: AffineSubspace
    second: AffineSubspace


def top_closure_witness(d=8, attempts=200, seed=0):
    """Search pairs of affine 4-spaces meeting in a point for x with top(x) outside."""
    bw_lattice = build_bw(d).lattice
    ambient = bw_lattice.ambient
    first = AffineSubspace(d, 0, tuple(1 << j for j in range(4)))
    rng = random.Random(seed)
    candidates = list(coordinate_subcubes(d, 4))
    for _ in range(attempts):
        directions = [rng.randrange(1, 1 << d) for _ in range(4)]
        try:
            candidates.append(
                AffineSubspace(d, rng.randrange(1 << d), tuple(directions))
            )
        except CodeError:
            continue
    quarter = Fraction(1, 4)
    for second in candidates:
        if (first.word & second.word).weight != 1:
            continue
        vector = (
            DyadicVector.from_word(ambient, first.word)
            + DyadicVector.from_word(ambient, second.word)
        ).scaled(quarter)
        if not bw_lattice.contains(vector):
            continue
        _, top = level_and_top(vector)
        if not bw_lattice.contains(top):
            _LOGGER.debug("Top closure witness found for %s and %s", first, second)
            return TopClosureWitness(vector, top, first, second)
    return None


BW_CHECKS = Registry()


class BarnesWallContext:
    """Shared data for the checks of BW_d."""

    def __init__(self, bw, budget):
        """Set up BarnesWallContext."""
        self.bw = bw
        self.budget = budget

    @cached_property
    def fourvolution(self):
        """Return the default lower fourvolution."""
        return default_fourvolution(self.bw.d)


@BW_CHECKS.register("determinant")
def _check_bw_det(ctx):
    """Compare det BW_d with 1 or 2^{2^{d-1}}."""
    return [
        Claim.compare(
            "determinant",
            "determinant of Barnes-Wall lattices",
            expected_bw_det(ctx.bw.d),
            ctx.bw.lattice.det,
        )
    ]


@BW_CHECKS.register("even")
def _check_bw_even(ctx):
    """Check that BW_d is even."""
    return [
        Claim.compare(
            "even", "Barnes-Wall lattices are even", True, ctx.bw.lattice.is_even
        )
    ]


@BW_CHECKS.register("min-norm")
def _check_bw_min_norm(ctx):
    """Check μ(BW_d) = 2^{⌊d/2⌋} with v_0 as witness."""
    lattice = ctx.bw.lattice
    source = "minimum norm of Barnes-Wall lattices"
    expected = lattice.ambient.scale
    witness = DyadicVector.basis_vector(lattice.ambient, 0).norm
    if ctx.bw.d > MAX_MINVEC_D:
        return [Claim("min-norm", source, expected, witness, ClaimStatus.BOUNDED)]
    try:
        below = enumerate_short(lattice, expected - 1, ctx.budget)
    except BudgetExceeded as exc:
        _LOGGER.warning("Minimum norm enumeration stopped: %s", exc)
        return [Claim("min-norm", source, expected, witness, ClaimStatus.BOUNDED)]
    computed = min(below.norms) if below.norms else witness
    return [Claim.compare("min-norm", source, expected, computed)]


def _with_negatives(vectors):
    """Return the set of vectors and their negatives."""
    found = set(vectors)
    found.update(-vector for vector in vectors)
    return found


@BW_CHECKS.register("minimal-vectors")
def _check_bw_minimal_vectors(ctx):
    """Compare the enumerated minimal vectors with the affine subspace description."""
    if ctx.bw.d > MAX_TWIST_MINVEC_D:
        return []
    found = _with_negatives(minimal_vectors(ctx.bw.lattice, ctx.budget).vectors)
    expected = standard_minimal_vectors(ctx.bw.d)
    return [
        Claim.compare(
            "minimal-vectors",
            "minimal vectors from affine subspaces",
            len(expected),
            len(found) if found == expected else f"mismatch of {len(found)}",
        )
    ]


@BW_CHECKS.register("twist-minimal-vectors")
def _check_twist_minimal_vectors(ctx):
    """Compare the minimal vectors of BW_d[1] with odd dimensional subspaces."""
    if ctx.bw.d > 3:
        return []
    twisted = twist(ctx.bw.lattice, 1, ctx.fourvolution)
    found = _with_negatives(minimal_vectors(twisted, ctx.budget).vectors)
    expected = bw_twist_minvecs(ctx.bw.d)
    return [
        Claim.compare(
            "twist-minimal-vectors",
            "minimal vectors of the first twist",
            len(expected),
            len(found) if found == expected else f"mismatch of {len(found)}",
        )
    ]


@BW_CHECKS.register("jordan-lower")
def _check_jordan_lower(ctx):
    """Check JNo(-1) = 0 and JNo = 2^{d-2} for noncentral lower involutions."""
    d = ctx.bw.d
    if d > 6:
        return []
    lattice = ctx.bw.lattice
    computed = {
        "minus_identity": jordan_number(lattice, minus_identity(d)),
        "sign_change": jordan_number(
            lattice, sign_change(BitWord(d, coordinate_masks(d)[0]))
        ),
        "translation": jordan_number(lattice, translation(d, 1)),
    }
    expected = {
        "minus_identity": 0,
        "sign_change": 1 << (d - 2),
        "translation": 1 << (d - 2),
    }
    return [
        Claim.compare(
            "jordan-lower", "Jordan numbers of lower involutions", expected, computed
        )
    ]


@BW_CHECKS.register("two-four")
def _check_two_four(ctx):
    """Check 2/4 generation for the standard lower dihedral pair."""
    c_point = ctx.fourvolution.c_point
    first, second = lower_dihedral_pair(ctx.bw.d, c_point, 0, c_point)
    return [
        Claim.compare(
            "two-four",
            "2/4 generation of Barnes-Wall lattices",
            True,
            check_two_four_all(ctx.bw.lattice, first, second),
        )
    ]


@BW_CHECKS.register("commutator-density")
def _check_commutator_density(ctx):
    """Check [BW_d, R_d] = BW_d(f - 1)."""
    lattice = ctx.bw.lattice
    return [
        Claim.compare(
            "commutator-density",
            "commutator density of lower fourvolutions",
            True,
            commutator_density(lattice) == twist(lattice, 1, ctx.fourvolution),
        )
    ]


def verify_bw(d, budget=DEFAULT_BUDGET, threads=None):
    """Run every registered check on BW_d and return the report."""
    budget = check(is_budget, budget)
    bw = build_bw(d)
    claims = CheckRunner(BW_CHECKS, threads).run(BarnesWallContext(bw, budget))
    summary = {
        "rank": bw.lattice.rank,
        "det": bw.lattice.det,
        "parity": bw.lattice.parity,
    }
    return VerificationReport({"d": bw.d, "budget": budget}, claims, summary)
