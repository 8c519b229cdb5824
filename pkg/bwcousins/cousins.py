"""Midwest cousins MC(L, t, f, ε) of Barnes-Wall lattices and their verification."""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
import logging
import random

from .barneswall import (
    as_isometry,
    build_bw,
    commutator_sublattice,
    eigen_data,
    eigenlattice,
    projected_lattice,
    projection,
    twist,
)
from .brw_action import (
    apply,
    commutes_with,
    compose,
    identity,
    is_involution,
    is_lattice_invariant,
    jordan_number,
    make_fourvolution,
    minus_identity,
    standard_pair,
)
from .const import (
    DEFAULT_BUDGET,
    ENUMERATION_MAX_RANK,
    FULL_CENSUS_MAX_RANK,
    MIN_LATTICE_D,
    ClaimStatus,
    Eps,
    IsometryStatus,
)
from .exact_linalg import mat_mul, rational_inverse, vec_mat
from .exceptions import BudgetExceeded, ConsistencyError, IsometryError, SizeError
from .gf2_codes import (
    AffineSubspace,
    BitWord,
    build_rm,
    linear_subspaces,
    rref,
    span_code,
)
from .lattice_core import (
    DyadicVector,
    connected_components,
    decompose,
    discriminant_group,
    enumerate_short,
    gram_isometric,
    index_in,
    lattice_sum,
    level_and_top,
    level_census,
    level_sublattice,
    make_lattice,
    min_norm,
    minimal_vectors,
    root_lattice_gram,
    standard_lattice,
    theta,
)
from .report import Claim, VerificationReport
from .task import CheckRunner
from .util import Registry
from .validation import check, is_budget, is_cousin_params, is_eps

_LOGGER = logging.getLogger(__name__)

CHECKS = Registry()

LEECH_NOTE = (
    "Built over BW_5 with a defect 1 involution of positive trace; "
    "the eigenlattice of rank 24 forces d = 5 and k = 1, a BW_4 reading does not "
    "give rank 24."
)


def cousin_rank(d, k, eps):
    """Return 2^{d-1} + ε 2^{d-k-1}."""
    return (1 << (d - 1)) + int(Eps.from_symbol(eps)) * (1 << (d - k - 1))


def expected_min_norm(d, k, eps):
    """Return (value, exact) for the minimum norm of MC_1(d, k, ε).

    When exact is False the value is only an upper bound.
    """
    eps = Eps.from_symbol(eps)
    if d % 2 and d - 2 * k >= 3:
        return 1 << ((d - 1) // 2 - 1), True
    if eps is Eps.MINUS:
        return 1 << (d // 2 - 1), True
    return 1 << (d // 2), False


def _midwest(lattice, involution, fourvolution, eps):
    """Return L^ε(t), P^ε(L) and MC(L, t, f, ε)."""
    d = lattice.ambient.d
    if involution == identity(d):
        raise IsometryError("The identity is not an admissible involution")
    if not is_involution(involution):
        raise IsometryError("t is not an involution")
    if compose(fourvolution, fourvolution) != minus_identity(d):
        raise IsometryError("f does not square to -1")
    if not commutes_with(involution, fourvolution):
        raise IsometryError("t and f do not commute")
    for name, isometry in (("t", involution), ("f", fourvolution)):
        if not is_lattice_invariant(lattice, isometry):
            raise IsometryError(f"Lattice is not invariant under {name}")
    eigen = eigenlattice(lattice, involution, eps)
    projected = projected_lattice(lattice, involution, eps)
    result = lattice_sum(eigen, twist(projected, 1, fourvolution))
    if not result.is_integral:
        raise ConsistencyError("Midwest cousin is not integral")
    _LOGGER.debug(
        "Midwest cousin of rank %s over an eigenlattice of rank %s",
        result.rank,
        eigen.rank,
    )
    return eigen, projected, result


def mc(lattice, involution, fourvolution, eps):
    """Return MC(L, t, f, ε) = L^ε(t) + P^ε(L)(f - 1)."""
    eps = check(is_eps, eps, IsometryError)
    _, _, result = _midwest(
        lattice, as_isometry(involution), as_isometry(fourvolution), eps
    )
    return result


@dataclass(frozen=True)
class CousinSpec:
    """First cousin MC_1(d, k, ε) over BW_d with the standard (t, f)."""

    d: int
    k: int
    eps: Eps
    involution: object
    fourvolution: object
    lattice: object
    bw: object
    eigen: object
    projected: object

    def __repr__(self):
        """Return the representation."""
        return (
            f"<{self.__class__.__name__} d={self.d} k={self.k} "
            f"eps={self.eps.symbol} rank={self.lattice.rank}>"
        )

    @property
    def ambient(self):
        """Return the ambient space."""
        return self.lattice.ambient

    @property
    def delta(self):
        """Return (d - 1) / 2 for odd d."""
        if self.d % 2 == 0:
            raise SizeError(f"delta is defined for odd d, got {self.d}")
        return (self.d - 1) // 2

    @property
    def region(self):
        """Return the support of L^ε(t) as a mask."""
        word = self.involution.word
        if self.eps is Eps.MINUS:
            return word.bits
        return word.complement().bits


def mc1(d, k, eps=Eps.PLUS):
    """Return the first cousin MC_1(d, k, ε)."""
    params = check(is_cousin_params, {"d": d, "k": k, "eps": eps})
    return _mc1(params["d"], params["k"], params["eps"])


@lru_cache(maxsize=None)
def _mc1(d, k, eps):
    """Build and cache MC_1(d, k, ε)."""
    bw = build_bw(d)
    involution, fourvolution = standard_pair(d, k)
    eigen, projected, lattice = _midwest(
        bw.lattice, involution.isometry, fourvolution.isometry, eps
    )
    if lattice.rank != cousin_rank(d, k, eps):
        raise ConsistencyError(
            f"MC_1({d},{k},{eps.symbol}) has rank {lattice.rank}, expected "
            f"{cousin_rank(d, k, eps)}"
        )
    _LOGGER.info(
        "Built MC_1(%s,%s,%s) of rank %s", d, k, eps.symbol, lattice.rank
    )
    return CousinSpec(
        d, k, eps, involution, fourvolution, lattice, bw, eigen, projected
    )


def alternative_fourvolution(d, k):
    """Return ε_H' τ_c with H' = {x_1 + x_d = 1}, another admissible choice."""
    c_point = 1 << (d - 1)
    if d - 2 * k < 1:
        raise SizeError(f"No core translation for d={d}, k={k}")
    return make_fourvolution(d, c_point | 1, 1, c_point)


def fourvolution_independence(d, k, eps=Eps.PLUS):
    """Return True if the alternative fourvolution gives the same MC_1."""
    spec = mc1(d, k, eps)
    other = mc(
        spec.bw.lattice, spec.involution, alternative_fourvolution(d, k), spec.eps
    )
    return other == spec.lattice


def min_norm_witness(spec):
    """Return 2^{-1} v_{A∩H} for a core plane A through c inside the region.

    Only defined for odd d with d - 2k >= 3; returns None otherwise or when no
    such vector lies in the cousin.
    """
    d = spec.d
    if d % 2 == 0 or d - 2 * spec.k < 3:
        return None
    c_point = spec.fourvolution.c_point
    hyperplane = spec.fourvolution.hyperplane.word
    region = spec.region
    for base in BitWord(d, region).points():
        for direction in spec.involution.core.points():
            if direction in (0, c_point):
                continue
            plane = AffineSubspace(d, base, (c_point, direction))
            if plane.word.bits & ~region:
                continue
            vector = DyadicVector.from_word(spec.ambient, plane.word & hyperplane, 1)
            if spec.lattice.contains(vector):
                return vector
    return None


@lru_cache(maxsize=None)
def _restricted_rm2(d, mask):
    """Return RM(2, d) restricted to the points of mask."""
    return span_code(d, [row & mask for row in build_rm(2, d).basis])


def dyadic_form(vector):
    """Return (m, A, S) with vector = 2^{-m} v_A ε_S, S in RM(2,d), or None."""
    if vector.is_zero() or any(abs(x) > 1 for x in vector.numerators):
        return None
    d = vector.ambient.d
    word = BitWord(d, vector.support)
    subspace = AffineSubspace.from_word(word)
    if subspace is None:
        return None
    negatives = 0
    for index, value in enumerate(vector.numerators):
        if value < 0:
            negatives |= 1 << index
    if not _restricted_rm2(d, word.bits).contains(negatives):
        return None
    return vector.exponent, subspace, BitWord(d, negatives)


def has_minimal_form(spec, vector):
    """Return True for 2^{-m} v_A ε_S with A an affine (2m-1)-space in the region."""
    form = dyadic_form(vector)
    if form is None:
        return False
    level, subspace, _ = form
    return subspace.dim == 2 * level - 1 and not vector.support & ~spec.region


class CousinContext:
    """Shared data for the checks of one cousin."""

    def __init__(self, spec, budget):
        """Set up CousinContext."""
        self.spec = spec
        self.budget = budget

    @cached_property
    def expected_min(self):
        """Return (value, exact) of the expected minimum norm."""
        return expected_min_norm(self.spec.d, self.spec.k, self.spec.eps)

    @cached_property
    def witness(self):
        """Return the explicit short vector, or None."""
        return min_norm_witness(self.spec)

    @cached_property
    def tel(self):
        """Return the eigenlattices of t on BW_d."""
        return eigen_data(self.spec.bw.lattice, self.spec.involution)

    @cached_property
    def jordan(self):
        """Return JNo(t) on BW_d."""
        return jordan_number(self.spec.bw.lattice, self.spec.involution.isometry)

    @property
    def split_jordan(self):
        """Return 2^{d-1} - 2^{d-k-1}."""
        d, k = self.spec.d, self.spec.k
        return (1 << (d - 1)) - (1 << (d - k - 1))

    @property
    def structured(self):
        """Return True when the minimum norm theorem applies (odd d, d - 2k >= 3)."""
        return self.spec.d % 2 == 1 and self.spec.d - 2 * self.spec.k >= 3


@CHECKS.register("rank")
def _check_rank(ctx):
    """Compare the rank with 2^{d-1} + ε 2^{d-k-1}."""
    spec = ctx.spec
    expected = cousin_rank(spec.d, spec.k, spec.eps)
    return [Claim.compare("rank", "cousin rank formula", expected, spec.lattice.rank)]


@CHECKS.register("determinant")
def _check_determinant(ctx):
    """Check unimodularity for odd d."""
    if ctx.spec.d % 2 == 0:
        return []
    return [
        Claim.compare(
            "determinant",
            "unimodularity of first cousins for odd d",
            1,
            ctx.spec.lattice.det,
        )
    ]


@CHECKS.register("integral")
def _check_integral(ctx):
    """Check integrality of the cousin."""
    return [
        Claim.compare(
            "integral",
            "integrality of midwest cousins",
            True,
            ctx.spec.lattice.is_integral,
        )
    ]


@CHECKS.register("parity")
def _check_parity(ctx):
    """Check evenness for d - 2k >= 2 and exhibit an odd vector otherwise."""
    spec = ctx.spec
    expected = "odd" if spec.d - 2 * spec.k <= 1 else "even"
    claims = [
        Claim.compare(
            "parity", "parity of first cousins", expected, spec.lattice.parity
        )
    ]
    if expected == "odd":
        vector = spec.lattice.odd_vector()
        norm = vector.norm if vector is not None else None
        status = ClaimStatus.PASS if norm is not None else ClaimStatus.FAIL
        claims.append(
            Claim("odd-witness", "parity of first cousins", "odd norm", norm, status)
        )
    return claims


def _is_doubly_even(lattice):
    """Return True if every norm is a multiple of 4."""
    gram = lattice.gram
    return lattice.is_integral and all(
        gram[i][j] % (4 if i == j else 2) == 0
        for i in range(lattice.rank)
        for j in range(i, lattice.rank)
    )


@CHECKS.register("even-from-doubly-even")
def _check_doubly_even(ctx):
    """Check that a doubly even eigenlattice gives an even cousin."""
    doubly_even = _is_doubly_even(ctx.spec.eigen)
    even = ctx.spec.lattice.is_even
    status = ClaimStatus.PASS if even or not doubly_even else ClaimStatus.FAIL
    return [
        Claim(
            "even-from-doubly-even",
            "double evenness of the eigenlattice",
            "doubly even eigenlattice gives an even cousin",
            {"doubly_even": doubly_even, "even": even},
            status,
        )
    ]


@CHECKS.register("jordan-number")
def _check_jordan(ctx):
    """Compare JNo(t) with 2^{d-1} - 2^{d-k-1}."""
    return [
        Claim.compare(
            "jordan-number",
            "Jordan number of split defect k involutions",
            ctx.split_jordan,
            ctx.jordan,
        )
    ]


@CHECKS.register("tel-index")
def _check_tel_index(ctx):
    """Compare |BW_d : L^+(t) ⊥ L^-(t)| with 2^JNo."""
    index = index_in(ctx.tel.tel, ctx.spec.bw.lattice)
    return [
        Claim.compare(
            "tel-index",
            "index of the eigenlattice sum",
            1 << ctx.split_jordan,
            index,
        )
    ]


@CHECKS.register("discriminant")
def _check_discriminant(ctx):
    """Check that both eigenlattices have elementary abelian discriminant groups."""
    if ctx.spec.d % 2 == 0:
        return []
    claims = []
    expected = {"elementary_abelian": True, "rank": ctx.split_jordan}
    for name, lattice in (("plus", ctx.tel.plus), ("minus", ctx.tel.minus)):
        group = discriminant_group(lattice)
        computed = {
            "elementary_abelian": group.is_elementary_abelian(),
            "rank": group.rank,
        }
        claims.append(
            Claim.compare(
                f"discriminant-{name}",
                "discriminant of eigenlattices of a unimodular lattice",
                expected,
                computed,
            )
        )
    return claims


@CHECKS.register("commutator")
def _check_commutator(ctx):
    """Check L^-(t) = [L, t]."""
    commutator = commutator_sublattice(ctx.spec.bw.lattice, ctx.spec.involution)
    return [
        Claim.compare(
            "commutator",
            "minus eigenlattice as commutator",
            True,
            commutator == ctx.tel.minus,
        )
    ]


@CHECKS.register("minus-in-2P")
def _check_minus_in_projection(ctx):
    """Check L^-(t) ⊆ 2P^-(L)."""
    doubled = projected_lattice(
        ctx.spec.bw.lattice, ctx.spec.involution, Eps.MINUS
    ).scaled(2)
    return [
        Claim.compare(
            "minus-in-2P",
            "minus eigenlattice inside twice the projection",
            True,
            doubled.contains_lattice(ctx.tel.minus),
        )
    ]


@CHECKS.register("xi-mapping")
def _check_xi(ctx):
    """Check x(f - 1) ∈ L^ε(t) with doubled norm for a basis of the cousin."""
    spec = ctx.spec
    fourvolution = spec.fourvolution.isometry
    holds = True
    for vector in spec.lattice.vectors:
        image = apply(fourvolution, vector) - vector
        if not spec.eigen.contains(image) or image.norm != 2 * vector.norm:
            holds = False
            break
    return [
        Claim.compare("xi-mapping", "twist map into the eigenlattice", True, holds)
    ]


@CHECKS.register("min-norm")
def _check_min_norm(ctx):
    """Check the minimum norm with a witness and a bounded enumeration."""
    spec = ctx.spec
    source = "minimum norm of first cousins"
    expected, exact = ctx.expected_min
    label = expected if exact else f"<= {expected}"
    witness = ctx.witness
    witness_norm = witness.norm if witness is not None else None
    if witness is not None and witness_norm != expected:
        return [Claim("min-norm", source, label, witness_norm, ClaimStatus.FAIL)]
    if spec.lattice.rank > ENUMERATION_MAX_RANK:
        _LOGGER.warning(
            "Rank %s is above %s, minimum norm is bounded by the witness",
            spec.lattice.rank,
            ENUMERATION_MAX_RANK,
        )
        return [Claim("min-norm", source, label, witness_norm, ClaimStatus.BOUNDED)]
    try:
        if exact and witness is not None:
            below = enumerate_short(spec.lattice, expected - 1, ctx.budget)
            computed = min(below.norms) if below.norms else witness_norm
        else:
            computed = min_norm(spec.lattice, ctx.budget)
    except BudgetExceeded as exc:
        _LOGGER.warning("Minimum norm enumeration stopped: %s", exc)
        status = ClaimStatus.BOUNDED
        if witness is None:
            status = ClaimStatus.SKIPPED_BUDGET
        return [Claim("min-norm", source, label, witness_norm, status)]
    if exact:
        return [Claim.compare("min-norm", source, expected, computed)]
    status = ClaimStatus.PASS if computed <= expected else ClaimStatus.FAIL
    return [Claim("min-norm", source, label, computed, status)]


@CHECKS.register("level1-census")
def _check_level_one(ctx):
    """Check that no vector of level <= 1 is shorter than the expected minimum."""
    expected, exact = ctx.expected_min
    if not exact or expected > ctx.spec.ambient.scale:
        return []
    census = level_census(ctx.spec.lattice, expected)
    return [
        Claim.compare("level1-census", "level one short vectors", 0, 2 * len(census))
    ]


def _short_vectors_at(ctx, norm):
    """Return vectors of the given norm, all of them or those of level <= 1."""
    lattice = ctx.spec.lattice
    if lattice.rank <= FULL_CENSUS_MAX_RANK:
        found = enumerate_short(lattice, norm, ctx.budget).vectors
    else:
        found = level_census(lattice, norm + 1)
    return [vector for vector in found if vector.norm == norm]


@CHECKS.register("minimal-form")
def _check_minimal_form(ctx):
    """Check that minimal vectors avoid L^ε(t) and have the dyadic form."""
    if not ctx.structured:
        return []
    expected, _ = ctx.expected_min
    vectors = _short_vectors_at(ctx, expected)
    inside = sum(1 for vector in vectors if ctx.spec.eigen.contains(vector))
    malformed = sum(1 for vector in vectors if not has_minimal_form(ctx.spec, vector))
    return [
        Claim.compare(
            "minimal-outside-eigenlattice",
            "minimal vectors lie outside the eigenlattice",
            0,
            inside,
        ),
        Claim.compare(
            "minimal-form", "form of minimal vectors", 0, malformed
        ),
    ]


@CHECKS.register("fourvolution-choice")
def _check_fourvolution_choice(ctx):
    """Check that another admissible fourvolution gives the same cousin."""
    spec = ctx.spec
    return [
        Claim.compare(
            "fourvolution-choice",
            "independence of the fourvolution choice",
            True,
            fourvolution_independence(spec.d, spec.k, spec.eps),
        )
    ]


def _bw_block(d):
    """Return an indecomposable block of BW_d, its rank and its multiplicity.

    BW_1 = Z^2 splits into two copies of Z, given by its Gram matrix.
    """
    if d < MIN_LATTICE_D:
        return [[1]], 1, 2
    lattice = build_bw(d).lattice
    return lattice, lattice.rank, 1


def decomposition_summary(d, k, eps=Eps.PLUS, budget=DEFAULT_BUDGET):
    """Return the claims that MC_1(d, 1, ε) splits into copies of BW_{d-2}.

    Cousins of higher defect give no claims.
    """
    spec = mc1(d, k, eps)
    if spec.k != 1:
        return []
    budget = check(is_budget, budget)
    source = "decomposition of defect one cousins"
    target, rank, blocks = _bw_block(spec.d - 2)
    count = (3 if spec.eps is Eps.PLUS else 1) * blocks
    expected = [rank] * count
    if spec.lattice.rank > FULL_CENSUS_MAX_RANK:
        return [Claim("decomposition", source, expected, None, ClaimStatus.BOUNDED)]
    result = decompose(spec.lattice, budget)
    claims = [Claim.compare("decomposition", source, expected, list(result.ranks))]
    statuses = [
        gram_isometric(component, target, budget).status
        for component in result.components
    ]
    status = ClaimStatus.PASS
    if any(value is IsometryStatus.NOT_ISOMETRIC for value in statuses):
        status = ClaimStatus.FAIL
    elif any(value is IsometryStatus.EVIDENCE_ONLY for value in statuses):
        status = ClaimStatus.BOUNDED
    claims.append(
        Claim(
            "decomposition-isometry",
            source,
            [IsometryStatus.ISOMETRIC.value] * count,
            [value.value for value in statuses],
            status,
        )
    )
    return claims


@CHECKS.register("decomposition")
def _check_decomposition(ctx):
    """Check the defect one cousins split into copies of BW_{d-2}."""
    spec = ctx.spec
    return decomposition_summary(spec.d, spec.k, spec.eps, ctx.budget)


SUMMARY_CLAIMS = {
    "jordan-number": "jordan_number",
    "discriminant-plus": "discriminant_plus",
    "discriminant-minus": "discriminant_minus",
    "min-norm": "min_norm",
    "decomposition": "components",
}


def _summary(spec, claims):
    """Return the report summary in a fixed key order."""
    summary = {
        "rank": spec.lattice.rank,
        "det": spec.lattice.det,
        "parity": spec.lattice.parity,
    }
    for claim in claims:
        key = SUMMARY_CLAIMS.get(claim.name)
        if key is not None:
            summary[key] = {"value": claim.computed, "status": claim.status}
    return summary


def verify_cousin(d, k, eps=Eps.PLUS, budget=DEFAULT_BUDGET, threads=None):
    """Run every registered check on MC_1(d, k, ε) and return the report."""
    budget = check(is_budget, budget)
    spec = mc1(d, k, eps)
    context = CousinContext(spec, budget)
    claims = CheckRunner(CHECKS, threads).run(context)
    params = {"d": spec.d, "k": spec.k, "eps": spec.eps.symbol, "budget": budget}
    report = VerificationReport(params, claims, _summary(spec, claims))
    _LOGGER.info(
        "Verified MC_1(%s,%s,%s): %s claims, %s failed",
        spec.d,
        spec.k,
        spec.eps.symbol,
        len(claims),
        len(report.failed),
    )
    return report


def _check_structured(d, k):
    """Raise unless d is odd and d - 2k >= 3."""
    if d % 2 == 0 or d - 2 * k < 3:
        raise SizeError(f"Level analysis needs odd d and d - 2k >= 3, got d={d}, k={k}")


@dataclass(frozen=True)
class LevelOneCensus:
    """Level 1 vectors ½(v_i ± v_{i+c}) of the cousin and their components."""

    vectors: tuple
    components: tuple
    component_types: tuple
    base_points: int
    census_matches: bool

    @property
    def count(self):
        """Return the number of vectors, both signs counted."""
        return 2 * len(self.vectors)

    @property
    def norms(self):
        """Return the set of norms."""
        return {vector.norm for vector in self.vectors}


def level1_short_vectors(d, k, eps=Eps.PLUS, budget=DEFAULT_BUDGET):
    """Return the level 1 vectors of norm < 2^δ with their D-type components."""
    spec = mc1(d, k, eps)
    _check_structured(spec.d, spec.k)
    ambient = spec.ambient
    translations = [c for c in spec.involution.core.points() if c]
    found = set()
    bases = set()
    for first in BitWord(spec.d, spec.region).points():
        for c_point in translations:
            second = first ^ c_point
            if second < first:
                continue
            for sign in (1, -1):
                nums = [0] * ambient.n
                nums[first] = 1
                nums[second] = sign
                vector = DyadicVector(ambient, tuple(nums), 1)
                if spec.lattice.contains(vector):
                    found.add(vector)
                    bases.update((first, second))
    vectors = sorted(found, key=lambda vec: (vec.norm, vec.numerators))
    edges = [
        (i, j)
        for i in range(len(vectors))
        for j in range(i + 1, len(vectors))
        if vectors[i].dot(vectors[j])
    ]
    groups = connected_components(len(vectors), edges)
    components = [
        make_lattice(ambient, [vectors[i] for i in group]) for group in groups
    ]
    size = 1 << (spec.d - 2 * spec.k)
    reference = root_lattice_gram("D", size, 1 << (spec.delta - 1))
    types = tuple(
        gram_isometric(component, reference, budget).status
        for component in components
    )
    census = level_census(spec.lattice, 1 << spec.delta)
    _LOGGER.debug(
        "Level 1 census of MC_1(%s,%s,%s): %s pairs in %s components",
        spec.d,
        spec.k,
        spec.eps.symbol,
        len(vectors),
        len(components),
    )
    return LevelOneCensus(
        tuple(vectors),
        tuple(components),
        types,
        len(bases),
        tuple(vectors) == census,
    )


@dataclass(frozen=True)
class IndecomposabilityEvidence:
    """Connectivity of the level 1 components through w = P^ε(2^{-δ} v_H)(f - 1)."""

    components: int
    ratio: Fraction
    scale: Fraction
    nonorthogonal: tuple
    full_claim: bool
    conclusion: str

    @property
    def connected(self):
        """Return True if w meets every component."""
        return all(self.nonorthogonal)


def indecomposability_evidence(d, k, eps=Eps.PLUS, budget=DEFAULT_BUDGET):
    """Run the connectivity argument for orthogonal indecomposability."""
    spec = mc1(d, k, eps)
    census = level1_short_vectors(d, k, eps, budget)
    hyperplane = spec.fourvolution.hyperplane
    vector = DyadicVector.from_word(spec.ambient, hyperplane.word, spec.delta)
    if not spec.bw.lattice.contains(vector):
        raise ConsistencyError("2^{-δ} v_H is not in BW_d")
    projected = projection(vector, spec.involution, spec.eps)
    image = apply(spec.fourvolution.isometry, projected) - projected
    if not spec.lattice.contains(image):
        raise ConsistencyError("P(v)(f - 1) is not in the cousin")
    ratio = projected.norm / (1 << spec.delta)
    scale = image.norm / (1 << (spec.delta - 1))
    nonorthogonal = tuple(
        any(image.dot(basis) for basis in component.vectors)
        for component in census.components
    )
    full_claim = spec.d >= 7 and spec.k >= 2 and spec.d - 2 * spec.k >= 5
    if spec.k == 1:
        conclusion = "decomposable"
    elif all(nonorthogonal) and 1 <= scale <= 3:
        conclusion = "indecomposable" if full_claim else "connected"
    else:
        conclusion = "inconclusive"
    return IndecomposabilityEvidence(
        len(census.components), ratio, scale, nonorthogonal, full_claim, conclusion
    )


@dataclass(frozen=True)
class TopFormReport:
    """Sampled check that top(x) = 2^{-m} v_B with B in RM(d - 2m + 1, d)."""

    samples: int
    levels: dict
    counterexamples: tuple

    @property
    def passed(self):
        """Return True without counterexamples."""
        return not self.counterexamples


def _top_in_code(d, level, top):
    """Return True if the support of top lies in RM(d - 2 level + 1, d)."""
    order = d - 2 * level + 1
    if order >= d:
        return True
    word = top.support
    if order < 0:
        return word == 0
    return build_rm(order, d).contains(word)


def top_form_check(d, k, eps=Eps.PLUS, samples=1000, seed=0, target_level=None):
    """Check the top of random cousin vectors, at one level when given."""
    spec = mc1(d, k, eps)
    lattice = spec.lattice
    if target_level is not None:
        reference = standard_lattice(spec.ambient, lattice.support)
        lattice = level_sublattice(lattice, reference, target_level)
    rng = random.Random(seed)
    levels = {}
    counterexamples = []
    checked = 0
    while checked < samples:
        coefficients = [rng.randint(-2, 2) for _ in range(lattice.rank)]
        if not any(coefficients):
            continue
        vector = lattice.combination(coefficients)
        if vector.is_zero():
            continue
        checked += 1
        level, top = level_and_top(vector)
        levels[level] = levels.get(level, 0) + 1
        if not _top_in_code(spec.d, level, top):
            counterexamples.append(vector)
    if counterexamples:
        _LOGGER.warning("Top form fails for %s samples", len(counterexamples))
    return TopFormReport(checked, dict(sorted(levels.items())), tuple(counterexamples))


@dataclass(frozen=True)
class LevelTwoForm:
    """Level 2 vectors of norm 2^{δ-1} and whether they are ¼ v_B ε_C."""

    norm: Fraction
    vectors: tuple
    mismatches: tuple
    exhaustive: bool

    @property
    def exist(self):
        """Return True if any such vector was found."""
        return bool(self.vectors)

    @property
    def passed(self):
        """Return True if every vector has the form."""
        return not self.mismatches


def _core_spaces(spec, dim):
    """Yield the affine dim-spaces parallel to the core that lie in the region."""
    core = spec.involution.core.directions
    seen = set()
    for rows in linear_subspaces(len(core), dim):
        directions = []
        for row in rows:
            vec = 0
            for index, direction in enumerate(core):
                if row >> index & 1:
                    vec ^= direction
            directions.append(vec)
        for base in BitWord(spec.d, spec.region).points():
            space = AffineSubspace(spec.d, base, tuple(directions))
            if space.word.bits in seen or space.word.bits & ~spec.region:
                continue
            seen.add(space.word.bits)
            yield space


def _level_two_candidates(spec):
    """Return members ¼ v_B ε_C with B an affine 3-space parallel to the core."""
    found = []
    for space in _core_spaces(spec, 3):
        mask = space.word.bits
        first = space.points()[0]
        for signs in _restricted_rm2(spec.d, mask).words():
            if signs >> first & 1:
                continue
            vector = DyadicVector.from_word(
                spec.ambient, space.word, 2, BitWord(spec.d, signs)
            )
            if spec.lattice.contains(vector):
                found.append(vector)
    return found


def level2_form_check(d, k, eps=Eps.PLUS, budget=DEFAULT_BUDGET):
    """Check that level 2 vectors of norm 2^{δ-1} are ¼ v_B ε_C with B a 3-space."""
    spec = mc1(d, k, eps)
    _check_structured(spec.d, spec.k)
    norm = Fraction(1 << (spec.delta - 1))
    exhaustive = False
    vectors = None
    if spec.lattice.rank <= FULL_CENSUS_MAX_RANK:
        try:
            short = enumerate_short(spec.lattice, norm, budget)
            vectors = [vec for vec in short.vectors if vec.norm == norm]
            exhaustive = True
        except BudgetExceeded as exc:
            _LOGGER.warning("Level 2 enumeration stopped: %s", exc)
    if vectors is None:
        vectors = _level_two_candidates(spec)
    vectors = [vec for vec in vectors if vec.level == 2]
    mismatches = []
    for vector in vectors:
        form = dyadic_form(vector)
        if form is None or form[0] != 2 or form[1].dim != 3:
            mismatches.append(vector)
    return LevelTwoForm(norm, tuple(vectors), tuple(mismatches), exhaustive)


@dataclass(frozen=True)
class LeechResult:
    """Outcome of the Leech overlattice search."""

    found: bool
    attempts: int
    lattice: object = None
    det: Fraction = None
    even: bool = None
    min_norm: Fraction = None
    kissing: int = None
    reason: str = ""
    note: str = LEECH_NOTE

    def as_dict(self):
        """Return the diagnostics document."""
        return {
            "found": self.found,
            "attempts": self.attempts,
            "rank": self.lattice.rank if self.lattice is not None else None,
            "det": self.det,
            "even": self.even,
            "min_norm": self.min_norm,
            "kissing": self.kissing,
            "reason": self.reason,
            "note": self.note,
        }


class _Block:
    """Component M_i ≅ √2 E8 with an isometry γ_i in its basis."""

    def __init__(self, lattice, fourvolution, budget):
        """Set up _Block."""
        self.lattice = lattice
        self.gram_inverse = rational_inverse(lattice.gram)
        roots = minimal_vectors(lattice, budget)
        self.roots = [list(coeffs) for coeffs in roots.coefficients]
        rows = []
        for vector in lattice.vectors:
            coefficients = lattice.coordinates(apply(fourvolution, vector) - vector)
            if coefficients is None:
                raise IsometryError("Fourvolution does not preserve the component")
            rows.append(coefficients)
        self.twisted = rows
        self.gamma = None
        self.gamma_inverse = None

    def reflection(self, root):
        """Return the matrix of the reflection in a root, acting on coordinates."""
        gram = self.lattice.gram
        size = len(root)
        column = [sum(gram[j][m] * root[m] for m in range(size)) for j in range(size)]
        norm = sum(column[j] * root[j] for j in range(size))
        return [
            [
                int((j == m) - Fraction(2 * column[j] * root[m], norm))
                for m in range(size)
            ]
            for j in range(size)
        ]

    def transverse(self, gamma):
        """Return True if M(f - 1) and M(f - 1)γ meet in 2M."""
        image = mat_mul(self.twisted, gamma)
        masks = []
        for row in self.twisted + image:
            mask = 0
            for index, value in enumerate(row):
                if value & 1:
                    mask |= 1 << index
            masks.append(mask)
        return len(rref(masks)) == self.lattice.rank

    def search(self, rng, attempts, length=16):
        """Search random reflection words for a transverse γ, return tries used."""
        for tried in range(1, attempts + 1):
            gamma = None
            for _ in range(length):
                step = self.reflection(rng.choice(self.roots))
                gamma = step if gamma is None else mat_mul(gamma, step)
            if self.transverse(gamma):
                self.gamma = gamma
                inverse = rational_inverse(
                    [[Fraction(x) for x in row] for row in gamma]
                )
                self.gamma_inverse = [[int(x) for x in row] for row in inverse]
                return tried
        return None

    def coordinates(self, vector):
        """Return the rational coordinates of the projection of vector to Q ⊗ M."""
        products = [vector.dot(basis) for basis in self.lattice.vectors]
        return vec_mat(products, self.gram_inverse)

    def combination(self, coordinates):
        """Return the vector with the given rational coordinates."""
        total = DyadicVector.zero(self.lattice.ambient)
        for value, basis in zip(coordinates, self.lattice.vectors):
            if value:
                total = total + basis.scaled(value)
        return total


def _conjugate_apply(blocks, fourvolution, vector):
    """Return x γ^{-1} f γ for x in the span of the blocks."""
    moved = DyadicVector.zero(vector.ambient)
    for block in blocks:
        coords = block.coordinates(vector)
        moved = moved + block.combination(vec_mat(coords, block.gamma_inverse))
    image = apply(fourvolution, moved)
    result = DyadicVector.zero(vector.ambient)
    for block in blocks:
        coords = block.coordinates(image)
        result = result + block.combination(vec_mat(coords, block.gamma))
    return result


def leech_cousin(seed=0, attempts=200, budget=DEFAULT_BUDGET, kissing=False):
    """Search γ making L^+(t) + P^+(L)(γ^{-1} f γ - 1)² even unimodular of min 4."""
    budget = check(is_budget, budget)
    spec = mc1(5, 1, Eps.PLUS)
    fourvolution = spec.fourvolution.isometry
    decomposition = decompose(spec.lattice, budget)
    if decomposition.ranks != (8, 8, 8):
        return LeechResult(
            False, 0, reason=f"cousin splits as {decomposition.ranks}, not 8+8+8"
        )
    blocks = []
    try:
        for component in decomposition.components:
            block = twist(component, 1, fourvolution)
            blocks.append(_Block(block, fourvolution, budget))
    except IsometryError as exc:
        return LeechResult(False, 0, reason=str(exc))
    total = blocks[0].lattice
    for block in blocks[1:]:
        total = lattice_sum(total, block.lattice)
    if not spec.eigen.contains_lattice(total):
        return LeechResult(False, 0, reason="M is not inside L^+(t)")
    rng = random.Random(seed)
    used = 0
    reason = "no transverse isometry found"
    while used < attempts:
        for index, block in enumerate(blocks):
            tried = block.search(rng, attempts - used)
            if tried is None:
                return LeechResult(
                    False, attempts, reason=f"no transverse isometry for block {index}"
                )
            used += tried
        images = [
            _conjugate_apply(blocks, fourvolution, vector).scaled(2)
            for vector in spec.projected.vectors
        ]
        result = lattice_sum(spec.eigen, make_lattice(spec.ambient, images))
        if not (result.is_even and result.det == 1):
            reason = f"overlattice has det {result.det} and parity {result.parity}"
            _LOGGER.debug("Leech attempt rejected: %s", reason)
            continue
        if enumerate_short(result, 2, budget).vectors:
            reason = "overlattice has roots"
            _LOGGER.debug("Leech attempt rejected: %s", reason)
            continue
        _, reduced = result.reduction
        minimum = min(reduced[i][i] for i in range(result.rank))
        if minimum != 4:
            minimum = min_norm(result, budget)
        count = theta(result, 4, budget)[4] if kissing else None
        _LOGGER.info("Leech overlattice found after %s attempts", used)
        return LeechResult(True, used, result, result.det, True, minimum, count)
    return LeechResult(False, used, reason=reason)

