"""Test lattices with exact Gram arithmetic."""
from fractions import Fraction
import itertools
import math

import pytest

from bwcousins.barneswall import build_bw
from bwcousins.const import IsometryStatus
from bwcousins.exceptions import BudgetExceeded, LatticeError, SizeError
from bwcousins.lattice_core import (
    AmbientSpace,
    DyadicVector,
    connected_components,
    decompose,
    discriminant_group,
    dual,
    enumerate_short,
    export_gram,
    gram_isometric,
    index_in,
    intersect,
    lattice_as_dict,
    lattice_from_dict,
    lattice_sum,
    level_and_top,
    level_census,
    make_lattice,
    min_norm,
    minimal_vectors,
    root_lattice_gram,
    standard_lattice,
    theta,
    _lcm_fraction,
    zero_lattice,
)

# pylint: disable=redefined-outer-name


@pytest.fixture
def ambient():
    """Return the ambient space of BW_3."""
    return AmbientSpace(3)


@pytest.fixture
def e8():
    """Return BW_3, a copy of E_8."""
    return build_bw(3).lattice


def vector(ambient, values, exponent=0):
    """Return a vector with the given leading numerators."""
    nums = list(values) + [0] * (ambient.n - len(values))
    return DyadicVector(ambient, tuple(nums), exponent)


def test_ambient(ambient):
    """Test the ambient space of d = 3."""
    assert ambient.n == 8
    assert ambient.scale_log2 == 1
    assert ambient.scale == 2
    assert AmbientSpace(4).scale == 4


def test_vector_canonical(ambient):
    """Test vectors drop common factors of 2 from the denominator."""
    assert vector(ambient, [2], 1) == DyadicVector.basis_vector(ambient, 0)
    assert vector(ambient, [1, 1], 1).exponent == 1
    assert vector(ambient, [0], 3) == DyadicVector.zero(ambient)


def test_vector_products(ambient):
    """Test norms and inner products in the scaled ambient form."""
    first = DyadicVector.basis_vector(ambient, 0)
    half = vector(ambient, [1, 1, 1, 1], 1)
    assert first.norm == 2
    assert half.norm == 2
    assert first.dot(half) == 1
    assert (first + first).norm == 8
    assert (half - first).dot(first) == -1
    assert half.scaled(2) == vector(ambient, [1, 1, 1, 1])
    assert half.support == 0b1111
    with pytest.raises(LatticeError):
        first.dot(DyadicVector.basis_vector(AmbientSpace(2), 0))


def test_levels(ambient):
    """Test levels and top digits."""
    half = vector(ambient, [1, -3], 1)
    assert half.level == 1
    level, top = level_and_top(half)
    assert level == 1
    assert top == vector(ambient, [1, -1], 1)
    double = vector(ambient, [2, 6])
    assert double.level == -1
    level, top = level_and_top(double)
    assert level == -1
    assert top == vector(ambient, [2, 2])
    assert DyadicVector.zero(ambient).level == -math.inf
    with pytest.raises(LatticeError):
        level_and_top(DyadicVector.zero(ambient))


def test_standard_lattice(ambient):
    """Test the span of the standard vectors."""
    lattice = standard_lattice(ambient)
    assert lattice.rank == 8
    assert lattice.det == 256
    assert lattice.is_even
    assert lattice.parity == "even"
    group = discriminant_group(lattice)
    assert group.invariants == (2,) * 8
    assert group.is_elementary_abelian()
    assert group.order == 256


def test_e8_invariants(e8):
    """Test BW_3 is even unimodular of minimum 2 with 240 roots."""
    assert e8.rank == 8
    assert e8.det == 1
    assert e8.is_even
    assert min_norm(e8) == 2
    assert minimal_vectors(e8).count == 240
    series = theta(e8, 4)
    assert series[0] == 1
    assert series[2] == 240
    assert series[4] == 2160
    assert discriminant_group(e8).order == 1


def test_enumeration_budget(e8):
    """Test the enumeration raises once the node budget is spent."""
    with pytest.raises(BudgetExceeded) as exc_info:
        enumerate_short(e8, 4, budget=1)
    assert exc_info.value.budget == 1
    with pytest.raises(LatticeError):
        enumerate_short(e8, -1)


def _pair_keys(vectors):
    """Return each vector together with its negative as an unordered pair."""
    return {frozenset((item, -item)) for item in vectors}


@pytest.mark.parametrize(
    "rows, bound, attained",
    [
        ([[1, 0, 5], [0, 1, 8], [0, 0, 13]], 18, [1, -2, 2]),
        (
            [[1, 0, 0, 5], [0, 1, 0, 8], [0, 0, 1, 11], [0, 0, 0, 17]],
            22,
            [1, -1, 0, -3],
        ),
    ],
)
def test_enumeration_matches_box_search(ambient, rows, bound, attained):
    """Test enumeration on a skewed basis agrees with a search over a box."""
    lattice = make_lattice(ambient, [vector(ambient, row) for row in rows])
    edge = vector(ambient, attained)
    assert lattice.contains(edge)
    assert edge.norm == bound
    # (x, x) = 2|x|^2 here, so every coordinate is at most sqrt(bound / 2).
    radius = math.isqrt(bound // 2)
    expected = []
    for values in itertools.product(range(-radius, radius + 1), repeat=len(rows)):
        candidate = vector(ambient, values)
        if 0 < candidate.norm <= bound and lattice.contains(candidate):
            expected.append(candidate)
    result = enumerate_short(lattice, bound)
    assert result.count == len(expected)
    assert _pair_keys(result.vectors) == _pair_keys(expected)
    assert max(result.norms) == bound
    for item, norm in zip(result.vectors, result.norms):
        assert item.norm == norm


def test_enumerated_vectors_lie_in_lattice(e8):
    """Test enumerated vectors are lattice vectors of the reported norm."""
    result = enumerate_short(e8, 2)
    assert len(result.vectors) == 120
    for item, norm in zip(result.vectors, result.norms):
        assert e8.contains(item)
        assert item.norm == norm == 2


def test_sum_intersect_index(ambient, e8):
    """Test the standard lattice is a sublattice of index 16 in BW_3."""
    standard = standard_lattice(ambient)
    assert e8.contains_lattice(standard)
    assert intersect(e8, standard) == standard
    assert lattice_sum(e8, standard) == e8
    assert index_in(standard, e8) == 16
    with pytest.raises(LatticeError):
        index_in(e8, standard_lattice(ambient, 0b1111))


def test_disjoint_supports(ambient):
    """Test sum and intersection of lattices on disjoint supports."""
    first = standard_lattice(ambient, 0b0011)
    second = standard_lattice(ambient, 0b1100)
    total = lattice_sum(first, second)
    assert total == standard_lattice(ambient, 0b1111)
    assert intersect(first, second).rank == 0
    assert intersect(first, second) == zero_lattice(ambient)


def test_mixed_ambients(ambient):
    """Test lattices of different ambient spaces do not mix."""
    with pytest.raises(LatticeError):
        lattice_sum(standard_lattice(ambient), standard_lattice(AmbientSpace(2)))


def test_dual(ambient):
    """Test the dual of the standard lattice is spanned by the halves of v_i."""
    lattice = standard_lattice(ambient, 0b11)
    dual_lattice = dual(lattice)
    assert dual_lattice.rank == 2
    assert dual_lattice.det == Fraction(1, 4)
    assert dual_lattice.contains(vector(ambient, [1], 1))
    assert not dual_lattice.contains(vector(ambient, [1], 2))


def test_dual_mixed_denominators(ambient):
    """Test the dual clears every denominator of the inverse Gram matrix."""
    lattice = make_lattice(ambient, [vector(ambient, [1]), vector(ambient, [0, 2])])
    dual_lattice = dual(lattice)
    assert dual_lattice.det == Fraction(1, 16)
    assert dual_lattice.contains(vector(ambient, [1], 1))
    assert dual_lattice.contains(vector(ambient, [0, 1], 2))
    assert not dual_lattice.contains(vector(ambient, [0, 1], 3))


@pytest.mark.parametrize(
    "first, second, expected",
    [
        (Fraction(3, 2), Fraction(5, 4), Fraction(15, 2)),
        (Fraction(1, 2), Fraction(1, 3), Fraction(1)),
        (4, 6, 12),
    ],
)
def test_lcm_fraction(first, second, expected):
    """Test the least common multiple of two frames."""
    assert _lcm_fraction(first, second) == expected


def test_restrict_to_support(e8):
    """Test BW_3 restricted to a 2-subcube is a copy of D_4."""
    restricted = e8.restrict_to_support(0b1111)
    assert restricted.rank == 4
    assert restricted.det == 4
    assert restricted.is_even
    result = gram_isometric(restricted, root_lattice_gram("D", 4))
    assert result.status is IsometryStatus.ISOMETRIC


def test_coordinates(e8):
    """Test coordinates recover combinations of the basis."""
    coefficients = [1, -2, 0, 3, 0, 0, 1, -1]
    item = e8.combination(coefficients)
    assert e8.coordinates(item) == coefficients
    assert e8.coordinates(item.scaled(Fraction(1, 2))) is None


def test_scaled(e8):
    """Test scaling multiplies the determinant by the power of the rank."""
    doubled = e8.scaled(2)
    assert doubled.det == 2 ** 16
    assert doubled.scaled(Fraction(1, 2)) == e8
    with pytest.raises(LatticeError):
        e8.scaled(0)


def test_decompose_standard(ambient):
    """Test the standard lattice splits into rank one components."""
    result = decompose(standard_lattice(ambient, 0b1111))
    assert result.ranks == (1, 1, 1, 1)
    assert result.index == 1


def test_decompose_e8(e8):
    """Test BW_3 is indecomposable."""
    result = decompose(e8)
    assert result.ranks == (8,)
    assert result.index == 1


def test_decompose_sum(ambient):
    """Test an orthogonal sum of D_4 and a rank two lattice splits."""
    first = build_bw(3).lattice.restrict_to_support(0b1111)
    second = make_lattice(
        ambient,
        [vector(ambient, [0, 0, 0, 0, 1, 1]), vector(ambient, [0, 0, 0, 0, 1, -1])],
    )
    result = decompose(lattice_sum(first, second))
    assert result.ranks == (4, 1, 1)
    assert result.index == 1


def test_connected_components():
    """Test union find components."""
    assert connected_components(5, [(0, 2), (3, 4)]) == [[0, 2], [1], [3, 4]]
    assert connected_components(2, []) == [[0], [1]]


def test_gram_isometric(e8):
    """Test isometry decisions."""
    assert gram_isometric(root_lattice_gram("E", 8), e8)
    result = gram_isometric([[2, -1], [-1, 2]], [[2, 1], [1, 2]])
    assert result.status is IsometryStatus.ISOMETRIC
    assert len(result.witness) == 2
    result = gram_isometric(root_lattice_gram("D", 4), root_lattice_gram("A", 4))
    assert result.status is IsometryStatus.NOT_ISOMETRIC
    assert result.reason == "determinant"
    result = gram_isometric([[2, 0], [0, 8]], [[4, 0], [0, 4]])
    assert result.status is IsometryStatus.NOT_ISOMETRIC
    assert result.reason == "theta"


def test_gram_isometric_large(caplog):
    """Test forms above the exact rank cap only get fingerprint evidence."""
    gram = [[2 if i == j else 0 for j in range(13)] for i in range(13)]
    result = gram_isometric(gram, gram)
    assert result.status is IsometryStatus.EVIDENCE_ONLY
    assert "fingerprints only" in caplog.text


def test_root_lattice_gram():
    """Test reference root lattice Gram matrices."""
    assert root_lattice_gram("A", 2) == [[2, -1], [-1, 2]]
    d4 = root_lattice_gram("D", 4, norm=4)
    assert d4[0][0] == 4
    assert d4[1][3] == -2
    with pytest.raises(SizeError):
        root_lattice_gram("B", 3)


def test_level_census_empty(e8):
    """Test BW_3 has no vector of norm below 2."""
    assert level_census(e8, 2) == ()
    with pytest.raises(SizeError):
        level_census(e8, 3)


def test_level_census_glue(ambient):
    """Test the census finds the glue vectors of norm 1."""
    lattice = lattice_sum(
        standard_lattice(ambient), make_lattice(ambient, [vector(ambient, [1, 1], 1)])
    )
    found = level_census(lattice, 2)
    assert [item.numerators[:2] for item in found] == [(1, -1), (1, 1)]
    assert all(item.norm == 1 for item in found)


def test_export_and_documents(e8):
    """Test the Gram export and the lattice document."""
    document = export_gram(e8)
    assert document["d"] == 3
    assert document["scale_exponent"] == 0
    assert len(document["gram"]) == 8
    data = lattice_as_dict(e8)
    assert list(data) == ["d", "scale_log2", "basis"]
    assert lattice_from_dict(data) == e8
    data["scale_log2"] = 3
    with pytest.raises(LatticeError):
        lattice_from_dict(data)
