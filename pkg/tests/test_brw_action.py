"""Test monomial isometries of the Barnes-Wall lattices."""
import pytest

from bwcousins.barneswall import build_bw
from bwcousins.brw_action import (
    MonomialIsometry,
    action_matrix,
    affine_permutation,
    apply,
    commutes_with,
    compose,
    identity,
    inverse,
    is_involution,
    is_lattice_invariant,
    isometry_as_dict,
    isometry_from_dict,
    jordan_number,
    jordan_witness_search,
    linear_involutions,
    make_fourvolution,
    minus_identity,
    order,
    power,
    sign_change,
    standard_involution,
    standard_pair,
    trace_of,
    translation,
)
from bwcousins.exceptions import IsometryError, SizeError
from bwcousins.gf2_codes import BitWord, coordinate_masks
from bwcousins.lattice_core import DyadicVector


def sample_isometry():
    """Return a monomial map with nontrivial linear part, signs and translation."""
    return MonomialIsometry(3, 0b10010110, (1, 3, 4), 5)


def test_validation():
    """Test malformed maps are rejected."""
    with pytest.raises(IsometryError):
        MonomialIsometry(2, 0, (1, 1))
    with pytest.raises(IsometryError):
        MonomialIsometry(2, 1 << 4)
    with pytest.raises(IsometryError):
        MonomialIsometry(2, 0, None, 4)


def test_group_laws():
    """Test inverse, associativity and powers."""
    first = sample_isometry()
    second = compose(translation(3, 2), sign_change(BitWord(3, 0b11)))
    third = affine_permutation(3, (2, 1, 4), 1)
    assert compose(first, inverse(first)) == identity(3)
    assert compose(inverse(first), first) == identity(3)
    assert compose(compose(first, second), third) == compose(
        first, compose(second, third)
    )
    assert first * second == compose(first, second)
    assert power(first, -1) == inverse(first)
    assert power(first, order(first)) == identity(3)
    assert power(first, 0) == identity(3)


def test_apply_follows_composition():
    """Test x(gh) = (xg)h on a vector."""
    first = sample_isometry()
    second = compose(translation(3, 6), sign_change(BitWord(3, 0b1)))
    ambient = build_bw(3).lattice.ambient
    vector = DyadicVector(ambient, (1, 2, 0, -1, 0, 0, 3, 0), 1)
    assert apply(compose(first, second), vector) == apply(second, apply(first, vector))
    assert apply(minus_identity(3), vector) == -vector


def test_orders_and_traces():
    """Test orders and traces of the basic maps."""
    assert order(translation(4, 3)) == 2
    assert trace_of(translation(4, 3)) == 0
    assert trace_of(minus_identity(4)) == -16
    assert trace_of(identity(4)) == 16
    assert is_involution(sign_change(BitWord(4, 0b1011)))


@pytest.mark.parametrize("d", range(2, 7))
def test_fourvolution(d):
    """Test ε_H τ_c squares to -1 and has order 4."""
    c_point = 1 << (d - 1)
    spec = make_fourvolution(d, c_point, 0, c_point)
    assert compose(spec.isometry, spec.isometry) == minus_identity(d)
    assert order(spec.isometry) == 4
    assert spec.isometry.is_lower
    assert power(spec.isometry, 2) == minus_identity(d)


def test_fourvolution_not_transverse():
    """Test a hyperplane containing the translation is rejected."""
    with pytest.raises(IsometryError):
        make_fourvolution(3, 1, 0, 2)


@pytest.mark.parametrize("d, k", [(3, 1), (4, 1), (5, 1), (5, 2), (6, 2), (7, 3)])
def test_standard_involution(d, k):
    """Test the positive trace involution of defect k."""
    spec = standard_involution(d, k)
    assert spec.trace == 1 << (d - k)
    assert trace_of(spec.isometry) == spec.trace
    assert spec.defect == k
    assert spec.isometry.is_brw
    assert is_involution(spec.isometry)


@pytest.mark.parametrize("d, k", [(3, 1), (5, 1), (5, 2), (7, 2)])
def test_standard_pair(d, k):
    """Test the involution commutes with the fourvolution."""
    involution, fourvolution = standard_pair(d, k)
    assert commutes_with(involution.isometry, fourvolution.isometry)
    assert involution.core.contains_direction(fourvolution.c_point)


def test_standard_pair_without_core():
    """Test d - 2k = 0 leaves no core translation."""
    with pytest.raises(SizeError):
        standard_pair(4, 2)


@pytest.mark.parametrize("d", range(2, 6))
def test_bw_invariance(d):
    """Test BW_d is preserved by the lower generators and the standard maps."""
    lattice = build_bw(d).lattice
    assert is_lattice_invariant(lattice, translation(d, 1))
    sign = sign_change(BitWord(d, coordinate_masks(d)[0]))
    assert is_lattice_invariant(lattice, sign)
    assert is_lattice_invariant(lattice, minus_identity(d))


def test_non_invariant_sign_change():
    """Test a single sign change does not preserve BW_4."""
    lattice = build_bw(4).lattice
    isometry = sign_change(BitWord(4, 0b1))
    assert not is_lattice_invariant(lattice, isometry)
    with pytest.raises(IsometryError):
        action_matrix(lattice, isometry)


@pytest.mark.parametrize("d", range(2, 5))
def test_jordan_lower(d):
    """Test Jordan numbers of -1 and of noncentral lower involutions."""
    lattice = build_bw(d).lattice
    assert jordan_number(lattice, minus_identity(d)) == 0
    assert jordan_number(lattice, identity(d)) == 0
    sign = sign_change(BitWord(d, coordinate_masks(d)[0]))
    assert jordan_number(lattice, sign) == 1 << (d - 2)
    assert jordan_number(lattice, translation(d, 1)) == 1 << (d - 2)


@pytest.mark.parametrize("d, k, expected", [(3, 1, 2), (5, 1, 8), (5, 2, 12)])
def test_jordan_split(d, k, expected):
    """Test JNo(t) = 2^{d-1} - 2^{d-k-1} for the defect k involution."""
    lattice = build_bw(d).lattice
    assert jordan_number(lattice, standard_involution(d, k).isometry) == expected


def test_jordan_needs_involution():
    """Test the Jordan number is only defined for involutions."""
    lattice = build_bw(3).lattice
    _, fourvolution = standard_pair(3, 1)
    with pytest.raises(IsometryError):
        jordan_number(lattice, fourvolution.isometry)


def test_jordan_witness():
    """Test an upper involution of BW_2 has the full Jordan number."""
    lattice = build_bw(2).lattice
    witness = jordan_witness_search(lattice)
    assert witness is not None
    assert not witness.is_lower
    assert jordan_number(lattice, witness) == 2
    with pytest.raises(SizeError):
        jordan_witness_search(build_bw(5).lattice)


def test_linear_involutions():
    """Test the involutions of GL(2, 2) together with the identity."""
    found = list(linear_involutions(2))
    assert found[0] == (1, 2)
    assert len(found) == 4


def test_isometry_document():
    """Test the isometry document format."""
    isometry = sample_isometry()
    data = isometry_as_dict(isometry)
    assert data == {"sign": "96", "linear": [1, 3, 4], "translate": 5}
    assert isometry_from_dict(data) == isometry
