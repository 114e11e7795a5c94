import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import odd_perms
from petaluma.diagram import Crossing, KnotDiagram, add_kink, connected_sum, descending
from petaluma.errors import InconsistentCode, MultiComponent
from petaluma.invariants import alexander_polynomial, kauffman_jones
from petaluma.io import load_fixture
from petaluma.petal_model import petal_to_diagram
from petaluma.polynomial import LaurentPolynomial

ONE = LaurentPolynomial.constant(1)


def test_trefoil_fixture_structure():
    d = load_fixture("3_1")
    assert d.n_crossings == 3
    assert d.n_components == 1
    assert abs(d.writhe) == 3
    assert len(d.traversal()) == 6


def test_traversal_alternates_on_alternating_knot():
    overs = [v.over for v in load_fixture("4_1").traversal()]
    assert all(a != b for a, b in zip(overs, overs[1:] + overs[:1]))


def test_edges_must_pair_up():
    with pytest.raises(InconsistentCode):
        KnotDiagram((Crossing((1, 2, 3, 4), 1),))


def test_switch_flips_sign_and_is_involutive():
    d = load_fixture("3_1")
    s = d.switch(0)
    assert s.crossings[0].sign == -d.crossings[0].sign
    assert s.switch(0).structurally_equal(d)


def test_smoothing_a_trefoil_crossing_gives_two_components():
    d = load_fixture("3_1")
    assert d.smooth(0).n_components == 2


def test_mirror_inverts_jones():
    d = load_fixture("3_1")
    assert kauffman_jones(d.mirror()) == kauffman_jones(d).invert_variable()


@pytest.mark.parametrize("name", ["3_1", "4_1", "5_2", "6_2"])
def test_descending_diagram_is_unknotted(name):
    assert alexander_polynomial(descending(load_fixture(name))) == ONE


def test_simplify_removes_kinks():
    d = load_fixture("nugatory")
    assert d.n_crossings == 4
    s = d.simplify()
    assert s.n_crossings == 3
    assert alexander_polynomial(s) == alexander_polynomial(load_fixture("3_1"))


@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("over_first", [True, False])
def test_kink_keeps_knot_type(sign, over_first):
    d = load_fixture("4_1")
    k = add_kink(d, d.edges[0], sign, over_first)
    assert k.n_crossings == 5 and k.n_components == 1
    assert k.writhe == d.writhe + sign
    assert kauffman_jones(k) == kauffman_jones(d)
    assert k.simplify().n_crossings == 4


def test_connected_sum_multiplies():
    a, b = load_fixture("3_1"), load_fixture("4_1")
    s = connected_sum(a, b)
    assert s.n_crossings == 7 and s.n_components == 1
    assert alexander_polynomial(s) == alexander_polynomial(a) * alexander_polynomial(b)
    assert kauffman_jones(s) == kauffman_jones(a) * kauffman_jones(b)


def test_connected_sum_rejects_links():
    link = load_fixture("3_1").smooth(0)
    with pytest.raises(MultiComponent):
        connected_sum(link, load_fixture("3_1"))


@given(odd_perms(3, 7))
def test_relabel_round_trip(perm):
    d = petal_to_diagram(perm)
    r = d.relabeled(1)
    assert sorted(r.edges) == list(range(1, 2 * d.n_crossings + 1))
    assert alexander_polynomial(r) == alexander_polynomial(d)


@given(odd_perms(3, 7))
def test_simplify_preserves_knot_type(perm):
    d = petal_to_diagram(perm)
    s = d.simplify()
    assert s.n_crossings <= d.n_crossings
    assert alexander_polynomial(s) == alexander_polynomial(d)


@given(odd_perms(3, 7))
def test_reverse_preserves_alexander(perm):
    d = petal_to_diagram(perm)
    assert alexander_polynomial(d.reverse()) == alexander_polynomial(d)


def test_gauss_code_shape():
    code = load_fixture("3_1").gauss_code()
    assert len(code) == 1 and len(code[0]) == 6
    assert sorted(o for _, o, _ in code[0]) == ["O"] * 3 + ["U"] * 3
