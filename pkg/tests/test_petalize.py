import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import odd_perms
from petaluma.diagram import connected_sum
from petaluma.errors import MultiComponent
from petaluma.invariants import alexander_polynomial, casson_c2, kauffman_jones
from petaluma.io import load_fixture
from petaluma.petal_model import PetalPermutation, petal_to_diagram
from petaluma.petalize import (
    build_dual,
    build_separating_curve,
    classify_crossings,
    connect_sum_perms,
    is_three_edge_connected,
    petalize,
    petalize_detailed,
    split_connected_sum,
    trace_faces,
)

FIXTURES = ["3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3", "granny", "square"]


@pytest.mark.parametrize("name", FIXTURES)
@pytest.mark.parametrize("variant", ["tree", "simple"])
def test_fixture_round_trip(name, variant):
    d = load_fixture(name)
    perm = petalize(d, variant)
    out = petal_to_diagram(perm)
    if variant == "tree":
        assert perm.p <= 2 * d.n_crossings - 1
    assert alexander_polynomial(out) == alexander_polynomial(d)
    assert casson_c2(out) == casson_c2(d)
    assert kauffman_jones(out) == kauffman_jones(d)


def test_faces_satisfy_euler():
    for name in FIXTURES:
        d = load_fixture(name)
        view = trace_faces(d)
        assert len(view.faces) == d.n_crossings + 2
        assert set(view.left) == set(d.edges) == set(view.right)


def test_labels_of_trefoil():
    labels = classify_crossings(load_fixture("3_1"))
    assert labels.mixed
    assert sum(labels.counts().values()) == 3


def test_descending_diagram_is_not_mixed():
    labels = classify_crossings(load_fixture("unknot4"))
    assert not labels.mixed
    assert petalize(load_fixture("unknot4")) == PetalPermutation((1,))


def test_dual_spanning_structure():
    d = load_fixture("6_2")
    labels = classify_crossings(d)
    dual = build_dual(d, labels, trace_faces(d))
    assert len(dual.G) + len(dual.T) >= len(trace_faces(d).faces) - 1
    curve = build_separating_curve(d, labels)
    assert curve.total == 2 * len(dual.crossed_twice) + len(dual.crossed_once)


def test_composite_knots_split():
    assert len(split_connected_sum(load_fixture("granny"))) == 2
    assert not is_three_edge_connected(load_fixture("square"))
    assert is_three_edge_connected(load_fixture("5_2"))
    s = connected_sum(load_fixture("3_1"), load_fixture("4_1"))
    res = petalize_detailed(s)
    assert len(res.factors) == 2
    out = petal_to_diagram(res.perm)
    assert alexander_polynomial(out) == alexander_polynomial(s)
    assert kauffman_jones(out) == kauffman_jones(s)


def test_nugatory_crossing_is_removed():
    perm = petalize(load_fixture("nugatory"))
    assert alexander_polynomial(petal_to_diagram(perm)) == alexander_polynomial(load_fixture("3_1"))


def test_rejects_links():
    with pytest.raises(MultiComponent):
        petalize(load_fixture("3_1").smooth(0))


@settings(max_examples=25)
@given(odd_perms(5, 7))
def test_petal_diagrams_round_trip(perm):
    d = petal_to_diagram(perm).simplify()
    out = petal_to_diagram(petalize(d))
    assert alexander_polynomial(out) == alexander_polynomial(d)
    assert casson_c2(out) == casson_c2(d)
    if d.n_crossings <= 12:
        assert kauffman_jones(out) == kauffman_jones(d)


def test_connect_sum_perms():
    tref = PetalPermutation((1, 3, 5, 2, 4))
    fig8 = PetalPermutation((1, 5, 3, 7, 2, 4, 6))
    s = connect_sum_perms(tref, fig8)
    assert s.p == 11
    d = petal_to_diagram(s)
    assert casson_c2(d) == 0
    assert alexander_polynomial(d) == alexander_polynomial(petal_to_diagram(tref)) * alexander_polynomial(
        petal_to_diagram(fig8)
    )


@pytest.mark.parametrize("name", FIXTURES)
@pytest.mark.parametrize("variant", ["tree", "simple"])
def test_curve_separation_counts(name, variant):
    d = load_fixture(name)
    for factor in split_connected_sum(d):
        labels = classify_crossings(factor)
        if not labels.mixed:
            continue
        view = trace_faces(factor)
        dual = build_dual(factor, labels, view, variant)
        curve = build_separating_curve(factor, labels, variant)
        for e in factor.edges:
            count = len(curve.per_edge.get(e, []))
            if dual.kind[e] == "AD":
                assert count == 1
            else:
                assert count in (0, 2)
        assert curve.total % 2 == 0
        assert petalize(factor, variant).p % 2 == 1
        if variant == "simple":
            assert curve.total <= 4 * factor.n_crossings
