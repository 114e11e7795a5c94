import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import odd_perms, perms
from petaluma.errors import EvenLength, LengthMismatch, NotPermutation, OutOfRange
from petaluma.invariants import alexander_polynomial, casson_c2, linking_number, linking_numbers_batch
from petaluma.moves import smooth
from petaluma.petal_model import (
    LinkPetalPermutation,
    PetalPermutation,
    _chord_model,
    apply_symmetry,
    crossing_sign,
    identity_perm,
    make_link,
    petal_to_diagram,
    stabilize,
)


def test_validation():
    with pytest.raises(EvenLength):
        PetalPermutation((1, 2))
    with pytest.raises(NotPermutation):
        PetalPermutation((1, 1, 2))
    with pytest.raises(NotPermutation):
        PetalPermutation((0, 1, 2))
    with pytest.raises(LengthMismatch):
        make_link((1, 2, 3), 1, 1)
    with pytest.raises(OutOfRange):
        make_link((), -1, 1)


def test_accessors():
    perm = PetalPermutation((1, 3, 5, 2, 4))
    assert perm.p == 5 and perm.n == 2
    assert perm.position(5) == 3
    assert str(perm) == "(1,3,5,2,4)"


@pytest.mark.parametrize("p", [3, 5, 7, 9, 11])
def test_diagram_shape(p):
    d = petal_to_diagram(identity_perm(p))
    assert d.n_crossings == p * (p - 1) // 2
    assert d.n_components == 1


def test_single_petal_is_the_unknot():
    d = petal_to_diagram((1,))
    assert d.n_crossings == 0 and d.n_components == 1


def test_every_arc_meets_every_other_once():
    model = _chord_model(7)
    for k, order in enumerate(model.order):
        assert sorted(order) == [j for j in range(7) if j != k]


@given(odd_perms(3, 9))
def test_crossing_sign_is_symmetric_in_arcs(perm):
    p = perm.p
    for i, j in itertools.combinations(range(1, p + 1), 2):
        assert crossing_sign(perm, i, j) == crossing_sign(perm, j, i)


@given(odd_perms(3, 9), st.sampled_from(["rotate_values", "rotate_positions", "reflect"]))
def test_symmetries_preserve_invariants(perm, sym):
    img = apply_symmetry(perm, sym)
    d0, d1 = petal_to_diagram(perm), petal_to_diagram(img)
    assert alexander_polynomial(d0) == alexander_polynomial(d1)
    assert casson_c2(d0) == casson_c2(d1)


@given(odd_perms(3, 7), st.data())
def test_stabilization_preserves_invariants(perm, data):
    pos = data.draw(st.integers(1, perm.p + 1))
    level = data.draw(st.integers(1, perm.p + 1))
    big = stabilize(perm, pos, level)
    assert big.p == perm.p + 2
    assert alexander_polynomial(petal_to_diagram(big)) == alexander_polynomial(petal_to_diagram(perm))


def test_stabilize_layout():
    assert stabilize(PetalPermutation((1, 2, 3)), 2, 2).heights == (1, 3, 2, 4, 5)
    with pytest.raises(OutOfRange):
        stabilize(PetalPermutation((1, 2, 3)), 9, 1)


def test_rotation_orders():
    perm = PetalPermutation((1, 3, 5, 2, 4))
    assert apply_symmetry(perm, "rotate_values", 5) == perm
    assert apply_symmetry(perm, "rotate_positions", 5) == perm
    assert apply_symmetry(perm, "reflect", 2) == perm


# -- linking numbers ----------------------------------------------------------------


def _pair_crossing(p, a, b):
    model = _chord_model(p)
    index = {}
    for k in range(p):
        for j in model.order[k]:
            index.setdefault((min(k, j), max(k, j)), len(index))
    return index[(min(a, b), max(a, b))]


def _diagram_lk(d):
    comp = d.component_of_edge()
    total = sum(x.sign for x in d.crossings if comp[x.edges[0]] != comp[x.edges[1]])
    assert total % 2 == 0
    return total // 2


@given(odd_perms(3, 9), st.data())
def test_lk_matches_smoothed_diagram(perm, data):
    """The closed formula agrees with signed crossings of the geometric smoothing."""
    t = data.draw(st.integers(1, perm.p - 1))
    i = _pair_crossing(perm.p, perm.position(t) - 1, perm.position(t + 1) - 1)
    link_diagram = petal_to_diagram(perm).smooth(i)
    assert link_diagram.n_components == 2
    assert linking_number(smooth(perm, t).link) == _diagram_lk(link_diagram)


def test_lk_examples():
    assert linking_number(LinkPetalPermutation((1, 2, 3, 4), 1, 1)) == 0
    assert linking_number(LinkPetalPermutation((1, 3, 2, 4), 1, 1)) == -1
    assert linking_number(LinkPetalPermutation((4, 9, 1, 3, 8, 7, 5, 2, 6, 10), 2, 3)) == -1
    assert linking_number(LinkPetalPermutation((1, 2), 0, 1)) == 0


@given(st.integers(1, 6), st.integers(1, 6), st.randoms(use_true_random=False))
def test_batch_matches_scalar(m, n, rnd):
    size = 2 * m + 2 * n
    rows = np.array([rnd.sample(range(1, size + 1), size) for _ in range(5)])
    batch = linking_numbers_batch(rows, m)
    assert list(batch) == [linking_number(LinkPetalPermutation(tuple(r), m, n)) for r in rows]


def test_lk_exhaustive_distribution():
    # frozen from direct enumeration: m = n = 1 links are Hopf links one time in three
    counts = {}
    for h in itertools.permutations(range(1, 5)):
        v = linking_number(LinkPetalPermutation(h, 1, 1))
        counts[v] = counts.get(v, 0) + 1
    assert counts == {-1: 4, 0: 16, 1: 4}


@given(st.integers(0, 5), st.integers(0, 5), st.randoms(use_true_random=False))
def test_split_position_has_zero_lk(m, n, rnd):
    low = rnd.sample(range(1, 2 * m + 1), 2 * m)
    high = rnd.sample(range(2 * m + 1, 2 * m + 2 * n + 1), 2 * n)
    assert linking_number(LinkPetalPermutation(tuple(low + high), m, n)) == 0


@given(st.integers(1, 6), st.integers(1, 6), st.randoms(use_true_random=False))
def test_reflecting_heights_negates_lk(m, n, rnd):
    size = 2 * m + 2 * n
    h = rnd.sample(range(1, size + 1), size)
    flipped = [size + 1 - x for x in h]
    assert linking_number(LinkPetalPermutation(tuple(flipped), m, n)) == -linking_number(
        LinkPetalPermutation(tuple(h), m, n)
    )


def test_lk_parity_on_many_links():
    rng = np.random.default_rng(0)
    for _ in range(10_000):
        m, n = (int(x) for x in rng.integers(1, 5, size=2))
        h = tuple(int(x) + 1 for x in rng.permutation(2 * m + 2 * n))
        linking_number(LinkPetalPermutation(h, m, n))  # raises on an odd sum


@given(odd_perms(3, 5))
def test_reflection_mirrors_jones(perm):
    from petaluma.invariants import kauffman_jones

    v = kauffman_jones(petal_to_diagram(perm))
    assert kauffman_jones(petal_to_diagram(apply_symmetry(perm, "reflect"))) == v.invert_variable()


@given(perms(3), st.integers(1, 4), st.integers(1, 4))
def test_stabilization_preserves_jones(perm, pos, level):
    from petaluma.invariants import kauffman_jones

    big = stabilize(perm, pos, level)
    assert kauffman_jones(petal_to_diagram(big)) == kauffman_jones(petal_to_diagram(perm))
