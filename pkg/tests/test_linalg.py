import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from petaluma.linalg import (
    MODULAR_PRIMES,
    bareiss_det,
    berkowitz_charpoly,
    berkowitz_det,
    charpoly_mod,
    crt_signed,
)


def square(n, lo=-6, hi=6):
    return st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)


matrices = st.integers(1, 6).flatmap(square)


@given(matrices)
def test_bareiss_matches_berkowitz(m):
    assert bareiss_det(m) == berkowitz_det(m)


@given(matrices)
def test_determinant_matches_float(m):
    assert bareiss_det(m) == round(np.linalg.det(np.array(m, dtype=float)))


def test_known_determinants():
    assert bareiss_det([[2, 0], [0, 3]]) == 6
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert berkowitz_det([[1, 2, 3], [4, 5, 6], [7, 8, 10]]) == -3


@given(matrices)
def test_modular_charpoly_matches_exact(m):
    exact = berkowitz_charpoly(m)
    q = MODULAR_PRIMES[0]
    assert [c % q for c in charpoly_mod(np.array(m, dtype=np.int64), q)] == [c % q for c in exact]


def test_charpoly_of_companion():
    # x^2 - 3x + 2
    assert berkowitz_charpoly([[0, -2], [1, 3]]) == [1, -3, 2]


@given(st.integers(-(10**20), 10**20))
def test_crt_signed_round_trip(v):
    residues = [v % q for q in MODULAR_PRIMES[:3]]
    assert crt_signed(residues, MODULAR_PRIMES[:3]) == v


def test_primes_are_prime():
    for q in MODULAR_PRIMES:
        assert q < 2**25 and all(q % d for d in range(2, int(q**0.5) + 1))


def test_empty_matrix():
    assert bareiss_det([]) == 1
