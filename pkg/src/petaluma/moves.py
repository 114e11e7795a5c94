"""Smoothing and adjacent-height swaps on petal knots.

Swapping heights ``t`` and ``t+1`` changes exactly one crossing, the one
between the two arcs carrying those heights, so by the Conway skein
relation the change in ``c2`` is a signed linking number of the smoothing
at that crossing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Sequence

from .errors import NotDisjoint, OutOfRange
from .invariants import Strategy, casson_c2, linking_number
from .petal_model import (
    LinkPetalPermutation,
    PetalPermutation,
    _chord_model,
    apply_symmetry,
    petal_to_diagram,
)


@dataclass(frozen=True)
class AdjacentSwap:
    """The transposition ``(t, t+1)`` acting on heights."""

    t: int

    def check(self, p: int) -> None:
        if not 1 <= self.t <= p - 1:
            raise OutOfRange(f"swap ({self.t} {self.t + 1}) outside heights 1..{p}")

    def values(self) -> tuple[int, int]:
        return (self.t, self.t + 1)


@dataclass(frozen=True)
class SmoothedLink:
    m: int
    link: LinkPetalPermutation
    merged_side: Literal["A", "B"]
    d: int


@dataclass(frozen=True)
class SwapEffect:
    t: int
    epsilon: int
    lk: int
    delta_c2: int

    @property
    def holds(self) -> bool:
        return self.delta_c2 == self.epsilon * self.lk


@dataclass(frozen=True)
class SwapBatchReport:
    terms: tuple[tuple[int, int, int], ...]  # (t, eps, lk) against the original π
    delta_c2: int
    order: tuple[int, ...] = field(default=())

    @property
    def k(self) -> int:
        return len(self.terms)

    @property
    def residual(self) -> int:
        return self.delta_c2 - sum(eps * lk for _, eps, lk in self.terms)

    @property
    def bound(self) -> int:
        return self.k * (self.k - 1) // 2

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "terms": [{"t": t, "eps": e, "lk": lk} for t, e, lk in self.terms],
            "delta_c2": self.delta_c2,
            "residual": self.residual,
        }


def _as_perm(perm) -> PetalPermutation:
    return perm if isinstance(perm, PetalPermutation) else PetalPermutation(tuple(perm))


def smooth(perm: PetalPermutation | Sequence[int], t: int) -> SmoothedLink:
    """Smooth the crossing between the arcs at heights ``t`` and ``t+1``.

    Heights are first rotated so the pair becomes ``{2n, 2n+1}``.  The arcs
    strictly between the two (walking forward from ``2n``) form one
    component, the rest the other; the merged arc keeps height ``2n`` and
    joins whichever side has odd length, at the spot where ``2n`` was.
    """
    perm = _as_perm(perm)
    p = perm.p
    if p < 3:
        raise OutOfRange("smoothing needs at least 3 petals")
    if not 1 <= t <= p - 1:
        raise OutOfRange(f"t={t} outside 1..{p - 1}")
    top = p - 1
    rotated = apply_symmetry(perm, "rotate_values", (top - t) % p)
    h = rotated.heights
    a = h.index(top)
    b = h.index(top + 1)
    seg_a = [h[(a + i) % p] for i in range(1, (b - a) % p)]
    seg_b = [h[(b + i) % p] for i in range(1, (a - b) % p)]
    # the merged arc stands where position a was: just before A, just after B
    if len(seg_a) % 2:
        seg_a.insert(0, top)
        side = "A"
    else:
        seg_b.append(top)
        side = "B"
    m = len(seg_a) // 2
    link = LinkPetalPermutation(tuple(seg_a + seg_b), m, len(seg_b) // 2)
    d = abs(perm.position(t + 1) - perm.position(t)) // 2
    return SmoothedLink(m, link, side, d)


def swap(perm: PetalPermutation | Sequence[int], t: int) -> PetalPermutation:
    perm = _as_perm(perm)
    AdjacentSwap(t).check(perm.p)
    h = tuple(t + 1 if x == t else t if x == t + 1 else x for x in perm.heights)
    return PetalPermutation(h)


def changed_crossing_sign(perm: PetalPermutation, t: int) -> int:
    """Sign (petal-model convention) of the crossing that swap ``t`` changes."""
    under = perm.position(t) - 1
    over = perm.position(t + 1) - 1
    return -_chord_model(perm.p).sign(under, over)


def swap_epsilon(perm: PetalPermutation, t: int) -> int:
    """``ε`` such that ``c2(swap(π, t)) - c2(π) = ε * lk(smooth(π, t))``."""
    return changed_crossing_sign(perm, t)


def swap_effect(
    perm: PetalPermutation | Sequence[int], t: int, strategy: Strategy | None = None
) -> SwapEffect:
    perm = _as_perm(perm)
    lk = linking_number(smooth(perm, t).link)
    before = casson_c2(petal_to_diagram(perm), strategy)
    after = casson_c2(petal_to_diagram(swap(perm, t)), strategy)
    return SwapEffect(t, swap_epsilon(perm, t), lk, after - before)


def perform_swaps(perm: PetalPermutation | Sequence[int], mask: Sequence[int]) -> PetalPermutation:
    """Apply the disjoint transpositions ``(2i-1 2i)`` for each ``i`` in ``mask``."""
    perm = _as_perm(perm)
    mask = list(mask)
    if len(set(mask)) != len(mask):
        raise NotDisjoint("repeated swap index")
    swap_of = {}
    for i in mask:
        if i < 1 or 2 * i > perm.p:
            raise OutOfRange(f"swap ({2 * i - 1} {2 * i}) outside heights 1..{perm.p}")
        swap_of[2 * i - 1] = 2 * i
        swap_of[2 * i] = 2 * i - 1
    return PetalPermutation(tuple(swap_of.get(x, x) for x in perm.heights))


def apply_swaps(perm: PetalPermutation, swaps: Sequence[AdjacentSwap]) -> PetalPermutation:
    for s in swaps:
        perm = swap(perm, s.t)
    return perm


def check_disjoint(swaps: Sequence[AdjacentSwap]) -> None:
    seen: set[int] = set()
    for s in swaps:
        vals = set(s.values())
        if vals & seen:
            raise NotDisjoint(f"swap ({s.t} {s.t + 1}) overlaps another swap")
        seen |= vals


def error_decomposition(
    perm: PetalPermutation | Sequence[int],
    swaps: Sequence[AdjacentSwap | int],
    order: Sequence[int] | None = None,
    strategy: Strategy | None = None,
) -> SwapBatchReport:
    """Compare the total ``c2`` change of several disjoint swaps with the sum
    of their individual first-order terms.

    ``order`` is a permutation of ``range(len(swaps))`` giving the order in
    which the swaps are applied; the first-order terms are always taken
    against the original ``π``.
    """
    perm = _as_perm(perm)
    swaps = [s if isinstance(s, AdjacentSwap) else AdjacentSwap(int(s)) for s in swaps]
    for s in swaps:
        s.check(perm.p)
    check_disjoint(swaps)
    order = tuple(range(len(swaps))) if order is None else tuple(order)
    if sorted(order) != list(range(len(swaps))):
        raise OutOfRange("order must be a permutation of the swap indices")
    terms = tuple(
        (s.t, swap_epsilon(perm, s.t), linking_number(smooth(perm, s.t).link)) for s in swaps
    )
    final = apply_swaps(perm, [swaps[i] for i in order])
    delta = casson_c2(petal_to_diagram(final), strategy) - casson_c2(
        petal_to_diagram(perm), strategy
    )
    return SwapBatchReport(terms, delta, order)
