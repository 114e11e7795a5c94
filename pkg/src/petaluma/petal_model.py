"""Petal permutations and their planar diagrams.

A petal diagram with ``p`` (odd) petals has ``p`` straight arcs through a
single multi-crossing; ``heights[k-1]`` is the height of the ``k``-th arc met
while travelling along the knot.  Perturbing the multi-crossing gives a
regular diagram with one crossing per pair of arcs.

Planar realization
------------------
Arc ``k`` leaves the boundary circle at angle ``s_k = 2*pi*r_k/p`` with
``r_k = (k-1)(p-1)/2 mod p`` and travels through the centre, so its line has
direction class ``j_k = 2 r_k mod p`` (angle ``j_k*pi/p`` modulo ``pi``).
Consecutive arcs end and start at angularly adjacent boundary points, so the
petals outside the disc never cross.

Because every arc is at a constant height, any arrangement of straight lines
with the same cyclic order of directions gives the same knot.  We use the
tangent lines of the parabola ``y = x^2`` at ``x = j_k`` (after an
orientation-preserving rotation so no direction is vertical).  Two tangents
at ``a`` and ``b`` meet at ``x = (a+b)/2``, which gives an exact, tie-free
crossing order along every arc.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Literal, Sequence

from .diagram import Crossing, KnotDiagram
from .errors import EvenLength, LengthMismatch, NotPermutation, OutOfRange


def _check_perm(heights: Sequence[int]) -> tuple[int, ...]:
    h = tuple(int(x) for x in heights)
    if sorted(h) != list(range(1, len(h) + 1)):
        raise NotPermutation(f"{h} is not a permutation of 1..{len(h)}")
    return h


@dataclass(frozen=True)
class PetalPermutation:
    """Heights of the arcs of an odd petal diagram, in traversal order."""

    heights: tuple[int, ...]

    def __post_init__(self):
        h = tuple(int(x) for x in self.heights)
        if len(h) % 2 == 0:
            raise EvenLength(f"petal permutations have odd length, got {len(h)}")
        object.__setattr__(self, "heights", _check_perm(h))

    @property
    def p(self) -> int:
        return len(self.heights)

    @property
    def n(self) -> int:
        return (self.p - 1) // 2

    def position(self, value: int) -> int:
        """1-based index of the arc at height ``value``."""
        return self.heights.index(value) + 1

    def __len__(self):
        return self.p

    def __iter__(self):
        return iter(self.heights)

    def __getitem__(self, k):
        return self.heights[k]

    def __str__(self):
        return "(" + ",".join(map(str, self.heights)) + ")"


@dataclass(frozen=True)
class LinkPetalPermutation:
    """Heights of a (2m, 2n)-petal two-component link.

    Arcs ``1..2m`` belong to the first component, ``2m+1..2m+2n`` to the
    second.  A component with zero petals is a split unknot.
    """

    heights: tuple[int, ...]
    m: int
    n: int

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise OutOfRange("petal half-counts must be non-negative")
        h = tuple(int(x) for x in self.heights)
        if len(h) != 2 * self.m + 2 * self.n:
            raise LengthMismatch(f"length {len(h)} != 2m+2n = {2 * self.m + 2 * self.n}")
        object.__setattr__(self, "heights", _check_perm(h))

    @property
    def first(self) -> tuple[int, ...]:
        return self.heights[: 2 * self.m]

    @property
    def second(self) -> tuple[int, ...]:
        return self.heights[2 * self.m :]

    def __str__(self):
        return "(" + ",".join(map(str, self.heights)) + f"; {self.m},{self.n})"


def make_petal(heights: Iterable[int]) -> PetalPermutation:
    return PetalPermutation(tuple(heights))


def make_link(heights: Iterable[int], m: int, n: int) -> LinkPetalPermutation:
    return LinkPetalPermutation(tuple(heights), m, n)


# -- chord model --------------------------------------------------------------


@dataclass(frozen=True)
class ChordModel:
    """Combinatorial line arrangement realizing a ``p``-petal diagram.

    ``start_slot[k]``: boundary slot (units of pi/p) where arc ``k+1`` begins.
    ``direction[k]``: direction class ``j`` of arc ``k+1``'s line.
    ``travel[k]``: +1 if the arc is traversed with increasing parabola
    abscissa, -1 otherwise.
    ``order[k]``: the other arcs (0-based) in the order arc ``k+1`` meets them.
    """

    p: int
    start_slot: tuple[int, ...]
    direction: tuple[int, ...]
    travel: tuple[int, ...]
    order: tuple[tuple[int, ...], ...]

    def sign(self, under: int, over: int) -> int:
        """Right-hand-rule sign of the crossing of 0-based arcs ``under``/``over``."""
        du, do = self.direction[under], self.direction[over]
        s = 1 if du > do else -1
        return s * self.travel[under] * self.travel[over]


def chord_model(p: int) -> ChordModel:
    if p < 1 or p % 2 == 0:
        raise EvenLength(f"petal count must be odd and positive, got {p}")
    return _chord_model(p)


_CHORD_CACHE: dict[int, ChordModel] = {}


def _chord_model(p: int) -> ChordModel:
    if p in _CHORD_CACHE:
        return _CHORD_CACHE[p]
    half = (p - 1) // 2
    starts, dirs, travel = [], [], []
    for k in range(p):
        r = (k * half) % p
        starts.append(2 * r)
        dirs.append((2 * r) % p)
        # travel angle in units of pi/p, rotated by -(p-1)/2 units
        ang = (2 * r + p - half) % (2 * p)
        travel.append(1 if (2 * ang < p or 2 * ang > 3 * p) else -1)
    order = []
    for k in range(p):
        others = sorted((j for j in range(p) if j != k), key=lambda j: dirs[j])
        if travel[k] < 0:
            others.reverse()
        order.append(tuple(others))
    model = ChordModel(p, tuple(starts), tuple(dirs), tuple(travel), tuple(order))
    _CHORD_CACHE[p] = model
    return model


def crossing_sign(perm: PetalPermutation, i: int, j: int) -> int:
    """Right-hand-rule sign of the crossing between 1-based arcs ``i`` and ``j``."""
    model = _chord_model(perm.p)
    h = perm.heights
    if h[i - 1] < h[j - 1]:
        return model.sign(i - 1, j - 1)
    return model.sign(j - 1, i - 1)


def petal_to_diagram(perm: PetalPermutation | Sequence[int]) -> KnotDiagram:
    """Perturb the multi-crossing into ``C(p, 2)`` ordinary crossings.

    Edge ``e`` runs from the ``e``-th crossing visit to the next one, so the
    labels ``0..p(p-1)-1`` follow the traversal and edge 0 is the base edge.
    """
    if not isinstance(perm, PetalPermutation):
        perm = PetalPermutation(tuple(perm))
    p = perm.p
    if p == 1:
        return KnotDiagram((), free_loops=1)
    model = _chord_model(p)
    h = perm.heights
    pair_index: dict[tuple[int, int], int] = {}
    visits: list[tuple[int, bool]] = []
    for k in range(p):
        for j in model.order[k]:
            key = (min(k, j), max(k, j))
            if key not in pair_index:
                pair_index[key] = len(pair_index)
            visits.append((pair_index[key], h[k] > h[j]))
    nvis = len(visits)
    slots: list[dict] = [dict() for _ in pair_index]
    for v, (x, over) in enumerate(visits):
        in_edge = (v - 1) % nvis
        out_edge = v
        slots[x]["over" if over else "under"] = (in_edge, out_edge)
    crossings = []
    for (a, b), x in sorted(pair_index.items(), key=lambda kv: kv[1]):
        under, over = (a, b) if h[a] < h[b] else (b, a)
        sign = model.sign(under, over)
        u_in, u_out = slots[x]["under"]
        o_in, o_out = slots[x]["over"]
        if sign > 0:
            edges = (u_in, o_out, u_out, o_in)
        else:
            edges = (u_in, o_in, u_out, o_out)
        crossings.append(Crossing(edges, sign))
    return KnotDiagram(tuple(crossings), 0, 0)


# -- symmetries and stabilization ------------------------------------------------

Symmetry = Literal["rotate_values", "rotate_positions", "reflect"]


def apply_symmetry(perm: PetalPermutation, sym: Symmetry, times: int = 1) -> PetalPermutation:
    h = perm.heights
    p = perm.p
    for _ in range(times % (2 * p) if sym == "reflect" else times % p):
        if sym == "rotate_values":
            h = tuple((x % p) + 1 for x in h)
        elif sym == "rotate_positions":
            h = h[1:] + h[:1]
        elif sym == "reflect":
            h = tuple(p + 1 - x for x in h)
        else:
            raise ValueError(f"unknown symmetry {sym!r}")
    return PetalPermutation(h)


def stabilize(perm: PetalPermutation, position: int, level: int) -> PetalPermutation:
    """Insert the adjacent pair ``(level+1, level)`` so it occupies slots
    ``position, position+1`` (1-based), shifting heights ``>= level`` up by two."""
    p = perm.p
    if not 1 <= level <= p + 1:
        raise OutOfRange(f"level {level} outside 1..{p + 1}")
    if not 1 <= position <= p + 1:
        raise OutOfRange(f"position {position} outside 1..{p + 1}")
    shifted = [x + 2 if x >= level else x for x in perm.heights]
    i = position - 1
    return PetalPermutation(tuple(shifted[:i] + [level + 1, level] + shifted[i:]))


def identity_perm(p: int) -> PetalPermutation:
    return PetalPermutation(tuple(range(1, p + 1)))
