"""From a regular knot diagram to a petal permutation.

Pipeline: label crossings ascending/descending from the base point, split
off connected summands along 2-edge cuts, draw a closed curve separating
the two labels that crosses the diagram only over a spanning structure of
the dual graph, then read the permutation off the curve.

Faces are traced on darts ``(crossing, slot)``: leave along the slot's edge,
arrive at ``(y, t)``, continue from ``(y, (t - 1) % 4)``.  With slots
counterclockwise this keeps the face on the left of the direction of travel.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Literal

from .diagram import Crossing, KnotDiagram
from .errors import MultiComponent, NotSeparable, NotThreeEdgeConnected
from .petal_model import PetalPermutation

Label = Literal["A", "D"]
Variant = Literal["tree", "simple"]

# Which side of the curve the ascending crossings sit on, looking along the
# labelling direction.  Fixed once so every output has the input's chirality.
A_SIDE: Literal["left", "right"] = "right"


@dataclass(frozen=True)
class CrossingLabels:
    labels: tuple[Label, ...]
    base_edge: int

    @property
    def mixed(self) -> bool:
        return len(set(self.labels)) == 2

    def counts(self) -> dict[str, int]:
        return {k: self.labels.count(k) for k in ("A", "D")}


def classify_crossings(d: KnotDiagram, base: int | None = None) -> CrossingLabels:
    """``A`` if the under-strand is met first when walking from ``base``."""
    if base is not None:
        d = d.with_base(base)
    if d.n_components != 1:
        raise MultiComponent(f"diagram has {d.n_components} components")
    labels: list[Label | None] = [None] * d.n_crossings
    for v in d.traversal():
        if labels[v.crossing] is None:
            labels[v.crossing] = "D" if v.over else "A"
    base_edge = d.edge_cycles[0][0] if d.crossings else -1
    return CrossingLabels(tuple(labels), base_edge)  # type: ignore[arg-type]


# -- connected-sum splitting -----------------------------------------------------------


def _components_without(d: KnotDiagram, cut: set[int]) -> list[set[int]]:
    adj: dict[int, set[int]] = {i: set() for i in range(d.n_crossings)}
    for e in d.edges:
        if e in cut:
            continue
        a, b = d.tails[e][0], d.heads[e][0]
        adj[a].add(b)
        adj[b].add(a)
    seen: set[int] = set()
    comps = []
    for s in adj:
        if s in seen:
            continue
        comp = {s}
        queue = deque([s])
        seen.add(s)
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    queue.append(w)
        comps.append(comp)
    return comps


def find_two_edge_cut(d: KnotDiagram) -> tuple[int, int, set[int]] | None:
    """A pair of edges whose removal disconnects the crossings, with one side."""
    edges = d.edges
    for i, e1 in enumerate(edges):
        for e2 in edges[i + 1 :]:
            comps = _components_without(d, {e1, e2})
            if len(comps) > 1:
                return e1, e2, comps[0]
    return None


def _factor(d: KnotDiagram, side: set[int], keep: int, drop: int) -> KnotDiagram:
    """Crossings in ``side``, with the two dangling cut-edge ends joined as ``keep``."""
    crossings = []
    for i in sorted(side):
        x = d.crossings[i]
        crossings.append(Crossing(tuple(keep if e == drop else e for e in x.edges), x.sign))
    return KnotDiagram(tuple(crossings))


def split_connected_sum(d: KnotDiagram) -> list[KnotDiagram]:
    """Recursively split along 2-edge cuts into 3-edge-connected factors."""
    if d.n_components != 1:
        raise MultiComponent(f"diagram has {d.n_components} components")
    if d.n_crossings <= 1:
        return [d]
    cut = find_two_edge_cut(d)
    if cut is None:
        return [d]
    e1, e2, side = cut
    other = set(range(d.n_crossings)) - side
    # e1 leaves one side and e2 returns to it (or vice versa); in each factor
    # the surviving ends are joined into a single edge
    f1 = _factor(d, side, e1, e2)
    f2 = _factor(d, other, e2, e1)
    return split_connected_sum(f1) + split_connected_sum(f2)


def is_three_edge_connected(d: KnotDiagram) -> bool:
    return d.n_crossings <= 1 or find_two_edge_cut(d) is None


# -- faces and dual graph ------------------------------------------------------------------


@dataclass(frozen=True)
class PlaneGraphView:
    """Faces as cyclic dart lists; ``left[e]``/``right[e]`` are the faces
    on either side of edge ``e`` relative to its orientation."""

    faces: tuple[tuple[tuple[int, int], ...], ...]
    left: dict[int, int]
    right: dict[int, int]
    outer_face: int = 0


def trace_faces(d: KnotDiagram) -> PlaneGraphView:
    tails, heads = d.tails, d.heads
    other_end: dict[tuple[int, int], tuple[int, int]] = {}
    for e in d.edges:
        other_end[tails[e]] = heads[e]
        other_end[heads[e]] = tails[e]
    seen: set[tuple[int, int]] = set()
    faces = []
    left: dict[int, int] = {}
    right: dict[int, int] = {}
    for i in range(d.n_crossings):
        for s in range(4):
            if (i, s) in seen:
                continue
            face = []
            dart = (i, s)
            while dart not in seen:
                seen.add(dart)
                face.append(dart)
                x, slot = dart
                e = d.crossings[x].edges[slot]
                (left if tails[e] == dart else right)[e] = len(faces)
                y, t = other_end[dart]
                dart = (y, (t - 1) % 4)
            faces.append(tuple(face))
    if d.n_crossings and len(faces) != d.n_crossings + 2:
        raise NotThreeEdgeConnected(
            f"face count {len(faces)} violates Euler's formula for {d.n_crossings} crossings"
        )
    return PlaneGraphView(tuple(faces), left, right)


@dataclass(frozen=True)
class DualGraphView:
    """Faces as vertices, one dual edge per diagram edge."""

    ends: dict[int, tuple[int, int]]
    kind: dict[int, str]  # "AD", "AA" or "DD"
    G: frozenset[int]
    T: frozenset[int]
    F: frozenset[int]
    m: int

    @property
    def crossed_once(self) -> frozenset[int]:
        return frozenset(e for e in self.G if self.kind[e] == "AD")

    @property
    def crossed_twice(self) -> frozenset[int]:
        return frozenset(e for e in self.G | self.T if self.kind[e] != "AD")


class _UnionFind:
    def __init__(self, items=()):
        self.parent = {x: x for x in items}

    def find(self, x):
        parent = self.parent
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def build_dual(
    d: KnotDiagram, labels: CrossingLabels, view: PlaneGraphView, variant: Variant = "tree"
) -> DualGraphView:
    """Choose the dual edges the curve will cross.

    ``tree``: all A-D edges (the graph G) plus a spanning tree T grown from a
    spanning forest F of G by same-type edges.  The base edge is forced into
    G or T so the base point lies on the curve.  ``simple``: every edge.
    """
    ends = {e: (view.left[e], view.right[e]) for e in d.edges}
    kind = {}
    for e in d.edges:
        a = labels.labels[d.tails[e][0]]
        b = labels.labels[d.heads[e][0]]
        kind[e] = "AD" if a != b else a + b
    ad = [e for e in d.edges if kind[e] == "AD"]
    if len(ad) % 2:
        raise NotSeparable(f"odd number ({len(ad)}) of A-D edges")
    m = len(ad) // 2
    base = labels.base_edge
    nfaces = len(view.faces)
    if variant == "simple":
        every = frozenset(d.edges)
        return DualGraphView(ends, kind, every, every, frozenset(), m)

    g = set(ad)
    comp = _UnionFind(range(nfaces))
    for e in ad:
        comp.union(*ends[e])
    if kind[base] != "AD" and comp.find(ends[base][0]) == comp.find(ends[base][1]):
        g.add(base)

    forest = set()
    uf = _UnionFind(range(nfaces))
    for e in sorted(g):
        if uf.union(*ends[e]):
            forest.add(e)
    if len(forest) < m + 1:
        raise NotThreeEdgeConnected(
            f"spanning forest of G has {len(forest)} < m+1 = {m + 1} edges"
        )
    tree = set(forest)
    rest = [e for e in d.edges if e not in g]
    if base in rest:
        rest.remove(base)
        rest.insert(0, base)
    for e in rest:
        if uf.union(*ends[e]):
            tree.add(e)
    if len(tree) != nfaces - 1:
        raise NotThreeEdgeConnected("dual graph is disconnected")
    return DualGraphView(ends, kind, frozenset(g), frozenset(tree), frozenset(forest), m)


# -- the separating curve ------------------------------------------------------------------------


@dataclass
class SeparatingCurve:
    """Intersection points ``(edge, k)`` (``k``-th along the edge), and the
    closed curve through them as a cyclic sequence of point indices."""

    points: list[tuple[int, int]]
    per_edge: dict[int, list[int]]
    cycle: tuple[int, ...]
    start: int
    n_circles_before_merge: int = 1
    merges: int = 0
    chords: dict[int, list[tuple[tuple[int, str], tuple[int, str]]]] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return len(self.points)


def build_separating_curve(
    d: KnotDiagram, labels: CrossingLabels | None = None, variant: Variant = "tree"
) -> SeparatingCurve:
    labels = labels or classify_crossings(d)
    if not labels.mixed:
        raise NotSeparable("all crossings have the same type")
    if variant == "tree" and not is_three_edge_connected(d):
        raise NotThreeEdgeConnected("split the diagram along 2-edge cuts first")
    view = trace_faces(d)
    dual = build_dual(d, labels, view, variant)

    points: list[tuple[int, int]] = []
    per_edge: dict[int, list[int]] = {}
    for e in d.edges:
        count = 1 if e in dual.crossed_once else 2 if e in dual.crossed_twice else 0
        per_edge[e] = [len(points) + k for k in range(count)]
        points.extend((e, k) for k in range(count))

    # tips around each face; a tip is (point, side-of-edge)
    face_tips: list[list[tuple[int, str]]] = []
    for face in view.faces:
        tips = []
        for x, s in face:
            e = d.crossings[x].edges[s]
            forward = d.tails[e] == (x, s)
            pts = per_edge[e] if forward else per_edge[e][::-1]
            side = "L" if forward else "R"
            tips.extend((pt, side) for pt in pts)
        face_tips.append(tips)

    # pair neighbouring tips in every face
    chords: list[list[tuple[int, int]]] = []
    for tips in face_tips:
        if len(tips) % 2:
            raise NotSeparable("odd number of curve ends in a face")
        chords.append([(2 * i, 2 * i + 1) for i in range(len(tips) // 2)])

    circles = _UnionFind(range(len(points)))
    for f, tips in enumerate(face_tips):
        for a, b in chords[f]:
            circles.union(tips[a][0], tips[b][0])
    n_circles = len({circles.find(i) for i in range(len(points))})
    merges = 0
    while len({circles.find(i) for i in range(len(points))}) > 1:
        if not _merge_once(face_tips, chords, circles):
            raise NotSeparable("circles cannot be merged within faces")
        merges += 1

    partner: dict[tuple[int, str], tuple[int, str]] = {}
    for f, tips in enumerate(face_tips):
        for a, b in chords[f]:
            partner[tips[a]] = tips[b]
            partner[tips[b]] = tips[a]

    start = _base_point(d, labels, per_edge)
    cycle = [start]
    exit_side = {start: "R"}
    tip = (start, "R")
    while True:
        pt, side = partner[tip]
        if pt == start:
            break
        cycle.append(pt)
        out = "R" if side == "L" else "L"
        exit_side[pt] = out
        tip = (pt, out)
    if len(cycle) != len(points):
        raise AssertionError("curve is not a single cycle")
    ref, wanted = _reference_exit(d, labels, dual, per_edge)
    if exit_side[ref] != wanted:
        cycle = [start] + cycle[1:][::-1]
    named = {
        f: [(face_tips[f][a], face_tips[f][b]) for a, b in chords[f]] for f in range(len(chords))
    }
    return SeparatingCurve(points, per_edge, tuple(cycle), start, n_circles, merges, named)


def _separates(chord, a, b, c, dd) -> bool:
    x, y = chord
    lo, hi = min(x, y), max(x, y)

    def inside(v):
        return lo < v < hi

    return inside(a) != inside(c)


def _merge_once(face_tips, chords, circles: _UnionFind) -> bool:
    """One saddle move between two different circles facing each other in a face."""
    for f, tips in enumerate(face_tips):
        ch = chords[f]
        for i in range(len(ch)):
            for j in range(i + 1, len(ch)):
                (a, b), (c, e) = ch[i], ch[j]
                if circles.find(tips[a][0]) == circles.find(tips[c][0]):
                    continue
                if any(
                    _separates(ch[k], a, b, c, e) for k in range(len(ch)) if k not in (i, j)
                ):
                    continue
                a, b = sorted((a, b))
                c, e = sorted((c, e))
                if a > c:
                    (a, b), (c, e) = (c, e), (a, b)
                if b < c:  # side by side
                    ch[i], ch[j] = (a, e), (b, c)
                else:  # nested
                    ch[i], ch[j] = (a, c), (e, b)
                circles.union(tips[a][0], tips[c][0])
                return True
    return False


def _base_point(d: KnotDiagram, labels: CrossingLabels, per_edge) -> int:
    pts = per_edge.get(labels.base_edge, [])
    if not pts:
        raise NotSeparable("base edge is not crossed by the curve")
    return pts[0]


def _reference_exit(d, labels, dual, per_edge) -> tuple[int, str]:
    """A point on an A-D edge and the tip the curve must leave it through so
    the A crossings lie on the ``A_SIDE`` of the labelling direction.

    Leaving through the ``R`` tip crosses the edge from its left face to its
    right face, which puts the edge's head on the curve's left.
    """
    e = next(e for e in d.edges if e in dual.crossed_once)
    head_is_a = labels.labels[d.heads[e][0]] == "A"
    want_head_left = head_is_a == (A_SIDE == "left")
    return per_edge[e][0], "R" if want_head_left else "L"


def curve_to_permutation(d: KnotDiagram, curve: SeparatingCurve) -> PetalPermutation:
    """Label the points other than the start 1..p along the curve, then
    record the labels in the order the knot meets them after the start."""
    label = {pt: k for k, pt in enumerate(curve.cycle)}  # start gets 0
    seq = []
    walk = d.edge_cycles[0]
    base_index = walk.index(curve.points[curve.start][0])
    for k in range(len(walk)):
        e = walk[(base_index + k) % len(walk)]
        for pt in curve.per_edge[e]:
            if pt != curve.start:
                seq.append(pt)
    # points on the base edge before the start come last
    first = curve.per_edge[walk[base_index]]
    before = first[: first.index(curve.start)]
    seq = [pt for pt in seq if pt not in before] + before
    return PetalPermutation(tuple(label[pt] for pt in seq))


def connect_sum_perms(pi: PetalPermutation, sigma: PetalPermutation) -> PetalPermutation:
    """Petal permutation of the connected sum, with ``p + q - 1`` petals.

    The top arc of ``pi`` is replaced by the whole of ``sigma`` lifted above
    everything else.
    """
    p = pi.p
    i = pi.position(p) - 1
    block = [s + p - 1 for s in sigma.heights]
    h = list(pi.heights[:i]) + block + list(pi.heights[i + 1 :])
    return PetalPermutation(tuple(h))


@dataclass(frozen=True)
class PetalizeResult:
    perm: PetalPermutation
    factors: tuple[PetalPermutation, ...]
    crossings: int


def petalize_prime(d: KnotDiagram, variant: Variant = "tree") -> PetalPermutation:
    labels = classify_crossings(d)
    if not labels.mixed:
        return PetalPermutation((1,))
    curve = build_separating_curve(d, labels, variant)
    return curve_to_permutation(d, curve)


def petalize(d: KnotDiagram, variant: Variant = "tree") -> PetalPermutation:
    return petalize_detailed(d, variant).perm


def petalize_detailed(d: KnotDiagram, variant: Variant = "tree") -> PetalizeResult:
    if d.n_components != 1:
        raise MultiComponent(f"diagram has {d.n_components} components")
    if d.n_crossings == 0 or not classify_crossings(d).mixed:
        return PetalizeResult(PetalPermutation((1,)), (), d.n_crossings)
    factors = tuple(petalize_prime(f, variant) for f in split_connected_sum(d))
    out = PetalPermutation((1,))
    for f in factors:
        out = connect_sum_perms(out, f)
    return PetalizeResult(out, factors, d.n_crossings)
