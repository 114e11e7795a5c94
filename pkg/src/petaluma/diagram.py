"""Oriented combinatorial knot and link diagrams.

A crossing stores its four incident edge labels counterclockwise, starting
with the incoming under-strand (the usual PD convention), together with its
sign.  Signs follow the right-hand rule: ``+1`` when the over-strand runs
from slot 3 to slot 1, ``-1`` when it runs from slot 1 to slot 3.  The
under-strand always runs from slot 0 to slot 2.

Crossingless circles are counted in ``free_loops``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import InconsistentCode, MultiComponent


@dataclass(frozen=True)
class Crossing:
    edges: tuple[int, int, int, int]
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"crossing sign must be ±1, got {self.sign}")
        if len(self.edges) != 4:
            raise ValueError("a crossing has exactly four edge slots")

    @property
    def in_slots(self) -> tuple[int, int]:
        """(under-in slot, over-in slot)."""
        return (0, 3) if self.sign > 0 else (0, 1)

    @property
    def out_slots(self) -> tuple[int, int]:
        return (2, 1) if self.sign > 0 else (2, 3)

    def is_over_slot(self, slot: int) -> bool:
        return slot % 2 == 1


class Visit(NamedTuple):
    crossing: int
    over: bool
    in_edge: int
    out_edge: int


@dataclass(frozen=True, eq=False)
class KnotDiagram:
    """A 4-valent oriented planar diagram (knot or link).

    ``base_edge`` marks where traversals start; ``None`` means the smallest
    edge label.
    """

    crossings: tuple[Crossing, ...]
    free_loops: int = 0
    base_edge: int | None = None
    _checked: bool = field(default=True, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))
        if self._checked:
            self._ends  # validates

    # -- structure --------------------------------------------------------
    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @cached_property
    def _ends(self) -> tuple[dict[int, tuple[int, int]], dict[int, tuple[int, int]]]:
        tails: dict[int, tuple[int, int]] = {}
        heads: dict[int, tuple[int, int]] = {}
        for i, x in enumerate(self.crossings):
            for s in x.in_slots:
                e = x.edges[s]
                if e in heads:
                    raise InconsistentCode(f"edge {e} enters two crossings")
                heads[e] = (i, s)
            for s in x.out_slots:
                e = x.edges[s]
                if e in tails:
                    raise InconsistentCode(f"edge {e} leaves two crossings")
                tails[e] = (i, s)
        if set(heads) != set(tails):
            bad = sorted(set(heads) ^ set(tails))
            raise InconsistentCode(f"edges without both ends: {bad}")
        return tails, heads

    @property
    def tails(self) -> dict[int, tuple[int, int]]:
        return self._ends[0]

    @property
    def heads(self) -> dict[int, tuple[int, int]]:
        return self._ends[1]

    @property
    def edges(self) -> list[int]:
        return sorted(self.tails)

    def successor(self, e: int) -> int:
        i, s = self.heads[e]
        return self.crossings[i].edges[(s + 2) % 4]

    @cached_property
    def edge_cycles(self) -> tuple[tuple[int, ...], ...]:
        """Closed edge walks, one per crossing-bearing component.

        Components are ordered by their smallest edge label and each walk
        starts at that label, except that the component holding
        ``base_edge`` comes first and starts there.
        """
        seen: set[int] = set()
        cycles = []
        order = self.edges
        if self.base_edge is not None:
            if self.base_edge not in self.tails:
                raise InconsistentCode(f"base edge {self.base_edge} not in diagram")
            order = [self.base_edge] + [e for e in order if e != self.base_edge]
        for start in order:
            if start in seen:
                continue
            walk = [start]
            seen.add(start)
            e = self.successor(start)
            while e != start:
                walk.append(e)
                seen.add(e)
                e = self.successor(e)
            cycles.append(tuple(walk))
        return tuple(cycles)

    @property
    def n_components(self) -> int:
        return len(self.edge_cycles) + self.free_loops

    def component_of_edge(self) -> dict[int, int]:
        return {e: k for k, cyc in enumerate(self.edge_cycles) for e in cyc}

    def traversal(self) -> list[Visit]:
        """Crossing visits along a knot, starting at the head of the base edge."""
        if self.n_components != 1:
            raise MultiComponent(f"diagram has {self.n_components} components")
        if not self.crossings:
            return []
        return list(self._component_visits(self.edge_cycles[0]))

    def _component_visits(self, cycle: Sequence[int]) -> Iterator[Visit]:
        heads = self.heads
        for k, e in enumerate(cycle):
            i, s = heads[e]
            yield Visit(i, s % 2 == 1, e, cycle[(k + 1) % len(cycle)])

    def all_visits(self) -> list[list[Visit]]:
        return [list(self._component_visits(c)) for c in self.edge_cycles]

    @property
    def writhe(self) -> int:
        return sum(x.sign for x in self.crossings)

    # -- local modifications ----------------------------------------------
    def switch(self, i: int) -> "KnotDiagram":
        """Exchange over and under at crossing ``i`` (flips its sign)."""
        x = self.crossings[i]
        a, b, c, d = x.edges
        new = Crossing((d, a, b, c), -1) if x.sign > 0 else Crossing((b, c, d, a), 1)
        cr = list(self.crossings)
        cr[i] = new
        return KnotDiagram(tuple(cr), self.free_loops, self.base_edge, _checked=False)

    def smooth(self, i: int) -> "KnotDiagram":
        """Orientation-respecting smoothing at crossing ``i``."""
        x = self.crossings[i]
        a, b, c, d = x.edges
        if x.sign > 0:
            joins = [(a, b), (d, c)]
        else:
            joins = [(a, d), (b, c)]
        return self.splice([i], joins)

    def splice(self, removed: Iterable[int], joins: Iterable[tuple[int, int]]) -> "KnotDiagram":
        """Delete crossings and glue each ``(in_edge, out_edge)`` pair into one edge.

        The glued edge keeps the label of whichever member still touches a
        surviving crossing at its tail; classes touching no surviving
        crossing become free loops.
        """
        removed = set(removed)
        parent: dict[int, int] = {}

        def find(e):
            parent.setdefault(e, e)
            while parent[e] != e:
                parent[e] = parent[parent[e]]
                e = parent[e]
            return e

        for u, v in joins:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        tails, heads = self.tails, self.heads
        # representative label: the member whose tail is at a surviving crossing
        rep: dict[int, int] = {}
        touched: set[int] = set()
        for e in list(parent):
            root = find(e)
            touched.add(root)
            if tails[e][0] not in removed:
                rep[root] = e
        for x_idx in removed:
            for e in self.crossings[x_idx].edges:
                touched.add(find(e))
        new_crossings = []
        alive_roots: set[int] = set()
        for idx, x in enumerate(self.crossings):
            if idx in removed:
                continue
            labels = []
            for e in x.edges:
                if e in parent:
                    root = find(e)
                    alive_roots.add(root)
                    labels.append(rep[root])
                else:
                    labels.append(e)
            new_crossings.append(Crossing(tuple(labels), x.sign))
        loops = len(touched - alive_roots)
        base = self.base_edge
        if base is not None and base in parent:
            root = find(base)
            base = rep.get(root)
        return KnotDiagram(tuple(new_crossings), self.free_loops + loops, base)

    def mirror(self) -> "KnotDiagram":
        d = self
        for i in range(self.n_crossings):
            d = d.switch(i)
        return KnotDiagram(d.crossings, d.free_loops, d.base_edge)

    def with_base(self, base_edge: int | None) -> "KnotDiagram":
        return KnotDiagram(self.crossings, self.free_loops, base_edge)

    def reverse(self) -> "KnotDiagram":
        """Reverse the orientation of every component."""
        out = []
        for x in self.crossings:
            a, b, c, d = x.edges
            # new incoming under is old outgoing under; ccw order from slot 2
            out.append(Crossing((c, d, a, b), x.sign))
        return KnotDiagram(tuple(out), self.free_loops, None)

    # -- Reidemeister simplification ---------------------------------------
    def _find_r1(self) -> int | None:
        tails, heads = self.tails, self.heads
        for i, x in enumerate(self.crossings):
            for e in x.edges:
                if tails[e][0] == i and heads[e][0] == i:
                    s, t = tails[e][1], heads[e][1]
                    if (s - t) % 4 in (1, 3):
                        return i
        return None

    def remove_r1(self, i: int) -> "KnotDiagram":
        x = self.crossings[i]
        # both strands are glued straight through; the loop edge joins them
        joins = [(x.edges[0], x.edges[2]), (x.edges[x.in_slots[1]], x.edges[x.out_slots[1]])]
        return self.splice([i], joins)

    def _find_r2(self) -> tuple[int, int] | None:
        tails, heads = self.tails, self.heads
        for e in self.edges:
            i, si = tails[e]
            j, sj = heads[e]
            if i == j:
                continue
            over_e = si % 2 == 1
            if over_e != (sj % 2 == 1):
                continue
            xi, xj = self.crossings[i], self.crossings[j]
            for di in (1, 3):
                f = xi.edges[(si + di) % 4]
                if f == e:
                    continue
                ends = {tails[f][0], heads[f][0]}
                if ends != {i, j}:
                    continue
                fi = (si + di) % 4
                fj = tails[f][1] if tails[f][0] == j else heads[f][1]
                if (sj - fj) % 4 not in (1, 3):
                    continue
                # bigon: e and f bound a common face at both ends
                if not _bigon_face(si, fi, sj, fj):
                    continue
                return (i, j)
        return None

    def remove_r2(self, i: int, j: int) -> "KnotDiagram":
        joins = []
        for idx in (i, j):
            x = self.crossings[idx]
            joins.append((x.edges[0], x.edges[2]))
            joins.append((x.edges[x.in_slots[1]], x.edges[x.out_slots[1]]))
        return self.splice([i, j], joins)

    def simplify(self) -> "KnotDiagram":
        """Greedily remove Reidemeister I kinks and II bigons."""
        d = self
        while True:
            i = d._find_r1()
            if i is not None:
                d = d.remove_r1(i)
                continue
            pair = d._find_r2()
            if pair is not None:
                d = d.remove_r2(*pair)
                continue
            return d

    # -- relabeling / emission ---------------------------------------------
    def relabeled(self, start: int = 1) -> "KnotDiagram":
        """Edges renumbered consecutively along each component walk."""
        mapping = {}
        k = start
        for cyc in self.edge_cycles:
            for e in cyc:
                mapping[e] = k
                k += 1
        cr = tuple(Crossing(tuple(mapping[e] for e in x.edges), x.sign) for x in self.crossings)
        base = mapping[self.edge_cycles[0][0]] if self.edge_cycles else None
        return KnotDiagram(cr, self.free_loops, base)

    def structurally_equal(self, other: "KnotDiagram") -> bool:
        return (
            self.free_loops == other.free_loops
            and sorted((x.edges, x.sign) for x in self.crossings)
            == sorted((x.edges, x.sign) for x in other.crossings)
        )

    def gauss_code(self) -> list[list[tuple[int, str, int]]]:
        """Per component: ``(crossing id, 'O'|'U', sign)`` in traversal order."""
        return [
            [(v.crossing + 1, "O" if v.over else "U", self.crossings[v.crossing].sign) for v in comp]
            for comp in self.all_visits()
        ]


def _bigon_face(si: int, fi: int, sj: int, fj: int) -> bool:
    # At crossing i the face between slots si, fi lies on one side; at j the
    # bigon face must sit between sj and fj on the mirrored side.
    return (fi - si) % 4 == (sj - fj) % 4


def connected_sum(d1: KnotDiagram, d2: KnotDiagram) -> KnotDiagram:
    """Band the base edges of two knot diagrams together (planar)."""
    if d1.n_components != 1 or d2.n_components != 1:
        raise MultiComponent("connected sum needs two knots")
    if not d1.crossings:
        return d2
    if not d2.crossings:
        return d1
    a = d1.relabeled(1)
    n1 = 2 * a.n_crossings
    b = d2.relabeled(n1 + 1)
    e1 = a.edge_cycles[0][-1]
    e2 = b.edge_cycles[0][-1]
    total = n1 + 2 * b.n_crossings
    crossings = []
    h1, h2 = a.heads[e1], b.heads[e2]
    for idx, x in enumerate(a.crossings):
        edges = list(x.edges)
        if idx == h1[0]:
            edges[h1[1]] = total
        crossings.append(Crossing(tuple(edges), x.sign))
    for idx, x in enumerate(b.crossings):
        edges = list(x.edges)
        if idx == h2[0]:
            edges[h2[1]] = e1
        for s in range(4):
            if edges[s] == e2 and not (idx == h2[0] and s == h2[1]):
                edges[s] = total
        crossings.append(Crossing(tuple(edges), x.sign))
    return KnotDiagram(tuple(crossings), 0, 1).relabeled(1)


def add_kink(d: KnotDiagram, edge: int, sign: int = 1, over_first: bool = True) -> KnotDiagram:
    """Insert a Reidemeister-I curl on ``edge`` (new labels above the maximum)."""
    top = max(d.edges, default=0)
    loop, out = top + 1, top + 2
    i, s = d.heads[edge]
    crossings = list(d.crossings)
    x = crossings[i]
    edges = list(x.edges)
    edges[s] = out
    crossings[i] = Crossing(tuple(edges), x.sign)
    if over_first:
        # strand enters over, leaves over via loop, returns under
        kink = Crossing((loop, loop, out, edge), 1) if sign > 0 else Crossing((loop, edge, out, loop), -1)
    else:
        kink = Crossing((edge, loop, loop, out), -1) if sign < 0 else Crossing((edge, out, loop, loop), 1)
    crossings.append(kink)
    return KnotDiagram(tuple(crossings), d.free_loops, d.base_edge)


def descending(d: KnotDiagram) -> KnotDiagram:
    """Switch crossings so every crossing is first met on its over-strand."""
    out = d
    seen: set[int] = set()
    for comp in d.all_visits():
        for v in comp:
            if v.crossing in seen:
                continue
            seen.add(v.crossing)
            if not v.over:
                out = out.switch(v.crossing)
    return KnotDiagram(out.crossings, out.free_loops, out.base_edge)
