"""Exact knot and link invariants.

* :func:`linking_number` -- closed-form crossing-sign sum for petal links.
* :func:`alexander_polynomial` / :func:`casson_c2` -- Alexander matrix of a
  diagram, determinant taken either as a full polynomial (Bareiss) or only
  as its second-order jet at ``t = 1``.
* :func:`conway_skein` -- independent oracle via the crossing-change /
  smoothing recursion on descending diagrams.
* :func:`kauffman_jones` -- Kauffman bracket state sum, used as a chirality
  oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

import numpy as np

from .diagram import KnotDiagram
from .errors import (
    IntegralityFailure,
    MultiComponent,
    NormalizationFailure,
    ParityViolation,
    TooLarge,
    UnitFailure,
)
from .linalg import MODULAR_PRIMES, bareiss_det, berkowitz_det, charpoly_mod, crt_signed, polynomial_det
from .petal_model import LinkPetalPermutation, PetalPermutation, petal_to_diagram
from .polynomial import Jet, LaurentPolynomial

Strategy = Literal["jet", "full_poly", "berkowitz"]
STRATEGIES: tuple[str, ...] = ("jet", "full_poly", "berkowitz")

SKEIN_LIMIT = 14
JONES_FRONTIER_LIMIT = 26
# beyond this the Kronecker determinant gets slow; switch to the modular path
KRONECKER_MAX_CROSSINGS = 80
# int64 safety for the jet path: entries of the solved system are bounded by 2n
JET_MAX_CROSSINGS = 20000


# -- linking number --------------------------------------------------------------


def linking_number(link: LinkPetalPermutation) -> int:
    """Half the signed count of inter-component crossings of a petal link.

    The ``(i, j)`` term is ``(-1)^(i+j) * sign(h_i - h_j)`` with ``i`` running
    over the first component's arcs and ``j`` over the second's.
    """
    h = link.heights
    k = 2 * link.m
    total = 0
    for i in range(1, k + 1):
        hi = h[i - 1]
        for j in range(k + 1, len(h) + 1):
            term = 1 if hi > h[j - 1] else -1
            total += term if (i + j) % 2 == 0 else -term
    if total % 2:
        raise ParityViolation(f"inter-component sign sum {total} is odd")
    return total // 2


def linking_numbers_batch(heights: np.ndarray, m: int) -> np.ndarray:
    """Vectorized linking numbers for rows of 1-based height permutations.

    Uses ``lk = sum_{i in I} (-1)^i * sum_{j in J, h_j < h_i} (-1)^j``, which
    equals the half double sum because the second component's parities
    cancel.
    """
    heights = np.asarray(heights)
    rows, size = heights.shape
    idx = np.arange(1, size + 1)
    parity = np.where(idx % 2 == 0, 1, -1).astype(np.int64)
    in_j = idx > 2 * m
    by_height = np.zeros((rows, size + 1), dtype=np.int64)
    r = np.repeat(np.arange(rows), size).reshape(rows, size)
    by_height[r, heights] = np.where(in_j, parity, 0)[None, :]
    below = np.cumsum(by_height, axis=1)  # below[:, h] = sum over J arcs with height <= h
    first = heights[:, : 2 * m]
    return (below[r[:, : 2 * m], first - 1] * parity[None, : 2 * m]).sum(axis=1)


# -- Alexander matrix ----------------------------------------------------------------


@dataclass(frozen=True)
class AlexanderData:
    """Arc-level description of a knot diagram.

    Row ``j`` belongs to the crossing where arc ``j-1`` ends under and arc
    ``j`` begins; ``over[j]`` is the arc passing over it and ``sign[j]`` its
    sign.  The row is ``(1-t)`` at ``over[j]`` plus ``t``/``-1`` (positive)
    or ``-1``/``t`` (negative) at arcs ``j-1``/``j``.
    """

    n: int
    over: tuple[int, ...]
    sign: tuple[int, ...]


def alexander_data(d: KnotDiagram) -> AlexanderData:
    visits = d.traversal()
    n = d.n_crossings
    under_pos = [k for k, v in enumerate(visits) if not v.over]
    if len(under_pos) != n:
        raise MultiComponent("diagram is not a single traversal")
    # shift so the walk starts right after an under-visit: arc j spans
    # visits (under_pos[j], under_pos[j+1])
    arc_at = [0] * len(visits)
    j = n - 1
    start = under_pos[0] if under_pos else 0
    for k in range(len(visits)):
        pos = (start + k) % len(visits)
        if not visits[pos].over:
            j = (j + 1) % n
        arc_at[pos] = j
    over = [0] * n
    sign = [0] * n
    row_of_crossing = {}
    for j, pos in enumerate(under_pos):
        # under-visit at pos ends arc j-1 and starts arc j (arc index assigned at pos)
        row_of_crossing[visits[pos].crossing] = arc_at[pos]
    for pos, v in enumerate(visits):
        if v.over:
            row = row_of_crossing[v.crossing]
            over[row] = arc_at[pos]
            sign[row] = d.crossings[v.crossing].sign
    return AlexanderData(n, tuple(over), tuple(sign))


def _alexander_rows(data: AlexanderData) -> list[dict[int, dict[int, int]]]:
    """Row ``j`` as ``{column: {exponent: coeff}}``."""
    rows = []
    n = data.n
    for j in range(n):
        row: dict[int, dict[int, int]] = {}

        def add(col, e, c):
            cell = row.setdefault(col, {})
            cell[e] = cell.get(e, 0) + c

        k = data.over[j]
        add(k, 0, 1)
        add(k, 1, -1)
        prev = (j - 1) % n
        if data.sign[j] > 0:
            add(prev, 1, 1)
            add(j, 0, -1)
        else:
            add(prev, 0, -1)
            add(j, 1, 1)
        rows.append(row)
    return rows


def alexander_matrix(d: KnotDiagram) -> list[list[LaurentPolynomial]]:
    """Full ``n x n`` Alexander matrix with Laurent-polynomial entries."""
    data = alexander_data(d)
    rows = _alexander_rows(data)
    return [
        [LaurentPolynomial(rows[j].get(c, {})) for c in range(data.n)] for j in range(data.n)
    ]


def _minor_rows(data: AlexanderData) -> list[list[dict[int, int]]]:
    # delete row 0 and the last column
    rows = _alexander_rows(data)
    n = data.n
    return [[rows[j].get(c, {}) for c in range(n - 1)] for j in range(1, n)]


def alexander_determinant(d: KnotDiagram) -> LaurentPolynomial:
    """Unnormalized minor ``D(t)`` (equal to ``±t^k Δ(t)``)."""
    if d.n_crossings == 0:
        return LaurentPolynomial.constant(1)
    if d.n_crossings > KRONECKER_MAX_CROSSINGS:
        return alexander_determinant_modular(d)
    data = alexander_data(d)
    return polynomial_det(_minor_rows(data))


def alexander_polynomial(d: KnotDiagram) -> LaurentPolynomial:
    if d.n_components != 1:
        raise MultiComponent(f"diagram has {d.n_components} components")
    det = alexander_determinant(d)
    if det(1) == 0:
        raise NormalizationFailure("determinant vanishes at t=1")
    return det.normalize_alexander()


def alexander_polynomial_bareiss(d: KnotDiagram) -> LaurentPolynomial:
    """Same as :func:`alexander_polynomial`, eliminating directly over Z[t, 1/t]."""
    if d.n_crossings == 0:
        return LaurentPolynomial.constant(1)
    m = alexander_matrix(d)
    minor = [row[:-1] for row in m[1:]]
    det = bareiss_det(
        minor,
        zero=LaurentPolynomial(),
        one=LaurentPolynomial.constant(1),
        exact_div=lambda a, b: a.exact_div(b),
    )
    return det.normalize_alexander()


def c2_from_alexander(delta: LaurentPolynomial) -> int:
    """``c2 = Δ''(1) / 2`` for a normalized Alexander polynomial."""
    j = delta.jet()
    if j.d2 % 2:
        raise IntegralityFailure(f"Δ''(1) = {j.d2} is odd")
    return j.d2 // 2


def _c2_from_jet(j: Jet) -> int:
    if abs(j.d0) != 1:
        raise UnitFailure(f"|D(1)| = {abs(j.d0)} != 1")
    k, r = divmod(j.d1, j.d0)
    if r:
        raise IntegralityFailure("D'(1)/D(1) is not an integer")
    twice = j.d2 * j.d0 - k * (k - 1)  # d0 = ±1 so d2/d0 == d2*d0
    if twice % 2:
        raise IntegralityFailure("second derivative is odd after normalization")
    return twice // 2


def _solved_system(d: KnotDiagram) -> tuple[int, np.ndarray]:
    """``det M0`` and ``X = M0^{-1} M1`` for the minor written as ``M0 + (t-1) M1``.

    ``M0`` is signed bidiagonal (row ``j`` is ``±(e_{j-1} - e_j)``), so its
    inverse is a suffix sum and ``X`` is an integer matrix with entries
    bounded by ``2n``.
    """
    n = d.n_crossings
    data = alexander_data(d)
    size = n - 1
    sign = np.asarray(data.sign, dtype=np.int64)
    over = np.asarray(data.over, dtype=np.int64)
    # M1 rows j=1..n-1 (row r = j-1), columns 0..n-2
    m1 = np.zeros((size, n), dtype=np.int64)
    rows = np.arange(size)
    js = rows + 1
    np.add.at(m1, (rows, over[js]), -1)
    extra_col = np.where(sign[js] > 0, js - 1, js)
    np.add.at(m1, (rows, extra_col), 1)
    m1 = m1[:, :size]
    scaled = m1 * sign[js][:, None]
    x = np.cumsum(scaled[::-1], axis=0)[::-1]
    return int(np.prod(sign[1:])), x


def determinant_jet(d: KnotDiagram) -> Jet:
    """Jet of the Alexander minor at ``t = 1``.

    With ``D(t) = det M0 * det(I + (t-1) X)``:

        D(1) = det M0,  D'(1) = D(1) tr X,  D''(1) = D(1) (tr(X)^2 - tr(X^2)).
    """
    n = d.n_crossings
    if n <= 1:
        return Jet(1, 0, 0)
    if n > JET_MAX_CROSSINGS:
        raise TooLarge(f"{n} crossings exceeds the int64-safe jet limit")
    det0, x = _solved_system(d)
    tr = int(np.trace(x))
    tr2 = int(np.einsum("ij,ji->", x, x))
    return Jet(det0, det0 * tr, det0 * (tr * tr - tr2))


def alexander_determinant_modular(d: KnotDiagram) -> LaurentPolynomial:
    """``D(t)`` from the characteristic polynomial of ``X`` modulo several primes.

    ``det(I + sX) = sum_k e_k(X) s^k``; substituting ``s = t - 1`` mod each
    prime gives ``D``'s coefficients in ``t``, which are those of ``Δ`` up to a
    shift and therefore small.  Primes are added until the CRT lift is
    stable and normalizes.
    """
    n = d.n_crossings
    if n <= 1:
        return LaurentPolynomial.constant(1)
    det0, x = _solved_system(d)
    size = n - 1
    residues: list[list[int]] = []
    moduli: list[int] = []
    previous = None
    for q in MODULAR_PRIMES:
        cp = charpoly_mod(x, q)  # coefficient of x^(size-k) is (-1)^k e_k
        e = [(c if k % 2 == 0 else -c) % q for k, c in enumerate(cp)]
        poly = np.zeros(size + 1, dtype=np.int64)  # Horner in s = t - 1, t-basis
        for k in range(size, -1, -1):
            shifted = np.zeros(size + 1, dtype=np.int64)
            shifted[1:] = poly[:-1]
            shifted[0] += e[k]
            poly = (shifted - poly) % q
        residues.append([int(v) for v in poly])
        moduli.append(q)
        coeffs = {
            i: det0 * crt_signed([r[i] for r in residues], moduli) for i in range(size + 1)
        }
        current = LaurentPolynomial(coeffs)
        if current == previous:
            try:
                current.normalize_alexander()
            except NormalizationFailure:
                pass
            else:
                return current
        previous = current
    raise IntegralityFailure("modular determinant did not stabilize")


def determinant_jet_berkowitz(d: KnotDiagram) -> Jet:
    """Same jet by a division-free determinant over the jet ring (slow, O(n^4))."""
    if d.n_crossings <= 1:
        return Jet(1, 0, 0)
    data = alexander_data(d)
    rows = _minor_rows(data)
    mat = [[LaurentPolynomial(cell).jet() for cell in row] for row in rows]
    return berkowitz_det(mat, zero=Jet(0), one=Jet(1))


def casson_c2(d: KnotDiagram, strategy: Strategy | None = None) -> int:
    """Casson invariant: coefficient of ``z^2`` in the Conway polynomial."""
    if d.n_components != 1:
        raise MultiComponent(f"diagram has {d.n_components} components")
    if d.n_crossings <= 1:
        return 0
    if strategy is None:
        strategy = default_strategy(d.n_crossings)
    if strategy == "jet":
        return _c2_from_jet(determinant_jet(d))
    if strategy == "berkowitz":
        return _c2_from_jet(determinant_jet_berkowitz(d))
    if strategy == "full_poly":
        return c2_from_alexander(alexander_polynomial(d))
    raise ValueError(f"unknown strategy {strategy!r}")


def default_strategy(n_crossings: int) -> Strategy:
    # p >= 11 petals means at least 55 crossings
    return "jet" if n_crossings >= 55 else "full_poly"


# -- Conway skein oracle --------------------------------------------------------------


def _first_bad_crossing(d: KnotDiagram) -> int | None:
    seen: set[int] = set()
    for comp in d.all_visits():
        for v in comp:
            if v.crossing in seen:
                continue
            seen.add(v.crossing)
            if not v.over:
                return v.crossing
    return None


def _skein(d: KnotDiagram, max_degree: int | None, memo: dict) -> dict[int, int]:
    if max_degree is not None and max_degree < 0:
        return {}
    d = d.simplify()
    # the Conway polynomial of a mu-component link is divisible by z^(mu-1)
    if max_degree is not None and d.n_components - 1 > max_degree:
        return {}
    key = _diagram_key(d)
    memo_key = (key, max_degree)
    if memo_key in memo:
        return memo[memo_key]
    result: dict[int, int] = {}
    cur = d
    while True:
        bad = _first_bad_crossing(cur)
        if bad is None:
            if cur.n_components == 1:
                result[0] = result.get(0, 0) + 1
            break
        sign = cur.crossings[bad].sign
        sub_deg = None if max_degree is None else max_degree - 1
        for e, c in _skein(cur.smooth(bad), sub_deg, memo).items():
            result[e + 1] = result.get(e + 1, 0) + sign * c
        cur = cur.switch(bad)
    result = {e: c for e, c in result.items() if c}
    memo[memo_key] = result
    return result


def _diagram_key(d: KnotDiagram):
    r = d.relabeled(0)
    return (r.free_loops, tuple(sorted((x.edges, x.sign) for x in r.crossings)))


def conway_skein(d: KnotDiagram, max_degree: int | None = None) -> LaurentPolynomial:
    """Conway polynomial in ``z`` by the skein recursion.

    With ``max_degree`` set, only coefficients up to ``z^max_degree`` are
    computed (exactly); the recursion then stays polynomial-size, so the
    crossing limit applies only to the full polynomial.
    """
    if max_degree is None and d.n_crossings > SKEIN_LIMIT:
        raise TooLarge(f"{d.n_crossings} crossings > {SKEIN_LIMIT} for the full skein oracle")
    return LaurentPolynomial(_skein(d, max_degree, {}), var="z")


# -- Kauffman bracket / Jones ------------------------------------------------------------


def _bracket_loop() -> LaurentPolynomial:
    return LaurentPolynomial({2: -1, -2: -1}, var="A")


def kauffman_bracket_bruteforce(d: KnotDiagram) -> LaurentPolynomial:
    """Unnormalized bracket ``<D>`` summed over all ``2^c`` states."""
    n = d.n_crossings
    if n > 16:
        raise TooLarge("brute-force state sum limited to 16 crossings")
    loop = _bracket_loop()
    counts: dict[tuple[int, int], int] = {}
    edges = d.edges
    index = {e: i for i, e in enumerate(edges)}
    for state in range(1 << n):
        parent = list(range(len(edges)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        a_count = 0
        for i, x in enumerate(d.crossings):
            e0, e1, e2, e3 = (index[e] for e in x.edges)
            if state >> i & 1:
                pairs = ((e0, e1), (e2, e3))
                a_count += 1
            else:
                pairs = ((e0, e3), (e1, e2))
            for u, v in pairs:
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[ru] = rv
        loops = len({find(i) for i in range(len(edges))}) + d.free_loops
        key = (a_count - (n - a_count), loops)
        counts[key] = counts.get(key, 0) + 1
    total = LaurentPolynomial({}, var="A")
    for (aexp, loops), c in counts.items():
        total = total + LaurentPolynomial({aexp: c}, var="A") * loop ** (loops - 1)
    return total


def _absorb(partner: dict[int, int], pairs) -> int | None:
    """Join strand ends through one smoothing; return the number of closed loops.

    ``partner`` maps each half-absorbed edge to the edge at the other end of
    its strand inside the absorbed region.  Mutated in place.
    """
    closed = 0
    for u, v in pairs:
        if u == v:
            closed += 1
            continue
        if partner.get(u) == v:
            del partner[u], partner[v]
            closed += 1
            continue
        if u in partner:
            eu = partner.pop(u)
            del partner[eu]
        else:
            eu = u
        if v in partner:
            ev = partner.pop(v)
            del partner[ev]
        else:
            ev = v
        partner[eu] = ev
        partner[ev] = eu
    return closed


def kauffman_bracket(d: KnotDiagram) -> LaurentPolynomial:
    """Unnormalized bracket ``<D>`` (``<O> = 1``) by incremental contraction.

    Crossings are absorbed one at a time; the running state maps the way the
    open edges are connected inside the absorbed region to a weight table
    ``{(A-exponent, loops): count}``.  Same state sum as the brute force, with
    cost governed by the frontier width instead of ``2^c``.
    """
    if d.n_crossings == 0:
        return _bracket_loop() ** max(d.free_loops - 1, 0)
    loop = _bracket_loop()
    states: dict[frozenset, dict[tuple[int, int], int]] = {frozenset(): {(0, 0): 1}}
    absorbed: dict[int, int] = {}
    for xi in _contraction_order(d):
        x = d.crossings[xi]
        a, b, c, e = x.edges
        new_states: dict[frozenset, dict[tuple[int, int], int]] = {}
        for pairs, da in ((((a, b), (c, e)), 1), (((a, e), (b, c)), -1)):
            for match, weights in states.items():
                partner = {}
                for u, v in match:
                    partner[u], partner[v] = v, u
                closed = _absorb(partner, pairs)
                key = frozenset((u, v) for u, v in partner.items() if u < v)
                bucket = new_states.setdefault(key, {})
                for (ae, lp), coeff in weights.items():
                    k2 = (ae + da, lp + closed)
                    bucket[k2] = bucket.get(k2, 0) + coeff
        states = new_states
        for u in x.edges:
            absorbed[u] = absorbed.get(u, 0) + 1
        frontier = sum(1 for v in absorbed.values() if v == 1)
        if frontier > JONES_FRONTIER_LIMIT:
            raise TooLarge(f"bracket frontier {frontier} exceeds {JONES_FRONTIER_LIMIT}")
    total = LaurentPolynomial({}, var="A")
    for match, weights in states.items():
        if match:
            raise AssertionError("open ends left after contracting every crossing")
        for (ae, lp), coeff in weights.items():
            total = total + LaurentPolynomial({ae: coeff}, var="A") * loop ** (lp + d.free_loops - 1)
    return total


def _contraction_order(d: KnotDiagram) -> list[int]:
    """Greedy order: always absorb the crossing sharing most edges with the frontier."""
    n = d.n_crossings
    incident: dict[int, list[int]] = {}
    for i, x in enumerate(d.crossings):
        for e in x.edges:
            incident.setdefault(e, []).append(i)
    done = [False] * n
    shared = [0] * n
    absorbed: dict[int, int] = {}
    order = []
    current = 0
    for _ in range(n):
        done[current] = True
        order.append(current)
        for e in d.crossings[current].edges:
            absorbed[e] = absorbed.get(e, 0) + 1
            for j in incident[e]:
                if not done[j]:
                    shared[j] += 1 if absorbed[e] == 1 else 0
        best = -1
        for j in range(n):
            if not done[j] and (best < 0 or shared[j] > shared[best]):
                best = j
        current = best
    return order


def kauffman_jones(d: KnotDiagram) -> LaurentPolynomial:
    """Jones polynomial ``V(t) = (-A^3)^(-w) <D>`` at ``A = t^(-1/4)``.

    Returned in the variable ``t`` with exponents in quarter-integers
    (integers for knots).
    """
    bracket = kauffman_bracket(d)
    return _normalize_jones(bracket, d.writhe)


def _normalize_jones(bracket: LaurentPolynomial, writhe: int) -> LaurentPolynomial:
    factor = LaurentPolynomial({-3 * writhe: (-1) ** (writhe % 2)}, var="A")
    in_a = bracket * factor
    return in_a.scale_exponents(Fraction(-1, 4)).with_var("t")


def jones_bruteforce(d: KnotDiagram) -> LaurentPolynomial:
    return _normalize_jones(kauffman_bracket_bruteforce(d), d.writhe)


# -- reports ----------------------------------------------------------------------------------


@dataclass(frozen=True)
class InvariantReport:
    source: str
    delta: LaurentPolynomial
    c2: int
    strategy: str
    jones: LaurentPolynomial | None = None

    def to_json(self, perm: Sequence[int] | None = None) -> dict:
        from .io import json_int

        out = {
            "perm": list(perm) if perm is not None else None,
            "delta": [[e, json_int(c)] for e, c in self.delta.to_pairs()],
            "c2": json_int(self.c2),
        }
        if self.jones is not None:
            out["jones"] = [[str(e), json_int(c)] for e, c in self.jones.to_pairs()]
        return out


def invariants_of(
    perm: PetalPermutation | KnotDiagram,
    *,
    strategy: Strategy | None = None,
    with_jones: bool = False,
    with_delta: bool = True,
) -> InvariantReport:
    d = petal_to_diagram(perm) if isinstance(perm, PetalPermutation) else perm
    strategy = strategy or default_strategy(d.n_crossings)
    delta = alexander_polynomial(d) if with_delta else LaurentPolynomial()
    c2 = casson_c2(d, strategy)
    if with_delta and c2 != c2_from_alexander(delta):
        raise IntegralityFailure("strategies disagree on c2")
    jones = kauffman_jones(d) if with_jones else None
    return InvariantReport(str(perm), delta, c2, strategy, jones)


def c2_of_perm(perm: PetalPermutation | Sequence[int], strategy: Strategy | None = None) -> int:
    if not isinstance(perm, PetalPermutation):
        perm = PetalPermutation(tuple(perm))
    return casson_c2(petal_to_diagram(perm), strategy)


def delta_of_perm(perm: PetalPermutation | Sequence[int]) -> LaurentPolynomial:
    if not isinstance(perm, PetalPermutation):
        perm = PetalPermutation(tuple(perm))
    return alexander_polynomial(petal_to_diagram(perm))


def binomial_mid(t: int) -> int:
    return math.comb(t, t // 2)
