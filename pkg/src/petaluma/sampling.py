"""Seeded random generation and Monte Carlo experiments.

Every experiment is a map-reduce over independent substreams: worker ``w``
draws from ``SeedSequence(seed, spawn_key=(w,))`` and the per-worker
histograms are merged by addition, so results depend only on the seed and
the number of workers.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Literal, Sequence

import numpy as np

from .errors import OutOfRange, ParamError, TooLarge, ZeroEntry
from .invariants import casson_c2, linking_number, linking_numbers_batch
from .moves import perform_swaps, smooth, swap_epsilon
from .petal_model import LinkPetalPermutation, PetalPermutation, petal_to_diagram

Z99 = 2.5758293035489004  # two-sided 99% normal quantile
EXHAUSTIVE_MAX_P = 9
KNOT_MAX_P = 41


# -- streams -------------------------------------------------------------------------


@dataclass(frozen=True)
class SeededStream:
    seed: int
    substream: int = 0

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(np.random.SeedSequence(self.seed, spawn_key=(self.substream,)))

    def spawn(self, count: int) -> list["SeededStream"]:
        """Independent child streams, one per worker."""
        return [SeededStream(self.seed, self.substream * 1_000_003 + w) for w in range(count)]


def uniform_perm(p: int, stream: SeededStream | np.random.Generator) -> PetalPermutation:
    """Uniform height permutation of ``S_p`` (Fisher-Yates)."""
    if p < 1:
        raise OutOfRange("p must be positive")
    rng = stream.rng() if isinstance(stream, SeededStream) else stream
    return PetalPermutation(tuple(int(x) + 1 for x in rng.permutation(p)))


def uniform_perms(p: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` independent uniform permutations of ``1..p`` as rows."""
    base = np.tile(np.arange(1, p + 1, dtype=np.int64), (count, 1))
    return rng.permuted(base, axis=1)


# -- histograms and bounds -------------------------------------------------------------------


@dataclass
class Histogram:
    counts: dict[int, int] = field(default_factory=dict)
    params: dict = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def add(self, value: int, k: int = 1) -> None:
        self.counts[value] = self.counts.get(value, 0) + k

    def merge(self, other: "Histogram") -> "Histogram":
        out = Histogram(dict(self.counts), dict(self.params))
        for v, c in other.counts.items():
            out.add(v, c)
        return out

    def freq(self, value: int) -> float:
        return self.counts.get(value, 0) / self.total if self.total else 0.0

    def mode(self) -> tuple[int, int]:
        v = max(sorted(self.counts), key=lambda x: self.counts[x])
        return v, self.counts[v]

    def mean(self) -> float:
        return sum(v * c for v, c in self.counts.items()) / self.total

    def to_json(self) -> dict:
        return {
            "counts": {str(v): c for v, c in sorted(self.counts.items())},
            "total": self.total,
            "params": self.params,
        }

    def content_hash(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()

    def to_csv(self) -> str:
        return "value,count\n" + "".join(f"{v},{c}\n" for v, c in sorted(self.counts.items()))


def wilson_interval(k: int, n: int, z: float = Z99) -> tuple[float, float]:
    if n == 0:
        return 0.0, 1.0
    phat = k / n
    denom = 1 + z * z / n
    centre = (phat + z * z / (2 * n)) / denom
    half = z * math.sqrt(phat * (1 - phat) / n + z * z / (4 * n * n)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


Verdict = Literal["consistent", "vacuous", "violated"]


@dataclass(frozen=True)
class BoundReport:
    name: str
    params: dict
    count: int
    trials: int
    bound: float
    histogram: Histogram | None = None

    @property
    def freq(self) -> float:
        return self.count / self.trials if self.trials else 0.0

    @property
    def ci(self) -> tuple[float, float]:
        return wilson_interval(self.count, self.trials)

    @property
    def verdict(self) -> Verdict:
        if self.ci[0] > self.bound:
            return "violated"
        if self.bound >= 1:
            return "vacuous"
        return "consistent"

    def to_json(self) -> dict:
        lo, hi = self.ci
        out = {
            "experiment": self.name,
            "params": self.params,
            "count": self.count,
            "trials": self.trials,
            "freq": self.freq,
            "ci99": [lo, hi],
            "bound": self.bound,
            "verdict": self.verdict,
        }
        if self.histogram is not None:
            out["histogram"] = self.histogram.to_json()
        return out


def _split(total: int, parts: int) -> list[int]:
    base, extra = divmod(total, parts)
    return [base + (1 if w < extra else 0) for w in range(parts)]


def _map_reduce(
    work: Callable[[np.random.Generator, int], Histogram],
    samples: int,
    seed: int,
    threads: int,
) -> Histogram:
    threads = max(1, int(threads))
    streams = SeededStream(seed).spawn(threads)
    sizes = _split(samples, threads)
    jobs = [(s.rng(), n) for s, n in zip(streams, sizes)]
    if threads == 1:
        parts = [work(r, n) for r, n in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda j: work(*j), jobs))
    out = Histogram()
    for h in parts:
        out = out.merge(h)
    return out


# -- distribution experiments ---------------------------------------------------------------


def c2_histogram_exhaustive(p: int, strategy=None) -> Histogram:
    if p > EXHAUSTIVE_MAX_P:
        raise TooLarge(f"exhaustive enumeration limited to p <= {EXHAUSTIVE_MAX_P}")
    h = Histogram(params={"kind": "c2_knot", "p": p, "mode": "exhaustive"})
    for perm in itertools.permutations(range(1, p + 1)):
        h.add(casson_c2(petal_to_diagram(perm), strategy))
    return h


def c2_bound(p: int) -> float:
    n = (p - 1) // 2
    return 8 / n ** 0.1 if n > 0 else math.inf


def lk_bound(m: int, n: int) -> float:
    return 6 / math.sqrt(min(m, n)) if min(m, n) > 0 else math.inf


def _pointmass_report(name: str, hist: Histogram, bound: float) -> BoundReport:
    _, top = hist.mode()
    return BoundReport(name, dict(hist.params), top, hist.total, bound, hist)


def distribution_experiment(
    kind: Literal["c2_knot", "lk_link"],
    sizes: int | Sequence[int],
    samples: int = 1000,
    seed: int = 0,
    threads: int = 1,
    exhaustive: bool = False,
) -> BoundReport:
    """Empirical point-mass distribution of ``c2`` (knots) or ``lk`` (links).

    ``sizes`` is ``p`` for knots and ``(m, n)`` for links.  The report's
    count is the largest histogram bin, compared with the theoretical bound
    on ``max_v P[X = v]``.
    """
    if kind == "c2_knot":
        p = int(sizes if isinstance(sizes, int) else sizes[0])
        if p < 1 or p % 2 == 0:
            raise ParamError(f"knots need an odd petal count, got {p}")
        if exhaustive:
            hist = c2_histogram_exhaustive(p)
        else:
            if p > KNOT_MAX_P:
                raise TooLarge(f"p={p} above the sampling limit {KNOT_MAX_P}")

            def work(rng, count):
                h = Histogram()
                for row in uniform_perms(p, count, rng):
                    h.add(casson_c2(petal_to_diagram(tuple(int(x) for x in row))))
                return h

            hist = _map_reduce(work, samples, seed, threads)
            hist.params = {"kind": kind, "p": p, "samples": samples, "seed": seed, "threads": threads}
        return _pointmass_report("c2_pointmass", hist, c2_bound(p))

    if kind == "lk_link":
        m, n = (int(sizes), int(sizes)) if isinstance(sizes, int) else map(int, sizes)
        size = 2 * m + 2 * n
        if exhaustive:
            if size > 10:
                raise TooLarge("exhaustive link enumeration limited to 10 arcs")
            hist = Histogram(params={"kind": kind, "m": m, "n": n, "mode": "exhaustive"})
            for perm in itertools.permutations(range(1, size + 1)):
                hist.add(linking_number(LinkPetalPermutation(perm, m, n)))
        else:

            def work(rng, count):
                h = Histogram()
                for start in range(0, count, 4096):
                    rows = uniform_perms(size, min(4096, count - start), rng)
                    vals, cnt = np.unique(linking_numbers_batch(rows, m), return_counts=True)
                    for v, c in zip(vals, cnt):
                        h.add(int(v), int(c))
                return h

            hist = _map_reduce(work, samples, seed, threads)
            hist.params = {
                "kind": kind, "m": m, "n": n, "samples": samples, "seed": seed, "threads": threads,
            }
        return _pointmass_report("lk_pointmass", hist, lk_bound(m, n))

    raise ParamError(f"unknown experiment kind {kind!r}")


def symmetry_zscores(hist: Histogram) -> dict[int, float]:
    """Per ``v > 0``: ``(c_v - c_{-v}) / sqrt(c_v + c_{-v})``."""
    out = {}
    for v in sorted(x for x in hist.counts if x > 0):
        a, b = hist.counts.get(v, 0), hist.counts.get(-v, 0)
        if a + b:
            out[v] = (a - b) / math.sqrt(a + b)
    return out


# -- lemma experiments -------------------------------------------------------------------------


def _match_work(m: int, n: int):
    size = 2 * m + 2 * n

    def work(rng, count):
        h = Histogram()
        for start in range(0, count, 2048):
            rows = uniform_perms(size, min(2048, count - start), rng) - 1
            in_i = rows < 2 * m
            mixed = (in_i[:, 0::2] != in_i[:, 1::2]).sum(axis=1)
            vals, cnt = np.unique(mixed, return_counts=True)
            for v, c in zip(vals, cnt):
                h.add(int(v), int(c))
        return h

    return work


def _cycle_work(big_n: int, k: int):
    def work(rng, count):
        h = Histogram()
        for start in range(0, count, 1024):
            rows = uniform_perms(big_n, min(1024, count - start), rng)
            pos = np.argsort(rows, axis=1)  # pos[:, v-1] = position of value v
            gap = np.abs(pos[:, 1 : 2 * k : 2] - pos[:, 0 : 2 * k : 2])
            good = ((4 * gap >= big_n) & (4 * gap <= 3 * big_n)).sum(axis=1)
            vals, cnt = np.unique(good, return_counts=True)
            for v, c in zip(vals, cnt):
                h.add(int(v), int(c))
        return h

    return work


def swap_candidates(n: int, k: int) -> list[int]:
    """The ``t`` of the swaps ``(1 2), (3 4), ...``: ``8k`` of them when they fit
    in ``S_{2n+1}``, otherwise as many as fit."""
    return [2 * i - 1 for i in range(1, min(8 * k, n) + 1)]


def _swaps_work(n: int, k: int):
    ts = swap_candidates(n, k)
    p = 2 * n + 1

    def work(rng, count):
        h = Histogram()
        for _ in range(count):
            perm = uniform_perm(p, rng)
            small = sum(1 for t in ts if abs(linking_number(smooth(perm, t).link)) < 2 * k * k)
            h.add(small)
        return h

    return work


def lemma_experiment(
    which: Literal["match", "cycle", "swaps"],
    params: dict,
    trials: int = 1000,
    seed: int = 0,
    threads: int = 1,
) -> BoundReport:
    """Frequency of the bad event of one of the auxiliary lemmas.

    * ``match`` (``m``, ``n``): a uniform perfect matching of ``2m+2n``
      points has fewer than ``min(m,n)/2`` mixed pairs; bound ``20/min(m,n)``.
    * ``cycle`` (``N``, ``K``): fewer than ``K/4`` of the pairs ``2i-1, 2i``
      (``i <= K``) sit at distance in ``[N/4, 3N/4]``; bound ``24/K``.
    * ``swaps`` (``n``, ``k``): more than ``7k`` of the ``8k`` swaps have
      ``|lk| < 2k^2``; bound ``3/k + 96k^2/sqrt(n)``.
    """
    if which == "match":
        m, n = int(params["m"]), int(params["n"])
        if min(m, n) < 1:
            raise ParamError("match needs m, n >= 1")
        hist = _map_reduce(_match_work(m, n), trials, seed, threads)
        low = min(m, n)
        count = sum(c for z, c in hist.counts.items() if z < low / 2)
        bound = 20 / low
    elif which == "cycle":
        big_n, k = int(params["N"]), int(params["K"])
        if not 1 <= k <= big_n / 2:
            raise ParamError("cycle needs 1 <= K <= N/2")
        hist = _map_reduce(_cycle_work(big_n, k), trials, seed, threads)
        count = sum(c for z, c in hist.counts.items() if z < k / 4)
        bound = 24 / k
    elif which == "swaps":
        n, k = int(params["n"]), int(params["k"])
        if not 1 <= k <= n / 8:
            raise ParamError("swaps needs 1 <= k <= n/8")
        hist = _map_reduce(_swaps_work(n, k), trials, seed, threads)
        count = sum(c for z, c in hist.counts.items() if z > 7 * k)
        bound = 3 / k + 96 * k * k / math.sqrt(n)
    else:
        raise ParamError(f"unknown lemma experiment {which!r}")
    hist.params = {"which": which, **params, "trials": trials, "seed": seed, "threads": threads}
    return BoundReport(which, dict(hist.params), count, trials, bound, hist)


# -- Littlewood-Offord ---------------------------------------------------------------------------

LO_MAX_T = 20


def lo_brute_force(a: Sequence[float]) -> int:
    """Most subset sums of ``a`` inside one open interval of length ``min|a_i|``."""
    t = len(a)
    if t > LO_MAX_T:
        raise TooLarge(f"t={t} exceeds {LO_MAX_T}")
    if t == 0:
        return 1
    arr = np.asarray(a, dtype=float)
    if np.any(arr == 0):
        raise ZeroEntry("entries must be non-zero")
    sums = np.zeros(1)
    for x in arr:
        sums = np.concatenate([sums, sums + x])
    sums.sort()
    width = float(np.min(np.abs(arr)))
    # an open interval of length w holds s_i..s_j iff s_j - s_i < w
    ends = np.searchsorted(sums, sums + width, side="left")
    return int(np.max(ends - np.arange(sums.size)))


def lo_bound(t: int) -> int:
    return math.comb(t, t // 2)


# -- the coupling procedure ------------------------------------------------------------------


@dataclass(frozen=True)
class CouplingTrace:
    n: int
    k: int
    perm: PetalPermutation
    candidates: tuple[int, ...]
    lk_before: tuple[int, ...]
    big: tuple[int, ...]  # t values of big swaps
    small_applied: tuple[int, ...]
    intermediate: PetalPermutation
    lk_intermediate: tuple[int, ...]  # for each big swap, against the intermediate π'
    eps: tuple[int, ...]
    big_applied: tuple[int, ...]
    final: PetalPermutation
    c2_intermediate: int
    c2_final: int

    @property
    def residual(self) -> int:
        applied = set(self.big_applied)
        first = sum(
            e * lk for t, e, lk in zip(self.big, self.eps, self.lk_intermediate) if t in applied
        )
        return self.c2_final - self.c2_intermediate - first

    def degradation_ok(self, slack: int | None = None) -> bool:
        """``|lk(L(π', τ))| >= |lk(L(π, τ))| - slack`` for every big swap;
        the default slack is ``7k``."""
        slack = 7 * self.k if slack is None else slack
        before = dict(zip(self.candidates, self.lk_before))
        return all(
            abs(after) >= abs(before[t]) - slack for t, after in zip(self.big, self.lk_intermediate)
        )

    def degradation_tight_ok(self) -> bool:
        """Same inequality with slack equal to the number of small swaps applied."""
        return self.degradation_ok(len(self.small_applied))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "perm": list(self.perm.heights),
            "candidates": list(self.candidates),
            "lk_before": list(self.lk_before),
            "big": list(self.big),
            "small_applied": list(self.small_applied),
            "intermediate": list(self.intermediate.heights),
            "lk_intermediate": list(self.lk_intermediate),
            "eps": list(self.eps),
            "big_applied": list(self.big_applied),
            "final": list(self.final.heights),
            "c2_final": self.c2_final,
            "residual": self.residual,
            "degradation_ok": self.degradation_ok(),
        }


def coupling_k(n: int) -> int:
    return math.ceil(n ** 0.2 / 8)


def coupling_procedure(n: int, seed: int = 0, substream: int = 0) -> CouplingTrace:
    """One run of the swap coupling: draw ``π``, find the big swaps among the
    candidates, apply a random subset of the small ones, then a random subset
    of the big ones."""
    if n < 1:
        raise ParamError("n must be positive")
    p = 2 * n + 1
    if p > KNOT_MAX_P:
        raise TooLarge(f"p={p} above {KNOT_MAX_P}")
    rng = SeededStream(seed, substream).rng()
    k = coupling_k(n)
    perm = uniform_perm(p, rng)
    ts = swap_candidates(n, k)
    lk0 = tuple(linking_number(smooth(perm, t).link) for t in ts)
    big = tuple(t for t, lk in zip(ts, lk0) if abs(lk) >= 2 * k * k)
    small = [t for t in ts if t not in big]
    small_mask = [t for t in small if rng.random() < 0.5]
    inter = perform_swaps(perm, [(t + 1) // 2 for t in small_mask])
    lk1 = tuple(linking_number(smooth(inter, t).link) for t in big)
    eps = tuple(swap_epsilon(inter, t) for t in big)
    big_mask = [t for t in big if rng.random() < 0.5]
    final = perform_swaps(inter, [(t + 1) // 2 for t in big_mask])
    c2i = casson_c2(petal_to_diagram(inter))
    c2f = casson_c2(petal_to_diagram(final))
    return CouplingTrace(
        n, k, perm, tuple(ts), lk0, big, tuple(small_mask), inter, lk1, eps, tuple(big_mask),
        final, c2i, c2f,
    )


def position_chisquare(perms: Sequence[PetalPermutation], position: int = 1):
    """Chi-square test that the height at ``position`` is uniform."""
    from scipy.stats import chisquare

    p = perms[0].p
    counts = Counter(perm.heights[position - 1] for perm in perms)
    observed = [counts.get(v, 0) for v in range(1, p + 1)]
    return chisquare(observed)
