#!/usr/bin/env python3
"""Run the swap coupling many times and summarize big swaps, residuals and uniformity."""

import argparse
from collections import Counter

from petaluma.config import CouplingConfig
from petaluma.sampling import coupling_procedure, position_chisquare


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=CouplingConfig.n)
    ap.add_argument("--runs", type=int, default=CouplingConfig.runs)
    ap.add_argument("--seed", type=int, default=CouplingConfig.seed)
    args = ap.parse_args()
    traces = [coupling_procedure(args.n, args.seed, s) for s in range(args.runs)]
    k = traces[0].k
    print(f"n={args.n} p={2 * args.n + 1} k={k} candidates={len(traces[0].candidates)} runs={args.runs}")
    print("big swaps per run:", dict(sorted(Counter(len(t.big) for t in traces).items())))
    print("residuals:", dict(sorted(Counter(t.residual for t in traces).items())))
    print("degradation (7k) holds:", sum(t.degradation_ok() for t in traces), "/", args.runs)
    for pos in (1, args.n + 1):
        res = position_chisquare([t.final for t in traces], pos)
        print(f"uniformity of height at position {pos}: chi2={res.statistic:.1f} p={res.pvalue:.3f}")


if __name__ == "__main__":
    main()
