#!/usr/bin/env python3
"""Petalize every bundled fixture (or given PD files) and check the invariants."""

import sys
import time

from petaluma.invariants import alexander_polynomial, kauffman_jones
from petaluma.io import fixture_names, iter_pd_files, load_fixture
from petaluma.petal_model import petal_to_diagram
from petaluma.petalize import petalize


def main(paths):
    items = list(iter_pd_files(paths)) if paths else [(n, load_fixture(n)) for n in fixture_names()]
    bad = 0
    for name, d in items:
        for variant in ("tree", "simple"):
            start = time.perf_counter()
            perm = petalize(d, variant)
            out = petal_to_diagram(perm)
            same = alexander_polynomial(out) == alexander_polynomial(d)
            if d.n_crossings <= 16 and perm.p <= 9:
                same &= kauffman_jones(out) == kauffman_jones(d)
            bad += not same
            print(
                f"{name:10s} {variant:6s} c={d.n_crossings:2d} p={perm.p:2d} "
                f"{'ok ' if same else 'BAD'} {time.perf_counter() - start:.2f}s  {perm}"
            )
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
