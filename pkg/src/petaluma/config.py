"""Experiment configurations used by the scripts in ``scripts/``."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from pathlib import Path


@dataclass(frozen=True)
class DistributionConfig:
    kind: str = "c2_knot"
    sizes: tuple[int, ...] = (5, 7, 9, 11, 15, 21)
    samples: int = 2000
    seed: int = 1
    threads: int = 4
    out_dir: Path = Path("results")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["out_dir"] = str(self.out_dir)
        return d


@dataclass(frozen=True)
class LemmaConfig:
    which: str = "match"
    grid: tuple[dict, ...] = field(
        default_factory=lambda: ({"m": 25, "n": 25}, {"m": 100, "n": 100}, {"m": 400, "n": 400})
    )
    trials: int = 10_000
    seed: int = 2
    threads: int = 4


@dataclass(frozen=True)
class CouplingConfig:
    n: int = 10
    runs: int = 200
    seed: int = 3
