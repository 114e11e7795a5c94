"""Text formats and result persistence.

Permutations: ``(1,3,5,2,4)``; links: ``(4,9,1,3,8,7,5,2,6,10; 2,3)``.
PD codes: ``X[a,b,c,d]`` tokens, first slot the incoming under-edge, slots
counterclockwise, edges numbered along the traversal.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import re
import time
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Iterable

from . import __version__
from .diagram import Crossing, KnotDiagram
from .errors import InconsistentCode, PDSyntaxError
from .petal_model import LinkPetalPermutation, PetalPermutation
from .polynomial import LaurentPolynomial, parse_polynomial

log = logging.getLogger(__name__)

SAFE_INT = 2**53
RESULTS_ENV = "PETALUMA_RESULTS"
DEFAULT_RESULTS = "petaluma-results.ndjson"


# -- permutations ------------------------------------------------------------------


def parse_perm(text: str) -> PetalPermutation:
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    if not body.strip():
        raise ValueError(f"empty permutation literal {text!r}")
    try:
        heights = tuple(int(x) for x in body.split(","))
    except ValueError as exc:
        raise ValueError(f"bad permutation literal {text!r}") from exc
    return PetalPermutation(heights)


def format_perm(perm: PetalPermutation) -> str:
    return str(perm)


def parse_link(text: str) -> LinkPetalPermutation:
    m = re.fullmatch(r"\s*\(([^;]*);\s*(\d+)\s*,\s*(\d+)\s*\)\s*", text)
    if not m:
        raise ValueError(f"bad link literal {text!r}; expected '(h1,...,hk; m,n)'")
    body = m.group(1).strip()
    heights = tuple(int(x) for x in body.split(",")) if body else ()
    return LinkPetalPermutation(heights, int(m.group(2)), int(m.group(3)))


def format_link(link: LinkPetalPermutation) -> str:
    return str(link)


# -- PD codes ----------------------------------------------------------------------------

_PD_TOKEN = re.compile(r"X\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]")


def parse_pd(text: str) -> KnotDiagram:
    """Parse a knot PD code.

    Over-strand direction is read from the numbering: the over-strand runs
    from slot 3 to slot 1 exactly when the slot-1 label follows the slot-3
    label along the knot.
    """
    stripped = re.sub(r"#.*", "", text)
    tokens = _PD_TOKEN.findall(stripped)
    leftover = _PD_TOKEN.sub("", stripped)
    leftover = re.sub(r"(PD|\[|\]|,|\s)", "", leftover)
    if leftover:
        raise PDSyntaxError(f"unexpected text in PD code: {leftover[:30]!r}")
    if not tokens:
        raise PDSyntaxError("no X[...] crossings found")
    quads = [tuple(int(v) for v in tok) for tok in tokens]
    counts: dict[int, int] = {}
    for q in quads:
        for e in q:
            counts[e] = counts.get(e, 0) + 1
    bad = sorted(e for e, c in counts.items() if c != 2)
    if bad:
        raise InconsistentCode(f"edges not appearing exactly twice: {bad}")
    n_edges = len(counts)
    labels = sorted(counts)
    if labels != list(range(labels[0], labels[0] + n_edges)):
        raise InconsistentCode("edge labels are not consecutive")
    lo = labels[0]

    def nxt(e):
        return lo + (e - lo + 1) % n_edges

    crossings = []
    for a, b, c, d in quads:
        if c != nxt(a) and not (a == c and n_edges == 1):
            raise InconsistentCode(f"under-strand {a}->{c} does not follow the numbering")
        if b == nxt(d):
            sign = 1
        elif d == nxt(b):
            sign = -1
        else:
            raise InconsistentCode(f"over-strand {b},{d} does not follow the numbering")
        crossings.append(Crossing((a, b, c, d), sign))
    try:
        diagram = KnotDiagram(tuple(crossings), base_edge=lo)
    except InconsistentCode:
        raise
    if diagram.n_components != 1:
        raise InconsistentCode("PD code does not describe a single closed traversal")
    return diagram


def format_pd(d: KnotDiagram) -> str:
    """PD text with edges renumbered 1..2n along the traversal."""
    r = d.relabeled(1)
    return "PD[" + ", ".join("X[{},{},{},{}]".format(*x.edges) for x in r.crossings) + "]"


def load_fixture(name: str) -> KnotDiagram:
    """Bundled PD fixture, e.g. ``"3_1"``, ``"granny"``."""
    text = resources.files("petaluma.data").joinpath(f"{name}.pd").read_text()
    return parse_pd(text)


def fixture_names() -> list[str]:
    return sorted(
        p.name[:-3] for p in resources.files("petaluma.data").iterdir() if p.name.endswith(".pd")
    )


# -- Gauss code --------------------------------------------------------------------------


def format_gauss(d: KnotDiagram) -> str:
    """One line per component of ``O<id><sign>``/``U<id><sign>`` tokens."""
    lines = []
    for comp in d.gauss_code():
        lines.append(
            " ".join(f"{'O' if o == 'O' else 'U'}{i + 1}{'+' if s > 0 else '-'}" for i, o, s in comp)
        )
    return "\n".join(lines)


# -- polynomials and JSON ------------------------------------------------------------------


def format_polynomial(poly: LaurentPolynomial) -> str:
    return str(poly)


def parse_poly(text: str, var: str = "t") -> LaurentPolynomial:
    return parse_polynomial(text, var)


def json_int(v: int) -> int | str:
    """Integers beyond 53 bits go out as strings so JSON readers keep them exact."""
    return str(v) if abs(v) >= SAFE_INT else v


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, int):
        return json_int(obj)
    if isinstance(obj, LaurentPolynomial):
        return [[to_jsonable(e) if isinstance(e, int) else str(e), json_int(c)] for e, c in obj.to_pairs()]
    if isinstance(obj, (PetalPermutation,)):
        return list(obj.heights)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "to_json"):
        return to_jsonable(obj.to_json())
    if hasattr(obj, "__dataclass_fields__"):
        return to_jsonable(asdict(obj))
    return str(obj)


def dumps(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, separators=(",", ":"))


# -- persistence ------------------------------------------------------------------------------


@dataclass
class ResultRecord:
    subcommand: str
    params: dict
    payload: Any
    timestamp: float = field(default_factory=time.time)
    version: str = __version__
    hash: str = ""

    def __post_init__(self):
        if not self.hash:
            self.hash = content_hash(self.subcommand, self.params, self.payload)

    def to_line(self) -> str:
        return json.dumps(
            {
                "timestamp": self.timestamp,
                "version": self.version,
                "subcommand": self.subcommand,
                "params": to_jsonable(self.params),
                "payload": to_jsonable(self.payload),
                "hash": self.hash,
            },
            sort_keys=True,
        )

    @classmethod
    def from_line(cls, line: str) -> "ResultRecord":
        raw = json.loads(line)
        return cls(
            subcommand=raw["subcommand"],
            params=raw["params"],
            payload=raw["payload"],
            timestamp=raw["timestamp"],
            version=raw["version"],
            hash=raw["hash"],
        )


def content_hash(subcommand: str, params: dict, payload: Any) -> str:
    """sha256 over subcommand, parameters and payload (never the timestamp)."""
    blob = dumps({"subcommand": subcommand, "params": params, "payload": payload})
    return hashlib.sha256(blob.encode()).hexdigest()


def results_path(path: str | os.PathLike | None = None) -> Path:
    return Path(path or os.environ.get(RESULTS_ENV) or DEFAULT_RESULTS)


def persist_result(record: ResultRecord, path: str | os.PathLike | None = None) -> bool:
    """Append ``record``; returns ``False`` (and logs a note) if an identical
    hash is already present."""
    target = results_path(path)
    duplicate = any(r.hash == record.hash for r in load_results(path=target))
    if duplicate:
        log.info("result %s already recorded; appending duplicate", record.hash[:12])
    target.parent.mkdir(parents=True, exist_ok=True)
    with target.open("a") as fh:
        fh.write(record.to_line() + "\n")
    return not duplicate


def load_results(
    subcommand: str | None = None,
    params: dict | None = None,
    path: str | os.PathLike | None = None,
) -> list[ResultRecord]:
    """Read the log, skipping unreadable lines with a warning."""
    target = results_path(path)
    if not target.exists():
        return []
    out = []
    with target.open() as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rec = ResultRecord.from_line(line)
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                log.warning("%s:%d: skipping corrupted record (%s)", target, lineno, exc)
                continue
            if subcommand is not None and rec.subcommand != subcommand:
                continue
            if params is not None and any(
                rec.params.get(k) != to_jsonable(v) for k, v in params.items()
            ):
                continue
            out.append(rec)
    return out


def iter_pd_files(paths: Iterable[str]) -> Iterable[tuple[str, KnotDiagram]]:
    for p in paths:
        yield p, parse_pd(Path(p).read_text())
