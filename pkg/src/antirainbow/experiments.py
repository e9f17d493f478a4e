"""Seeded Monte-Carlo harness over binomial random graphs.

Trials are reproducible end to end: every trial derives its own seed from
the master seed through a splitmix64 step, each seed drives an independent
Mersenne Twister (``random.Random``), and edges are included by an exact
integer test, so a probability given as a fraction is hit exactly.
Records therefore only depend on (config, master_seed), never on ordering
or thread count.
"""

from __future__ import annotations

import csv
import io
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from random import Random
from typing import Callable, Iterable, Sequence

from .audit import rainbow_copy_search
from .coloring import anti_rainbow_coloring, is_proper_coloring
from .decompose import verify_decomposition
from .density import format_fraction
from .graphs import Graph, GraphInputError

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15

CSV_HEADER = [
    "trial",
    "seed",
    "n",
    "p",
    "edges",
    "m",
    "proper",
    "decomp_ok",
    "rainbow_found",
]


def splitmix64(x: int) -> int:
    """One splitmix64 output step (the mixing permutation of the state)."""
    z = (x + _GAMMA) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(master_seed: int, trial_index: int) -> int:
    """Per-trial seed: splitmix64 of the master state advanced trial_index steps."""
    return splitmix64((master_seed + _GAMMA * trial_index) & _MASK64)


def _as_probability(p: Fraction | str | float | int) -> Fraction:
    if isinstance(p, Fraction):
        prob = p
    elif isinstance(p, float):
        prob = Fraction(str(p))
    else:
        prob = Fraction(p)
    if not 0 <= prob <= 1:
        raise GraphInputError(f"probability {p!r} outside [0, 1]")
    return prob


def thread_cap() -> int:
    """Worker cap from RS_THREADS (default 1; records are order-insensitive)."""
    raw = os.environ.get("RS_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass(frozen=True)
class TrialConfig:
    n: int
    p: Fraction
    trials: int
    master_seed: int
    pattern: Graph | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise GraphInputError("trials must be >= 1")
        if not 0 <= self.p <= 1:
            raise GraphInputError("p must lie in [0, 1]")


@dataclass(frozen=True)
class TrialRecord:
    trial_index: int
    seed: int
    n: int
    p: Fraction
    edge_count: int
    skipped: bool = False
    contains_pattern: bool | None = None
    coloring_proper: bool | None = None
    decomposition_ok: bool | None = None
    rainbow_found: bool | None = None
    m_value: Fraction | None = None
    error: str | None = None

    def csv_row(self) -> list[str]:
        def flag(b: bool | None) -> str:
            return "" if b is None else str(int(b))

        return [
            str(self.trial_index),
            str(self.seed),
            str(self.n),
            format_fraction(self.p),
            str(self.edge_count),
            "" if self.m_value is None else format_fraction(self.m_value),
            flag(self.coloring_proper),
            flag(self.decomposition_ok),
            flag(
                self.rainbow_found
                if self.rainbow_found is not None
                else self.contains_pattern
            ),
        ]


def sample_gnp(n: int, p: Fraction | str | float | int, seed: int) -> Graph:
    """Binomial random graph: each pair kept with probability exactly p.

    The generator is random.Random(seed) (Mersenne Twister); a pair joins
    when randrange(q) < a for p = a/q in lowest terms, scanning pairs in
    lexicographic order.
    """
    prob = _as_probability(p)
    rng = Random(seed)
    a, q = prob.numerator, prob.denominator
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.randrange(q) < a:
                edges.append((u, v))
    return Graph(n, edges)


def contains_triangle(g: Graph) -> bool:
    masks = g.adjacency_masks()
    return any(masks[u] & masks[v] for u, v in g.edges)


def _run_trials(
    cfg: TrialConfig, one: Callable[[int, int], TrialRecord]
) -> list[TrialRecord]:
    indices = range(cfg.trials)
    seeds = [derive_seed(cfg.master_seed, i) for i in indices]
    workers = thread_cap()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(one, indices, seeds))
    else:
        records = [one(i, s) for i, s in zip(indices, seeds)]
    records.sort(key=lambda rec: rec.trial_index)
    return records


@dataclass(frozen=True)
class SweepPoint:
    """Aggregated outcome of the trials at one probability."""

    p: Fraction
    trials: int
    hits: int
    records: tuple[TrialRecord, ...] = field(repr=False, default=())

    @property
    def rate(self) -> Fraction:
        return Fraction(self.hits, self.trials)

    def to_json_dict(self) -> dict:
        return {
            "p": format_fraction(self.p),
            "trials": self.trials,
            "hits": self.hits,
            "rate": format_fraction(self.rate),
        }


def triangle_anti_ramsey_trial(cfg: TrialConfig) -> SweepPoint:
    """Empirical probability that G(n, p) contains a triangle.

    Containment is the whole story for triangles: every proper edge
    colouring of a triangle is rainbow, so the containment threshold and
    the anti-Ramsey threshold coincide.
    """

    def one(i: int, seed: int) -> TrialRecord:
        g = sample_gnp(cfg.n, cfg.p, seed)
        hit = contains_triangle(g)
        return TrialRecord(
            trial_index=i,
            seed=seed,
            n=cfg.n,
            p=cfg.p,
            edge_count=g.edge_count,
            contains_pattern=hit,
            rainbow_found=hit,
        )

    records = _run_trials(cfg, one)
    hits = sum(1 for rec in records if rec.contains_pattern)
    return SweepPoint(p=cfg.p, trials=cfg.trials, hits=hits, records=tuple(records))


def triangle_threshold_sweep(
    n: int,
    ps: Sequence[Fraction | str | float],
    trials: int,
    master_seed: int,
) -> list[SweepPoint]:
    """One triangle trial batch per probability, all from the same master seed."""
    points = []
    for j, p in enumerate(ps):
        cfg = TrialConfig(
            n=n,
            p=_as_probability(p),
            trials=trials,
            master_seed=derive_seed(master_seed, 1_000_003 * (j + 1)),
        )
        points.append(triangle_anti_ramsey_trial(cfg))
    return points


def coloring_sweep(cfg: TrialConfig) -> list[TrialRecord]:
    """Stress the full pipeline on random graphs; failures become records.

    Per trial: sample G(n, p); edgeless samples are recorded as skipped;
    otherwise run the decomposition and colouring, re-verify both, and
    search for a rainbow copy of the configured pattern if one is given.
    """

    def one(i: int, seed: int) -> TrialRecord:
        g = sample_gnp(cfg.n, cfg.p, seed)
        base = dict(
            trial_index=i, seed=seed, n=cfg.n, p=cfg.p, edge_count=g.edge_count
        )
        if g.edge_count == 0:
            return TrialRecord(skipped=True, **base)
        try:
            col, dec = anti_rainbow_coloring(g)
            proper = is_proper_coloring(g, col)
            decomp_ok = all(c.passed for c in verify_decomposition(g, dec))
            rainbow = None
            if cfg.pattern is not None and cfg.pattern.edge_count >= 1:
                rainbow = rainbow_copy_search(g, col, cfg.pattern) is not None
            return TrialRecord(
                coloring_proper=proper,
                decomposition_ok=decomp_ok,
                rainbow_found=rainbow,
                m_value=dec.m_value,
                **base,
            )
        except Exception as exc:  # record, never abort the sweep
            return TrialRecord(error=f"{type(exc).__name__}: {exc}", **base)

    return _run_trials(cfg, one)


def records_to_csv(records: Iterable[TrialRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in records:
        writer.writerow(rec.csv_row())
    return buf.getvalue()
