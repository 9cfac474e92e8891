"""Sequential measurement chains: exact outcome distributions and seeded sampling."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._kernels import get_kernel
from .core import Context, Modality, born_probability, transition_table
from .linalg import DimensionMismatch

MAX_STEPS = 12
MAX_OUTCOME_TUPLES = 1 << 24
ZERO_SNAP = 1e-14


class ChainTooLong(ValueError):
    pass


@dataclass(frozen=True)
class Chain:
    initial: Modality
    steps: tuple[Context, ...]

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        if not self.steps:
            raise ValueError("a chain needs at least one measurement step")
        for c in self.steps:
            if c.dim != self.initial.dim:
                raise DimensionMismatch(f"step dim {c.dim} != initial modality dim {self.initial.dim}")
        if len(self.steps) > MAX_STEPS or self.dim ** len(self.steps) > MAX_OUTCOME_TUPLES:
            raise ChainTooLong(
                f"{len(self.steps)} steps at dim {self.dim} exceeds the outcome-tuple budget "
                f"(max {MAX_STEPS} steps, {MAX_OUTCOME_TUPLES} tuples)"
            )

    @property
    def dim(self) -> int:
        return self.initial.dim

    def step_tables(self) -> list[np.ndarray]:
        """Per-step conditional tables ``T[m, n]`` = P(outcome m | previous outcome n).

        Step 0 has a single column holding the distribution given the
        initial modality.
        """
        first = np.array([[born_probability(self.initial, p)] for p in self.steps[0].projectors])
        tables = [first]
        for prev, cur in zip(self.steps, self.steps[1:]):
            tables.append(transition_table(prev, cur).p)
        return tables


@dataclass(frozen=True)
class OutcomeDistribution:
    """Probabilities over outcome tuples, stored densely with one axis per step."""

    probs: np.ndarray

    @property
    def n_steps(self) -> int:
        return self.probs.ndim

    def __getitem__(self, outcome) -> float:
        return float(self.probs[tuple(outcome)])

    def entries(self) -> dict[tuple[int, ...], float]:
        return {idx: float(p) for idx, p in np.ndenumerate(self.probs)}

    def total(self) -> float:
        return float(self.probs.sum())

    def marginal(self, step: int) -> np.ndarray:
        axes = tuple(a for a in range(self.n_steps) if a != step)
        return self.probs.sum(axis=axes)

    def tv_distance(self, other: OutcomeDistribution) -> float:
        if self.probs.shape != other.probs.shape:
            raise DimensionMismatch("distributions over different outcome spaces")
        return float(0.5 * np.abs(self.probs - other.probs).sum())


def run_chain_exact(chain: Chain) -> OutcomeDistribution:
    tables = chain.step_tables()
    joint = tables[0][:, 0]
    for t in tables[1:]:
        # joint[..., n] * P(m | n) -> new[..., n, m]
        joint = joint[..., None] * t.T
    return OutcomeDistribution(joint)


def sampling_cdf(chain: Chain) -> np.ndarray:
    n = chain.dim
    cdf = np.zeros((len(chain.steps), n, n))
    for s, t in enumerate(chain.step_tables()):
        cond = np.where(t < ZERO_SNAP, 0.0, t).T  # rows: previous outcome
        cdf[s, : cond.shape[0]] = np.cumsum(cond, axis=1)
    cdf[:, :, -1] = 1.0
    return np.ascontiguousarray(cdf)


@dataclass(frozen=True)
class SampleCounts:
    counts: dict[tuple[int, ...], int]
    samples: int
    seed: int

    def frequency(self, outcome) -> float:
        return self.counts.get(tuple(outcome), 0) / self.samples


def _decode(code: int, n: int, k: int) -> tuple[int, ...]:
    digits = []
    for _ in range(k):
        code, d = divmod(code, n)
        digits.append(d)
    return tuple(reversed(digits))


def sample_chain(chain: Chain, samples: int, seed: int, workers: int = 1, backend: str | None = None) -> SampleCounts:
    """Draw ``samples`` trajectories; trajectory t uses a random stream keyed on (seed, t).

    Counts are identical for any ``workers`` and either backend.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    if workers < 1:
        raise ValueError("workers must be positive")
    kernel = get_kernel(backend)
    cdf = sampling_cdf(chain)
    bounds = np.linspace(0, samples, min(workers, samples) + 1).astype(np.int64)
    spans = list(zip(bounds[:-1].tolist(), bounds[1:].tolist()))

    def run(span):
        codes = kernel(cdf, seed, span[0], span[1])
        return np.unique(codes, return_counts=True)

    if len(spans) == 1:
        parts = [run(spans[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(spans)) as pool:
            parts = list(pool.map(run, spans))

    merged: dict[int, int] = {}
    for codes, cnt in parts:
        for c, k in zip(codes.tolist(), cnt.tolist()):
            merged[c] = merged.get(c, 0) + k
    n, k = chain.dim, len(chain.steps)
    counts = {_decode(c, n, k): merged[c] for c in sorted(merged)}
    return SampleCounts(counts, samples, seed)


def max_binomial_z(exact: OutcomeDistribution, sampled: SampleCounts) -> float:
    """Largest |f - p| / sqrt(p (1 - p) / n) over outcome tuples.

    Returns inf if an outcome with exact probability 0 (or 1) was contradicted.
    """
    n = sampled.samples
    worst = 0.0
    for outcome, p in exact.entries().items():
        f = sampled.frequency(outcome)
        var = p * (1.0 - p) / n
        if var <= 0.0:
            if abs(f - p) > 1e-12:
                return float("inf")
            continue
        worst = max(worst, abs(f - p) / np.sqrt(var))
    return worst


@dataclass(frozen=True)
class OrderingComparison:
    original: OutcomeDistribution
    permuted: OutcomeDistribution
    tv_distance: float


def ordering_comparison(initial: Modality, contexts, permutation) -> OrderingComparison:
    contexts = list(contexts)
    permutation = [int(i) for i in permutation]
    if sorted(permutation) != list(range(len(contexts))):
        raise ValueError(f"invalid permutation {permutation} for {len(contexts)} contexts")
    a = run_chain_exact(Chain(initial, tuple(contexts)))
    b = run_chain_exact(Chain(initial, tuple(contexts[i] for i in permutation)))
    return OrderingComparison(a, b, a.tv_distance(b))

