"""Classical random walks: exact chain propagation, sampling, hitting times.

The transition rule is degree-uniform: probability mass at a vertex splits
equally over its neighbors, which on the line interior is the fair +-1
coin-toss walk. Exact propagation is the oracle for every sampled result
and for the quantum classical-limit checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import BoundaryOverflowError
from .graphs import Graph


@dataclass
class ClassicalDistribution:
    """Position probabilities after a fixed number of steps."""

    probabilities: np.ndarray
    step_index: int
    graph: Graph


def transition_matrix(g: Graph) -> np.ndarray:
    """Row-stochastic matrix T[v, u] = 1/degree(v) for each edge (v, u)."""
    degrees = np.array([g.degree(v) for v in range(g.num_vertices)], dtype=float)
    if np.any(degrees == 0):
        raise ValueError("graph has an isolated vertex; walk undefined there")
    t = g.adjacency_matrix()
    return t / degrees[:, None]


def _check_line_range(g: Graph, start: int, steps: int) -> None:
    # the path stands in for the infinite line: the walker may reach an end
    # vertex on the final step but must never step from one
    if g.kind != "line":
        return
    if start - steps < 0 or start + steps > g.num_vertices - 1:
        raise BoundaryOverflowError(
            f"start {start} plus {steps} steps exceeds line of "
            f"{g.num_vertices} positions; enlarge the graph")


def evolve_classical_exact(g: Graph, start: int, steps: int) -> ClassicalDistribution:
    """Exact distribution after ``steps`` moves of the degree-uniform chain."""
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    if not 0 <= start < g.num_vertices:
        raise ValueError(f"start vertex {start} out of range")
    _check_line_range(g, start, steps)
    t = transition_matrix(g)
    p = np.zeros(g.num_vertices)
    p[start] = 1.0
    for _ in range(steps):
        p = p @ t
    return ClassicalDistribution(p, steps, g)


def iter_classical_distributions(g: Graph, start: int):
    """Yield the exact distribution after step 1, 2, ... indefinitely."""
    if not 0 <= start < g.num_vertices:
        raise ValueError(f"start vertex {start} out of range")
    t = transition_matrix(g)
    p = np.zeros(g.num_vertices)
    p[start] = 1.0
    while True:
        p = p @ t
        yield p.copy()


def sample_walk(g: Graph, start: int, steps: int, seed: int) -> np.ndarray:
    """One seeded walk path of length steps+1, uniform neighbor choice each move."""
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    if not 0 <= start < g.num_vertices:
        raise ValueError(f"start vertex {start} out of range")
    rng = np.random.default_rng(seed)
    path = np.empty(steps + 1, dtype=np.int64)
    path[0] = v = start
    for k in range(1, steps + 1):
        nbrs = g.neighbors(v)
        v = nbrs[rng.integers(len(nbrs))]
        path[k] = v
    return path


def sample_endpoint_histogram(g: Graph, start: int, steps: int,
                              num_samples: int, seed: int) -> np.ndarray:
    """Empirical endpoint distribution over independent walks.

    Walk i uses seed ``seed + i`` so any single walk can be reproduced.
    """
    if num_samples < 1:
        raise ValueError(f"num_samples must be >= 1, got {num_samples}")
    counts = np.zeros(g.num_vertices)
    neighbor_lists = [np.array(g.neighbors(v), dtype=np.int64)
                      for v in range(g.num_vertices)]
    for i in range(num_samples):
        rng = np.random.default_rng(seed + i)
        v = start
        for _ in range(steps):
            nbrs = neighbor_lists[v]
            v = int(nbrs[rng.integers(len(nbrs))])
        counts[v] += 1
    return counts / num_samples


def hitting_time_exact(g: Graph, start: int, target: int) -> float:
    """Expected steps to first reach the target, by absorbing-chain solve.

    Makes the target absorbing and solves (I - Q) tau = 1 over the
    transient vertices.
    """
    for v in (start, target):
        if not 0 <= v < g.num_vertices:
            raise ValueError(f"vertex {v} out of range")
    if start == target:
        return 0.0
    t = transition_matrix(g)
    transient = np.array([v for v in range(g.num_vertices) if v != target])
    q = t[np.ix_(transient, transient)]
    tau = scipy.linalg.solve(np.eye(len(transient)) - q, np.ones(len(transient)))
    return float(tau[int(np.searchsorted(transient, start))])


@dataclass
class HittingTimeResult:
    """Sampled first-passage summary; capped walks are counted, not dropped."""

    mean: float | None
    std_error: float | None
    completed: int
    censored: int
    cap: int

    @property
    def censored_fraction(self) -> float:
        total = self.completed + self.censored
        return self.censored / total if total else 0.0


def hitting_time(g: Graph, start: int, target: int, seed: int,
                 num_samples: int, cap: int = 10 ** 6) -> HittingTimeResult:
    """Mean first-passage steps over seeded sample walks.

    Walks that have not hit the target after ``cap`` steps are censored;
    the mean covers completed walks only and the censored count is part of
    the result.
    """
    if num_samples < 1:
        raise ValueError(f"num_samples must be >= 1, got {num_samples}")
    if cap < 1:
        raise ValueError(f"cap must be >= 1, got {cap}")
    for v in (start, target):
        if not 0 <= v < g.num_vertices:
            raise ValueError(f"vertex {v} out of range")
    if start == target:
        return HittingTimeResult(0.0, 0.0, num_samples, 0, cap)
    neighbor_lists = [np.array(g.neighbors(v), dtype=np.int64)
                      for v in range(g.num_vertices)]
    hits: list[int] = []
    censored = 0
    for i in range(num_samples):
        rng = np.random.default_rng(seed + i)
        v = start
        for step in range(1, cap + 1):
            nbrs = neighbor_lists[v]
            v = int(nbrs[rng.integers(len(nbrs))])
            if v == target:
                hits.append(step)
                break
        else:
            censored += 1
    if not hits:
        return HittingTimeResult(None, None, 0, censored, cap)
    mean = float(np.mean(hits))
    std_error = float(np.std(hits, ddof=1) / np.sqrt(len(hits))) if len(hits) > 1 else None
    return HittingTimeResult(mean, std_error, len(hits), censored, cap)
