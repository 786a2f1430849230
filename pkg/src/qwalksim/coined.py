"""Discrete-time coined walk engine.

The walker state lives on half-edges: one complex amplitude per (vertex,
direction) pair, where direction c at vertex v points to ``neighbors(v)[c]``.
A step first mixes directions at every vertex with a unitary coin, then
moves each amplitude along its edge. The shift relabels the coin on
arrival so that on a path graph direction 0 keeps travelling towards lower
coordinates and direction 1 towards higher ones; on any graph it is a
permutation of half-edges, so the step operator stays unitary.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse

from .errors import BoundaryOverflowError, UnsupportedDegreeError
from .graphs import Graph

COIN_FAMILIES = ("default", "hadamard", "grover", "dft")

INITIAL_COIN_PRESETS = ("basis0", "symmetric", "uniform")


def hadamard_coin() -> np.ndarray:
    return np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)


def grover_coin(degree: int) -> np.ndarray:
    """Reflection about the uniform direction state, 2/d - delta_ij."""
    if degree < 1:
        raise ValueError(f"degree must be >= 1, got {degree}")
    return 2.0 / degree * np.ones((degree, degree)) - np.eye(degree)


def dft_coin(degree: int) -> np.ndarray:
    """Discrete Fourier transform coin; equals the Hadamard coin at degree 2."""
    if degree < 1:
        raise ValueError(f"degree must be >= 1, got {degree}")
    jk = np.outer(np.arange(degree), np.arange(degree))
    return np.exp(2j * np.pi * jk / degree) / np.sqrt(degree)


def coin_matrix(family: str, degree: int) -> np.ndarray:
    """Coin unitary for one vertex of the given degree.

    ``default`` picks the Hadamard coin on degree-2 vertices and the Grover
    coin elsewhere. The Hadamard family is only defined at degree 2.
    """
    if family not in COIN_FAMILIES:
        raise ValueError(f"coin family must be one of {COIN_FAMILIES}, got {family!r}")
    if degree < 1:
        raise ValueError(f"degree must be >= 1, got {degree}")
    if family == "default":
        family = "hadamard" if degree == 2 else "grover"
    if family == "hadamard":
        if degree != 2:
            raise UnsupportedDegreeError(
                f"hadamard coin needs degree 2, got degree {degree}")
        return hadamard_coin()
    if family == "grover":
        return grover_coin(degree)
    return dft_coin(degree)


class PureState:
    """Half-edge amplitude vector tied to a graph."""

    def __init__(self, graph: Graph, amplitudes: np.ndarray):
        amplitudes = np.asarray(amplitudes, dtype=np.complex128)
        if amplitudes.shape != (graph.half_edge_count,):
            raise ValueError(
                f"amplitudes must have shape ({graph.half_edge_count},), "
                f"got {amplitudes.shape}")
        self.graph = graph
        self.amplitudes = amplitudes

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def amplitude(self, vertex: int, direction: int) -> complex:
        return complex(self.amplitudes[self.graph.half_edge(vertex, direction)])

    def position_distribution(self) -> np.ndarray:
        """Probability of finding the walker at each vertex (coin traced out)."""
        weights = np.abs(self.amplitudes) ** 2
        return np.bincount(self.graph.half_edge_vertex, weights=weights,
                           minlength=self.graph.num_vertices)

    def copy(self) -> "PureState":
        return PureState(self.graph, self.amplitudes.copy())


def initial_state(graph: Graph, vertex: int, coin: str | np.ndarray = "basis0") -> PureState:
    """Walker localized at one vertex with the given coin amplitudes.

    ``coin`` is a preset name or an explicit unit vector of length
    degree(vertex). Presets: ``basis0`` puts all weight on direction 0;
    ``symmetric`` is (|0> + i|1>)/sqrt(2), the degree-2 choice whose walk
    distribution is left-right symmetric; ``uniform`` weights every
    direction equally.
    """
    d = graph.degree(vertex)
    if d == 0:
        raise ValueError(f"vertex {vertex} has degree 0; no coin directions exist")
    if isinstance(coin, str):
        if coin not in INITIAL_COIN_PRESETS:
            raise ValueError(
                f"coin preset must be one of {INITIAL_COIN_PRESETS}, got {coin!r}")
        if coin == "basis0":
            vec = np.zeros(d, dtype=np.complex128)
            vec[0] = 1.0
        elif coin == "symmetric":
            if d != 2:
                raise UnsupportedDegreeError(
                    f"symmetric coin preset needs degree 2, got degree {d}")
            vec = np.array([1.0, 1.0j]) / np.sqrt(2.0)
        else:
            vec = np.full(d, 1.0 / np.sqrt(d), dtype=np.complex128)
    else:
        vec = np.asarray(coin, dtype=np.complex128)
        if vec.shape != (d,):
            raise ValueError(
                f"coin amplitudes must have shape ({d},) at vertex {vertex}, "
                f"got {vec.shape}")
        if not np.isclose(np.linalg.norm(vec), 1.0):
            raise ValueError("coin amplitudes must be a unit vector")
    amps = np.zeros(graph.half_edge_count, dtype=np.complex128)
    off = graph.coin_offset(vertex)
    amps[off:off + d] = vec
    return PureState(graph, amps)


def _apply_coin(block: np.ndarray, coin_t: np.ndarray) -> np.ndarray:
    """Right-multiply a (m, d) amplitude block by a transposed coin.

    Degree 2 is expanded elementwise instead of using matmul: BLAS kernels
    may fuse multiply-adds, leaving a one-ulp residue where opposite-sign
    products should cancel bit-exactly (the interference zeros).
    """
    if coin_t.shape[0] == 2:
        b0 = block[:, 0]
        b1 = block[:, 1]
        out = np.empty_like(block)
        out[:, 0] = b0 * coin_t[0, 0] + b1 * coin_t[1, 0]
        out[:, 1] = b0 * coin_t[0, 1] + b1 * coin_t[1, 1]
        return out
    return block @ coin_t


class CoinedWalk:
    """Precompiled coin and shift maps for repeated stepping on one graph."""

    def __init__(self, graph: Graph, coin: str = "default"):
        self.graph = graph
        self.coin_family = coin

        by_degree: dict[int, list[int]] = {}
        for v in range(graph.num_vertices):
            d = graph.degree(v)
            if d > 0:
                by_degree.setdefault(d, []).append(v)
        # per degree: (half-edge index block (m, d), transposed coin); the
        # coin may be None for degrees the family does not support, which is
        # an error only if amplitude ever sits on such a vertex
        self._coin_plan: list[tuple[np.ndarray, np.ndarray | None]] = []
        for d, vertices in sorted(by_degree.items()):
            offs = np.array([graph.coin_offset(v) for v in vertices])
            idx = offs[:, None] + np.arange(d)[None, :]
            try:
                coin_t = coin_matrix(coin, d).T.copy()
            except UnsupportedDegreeError:
                coin_t = None
            self._coin_plan.append((idx, coin_t))

        # shift half-edge s=(v,c) to (u, deg(u)-1-slot(v at u)); a permutation
        target = np.empty(graph.half_edge_count, dtype=np.int64)
        for v in range(graph.num_vertices):
            for c, u in enumerate(graph.neighbors(v)):
                back = graph.direction_index(u, v)
                target[graph.half_edge(v, c)] = graph.half_edge(u, graph.degree(u) - 1 - back)
        self._shift_target = target
        self._shift_source = np.empty_like(target)
        self._shift_source[target] = np.arange(graph.half_edge_count)

    def coin_toss(self, amps: np.ndarray) -> np.ndarray:
        out = amps.copy()
        for idx, coin_t in self._coin_plan:
            if coin_t is None:
                if np.any(amps[idx]):
                    raise UnsupportedDegreeError(
                        f"{self.coin_family} coin undefined for degree "
                        f"{idx.shape[1]} but amplitude occupies such a vertex")
                continue
            out[idx] = _apply_coin(amps[idx], coin_t)
        return out

    def shift(self, amps: np.ndarray) -> np.ndarray:
        return amps[self._shift_source]

    def step_amplitudes(self, amps: np.ndarray) -> np.ndarray:
        return self.shift(self.coin_toss(amps))

    def inverse_step_amplitudes(self, amps: np.ndarray) -> np.ndarray:
        out = amps[self._shift_target]
        undone = out.copy()
        for idx, coin_t in self._coin_plan:
            if coin_t is None:
                if np.any(out[idx]):
                    raise UnsupportedDegreeError(
                        f"{self.coin_family} coin undefined for degree "
                        f"{idx.shape[1]} but amplitude occupies such a vertex")
                continue
            undone[idx] = _apply_coin(out[idx], coin_t.conj().T)
        return undone

    def evolve(self, state: PureState, steps: int) -> PureState:
        if steps < 0:
            raise ValueError(f"steps must be >= 0, got {steps}")
        _check_line_headroom(state, steps)
        amps = state.amplitudes
        for _ in range(steps):
            amps = self.step_amplitudes(amps)
        return PureState(self.graph, amps)

    def iter_steps(self, state: PureState, steps: int):
        """Yield the state after each of ``steps`` sequential steps."""
        if steps < 0:
            raise ValueError(f"steps must be >= 0, got {steps}")
        _check_line_headroom(state, steps)
        amps = state.amplitudes
        for _ in range(steps):
            amps = self.step_amplitudes(amps)
            yield PureState(self.graph, amps)

    def step_matrix(self) -> scipy.sparse.csr_matrix:
        """The unitary for one step as a sparse matrix over half-edges."""
        n = self.graph.half_edge_count
        coin = scipy.sparse.lil_matrix((n, n), dtype=np.complex128)
        for idx, coin_t in self._coin_plan:
            if coin_t is None:
                raise UnsupportedDegreeError(
                    f"{self.coin_family} coin undefined for degree "
                    f"{idx.shape[1]}; cannot assemble a full step operator")
            block = coin_t.T
            for row in idx:
                coin[np.ix_(row, row)] = block
        shift = scipy.sparse.csr_matrix(
            (np.ones(n), (self._shift_target, np.arange(n))), shape=(n, n),
            dtype=np.complex128)
        return (shift @ coin.tocsr()).tocsr()


def _check_line_headroom(state: PureState, steps: int) -> None:
    """Refuse a run whose support would spill past the ends of a path graph.

    A path stands in for the infinite line, so reaching an end vertex is
    only allowed on the final step; one more step would reflect and silently
    diverge from the line walk.
    """
    g = state.graph
    if g.kind != "line" or g.num_vertices < 2 or steps == 0:
        return
    occupied = np.flatnonzero(state.position_distribution() > 0.0)
    if occupied.size == 0:
        return
    lo, hi = int(occupied[0]), int(occupied[-1])
    if lo - steps < 0 or hi + steps > g.num_vertices - 1:
        raise BoundaryOverflowError(
            f"support [{lo}, {hi}] plus {steps} steps exceeds line of "
            f"{g.num_vertices} positions; enlarge the graph")


def coin_toss(state: PureState, coin: str = "default") -> PureState:
    """Apply the per-vertex coin unitary without moving the walker."""
    return PureState(state.graph, CoinedWalk(state.graph, coin).coin_toss(state.amplitudes))


def shift(state: PureState) -> PureState:
    """Move every amplitude along its edge, relabelling the coin on arrival."""
    return PureState(state.graph, CoinedWalk(state.graph).shift(state.amplitudes))


def step(state: PureState, coin: str = "default") -> PureState:
    """One walk step: coin toss, then shift."""
    _check_line_headroom(state, 1)
    return PureState(state.graph, CoinedWalk(state.graph, coin).step_amplitudes(state.amplitudes))


def evolve(state: PureState, steps: int, coin: str = "default") -> PureState:
    """Run ``steps`` walk steps and return the final state."""
    return CoinedWalk(state.graph, coin).evolve(state, steps)
