"""Flooding sum-product decoding on a Tanner graph.

LLR convention: positive means bit 0 is more likely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .tanner_graph import TannerGraph

MAX_ITERATIONS = 2000
LLR_MAX = 30.0  # clamp for channel LLRs and inside the tanh rule


@dataclass
class DecodeResult:
    hard_decision: np.ndarray
    iterations_used: int
    syndrome_zero: bool
    posterior: np.ndarray


def bsc_llr(received, epsilon: float) -> np.ndarray:
    if not 0.0 < epsilon < 0.5:
        raise ValueError(f"crossover probability {epsilon} outside (0, 0.5)")
    mag = min(math.log((1.0 - epsilon) / epsilon), LLR_MAX)
    bits = np.asarray(received, dtype=np.int8)
    return np.where(bits == 0, mag, -mag)


def awgn_llr(received, noise_sigma: float) -> np.ndarray:
    """BPSK (0 -> +1, 1 -> -1) channel LLRs ``2y / sigma^2``."""
    if not noise_sigma > 0:
        raise ValueError(f"noise sigma must be positive, got {noise_sigma}")
    y = np.asarray(received, dtype=np.float64)
    return np.clip(2.0 * y / noise_sigma**2, -LLR_MAX, LLR_MAX)


def _padded(groups: list[list[int]], fill: int) -> np.ndarray:
    width = max((len(g) for g in groups), default=0)
    out = np.full((len(groups), max(width, 1)), fill, dtype=np.int64)
    for i, g in enumerate(groups):
        out[i, : len(g)] = g
    return out


class BPDecoder:
    """Sum-product decoder with index tables precomputed for one graph."""

    def __init__(self, graph: TannerGraph):
        if any(len(a) == 1 for a in graph.check_adj):
            raise ValueError("degree-1 check nodes are not supported")
        self.n, self.m = graph.n, graph.m
        edges = graph.edges()
        self.n_edges = E = len(edges)
        self.edge_var = np.array([s for _, s in edges], dtype=np.int64)
        by_check: list[list[int]] = [[] for _ in range(graph.m)]
        by_var: list[list[int]] = [[] for _ in range(graph.n)]
        for e, (c, s) in enumerate(edges):
            by_check[c].append(e)
            by_var[s].append(e)
        # padding points at a dummy slot E holding tanh 1 / message 0
        self.check_edges = _padded(by_check, E)
        self.var_edges = _padded(by_var, E)
        self.check_vars = _padded(graph.check_adj, graph.n)

    def syndrome(self, word) -> np.ndarray:
        w = np.asarray(word, dtype=np.uint8)
        if w.shape != (self.n,):
            raise ValueError(f"word length {w.shape} != ({self.n},)")
        return np.bitwise_xor.reduce(np.append(w, 0)[self.check_vars], axis=1)

    def decode(self, channel_llr, max_iterations: int = MAX_ITERATIONS, early_exit: bool = True) -> DecodeResult:
        llr = np.asarray(channel_llr, dtype=np.float64)
        if llr.shape != (self.n,):
            raise ValueError(f"LLR length {llr.shape} != ({self.n},)")
        E = self.n_edges
        ext = np.zeros(E + 1)  # check -> variable messages, slot E stays 0
        tanh_buf = np.ones(E + 1)
        total = llr.copy()
        hard = (total < 0).astype(np.uint8)
        ok = not self.syndrome(hard).any()
        it = 0
        if ok and early_exit:
            return DecodeResult(hard, 0, True, total)
        q = llr[self.edge_var]
        for it in range(1, max_iterations + 1):
            tanh_buf[:E] = np.tanh(np.clip(q, -LLR_MAX, LLR_MAX) / 2.0)
            t = tanh_buf[self.check_edges]
            left = np.ones_like(t)
            right = np.ones_like(t)
            np.cumprod(t[:, :-1], axis=1, out=left[:, 1:])
            np.cumprod(t[:, :0:-1], axis=1, out=right[:, -2::-1])
            ext[self.check_edges] = 2.0 * np.arctanh(left * right)
            ext[E] = 0.0
            total = llr + ext[self.var_edges].sum(axis=1)
            hard = (total < 0).astype(np.uint8)
            ok = not self.syndrome(hard).any()
            if ok and early_exit:
                break
            q = total[self.edge_var] - ext[:E]
        return DecodeResult(hard, it, ok, total)


def decode(graph: TannerGraph, channel_llr, max_iterations: int = MAX_ITERATIONS, early_exit: bool = True) -> DecodeResult:
    return BPDecoder(graph).decode(channel_llr, max_iterations, early_exit)


def syndrome(graph: TannerGraph, word) -> np.ndarray:
    w = np.asarray(word, dtype=np.uint8)
    if w.shape != (graph.n,):
        raise ValueError(f"word length {w.shape} != ({graph.n},)")
    out = np.zeros(graph.m, dtype=np.uint8)
    for c, nbrs in enumerate(graph.check_adj):
        out[c] = np.bitwise_xor.reduce(w[nbrs]) if nbrs else 0
    return out
