"""Progressive edge-growth construction with free-check-degree selection.

Five selection variants are supported:

1. original PEG: lowest current check degree everywhere, check targets ignored;
2. highest free check degree (FCD) for every edge;
3. as 2, but a symbol's first edge must land on a check already in the graph;
4. zig-zag first edge (lowest degree among used checks) for degree-2
   symbols, FCD for everything else;
5. lowest degree for every first edge, FCD for the rest.

Free degree is ``f(c) = d(c) - d_k(c)``: target degree minus edges placed so
far.  In relaxed mode, when no check of the final candidate ensemble has a
free socket, shallower ensembles are searched before overfilling a check.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import _kernels
from .degree_model import (
    DegreeDistribution,
    DegreeSequence,
    balance_sockets,
    quantize_sequence,
)
from .tanner_graph import INF, TannerGraph, girth, rho_compliance


class ConstructionError(RuntimeError):
    """The construction cannot place an edge."""


class PegVariant(enum.IntEnum):
    V1_ORIGINAL = 1
    V2_RICHTER = 2
    V3_RICHTER_FIRST_EDGE = 3
    V4_PROPOSED = 4
    V5_MIXED = 5

    @property
    def uses_fcd(self) -> bool:
        return self is not PegVariant.V1_ORIGINAL


@dataclass(frozen=True)
class PegConfig:
    variant: PegVariant = PegVariant.V4_PROPOSED
    relaxed: bool = False
    seed: int = 0
    max_expansion_depth: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "variant", PegVariant(self.variant))
        if self.relaxed and not self.variant.uses_fcd:
            raise ValueError("relaxed edge selection requires an FCD variant (2-5)")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.max_expansion_depth is not None and self.max_expansion_depth < 0:
            raise ValueError("max_expansion_depth must be non-negative")


_STOP_NAMES = {
    _kernels.STOP_SATURATED: "saturated",
    _kernels.STOP_COMPLEMENT_VANISHES: "complement_vanishes",
    _kernels.STOP_DEPTH_CAP: "depth_cap",
    _kernels.STOP_EXHAUSTED: "exhausted",
}


@dataclass(frozen=True)
class ExpansionResult:
    """Layered tree grown from one symbol node.

    ``check_depth[c]`` is the depth at which check ``c`` was first reached
    (-1 if never).  ``depth`` is the final expansion depth ``l``.
    """

    check_depth: np.ndarray
    depth: int
    stop_reason: str

    def layer(self, level: int) -> np.ndarray:
        d = self.check_depth
        return np.flatnonzero((d >= 0) & (d <= level))

    def complement(self, level: int) -> np.ndarray:
        d = self.check_depth
        return np.flatnonzero((d < 0) | (d > level))

    @property
    def layers(self) -> list[np.ndarray]:
        return [self.layer(level) for level in range(self.depth + 1)]

    @property
    def complements(self) -> list[np.ndarray]:
        return [self.complement(level) for level in range(self.depth + 1)]

    @property
    def candidates(self) -> np.ndarray:
        return self.complement(self.depth)


class _Workspace:
    """Padded adjacency arrays mirroring a graph under construction."""

    def __init__(self, graph: TannerGraph, max_symbol_degree: int, check_capacity: int):
        self.sym_nbr = np.zeros((graph.n, max(1, max_symbol_degree)), dtype=np.int32)
        self.sym_cnt = np.zeros(graph.n, dtype=np.int32)
        self.chk_nbr = np.zeros((graph.m, max(1, check_capacity)), dtype=np.int32)
        self.chk_cnt = np.zeros(graph.m, dtype=np.int32)
        for c, s in graph.edges():
            self.add(c, s)

    def add(self, check: int, symbol: int) -> None:
        if self.sym_cnt[symbol] == self.sym_nbr.shape[1]:
            self.sym_nbr = np.hstack([self.sym_nbr, np.zeros_like(self.sym_nbr)])
        if self.chk_cnt[check] == self.chk_nbr.shape[1]:
            self.chk_nbr = np.hstack([self.chk_nbr, np.zeros_like(self.chk_nbr)])
        self.sym_nbr[symbol, self.sym_cnt[symbol]] = check
        self.sym_cnt[symbol] += 1
        self.chk_nbr[check, self.chk_cnt[check]] = symbol
        self.chk_cnt[check] += 1

    def expand(self, root: int, max_depth: int | None) -> ExpansionResult:
        depth, level, code = _kernels.expand_checks(
            root,
            self.sym_nbr,
            self.sym_cnt,
            self.chk_nbr,
            self.chk_cnt,
            self.chk_cnt.shape[0],
            -1 if max_depth is None else max_depth,
        )
        return ExpansionResult(depth, int(level), _STOP_NAMES[int(code)])


def _workspace_for(graph: TannerGraph) -> _Workspace:
    sym = max((len(a) for a in graph.symbol_adj), default=1)
    chk = max((len(a) for a in graph.check_adj), default=1)
    return _Workspace(graph, sym, chk)


def expand_subgraph(graph: TannerGraph, root: int, max_depth: int | None = None) -> ExpansionResult:
    """Grow the local tree from ``root`` until it saturates or swallows every check.

    Choosing any check from ``result.candidates`` creates the longest
    shortest-cycle through ``root`` available under the current graph.
    """
    if not graph.symbol_adj[root]:
        raise ValueError(f"symbol {root} has no edges to expand from")
    return _workspace_for(graph).expand(root, max_depth)


def _pick(ties: np.ndarray, rng: np.random.Generator) -> int:
    if len(ties) == 1:
        return int(ties[0])
    return int(ties[rng.integers(len(ties))])


def select_lowest_degree(candidates, graph: TannerGraph, rng: np.random.Generator) -> int:
    """Candidate with the fewest edges so far; ties uniform at random."""
    cand = np.asarray(candidates, dtype=np.int64)
    if cand.size == 0:
        raise ConstructionError("no candidate checks")
    deg = graph.check_partial[cand]
    return _pick(cand[deg == deg.min()], rng)


def select_highest_fcd(candidates, graph: TannerGraph, rng: np.random.Generator) -> int:
    """Candidate with the most free sockets; ties uniform at random."""
    cand = np.asarray(candidates, dtype=np.int64)
    if cand.size == 0:
        raise ConstructionError("no candidate checks")
    free = graph.check_target[cand] - graph.check_partial[cand]
    return _pick(cand[free == free.max()], rng)


def _first_edge(graph, symbol_degree, variant, rng):
    everything = np.arange(graph.m)
    used = np.flatnonzero(graph.check_partial > 0)
    if used.size == 0:
        used = everything
    V = PegVariant
    if variant is V.V1_ORIGINAL or variant is V.V5_MIXED:
        pool, rule = everything, select_lowest_degree
    elif variant is V.V2_RICHTER:
        pool, rule = everything, select_highest_fcd
    elif variant is V.V3_RICHTER_FIRST_EDGE:
        pool, rule = used, select_highest_fcd
    elif symbol_degree == 2:
        pool, rule = used, select_lowest_degree
    else:
        pool, rule = everything, select_highest_fcd
    return rule(pool, graph, rng), len(pool)


def select_first_edge(graph: TannerGraph, symbol: int, symbol_degree: int, config: PegConfig, rng) -> int:
    if graph.symbol_adj[symbol]:
        raise ValueError(f"symbol {symbol} already has edges")
    return _first_edge(graph, symbol_degree, config.variant, rng)[0]


def _relaxed(expansion: ExpansionResult, graph: TannerGraph, rng) -> tuple[int, int]:
    free = graph.check_target - graph.check_partial
    for level in range(expansion.depth - 1, -1, -1):
        cand = expansion.complement(level)
        if (free[cand] > 0).any():
            return select_highest_fcd(cand, graph, rng), level
    return select_highest_fcd(expansion.candidates, graph, rng), expansion.depth


def relaxed_fallback(expansion: ExpansionResult, graph: TannerGraph, rng) -> int:
    """Walk back to shallower candidate ensembles until one has a free socket.

    If no ensemble has one, the final ensemble is used as in strict mode and
    the caller sees an overfill.
    """
    return _relaxed(expansion, graph, rng)[0]


class EdgeRecord(NamedTuple):
    symbol: int
    k: int
    check: int
    depth: int  # ensemble depth used; -1 for first edges
    candidates: int
    free_before: int
    mode: str  # first | peg | relaxed


@dataclass
class ConstructionReport:
    config: PegConfig
    records: list[EdgeRecord] = field(default_factory=list)
    overfill_count: int = 0
    stop_reasons: Counter = field(default_factory=Counter)
    girth: float | int = INF
    eta_edge: float | None = None
    eta_node: float | None = None
    check_adjustments: tuple = ()

    @property
    def relaxed_count(self) -> int:
        return sum(1 for r in self.records if r.mode == "relaxed")

    def to_log(self) -> str:
        cfg = self.config
        lines = [
            f"# variant {int(cfg.variant)} relaxed {int(cfg.relaxed)} seed {cfg.seed}",
            "# j k chosen_check depth candidates f_chosen mode",
        ]
        lines += [
            f"{r.symbol} {r.k} {r.check} {r.depth} {r.candidates} {r.free_before} {r.mode}"
            for r in self.records
        ]
        lines.append(f"# girth {self.girth}")
        lines.append(f"# eta_edge {_fmt(self.eta_edge)}")
        lines.append(f"# eta_node {_fmt(self.eta_node)}")
        lines.append(f"# overfill {self.overfill_count}")
        lines.append(f"# relaxed_edges {self.relaxed_count}")
        for reason in sorted(self.stop_reasons):
            lines.append(f"# stop {reason} {self.stop_reasons[reason]}")
        for pos, old, new in self.check_adjustments:
            lines.append(f"# check_adjustment {pos} {old} {new}")
        return "\n".join(lines) + "\n"


def _fmt(x) -> str:
    return "NA" if x is None else f"{x:.6g}"


def construct(
    config: PegConfig,
    symbol_seq: DegreeSequence,
    check_seq: DegreeSequence,
    rho: DegreeDistribution | None = None,
) -> tuple[TannerGraph, ConstructionReport]:
    """Build a Tanner graph edge by edge, symbols in the given (ascending) order."""
    degrees = list(symbol_seq)
    if any(a > b for a, b in zip(degrees, degrees[1:])):
        raise ValueError("symbol degree sequence must be sorted non-decreasing")
    variant = config.variant
    if variant.uses_fcd and symbol_seq.total_sockets != check_seq.total_sockets:
        raise ValueError(
            f"socket mismatch: {symbol_seq.total_sockets} symbol vs "
            f"{check_seq.total_sockets} check sockets"
        )
    n, m = len(degrees), len(check_seq)
    if degrees and degrees[-1] > m:
        raise ConstructionError(f"symbol degree {degrees[-1]} exceeds {m} checks")

    graph = TannerGraph(n, m, check_seq.degrees)
    ws = _Workspace(graph, degrees[-1] if degrees else 1, max(check_seq.degrees, default=1) + 2)
    rng = np.random.default_rng(config.seed)
    report = ConstructionReport(config, check_adjustments=check_seq.adjustments)
    records = report.records

    for j, d in enumerate(degrees):
        for k in range(1, d + 1):
            if k == 1:
                c, n_cand = _first_edge(graph, d, variant, rng)
                depth, mode = -1, "first"
            else:
                exp = ws.expand(j, config.max_expansion_depth)
                if exp.stop_reason == "exhausted":
                    raise ConstructionError(f"symbol {j} is already adjacent to every check")
                report.stop_reasons[exp.stop_reason] += 1
                cand = exp.candidates
                n_cand, depth, mode = len(cand), exp.depth, "peg"
                if not variant.uses_fcd:
                    c = select_lowest_degree(cand, graph, rng)
                elif config.relaxed and not (graph.check_target[cand] > graph.check_partial[cand]).any():
                    c, depth = _relaxed(exp, graph, rng)
                    n_cand, mode = len(exp.complement(depth)), "relaxed"
                else:
                    c = select_highest_fcd(cand, graph, rng)
            free = int(graph.check_target[c] - graph.check_partial[c])
            if free <= 0 and variant.uses_fcd:
                report.overfill_count += 1
            graph.add_edge(c, j)
            ws.add(c, j)
            records.append(EdgeRecord(j, k, c, depth, n_cand, free, mode))

    report.girth = girth(graph)
    if rho is not None and graph.n_edges:
        report.eta_edge = rho_compliance(graph, rho, "edge")
        report.eta_node = rho_compliance(graph, rho, "node")
    return graph, report


def build_code(
    lam: DegreeDistribution,
    rho: DegreeDistribution,
    n: int,
    config: PegConfig,
) -> tuple[TannerGraph, ConstructionReport]:
    """Quantize both distributions for ``n`` symbols and run :func:`construct`."""
    symbol_seq = quantize_sequence(lam, n)
    check_seq = balance_sockets(symbol_seq, rho)
    return construct(config, symbol_seq, check_seq, rho)
