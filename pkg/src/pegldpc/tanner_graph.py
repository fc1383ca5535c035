"""Bipartite Tanner graph with structural analytics and alist interchange."""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .degree_model import DegreeDistribution, edge_to_node_fractions

INF = math.inf


class StructuralError(ValueError):
    """An operation would break the graph's structural invariants."""


class AlistError(ValueError):
    """Malformed alist input."""


class TannerGraph:
    """Symbol/check bipartite graph without parallel edges.

    ``check_target`` holds the intended final check degrees d(c) and
    ``check_partial`` the current degrees d^k(c); their difference is the
    free check-node degree.
    """

    def __init__(self, n: int, m: int, check_target=None):
        if n < 0 or m < 0:
            raise ValueError("node counts must be non-negative")
        self.n = n
        self.m = m
        self.symbol_adj: list[list[int]] = [[] for _ in range(n)]
        self.check_adj: list[list[int]] = [[] for _ in range(m)]
        if check_target is None:
            check_target = np.zeros(m, dtype=np.int64)
        self.check_target = np.array(check_target, dtype=np.int64)
        if self.check_target.shape != (m,):
            raise ValueError(f"check_target needs {m} entries")
        self.check_partial = np.zeros(m, dtype=np.int64)

    def add_edge(self, check: int, symbol: int) -> None:
        if not (0 <= check < self.m and 0 <= symbol < self.n):
            raise StructuralError(f"edge (c{check}, s{symbol}) out of range")
        nbrs = self.symbol_adj[symbol]
        pos = bisect.bisect_left(nbrs, check)
        if pos < len(nbrs) and nbrs[pos] == check:
            raise StructuralError(f"parallel edge (c{check}, s{symbol})")
        nbrs.insert(pos, check)
        bisect.insort(self.check_adj[check], symbol)
        self.check_partial[check] += 1

    def has_edge(self, check: int, symbol: int) -> bool:
        nbrs = self.symbol_adj[symbol]
        pos = bisect.bisect_left(nbrs, check)
        return pos < len(nbrs) and nbrs[pos] == check

    def free_degrees(self) -> np.ndarray:
        return self.check_target - self.check_partial

    @property
    def n_edges(self) -> int:
        return int(self.check_partial.sum())

    def symbol_degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.symbol_adj], dtype=np.int64)

    def check_degrees(self) -> np.ndarray:
        return self.check_partial.copy()

    def edges(self) -> list[tuple[int, int]]:
        """All (check, symbol) pairs ordered by symbol then check."""
        return [(c, s) for s, nbrs in enumerate(self.symbol_adj) for c in nbrs]

    def adjacency_csr(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR of the joint graph: symbols are nodes 0..n-1, checks n..n+m-1."""
        lists = [[self.n + c for c in a] for a in self.symbol_adj] + self.check_adj
        ptr = np.zeros(self.n + self.m + 1, dtype=np.int64)
        ptr[1:] = np.cumsum([len(a) for a in lists])
        idx = np.fromiter((v for a in lists for v in a), dtype=np.int64, count=int(ptr[-1]))
        return ptr, idx

    def to_dense(self) -> np.ndarray:
        """Parity-check matrix H (m x n) as uint8."""
        H = np.zeros((self.m, self.n), dtype=np.uint8)
        for s, nbrs in enumerate(self.symbol_adj):
            H[nbrs, s] = 1
        return H

    def copy(self) -> "TannerGraph":
        g = TannerGraph(self.n, self.m, self.check_target)
        g.symbol_adj = [list(a) for a in self.symbol_adj]
        g.check_adj = [list(a) for a in self.check_adj]
        g.check_partial = self.check_partial.copy()
        return g

    def same_structure(self, other: "TannerGraph") -> bool:
        return (
            self.n == other.n
            and self.m == other.m
            and self.symbol_adj == other.symbol_adj
            and self.check_adj == other.check_adj
        )

    def __repr__(self) -> str:
        return f"TannerGraph(n={self.n}, m={self.m}, edges={self.n_edges})"

    @classmethod
    def from_edges(cls, n: int, m: int, edges, check_target=None) -> "TannerGraph":
        g = cls(n, m, check_target)
        for c, s in edges:
            g.add_edge(c, s)
        if check_target is None:
            g.check_target = g.check_partial.copy()
        return g


def _girth_value(x: int, bound: int) -> float | int:
    return INF if x >= bound else int(x)


def local_girth(graph: TannerGraph, symbol: int) -> float | int:
    """Length of the shortest cycle through ``symbol`` (``inf`` if none)."""
    ptr, idx = graph.adjacency_csr()
    bound = graph.n + graph.m + 1
    g = _kernels.local_girths(np.array([symbol], dtype=np.int64), ptr, idx, bound, False)
    return _girth_value(g[0], bound)


def local_girths(graph: TannerGraph) -> list:
    ptr, idx = graph.adjacency_csr()
    bound = graph.n + graph.m + 1
    g = _kernels.local_girths(np.arange(graph.n, dtype=np.int64), ptr, idx, bound, False)
    return [_girth_value(x, bound) for x in g]


def girth(graph: TannerGraph) -> float | int:
    """Shortest cycle length of the whole graph (``inf`` for a forest)."""
    if graph.n == 0:
        return INF
    ptr, idx = graph.adjacency_csr()
    bound = graph.n + graph.m + 1
    g = _kernels.local_girths(np.arange(graph.n, dtype=np.int64), ptr, idx, bound, True)
    return _girth_value(int(g.min()), bound)


def realized_check_distribution(graph: TannerGraph, perspective: str = "edge") -> dict[int, float]:
    degrees = graph.check_partial
    if perspective == "edge":
        total = int(degrees.sum())
        if total == 0:
            raise StructuralError("graph has no edges")
    elif perspective == "node":
        total = graph.m
        if int(degrees.sum()) == 0:
            raise StructuralError("graph has no edges")
    else:
        raise ValueError(f"unknown perspective {perspective!r}")
    values, counts = np.unique(degrees, return_counts=True)
    weight = values * counts if perspective == "edge" else counts
    return {int(d): float(w) / total for d, w in zip(values, weight) if w > 0}


def rho_compliance(graph: TannerGraph, rho: DegreeDistribution, perspective: str = "edge") -> float:
    """Sum over degrees of |target - realized| check-degree mass.

    ``edge`` compares against the rho coefficients directly; ``node``
    compares node fractions.  Realized degrees outside the target support
    count in full.
    """
    realized = realized_check_distribution(graph, perspective)
    target = dict(rho.coefficients) if perspective == "edge" else edge_to_node_fractions(rho)
    degrees = set(target) | set(realized)
    return math.fsum(abs(target.get(d, 0.0) - realized.get(d, 0.0)) for d in degrees)


@dataclass(frozen=True)
class ChainReport:
    acyclic: bool
    chain_count: int
    longest_chain: int


def degree2_chain_report(graph: TannerGraph) -> ChainReport:
    """Topology of the subgraph spanned by degree-2 symbols and their checks.

    ``chain_count`` is the number of connected components and
    ``longest_chain`` the most degree-2 symbols in one component.
    """
    parent: dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    acyclic = True
    deg2 = [s for s, a in enumerate(graph.symbol_adj) if len(a) == 2]
    for s in deg2:
        a, b = graph.symbol_adj[s]
        parent.setdefault(a, a)
        parent.setdefault(b, b)
        ra, rb = find(a), find(b)
        if ra == rb:
            acyclic = False
        else:
            parent[ra] = rb
    sizes: dict[int, int] = {}
    for s in deg2:
        r = find(graph.symbol_adj[s][0])
        sizes[r] = sizes.get(r, 0) + 1
    return ChainReport(acyclic, len(sizes), max(sizes.values(), default=0))


def to_alist(graph: TannerGraph) -> str:
    """Standard alist text; neighbour lists zero-padded to the maximum degree."""
    col_deg = [len(a) for a in graph.symbol_adj]
    row_deg = [len(a) for a in graph.check_adj]
    max_col = max(col_deg, default=0)
    max_row = max(row_deg, default=0)
    lines = [
        f"{graph.n} {graph.m}",
        f"{max_col} {max_row}",
        " ".join(map(str, col_deg)),
        " ".join(map(str, row_deg)),
    ]
    for adj, width in ((graph.symbol_adj, max_col), (graph.check_adj, max_row)):
        for a in adj:
            entries = [str(v + 1) for v in a] + ["0"] * (width - len(a))
            lines.append(" ".join(entries) or "0")
    return "\n".join(lines) + "\n"


def _ints(line: str, lineno: int) -> list[int]:
    try:
        return [int(t) for t in line.split()]
    except ValueError:
        raise AlistError(f"line {lineno}: non-integer token") from None


def from_alist(text: str) -> TannerGraph:
    rows = [(i, ln) for i, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
    if len(rows) < 4:
        raise AlistError("alist needs at least four header lines")
    header = _ints(rows[0][1], rows[0][0])
    if len(header) != 2 or min(header) < 0:
        raise AlistError("line 1 must be 'n m'")
    n, m = header
    maxes = _ints(rows[1][1], rows[1][0])
    if len(maxes) != 2:
        raise AlistError("line 2 must be 'max_col_deg max_row_deg'")
    col_deg = _ints(rows[2][1], rows[2][0])
    row_deg = _ints(rows[3][1], rows[3][0])
    if len(col_deg) != n:
        raise AlistError(f"expected {n} column degrees, got {len(col_deg)}")
    if len(row_deg) != m:
        raise AlistError(f"expected {m} row degrees, got {len(row_deg)}")
    if len(rows) != 4 + n + m:
        raise AlistError(f"expected {n + m} neighbour lines, got {len(rows) - 4}")
    if col_deg and max(col_deg) != maxes[0] or row_deg and max(row_deg) != maxes[1]:
        raise AlistError("maximum degrees on line 2 disagree with degree lists")
    g = TannerGraph(n, m)
    for j in range(n):
        lineno, line = rows[4 + j]
        nbrs = [v for v in _ints(line, lineno) if v != 0]
        if len(nbrs) != col_deg[j]:
            raise AlistError(f"line {lineno}: column {j + 1} lists {len(nbrs)} entries, degree {col_deg[j]}")
        for c in nbrs:
            if not 1 <= c <= m:
                raise AlistError(f"line {lineno}: row index {c} out of range")
            try:
                g.add_edge(c - 1, j)
            except StructuralError as exc:
                raise AlistError(f"line {lineno}: {exc}") from None
    for i in range(m):
        lineno, line = rows[4 + n + i]
        nbrs = sorted(v - 1 for v in _ints(line, lineno) if v != 0)
        if len(nbrs) != row_deg[i]:
            raise AlistError(f"line {lineno}: row {i + 1} lists {len(nbrs)} entries, degree {row_deg[i]}")
        if nbrs != g.check_adj[i]:
            raise AlistError(f"line {lineno}: row {i + 1} disagrees with column lists")
    g.check_target = g.check_partial.copy()
    return g
