"""Edge-perspective degree distributions and their integer degree sequences.

A distribution maps a node degree ``i`` to the fraction of *edges* attached
to degree-``i`` nodes (the usual lambda/rho convention).  Before a graph can
be built, both sides are turned into per-node integer degree lists whose
socket totals match exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

SUM_TOLERANCE = 1e-9
_EPS = 1e-9

SIDES = ("symbol", "check")


class DistributionError(ValueError):
    """Malformed or invalid distribution text or values."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InfeasibleError(ValueError):
    """No integer degree sequence satisfies the requested constraints."""


@dataclass(frozen=True)
class DegreeDistribution:
    coefficients: Mapping[int, float]
    side: str | None = None

    def __post_init__(self):
        coeffs = {int(d): float(c) for d, c in self.coefficients.items()}
        if not coeffs:
            raise DistributionError("empty distribution")
        for d, c in coeffs.items():
            if d < 2:
                raise DistributionError(f"degree {d} < 2")
            if not (c > 0.0) or c > 1.0:
                raise DistributionError(f"coefficient {c} for degree {d} not in (0, 1]")
        total = math.fsum(coeffs.values())
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise DistributionError(f"coefficients sum to {total:.12g}, expected 1")
        if self.side is not None and self.side not in SIDES:
            raise DistributionError(f"unknown side {self.side!r}")
        object.__setattr__(self, "coefficients", dict(sorted(coeffs.items())))

    @property
    def max_degree(self) -> int:
        return max(self.coefficients)

    @property
    def min_degree(self) -> int:
        return min(self.coefficients)

    @property
    def degrees(self) -> list[int]:
        return list(self.coefficients)

    def inverse_mean(self) -> float:
        """Sum of c_i / i, i.e. nodes per edge."""
        return math.fsum(c / d for d, c in self.coefficients.items())

    def __str__(self) -> str:
        return " / ".join(f"{d} {c:.12g}" for d, c in self.coefficients.items())


@dataclass(frozen=True)
class DegreeSequence:
    degrees: tuple[int, ...]
    # (node index, old degree, new degree) for every socket-balancing tweak
    adjustments: tuple[tuple[int, int, int], ...] = field(default=())

    def __post_init__(self):
        degrees = tuple(int(d) for d in self.degrees)
        if any(d < 2 for d in degrees):
            raise InfeasibleError("degree sequence contains an entry below 2")
        object.__setattr__(self, "degrees", degrees)

    @property
    def total_sockets(self) -> int:
        return sum(self.degrees)

    def __len__(self) -> int:
        return len(self.degrees)

    def __iter__(self):
        return iter(self.degrees)

    def __getitem__(self, i):
        return self.degrees[i]

    def is_sorted(self) -> bool:
        return all(a <= b for a, b in zip(self.degrees, self.degrees[1:]))

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def edge_fractions(self) -> dict[int, float]:
        """Empirical edge-perspective distribution of this sequence."""
        total = self.total_sockets
        return {d: d * c / total for d, c in self.counts().items()}


def parse_distribution(text: str, side: str | None = None) -> DegreeDistribution:
    """Parse ``<degree> <coefficient>`` terms.

    Terms are separated by newlines or ``/``.  ``#`` starts a comment line and
    an optional ``side: symbol|check`` header must agree with ``side`` when
    both are given.
    """
    header_side = None
    coeffs: dict[int, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.lower().startswith("side:"):
            value = line.split(":", 1)[1].strip().lower()
            if value not in SIDES:
                raise DistributionError(f"bad side header {value!r}", lineno)
            header_side = value
            continue
        for term in line.split("/"):
            term = term.strip()
            if not term:
                continue
            parts = term.split()
            if len(parts) != 2:
                raise DistributionError(f"expected '<degree> <coefficient>', got {term!r}", lineno)
            try:
                degree = int(parts[0])
                coeff = float(parts[1])
            except ValueError:
                raise DistributionError(f"cannot parse term {term!r}", lineno) from None
            if degree in coeffs:
                raise DistributionError(f"degree {degree} listed twice", lineno)
            coeffs[degree] = coeff
    if header_side is not None and side is not None and header_side != side:
        raise DistributionError(f"distribution declares side {header_side!r}, used as {side!r}")
    return DegreeDistribution(coeffs, side=header_side or side)


def edge_to_node_fractions(dist: DegreeDistribution) -> dict[int, float]:
    weights = {d: c / d for d, c in dist.coefficients.items()}
    total = math.fsum(weights.values())
    return {d: w / total for d, w in weights.items()}


def design_rate(lam: DegreeDistribution, rho: DegreeDistribution) -> float:
    return 1.0 - rho.inverse_mean() / lam.inverse_mean()


def _largest_remainder(fractions: Mapping[int, float], total: int) -> dict[int, int]:
    ideal = {d: f * total for d, f in fractions.items()}
    counts = {d: int(math.floor(x + _EPS)) for d, x in ideal.items()}
    left = total - sum(counts.values())
    # ties go to the larger degree
    order = sorted(ideal, key=lambda d: (-round(ideal[d] - counts[d], 9), -d))
    for d in order[:left]:
        counts[d] += 1
    return counts


def quantize_sequence(dist: DegreeDistribution, node_count: int) -> DegreeSequence:
    """Integer per-node degrees for ``node_count`` nodes, sorted ascending."""
    if node_count < len(dist.coefficients):
        raise InfeasibleError(
            f"{node_count} nodes cannot represent {len(dist.coefficients)} distinct degrees"
        )
    counts = _largest_remainder(edge_to_node_fractions(dist), node_count)
    degrees = [d for d in sorted(counts) for _ in range(counts[d])]
    return DegreeSequence(tuple(degrees))


def check_count_for(symbol_seq: DegreeSequence, check_dist: DegreeDistribution) -> int:
    return max(1, round(symbol_seq.total_sockets * check_dist.inverse_mean()))


def balance_sockets(
    symbol_seq: DegreeSequence,
    check_dist: DegreeDistribution,
    check_count: int | None = None,
) -> DegreeSequence:
    """Check-side degree sequence whose socket total equals the symbol side's.

    The quantized sequence is nudged one unit per node:

    1. surplus: raise ``max_degree - 1`` entries to ``max_degree``;
       deficit: lower ``max_degree`` entries to ``max_degree - 1``;
    2. remaining surplus raises ``max_degree`` entries to ``max_degree + 1``,
       then the next-largest entries; remaining deficit lowers the largest
       entries still above 2.

    Every tweak is listed in ``adjustments`` (indices refer to the returned,
    re-sorted sequence).
    """
    if check_count is None:
        check_count = check_count_for(symbol_seq, check_dist)
    base = list(quantize_sequence(check_dist, check_count).degrees)
    diff = symbol_seq.total_sockets - sum(base)
    dmax = check_dist.max_degree
    new = list(base)
    touched = [False] * len(new)

    def tweak(candidates, step):
        nonlocal diff
        for i in candidates:
            if diff == 0:
                return
            if touched[i]:
                continue
            new[i] += step
            touched[i] = True
            diff -= step

    # highest indices first: the sequence is ascending, keep tweaks at the top end
    idx = range(len(new) - 1, -1, -1)
    if diff > 0:
        tweak([i for i in idx if base[i] == dmax - 1 and dmax - 1 in check_dist.coefficients], +1)
        tweak([i for i in idx if base[i] == dmax], +1)
        tweak(list(idx), +1)
    elif diff < 0:
        tweak([i for i in idx if base[i] == dmax], -1)
        tweak([i for i in idx if new[i] > 2], -1)
    if diff != 0:
        raise InfeasibleError(
            f"cannot balance sockets: {symbol_seq.total_sockets} symbol sockets vs "
            f"{check_count} checks from {check_dist}"
        )
    order = sorted(range(len(new)), key=lambda i: (new[i], i))
    adjustments = tuple(
        (pos, base[i], new[i]) for pos, i in enumerate(order) if base[i] != new[i]
    )
    return DegreeSequence(tuple(new[i] for i in order), adjustments)
