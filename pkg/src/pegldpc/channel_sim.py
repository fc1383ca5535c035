"""Monte-Carlo frame error rates over BSC and BPSK/AWGN channels.

The all-zero codeword is transmitted throughout; for a linear code over an
output-symmetric channel the BP error rate does not depend on the codeword.
That argument does not carry over to asymmetric channels.

Frame ``i`` of a point draws its noise from ``SeedSequence([seed, i])``, so
the outcome of every frame is fixed by (seed, index) alone and results do
not depend on the worker count.
"""

from __future__ import annotations

import csv
import enum
import hashlib
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bp_decoder import MAX_ITERATIONS, BPDecoder, awgn_llr, bsc_llr
from .tanner_graph import TannerGraph

Z95 = 1.959963984540054

CSV_COLUMNS = (
    "label",
    "channel_kind",
    "parameter",
    "frames",
    "frame_errors",
    "fer",
    "ci95_low",
    "ci95_high",
    "mean_iterations",
    "seed",
)


class ChannelKind(str, enum.Enum):
    BSC = "bsc"
    AWGN = "awgn"


@dataclass(frozen=True)
class ChannelSpec:
    """``parameter`` is the crossover probability (BSC) or an SNR in dB (AWGN).

    ``convention`` picks how the SNR maps to noise: ``ebn0`` scales by the
    code rate, ``esn0`` does not.
    """

    kind: ChannelKind
    parameter: float
    code_rate: float = 0.5
    convention: str = "ebn0"

    def __post_init__(self):
        object.__setattr__(self, "kind", ChannelKind(self.kind))
        if self.kind is ChannelKind.BSC and not 0.0 < self.parameter < 0.5:
            raise ValueError(f"BSC crossover {self.parameter} outside (0, 0.5)")
        if self.convention not in ("ebn0", "esn0"):
            raise ValueError(f"unknown SNR convention {self.convention!r}")
        if self.kind is ChannelKind.AWGN and not 0.0 < self.code_rate <= 1.0:
            raise ValueError(f"code rate {self.code_rate} outside (0, 1]")

    @property
    def noise_sigma(self) -> float:
        if self.kind is not ChannelKind.AWGN:
            raise ValueError("noise sigma is defined for AWGN only")
        snr = 10.0 ** (self.parameter / 10.0)
        scale = 2.0 * self.code_rate if self.convention == "ebn0" else 2.0
        return math.sqrt(1.0 / (scale * snr))


@dataclass(frozen=True)
class StopRule:
    min_frame_errors: int = 100
    max_frames: int = 1_000_000

    def __post_init__(self):
        if self.min_frame_errors < 1 or self.max_frames < 1:
            raise ValueError("stop rule limits must be positive")


@dataclass(frozen=True)
class FerPoint:
    channel: ChannelSpec
    frames: int
    frame_errors: int
    fer: float
    ci95_low: float
    ci95_high: float
    mean_iterations: float
    seed: int


def wilson_interval(errors: int, trials: int, z: float = Z95) -> tuple[float, float]:
    if trials <= 0:
        return 0.0, 1.0
    p = errors / trials
    denom = 1.0 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


def transmit_all_zero(channel: ChannelSpec, n: int, rng: np.random.Generator) -> np.ndarray:
    if channel.kind is ChannelKind.BSC:
        flips = (rng.random(n) < channel.parameter).astype(np.uint8)
        return bsc_llr(flips, channel.parameter)
    sigma = channel.noise_sigma
    return awgn_llr(1.0 + sigma * rng.standard_normal(n), sigma)


def frame_rng(seed: int, frame: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, frame]))


def _run_frames(decoder, channel, seed, frames, max_iterations):
    out = []
    for f in frames:
        llr = transmit_all_zero(channel, decoder.n, frame_rng(seed, f))
        res = decoder.decode(llr, max_iterations)
        # undetected miscorrections count as errors too
        failed = (not res.syndrome_zero) or bool(res.hard_decision.any())
        out.append((failed, res.iterations_used))
    return out


_worker_decoder: BPDecoder | None = None


def _worker_init(graph):
    global _worker_decoder
    _worker_decoder = BPDecoder(graph)


def _worker_run(channel, seed, start, stop, max_iterations):
    return _run_frames(_worker_decoder, channel, seed, range(start, stop), max_iterations)


def run_point(
    graph: TannerGraph,
    channel: ChannelSpec,
    stop: StopRule = StopRule(),
    seed: int = 0,
    workers: int = 1,
    max_iterations: int = MAX_ITERATIONS,
    batch: int = 32,
    decoder: BPDecoder | None = None,
) -> FerPoint:
    """Simulate frames in index order until the stop rule fires.

    Frames are decoded in batches, possibly in parallel, and the tally is
    cut at the exact frame where the error target is reached.
    """
    decoder = decoder or BPDecoder(graph)
    frames = errors = iters = 0
    pool = None
    if workers > 1:
        pool = ProcessPoolExecutor(workers, initializer=_worker_init, initargs=(graph,))
    try:
        next_frame = 0
        while frames < stop.max_frames and errors < stop.min_frame_errors:
            if pool is None:
                chunk_end = min(next_frame + batch, stop.max_frames)
                results = _run_frames(decoder, channel, seed, range(next_frame, chunk_end), max_iterations)
            else:
                bounds = []
                for _ in range(workers):
                    lo = next_frame + len(bounds) * batch
                    if lo >= stop.max_frames:
                        break
                    bounds.append((lo, min(lo + batch, stop.max_frames)))
                futures = [pool.submit(_worker_run, channel, seed, lo, hi, max_iterations) for lo, hi in bounds]
                results = [r for fut in futures for r in fut.result()]
                chunk_end = bounds[-1][1]
            for failed, used in results:
                frames += 1
                errors += failed
                iters += used
                if errors >= stop.min_frame_errors:
                    break
            next_frame = chunk_end
    finally:
        if pool is not None:
            pool.shutdown()
    lo, hi = wilson_interval(errors, frames)
    return FerPoint(channel, frames, errors, errors / frames, lo, hi, iters / frames, seed)


def derive_seed(master: int, label: str, parameter: float) -> int:
    digest = hashlib.sha256(f"{master}|{label}|{parameter!r}".encode()).digest()
    return int.from_bytes(digest[:8], "little")


def sweep(
    graphs,
    channel_grid,
    stop: StopRule = StopRule(),
    seed: int = 0,
    workers: int = 1,
    max_iterations: int = MAX_ITERATIONS,
    progress=None,
) -> list[tuple[str, FerPoint]]:
    """Evaluate every (label, graph) pair on every channel point, in input order."""
    graphs = list(graphs)
    lengths = {g.n for _, g in graphs}
    if len(lengths) > 1:
        raise ValueError(f"graphs have different code lengths: {sorted(lengths)}")
    rows = []
    for label, graph in graphs:
        decoder = BPDecoder(graph)
        for channel in channel_grid:
            point_seed = derive_seed(seed, label, channel.parameter)
            point = run_point(graph, channel, stop, point_seed, workers, max_iterations, decoder=decoder)
            if progress:
                progress(label, point)
            rows.append((label, point))
    return rows


def _g(x: float) -> str:
    return f"{x:.6g}"


def fer_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for label, p in rows:
        writer.writerow([
            label,
            p.channel.kind.value,
            _g(p.channel.parameter),
            p.frames,
            p.frame_errors,
            _g(p.fer),
            _g(p.ci95_low),
            _g(p.ci95_high),
            _g(p.mean_iterations),
            p.seed,
        ])
    return buf.getvalue()
