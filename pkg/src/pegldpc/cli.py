"""Command-line front end.

Every command that writes an artifact also writes ``<artifact>.manifest.json``
holding the fully resolved argument list; ``pegldpc rerun MANIFEST``
replays it and reproduces the artifact byte for byte.

Exit status: 0 success, 1 construction/simulation failure, 2 usage or
validation error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import secrets
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .bp_decoder import MAX_ITERATIONS, decode
from .channel_sim import ChannelSpec, StopRule, fer_csv, sweep
from .degree_model import (
    DistributionError,
    InfeasibleError,
    balance_sockets,
    parse_distribution,
    quantize_sequence,
)
from .peg_construct import ConstructionError, PegConfig, PegVariant, construct
from .tanner_graph import (
    AlistError,
    degree2_chain_report,
    from_alist,
    girth,
    rho_compliance,
    to_alist,
)


class UsageError(Exception):
    pass


def _g(x) -> str:
    if x is None:
        return "NA"
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return f"{x:.6g}" if isinstance(x, float) else str(x)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _digest(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _write_manifest(artifact: Path, command: str, argv: list[str], inputs: list[str], seed: int | None) -> None:
    manifest = {
        "tool": "pegldpc",
        "version": __version__,
        "command": command,
        "argv": argv,
        "seed": seed,
        "inputs": {p: _digest(p) for p in inputs},
    }
    Path(f"{artifact}.manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _resolved_argv(args, seed: int) -> list[str]:
    argv = list(args.argv)
    if args.seed is None:
        argv += ["--seed", str(seed)]
    return argv


def _seed(args) -> int:
    return args.seed if args.seed is not None else secrets.randbits(64)


def _distributions(args):
    lam = parse_distribution(_read(args.lambda_file), side="symbol")
    rho = parse_distribution(_read(args.rho_file), side="check")
    return lam, rho


def _grid(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"bad grid {text!r}") from None


def cmd_construct(args) -> int:
    seed = _seed(args)
    lam, rho = _distributions(args)
    symbol_seq = quantize_sequence(lam, args.n)
    check_seq = balance_sockets(symbol_seq, rho)
    config = PegConfig(PegVariant(args.variant), args.relaxed, seed, args.max_depth)
    graph, report = construct(config, symbol_seq, check_seq, rho)
    out = Path(args.out)
    out.write_text(to_alist(graph))
    Path(f"{out}.log").write_text(report.to_log())
    _write_manifest(out, "construct", _resolved_argv(args, seed), [args.lambda_file, args.rho_file], seed)
    print(f"n {graph.n} m {graph.m} edges {graph.n_edges}")
    print(f"girth {_g(report.girth)}")
    print(f"eta_edge {_g(report.eta_edge)}")
    print(f"eta_node {_g(report.eta_node)}")
    print(f"overfill {report.overfill_count}")
    return 0


def _spectrum(degrees) -> str:
    values, counts = np.unique(degrees, return_counts=True)
    return " ".join(f"{v}:{c}" for v, c in zip(values.tolist(), counts.tolist()))


def cmd_analyze(args) -> int:
    graph = from_alist(_read(args.alist))
    chain = degree2_chain_report(graph)
    print(f"n {graph.n}")
    print(f"m {graph.m}")
    print(f"edges {graph.n_edges}")
    print(f"symbol_degrees {_spectrum(graph.symbol_degrees())}")
    print(f"check_degrees {_spectrum(graph.check_degrees())}")
    print(f"girth {_g(girth(graph))}")
    print(f"degree2_acyclic {str(chain.acyclic).lower()}")
    print(f"degree2_chains {chain.chain_count}")
    print(f"degree2_longest_chain {chain.longest_chain}")
    if args.rho_file:
        rho = parse_distribution(_read(args.rho_file), side="check")
        print(f"eta_edge {_g(rho_compliance(graph, rho, 'edge'))}")
        print(f"eta_node {_g(rho_compliance(graph, rho, 'node'))}")
    return 0


def cmd_decode(args) -> int:
    graph = from_alist(_read(args.alist))
    try:
        llr = np.array([float(t) for t in _read(args.llr).split()])
    except ValueError:
        raise UsageError(f"{args.llr}: LLR file must hold whitespace-separated reals") from None
    if llr.shape != (graph.n,):
        raise UsageError(f"{args.llr}: expected {graph.n} LLRs, got {llr.size}")
    res = decode(graph, llr, args.max_iterations)
    text = (
        "".join(str(b) for b in res.hard_decision.tolist())
        + f"\niterations {res.iterations_used}\nsyndrome_zero {str(res.syndrome_zero).lower()}\n"
    )
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _channels(args, rate: float) -> list[ChannelSpec]:
    return [ChannelSpec(args.channel, p, rate, args.snr_convention) for p in _grid(args.grid)]


def _stop(args) -> StopRule:
    return StopRule(args.min_errors, args.max_frames)


def _progress(label, p):
    print(
        f"{label} {p.channel.kind.value} {_g(p.channel.parameter)} frames {p.frames} "
        f"errors {p.frame_errors} fer {_g(p.fer)}",
        file=sys.stderr,
        flush=True,
    )


def cmd_simulate(args) -> int:
    seed = _seed(args)
    codes = []
    for spec in args.codes:
        label, sep, path = spec.partition("=")
        if not sep:
            label, path = Path(spec).stem, spec
        codes.append((label, from_alist(_read(path)), path))
    graphs = [(label, g) for label, g, _ in codes]
    rate = args.rate if args.rate is not None else 1.0 - graphs[0][1].m / graphs[0][1].n
    rows = sweep(graphs, _channels(args, rate), _stop(args), seed, args.workers, args.max_iterations, _progress)
    out = Path(args.out)
    out.write_text(fer_csv(rows))
    _write_manifest(out, "simulate", _resolved_argv(args, seed), [p for _, _, p in codes], seed)
    print(f"wrote {len(rows)} rows to {out}")
    return 0


def cmd_compare(args) -> int:
    seed = _seed(args)
    lam, rho = _distributions(args)
    symbol_seq = quantize_sequence(lam, args.n)
    check_seq = balance_sockets(symbol_seq, rho)
    prefix = Path(args.out)
    summary = ["variant girth eta_edge eta_node overfill" + (" girth_relaxed eta_edge_relaxed eta_node_relaxed" if args.relaxed else "")]
    graphs = []
    for variant in PegVariant:
        graph, report = construct(PegConfig(variant, False, seed), symbol_seq, check_seq, rho)
        alist_path = Path(f"{prefix}.v{int(variant)}.alist")
        alist_path.write_text(to_alist(graph))
        graphs.append((f"v{int(variant)}", graph))
        row = f"{int(variant)} {_g(report.girth)} {_g(report.eta_edge)} {_g(report.eta_node)} {report.overfill_count}"
        if args.relaxed:
            if variant.uses_fcd:
                _, rel = construct(PegConfig(variant, True, seed), symbol_seq, check_seq, rho)
                row += f" {_g(rel.girth)} {_g(rel.eta_edge)} {_g(rel.eta_node)}"
            else:
                row += " -- -- --"
        summary.append(row)
    summary_path = Path(f"{prefix}.summary.txt")
    summary_path.write_text("\n".join(summary) + "\n")
    print("\n".join(summary))
    inputs = [args.lambda_file, args.rho_file]
    if args.grid:
        rate = 1.0 - len(check_seq) / args.n
        rows = sweep(graphs, _channels(args, rate), _stop(args), seed, args.workers, args.max_iterations, _progress)
        csv_path = Path(f"{prefix}.csv")
        csv_path.write_text(fer_csv(rows))
        _write_manifest(csv_path, "compare", _resolved_argv(args, seed), inputs, seed)
    _write_manifest(summary_path, "compare", _resolved_argv(args, seed), inputs, seed)
    return 0


def cmd_rerun(args) -> int:
    try:
        manifest = json.loads(_read(args.manifest))
        argv = list(manifest["argv"])
    except (json.JSONDecodeError, KeyError, TypeError):
        raise UsageError(f"{args.manifest}: not a pegldpc manifest") from None
    for path, digest in manifest.get("inputs", {}).items():
        if not Path(path).exists() or _digest(path) != digest:
            raise UsageError(f"input {path} changed since the manifest was written")
    # construct has no simulation stage, so a worker override does not apply
    if args.workers is not None and manifest.get("command") in ("simulate", "compare"):
        argv += ["--workers", str(args.workers)]
    return main(argv)


def _add_sim_flags(p, grid_required: bool):
    p.add_argument("--channel", choices=["bsc", "awgn"], default="bsc")
    p.add_argument("--grid", required=grid_required, help="comma-separated channel parameters")
    p.add_argument("--min-errors", type=int, default=100)
    p.add_argument("--max-frames", type=int, default=1_000_000)
    p.add_argument("--max-iterations", type=int, default=MAX_ITERATIONS)
    p.add_argument("--snr-convention", choices=["ebn0", "esn0"], default="ebn0")
    p.add_argument("--workers", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pegldpc", description="PEG LDPC construction and evaluation")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a code from lambda/rho files")
    p.add_argument("--lambda", dest="lambda_file", required=True)
    p.add_argument("--rho", dest="rho_file", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--variant", type=int, choices=range(1, 6), default=4)
    p.add_argument("--relaxed", action="store_true")
    p.add_argument("--seed", type=int)
    p.add_argument("--max-depth", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("analyze", help="structural report for an alist file")
    p.add_argument("alist")
    p.add_argument("--rho", dest="rho_file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("decode", help="BP-decode one LLR vector")
    p.add_argument("alist")
    p.add_argument("llr")
    p.add_argument("--max-iterations", type=int, default=MAX_ITERATIONS)
    p.add_argument("--out")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("simulate", help="FER sweep over one or more codes")
    p.add_argument("--code", dest="codes", action="append", required=True, metavar="[LABEL=]ALIST")
    p.add_argument("--seed", type=int)
    p.add_argument("--rate", type=float, help="code rate for the Eb/N0 mapping (default 1 - m/n)")
    p.add_argument("--out", required=True)
    _add_sim_flags(p, grid_required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("compare", help="all five variants from one input pair")
    p.add_argument("--lambda", dest="lambda_file", required=True)
    p.add_argument("--rho", dest="rho_file", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--relaxed", action="store_true", help="add relaxed-selection columns")
    p.add_argument("--out", required=True, help="output prefix")
    _add_sim_flags(p, grid_required=False)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("rerun", help="replay a manifest")
    p.add_argument("manifest")
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_rerun)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(argv)
    args.argv = argv
    try:
        return args.func(args)
    except (UsageError, DistributionError, InfeasibleError, AlistError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConstructionError as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
