"""Irregular LDPC construction by progressive edge growth with free check-degree selection."""

__version__ = "0.1.0"

from .degree_model import (
    DegreeDistribution,
    DegreeSequence,
    balance_sockets,
    design_rate,
    edge_to_node_fractions,
    parse_distribution,
    quantize_sequence,
)
from .tanner_graph import (
    TannerGraph,
    degree2_chain_report,
    from_alist,
    girth,
    local_girth,
    rho_compliance,
    to_alist,
)
from .peg_construct import PegConfig, PegVariant, build_code, construct, expand_subgraph
from .bp_decoder import BPDecoder, awgn_llr, bsc_llr, decode, syndrome
from .channel_sim import ChannelSpec, FerPoint, StopRule, run_point, sweep, wilson_interval

__all__ = [
    "BPDecoder",
    "ChannelSpec",
    "DegreeDistribution",
    "DegreeSequence",
    "FerPoint",
    "PegConfig",
    "PegVariant",
    "StopRule",
    "TannerGraph",
    "awgn_llr",
    "balance_sockets",
    "bsc_llr",
    "build_code",
    "construct",
    "decode",
    "degree2_chain_report",
    "design_rate",
    "edge_to_node_fractions",
    "expand_subgraph",
    "from_alist",
    "girth",
    "local_girth",
    "parse_distribution",
    "quantize_sequence",
    "rho_compliance",
    "run_point",
    "sweep",
    "syndrome",
    "to_alist",
    "wilson_interval",
]
