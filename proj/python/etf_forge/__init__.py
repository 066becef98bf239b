"""Equiangular tight frames of size d x 2d from skew Hadamard matrices."""

from ._core import (
    EtfError,
    alternating_projections,
    build_size,
    build_skew_etf,
    conference_signature,
    core_adjacency,
    double_etf,
    double_hadamard,
    double_signature,
    doubling_constants,
    doubling_feasible,
    frame_params,
    mercedes_benz,
    naimark_complement,
    paley_skew_hadamard,
    plan_size,
    read_matrix,
    size_report_tsv,
    strohmer_signature,
    synthesize,
    verify_etf,
    verify_signature,
    welch_mu,
    write_matrix,
)

__all__ = [
    "EtfError",
    "alternating_projections",
    "build_size",
    "build_skew_etf",
    "conference_signature",
    "core_adjacency",
    "double_etf",
    "double_hadamard",
    "double_signature",
    "doubling_constants",
    "doubling_feasible",
    "frame_params",
    "mercedes_benz",
    "naimark_complement",
    "paley_skew_hadamard",
    "plan_size",
    "read_matrix",
    "size_report_tsv",
    "strohmer_signature",
    "synthesize",
    "verify_etf",
    "verify_signature",
    "welch_mu",
    "write_matrix",
]
