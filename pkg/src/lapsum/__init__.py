"""Laplacian eigenvalue sums, threshold graphs and the upper bounds on s_k(G)."""

from __future__ import annotations

from lapsum.graph import Graph, GraphError, parse_graph6, write_graph6
from lapsum.spectra import ConvergenceError, Spectrum, laplacian_spectrum, top_sum
from lapsum.threshold import CreationSequence, is_threshold, threshold_from_sequence, threshold_recognize
from lapsum.verify import Verdict, brouwer_check, full_brouwer, ng_check

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "CreationSequence",
    "Graph",
    "GraphError",
    "Spectrum",
    "Verdict",
    "brouwer_check",
    "full_brouwer",
    "is_threshold",
    "laplacian_spectrum",
    "ng_check",
    "parse_graph6",
    "threshold_from_sequence",
    "threshold_recognize",
    "top_sum",
    "write_graph6",
]
