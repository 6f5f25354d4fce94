"""Jacobian syzygies and Tjurina numbers of projective hypersurfaces.

The public entry points are re-exported here; see ``tjurina.cli`` for the
command line.
"""

from __future__ import annotations

from .errors import (
    ConeInput,
    InvariantViolation,
    NonIsolatedOrBug,
    NotHomogeneous,
    ParseError,
    TjurinaError,
    UnsupportedInput,
)
from .invariants import full_report, global_tjurina
from .oracle import brieskorn_tau, hilbert_tau, nodal_defect, suspend
from .parsing import parse_poly
from .poly import HomogeneousPoly, render
from .syzygy import ar_dim, clear_caches, er_dim, graded_dims, kr_dim, mder, mdr

__version__ = "0.1.0"

__all__ = [
    "ConeInput",
    "HomogeneousPoly",
    "InvariantViolation",
    "NonIsolatedOrBug",
    "NotHomogeneous",
    "ParseError",
    "TjurinaError",
    "UnsupportedInput",
    "ar_dim",
    "brieskorn_tau",
    "clear_caches",
    "er_dim",
    "full_report",
    "global_tjurina",
    "graded_dims",
    "hilbert_tau",
    "kr_dim",
    "mder",
    "mdr",
    "nodal_defect",
    "parse_poly",
    "render",
    "suspend",
]
