"""Regions of the Shi arrangements of types A and C.

Geometry (exact region enumeration), combinatorics (root posets, nonnesting
partitions, sequences) and the bijections between them.
"""
from .bijections import RegionAddress, phi, phi_A, phi_C, phi_inverse
from .errors import ResourceLimitError, ValidationError
from .geometry import build_arrangement, enumerate_regions, geometric_census
from .identities import QPolynomial, VerificationReport, gf_statistic, sk_mk_counts, verify
from .model import SetPartition, Window, enumerate_nonnesting
from .posets import RootPoset, antichain_count_total, antichains, floors_of, root_poset

__version__ = "0.1.0"

__all__ = [
    "QPolynomial",
    "RegionAddress",
    "ResourceLimitError",
    "RootPoset",
    "SetPartition",
    "ValidationError",
    "VerificationReport",
    "Window",
    "antichain_count_total",
    "antichains",
    "build_arrangement",
    "enumerate_nonnesting",
    "enumerate_regions",
    "floors_of",
    "geometric_census",
    "gf_statistic",
    "phi",
    "phi_A",
    "phi_C",
    "phi_inverse",
    "root_poset",
    "sk_mk_counts",
    "verify",
]
