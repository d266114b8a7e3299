"""Generalized suffix arrays of collections of similar strings, built from
enhanced compressed matching statistics against a reference."""
from ._backend import BACKEND
from .cms_store import ECMSStore, EmsEntry, build_store, ems_at, ihead_pred
from .gsa_builder import BuildStats, Collection, GSAResult, build_ecms, build_gsa
from .matching_stats import DocHeads, compute_ecms
from .reference_index import ReferenceIndex, build_reference_index

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BuildStats", "Collection", "DocHeads", "ECMSStore", "EmsEntry",
    "GSAResult", "ReferenceIndex", "build_ecms", "build_gsa", "build_reference_index",
    "build_store", "compute_ecms", "ems_at", "ihead_pred",
]
