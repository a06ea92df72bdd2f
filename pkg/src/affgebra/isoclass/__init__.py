"""Isomorphism action, gauge reduction and canonical forms."""

from .canonical import canonicalize, gauge_reduce, invariants, jordan_split
from .families import FAMILIES, REGISTRY, CanonicalForm, Family, families_for, notes_for
from .moves import IsoMove, apply_iso, compose, compose_all, replay
from .search import DEFAULT_GRID, SearchResult, orbit_search

__all__ = [
    "CanonicalForm", "DEFAULT_GRID", "FAMILIES", "Family", "IsoMove", "REGISTRY", "SearchResult",
    "apply_iso", "canonicalize", "compose", "compose_all", "families_for", "gauge_reduce",
    "invariants", "jordan_split", "notes_for", "orbit_search", "replay",
]
