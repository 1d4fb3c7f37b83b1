"""Canonical Ramsey reduction engine."""

from ._canram import (
    CanramError,
    Coloring,
    Report,
    analyze_fn,
    atoms,
    cascade,
    find,
    is_canonical,
    reach,
    selftest,
    signature,
    sparsity,
    verify,
)

__all__ = [
    "CanramError",
    "Coloring",
    "Report",
    "analyze_fn",
    "atoms",
    "cascade",
    "find",
    "is_canonical",
    "reach",
    "selftest",
    "signature",
    "sparsity",
    "verify",
]
