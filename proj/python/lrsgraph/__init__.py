"""Nonnegative low-rank and sparse affinity graphs.

Thin wrapper over the C++ core: convex coefficient solves, graph
construction, joint embedding learning, and graph label propagation.
"""

from ._core import (
    SolverConfig,
    Solution,
    block_mass_fraction,
    build_graph,
    knn_graph,
    l21_shrink,
    laplacian,
    make_subspace_dataset,
    normalize_samples,
    objective,
    pca_embed,
    propagate,
    soft_threshold,
    solve,
    solve_ef,
    spectral_norm_sq,
    svt,
)

__all__ = [
    "SolverConfig",
    "Solution",
    "block_mass_fraction",
    "build_graph",
    "knn_graph",
    "l21_shrink",
    "laplacian",
    "make_subspace_dataset",
    "normalize_samples",
    "objective",
    "pca_embed",
    "propagate",
    "soft_threshold",
    "solve",
    "solve_ef",
    "spectral_norm_sq",
    "svt",
]
