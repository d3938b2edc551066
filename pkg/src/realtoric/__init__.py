"""Exact mod-2 topology of real and complex toric varieties from fans.

Given a rational fan, this package computes closed-support mod-2 Betti
numbers of the real points, the first and second pages of the complex
orbit spectral sequence, the filtered pages on the real side, and an
M-variety certificate obtained by sandwiching the real Betti sum between
exact page totals.  All arithmetic is exact (arbitrary-precision
integers and bit-packed GF(2) linear algebra).
"""
from .analysis import (
    BatchReport,
    Dim3KernelReport,
    MVerdict,
    SurfaceReport,
    betti_complex_nonsingular_complete,
    dim3_kernel_analysis,
    dim3_theorem_batch,
    isolated_singularities_shape,
    m_verdict,
    surface_betti_oracle,
)
from .constructions import (
    affine_fan,
    cyclic_polytope_normal_fan,
    hirzebruch_fan,
    product_fan,
    projective_space_fan,
    random_fan,
    same_mod2_surface_fan,
    torus_fan,
    weighted_projective_fan,
)
from .fan import (
    BadIntersection,
    Cone,
    Fan,
    FanError,
    NonPrimitiveRay,
    NotPointed,
    ParseError,
    ValidationError,
    fan_from_json,
    fan_to_json,
    from_maximal_cones,
    read_json,
    write_json,
)
from .spectral import (
    PageTable,
    RealComplex,
    betti_real,
    e1_page,
    e2_dims,
    g_pages,
    real_complex,
    rightmost_column_split,
)

__version__ = "0.1.0"

__all__ = [
    "BadIntersection",
    "BatchReport",
    "Cone",
    "Dim3KernelReport",
    "Fan",
    "FanError",
    "MVerdict",
    "NonPrimitiveRay",
    "NotPointed",
    "PageTable",
    "ParseError",
    "RealComplex",
    "SurfaceReport",
    "ValidationError",
    "affine_fan",
    "betti_complex_nonsingular_complete",
    "betti_real",
    "cyclic_polytope_normal_fan",
    "dim3_kernel_analysis",
    "dim3_theorem_batch",
    "e1_page",
    "e2_dims",
    "fan_from_json",
    "fan_to_json",
    "from_maximal_cones",
    "g_pages",
    "hirzebruch_fan",
    "isolated_singularities_shape",
    "m_verdict",
    "product_fan",
    "projective_space_fan",
    "random_fan",
    "read_json",
    "real_complex",
    "rightmost_column_split",
    "same_mod2_surface_fan",
    "surface_betti_oracle",
    "torus_fan",
    "weighted_projective_fan",
    "write_json",
]
