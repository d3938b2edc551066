"""Top-level verdicts and theorem checkers.

The M-property certificate rests on a sandwich of exact counts: the
mod-2 Betti sum of the real points is bounded by the Betti sum of the
complex points, which in turn is bounded by the total dimension of the
second complex page; the latter always equals the total of the first
real filtered page.  Equality of the two ends certifies both that the
variety is maximal and that both spectral sequences degenerate.  An
Inconclusive verdict exhibits no counterexample: higher differentials
might still vanish for reasons the dimension count cannot see.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .fan import Fan, fan_to_json
from .gf2 import Mat2
from .spectral import betti_real, e1_page, e2_dims, g_pages

__all__ = [
    "AnalysisError",
    "WrongRank",
    "NotComplete",
    "Inapplicable",
    "PreconditionFailed",
    "TheoremViolation",
    "MVerdict",
    "m_verdict",
    "SurfaceReport",
    "surface_betti_oracle",
    "betti_complex_nonsingular_complete",
    "BatchReport",
    "dim3_theorem_batch",
    "isolated_singularities_shape",
    "Dim3KernelReport",
    "dim3_kernel_analysis",
]


class AnalysisError(Exception):
    pass


class WrongRank(AnalysisError):
    pass


class NotComplete(AnalysisError):
    pass


class Inapplicable(AnalysisError):
    pass


class PreconditionFailed(AnalysisError):
    def __init__(self, message: str, offenders: Sequence[int] = ()):
        super().__init__(message)
        self.offenders = tuple(offenders)


class TheoremViolation(AnalysisError):
    """A rank <= 3 fan failed certification.  The theorem guarantees the
    M-property there, so this signals an implementation bug; the fan is
    attached for reproduction."""

    def __init__(self, message: str, fan_json: str):
        super().__init__(message)
        self.fan_json = fan_json


@dataclass(frozen=True)
class MVerdict:
    status: str  # "CertifiedM" | "Inconclusive"
    sum_betti_real: int
    total_e2: int
    total_g1: int
    gap: int
    notes: Tuple[str, ...]


def m_verdict(fan: Fan) -> MVerdict:
    """Certify the M-property by the sandwich of totals.

    sum b(R) <= sum b(C) <= total E2 = total G1; equality of the outer
    terms forces equality throughout, certifying maximality and the
    degeneration of both spectral sequences at the computed pages.
    """
    b = betti_real(fan)
    sbr = sum(b)
    total_e2 = e2_dims(fan).total()
    _, g1 = g_pages(fan)
    total_g1 = g1.total()
    assert total_g1 == total_e2, "filtered and orbit page totals must agree"
    assert sbr <= total_g1, "Betti sum cannot exceed a page total"
    gap = total_e2 - sbr
    notes = [
        f"betti_real = {b}, sum = {sbr}",
        f"total E2 = {total_e2}, total G1 = {total_g1} (equal by the page comparison)",
        "chain: sum b(R) <= sum b(C) <= total E2 = total G1",
    ]
    if gap == 0:
        status = "CertifiedM"
        notes.append(
            "outer terms equal: M-property certified and both sequences "
            "degenerate at the computed pages"
        )
    else:
        status = "Inconclusive"
        notes.append(
            f"gap = {gap}; no counterexample exhibited - higher "
            "differentials might still vanish for other reasons"
        )
    return MVerdict(status, sbr, total_e2, total_g1, gap, tuple(notes))


@dataclass(frozen=True)
class SurfaceReport:
    case: int
    betti_real: Tuple[int, int, int]
    betti_complex: Tuple[int, int, int, int, int]


def surface_betti_oracle(fan: Fan) -> SurfaceReport:
    """Closed-form Betti numbers of a complete surface by the mod-2 ray
    dichotomy: case 1 when at least two primitive ray generators differ
    mod 2, case 2 when all s rays share one image."""
    if fan.rank != 2:
        raise WrongRank(f"surface oracle needs rank 2, got {fan.rank}")
    if not fan.is_complete():
        raise NotComplete("surface oracle needs a complete fan")
    s = len(fan.rays)
    images = {tuple(c & 1 for c in r) for r in fan.rays}
    if len(images) == 1:
        return SurfaceReport(2, (1, s - 1, 2), (1, 0, s - 1, 1, 1))
    return SurfaceReport(1, (1, s - 2, 1), (1, 0, s - 2, 0, 1))


def betti_complex_nonsingular_complete(fan: Fan) -> List[int]:
    """Mod-2 Betti numbers b_0..b_{2n} of the complex points of a
    complete nonsingular toric variety: even degrees carry the fan's
    h-vector, odd degrees vanish."""
    if not fan.is_complete():
        raise Inapplicable("fan is not complete")
    if not fan.is_nonsingular():
        raise Inapplicable("fan is not nonsingular")
    h = fan.h_vector()
    out = [0] * (2 * fan.rank + 1)
    for k, v in enumerate(h):
        out[2 * k] = v
    return out


_PROFILES = ("complete", "subfan", "affine")


def _batch_case(case: Tuple[int, int, str]) -> Tuple[int, str, str, int, str]:
    from .constructions import random_fan

    rank, seed, profile = case
    fan = random_fan(rank, seed, profile)
    verdict = m_verdict(fan)
    if rank == 2 and profile == "complete":
        # independent closed-form path for complete surfaces
        rep = surface_betti_oracle(fan)
        assert rep.betti_real == tuple(betti_real(fan)), fan_to_json(fan)
        assert sum(rep.betti_complex) == verdict.total_e2, fan_to_json(fan)
    return (rank, profile, verdict.status, verdict.gap, fan_to_json(fan))


@dataclass
class BatchReport:
    count: int
    seed: int
    certified: int
    max_gap: int
    per_rank: Dict[int, int] = field(default_factory=dict)
    per_profile: Dict[str, int] = field(default_factory=dict)


def _worker_count(workers: Optional[int]) -> int:
    if workers is not None:
        return max(1, workers)
    env = os.environ.get("TORHOM_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            return 1
    return 1


def dim3_theorem_batch(
    count: int,
    seed: int,
    *,
    ranks: Sequence[int] = (1, 2, 3),
    profiles: Sequence[str] = _PROFILES,
    workers: Optional[int] = None,
) -> BatchReport:
    """Generate `count` seeded random fans across the given ranks (all
    <= 3) and profiles and certify every one.

    Any non-certified verdict raises TheoremViolation carrying the fan's
    JSON: maximality is a theorem in dimension <= 3, so a failure here
    means a bug, not a finding.  Worker count comes from the `workers`
    argument or the TORHOM_THREADS environment variable (default 1).
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if any(r not in (1, 2, 3) for r in ranks):
        raise WrongRank("batch ranks must be within 1..3")
    cases = []
    for i in range(count):
        rank = ranks[i % len(ranks)]
        profile = profiles[(i // len(ranks)) % len(profiles)]
        cases.append((rank, seed + i, profile))
    nworkers = _worker_count(workers)
    if nworkers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=nworkers) as pool:
            results = list(pool.map(_batch_case, cases, chunksize=8))
    else:
        results = [_batch_case(s) for s in cases]
    report = BatchReport(count=count, seed=seed, certified=0, max_gap=0)
    for rank, profile, status, gap, fan_json in results:
        if status != "CertifiedM":
            raise TheoremViolation(
                f"rank-{rank} {profile} fan not certified (gap {gap}); "
                "this contradicts the dimension <= 3 theorem and "
                "indicates an implementation bug",
                fan_json,
            )
        report.certified += 1
        report.max_gap = max(report.max_gap, gap)
        report.per_rank[rank] = report.per_rank.get(rank, 0) + 1
        report.per_profile[profile] = report.per_profile.get(profile, 0) + 1
    return report


def _mod2_regular(fan: Fan, ci: int) -> bool:
    """A cone is mod-2 regular when its rays are independent in N/2N (so
    they extend to a basis of the mod-2 lattice)."""
    cone = fan.cones[ci]
    if len(cone.rays) != cone.dim:
        return False
    rows = [[c & 1 for c in fan.rays[i]] for i in cone.rays]
    return Mat2.from_rows(rows, ncols=fan.rank).rank() == cone.dim


def isolated_singularities_shape(fan: Fan) -> bool:
    """For a complete fan all of whose non-maximal cones are mod-2
    regular (singularities confined to the deepest orbits), the second
    complex page must be supported on the two diagonals p = q and
    p = q + 1; returns whether it is."""
    if not fan.is_complete():
        raise PreconditionFailed("fan is not complete")
    maximal = set(fan.maximal_cones())
    offenders = [
        ci
        for ci in range(len(fan.cones))
        if ci not in maximal
        and fan.cones[ci].dim > 0
        and not _mod2_regular(fan, ci)
    ]
    if offenders:
        raise PreconditionFailed(
            "non-maximal cones are not mod-2 regular: "
            + ", ".join(str(fan.cones[ci].rays) for ci in offenders),
            offenders,
        )
    e2 = e2_dims(fan)
    return all(d == 0 or p - q in (0, 1) for (p, q), d in e2.entries.items())


@dataclass(frozen=True)
class Dim3KernelReport:
    has_codim2_cones: bool
    injective: Optional[bool]
    kernel_dim: int
    all_same_image: Optional[bool]
    common_image: Optional[Tuple[int, ...]]
    top_chain_kernel_dim: int
    top_graded_kernel_dim: int
    top_degeneration: bool
    note: str


def dim3_kernel_analysis(fan: Fan) -> Dim3KernelReport:
    """Diagnostic for the one potentially dangerous higher differential
    in rank 3.

    Reports whether the q = 1 first-page differential out of the deepest
    column is injective; when it is not, all codimension-2 cones must
    share one mod-2 image (the kernel is the common line they span), and
    degeneration at the top chain degree is confirmed by comparing the
    kernel of the unfiltered top boundary with the summed kernels of its
    graded pieces.
    """
    if fan.rank != 3:
        raise WrongRank(f"kernel analysis needs rank 3, got {fan.rank}")
    _, rows = e1_page(fan)
    d_top = rows[1].boundaries[2]  # q=1 row, chain degrees 3 -> 2
    kernel_dim = d_top.ncols - d_top.rank()

    from .spectral import real_complex

    rc = real_complex(fan)
    top_boundary = rc.chain.boundaries[2]
    top_chain_kernel = top_boundary.ncols - top_boundary.rank()
    g0, _ = g_pages(fan)
    top_graded_kernel = 0
    for cc in g0.complexes.values():
        b = cc.boundaries[2]
        top_graded_kernel += b.ncols - b.rank()

    codim2 = fan.strata[2]
    if not codim2:
        return Dim3KernelReport(
            has_codim2_cones=False,
            injective=None,
            kernel_dim=kernel_dim,
            all_same_image=None,
            common_image=None,
            top_chain_kernel_dim=top_chain_kernel,
            top_graded_kernel_dim=top_graded_kernel,
            top_degeneration=top_chain_kernel == top_graded_kernel,
            note="no codimension-2 cones: the target vanishes and "
            "injectivity is moot",
        )
    images = {
        tuple(c & 1 for c in fan.rays[fan.cones[ci].rays[0]]) for ci in codim2
    }
    if kernel_dim == 0:
        return Dim3KernelReport(
            has_codim2_cones=True,
            injective=True,
            kernel_dim=0,
            all_same_image=len(images) == 1,
            common_image=next(iter(images)) if len(images) == 1 else None,
            top_chain_kernel_dim=top_chain_kernel,
            top_graded_kernel_dim=top_graded_kernel,
            top_degeneration=top_chain_kernel == top_graded_kernel,
            note="q=1 differential out of the deepest column is injective; "
            "no dangerous higher differential",
        )
    assert len(images) == 1, (
        "non-injective q=1 differential but codimension-2 cones carry "
        "distinct mod-2 images; kernel reasoning is broken"
    )
    return Dim3KernelReport(
        has_codim2_cones=True,
        injective=False,
        kernel_dim=kernel_dim,
        all_same_image=True,
        common_image=next(iter(images)),
        top_chain_kernel_dim=top_chain_kernel,
        top_graded_kernel_dim=top_graded_kernel,
        top_degeneration=top_chain_kernel == top_graded_kernel,
        note="all codimension-2 cones share one mod-2 image; the graded "
        "and unfiltered top kernels agree, so the dangerous "
        "differential vanishes"
        if top_chain_kernel == top_graded_kernel
        else "graded and unfiltered top kernels differ",
    )
