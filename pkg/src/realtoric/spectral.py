"""Spectral-sequence pages over GF(2) for a rational fan.

Complex side: the orbit filtration of the complex points gives an E page
whose first-page rows are chain complexes of exterior powers of orbit
lattices; the second page is their homology.

Real side: the closed-support homology of the real points is computed by
a cellular complex whose degree-p term is the direct sum of the group
algebras F_2[V(sigma)] over codimension-p cones.  Filtering each group
algebra by powers of the augmentation ideal yields G pages indexed in
the second quadrant; the first G page is expected to match the second E
page under reindexing, and the match is tested rather than assumed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Tuple

from .fan import Fan
from .gf2 import ChainComplex, Mat2, assemble_blocks, exterior_power
from .orbitalg import group_algebra_map, induced_projection_mod2, y_basis_change

__all__ = [
    "PageTable",
    "RealComplex",
    "e1_page",
    "e2_dims",
    "real_complex",
    "betti_real",
    "g_pages",
    "rightmost_column_split",
    "real_position_of_complex",
    "complex_position_of_real",
]


@dataclass
class PageTable:
    """Dimensions of one spectral-sequence page.

    entries maps (p, q) to a dimension; structural zeros are stored so
    table lookups never need support bookkeeping.  E pages live in the
    triangle 0 <= q <= p <= rank; G pages in the second quadrant with
    -rank <= p <= 0.  For a G0 table, complexes holds the graded
    complexes (one per filtration level) whose homology is G1.
    """

    label: str
    entries: Dict[Tuple[int, int], int]
    complexes: Optional[Dict[int, ChainComplex]] = None

    def get(self, p: int, q: int) -> int:
        return self.entries.get((p, q), 0)

    def total(self) -> int:
        return sum(self.entries.values())

    def triples(self) -> List[Tuple[int, int, int]]:
        """Flat [(p, q, dim)] listing, sorted by position."""
        return [(p, q, d) for (p, q), d in sorted(self.entries.items())]

    def nonzero(self) -> List[Tuple[int, int, int]]:
        return [(p, q, d) for (p, q), d in sorted(self.entries.items()) if d]


def real_position_of_complex(p: int, q: int) -> Tuple[int, int]:
    """E-page position (p, q) viewed on the G side: (-q, p + q)."""
    return (-q, p + q)


def complex_position_of_real(p: int, q: int) -> Tuple[int, int]:
    """G-page position (p, q) viewed on the E side: (p + q, -p)."""
    return (p + q, -p)


def _pairs_by_codim(fan: Fan) -> Dict[int, List[Tuple[int, int]]]:
    """Facet pairs (si, ti) grouped by the codimension of the source si."""
    out: Dict[int, List[Tuple[int, int]]] = {}
    for si, ti in fan.facet_pairs():
        p = fan.rank - fan.cones[si].dim
        out.setdefault(p, []).append((si, ti))
    return out


def e1_page(fan: Fan) -> Tuple[PageTable, Dict[int, ChainComplex]]:
    """First page of the complex orbit spectral sequence.

    Returns the dimension table and, for each q, the row complex whose
    degree-p term is the sum of q-th exterior powers of the orbit spaces
    of codimension-p cones; boundary blocks are exterior powers of the
    induced projections over facet pairs.
    """
    n = fan.rank
    pairs = _pairs_by_codim(fan)
    entries: Dict[Tuple[int, int], int] = {}
    complexes: Dict[int, ChainComplex] = {}
    for q in range(n + 1):
        dims = [len(fan.strata[p]) * comb(p, q) for p in range(n + 1)]
        boundaries = []
        for p in range(1, n + 1):
            src = fan.strata[p]
            dst = fan.strata[p - 1]
            src_pos = {ci: j for j, ci in enumerate(src)}
            dst_pos = {ci: i for i, ci in enumerate(dst)}
            blocks = {
                (dst_pos[ti], src_pos[si]): exterior_power(
                    induced_projection_mod2(fan, si, ti), q
                )
                for si, ti in pairs.get(p, [])
            }
            boundaries.append(
                assemble_blocks(
                    [comb(p - 1, q)] * len(dst), [comb(p, q)] * len(src), blocks
                )
            )
        complexes[q] = ChainComplex(dims, boundaries)
        for p in range(q, n + 1):
            entries[(p, q)] = dims[p]
    return PageTable("E1", entries), complexes


def e2_dims(fan: Fan) -> PageTable:
    """Second page: homology of each E1 row complex."""
    _, complexes = e1_page(fan)
    entries: Dict[Tuple[int, int], int] = {}
    for q, cc in complexes.items():
        h = cc.homology_dims()
        for p in range(q, fan.rank + 1):
            entries[(p, q)] = h[p]
    return PageTable("E2", entries)


@dataclass
class RealComplex:
    """Cellular complex of the real points.

    chain.dims[p] = |Delta^p| * 2^p; block_index maps (degree, cone
    index) to the (offset, size) coordinate range of that cone's group
    algebra inside the degree-p term.
    """

    chain: ChainComplex
    block_index: Dict[Tuple[int, int], Tuple[int, int]] = field(repr=False)


def real_complex(fan: Fan) -> RealComplex:
    """Chain complex of 2-torsion group algebras computing the
    closed-support mod-2 homology of the real points."""
    n = fan.rank
    pairs = _pairs_by_codim(fan)
    dims = [len(fan.strata[p]) << p for p in range(n + 1)]
    block_index: Dict[Tuple[int, int], Tuple[int, int]] = {}
    for p in range(n + 1):
        for j, ci in enumerate(fan.strata[p]):
            block_index[(p, ci)] = (j << p, 1 << p)
    boundaries = []
    for p in range(1, n + 1):
        src = fan.strata[p]
        dst = fan.strata[p - 1]
        src_pos = {ci: j for j, ci in enumerate(src)}
        dst_pos = {ci: i for i, ci in enumerate(dst)}
        blocks = {
            (dst_pos[ti], src_pos[si]): group_algebra_map(
                induced_projection_mod2(fan, si, ti)
            )
            for si, ti in pairs.get(p, [])
        }
        boundaries.append(
            assemble_blocks([1 << (p - 1)] * len(dst), [1 << p] * len(src), blocks)
        )
    return RealComplex(ChainComplex(dims, boundaries), block_index)


def betti_real(fan: Fan) -> List[int]:
    """Closed-support mod-2 Betti numbers b_0..b_n of the real points."""
    return real_complex(fan).chain.homology_dims()


def _level_masks(p: int, k: int) -> List[int]:
    """Bitmasks of the k-subsets of a p-element set, in the order of
    combinations(range(p), k): the column order of exterior powers."""
    out = []
    for c in combinations(range(p), k):
        m = 0
        for i in c:
            m |= 1 << i
        out.append(m)
    return out


def _conjugated_boundaries(fan: Fan) -> Tuple[List[List[int]], List[Mat2]]:
    """Real-complex boundaries rewritten in the y basis of every group
    algebra block, together with the filtration level (subset size) of
    each coordinate per degree."""
    rc = real_complex(fan)
    n = fan.rank
    levels: List[List[int]] = []
    zetas: List[Mat2] = []
    for p in range(n + 1):
        count = len(fan.strata[p])
        z = y_basis_change(p)
        blocks = {(j, j): z for j in range(count)}
        zetas.append(assemble_blocks([1 << p] * count, [1 << p] * count, blocks))
        levels.append([(m & ((1 << p) - 1)).bit_count() for m in range(1 << p)] * count)
    conj = []
    for p in range(1, n + 1):
        d = rc.chain.boundaries[p - 1]
        conj.append(zetas[p - 1] @ d @ zetas[p])
    return levels, conj


def g_pages(fan: Fan, *, shortcut: bool = False) -> Tuple[PageTable, PageTable]:
    """G0 and G1 pages of the augmentation-ideal filtration on the real
    cellular complex, indexed at (-k, m + k) for filtration level k and
    chain degree m.

    The default path builds the graded complexes directly from the
    filtered complex (conjugating by the y-basis change and checking
    that every boundary respects the filtration), so the identity with
    the complex-side second page stays an independent cross-check.  With
    shortcut=True the graded complexes are taken to be the E1 row
    complexes under reindexing, which is faster but not independent.
    """
    n = fan.rank
    if shortcut:
        _, complexes = e1_page(fan)
    else:
        levels, conj = _conjugated_boundaries(fan)
        for p in range(1, n + 1):
            d = conj[p - 1]
            row_levels = levels[p - 1]
            col_levels = levels[p]
            for r, bits in enumerate(d.rows):
                while bits:
                    low = bits & -bits
                    c = low.bit_length() - 1
                    assert row_levels[r] >= col_levels[c], (
                        "boundary does not respect the augmentation filtration"
                    )
                    bits ^= low
        complexes = {}
        for k in range(n + 1):
            select: List[List[int]] = []
            for p in range(n + 1):
                idx = []
                masks = _level_masks(p, k)
                for j in range(len(fan.strata[p])):
                    off = j << p
                    idx.extend(off + m for m in masks)
                select.append(idx)
            dims = [len(ix) for ix in select]
            boundaries = [
                conj[p - 1].submatrix(select[p - 1], select[p])
                for p in range(1, n + 1)
            ]
            complexes[k] = ChainComplex(dims, boundaries)
    g0_entries: Dict[Tuple[int, int], int] = {}
    g1_entries: Dict[Tuple[int, int], int] = {}
    for k, cc in complexes.items():
        h = cc.homology_dims()
        for m in range(k, n + 1):
            g0_entries[(-k, m + k)] = cc.dims[m]
            g1_entries[(-k, m + k)] = h[m]
    return (
        PageTable("G0", g0_entries, complexes=complexes),
        PageTable("G1", g1_entries),
    )


def rightmost_column_split(fan: Fan) -> bool:
    """Whether the real cellular complex splits off the span of the unit
    group elements as a direct summand.

    In the y basis the unit of each group algebra is the level-0
    coordinate, so the split holds exactly when every boundary entry
    couples a level-0 column to level-0 rows only and a positive-level
    column to positive-level rows only.  This makes every differential
    leaving the rightmost G column vanish on all pages.
    """
    levels, conj = _conjugated_boundaries(fan)
    for p in range(1, len(levels)):
        d = conj[p - 1]
        row_levels = levels[p - 1]
        col_levels = levels[p]
        for r, bits in enumerate(d.rows):
            while bits:
                low = bits & -bits
                c = low.bit_length() - 1
                if (row_levels[r] == 0) != (col_levels[c] == 0):
                    return False
                bits ^= low
    return True
