"""Page tables, the real cellular complex, and the filtered/orbit comparison."""
from __future__ import annotations

import random
from math import comb

from conftest import apply_unimodular, relabel_rays

from realtoric.constructions import (
    affine_fan,
    hirzebruch_fan,
    product_fan,
    projective_space_fan,
    random_fan,
    same_mod2_surface_fan,
    torus_fan,
    weighted_projective_fan,
)
from realtoric.spectral import (
    betti_real,
    complex_position_of_real,
    e1_page,
    e2_dims,
    g_pages,
    real_complex,
    real_position_of_complex,
    rightmost_column_split,
)

SMALL_FANS = lambda: [
    projective_space_fan(1),
    projective_space_fan(2),
    projective_space_fan(3),
    hirzebruch_fan(2),
    weighted_projective_fan(1, 1, 2),
    same_mod2_surface_fan(4),
    torus_fan(2),
    affine_fan(2, [(1, 0), (1, 2)]),
    product_fan(projective_space_fan(1), projective_space_fan(1)),
]


def random_sample(count: int = 24):
    fans = []
    for i in range(count):
        rank = 1 + i % 3
        profile = ("complete", "subfan", "affine")[(i // 3) % 3]
        fans.append(random_fan(rank, 1000 + i, profile))
    return fans


def test_positions_are_inverse_bijections():
    for p in range(-6, 7):
        for q in range(-6, 13):
            assert complex_position_of_real(*real_position_of_complex(p, q)) == (p, q)
            assert real_position_of_complex(*complex_position_of_real(p, q)) == (p, q)


def test_e1_page_of_projective_line():
    fan = projective_space_fan(1)
    table, rows = e1_page(fan)
    assert sorted(table.entries.items()) == [((0, 0), 2), ((1, 0), 1), ((1, 1), 1)]
    assert table.total() == 4
    assert rows[0].dims == [2, 1]
    assert rows[1].dims == [0, 1]


def test_e2_page_of_projective_line():
    table = e2_dims(projective_space_fan(1))
    assert sorted(table.entries.items()) == [((0, 0), 1), ((1, 0), 0), ((1, 1), 1)]
    assert table.total() == 2


def test_e1_dims_formula():
    for fan in SMALL_FANS():
        table, _ = e1_page(fan)
        for p in range(fan.rank + 1):
            for q in range(p + 1):
                assert table.get(p, q) == len(fan.strata[p]) * comb(p, q)


def test_e_page_support_triangle():
    for fan in SMALL_FANS():
        n = fan.rank
        want = {(p, q) for p in range(n + 1) for q in range(p + 1)}
        table, _ = e1_page(fan)
        assert set(table.entries) == want
        assert set(e2_dims(fan).entries) == want


def test_g_page_support_second_quadrant():
    for fan in SMALL_FANS():
        n = fan.rank
        want = {(-k, m + k) for k in range(n + 1) for m in range(k, n + 1)}
        g0, g1 = g_pages(fan)
        assert set(g0.entries) == want
        assert set(g1.entries) == want


def test_real_complex_dimensions_and_blocks():
    fan = projective_space_fan(2)
    rc = real_complex(fan)
    assert rc.chain.dims == [3, 6, 4]
    for (p, ci), (off, size) in rc.block_index.items():
        assert size == 1 << p
        assert 0 <= off <= rc.chain.dims[p] - size
        assert fan.rank - fan.cones[ci].dim == p


def test_betti_real_known_values():
    assert betti_real(projective_space_fan(1)) == [1, 1]
    assert betti_real(projective_space_fan(2)) == [1, 1, 1]
    assert betti_real(torus_fan(1)) == [0, 2]
    assert betti_real(torus_fan(2)) == [0, 0, 4]
    assert betti_real(affine_fan(1, [(1,)])) == [0, 1]
    assert betti_real(affine_fan(2, [(1, 0), (0, 1)])) == [0, 0, 1]
    p1 = projective_space_fan(1)
    assert betti_real(product_fan(p1, p1)) == [1, 2, 1]
    assert betti_real(same_mod2_surface_fan(4)) == [1, 3, 2]


def test_q0_row_of_e2_for_complete_fans():
    for fan in SMALL_FANS():
        if not fan.is_complete():
            continue
        e2 = e2_dims(fan)
        assert e2.get(0, 0) == 1
        for p in range(1, fan.rank + 1):
            assert e2.get(p, 0) == 0


def test_transpose_identity_on_examples_and_random_fans():
    for fan in SMALL_FANS() + random_sample():
        e2 = e2_dims(fan)
        _, g1 = g_pages(fan)
        for (p, q), d in g1.entries.items():
            assert d == e2.get(*complex_position_of_real(p, q))
        for (p, q), d in e2.entries.items():
            assert d == g1.get(*real_position_of_complex(p, q))
        assert e2.total() == g1.total()


def test_betti_sum_bounded_by_page_total():
    for fan in SMALL_FANS() + random_sample(12):
        _, g1 = g_pages(fan)
        assert sum(betti_real(fan)) <= g1.total()


def test_g_pages_shortcut_agrees_with_filtered_construction():
    for fan in SMALL_FANS() + random_sample(12):
        g0a, g1a = g_pages(fan)
        g0b, g1b = g_pages(fan, shortcut=True)
        assert g0a.entries == g0b.entries
        assert g1a.entries == g1b.entries


def test_g0_dims_refine_real_complex_dims():
    for fan in SMALL_FANS():
        rc = real_complex(fan)
        g0, _ = g_pages(fan)
        for m in range(fan.rank + 1):
            total = sum(g0.get(-k, m + k) for k in range(fan.rank + 1))
            assert total == rc.chain.dims[m]


def test_rightmost_column_split_everywhere():
    for fan in SMALL_FANS() + random_sample():
        assert rightmost_column_split(fan)


def test_pages_invariant_under_relabeling_and_unimodular_change():
    rng = random.Random(5150)
    for fan in [projective_space_fan(2), weighted_projective_fan(1, 1, 2), random_fan(3, 77)]:
        base_e2 = e2_dims(fan).entries
        base_g1 = g_pages(fan)[1].entries
        base_b = betti_real(fan)
        for _ in range(3):
            other = relabel_rays(fan, rng)
            assert e2_dims(other).entries == base_e2
            assert g_pages(other)[1].entries == base_g1
            assert betti_real(other) == base_b
        for _ in range(3):
            other = apply_unimodular(fan, rng)
            assert e2_dims(other).entries == base_e2
            assert g_pages(other)[1].entries == base_g1
            assert betti_real(other) == base_b


def test_boundaries_compose_to_zero_explicitly():
    for fan in SMALL_FANS():
        rc = real_complex(fan)
        for a, b in zip(rc.chain.boundaries, rc.chain.boundaries[1:]):
            assert (a @ b).is_zero()
        _, rows = e1_page(fan)
        for cc in rows.values():
            for a, b in zip(cc.boundaries, cc.boundaries[1:]):
                assert (a @ b).is_zero()


def test_page_table_interface():
    fan = projective_space_fan(2)
    e2 = e2_dims(fan)
    assert e2.get(99, 99) == 0
    triples = e2.triples()
    assert triples == sorted(triples)
    assert sum(d for _, _, d in triples) == e2.total()
    assert all(d for _, _, d in e2.nonzero())
    g0, _ = g_pages(fan)
    assert g0.complexes is not None and set(g0.complexes) == {0, 1, 2}
