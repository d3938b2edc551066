#!/usr/bin/env python3
"""Scan a family of rank-4 complete fans for the maximality certificate.

Rank three and below is settled by the certified batch runs; this script
probes the first open rank with product constructions, where the Betti
numbers on both sides are forced by the factors, plus the two projective
spaces of that rank.  Prints one row per fan; --json emits the same data
machine-readably.
"""
from __future__ import annotations

import argparse
import json

from realtoric.analysis import m_verdict
from realtoric.constructions import (
    hirzebruch_fan,
    product_fan,
    projective_space_fan,
    same_mod2_surface_fan,
    weighted_projective_fan,
)
from realtoric.fan import Fan


def rank4_cases() -> list[Fan]:
    p1 = projective_space_fan(1)
    p2 = projective_space_fan(2)
    p1xp1 = product_fan(p1, p1)
    return [
        product_fan(p1xp1, p1xp1, name="p1^4"),
        product_fan(p2, p2),
        product_fan(p2, p1xp1, name="p2xp1xp1"),
        product_fan(hirzebruch_fan(1), hirzebruch_fan(2)),
        product_fan(
            weighted_projective_fan(1, 1, 2),
            weighted_projective_fan(1, 1, 2),
            name="wp112xwp112",
        ),
        product_fan(
            same_mod2_surface_fan(4),
            same_mod2_surface_fan(4),
            name="samemod2-4-squared",
        ),
        product_fan(projective_space_fan(3), p1),
        projective_space_fan(4),
    ]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    args = parser.parse_args()

    rows = []
    for fan in rank4_cases():
        verdict = m_verdict(fan)
        rows.append(
            {
                "name": fan.name,
                "rank": fan.rank,
                "rays": len(fan.rays),
                "sum_betti_real": verdict.sum_betti_real,
                "total_e2": verdict.total_e2,
                "gap": verdict.gap,
                "status": verdict.status,
            }
        )

    if args.json:
        print(json.dumps(rows, indent=2))
        return

    header = f"{'fan':<24} {'rank':>4} {'rays':>4} {'sum bR':>7} {'total E2':>8} {'gap':>4}  status"
    print(header)
    print("-" * len(header))
    for r in rows:
        print(
            f"{r['name']:<24} {r['rank']:>4} {r['rays']:>4} "
            f"{r['sum_betti_real']:>7} {r['total_e2']:>8} {r['gap']:>4}  {r['status']}"
        )
    certified = sum(1 for r in rows if r["status"] == "CertifiedM")
    print(f"\n{certified}/{len(rows)} certified maximal")


if __name__ == "__main__":
    main()
