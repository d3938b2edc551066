#!/usr/bin/env python3
"""Regenerate the example fan files under fans/.

Every file is emitted by the library's canonical serializer, so rerunning
this script is byte-stable and `git diff` shows real changes only.
"""
from __future__ import annotations

import argparse
import os

from realtoric.constructions import (
    affine_fan,
    cyclic_polytope_normal_fan,
    hirzebruch_fan,
    product_fan,
    projective_space_fan,
    same_mod2_surface_fan,
    torus_fan,
    weighted_projective_fan,
)
from realtoric.fan import Fan, write_json


def example_fans() -> list[Fan]:
    p1 = projective_space_fan(1)
    p1xp1 = product_fan(p1, p1)
    fans = [
        p1,
        projective_space_fan(2),
        projective_space_fan(3),
        projective_space_fan(4),
        hirzebruch_fan(0),
        hirzebruch_fan(1),
        hirzebruch_fan(2),
        hirzebruch_fan(3),
        weighted_projective_fan(1, 1, 2),
        weighted_projective_fan(1, 1, 3),
        same_mod2_surface_fan(3),
        same_mod2_surface_fan(4),
        same_mod2_surface_fan(5),
        same_mod2_surface_fan(6),
        torus_fan(2),
        torus_fan(3),
        affine_fan(2, [(1, 0), (1, 2)], name="affine-quadcone"),
        p1xp1,
        product_fan(p1xp1, p1, name="p1xp1xp1"),
        product_fan(projective_space_fan(2), p1),
        cyclic_polytope_normal_fan(),
    ]
    return fans


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out-dir",
        default=os.path.join(os.path.dirname(__file__), "..", "fans"),
        help="directory to write *.json into (default: fans/ next to the package)",
    )
    args = parser.parse_args()
    out = os.path.abspath(args.out_dir)
    os.makedirs(out, exist_ok=True)
    for fan in example_fans():
        assert fan.name is not None
        path = os.path.join(out, f"{fan.name}.json")
        write_json(fan, path)
        print(f"wrote {path}  (rank {fan.rank}, {len(fan.rays)} rays)")


if __name__ == "__main__":
    main()
