"""Dimension reached by triples-and-pairs metrics for every target in the bounds."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from tightspan.errors import ConstructionFailed
from tightspan.generators import gen_titrated, titration_groups
from tightspan.subdivision import dimension_bounds, tight_span_dimension


@dataclass
class TitrationConfig:
    n_min: int = 4
    n_max: int = 8
    seed: int = 0


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n-min", type=int, default=TitrationConfig.n_min)
    p.add_argument("--n-max", type=int, default=TitrationConfig.n_max)
    p.add_argument("--seed", type=int, default=TitrationConfig.seed)
    cfg = TitrationConfig(**vars(p.parse_args()))
    for n in range(cfg.n_min, cfg.n_max + 1):
        lo, hi = dimension_bounds(n)
        for target in range(lo, hi + 1):
            sizes = [len(g) for g in titration_groups(n, target)]
            try:
                got = tight_span_dimension(gen_titrated(n, target, cfg.seed)).dimension
            except ConstructionFailed:
                got = "failed"
            print(f"n={n} target={target} groups={sizes} dimension={got}")


if __name__ == "__main__":
    main()
