"""Maximal-cell counts against the hypersimplex volume 2^(n-1) - n.

The raw count matches only when every maximal cell is connected; the count
weighted by normalized volume 2^(components-1) always matches.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from tightspan.generators import gen_matchex, gen_random, gen_triangex
from tightspan.subdivision import enumerate_maximal_cells, hypersimplex_volume


@dataclass
class CountConfig:
    n_min: int = 4
    n_max: int = 7
    samples: int = 10
    seed: int = 0


def count(d) -> tuple[int, int]:
    s = enumerate_maximal_cells(d)
    return len(s.maximal_cells), s.total_volume()


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n-min", type=int, default=CountConfig.n_min)
    p.add_argument("--n-max", type=int, default=CountConfig.n_max)
    p.add_argument("--samples", type=int, default=CountConfig.samples)
    p.add_argument("--seed", type=int, default=CountConfig.seed)
    cfg = CountConfig(**vars(p.parse_args()))
    print(f"{'instance':<18} {'cells':>6} {'volume':>7} {'2^(n-1)-n':>10}")
    for n in range(cfg.n_min, cfg.n_max + 1):
        instances = [(f"matchex n={n}", gen_matchex(n, cfg.seed))]
        if n % 3 == 0:
            instances.append((f"triangex k={n // 3}", gen_triangex(n // 3, cfg.seed)))
        instances += [(f"random n={n} s={cfg.seed + k}", gen_random(n, cfg.seed + k))
                      for k in range(cfg.samples)]
        for label, d in instances:
            cells, vol = count(d)
            print(f"{label:<18} {cells:>6} {vol:>7} {hypersimplex_volume(n):>10}")


if __name__ == "__main__":
    main()
