"""Tabulate tight-span dimensions of seeded random generic metrics."""

from __future__ import annotations

import argparse
import json
import time
from collections import Counter
from dataclasses import asdict, dataclass

from tightspan.generators import gen_random
from tightspan.subdivision import dimension_bounds, tight_span_dimension


@dataclass
class CensusConfig:
    n_min: int = 4
    n_max: int = 7
    samples: int = 50
    seed: int = 0
    json: bool = False


def run(cfg: CensusConfig) -> dict:
    rows = {}
    for n in range(cfg.n_min, cfg.n_max + 1):
        start = time.perf_counter()
        dims = Counter(tight_span_dimension(gen_random(n, cfg.seed + k)).dimension
                       for k in range(cfg.samples))
        lo, hi = dimension_bounds(n)
        rows[n] = {"bounds": [lo, hi], "distribution": dict(sorted(dims.items())),
                   "within_bounds": all(lo <= k <= hi for k in dims),
                   "seconds": round(time.perf_counter() - start, 2)}
    return {"config": asdict(cfg), "rows": rows}


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    for name, default in asdict(CensusConfig()).items():
        if isinstance(default, bool):
            p.add_argument(f"--{name.replace('_', '-')}", action="store_true")
        else:
            p.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    cfg = CensusConfig(**vars(p.parse_args()))
    out = run(cfg)
    if cfg.json:
        print(json.dumps(out, indent=2))
        return
    print(f"{'n':>3} {'bounds':>8}  distribution")
    for n, row in out["rows"].items():
        dist = " ".join(f"{k}:{v}" for k, v in row["distribution"].items())
        print(f"{n:>3} {str(row['bounds']):>8}  {dist}  ({row['seconds']}s)")


if __name__ == "__main__":
    main()
