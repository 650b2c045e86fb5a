"""Numerical M_n on [-1, 1] next to sqrt(n)/6 and the witness upper bound; fits the growth exponent."""
import math
from dataclasses import dataclass

import numpy as np

from _common import Timer, parse_config, write_rows
from inverse_markov import Segment, certify_witness, estimate_mn, sample_ratio_floor


@dataclass
class Config:
    """Interval experiment settings."""
    degrees: tuple = (2, 4, 8, 16, 32)
    budget: int = 2000
    samples: int = 500
    seed: int = 0


def run(cfg: Config) -> list[dict]:
    interval = Segment(-1, 1)
    rows = []
    for n in cfg.degrees:
        est = estimate_mn(interval, n, cfg.budget, cfg.seed)
        rows.append({"n": n, "sqrt_n_over_6": math.sqrt(n) / 6, "estimate": est.value,
                     "sample_floor": sample_ratio_floor(interval, n, cfg.samples, cfg.seed),
                     "witness_upper": certify_witness(interval, n).upper})
    return rows


def slope(rows, key) -> float:
    x = np.log([r["n"] for r in rows])
    y = np.log([r[key] for r in rows])
    return float(np.polyfit(x, y, 1)[0])


if __name__ == "__main__":
    cfg, out = parse_config(Config)
    with Timer():
        rows = run(cfg)
    write_rows(rows, out)
    print(f"# log-log slope of estimate: {slope(rows, 'estimate'):.3f}")
