"""Certified ratio of (z + 1)^n on the unit disk against n/2, plus a random-sample floor."""
from dataclasses import dataclass

from _common import Timer, parse_config, write_rows
from inverse_markov import Disk, RootPoly, markov_ratio, sample_ratio_floor


@dataclass
class Config:
    """Disk experiment settings."""
    n_max: int = 12
    samples: int = 1000
    tol: float = 1e-7
    seed: int = 0


def run(cfg: Config) -> list[dict]:
    disk = Disk(0j, 1.0)
    rows = []
    for n in range(1, cfg.n_max + 1):
        r = markov_ratio(RootPoly(1.0, (-1 + 0j,) * n), disk, cfg.tol)
        floor = sample_ratio_floor(disk, n, cfg.samples, cfg.seed)
        rows.append({"n": n, "half_n": n / 2, "witness_lower": r.lower, "witness_upper": r.upper,
                     "sample_floor": floor})
    return rows


if __name__ == "__main__":
    cfg, out = parse_config(Config)
    with Timer():
        write_rows(run(cfg), out)
