"""Two-sided check on a set battery: witness ratio <= 28 max{wn/d^2, sqrt(n)/d} <= ... sample floors."""
import math
from dataclasses import dataclass

from _common import Timer, parse_config, write_rows
from inverse_markov import (AffineMap, Diamond, Disk, Ellipse, Segment, affine, certify_witness, diameter,
                            min_width, sample_ratio_floor)

SETS = {
    "disk": Disk(2 + 1j, 3.0),
    "diamond-0.05": Diamond(0.05),
    "diamond-0.2-moved": affine(Diamond(0.2), AffineMap(1.5 + 2j, -1 + 3j)),
    "ellipse-rotated": Ellipse(1 - 1j, 2.0, 0.2, 0.6),
    "segment": Segment(-2j, 3 + 1j),
}


@dataclass
class Config:
    """Battery sweep settings."""
    degrees: tuple = (1, 5, 25, 100, 200, 201, 300)
    samples: int = 100
    seed: int = 0


def run(cfg: Config) -> list[dict]:
    rows = []
    for name, K in SETS.items():
        d, w = diameter(K), min_width(K)
        for n in cfg.degrees:
            scale = max(w * n / d ** 2, math.sqrt(n) / d)
            wc = certify_witness(K, n)
            floor = sample_ratio_floor(K, n, cfg.samples, cfg.seed)
            rows.append({"set": name, "n": n, "scale": scale, "witness_upper": wc.upper,
                         "upper_over_scale": wc.upper / scale, "sample_floor": floor,
                         "floor_over_scale": floor / scale})
    return rows


if __name__ == "__main__":
    cfg, out = parse_config(Config)
    with Timer():
        write_rows(run(cfg), out)
