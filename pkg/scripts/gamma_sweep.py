"""Witness growth on diamonds whose width shrinks like n^(gamma - 1); fitted exponent vs gamma."""
import math
from dataclasses import dataclass

import numpy as np

from _common import Timer, parse_config, write_rows
from inverse_markov import Diamond, certify_witness, diamond_width


@dataclass
class Config:
    """Exponent sweep settings."""
    gammas: tuple = (0.5, 0.6, 0.7, 0.8, 0.9, 1.0)
    degrees: tuple = (200, 400, 800, 1600)


def diamond_for(gamma: float, n: int) -> Diamond:
    # width 2 n^(gamma-1), capped at the square
    w = min(2.0 * n ** (gamma - 1.0), math.sqrt(2.0))
    return Diamond(min(1.0, w / math.sqrt(4.0 - w * w)))


def run(cfg: Config) -> list[dict]:
    rows = []
    for gamma in cfg.gammas:
        ups = []
        for n in cfg.degrees:
            K = diamond_for(gamma, n)
            ups.append(certify_witness(K, n).upper)
        fit = float(np.polyfit(np.log(cfg.degrees), np.log(ups), 1)[0])
        for n, up in zip(cfg.degrees, ups):
            rows.append({"gamma": gamma, "n": n, "w": diamond_width(diamond_for(gamma, n).epsilon),
                         "witness_upper": up, "fitted_exponent": fit})
    return rows


if __name__ == "__main__":
    cfg, out = parse_config(Config)
    with Timer():
        write_rows(run(cfg), out)
