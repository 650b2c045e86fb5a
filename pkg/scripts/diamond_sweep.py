"""Lower and upper bounds against the certified witness ratio on diamonds of shrinking width."""
from dataclasses import dataclass

from _common import Timer, parse_config, write_rows
from inverse_markov import Diamond, bound_report, certify_witness


@dataclass
class Config:
    """Diamond sweep settings."""
    n: int = 200
    epsilons: tuple = (0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0)
    tol: float = 1e-6


def run(cfg: Config) -> list[dict]:
    rows = []
    for eps in cfg.epsilons:
        K = Diamond(eps)
        rep = bound_report(K, cfg.n)
        wc = certify_witness(K, cfg.n, cfg.tol)
        rows.append({"epsilon": eps, "w": rep.w, "lp_lower": rep.lp_lower, "komarov_lower": rep.komarov_lower,
                     "witness_case": wc.choice.case_tag.value, "witness_upper": wc.upper,
                     "komarov_upper": rep.komarov_upper, "slack": rep.komarov_upper / wc.upper})
    return rows


if __name__ == "__main__":
    cfg, out = parse_config(Config)
    with Timer():
        write_rows(run(cfg), out)
