"""Command-line front end.

Every run prints its resolved configuration ahead of the results, so identical
invocations give byte-identical output.  Exit codes: 0 success, 1 usage
error, 2 a check failed, 3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .bounds import bound_report, diamond_width, exponent_class, komarov_lower, komarov_upper
from .constructions import certify_witness
from .geometry import (
    Diamond,
    Disk,
    GeometryError,
    ResourceLimitError,
    Segment,
    diameter,
    diameter_pair,
    min_width,
    normalize,
    set_from_json,
    set_to_json,
)
from .polyroot import RootPoly, markov_ratio
from .proofcheck import default_set_family, default_w_grid, proof_certificate
from .search import estimate_mn

EXIT_OK, EXIT_USAGE, EXIT_FAILED, EXIT_CAP = 0, 1, 2, 3

DEFAULT_SEED = 0
DEFAULT_BUDGET = 2000
DEFAULT_TOL = 1e-6
FIGURES = ("disk", "interval", "diamond-sweep", "gamma")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    subcommand: str
    set: dict | None = None
    n: list[int] = field(default_factory=list)
    seed: int = DEFAULT_SEED
    budget: int = DEFAULT_BUDGET
    tol: float = DEFAULT_TOL
    format: str = "json"
    out: str | None = None
    extra: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# parsing helpers


def parse_set(text: str):
    """Inline JSON or a path to a JSON file."""
    src = text
    if not text.lstrip().startswith("{"):
        p = Path(text)
        if not p.is_file():
            raise UsageError(f"--set is neither JSON nor a readable file: {text}")
        src = p.read_text()
    try:
        obj = json.loads(src)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed set JSON: {exc}") from None
    try:
        return set_from_json(obj)
    except (GeometryError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"invalid set description: {exc}") from None


def parse_n(text: str) -> list[int]:
    """``7``, ``1..300`` or ``1:300`` (inclusive), or a comma list of those."""
    out: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            sep = ".." if ".." in part else (":" if ":" in part else None)
            if sep:
                a, b = part.split(sep)
                a, b = int(a), int(b)
                if b < a:
                    raise ValueError
                out.extend(range(a, b + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"bad --n value: {text}") from None
    if not out or min(out) < 1:
        raise UsageError("--n values must be positive integers")
    return out


# ---------------------------------------------------------------------------
# output


def _fmt(x) -> str:
    if isinstance(x, bool) or x is None:
        return "" if x is None else str(x).lower()
    if isinstance(x, float):
        return "%.17g" % x
    if isinstance(x, (list, dict)):
        return json.dumps(x, sort_keys=True)
    return str(x)


def render(cfg: RunConfig, rows: list[dict], summary: dict | None = None) -> str:
    header = asdict(cfg)
    if cfg.format == "json":
        doc = {"config": header, "results": rows}
        if summary is not None:
            doc["summary"] = summary
        return json.dumps(doc, indent=2, sort_keys=True, allow_nan=True) + "\n"
    buf = io.StringIO()
    buf.write("# config: " + json.dumps(header, sort_keys=True) + "\n")
    if summary is not None:
        buf.write("# summary: " + json.dumps(summary, sort_keys=True) + "\n")
    if rows:
        cols = list(rows[0])
        for r in rows[1:]:
            cols += [c for c in r if c not in cols]
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_fmt(r.get(c)) for c in cols])
    return buf.getvalue()


def emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def _need_set(cfg: RunConfig, args):
    if args.set is None:
        raise UsageError(f"{cfg.subcommand} needs --set")
    K = parse_set(args.set)
    cfg.set = set_to_json(K)
    return K


def _need_n(cfg: RunConfig, args) -> list[int]:
    if args.n is None:
        raise UsageError(f"{cfg.subcommand} needs --n")
    cfg.n = parse_n(args.n)
    return cfg.n


# ---------------------------------------------------------------------------
# subcommands


def cmd_geom(K) -> dict:
    K1, t = normalize(K)
    d, w = diameter(K), min_width(K)
    p, q = diameter_pair(K)
    return {"d": d, "w": w, "s": w / d, "diameter_pair": [[p.real, p.imag], [q.real, q.imag]],
            "normalize_alpha": [t.alpha.real, t.alpha.imag], "normalize_beta": [t.beta.real, t.beta.imag],
            "normalized_set": set_to_json(K1)}


def cmd_bounds(K, ns) -> list[dict]:
    return [bound_report(K, n).to_json() for n in ns]


def cmd_witness(K, ns, tol) -> list[dict]:
    return [certify_witness(K, n, tol).to_json() for n in ns]


def cmd_verify(w_step: float, m_set, samples: int, seed: int):
    return proof_certificate(default_w_grid(w_step), tuple(m_set), default_set_family(), samples, seed)


def cmd_estimate(K, n, budget, seed) -> dict:
    est = estimate_mn(K, n, budget, seed)
    rep = bound_report(K, n)
    lowers = {"komarov_lower": rep.komarov_lower, "lp_lower": rep.lp_lower, "revesz_lower": rep.revesz_lower}
    sandwich = all(v is None or v <= est.value for v in lowers.values())
    row = {"n": n, **est.to_json(), **lowers, "komarov_upper": rep.komarov_upper, "sandwich": sandwich}
    return row


def cmd_reproduce(figure: str, ns: list[int] | None, budget: int, seed: int, tol: float) -> list[dict]:
    if figure == "disk":
        rows = []
        for n in ns or range(1, 13):
            # (z + 1)^n attains n/2 on the unit disk
            r = markov_ratio(RootPoly(1.0, (-1.0 + 0j,) * n), Disk(0j, 1.0), tol)
            est = estimate_mn(Disk(0j, 1.0), n, budget, seed)
            rows.append({"n": n, "n_over_2": n / 2, "ratio_lower": r.lower, "ratio_upper": r.upper,
                         "estimate": est.value})
        return rows
    if figure == "interval":
        rows = []
        I = Segment(-1, 1)
        for n in ns or range(1, 17):
            est = estimate_mn(I, n, budget, seed)
            rows.append({"n": n, "sqrt_n_over_6": math.sqrt(n) / 6, "sqrt_n_over_e": math.sqrt(n / math.e),
                         "estimate": est.value, "witness_upper": certify_witness(I, n, tol).upper})
        return rows
    if figure == "diamond-sweep":
        rows = []
        n = (ns or [200])[0]
        for eps in (0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0):
            K = Diamond(eps)
            rep = bound_report(K, n)
            wc = certify_witness(K, n, tol)
            rows.append({"epsilon": eps, "n": n, "w": rep.w, "lp_lower": rep.lp_lower,
                         "revesz_lower": rep.revesz_lower, "komarov_lower": rep.komarov_lower,
                         "witness_case": wc.choice.case_tag.value, "witness_lower": wc.lower,
                         "witness_upper": wc.upper, "komarov_upper": rep.komarov_upper,
                         "revesz_upper": rep.revesz_upper if rep.revesz_upper_applicable else None})
        return rows
    if figure == "gamma":
        rows = []
        for gamma in (0.5, 0.6, 0.7, 0.8, 0.9, 1.0):
            for n in ns or (50, 100, 200, 400):
                w = min(2.0 * n ** (gamma - 1.0), math.sqrt(2.0))
                eps = min(1.0, w / math.sqrt(4.0 - w * w))
                K = Diamond(eps)
                wc = certify_witness(K, n, tol)
                rows.append({"gamma": gamma, "n": n, "epsilon": eps, "w": diamond_width(eps),
                             "exponent_class": exponent_class(diamond_width(eps) / 2, n),
                             "komarov_lower": komarov_lower(2.0, diamond_width(eps), n),
                             "witness_upper": wc.upper,
                             "komarov_upper": komarov_upper(2.0, diamond_width(eps), n),
                             "n_pow_gamma": n ** gamma})
        return rows
    raise UsageError(f"unknown figure id {figure!r}; available: {', '.join(FIGURES)}")


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--set", help="set description: inline JSON or a path to a JSON file")
    common.add_argument("--n", help="degree: an integer, a range a..b, or a comma list")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative certificate tolerance")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="write output here instead of stdout")
    p = _Parser(prog="inverse-markov", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="subcommand", parser_class=_Parser)
    sub.add_parser("geom", parents=[common], help="diameter, width and normalising map of a set")
    sub.add_parser("bounds", parents=[common], help="every published bound for a set and degree range")
    sub.add_parser("witness", parents=[common], help="certified witness ratio against the upper bound")
    v = sub.add_parser("verify", parents=[common], help="run the proof certificate")
    v.add_argument("--w-step", type=float, default=0.005)
    v.add_argument("--m", default="100,200,1000", help="comma list of m values")
    v.add_argument("--samples", type=int, default=2000)
    sub.add_parser("estimate", parents=[common], help="numerical upper estimate of M_n(K)")
    r = sub.add_parser("reproduce", parents=[common], help="data series for the headline relations")
    r.add_argument("figure", help="one of: " + ", ".join(FIGURES))
    return p


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.subcommand is None:
            raise UsageError("a subcommand is required: geom | bounds | witness | verify | estimate | reproduce")
        cfg = RunConfig(args.subcommand, seed=args.seed, budget=args.budget, tol=args.tol,
                        format=args.format, out=args.out)
        if not 1e-12 < args.tol < 0.5:
            raise UsageError("--tol must lie in (1e-12, 0.5)")
        summary = None
        status = EXIT_OK
        if args.subcommand == "geom":
            rows = [cmd_geom(_need_set(cfg, args))]
        elif args.subcommand == "bounds":
            K = _need_set(cfg, args)
            rows = cmd_bounds(K, _need_n(cfg, args))
        elif args.subcommand == "witness":
            K = _need_set(cfg, args)
            rows = cmd_witness(K, _need_n(cfg, args), args.tol)
            if not all(r["holds"] for r in rows):
                status = EXIT_FAILED
        elif args.subcommand == "verify":
            try:
                m_set = [int(x) for x in args.m.split(",")]
            except ValueError:
                raise UsageError(f"bad --m value: {args.m}") from None
            if not args.w_step > 0:
                raise UsageError("--w-step must be positive")
            cfg.extra = {"w_step": args.w_step, "m": m_set, "samples": args.samples}
            rep = cmd_verify(args.w_step, m_set, args.samples, args.seed)
            rows = rep.to_json()
            summary = {"checks": len(rows), "failed": len(rep.failures), "passed": rep.passed}
            if not rep.passed:
                status = EXIT_FAILED
        elif args.subcommand == "estimate":
            K = _need_set(cfg, args)
            if args.budget < 100:
                raise UsageError("--budget must be at least 100")
            rows = [cmd_estimate(K, n, args.budget, args.seed) for n in _need_n(cfg, args)]
            if not all(r["sandwich"] for r in rows):
                status = EXIT_FAILED
        else:
            if args.figure not in FIGURES:
                raise UsageError(f"unknown figure id {args.figure!r}; available: {', '.join(FIGURES)}")
            cfg.extra = {"figure": args.figure}
            ns = _need_n(cfg, args) if args.n is not None else None
            rows = cmd_reproduce(args.figure, ns, args.budget, args.seed, args.tol)
        emit(cfg, render(cfg, rows, summary))
        return status
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except ResourceLimitError as exc:
        sys.stderr.write(f"resource cap: {exc}\n")
        return EXIT_CAP
    except GeometryError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
