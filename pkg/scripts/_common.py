"""Shared plumbing for the experiment scripts: dataclass config -> flags, rows -> CSV."""
import argparse
import csv
import dataclasses
import sys
import time


def parse_config(cls, argv=None):
    """Build ``cls`` from command-line flags named after its fields."""
    p = argparse.ArgumentParser(description=cls.__doc__)
    for f in dataclasses.fields(cls):
        default = f.default if f.default is not dataclasses.MISSING else f.default_factory()
        flag = "--" + f.name.replace("_", "-")
        if isinstance(default, tuple):
            kind = type(default[0]) if default else float
            p.add_argument(flag, type=kind, nargs="+", default=default)
        else:
            p.add_argument(flag, type=type(default), default=default)
    p.add_argument("--out", default=None, help="CSV path (default: stdout)")
    args = vars(p.parse_args(argv))
    out = args.pop("out")
    return cls(**{k: tuple(v) if isinstance(v, list) else v for k, v in args.items()}), out


def write_rows(rows, out=None):
    if not rows:
        return
    fh = open(out, "w", newline="") if out else sys.stdout
    try:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: (f"{v:.17g}" if isinstance(v, float) else v) for k, v in r.items()})
    finally:
        if out:
            fh.close()


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        print(f"# elapsed {self.elapsed:.1f}s", file=sys.stderr)
