"""
Command-line front end.

Commands: ``simulate``, ``patterns`` and ``region``. Every output embeds
the full configuration and seed; ``--replay FILE`` re-runs a structured
output's configuration and reproduces it byte for byte.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .channel import NoiseConfig
from .csit import census
from .dofregion import enumerate_vertices, export_region, max_sum, outer_bound
from .errors import AltCsitError, InvalidSweep, PatternMismatch
from .estimation import rate_slope, report_rows, run_trials, sweep_rows
from .scheme_ids import NAMES, PARAMETRIC, SchemeId
from .schemes import minimal_pattern

SCHEMA_VERSION = 1
SEED_ENV = "ALTCSIT_SEED"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PATTERN = 3
EXIT_SWEEP = 4
EXIT_INVARIANT = 5
EXIT_ERROR = 6


class InvariantFailure(AltCsitError):
    """A run finished but violated a checked invariant."""


def parse_sweep(text):
    """``lo:hi:points`` to a geometric list of powers."""
    try:
        lo, hi, points = text.split(":")
        lo, hi, points = float(lo), float(hi), int(points)
    except ValueError:
        raise InvalidSweep(f"sweep must look like lo:hi:points, got {text!r}") from None
    if points < 1 or lo <= 0 or hi <= 0:
        raise InvalidSweep(f"bad sweep {text!r}")
    return [float(p) for p in np.geomspace(lo, hi, points)]


def _default_seed():
    value = os.environ.get(SEED_ENV)
    return int(value) if value else 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="altcsit", description="X-network schemes under alternating CSIT.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--replay", metavar="FILE",
                        help="re-run the configuration embedded in an earlier output; "
                             "writes to stdout")
    sub = parser.add_subparsers(dest="command")

    def common(p):
        p.add_argument("--output", metavar="PATH", help="write here instead of stdout")
        p.add_argument("--format", choices=("rows", "structured"), default="structured")

    sim = sub.add_parser("simulate", help="decode trials and optionally estimate the DoF slope")
    sim.add_argument("--scheme", required=True, choices=NAMES)
    sim.add_argument("--k", type=int, help=f"size parameter for {', '.join(PARAMETRIC)}")
    sim.add_argument("--pattern", help="CSIT pattern such as DD,PN,NP (default: minimal)")
    sim.add_argument("--trials", type=int, default=1000)
    sim.add_argument("--seed", type=int, default=None,
                     help=f"default from ${SEED_ENV}, else 0")
    sim.add_argument("--noise-variance", type=float, default=0.0)
    sim.add_argument("--sweep", metavar="LO:HI:POINTS", help="geometric power sweep")
    common(sim)

    pat = sub.add_parser("patterns", help="synergy and dispatch census")
    pat.add_argument("--n-slots", type=int, default=3)
    common(pat)

    reg = sub.add_parser("region", help="DoF outer bound, vertices and sum-DoF optimum")
    common(reg)
    return parser


def _config(args):
    keys = {
        "simulate": ("scheme", "k", "pattern", "trials", "seed", "noise_variance", "sweep"),
        "patterns": ("n_slots",),
        "region": (),
    }[args.command]
    cfg = {"command": args.command, "format": args.format}
    cfg.update({k: getattr(args, k) for k in keys})
    return cfg


def cmd_simulate(cfg):
    scheme = SchemeId(cfg["scheme"], cfg["k"])
    pattern = cfg["pattern"] or str(minimal_pattern(scheme))
    cfg["pattern"] = pattern
    noise = NoiseConfig.awgn(cfg["noise_variance"]) if cfg["noise_variance"] > 0 else NoiseConfig.off()
    powers = parse_sweep(cfg["sweep"]) if cfg["sweep"] else None
    report = run_trials(scheme, cfg["trials"], noise, cfg["seed"], pattern)
    slope = rate_slope(scheme, powers, cfg["trials"], cfg["seed"], pattern=pattern) if powers else None
    result = {"report": report.as_dict()}
    if slope is not None:
        result["slope"] = slope.as_dict()
    if cfg["format"] == "rows":
        text = report_rows(report) + (sweep_rows(slope) if slope else "")
    else:
        text = None
    failed = report.successes != report.trials or report.identifiability_failures
    return result, text, failed


def cmd_patterns(cfg):
    n = cfg["n_slots"]
    if n < 1:
        raise AltCsitError("n-slots must be at least 1")
    c = census(n)
    result = {
        "n_slots": n, "total": c.total, "synergistic_count": c.synergistic_count,
        "dispatchable_count": c.dispatchable_count, "histogram": dict(sorted(c.histogram.items())),
        "synergistic_only": c.synergistic_only, "dispatchable_only": c.dispatchable_only,
    }
    text = None
    if cfg["format"] == "rows":
        lines = ["n_slots,total,synergistic_count,dispatchable_count",
                 f"{n},{c.total},{c.synergistic_count},{c.dispatchable_count}", "scheme,count"]
        lines += [f"{k},{v}" for k, v in sorted(c.histogram.items())]
        text = "\n".join(lines) + "\n"
    return result, text, False


def _fs(x):
    return str(x) if isinstance(x, Fraction) else repr(float(x))


def cmd_region(cfg):
    poly = outer_bound()
    best = max_sum(poly)
    result = {
        "constraints": [{"coefficients": [str(a) for a in row], "bound": str(b)}
                        for row, b in zip(poly.A, poly.b)],
        "vertices": [[_fs(x) for x in v] for v in enumerate_vertices(poly)],
        "max_sum": _fs(best.value),
        "argmax": [[_fs(x) for x in v] for v in best.argmax],
    }
    text = export_region(poly) if cfg["format"] == "rows" else None
    return result, text, False


COMMANDS = {"simulate": cmd_simulate, "patterns": cmd_patterns, "region": cmd_region}


def _render(cfg, result, text):
    if text is not None:
        return f"# config {json.dumps(cfg, sort_keys=True)}\n" + text
    doc = {"schema_version": SCHEMA_VERSION, "config": cfg, "seed": cfg.get("seed"), "result": result}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _load_replay(path):
    with open(path) as fh:
        first = fh.readline()
        rest = fh.read()
    if first.startswith("# config "):
        return json.loads(first[len("# config "):])
    return json.loads(first + rest)["config"]


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    out = None
    try:
        if args.replay:
            cfg = _load_replay(args.replay)
            if args.command:
                parser.error("--replay takes no command")
        elif args.command is None:
            parser.print_usage(sys.stderr)
            return EXIT_USAGE
        else:
            if args.command == "simulate" and args.seed is None:
                args.seed = _default_seed()
            cfg = _config(args)
            out = args.output
        result, text, failed = COMMANDS[cfg["command"]](cfg)
        rendered = _render(cfg, result, text)
        if out:
            with open(out, "w") as fh:
                fh.write(rendered)
        else:
            sys.stdout.write(rendered)
        if failed:
            raise InvariantFailure("decoding invariant violated; see report")
    except PatternMismatch as exc:
        print(f"altcsit: pattern mismatch: {exc}", file=sys.stderr)
        return EXIT_PATTERN
    except InvalidSweep as exc:
        print(f"altcsit: invalid sweep: {exc}", file=sys.stderr)
        return EXIT_SWEEP
    except InvariantFailure as exc:
        print(f"altcsit: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (AltCsitError, ValueError) as exc:
        print(f"altcsit: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
