"""Command-line interface: ``qfog sweep | optimize | validate``.

Numeric flags accept plain floats or multiples of pi (``0.5pi``, ``pi/2``,
``2*pi``).  A ``--config`` file holds ``key=value`` lines using the long
flag names without dashes; flags given on the command line win.

Exit status: 0 on success, 1 when validation fails, 2 on a configuration
error.
"""

import argparse
import math
import re
import sys

from .errors import ConfigError, Indeterminate, NoMinimum, TruncationError
from .gyro import GyroSetting, ratio_pacs_cs, ratio_pacs_ss
from .probes import PacsProbe
from .sweep import MODES, SweepConfig, find_best_phase, run_sweep, validate

EXIT_OK, EXIT_FAILED, EXIT_CONFIG = 0, 1, 2

_PI_RE = re.compile(r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*))?\s*$")


def parse_number(text: str) -> float:
    """Parse ``"1.5"``, ``"0.5844pi"``, ``"pi/2"`` or ``"-2*pi"``."""
    text = str(text).strip()
    match = _PI_RE.match(text)
    if match:
        coef, div = match.groups()
        if coef in (None, "+", "-"):
            coef = (coef or "") + "1"
        return float(coef) * math.pi / (float(div) if div else 1.0)
    return float(text)


def read_config_file(path) -> dict:
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigError("config", f"{path}:{lineno}: expected key=value")
                key, value = (part.strip() for part in line.split("=", 1))
                values[key.replace("-", "_")] = value
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc.strerror}") from None
    return values


# flag name -> (SweepConfig attribute, converter)
_SWEEP_KEYS = {
    "mode": ("mode", str),
    "var": ("var", str),
    "from": ("start", parse_number),
    "to": ("stop", parse_number),
    "steps": ("steps", int),
    "m": ("m", int),
    "alpha": ("alpha", parse_number),
    "y": ("y", parse_number),
    "gamma": ("gamma", parse_number),
    "phi": ("phi", parse_number),
    "out": ("out", str),
    "format": ("format", str),
    "scale_T": ("scale_T", parse_number),
    "jobs": ("jobs", int),
}


def _merged(args, keys):
    """Defaults < config file < command-line flags."""
    raw = read_config_file(args.config) if args.config else {}
    for key in keys:
        flag = getattr(args, key, None)
        if flag is not None:
            raw[key] = flag
    out = {}
    for key, value in raw.items():
        if key not in keys:
            raise ConfigError(key, "unknown configuration key")
        attr, convert = keys[key]
        try:
            out[attr] = convert(value)
        except (TypeError, ValueError):
            raise ConfigError(key, f"cannot parse value {value!r}") from None
    return out


def build_sweep_config(args) -> SweepConfig:
    config = SweepConfig(**_merged(args, _SWEEP_KEYS))
    config.validate()
    return config


def _write(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_sweep(args):
    config = build_sweep_config(args)
    result = run_sweep(config)
    _write(result.render(config.format), config.out)
    return EXIT_OK


_OPT_KEYS = {
    "mode": ("mode", str),
    "from": ("start", parse_number),
    "to": ("stop", parse_number),
    "m": ("m", int),
    "alpha": ("alpha", parse_number),
    "y": ("y", parse_number),
    "gamma": ("gamma", parse_number),
    "grid": ("grid", int),
}


def cmd_optimize(args):
    opts = {"mode": "ratio-cs", "start": 0.5 * math.pi, "stop": 0.7 * math.pi,
            "m": 10, "alpha": 1.0, "y": 1.0, "gamma": 1.0, "grid": 2001}
    opts.update(_merged(args, _OPT_KEYS))
    result = find_best_phase(
        opts["mode"], opts["alpha"], opts["m"], opts["y"], opts["gamma"],
        (opts["start"], opts["stop"]), grid_points=opts["grid"],
    )
    lines = [
        f"mode={opts['mode']}",
        f"phi={result.phi:.17g}",
        f"phi_over_pi={result.phi / math.pi:.17g}",
        f"min={result.value:.17g}",
        f"bracket_lo={result.bracket[0]:.17g}",
        f"bracket_hi={result.bracket[1]:.17g}",
        f"iterations={result.iterations}",
    ]
    ratio = ratio_pacs_cs if opts["mode"] == "ratio-cs" else ratio_pacs_ss
    probe = PacsProbe(opts["alpha"], opts["m"])
    for text in args.eval_phi or []:
        phi = parse_number(text)
        point = ratio(probe, opts["y"], GyroSetting(phi, opts["gamma"]))
        value = "indeterminate" if point.indeterminate else f"{point.ratio:.17g}"
        lines.append(f"at_phi={phi:.17g} value={value}")
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_validate(args):
    alphas = [parse_number(a) for a in args.alphas.split(",") if a.strip()]
    checks = validate(max_m=args.max_m, alphas=alphas, dim=args.dim)
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        sys.stdout.write(f"{status}  {c.name}: deviation={c.deviation:.3e} tolerance={c.tolerance:.0e}\n")
    failed = sum(not c.passed for c in checks)
    sys.stdout.write(f"{len(checks) - failed}/{len(checks)} checks passed\n")
    return EXIT_FAILED if failed else EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="qfog", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file; flags override it")
    common.add_argument("--m", type=str)
    common.add_argument("--alpha")
    common.add_argument("--y")
    common.add_argument("--gamma")
    common.add_argument("--from", dest="from")
    common.add_argument("--to")

    sw = sub.add_parser("sweep", parents=[common], help="tabulate a mode over a 1-D grid")
    sw.add_argument("--mode", help=f"one of {', '.join(MODES)}")
    sw.add_argument("--var", help="swept variable: phi, gamma, m, alpha or y")
    sw.add_argument("--steps")
    sw.add_argument("--phi", help="fixed phase when not swept")
    sw.add_argument("--out", help="output file (default stdout)")
    sw.add_argument("--format", help="csv (default) or json")
    sw.add_argument("--scale-T", dest="scale_T", help="report unscaled sensitivities for this T")
    sw.add_argument("--jobs", help="worker processes (output is independent of this)")
    sw.set_defaults(func=cmd_sweep)

    op = sub.add_parser("optimize", parents=[common], help="best phase of a ratio curve")
    op.add_argument("--mode", help="ratio-cs (default) or ratio-ss")
    op.add_argument("--grid", help="coarse grid points (>= 1000)")
    op.add_argument("--eval-phi", action="append", help="also report the ratio at this phase")
    op.set_defaults(func=cmd_optimize)

    va = sub.add_parser("validate", help="compare closed forms with the Fock oracle")
    va.add_argument("--max-m", type=int, default=12)
    va.add_argument("--alphas", default="0.5,1,2")
    va.add_argument("--dim", type=int, default=128)
    va.set_defaults(func=cmd_validate)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, TruncationError, NoMinimum, Indeterminate, ValueError) as exc:
        sys.stderr.write(f"qfog {args.command}: {exc}\n")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
