"""Parameter sweeps, best-phase search and oracle validation.

:func:`run_sweep` evaluates one of the sensitivity or ratio modes on a 1-D
grid and returns a :class:`SweepResult` that serializes deterministically to
CSV or JSON.  :func:`find_best_phase` locates the minimum of a ratio curve
by a dense grid scan refined with golden-section search.  :func:`validate`
compares the closed forms with the Fock-basis oracle.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
import io
import json
import math

import numpy as np

from . import fock_oracle as fo
from .errors import ConfigError, Indeterminate, NoMinimum
from .gyro import (
    GyroSetting,
    ratio_pacs_cs,
    ratio_pacs_ss,
    sensitivity_cs,
    sensitivity_general,
    sensitivity_pacs_imag,
    sensitivity_pacs_vacuum,
    sensitivity_ss,
)
from .laguerre import laguerre
from .probes import (
    PacsProbe,
    coherent_moments,
    match_ss_params,
    pacs_mean_photons,
    pacs_moments,
    ss_moments,
    vacuum_moments,
)

MODES = ("pacs-sensitivity", "cs-sensitivity", "ss-sensitivity", "ratio-cs", "ratio-ss")
VARIABLES = ("phi", "gamma", "m", "alpha", "y")
PARAMS = ("phi", "gamma", "m", "alpha", "y")
FORMATS = ("csv", "json")

INF = "inf"
INDETERMINATE = "indeterminate"


@dataclass
class SweepConfig:
    """One sweep: a mode, a swept variable on a linear grid, fixed parameters.

    Sensitivity values are T^2-scaled unless ``scale_T`` is given, in which
    case they are divided by ``scale_T**2``.  Ratios are unaffected.
    """

    mode: str = "pacs-sensitivity"
    var: str = "phi"
    start: float = 0.0
    stop: float = 2 * math.pi
    steps: int = 2001
    m: int = 1
    alpha: float = 1.0
    y: float = 1.0
    gamma: float = 1.0
    phi: float = math.pi / 4
    out: str | None = None
    format: str = "csv"
    scale_T: float | None = None
    jobs: int = 1

    def validate(self):
        if self.mode not in MODES:
            raise ConfigError("mode", f"must be one of {', '.join(MODES)}; got {self.mode!r}")
        if self.var not in VARIABLES:
            raise ConfigError("var", f"must be one of {', '.join(VARIABLES)}; got {self.var!r}")
        if self.format not in FORMATS:
            raise ConfigError("format", f"must be csv or json; got {self.format!r}")
        if not isinstance(self.steps, int) or self.steps < 2:
            raise ConfigError("steps", f"must be an integer >= 2; got {self.steps!r}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ConfigError("from", "range endpoints must be finite")
        if not self.start < self.stop:
            raise ConfigError("from", f"start {self.start} must be below stop {self.stop}")
        if self.jobs < 1:
            raise ConfigError("jobs", f"must be >= 1; got {self.jobs}")
        if self.scale_T is not None and not self.scale_T > 0:
            raise ConfigError("scale-T", f"must be positive; got {self.scale_T}")
        grid = self.grid()
        for name in PARAMS:
            values = grid if name == self.var else [getattr(self, name)]
            for v in values:
                _check_param(name, v)

    def grid(self) -> list:
        values = np.linspace(self.start, self.stop, self.steps)
        if self.var == "m":
            ints = np.rint(values)
            if not np.allclose(values, ints, rtol=0, atol=1e-9):
                raise ConfigError("steps", "an m sweep must land on integers")
            return [int(v) for v in ints]
        return [float(v) for v in values]

    def fixed(self) -> dict:
        return {name: getattr(self, name) for name in PARAMS if name != self.var}


def _check_param(name, v):
    if name == "gamma" and not 0.0 < v <= 1.0:
        raise ConfigError("gamma", f"must lie in (0, 1]; got {v}")
    if name == "m" and (int(v) != v or v < 0):
        raise ConfigError("m", f"must be a non-negative integer; got {v}")
    if name == "y" and v < 0:
        raise ConfigError("y", f"must be non-negative; got {v}")
    if not math.isfinite(v):
        raise ConfigError(name, f"must be finite; got {v}")


@dataclass
class SweepResult:
    """Ordered table of sweep rows."""

    mode: str
    var: str
    columns: list
    rows: list = field(default_factory=list)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(",".join(self.columns) + "\n")
        for row in self.rows:
            buf.write(",".join(format_cell(v) for v in row) + "\n")
        return buf.getvalue()

    def to_json(self) -> str:
        rows = [[_json_cell(v) for v in row] for row in self.rows]
        doc = {"mode": self.mode, "var": self.var, "columns": self.columns, "rows": rows}
        return json.dumps(doc, indent=1) + "\n"

    def render(self, fmt="csv") -> str:
        return self.to_json() if fmt == "json" else self.to_csv()


def format_cell(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    if math.isinf(v):
        return INF if v > 0 else "-inf"
    return format(v, ".17g")


def _json_cell(v):
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return int(v)
    if math.isinf(v):
        return INF
    return float(v)


def evaluate(mode, phi, gamma, m, alpha, y, scale_T=None):
    """Single grid point: a float, ``inf``, or the string ``"indeterminate"``."""
    probe = PacsProbe(alpha, m)
    setting = GyroSetting(phi, gamma)
    if mode == "ratio-cs":
        point = ratio_pacs_cs(probe, y, setting)
    elif mode == "ratio-ss":
        point = ratio_pacs_ss(probe, y, setting)
    else:
        if mode == "pacs-sensitivity":
            sens = sensitivity_pacs_imag(probe, y, setting)
        elif mode == "cs-sensitivity":
            sens = sensitivity_cs(math.sqrt(pacs_mean_photons(probe)), y, setting)
        elif mode == "ss-sensitivity":
            alpha_c, r = match_ss_params(y, probe)
            sens = sensitivity_ss(alpha_c, r, setting)
        else:
            raise ConfigError("mode", f"unknown mode {mode!r}")
        return sens.value if scale_T is None else sens.unscaled(scale_T)
    return INDETERMINATE if point.indeterminate else point.ratio


def _row(args):
    mode, var, value, fixed, scale_T = args
    params = dict(fixed)
    params[var] = value
    result = evaluate(mode, scale_T=scale_T, **params)
    return [value, result] + [fixed[name] for name in PARAMS if name != var]


def run_sweep(config: SweepConfig) -> SweepResult:
    """Evaluate ``config.mode`` at every grid point, in ascending order."""
    config.validate()
    result_name = "ratio" if config.mode.startswith("ratio") else "sensitivity"
    columns = [config.var, result_name] + [n for n in PARAMS if n != config.var]
    fixed = config.fixed()
    tasks = [(config.mode, config.var, v, fixed, config.scale_T) for v in config.grid()]
    if config.jobs == 1:
        rows = [_row(t) for t in tasks]
    else:
        chunk = max(1, len(tasks) // (4 * config.jobs))
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            rows = list(pool.map(_row, tasks, chunksize=chunk))
    return SweepResult(config.mode, config.var, columns, rows)


@dataclass(frozen=True)
class OptimizeResult:
    phi: float
    value: float
    bracket: tuple
    iterations: int


INV_PHI = (math.sqrt(5) - 1) / 2
INV_PHI_SQ = (3 - math.sqrt(5)) / 2


def golden_section(f, a, b, tol=1e-8):
    """Golden-section search for a minimum of ``f`` on ``[a, b]``.

    Returns:
        ``(lo, hi, x_best, f_best, iterations)`` with ``hi - lo <= tol``.
    """
    h = b - a
    c = a + INV_PHI_SQ * h
    d = a + INV_PHI * h
    yc, yd = f(c), f(d)
    iterations = 0
    while b - a > tol:
        iterations += 1
        if yc < yd:
            b, d, yd = d, c, yc
            h = INV_PHI * h
            c = a + INV_PHI_SQ * h
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = f(d)
    if yc < yd:
        return a, b, c, yc, iterations
    return a, b, d, yd, iterations


def find_best_phase(mode, alpha, m, y, gamma, bracket, grid_points=2001, tol=1e-8) -> OptimizeResult:
    """Minimize a ratio curve over a phase bracket.

    A grid of ``grid_points`` phases is scanned, then the cell around the best
    grid point is refined by golden-section search until it is narrower than
    ``tol``.  The returned value is never above the best grid value.
    """
    if mode not in ("ratio-cs", "ratio-ss"):
        raise ConfigError("mode", f"optimize supports ratio-cs and ratio-ss; got {mode!r}")
    lo, hi = bracket
    if not lo < hi:
        raise ConfigError("from", f"bracket start {lo} must be below end {hi}")
    if hi - lo > 2 * math.pi:
        raise ConfigError("to", "bracket must lie within one period")
    _check_param("gamma", gamma)
    _check_param("m", m)
    if grid_points < 1000:
        raise ConfigError("grid", f"at least 1000 grid points required; got {grid_points}")

    def f(phi):
        v = evaluate(mode, phi, gamma, m, alpha, y)
        if v == INDETERMINATE:
            raise Indeterminate(f"{mode} is 0/0 at phi={phi!r}")
        return v

    grid = np.linspace(lo, hi, grid_points)
    values = np.array([f(float(p)) for p in grid])
    finite = values[np.isfinite(values)]
    if finite.size == 0:
        raise NoMinimum("objective diverges over the whole bracket")
    spread = float(np.ptp(finite)) if finite.size == values.size else math.inf
    if spread <= 1e-12 * max(1.0, abs(float(finite.min()))):
        raise NoMinimum(f"{mode} is flat to tolerance over [{lo}, {hi}]")

    i = int(np.argmin(values))
    a = float(grid[max(i - 1, 0)])
    b = float(grid[min(i + 1, grid_points - 1)])
    cell_lo, cell_hi, x, fx, iterations = golden_section(f, a, b, tol)
    if not fx <= values[i]:
        x, fx = float(grid[i]), float(values[i])
    return OptimizeResult(phi=x, value=fx, bracket=(cell_lo, cell_hi), iterations=iterations)


@dataclass(frozen=True)
class Check:
    name: str
    deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tolerance


def _rel(a, b):
    if math.isinf(a) or math.isinf(b):
        return 0.0 if a == b else math.inf
    return abs(a - b) / abs(b)


GRID_PHI = [k * math.pi / 8 for k in range(16)]
GRID_GAMMA = [0.25, 0.5, 1.0]
GRID_M = [0, 1, 5, 10]
GRID_ALPHA = [0.5, 1.0, 2.0]
GRID_Y = [0.0, 1.0, 2.0]


def specialization_checks():
    """Each probe-specific closed form against the general moment formula."""
    worst = {"pacs-vacuum": 0.0, "pacs-imag": 0.0, "cs": 0.0, "ss": 0.0}
    for m in GRID_M:
        for alpha in GRID_ALPHA:
            probe = PacsProbe(alpha, m)
            a = pacs_moments(probe)
            alpha_c = math.sqrt(a.mean_photons)
            for gamma in GRID_GAMMA:
                for phi in GRID_PHI:
                    st = GyroSetting(phi, gamma)
                    pairs = [
                        ("pacs-vacuum", sensitivity_pacs_vacuum(probe, st),
                         sensitivity_general(a, vacuum_moments(), st)),
                    ]
                    for y in GRID_Y:
                        r = math.asinh(y)
                        pairs += [
                            ("pacs-imag", sensitivity_pacs_imag(probe, y, st),
                             sensitivity_general(a, coherent_moments(0.0, y), st)),
                            ("cs", sensitivity_cs(alpha_c, y, st),
                             sensitivity_general(coherent_moments(alpha_c), coherent_moments(0.0, y), st)),
                            ("ss", sensitivity_ss(alpha_c, r, st),
                             sensitivity_general(*ss_moments(r, alpha_c), st)),
                        ]
                    for name, special, general in pairs:
                        worst[name] = max(worst[name], _rel(special.value, general.value))
    return [Check(f"specialization {name} vs general", dev, 1e-12) for name, dev in worst.items()]


def validate(max_m=12, alphas=(0.5, 1.0, 2.0), dim=fo.DEFAULT_DIM):
    """Run oracle-equivalence and specialization-consistency checks.

    Raises:
        TruncationError: when ``dim`` is too small for the requested states.
    """
    checks = []
    fields = ("mean_x1", "var_x1", "var_x2", "mean_photons")
    worst_rel = dict.fromkeys(fields, 0.0)
    worst_abs = dict.fromkeys(fields, 0.0)
    worst_norm = 0.0
    for alpha in alphas:
        coherent = fo.build_coherent(alpha, dim)
        for m in range(max_m + 1):
            state, norm_sq = fo.apply_creation(coherent, m, return_norm=True)
            oracle = fo.oracle_moments(state)
            analytic = pacs_moments(PacsProbe(alpha, m))
            for name in fields:
                got, ref = getattr(oracle, name), getattr(analytic, name)
                if ref == 0:
                    worst_abs[name] = max(worst_abs[name], abs(got))
                else:
                    worst_rel[name] = max(worst_rel[name], abs(got - ref) / abs(ref))
            expected_norm = math.factorial(m) * laguerre(m, -alpha * alpha)
            worst_norm = max(worst_norm, abs(norm_sq - expected_norm) / expected_norm)
    for name in fields:
        checks.append(Check(f"oracle vs analytic PACS {name} (relative)", worst_rel[name], 1e-9))
        checks.append(Check(f"oracle vs analytic PACS {name} (absolute at zero)", worst_abs[name], 1e-12))
    checks.append(Check("oracle norm vs m! L_m(-alpha^2)", worst_norm, 1e-10))

    # squeezed vacuum and propagated output moments
    r = math.asinh(1.0)
    sq = fo.oracle_moments(fo.build_squeezed_vacuum(r, dim=max(dim, 128)))
    _, sq_analytic = ss_moments(r, 0.0)
    checks.append(Check("oracle squeezed vacuum var_x2", abs(sq.var_x2 - sq_analytic.var_x2) / sq_analytic.var_x2, 1e-9))

    worst_fd = 0.0
    for alpha in alphas:
        for m in sorted({0, 1, max_m // 2, max_m}):
            a = pacs_moments(PacsProbe(alpha, m))
            for gamma in GRID_GAMMA:
                for phi in GRID_PHI:
                    st = GyroSetting(phi, gamma)
                    b = coherent_moments(0.0, 1.0)
                    general = sensitivity_general(a, b, st).value
                    numeric = fo.oracle_sensitivity(a, b, phi, gamma)
                    if math.isfinite(general) and general < 1e8:
                        worst_fd = max(worst_fd, abs(numeric - general) / general)
    checks.append(Check("error transfer with numerical slope vs closed form", worst_fd, 1e-6))

    checks.extend(specialization_checks())
    return checks
