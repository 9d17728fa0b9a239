"""Exit criteria.  Each test records one PASS/FAIL line in the terminal summary."""

import itertools
import math
import time

import numpy as np
import pytest

from qfog import fock_oracle as fo
from qfog.gyro import (
    GyroSetting,
    ratio_pacs_cs,
    ratio_pacs_ss,
    sensitivity_cs,
    sensitivity_general,
    sensitivity_pacs_imag,
    sensitivity_pacs_vacuum,
    sensitivity_ss,
    small_rotation_limit,
)
from qfog.probes import (
    PacsProbe,
    coherent_moments,
    match_cs_amplitude,
    match_ss_params,
    pacs_moments,
    ss_moments,
    vacuum_moments,
)
from qfog.sweep import SweepConfig, find_best_phase, run_sweep

from conftest import ACCEPTANCE_LINES

PI = math.pi


def record(number, title, ok, detail):
    ACCEPTANCE_LINES.append(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  ({detail})")
    assert ok, f"criterion {number} failed: {detail}"


def test_1_oracle_equivalence():
    t0 = time.perf_counter()
    worst_rel, worst_abs = 0.0, 0.0
    for m, alpha in itertools.product(range(13), (0.0, 0.5, 1.0, 2.0)):
        analytic = pacs_moments(PacsProbe(alpha, m))
        oracle = fo.oracle_moments(fo.pacs_state(alpha, m, dim=128))
        for name in ("mean_x1", "var_x1", "mean_photons"):
            ref, got = getattr(analytic, name), getattr(oracle, name)
            if ref == 0:
                worst_abs = max(worst_abs, abs(got))
            else:
                worst_rel = max(worst_rel, abs(got - ref) / abs(ref))
    pinned = pacs_moments(PacsProbe(2.0, 1)).var_x1
    elapsed = time.perf_counter() - t0
    ok = worst_rel <= 1e-9 and worst_abs <= 1e-12 and abs(pinned - 0.19) <= 1e-12 and elapsed < 1.0
    record(1, "oracle equivalence", ok,
           f"max rel {worst_rel:.2e}, max abs at zero {worst_abs:.2e}, var(2,1)={pinned:.15f}, {elapsed:.3f}s")


def test_2_formula_self_consistency():
    t0 = time.perf_counter()
    worst, compared = 0.0, 0
    grid = itertools.product(
        (k * PI / 8 for k in range(16)), (0.25, 0.5, 1.0), (0, 1, 5, 10), (0.5, 1.0, 2.0), (0.0, 1.0, 2.0)
    )
    for phi, gamma, m, alpha, y in grid:
        probe = PacsProbe(alpha, m)
        st = GyroSetting(phi, gamma)
        a = pacs_moments(probe)
        alpha_c = match_cs_amplitude(probe)
        _, r = match_ss_params(y, probe)
        for special, general in (
            (sensitivity_pacs_vacuum(probe, st), sensitivity_general(a, vacuum_moments(), st)),
            (sensitivity_pacs_imag(probe, y, st), sensitivity_general(a, coherent_moments(0.0, y), st)),
            (sensitivity_cs(alpha_c, y, st), sensitivity_general(coherent_moments(alpha_c), coherent_moments(0.0, y), st)),
            (sensitivity_ss(alpha_c, r, st), sensitivity_general(*ss_moments(r, alpha_c), st)),
        ):
            if special.finite and general.finite:
                worst = max(worst, abs(special.value - general.value) / general.value)
                compared += 1
            elif special.finite != general.finite:
                worst = math.inf
    elapsed = time.perf_counter() - t0
    record(2, "formula self-consistency", worst <= 1e-12 and elapsed < 1.0,
           f"max rel {worst:.2e} over {compared} points, {elapsed:.3f}s")


def test_3_headline_pacs_cs_ratio():
    t0 = time.perf_counter()
    probe = PacsProbe(1.0, 10)
    at_point = ratio_pacs_cs(probe, 1.0, GyroSetting(0.5844 * PI, 1.0)).ratio
    best = find_best_phase("ratio-cs", 1.0, 10, 1.0, 1.0, (0.5 * PI, 0.7 * PI))
    elapsed = time.perf_counter() - t0
    ok = 5e-4 <= at_point <= 5e-3 and best.value <= 2e-3 and elapsed < 1.0
    record(3, "headline PACS-CS ratio", ok,
           f"R(0.5844pi)={at_point:.4g}, min={best.value:.3g} at {best.phi / PI:.6f}pi, {elapsed:.3f}s")


def test_4_headline_pacs_ss_ratio():
    t0 = time.perf_counter()
    probe = PacsProbe(1.0, 10)
    at_point = ratio_pacs_ss(probe, 1.0, GyroSetting(0.499 * PI, 1.0)).ratio
    approach = [ratio_pacs_ss(probe, 1.0, GyroSetting(PI / 2 - d, 1.0)).ratio for d in (1e-2, 1e-3, 1e-4, 1e-6)]
    to_zero = all(b < a for a, b in zip(approach, approach[1:])) and approach[-1] < 1e-9
    elapsed = time.perf_counter() - t0
    in_band = 2e-3 <= at_point <= 2e-2
    record(4, "headline PACS-SS ratio", in_band and to_zero and elapsed < 1.0,
           f"R(0.499pi)={at_point:.4g} (band [2e-3, 2e-2]: {'in' if in_band else 'OUT'}), "
           f"R->0 at pi/2: {to_zero}, {elapsed:.3f}s")


def test_5_figure_shapes():
    details, ok = [], True
    # (a) ordering in m at pi/4
    for gamma in (1.0, 0.5):
        vals = [sensitivity_pacs_imag(PacsProbe(1.0, m), 1.0, GyroSetting(PI / 4, gamma)).value for m in (0, 1, 5, 10)]
        good = all(b < a for a, b in zip(vals, vals[1:]))
        ok &= good
        details.append(f"a(g={gamma}):{good}")
    # (b) decreasing in gamma on 50 points of (0, 1]
    gammas = np.linspace(0.02, 1.0, 50)
    good_b = True
    for m in (0, 1, 5, 10):
        vals = [sensitivity_pacs_imag(PacsProbe(1.0, m), 1.0, GyroSetting(PI / 4, float(g))).value for g in gammas]
        good_b &= all(b < a for a, b in zip(vals, vals[1:]))
    ok &= good_b
    details.append(f"b:{good_b}")
    # (c) ratio-cs sweep with m = 0 is identically one
    rows = run_sweep(SweepConfig(mode="ratio-cs", m=0, alpha=1.0, y=1.0, gamma=1.0, steps=2001)).rows
    dev = max(abs(r[1] - 1.0) for r in rows if r[1] != "indeterminate")
    ok &= dev <= 1e-12
    details.append(f"c: max |R-1|={dev:.1e}")
    record(5, "figure-shape properties", ok, ", ".join(details))


def test_6_small_rotation_limit():
    probe = PacsProbe(1.0, 1)
    limit = small_rotation_limit(probe, 1.0).value

    def deviation(phi):
        return abs(sensitivity_pacs_imag(probe, 1.0, GyroSetting(phi, 1.0)).value - limit) / limit

    factor = deviation(1e-3) / deviation(1e-4)
    record(6, "small-rotation limit", 8 <= factor <= 12, f"shrink factor {factor:.4f}")


def test_7_determinism(tmp_path):
    from qfog.cli import main

    outputs = []
    for run, jobs in enumerate(("1", "1", "4")):
        out = tmp_path / f"run{run}.csv"
        assert main(["sweep", "--mode", "ratio-ss", "--m", "10", "--steps", "2001",
                     "--jobs", jobs, "--out", str(out)]) == 0
        outputs.append(out.read_bytes())
    identical = outputs[0] == outputs[1] == outputs[2]
    record(7, "determinism", identical, f"3 runs (jobs 1, 1, 4), {len(outputs[0])} bytes each")
