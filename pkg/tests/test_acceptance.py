"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Heavy ensembles are shared through session fixtures; every tolerance is
pinned here.  Run with ``pytest tests/test_acceptance.py -v -s`` to see the
per-criterion lines and timings.
"""

import math
import time

import numpy as np
import pytest

from qscramble.analysis import curve_crossings, fss_collapse, linear_fit
from qscramble.circuits import gen_clifford_block
from qscramble.config import EnsembleConfig
from qscramble.experiments import (
    run_kurtosis,
    run_mipt,
    run_oracle_checks,
    run_tdoped,
)
from qscramble.moments import (
    permutation_operator,
    permutation_trace,
    s4_labels,
    t_gate_overlap_bounds,
    t_gate_overlap_matrix,
)
from qscramble.output import format_value
from qscramble.statevector import PureState
from qscramble.tableau import StabilizerTableau

SEED = 20260810
THREADS = 2


def _report(criterion: str, passed: bool, detail: str, t0: float) -> None:
    status = "PASS" if passed else "FAIL"
    print(f"{status} {criterion}: {detail} [{time.time() - t0:.0f}s]")


@pytest.fixture(scope="session")
def tdoped_n8():
    cfg = EnsembleConfig(kind="tdoped", n_list=[8], nt_values=list(range(17)),
                         samples=500, master_seed=SEED, threads=THREADS)
    return run_tdoped(cfg)


@pytest.fixture(scope="session")
def tdoped_n12():
    cfg = EnsembleConfig(kind="tdoped", n_list=[12], nt_values=list(range(17)),
                         samples=500, master_seed=SEED, threads=THREADS)
    return run_tdoped(cfg)


@pytest.fixture(scope="session")
def oracle_report():
    cfg = EnsembleConfig(kind="oracle", n_list=[8, 12], nt_values=[0, 2, 4, 6],
                         samples=2000, master_seed=SEED, threads=THREADS)
    return run_oracle_checks(cfg)


@pytest.fixture(scope="session")
def mipt_main():
    cfg = EnsembleConfig(
        kind="mipt", n_list=[8, 12, 16], thetas=[0.0],
        pm_grid=[round(0.05 + 0.02 * k, 10) for k in range(16)],
        cycles=125, instances=400, master_seed=SEED, threads=THREADS,
    )
    return cfg, run_mipt(cfg)


@pytest.fixture(scope="session")
def mipt_magic():
    cfg = EnsembleConfig(
        kind="mipt", n_list=[8], thetas=[0.0, math.pi / 20, math.pi / 4],
        pm_grid=[0.19], cycles=125, instances=400,
        master_seed=SEED, threads=THREADS,
    )
    return cfg, run_mipt(cfg)


def test_criterion_01_fluctuation_magic_linearity(tdoped_n8):
    t0 = time.time()
    fit = tdoped_n8.fit_results[(8, "neg_ln_delta_i2")]
    ok = 0.10 <= fit.slope <= 0.17 and fit.residual_rms < 0.25
    _report("criterion 1 (fluctuation-vs-T linearity)", ok,
            f"slope={fit.slope:.4f} in [0.10, 0.17], rms={fit.residual_rms:.3f} < 0.25", t0)
    assert 0.10 <= fit.slope <= 0.17
    assert fit.residual_rms < 0.25


def test_criterion_02_leading_term_decomposition(tdoped_n12):
    t0 = time.time()
    summary = tdoped_n12.summary
    nts = summary.column("n_t")
    d_i2 = summary.column("neg_ln_delta_i2")
    d_ab = summary.column("neg_ln_delta_s2_ab")
    d_a = summary.column("neg_ln_delta_s2_a")
    pair_gap = max(abs(x - y) for x, y in zip(d_i2, d_ab))
    separations = [
        min(abs(a - i), abs(a - ab))
        for nt, i, ab, a in zip(nts, d_i2, d_ab, d_a) if nt >= 8
    ]
    ok = pair_gap <= 0.5 and all(s > 0.5 for s in separations)
    _report("criterion 2 (leading-term decomposition)", ok,
            f"max |lnd(S2_AB)-lnd(I2)| = {pair_gap:.3f} <= 0.5, "
            f"min S2_A separation at nt>=8 = {min(separations):.2f} > 0.5", t0)
    assert pair_gap <= 0.5
    assert all(s > 0.5 for s in separations)


def test_criterion_03_exact_mean_purity(oracle_report):
    t0 = time.time()
    check = next(c for c in oracle_report.checks if c.name == "mean_purity_n8")
    _report("criterion 3 (exact mean purity)", check.passed,
            f"mean={check.value:.6f} target={check.expected:.6f} "
            f"tol(3SE)={check.tolerance:.6f}", t0)
    assert check.passed


def test_criterion_04_fourth_moment_decay(oracle_report):
    t0 = time.time()
    checks = [c for c in oracle_report.checks if c.name.startswith("moment_decay_n12")]
    assert len(checks) == 4
    detail = "; ".join(
        f"nt={c.name.split('nt')[-1]}: D={c.value:.3f} vs {c.expected:.3f} "
        f"(tol {c.tolerance:.3f})"
        for c in checks
    )
    ok = all(c.passed for c in checks)
    _report("criterion 4 (fourth-moment decay)", ok, detail, t0)
    assert ok


def test_criterion_05_t_gate_overlap_exact():
    t0 = time.time()
    worst_diag = 0.0
    worst_off = True
    for n in (1, 2):
        m = t_gate_overlap_matrix(n)
        diag_target, off_bound = t_gate_overlap_bounds(n)
        worst_diag = max(worst_diag, float(np.abs(np.diag(m) - diag_target).max()))
        off = np.abs(m - np.diag(np.diag(m))).max()
        worst_off = worst_off and off <= off_bound + 1e-9
    ok = worst_diag < 1e-9 and worst_off
    _report("criterion 5 (single-T overlap matrix)", ok,
            f"max diagonal deviation {worst_diag:.2e} < 1e-9, "
            "off-diagonal bounds satisfied", t0)
    assert ok


def test_criterion_06_permutation_traces():
    t0 = time.time()
    ok = permutation_trace("(12)", 2) == 2 and permutation_trace("e", 2) == 4
    for label in s4_labels():
        r1 = permutation_operator(label, 4, 1).matrix
        r2 = permutation_operator(label, 4, 2).matrix
        ok = ok and np.trace(r2).real == np.trace(r1).real ** 2
    _report("criterion 6 (permutation traces)", ok,
            "tr r_(12)=2, tr r_e=4, tr R = (tr r)^n over S4 at n=2", t0)
    assert ok


def test_criterion_07_measurement_transition(mipt_main):
    t0 = time.time()
    cfg, result = mipt_main
    ps = result.summary.select(n=cfg.n_list[0]).column("p_m")
    crossings = []
    for n1, n2 in zip(cfg.n_list, cfg.n_list[1:]):
        y1 = result.summary.select(n=n1).column("mean_i2")
        y2 = result.summary.select(n=n2).column("mean_i2")
        found = curve_crossings(ps, y1, y2)
        assert found, f"no crossing between n={n1} and n={n2}"
        crossings.append(found[0])  # first crossing: the separated-regime one
    col = result.collapse[0.0]
    ok = (
        all(0.13 <= c <= 0.26 for c in crossings)
        and 0.13 <= col.p_c <= 0.26
        and 0.8 <= col.nu <= 1.8
    )
    _report("criterion 7 (measurement transition)", ok,
            f"crossings={[f'{c:.3f}' for c in crossings]} in [0.13, 0.26], "
            f"collapse p_c={col.p_c:.3f}, nu={col.nu:.2f}", t0)
    assert all(0.13 <= c <= 0.26 for c in crossings)
    assert 0.13 <= col.p_c <= 0.26
    assert 0.8 <= col.nu <= 1.8


def test_criterion_08_fluctuation_reduction(mipt_magic):
    t0 = time.time()
    cfg, result = mipt_magic
    f = {}
    se = {}
    for theta in cfg.thetas:
        row = result.summary.select(theta=theta)
        f[theta] = row.column("fluct_i2")[0]
        se[theta] = row.column("fluct_i2_stderr")[0]
    t_0, t_mid, t_max = cfg.thetas
    between = f[t_max] <= f[t_mid] <= f[t_0]
    near = (abs(f[t_mid] - f[t_0]) <= se[t_mid] + se[t_0]
            or abs(f[t_mid] - f[t_max]) <= se[t_mid] + se[t_max])
    ok = f[t_max] < f[t_0] and (between or near)
    _report("criterion 8 (fluctuation reduction under doping)", ok,
            f"F(0)={f[t_0]:.4f}, F(pi/20)={f[t_mid]:.4f}, F(pi/4)={f[t_max]:.4f} "
            f"(stderr ~{se[t_0]:.4f})", t0)
    assert f[t_max] < f[t_0]
    assert between or near


def test_criterion_09_backend_oracle_equivalence():
    t0 = time.time()
    worst = 0.0
    for seed in range(200):
        n = 6
        ops = gen_clifford_block(n, np.random.default_rng((SEED, seed)))
        tab = StabilizerTableau(n)
        vec = PureState(n)
        for op in ops:
            tab.apply(op)
            vec.apply(op)
        sub_rng = np.random.default_rng((SEED + 1, seed))
        for _ in range(20):
            k = int(sub_rng.integers(1, n))
            subset = sorted(sub_rng.choice(n, size=k, replace=False).tolist())
            dense = vec.renyi2_entropy(subset)
            worst = max(worst, abs(dense - round(dense)))
            assert round(dense) == tab.renyi2_entropy(subset)
    ok = worst < 1e-9
    _report("criterion 9 (backend equivalence)", ok,
            f"200 circuits x 20 subsets, max integer deviation {worst:.2e} < 1e-9", t0)
    assert ok


def test_criterion_10_kurtosis_trend():
    t0 = time.time()
    cfg = EnsembleConfig(kind="kurtosis", n_list=[8], nt_values=list(range(17)),
                         samples=500, master_seed=SEED, threads=THREADS)
    result = run_kurtosis(cfg)
    fit = result.fit_results[(8, "neg_ln_kurt_combo")]
    ok = fit.slope > 0 and fit.slope_tstat > 3
    _report("criterion 10 (spin-kurtosis trend)", ok,
            f"slope={fit.slope:.4f} > 0, t-statistic={fit.slope_tstat:.1f} > 3", t0)
    assert fit.slope > 0
    assert fit.slope_tstat > 3


def test_criterion_11_renyi4_control(tdoped_n12):
    t0 = time.time()
    delta_fit = tdoped_n12.fit_results[(12, "neg_ln_delta_s4_ab")]
    mean_fit = tdoped_n12.fit_results[(12, "neg_ln_mean_s4_ab")]
    ok = (delta_fit.slope > 0 and delta_fit.slope_tstat > 3
          and abs(mean_fit.slope) < delta_fit.slope / 3)
    _report("criterion 11 (order-4 control)", ok,
            f"delta slope={delta_fit.slope:.4f} (t={delta_fit.slope_tstat:.1f}), "
            f"mean slope={mean_fit.slope:.5f}, bound={delta_fit.slope / 3:.4f}", t0)
    assert delta_fit.slope > 0
    assert delta_fit.slope_tstat > 3
    assert abs(mean_fit.slope) < delta_fit.slope / 3


def test_criterion_12_collapse_round_trip():
    t0 = time.time()
    ps = np.arange(0.05, 0.351, 0.02)
    rng = np.random.default_rng(SEED)
    results = []
    for noise in (0.0, 0.01):
        curves = []
        for n in (8, 12, 16):
            x = (ps - 0.19) * n ** (1.0 / 1.25)
            y = 1.0 / (1.0 + np.exp(2.5 * x))
            if noise:
                y = y * (1.0 + noise * rng.standard_normal(ps.size))
            curves.append((n, ps, y))
        res = fss_collapse(curves)
        results.append((noise, res))
    ok = all(abs(r.p_c - 0.19) <= 0.02 and abs(r.nu - 1.25) <= 0.15
             for _, r in results)
    detail = "; ".join(f"noise={nz}: p_c={r.p_c:.3f}, nu={r.nu:.2f}"
                       for nz, r in results)
    _report("criterion 12 (synthetic collapse round trip)", ok, detail, t0)
    for _, r in results:
        assert abs(r.p_c - 0.19) <= 0.02
        assert abs(r.nu - 1.25) <= 0.15


def _csv_bytes(table) -> bytes:
    lines = [",".join(table.columns)]
    lines += [",".join(format_value(v) for v in row) for row in table.rows]
    return ("\n".join(lines) + "\n").encode()


def test_criterion_13_determinism_across_thread_counts():
    # Same experiment kinds and seed-derivation path as the fixtures above,
    # scaled down so both thread counts run in seconds.
    t0 = time.time()
    outputs = []
    for threads in (1, 2):
        td = run_tdoped(EnsembleConfig(kind="tdoped", n_list=[8],
                                       nt_values=[0, 1, 2, 3], samples=12,
                                       master_seed=SEED, threads=threads))
        mp = run_mipt(EnsembleConfig(kind="mipt", n_list=[8], thetas=[0.0],
                                     pm_grid=[0.1, 0.2], cycles=10, instances=8,
                                     master_seed=SEED, threads=threads))
        outputs.append((_csv_bytes(td.samples), _csv_bytes(td.summary),
                        _csv_bytes(mp.samples), _csv_bytes(mp.summary)))
    ok = outputs[0] == outputs[1]
    _report("criterion 13 (thread-count determinism)", ok,
            "tdoped and mipt CSV bytes identical for 1 and 2 workers", t0)
    assert ok
