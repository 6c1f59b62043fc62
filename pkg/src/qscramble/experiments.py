"""Seeded experiment runners.

Each runner maps (config, master seed) to tables of per-instance records
plus deterministic aggregates.  Instances are independent and individually
seeded (see :func:`qscramble.config.instance_rngs`), so the worker pool
size changes wall time only, never results; aggregation is single-threaded
in fixed point order.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .analysis import CollapseResult, FitResult, fss_collapse, linear_fit
from .circuits import gen_mipt_cycle, gen_tdoped
from .clifford2 import clifford2_table
from .config import EnsembleConfig, instance_rngs
from .errors import DegenerateSampleError, InsufficientDataError, SingularFitError
from .moments import (
    mean_purity_prediction,
    moment_decay_prediction,
    pauli_power_site,
    permutation_operator,
    permutation_trace,
    purity_decay_statistic,
    s4_labels,
    t_gate_overlap_bounds,
    t_gate_overlap_matrix,
)
from .observables import fluctuation, fluctuation_stderr, kurt_combo, kurtosis, measure_record
from .output import Table
from .statevector import PureState
from .tableau import StabilizerTableau

SAMPLE_COLUMNS = ["instance", "n", "n_t", "theta", "p_m",
                  "i2", "s2_a", "s2_b", "s2_ab", "s4_ab", "sz_a", "sz_b", "sz_ab"]

TDOPED_QUANTITIES = ("i2", "s2_a", "s2_b", "s2_ab", "s4_ab")


def _make_state(backend: str, n: int):
    return StabilizerTableau(n) if backend == "tableau" else PureState(n)


def _run_ops(state, ops, outcome_rng) -> None:
    for op in ops:
        if op.kind == "MZ":
            state.measure_z(op.qubits[0], outcome_rng)
        else:
            state.apply(op)


def _neg_ln(value: float) -> float:
    return -math.log(value) if value > 0.0 else math.nan


def _map_points(config: EnsembleConfig, worker, points: list):
    """Run ``worker(point)`` over points, pooled when threads > 1."""
    if config.threads == 1 or len(points) <= 1:
        return [worker(p) for p in points]
    clifford2_table()  # build before fork so children inherit it
    with ProcessPoolExecutor(max_workers=config.threads) as pool:
        return list(pool.map(worker, points, chunksize=1))


# -- T-doped family (tdoped / renyi4 / kurtosis) -----------------------------


def _tdoped_point(args) -> list[tuple]:
    config, n, p_idx, n_t = args
    k = config.subsystem_size(n)
    a = tuple(range(k))
    b = tuple(range(n - k, n))
    backend = config.resolved_backend()
    rows = []
    for inst in range(config.samples):
        circuit_rng, _ = instance_rngs(config.master_seed, config.kind, n, p_idx, inst)
        circ = gen_tdoped(n, n_t, circuit_rng, pairing=config.cnot_pairing,
                          block_steps=config.block_steps)
        state = _make_state(backend, n)
        for op in circ.ops:
            state.apply(op)
        rec = measure_record(state, a, b, instance_index=inst, n_t=n_t)
        rows.append((inst, n, n_t, None, None, rec.i2, rec.s2_a, rec.s2_b,
                     rec.s2_ab, rec.s4_ab, rec.sz_a, rec.sz_b, rec.sz_ab))
    return rows


def _tdoped_samples(config: EnsembleConfig) -> Table:
    points = [
        (config, n, p_idx, n_t)
        for n in config.n_list
        for p_idx, n_t in enumerate(config.nt_values)
    ]
    table = Table(SAMPLE_COLUMNS)
    for rows in _map_points(config, _tdoped_point, points):
        table.rows.extend(rows)
    return table


@dataclass
class TdopedResult:
    samples: Table
    summary: Table
    fits: Table
    fit_results: dict


def run_tdoped(config: EnsembleConfig) -> TdopedResult:
    """Fluctuation scan over T-gate counts, with per-size linear fits."""
    config.validate()
    samples = _tdoped_samples(config)

    summary_cols = ["n", "n_t", "samples", "mean_i2"]
    for q in TDOPED_QUANTITIES:
        summary_cols += [f"delta_{q}", f"neg_ln_delta_{q}"]
    summary_cols += ["mean_s4_ab", "neg_ln_mean_s4_ab"]
    summary = Table(summary_cols)

    for n in config.n_list:
        for n_t in config.nt_values:
            point = samples.select(n=n, n_t=n_t)
            row = [n, n_t, len(point.rows), float(np.mean(point.column("i2")))]
            for q in TDOPED_QUANTITIES:
                d = fluctuation(point.column(q))
                row += [d, _neg_ln(d)]
            mean_s4 = float(np.mean(point.column("s4_ab")))
            row += [mean_s4, _neg_ln(mean_s4)]
            summary.append(*row)

    fits = Table(["n", "quantity", "slope", "intercept", "residual_rms",
                  "slope_stderr", "slope_tstat", "n_points"])
    fit_results: dict = {}
    fit_quantities = [f"neg_ln_delta_{q}" for q in TDOPED_QUANTITIES]
    fit_quantities.append("neg_ln_mean_s4_ab")
    for n in config.n_list:
        per_n = summary.select(n=n)
        xs = per_n.column("n_t")
        for quantity in fit_quantities:
            ys = per_n.column(quantity)
            pairs = [(x, y) for x, y in zip(xs, ys) if math.isfinite(y)]
            try:
                fit = linear_fit([p[0] for p in pairs], [p[1] for p in pairs])
            except SingularFitError:
                continue
            fit_results[(n, quantity)] = fit
            fits.append(n, quantity, fit.slope, fit.intercept, fit.residual_rms,
                        fit.slope_stderr, fit.slope_tstat, fit.n_points)
    return TdopedResult(samples, summary, fits, fit_results)


def run_renyi4(config: EnsembleConfig) -> TdopedResult:
    """Order-4 entropy control scan; same machinery, separate seed stream."""
    if config.kind != "renyi4":
        raise ValueError("config.kind must be 'renyi4'")
    return run_tdoped(config)


@dataclass
class KurtosisResult:
    samples: Table
    summary: Table
    fits: Table
    fit_results: dict


def run_kurtosis(config: EnsembleConfig) -> KurtosisResult:
    """Spin-total kurtosis scan over T-gate counts.

    Degenerate points (constant spin samples or non-positive kurtosis
    combination) become flagged rows rather than failures.
    """
    config.validate()
    samples = _tdoped_samples(config)

    summary = Table(["n", "n_t", "samples", "kurt_sz_a", "kurt_sz_b", "kurt_sz_ab",
                     "kurt_combo", "neg_ln_kurt_combo", "degenerate"])
    for n in config.n_list:
        for n_t in config.nt_values:
            point = samples.select(n=n, n_t=n_t)
            try:
                k_a = kurtosis(point.column("sz_a"))
                k_b = kurtosis(point.column("sz_b"))
                k_ab = kurtosis(point.column("sz_ab"))
                combo = kurt_combo(k_a, k_b, k_ab)
                neg_ln = _neg_ln(combo)
                degenerate = not math.isfinite(neg_ln)
            except DegenerateSampleError:
                k_a = k_b = k_ab = combo = neg_ln = math.nan
                degenerate = True
            summary.append(n, n_t, len(point.rows), k_a, k_b, k_ab, combo,
                           neg_ln, degenerate)

    fits = Table(["n", "quantity", "slope", "intercept", "residual_rms",
                  "slope_stderr", "slope_tstat", "n_points"])
    fit_results: dict = {}
    for n in config.n_list:
        per_n = summary.select(n=n)
        pairs = [
            (x, y) for x, y, flag in zip(per_n.column("n_t"),
                                         per_n.column("neg_ln_kurt_combo"),
                                         per_n.column("degenerate"))
            if not flag and math.isfinite(y)
        ]
        try:
            fit = linear_fit([p[0] for p in pairs], [p[1] for p in pairs])
        except SingularFitError:
            continue
        fit_results[(n, "neg_ln_kurt_combo")] = fit
        fits.append(n, "neg_ln_kurt_combo", fit.slope, fit.intercept,
                    fit.residual_rms, fit.slope_stderr, fit.slope_tstat, fit.n_points)
    return KurtosisResult(samples, summary, fits, fit_results)


# -- measurement-induced sweeps ----------------------------------------------


def _mipt_point(args) -> list[tuple]:
    config, n, t_idx, theta, m_idx, p_m = args
    k = config.subsystem_size(n)
    a = tuple(range(k))
    b = tuple(range(n // 2, n // 2 + k))
    backend = config.resolved_backend(theta)
    p_idx = t_idx * len(config.pm_grid) + m_idx
    rows = []
    for inst in range(config.instances):
        circuit_rng, outcome_rng = instance_rngs(
            config.master_seed, config.kind, n, p_idx, inst
        )
        state = _make_state(backend, n)
        for _ in range(config.cycles):
            _run_ops(state, gen_mipt_cycle(n, theta, p_m, circuit_rng), outcome_rng)
        rec = measure_record(state, a, b, instance_index=inst, theta=theta, p_m=p_m)
        rows.append((inst, n, None, theta, p_m, rec.i2, rec.s2_a, rec.s2_b,
                     rec.s2_ab, rec.s4_ab, rec.sz_a, rec.sz_b, rec.sz_ab))
    return rows


@dataclass
class MiptResult:
    samples: Table
    summary: Table
    collapse: dict  # theta -> CollapseResult
    collapse_table: Table


def run_mipt(config: EnsembleConfig) -> MiptResult:
    """Brickwork measurement sweep; final-state mutual information of the
    first and third subsystem blocks, per (n, theta, p_m), plus a scaling
    collapse over sizes for each rotation angle."""
    config.validate()
    points = [
        (config, n, t_idx, theta, m_idx, p_m)
        for n in config.n_list
        for t_idx, theta in enumerate(config.thetas)
        for m_idx, p_m in enumerate(config.pm_grid)
    ]
    samples = Table(SAMPLE_COLUMNS)
    for rows in _map_points(config, _mipt_point, points):
        samples.rows.extend(rows)

    summary = Table(["n", "theta", "p_m", "instances", "mean_i2",
                     "fluct_i2", "fluct_i2_stderr"])
    for n in config.n_list:
        for theta in config.thetas:
            for p_m in config.pm_grid:
                point = samples.select(n=n, theta=theta, p_m=p_m)
                i2 = point.column("i2")
                summary.append(n, theta, p_m, len(point.rows), float(np.mean(i2)),
                               fluctuation(i2), fluctuation_stderr(i2))

    collapse: dict = {}
    collapse_table = Table(["theta", "p_c", "nu", "objective", "low_confidence"])
    if len(config.n_list) >= 3:
        for theta in config.thetas:
            curves = []
            for n in config.n_list:
                per = summary.select(n=n, theta=theta)
                curves.append((n, per.column("p_m"), per.column("mean_i2")))
            try:
                res = fss_collapse(curves)
            except InsufficientDataError:
                continue
            collapse[theta] = res
            collapse_table.append(theta, res.p_c, res.nu, res.objective,
                                  res.low_confidence)
    return MiptResult(samples, summary, collapse, collapse_table)


# -- exact-moment checks -------------------------------------------------------


@dataclass
class OracleCheck:
    name: str
    passed: bool
    value: float
    expected: float
    tolerance: float
    detail: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} {self.name}: value={self.value:.6g} "
                f"expected={self.expected:.6g} tol={self.tolerance:.3g} {self.detail}")


@dataclass
class OracleReport:
    checks: list

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def table(self) -> Table:
        t = Table(["check", "passed", "value", "expected", "tolerance", "detail"])
        for c in self.checks:
            t.append(c.name, c.passed, c.value, c.expected, c.tolerance, c.detail)
        return t


def _purity_check_point(args) -> list[float]:
    config, n, p_idx, chunk_start, chunk_size = args
    k = config.subsystem_size(n)
    subset = tuple(range(k)) + tuple(range(n - k, n))
    out = []
    for inst in range(chunk_start, chunk_start + chunk_size):
        circuit_rng, _ = instance_rngs(config.master_seed, "oracle", n, p_idx, inst)
        circ = gen_tdoped(n, 0, circuit_rng, pairing=config.cnot_pairing,
                          block_steps=config.block_steps)
        t = StabilizerTableau(n)
        for op in circ.ops:
            t.apply(op)
        out.append(t.purity(subset))
    return out


def _decay_point(args) -> list[float]:
    config, n, p_idx, n_t = args
    k = config.subsystem_size(n)
    subset = tuple(range(k)) + tuple(range(n - k, n))
    out = []
    for inst in range(config.samples):
        circuit_rng, _ = instance_rngs(config.master_seed, "oracle", n, p_idx, inst)
        circ = gen_tdoped(n, n_t, circuit_rng, pairing=config.cnot_pairing,
                          block_steps=config.block_steps)
        s = PureState(n)
        for op in circ.ops:
            s.apply(op)
        out.append(s.purity(subset))
    return out


def run_oracle_checks(config: EnsembleConfig) -> OracleReport:
    """Exact-moment verifications: permutation traces, the Pauli-power
    operator identity, the single-T-gate overlap matrix, and Monte-Carlo
    agreement with the closed-form mean purity and fourth-moment decay.
    """
    config.validate()
    checks: list[OracleCheck] = []

    tr12 = permutation_trace("(12)", 2)
    checks.append(OracleCheck("trace_r12_t2", tr12 == 2, tr12, 2, 0.0, "swap trace"))
    tre = permutation_trace("e", 2)
    checks.append(OracleCheck("trace_re_t2", tre == 4, tre, 4, 0.0, "identity trace"))

    worst = 0.0
    for lbl in s4_labels():
        r1 = permutation_operator(lbl, 4, 1).matrix
        r2 = permutation_operator(lbl, 4, 2).matrix
        worst = max(worst, abs(np.trace(r2).real - np.trace(r1).real ** 2))
    checks.append(OracleCheck("tensor_power_traces_n2", worst == 0.0, worst, 0.0,
                              0.0, "tr(R) = tr(r)^n over all 24 permutations"))

    p4 = pauli_power_site(4)
    dev = float(np.abs(p4 @ p4 - 2.0 * p4).max())
    checks.append(OracleCheck("pauli_power_square", dev < 1e-12, dev, 0.0, 1e-12,
                              "p4^2 = 2 p4"))

    for n_sites in (1, 2):
        m = t_gate_overlap_matrix(n_sites)
        diag_target, off_bound = t_gate_overlap_bounds(n_sites)
        diag_dev = float(np.abs(np.diag(m) - diag_target).max())
        checks.append(OracleCheck(f"t_overlap_diag_n{n_sites}", diag_dev < 1e-9,
                                  diag_dev, 0.0, 1e-9,
                                  f"diagonal = {diag_target:g}"))
        off = np.abs(m - np.diag(np.diag(m))).max()
        checks.append(OracleCheck(f"t_overlap_offdiag_n{n_sites}",
                                  off <= off_bound + 1e-9, float(off), off_bound,
                                  1e-9, "off-diagonal magnitude bound"))

    # Monte-Carlo mean purity on the Clifford-only ensemble (tableau).
    n_pur = config.n_list[0]
    p_idx_pur = len(config.nt_values)  # distinct stream from the decay sweep
    chunk = 250
    chunks = [
        (config, n_pur, p_idx_pur, start, min(chunk, config.samples - start))
        for start in range(0, config.samples, chunk)
    ]
    purities = [v for part in _map_points(config, _purity_check_point, chunks)
                for v in part]
    purities = np.asarray(purities)
    target = mean_purity_prediction(n_pur, 2 * config.subsystem_size(n_pur))
    se = float(purities.std(ddof=1) / math.sqrt(purities.size))
    dev = abs(float(purities.mean()) - target)
    checks.append(OracleCheck(f"mean_purity_n{n_pur}", dev <= 3 * se,
                              float(purities.mean()), target, 3 * se,
                              f"{purities.size} Clifford samples, dev/SE={dev / se:.2f}"))

    # Fourth-moment decay on the doped ensemble (statevector).
    n_dec = config.n_list[-1]
    points = [(config, n_dec, p_idx, n_t)
              for p_idx, n_t in enumerate(config.nt_values)]
    for (_, _, _, n_t), pur in zip(points, _map_points(config, _decay_point, points)):
        value, stderr = purity_decay_statistic(pur, n_dec)
        pred = moment_decay_prediction(n_t)
        tol = max(3 * stderr, 0.2 * pred)
        checks.append(OracleCheck(f"moment_decay_n{n_dec}_nt{n_t}",
                                  abs(value - pred) <= tol, value, pred, tol,
                                  f"stderr={stderr:.4f}"))
    return OracleReport(checks)
