"""Per-instance scalar observables and ensemble statistics.

Entropies are in bits (log base 2) throughout; the logarithms applied to
fluctuations for trend fitting are natural logs, matching the convention
of each quantity's defining formula.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSampleError, InsufficientDataError, InvalidSubsetError
from .tableau import normalize_subset


def mutual_info2(state, a_subset, b_subset) -> float:
    """Renyi-2 mutual information S_A + S_B - S_AB of disjoint subsets.

    Works on either backend through its ``renyi2_entropy`` method.
    """
    a = normalize_subset(a_subset, state.n)
    b = normalize_subset(b_subset, state.n)
    if set(a) & set(b):
        raise InvalidSubsetError(f"subsets overlap: {sorted(set(a) & set(b))}")
    s_a = state.renyi2_entropy(a)
    s_b = state.renyi2_entropy(b)
    s_ab = state.renyi2_entropy(tuple(sorted(a + b)))
    return float(s_a + s_b - s_ab)


def fluctuation(samples) -> float:
    """Population standard deviation, sqrt(E[X^2] - E[X]^2)."""
    xs = np.asarray(samples, dtype=float)
    if xs.size < 2:
        raise InsufficientDataError(f"need >= 2 samples, got {xs.size}")
    return float(np.std(xs))


def fluctuation_stderr(samples) -> float:
    """Delete-one jackknife standard error of :func:`fluctuation`."""
    xs = np.asarray(samples, dtype=float)
    m = xs.size
    if m < 3:
        raise InsufficientDataError(f"need >= 3 samples for a jackknife, got {m}")
    s1 = xs.sum()
    s2 = (xs**2).sum()
    mean_i = (s1 - xs) / (m - 1)
    var_i = np.maximum((s2 - xs**2) / (m - 1) - mean_i**2, 0.0)
    d_i = np.sqrt(var_i)
    return float(np.sqrt((m - 1) / m * ((d_i - d_i.mean()) ** 2).sum()))


def kurtosis(samples) -> float:
    """Standardized fourth moment E[(X-mu)^4] / sigma^4 (not excess)."""
    xs = np.asarray(samples, dtype=float)
    if xs.size < 4:
        raise InsufficientDataError(f"need >= 4 samples, got {xs.size}")
    centered = xs - xs.mean()
    sigma2 = float(np.mean(centered**2))
    if np.sqrt(sigma2) <= 1e-12:
        raise DegenerateSampleError("sample is constant; kurtosis undefined")
    return float(np.mean(centered**4) / sigma2**2)


def kurt_combo(k_a: float, k_b: float, k_ab: float) -> float:
    """Kurt(A) + Kurt(B) - Kurt(AB)."""
    return k_a + k_b - k_ab


@dataclass(slots=True)
class SampleRecord:
    """Observables of one circuit instance."""

    instance_index: int
    n: int
    n_t: int | None = None
    theta: float | None = None
    p_m: float | None = None
    i2: float = 0.0
    s2_a: float = 0.0
    s2_b: float = 0.0
    s2_ab: float = 0.0
    s4_ab: float = 0.0
    sz_a: float = 0.0
    sz_b: float = 0.0
    sz_ab: float = 0.0

    def validate(self) -> "SampleRecord":
        values = (self.i2, self.s2_a, self.s2_b, self.s2_ab, self.s4_ab,
                  self.sz_a, self.sz_b, self.sz_ab)
        if not all(np.isfinite(v) for v in values):
            raise ValueError(f"non-finite observable in record {self.instance_index}")
        if abs(self.i2 - (self.s2_a + self.s2_b - self.s2_ab)) > 1e-9:
            raise ValueError(
                f"mutual-information identity violated in record {self.instance_index}"
            )
        return self


def _snap(value: float) -> float:
    """Round to 12 decimals and normalize -0.0, removing float dust so
    that dense-backend records of Clifford circuits match the exact
    tableau values byte for byte."""
    rounded = round(value, 12)
    return 0.0 if rounded == 0.0 else rounded


def measure_record(state, a_subset, b_subset, instance_index: int = 0,
                   **params) -> SampleRecord:
    """Evaluate the full observable set of a state on subsets A and B."""
    a = normalize_subset(a_subset, state.n)
    b = normalize_subset(b_subset, state.n)
    ab = tuple(sorted(a + b))
    s2_a = _snap(float(state.renyi2_entropy(a)))
    s2_b = _snap(float(state.renyi2_entropy(b)))
    s2_ab = _snap(float(state.renyi2_entropy(ab)))
    return SampleRecord(
        instance_index=instance_index,
        n=state.n,
        i2=_snap(s2_a + s2_b - s2_ab),
        s2_a=s2_a,
        s2_b=s2_b,
        s2_ab=s2_ab,
        s4_ab=_snap(float(state.renyi_entropy(ab, 4))),
        sz_a=_snap(float(state.spin_z(a))),
        sz_b=_snap(float(state.spin_z(b))),
        sz_ab=_snap(float(state.spin_z(ab))),
        **params,
    ).validate()
