"""Experiment configuration and reproducible stream derivation."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from fractions import Fraction

import numpy as np

from .errors import InvalidConfigError, ResourceLimitError

EXPERIMENT_KINDS = ("tdoped", "mipt", "kurtosis", "renyi4", "oracle")
_KIND_CODES = {kind: i + 1 for i, kind in enumerate(EXPERIMENT_KINDS)}

STATEVECTOR_CAP = 26
MIPT_STATEVECTOR_CAP = 12


@dataclass
class EnsembleConfig:
    """Parameters of one experiment run.

    ``nt_values`` drives the T-doped family (tdoped / kurtosis / renyi4);
    (``thetas``, ``pm_grid``, ``cycles``) drive the measurement sweeps.
    ``subsystem_fraction`` sets |A| = |B| = fraction * n, taken from the
    ends of the chain for T-doped runs and from the first and third
    blocks for measurement sweeps.
    """

    kind: str = "tdoped"
    n_list: list[int] = field(default_factory=lambda: [8])
    nt_values: list[int] | None = None
    thetas: list[float] = field(default_factory=lambda: [0.0])
    pm_grid: list[float] | None = None
    cycles: int = 125
    samples: int = 500
    instances: int = 400
    subsystem_fraction: Fraction = Fraction(1, 4)
    master_seed: int = 0
    backend: str = "auto"
    out: str | None = None
    fmt: str = "both"
    threads: int = 1
    cnot_pairing: str = "independent"
    block_steps: int | None = None
    allow_large_statevector: bool = False

    def __post_init__(self) -> None:
        if isinstance(self.subsystem_fraction, (str, float)):
            self.subsystem_fraction = Fraction(str(self.subsystem_fraction)).limit_denominator(64)
        if self.nt_values is None and self.kind in ("tdoped", "kurtosis", "renyi4"):
            self.nt_values = list(range(0, 17))
        if self.pm_grid is None and self.kind == "mipt":
            self.pm_grid = [round(0.02 * k, 10) for k in range(1, 21)]
        if self.kind == "oracle" and self.nt_values is None:
            self.nt_values = [0, 2, 4, 6]

    # -- validation -----------------------------------------------------

    def subsystem_size(self, n: int) -> int:
        size = self.subsystem_fraction * n
        if size.denominator != 1:
            raise InvalidConfigError(
                f"subsystem fraction {self.subsystem_fraction} does not divide n={n}"
            )
        return int(size)

    def resolved_backend(self, theta: float = 0.0) -> str:
        if self.backend not in ("auto", "tableau", "statevector"):
            raise InvalidConfigError(f"unknown backend {self.backend!r}")
        if self.backend != "auto":
            return self.backend
        if self.kind in ("kurtosis",):
            return "statevector"
        if self.kind in ("tdoped", "renyi4"):
            return "statevector" if any(nt > 0 for nt in self.nt_values) else "tableau"
        if self.kind == "mipt":
            return "tableau" if theta == 0.0 else "statevector"
        return "statevector"

    def validate(self) -> "EnsembleConfig":
        if self.kind not in EXPERIMENT_KINDS:
            raise InvalidConfigError(f"unknown experiment kind {self.kind!r}")
        if not self.n_list:
            raise InvalidConfigError("n_list must be non-empty")
        if self.threads < 1:
            raise InvalidConfigError(f"threads must be >= 1, got {self.threads}")
        if self.fmt not in ("csv", "json", "both"):
            raise InvalidConfigError(f"unknown output format {self.fmt!r}")
        if not 0 < self.subsystem_fraction <= Fraction(1, 2):
            raise InvalidConfigError(
                f"subsystem fraction must lie in (0, 1/2], got {self.subsystem_fraction}"
            )
        for n in self.n_list:
            k = self.subsystem_size(n)
            if k < 1:
                raise InvalidConfigError(f"subsystem empty at n={n}")

        if self.kind in ("tdoped", "kurtosis", "renyi4", "oracle"):
            if not self.nt_values:
                raise InvalidConfigError("nt_values must be non-empty")
            if any(nt < 0 for nt in self.nt_values):
                raise InvalidConfigError("T-gate counts must be >= 0")
            if self.samples < 2:
                raise InvalidConfigError("need at least 2 samples")
            for n in self.n_list:
                if n < 4 or n % 4 != 0:
                    raise InvalidConfigError(
                        f"T-doped family needs n >= 4 divisible by 4, got {n}"
                    )
            if self.backend == "tableau" and any(nt > 0 for nt in self.nt_values):
                raise InvalidConfigError(
                    "tableau backend cannot simulate T gates; use statevector"
                )
            if self.kind == "kurtosis" and self.backend == "tableau":
                raise InvalidConfigError("spin-kurtosis sweeps require the statevector backend")

        if self.kind == "mipt":
            if not self.pm_grid:
                raise InvalidConfigError("pm_grid must be non-empty")
            if any(not 0.0 <= p <= 1.0 for p in self.pm_grid):
                raise InvalidConfigError("measurement rates must lie in [0, 1]")
            if self.cycles < 1:
                raise InvalidConfigError("cycle count must be >= 1")
            if self.instances < 2:
                raise InvalidConfigError("need at least 2 instances")
            if not self.thetas:
                raise InvalidConfigError("thetas must be non-empty")
            for n in self.n_list:
                if n < 4 or n % 2 != 0:
                    raise InvalidConfigError(f"measurement sweeps need even n >= 4, got {n}")
            if self.backend == "tableau" and any(t != 0.0 for t in self.thetas):
                raise InvalidConfigError(
                    "tableau backend cannot simulate nonzero rotation angles"
                )

        # resource safety, before any simulation starts
        for n in self.n_list:
            needs_state = any(
                self.resolved_backend(theta) == "statevector" for theta in self.thetas
            ) if self.kind == "mipt" else self.resolved_backend() == "statevector"
            if needs_state and n > STATEVECTOR_CAP:
                raise ResourceLimitError(
                    f"n={n} exceeds the statevector cap of {STATEVECTOR_CAP} qubits"
                )
            if (
                self.kind == "mipt"
                and n > MIPT_STATEVECTOR_CAP
                and not self.allow_large_statevector
                and any(self.resolved_backend(theta) == "statevector" for theta in self.thetas)
            ):
                raise ResourceLimitError(
                    f"statevector measurement sweeps capped at n={MIPT_STATEVECTOR_CAP} "
                    "(set allow_large_statevector to override)"
                )
        return self

    # -- persistence ------------------------------------------------------

    def to_dict(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            out[f.name] = str(v) if isinstance(v, Fraction) else v
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "EnsembleConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise InvalidConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_file(cls, path) -> "EnsembleConfig":
        with open(path) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise InvalidConfigError(f"config file {path} is not valid JSON: {exc}")
        return cls.from_dict(data)


def instance_rngs(master_seed: int, kind: str, n: int, param_index: int,
                  instance_index: int):
    """(circuit stream, outcome stream) for one ensemble instance.

    Streams are derived by hashing (master_seed, kind, n, param index,
    instance index, stream id) through SeedSequence, so every instance is
    reproducible in isolation and independent of worker scheduling.
    Circuit structure and measurement outcomes use separate streams: at
    theta = 0 the recorded entropies are outcome-independent, which makes
    the two backends produce identical tables from identical circuits.
    """
    base = (int(master_seed), _KIND_CODES[kind], int(n), int(param_index),
            int(instance_index))
    circuit = np.random.default_rng(np.random.SeedSequence(base + (0,)))
    outcome = np.random.default_rng(np.random.SeedSequence(base + (1,)))
    return circuit, outcome
