"""Dense statevector backend supporting arbitrary 1- and 2-qubit gates.

Amplitudes are indexed little-endian: qubit 0 is the least significant bit
of the basis-state index.  Subsystem quantities for arbitrary (possibly
non-contiguous) qubit subsets are computed by reshaping the amplitude
vector into a 2^k x 2^(n-k) matrix M via a bit-gather; Tr rho_A^2 is then
the squared Frobenius norm of the Gram matrix M M^dagger.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import (
    InvalidGateError,
    InvalidSubsetError,
    NumericalStateError,
    ResourceLimitError,
)
from .tableau import normalize_subset

DEFAULT_QUBIT_CAP = 26

# Cached index permutations pay off only while 2^n tables stay small.
_PERM_CACHE_MAX_N = 16
_PERM_CACHE: dict = {}

_SQ2 = 1.0 / math.sqrt(2.0)
_T_PHASE = np.exp(1j * np.pi / 4)


def _cnot_perm(n: int, c: int, t: int) -> np.ndarray:
    key = ("cnot", n, c, t)
    perm = _PERM_CACHE.get(key)
    if perm is None:
        idx = np.arange(1 << n)
        perm = np.where((idx >> c) & 1 == 1, idx ^ (1 << t), idx)
        _PERM_CACHE[key] = perm
    return perm


def _flip_perm(n: int, q: int) -> np.ndarray:
    key = ("flip", n, q)
    perm = _PERM_CACHE.get(key)
    if perm is None:
        perm = np.arange(1 << n) ^ (1 << q)
        _PERM_CACHE[key] = perm
    return perm


def _y_phase(n: int, q: int) -> np.ndarray:
    key = ("yphase", n, q)
    ph = _PERM_CACHE.get(key)
    if ph is None:
        bits = (np.arange(1 << n) >> q) & 1
        ph = np.where(bits == 1, 1j, -1j)
        _PERM_CACHE[key] = ph
    return ph
_GATES_1Q = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "H": np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex),
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
    "T": np.array([[1, 0], [0, np.exp(1j * np.pi / 4)]], dtype=complex),
}


def rotation_matrix(axis: str, theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    if axis == "RX":
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
    if axis == "RY":
        return np.array([[c, -s], [s, c]], dtype=complex)
    if axis == "RZ":
        return np.array([[np.exp(-0.5j * theta), 0], [0, np.exp(0.5j * theta)]], dtype=complex)
    raise ValueError(f"unknown rotation axis {axis}")


class PureState:
    """Normalized amplitude vector over 2^n basis states."""

    __slots__ = ("n", "amps")

    def __init__(self, n: int, qubit_cap: int = DEFAULT_QUBIT_CAP) -> None:
        if n < 1:
            raise ValueError(f"qubit count must be >= 1, got {n}")
        if n > qubit_cap:
            raise ResourceLimitError(
                f"statevector with n={n} exceeds the {qubit_cap}-qubit cap"
            )
        self.n = n
        self.amps = np.zeros(1 << n, dtype=complex)
        self.amps[0] = 1.0

    # -- gate application --------------------------------------------------

    def _apply_1q(self, m: np.ndarray, q: int) -> None:
        view = self.amps.reshape(-1, 2, 1 << q)
        a0 = view[:, 0, :]
        a1 = view[:, 1, :]
        b0 = m[0, 0] * a0 + m[0, 1] * a1
        b1 = m[1, 0] * a0 + m[1, 1] * a1
        view[:, 0, :] = b0
        view[:, 1, :] = b1

    def _apply_2q(self, m: np.ndarray, qa: int, qb: int) -> None:
        # Matrix basis index is 2*v_a + v_b for qubits (qa, qb).
        hi, lo = (qa, qb) if qa > qb else (qb, qa)
        view = self.amps.reshape(-1, 2, 1 << (hi - lo - 1), 2, 1 << lo)
        blocks = {}
        for vhi in (0, 1):
            for vlo in (0, 1):
                key = (vhi, vlo) if qa == hi else (vlo, vhi)
                blocks[key] = view[:, vhi, :, vlo, :]
        new = {}
        for va in (0, 1):
            for vb in (0, 1):
                acc = None
                for wa in (0, 1):
                    for wb in (0, 1):
                        term = m[2 * va + vb, 2 * wa + wb] * blocks[(wa, wb)]
                        acc = term if acc is None else acc + term
                new[(va, vb)] = acc
        for vhi in (0, 1):
            for vlo in (0, 1):
                key = (vhi, vlo) if qa == hi else (vlo, vhi)
                view[:, vhi, :, vlo, :] = new[key]

    def _cnot(self, c: int, t: int) -> None:
        hi, lo = (c, t) if c > t else (t, c)
        view = self.amps.reshape(-1, 2, 1 << (hi - lo - 1), 2, 1 << lo)
        if c == hi:
            tmp = view[:, 1, :, 0, :].copy()
            view[:, 1, :, 0, :] = view[:, 1, :, 1, :]
            view[:, 1, :, 1, :] = tmp
        else:
            tmp = view[:, 0, :, 1, :].copy()
            view[:, 0, :, 1, :] = view[:, 1, :, 1, :]
            view[:, 1, :, 1, :] = tmp

    def apply(self, op) -> None:
        """Apply a GateOp (any supported 1q/2q unitary)."""
        kind = op.kind
        if kind == "CNOT":
            c, t = op.qubits
            if self.n <= _PERM_CACHE_MAX_N:
                self.amps = self.amps.take(_cnot_perm(self.n, c, t))
            else:
                self._cnot(c, t)
        elif kind in ("I", "X", "Y", "Z", "S", "T"):
            # permutation/diagonal one-qubit gates: cheaper than the kernel
            if kind == "I":
                return
            q = op.qubits[0]
            if kind == "X" and self.n <= _PERM_CACHE_MAX_N:
                self.amps = self.amps.take(_flip_perm(self.n, q))
                return
            if kind == "Y" and self.n <= _PERM_CACHE_MAX_N:
                self.amps = self.amps.take(_flip_perm(self.n, q)) * _y_phase(self.n, q)
                return
            view = self.amps.reshape(-1, 2, 1 << q)
            if kind == "X":
                tmp = view[:, 0, :].copy()
                view[:, 0, :] = view[:, 1, :]
                view[:, 1, :] = tmp
            elif kind == "Y":
                tmp = view[:, 0, :].copy()
                view[:, 0, :] = -1j * view[:, 1, :]
                view[:, 1, :] = 1j * tmp
            elif kind == "Z":
                view[:, 1, :] *= -1.0
            elif kind == "S":
                view[:, 1, :] *= 1j
            else:  # T
                view[:, 1, :] *= _T_PHASE
        elif kind == "CLIFFORD2":
            m = op.matrix
            if m is None or m.shape != (4, 4):
                raise InvalidGateError("CLIFFORD2 op carries no 4x4 matrix")
            dev = np.abs(m @ m.conj().T - np.eye(4)).max()
            if dev > 1e-8:
                raise InvalidGateError(f"gate matrix is not unitary (deviation {dev:.2e})")
            self._apply_2q(m, op.qubits[0], op.qubits[1])
        elif kind in _GATES_1Q:
            self._apply_1q(_GATES_1Q[kind], op.qubits[0])
        elif kind in ("RX", "RY", "RZ"):
            self._apply_1q(rotation_matrix(kind, op.angle), op.qubits[0])
        else:
            raise InvalidGateError(f"unknown gate kind {kind}")

    # -- measurement ---------------------------------------------------------

    def measure_z(self, q: int, rng) -> int:
        """Born-rule Z measurement; consumes exactly one uniform double.

        Outcome is 0 iff the draw is below p0 = P(bit q = 0); the surviving
        branch is renormalized.
        """
        view = self.amps.reshape(-1, 2, 1 << q)
        probs = np.abs(view) ** 2
        p0 = float(probs[:, 0, :].sum())
        p1 = float(probs[:, 1, :].sum())
        if p0 < 1e-12 and p1 < 1e-12:
            raise NumericalStateError("state norm collapsed below 1e-12 in both branches")
        outcome = 0 if rng.random() < p0 else 1
        p_keep = p0 if outcome == 0 else p1
        if p_keep < 1e-12:
            raise NumericalStateError(
                f"measurement selected a branch with probability {p_keep:.3e}"
            )
        view[:, 1 - outcome, :] = 0.0
        self.amps /= math.sqrt(p_keep)
        return outcome

    # -- subsystem observables ------------------------------------------------

    def _gather(self, subset: tuple[int, ...]) -> np.ndarray:
        """Amplitudes as a 2^k x 2^(n-k) matrix, subset bits indexing rows."""
        n = self.n
        rest = [q for q in range(n) if q not in subset]
        # ndarray axis of qubit q is n-1-q; order each group MSB-first.
        axes = [n - 1 - q for q in sorted(subset, reverse=True)]
        axes += [n - 1 - q for q in sorted(rest, reverse=True)]
        arr = self.amps.reshape((2,) * n).transpose(axes)
        return arr.reshape(1 << len(subset), -1)

    def _gram(self, subset: tuple[int, ...]) -> np.ndarray:
        # Work on the smaller side; purity is complement-symmetric.
        if len(subset) > self.n - len(subset):
            subset = tuple(q for q in range(self.n) if q not in subset)
        m = self._gather(subset)
        return m @ m.conj().T

    def purity(self, subset) -> float:
        """Tr rho_A^2 for the qubit subset A."""
        subset = normalize_subset(subset, self.n)
        if len(subset) == self.n:
            return 1.0
        g = self._gram(subset)
        return float(np.real(np.vdot(g, g)))

    def renyi_entropy(self, subset, order: int = 2) -> float:
        """Renyi entropy in bits; order 2 or 4."""
        subset = normalize_subset(subset, self.n)
        if len(subset) == self.n:
            return 0.0
        g = self._gram(subset)
        if order == 2:
            return float(-np.log2(np.real(np.vdot(g, g))))
        if order == 4:
            g2 = g @ g
            tr4 = float(np.real(np.vdot(g2, g2)))
            return float(-np.log2(tr4) / 3.0)
        raise ValueError(f"order must be 2 or 4, got {order}")

    def renyi2_entropy(self, subset) -> float:
        return self.renyi_entropy(subset, 2)

    def spin_z(self, subset) -> float:
        """Sum over the subset of <sigma_z>, with <sigma_z> = +1 on |0>."""
        subset = normalize_subset(subset, self.n)
        probs = np.abs(self.amps) ** 2
        total = 0.0
        for q in subset:
            p1 = float(probs.reshape(-1, 2, 1 << q)[:, 1, :].sum())
            total += 1.0 - 2.0 * p1
        return total

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))


def reduced_density(state: PureState, subset) -> np.ndarray:
    """Explicit reduced density matrix of a subset (test oracle; k <= 12)."""
    subset = normalize_subset(subset, state.n)
    if len(subset) > 12:
        raise ResourceLimitError("reduced density capped at 12 qubits")
    if len(subset) == state.n:
        return np.outer(state.amps, state.amps.conj())
    m = state._gather(subset)
    return m @ m.conj().T


def check_density(rho: np.ndarray, atol: float = 1e-9) -> None:
    """Validate trace-1, Hermiticity and positive semidefiniteness."""
    if abs(np.trace(rho).real - 1.0) > atol or abs(np.trace(rho).imag) > atol:
        raise InvalidSubsetError("density matrix trace deviates from 1")
    if np.abs(rho - rho.conj().T).max() > atol:
        raise InvalidSubsetError("density matrix is not Hermitian")
    if np.linalg.eigvalsh(rho).min() < -atol:
        raise InvalidSubsetError("density matrix has negative eigenvalues")
