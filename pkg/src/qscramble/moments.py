"""Exact low-moment structure of the multi-qubit Clifford group.

Small-system brute-force constructions of copy-permutation operators and
the Pauli fourth-power operator that extends the fourth-moment commutant
of the Clifford group beyond permutations, together with the closed-form
ensemble averages they imply:

* ``mean_purity_prediction``: Clifford average of Tr rho_AB^2,
* ``mean_sq_purity_prediction``: leading term of E[(Tr rho_AB^2)^2] after
  doping with T gates,
* ``moment_decay_prediction``: the (3/4)^n_t factor that carries the
  T-count dependence.

Everything here is exact integer/dyadic arithmetic or dense linear algebra
on matrices of dimension at most 2^12.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .errors import ResourceLimitError

_DIM_CAP = 4096

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

_T_GATE = np.array([[1, 0], [0, np.exp(1j * np.pi / 4)]], dtype=complex)

# The six coset labels extending S4: the Pauli fourth-power operator times
# a permutation of the last three copies.
S3_HAT_LABELS = ("P4", "P4*(23)", "P4*(34)", "P4*(24)", "P4*(234)", "P4*(324)")


def parse_cycles(label: str, t: int) -> tuple[int, ...]:
    """Cycle notation -> image tuple, 0-based: result[i] = pi(i+1) - 1."""
    perm = list(range(t))
    if label in ("e", "", "()"):
        return tuple(perm)
    chunk = label.strip()
    if not (chunk.startswith("(") and chunk.endswith(")")):
        raise ValueError(f"bad cycle notation {label!r}")
    for cyc in chunk[1:-1].split(")("):
        items = [int(ch) - 1 for ch in cyc]
        if any(not 0 <= i < t for i in items) or len(set(items)) != len(items):
            raise ValueError(f"bad cycle {cyc!r} for t={t}")
        for pos, i in enumerate(items):
            perm[i] = items[(pos + 1) % len(items)]
    return tuple(perm)


def s4_labels() -> list[str]:
    """Cycle-notation labels of all 24 permutations of four copies."""
    labels = []
    for img in permutations(range(4)):
        labels.append(_image_to_cycles(img))
    return labels


def _image_to_cycles(img: tuple[int, ...]) -> str:
    seen = [False] * len(img)
    parts = []
    for start in range(len(img)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        nxt = img[start]
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = img[nxt]
        if len(cyc) > 1:
            parts.append("(" + "".join(str(i + 1) for i in cyc) + ")")
    return "".join(parts) if parts else "e"


def site_permutation(img: tuple[int, ...]) -> np.ndarray:
    """Single-site operator permuting t copies: |x_pi(1)..x_pi(t)><x_1..x_t|."""
    t = len(img)
    dim = 1 << t
    mat = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        bits = [(col >> (t - 1 - i)) & 1 for i in range(t)]
        row_bits = [bits[img[i]] for i in range(t)]
        row = 0
        for b in row_bits:
            row = (row << 1) | b
        mat[row, col] = 1.0
    return mat


def pauli_power_site(t: int = 4) -> np.ndarray:
    """(1/2) * sum over P in {I,X,Y,Z} of P^{tensor t}, one site."""
    acc = np.zeros((1 << t, 1 << t), dtype=complex)
    for p in "IXYZ":
        m = _PAULI[p]
        full = m
        for _ in range(t - 1):
            full = np.kron(full, m)
        acc += full
    return acc / 2.0


def _kron_power(m: np.ndarray, n: int) -> np.ndarray:
    out = m
    for _ in range(n - 1):
        out = np.kron(out, m)
    return out


@dataclass(slots=True)
class PermutationOperator:
    """Copy-permutation (or Pauli-power-extended) operator on n sites."""

    label: str
    t: int
    n: int
    matrix: np.ndarray


def permutation_operator(label: str, t: int, n: int) -> PermutationOperator:
    """Build R_label on n sites with t copies per site.

    Plain permutation labels use cycle notation ("e", "(12)", "(12)(34)").
    For t=4 the extended labels "P4" and "P4*<cycles>" multiply the Pauli
    fourth-power operator by a permutation of the last three copies.
    """
    if t not in (2, 4):
        raise ValueError(f"copy count must be 2 or 4, got {t}")
    if (1 << (t * n)) > _DIM_CAP:
        raise ResourceLimitError(
            f"operator dimension 2^{t * n} exceeds the {_DIM_CAP} cap"
        )
    if label.startswith("P4"):
        if t != 4:
            raise ValueError("Pauli-power labels require t=4")
        rest = label[2:]
        img = parse_cycles(rest.lstrip("*") if rest else "e", t)
        site = site_permutation(img) @ pauli_power_site(4)
    else:
        site = site_permutation(parse_cycles(label, t))
    return PermutationOperator(label, t, n, _kron_power(site, n))


def permutation_trace(label: str, t: int) -> int:
    """Single-site trace of a plain permutation: 2^(number of cycles)."""
    img = parse_cycles(label, t)
    seen = [False] * t
    cycles = 0
    for start in range(t):
        if seen[start]:
            continue
        cycles += 1
        i = start
        while not seen[i]:
            seen[i] = True
            i = img[i]
    return 1 << cycles


def t_gate_overlap_matrix(n: int) -> np.ndarray:
    """Gram-like action of a single T gate on the six extended operators.

    Entry (i, j) is Tr[(R_i Pi)^dag  U (R_j Pi) U^dag] with U applying T to
    the first qubit of each of the four copies, R over the S3-hat labels
    and Pi the Pauli fourth-power operator.  Diagonal entries equal
    (2^4 - 4) * 2^(4(n-1)); off-diagonal magnitudes are bounded by
    (2^3 - 4) * 2^(3(n-1)).
    """
    if n not in (1, 2):
        raise ResourceLimitError("brute-force overlap matrix limited to n <= 2")
    ops = [permutation_operator(lbl, 4, n).matrix for lbl in S3_HAT_LABELS]
    # Four copies of n qubits, site-major layout: the first qubit of every
    # copy is the first qubit of site 1, i.e. the leading tensor factor.
    u_site = _kron_power(_T_GATE, 4)
    u = np.kron(u_site, np.eye(1 << (4 * (n - 1)))) if n > 1 else u_site
    out = np.empty((6, 6), dtype=complex)
    for j, rj in enumerate(ops):
        vj = u @ rj @ u.conj().T
        for i, ri in enumerate(ops):
            out[i, j] = np.vdot(ri, vj)
    return out


def t_gate_overlap_bounds(n: int) -> tuple[float, float]:
    """(exact diagonal value, off-diagonal magnitude bound) for n sites."""
    return (2.0**4 - 4) * 2.0 ** (4 * (n - 1)), (2.0**3 - 4) * 2.0 ** (3 * (n - 1))


# -- closed-form ensemble predictions ---------------------------------------


def mean_purity_prediction(n: int, n_ab: int) -> float:
    """Clifford average of Tr rho_AB^2 for an n_ab-qubit subset of n qubits."""
    if not 0 <= n_ab <= n:
        raise ValueError(f"subsystem size {n_ab} outside [0, {n}]")
    num = 2**n_ab * 4 ** (n - n_ab) + 2 ** (n - n_ab) * 4**n_ab
    den = 2**n * (2**n + 1)
    return num / den


def mean_sq_purity_prediction(n: int, n_t: int) -> float:
    """Leading term of E[(Tr rho_AB^2)^2] for the half-system subset after
    n_t T gates: (4 + (3/4)^n_t) / 2^n, corrections O(2^-2n)."""
    return (4.0 + moment_decay_prediction(n_t)) * 2.0 ** (-n)


def moment_decay_prediction(n_t: int) -> float:
    """(3/4)^n_t, the T-count-dependent part of the fourth moment."""
    if n_t < 0:
        raise ValueError(f"T count must be >= 0, got {n_t}")
    return 0.75**n_t


DECAY_RATE = math.log(4.0 / 3.0)  # slope of -ln of the decay factor, ~0.2877


def purity_decay_statistic(purities, n: int) -> tuple[float, float]:
    """Monte-Carlo estimate of D = 2^n E[(Tr rho^2)^2] - 4 and its stderr.

    For half-system subsets D is predicted to equal (3/4)^n_t up to
    O(2^-n) corrections.
    """
    ps = np.asarray(purities, dtype=float)
    sq = ps**2
    scale = 2.0**n
    value = scale * sq.mean() - 4.0
    stderr = scale * sq.std(ddof=1) / math.sqrt(sq.size)
    return float(value), float(stderr)
