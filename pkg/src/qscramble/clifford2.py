"""Exhaustive table of the two-qubit Clifford group.

Modulo global phase the group has 11520 elements (720 symplectic images
times 16 sign patterns).  The table is built once by breadth-first search
over the generator set {H0, H1, S0, S1, CX01, CX10} and records, for every
element,

* its conjugation action on the 16 two-qubit Paulis together with the
  sign flips (Pauli bit layout ``xa za xb zb``, weights 8/4/2/1),
* a generator word realizing it (shortest word, fixed BFS order, so table
  indices are stable across runs),
* an explicit 4x4 unitary in the basis ``|q_first q_second>`` with the
  first qubit as the most significant bit.

Uniform sampling over the group is then a single table lookup.
"""

from __future__ import annotations

from collections import deque

import numpy as np

GROUP_ORDER = 11520
SYMPLECTIC_CLASSES = 720

GENERATOR_NAMES = ("H0", "H1", "S0", "S1", "CX01", "CX10")

# (kind, local qubits) realisation of each generator; local qubit 0 is the
# first qubit the element is applied to.
GENERATOR_GATES = (
    ("H", (0,)),
    ("H", (1,)),
    ("S", (0,)),
    ("S", (1,)),
    ("CNOT", (0, 1)),
    ("CNOT", (1, 0)),
)

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0)
_S = np.array([[1, 0], [0, 1j]], dtype=complex)

_PAULI_1Q = {(0, 0): _I2, (1, 0): _X, (0, 1): _Z, (1, 1): _Y}

_CX01 = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)
_CX10 = np.array(
    [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]], dtype=complex
)

GENERATOR_MATRICES = (
    np.kron(_H, _I2),
    np.kron(_I2, _H),
    np.kron(_S, _I2),
    np.kron(_I2, _S),
    _CX01,
    _CX10,
)


def pauli_matrix(code: int) -> np.ndarray:
    """Hermitian two-qubit Pauli for a 4-bit code (xa za xb zb)."""
    pa = _PAULI_1Q[((code >> 3) & 1, (code >> 2) & 1)]
    pb = _PAULI_1Q[((code >> 1) & 1, code & 1)]
    return np.kron(pa, pb)


def _generator_action(matrix: np.ndarray) -> tuple[tuple[int, ...], int]:
    """Conjugation action of ``matrix`` on the 16 Paulis: (images, flip mask)."""
    paulis = [pauli_matrix(p) for p in range(16)]
    images = [0] * 16
    flips = 0
    for p in range(1, 16):
        conj = matrix @ paulis[p] @ matrix.conj().T
        for q in range(1, 16):
            if np.allclose(conj, paulis[q], atol=1e-9):
                images[p] = q
                break
            if np.allclose(conj, -paulis[q], atol=1e-9):
                images[p] = q
                flips |= 1 << p
                break
        else:
            raise AssertionError("Clifford conjugation left the Pauli group")
    return tuple(images), flips


class Clifford2Table:
    """Canonical enumeration of all 11520 two-qubit Clifford elements."""

    def __init__(self) -> None:
        gen_actions = [_generator_action(m) for m in GENERATOR_MATRICES]

        identity_lut = tuple(range(16))
        luts: list[tuple[int, ...]] = [identity_lut]
        flips: list[int] = [0]
        words: list[tuple[int, ...]] = [()]
        matrices: list[np.ndarray] = [np.eye(4, dtype=complex)]
        seen = {(identity_lut, 0): 0}

        queue = deque([0])
        while queue:
            idx = queue.popleft()
            lut, flip, word = luts[idx], flips[idx], words[idx]
            for g, (g_lut, g_flip) in enumerate(gen_actions):
                new_lut = tuple(g_lut[lut[p]] for p in range(16))
                new_flip = 0
                for p in range(16):
                    bit = ((flip >> p) & 1) ^ ((g_flip >> lut[p]) & 1)
                    new_flip |= bit << p
                key = (new_lut, new_flip)
                if key in seen:
                    continue
                seen[key] = len(luts)
                luts.append(new_lut)
                flips.append(new_flip)
                words.append(word + (g,))
                matrices.append(GENERATOR_MATRICES[g] @ matrices[idx])
                queue.append(len(luts) - 1)

        if len(luts) != GROUP_ORDER:
            raise AssertionError(f"expected {GROUP_ORDER} elements, got {len(luts)}")

        self.luts = np.array(luts, dtype=np.uint8)
        self.flips = np.array(
            [[(f >> p) & 1 for p in range(16)] for f in flips], dtype=np.uint8
        )
        self.words = words
        self.matrices = np.array(matrices)

        class_ids: dict[tuple[int, ...], int] = {}
        self.symplectic_class = np.empty(GROUP_ORDER, dtype=np.int32)
        for i, lut in enumerate(luts):
            self.symplectic_class[i] = class_ids.setdefault(lut, len(class_ids))
        if len(class_ids) != SYMPLECTIC_CLASSES:
            raise AssertionError("unexpected symplectic class count")

        self._plane_cache: dict[int, tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]] = {}

    def __len__(self) -> int:
        return GROUP_ORDER

    def matrix(self, index: int) -> np.ndarray:
        return self.matrices[index]

    def word(self, index: int) -> tuple[int, ...]:
        return self.words[index]

    def decomposition(self, index: int) -> list[tuple[str, tuple[int, ...]]]:
        """Elementary-gate realisation, in application order."""
        return [GENERATOR_GATES[g] for g in self.words[index]]

    def inverse_decomposition(self, index: int) -> list[tuple[str, tuple[int, ...]]]:
        """Elementary gates inverting :meth:`decomposition` (S^-1 = S S S)."""
        out: list[tuple[str, tuple[int, ...]]] = []
        for g in reversed(self.words[index]):
            kind, qubits = GENERATOR_GATES[g]
            if kind == "S":
                out.extend([(kind, qubits)] * 3)
            else:
                out.append((kind, qubits))
        return out

    def plane_maps(self, index: int):
        """Bit-plane update rule for tableau application of element ``index``.

        Returns ``(plane_terms, sign_monomials)`` where ``plane_terms[i]``
        lists the input planes (0..3 = xa, za, xb, zb) XORed into output
        plane ``i``, and each sign monomial is a tuple of input planes whose
        AND is XORed into the sign bits (the empty tuple flips every row).
        The conjugation action on Pauli bits is GF(2)-linear, so four XOR
        lists suffice; the signs need the full algebraic normal form.
        """
        cached = self._plane_cache.get(index)
        if cached is not None:
            return cached

        lut = self.luts[index]
        unit_codes = (8, 4, 2, 1)
        plane_terms = tuple(
            tuple(j for j, code in enumerate(unit_codes) if lut[code] & weight)
            for weight in unit_codes
        )

        # Moebius transform of the 16-entry flip truth table -> ANF monomials.
        coeffs = self.flips[index].copy()
        for j in range(4):
            bit = 1 << j
            for p in range(16):
                if p & bit:
                    coeffs[p] ^= coeffs[p ^ bit]
        monomials = tuple(
            tuple(j for j, code in enumerate(unit_codes) if p & code)
            for p in range(16)
            if coeffs[p]
        )

        result = (plane_terms, monomials)
        self._plane_cache[index] = result
        return result

    def sample_index(self, rng) -> int:
        """Uniform element index; consumes one uniform double from ``rng``."""
        return int(rng.random() * GROUP_ORDER)


_TABLE: Clifford2Table | None = None


def clifford2_table() -> Clifford2Table:
    """Shared table instance (built on first use)."""
    global _TABLE
    if _TABLE is None:
        _TABLE = Clifford2Table()
    return _TABLE
