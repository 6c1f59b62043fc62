"""Stabilizer tableau backend for Clifford circuits.

The tableau stores 2n generator rows (n destabilizers, then n stabilizers)
column-major: for each qubit there is one integer whose bit r is the X
(resp. Z) component of row r, plus one integer of sign bits.  Clifford
gates are then a handful of word-wide XOR/AND operations regardless of n,
which is what makes measurement-heavy sweeps cheap.

Row r represents the Pauli ``(-1)^sign_r * prod_q P(x_rq, z_rq)`` with
P(1,1) = Y.  Destabilizer sign bits are maintained but never read.
"""

from __future__ import annotations

from .clifford2 import clifford2_table
from .errors import InvalidSubsetError, UnsupportedGateError

_ROTATIONS = ("RX", "RY", "RZ")


def gf2_rank(rows: list[int]) -> int:
    """Rank over GF(2) of bit-vectors stored as Python ints."""
    rank = 0
    pivots: list[int] = []
    for row in rows:
        for p in pivots:
            row = min(row, row ^ p)
        if row:
            pivots.append(row)
            rank += 1
    return rank


def normalize_subset(indices, n: int) -> tuple[int, ...]:
    """Validate a qubit subset: non-empty, unique, each index < n."""
    subset = tuple(int(q) for q in indices)
    if not subset:
        raise InvalidSubsetError("qubit subset must be non-empty")
    if len(set(subset)) != len(subset):
        raise InvalidSubsetError(f"duplicate qubit indices in {subset}")
    for q in subset:
        if not 0 <= q < n:
            raise InvalidSubsetError(f"qubit index {q} out of range for n={n}")
    return tuple(sorted(subset))


def _prefix_parity(x: int) -> int:
    """Bit t of the result = parity of bits 0..t of x (x below 2**64)."""
    x ^= x << 1
    x ^= x << 2
    x ^= x << 4
    x ^= x << 8
    x ^= x << 16
    x ^= x << 32
    return x


class StabilizerTableau:
    """N-qubit stabilizer state in |0...0> with CHP-style updates."""

    __slots__ = ("n", "xc", "zc", "signs", "_all_rows", "_stab_mask")

    def __init__(self, n: int) -> None:
        if n < 1:
            raise ValueError(f"qubit count must be >= 1, got {n}")
        self.n = n
        self.xc = [1 << q for q in range(n)]
        self.zc = [1 << (n + q) for q in range(n)]
        self.signs = 0
        self._all_rows = (1 << (2 * n)) - 1
        self._stab_mask = self._all_rows ^ ((1 << n) - 1)

    # -- elementary gates ------------------------------------------------

    def h(self, q: int) -> None:
        x, z = self.xc[q], self.zc[q]
        self.signs ^= x & z
        self.xc[q], self.zc[q] = z, x

    def s(self, q: int) -> None:
        x = self.xc[q]
        self.signs ^= x & self.zc[q]
        self.zc[q] ^= x

    def x(self, q: int) -> None:
        self.signs ^= self.zc[q]

    def y(self, q: int) -> None:
        self.signs ^= self.xc[q] ^ self.zc[q]

    def z(self, q: int) -> None:
        self.signs ^= self.xc[q]

    def cnot(self, c: int, t: int) -> None:
        xc, zc = self.xc, self.zc
        self.signs ^= xc[c] & zc[t] & ~(xc[t] ^ zc[c])
        xc[t] ^= xc[c]
        zc[c] ^= zc[t]

    def clifford2(self, index: int, a: int, b: int) -> None:
        """Apply a two-qubit Clifford from the canonical table."""
        plane_terms, monomials = clifford2_table().plane_maps(index)
        xc, zc = self.xc, self.zc
        planes = (xc[a], zc[a], xc[b], zc[b])
        flip = 0
        for mono in monomials:
            term = self._all_rows
            for j in mono:
                term &= planes[j]
            flip ^= term
        self.signs ^= flip
        out = []
        for terms in plane_terms:
            v = 0
            for j in terms:
                v ^= planes[j]
            out.append(v)
        xc[a], zc[a], xc[b], zc[b] = out

    # -- gate-op dispatch -------------------------------------------------

    def apply(self, op) -> None:
        """Apply a GateOp; non-Clifford gates raise UnsupportedGateError."""
        kind = op.kind
        if kind == "CNOT":
            self.cnot(op.qubits[0], op.qubits[1])
        elif kind == "CLIFFORD2":
            self.clifford2(op.clifford_index, op.qubits[0], op.qubits[1])
        elif kind == "H":
            self.h(op.qubits[0])
        elif kind == "S":
            self.s(op.qubits[0])
        elif kind == "X":
            self.x(op.qubits[0])
        elif kind == "Y":
            self.y(op.qubits[0])
        elif kind == "Z":
            self.z(op.qubits[0])
        elif kind == "I":
            pass
        elif kind in _ROTATIONS:
            if op.angle != 0.0:
                raise UnsupportedGateError(
                    f"{kind}(theta={op.angle}) is not Clifford; "
                    "only theta=0 is accepted on the tableau backend"
                )
        else:
            raise UnsupportedGateError(f"gate {kind} is not supported on the tableau backend")

    # -- measurement -------------------------------------------------------

    def measure_z(self, q: int, rng=None) -> int:
        """Projective Z measurement of qubit q.

        Random outcomes consume exactly one uniform double from ``rng``
        (outcome 1 iff u >= 1/2); deterministic outcomes consume nothing,
        so ``rng`` may be None for states where q is already collapsed.
        """
        anti = self.xc[q]
        anti_stab = anti & self._stab_mask
        if anti_stab == 0:
            return self._deterministic_outcome(q)

        n = self.n
        p = (anti_stab & -anti_stab).bit_length() - 1
        targets = anti & ~(1 << p)
        if targets:
            self._left_multiply(p, targets)

        # Move the pivot into its destabilizer slot, then pin row p to Z_q.
        d = p - n
        xc, zc = self.xc, self.zc
        clear = ~((1 << d) | (1 << p))
        for j in range(n):
            xj, zj = xc[j], zc[j]
            xc[j] = (xj & clear) | (((xj >> p) & 1) << d)
            zc[j] = (zj & clear) | (((zj >> p) & 1) << d)
        zc[q] |= 1 << p

        outcome = 0 if rng.random() < 0.5 else 1
        sp = (self.signs >> p) & 1
        self.signs &= clear
        self.signs |= (sp << d) | (outcome << p)
        return outcome

    def _left_multiply(self, p: int, targets: int) -> None:
        """Row_r <- Row_p * Row_r for every row r in the targets mask."""
        xc, zc = self.xc, self.zc
        lo = 0
        hi = 0
        for j in range(self.n):
            xj, zj = xc[j], zc[j]
            xp = (xj >> p) & 1
            zp = (zj >> p) & 1
            if xp:
                if zp:
                    plus = zj & ~xj
                    minus = xj & ~zj
                else:
                    plus = xj & zj
                    minus = zj & ~xj
                xc[j] = xj ^ targets
                if zp:
                    zc[j] = zj ^ targets
            elif zp:
                plus = xj & ~zj
                minus = xj & zj
                zc[j] = zj ^ targets
            else:
                continue
            carry = lo & plus
            lo ^= plus
            hi ^= carry
            borrow = minus & ~lo
            lo ^= minus
            hi ^= borrow
        # New sign of row r: s_r ^ s_p ^ (phase sum / 2).  The low bit of the
        # accumulator is zero for every valid (commuting) product; destabilizer
        # rows may violate that but their signs are never read.
        if (self.signs >> p) & 1:
            hi = ~hi
        self.signs ^= targets & hi

    def _deterministic_outcome(self, q: int) -> int:
        """Sign of the stabilizer-product fixing Z_q (no state change)."""
        n = self.n
        sel = self.xc[q] & ((1 << n) - 1)
        # Product over stabilizer rows {j+n : destabilizer j has X at q} of
        # Hermitian Paulis; track the i-exponent column by column.
        phase = 0  # mod 4
        pair_parity = 0
        for j in range(n):
            a = (self.xc[j] >> n) & sel
            b = (self.zc[j] >> n) & sel
            phase += (a & b).bit_count()
            pair_parity ^= (a & (_prefix_parity(b) << 1)).bit_count() & 1
        phase = (phase + 2 * pair_parity) & 3
        sign_parity = ((self.signs >> n) & sel).bit_count() & 1
        return ((phase >> 1) ^ sign_parity) & 1

    # -- observables -------------------------------------------------------

    def renyi2_entropy(self, subset) -> int:
        """Entanglement entropy of the subset in bits (all Renyi orders agree).

        Equals rank over GF(2) of the stabilizer generator matrix restricted
        to the subset's X and Z columns, minus the subset size.
        """
        subset = normalize_subset(subset, self.n)
        n = self.n
        mask = (1 << n) - 1
        cols = [(self.xc[q] >> n) & mask for q in subset]
        cols += [(self.zc[q] >> n) & mask for q in subset]
        return gf2_rank(cols) - len(subset)

    def renyi_entropy(self, subset, order: int = 2) -> float:
        if order not in (2, 4):
            raise ValueError(f"order must be 2 or 4, got {order}")
        return float(self.renyi2_entropy(subset))

    def purity(self, subset) -> float:
        """Tr rho_A^2 = 2**(-S_A), exact for stabilizer states."""
        return 2.0 ** (-self.renyi2_entropy(subset))

    def spin_z(self, subset) -> float:
        """Sum over the subset of <sigma_z>, each exactly -1, 0 or +1."""
        subset = normalize_subset(subset, self.n)
        total = 0.0
        for q in subset:
            if self.xc[q] & self._stab_mask:
                continue  # Z_q anticommutes with a stabilizer: <Z_q> = 0
            total += 1.0 - 2.0 * self._deterministic_outcome(q)
        return total

    # -- introspection -----------------------------------------------------

    def row_bits(self, r: int) -> tuple[int, int, int]:
        """(x bits, z bits, sign) of generator row r, rows as n-bit ints."""
        x = 0
        z = 0
        for j in range(self.n):
            x |= ((self.xc[j] >> r) & 1) << j
            z |= ((self.zc[j] >> r) & 1) << j
        return x, z, (self.signs >> r) & 1

    def stabilizer_strings(self) -> list[str]:
        """Stabilizer generators as signed Pauli strings, qubit 0 first."""
        out = []
        for r in range(self.n, 2 * self.n):
            x, z, s = self.row_bits(r)
            chars = [
                "IXZY"[((x >> q) & 1) + 2 * ((z >> q) & 1)] for q in range(self.n)
            ]
            out.append(("-" if s else "+") + "".join(chars))
        return out

    def check_invariants(self) -> None:
        """Assert commutation, independence and destabilizer pairing."""
        n = self.n
        rows = [self.row_bits(r) for r in range(2 * n)]

        def sym(r1, r2):
            (x1, z1, _), (x2, z2, _) = rows[r1], rows[r2]
            return ((x1 & z2).bit_count() + (z1 & x2).bit_count()) & 1

        for i in range(n, 2 * n):
            for j in range(i + 1, 2 * n):
                assert sym(i, j) == 0, f"stabilizers {i},{j} anticommute"
        for i in range(n):
            for j in range(n):
                expect = 1 if i == j else 0
                assert sym(i, n + j) == expect, f"destabilizer pairing broken at {i},{j}"
        stab_vecs = [x | (z << n) for (x, z, _) in rows[n:]]
        assert gf2_rank(stab_vecs) == n, "stabilizer generators not independent"
