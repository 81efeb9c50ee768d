"""Signed Pauli strings.

A PauliString is phase * W_1 (x) W_2 (x) ... (x) W_n with letters W in
{I, X, Y, Z} and phase in {1, -1, i, -i}.  Strings are stored with parallel
symplectic bit vectors (x-bits, z-bits) so products and commutation checks
run in O(n) without building matrices.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .statevec import StateVector, GATE_MATRICES

PHASES = (1, -1, 1j, -1j)

# single-site products: (a, b) -> (letter, phase) with a*b = phase*letter
_SITE_PRODUCT = {
    ("I", "I"): ("I", 1), ("I", "X"): ("X", 1), ("I", "Y"): ("Y", 1), ("I", "Z"): ("Z", 1),
    ("X", "I"): ("X", 1), ("X", "X"): ("I", 1), ("X", "Y"): ("Z", 1j), ("X", "Z"): ("Y", -1j),
    ("Y", "I"): ("Y", 1), ("Y", "X"): ("Z", -1j), ("Y", "Y"): ("I", 1), ("Y", "Z"): ("X", 1j),
    ("Z", "I"): ("Z", 1), ("Z", "X"): ("Y", 1j), ("Z", "Y"): ("X", -1j), ("Z", "Z"): ("I", 1),
}

_X_BIT = {"I": 0, "X": 1, "Y": 1, "Z": 0}
_Z_BIT = {"I": 0, "X": 0, "Y": 1, "Z": 1}


@dataclass(frozen=True)
class PauliString:
    """Signed tensor product of single-qubit Pauli letters."""

    letters: str
    phase: complex = 1

    def __post_init__(self):
        letters = "".join(self.letters).upper()
        if not letters or set(letters) - set("IXYZ"):
            raise ValueError(f"letters must be a nonempty word over IXYZ, got {letters!r}")
        phase = complex(self.phase)
        if all(abs(phase - p) > 1e-12 for p in PHASES):
            raise ValueError(f"phase must be one of +-1, +-i, got {phase}")
        phase = min(PHASES, key=lambda p: abs(phase - p))
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "phase", phase)

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls("I" * n)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str, phase: complex = 1) -> "PauliString":
        word = ["I"] * n
        word[qubit - 1] = letter
        return cls("".join(word), phase)

    @classmethod
    def z_on(cls, n: int, qubits) -> "PauliString":
        word = ["I"] * n
        for q in qubits:
            word[q - 1] = "Z"
        return cls("".join(word))

    @classmethod
    def x_on(cls, n: int, qubits) -> "PauliString":
        word = ["I"] * n
        for q in qubits:
            word[q - 1] = "X"
        return cls("".join(word))

    @property
    def n(self) -> int:
        return len(self.letters)

    @property
    def x_bits(self) -> tuple:
        return tuple(_X_BIT[c] for c in self.letters)

    @property
    def z_bits(self) -> tuple:
        return tuple(_Z_BIT[c] for c in self.letters)

    @property
    def weight(self) -> int:
        return sum(c != "I" for c in self.letters)

    def is_identity_on(self, qubits) -> bool:
        return all(self.letters[q - 1] == "I" for q in qubits)

    def is_hermitian(self) -> bool:
        return self.phase in (1, -1)

    def __mul__(self, other: "PauliString") -> "PauliString":
        if self.n != other.n:
            raise ValueError("Pauli string lengths differ")
        phase = self.phase * other.phase
        word = []
        for a, b in zip(self.letters, other.letters):
            c, p = _SITE_PRODUCT[(a, b)]
            word.append(c)
            phase *= p
        return PauliString("".join(word), phase)

    def commutes_with(self, other: "PauliString") -> bool:
        """True iff the strings commute.

        Two Pauli words anticommute exactly when an odd number of sites hold
        distinct non-identity letters; phases never matter.
        """
        if self.n != other.n:
            raise ValueError("Pauli string lengths differ")
        clashes = sum(1 for a, b in zip(self.letters, other.letters)
                      if a != "I" and b != "I" and a != b)
        return clashes % 2 == 0

    def apply(self, state: StateVector) -> StateVector:
        """phase * (W_1 (x) ... (x) W_n) |psi>, applied site by site."""
        if self.n != state.num_qubits:
            raise ValueError("Pauli string length does not match the state")
        amps = state.tensor_view()
        for q, letter in enumerate(self.letters):
            if letter == "I":
                continue
            mat = GATE_MATRICES[letter]
            amps = np.moveaxis(
                np.tensordot(mat, np.moveaxis(amps, q, 0), axes=(1, 0)), 0, q)
        return StateVector(state.num_qubits, self.phase * amps.reshape(-1))

    def to_matrix(self) -> np.ndarray:
        out = np.array([[self.phase]], dtype=complex)
        eye = np.eye(2, dtype=complex)
        for letter in self.letters:
            out = np.kron(out, eye if letter == "I" else GATE_MATRICES[letter])
        return out

    def __str__(self) -> str:
        tag = {1: "+", -1: "-", 1j: "+i", -1j: "-i"}[self.phase]
        return f"{tag}{self.letters}"
