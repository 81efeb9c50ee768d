"""Parity-superposition (n-coupled) states and their entanglement diagnostics.

The even/odd n-coupled state is the equal-amplitude superposition over all
n-bit strings of even/odd bit-sum.  This module builds the states three
independent ways (direct enumeration, Clifford preparation circuit, local
Pauli words), generates the full orthonormal basis, and computes Schmidt
structure, connectedness, the bond-dimension-2 matrix-product form,
Q-information, and computational-basis persistency.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass

import numpy as np

from . import statevec as sv
from .pauli import PauliString
from .statevec import (DensityMatrix, GateOp, StateVector, apply_circuit,
                       cnot, hadamard, pauli_x)

# The parity sets as regular languages: even = strings of 1-pairs separated
# by 0-runs, odd = the same followed by one extra 1.
EVEN_LANGUAGE = re.compile(r"0*(10*10*)*")
ODD_LANGUAGE = re.compile(r"0*(10*10*)*10*")

PERSISTENCY_MAX_QUBITS = 8


def _parity_bit(parity: str) -> int:
    if parity not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    return 0 if parity == "even" else 1


@dataclass(frozen=True)
class ParitySet:
    """All n-bit strings of fixed bit-sum parity; exactly 2^(n-1) of them."""

    n: int
    parity: str
    members: tuple

    def __post_init__(self):
        if len(self.members) != 1 << (self.n - 1):
            raise ValueError("a parity set on n bits has exactly 2^(n-1) members")
        lang = EVEN_LANGUAGE if self.parity == "even" else ODD_LANGUAGE
        bit = _parity_bit(self.parity)
        for m in self.members:
            if len(m) != self.n or m.count("1") % 2 != bit:
                raise ValueError(f"{m!r} is not an {self.parity} string of length {self.n}")
            if not lang.fullmatch(m):
                raise ValueError(f"{m!r} escapes the {self.parity} parity language")


@dataclass(frozen=True)
class SchmidtDecomposition:
    """Bi-orthogonal expansion across the cut (first m qubits | rest)."""

    cut: tuple
    coefficients: tuple
    left_factors: tuple
    right_factors: tuple

    @property
    def rank(self) -> int:
        return len(self.coefficients)

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coefficients)
        if any(c <= 0 for c in coeffs):
            raise ValueError("Schmidt coefficients must be positive")
        if any(coeffs[i] < coeffs[i + 1] - 1e-12 for i in range(len(coeffs) - 1)):
            raise ValueError("Schmidt coefficients must be sorted descending")
        if abs(sum(c * c for c in coeffs) - 1.0) > 1e-9:
            raise ValueError("squared Schmidt coefficients must sum to 1")
        object.__setattr__(self, "coefficients", coeffs)


@dataclass(frozen=True)
class BasisLabel:
    """Links basis member psi_n^index to the local Pauli word generating it.

    The word acts on the first n-1 qubits only; ``global_phase`` is the
    modulus-1 scalar with  word |psi_n^1>  =  global_phase * |psi_n^index>.
    """

    index: int
    pauli_word: PauliString
    global_phase: complex

    def __post_init__(self):
        n = self.pauli_word.n
        if not self.pauli_word.is_identity_on([n]):
            raise ValueError("basis words must act as identity on the last qubit")
        if abs(abs(self.global_phase) - 1.0) > 1e-9:
            raise ValueError("global_phase must have modulus 1")


# ---------------------------------------------------------------------------
# construction

def uniform_amplitude(n: int) -> float:
    """Magnitude sqrt(2)/2^(n/2) shared by every nonzero amplitude.

    Single shared expression so that independently computed amplitudes
    (direct construction, matrix-product trace) agree bit for bit.
    """
    return math.sqrt(2.0) / 2.0 ** (n / 2)


def parity_set(n: int, parity: str) -> ParitySet:
    """Exact enumeration of the n-bit strings with the given bit-sum parity."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    bit = _parity_bit(parity)
    members = tuple(format(s, f"0{n}b") for s in range(1 << n)
                    if bin(s).count("1") % 2 == bit)
    return ParitySet(n, parity, members)


def ncoupled_state(n: int, parity: str) -> StateVector:
    """Equal superposition over the parity set, all phases +1."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    bit = _parity_bit(parity)
    amps = np.zeros(1 << n, dtype=complex)
    c = uniform_amplitude(n)
    for s in range(1 << n):
        if bin(s).count("1") % 2 == bit:
            amps[s] = c
    return StateVector(n, amps)


def preparation_circuit(n: int, parity: str) -> list:
    """Clifford circuit taking |0...0> to the n-coupled state.

    Hadamards on qubits 2..n followed by the CNOT chain with control j+1 and
    target j for j = 1..n-1; the odd state appends a single X (on qubit 1,
    though any qubit works).  2n-2 gates for even parity, 2n-1 for odd.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    gates: list[GateOp] = [hadamard(q) for q in range(2, n + 1)]
    gates += [cnot(j + 1, j) for j in range(1, n)]
    if _parity_bit(parity):
        gates.append(pauli_x(1))
    return gates


def ncoupled_basis(n: int) -> list:
    """The 2^n orthonormal states U|s>, ordered by s (psi_n^k has k = s+1)."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    circuit = preparation_circuit(n, "even")
    return [apply_circuit(sv.basis_state(n, s), circuit) for s in range(1 << n)]


def local_pauli_basis(n: int) -> list:
    """Generate the full basis from psi_n^1 with X/Z words on qubits 1..n-1.

    The even sector comes from the 2^(n-1) Z-subsets of the first n-1
    qubits; the odd sector additionally applies X to qubit 1.  Each word is
    matched (phase-insensitively) against ncoupled_basis and returned as a
    BasisLabel; labels are sorted by matched basis index.
    """
    if n < 2:
        raise ValueError("local generation needs n >= 2")
    basis = ncoupled_basis(n)
    root = basis[0]
    labels = []
    for add_x in (False, True):
        for zset in itertools.chain.from_iterable(
                itertools.combinations(range(1, n), r) for r in range(n)):
            word = PauliString.z_on(n, zset)
            if add_x:
                word = PauliString.x_on(n, [1]) * word
            generated = word.apply(root)
            overlaps = [sv.inner_product(b, generated) for b in basis]
            k = int(np.argmax(np.abs(overlaps)))
            if abs(abs(overlaps[k]) - 1.0) > 1e-9:
                raise AssertionError(
                    f"word {word} does not land on a basis member at n={n}")
            labels.append(BasisLabel(k + 1, word, overlaps[k]))
    labels.sort(key=lambda lab: lab.index)
    if [lab.index for lab in labels] != list(range(1, (1 << n) + 1)):
        raise AssertionError(f"local words missed part of the basis at n={n}")
    return labels


def ghz_relation_check(n: int, tol: float = 1e-12) -> bool:
    """True iff H^(x)n |GHZ_n> equals |psi_n^+> within tol, elementwise."""
    state = sv.ghz_state(n) if n > 1 else sv.basis_state(1, 0)
    state = apply_circuit(state, [hadamard(q) for q in range(1, n + 1)])
    return bool(np.max(np.abs(state.amplitudes -
                              ncoupled_state(n, "even").amplitudes)) <= tol)


# ---------------------------------------------------------------------------
# Schmidt structure

def schmidt_decompose(state: StateVector, m: int,
                      degeneracy_tol: float = 1e-9) -> SchmidtDecomposition:
    """Schmidt decomposition across (first m qubits | remaining n-m).

    Computed by SVD of the 2^m x 2^(n-m) amplitude matrix.  Within a group
    of equal singular values the factors are rotated to diagonalize the
    compression of diag(2^-s), which makes the output deterministic and, for
    n-coupled inputs, returns the lower-order n-coupled factors.  Each left
    factor's first nonzero amplitude is made positive real.
    """
    n = state.num_qubits
    if not 0 < m < n:
        raise ValueError(f"cut m must satisfy 0 < m < n, got m={m}, n={n}")
    mat = state.amplitudes.reshape(1 << m, 1 << (n - m))
    left, sigma, right_h = np.linalg.svd(mat, full_matrices=False)
    rank = int(np.sum(sigma > 1e-12))
    left, sigma, right_h = left[:, :rank].copy(), sigma[:rank], right_h[:rank].copy()

    i = 0
    while i < rank:
        j = i
        while j + 1 < rank and sigma[i] - sigma[j + 1] < degeneracy_tol:
            j += 1
        if j > i:
            block = slice(i, j + 1)
            weights = 0.5 ** np.arange(1 << m)
            compressed = left[:, block].conj().T @ (weights[:, None] * left[:, block])
            _, rot = np.linalg.eigh(compressed)
            left[:, block] = left[:, block] @ rot
            right_h[block, :] = rot.conj().T @ right_h[block, :]
        i = j + 1

    for k in range(rank):
        nz = np.flatnonzero(np.abs(left[:, k]) > 1e-12)[0]
        phase = left[nz, k] / abs(left[nz, k])
        left[:, k] /= phase
        right_h[k, :] *= phase

    return SchmidtDecomposition(
        cut=(m, n - m),
        coefficients=tuple(float(s) for s in sigma),
        left_factors=tuple(StateVector(m, left[:, k]) for k in range(rank)),
        right_factors=tuple(StateVector(n - m, right_h[k, :]) for k in range(rank)),
    )


def check_maximally_connected(state: StateVector, tol: float = 1e-9) -> bool:
    """Whether measuring any n-2 qubits always leaves a Bell pair.

    For every qubit pair (i, j) and every computational outcome on the other
    n-2 qubits with nonzero probability, the collapsed two-qubit state must
    match a 2-coupled basis state up to a global phase.
    """
    n = state.num_qubits
    if n < 3:
        raise ValueError("connectedness check needs n >= 3")
    bell = ncoupled_basis(2)
    for pair in itertools.combinations(range(1, n + 1), 2):
        rest = [q for q in range(1, n + 1) if q not in pair]
        for outcome in itertools.product((0, 1), repeat=n - 2):
            prob, remaining = sv.project_measurement(state, rest, outcome)
            if prob <= 1e-12:
                continue
            if not any(sv.equal_up_to_phase(remaining, b, tol) for b in bell):
                return False
    return True


def mps_amplitude(n: int, s: str) -> float:
    """Amplitude of |psi_n^+> at s from the bond-dimension-2 trace form.

    Evaluates sqrt(2)/2^(n/2+1) * Tr(M^{s_1} ... M^{s_n}) with M^0 = 1 and
    M^1 = X, the assignment for which the trace is 2 exactly on even-parity
    strings and 0 otherwise, for every n.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if len(s) != n or set(s) - {"0", "1"}:
        raise ValueError(f"s must be an n-bit string, got {s!r}")
    x = np.array([[0.0, 1.0], [1.0, 0.0]])
    acc = np.eye(2)
    for c in s:
        if c == "1":
            acc = acc @ x
    trace = float(np.trace(acc))
    return uniform_amplitude(n) / 2.0 * trace


# ---------------------------------------------------------------------------
# higher-order diagnostics

def q_information_of_density(rho: DensityMatrix) -> float:
    """(n-2) S(rho) + sum_i [S(rho_i) - S(rho_without_i)], in bits."""
    n = rho.num_qubits
    total = (n - 2) * sv.von_neumann_entropy(rho)
    for q in range(1, n + 1):
        kept = sv.von_neumann_entropy(sv.partial_trace(rho, [q]))
        if n == 1:
            dropped = 0.0
        else:
            dropped = sv.von_neumann_entropy(
                sv.partial_trace(rho, [p for p in range(1, n + 1) if p != q]))
        total += kept - dropped
    return total


def q_information(state: StateVector) -> float:
    """Q-information of the state after tracing out qubit 1.

    The measure vanishes on pure states, so the convention is to drop one
    qubit first; qubit 1 is chosen, which is harmless for permutation
    symmetric states.
    """
    n = state.num_qubits
    if n < 3:
        raise ValueError("q_information needs n >= 3")
    rho = sv.partial_trace(sv.density_matrix(state), range(2, n + 1))
    return q_information_of_density(rho)


def persistency_computational(state: StateVector, tol: float = 1e-9) -> int:
    """Minimum k such that measuring some k qubits always disentangles.

    Brute force over qubit subsets (smallest first) and all outcomes with
    nonzero probability; the remaining state must be a full product for
    every outcome.  Exponential, so capped at n <= 8.
    """
    n = state.num_qubits
    if n < 2:
        raise ValueError("persistency needs n >= 2")
    if n > PERSISTENCY_MAX_QUBITS:
        raise ValueError(f"persistency brute force is capped at "
                         f"n <= {PERSISTENCY_MAX_QUBITS}")
    if sv.is_product_state(state, tol):
        return 0
    for k in range(1, n):
        for subset in itertools.combinations(range(1, n + 1), k):
            for outcome in itertools.product((0, 1), repeat=k):
                prob, remaining = sv.project_measurement(state, subset, outcome)
                if prob <= 1e-12:
                    continue
                if remaining is not None and not sv.is_product_state(remaining, tol):
                    break
            else:
                return k
    return n - 1  # measuring all but one qubit always disentangles


def x_measurement_disentangles(state: StateVector, qubit: int = 1,
                               tol: float = 1e-9) -> bool:
    """True iff one X-basis measurement on ``qubit`` always leaves a product.

    This is the single-measurement disentangling property that computational
    measurements cannot reproduce on n-coupled states.
    """
    rotated = sv.apply_gate(state, hadamard(qubit))
    for outcome in (0, 1):
        prob, remaining = sv.project_measurement(rotated, [qubit], [outcome])
        if prob <= 1e-12:
            continue
        if remaining is not None and not sv.is_product_state(remaining, tol):
            return False
    return True
