"""Dense state-vector and density-matrix kernel.

Bit ordering convention, inherited by every other module: qubit 1 is the most
significant bit of a basis-state index, matching left-to-right ket notation,
so |s1 s2 ... sn> sits at index s1*2^(n-1) + s2*2^(n-2) + ... + sn.

All values are immutable after construction and all operations are pure
functions, so everything here is safe to share between threads.  The dense
representation is practical up to roughly n = 20 qubits for state vectors and
n = 14 for density matrices.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

NORM_TOL = 1e-12
DEFAULT_TOL = 1e-9

_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2.0)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
                 dtype=complex)

GATE_MATRICES = {"H": _H, "X": _X, "Y": _Y, "Z": _Z, "CNOT": _CNOT}


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class StateVector:
    """Normalized complex amplitude array over ``num_qubits`` qubits."""

    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError("num_qubits must be a positive integer")
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (1 << self.num_qubits,):
            raise ValueError(
                f"expected {1 << self.num_qubits} amplitudes, got {amps.shape}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state vector norm {norm!r} deviates from 1 "
                             f"by more than {NORM_TOL}")
        object.__setattr__(self, "amplitudes", _freeze(amps))

    @property
    def dim(self) -> int:
        return 1 << self.num_qubits

    def tensor_view(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per qubit (qubit 1 = axis 0)."""
        return self.amplitudes.reshape([2] * self.num_qubits)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite operator on n qubits."""

    num_qubits: int
    matrix: np.ndarray

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError("num_qubits must be a positive integer")
        mat = np.asarray(self.matrix, dtype=complex)
        dim = 1 << self.num_qubits
        if mat.shape != (dim, dim):
            raise ValueError(f"expected a {dim}x{dim} matrix, got {mat.shape}")
        if np.max(np.abs(mat - mat.conj().T)) > NORM_TOL:
            raise ValueError("density matrix is not Hermitian within 1e-12")
        if abs(np.trace(mat).real - 1.0) > NORM_TOL or abs(np.trace(mat).imag) > NORM_TOL:
            raise ValueError("density matrix trace deviates from 1 by more than 1e-12")
        if np.linalg.eigvalsh(mat).min() < -NORM_TOL:
            raise ValueError("density matrix has an eigenvalue below -1e-12")
        object.__setattr__(self, "matrix", _freeze(mat))

    @property
    def dim(self) -> int:
        return 1 << self.num_qubits


@dataclass(frozen=True)
class GateOp:
    """A unitary acting on an explicit list of (1-based) target qubits.

    ``kind`` is one of H, X, Y, Z, CNOT, or "custom" with an explicit
    matrix.  For CNOT the first target is the control.
    """

    kind: str
    targets: tuple[int, ...]
    matrix: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        targets = tuple(int(q) for q in self.targets)
        object.__setattr__(self, "targets", targets)
        if len(set(targets)) != len(targets):
            raise ValueError(f"gate targets must be distinct, got {targets}")
        if any(q < 1 for q in targets):
            raise ValueError(f"gate targets are 1-based, got {targets}")
        if self.kind in GATE_MATRICES:
            expected = 1 if self.kind != "CNOT" else 2
            if len(targets) != expected:
                raise ValueError(f"{self.kind} takes {expected} target(s)")
            mat = GATE_MATRICES[self.kind]
        elif self.kind == "custom":
            mat = np.asarray(self.matrix, dtype=complex)
            dim = 1 << len(targets)
            if mat.shape != (dim, dim):
                raise ValueError(f"custom gate on {len(targets)} qubit(s) "
                                 f"needs a {dim}x{dim} matrix")
            if np.max(np.abs(mat.conj().T @ mat - np.eye(dim))) > NORM_TOL:
                raise ValueError("custom gate matrix is not unitary within 1e-12")
        else:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        object.__setattr__(self, "matrix", _freeze(mat))

    @property
    def num_targets(self) -> int:
        return len(self.targets)


@dataclass(frozen=True)
class MeasurementDistribution:
    """Probability table over n-bit strings (index order as for states)."""

    num_bits: int
    probabilities: np.ndarray

    def __post_init__(self):
        if self.num_bits < 1:
            raise ValueError("num_bits must be a positive integer")
        probs = np.asarray(self.probabilities, dtype=float)
        if probs.shape != (1 << self.num_bits,):
            raise ValueError(
                f"expected {1 << self.num_bits} probabilities, got {probs.shape}")
        if probs.min() < 0.0:
            raise ValueError("probabilities must be nonnegative")
        if abs(probs.sum() - 1.0) > NORM_TOL:
            raise ValueError("probabilities must sum to 1 within 1e-12")
        object.__setattr__(self, "probabilities", _freeze(probs))


# ---------------------------------------------------------------------------
# constructors

def basis_state(num_qubits: int, index) -> StateVector:
    """Computational basis state; ``index`` is an int or a bit string."""
    if isinstance(index, str):
        if len(index) != num_qubits or set(index) - {"0", "1"}:
            raise ValueError(f"bad bit string {index!r} for {num_qubits} qubit(s)")
        index = int(index, 2)
    amps = np.zeros(1 << num_qubits, dtype=complex)
    amps[index] = 1.0
    return StateVector(num_qubits, amps)


def zero_state(num_qubits: int) -> StateVector:
    return basis_state(num_qubits, 0)


def ghz_state(num_qubits: int) -> StateVector:
    amps = np.zeros(1 << num_qubits, dtype=complex)
    amps[0] = amps[-1] = 1.0 / math.sqrt(2.0)
    return StateVector(num_qubits, amps)


def w_state(num_qubits: int) -> StateVector:
    if num_qubits < 2:
        raise ValueError("W state needs at least 2 qubits")
    amps = np.zeros(1 << num_qubits, dtype=complex)
    for i in range(num_qubits):
        amps[1 << i] = 1.0 / math.sqrt(num_qubits)
    return StateVector(num_qubits, amps)


def hadamard(qubit: int) -> GateOp:
    return GateOp("H", (qubit,))


def pauli_x(qubit: int) -> GateOp:
    return GateOp("X", (qubit,))


def pauli_y(qubit: int) -> GateOp:
    return GateOp("Y", (qubit,))


def pauli_z(qubit: int) -> GateOp:
    return GateOp("Z", (qubit,))


def cnot(control: int, target: int) -> GateOp:
    return GateOp("CNOT", (control, target))


def custom_gate(matrix, targets) -> GateOp:
    return GateOp("custom", tuple(targets), np.asarray(matrix, dtype=complex))


# ---------------------------------------------------------------------------
# operations

def apply_gate(state: StateVector, gate: GateOp) -> StateVector:
    """Return U|psi> for the given gate; the norm is preserved."""
    n = state.num_qubits
    if any(q > n for q in gate.targets):
        raise ValueError(f"gate targets {gate.targets} out of range for "
                         f"{n} qubit(s)")
    k = gate.num_targets
    axes = [q - 1 for q in gate.targets]
    tensor = np.moveaxis(state.tensor_view(), axes, range(k))
    mat = gate.matrix.reshape([2] * (2 * k))
    tensor = np.tensordot(mat, tensor, axes=(list(range(k, 2 * k)), list(range(k))))
    tensor = np.moveaxis(tensor, range(k), axes)
    return StateVector(n, tensor.reshape(-1))


def apply_circuit(state: StateVector, gates) -> StateVector:
    for gate in gates:
        state = apply_gate(state, gate)
    return state


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """Tensor product a (x) b; a's qubit 1 stays the most significant bit."""
    return StateVector(a.num_qubits + b.num_qubits,
                       np.kron(a.amplitudes, b.amplitudes))


def density_matrix(state: StateVector) -> DensityMatrix:
    return DensityMatrix(state.num_qubits,
                         np.outer(state.amplitudes, state.amplitudes.conj()))


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Reduced density matrix on the (1-based) ``keep`` qubits, in order."""
    keep = sorted(set(int(q) for q in keep))
    n = rho.num_qubits
    if not keep:
        raise ValueError("keep set must be nonempty")
    if keep[0] < 1 or keep[-1] > n:
        raise ValueError(f"keep qubits {keep} out of range for {n} qubit(s)")
    tensor_form = rho.matrix.reshape([2] * (2 * n))
    row = list(range(n))
    col = list(range(n, 2 * n))
    for q in range(1, n + 1):
        if q not in keep:
            col[q - 1] = row[q - 1]  # contract the traced-out axis pair
    out = [row[q - 1] for q in keep] + [col[q - 1] for q in keep]
    reduced = np.einsum(tensor_form, row + col, out)
    dim = 1 << len(keep)
    return DensityMatrix(len(keep), reduced.reshape(dim, dim))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """Entropy in bits; eigenvalues below 1e-12 are clamped to zero."""
    eigs = np.linalg.eigvalsh(rho.matrix)
    eigs = eigs[eigs > NORM_TOL]
    return float(-np.sum(eigs * np.log2(eigs)))


def measurement_distribution(state: StateVector) -> MeasurementDistribution:
    return MeasurementDistribution(state.num_qubits,
                                   np.abs(state.amplitudes) ** 2)


def inner_product(a: StateVector, b: StateVector) -> complex:
    """<a|b>; raises on mismatched qubit counts."""
    if a.num_qubits != b.num_qubits:
        raise ValueError(f"qubit counts differ: {a.num_qubits} vs {b.num_qubits}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def equal_up_to_phase(a: StateVector, b: StateVector,
                      tol: float = DEFAULT_TOL) -> bool:
    """True iff |<a|b>| = 1 within tol (global-phase-insensitive equality)."""
    return abs(abs(inner_product(a, b)) - 1.0) <= tol


def project_measurement(state: StateVector, qubits, outcome):
    """Project ``qubits`` (1-based) onto computational ``outcome`` bits.

    Returns ``(probability, remaining_state)`` where the measured qubits are
    removed; ``remaining_state`` is None when the probability is zero or when
    all qubits were measured.
    """
    qubits = tuple(int(q) for q in qubits)
    if isinstance(outcome, str):
        outcome = tuple(int(c) for c in outcome)
    outcome = tuple(int(b) for b in outcome)
    if len(qubits) != len(outcome):
        raise ValueError("one outcome bit per measured qubit is required")
    n = state.num_qubits
    sl = [slice(None)] * n
    for q, b in zip(qubits, outcome):
        sl[q - 1] = b
    sub = state.tensor_view()[tuple(sl)].reshape(-1)
    prob = float(np.sum(np.abs(sub) ** 2))
    if prob <= NORM_TOL or len(qubits) == n:
        return prob, None
    return prob, StateVector(n - len(qubits), sub / math.sqrt(prob))


def single_qubit_marginals_pure(state: StateVector) -> np.ndarray:
    """Purity Tr(rho_q^2) of every single-qubit reduction, as an array."""
    n = state.num_qubits
    out = np.empty(n)
    for q in range(n):
        m = np.moveaxis(state.tensor_view(), q, 0).reshape(2, -1)
        rho = m @ m.conj().T
        out[q] = float(np.trace(rho @ rho).real)
    return out


def is_product_state(state: StateVector, tol: float = DEFAULT_TOL) -> bool:
    """True iff the state is a full tensor product of single-qubit states."""
    if state.num_qubits == 1:
        return True
    return bool(np.all(np.abs(single_qubit_marginals_pure(state) - 1.0) <= tol))
