"""Multilinear form of an n-qubit amplitude tensor and hyperdeterminant witnesses.

The hyperdeterminant of a state's 2x2x...x2 amplitude tensor T vanishes
whenever the multilinear form f(x) = sum T_{i1..in} x^(1)_{i1} ... x^(n)_{in}
and all 2n of its partial derivatives vanish at some nontrivial witness (no
x^(i) equal to the zero vector).  This module evaluates f and its partials
exactly, builds the constructive witnesses for W and GHZ states, computes the
closed-form hyperdeterminant for n = 2 and 3, and runs a seeded numerical
search for vanishing witnesses of arbitrary small states.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from .statevec import StateVector

VANISH_TOL = 1e-10


@dataclass(frozen=True)
class MultilinearWitness:
    """The n complex 2-vectors x^(i) at which f and its partials are evaluated."""

    n: int
    vectors: tuple

    def __post_init__(self):
        vectors = tuple(np.asarray(v, dtype=complex).reshape(2) for v in self.vectors)
        if len(vectors) != self.n:
            raise ValueError(f"expected {self.n} vectors, got {len(vectors)}")
        if any(np.all(v == 0) for v in vectors):
            raise ValueError("witness vectors must all be nonzero (nontriviality)")
        for v in vectors:
            v.setflags(write=False)
        object.__setattr__(self, "vectors", vectors)


@dataclass(frozen=True)
class WitnessReport:
    """f and the largest partial at a witness; vanishes iff both are < tol."""

    f_value: complex
    max_partial: float
    vanishes: bool
    tol: float = VANISH_TOL


def multilinear_form(state: StateVector, witness: MultilinearWitness) -> complex:
    """Exact contraction of the amplitude tensor with all witness vectors."""
    if witness.n != state.num_qubits:
        raise ValueError("witness size does not match the state")
    acc = state.tensor_view()
    for v in witness.vectors:
        acc = np.tensordot(acc, v, axes=(0, 0))
    return complex(acc)


def partials(state: StateVector, witness: MultilinearWitness) -> np.ndarray:
    """All 2n partial derivatives df/dx^(k)_s, shape (n, 2).

    Each partial is the (n-1)-fold contraction leaving slot k open: f is
    multilinear, so no symbolic differentiation is needed.
    """
    n = state.num_qubits
    if witness.n != n:
        raise ValueError("witness size does not match the state")
    out = np.empty((n, 2), dtype=complex)
    for k in range(n):
        acc = state.tensor_view()
        for j in range(n):
            if j == k:
                continue
            # slot k stays in front once earlier axes are contracted away
            axis = 1 if j > k else 0
            acc = np.tensordot(acc, witness.vectors[j], axes=(axis, 0))
        out[k] = acc
    return out


def witness_report(state: StateVector, witness: MultilinearWitness,
                   tol: float = VANISH_TOL) -> WitnessReport:
    f = multilinear_form(state, witness)
    max_partial = float(np.max(np.abs(partials(state, witness))))
    return WitnessReport(f, max_partial,
                         vanishes=abs(f) < tol and max_partial < tol, tol=tol)


def w_state_witness(n: int) -> MultilinearWitness:
    """Vanishing witness for |W_n>: x^(1)_0 = x^(2)_0 = x^(3)_0 = 0.

    Killing three distinct 0-components silences every partial of the W
    form; the free entries are set to 1.  Needs n >= 3.
    """
    if n < 3:
        raise ValueError("the W witness construction needs n >= 3")
    vectors = [np.ones(2, dtype=complex) for _ in range(n)]
    for i in range(3):
        vectors[i][0] = 0.0
    return MultilinearWitness(n, tuple(vectors))


def ghz_state_witness(n: int) -> MultilinearWitness:
    """Vanishing witness for |GHZ_n>: x^(1)_0 = x^(2)_0 = x^(3)_1 = x^(4)_1 = 0.

    Two zeros in each branch of the GHZ form; impossible without a zero
    vector when n = 3, hence n >= 4.  Free entries are set to 1.  By SLOCC
    equivalence the same conclusion covers the n-coupled states.
    """
    if n < 4:
        raise ValueError("the GHZ witness construction needs n >= 4")
    vectors = [np.ones(2, dtype=complex) for _ in range(n)]
    vectors[0][0] = vectors[1][0] = 0.0
    vectors[2][1] = vectors[3][1] = 0.0
    return MultilinearWitness(n, tuple(vectors))


def exact_hyperdeterminant(state: StateVector) -> complex:
    """Closed-form hyperdeterminant for n = 2 (determinant) or n = 3 (Cayley).

    The 2x2x2 polynomial is Cayley's, with all 12 monomials:
    the four squared pair products, minus twice the six mixed pair products,
    plus four times the two diagonal quadruples.  Degree-24 n = 4 and beyond
    are out of scope.
    """
    n = state.num_qubits
    if n == 2:
        t = state.amplitudes.reshape(2, 2)
        return complex(t[0, 0] * t[1, 1] - t[0, 1] * t[1, 0])
    if n == 3:
        t = state.tensor_view()
        t000, t001, t010, t011 = t[0, 0, 0], t[0, 0, 1], t[0, 1, 0], t[0, 1, 1]
        t100, t101, t110, t111 = t[1, 0, 0], t[1, 0, 1], t[1, 1, 0], t[1, 1, 1]
        squares = (t000 * t000 * t111 * t111 + t001 * t001 * t110 * t110
                   + t010 * t010 * t101 * t101 + t100 * t100 * t011 * t011)
        pairs = (t000 * t001 * t110 * t111 + t000 * t010 * t101 * t111
                 + t000 * t100 * t011 * t111 + t001 * t010 * t101 * t110
                 + t001 * t100 * t011 * t110 + t010 * t100 * t011 * t101)
        quads = t000 * t011 * t101 * t110 + t001 * t010 * t100 * t111
        return complex(squares - 2 * pairs + 4 * quads)
    raise ValueError(f"exact hyperdeterminant is only available for n in (2, 3), got n={n}")


# ---------------------------------------------------------------------------
# numerical witness search

def _decode_params(params: np.ndarray, n: int) -> list:
    v = params.reshape(n, 4)
    return [np.array([v[i, 0] + 1j * v[i, 1], v[i, 2] + 1j * v[i, 3]])
            for i in range(n)]


def _residuals(params: np.ndarray, tensor: np.ndarray, n: int) -> np.ndarray:
    vectors = _decode_params(params, n)
    acc = tensor
    for v in vectors:
        acc = np.tensordot(acc, v, axes=(0, 0))
    f = complex(acc)
    res = [f.real, f.imag]
    for k in range(n):
        acc = tensor
        for j in range(n):
            if j == k:
                continue
            acc = np.tensordot(acc, vectors[j], axes=(1 if j > k else 0, 0))
        res.extend([acc[0].real, acc[0].imag, acc[1].real, acc[1].imag])
    # unit-norm residuals keep every vector away from the trivial zero
    res.extend(float(np.vdot(v, v).real) - 1.0 for v in vectors)
    return np.asarray(res)


def random_witness_search(state: StateVector, trials: int = 20,
                          seed: int = 0, tol: float = VANISH_TOL):
    """Seeded random-restart least-squares hunt for a vanishing witness.

    Returns the WitnessReport of the first trial whose residuals vanish
    below tol, or None when no trial succeeds.  Failure to find a witness is
    NOT a proof that the hyperdeterminant is nonzero.  Deterministic for a
    fixed (state, trials, seed).
    """
    n = state.num_qubits
    if n > 8:
        raise ValueError("witness search is capped at n <= 8")
    if trials < 1:
        raise ValueError("trials must be positive")
    tensor = state.tensor_view()
    rng = np.random.default_rng(seed)
    best = None
    for _ in range(trials):
        start = rng.standard_normal(4 * n)
        fit = least_squares(_residuals, start, args=(tensor, n),
                            method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15)
        vectors = _decode_params(fit.x, n)
        if any(np.linalg.norm(v) < 1e-6 for v in vectors):
            continue
        report = witness_report(StateVector(n, state.amplitudes),
                                MultilinearWitness(n, tuple(vectors)), tol)
        if report.vanishes:
            return report
        score = max(abs(report.f_value), report.max_partial)
        if best is None or score < best[0]:
            best = (score, report)
    return None
