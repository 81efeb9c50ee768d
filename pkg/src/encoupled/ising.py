"""Classical Ising couplings extracted from computational measurement statistics.

A k-point coupling among spins is read off a joint distribution as an
alternating log-odds ratio over the 2^k patterns of those spins, with every
other spin conditioned to 0.  Natural logarithms throughout; rescale by
1/ln(b) for base b.  Spins are bits {0, 1}, not {-1, +1}.

The converse direction builds the exponentially-suppressed-interaction
Boltzmann distribution whose top n-point coupling is I and whose k-point
couplings are (-1)^(n-k) I / 2^(n-k) for every subset of k spins: the
exponent is -sum over all nonempty subsets A of J_A * prod_{i in A} s_i,
matching the sign convention of the two-spin prototype
P(a, b) = Z^-1 exp(-J ab).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .statevec import MeasurementDistribution

DEFAULT_FLOOR = 1e-12
MAX_SAFE_COUPLING = 500.0


@dataclass(frozen=True)
class CouplingQuery:
    """Which spins to probe, with all remaining spins conditioned to 0."""

    variables: tuple
    regulariser_eps: float = DEFAULT_FLOOR

    def __post_init__(self):
        variables = tuple(int(v) for v in self.variables)
        if not variables:
            raise ValueError("a coupling query needs at least one variable")
        if len(set(variables)) != len(variables):
            raise ValueError("query variables must be distinct")
        if any(v < 1 for v in variables):
            raise ValueError("spin indices are 1-based")
        if self.regulariser_eps <= 0:
            raise ValueError("the probability floor must be positive")
        object.__setattr__(self, "variables", variables)


@dataclass(frozen=True)
class SuppressedIsingModel:
    """n spins with top n-point coupling I (natural-log scale)."""

    n: int
    top_coupling: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be a positive integer")

    def order_coupling(self, k: int) -> float:
        """Coupling carried by every subset of k spins: (-1)^(n-k) I / 2^(n-k)."""
        return (-1) ** (self.n - k) * self.top_coupling / 2.0 ** (self.n - k)


def alternating_log_odds(probabilities: np.ndarray, num_bits: int,
                         variables, eps: float) -> float:
    """-sum over patterns of (-1)^(k - bitsum) log p(pattern, rest = 0).

    Raw-array core of coupling(); probabilities need not be normalized
    because the alternating signs cancel any common factor.
    """
    variables = tuple(variables)
    k = len(variables)
    if any(v > num_bits for v in variables):
        raise ValueError(f"variables {variables} out of range for {num_bits} bits")
    total = 0.0
    floored = 0
    for bits in itertools.product((0, 1), repeat=k):
        index = 0
        for v, b in zip(variables, bits):
            index |= b << (num_bits - v)
        p = float(probabilities[index])
        if p < eps:
            p = eps
            floored += 1
        total += (-1) ** (k - sum(bits)) * math.log(p)
    if floored == 1 << k:
        raise ValueError("coupling undefined: every queried probability sits "
                         "at the regulariser floor")
    return -total


def coupling(dist: MeasurementDistribution, query: CouplingQuery) -> float:
    """k-point coupling of the queried spins, conditioning the rest to 0."""
    if any(v > dist.num_bits for v in query.variables):
        raise ValueError("query variables exceed the distribution's bit count")
    return alternating_log_odds(dist.probabilities, dist.num_bits,
                                query.variables, query.regulariser_eps)


def suppressed_distribution(model: SuppressedIsingModel) -> MeasurementDistribution:
    """Boltzmann distribution of the suppressed-interaction model.

    The normalisation is computed by exact summation over all 2^n states
    (log-sum-exp, so no intermediate overflow); |I| beyond 500 is rejected
    as outside the documented safe range.
    """
    if abs(model.top_coupling) > MAX_SAFE_COUPLING:
        raise OverflowError(f"|top_coupling| must be <= {MAX_SAFE_COUPLING}")
    n = model.n
    per_order = [model.order_coupling(k) for k in range(1, n + 1)]
    log_weights = np.empty(1 << n)
    for s in range(1 << n):
        ones = bin(s).count("1")
        energy = sum(per_order[k - 1] * math.comb(ones, k)
                     for k in range(1, min(ones, n) + 1))
        log_weights[s] = -energy
    log_weights -= log_weights.max()
    weights = np.exp(log_weights)
    return MeasurementDistribution(n, weights / weights.sum())


def roundtrip_check(n: int, top_coupling: float) -> float:
    """|recovered - I| after building the model and re-extracting its top coupling."""
    if n > 10:
        raise ValueError("round trips are capped at n <= 10")
    dist = suppressed_distribution(SuppressedIsingModel(n, top_coupling))
    recovered = coupling(dist, CouplingQuery(tuple(range(1, n + 1))))
    return abs(recovered - top_coupling)
