"""Complementing with a priori knowledge: real-amplitude input states.

For states with real amplitudes the complement map is the proper rotation
((0, 1), (-1, 0)) and therefore a perfect gate exists, while
measurement-based estimation stays strictly below fidelity 1 for any
finite number of inputs. This module quantifies that gap.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from math import comb, sqrt

from .errors import ValidationError
from .qubit import NORM_ATOL


@dataclass(frozen=True)
class RealQubit:
    """Pure qubit with real amplitudes (the Bloch great circle y = 0)."""

    alpha: float
    beta: float

    def __post_init__(self):
        for name in ("alpha", "beta"):
            v = getattr(self, name)
            if isinstance(v, complex) or not isinstance(v, numbers.Real):
                raise ValidationError(f"{name} must be a real number, got {v!r}")
        norm2 = self.alpha**2 + self.beta**2
        if abs(norm2 - 1.0) > NORM_ATOL:
            raise ValidationError(f"amplitudes not normalized: a^2 + b^2 = {norm2!r}")
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))


def perfect_real_not(psi: RealQubit) -> RealQubit:
    """Exact complement of a real-amplitude state: (a, b) -> (b, -a).

    Unitary (a pi rotation about the y axis), and identical to the ideal
    anti-unitary complement on every real input.
    """
    return RealQubit(psi.beta, -psi.alpha)


def real_estimation_fidelity(n_inputs: int) -> float:
    """Mean fidelity of optimal estimation over the real-amplitude family.

    1/2 + 2^-(N+1) * sum_j sqrt(C(N, j) C(N, j+1)); increases with N and
    reaches 1 only in the limit.
    """
    if n_inputs < 1:
        raise ValidationError("n_inputs must be >= 1")
    n = n_inputs
    acc = sum(sqrt(comb(n, j)) * sqrt(comb(n, j + 1)) for j in range(n))
    return 0.5 + acc / 2 ** (n + 1)


@dataclass(frozen=True)
class GapReport:
    n_inputs: int
    quantum: float
    classical: float
    gap: float


def gap_report(n_inputs: int) -> GapReport:
    """Quantum-over-classical advantage for real-amplitude complementing."""
    classical = real_estimation_fidelity(n_inputs)
    return GapReport(n_inputs=n_inputs, quantum=1.0, classical=classical, gap=1.0 - classical)
