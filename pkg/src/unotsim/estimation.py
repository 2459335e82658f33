"""Measurement-based complementing: estimate the input, re-prepare complements.

The estimation density over pure states Phi for an N-qubit symmetric input
rho is p(Phi) = (N+1) <Phi^N| rho |Phi^N>. Re-preparing the orthogonal
state and averaging gives a single-qubit output with error exactly
1/(N+2); re-preparing M copies gives the same per-qubit output for any M.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, sqrt

import numpy as np

from .dicke import (
    SymDensity,
    dicke_to_computational,
    frame_orthogonal,
    product_state_in_dicke,
    reduce_single_qubit,
    sym_to_computational,
)
from .errors import CapacityError, ValidationError
from .qubit import DensityMatrix, PureQubit, complement, philox_rng

MAX_JOINT_OUTPUTS = 6
MIN_MC_SAMPLES = 10_000


@dataclass(frozen=True)
class EstimationDensity:
    """Probability density over pure states produced by optimal estimation."""

    n_inputs: int
    rho: SymDensity

    def __post_init__(self):
        if self.rho.total != self.n_inputs:
            raise ValidationError("density input size does not match rho")

    def at(self, phi: PureQubit) -> float:
        v = dicke_to_computational(product_state_in_dicke(phi, self.n_inputs, phi))
        mat = sym_to_computational(self.rho)
        val = float(np.real(np.vdot(v, mat @ v)))
        return (self.n_inputs + 1) * max(val, 0.0)


def estimation_density_at(phi: PureQubit, psi: PureQubit, n_inputs: int) -> float:
    """(N+1) |<phi, psi>|^(2N): the density for the product input psi^(x)N."""
    if n_inputs < 1:
        raise ValidationError("n_inputs must be >= 1")
    return (n_inputs + 1) * abs(phi.overlap(psi)) ** (2 * n_inputs)


@dataclass(frozen=True)
class EstimationOutput:
    out: DensityMatrix
    delta: float
    method: str  # "analytic" | "monte-carlo"
    samples: int
    delta_exact: Fraction | None = None
    delta_stderr: float = 0.0


def classical_unot_analytic(psi: PureQubit, n_inputs: int) -> EstimationOutput:
    """Closed-form output s_N sigma_perp + ((1-s_N)/2) I with s_N = N/(N+2).

    Both moment integrals reduce to the normalization integral
    1/(N+1), so the error is the exact rational 1/(N+2).
    """
    if n_inputs < 1:
        raise ValidationError("n_inputs must be >= 1")
    s = not_scaling(n_inputs)
    sigma_perp = complement(psi).density()
    out = DensityMatrix(float(s) * sigma_perp.entries + float((1 - s) / 2) * np.eye(2))
    delta = Fraction(1, n_inputs + 2)
    return EstimationOutput(out=out, delta=float(delta), method="analytic", samples=0, delta_exact=delta)


def not_scaling(n_inputs: int) -> Fraction:
    return Fraction(n_inputs, n_inputs + 2)


def classical_unot_montecarlo(
    psi: PureQubit, n_inputs: int, samples: int, seed
) -> EstimationOutput:
    """Self-normalized Monte Carlo average of p(Phi) (I - |Phi><Phi|).

    Deterministic in (seed, samples); the sample stream is counter-based,
    so partitioned execution with the same counters gives identical output.
    """
    if samples < MIN_MC_SAMPLES:
        raise ValidationError(f"need at least {MIN_MC_SAMPLES} samples, got {samples}")
    g = philox_rng(seed)
    z = g.normal(size=(samples, 2)) + 1j * g.normal(size=(samples, 2))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    overlap2 = np.abs(z @ psi.vector.conj()) ** 2
    p = (n_inputs + 1) * overlap2**n_inputs
    total = p.sum()
    gram = np.einsum("s,si,sj->ij", p, z, z.conj())
    out = DensityMatrix((np.eye(2) * total - gram) / total)
    per_sample = p * (1.0 - overlap2)
    delta = float(per_sample.sum() / total)
    stderr = float(per_sample.std(ddof=1) / sqrt(samples))
    return EstimationOutput(
        out=out, delta=delta, method="monte-carlo", samples=samples, delta_stderr=stderr
    )


@dataclass(frozen=True)
class MultiOutput:
    """M re-prepared complements: per-qubit state plus the joint symmetric state."""

    single: DensityMatrix
    joint: SymDensity
    weights_exact: tuple[Fraction, ...]


def classical_multi_output(psi: PureQubit, n_inputs: int, m_outputs: int) -> MultiOutput:
    """Joint state of M re-prepared complements.

    Averaging |Phi_perp><Phi_perp|^(x)M over the estimation density is
    diagonal in the Dicke basis of the input's frame; the weight of the
    state with k frame-orthogonal factors is the exact beta-integral value
    (N+1) C(M,k) (N+k)! (M-k)! / (N+M+1)!.
    """
    if m_outputs < 1:
        raise ValidationError("m_outputs must be >= 1")
    if m_outputs > MAX_JOINT_OUTPUTS:
        raise CapacityError(f"joint output state capped at M <= {MAX_JOINT_OUTPUTS}")
    n, m = n_inputs, m_outputs
    weights = tuple(
        Fraction((n + 1) * comb(m, k) * factorial(n + k) * factorial(m - k), factorial(n + m + 1))
        for k in range(m + 1)
    )
    joint = SymDensity(m, psi, np.diag([float(w) for w in weights]).astype(np.complex128))
    single = reduce_single_qubit(joint)
    return MultiOutput(single=single, joint=joint, weights_exact=weights)


def classical_channel(n_inputs: int):
    """The estimation-and-reprepare map as a channel on symmetric inputs.

    Returns a callable on (N+1)x(N+1) computational-frame Dicke matrices
    (linear, so usable on non-state operators too). Uses the identity
    integral |Phi^(N+1)> dyads -> symmetric projector / (N+2).
    """
    n = n_inputs
    if n < 1:
        raise ValidationError("n_inputs must be >= 1")
    # Splitting matrix of the (N+1)-qubit symmetric basis over sym_N (x) qubit.
    b = np.zeros((n + 1, 2, n + 2))
    for k in range(n + 2):
        for i in range(2):
            if 0 <= k - i <= n:
                b[k - i, i, k] = sqrt(comb(n, k - i) / comb(n + 1, k))
    proj = np.einsum("aik,bjk->aibj", b, b)  # symmetric projector on sym_N (x) qubit

    def channel(mat: np.ndarray) -> np.ndarray:
        mat = np.asarray(mat, dtype=np.complex128)
        if mat.shape != (n + 1, n + 1):
            raise ValidationError(f"expected a {(n + 1, n + 1)} matrix, got {mat.shape}")
        reduced = np.einsum("km,mikj->ij", mat, proj)
        return np.trace(mat) * np.eye(2) - (n + 1) / (n + 2) * reduced

    return channel


def classical_channel_apply(rho: SymDensity) -> DensityMatrix:
    """Apply the measurement-based channel to an arbitrary symmetric input state."""
    mat = sym_to_computational(rho)
    return DensityMatrix(classical_channel(rho.total)(mat))


def haar_moment_overlap(n_inputs: int) -> Fraction:
    """Mean of |<Phi, Psi>|^(2N) over uniform Phi: the normalization integral 1/(N+1)."""
    return Fraction(1, n_inputs + 1)


__all__ = [
    "EstimationDensity",
    "EstimationOutput",
    "MultiOutput",
    "classical_channel",
    "classical_channel_apply",
    "classical_multi_output",
    "classical_unot_analytic",
    "classical_unot_montecarlo",
    "estimation_density_at",
    "haar_moment_overlap",
    "not_scaling",
]
