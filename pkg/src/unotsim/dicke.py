"""Symmetric-subspace (Dicke) representation of qubit registers.

Conventions used throughout the package:

* A register of ``total`` qubits is described relative to a reference
  ("frame") qubit ``psi``. Basis state ``k`` is the normalized symmetric
  state with ``total - k`` factors ``psi`` and ``k`` factors ``psi_perp``,
  for ``k = 0 .. total`` (the spin-``total/2`` representation space).
* ``psi_perp`` is the frame companion ``(-conj(beta), conj(alpha))``. Any
  other phase choice changes only intermediate signs, never reduced states
  or fidelities; this one makes all symmetrization coefficients real and
  positive in the computational frame.
* Symmetrization coefficients are real and positive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, sqrt

import numpy as np

from .errors import CapacityError, ValidationError
from .qubit import (
    HERM_ATOL,
    MAX_REGISTER_QUBITS,
    NORM_ATOL,
    PSD_ATOL,
    TRACE_ATOL,
    DensityMatrix,
    PureQubit,
)


def frame_orthogonal(psi: PureQubit) -> PureQubit:
    """Canonical state orthogonal to psi used for Dicke frames: (-b*, a*)."""
    return PureQubit(-psi.beta.conjugate(), psi.alpha.conjugate())


def frame_unitary(psi: PureQubit) -> np.ndarray:
    """2x2 unitary with columns (psi, frame_orthogonal(psi)); det = 1."""
    perp = frame_orthogonal(psi)
    return np.array([[psi.alpha, perp.alpha], [psi.beta, perp.beta]], dtype=np.complex128)


@dataclass(frozen=True)
class DickeBasisLabel:
    """Symmetric basis state of `total` qubits with `k` frame-orthogonal factors."""

    total: int
    k: int

    def __post_init__(self):
        if self.total < 1:
            raise ValidationError("total qubit count must be >= 1")
        if not 0 <= self.k <= self.total:
            raise ValidationError(f"k = {self.k} outside 0..{self.total}")


@dataclass(frozen=True)
class DickeVector:
    """Pure symmetric state: total+1 amplitudes over Dicke basis states."""

    total: int
    frame: PureQubit
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.complex128)
        if c.shape != (self.total + 1,):
            raise ValidationError(f"expected {self.total + 1} coefficients, got shape {c.shape}")
        norm2 = float(np.vdot(c, c).real)
        if abs(norm2 - 1.0) > NORM_ATOL:
            raise ValidationError(f"Dicke coefficients not normalized: {norm2!r}")
        c = c.copy()
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    def to_sym_density(self) -> "SymDensity":
        return SymDensity(self.total, self.frame, np.outer(self.coeffs, self.coeffs.conj()))


@dataclass(frozen=True)
class SymDensity:
    """Density operator supported on the symmetric subspace of `total` qubits."""

    total: int
    frame: PureQubit
    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=np.complex128)
        d = self.total + 1
        if m.shape != (d, d):
            raise ValidationError(f"expected a {d}x{d} matrix, got {m.shape}")
        if np.abs(m - m.conj().T).max() > HERM_ATOL:
            raise ValidationError("symmetric density not Hermitian within tolerance")
        if abs(m.trace() - 1.0) > TRACE_ATOL:
            raise ValidationError(f"symmetric density trace is {m.trace()!r}")
        if np.linalg.eigvalsh(m).min() < -PSD_ATOL:
            raise ValidationError("symmetric density has a negative eigenvalue")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "entries", m)


def embed_dicke(label: DickeBasisLabel, frame: PureQubit) -> np.ndarray:
    """Full 2^total amplitude vector of a Dicke basis state.

    The amplitude on a computational basis string depends only on its
    popcount: summing over which of the k orthogonal factors land on the
    string's 1-positions gives a small hypergeometric-style sum.
    """
    n, k = label.total, label.k
    if n > MAX_REGISTER_QUBITS:
        raise CapacityError(f"full-tensor embedding capped at {MAX_REGISTER_QUBITS} qubits")
    a0, a1 = frame.alpha, frame.beta
    perp = frame_orthogonal(frame)
    b0, b1 = perp.alpha, perp.beta
    amp_by_ones = np.zeros(n + 1, dtype=np.complex128)
    for n1 in range(n + 1):
        n0 = n - n1
        total = 0.0 + 0.0j
        for t in range(max(0, k - n1), min(k, n0) + 1):
            total += (
                comb(n0, t)
                * comb(n1, k - t)
                * a0 ** (n0 - t)
                * a1 ** (n1 - (k - t))
                * b0**t
                * b1 ** (k - t)
            )
        amp_by_ones[n1] = total / sqrt(comb(n, k))
    idx = np.arange(2**n)
    ones = (idx[:, None] >> np.arange(n)[None, :] & 1).sum(axis=1)
    return amp_by_ones[ones]


def embed_basis(total: int, frame: PureQubit) -> np.ndarray:
    """2^total x (total+1) matrix whose columns embed the Dicke basis."""
    return np.column_stack(
        [embed_dicke(DickeBasisLabel(total, k), frame) for k in range(total + 1)]
    )


def embed_dicke_vector(state: DickeVector) -> np.ndarray:
    return embed_basis(state.total, state.frame) @ state.coeffs


def product_state_in_dicke(psi: PureQubit, total: int, frame: PureQubit | None = None) -> DickeVector:
    """psi^(x)total as a Dicke vector; in its own frame the coefficients are (1, 0, ..., 0)."""
    if total < 1:
        raise ValidationError("total must be >= 1")
    if frame is None or frame == psi:
        c = np.zeros(total + 1, dtype=np.complex128)
        c[0] = 1.0
        return DickeVector(total, frame if frame is not None else psi, c)
    o_par = frame.overlap(psi)
    o_perp = frame_orthogonal(frame).overlap(psi)
    c = np.array(
        [sqrt(comb(total, k)) * o_par ** (total - k) * o_perp**k for k in range(total + 1)],
        dtype=np.complex128,
    )
    return DickeVector(total, frame, c)


def symmetric_power_matrix(u: np.ndarray, total: int) -> np.ndarray:
    """Action of a single-qubit operator on Dicke coefficients of `total` qubits.

    This is the spin-(total/2) representation matrix: for unitary u it maps
    the Dicke coefficients of any symmetric state to those of the rotated
    state. Computed by substitution into the degree-`total` homogeneous
    polynomial picture of the symmetric subspace.
    """
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (2, 2):
        raise ValidationError("expected a 2x2 matrix")
    a, b = u[0, 0], u[0, 1]
    c, d = u[1, 0], u[1, 1]
    n = total
    out = np.zeros((n + 1, n + 1), dtype=np.complex128)
    root = [sqrt(comb(n, k)) for k in range(n + 1)]
    for k in range(n + 1):
        p1 = np.array([comb(n - k, i) * a ** (n - k - i) * c**i for i in range(n - k + 1)])
        p2 = np.array([comb(k, i) * b ** (k - i) * d**i for i in range(k + 1)])
        conv = np.convolve(p1, p2)
        out[:, k] = conv * root[k] / root
    return out


def dicke_to_computational(state: DickeVector) -> np.ndarray:
    """Dicke coefficients of the same state relative to the computational frame."""
    return symmetric_power_matrix(frame_unitary(state.frame), state.total) @ state.coeffs


def sym_to_computational(rho: SymDensity) -> np.ndarray:
    s = symmetric_power_matrix(frame_unitary(rho.frame), rho.total)
    return s @ rho.entries @ s.conj().T


def _as_sym_density(state: DickeVector | SymDensity) -> SymDensity:
    if isinstance(state, DickeVector):
        return state.to_sym_density()
    if isinstance(state, SymDensity):
        return state
    raise ValidationError(f"expected DickeVector or SymDensity, got {type(state).__name__}")


def reduce_single_qubit(state: DickeVector | SymDensity) -> DensityMatrix:
    """Single-qubit reduced state (all positions agree by permutation symmetry).

    Uses the tridiagonal structure of the one-qubit trace-down of Dicke
    dyads: only |k - k'| <= 1 contributes.
    """
    rho = _as_sym_density(state)
    n = rho.total
    m = rho.entries
    k = np.arange(n)
    diag = np.real(np.diag(m))
    upper = np.diag(m, 1)  # entries [k, k+1]
    cross = np.sqrt((n - k) * (k + 1)) / n
    red = np.zeros((2, 2), dtype=np.complex128)
    red[0, 0] = np.sum(diag * (n - np.arange(n + 1)) / n)
    red[1, 1] = np.sum(diag * np.arange(n + 1) / n)
    red[0, 1] = np.sum(upper * cross)
    red[1, 0] = red[0, 1].conjugate()
    u = frame_unitary(rho.frame)
    return DensityMatrix(u @ red @ u.conj().T)


def reduce_two_qubits(state: DickeVector | SymDensity) -> DensityMatrix:
    """Two-qubit reduced state; supported on the two-qubit symmetric subspace."""
    rho = _as_sym_density(state)
    n = rho.total
    if n < 2:
        raise ValidationError("two-qubit reduction needs at least two qubits")
    m = rho.entries

    def w(i: int, k: int) -> float:
        if not 0 <= k - i <= n - 2:
            return 0.0
        return sqrt(comb(2, i) * comb(n - 2, k - i) / comb(n, k))

    s2 = np.zeros((3, 3), dtype=np.complex128)
    for i in range(3):
        for ip in range(3):
            for k in range(n + 1):
                kp = k - i + ip
                if 0 <= kp <= n:
                    s2[i, ip] += m[k, kp] * w(i, k) * w(ip, kp)
    f = rho.frame.vector
    p = frame_orthogonal(rho.frame).vector
    basis = np.column_stack(
        [np.kron(f, f), (np.kron(f, p) + np.kron(p, f)) / sqrt(2.0), np.kron(p, p)]
    )
    return DensityMatrix(basis @ s2 @ basis.conj().T)
