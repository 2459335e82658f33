"""The N-input / M-output universal complementing (U-NOT) transformation.

The gate maps ``psi^(x)N (x) X -> sum_j gamma_j |X_j(psi)>_ab (x) |c_j(psi)>_c``
where the ab register holds N+M qubits in the symmetric state with j
orthogonal factors, and the c register holds M qubits with M-j orthogonal
factors. Everything here works in the structured (Dicke-coefficient)
representation; the full-tensor cross-check lives in `tensor_oracle`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, sqrt

import numpy as np

from .dicke import (
    DickeBasisLabel,
    SymDensity,
    frame_unitary,
    reduce_single_qubit,
    reduce_two_qubits,
    symmetric_power_matrix,
)
from .errors import CapacityError, ValidationError
from .qubit import DensityMatrix, PureQubit, ScaledStateForm, complement, fidelity, min_pt_eigenvalue

MAX_GATE_QUBITS = 60  # bound on N + M + 1 for exact binomial evaluation


@dataclass(frozen=True)
class GateCoefficients:
    """The M+1 alternating-sign amplitudes gamma_j of the gate expansion."""

    n_inputs: int
    m_outputs: int
    gamma: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.gamma, dtype=np.float64)
        g = g.copy()
        g.flags.writeable = False
        object.__setattr__(self, "gamma", g)

    def gamma_squared_exact(self) -> list[Fraction]:
        n, m = self.n_inputs, self.m_outputs
        return [Fraction(comb(n + m - j, n), comb(n + m + 1, m)) for j in range(m + 1)]


def gate_coefficients(n_inputs: int, m_outputs: int) -> GateCoefficients:
    """gamma_j = (-1)^j sqrt(C(N+M-j, N) / C(N+M+1, M)), from exact integer binomials.

    The squares telescope to 1 by the hockey-stick identity, which is what
    makes the transformation an isometry.
    """
    n, m = int(n_inputs), int(m_outputs)
    if n < 1 or m < 1:
        raise ValidationError("n_inputs and m_outputs must both be >= 1")
    if n + m + 1 > MAX_GATE_QUBITS:
        raise CapacityError(f"N + M + 1 = {n + m + 1} exceeds the exact-binomial bound {MAX_GATE_QUBITS}")
    norm = comb(n + m + 1, m)
    gamma = np.array(
        [(-1.0) ** j * sqrt(Fraction(comb(n + m - j, n), norm)) for j in range(m + 1)]
    )
    return GateCoefficients(n, m, gamma)


def c_index_label(j: int, m_outputs: int) -> DickeBasisLabel:
    """Map the gate's c-register index j to a Dicke label.

    Column j of the joint coefficient matrix means "j qubits back in the
    input state, M - j complemented", i.e. Dicke index k = M - j in the
    convention where k counts frame-orthogonal factors.
    """
    if not 0 <= j <= m_outputs:
        raise ValidationError(f"c index {j} outside 0..{m_outputs}")
    return DickeBasisLabel(m_outputs, m_outputs - j)


@dataclass(frozen=True)
class JointOutputState:
    """Bipartite output of the gate over (ab register) x (c register).

    ``coeffs[k, j]`` multiplies the ab Dicke state with k orthogonal factors
    (of N+M qubits) tensored with the c state of index j (see
    `c_index_label`). For a product input in its own frame the matrix is
    nonzero only at (k, j) = (j, j), where it equals gamma_j.
    """

    n_inputs: int
    m_outputs: int
    frame: PureQubit
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.complex128)
        shape = (self.n_inputs + self.m_outputs + 1, self.m_outputs + 1)
        if c.shape != shape:
            raise ValidationError(f"expected coefficient shape {shape}, got {c.shape}")
        norm = float(np.linalg.norm(c))
        if abs(norm - 1.0) > 1e-12:
            raise ValidationError(f"joint state has Frobenius norm {norm!r}, expected 1")
        c = c.copy()
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    def coeffs_dicke(self) -> np.ndarray:
        """Coefficients with the c register reindexed by Dicke k (column flip)."""
        return self.coeffs[:, ::-1]

    def to_computational_tensor(self) -> np.ndarray:
        """Coefficients over computational-frame Dicke bases of both registers."""
        s_ab = symmetric_power_matrix(frame_unitary(self.frame), self.n_inputs + self.m_outputs)
        s_c = symmetric_power_matrix(frame_unitary(self.frame), self.m_outputs)
        return s_ab @ self.coeffs_dicke() @ s_c.T

    def overlap(self, other: "JointOutputState") -> complex:
        """Inner product <self, other>, valid across different frames."""
        if (self.n_inputs, self.m_outputs) != (other.n_inputs, other.m_outputs):
            raise ValidationError("joint states have different register sizes")
        return complex(np.vdot(self.to_computational_tensor(), other.to_computational_tensor()))

    def c_density(self) -> SymDensity:
        cd = self.coeffs_dicke()
        return SymDensity(self.m_outputs, self.frame, np.einsum("ik,il->kl", cd, cd.conj()))

    def ab_density(self) -> SymDensity:
        c = self.coeffs
        return SymDensity(
            self.n_inputs + self.m_outputs, self.frame, np.einsum("ik,jk->ij", c, c.conj())
        )


def apply_unot(psi: PureQubit, n_inputs: int, m_outputs: int) -> JointOutputState:
    """Joint output state for the product input psi^(x)N, in the frame of psi."""
    g = gate_coefficients(n_inputs, m_outputs)
    coeffs = np.zeros((n_inputs + m_outputs + 1, m_outputs + 1), dtype=np.complex128)
    for j in range(m_outputs + 1):
        coeffs[j, j] = g.gamma[j]
    return JointOutputState(n_inputs, m_outputs, psi, coeffs)


def not_scaling_exact(n_inputs: int) -> Fraction:
    """Shrink factor of the complement output toward the maximally mixed state."""
    return Fraction(n_inputs, n_inputs + 2)


def clone_scaling_exact(n_inputs: int, m_outputs: int) -> Fraction:
    """Shrink factor of the ab-register clones: N/(N+2) + 2N/((N+M)(N+2))."""
    n, m = n_inputs, m_outputs
    return Fraction(n, n + 2) + Fraction(2 * n, (n + m) * (n + 2))


def complement_output(joint: JointOutputState) -> DensityMatrix:
    """Single-qubit state of any c-register qubit: s_N sigma_perp + ((1-s_N)/2) I."""
    return reduce_single_qubit(joint.c_density())


def clone_output(joint: JointOutputState) -> DensityMatrix:
    """Single-qubit state of any ab-register qubit (the clones of the input)."""
    return reduce_single_qubit(joint.ab_density())


@dataclass(frozen=True)
class SeparabilityCheck:
    ppt: bool
    min_eigenvalue: float


def check_pairwise_separability(joint: JointOutputState, atol: float = 1e-10) -> SeparabilityCheck:
    """PPT test on a two-qubit reduction of the c register.

    For two qubits PPT is equivalent to separability, so a nonnegative
    minimum partial-transpose eigenvalue certifies that the produced
    complements are pairwise separable.
    """
    if joint.m_outputs < 2:
        raise ValidationError("pairwise separability needs at least two output qubits")
    pair = reduce_two_qubits(joint.c_density())
    ev = min_pt_eigenvalue(pair)
    return SeparabilityCheck(ppt=ev >= -atol, min_eigenvalue=ev)


@dataclass(frozen=True)
class OutputReport:
    """Per-input summary of the gate's complement and clone outputs."""

    c_single: DensityMatrix
    ab_single: DensityMatrix
    fidelity_not: float
    fidelity_clone: float
    scaling_not: float
    scaling_clone: float

    def __post_init__(self):
        for name in ("fidelity_not", "fidelity_clone", "scaling_not", "scaling_clone"):
            v = getattr(self, name)
            if not -1e-12 <= v <= 1.0 + 1e-12:
                raise ValidationError(f"{name} = {v!r} outside [0, 1]")


def gate_report(psi: PureQubit, n_inputs: int, m_outputs: int) -> OutputReport:
    joint = apply_unot(psi, n_inputs, m_outputs)
    c_single = complement_output(joint)
    ab_single = clone_output(joint)
    sigma = psi.density()
    sigma_perp = complement(psi).density()
    not_form, _ = ScaledStateForm.fit(c_single, sigma_perp)
    clone_form, _ = ScaledStateForm.fit(ab_single, sigma)
    return OutputReport(
        c_single=c_single,
        ab_single=ab_single,
        fidelity_not=fidelity(sigma_perp, c_single),
        fidelity_clone=fidelity(sigma, ab_single),
        scaling_not=not_form.scaling,
        scaling_clone=clone_form.scaling,
    )
