"""Single-qubit and small-register primitives.

Pure states, density matrices, Bloch vectors, the ideal (anti-unitary)
complement, pure-state fidelity, partial trace / partial transpose over
qubit registers, and seeded uniform sampling of pure states.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError, UnsupportedCaseError, ValidationError

# Structural tolerances (double precision leaves ample headroom at dim <= 2^14).
NORM_ATOL = 1e-12
HERM_ATOL = 1e-12
TRACE_ATOL = 1e-12
PSD_ATOL = 1e-10
PURITY_ATOL = 1e-9

MAX_REGISTER_QUBITS = 14


def _as_complex_matrix(entries) -> np.ndarray:
    mat = np.array(entries, dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {mat.shape}")
    return mat


@dataclass(frozen=True)
class PureQubit:
    """Normalized two-level pure state with amplitudes (alpha, beta)."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        a = complex(self.alpha)
        b = complex(self.beta)
        norm2 = abs(a) ** 2 + abs(b) ** 2
        if abs(norm2 - 1.0) > NORM_ATOL:
            raise ValidationError(f"amplitudes not normalized: |a|^2+|b|^2 = {norm2!r}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @classmethod
    def from_vector(cls, vec) -> "PureQubit":
        vec = np.asarray(vec, dtype=np.complex128)
        if vec.shape != (2,):
            raise ValidationError(f"expected a length-2 amplitude vector, got {vec.shape}")
        return cls(vec[0], vec[1])

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.alpha, self.beta], dtype=np.complex128)

    def density(self) -> "DensityMatrix":
        v = self.vector
        return DensityMatrix(np.outer(v, v.conj()))

    def bloch(self) -> "BlochVector":
        a, b = self.alpha, self.beta
        cross = a.conjugate() * b
        return BlochVector(2.0 * cross.real, 2.0 * cross.imag, abs(a) ** 2 - abs(b) ** 2)

    def overlap(self, other: "PureQubit") -> complex:
        """Inner product <self, other>."""
        return complex(np.vdot(self.vector, other.vector))


QUBIT_ZERO = PureQubit(1.0, 0.0)
QUBIT_ONE = PureQubit(0.0, 1.0)


@dataclass(frozen=True)
class BlochVector:
    """Pauli expectation vector; pure states sit on the unit sphere."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        r2 = self.x**2 + self.y**2 + self.z**2
        if r2 > 1.0 + 1e-12:
            raise ValidationError(f"Bloch vector outside the unit ball: |r|^2 = {r2!r}")

    @property
    def radius(self) -> float:
        return float(np.sqrt(self.x**2 + self.y**2 + self.z**2))

    def is_pure(self, atol: float = PURITY_ATOL) -> bool:
        return abs(self.radius - 1.0) <= atol

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite matrix on qubit registers."""

    entries: np.ndarray
    dim: int = field(init=False)

    def __post_init__(self):
        mat = _as_complex_matrix(self.entries)
        if np.abs(mat - mat.conj().T).max() > HERM_ATOL:
            raise ValidationError("matrix is not Hermitian within tolerance")
        tr = mat.trace()
        if abs(tr - 1.0) > TRACE_ATOL:
            raise ValidationError(f"trace is {tr!r}, expected 1")
        if np.linalg.eigvalsh(mat).min() < -PSD_ATOL:
            raise ValidationError("matrix has a negative eigenvalue beyond tolerance")
        mat = mat.copy()
        mat.flags.writeable = False
        object.__setattr__(self, "entries", mat)
        object.__setattr__(self, "dim", mat.shape[0])

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityMatrix":
        return cls(np.eye(dim) / dim)

    def purity(self) -> float:
        return float(np.real(np.trace(self.entries @ self.entries)))

    def is_pure(self, atol: float = PURITY_ATOL) -> bool:
        return abs(self.purity() - 1.0) <= atol

    def bloch(self) -> BlochVector:
        if self.dim != 2:
            raise ValidationError("Bloch vector is defined for 2x2 matrices only")
        m = self.entries
        return BlochVector(
            float(2.0 * m[0, 1].real), float(-2.0 * m[0, 1].imag), float((m[0, 0] - m[1, 1]).real)
        )


@dataclass(frozen=True)
class ScaledStateForm:
    """State of the form s * direction + ((1 - s)/2) * I on one qubit."""

    direction: DensityMatrix
    scaling: float

    def __post_init__(self):
        if self.direction.dim != 2 or not self.direction.is_pure():
            raise ValidationError("direction must be a pure 2x2 density matrix")
        if not -1.0 - 1e-12 <= self.scaling <= 1.0 + 1e-12:
            raise ValidationError(f"scaling {self.scaling!r} outside [-1, 1]")

    def to_density(self) -> DensityMatrix:
        s = self.scaling
        return DensityMatrix(s * self.direction.entries + ((1.0 - s) / 2.0) * np.eye(2))

    @classmethod
    def fit(cls, state: DensityMatrix, direction: DensityMatrix) -> tuple["ScaledStateForm", float]:
        """Least-squares scaling along `direction`; returns (form, trace-norm residual)."""
        s = 2.0 * float(np.real(np.trace(direction.entries @ state.entries))) - 1.0
        form = cls(direction, min(1.0, max(-1.0, s)))
        residual = trace_norm(state.entries - form.to_density().entries)
        return form, residual


def complement(psi: PureQubit) -> PureQubit:
    """Ideal anti-unitary complement: (a, b) -> (conj(b), -conj(a)).

    The output is orthogonal to the input; applying the map twice returns
    the input with a global phase of -1.
    """
    return PureQubit(psi.beta.conjugate(), -psi.alpha.conjugate())


def fidelity(a: DensityMatrix, b: DensityMatrix) -> float:
    """Overlap Tr[a b] between 2x2 states, at least one of which is pure.

    For a pure and b arbitrary this is the usual transition probability
    <psi_a| b |psi_a>. The mixed-mixed (Uhlmann) case is deliberately not
    supported here; it is never needed.
    """
    if a.dim != 2 or b.dim != 2:
        raise ValidationError("fidelity is defined for single-qubit states only")
    if not (a.is_pure() or b.is_pure()):
        raise UnsupportedCaseError("at least one argument must be pure (rank 1)")
    val = complex(np.trace(a.entries @ b.entries))
    if abs(val.imag) > 1e-12:
        raise ValidationError(f"trace overlap has a spurious imaginary part {val.imag!r}")
    return float(val.real)


def _check_register(dim: int) -> int:
    q = int(dim).bit_length() - 1
    if 2**q != dim:
        raise ValidationError(f"dimension {dim} is not a power of two")
    if q > MAX_REGISTER_QUBITS:
        raise CapacityError(f"register of {q} qubits exceeds the {MAX_REGISTER_QUBITS}-qubit bound")
    return q


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Trace out all qubits except `keep` (1-based indices, qubit 1 leftmost).

    Returns the reduced state on the kept qubits, ordered as listed.
    """
    q = _check_register(rho.dim)
    keep = list(keep)
    if not keep or any(k < 1 or k > q for k in keep) or len(set(keep)) != len(keep):
        raise ValidationError(f"keep must be a nonempty set of distinct indices in 1..{q}")
    keep0 = [k - 1 for k in keep]
    rest = [i for i in range(q) if i not in keep0]
    tensor = rho.entries.reshape((2,) * (2 * q))
    perm = keep0 + rest + [q + i for i in keep0] + [q + i for i in rest]
    tensor = tensor.transpose(perm)
    dk, dr = 2 ** len(keep0), 2 ** len(rest)
    tensor = tensor.reshape(dk, dr, dk, dr)
    return DensityMatrix(np.einsum("arbr->ab", tensor))


def reduce_vector(vec: np.ndarray, keep) -> np.ndarray:
    """Reduced density matrix of a pure register state, without forming the full projector."""
    vec = np.asarray(vec, dtype=np.complex128)
    q = _check_register(vec.shape[0])
    keep0 = sorted(k - 1 for k in keep)
    rest = [i for i in range(q) if i not in keep0]
    t = vec.reshape((2,) * q).transpose(keep0 + rest).reshape(2 ** len(keep0), -1)
    return t @ t.conj().T


def partial_transpose(rho: DensityMatrix, subsystem: int = 2) -> np.ndarray:
    """Partial transpose of a two-qubit state over subsystem 1 or 2.

    The result is Hermitian with unit trace but generally not positive;
    negativity witnesses entanglement (and for two qubits, exactly).
    """
    if rho.dim != 4:
        raise ValidationError("partial transpose expects a two-qubit (4x4) state")
    if subsystem not in (1, 2):
        raise ValidationError("subsystem must be 1 or 2")
    t = rho.entries.reshape(2, 2, 2, 2)
    if subsystem == 1:
        t = t.transpose(2, 1, 0, 3)
    else:
        t = t.transpose(0, 3, 2, 1)
    return t.reshape(4, 4)


def min_pt_eigenvalue(rho: DensityMatrix) -> float:
    return float(np.linalg.eigvalsh(partial_transpose(rho)).min())


def is_ppt(rho: DensityMatrix, atol: float = PSD_ATOL) -> bool:
    """Positive partial transpose test; for two qubits this decides separability."""
    return min_pt_eigenvalue(rho) >= -atol


def philox_rng(seed) -> np.random.Generator:
    # Philox is counter-based, so sample streams split reproducibly.
    # `seed` may be an int or a sequence of ints (stream-labeling counters).
    return np.random.Generator(np.random.Philox(seed))


def haar_state_batch(n: int, seed) -> np.ndarray:
    """(n, 2) array of uniformly distributed pure-qubit amplitude pairs.

    Two standard complex Gaussians, normalized: exactly unitary invariant.
    """
    g = philox_rng(seed)
    z = g.normal(size=(n, 2)) + 1j * g.normal(size=(n, 2))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def haar_sample_pure(rng_seed) -> PureQubit:
    """One uniformly random pure qubit, deterministic in the seed."""
    return PureQubit.from_vector(haar_state_batch(1, rng_seed)[0])


def haar_unitary(rng: np.random.Generator, special: bool = False) -> np.ndarray:
    """Haar-random 2x2 unitary via Gaussian QR; `special` renormalizes to det 1."""
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    if special:
        q = q / np.sqrt(np.linalg.det(q))
    return q


def trace_norm(mat: np.ndarray) -> float:
    """Sum of singular values; for Hermitian input, sum of |eigenvalues|."""
    mat = np.asarray(mat)
    if np.abs(mat - mat.conj().T).max() < 1e-10:
        return float(np.abs(np.linalg.eigvalsh(mat)).sum())
    return float(np.linalg.svd(mat, compute_uv=False).sum())
