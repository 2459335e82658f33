"""Full-tensor cross-check of the structured gate representation.

Builds the gate's action on the computational Dicke basis by harmonic
extraction from the defining product-input formula, completes the resulting
isometry to an explicit unitary on all N + 2M qubits, and exposes reduced
outputs computed by brute-force partial trace. Everything here is
deliberately independent of the closed-form reductions in `dicke`/`gate`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import comb, sqrt

import numpy as np

from .dicke import DickeBasisLabel, embed_dicke
from .errors import CapacityError, ValidationError
from .gate import gate_coefficients
from .qubit import QUBIT_ZERO, PureQubit

MAX_ORACLE_QUBITS = 12  # 2^12 amplitudes; keeps the completion QR desk-scale


def _check_capacity(n_inputs: int, m_outputs: int) -> int:
    q = n_inputs + 2 * m_outputs
    if q > MAX_ORACLE_QUBITS:
        raise CapacityError(f"full-tensor oracle capped at N + 2M <= {MAX_ORACLE_QUBITS}, got {q}")
    return q


def full_register_state(psi: PureQubit, n_inputs: int, m_outputs: int) -> np.ndarray:
    """Direct evaluation of the gate output as a 2^(N+2M) amplitude vector.

    Register layout: qubits 1..N+M are ab (inputs then ancillas), the last
    M qubits are the c register holding the complements.
    """
    _check_capacity(n_inputs, m_outputs)
    g = gate_coefficients(n_inputs, m_outputs)
    dim = 2 ** (n_inputs + 2 * m_outputs)
    out = np.zeros(dim, dtype=np.complex128)
    for j in range(m_outputs + 1):
        ab = embed_dicke(DickeBasisLabel(n_inputs + m_outputs, j), psi)
        c = embed_dicke(DickeBasisLabel(m_outputs, m_outputs - j), psi)
        out += g.gamma[j] * np.kron(ab, c)
    return out


def product_input_vector(psi: PureQubit, n_inputs: int, m_outputs: int) -> np.ndarray:
    """psi^(x)N on the input register, gate register in |0...0>."""
    _check_capacity(n_inputs, m_outputs)
    prod = reduce(np.kron, [psi.vector] * n_inputs)
    blank = np.zeros(2 ** (2 * m_outputs), dtype=np.complex128)
    blank[0] = 1.0
    return np.kron(prod, blank)


def defined_columns(n_inputs: int, m_outputs: int) -> tuple[np.ndarray, np.ndarray]:
    """Images of the computational Dicke input basis under the gate.

    The product-input formula is linear in psi^(x)N, so sampling the input
    phase on 2N+3 points and taking harmonics recovers the action on each
    Dicke basis vector. Harmonics outside 0..N must vanish; a nonzero
    residue there (or a failed spot reconstruction) would falsify the
    linear extension and raises.
    """
    n = n_inputs
    _check_capacity(n, m_outputs)
    points = 2 * n + 3
    r = 1.0 / sqrt(2.0)
    phis = 2.0 * np.pi * np.arange(points) / points
    samples = np.stack(
        [full_register_state(PureQubit(r, r * np.exp(1j * p)), n, m_outputs) for p in phis]
    )
    harmonics = np.einsum("tq,tv->qv", np.exp(-1j * np.outer(np.arange(points), phis)), samples)
    harmonics /= points
    spurious = np.linalg.norm(harmonics[n + 1 :], axis=1).max()
    if spurious > 1e-10:
        raise ValidationError(f"gate formula is not linear in the input: residue {spurious:.2e}")
    out_cols = np.stack(
        [harmonics[k] / (sqrt(comb(n, k)) * r**n) for k in range(n + 1)], axis=1
    )
    in_cols = np.stack([_dicke_input_column(k, n, m_outputs) for k in range(n + 1)], axis=1)
    # Spot check: reconstruct the output for a generic complex input state.
    psi = PureQubit(0.6 + 0.3j, sqrt(1.0 - 0.45) * np.exp(0.7j))
    coeffs = np.array(
        [sqrt(comb(n, k)) * psi.alpha ** (n - k) * psi.beta**k for k in range(n + 1)]
    )
    recon = out_cols @ coeffs
    direct = full_register_state(psi, n, m_outputs)
    if np.linalg.norm(recon - direct) > 1e-10:
        raise ValidationError("linear extension failed the spot reconstruction")
    return in_cols, out_cols


def _dicke_input_column(k: int, n_inputs: int, m_outputs: int) -> np.ndarray:
    vec = embed_dicke(DickeBasisLabel(n_inputs, k), QUBIT_ZERO)
    blank = np.zeros(2 ** (2 * m_outputs), dtype=np.complex128)
    blank[0] = 1.0
    return np.kron(vec, blank)


def _complete_columns(cols: np.ndarray, rng: np.random.Generator | None = None) -> np.ndarray:
    """Extend orthonormal columns to a full unitary, first columns unchanged.

    With an rng, the completion block is rephased and reversed, giving a
    different but equally valid completion (outputs on the defined subspace
    cannot depend on it).
    """
    dim, k = cols.shape
    q, rmat = np.linalg.qr(cols, mode="complete")
    phases = np.diag(rmat)[:k]
    phases = phases / np.abs(phases)
    q[:, :k] = q[:, :k] * phases
    if rng is not None:
        tail = q[:, k:][:, ::-1] * np.exp(2j * np.pi * rng.random(dim - k))
        q = np.concatenate([q[:, :k], tail], axis=1)
    return q


@dataclass(frozen=True)
class FullGateUnitary:
    """Explicit unitary completion of the gate on all N + 2M qubits."""

    n_inputs: int
    m_outputs: int
    q_in: np.ndarray
    q_out: np.ndarray

    @property
    def qubits(self) -> int:
        return self.n_inputs + 2 * self.m_outputs

    def apply(self, vec: np.ndarray) -> np.ndarray:
        return self.q_out @ (self.q_in.conj().T @ np.asarray(vec, dtype=np.complex128))

    def unitarity_defect(self) -> float:
        d = self.q_in.shape[0]
        err_in = np.abs(self.q_in.conj().T @ self.q_in - np.eye(d)).max()
        err_out = np.abs(self.q_out.conj().T @ self.q_out - np.eye(d)).max()
        return float(max(err_in, err_out))


def completed_unitary(n_inputs: int, m_outputs: int, variant_seed: int | None = None) -> FullGateUnitary:
    """Build an explicit unitary extending the gate's defined isometry.

    The defined columns must be orthonormal for a completion to exist;
    this is checked and raises otherwise.
    """
    in_cols, out_cols = defined_columns(n_inputs, m_outputs)
    k = in_cols.shape[1]
    gram = out_cols.conj().T @ out_cols
    defect = np.abs(gram - np.eye(k)).max()
    if defect > 1e-10:
        raise ValidationError(f"defined columns are not isometric: defect {defect:.2e}")
    rng = None if variant_seed is None else np.random.default_rng(variant_seed)
    q_in = _complete_columns(in_cols, rng)
    q_out = _complete_columns(out_cols, rng)
    return FullGateUnitary(n_inputs, m_outputs, q_in, q_out)


def simulate_product_input(gate: FullGateUnitary, psi: PureQubit) -> np.ndarray:
    """Output amplitude vector of the completed unitary on psi^(x)N (x) |0...0>."""
    return gate.apply(product_input_vector(psi, gate.n_inputs, gate.m_outputs))
