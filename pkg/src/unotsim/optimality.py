"""Extremal covariant channels from symmetric N-qubit inputs to one qubit.

A rotation-covariant channel factors through an isometry intertwining the
spin-N/2 input representation with (qubit) x (spin-j auxiliary); the
triangle rule allows only j = N/2 - 1/2 and j = N/2 + 1/2. Tracing out the
auxiliary spin gives the two extremal universal channels: the smaller j
returns the input state itself (error 1), the larger j is the optimal
complementing channel (error 1/(N+2)). Twirling projects any channel onto
the segment between the two without increasing the error functional.

Channels are represented as callables on (N+1)x(N+1) matrices in the
computational-frame Dicke basis, returning 2x2 matrices; `apply_channel`
wraps the callable for validated SymDensity inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, sqrt

import numpy as np

from .dicke import SymDensity, symmetric_power_matrix, sym_to_computational
from .errors import ValidationError
from .qubit import (
    DensityMatrix,
    PureQubit,
    haar_state_batch,
    haar_unitary,
    philox_rng,
)


def _doubled(j) -> int:
    j2 = 2 * j
    j2int = int(round(float(j2)))
    if abs(float(j2) - j2int) > 1e-9:
        raise ValidationError(f"j = {j!r} is not a half-integer")
    return j2int


def cg_with_half(j2: int, big_j2: int, m1_2: int, m2_2: int) -> float:
    """<1/2 m1; j m2 | J (m1+m2)> for J = j +- 1/2, Condon-Shortley phases.

    All arguments are doubled to stay integral; radicands are exact
    rationals with the square root taken last.
    """
    if m1_2 not in (1, -1):
        raise ValidationError("first factor is spin-1/2: m1 must be +-1/2")
    big_m2 = m1_2 + m2_2
    if abs(m2_2) > j2 or abs(big_m2) > big_j2:
        return 0.0
    if big_j2 == j2 + 1:
        rad = Fraction(j2 + m1_2 * big_m2 + 1, 2 * (j2 + 1))
        return sqrt(rad)
    if big_j2 == j2 - 1:
        # With the spin-1/2 factor first, Condon-Shortley makes the
        # m1 = +1/2 coefficient of the lower multiplet positive.
        rad = Fraction(j2 - m1_2 * big_m2 + 1, 2 * (j2 + 1))
        return sqrt(rad) if m1_2 > 0 else -sqrt(rad)
    raise ValidationError("coupling with spin 1/2 requires J = j +- 1/2")


@dataclass(frozen=True)
class CGIntertwiner:
    """Isometry from the symmetric N-qubit space into qubit (x) spin-j."""

    n_inputs: int
    j2: int  # doubled auxiliary spin
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        shape = (2 * (self.j2 + 1), self.n_inputs + 1)
        if m.shape != shape:
            raise ValidationError(f"expected intertwiner shape {shape}, got {m.shape}")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def j(self) -> float:
        return self.j2 / 2.0

    @property
    def aux_dim(self) -> int:
        return self.j2 + 1

    def isometry_defect(self) -> float:
        v = self.matrix
        return float(np.abs(v.conj().T @ v - np.eye(self.n_inputs + 1)).max())

    def intertwining_defect(self, u: np.ndarray) -> float:
        """Max-norm of V D_in(U) - (U (x) D_j(U)) V for a 2x2 unitary U."""
        d_in = symmetric_power_matrix(u, self.n_inputs)
        d_aux = symmetric_power_matrix(u, self.j2) if self.j2 > 0 else np.eye(1)
        lhs = self.matrix @ d_in
        rhs = np.kron(np.asarray(u), d_aux) @ self.matrix
        return float(np.abs(lhs - rhs).max())


def build_intertwiner(n_inputs: int, j) -> CGIntertwiner:
    """Clebsch-Gordan columns <1/2 m1; j m2 | N/2 m>, m running down the Dicke index.

    Basis maps: input Dicke index k has m = N/2 - k; output row (i, a)
    has qubit m1 = 1/2 - i and auxiliary m2 = j - a, flattened as
    i * (2j + 1) + a.
    """
    if n_inputs < 1:
        raise ValidationError("n_inputs must be >= 1")
    j2 = _doubled(j)
    if j2 < 0 or j2 not in (n_inputs - 1, n_inputs + 1):
        raise ValidationError(
            f"j must be N/2 - 1/2 or N/2 + 1/2 (2j in {{{n_inputs - 1}, {n_inputs + 1}}}), got 2j = {j2}"
        )
    aux_dim = j2 + 1
    v = np.zeros((2 * aux_dim, n_inputs + 1))
    for k in range(n_inputs + 1):
        m_2 = n_inputs - 2 * k
        for i in range(2):
            m1_2 = 1 - 2 * i
            m2_2 = m_2 - m1_2
            if abs(m2_2) > j2:
                continue
            a = (j2 - m2_2) // 2
            v[i * aux_dim + a, k] = cg_with_half(j2, n_inputs, m1_2, m2_2)
    return CGIntertwiner(n_inputs, j2, v)


def extremal_channel_apply(intertwiner: CGIntertwiner, rho: SymDensity) -> DensityMatrix:
    """Push a symmetric state through V and trace out the spin-j factor."""
    if rho.total != intertwiner.n_inputs:
        raise ValidationError(
            f"channel expects {intertwiner.n_inputs} input qubits, state has {rho.total}"
        )
    mat = sym_to_computational(rho)
    return DensityMatrix(_trace_out_aux(intertwiner, mat))


def _trace_out_aux(intertwiner: CGIntertwiner, mat: np.ndarray) -> np.ndarray:
    v = intertwiner.matrix
    w = v @ mat @ v.conj().T
    a = intertwiner.aux_dim
    return np.einsum("iaja->ij", w.reshape(2, a, 2, a))


def extremal_channel(n_inputs: int, j):
    """The extremal channel T_j as a raw matrix callable."""
    inter = build_intertwiner(n_inputs, j)

    def channel(mat: np.ndarray) -> np.ndarray:
        return _trace_out_aux(inter, np.asarray(mat, dtype=np.complex128))

    return channel


def apply_channel(channel, rho: SymDensity) -> DensityMatrix:
    return DensityMatrix(channel(sym_to_computational(rho)))


def product_dicke_matrix(psi_vec: np.ndarray, n_inputs: int) -> np.ndarray:
    """sigma^(x)N as a computational-frame Dicke matrix for amplitudes psi_vec."""
    a, b = psi_vec[0], psi_vec[1]
    c = np.array(
        [sqrt(comb(n_inputs, k)) * a ** (n_inputs - k) * b**k for k in range(n_inputs + 1)]
    )
    return np.outer(c, c.conj())


def _self_overlap(channel, psi_vec: np.ndarray, n_inputs: int) -> float:
    out = channel(product_dicke_matrix(psi_vec, n_inputs))
    return float(np.real(np.vdot(psi_vec, out @ psi_vec)))


def _bloch_angles(psi_vec: np.ndarray) -> tuple[float, float]:
    a, b = psi_vec
    theta = 2.0 * np.arctan2(abs(b), abs(a))
    phi = float(np.angle(b) - np.angle(a))
    return float(theta), phi


def _angles_state(theta: float, phi: float) -> np.ndarray:
    return np.array([np.cos(theta / 2.0), np.sin(theta / 2.0) * np.exp(1j * phi)])


_GOLDEN = (sqrt(5.0) - 1.0) / 2.0


def _golden_max(fn, lo: float, hi: float, iters: int = 40) -> tuple[float, float]:
    """Plain golden-section maximization on a fixed interval."""
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(iters):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = fn(d)
    x = (a + b) / 2.0
    return x, fn(x)


def delta_of_channel(channel, n_inputs: int, n_probes: int = 200, seed=0, refine: bool = True) -> float:
    """Error functional: max over pure inputs of Tr[sigma T(sigma^(x)N)].

    Haar probes followed by golden-section refinement of the Bloch angles
    around the best probe. Universal channels have a flat profile, so the
    probe stage alone is already exact for them.
    """
    probes = haar_state_batch(n_probes, seed)
    values = [_self_overlap(channel, p, n_inputs) for p in probes]
    best_idx = int(np.argmax(values))
    best = values[best_idx]
    if not refine:
        return best
    theta, phi = _bloch_angles(probes[best_idx])
    for _ in range(2):
        theta, val = _golden_max(
            lambda t: _self_overlap(channel, _angles_state(t, phi), n_inputs),
            theta - 0.6,
            theta + 0.6,
        )
        phi, val = _golden_max(
            lambda p: _self_overlap(channel, _angles_state(theta, p), n_inputs),
            phi - 0.9,
            phi + 0.9,
        )
    return max(best, val)


@dataclass(frozen=True)
class ExtremalChannelReport:
    """Flat fidelity profile and error value of one extremal channel."""

    j: float
    delta: float
    fidelity_profile: tuple[tuple[PureQubit, float], ...]

    def __post_init__(self):
        values = [f for _, f in self.fidelity_profile]
        if values and max(values) - min(values) > 1e-10:
            raise ValidationError("fidelity profile is not flat: channel not universal")


def extremal_channel_report(n_inputs: int, j, n_probes: int = 50, seed=0) -> ExtremalChannelReport:
    channel = extremal_channel(n_inputs, j)
    probes = haar_state_batch(n_probes, seed)
    profile = []
    for vec in probes:
        fid = 1.0 - _self_overlap(channel, vec, n_inputs)
        profile.append((PureQubit.from_vector(vec), fid))
    delta = delta_of_channel(channel, n_inputs, seed=seed)
    return ExtremalChannelReport(j=float(j), delta=delta, fidelity_profile=tuple(profile))


class TwirledChannel:
    """Monte Carlo average of rotated copies of a base channel.

    The sample unitaries are drawn once at construction from a seeded
    counter-based stream, so the twirled channel is a pure function of
    (base channel, samples, seed).
    """

    def __init__(self, channel, n_inputs: int, samples: int, seed):
        if samples < 1_000:
            raise ValidationError("twirl needs at least 1000 samples")
        self.base = channel
        self.n_inputs = n_inputs
        self.samples = samples
        rng = philox_rng(seed)
        self._unitaries = [haar_unitary(rng) for _ in range(samples)]
        self._sym_powers = [symmetric_power_matrix(u, n_inputs) for u in self._unitaries]

    def __call__(self, mat: np.ndarray) -> np.ndarray:
        mat = np.asarray(mat, dtype=np.complex128)
        out = np.zeros((2, 2), dtype=np.complex128)
        for u, s in zip(self._unitaries, self._sym_powers):
            rotated = s @ mat @ s.conj().T
            out += u.conj().T @ self.base(rotated) @ u
        return out / self.samples

    def probe_values(self, psi_vec: np.ndarray) -> np.ndarray:
        """Per-sample self-overlap values at one probe (for error bars)."""
        sigma = np.outer(psi_vec, psi_vec.conj())
        mat = product_dicke_matrix(psi_vec, self.n_inputs)
        vals = np.empty(self.samples)
        for idx, (u, s) in enumerate(zip(self._unitaries, self._sym_powers)):
            rotated = s @ mat @ s.conj().T
            out = u.conj().T @ self.base(rotated) @ u
            vals[idx] = np.real(np.trace(sigma @ out))
        return vals


def twirl_channel(channel, n_inputs: int, samples: int, seed) -> TwirledChannel:
    return TwirledChannel(channel, n_inputs, samples, seed)


def _splitting_tensor(n_inputs: int) -> np.ndarray:
    n = n_inputs
    b = np.zeros((n + 1, 2, n + 2))
    for k in range(n + 2):
        for i in range(2):
            if 0 <= k - i <= n:
                b[k - i, i, k] = sqrt(comb(n, k - i) / comb(n + 1, k))
    return np.einsum("aik,bjk->aibj", b, b)


def mean_self_overlap(channel, n_inputs: int) -> float:
    """Haar average of Tr[sigma T(sigma^(x)N)]: an affine twirl invariant."""
    proj = _splitting_tensor(n_inputs)
    n = n_inputs
    total = 0.0
    basis = np.eye(n + 1)
    for kappa in range(n + 1):
        for mu in range(n + 1):
            out = channel(np.outer(basis[kappa], basis[mu]))
            total += np.real(np.einsum("ai,ia->", out, proj[kappa, :, mu, :]))
    return float(total / (n + 2))


class UniversalChannel:
    """Convex combination of the two extremal channels."""

    def __init__(self, n_inputs: int, weight_keep: float):
        if not -1e-9 <= weight_keep <= 1.0 + 1e-9:
            raise ValidationError(f"mixing weight {weight_keep!r} outside [0, 1]")
        self.n_inputs = n_inputs
        self.weight_keep = float(min(1.0, max(0.0, weight_keep)))
        self._keep = extremal_channel(n_inputs, (n_inputs - 1) / 2.0)
        self._flip = extremal_channel(n_inputs, (n_inputs + 1) / 2.0)

    def __call__(self, mat: np.ndarray) -> np.ndarray:
        lam = self.weight_keep
        return lam * self._keep(mat) + (1.0 - lam) * self._flip(mat)

    @property
    def delta(self) -> float:
        lam = self.weight_keep
        return lam * 1.0 + (1.0 - lam) / (self.n_inputs + 2)


def exact_twirl(channel, n_inputs: int) -> UniversalChannel:
    """Project a channel onto the universal segment by matching the twirl invariant.

    The Haar-averaged self-overlap is affine, twirl invariant, and equals
    the (flat) error value on universal channels, so it pins the unique
    universal channel the twirl converges to.
    """
    m = mean_self_overlap(channel, n_inputs)
    weight = ((n_inputs + 2) * m - 1.0) / (n_inputs + 1)
    return UniversalChannel(n_inputs, weight)


def random_channel(n_inputs: int, seed, aux_dim: int = 3):
    """Haar-random isometry channel from the symmetric input space to one qubit."""
    rng = philox_rng(seed)
    rows = 2 * aux_dim
    if rows < n_inputs + 1:
        raise ValidationError("aux_dim too small for an isometry")
    z = rng.normal(size=(rows, n_inputs + 1)) + 1j * rng.normal(size=(rows, n_inputs + 1))
    v, _ = np.linalg.qr(z)

    def channel(mat: np.ndarray) -> np.ndarray:
        w = v @ np.asarray(mat, dtype=np.complex128) @ v.conj().T
        return np.einsum("iaja->ij", w.reshape(2, aux_dim, 2, aux_dim))

    return channel


def mix_channels(channels, weights):
    weights = [float(w) for w in weights]
    if abs(sum(weights) - 1.0) > 1e-12 or any(w < 0 for w in weights):
        raise ValidationError("weights must be a convex combination")

    def channel(mat: np.ndarray) -> np.ndarray:
        return sum(w * ch(mat) for w, ch in zip(weights, channels))

    return channel
