"""Named verification checks over every formula the package reproduces.

Each check measures a worst-case deviation against its law and compares it
to a pinned tolerance. `quick` covers N, M <= 3 in a few seconds; `full`
adds the full-tensor cross-checks (N + 2M <= 12) and million-sample Monte
Carlo runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import dicke, estimation, gate, optimality, qubit, restricted, tensor_oracle
from .qubit import PureQubit, haar_state_batch, philox_rng


@dataclass(frozen=True)
class CheckResult:
    name: str
    deviation: float
    tolerance: float
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        msg = f"{status}  {self.name}: deviation {self.deviation:.3e} (tolerance {self.tolerance:.1e})"
        if self.detail:
            msg += f" [{self.detail}]"
        return msg


@dataclass(frozen=True)
class VerificationReport:
    level: str
    checks: tuple[CheckResult, ...]
    passed: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "passed", all(c.passed for c in self.checks))

    def lines(self) -> list[str]:
        out = [c.line() for c in self.checks]
        n_fail = sum(not c.passed for c in self.checks)
        summary = "all checks passed" if self.passed else f"{n_fail} check(s) FAILED"
        out.append(f"{self.level}: {len(self.checks)} checks, {summary}")
        return out


def _states(count: int, seed) -> list[PureQubit]:
    return [PureQubit.from_vector(v) for v in haar_state_batch(count, seed)]


def _check_complement_involution(seed, full):
    dev = 0.0
    for psi in _states(100, [seed, 1]):
        comp = qubit.complement(psi)
        dev = max(dev, abs(psi.overlap(comp)))
        twice = qubit.complement(comp)
        dev = max(dev, float(np.abs(twice.vector + psi.vector).max()))
        dev = max(dev, abs(qubit.fidelity(psi.density(), comp.density())))
    return dev, 1e-12, "double application = -identity; output orthogonal"


def _check_bloch_antipode(seed, full):
    dev = 0.0
    for psi in _states(50, [seed, 2]):
        b_in = psi.bloch().as_array()
        b_out = qubit.complement(psi).bloch().as_array()
        dev = max(dev, float(np.abs(b_in + b_out).max()))
    return dev, 1e-10, "complement negates the Bloch vector"


def _check_gamma_normalization(seed, full):
    dev = 0.0
    hi = 8 if full else 6
    for n in range(1, hi + 1):
        for m in range(1, hi + 1):
            g = gate.gate_coefficients(n, m)
            dev = max(dev, abs(float(np.sum(g.gamma**2)) - 1.0))
            if sum(g.gamma_squared_exact()) != 1:
                dev = max(dev, 1.0)
            signs = np.sign(g.gamma)
            if not np.array_equal(signs, (-1.0) ** np.arange(m + 1)):
                dev = max(dev, 1.0)
    return dev, 1e-12, "sum gamma_j^2 = 1 with alternating signs"


def _check_fidelity_law(seed, full):
    hi = 4 if full else 3
    count = 50 if full else 5
    dev = 0.0
    for n in range(1, hi + 1):
        want = (n + 1) / (n + 2)
        for m in range(1, hi + 1):
            for psi in _states(count, [seed, 3, n, m]):
                rep = gate.gate_report(psi, n, m)
                dev = max(dev, abs(rep.fidelity_not - want))
    return dev, 1e-10, "complement fidelity (N+1)/(N+2), independent of M and the input"


def _check_scaled_form(seed, full):
    hi = 4 if full else 3
    dev = 0.0
    for n in range(1, hi + 1):
        s_n = n / (n + 2)
        for m in range(1, hi + 1):
            for psi in _states(3, [seed, 4, n, m]):
                out = gate.complement_output(gate.apply_unot(psi, n, m))
                target = s_n * qubit.complement(psi).density().entries + (1 - s_n) / 2 * np.eye(2)
                dev = max(dev, qubit.trace_norm(out.entries - target))
    return dev, 1e-10, "output = s_N sigma_perp + ((1-s_N)/2) I with s_N = N/(N+2)"


def _check_clone_scaling(seed, full):
    hi = 4 if full else 3
    dev = 0.0
    for n in range(1, hi + 1):
        for m in range(1, hi + 1):
            s = float(gate.clone_scaling_exact(n, m))
            for psi in _states(3, [seed, 5, n, m]):
                out = gate.clone_output(gate.apply_unot(psi, n, m))
                target = s * psi.density().entries + (1 - s) / 2 * np.eye(2)
                dev = max(dev, qubit.trace_norm(out.entries - target))
    return dev, 1e-10, "clone scaling N/(N+2) + 2N/((N+M)(N+2))"


def _check_estimation_coincidence(seed, full):
    hi = 4
    dev = 0.0
    for n in range(1, hi + 1):
        for psi in _states(3, [seed, 6, n]):
            classical = estimation.classical_unot_analytic(psi, n).out
            quantum = gate.complement_output(gate.apply_unot(psi, n, 2))
            dev = max(dev, qubit.trace_norm(classical.entries - quantum.entries))
    return dev, 1e-10, "measurement-based output equals the gate output"


def _check_overlap_preservation(seed, full):
    hi = 4 if full else 3
    dev = 0.0
    rng = philox_rng([seed, 7])
    for n in range(1, hi + 1):
        for m in range(1, hi + 1):
            for _ in range(5):
                z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
                z /= np.linalg.norm(z, axis=1, keepdims=True)
                psi, phi = PureQubit.from_vector(z[0]), PureQubit.from_vector(z[1])
                got = gate.apply_unot(psi, n, m).overlap(gate.apply_unot(phi, n, m))
                want = psi.overlap(phi) ** n
                dev = max(dev, abs(got - want))
    return dev, 1e-10, "gate outputs inherit the input overlap <psi,phi>^N"


def _check_extremal_errors(seed, full):
    hi = 5 if full else 3
    dev = 0.0
    for n in range(1, hi + 1):
        keep = optimality.delta_of_channel(
            optimality.extremal_channel(n, (n - 1) / 2), n, n_probes=40, seed=[seed, 8, n]
        )
        flip = optimality.delta_of_channel(
            optimality.extremal_channel(n, (n + 1) / 2), n, n_probes=40, seed=[seed, 9, n]
        )
        dev = max(dev, abs(keep - 1.0), abs(flip - 1.0 / (n + 2)))
    return dev, 1e-10, "extremal channel errors are exactly {1, 1/(N+2)}"


def _check_pairwise_ppt(seed, full):
    configs = [(1, 2), (2, 2), (2, 3), (3, 2)] if full else [(1, 2), (2, 2)]
    count = 20 if full else 5
    worst = 0.0
    for n, m in configs:
        for psi in _states(count, [seed, 10, n, m]):
            check = gate.check_pairwise_separability(gate.apply_unot(psi, n, m))
            worst = max(worst, -check.min_eigenvalue)
    return max(worst, 0.0), 1e-10, "every produced pair has positive partial transpose"


def _check_real_case(seed, full):
    dev = abs(restricted.real_estimation_fidelity(1) - 0.75)
    dev = max(dev, abs(restricted.real_estimation_fidelity(2) - (0.5 + math.sqrt(2) / 4)))
    values = [restricted.real_estimation_fidelity(n) for n in range(1, 31)]
    if any(b <= a for a, b in zip(values, values[1:])) or values[-1] >= 1.0:
        dev = max(dev, 1.0)
    psi = restricted.RealQubit(0.6, 0.8)
    flipped = restricted.perfect_real_not(psi)
    ideal = qubit.complement(PureQubit(psi.alpha, psi.beta))
    if (flipped.alpha, flipped.beta) != (ideal.alpha.real, ideal.beta.real):
        dev = max(dev, 1.0)
    return dev, 1e-12, "real-amplitude estimation fidelity and exact restricted complement"


def _check_estimation_mc(seed, full):
    samples = 1_000_000 if full else 30_000
    ns = range(1, 5) if full else (1, 2)
    worst = 0.0
    for n in ns:
        psi = _states(1, [seed, 11, n])[0]
        mc = estimation.classical_unot_montecarlo(psi, n, samples, [seed, 12, n])
        worst = max(worst, abs(mc.delta - 1.0 / (n + 2)) / mc.delta_stderr)
    return worst, 4.0, f"monte-carlo estimation error within 4 sigma ({samples} samples)"


def _check_twirl_dominance(seed, full):
    n_channels = 10 if full else 2
    samples = 3_000 if full else 1_500
    ns = (1, 2) if full else (1,)
    worst = -np.inf
    for n in ns:
        for idx in range(n_channels):
            base = optimality.random_channel(n, [seed, 13, n, idx])
            delta_base = optimality.delta_of_channel(base, n, n_probes=60, seed=[seed, 14, n, idx])
            twirled = optimality.twirl_channel(base, n, samples, [seed, 15, n, idx])
            # Twirled profiles are flat up to sampling noise; skip refinement.
            delta_tw = optimality.delta_of_channel(
                twirled, n, n_probes=10, seed=[seed, 16, n, idx], refine=False
            )
            probe = haar_state_batch(1, [seed, 17, n, idx])[0]
            sigma_hat = float(twirled.probe_values(probe).std(ddof=1) / math.sqrt(samples))
            worst = max(worst, (delta_tw - delta_base) / sigma_hat)
    return max(worst, 0.0), 3.0, "twirling never increases the error (3 sigma)"


def _check_dicke_reduction_oracle(seed, full):
    dev = 0.0
    rng = philox_rng([seed, 18])
    for n in range(2, 11):
        z = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
        z /= np.linalg.norm(z)
        frame = PureQubit.from_vector(haar_state_batch(1, [seed, 19, n])[0])
        dv = dicke.DickeVector(n, frame, z)
        full_vec = dicke.embed_dicke_vector(dv)
        oracle1 = qubit.reduce_vector(full_vec, [1])
        dev = max(dev, float(np.abs(dicke.reduce_single_qubit(dv).entries - oracle1).max()))
        oracle2 = qubit.reduce_vector(full_vec, [1, 2])
        dev = max(dev, float(np.abs(dicke.reduce_two_qubits(dv).entries - oracle2).max()))
    return dev, 1e-12, "closed-form reductions match brute-force partial traces"


def _check_dicke_orthonormality(seed, full):
    dev = 0.0
    for n in range(1, 9):
        frame = PureQubit.from_vector(haar_state_batch(1, [seed, 20, n])[0])
        basis = dicke.embed_basis(n, frame)
        gram = basis.conj().T @ basis
        dev = max(dev, float(np.abs(gram - np.eye(n + 1)).max()))
    return dev, 1e-12, "embedded Dicke bases are orthonormal"


def _check_full_tensor_gate(seed, full):
    dev = 0.0
    for n in range(1, 11):
        for m in range(1, 6):
            if n + 2 * m > tensor_oracle.MAX_ORACLE_QUBITS:
                continue
            sim = tensor_oracle.completed_unitary(n, m)
            dev = max(dev, sim.unitarity_defect())
            psi = _states(1, [seed, 21, n, m])[0]
            out_vec = tensor_oracle.simulate_product_input(sim, psi)
            joint = gate.apply_unot(psi, n, m)
            c_struct = gate.complement_output(joint).entries
            c_full = qubit.reduce_vector(out_vec, [n + 2 * m])
            dev = max(dev, float(np.abs(c_struct - c_full).max()))
            ab_struct = gate.clone_output(joint).entries
            ab_full = qubit.reduce_vector(out_vec, [1])
            dev = max(dev, float(np.abs(ab_struct - ab_full).max()))
            if m >= 2:
                pair_struct = dicke.reduce_two_qubits(joint.c_density()).entries
                pair_full = qubit.reduce_vector(out_vec, [n + 2 * m - 1, n + 2 * m])
                dev = max(dev, float(np.abs(pair_struct - pair_full).max()))
    return dev, 1e-10, "structured outputs match an explicit unitary completion (N + 2M <= 12)"


_QUICK_CHECKS = [
    ("complement involution and orthogonality", _check_complement_involution),
    ("complement is the Bloch antipode", _check_bloch_antipode),
    ("gate coefficient normalization", _check_gamma_normalization),
    ("complement fidelity law (N+1)/(N+2)", _check_fidelity_law),
    ("scaled output form s_N = N/(N+2)", _check_scaled_form),
    ("clone scaling law", _check_clone_scaling),
    ("estimation/gate output coincidence", _check_estimation_coincidence),
    ("overlap preservation <psi,phi>^N", _check_overlap_preservation),
    ("extremal channel errors {1, 1/(N+2)}", _check_extremal_errors),
    ("pairwise PPT of produced complements", _check_pairwise_ppt),
    ("real-amplitude restricted complement", _check_real_case),
    ("monte-carlo estimation error 1/(N+2)", _check_estimation_mc),
    ("twirl does not increase the error", _check_twirl_dominance),
]

_FULL_ONLY_CHECKS = [
    ("Dicke basis orthonormality", _check_dicke_orthonormality),
    ("closed-form reductions vs brute force", _check_dicke_reduction_oracle),
    ("full-tensor unitary-completion cross-check", _check_full_tensor_gate),
]


def run_checks(level: str = "quick", seed: int = 0) -> VerificationReport:
    if level not in ("quick", "full"):
        raise ValueError(f"level must be quick or full, got {level!r}")
    full = level == "full"
    plan = _QUICK_CHECKS + (_FULL_ONLY_CHECKS if full else [])
    results = []
    for name, fn in plan:
        try:
            deviation, tolerance, detail = fn(seed, full)
            results.append(
                CheckResult(name, float(deviation), tolerance, float(deviation) <= tolerance, detail)
            )
        except Exception as exc:  # a raising check is a failing check
            results.append(CheckResult(name, float("inf"), 0.0, False, f"raised {exc!r}"))
    return VerificationReport(level=level, checks=tuple(results))
