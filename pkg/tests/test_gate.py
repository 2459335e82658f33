from fractions import Fraction
from math import comb, sqrt

import numpy as np
import pytest

from unotsim.dicke import reduce_two_qubits
from unotsim.errors import CapacityError, ValidationError
from unotsim.gate import (
    GateCoefficients,
    JointOutputState,
    apply_unot,
    c_index_label,
    check_pairwise_separability,
    clone_output,
    clone_scaling_exact,
    complement_output,
    gate_coefficients,
    gate_report,
    not_scaling_exact,
)
from unotsim.qubit import (
    DensityMatrix,
    PureQubit,
    ScaledStateForm,
    complement,
    fidelity,
    is_ppt,
    trace_norm,
)

from conftest import kron_all, random_states, random_su2

ZERO = PureQubit(1, 0)


def exact_gamma_squared(n, m):
    # Independent rational evaluation of the printed binomial expression.
    return [Fraction(comb(n + m - j, n), comb(n + m + 1, m)) for j in range(m + 1)]


class TestGateCoefficients:
    def test_one_one(self):
        g = gate_coefficients(1, 1)
        assert g.gamma == pytest.approx([sqrt(2 / 3), -sqrt(1 / 3)], abs=1e-15)

    def test_one_two(self):
        g = gate_coefficients(1, 2)
        assert g.gamma == pytest.approx([sqrt(1 / 2), -sqrt(1 / 3), sqrt(1 / 6)], abs=1e-15)

    def test_squares_match_exact_rationals(self):
        for n in range(1, 7):
            for m in range(1, 7):
                g = gate_coefficients(n, m)
                want = exact_gamma_squared(n, m)
                assert g.gamma_squared_exact() == want
                assert np.abs(g.gamma**2 - np.array([float(w) for w in want])).max() < 1e-14

    def test_normalization_exact(self):
        for n in range(1, 7):
            for m in range(1, 7):
                assert sum(exact_gamma_squared(n, m)) == 1
                g = gate_coefficients(n, m)
                assert abs(float(np.sum(g.gamma**2)) - 1.0) < 1e-13

    def test_alternating_signs(self):
        g = gate_coefficients(3, 5)
        assert np.array_equal(np.sign(g.gamma), (-1.0) ** np.arange(6))

    def test_capacity_bound(self):
        with pytest.raises(CapacityError):
            gate_coefficients(30, 30)

    def test_invalid_counts(self):
        with pytest.raises(ValidationError):
            gate_coefficients(0, 1)


class TestApplyUnot:
    def test_pattern_n1m1(self):
        joint = apply_unot(ZERO, 1, 1)
        coeffs = joint.coeffs
        assert coeffs[0, 0] == pytest.approx(sqrt(2 / 3), abs=1e-15)
        assert coeffs[1, 1] == pytest.approx(-sqrt(1 / 3), abs=1e-15)
        assert np.count_nonzero(coeffs) == 2
        # Column j = 0 is the c state with every qubit complemented (k = M).
        assert c_index_label(0, 1).k == 1
        assert c_index_label(1, 1).k == 0

    def test_unit_norm(self):
        for n, m in [(1, 1), (2, 3), (4, 2)]:
            psi = random_states(1, seed=400 + n + m)[0]
            assert np.linalg.norm(apply_unot(psi, n, m).coeffs) == pytest.approx(1.0, abs=1e-13)

    def test_overlap_preservation(self):
        # <U(N psi (x) X), U(N phi (x) X)> = <psi, phi>^N over 50 random pairs.
        worst = 0.0
        for n in range(1, 5):
            for m in range(1, 5):
                states = random_states(10, seed=410 + 10 * n + m)
                for psi, phi in zip(states[:5], states[5:]):
                    got = apply_unot(psi, n, m).overlap(apply_unot(phi, n, m))
                    worst = max(worst, abs(got - psi.overlap(phi) ** n))
        assert worst < 1e-10

    def test_frame_covariance(self, rng):
        from unotsim.dicke import symmetric_power_matrix

        for trial in range(10):
            n, m = 1 + trial % 3, 1 + trial % 2
            psi = random_states(1, seed=420 + trial)[0]
            u = random_su2(rng)
            rotated = PureQubit.from_vector(u @ psi.vector)
            direct = apply_unot(rotated, n, m).to_computational_tensor()
            base = apply_unot(psi, n, m).to_computational_tensor()
            pushed = symmetric_power_matrix(u, n + m) @ base @ symmetric_power_matrix(u, m).T
            assert np.abs(direct - pushed).max() < 1e-11

    def test_validation(self):
        with pytest.raises(ValidationError):
            JointOutputState(1, 1, ZERO, np.ones((3, 2)))


class TestComplementOutput:
    def test_diagonal_n1m1(self):
        out = complement_output(apply_unot(ZERO, 1, 1))
        assert np.allclose(out.entries, np.diag([1 / 3, 2 / 3]), atol=1e-12)

    def test_n2_fidelity_any_m(self):
        for m in range(1, 5):
            psi = random_states(1, seed=430 + m)[0]
            out = complement_output(apply_unot(psi, 2, m))
            assert fidelity(complement(psi).density(), out) == pytest.approx(0.75, abs=1e-10)

    def test_n5_m3_fidelity(self):
        psi = random_states(1, seed=431)[0]
        out = complement_output(apply_unot(psi, 5, 3))
        assert fidelity(complement(psi).density(), out) == pytest.approx(6 / 7, abs=1e-10)

    def test_scaled_form(self):
        for n, m in [(1, 1), (2, 2), (3, 1), (4, 4)]:
            psi = random_states(1, seed=432 + n + m)[0]
            out = complement_output(apply_unot(psi, n, m))
            s = float(not_scaling_exact(n))
            want = s * complement(psi).density().entries + (1 - s) / 2 * np.eye(2)
            assert trace_norm(out.entries - want) < 1e-10

    def test_universality_and_m_independence(self):
        for n in range(1, 5):
            want = (n + 1) / (n + 2)
            fids = []
            for m in range(1, 5):
                for psi in random_states(25, seed=440 + 10 * n + m):
                    out = complement_output(apply_unot(psi, n, m))
                    fids.append(fidelity(complement(psi).density(), out))
            fids = np.array(fids)
            assert np.abs(fids - want).max() < 1e-10

    def test_bloch_inversion(self):
        # The gate acts on Bloch vectors as b -> -s_N b.
        for n in (1, 2, 3):
            psi = random_states(1, seed=450 + n)[0]
            out = complement_output(apply_unot(psi, n, 2))
            s = float(not_scaling_exact(n))
            got = out.bloch().as_array()
            assert np.abs(got + s * psi.bloch().as_array()).max() < 1e-10


class TestCloneOutput:
    def test_one_to_two_fidelity(self):
        psi = random_states(1, seed=460)[0]
        out = clone_output(apply_unot(psi, 1, 1))
        assert clone_scaling_exact(1, 1) == Fraction(2, 3)
        assert fidelity(psi.density(), out) == pytest.approx(5 / 6, abs=1e-10)

    def test_two_two_values(self):
        assert clone_scaling_exact(2, 2) == Fraction(3, 4)
        psi = random_states(1, seed=461)[0]
        out = clone_output(apply_unot(psi, 2, 2))
        form, residual = ScaledStateForm.fit(out, psi.density())
        assert form.scaling == pytest.approx(0.75, abs=1e-10)
        assert residual < 1e-10
        assert fidelity(psi.density(), out) == pytest.approx(0.875, abs=1e-10)

    def test_many_outputs_approach_estimation_scaling(self):
        # The clone shrink factor exceeds N/(N+2) by 2N/((N+M)(N+2)) -> 0.
        for n in range(2, 7):
            excess = clone_scaling_exact(n, 64) - not_scaling_exact(n)
            assert excess == Fraction(2 * n, (n + 64) * (n + 2))
            assert excess <= Fraction(2 * n, 66 * (n + 2))
        # In-capacity joint-state check of the same trend.
        psi = random_states(1, seed=462)[0]
        out = clone_output(apply_unot(psi, 2, 50))
        form, _ = ScaledStateForm.fit(out, psi.density())
        assert form.scaling == pytest.approx(float(clone_scaling_exact(2, 50)), abs=1e-10)

    def test_scaled_form_generic(self):
        for n, m in [(1, 3), (3, 2), (4, 1)]:
            psi = random_states(1, seed=463 + n + m)[0]
            out = clone_output(apply_unot(psi, n, m))
            s = float(clone_scaling_exact(n, m))
            want = s * psi.density().entries + (1 - s) / 2 * np.eye(2)
            assert trace_norm(out.entries - want) < 1e-10


class TestSeparability:
    def test_one_two_random(self):
        psi = random_states(1, seed=470)[0]
        check = check_pairwise_separability(apply_unot(psi, 1, 2))
        assert check.ppt
        assert check.min_eigenvalue >= -1e-10

    def test_two_three_many_states(self):
        for psi in random_states(20, seed=471):
            assert check_pairwise_separability(apply_unot(psi, 2, 3)).ppt

    def test_singlet_rejected_by_same_checker(self):
        e0, e1 = np.eye(2, dtype=complex)
        singlet = (kron_all([e0, e1]) - kron_all([e1, e0])) / np.sqrt(2)
        rho = DensityMatrix(np.outer(singlet, singlet.conj()))
        assert not is_ppt(rho)

    def test_requires_two_outputs(self):
        psi = random_states(1, seed=472)[0]
        with pytest.raises(ValidationError):
            check_pairwise_separability(apply_unot(psi, 2, 1))

    def test_pair_reduction_matches_weights(self):
        # The c-register pair state is the gamma^2-weighted Dicke mixture.
        psi = random_states(1, seed=473)[0]
        joint = apply_unot(psi, 1, 2)
        pair = reduce_two_qubits(joint.c_density())
        assert np.trace(pair.entries) == pytest.approx(1.0, abs=1e-12)


class TestGateReport:
    def test_report_fields(self):
        psi = random_states(1, seed=480)[0]
        rep = gate_report(psi, 2, 3)
        assert rep.fidelity_not == pytest.approx(3 / 4, abs=1e-10)
        assert rep.scaling_not == pytest.approx(0.5, abs=1e-10)
        assert rep.scaling_clone == pytest.approx(float(clone_scaling_exact(2, 3)), abs=1e-10)
        assert rep.fidelity_clone == pytest.approx((1 + 0.7) / 2, abs=1e-10)

    def test_report_rejects_out_of_range(self):
        psi = random_states(1, seed=481)[0]
        good = gate_report(psi, 1, 1)
        from dataclasses import replace

        with pytest.raises(ValidationError):
            replace(good, fidelity_not=1.5)
