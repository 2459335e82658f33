import numpy as np
import pytest

from unotsim.dicke import (
    DickeBasisLabel,
    DickeVector,
    SymDensity,
    dicke_to_computational,
    embed_basis,
    embed_dicke,
    embed_dicke_vector,
    frame_orthogonal,
    frame_unitary,
    product_state_in_dicke,
    reduce_single_qubit,
    reduce_two_qubits,
    symmetric_power_matrix,
)
from unotsim.errors import CapacityError, ValidationError
from unotsim.qubit import PureQubit, haar_state_batch

from conftest import (
    brute_vector_reduce,
    dicke_coeff_product,
    kron_all,
    random_states,
    random_su2,
    symmetrize_product,
)

ZERO = PureQubit(1, 0)
PLUS = PureQubit(1 / np.sqrt(2), 1 / np.sqrt(2))


class TestEmbedding:
    def test_single_qubit(self):
        assert np.allclose(embed_dicke(DickeBasisLabel(1, 0), ZERO), [1, 0])
        assert np.allclose(embed_dicke(DickeBasisLabel(1, 1), ZERO), [0, 1])

    def test_two_qubit_symmetric(self):
        got = embed_dicke(DickeBasisLabel(2, 1), ZERO)
        assert np.allclose(got, np.array([0, 1, 1, 0]) / np.sqrt(2))

    def test_three_qubit_vs_symmetrizer_oracle(self):
        got = embed_dicke(DickeBasisLabel(3, 1), ZERO)
        e0, e1 = np.array([1, 0], dtype=complex), np.array([0, 1], dtype=complex)
        want = symmetrize_product([e0, e0, e1])
        assert np.abs(got - want).max() < 1e-12

    def test_generic_frame_vs_symmetrizer_oracle(self, rng):
        for n, k in [(2, 1), (3, 2), (4, 2), (5, 1)]:
            frame = random_states(1, seed=300 + n * 10 + k)[0]
            perp = frame_orthogonal(frame)
            factors = [perp.vector] * k + [frame.vector] * (n - k)
            want = symmetrize_product(factors)
            got = embed_dicke(DickeBasisLabel(n, k), frame)
            # Symmetrization fixes the vector up to the (real positive) norm.
            assert min(np.abs(got - want).max(), np.abs(got + want).max()) < 1e-12

    def test_permutation_invariance(self, rng):
        frame = random_states(1, seed=301)[0]
        vec = embed_dicke(DickeBasisLabel(4, 2), frame).reshape((2,) * 4)
        for perm in [(1, 0, 2, 3), (3, 2, 1, 0), (2, 0, 3, 1)]:
            assert np.abs(vec.transpose(perm) - vec).max() < 1e-12

    def test_orthonormality(self):
        for n in range(1, 9):
            frame = random_states(1, seed=302 + n)[0]
            basis = embed_basis(n, frame)
            gram = basis.conj().T @ basis
            assert np.abs(gram - np.eye(n + 1)).max() < 1e-12

    def test_capacity_bound(self):
        with pytest.raises(CapacityError):
            embed_dicke(DickeBasisLabel(15, 0), ZERO)

    def test_label_validation(self):
        with pytest.raises(ValidationError):
            DickeBasisLabel(3, 4)


class TestProductState:
    def test_own_frame(self):
        dv = product_state_in_dicke(ZERO, 3, ZERO)
        assert np.allclose(dv.coeffs, [1, 0, 0, 0])

    def test_plus_in_zero_frame_single(self):
        dv = product_state_in_dicke(PLUS, 1, ZERO)
        assert np.allclose(dv.coeffs, [1 / np.sqrt(2), 1 / np.sqrt(2)])

    def test_plus_in_zero_frame_two(self):
        dv = product_state_in_dicke(PLUS, 2, ZERO)
        assert np.allclose(dv.coeffs, [0.5, 1 / np.sqrt(2), 0.5])

    def test_against_embedding_oracle(self):
        # Project the full product tensor onto the embedded Dicke basis.
        psi, frame = random_states(2, seed=303)
        n = 3
        dv = product_state_in_dicke(psi, n, frame)
        product = kron_all([psi.vector] * n)
        want = embed_basis(n, frame).conj().T @ product
        assert np.abs(dv.coeffs - want).max() < 1e-12

    def test_unit_norm_any_frame(self):
        for idx, (psi, frame) in enumerate(zip(random_states(10, 304), random_states(10, 305))):
            dv = product_state_in_dicke(psi, 4, frame)
            assert abs(np.vdot(dv.coeffs, dv.coeffs) - 1) < 1e-12


class TestSymmetricPower:
    def test_unitary_and_composition(self, rng):
        for n in (1, 3, 5):
            u, v = random_su2(rng), random_su2(rng)
            su, sv = symmetric_power_matrix(u, n), symmetric_power_matrix(v, n)
            assert np.abs(su @ su.conj().T - np.eye(n + 1)).max() < 1e-12
            suv = symmetric_power_matrix(u @ v, n)
            assert np.abs(su @ sv - suv).max() < 1e-12

    def test_matches_full_tensor_action(self, rng):
        n = 4
        frame = random_states(1, seed=306)[0]
        u = random_su2(rng)
        basis = embed_basis(n, frame)
        u_full = kron_all([u] * n)
        psi = random_states(1, seed=307)[0]
        dv = product_state_in_dicke(psi, n, frame)
        rotated_full = u_full @ (basis @ dv.coeffs)
        rotated_coeffs = (
            embed_basis(n, frame).conj().T @ rotated_full
        )  # still in the same frame basis
        # Frame-basis coefficients transform with the symmetric power of the
        # frame-basis representation of u.
        u_frame = frame_unitary(frame).conj().T @ u @ frame_unitary(frame)
        got = symmetric_power_matrix(u_frame, n) @ dv.coeffs
        assert np.abs(got - rotated_coeffs).max() < 1e-11

    def test_computational_conversion(self):
        psi = random_states(1, seed=308)[0]
        n = 5
        dv = product_state_in_dicke(psi, n, psi)
        comp = dicke_to_computational(dv)
        assert np.abs(comp - dicke_coeff_product(psi.vector, n)).max() < 1e-12


class TestReductions:
    def test_pure_dicke_diagonal_case(self):
        for n, k in [(3, 1), (5, 2), (6, 6)]:
            frame = random_states(1, seed=310 + n)[0]
            coeffs = np.zeros(n + 1)
            coeffs[k] = 1.0
            red = reduce_single_qubit(DickeVector(n, frame, coeffs))
            sigma = frame.density().entries
            sigma_perp = frame_orthogonal(frame).density().entries
            want = (n - k) / n * sigma + k / n * sigma_perp
            assert np.abs(red.entries - want).max() < 1e-12

    def test_single_qubit_identity(self):
        psi = random_states(1, seed=311)[0]
        dv = product_state_in_dicke(psi, 1, psi)
        red = reduce_single_qubit(dv)
        assert np.abs(red.entries - psi.density().entries).max() < 1e-12

    def test_cross_term_superposition(self):
        # (|k=0> + |k=1>)/sqrt(2) on one qubit is the pure state (f + f_perp)/sqrt(2).
        frame = random_states(1, seed=312)[0]
        dv = DickeVector(1, frame, np.array([1, 1]) / np.sqrt(2))
        red = reduce_single_qubit(dv)
        plus = (frame.vector + frame_orthogonal(frame).vector) / np.sqrt(2)
        assert np.abs(red.entries - np.outer(plus, plus.conj())).max() < 1e-12
        # In the frame basis the off-diagonal element is 1/2.
        u = frame_unitary(frame)
        in_frame = u.conj().T @ red.entries @ u
        assert in_frame[0, 1] == pytest.approx(0.5, abs=1e-12)

    def test_single_qubit_vs_oracle_random_states(self, rng):
        for n in range(1, 11):
            z = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
            z /= np.linalg.norm(z)
            frame = random_states(1, seed=313 + n)[0]
            dv = DickeVector(n, frame, z)
            want = brute_vector_reduce(embed_dicke_vector(dv), n, [1])
            assert np.abs(reduce_single_qubit(dv).entries - want).max() < 1e-12

    def test_two_qubit_product_case(self):
        frame = random_states(1, seed=314)[0]
        coeffs = np.zeros(4)
        coeffs[0] = 1.0
        red = reduce_two_qubits(DickeVector(3, frame, coeffs))
        ff = kron_all([frame.vector, frame.vector])
        assert np.abs(red.entries - np.outer(ff, ff.conj())).max() < 1e-12

    def test_two_qubit_n2_is_identity(self):
        frame = random_states(1, seed=315)[0]
        coeffs = np.array([0, 1, 0], dtype=complex)
        red = reduce_two_qubits(DickeVector(2, frame, coeffs))
        f, p = frame.vector, frame_orthogonal(frame).vector
        sym = (np.kron(f, p) + np.kron(p, f)) / np.sqrt(2)
        assert np.abs(red.entries - np.outer(sym, sym.conj())).max() < 1e-12

    def test_two_qubit_vs_oracle(self, rng):
        for n in [2, 3, 4, 6, 10]:
            z = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
            z /= np.linalg.norm(z)
            frame = random_states(1, seed=316 + n)[0]
            dv = DickeVector(n, frame, z)
            want = brute_vector_reduce(embed_dicke_vector(dv), n, [1, 2])
            assert np.abs(reduce_two_qubits(dv).entries - want).max() < 1e-12

    def test_dicke_four_two_vs_oracle(self):
        frame = random_states(1, seed=317)[0]
        coeffs = np.zeros(5)
        coeffs[2] = 1.0
        dv = DickeVector(4, frame, coeffs)
        want = brute_vector_reduce(embed_dicke_vector(dv), 4, [2, 3])
        assert np.abs(reduce_two_qubits(dv).entries - want).max() < 1e-12

    def test_mixed_sym_density_vs_oracle(self, rng):
        n = 5
        frame = random_states(1, seed=318)[0]
        z = rng.normal(size=(n + 1, n + 1)) + 1j * rng.normal(size=(n + 1, n + 1))
        rho = z @ z.conj().T
        rho /= np.trace(rho)
        sd = SymDensity(n, frame, rho)
        basis = embed_basis(n, frame)
        full = basis @ rho @ basis.conj().T
        from conftest import brute_partial_trace

        want1 = brute_partial_trace(full, n, [1])
        want2 = brute_partial_trace(full, n, [1, 2])
        assert np.abs(reduce_single_qubit(sd).entries - want1).max() < 1e-12
        assert np.abs(reduce_two_qubits(sd).entries - want2).max() < 1e-12

    def test_frame_covariance(self, rng):
        # Rotating the frame then reducing equals reducing then rotating.
        for trial in range(20):
            n = 2 + trial % 5
            psi = random_states(1, seed=320 + trial)[0]
            u = random_su2(rng)
            z = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
            z /= np.linalg.norm(z)
            dv = DickeVector(n, psi, z)
            red = reduce_single_qubit(dv).entries
            rotated_frame = PureQubit.from_vector(u @ psi.vector)
            dv_rot = DickeVector(n, rotated_frame, z)
            red_rot = reduce_single_qubit(dv_rot).entries
            assert np.abs(u @ red @ u.conj().T - red_rot).max() < 1e-11

    def test_two_qubit_requires_two(self):
        psi = random_states(1, seed=322)[0]
        with pytest.raises(ValidationError):
            reduce_two_qubits(product_state_in_dicke(psi, 1, psi))

    def test_dimension_is_total_plus_one(self):
        with pytest.raises(ValidationError):
            DickeVector(3, ZERO, np.array([1.0, 0.0, 0.0]))
