import numpy as np
import pytest

from unotsim.dicke import reduce_two_qubits
from unotsim.errors import CapacityError
from unotsim.gate import apply_unot, clone_output, complement_output
from unotsim.qubit import reduce_vector
from unotsim.tensor_oracle import (
    completed_unitary,
    defined_columns,
    full_register_state,
    product_input_vector,
    simulate_product_input,
)

from conftest import brute_vector_reduce, random_states


class TestDefinedColumns:
    def test_columns_are_isometric(self):
        for n, m in [(1, 1), (2, 1), (1, 2), (3, 2)]:
            _, out_cols = defined_columns(n, m)
            gram = out_cols.conj().T @ out_cols
            assert np.abs(gram - np.eye(n + 1)).max() < 1e-12

    def test_linear_combination_reproduces_direct_formula(self):
        from conftest import dicke_coeff_product

        n, m = 2, 2
        _, out_cols = defined_columns(n, m)
        psi = random_states(1, seed=500)[0]
        want = full_register_state(psi, n, m)
        got = out_cols @ dicke_coeff_product(psi.vector, n)
        assert np.abs(got - want).max() < 1e-11

    def test_capacity(self):
        with pytest.raises(CapacityError):
            full_register_state(random_states(1, seed=501)[0], 9, 2)


class TestCompletedUnitary:
    def test_unitarity(self):
        gate = completed_unitary(2, 1)
        assert gate.unitarity_defect() < 1e-12

    def test_preserves_defined_columns(self):
        n, m = 1, 2
        gate = completed_unitary(n, m)
        in_cols, out_cols = defined_columns(n, m)
        for k in range(n + 1):
            assert np.abs(gate.apply(in_cols[:, k]) - out_cols[:, k]).max() < 1e-12

    def test_output_independent_of_completion(self):
        n, m = 2, 2
        psi = random_states(1, seed=502)[0]
        base = simulate_product_input(completed_unitary(n, m), psi)
        alt = simulate_product_input(completed_unitary(n, m, variant_seed=99), psi)
        assert np.abs(base - alt).max() < 1e-12

    def test_norm_preserved_on_generic_vector(self, rng):
        gate = completed_unitary(1, 1)
        v = rng.normal(size=8) + 1j * rng.normal(size=8)
        v /= np.linalg.norm(v)
        assert np.linalg.norm(gate.apply(v)) == pytest.approx(1.0, abs=1e-12)


class TestStructuredAgainstFullTensor:
    @pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (1, 2), (3, 1), (2, 2), (4, 2), (1, 3)])
    def test_reductions_match(self, n, m):
        psi = random_states(1, seed=510 + 10 * n + m)[0]
        gate = completed_unitary(n, m)
        out_vec = simulate_product_input(gate, psi)
        qubits = n + 2 * m
        joint = apply_unot(psi, n, m)
        c_full = brute_vector_reduce(out_vec, qubits, [qubits])
        assert np.abs(complement_output(joint).entries - c_full).max() < 1e-10
        ab_full = brute_vector_reduce(out_vec, qubits, [1])
        assert np.abs(clone_output(joint).entries - ab_full).max() < 1e-10
        if m >= 2:
            pair_full = brute_vector_reduce(out_vec, qubits, [qubits - 1, qubits])
            pair_struct = reduce_two_qubits(joint.c_density()).entries
            assert np.abs(pair_struct - pair_full).max() < 1e-10

    def test_every_c_qubit_identical(self):
        n, m = 2, 2
        psi = random_states(1, seed=511)[0]
        out_vec = simulate_product_input(completed_unitary(n, m), psi)
        qubits = n + 2 * m
        reductions = [reduce_vector(out_vec, [q]) for q in range(n + m + 1, qubits + 1)]
        for red in reductions[1:]:
            assert np.abs(red - reductions[0]).max() < 1e-12

    def test_input_vector_layout(self):
        psi = random_states(1, seed=512)[0]
        vec = product_input_vector(psi, 1, 1)
        want = np.kron(psi.vector, np.kron([1, 0], [1, 0]))
        assert np.abs(vec - want).max() < 1e-15
