"""Shared brute-force oracles, independent of the closed forms they check."""

import itertools
from functools import reduce
from math import comb

import numpy as np
import pytest

from unotsim.qubit import PureQubit, haar_state_batch


def kron_all(factors):
    return reduce(np.kron, factors)


def symmetrize_product(factors):
    """Average a product state over all qubit permutations, renormalized."""
    n = len(factors)
    acc = np.zeros(2**n, dtype=np.complex128)
    for perm in itertools.permutations(range(n)):
        acc += kron_all([factors[i] for i in perm])
    return acc / np.linalg.norm(acc)


def brute_partial_trace(rho, qubits, keep):
    """Reduced matrix over 1-based `keep`, via reshape/einsum from scratch."""
    keep0 = [k - 1 for k in keep]
    rest = [i for i in range(qubits) if i not in keep0]
    t = np.asarray(rho).reshape((2,) * (2 * qubits))
    perm = keep0 + rest + [qubits + i for i in keep0] + [qubits + i for i in rest]
    t = t.transpose(perm)
    dk, dr = 2 ** len(keep0), 2 ** len(rest)
    return np.einsum("arbr->ab", t.reshape(dk, dr, dk, dr))


def brute_vector_reduce(vec, qubits, keep):
    return brute_partial_trace(np.outer(vec, np.conj(vec)), qubits, keep)


def random_states(count, seed):
    return [PureQubit.from_vector(v) for v in haar_state_batch(count, seed)]


def random_su2(rng):
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    return q / np.sqrt(np.linalg.det(q))


def dicke_coeff_product(psi_vec, n):
    """Dicke coefficients of a product state in the computational frame."""
    a, b = psi_vec
    return np.array([np.sqrt(comb(n, k)) * a ** (n - k) * b**k for k in range(n + 1)])


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
