import numpy as np
import pytest

from biasness.channels import phase_flip
from biasness.entanglement import (
    concurrence,
    concurrence_margin,
    concurrence_omega,
    lambdas,
    omega_eigenvalues,
    product_lambdas,
    spin_flip,
)
from biasness.errors import DimensionError
from biasness.states import DensityMatrix, random_density, random_pure, random_unitary

def basis(i):
    m = np.zeros((4, 4), dtype=complex)
    m[i, i] = 1
    return m

def werner(w, bell):
    return w * bell + (1 - w) * np.eye(4) / 4

def test_spin_flip(bell):
    assert np.allclose(spin_flip(bell), bell)
    assert np.allclose(spin_flip(basis(0)), basis(3))
    assert np.allclose(spin_flip(np.eye(4) / 4), np.eye(4) / 4)

def test_spin_flip_is_hermitian_unit_trace(rng):
    for _ in range(20):
        flipped = spin_flip(random_density(4, rng))
        assert np.abs(flipped - flipped.conj().T).max() < 1e-12
        assert abs(np.trace(flipped) - 1) < 1e-12

def test_concurrence_extremes(bell):
    assert abs(concurrence(bell) - 1) < 1e-12
    assert concurrence(basis(0)) == 0
    assert concurrence(DensityMatrix(np.eye(4) / 4)) == 0

@pytest.mark.parametrize("w", [0, 1.0 / 3, 0.5, 0.8, 1])
def test_werner_states(bell, w):
    assert abs(concurrence(werner(w, bell)) - max(0, (3 * w - 1) / 2)) < 1e-8

def test_phase_flipped_bell(bell):
    for p in np.linspace(0, 1, 11):
        assert abs(concurrence(phase_flip(p).act_local(bell)) -
                (1 - p) ** 2) < 1e-10

def test_local_unitary_invariance(rng):
    for _ in range(200):
        rho = random_density(4, rng).matrix
        uv = np.kron(random_unitary(rng), random_unitary(rng))
        assert abs(concurrence(uv @ rho @ uv.conj().T) -
                concurrence(rho)) < 1e-9

def test_convexity(rng):
    for _ in range(200):
        a = random_pure(4, rng).amplitudes
        b = random_pure(4, rng).amplitudes
        rho1 = np.outer(a, a.conj())
        rho2 = np.outer(b, b.conj())
        t = rng.random()
        assert concurrence(t * rho1 + (1 - t) * rho2) <= \
                t * concurrence(rho1) + (1 - t) * concurrence(rho2) + 1e-9

def test_pure_state_concurrence(rng):
    for _ in range(100):
        psi = random_pure(4, rng).amplitudes
        expected = 2 * abs(psi[0] * psi[3] - psi[1] * psi[2])
        assert abs(concurrence(np.outer(psi, psi.conj())) - expected) < 1e-12

def test_lambdas_agree_with_omega(rng):
    for _ in range(100):
        rho = random_density(4, rng).matrix
        assert np.abs(lambdas(rho) - omega_eigenvalues(rho)).max() < 1e-8
        assert np.abs(lambdas(rho) - product_lambdas(rho)).max() < 1e-8
        assert abs(concurrence(rho) - concurrence_omega(rho)) < 1e-8

def test_concurrence_range(rng):
    for _ in range(50):
        c = concurrence(random_density(4, rng, rank=2))
        assert 0 <= c <= 1

def test_concurrence_needs_two_qubits():
    with pytest.raises(DimensionError):
        concurrence(np.eye(2) / 2)
    with pytest.raises(DimensionError):
        spin_flip(np.eye(2) / 2)

@pytest.mark.parametrize("w", [0.0, 0.2, 1 / 3, 0.6, 1.0])
def test_concurrence_margin_of_werner_states(bell, w):
    rho = werner(w, bell)
    assert abs(concurrence_margin(rho) - (3 * w - 1) / 2) <= 1e-10
    assert concurrence(rho) == min(1.0, max(0.0, concurrence_margin(rho)))
