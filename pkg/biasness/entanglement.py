"""
Two-qubit concurrence.

The lambda_i of the concurrence are the square roots of the eigenvalues of
the non-Hermitian product rho * rho_tilde. Taking square roots of computed
eigenvalues turns 1e-16 noise into 1e-8 errors for low-rank states, so the
same numbers are read off as singular values instead: with rho = A A^dagger,
rho * rho_tilde is similar to tau tau^*, tau = A^T (sigma_y x sigma_y) A.

The direct eigenvalue route (product_lambdas) and the route through
omega = sqrt(sqrt(rho) rho_tilde sqrt(rho)) are kept as cross-checks.
"""

import numpy as np

from .errors import DimensionError, NumericError
from .matkernel import eig_hermitian, eigvals_general, psd_sqrt
from .states import SIGMA_Y, matrix_of
from .util import debug

CLAMP_TOLERANCE = 1e-10

SIGMA_YY = np.kron(SIGMA_Y, SIGMA_Y)

def _two_qubit(rho):
    m = matrix_of(rho)
    if m.shape[0] != 4:
        raise DimensionError("Concurrence needs a two-qubit state, got dim %d"
                % m.shape[0])
    return m

def spin_flip(rho):
    """(sigma_y x sigma_y) rho* (sigma_y x sigma_y)"""
    m = _two_qubit(rho)
    return SIGMA_YY @ m.conj() @ SIGMA_YY

def _clamp(value):
    return min(max(value, 0.0), 1.0)

def lambdas(m):
    """Descending lambda_i of a raw 4x4 density matrix."""
    try:
        values, vectors = np.linalg.eigh((m + m.conj().T) / 2)
        if values[0] < -CLAMP_TOLERANCE:
            debug("concurrence: clamping eigenvalue %.3g" % values[0])
        a = vectors * np.sqrt(np.clip(values, 0.0, None))
        return np.linalg.svd(a.T @ SIGMA_YY @ a, compute_uv=False)
    except np.linalg.LinAlgError as e:
        raise NumericError("Concurrence did not converge: %s" % e, matrix=m)

def product_lambdas(rho):
    """Square roots of the eigenvalues of rho * rho_tilde, computed
    directly."""
    m = _two_qubit(rho)
    values = eigvals_general(m @ spin_flip(m))
    return np.sort(np.sqrt(np.clip(values.real, 0.0, None)))[::-1]

def concurrence_margin(m):
    """lambda_1 - lambda_2 - lambda_3 - lambda_4 of a raw 4x4 array, not
    clamped. At most zero for separable states."""
    l = lambdas(m)
    return float(l[0] - l[1] - l[2] - l[3])

def concurrence_of_matrix(m):
    """Concurrence of a raw 4x4 array; the hot path for the optimizers."""
    return _clamp(concurrence_margin(m))

def concurrence(rho):
    return concurrence_of_matrix(_two_qubit(rho))

def omega_eigenvalues(rho):
    m = _two_qubit(rho)
    root = psd_sqrt(m)
    return eig_hermitian(psd_sqrt(root @ spin_flip(m) @ root))[0][::-1]

def concurrence_omega(rho):
    l = omega_eigenvalues(rho)
    return _clamp(l[0] - l[1] - l[2] - l[3])
