"""
Dense complex matrix helpers for the 2x2 and 4x4 operators of qubit and
two-qubit problems.

A "matrix" here is simply a square numpy array of complex128. Nothing is
sparse, and nothing is larger than 4x4 except the output of kron.
"""

import numpy as np

from .errors import (
    DimensionError,
    NotHermitianError,
    NotPositiveError,
    NumericError,
)

HERMITIAN_TOLERANCE = 1e-10
PSD_TOLERANCE = 1e-10

def as_matrix(a):
    """Returns a as a square complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError("Expected a square matrix, got shape %r" % (
            m.shape,))
    return m

def equal(a, b, tolerance=1e-12):
    """Elementwise comparison with an absolute tolerance."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        return False
    return bool(np.all(np.abs(a - b) <= tolerance))

def kron(a, b):
    return np.kron(as_matrix(a), as_matrix(b))

def dagger(a):
    return as_matrix(a).conj().T

def l1_norm(a):
    """Maximum over columns of the sum of absolute column entries."""
    m = np.asarray(a)
    if m.size == 0:
        return 0.0
    return float(np.abs(m).sum(axis=0).max())

def is_hermitian(a, tolerance=HERMITIAN_TOLERANCE):
    a = as_matrix(a)
    return bool(np.all(np.abs(a - a.conj().T) <= tolerance))

def eig_hermitian(a):
    """Returns (ascending eigenvalues, eigenvectors as columns)."""
    a = as_matrix(a)
    if not is_hermitian(a):
        raise NotHermitianError("Matrix is not Hermitian within %g" %
                HERMITIAN_TOLERANCE)
    # eigh reads one triangle only.
    values, vectors = np.linalg.eigh((a + a.conj().T) / 2)
    return values, vectors

def min_eigenvalue(a):
    a = as_matrix(a)
    return float(np.linalg.eigvalsh((a + a.conj().T) / 2)[0])

def psd_sqrt(a):
    """The positive semidefinite square root of a PSD matrix."""
    values, vectors = eig_hermitian(a)
    if values[0] < -PSD_TOLERANCE:
        raise NotPositiveError("Matrix has eigenvalue %g below -%g" % (
            values[0], PSD_TOLERANCE))
    roots = np.sqrt(np.clip(values, 0.0, None))
    return (vectors * roots) @ vectors.conj().T

def eigvals_general(a):
    a = as_matrix(a)
    try:
        values = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as e:
        raise NumericError("Eigenvalues did not converge: %s" % e, matrix=a)
    if not np.all(np.isfinite(values)):
        raise NumericError("Non-finite eigenvalues", matrix=a)
    return values

def partial_trace(a, dims, keep="A"):
    """Traces out one factor of a bipartite operator.

    Args:
        a: Matrix on a space of dimension dA*dB.
        dims: The pair (dA, dB).
        keep: "A" to keep the first factor, "B" to keep the second.
    """
    a = as_matrix(a)
    da, db = dims
    if a.shape[0] != da * db:
        raise DimensionError("Matrix of dim %d does not split as %dx%d" % (
            a.shape[0], da, db))
    t = a.reshape(da, db, da, db)
    if keep in ("A", 0):
        return np.einsum("ijkj->ik", t)
    if keep in ("B", 1):
        return np.einsum("ijil->jl", t)
    raise ValueError("keep must be 'A' or 'B', not %r" % (keep,))
