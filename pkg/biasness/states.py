"""
Pure and mixed qubit / two-qubit states, the Bloch ball, and the angle
parametrizations the optimizers search over.

Qubit unitaries use three Euler-like angles (global phase dropped), and
two-qubit pure states use six reals: three hyperspherical angles for the
amplitude magnitudes and three relative phases. The global phase is always
fixed so that the first nonzero amplitude is real and non-negative.
"""

import collections

import numpy as np

from .errors import DimensionError, InvalidStateError
from .matkernel import (
    HERMITIAN_TOLERANCE,
    PSD_TOLERANCE,
    as_matrix,
    min_eigenvalue,
)

NORM_TOLERANCE = 1e-10
TRACE_TOLERANCE = 1e-10

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
IDENTITY2 = np.eye(2, dtype=np.complex128)

BlochVector = collections.namedtuple("BlochVector", "x y z")
UnitaryAngles = collections.namedtuple("UnitaryAngles", "theta phi lam")

STATE_PARAMETERS = {2: 2, 4: 6}

def _frozen(a):
    a = np.array(a, dtype=np.complex128)
    a.setflags(write=False)
    return a

def fix_global_phase(amplitudes):
    """Rotates the global phase so the first nonzero amplitude is real >= 0."""
    amplitudes = np.asarray(amplitudes, dtype=np.complex128)
    for value in amplitudes:
        if abs(value) > 1e-15:
            return amplitudes * (abs(value) / value)
    return amplitudes

class PureState(object):
    def __init__(self, amplitudes, tolerance=NORM_TOLERANCE):
        """
        Args:
            amplitudes: 2 or 4 complex amplitudes in the computational basis.
            tolerance: How far the squared norm may stray from one.
        """
        amplitudes = np.asarray(amplitudes, dtype=np.complex128).ravel()
        if amplitudes.shape[0] not in (2, 4):
            raise DimensionError("Pure states must have dim 2 or 4, not %d" %
                    amplitudes.shape[0])
        norm = float(np.vdot(amplitudes, amplitudes).real)
        if abs(norm - 1.0) > tolerance:
            raise InvalidStateError("State has squared norm %.15g" % norm)
        self.amplitudes = _frozen(amplitudes)

    @property
    def dim(self):
        return self.amplitudes.shape[0]

    def __repr__(self):
        return "<PureState: dim=%d amplitudes=%s>" % (self.dim,
                np.array2string(self.amplitudes, precision=4))

class DensityMatrix(object):
    def __init__(self, matrix, tolerance=TRACE_TOLERANCE):
        matrix = as_matrix(matrix)
        if matrix.shape[0] not in (2, 4):
            raise DimensionError("Density matrices must have dim 2 or 4, "
                    "not %d" % matrix.shape[0])
        check_density(matrix, tolerance)
        self.matrix = _frozen(matrix)

    @property
    def dim(self):
        return self.matrix.shape[0]

    def __repr__(self):
        return "<DensityMatrix: dim=%d>\n%s" % (self.dim,
                np.array2string(self.matrix, precision=4))

def check_density(matrix, tolerance=TRACE_TOLERANCE):
    """Raises InvalidStateError unless matrix is a valid density matrix."""
    if not np.all(np.abs(matrix - matrix.conj().T) <= HERMITIAN_TOLERANCE):
        raise InvalidStateError("Density matrix is not Hermitian")
    trace = np.trace(matrix)
    if abs(trace - 1.0) > tolerance:
        raise InvalidStateError("Density matrix has trace %.15g" % trace.real)
    smallest = min_eigenvalue(matrix)
    if smallest < -PSD_TOLERANCE:
        raise InvalidStateError("Density matrix has eigenvalue %.3g" %
                smallest)

def matrix_of(state):
    """Returns the raw array behind a DensityMatrix, PureState or array."""
    if isinstance(state, DensityMatrix):
        return state.matrix
    if isinstance(state, PureState):
        return np.outer(state.amplitudes, state.amplitudes.conj())
    return as_matrix(state)

def unitary_from_angles(angles):
    theta, phi, lam = angles
    c = np.cos(theta / 2)
    s = np.sin(theta / 2)
    return np.array([
        [c, -np.exp(1j * lam) * s],
        [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c]],
        dtype=np.complex128)

def amplitudes_from_angles(params, dim):
    """The amplitudes of pure_from_angles as a raw array, unvalidated."""
    params = np.asarray(params, dtype=np.float64)
    if dim == 2:
        theta, phi = params
        amplitudes = np.array([np.cos(theta / 2),
            np.exp(1j * phi) * np.sin(theta / 2)], dtype=np.complex128)
    else:
        a1, a2, a3, f1, f2, f3 = params
        s1 = np.sin(a1)
        s2 = np.sin(a2)
        amplitudes = np.array([
            np.cos(a1),
            s1 * np.cos(a2) * np.exp(1j * f1),
            s1 * s2 * np.cos(a3) * np.exp(1j * f2),
            s1 * s2 * np.sin(a3) * np.exp(1j * f3)], dtype=np.complex128)
    return fix_global_phase(amplitudes)

def pure_from_angles(params, dim):
    if dim not in STATE_PARAMETERS:
        raise DimensionError("Unsupported pure state dim %r" % (dim,))
    if len(params) != STATE_PARAMETERS[dim]:
        raise DimensionError("dim %d takes %d parameters, got %d" % (dim,
            STATE_PARAMETERS[dim], len(params)))
    return PureState(amplitudes_from_angles(params, dim))

def state_bounds(dim):
    """Search box for pure_from_angles parameters."""
    if dim == 2:
        return [(0.0, np.pi), (0.0, 2 * np.pi)]
    return [(0.0, np.pi)] * 3 + [(0.0, 2 * np.pi)] * 3

UNITARY_BOUNDS = [(0.0, np.pi), (0.0, 2 * np.pi), (0.0, 2 * np.pi)]

def density_from_pure(psi):
    return DensityMatrix(np.outer(psi.amplitudes, psi.amplitudes.conj()))

def bloch_to_density(v):
    x, y, z = v
    if x * x + y * y + z * z > 1.0 + 1e-10:
        raise InvalidStateError("Bloch vector (%g, %g, %g) is outside the "
                "unit ball" % (x, y, z))
    return DensityMatrix((IDENTITY2 + x * SIGMA_X + y * SIGMA_Y +
        z * SIGMA_Z) / 2)

def density_to_bloch(rho):
    m = matrix_of(rho)
    if m.shape[0] != 2:
        raise DimensionError("Bloch vectors exist for qubits only")
    return BlochVector(
        float(np.trace(m @ SIGMA_X).real),
        float(np.trace(m @ SIGMA_Y).real),
        float(np.trace(m @ SIGMA_Z).real))

def random_pure(dim, rng):
    """Haar-random pure state from a normalized complex Gaussian vector."""
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return PureState(v / np.linalg.norm(v))

def random_unitary(rng, dim=2):
    """Haar-random unitary: QR of a complex Ginibre matrix, phases fixed."""
    z = (rng.standard_normal((dim, dim)) +
            1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))

def random_density(dim, rng, rank=None):
    """Random mixed state W W^dagger / Tr, W a dim x rank Ginibre matrix."""
    if rank is None:
        rank = dim
    w = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    m = w @ w.conj().T
    return DensityMatrix(m / np.trace(m).real)
