"""
Noise channels as lists of Kraus operators.

Every channel here maps a d-dimensional system to itself. Two-qubit local
noise is the product channel Lambda x Lambda, realized with the product
Kraus set {K_i x K_j}. Choi states follow the convention

    rho_Lambda = (I x Lambda)(|phi+><phi+|),  |phi+> = sum_i |ii> / sqrt(d)

and every matrix whose l1 norm is taken is expressed in the computational
product basis |00>, |01>, |10>, |11>.
"""

import numpy as np

from .errors import (
    ChannelError,
    DimensionError,
    NoiseStrengthError,
    UnknownFamilyError,
)
from .matkernel import as_matrix, l1_norm, partial_trace
from .states import (
    IDENTITY2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    DensityMatrix,
    matrix_of,
)

COMPLETENESS_TOLERANCE = 1e-10

def _check_strength(p):
    if not 0.0 <= p <= 1.0:
        raise NoiseStrengthError("Noise strength %r is outside [0, 1]" % (p,))

class KrausChannel(object):
    def __init__(self, label, p, kraus):
        """
        Args:
            label: Channel family name, e.g. "ad".
            p: Noise strength in [0, 1].
            kraus: Sequence of dim x dim Kraus operators.
        """
        _check_strength(p)
        ops = np.array([as_matrix(k) for k in kraus], dtype=np.complex128)
        if ops.ndim != 3 or ops.shape[0] == 0:
            raise ChannelError("A channel needs at least one Kraus operator")
        dim = ops.shape[1]
        completeness = np.einsum("kji,kjl->il", ops.conj(), ops)
        defect = np.abs(completeness - np.eye(dim)).max()
        if defect > COMPLETENESS_TOLERANCE:
            raise ChannelError("%s(p=%g): Kraus operators are not complete, "
                    "defect %.3g" % (label, p, defect))
        ops.setflags(write=False)
        self.label = label
        self.p = float(p)
        self.kraus = ops
        self._local = None

    @property
    def dim(self):
        return self.kraus.shape[1]

    @property
    def local_kraus(self):
        """The product Kraus set {K_i x K_j} of Lambda x Lambda."""
        if self._local is None:
            k = self.kraus
            n, d = k.shape[0], self.dim
            local = np.einsum("aij,bkl->abikjl", k, k).reshape(n * n, d * d,
                    d * d)
            local.setflags(write=False)
            self._local = local
        return self._local

    def act(self, m):
        """Applies the channel to a raw matrix, without validation."""
        return act(self.kraus, m)

    def act_local(self, m):
        """Applies Lambda x Lambda to a raw 4x4 (or d^2 x d^2) matrix."""
        return act(self.local_kraus, m)

    def __repr__(self):
        return "<KrausChannel: %s p=%g dim=%d kraus=%d>" % (self.label, self.p,
                self.dim, self.kraus.shape[0])

def act(kraus, m):
    """sum_i K_i m K_i^dagger for a stack of Kraus operators."""
    return np.einsum("kij,jl,kml->im", kraus, m, kraus.conj())

class ChannelFamily(object):
    """A named channel family p -> KrausChannel."""
    def __init__(self, label, constructor, description):
        self.label = label
        self.constructor = constructor
        self.description = description

    def __call__(self, p):
        return self.constructor(p)

    def __repr__(self):
        return "<ChannelFamily: %s (%s)>" % (self.label, self.description)

def weyl_operators(d):
    """The d^2 shift/clock operators X^a Z^b, with (0, 0) first."""
    shift = np.roll(np.eye(d, dtype=np.complex128), 1, axis=0)
    clock = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
    ops = []
    for a in range(d):
        for b in range(d):
            ops.append(np.linalg.matrix_power(shift, a) @
                    np.linalg.matrix_power(clock, b))
    return ops

def depolarizing(p, d=2):
    """(1-p) rho + (p/d) I."""
    _check_strength(p)
    if d < 2:
        raise DimensionError("Depolarizing channel needs d >= 2, not %r" % d)
    if d == 2:
        paulis = [SIGMA_X, SIGMA_Y, SIGMA_Z]
        kraus = [np.sqrt(1 - 3 * p / 4) * IDENTITY2]
        kraus += [np.sqrt(p / 4) * s for s in paulis]
    else:
        weyl = weyl_operators(d)
        kraus = [np.sqrt(1 - p * (d * d - 1) / (d * d)) * weyl[0]]
        kraus += [np.sqrt(p / (d * d)) * w for w in weyl[1:]]
    return KrausChannel("dc", p, kraus)

def amplitude_damping(p):
    _check_strength(p)
    k0 = np.array([[1, 0], [0, np.sqrt(1 - p)]])
    k1 = np.array([[0, np.sqrt(p)], [0, 0]])
    return KrausChannel("ad", p, [k0, k1])

def _pauli_flip(label, sigma, p):
    _check_strength(p)
    return KrausChannel(label, p, [np.sqrt(1 - p / 2) * IDENTITY2,
        np.sqrt(p / 2) * sigma])

def bit_flip(p):
    return _pauli_flip("bf", SIGMA_X, p)

def phase_flip(p):
    return _pauli_flip("pf", SIGMA_Z, p)

def bit_phase_flip(p):
    return _pauli_flip("bpf", SIGMA_Y, p)

def identity_channel(d=2):
    return KrausChannel("id", 0.0, [np.eye(d)])

FAMILIES = {
    "dc": ChannelFamily("dc", depolarizing, "depolarizing"),
    "ad": ChannelFamily("ad", amplitude_damping, "amplitude damping"),
    "bf": ChannelFamily("bf", bit_flip, "bit flip"),
    "pf": ChannelFamily("pf", phase_flip, "phase flip"),
    "bpf": ChannelFamily("bpf", bit_phase_flip, "bit-phase flip"),
}

FAMILY_NAMES = ("dc", "ad", "bf", "pf", "bpf")

def get_family(family):
    """Looks up a ChannelFamily by name; families pass through."""
    if isinstance(family, ChannelFamily):
        return family
    try:
        return FAMILIES[family]
    except KeyError:
        raise UnknownFamilyError("Unknown channel family %r, expected one of "
                "%s" % (family, ", ".join(FAMILY_NAMES)))

def _check_dim(channel, m, dim):
    if m.shape[0] != dim:
        raise DimensionError("%s: channel on dim %d cannot act on dim %d" % (
            channel.label, dim, m.shape[0]))

def apply(channel, rho):
    m = matrix_of(rho)
    _check_dim(channel, m, channel.dim)
    return DensityMatrix(channel.act(m))

def local_apply(channel, rho):
    m = matrix_of(rho)
    if channel.dim != 2:
        raise DimensionError("Local noise is defined for qubit channels only")
    _check_dim(channel, m, 4)
    return DensityMatrix(channel.act_local(m))

def maximally_entangled(d=2):
    phi = np.eye(d, dtype=np.complex128).ravel() / np.sqrt(d)
    return np.outer(phi, phi.conj())

def choi_matrix(channel):
    """(I x Lambda)(|phi+><phi+|) as a raw array."""
    d = channel.dim
    extended = np.array([np.kron(np.eye(d), k) for k in channel.kraus])
    return act(extended, maximally_entangled(d))

def choi_state(channel):
    """The Choi state; a DensityMatrix for d = 2, a raw array beyond that."""
    m = choi_matrix(channel)
    if m.shape[0] in (2, 4):
        return DensityMatrix(m)
    return m

def choi_apply(choi, rho):
    """Channel action rebuilt from its Choi state, d Tr_1[(rho^T x I) choi]."""
    c = matrix_of(choi)
    m = matrix_of(rho)
    d = m.shape[0]
    if c.shape[0] != d * d:
        raise DimensionError("Choi state of dim %d does not match input dim "
                "%d" % (c.shape[0], d))
    return d * partial_trace(np.kron(m.T, np.eye(d)) @ c, (d, d), keep="B")

def channel_distance(first, second):
    if first.dim != second.dim:
        raise DimensionError("Cannot compare channels on dims %d and %d" % (
            first.dim, second.dim))
    return l1_norm(choi_matrix(first) - choi_matrix(second))

def covariance_defect(channel, u, rho):
    """|| Lambda(U rho U^dagger) - U Lambda(rho) U^dagger ||_1"""
    m = matrix_of(rho)
    u = as_matrix(u)
    _check_dim(channel, m, channel.dim)
    _check_dim(channel, u, channel.dim)
    ud = u.conj().T
    return l1_norm(channel.act(u @ m @ ud) - u @ channel.act(m) @ ud)

def bloch_map(channel):
    """Affine Bloch-ball action of a qubit channel: n -> T n + t."""
    if channel.dim != 2:
        raise DimensionError("Bloch maps exist for qubit channels only")
    paulis = (SIGMA_X, SIGMA_Y, SIGMA_Z)
    t = np.array([np.trace(s @ channel.act(IDENTITY2 / 2)).real
        for s in paulis])
    T = np.array([[np.trace(si @ channel.act(sj / 2)).real for sj in paulis]
        for si in paulis])
    return T, t
