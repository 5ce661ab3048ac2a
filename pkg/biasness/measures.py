"""
Channel functionals: saved entanglement (SE), entanglement capacity (EC),
the biasness measures DDC, CDS and IC, and the EB1/EB2 bounds on SE.

Entanglement is always measured with the concurrence, and every search over
states is a search over pure states. Two-qubit searches use the 6-parameter
state map of states.pure_from_angles, and the local unitary I x U uses the
3-angle map of states.unitary_from_angles, so SE and IC are 9-parameter
problems.
"""

import numpy as np
import scipy.optimize

from .channels import bloch_map, channel_distance, depolarizing, get_family
from .entanglement import concurrence_margin, concurrence_of_matrix
from .errors import DimensionError, OptimizerError
from .matkernel import l1_norm, min_eigenvalue
from .optimizer import distinct_optima, multi_start_maximize
from .states import (
    IDENTITY2,
    UNITARY_BOUNDS,
    UnitaryAngles,
    amplitudes_from_angles,
    matrix_of,
    pure_from_angles,
    state_bounds,
    unitary_from_angles,
)
from .util import (
    STREAM_CDS,
    STREAM_EC,
    STREAM_IC,
    STREAM_REFINE,
    STREAM_SE,
    debug,
    make_stream,
)

SE_BOUNDS = state_bounds(4) + UNITARY_BOUNDS
EC_BOUNDS = state_bounds(4)
CDS_BOUNDS = state_bounds(2)

DDC_GRID = 101
DDC_XATOL = 1e-9
CDS_GRID = (181, 361)
DECOMPOSE_ITERATIONS = 60
DECOMPOSE_TOLERANCE = 1e-10
EB_GRID = 201
# Pairs whose SE objective is this close to the best still count as maxima.
PAIR_TOLERANCE = 1e-7
# Below this, SE is taken to vanish and the identity unitary attains it.
ZERO_SE = 1e-7

IDENTITY_ANGLES = UnitaryAngles(0.0, 0.0, 0.0)

# Phi+, Phi-, Psi+ and Psi- in the state map.
BELL_STARTS = (
    (np.pi / 4, np.pi / 2, np.pi / 2, 0.0, 0.0, 0.0),
    (np.pi / 4, np.pi / 2, np.pi / 2, 0.0, 0.0, np.pi),
    (np.pi / 2, np.pi / 4, 0.0, 0.0, 0.0, 0.0),
    (np.pi / 2, np.pi / 4, 0.0, 0.0, np.pi, 0.0),
)
# Identity, X and Hadamard.
UNITARY_STARTS = ((0.0, 0.0, 0.0), (np.pi, 0.0, np.pi),
        (np.pi / 2, 0.0, np.pi))
# Phi+ with a Hadamard or a phase gate on the second qubit, each paired with
# a gate that turns it back into a Bell state.
ROTATED_BELL_STARTS = (
    (np.pi / 3, np.arccos(1 / np.sqrt(3)), np.pi / 4, 0.0, 0.0, np.pi,
        np.pi / 2, 0.0, np.pi),
    (np.pi / 4, np.pi / 2, np.pi / 2, 0.0, 0.0, np.pi / 2,
        0.0, 0.0, np.pi / 2),
)
SE_STARTS = tuple(state + angles for state in BELL_STARTS[::2]
        for angles in UNITARY_STARTS) + ROTATED_BELL_STARTS

def _local_unitary(angles):
    return np.kron(IDENTITY2, unitary_from_angles(angles))

def _projector(psi):
    return np.outer(psi, psi.conj())

def _qubit(channel):
    if channel.dim != 2:
        raise DimensionError("%s: expected a qubit channel, got dim %d" % (
            channel.label, channel.dim))

class OptimizerPair(object):
    """A local unitary and a two-qubit pure state found by the SE search."""
    def __init__(self, unitary_angles, state_params, objective_value):
        self.unitary_angles = UnitaryAngles(*[float(a) for a in
            unitary_angles])
        self.state_params = tuple(float(a) for a in state_params)
        self.objective_value = float(objective_value)

    @property
    def params(self):
        return np.array(self.state_params + tuple(self.unitary_angles))

    def state(self):
        return pure_from_angles(self.state_params, 4)

    def unitary(self):
        return unitary_from_angles(self.unitary_angles)

    def evaluate(self, channel):
        return se_objective(channel)(self.params)

    def __repr__(self):
        return "<OptimizerPair: value=%.10g U=(%.4f, %.4f, %.4f)>" % (
                (self.objective_value,) + tuple(self.unitary_angles))

class DecompositionPoint(object):
    """sigma = p1 tau + p2 rho_prime."""
    def __init__(self, p1, rho_prime):
        self.p1 = p1
        self.p2 = 1.0 - p1
        self.rho_prime = rho_prime

    def reconstruct(self, tau):
        return self.p1 * matrix_of(tau) + self.p2 * self.rho_prime

def _se_states(channel, x):
    psi = amplitudes_from_angles(x[:6], 4)
    rotated = _local_unitary(x[6:9]) @ psi
    return (channel.act_local(_projector(rotated)),
            channel.act_local(_projector(psi)))

def se_objective(channel):
    """The SE objective C(L(U rho U+)) - C(L(rho)) on 6 state + 3 unitary
    parameters."""
    _qubit(channel)

    def objective(x):
        sigma, tau = _se_states(channel, x)
        return concurrence_of_matrix(sigma) - concurrence_of_matrix(tau)
    return objective

def se_search(channel):
    """se_objective with the concurrence of the rotated state left unclamped.

    Never above se_objective, and equal to it wherever the rotated state is
    entangled.
    """
    _qubit(channel)

    def search(x):
        sigma, tau = _se_states(channel, x)
        return concurrence_margin(sigma) - concurrence_of_matrix(tau)
    return search

def ec_objective(channel):
    _qubit(channel)

    def objective(x):
        psi = amplitudes_from_angles(x, 4)
        return concurrence_of_matrix(channel.act_local(_projector(psi)))
    return objective

def ec_search(channel):
    _qubit(channel)

    def search(x):
        psi = amplitudes_from_angles(x, 4)
        return concurrence_margin(channel.act_local(_projector(psi)))
    return search

def ic_objective(channel):
    _qubit(channel)

    def objective(x):
        rho = _projector(amplitudes_from_angles(x[:6], 4))
        u = _local_unitary(x[6:9])
        ud = u.conj().T
        return l1_norm(channel.act_local(u @ rho @ ud) -
                u @ channel.act_local(rho) @ ud)
    return objective

def fidelity_sum(channel, theta, phi):
    """F = Tr(L(rho) rho) + Tr(L(rho_perp) rho_perp) for the pure qubit state
    at Bloch angles (theta, phi)."""
    total = 0.0
    for params in ((theta, phi), (np.pi - theta, phi + np.pi)):
        psi = amplitudes_from_angles(params, 2)
        total += np.vdot(psi, channel.act(_projector(psi)) @ psi).real
    return total

def _pairs_from(optima):
    return [OptimizerPair(x[6:9], x[:6], value) for x, value in optima]

def saved_entanglement(family, p, cfg):
    """Returns (SE, list of OptimizerPair), best pair first."""
    family = get_family(family)
    p = float(p)
    channel = family(p)
    objective = se_objective(channel)
    search = se_search(channel)

    result = multi_start_maximize(objective, SE_BOUNDS, cfg,
            make_stream(cfg.seed, STREAM_SE, family.label, p), search=search,
            starts=SE_STARTS)
    candidates = [(value, i, x) for i, (x, value) in enumerate(result.optima)]

    # Re-optimize the unitary with the best state held fixed.
    best_x = result.best_x
    state = best_x[:6]
    refine_cfg = cfg.replace(restarts=max(1, cfg.restarts // 5))
    refined = multi_start_maximize(
            lambda angles: objective(np.concatenate([state, angles])),
            UNITARY_BOUNDS, refine_cfg,
            make_stream(cfg.seed, STREAM_REFINE, family.label, p),
            search=lambda angles: search(np.concatenate([state, angles])),
            starts=(best_x[6:9],))
    if refined.best_value > result.best_value:
        debug("%s p=%g: unitary refinement raised SE by %.3g" % (family.label,
            p, refined.best_value - result.best_value))
        x = np.concatenate([state, refined.best_x])
        candidates.append((refined.best_value, -1, x))

    # The identity unitary always scores zero.
    if max(c[0] for c in candidates) < 0.0:
        x = np.concatenate([state, np.zeros(3)])
        candidates.append((objective(x), -2, x))

    pairs = _pairs_from(distinct_optima(candidates, SE_BOUNDS, cfg.top_k))
    return pairs[0].objective_value, pairs

def entanglement_capacity(family, p, cfg):
    family = get_family(family)
    p = float(p)
    channel = family(p)
    result = multi_start_maximize(ec_objective(channel), EC_BOUNDS, cfg,
            make_stream(cfg.seed, STREAM_EC, family.label, p),
            search=ec_search(channel), starts=BELL_STARTS)
    return min(max(result.best_value, 0.0), 1.0)

def ddc(channel, cfg):
    """Distance to the depolarizing family.

    With cfg.ddc_mode "min" this is the distance to the nearest depolarizing
    channel; "max" gives the distance to the farthest one.
    """
    _qubit(channel)
    sign = 1.0 if cfg.ddc_mode == "min" else -1.0

    def distance(q):
        return sign * channel_distance(depolarizing(float(q)), channel)

    grid = np.linspace(0.0, 1.0, DDC_GRID)
    values = [distance(q) for q in grid]
    i = int(np.argmin(values))
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, DDC_GRID - 1)]
    refined = scipy.optimize.minimize_scalar(distance, bounds=(lo, hi),
            method="bounded", options=dict(xatol=DDC_XATOL))
    return sign * min(values[i], float(refined.fun))

def cds_grid(channel, resolution=CDS_GRID):
    """(max F, min F) over a theta x phi grid of pure qubit states."""
    _qubit(channel)
    thetas = np.linspace(0.0, np.pi, resolution[0])
    phis = np.linspace(0.0, 2 * np.pi, resolution[1])
    theta, phi = [a.ravel() for a in np.meshgrid(thetas, phis, indexing="ij")]
    k = channel.kraus
    total = np.zeros(theta.shape[0])
    for t, f in ((theta, phi), (np.pi - theta, phi + np.pi)):
        psi = np.stack([np.cos(t / 2), np.exp(1j * f) * np.sin(t / 2)],
                axis=1)
        rho = psi[:, :, None] * psi.conj()[:, None, :]
        out = np.einsum("kij,njl,kml->nim", k, rho, k.conj())
        total += np.einsum("ni,nij,nj->n", psi.conj(), out, psi).real
    return float(total.max()), float(total.min())

def cds(channel, cfg):
    _qubit(channel)

    def objective(x):
        return fidelity_sum(channel, x[0], x[1])

    rng = make_stream(cfg.seed, STREAM_CDS, channel.label, channel.p)
    highest = multi_start_maximize(objective, CDS_BOUNDS, cfg, rng).best_value
    lowest = -multi_start_maximize(lambda x: -objective(x), CDS_BOUNDS, cfg,
            rng).best_value
    grid_high, grid_low = cds_grid(channel)
    return max(0.0, max(highest, grid_high) - min(lowest, grid_low))

def cds_from_bloch_map(channel):
    """CDS in closed form. F(n) = 1 + n.T n on the unit sphere, so the spread
    is the eigenvalue spread of the symmetric part of T."""
    T, _ = bloch_map(channel)
    values = np.linalg.eigvalsh((T + T.T) / 2)
    return float(values[-1] - values[0])

def ic(channel, cfg):
    result = multi_start_maximize(ic_objective(channel), SE_BOUNDS, cfg,
            make_stream(cfg.seed, STREAM_IC, channel.label, channel.p))
    return max(result.best_value, 0.0)

def decompose_max_p1(sigma, tau):
    """Largest p1 in [0, 1] with sigma - p1 tau positive semidefinite."""
    s = matrix_of(sigma)
    t = matrix_of(tau)
    if s.shape != t.shape:
        raise DimensionError("Cannot decompose dim %d into dim %d" % (
            s.shape[0], t.shape[0]))

    def feasible(p1):
        return min_eigenvalue(s - p1 * t) >= -DECOMPOSE_TOLERANCE

    if feasible(1.0):
        return 1.0
    lo, hi = 0.0, 1.0
    for _ in range(DECOMPOSE_ITERATIONS):
        mid = (lo + hi) / 2
        if feasible(mid):
            lo = mid
        else:
            hi = mid
    return lo

def decomposition(sigma, tau, p1):
    s = matrix_of(sigma)
    t = matrix_of(tau)
    return DecompositionPoint(p1, (s - p1 * t) / (1.0 - p1))

def _pair_bounds(channel, state_params, unitary_angles):
    psi = amplitudes_from_angles(state_params, 4)
    rotated = _local_unitary(unitary_angles) @ psi
    sigma = channel.act_local(_projector(rotated))
    tau = channel.act_local(_projector(psi))

    p1_max = decompose_max_p1(sigma, tau)
    if 1.0 - p1_max < 1e-9:
        return 0.0, 0.0

    c_tau = concurrence_of_matrix(tau)
    eb1 = eb2 = np.inf
    for p1 in np.linspace(0.0, p1_max, EB_GRID):
        p2 = 1.0 - p1
        if p2 < 1e-9:
            continue
        c = concurrence_of_matrix(decomposition(sigma, tau, p1).rho_prime)
        eb1 = min(eb1, p2 * (c - c_tau))
        eb2 = min(eb2, p2 * c)
    return eb1, eb2

def eb_bounds(channel, pairs, cfg):
    """Returns (EB1, EB2) minimized over the pairs that attain SE."""
    if not pairs:
        raise OptimizerError("eb_bounds needs at least one optimizer pair")
    objective = se_objective(channel)
    values = [objective(pair.params) for pair in pairs]
    se = max(values)

    candidates = [(pair.state_params, pair.unitary_angles)
            for pair, value in zip(pairs[:cfg.top_k], values)
            if value >= se - PAIR_TOLERANCE]
    if se <= ZERO_SE:
        candidates.append((pairs[0].state_params, IDENTITY_ANGLES))

    eb1 = eb2 = np.inf
    for state_params, angles in candidates:
        b1, b2 = _pair_bounds(channel, state_params, angles)
        eb1 = min(eb1, b1)
        eb2 = min(eb2, b2)
    return float(eb1), float(eb2)
