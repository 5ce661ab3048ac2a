"""
Multi-start derivative-free maximization.

Each restart runs a bounded Nelder-Mead simplex search (scipy) on the
negated objective, or on a surrogate that keeps a slope where the objective
is flat. Starts come from given points and from uniform draws, half of
which are screened for a good surrogate value. The best restart is then
polished with one more simplex run from its optimum.

All randomness comes from the numpy Generator handed in, so results depend
only on the seed.
"""

import itertools

import numpy as np
import scipy.optimize

from .errors import ConfigError, OptimizerError
from .util import debug, make_stream

GRID_GUARD = 10 ** 8
DISTINCT_DISTANCE = 1e-3
# Uniform points drawn per screened restart.
SCREEN_FACTOR = 10

class OptimizerConfig(object):
    def __init__(self, restarts=50, max_iterations=2000, f_tolerance=1e-9,
            x_tolerance=1e-8, top_k=3, seed=42, grid_resolution=9,
            ddc_mode="min"):
        """
        Args:
            restarts: Number of random starts per maximization.
            max_iterations: Nelder-Mead iteration cap per restart.
            f_tolerance: Absolute objective tolerance of the simplex.
            x_tolerance: Absolute parameter tolerance of the simplex.
            top_k: How many distinct local optima to keep.
            seed: Base seed of all random streams.
            grid_resolution: Points per dimension of brute-force grids.
            ddc_mode: "min" (distance to the nearest depolarizing channel)
                or "max" (the literal maximum over depolarizing strengths).
        """
        self.restarts = int(restarts)
        self.max_iterations = int(max_iterations)
        self.f_tolerance = float(f_tolerance)
        self.x_tolerance = float(x_tolerance)
        self.top_k = int(top_k)
        self.seed = int(seed)
        self.grid_resolution = int(grid_resolution)
        self.ddc_mode = ddc_mode

        for name in ("restarts", "max_iterations", "top_k", "grid_resolution"):
            if getattr(self, name) < 1:
                raise ConfigError("%s must be at least 1, not %d" % (name,
                    getattr(self, name)))
        if self.f_tolerance <= 0 or self.x_tolerance <= 0:
            raise ConfigError("Tolerances must be positive")
        if self.ddc_mode not in ("min", "max"):
            raise ConfigError("ddc_mode must be 'min' or 'max', not %r" %
                    (ddc_mode,))

    def replace(self, **changes):
        options = dict(vars(self))
        options.update(changes)
        return OptimizerConfig(**options)

    def __repr__(self):
        return ("<OptimizerConfig: restarts=%d max_iterations=%d top_k=%d "
                "seed=%d>" % (self.restarts, self.max_iterations, self.top_k,
                    self.seed))

class OptimizerResult(object):
    def __init__(self, best_value, best_x, optima, restarts_used, failures):
        """
        Args:
            best_value: Largest objective value found.
            best_x: Parameters of best_value.
            optima: Up to top_k (x, value) pairs of distinct local optima,
                best first.
            restarts_used: Number of restarts run.
            failures: Restarts whose simplex did not report convergence.
        """
        self.best_value = best_value
        self.best_x = best_x
        self.optima = optima
        self.restarts_used = restarts_used
        self.failures = failures

    def __repr__(self):
        return "<OptimizerResult: best=%.10g optima=%d failures=%d>" % (
                self.best_value, len(self.optima), self.failures)

def wrapped_distance(x, y, bounds):
    """Euclidean distance with each coordinate wrapped by its bound width."""
    total = 0.0
    for a, b, (lo, hi) in zip(x, y, bounds):
        width = hi - lo
        d = abs(a - b)
        if width > 0:
            d = d % width
            d = min(d, width - d)
        total += d * d
    return np.sqrt(total)

def distinct_optima(candidates, bounds, top_k):
    """Picks the top_k best candidates that are pairwise far apart.

    candidates are (value, restart index, x); ties go to the lower index.
    """
    ordered = sorted(candidates, key=lambda c: (-c[0], c[1]))
    chosen = []
    for value, index, x in ordered:
        if all(wrapped_distance(x, other, bounds) > DISTINCT_DISTANCE
                for other, _ in chosen):
            chosen.append((x, value))
        if len(chosen) == top_k:
            break
    return chosen

def _simplex(search, x0, bounds, cfg):
    return scipy.optimize.minimize(lambda x: -search(x), x0,
            method="Nelder-Mead", bounds=bounds,
            options=dict(maxiter=cfg.max_iterations, xatol=cfg.x_tolerance,
                fatol=cfg.f_tolerance, adaptive=len(x0) > 2))

def screened_starts(search, lower, upper, count, rng):
    """The count best of SCREEN_FACTOR * count uniform points under search.

    Ties keep draw order.
    """
    pool = lower + (upper - lower) * rng.random((SCREEN_FACTOR * count,
        len(lower)))
    scores = np.array([float(search(x)) for x in pool])
    return pool[np.argsort(-scores, kind="stable")[:count]]

def multi_start_maximize(objective, bounds, cfg, rng=None, search=None,
        starts=()):
    """Maximizes objective over the box bounds.

    Args:
        objective: Function whose maximum is wanted; it scores every
            candidate.
        bounds: (low, high) per parameter.
        cfg: OptimizerConfig.
        rng: numpy Generator for the starts; derived from cfg.seed if None.
        search: Function the simplex climbs instead of objective. It must
            equal objective wherever objective is above its floor and may
            keep sloping where objective is flat.
        starts: Extra start points, run before the random restarts.

    Half of the cfg.restarts random starts are screened: the best points
    under search out of a larger uniform pool. The other half are plain
    uniform draws.
    """
    if rng is None:
        rng = make_stream(cfg.seed)
    if search is None:
        search = objective
    lower = np.array([lo for lo, _ in bounds], dtype=np.float64)
    upper = np.array([hi for _, hi in bounds], dtype=np.float64)

    screened = cfg.restarts // 2
    points = [np.clip(np.asarray(x, dtype=np.float64), lower, upper)
            for x in starts]
    if screened:
        points.extend(screened_starts(search, lower, upper, screened, rng))
    for _ in range(cfg.restarts - screened):
        points.append(lower + (upper - lower) * rng.random(len(bounds)))

    candidates = []
    failures = 0
    for index, x0 in enumerate(points):
        result = _simplex(search, x0, bounds, cfg)
        if not result.success:
            failures += 1
            debug("restart %d did not converge: %s" % (index, result.message))
        candidates.append((float(objective(result.x)), index, result.x))

    value, index, x = min(candidates, key=lambda c: (-c[0], c[1]))
    polished = _simplex(search, x, bounds, cfg)
    polished_value = float(objective(polished.x))
    if polished_value > value:
        candidates.append((polished_value, -1, polished.x))

    optima = distinct_optima(candidates, bounds, cfg.top_k)
    best_x, best_value = optima[0]
    return OptimizerResult(best_value, best_x, optima, len(points), failures)

def grid_points(bounds, resolution):
    """Yields every point of the uniform grid over bounds, endpoints
    included."""
    count = resolution ** len(bounds)
    if count > GRID_GUARD:
        raise OptimizerError("Grid of %d^%d points exceeds the limit of %d" % (
            resolution, len(bounds), GRID_GUARD))
    axes = [np.linspace(lo, hi, resolution) for lo, hi in bounds]
    return itertools.product(*axes)

def grid_oracle(objective, bounds, resolution):
    return max(float(objective(np.array(x))) for x in grid_points(bounds,
        resolution))
