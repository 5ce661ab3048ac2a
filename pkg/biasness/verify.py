"""
Self-checks for a build: the algebraic invariants of every module, the
covariance lemma for depolarizing noise, the vanishing of SE for covariant
channels, and the qualitative trends of SE, EC and the bounds.

Every check measures a slack and compares it with a limit, and the report
lists both. "quick" uses small samples and a coarse sweep; "full" uses the
large samples and an 11-point sweep of every functional.
"""

import numpy as np

from .channels import (
    FAMILY_NAMES,
    amplitude_damping,
    choi_apply,
    choi_matrix,
    covariance_defect,
    depolarizing,
    get_family,
    phase_flip,
)
from .entanglement import (
    concurrence,
    lambdas,
    omega_eigenvalues,
    product_lambdas,
)
from .matkernel import kron, l1_norm, min_eigenvalue, partial_trace, psd_sqrt
from .measures import (
    EC_BOUNDS,
    SE_BOUNDS,
    cds,
    cds_from_bloch_map,
    ddc,
    ec_objective,
    entanglement_capacity,
    ic,
    ic_objective,
    saved_entanglement,
    se_objective,
)
from .optimizer import OptimizerConfig, grid_oracle
from .states import (
    SIGMA_X,
    pure_from_angles,
    random_density,
    random_pure,
    random_unitary,
    unitary_from_angles,
)
from .sweep import RunConfig, run_sweep
from .util import STREAM_VERIFY, log, make_stream

SAMPLES = {"quick": 20, "full": 1000}
COVARIANCE_STRENGTHS = (0.0, 0.25, 0.5, 0.75, 1.0)

class Report(object):
    def __init__(self):
        self.results = []

    def check(self, name, slack, limit):
        ok = bool(np.isfinite(slack) and slack <= limit)
        self.results.append((name, slack, limit, ok))
        log("  %-58s slack=%-10.3g limit=%-8.3g %s" % (name, slack, limit,
            "OK" if ok else "FAIL"))
        return ok

    @property
    def passed(self):
        return all(ok for _, _, _, ok in self.results)

    @property
    def failures(self):
        return [name for name, _, _, ok in self.results if not ok]

def _random_matrix(rng, dim):
    return rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim,
        dim))

def check_matkernel(report, rng, n):
    worst = 0.0
    for _ in range(n):
        a = _random_matrix(rng, 4)
        b = _random_matrix(rng, 4)
        c = complex(*rng.standard_normal(2))
        worst = max(worst, l1_norm(a + b) - l1_norm(a) - l1_norm(b),
                abs(l1_norm(c * a) - abs(c) * l1_norm(a)))
    report.check("matkernel: l1 triangle inequality and homogeneity", worst,
            1e-12)

    worst = 0.0
    for _ in range(n):
        a = random_density(4, rng).matrix * 4
        root = psd_sqrt(a)
        worst = max(worst, np.abs(root @ root - a).max())
    report.check("matkernel: psd_sqrt squares back", worst, 1e-8)

    worst = 0.0
    for _ in range(n):
        a, b, c = [_random_matrix(rng, 2) for _ in range(3)]
        worst = max(worst, np.abs(kron(kron(a, b), c) -
            kron(a, kron(b, c))).max())
    report.check("matkernel: kron is associative", worst, 1e-12)

    worst = 0.0
    for _ in range(n):
        rho = random_density(2, rng).matrix
        sigma = random_density(2, rng).matrix
        worst = max(worst, np.abs(partial_trace(kron(rho, sigma), (2, 2), "A")
            - rho).max())
    report.check("matkernel: partial trace of a product state", worst, 1e-12)

def check_states(report, rng, n):
    worst = 0.0
    for _ in range(n):
        psi = pure_from_angles(rng.uniform(0, 2 * np.pi, 6), 4).amplitudes
        values = np.linalg.eigvalsh(np.outer(psi, psi.conj()))
        worst = max(worst, values[-2])
    report.check("states: pure_from_angles gives rank one", worst, 1e-10)

    u = unitary_from_angles((np.pi, 0.0, np.pi))
    report.check("states: U(pi, 0, pi) is sigma_x", np.abs(u - SIGMA_X).max(),
            1e-12)

def check_channels(report, rng, n):
    worst = 0.0
    for name in FAMILY_NAMES:
        for p in np.linspace(0, 1, 21):
            k = get_family(name)(p).kraus
            completeness = np.einsum("kji,kjl->il", k.conj(), k)
            worst = max(worst, np.abs(completeness - np.eye(2)).max())
    report.check("channels: Kraus completeness on 21 strengths", worst, 1e-10)

    trace = positivity = 0.0
    for name in FAMILY_NAMES:
        channel = get_family(name)(0.37)
        for _ in range(n):
            out = channel.act(random_density(2, rng).matrix)
            trace = max(trace, abs(np.trace(out) - 1))
            positivity = max(positivity, -min_eigenvalue(out))
    report.check("channels: apply preserves trace", trace, 1e-12)
    report.check("channels: apply preserves positivity", positivity, 1e-10)

    worst = 0.0
    for p in COVARIANCE_STRENGTHS:
        channel = depolarizing(p)
        for _ in range(n):
            psi = random_pure(2, rng).amplitudes
            worst = max(worst, covariance_defect(channel, random_unitary(rng),
                np.outer(psi, psi.conj())))
    report.check("channels: depolarizing channel is covariant", worst, 1e-10)

    worst = 0.0
    for name in FAMILY_NAMES:
        channel = get_family(name)(0.61)
        for _ in range(n):
            a = random_density(2, rng).matrix
            b = random_density(2, rng).matrix
            worst = max(worst, np.abs(channel.act_local(np.kron(a, b)) -
                np.kron(channel.act(a), channel.act(b))).max())
    report.check("channels: local noise factorizes on product states", worst,
            1e-12)

    worst = 0.0
    for name in FAMILY_NAMES:
        channel = get_family(name)(0.29)
        choi = choi_matrix(channel)
        for _ in range(n):
            rho = random_density(2, rng).matrix
            worst = max(worst, np.abs(choi_apply(choi, rho) -
                channel.act(rho)).max())
    report.check("channels: Choi reconstruction matches Kraus action", worst,
            1e-10)

def check_entanglement(report, rng, n):
    worst = 0.0
    for _ in range(n):
        rho = random_density(4, rng).matrix
        uv = np.kron(random_unitary(rng), random_unitary(rng))
        worst = max(worst, abs(concurrence(uv @ rho @ uv.conj().T) -
            concurrence(rho)))
    report.check("entanglement: concurrence is local-unitary invariant",
            worst, 1e-9)

    worst = -np.inf
    for _ in range(n):
        # Mix pure states so that some of the triples are entangled.
        a = random_pure(4, rng).amplitudes
        b = random_pure(4, rng).amplitudes
        rho1 = np.outer(a, a.conj())
        rho2 = np.outer(b, b.conj())
        t = rng.random()
        worst = max(worst, concurrence(t * rho1 + (1 - t) * rho2) -
                t * concurrence(rho1) - (1 - t) * concurrence(rho2))
    report.check("entanglement: concurrence is convex", worst, 1e-9)

    worst = 0.0
    for _ in range(n):
        rho = random_density(4, rng).matrix
        worst = max(worst, np.abs(lambdas(rho) - omega_eigenvalues(rho)).max(),
                np.abs(lambdas(rho) - product_lambdas(rho)).max())
    report.check("entanglement: singular-value route agrees with omega", worst,
            1e-8)

    bell = np.zeros(4)
    bell[[0, 3]] = 1 / np.sqrt(2)
    bell = np.outer(bell, bell)
    worst = 0.0
    for w in (0.0, 1.0 / 3, 0.5, 1.0):
        werner = w * bell + (1 - w) * np.eye(4) / 4
        worst = max(worst, abs(concurrence(werner) - max(0, (3 * w - 1) / 2)))
    report.check("entanglement: Werner states", worst, 1e-8)

    worst = 0.0
    for p in np.linspace(0, 1, 11):
        worst = max(worst, abs(concurrence(phase_flip(p).act_local(bell)) -
            (1 - p) ** 2))
    report.check("entanglement: phase-flipped Bell state", worst, 1e-10)

def check_covariant_se(report, rng, n):
    worst = 0.0
    for p in COVARIANCE_STRENGTHS:
        objective = se_objective(depolarizing(p))
        for _ in range(n):
            x = np.array([lo + (hi - lo) * rng.random()
                for lo, hi in SE_BOUNDS])
            worst = max(worst, abs(objective(x)))
    report.check("measures: SE objective vanishes for depolarizing noise",
            worst, 1e-10)

def check_biasness(report, cfg, strengths):
    cds_ad = cds_bf = cds_dc = ddc_dc = 0.0
    for p in strengths:
        cds_ad = max(cds_ad, abs(cds(amplitude_damping(p), cfg) -
            (np.sqrt(1 - p) - (1 - p))))
        cds_bf = max(cds_bf, abs(cds(get_family("bf")(p), cfg) - p))
        cds_dc = max(cds_dc, cds(depolarizing(p), cfg))
        ddc_dc = max(ddc_dc, ddc(depolarizing(p), cfg))
    report.check("measures: CDS of amplitude damping closed form", cds_ad,
            1e-5)
    report.check("measures: CDS of bit flip closed form", cds_bf, 1e-5)
    report.check("measures: CDS of depolarizing noise vanishes", cds_dc, 1e-8)
    report.check("measures: DDC of depolarizing noise vanishes", ddc_dc, 1e-8)

    bloch = 0.0
    for family in ("ad", "bf", "pf", "bpf"):
        for p in strengths:
            channel = get_family(family)(p)
            bloch = max(bloch, abs(cds(channel, cfg) -
                cds_from_bloch_map(channel)))
    report.check("measures: CDS matches the Bloch map form", bloch, 1e-5)

    witness = np.concatenate([[np.pi / 4, np.pi / 2, np.pi / 2, 0, 0, 0],
        [np.pi / 2, 0.0, np.pi]])
    channel = amplitude_damping(0.5)
    value = ic(channel, cfg)
    report.check("measures: IC(ad) exceeds its witness value",
            ic_objective(channel)(witness) - value, 1e-9)
    report.check("measures: IC of depolarizing noise vanishes",
            ic(depolarizing(0.5), cfg), 1e-8)

def _by_family(points):
    groups = {}
    for point in points:
        groups.setdefault(point.family, []).append(point)
    return groups

def _unimodal_slack(values):
    top = int(np.argmax(values))
    slack = 0.0
    for a, b in zip(values[:top], values[1:top + 1]):
        slack = max(slack, a - b)
    for a, b in zip(values[top:], values[top + 1:]):
        slack = max(slack, b - a)
    return slack

def check_sweep(report, points):
    groups = _by_family(points)
    noisy = [f for f in ("ad", "bf", "pf", "bpf") if f in groups]

    for family, rows in sorted(groups.items()):
        ec = [row.ec for row in rows]
        if ec[0] is not None:
            report.check("sweep %s: EC(0) = 1" % family, abs(ec[0] - 1), 1e-6)
            report.check("sweep %s: EC is nonincreasing" % family,
                    max([b - a for a, b in zip(ec, ec[1:])] + [0.0]), 1e-4)
            if family != "dc":
                report.check("sweep %s: EC(1) = 0" % family, abs(ec[-1]),
                        1e-6)

    if any(row.eb1 is not None for row in points):
        chain = 0.0
        for row in points:
            low = 0.0 if row.se is None else row.se
            chain = max(chain, -low, low - row.eb1, row.eb1 - row.eb2)
        report.check("sweep: 0 <= SE <= EB1 <= EB2", chain, 1e-6)
        for family in noisy:
            report.check("sweep %s: EB1 = EB2" % family,
                    max(abs(row.eb1 - row.eb2) for row in groups[family]),
                    1e-4)

    if not any(row.se is not None for row in points):
        return

    if "dc" in groups:
        report.check("sweep dc: SE vanishes",
                max(abs(row.se) for row in groups["dc"]), 1e-4)
    if "ad" in groups:
        rows = groups["ad"]
        ends = [row.se for row in rows if row.p in (0.0, 1.0)]
        report.check("sweep ad: SE vanishes at p = 0 and 1",
                max([abs(v) for v in ends] + [0.0]), 1e-6)
        inner = [row.se for row in rows if 0.05 < row.p < 0.95]
        if inner:
            report.check("sweep ad: SE is positive inside (0, 1)",
                    0.01 - min(inner), 0.0)
    flips = [f for f in ("bf", "pf", "bpf") if f in groups]
    for other in flips[1:]:
        report.check("sweep %s/%s: SE agrees" % (flips[0], other),
                max(abs(a.se - b.se) for a, b in zip(groups[flips[0]],
                    groups[other])), 1e-3)
    for family in noisy:
        report.check("sweep %s: SE is unimodal" % family,
                _unimodal_slack([row.se for row in groups[family]]), 1e-3)

def check_grid_oracles(report, cfg):
    channel = amplitude_damping(0.5)
    for name, objective, bounds, best in (
            ("EC", ec_objective(channel), EC_BOUNDS,
                entanglement_capacity("ad", 0.5, cfg)),
            ("SE", se_objective(channel), SE_BOUNDS,
                saved_entanglement("ad", 0.5, cfg)[0]),
            ("IC", ic_objective(channel), SE_BOUNDS, ic(channel, cfg))):
        grid = grid_oracle(objective, bounds, 5)
        report.check("measures: %s optimizer beats the 5-point grid" % name,
                grid - best, 1e-6)

def verify(level="quick", cfg=None):
    """Runs the self-checks and returns the Report."""
    if level not in SAMPLES:
        raise ValueError("level must be 'quick' or 'full', not %r" % (level,))
    n = SAMPLES[level]
    rng = make_stream(42, STREAM_VERIFY)
    report = Report()

    log("Verifying build (%s)" % level)
    check_matkernel(report, rng, min(n, 100))
    check_states(report, rng, n)
    check_channels(report, rng, n)
    check_entanglement(report, rng, min(n, 200))
    check_covariant_se(report, rng, min(n, 500) // len(COVARIANCE_STRENGTHS))

    if level == "quick":
        sweep_cfg = OptimizerConfig(restarts=4, max_iterations=1500, seed=42)
        check_biasness(report, sweep_cfg, (0.0, 0.5, 1.0))
        points = run_sweep(RunConfig(p_steps=3, measures=("ec",),
            optimizer=sweep_cfg, output=None))
    else:
        sweep_cfg = cfg if cfg is not None else OptimizerConfig()
        check_biasness(report, sweep_cfg, np.linspace(0, 1, 21))
        check_grid_oracles(report, sweep_cfg)
        points = run_sweep(RunConfig(p_steps=11, measures=("se", "ec", "eb"),
            optimizer=sweep_cfg, output=None))
    check_sweep(report, points)

    if report.passed:
        log("All %d checks passed" % len(report.results))
    else:
        log("%d of %d checks FAILED: %s" % (len(report.failures),
            len(report.results), ", ".join(report.failures)))
    return report
