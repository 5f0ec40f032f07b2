"""Invariant suites run by ``mongefoil verify``.

Each suite returns a list of :class:`Check` records with the tolerance it
was held to and the worst deviation seen.  Randomness comes only from the
seed, so a suite is reproducible.
"""

from dataclasses import asdict, dataclass

import numpy as np

from .errors import InvalidArgumentError
from .extremal import boundary_ellipse_point, ellipse_area, leaf_eval, solve_extremal
from .geometry import symmetrize
from .lp import solve_lp
from .oracles import brute_force_lp, random_lp, shoelace_area
from .robin import robin_value
from .vk import leaf_disjointness_check, vk_eval

SUITES = ("lp", "extremal", "robin", "vk", "foliation")


@dataclass
class Check:
    suite: str
    name: str
    tol: float
    worst: float
    n: int
    passed: bool


def _check(suite, name, tol, values):
    values = np.asarray(values, dtype=float)
    worst = float(np.max(values)) if values.size else 0.0
    return Check(suite, name, tol, worst, int(values.size), bool(worst <= tol))


def random_directions(rng, n, count):
    return rng.normal(size=(count, n)) + 1j * rng.normal(size=(count, n))


def suite_lp(body, rng, n_lps=200):
    errs = []
    for _ in range(n_lps):
        lp = random_lp(rng)
        sol = solve_lp(lp)
        ref = brute_force_lp(lp)
        if sol.status == "optimal":
            errs.append(np.inf if ref is None else abs(sol.value - ref))
        elif sol.status == "infeasible":
            errs.append(0.0 if ref is None else np.inf)
        else:
            r = sol.ray
            ok = np.all(lp.A @ r <= 1e-9) and lp.objective @ r > 0
            errs.append(0.0 if ok else np.inf)
    return [_check("lp", "simplex matches vertex enumeration", 1e-8, errs)]


def suite_extremal(body, rng, n_dirs=20):
    V = random_directions(rng, body.dim, n_dirs)
    contain, scale, area = [], [], []
    for v in V:
        d = solve_extremal(body, v)
        th = np.linspace(0, 2 * np.pi, 64, endpoint=False)
        pts = np.array([boundary_ellipse_point(d, t) for t in th])
        u = rng.normal(size=(32, body.dim))
        u /= np.linalg.norm(u, axis=1, keepdims=True)
        h = np.array([body.support(x) for x in u])
        contain.append(max(0.0, float(np.max(pts @ u.T - h[None, :]))))
        lam = complex(rng.normal(), rng.normal())
        scale.append(abs(solve_extremal(body, lam * v).rho * abs(lam) - d.rho) / d.rho)
        if body.dim == 2:
            th = np.linspace(0, 2 * np.pi, 20000, endpoint=False)
            poly = np.array([boundary_ellipse_point(d, t) for t in th])
            a = ellipse_area(d)
            if a > 0:
                area.append(abs(shoelace_area(poly) - a) / a)
    checks = [_check("extremal", "boundary ellipse inside K", 1e-8, contain),
              _check("extremal", "scale covariance", 1e-9, scale)]
    if area:
        checks.append(_check("extremal", "ellipse area law", 1e-6, area))
    return checks


def suite_robin(body, rng, n_dirs=50):
    """The difference body never has a larger Robin function, and the two
    agree on real directions (segment leaves)."""
    sym = symmetrize(body)
    V = random_directions(rng, body.dim, n_dirs)
    below, real, homog = [], [], []
    for v in V:
        r = robin_value(body, v)
        below.append(max(0.0, robin_value(sym, v) - r))
        x = v.real
        real.append(abs(robin_value(body, x) - robin_value(sym, x)))
        lam = complex(rng.normal(), rng.normal())
        homog.append(abs(robin_value(body, lam * v) - r - np.log(abs(lam))))
    return [_check("robin", "difference body has rho_K no larger", 1e-7, below),
            _check("robin", "difference body agrees on real directions", 1e-7, real),
            _check("robin", "logarithmic homogeneity", 1e-9, homog)]


def _require_planar(body, suite):
    if body.dim != 2:
        raise InvalidArgumentError(f"suite {suite!r} needs a planar body")


def suite_vk(body, rng, n_leaves=10):
    _require_planar(body, "vk")
    harm, conj, trip = [], [], []
    for v in random_directions(rng, 2, n_leaves):
        d = solve_extremal(body, v)
        zeta = rng.uniform(0.1, 0.95) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        z = leaf_eval(d, zeta)
        res = vk_eval(body, z)
        harm.append(abs(res.value + np.log(abs(zeta))))
        trip.append(res.residual / (1 + np.linalg.norm(z)))
        conj.append(abs(vk_eval(body, np.conj(z)).value - res.value))
    return [_check("vk", "harmonic along leaves", 1e-6, harm),
            _check("vk", "round trip residual", 1e-8, trip),
            _check("vk", "conjugation invariance", 1e-6, conj)]


def suite_foliation(body, rng, n_pairs=200):
    _require_planar(body, "foliation")
    hits = []
    for _ in range(n_pairs):
        v1, v2 = random_directions(rng, 2, 2)
        rep = leaf_disjointness_check(body, v1, v2, n_samples=16)
        hits.append(float(len(rep.witnesses)))
    return [_check("foliation", "barycentric leaves disjoint outside K", 0.0, hits)]


_RUNNERS = {"lp": suite_lp, "extremal": suite_extremal, "robin": suite_robin,
            "vk": suite_vk, "foliation": suite_foliation}


def run_suite(body, suite, seed=0):
    """Run one suite (or ``"all"``) and return a JSON-ready report."""
    if suite == "all":
        names = SUITES if body.dim == 2 else ("lp", "extremal", "robin")
    elif suite in _RUNNERS:
        names = (suite,)
    else:
        raise InvalidArgumentError(f"unknown suite {suite!r}; choose from "
                                   f"{', '.join(SUITES + ('all',))}")
    checks = []
    for name in names:
        checks.extend(_RUNNERS[name](body, np.random.default_rng(seed)))
    return {"suite": suite, "seed": seed, "passed": all(c.passed for c in checks),
            "checks": [asdict(c) for c in checks]}
