"""The Siciak-Zaharjuta extremal function V_K via the extremal-disk foliation.

Every point ``z`` of C^2 outside K lies on a leaf

    f(zeta) = a0(v) + rho(v) (v/zeta + conj(v) zeta),

and ``V_K(z) = -log|zeta|`` there.  Writing ``w = v/zeta`` (a point outside
the Robin indicatrix) turns this into a single map

    F(w) = a0([w]) + w + rho(w)^2 conj(w),      V_K(F(w)) = -log rho(w),

where ``rho(w)`` is the extremal scale for the raw direction ``w``.
:func:`vk_eval` inverts ``F`` with a damped Newton iteration whose Jacobian
is taken by central differences; the leaf coordinates ``(c, zeta)`` are
recovered from ``w`` afterwards.
"""

from dataclasses import dataclass, field
import logging

import numpy as np
from scipy.optimize import least_squares
from scipy.spatial import cKDTree

from .errors import ConvergenceError, InvalidArgumentError
from .extremal import Direction, as_direction, canonicalize, leaf_eval, solve_extremal
from .geometry import Ball

log = logging.getLogger(__name__)

CONVERGED = "converged"
FALLBACK = "fallback"
BOUNDARY = "boundary"


@dataclass(frozen=True)
class LeafCoordinates:
    direction: Direction
    zeta: complex


@dataclass(frozen=True)
class EvalResult:
    value: float
    leaf: LeafCoordinates
    residual: float
    status: str
    w: np.ndarray = None
    evaluations: int = 0


# -- closed forms and oracles -------------------------------------------------

def joukowski_inverse(z):
    """``h(z) = z + sqrt(z^2 - 1)`` on the branch with ``|h| >= 1``."""
    z = complex(z)
    s = np.sqrt(z - 1) * np.sqrt(z + 1)
    h = z + s
    if abs(h) < 1:
        h = z - s
    return h


def vk_interval(z):
    """Extremal function of ``[-1, 1]`` in C: ``log|h(z)|``; zero on the interval."""
    z = complex(z)
    if z.imag == 0 and -1.0 <= z.real <= 1.0:
        return 0.0
    return max(0.0, float(np.log(abs(joukowski_inverse(z)))))


def vk_ball(z, center=None, radius=1.0):
    """Extremal function of a real Euclidean ball, by the closed form

    ``V(z) = 1/2 log h(|z|^2 + |z.z - 1|)`` for the unit ball, after the affine
    normalisation ``z -> (z - center) / radius``.
    """
    z = np.asarray(z, dtype=complex).ravel()
    if center is not None:
        z = z - np.asarray(center, dtype=float)
    z = z / float(radius)
    t = float(np.vdot(z, z).real + abs(np.sum(z * z) - 1))
    t = max(t, 1.0)
    return 0.5 * float(np.log(t + np.sqrt(t * t - 1.0)))


def robin_ball(v):
    """Closed-form Robin function of the real unit ball."""
    v = np.asarray(v, dtype=complex).ravel()
    return 0.5 * float(np.log(2.0 * (np.vdot(v, v).real + abs(np.sum(v * v)))))


def vk_product(values):
    """V of a product set from the V values of its factors (max rule)."""
    values = list(values)
    if not values:
        raise InvalidArgumentError("vk_product needs at least one value")
    return float(max(values))


# -- foliation map ------------------------------------------------------------

def _pack(w):
    return np.concatenate([w.real, w.imag])


def _unpack(x):
    n = x.size // 2
    return x[:n] + 1j * x[n:]


class _FoliationMap:
    """``w -> F(w)`` for one body, counting evaluations."""

    def __init__(self, body, center_fn=None):
        self.body = body
        self.center_fn = center_fn
        self.calls = 0

    def disk(self, w):
        self.calls += 1
        return solve_extremal(self.body, w)

    def __call__(self, w):
        d = self.disk(w)
        c = d.center if self.center_fn is None else self.center_fn(d)
        return c + w + d.rho ** 2 * np.conj(w), d


def foliation_map(body, w):
    """``F(w) = a0([w]) + w + rho(w)^2 conj(w)`` and the disk it used."""
    w = np.asarray(w, dtype=complex).ravel()
    return _FoliationMap(body)(w)


def _initial_guess(fmap, z, n_fixed=6):
    body = fmap.body
    a = body.interior_point()
    w = z - a
    if not np.any(np.abs(w) > 1e-12):
        w = w + 1e-3
    for _ in range(n_fixed):
        d = fmap.disk(w)
        rho2 = min(d.rho ** 2, 1 - 1e-3)
        y = z - d.center
        w_new = y.real / (1 + rho2) + 1j * y.imag / (1 - rho2)
        if not np.all(np.isfinite(w_new)) or not np.any(w_new):
            break
        w = w_new
    return w


def _jacobian(fun, x, fx, step):
    m = x.size
    J = np.empty((fx.size, m))
    for k in range(m):
        e = np.zeros(m)
        e[k] = step
        J[:, k] = (fun(x + e) - fun(x - e)) / (2 * step)
    return J


def _newton(fun, x0, tol, max_iter=40, max_halvings=40, fd_step=1e-6):
    x = x0.copy()
    fx = fun(x)
    r = np.linalg.norm(fx)
    for it in range(max_iter):
        if r <= tol:
            return x, r, it, True
        J = _jacobian(fun, x, fx, fd_step * max(1.0, np.linalg.norm(x)))
        try:
            dx = np.linalg.lstsq(J, -fx, rcond=None)[0]
        except np.linalg.LinAlgError:
            return x, r, it, False
        t = 1.0
        for _ in range(max_halvings):
            xn = x + t * dx
            fn = fun(xn)
            rn = np.linalg.norm(fn)
            if rn < r:
                break
            t *= 0.5
        else:
            return x, r, it, False
        x, fx, r = xn, fn, rn
    return x, r, max_iter, r <= tol


def vk_eval(body, z, tol=1e-10, n_starts=8, max_iter=40, contain_tol=1e-12,
            experimental=False):
    """Evaluate ``V_K(z)`` by locating the leaf through ``z``.

    Parameters
    ----------
    body : ConvexBody
        Planar body (any dimension with ``experimental=True``, no guarantees).
    z : array_like of complex
    tol : float
        Newton stops once ``|F(w) - z| <= tol``.
    n_starts : int
        Number of phase-rotated starting points tried if the first fails.

    Returns
    -------
    EvalResult
        ``value = -log|zeta|`` with the leaf coordinates, the final
        residual ``|f_c(zeta) - z|`` and a status: ``converged``,
        ``fallback`` (found by the least-squares fallback) or ``boundary``
        (``z`` is a real point of K).
    """
    z = np.asarray(z, dtype=complex).ravel()
    if z.size != body.dim:
        raise InvalidArgumentError("point and body dimensions differ")
    if body.dim != 2 and not experimental:
        raise InvalidArgumentError("vk_eval is restricted to planar bodies")
    if np.all(np.abs(z.imag) <= contain_tol) and body.contains(z.real, tol=1e-9):
        return EvalResult(0.0, None, 0.0, BOUNDARY)

    fmap = _FoliationMap(body)

    def fun(x):
        return _pack(fmap(_unpack(x))[0] - z)

    accept = 1e-8 * (1.0 + np.linalg.norm(z))
    w0 = _initial_guess(fmap, z)
    best = None
    for k in range(max(1, n_starts)):
        start = w0 * np.exp(2j * np.pi * k / n_starts)
        x, r, _, ok = _newton(fun, _pack(start), tol, max_iter=max_iter)
        if best is None or r < best[1]:
            best = (x, r)
        if ok or r <= accept:
            return _result(fmap, z, _unpack(x), CONVERGED)
    log.info("vk_eval: Newton failed from %d starts (best residual %.3e); "
             "falling back to least squares", n_starts, best[1])
    ls = least_squares(fun, best[0], xtol=1e-15, ftol=1e-15, gtol=1e-15,
                       diff_step=1e-7, max_nfev=400)
    res = _result(fmap, z, _unpack(ls.x), FALLBACK)
    if res.residual <= accept:
        return res
    raise ConvergenceError("no leaf through z found", last=res, residual=res.residual)


def _result(fmap, z, w, status):
    Fw, disk = fmap(w)
    residual = float(np.linalg.norm(Fw - z))
    raw = canonicalize(w)
    lam = raw.scale
    # zeta is relative to the canonical representative w / lam
    zeta = abs(lam) * disk.rho / lam
    direction = canonicalize(raw.canonical)
    return EvalResult(float(-np.log(disk.rho)), LeafCoordinates(direction, complex(zeta)),
                      residual, status, w=w, evaluations=fmap.calls)


def vk_value(body, z, **opts):
    return vk_eval(body, z, **opts).value


# -- pullback by a polynomial map ---------------------------------------------

class SquareMap:
    """``P(z_1, ..., z_n) = (z_1^2, ..., z_n^2)``; a proper map of degree 2."""

    degree = 2

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return z * z


def vk_pullback(P, base_body, z, **opts):
    """``V_K(z) = V_{P(K)}(P(z)) / deg P`` for a proper polynomial map ``P``.

    ``base_body`` is ``P(K)``; it must be convex and satisfy
    ``P^{-1}(P(K)) = K``.
    """
    return vk_eval(base_body, P(z), **opts).value / P.degree


# -- Monge-Ampere residual -------------------------------------------------

def levi_matrix(fun, z, h):
    """Complex Hessian ``d^2 V / dz_j d conj(z_k)`` by central differences.

    Also returns the real Hessian in coordinates ``(Re z, Im z)``.
    """
    z = np.asarray(z, dtype=complex).ravel()
    n = z.size
    x0 = _pack(z)
    m = 2 * n

    def f(x):
        return fun(_unpack(x))

    f0 = f(x0)
    E = np.eye(m) * h
    plus = [f(x0 + E[i]) for i in range(m)]
    minus = [f(x0 - E[i]) for i in range(m)]
    Hr = np.empty((m, m))
    for i in range(m):
        Hr[i, i] = (plus[i] - 2 * f0 + minus[i]) / h ** 2
        for j in range(i + 1, m):
            val = (f(x0 + E[i] + E[j]) - f(x0 + E[i] - E[j])
                   - f(x0 - E[i] + E[j]) + f(x0 - E[i] - E[j])) / (4 * h ** 2)
            Hr[i, j] = Hr[j, i] = val
    xx, yy, xy = Hr[:n, :n], Hr[n:, n:], Hr[:n, n:]
    L = 0.25 * ((xx + yy) + 1j * (xy - xy.T))
    return L, Hr


def ma_residual(body, z, h=1e-3, method="inversion", tol=1e-13):
    """Normalised determinant of the complex Hessian of V_K at ``z``.

    ``|det L| / s^2`` with ``s = max(|tr L|, |H|_F / 4)``: the squared trace
    when V_K is strictly plurisubharmonic along some direction, the scale of
    the real Hessian ``H`` when it is locally pluriharmonic (then the trace
    vanishes too).  ``method="closed_form"`` uses :func:`vk_ball` for a
    :class:`~mongefoil.geometry.Ball`.
    """
    if method == "closed_form":
        if not isinstance(body, Ball):
            raise InvalidArgumentError("closed-form evaluation needs a Ball")

        def fun(p):
            return vk_ball(p, body.center, body.radius)
    elif method == "inversion":
        def fun(p):
            return vk_eval(body, p, tol=tol).value
    else:
        raise InvalidArgumentError(f"unknown method {method!r}")
    L, Hr = levi_matrix(fun, z, h)
    scale = max(abs(np.trace(L)), np.linalg.norm(Hr) / 4)
    if scale == 0:
        return 0.0
    return float(abs(np.linalg.det(L)) / scale ** 2)


# -- leaf intersections -------------------------------------------------------

@dataclass(frozen=True)
class IntersectionWitness:
    point: np.ndarray
    zeta1: complex
    zeta2: complex


@dataclass
class DisjointnessReport:
    disjoint: bool
    witnesses: list = field(default_factory=list)
    min_sample_distance: float = np.inf
    closest_pair: tuple = None
    coincident_curves: bool = False


def _real_phase(v):
    k = int(np.argmax(np.abs(v)))
    phase = v[k] / abs(v[k])
    return phase, (v / phase).real


def _leaf_parameter(disk, x):
    """Parameter ``zeta`` of the point ``x`` on the full curve of ``disk`` (planar)."""
    v = disk.direction.v
    y = x - disk.center
    if disk.is_degenerate:
        phase, r = _real_phase(v)
        t = complex(r @ y) / (disk.rho * float(r @ r))
        s = np.sqrt(t * t - 4)
        xi = min((t - s) / 2, (t + s) / 2, key=abs)
        return xi * phase
    P = 2 * disk.rho * np.column_stack([v.real, v.imag])
    u = np.linalg.solve(P, y)
    return 1.0 / (u[0] - 1j * u[1])


def leaf_intersections(disk1, disk2, tol=1e-9):
    """Common points of the two full leaf curves, via their implicit equations.

    Leaf 1 is substituted, as a Laurent polynomial in its parameter, into
    the implicit equation of leaf 2 (a complex conic ``u.u = 1`` with
    ``u = P^{-1}(x - a)``, or a complex line for a real direction); the
    roots of the resulting polynomial give the intersections.
    """
    a1, a2 = disk1.center, disk2.center
    p = disk1.rho * disk1.direction.v
    pc = np.conj(p)
    v2 = disk2.direction.v
    if disk2.is_degenerate:
        _, r = _real_phase(v2)
        ell = np.array([-r[1], r[0]])
        coeffs = np.array([ell @ pc, ell @ (a1 - a2), ell @ p], dtype=complex)
    else:
        P = 2 * disk2.rho * np.column_stack([v2.real, v2.imag])
        Pinv = np.linalg.inv(P)
        al = Pinv @ (a1 - a2)
        be = Pinv @ p
        ga = Pinv @ pc
        coeffs = np.array([ga @ ga, 2 * al @ ga, al @ al - 1 + 2 * be @ ga,
                           2 * al @ be, be @ be], dtype=complex)
    scale = max(1.0, float(np.max(np.abs(coeffs))))
    if np.all(np.abs(coeffs) <= tol * scale):
        return None
    c = coeffs.copy()
    while abs(c[0]) <= tol * scale:
        c = c[1:]
    out = []
    for z1 in np.roots(c):
        if z1 == 0:
            continue
        x = leaf_eval_full(disk1, z1)
        out.append(IntersectionWitness(x, complex(z1), complex(_leaf_parameter(disk2, x))))
    return out


def leaf_eval_full(disk, zeta):
    """Leaf formula without the disk restriction (the whole rational curve)."""
    v = disk.direction.v
    return disk.center + disk.rho * (v / zeta + np.conj(v) * zeta)


def _same_projective_point(v1, v2):
    """``[v1] = [v2]``: the 2x2 minors of the pair vanish relative to their sizes."""
    M = np.outer(v1, v2) - np.outer(v2, v1)
    return float(np.max(np.abs(M))) <= 1e-12 * np.linalg.norm(v1) * np.linalg.norm(v2)


def leaf_disjointness_check(body, dir1, dir2, center_rule="barycenter", n_samples=48,
                            margin=1e-6):
    """Check that two leaves do not meet outside K.

    ``center_rule`` is ``"barycenter"`` or a pair of explicit real centres.
    Intersections come from :func:`leaf_intersections`; a common point with
    both parameters strictly inside the unit disk is a witness.  As an
    independent look, both leaves are sampled on a polar grid and the
    closest pair of sample points is reported.
    """
    d1, d2 = as_direction(dir1), as_direction(dir2)
    if body.dim != 2:
        raise InvalidArgumentError("leaf disjointness is implemented for planar bodies")
    if _same_projective_point(d1.v, d2.v):
        raise InvalidArgumentError("directions define the same point at infinity")
    disk1 = solve_extremal(body, d1)
    disk2 = solve_extremal(body, d2)
    if center_rule != "barycenter":
        c1, c2 = center_rule
        disk1 = disk1.with_center(c1)
        disk2 = disk2.with_center(c2)
    report = DisjointnessReport(True)
    hits = leaf_intersections(disk1, disk2)
    if hits is None:
        # same conic; the two disks are complementary halves iff dir2 ~ conj(dir1)
        report.coincident_curves = True
        report.disjoint = _same_projective_point(np.conj(d1.v), d2.v)
    else:
        for w in hits:
            if abs(w.zeta1) < 1 - margin and abs(w.zeta2) < 1 - margin:
                report.witnesses.append(w)
        report.disjoint = not report.witnesses
    S1 = _sample_leaf(disk1, n_samples, margin)
    S2 = _sample_leaf(disk2, n_samples, margin)
    tree = cKDTree(S2)
    dist, idx = tree.query(S1)
    k = int(np.argmin(dist))
    report.min_sample_distance = float(dist[k])
    report.closest_pair = (S1[k], S2[idx[k]])
    return report


def _sample_leaf(disk, n, margin):
    r = np.linspace(0.05, 1 - 1e-3, n)
    th = 2 * np.pi * np.arange(2 * n) / (2 * n)
    Z = (r[:, None] * np.exp(1j * th[None, :])).ravel()
    v = disk.direction.v
    pts = disk.center[None, :] + disk.rho * (v[None, :] / Z[:, None]
                                             + np.conj(v)[None, :] * Z[:, None])
    return np.column_stack([pts.real, pts.imag])


def harmonicity_defect(body, disk, zeta, **opts):
    """``V_K(f(zeta)) + log|zeta|``; zero along an extremal leaf."""
    z = leaf_eval(disk, zeta)
    return vk_eval(body, z, **opts).value + float(np.log(abs(zeta)))
