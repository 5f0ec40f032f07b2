"""Extremal disks: maximal inscribed complex ellipses for a direction at infinity.

For a direction ``v`` in C^n the competitors are the maps

    f(zeta) = a0 + rho * (v / zeta + conj(v) * zeta),   a0 in R^n, rho > 0,

whose boundary circle traces the real ellipse ``a0 + 2 rho Re(e^{-i theta} v)``
and must stay inside the body.  The extremal disk maximises ``rho``.  For a
polytope ``<l_i, x> <= b_i`` the inclusion is exactly

    <l_i, a0> + 2 rho |<l_i, v>| <= b_i,

(the modulus is the maximum of ``<l_i, 2 rho Re(e^{-i theta} v)>`` over theta)
so the problem is a linear program in ``(a0, rho)``.
"""

from dataclasses import dataclass, field
import logging

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from .errors import (ConvergenceError, InvalidArgumentError, LpStatusError,
                     OutsideParameterDiskError, UnsupportedRepresentationError)
from .geometry import Ball, HPolytope, SupportBody, sphere_directions
from .lp import LinearProgram, optimal_face_extent, solve_lp

log = logging.getLogger(__name__)

DEGENERATE_TOL = 1e-12
SNAP_TOL = 1e-6
SINGLETON_TOL = 1e-9


@dataclass(frozen=True)
class Direction:
    """A point ``[0:v]`` of the hyperplane at infinity.

    ``v`` is the vector exactly as supplied; ``canonical = v / scale`` has its
    largest-modulus entry (lowest index on ties) equal to 1.
    """

    v: np.ndarray
    canonical: np.ndarray
    scale: complex
    pivot: int

    @property
    def dim(self):
        return self.v.size

    def conj(self):
        return canonicalize(np.conj(self.v))


def canonicalize(v):
    """Canonical representative of the projective point ``[0:v]``."""
    v = np.asarray(v, dtype=complex).ravel()
    if v.size < 1 or not np.all(np.isfinite(v)):
        raise InvalidArgumentError("direction must be a finite complex vector")
    mod = np.abs(v)
    top = mod.max()
    if top == 0:
        raise InvalidArgumentError("direction vector must be nonzero")
    pivot = int(np.flatnonzero(mod == top)[0])
    lam = complex(v[pivot])
    canon = v / lam
    canon[pivot] = 1.0
    v = v.copy()
    v.setflags(write=False)
    canon.setflags(write=False)
    return Direction(v, canon, lam, pivot)


def as_direction(v):
    return v if isinstance(v, Direction) else canonicalize(v)


def wedge_norm(a, b):
    """``|a ^ b|`` from the 2x2 minors (no cancellation through the Gram determinant)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    n = a.size
    s = 0.0
    for j in range(n):
        for k in range(j + 1, n):
            m = a[j] * b[k] - a[k] * b[j]
            s += m * m
    return float(np.sqrt(s))


def is_real_direction(v, tol=DEGENERATE_TOL):
    """True when ``v`` is a real vector up to a unimodular factor.

    ``|Re(e^{-i phi} v) ^ Im(e^{-i phi} v)|`` does not depend on phi, so no
    phase search is needed.
    """
    v = np.asarray(v, dtype=complex)
    return wedge_norm(v.real, v.imag) < tol * float(np.vdot(v, v).real)


@dataclass(frozen=True)
class CenterSet:
    """Convex set of admissible centres.

    In the plane it is a segment ``[a1, a2]`` (possibly a point) stored in
    ``endpoints``.  In higher dimension ``endpoints`` holds the extreme points
    found along the coordinate probes and ``extents`` their ``(lo, hi)``
    ranges; the description is then partial.
    """

    endpoints: np.ndarray
    extents: np.ndarray = None
    exact: bool = True

    @property
    def diameter(self):
        P = self.endpoints
        return float(max(np.linalg.norm(p - q) for p in P for q in P))

    @property
    def is_singleton(self):
        return self.diameter <= SINGLETON_TOL

    @property
    def midpoint(self):
        if self.exact:
            return 0.5 * (self.endpoints[0] + self.endpoints[-1])
        return self.endpoints.mean(axis=0)

    def contains(self, x, tol=1e-8):
        x = np.asarray(x, dtype=float)
        if self.exact:
            a, b = self.endpoints[0], self.endpoints[-1]
            d = b - a
            dd = float(d @ d)
            t = 0.0 if dd == 0 else float(np.clip((x - a) @ d / dd, 0, 1))
            return bool(np.linalg.norm(a + t * d - x) <= tol)
        lo, hi = self.extents[:, 0], self.extents[:, 1]
        return bool(np.all(x >= lo - tol) and np.all(x <= hi + tol))

    def as_list(self):
        return self.endpoints.tolist()


@dataclass(frozen=True)
class PointAtInfinity:
    """The projective point ``[0:v]``; what a leaf passes through at zeta = 0."""

    direction: Direction


@dataclass(frozen=True)
class EllipseGeometry:
    p: np.ndarray
    q: np.ndarray
    area: float


@dataclass(frozen=True)
class ExtremalDisk:
    """Leaf ``zeta -> center + rho (v/zeta + conj(v) zeta)`` of the foliation.

    ``rho`` is relative to ``direction.v`` as supplied.  ``canonical_center``
    is False when the centre is a non-canonical choice (dimension >= 3).
    ``error_bound`` is the constraint violation left by discretised solvers.
    """

    direction: Direction
    rho: float
    center: np.ndarray
    center_set: CenterSet
    is_degenerate: bool
    canonical_center: bool = True
    error_bound: float = 0.0
    info: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def v(self):
        return self.direction.v

    @property
    def rho_canonical(self):
        """Scale factor of the canonical chart ``(1, c_2, ..., c_n)``."""
        return self.rho * abs(self.direction.scale)

    def with_center(self, center):
        center = np.asarray(center, dtype=float)
        return ExtremalDisk(self.direction, self.rho, center, self.center_set,
                            self.is_degenerate, False, self.error_bound, self.info)

    def __call__(self, zeta):
        return leaf_eval(self, zeta)


# -- linear-program construction --------------------------------------------

def inclusion_rows(normals, direction):
    """Coefficient ``2 |<l_i, v>|`` multiplying rho in each inclusion row."""
    v = as_direction(direction).v
    return 2.0 * np.abs(np.asarray(normals) @ v)


def build_inclusion_lp(body, direction):
    """LP in ``(a0, rho)``: maximize rho subject to the ellipse staying in ``body``."""
    direction = as_direction(direction)
    H = body if isinstance(body, HPolytope) else getattr(body, "hpoly", None)
    if H is None:
        raise UnsupportedRepresentationError("inclusion LP needs half-spaces")
    if direction.dim != H.dim:
        raise InvalidArgumentError("direction and body dimensions differ")
    n = H.dim
    A = np.column_stack([H.normals, inclusion_rows(H.normals, direction)])
    A = np.vstack([A, np.r_[np.zeros(n), -1.0]])
    b = np.r_[H.offsets, 0.0]
    return LinearProgram(np.r_[np.zeros(n), 1.0], A, b)


def _snap(R, r, p):
    """Move ``p`` onto the vertex of ``{R a <= r}`` defined by its near-active rows."""
    slack = r - R @ p
    act = np.flatnonzero(slack <= SNAP_TOL * (1.0 + np.abs(r)))
    if act.size < R.shape[1] or np.linalg.matrix_rank(R[act], tol=1e-9) < R.shape[1]:
        return p
    q, *_ = np.linalg.lstsq(R[act], r[act], rcond=None)
    if np.all(R @ q <= r + 1e-10 * (1.0 + np.abs(r))):
        return q
    return p


def _center_set_polytope(lp, sol):
    n = lp.n_vars - 1
    rho = sol.value
    R = lp.A[:-1, :n]
    r = lp.b[:-1] - lp.A[:-1, n] * rho
    pts = []
    extents = []
    for k in range(n):
        e = np.zeros(n + 1)
        e[k] = 1.0
        lo, hi, x_lo, x_hi = optimal_face_extent(lp, e, solution=sol)
        extents.append((lo, hi))
        pts.append(_snap(R, r, x_lo[:n]))
        pts.append(_snap(R, r, x_hi[:n]))
    pts = np.array(pts)
    if n == 2:
        best, pair = -1.0, (0, 0)
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                d = np.linalg.norm(pts[i] - pts[j])
                if d > best:
                    best, pair = d, (i, j)
        if best <= SINGLETON_TOL:
            c = _snap(R, r, sol.x_star[:n])
            return CenterSet(np.array([c, c]))
        a, b = pts[pair[0]], pts[pair[1]]
        # lexicographic order, ignoring roundoff-level differences
        for x, y in zip(a, b):
            if abs(x - y) > SINGLETON_TOL:
                if x > y:
                    a, b = b, a
                break
        return CenterSet(np.array([a, b]))
    ext = np.array(extents)
    if np.max(ext[:, 1] - ext[:, 0]) <= SINGLETON_TOL:
        c = _snap(R, r, sol.x_star[:n])
        return CenterSet(np.array([c, c]), extents=ext, exact=True)
    return CenterSet(pts, extents=ext, exact=False)


# -- solvers -----------------------------------------------------------------

def solve_extremal(body, direction, **support_opts):
    """Extremal disk of ``body`` through ``[0:v]``.

    Polytopes go through the inclusion LP; the centre is the midpoint of the
    optimal centre segment (dimension 2) or of the probe extents (higher
    dimension, flagged non-canonical).  Balls use the exact answer: centred at
    the ball's centre with ``2 rho`` times the largest singular value of
    ``[Re v, Im v]`` equal to the radius.  Other support bodies use
    :func:`solve_extremal_support`.
    """
    direction = as_direction(direction)
    if direction.dim != body.dim:
        raise InvalidArgumentError("direction and body dimensions differ")
    degenerate = is_real_direction(direction.v)
    if isinstance(body, Ball):
        P = np.column_stack([direction.v.real, direction.v.imag])
        smax = np.linalg.svd(P, compute_uv=False)[0]
        rho = body.radius / (2.0 * smax)
        c = body.center.copy()
        return ExtremalDisk(direction, float(rho), c, CenterSet(np.array([c, c])), degenerate)
    if isinstance(body, SupportBody):
        return solve_extremal_support(body, direction, **support_opts)
    lp = build_inclusion_lp(body, direction)
    sol = solve_lp(lp)
    if not sol.optimal:
        raise LpStatusError(sol.status, f"inclusion LP is {sol.status}")
    cset = _center_set_polytope(lp, sol)
    exact = cset.exact and body.dim == 2 or cset.is_singleton
    return ExtremalDisk(direction, float(sol.value), cset.midpoint, cset, degenerate,
                        canonical_center=bool(exact), info={"lp": sol})


def solve_extremal_support(body, direction, n_dirs=None, refine_tol=1e-8, max_iters=60,
                           grid=None):
    """Cutting-plane solve for a body given by its support function.

    Starts from ``n_dirs`` sampled unit normals (64 in the plane, 256 in R^3),
    solves the inclusion LP, then repeatedly adds the normal along which the
    candidate ellipse most violates the support function (grid search plus a
    local polish) until the violation drops below ``refine_tol``.
    """
    direction = as_direction(direction)
    n = body.dim
    if n_dirs is None:
        n_dirs = 64 if n == 2 else 256
    if n_dirs < 8:
        raise InvalidArgumentError("need at least 8 initial directions")
    v = direction.v
    U = sphere_directions(n, n_dirs)
    h = body.support_many(U)
    G = sphere_directions(n, grid or (4096 if n <= 3 else 8000))
    hG = body.support_many(G)
    a0, rho, viol = None, None, np.inf
    for it in range(max_iters):
        A = np.column_stack([U, 2.0 * np.abs(U @ v)])
        lp = LinearProgram(np.r_[np.zeros(n), 1.0],
                           np.vstack([A, np.r_[np.zeros(n), -1.0]]), np.r_[h, 0.0])
        sol = solve_lp(lp)
        if not sol.optimal:
            raise LpStatusError(sol.status, f"cutting-plane LP is {sol.status}")
        a0, rho = sol.x_star[:n], sol.value

        def violation(u):
            u = u / np.linalg.norm(u)
            return float(u @ a0 + 2 * rho * abs(u @ v) - body.support(u))

        gvals = G @ a0 + 2 * rho * np.abs(G @ v) - hG
        order = np.argsort(-gvals)[:4]
        cuts, viol = [], -np.inf
        for k in order:
            u = _polish_violation(violation, G[k], n)
            val = violation(u)
            viol = max(viol, val)
            if val > 0.1 * refine_tol:
                cuts.append(u / np.linalg.norm(u))
        log.debug("cutting plane iter %d rho=%.15g violation=%.3e", it, rho, viol)
        if viol < refine_tol:
            cset = CenterSet(np.array([a0, a0]))
            return ExtremalDisk(direction, float(rho), a0.copy(), cset,
                                is_real_direction(v), canonical_center=False,
                                error_bound=max(viol, 0.0), info={"iterations": it + 1})
        cuts = np.array(cuts)
        U = np.vstack([U, cuts])
        h = np.r_[h, body.support_many(cuts)]
    last = ExtremalDisk(direction, float(rho), a0, CenterSet(np.array([a0, a0])),
                        is_real_direction(v), canonical_center=False, error_bound=viol)
    raise ConvergenceError("cutting-plane loop did not reach refine_tol", last=last,
                           residual=viol)


def _polish_violation(violation, u0, n):
    if n == 2:
        t0 = np.arctan2(u0[1], u0[0])
        res = minimize_scalar(lambda t: -violation(np.array([np.cos(t), np.sin(t)])),
                              bounds=(t0 - 0.01, t0 + 0.01), method="bounded",
                              options={"xatol": 1e-12})
        return np.array([np.cos(res.x), np.sin(res.x)])
    res = minimize(lambda u: -violation(u), u0, method="Nelder-Mead",
                   options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 400})
    return res.x / np.linalg.norm(res.x)


def center_set(body, direction):
    return solve_extremal(body, direction).center_set


def barycenter_center(body, direction):
    """Midpoint of the centre segment of the extremal disks for ``direction``."""
    return solve_extremal(body, direction).center


# -- evaluation on a solved disk --------------------------------------------

def leaf_eval(disk, zeta):
    """``center + rho (v/zeta + conj(v) zeta)``; ``[0:v]`` at zeta = 0."""
    zeta = complex(zeta)
    if abs(zeta) > 1.0 + 1e-12:
        raise OutsideParameterDiskError(f"|zeta| = {abs(zeta)} > 1")
    if zeta == 0:
        return PointAtInfinity(disk.direction)
    v = disk.direction.v
    return disk.center + disk.rho * (v / zeta + np.conj(v) * zeta)


def boundary_ellipse_point(disk, theta):
    """Real point ``center + 2 rho (Re v cos theta + Im v sin theta)``."""
    v = disk.direction.v
    return disk.center + 2 * disk.rho * (v.real * np.cos(theta) + v.imag * np.sin(theta))


def ellipse_geometry(disk):
    v = disk.direction.v
    p = 2 * disk.rho * v.real
    q = 2 * disk.rho * v.imag
    return EllipseGeometry(p, q, float(np.pi * wedge_norm(p, q)))


def ellipse_area(disk):
    """Area ``4 pi rho^2 |Re v ^ Im v|`` of the boundary ellipse."""
    v = disk.direction.v
    return float(4 * np.pi * disk.rho ** 2 * wedge_norm(v.real, v.imag))
