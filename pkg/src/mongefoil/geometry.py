"""Real convex bodies: representations, support queries, faces, symmetrization.

Three representations are supported:

* :class:`HPolytope` -- intersection of half-spaces ``<normal_i, x> <= offset_i``;
* :class:`VPolytope` -- convex hull of a vertex list;
* :class:`SupportBody` -- a support-function oracle (with :class:`Ball` as the
  common closed-form case).

All bodies are immutable once built.  Geometric comparisons use absolute
tolerances; bodies are expected to be O(1) in size.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
import logging

import numpy as np

from .errors import (DegenerateBodyError, InvalidArgumentError,
                     UnsupportedRepresentationError)
from .lp import LinearProgram, solve_lp

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9
PARALLEL_TOL = 1e-10


def _as_vector(x, name="vector"):
    v = np.asarray(x, dtype=float).ravel()
    if v.size < 1 or not np.all(np.isfinite(v)):
        raise InvalidArgumentError(f"{name} must be a non-empty finite real vector")
    return v


def _check_direction(u, n):
    u = _as_vector(u, "direction")
    if u.size != n:
        raise InvalidArgumentError(f"direction has length {u.size}, body lives in R^{n}")
    if not np.any(u):
        raise InvalidArgumentError("support direction must be nonzero")
    return u


def sphere_directions(n, count=None, seed=0):
    """Deterministic, roughly uniform unit directions in R^n."""
    if n == 1:
        return np.array([[1.0], [-1.0]])
    if n == 2:
        count = count or 720
        th = 2 * np.pi * np.arange(count) / count
        return np.column_stack([np.cos(th), np.sin(th)])
    if n == 3:
        count = count or 2000
        k = np.arange(count) + 0.5
        z = 1 - 2 * k / count
        r = np.sqrt(1 - z * z)
        phi = np.pi * (1 + 5 ** 0.5) * k
        return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])
    count = count or 4000
    g = np.random.default_rng(seed).standard_normal((count, n))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


class ConvexBody:
    """Base class: a compact convex subset of R^n with nonempty interior."""

    dim: int

    def support(self, u):
        raise NotImplementedError

    def contains(self, x, tol=DEFAULT_TOL):
        raise NotImplementedError

    @property
    def is_polytope(self):
        return False

    def interior_point(self):
        raise NotImplementedError


class _Polytope(ConvexBody):
    @property
    def is_polytope(self):
        return True

    def contains(self, x, tol=DEFAULT_TOL):
        if tol < 0:
            raise InvalidArgumentError("tolerance must be nonnegative")
        x = _as_vector(x, "point")
        h = self.hpoly
        return bool(np.all(h.normals @ x <= h.offsets + tol))

    def interior_point(self):
        return self.vertices.mean(axis=0)


class HPolytope(_Polytope):
    """Bounded polytope ``{x : normals @ x <= offsets}`` with nonempty interior."""

    def __init__(self, normals, offsets):
        L = np.atleast_2d(np.asarray(normals, dtype=float))
        b = np.asarray(offsets, dtype=float).ravel()
        if L.shape[0] != b.size:
            raise InvalidArgumentError("normals and offsets differ in length")
        if not (np.all(np.isfinite(L)) and np.all(np.isfinite(b))):
            raise InvalidArgumentError("non-finite half-space data")
        if np.any(np.linalg.norm(L, axis=1) == 0):
            raise InvalidArgumentError("half-space normal must be nonzero")
        L.setflags(write=False)
        b.setflags(write=False)
        self.normals = L
        self.offsets = b
        self.dim = L.shape[1]
        self._validate()

    def _validate(self):
        n = self.dim
        norms = np.linalg.norm(self.normals, axis=1)
        # largest inscribed ball: maximize r with <l,x> + r|l| <= b
        lp = LinearProgram(np.r_[np.zeros(n), 1.0],
                           np.column_stack([self.normals, norms]), self.offsets)
        sol = solve_lp(lp.with_rows(np.r_[np.zeros(n), 1.0], 1e6))
        if not sol.optimal or sol.value <= 1e-12:
            raise DegenerateBodyError("half-spaces have no interior point")
        for k in range(n):
            for s in (1.0, -1.0):
                e = np.zeros(n)
                e[k] = s
                if not solve_lp(LinearProgram(e, self.normals, self.offsets)).optimal:
                    raise DegenerateBodyError("half-spaces do not bound a compact set")
        self._inner_center = sol.x_star[:n]

    @property
    def hpoly(self):
        return self

    def interior_point(self):
        return self._inner_center.copy()

    def support(self, u):
        u = _check_direction(u, self.dim)
        sol = solve_lp(LinearProgram(u, self.normals, self.offsets))
        return sol.value

    @cached_property
    def vertices(self):
        if self.dim == 2:
            return _hvertices_2d(self.normals, self.offsets)
        from scipy.spatial import HalfspaceIntersection, ConvexHull
        hs = HalfspaceIntersection(np.column_stack([self.normals, -self.offsets]),
                                   self._inner_center)
        pts = hs.intersections
        hull = ConvexHull(pts)
        return _dedupe(pts[hull.vertices])

    def __repr__(self):
        return f"HPolytope(dim={self.dim}, m={len(self.offsets)})"


class VPolytope(_Polytope):
    """Convex hull of a finite point set with nonempty interior."""

    def __init__(self, vertices):
        P = np.atleast_2d(np.asarray(vertices, dtype=float))
        if not np.all(np.isfinite(P)):
            raise InvalidArgumentError("non-finite vertex coordinates")
        P = _dedupe(P)
        n = P.shape[1]
        if P.shape[0] < n + 1 or np.linalg.matrix_rank(P[1:] - P[0], tol=1e-12) < n:
            raise DegenerateBodyError("vertices are not affinely spanning")
        if n == 2:
            P, h = _hull_2d(P)
        else:
            h = _hull_nd(P)
            P = h[1]
            h = h[0]
        P.setflags(write=False)
        self._vertices = P
        self._hpoly = h
        self.dim = n

    @property
    def vertices(self):
        return self._vertices

    @property
    def hpoly(self):
        return self._hpoly

    def support(self, u):
        u = _check_direction(u, self.dim)
        return float(np.max(self._vertices @ u))

    def __repr__(self):
        return f"VPolytope(dim={self.dim}, vertices={len(self._vertices)})"


class SupportBody(ConvexBody):
    """Convex body known only through its support function.

    ``support_fn`` is evaluated on unit vectors; it is extended to all nonzero
    vectors by positive homogeneity.  ``smooth`` is a hint for solvers that
    the boundary has no corners.
    """

    def __init__(self, support_fn, dim, smooth=False, n_check=64, seed=0):
        self._fn = support_fn
        self.dim = int(dim)
        self.smooth = bool(smooth)
        if self.dim < 1:
            raise InvalidArgumentError("dimension must be positive")
        self._check(n_check, seed)

    def _check(self, n_check, seed):
        rng = np.random.default_rng(seed)
        U = rng.standard_normal((n_check, self.dim))
        for u in U:
            if self.support(u) + self.support(-u) <= 0:
                raise DegenerateBodyError("support function gives an empty interior")
        for _ in range(n_check // 4):
            u, w = rng.standard_normal((2, self.dim))
            if self.support(u + w) > self.support(u) + self.support(w) + 1e-9:
                raise InvalidArgumentError("support function is not sublinear")

    def support(self, u):
        u = _check_direction(u, self.dim)
        r = np.linalg.norm(u)
        return float(r * self._fn(u / r))

    def support_many(self, U):
        """Vectorised support values for rows of ``U`` (any nonzero length)."""
        U = np.atleast_2d(U)
        return np.array([self.support(u) for u in U])

    def contains(self, x, tol=DEFAULT_TOL):
        if tol < 0:
            raise InvalidArgumentError("tolerance must be nonnegative")
        x = _as_vector(x, "point")
        U = sphere_directions(self.dim)
        return bool(np.all(U @ x <= self.support_many(U) + tol))

    def interior_point(self):
        U = np.vstack([np.eye(self.dim), -np.eye(self.dim)])
        h = self.support_many(U)
        return 0.5 * (h[:self.dim] - h[self.dim:])

    def __repr__(self):
        return f"SupportBody(dim={self.dim}, smooth={self.smooth})"


class Ball(SupportBody):
    """Euclidean ball; support function ``<u, center> + radius |u|``."""

    def __init__(self, center, radius):
        c = _as_vector(center, "center")
        r = float(radius)
        if not r > 0:
            raise DegenerateBodyError("ball radius must be positive")
        c.setflags(write=False)
        self.center = c
        self.radius = r
        super().__init__(lambda u: float(u @ c) + r, c.size, smooth=True, n_check=0)

    def support_many(self, U):
        U = np.atleast_2d(U)
        return U @ self.center + self.radius * np.linalg.norm(U, axis=1)

    def contains(self, x, tol=DEFAULT_TOL):
        if tol < 0:
            raise InvalidArgumentError("tolerance must be nonnegative")
        x = _as_vector(x, "point")
        return bool(np.linalg.norm(x - self.center) <= self.radius + tol)

    def interior_point(self):
        return self.center.copy()

    def __repr__(self):
        return f"Ball(center={self.center.tolist()}, radius={self.radius})"


# -- 2D hull machinery ------------------------------------------------------

def _dedupe(P, tol=1e-12):
    out = []
    for p in sorted(map(tuple, P)):
        if not out or np.max(np.abs(np.subtract(p, out[-1]))) > tol:
            out.append(p)
    return np.array(out, dtype=float)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_2d(points):
    """Andrew's monotone chain; CCW, starts at the lexicographically least point."""
    pts = sorted(map(tuple, np.asarray(points, dtype=float)))
    scale = max(1.0, max(abs(c) for p in pts for c in p))
    eps = 1e-12 * scale * scale
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= eps:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= eps:
            upper.pop()
        upper.append(p)
    hull = np.array(lower[:-1] + upper[:-1], dtype=float)
    if len(hull) < 3:
        raise DegenerateBodyError("points are collinear; hull has no interior")
    area = 0.5 * sum(_cross(hull[0], hull[i], hull[i + 1]) for i in range(1, len(hull) - 1))
    if area <= eps:
        raise DegenerateBodyError("hull has zero area")
    nxt = np.roll(hull, -1, axis=0)
    edge = nxt - hull
    normals = np.column_stack([edge[:, 1], -edge[:, 0]])
    normals = normals / np.linalg.norm(normals, axis=1, keepdims=True) + 0.0
    offsets = np.einsum("ij,ij->i", normals, hull)
    H = HPolytope.__new__(HPolytope)
    normals.setflags(write=False)
    offsets.setflags(write=False)
    H.normals, H.offsets, H.dim = normals, offsets, 2
    H._inner_center = hull.mean(axis=0)
    H.__dict__["vertices"] = hull
    return hull, H


def _hull_nd(P):
    from scipy.spatial import ConvexHull

    hull = ConvexHull(P)
    eq = _merge_facets(hull.equations)
    H = HPolytope(eq[:, :-1], -eq[:, -1])
    verts = _dedupe(P[hull.vertices])
    H.__dict__["vertices"] = verts
    return H, verts


def _merge_facets(equations, tol=1e-9):
    out = []
    for e in equations:
        e = e / np.linalg.norm(e[:-1])
        if not any(np.max(np.abs(e - f)) <= tol for f in out):
            out.append(e)
    return np.array(out)


def _hvertices_2d(L, b, tol=1e-9):
    pts = []
    for i, j in combinations(range(len(b)), 2):
        M = L[[i, j]]
        if abs(np.linalg.det(M)) < 1e-14:
            continue
        x = np.linalg.solve(M, b[[i, j]])
        if np.all(L @ x <= b + tol):
            pts.append(x)
    if len(pts) < 3:
        raise DegenerateBodyError("half-spaces do not bound a polygon")
    return _hull_2d(np.array(pts))[0]


def hull_and_halfspaces_2d(points):
    """Convex hull of planar points as a (VPolytope, HPolytope) pair.

    The hull is counterclockwise from the lexicographically smallest vertex;
    collinear and interior points are dropped.  Half-space normals are unit
    vectors, one per hull edge, in edge order.
    """
    P = np.atleast_2d(np.asarray(points, dtype=float))
    if P.shape[1] != 2:
        raise InvalidArgumentError("hull_and_halfspaces_2d needs planar points")
    if len(P) < 3:
        raise DegenerateBodyError("need at least three points")
    V = VPolytope(P)
    return V, V.hpoly


# -- operations --------------------------------------------------------------

def support(body, u):
    """Support value ``max_{x in body} <u, x>``."""
    return body.support(u)


def contains(body, x, tol=DEFAULT_TOL):
    return body.contains(x, tol)


def polytope_vertices(body):
    if not body.is_polytope:
        raise UnsupportedRepresentationError(f"{type(body).__name__} has no vertex list")
    return np.asarray(body.vertices)


@dataclass(frozen=True)
class Face:
    normal: np.ndarray
    offset: float
    points: np.ndarray


@dataclass(frozen=True)
class FacePair:
    face1: Face
    face2: Face


def _faces_2d(V):
    faces = []
    k = len(V)
    for i in range(k):
        p, q = V[i], V[(i + 1) % k]
        e = q - p
        nrm = np.array([e[1], -e[0]]) / np.linalg.norm(e)
        faces.append(Face(nrm, float(nrm @ p), np.array([p, q])))
    return faces


def _faces_nd(body):
    H = body.hpoly
    V = polytope_vertices(body)
    faces = []
    for l, b in zip(H.normals, H.offsets):
        nl = np.linalg.norm(l)
        on = V[np.abs(V @ l - b) <= 1e-9 * nl * (1 + abs(b))]
        if len(on) >= 2:
            faces.append(Face(l / nl, float(b / nl), on))
    return faces


def _antiparallel(l1, l2):
    n1, n2 = np.linalg.norm(l1), np.linalg.norm(l2)
    if l1.size == 2:
        wedge = abs(l1[0] * l2[1] - l1[1] * l2[0])
    else:
        wedge = np.sqrt(max(0.0, (n1 * n2) ** 2 - float(l1 @ l2) ** 2))
    return wedge <= PARALLEL_TOL * n1 * n2 and float(l1 @ l2) < 0


def detect_parallel_faces(body):
    """All pairs of non-singleton faces lying on parallel supporting hyperplanes.

    In the plane faces are hull edges.  For n >= 3 only facets are examined;
    lower-dimensional faces are not checked, so an empty result there is a
    weaker certificate.
    """
    if not body.is_polytope:
        raise UnsupportedRepresentationError(
            "parallel-face detection needs a polytope representation")
    if body.dim == 2:
        faces = _faces_2d(polytope_vertices(body))
    else:
        log.info("detect_parallel_faces: n=%d, only facets are examined", body.dim)
        faces = _faces_nd(body)
    pairs = []
    for i, j in combinations(range(len(faces)), 2):
        if _antiparallel(faces[i].normal, faces[j].normal):
            pairs.append(FacePair(faces[i], faces[j]))
    return pairs


class _SymmetrizedSupport:
    def __init__(self, fn):
        self.fn = fn

    def __call__(self, u):
        return 0.5 * (self.fn(u) + self.fn(-u))


def symmetrize(body):
    """The difference body ``(K - K) / 2``, centrally symmetric about 0."""
    if body.is_polytope:
        V = polytope_vertices(body)
        D = 0.5 * (V[:, None, :] - V[None, :, :]).reshape(-1, body.dim)
        return VPolytope(D)
    if isinstance(body, Ball):
        return Ball(np.zeros(body.dim), body.radius)
    if isinstance(body, SupportBody):
        return SupportBody(_SymmetrizedSupport(body.support), body.dim, body.smooth)
    raise UnsupportedRepresentationError(type(body).__name__)


class _AffineSupport:
    def __init__(self, fn, M, t):
        self.fn, self.M, self.t = fn, M, t

    def __call__(self, u):
        return self.fn(self.M.T @ u) + float(u @ self.t)


def affine_image(body, M, t):
    """Image ``{M x + t : x in body}`` for invertible real ``M``."""
    M = np.atleast_2d(np.asarray(M, dtype=float))
    t = _as_vector(t, "shift")
    n = body.dim
    if M.shape != (n, n) or t.size != n:
        raise InvalidArgumentError("affine map has the wrong shape")
    if abs(np.linalg.det(M)) < 1e-12 or np.linalg.cond(M) > 1e12:
        raise InvalidArgumentError("affine map is singular")
    if isinstance(body, VPolytope):
        return VPolytope(body.vertices @ M.T + t)
    if isinstance(body, HPolytope):
        Minv = np.linalg.inv(M)
        L = body.normals @ Minv
        return HPolytope(L, body.offsets + L @ t)
    if isinstance(body, Ball):
        s = np.linalg.svd(M, compute_uv=False)
        if s[0] - s[-1] <= 1e-14 * s[0]:
            return Ball(M @ body.center + t, body.radius * s[0])
    if isinstance(body, SupportBody):
        return SupportBody(_AffineSupport(body.support, M, t), n, body.smooth)
    raise UnsupportedRepresentationError(type(body).__name__)
