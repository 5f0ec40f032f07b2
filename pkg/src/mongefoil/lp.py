"""Small dense linear-programming kernel.

Problems have the form ``maximize <objective, x>`` subject to ``A x <= b``
with ``x`` free.  They are tiny (a handful of variables, at most a few
hundred rows), so a dense two-phase tableau simplex with Bland's rule is
used: it is deterministic and cannot cycle on the heavily degenerate
vertices that symmetric polygons produce.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import nnls

from .errors import InvalidArgumentError, LpStatusError

log = logging.getLogger(__name__)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_PIVOT_EPS = 1e-11
_ACTIVE_TOL = 1e-9


@dataclass(frozen=True)
class LinearProgram:
    """maximize <objective, x> subject to A x <= b."""

    objective: np.ndarray
    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.objective, dtype=float).ravel()
        A = np.atleast_2d(np.asarray(self.A, dtype=float))
        b = np.asarray(self.b, dtype=float).ravel()
        if A.ndim != 2 or A.shape[0] != b.size or A.shape[1] != c.size:
            raise InvalidArgumentError(
                f"dimension mismatch: A{A.shape}, b({b.size}), objective({c.size})")
        if A.shape[0] < 1 or A.shape[1] < 1:
            raise InvalidArgumentError("need at least one row and one variable")
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b)) and np.all(np.isfinite(c))):
            raise InvalidArgumentError("non-finite entries in linear program")
        object.__setattr__(self, "objective", c)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @property
    def n_vars(self):
        return self.objective.size

    @property
    def n_rows(self):
        return self.b.size

    def with_rows(self, A_extra, b_extra):
        """Return a copy with extra inequality rows appended."""
        return LinearProgram(self.objective,
                             np.vstack([self.A, np.atleast_2d(A_extra)]),
                             np.concatenate([self.b, np.ravel(b_extra)]))

    def with_objective(self, objective):
        return LinearProgram(objective, self.A, self.b)


@dataclass
class LpSolution:
    status: str
    x_star: np.ndarray = None
    value: float = float("nan")
    active_set: tuple = ()
    ray: np.ndarray = None
    iterations: int = 0
    active_rows: np.ndarray = None
    objective: np.ndarray = None

    @property
    def optimal(self):
        return self.status == OPTIMAL

    def dual_certificate(self):
        """Nonnegative multipliers on the active rows and the residual
        ``|A_active^T y - objective|`` they leave."""
        if not self.optimal:
            raise LpStatusError(self.status)
        if len(self.active_set) == 0:
            return np.zeros(0), float(np.linalg.norm(self.objective))
        y, res = nnls(self.active_rows.T, self.objective)
        return y, float(res)


@dataclass
class _Tableau:
    T: np.ndarray            # constraint rows, last column is the rhs
    basis: list
    allowed: np.ndarray      # columns permitted to enter
    iterations: int = 0


def _run_simplex(tab, cost, max_iter, verbose):
    """Maximize ``cost`` over the tableau in place; returns status and entering column."""
    T = tab.T
    while tab.iterations < max_iter:
        cb = cost[tab.basis]
        reduced = cost - cb @ T[:, :-1]
        reduced[tab.basis] = 0.0
        candidates = np.flatnonzero((reduced > _PIVOT_EPS) & tab.allowed)
        if candidates.size == 0:
            return OPTIMAL, None
        # Bland: lowest-index improving column ...
        j = int(candidates[0])
        col = T[:, j]
        rows = np.flatnonzero(col > _PIVOT_EPS)
        if rows.size == 0:
            return UNBOUNDED, j
        ratios = T[rows, -1] / col[rows]
        best = ratios.min()
        tied = rows[ratios <= best + 1e-12 * (1.0 + abs(best))]
        # ... and lowest-index leaving variable among ratio ties.
        i = int(min(tied, key=lambda r: tab.basis[r]))
        if verbose:
            log.debug("pivot row %d col %d\n%s", i, j, np.array2string(T, precision=4))
        _pivot(T, i, j)
        tab.basis[i] = j
        tab.iterations += 1
    raise LpStatusError("iteration-limit", "simplex exceeded its iteration limit")


def _pivot(T, i, j):
    T[i] /= T[i, j]
    factors = T[:, j].copy()
    factors[i] = 0.0
    T -= np.outer(factors, T[i])


def solve_lp(lp, verbose=False):
    """Solve ``lp`` with the two-phase dense simplex method.

    Parameters
    ----------
    lp : LinearProgram
    verbose : bool
        Log every pivot tableau at DEBUG level.

    Returns
    -------
    LpSolution
        ``status`` is one of ``"optimal"``, ``"infeasible"``, ``"unbounded"``.
        Optimal solutions carry the active set; ``dual_certificate()``
        recovers nonnegative multipliers on it.  Unbounded
        solutions carry an improving ray ``r`` with ``A r <= 0``.
    """
    if not isinstance(lp, LinearProgram):
        raise InvalidArgumentError("expected a LinearProgram")
    A, b, c = lp.A, lp.b, lp.objective
    m, d = A.shape

    neg = b < 0
    n_art = int(neg.sum())
    n_cols = 2 * d + m + n_art
    T = np.zeros((m, n_cols + 1))
    sign = np.where(neg, -1.0, 1.0)
    T[:, :d] = A * sign[:, None]
    T[:, d:2 * d] = -A * sign[:, None]
    T[np.arange(m), 2 * d + np.arange(m)] = sign
    T[:, -1] = b * sign
    basis = []
    art_cols = []
    k = 0
    for i in range(m):
        if neg[i]:
            col = 2 * d + m + k
            T[i, col] = 1.0
            basis.append(col)
            art_cols.append(col)
            k += 1
        else:
            basis.append(2 * d + i)
    allowed = np.ones(n_cols, dtype=bool)
    tab = _Tableau(T, basis, allowed)
    max_iter = 50 * (n_cols + m) + 100

    if n_art:
        cost1 = np.zeros(n_cols)
        cost1[art_cols] = -1.0
        _run_simplex(tab, cost1, max_iter, verbose)
        infeas = -cost1[tab.basis] @ tab.T[:, -1]
        if infeas > 1e-9 * (1.0 + np.abs(b).max()):
            return LpSolution(INFEASIBLE, iterations=tab.iterations)
        art = set(art_cols)
        for i, bv in enumerate(list(tab.basis)):
            if bv in art:
                nz = [j for j in range(2 * d + m) if abs(tab.T[i, j]) > _PIVOT_EPS]
                if nz:
                    _pivot(tab.T, i, nz[0])
                    tab.basis[i] = nz[0]
        tab.allowed[art_cols] = False

    cost2 = np.zeros(n_cols)
    cost2[:d] = c
    cost2[d:2 * d] = -c
    status, entering = _run_simplex(tab, cost2, max_iter, verbose)

    x = np.zeros(n_cols)
    x[tab.basis] = tab.T[:, -1]
    x_star = x[:d] - x[d:2 * d]

    if status == UNBOUNDED:
        direction = np.zeros(n_cols)
        direction[entering] = 1.0
        direction[tab.basis] -= tab.T[:, entering]
        ray = direction[:d] - direction[d:2 * d]
        nrm = np.linalg.norm(ray)
        return LpSolution(UNBOUNDED, x_star=x_star, value=float("inf"),
                          ray=ray / nrm if nrm > 0 else ray,
                          iterations=tab.iterations)

    x_star = _polish(A, b, c, x_star)
    slack = b - A @ x_star
    scale = 1.0 + np.abs(b)
    active = np.flatnonzero(slack <= _ACTIVE_TOL * scale)
    return LpSolution(OPTIMAL, x_star=x_star, value=float(c @ x_star),
                      active_set=tuple(int(i) for i in active),
                      iterations=tab.iterations, active_rows=A[active], objective=c)


def _polish(A, b, c, x):
    """Re-solve the tight rows directly to remove pivot roundoff."""
    slack = b - A @ x
    tight = np.flatnonzero(slack <= 1e-7 * (1.0 + np.abs(b)))
    if tight.size < A.shape[1]:
        return x
    At = A[tight]
    if np.linalg.matrix_rank(At, tol=1e-10) < A.shape[1]:
        return x
    x_new, *_ = np.linalg.lstsq(At, b[tight], rcond=None)
    viol_old = max(0.0, float(np.max(A @ x - b)))
    viol_new = max(0.0, float(np.max(A @ x_new - b)))
    if viol_new <= max(viol_old, 1e-12) and c @ x_new >= c @ x - 1e-9 * (1 + abs(c @ x)):
        return x_new
    return x


def optimal_face_extent(lp, secondary, solution=None, tol_face=None):
    """Range of ``<secondary, x>`` over the (tolerance-pinned) optimal face of ``lp``.

    The primary optimum is pinned by the extra row
    ``-<objective, x> <= -(value - tol_face)`` with
    ``tol_face = 1e-8 * (1 + |value|)`` unless given.

    Returns
    -------
    (lo, hi, x_lo, x_hi)
        Bounds and the points attaining them.
    """
    if solution is None:
        solution = solve_lp(lp)
    if not solution.optimal:
        raise LpStatusError(solution.status)
    secondary = np.asarray(secondary, dtype=float).ravel()
    if secondary.size != lp.n_vars:
        raise InvalidArgumentError("secondary objective has the wrong length")
    if tol_face is None:
        tol_face = 1e-8 * (1.0 + abs(solution.value))
    pinned = lp.with_rows(-lp.objective, -(solution.value - tol_face))
    hi = solve_lp(pinned.with_objective(secondary))
    lo = solve_lp(pinned.with_objective(-secondary))
    for s in (hi, lo):
        if not s.optimal:
            raise LpStatusError(s.status, f"pinned face problem is {s.status}")
    return -lo.value, hi.value, lo.x_star, hi.x_star
