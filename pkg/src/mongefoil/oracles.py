"""Independent brute-force oracles used by the verification suites.

Nothing here is used on a production code path; each function recomputes a
quantity by a route that shares no code with the solver it checks.
"""

from itertools import combinations

import numpy as np


def brute_force_lp(lp):
    """Best objective over all feasible basic solutions (vertex enumeration).

    Returns ``None`` when no feasible vertex exists.
    """
    A, b, c = lp.A, lp.b, lp.objective
    m, d = A.shape
    best = None
    for rows in combinations(range(m), d):
        rows = list(rows)
        sub = A[rows]
        if abs(np.linalg.det(sub)) < 1e-12:
            continue
        x = np.linalg.solve(sub, b[rows])
        if np.all(A @ x <= b + 1e-9 * (1 + np.abs(b))):
            val = float(c @ x)
            if best is None or val > best:
                best = val
    return best


def random_lp(rng, max_dim=3, max_rows=8):
    """Seeded random LP with a full-column-rank constraint matrix."""
    from .lp import LinearProgram

    d = int(rng.integers(1, max_dim + 1))
    m = int(rng.integers(d + 1, max_rows + 1))
    while True:
        A = rng.normal(size=(m, d))
        if np.linalg.matrix_rank(A) == d:
            break
    b = rng.normal(size=m) + rng.uniform(0, 1.5)
    return LinearProgram(rng.normal(size=d), A, b)


def shoelace_area(points):
    """Area of the closed planar polygon through ``points`` (in order)."""
    P = np.asarray(points, dtype=float)
    x, y = P[:, 0], P[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def box_vk(z, lo, hi):
    """Extremal function of a box via the interval formula in each coordinate."""
    from .vk import vk_interval, vk_product

    z = np.asarray(z, dtype=complex)
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    w = (2 * z - (lo + hi)) / (hi - lo)
    return vk_product([vk_interval(c) for c in w])
