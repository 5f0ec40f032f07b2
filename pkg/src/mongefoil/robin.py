"""Robin function, Robin indicatrix and the Robin exponential map.

The Robin function of a convex body is read off the extremal disks:
``rho_K(v) = -log rho(v)`` where ``rho(v)`` is the extremal scale for the
direction ``v`` taken as given (not canonicalised).  It is logarithmically
homogeneous, ``rho_K(lam v) = rho_K(v) + log|lam|``, and its zero sublevel set
is the indicatrix ``K_rho``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, OutsideParameterDiskError
from .extremal import PointAtInfinity, as_direction, canonicalize, solve_extremal

TOL_BOUNDARY = 1e-8
EXP_MAP_STRICT = 1e-6
EXP_MAP_RESCALE = 1e-3


@dataclass(frozen=True)
class RobinValue:
    value: float
    direction: object
    rho_used: float
    error_bound: float = 0.0


@dataclass(frozen=True)
class IndicatrixSample:
    v: np.ndarray
    robin: float
    on_boundary: bool
    boundary_scale: float


def _complex_vector(v):
    v = np.asarray(v, dtype=complex).ravel()
    if not np.all(np.isfinite(v)):
        raise InvalidArgumentError("vector has non-finite entries")
    return v


def robin_function(body, v, **opts):
    """``rho_K(v) = -log rho(v)``."""
    direction = as_direction(v)
    disk = solve_extremal(body, direction, **opts)
    return RobinValue(float(-np.log(disk.rho)), direction, disk.rho,
                      disk.error_bound / max(disk.rho, 1e-300))


def robin_value(body, v, **opts):
    return robin_function(body, v, **opts).value


def indicatrix_contains(body, v, tol=TOL_BOUNDARY):
    """Membership in ``K_rho = {rho_K <= 0}``; the origin belongs by convention."""
    v = _complex_vector(v)
    if not np.any(v):
        return True
    return robin_value(body, v) <= tol


def indicatrix_sample(body, v, tol=TOL_BOUNDARY):
    v = _complex_vector(v)
    r = robin_value(body, v)
    return IndicatrixSample(v, r, abs(r) <= tol, float(np.exp(-r)))


def boundary_scale(body, v):
    """``t = exp(-rho_K(v))``; ``t v`` lies on the boundary of ``K_rho``."""
    return float(np.exp(-robin_value(body, _complex_vector(v))))


def _boundary_vector(body, v):
    v = _complex_vector(v)
    r = robin_value(body, v)
    if abs(r) <= EXP_MAP_STRICT:
        return v
    if abs(r) <= EXP_MAP_RESCALE:
        return v * np.exp(-r)
    raise InvalidArgumentError(
        f"v is not on the indicatrix boundary (rho_K(v) = {r:.3e})")


def robin_exp_map(body, v, zeta, center=None):
    """``F_K(v/zeta) = a0(v) + v/zeta + conj(v) zeta`` for ``v`` on the boundary of K_rho.

    ``center=None`` uses the barycentric centre of the extremal disk;
    otherwise the given real centre is used.  Vectors slightly off the
    boundary (|rho_K(v)| up to 1e-3) are rescaled onto it; further away is
    an error.
    """
    zeta = complex(zeta)
    v = _boundary_vector(body, v)
    if abs(zeta) > 1.0 + 1e-12:
        raise OutsideParameterDiskError(f"|zeta| = {abs(zeta)} > 1")
    if zeta == 0:
        return PointAtInfinity(canonicalize(v))
    if center is None:
        center = solve_extremal(body, v).center
    center = np.asarray(center, dtype=float)
    return center + v / zeta + np.conj(v) * zeta


def forgetful_map(body, v, zeta):
    """Centre-free map ``v/zeta + conj(v) zeta``."""
    return robin_exp_map(body, v, zeta, center=np.zeros(np.size(v)))


def indicatrix_slice(body, e1, e2, s_values, t_values):
    """Rows ``(s, t, rho_K(s e1 + t e2))`` over a grid; the origin gives ``-inf``."""
    e1 = _complex_vector(e1)
    e2 = _complex_vector(e2)
    rows = []
    for s in s_values:
        for t in t_values:
            w = s * e1 + t * e2
            val = -np.inf if not np.any(w) else robin_value(body, w)
            rows.append((float(s), float(t), float(val)))
    return rows
