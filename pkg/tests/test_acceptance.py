"""Acceptance criteria, each at its stated tolerance.

Every criterion prints one ``PASS``/``FAIL`` line: at the end of a pytest run
(terminal summary) or directly when this file is executed as a script.
"""

from dataclasses import dataclass

import numpy as np
import pytest
from scipy.optimize import brentq

from mongefoil import (Ball, VPolytope, detect_parallel_faces, leaf_disjointness_check,
                       ma_residual, robin_value, solve_extremal, symmetrize, vk_ball, vk_eval,
                       vk_interval)
from mongefoil.extremal import boundary_ellipse_point, ellipse_area, leaf_eval
from mongefoil.lp import solve_lp
from mongefoil.oracles import brute_force_lp, random_lp, shoelace_area
from mongefoil.vk import robin_ball

from conftest import heptagon, hexagon, rectangle, square, triangle, unit_ball

RESULTS = {}


@dataclass
class Outcome:
    number: int
    title: str
    passed: bool
    worst: float
    tol: float
    note: str = ""

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        extra = f"; {self.note}" if self.note else ""
        return (f"criterion {self.number:2d} {status}  {self.title}: "
                f"worst={self.worst:.3e} tol={self.tol:.0e}{extra}")


def record(number, title, worst, tol, note="", passed=None):
    worst = float(worst)
    out = Outcome(number, title, bool(worst <= tol) if passed is None else passed,
                  worst, tol, note)
    RESULTS[number] = out
    return out


def rand_dirs(rng, count):
    return rng.normal(size=(count, 2)) + 1j * rng.normal(size=(count, 2))


def box_points(rng, count, body):
    pts = []
    while len(pts) < count:
        z = rng.uniform(-3, 3, 2) + 1j * rng.uniform(-1, 1, 2)
        if np.max(np.abs(z.imag)) > 0 or not body.contains(z.real):
            pts.append(z)
    return pts


# -- criteria ---------------------------------------------------------------

def criterion_1():
    K = square()
    errs = [abs(vk_eval(K, z).value - max(vk_interval(z[0]), vk_interval(z[1])))
            for z in box_points(np.random.default_rng(101), 50, K)]
    return record(1, "square vs interval product oracle, 50 points", max(errs), 1e-6)


def criterion_2():
    B = unit_ball()
    rng = np.random.default_rng(102)
    ev = [abs(vk_eval(B, z).value - vk_ball(z)) for z in box_points(rng, 50, B)]
    er = [abs(robin_value(B, v) - robin_ball(v)) for v in rand_dirs(rng, 50)]
    # both parts must hold at their own tolerances
    return record(2, "ball vs closed forms (V: 50 points, Robin: 50 directions)",
                  max(ev), 1e-6, note=f"robin worst={max(er):.3e} tol=1e-07",
                  passed=max(ev) <= 1e-6 and max(er) <= 1e-7)


def criterion_3():
    d = solve_extremal(square(), [1, 0])
    ends = np.array(d.center_set.as_list())
    err = max(abs(d.rho - 0.5), np.max(np.abs(ends - [[0, -1], [0, 1]])))
    return record(3, "square v=(1,0): rho=1/2, centre set {0}x[-1,1]", err, 1e-8)


def criterion_4():
    rng = np.random.default_rng(104)
    th = np.linspace(0, 2 * np.pi, 20000, endpoint=False)
    errs = []
    for make in (square, triangle, hexagon):
        K = make()
        for v in rand_dirs(rng, 20):
            d = solve_extremal(K, v)
            pts = np.array([boundary_ellipse_point(d, t) for t in th])
            errs.append(abs(shoelace_area(pts) - ellipse_area(d)) / ellipse_area(d))
    return record(4, "ellipse area law vs shoelace, 3 bodies x 20 directions", max(errs), 1e-6)


def criterion_5():
    rng = np.random.default_rng(105)
    errs = []
    for make in (square, triangle):
        K = make()
        for v in rand_dirs(rng, 100):
            d = solve_extremal(K, v)
            zeta = rng.uniform(0.05, 0.98) * np.exp(2j * np.pi * rng.uniform())
            errs.append(abs(vk_eval(K, leaf_eval(d, zeta)).value + np.log(abs(zeta))))
    return record(5, "harmonic along 100 leaves each on square, triangle", max(errs), 1e-6)


def criterion_6():
    rng = np.random.default_rng(106)
    per_body = {}
    for name, make in (("triangle", triangle), ("rectangle", rectangle),
                       ("heptagon", heptagon)):
        K = make()
        S = symmetrize(K)
        per_body[name] = max(abs(robin_value(K, v) - robin_value(S, v))
                             for v in rand_dirs(rng, 100))
    note = ", ".join(f"{k}={v:.3e}" for k, v in per_body.items())
    return record(6, "rho_K = rho_Ksym on 100 directions", max(per_body.values()), 1e-7,
                  note=note)


def _boundary_radius(K, u):
    H = K.hpoly
    return 1.0 / np.max(H.normals @ u / H.offsets)


def criterion_7():
    K = square()
    rays = np.linspace(0, np.pi / 2, 6)
    errs = []
    for t in (1.5, 2.0, 3.0):
        for a in rays:
            u = np.array([np.cos(a), np.sin(a)])
            r0 = _boundary_radius(K, u)
            target = np.log(t)
            s = brentq(lambda s: vk_eval(K, s * u).value - target, r0 * (1 + 1e-9),
                       r0 * 2 * t, xtol=1e-12, rtol=1e-14)
            errs.append(abs(s - 0.5 * (t + 1 / t) * r0))
    return record(7, "level sets of V on R^2 are (t+1/t)/2 times the boundary", max(errs),
                  1e-5)


def criterion_8():
    rng = np.random.default_rng(108)
    K = square()
    hits = 0
    for _ in range(200):
        v1, v2 = rand_dirs(rng, 2)
        hits += len(leaf_disjointness_check(K, v1, v2, n_samples=16).witnesses)
    counter = leaf_disjointness_check(K, [1, 0], [1, 0.1j], center_rule=([0, 0.9], [0, 0]))
    ok = hits == 0 and not counter.disjoint
    return record(8, "200 barycentric leaf pairs disjoint; shifted centres intersect",
                  float(hits), 0.0, note=f"counterexample detected={not counter.disjoint}",
                  passed=ok)


def criterion_9():
    rng = np.random.default_rng(109)
    th = np.sort(rng.uniform(0, 2 * np.pi, 40))
    disk_poly = VPolytope(np.column_stack([np.cos(th), np.sin(th)]))
    counts = (len(detect_parallel_faces(triangle())), len(detect_parallel_faces(disk_poly)),
              len(detect_parallel_faces(square())))
    diam = max(solve_extremal(triangle(), v).center_set.diameter for v in rand_dirs(rng, 50))
    ok = counts == (0, 0, 2) and diam <= 1e-8
    return record(9, "parallel faces (triangle, disk polygon, square) and triangle centres",
                  diam, 1e-8, note=f"pair counts={counts}", passed=ok)


def criterion_10():
    rng = np.random.default_rng(110)
    worst = 0.0
    for _ in range(500):
        lp = random_lp(rng)
        sol = solve_lp(lp)
        ref = brute_force_lp(lp)
        if sol.status == "optimal":
            worst = max(worst, np.inf if ref is None else abs(sol.value - ref))
        elif sol.status == "infeasible":
            worst = max(worst, 0.0 if ref is None else np.inf)
        else:
            ok = np.all(lp.A @ sol.ray <= 1e-9) and lp.objective @ sol.ray > 0
            worst = max(worst, 0.0 if ok else np.inf)
    return record(10, "500 random LPs vs vertex enumeration", worst, 1e-8)


def _far_points(rng, K, count, min_dist=0.5):
    H = K.hpoly
    pts = []
    while len(pts) < count:
        z = rng.uniform(-3, 3, 2) + 1j * rng.uniform(-1, 1, 2)
        outside = max(0.0, float(np.max(H.normals @ z.real - H.offsets)))
        if np.hypot(outside, np.linalg.norm(z.imag)) >= min_dist:
            pts.append(z)
    return pts


def criterion_11():
    rng = np.random.default_rng(111)
    sq = [ma_residual(square(), z, h=1e-3) for z in _far_points(rng, square(), 10)]
    B = unit_ball()
    bl = []
    while len(bl) < 10:
        z = rng.uniform(-3, 3, 2) + 1j * rng.uniform(-1, 1, 2)
        if np.hypot(max(0, np.linalg.norm(z.real) - 1), np.linalg.norm(z.imag)) >= 0.5:
            bl.append(ma_residual(B, z, h=1e-3, method="closed_form"))
    return record(11, "normalised complex Hessian determinant, square and ball",
                  max(max(sq), max(bl)), 1e-3,
                  note=f"square={max(sq):.3e} ball={max(bl):.3e}")


def criterion_12():
    errs = [abs(robin_value(Ball([0, 0], 1), [0.5, 0.5j * t])) for t in (-1, -0.5, 0, 0.5, 1)]
    return record(12, "flat segment on the ball's indicatrix boundary", max(errs), 1e-8)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12]

SYMMETRIZATION_NOTE = (
    "rho_K = rho_Ksym fails for bodies without a centre of symmetry: the unit simplex "
    "has Robin function log 2(|w1|+|w2|+|w1+w2|) (pullback of the disk by squaring), "
    "log(4+2*sqrt2) at (1,i), while its difference body gives log(4*sqrt2)")


@pytest.mark.parametrize("crit", [c for c in CRITERIA if c is not criterion_6],
                         ids=lambda c: c.__name__)
def test_acceptance(crit):
    out = crit()
    assert out.passed, out.line()


@pytest.mark.xfail(strict=True, reason=SYMMETRIZATION_NOTE)
def test_acceptance_criterion_6():
    out = criterion_6()
    assert out.passed, out.line()


if __name__ == "__main__":
    for crit in CRITERIA:
        print(crit().line(), flush=True)
