"""Smoothness of the base locus away from the plane, and the combined a1 verdict.

Two independent routes:

* kernel route: a point x of the base locus is singular iff q(y) x = 0 for
  some y != 0.  Such a y is a singular point of S8 (for rank q(y) <= 6 the
  adjugate vanishes; for rank 7 the partials are proportional to Q_i(x) = 0).
  So when S8 has finitely many singular points, every singular point of the
  base locus lies in ker q(y*) for one of them.  For each orbit we check
  that x0..x4 lie in the radical of <Q_i restricted to the kernel>.
* chart route: for each k < 5, the ideal of the quadrics and the 4x4 minors
  of the Jacobian with x_k = 1 is the unit ideal.

The kernel route is cheap; the chart route is the direct statement and is
run under a timeout.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from quadweb.groebner.engine import GroebnerTimeout, buchberger
from quadweb.groebner.ideal import Ideal, radical_membership
from quadweb.multipoly import PolyRing
from quadweb.webquadrics.discriminant import DiscriminantReport
from quadweb.webquadrics.plane import EXPECTED_ON_PLANE, PlaneLocus
from quadweb.webquadrics.web import Web

CERTIFIED = "certified"
SINGULAR = "singular point found"
INCONCLUSIVE = "inconclusive"
SKIPPED = "not run"


class RouteDisagreement(ArithmeticError):
    pass


@dataclass
class OffPlaneResult:
    kernel_route: str = SKIPPED
    chart_route: str = SKIPPED
    charts_done: list[int] = dc_field(default_factory=list)

    @property
    def status(self) -> str:
        done = [r for r in (self.kernel_route, self.chart_route) if r in (CERTIFIED, SINGULAR)]
        if len(set(done)) > 1:
            raise RouteDisagreement(f"kernel route: {self.kernel_route}; chart route: {self.chart_route}")
        return done[0] if done else INCONCLUSIVE


def kernel_route(web: Web, report: DiscriminantReport, deadline=None) -> str:
    for orb in report.orbits:
        K = orb.field
        V = orb.kernel
        s = len(V)
        R = PolyRing(s, K, names=[f"l{i}" for i in range(s)])
        lam = R.gens()
        x = [sum((lam[k] * V[k][c] for k in range(s) if V[k][c]), R.zero()) for c in range(8)]
        forms = []
        for M in web.q:
            f = R.zero()
            for i in range(8):
                for j in range(8):
                    if M[i][j] and x[i] and x[j]:
                        f = f + x[i] * x[j] * K.convert(M[i][j])
            forms.append(f)
        ideal = Ideal(R, forms)
        try:
            for c in range(5):
                if x[c] and not radical_membership(x[c], ideal, deadline):
                    return SINGULAR
        except GroebnerTimeout:
            return INCONCLUSIVE
    return CERTIFIED


def chart_route(web: Web, deadline=None, result: OffPlaneResult | None = None) -> str:
    D = web.derived
    R = D.Rx
    J = D.jacobian_of_quadrics()
    base = D.quadrics + [m for m in J.minors(4) if m]
    for k in range(5):
        images = [R.one() if i == k else R.gen(i) for i in range(8)]
        gens = [g.substitute(images) for g in base]
        try:
            gb = buchberger(gens, R, deadline)
        except GroebnerTimeout:
            return INCONCLUSIVE
        if result is not None:
            result.charts_done.append(k)
        if not gb.is_unit():
            return SINGULAR
    return CERTIFIED


@dataclass
class A1Verdict:
    holds: bool | None
    on_plane_count: int | None
    on_plane_reduced: bool
    off_plane: OffPlaneResult

    @property
    def off_plane_status(self) -> str:
        return self.off_plane.status


def check_a1(web: Web, locus: PlaneLocus, report: DiscriminantReport | None,
             chart_deadline=None, run_charts: bool = True) -> A1Verdict:
    s = locus.scheme
    count = s.points if s else None
    reduced = bool(s) and s.is_reduced()
    off = OffPlaneResult()
    if report is not None:
        off.kernel_route = kernel_route(web, report)
    if run_charts:
        off.chart_route = chart_route(web, chart_deadline, off)
    on_ok = count == EXPECTED_ON_PLANE and reduced
    status = off.status
    if not on_ok or status == SINGULAR:
        holds = False
    elif status == CERTIFIED:
        holds = True
    else:
        holds = None
    return A1Verdict(holds, count, reduced, off)
