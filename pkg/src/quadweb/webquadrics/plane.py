"""Singularities of the base locus on the plane and the collinearity test for them."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Sequence

from quadweb import polymatrix as pm
from quadweb import univariate as uv
from quadweb.groebner.ideal import Ideal, dimension
from quadweb.groebner.zerodim import PositiveDimensional, Shape, ZeroDimScheme, zero_dim_analyze
from quadweb.multipoly import Poly, PolyRing
from quadweb.webquadrics.web import Web

EXPECTED_ON_PLANE = 10


@dataclass
class PlaneLocus:
    """The singular scheme of the base locus on the plane, or the dimension if it is not finite."""

    scheme: ZeroDimScheme | None
    dimension: int

    @property
    def finite(self) -> bool:
        return self.scheme is not None

    @property
    def count(self) -> int | None:
        return self.scheme.points if self.scheme else None


def sing_on_plane(web: Web, seed: int = 0, deadline=None) -> PlaneLocus:
    """Points of the plane where the 5x4 matrix ``C(x5, x6, x7)`` drops rank (its 4x4 minors)."""
    D = web.derived
    ideal = Ideal(D.Rp, D.C_of_plane.minors(4))
    try:
        return PlaneLocus(zero_dim_analyze(ideal, seed, projective=True, deadline=deadline), 0)
    except PositiveDimensional as exc:
        return PlaneLocus(None, exc.dimension)


def check_nodes_on_plane(web: Web, seed: int = 0, deadline=None) -> tuple[bool, int | None]:
    """Length of the scheme cut on the plane by the 4x4 minors of the full 4x8 Jacobian.

    The Jacobian entries are restricted to the plane first (restriction is a
    ring map, so it commutes with taking minors).  Returns
    ``(length == 10, length)``.
    """
    D = web.derived
    J = D.jacobian_of_quadrics()
    Rp = D.Rp
    xp = Rp.gens()
    images = [Rp.zero()] * 5 + xp
    Jp = J.substitute(images)
    minors = [m for m in Jp.minors(4) if m]
    if not minors:
        return False, None
    try:
        s = zero_dim_analyze(Ideal(Rp, minors), seed + 1, projective=True, deadline=deadline, orbits=False)
    except PositiveDimensional:
        return False, None
    return s.length == EXPECTED_ON_PLANE, s.length


# -- collinearity of the singular points --------------------------------------------------------


@dataclass
class LineWitness:
    line: tuple  # (alpha, beta, gamma): alpha*x5 + beta*x6 + gamma*x7 = 0
    points_on_line: int
    quartic: list | None  # binary form coefficients, highest power of the first line coordinate first
    line_coordinates: tuple[str, str]


@dataclass
class A2Verdict:
    holds: bool | None
    witnesses: list[LineWitness] = dc_field(default_factory=list)
    method: str = "subresultants"
    note: str = ""


def interpolate_form(evaluate, ring: PolyRing, degree: int, rng: random.Random, attempts: int = 4) -> Poly:
    """Recover a homogeneous form of known degree from its values at random points.

    Two extra evaluation points are used as a consistency check.
    """
    F = ring.field
    n = ring.n
    monos = _monomials(n, degree)
    for _ in range(attempts):
        pts = [[F.random(rng) for _ in range(n)] for _ in range(len(monos) + 2)]
        rows = [[_mono_value(F, m, p) for m in monos] for p in pts]
        vals = [evaluate(p) for p in pts]
        k = len(monos)
        if pm.rank(F, rows[:k]) < k:
            continue
        sol = pm.solve(F, rows[:k], vals[:k])
        if all(F.norm(sum(a * b for a, b in zip(rows[i], sol))) == vals[i] for i in range(k, k + 2)):
            return ring.from_dict({m: c for m, c in zip(monos, sol) if c})
    raise ArithmeticError("form interpolation failed")


def _monomials(n: int, d: int) -> list[tuple[int, ...]]:
    if n == 1:
        return [(d,)]
    out = []
    for a in range(d, -1, -1):
        out.extend((a,) + rest for rest in _monomials(n - 1, d - a))
    return out


def _mono_value(F, m, p):
    v = 1
    for e, x in zip(m, p):
        if e:
            v = F.norm(v * pow(x, e, F.p) if F.mod else v * x ** e)
    return v


def collinear_conditions(F, shape: Shape, min_points: int = 4, seed: int = 0) -> list[Poly]:
    """Ternary forms in (alpha, beta, gamma) vanishing exactly on lines through ``>= min_points`` points.

    With ``g`` the eliminant (degree N) and ``L = alpha X5 + beta X6 + gamma X7``
    taken at formal degree N - 1, the line holds at least ``k`` points iff
    ``deg gcd(g, L) >= k`` iff the principal subresultant coefficients
    ``psc_0 .. psc_{k-1}`` of ``(g, L)`` vanish.  Each ``psc_j`` is a form of
    degree ``N - j`` recovered by interpolation.
    """
    g = shape.g
    N = len(g) - 1
    ring = PolyRing(3, F, names=["a", "b", "c"])
    rng = random.Random(f"psc-{seed}")
    X = [list(c) + [F.convert(0)] * (N - len(c)) for c in shape.coords]

    def L_of(p):
        return [F.norm(p[0] * X[0][i] + p[1] * X[1][i] + p[2] * X[2][i]) for i in range(N)]

    out = []
    for j in range(min_points):
        fn = (lambda p, j=j: pm.det(F, uv.psc_matrix(g, L_of(p), j)))
        out.append(interpolate_form(fn, ring, N - j, rng))
    return out


def points_on_line(F, shape: Shape, line: Sequence) -> tuple[int, list]:
    """Number of points (over the closure) on the line and the gcd factor carrying them."""
    L = [F.convert(0)]
    for c, X in zip(line, shape.coords):
        L = uv.add(F, L, uv.scale(F, X, F.convert(c)))
    G = uv.gcd(F, shape.g, uv.trim(L)) if uv.trim(L) else list(shape.g)
    return uv.degree(G), G


def restricted_form(F, shape: Shape, G: list, line: Sequence) -> tuple[list, tuple[int, int]]:
    """Binary form on the line vanishing at the points with t-values the roots of ``G``.

    The line is parametrised by the two coordinates other than one with a
    nonzero coefficient (the first such).  Coefficients are returned from the
    highest power of the first coordinate downwards, scaled to be monic in
    the first nonzero coefficient.
    """
    drop = next(i for i, c in enumerate(line) if F.convert(c))
    u, w = [i for i in range(3) if i != drop]
    Xu, Xw = shape.coords[u], shape.coords[w]
    d = uv.degree(G)
    # form(s_u, s_w) = prod_P (Xw(t_P) s_u - Xu(t_P) s_w) = Res_t(G, Xw s_u - Xu s_w) since G is monic
    xs, ys = [], []
    for val in range(d + 1):
        h = uv.sub(F, list(Xw), uv.scale(F, Xu, F.convert(val)))  # s_u = 1, s_w = val
        xs.append(F.convert(val))
        ys.append(uv.resultant(F, G, uv.trim(h)) if uv.trim(h) else F.convert(0))
    coeffs = uv.interpolate(F, xs, ys)  # coefficient of s_w^k (with s_u = 1)
    coeffs = coeffs + [F.convert(0)] * (d + 1 - len(coeffs))
    # highest power of s_u first means s_w^0 first
    lead = next((c for c in coeffs if c), None)
    if lead is not None:
        inv = F.inv(lead)
        coeffs = [F.norm(c * inv) for c in coeffs]
    return coeffs, (u, w)


def check_a2_from_shape(F, shape: Shape, seed: int = 0, deadline=None,
                        names: Sequence[str] = ("x5", "x6", "x7")) -> A2Verdict:
    """Decide whether some line contains at least four of the points of ``shape``."""
    conds = [c for c in collinear_conditions(F, shape, 4, seed) if c]
    if not conds:
        return A2Verdict(False, note="every line condition vanishes identically")
    ideal = Ideal(conds[0].ring, conds)
    gb = ideal.groebner(deadline=deadline)
    pdim = dimension(gb, projective=True)
    if pdim < 0:
        return A2Verdict(True)
    witnesses = []
    try:
        lines = zero_dim_analyze(ideal, seed, projective=True, deadline=deadline)
    except PositiveDimensional:
        return A2Verdict(False, note="a positive-dimensional family of lines contains four points")
    for orb in lines.orbits or []:
        if orb.degree != 1:
            continue
        line = tuple(orb.coords)
        k, G = points_on_line(F, shape, line)
        if k < 4:
            continue
        quartic, (u, w) = restricted_form(F, shape, G, line)
        witnesses.append(LineWitness(line, k, quartic, (names[u], names[w])))
    return A2Verdict(False, witnesses)


def check_a2(web: Web, locus: PlaneLocus | None = None, seed: int = 0, deadline=None) -> A2Verdict:
    locus = locus or sing_on_plane(web, seed, deadline)
    s = locus.scheme
    if s is None or s.points != EXPECTED_ON_PLANE or s.shape is None:
        return A2Verdict(None, note="needs ten reduced singular points on the plane in shape position")
    return check_a2_from_shape(web.field, s.shape, seed, deadline)


def brute_force_collinear(F, points: Sequence[Sequence[int]], min_points: int = 4) -> list[tuple]:
    """Oracle: every line through two of the given F_p-points that holds ``>= min_points`` of them."""
    found = set()
    for P, Q in combinations(points, 2):
        line = _cross(F, P, Q)
        if not any(line):
            continue
        on = sum(1 for R in points if F.norm(sum(a * b for a, b in zip(line, R))) == 0)
        if on >= min_points:
            found.add(tuple(_normalize(F, line)))
    return sorted(found)


def _cross(F, P, Q):
    return [F.norm(P[1] * Q[2] - P[2] * Q[1]), F.norm(P[2] * Q[0] - P[0] * Q[2]), F.norm(P[0] * Q[1] - P[1] * Q[0])]


def _normalize(F, v):
    lead = next(c for c in v if c)
    inv = F.inv(lead)
    return [F.norm(c * inv) for c in v]


def shape_from_points(F, points: Sequence[Sequence[int]], rng: random.Random) -> Shape:
    """Shape data for a finite set of F_p-points (distinct random t-values, interpolated coordinates)."""
    ts: list[int] = []
    while len(ts) < len(points):
        t = F.random(rng)
        if t not in ts:
            ts.append(t)
    g = [F.convert(1)]
    for t in ts:
        g = uv.mul(F, g, [F.norm(-t), F.convert(1)])
    coords = [uv.interpolate(F, ts, [P[j] for P in points]) for j in range(3)]
    return Shape(F, g, coords)
