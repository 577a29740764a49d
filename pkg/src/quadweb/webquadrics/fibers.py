"""Fiber types of the conic bundle over P3, read off from rank q(y) and rank B(y)."""

from __future__ import annotations

import random
from dataclasses import dataclass

from quadweb import polymatrix as pm
from quadweb import univariate as uv
from quadweb.exactnum import PrimeField
from quadweb.multipoly import Poly, PolyRing
from quadweb.webquadrics.web import Web

FIBER_DESCRIPTIONS = {
    "a": "plane cubic curve",
    "b": "a line in P4",
    "c": "one point",
    "d": "two points",
}


class FiberInconsistency(ArithmeticError):
    pass


@dataclass
class FiberReport:
    y: tuple
    rank_q: int
    rank_B: int
    type: str
    cubic: Poly | None = None  # type a: the cubic cutting B on the plane ker B(y), in plane coordinates
    factor_degrees: list[int] | None = None  # degrees of its factors over the working field

    @property
    def description(self) -> str:
        return FIBER_DESCRIPTIONS[self.type]


def fiber_type(web: Web, y, seed: int = 0, field=None) -> FiberReport:
    """Fiber type at ``y``; ``field`` is an extension of the web's field holding the entries of ``y``."""
    F = field or web.field
    y = [F.convert(c) for c in y]
    if not any(y):
        raise ValueError("y must be a nonzero point of P3")
    rq = pm.rank(F, web.pencil_matrix(y, F))
    By = _B_at(web, y, F)
    rb = pm.rank(F, By)
    if rb not in (2, 3):
        raise FiberInconsistency(f"rank B(y) = {rb}; only 2 and 3 can occur")
    if rb == 2:
        if rq not in (5, 6, 7):
            raise FiberInconsistency(f"rank B(y) = 2 with rank q(y) = {rq}")
        report = FiberReport(tuple(y), rq, rb, "a")
        if F != web.field:
            return report
        report.cubic = plane_cubic(web, By)
        if report.cubic is not None and isinstance(F, PrimeField):
            report.factor_degrees = ternary_factor_degrees(report.cubic, random.Random(f"fiber-{seed}"))
        return report
    kind = {8: "d", 7: "c", 6: "b"}.get(rq)
    if kind is None:
        raise FiberInconsistency(f"rank B(y) = 3 with rank q(y) = {rq}")
    return FiberReport(tuple(y), rq, rb, kind)


def _B_at(web: Web, y, F) -> list[list]:
    return [[F.norm(sum((y[i] * web.q[i][5 + r][c] for i in range(4)), F.convert(0))) for c in range(5)]
            for r in range(3)]


def plane_cubic(web: Web, By) -> Poly | None:
    """Restrict the Bordiga cubics to the plane ``B(y) xl = 0`` and return a nonzero one.

    All restrictions are proportional when the plane meets B in a curve; if
    they are not, ``None`` is returned.
    """
    F = web.field
    W = pm.kernel_basis(F, By)  # three vectors in F^5
    R = PolyRing(3, F, names=["u0", "u1", "u2"])
    u = R.gens()
    images = [sum((u[k] * W[k][c] for k in range(3) if W[k][c]), R.zero()) for c in range(5)]
    restricted = [c.substitute(images) for c in web.derived.bordiga_cubics]
    nonzero = [c for c in restricted if c]
    if not nonzero:
        return None
    f = nonzero[0].monic()
    if any(g.monic() != f for g in nonzero[1:]):
        return None
    return f


def ternary_factor_degrees(f: Poly, rng: random.Random) -> list[int]:
    """Degrees of the factors of a ternary form (degree <= 3) over F_p, sorted descending.

    Only linear factors need to be found: a form of degree <= 3 with no
    linear factor is irreducible.
    """
    degrees = []
    g = _generic(f, rng)
    while g.degree() > 1:
        lin = _linear_factor(g, rng)
        if lin is None:
            break
        g = g.exact_div(lin)
        degrees.append(1)
    if g.degree() >= 1:
        degrees.append(g.degree())
    return sorted(degrees, reverse=True)


def _generic(f: Poly, rng: random.Random) -> Poly:
    """A random invertible linear change of coordinates (factor degrees are unchanged)."""
    R = f.ring
    F = R.field
    while True:
        A = [[F.random(rng) for _ in range(3)] for _ in range(3)]
        if pm.det(F, A):
            break
    images = [R.linear_form(row) for row in A]
    return f.substitute(images)


def _linear_factor(g: Poly, rng: random.Random) -> Poly | None:
    """A factor ``u0 - a u1 - b u2`` of ``g``, or None.

    ``a`` ranges over roots of g(u0, 1, 0) and ``b`` over roots of g(u0, 0, 1).
    """
    R = g.ring
    F = R.field
    d = g.degree()
    slice_a = _binary(g, 1)
    slice_b = _binary(g, 2)
    if uv.degree(slice_a) != d or uv.degree(slice_b) != d:
        return None
    u0, u1, u2 = R.gens()
    for a in uv.roots(F, slice_a, rng):
        for b in uv.roots(F, slice_b, rng):
            lin = u0 - u1 * a - u2 * b
            try:
                g.exact_div(lin)
                return lin
            except ArithmeticError:
                continue
    return None


def _binary(g: Poly, keep: int) -> list:
    """Coefficients (low to high in u0) of g with u_keep = 1 and the remaining variable 0."""
    R = g.ring
    F = R.field
    out = [F.convert(0)] * (g.degree() + 1)
    other = 3 - keep
    for k, c in g.terms.items():
        e = R.decode(k)
        if e[other] == 0:
            out[e[0]] = F.norm(out[e[0]] + c)
    return uv.trim(out)
