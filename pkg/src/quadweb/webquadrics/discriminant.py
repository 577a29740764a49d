"""The octic discriminant surface ``S8 = det q(y)`` and the classification of its singular points."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from quadweb import polymatrix as pm
from quadweb.groebner.ideal import Ideal, dimension
from quadweb.groebner.zerodim import Orbit, PositiveDimensional, ZeroDimScheme, zero_dim_analyze
from quadweb.multipoly import Poly
from quadweb.webquadrics.web import Web, WebError

NODAL_BUDGET = 188

A1 = "A1"
A_ODD = "A_m (m>=3, odd)"
COR2 = "corank-2 double point"
KFOLD = "k-fold (k>=3)"
ADE_LABELS = (A1, A_ODD)


class DiscriminantInconsistency(ArithmeticError):
    """A rank pattern that cannot occur for a valid web; usually an unlucky prime."""


def discriminant(web: Web) -> Poly:
    S8 = web.derived.S8
    ok, deg = S8.is_homogeneous()
    if not S8:
        raise WebError(["det q(y) vanishes identically: degenerate web"])
    if not ok or deg != 8:
        raise ArithmeticError(f"det q(y) is not an octic form (degree {deg})")
    return S8


def tjurina_ideal(web: Web) -> Ideal:
    S8 = discriminant(web)
    return Ideal(S8.ring, [S8] + S8.gradient())


@dataclass
class A4Verdict:
    holds: bool
    projective_dimension: int


def check_a4(web: Web, deadline=None) -> A4Verdict:
    gb = tjurina_ideal(web).groebner(deadline=deadline)
    d = dimension(gb, projective=True)
    return A4Verdict(d <= 0, d)


# -- classification ------------------------------------------------------------------------------


@dataclass
class SingularOrbit:
    point: list  # representative y*, entries in ``field``
    field: object
    degree: int  # number of conjugate points in the orbit
    tjurina: int  # local length of <S8, dS8> at each point
    rank_q: int
    rank_B: int
    kernel: list  # basis of ker q(y*) over ``field``
    label: str
    contained: bool | None = None  # rank 6 only: another web member contains the kernel line
    meets_plane: bool | None = None  # rank 6 only: the kernel line meets the plane

    @property
    def ade(self) -> bool:
        return self.label in ADE_LABELS


@dataclass
class DiscriminantReport:
    S8: Poly
    scheme: ZeroDimScheme
    orbits: list[SingularOrbit] = dc_field(default_factory=list)

    @property
    def point_count(self) -> int:
        return sum(o.degree for o in self.orbits)

    @property
    def budget(self) -> int:
        """Sum of (local Tjurina length + 1) over all singular points."""
        return sum(o.degree * (o.tjurina + 1) for o in self.orbits)

    @property
    def all_ade(self) -> bool:
        return all(o.ade for o in self.orbits)

    def label_counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for o in self.orbits:
            out[o.label] = out.get(o.label, 0) + o.degree
        return out

    def rank_counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for o in self.orbits:
            out[o.rank_q] = out.get(o.rank_q, 0) + o.degree
        return out


def singular_scheme(web: Web, seed: int = 0, deadline=None) -> ZeroDimScheme:
    """Points of ``V(S8, grad S8)`` in P3 with their local Tjurina lengths."""
    return zero_dim_analyze(tjurina_ideal(web), seed, projective=True, deadline=deadline)


def _form(K, M, u, v):
    acc = K.convert(0)
    for i in range(8):
        if u[i]:
            for j in range(8):
                if M[i][j] and v[j]:
                    acc = K.norm(acc + u[i] * M[i][j] * v[j])
    return acc


def classify_point(web: Web, y: list, K) -> tuple[int, int, list, str, bool | None, bool | None]:
    """Rank data and table label for one singular point ``y`` of the discriminant."""
    q = web.pencil_matrix(y, K)
    rq = pm.rank(K, q)
    ker = pm.kernel_basis(K, q)
    By = [[sum((y[i] * web.q[i][5 + r][c] for i in range(4) if web.q[i][5 + r][c]), K.convert(0))
           for c in range(5)] for r in range(3)]
    rb = pm.rank(K, By)
    qs = [[[K.convert(a) for a in row] for row in M] for M in web.q]
    contained = meets = None
    if rq == 8 or rq <= 4:
        raise DiscriminantInconsistency(f"rank q(y) = {rq} at a singular point of S8")
    if rq == 7:
        v = ker[0]
        if any(_form(K, M, v, v) for M in qs):
            raise DiscriminantInconsistency("rank 7 kernel point off the base locus at a singular point of S8")
        label = A1
    elif rq == 6:
        v1, v2 = ker
        restr = [[_form(K, M, v1, v1), 2 * _form(K, M, v1, v2), _form(K, M, v2, v2)] for M in qs]
        # y* itself always restricts to zero on the line, so rank <= 3; rank <= 2 means another member contains it
        contained = pm.rank(K, pm.transpose(restr)) <= 2
        meets = pm.rank(K, [v1[:5], v2[:5]]) < 2
        label = A1 if not contained else (COR2 if meets else A_ODD)
    else:
        label = KFOLD
    return rq, rb, ker, label, contained, meets


def classify_discriminant(web: Web, seed: int = 0, deadline=None,
                          scheme: ZeroDimScheme | None = None) -> DiscriminantReport:
    """Classify every singular orbit of ``S8``; requires a finite singular locus."""
    S8 = discriminant(web)
    scheme = scheme or singular_scheme(web, seed, deadline)
    if scheme.orbits is None:
        raise ArithmeticError("orbit data unavailable (no separating linear form or non-prime field)")
    report = DiscriminantReport(S8, scheme)
    for orb in scheme.orbits:
        rq, rb, ker, label, contained, meets = classify_point(web, orb.coords, orb.field)
        report.orbits.append(SingularOrbit(orb.coords, orb.field, orb.degree, orb.local_length,
                                           rq, rb, ker, label, contained, meets))
    return report


def budget_summary(report: DiscriminantReport) -> dict:
    total = report.budget
    if report.all_ade:
        status = "=188 certified" if total == NODAL_BUDGET else f"sum = {total}, expected {NODAL_BUDGET}"
    else:
        status = f"sum(tau+1) = {total}, mu-budget {NODAL_BUDGET} not directly checkable"
    return {"sum_tau_plus_1": total, "all_ade": report.all_ade,
            "certified_188": report.all_ade and total == NODAL_BUDGET, "status": status}


__all__ = [
    "A1", "A_ODD", "COR2", "KFOLD", "A4Verdict", "DiscriminantInconsistency", "DiscriminantReport",
    "SingularOrbit", "Orbit", "PositiveDimensional", "budget_summary", "check_a4", "classify_discriminant",
    "classify_point", "discriminant", "singular_scheme", "tjurina_ideal",
]
