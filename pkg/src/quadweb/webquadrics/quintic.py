"""The projected quintic ``det A(xl)``, the Bordiga sextic, its singular points and the rank-2 locus of B(y)."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from quadweb import polymatrix as pm
from quadweb.groebner.ideal import Ideal, dimension, hilbert_data
from quadweb.groebner.zerodim import PositiveDimensional, ZeroDimScheme, zero_dim_analyze
from quadweb.multipoly import Poly
from quadweb.polymatrix import PolyMatrix
from quadweb.webquadrics.web import Web

EXPECTED_QUINTIC_NODES = 46
EXPECTED_RANK2_POINTS = 10


class LaplaceIdentityError(AssertionError):
    pass


def quintic(web: Web) -> Poly:
    """``det A(xl)``, checked against its expansion along the first column."""
    D = web.derived
    det_A = D.A_of_x.det()
    C, Q = D.bordiga_cubics, D.quadrics_on_p4
    expansion = C[0] * Q[0] - C[1] * Q[1] + C[2] * Q[2] - C[3] * Q[3]
    if det_A != expansion:
        raise LaplaceIdentityError("det A(x) differs from C0*Q0 - C1*Q1 + C2*Q2 - C3*Q3")
    ok, deg = det_A.is_homogeneous()
    if det_A and (not ok or deg != 5):
        raise LaplaceIdentityError(f"det A(x) is not a quintic form (degree {deg})")
    return det_A


@dataclass
class BordigaSummary:
    projective_dimension: int
    degree: int
    smooth: bool | None
    rank_two_samples: list[int] = dc_field(default_factory=list)  # rank a(x) at sampled points of B
    quintic_in_ideal: bool | None = None

    @property
    def rank_two_everywhere_sampled(self) -> bool:
        return bool(self.rank_two_samples) and all(r == 2 for r in self.rank_two_samples)


def bordiga_ideal(web: Web) -> Ideal:
    D = web.derived
    return Ideal(D.R4, [c for c in D.bordiga_cubics if c])


def bordiga_singular_ideal(web: Web) -> Ideal:
    """The cubics plus the 2x2 minors of their 4x5 Jacobian (rank <= 1 on a codimension-2 surface)."""
    cubics = web.derived.bordiga_cubics
    J = PolyMatrix(web.derived.R4, [c.gradient() for c in cubics])
    return Ideal(web.derived.R4, cubics + [m for m in J.minors(2) if m])


def bordiga(web: Web, seed: int = 0, deadline=None, check_smooth: bool = True,
            samples: int = 1) -> tuple[Ideal, BordigaSummary]:
    ideal = bordiga_ideal(web)
    gb = ideal.groebner(deadline=deadline)
    pdim, deg, _ = hilbert_data(gb)
    summary = BordigaSummary(pdim, deg, None)
    summary.quintic_in_ideal = not gb.normal_form(quintic(web))
    if check_smooth:
        sing = bordiga_singular_ideal(web).groebner(deadline=deadline)
        summary.smooth = dimension(sing, projective=True) < 0
    if pdim == 2:
        summary.rank_two_samples = _rank_on_plane_sections(web, ideal, seed, samples, deadline)
    return ideal, summary


def _rank_on_plane_sections(web: Web, ideal: Ideal, seed: int, samples: int, deadline) -> list[int]:
    """Rank of a(x) at every point where B meets a few random planes of P4."""
    R = ideal.ring
    F = R.field
    rng = random.Random(f"bordiga-{seed}")
    a = web.derived.a_of_x
    ranks = []
    for _ in range(samples):
        cuts = [R.linear_form([F.random(rng) for _ in range(R.n)]) for _ in range(2)]
        try:
            s = zero_dim_analyze(ideal + cuts, seed, projective=True, deadline=deadline)
        except PositiveDimensional:
            continue
        for orb in s.orbits or []:
            K = orb.field
            M = [[_eval(a[r, i], orb.coords, K) for i in range(4)] for r in range(3)]
            ranks.extend([pm.rank(K, M)] * orb.degree)
    return ranks


def _eval(f: Poly, pt, K):
    acc = K.convert(0)
    for k, c in f.terms.items():
        term = K.convert(c)
        for x, e in zip(pt, f.ring.decode(k)):
            if e:
                term = term * x ** e
        acc = K.norm(acc + term)
    return acc


@dataclass
class A3Verdict:
    holds: bool
    count: int | None
    length: int | None = None
    dimension: int = 0
    scheme: ZeroDimScheme | None = None


def quintic_singular_ideal(web: Web) -> Ideal:
    D = web.derived
    return Ideal(D.R4, D.bordiga_cubics + [m for m in D.A_of_x.minors(3) if m])


def check_a3(web: Web, seed: int = 0, deadline=None) -> A3Verdict:
    """Singular points of the quintic: points of B where A(xl) has rank <= 2; 46 reduced points expected."""
    try:
        s = zero_dim_analyze(quintic_singular_ideal(web), seed, projective=True, deadline=deadline, orbits=False)
    except PositiveDimensional as exc:
        return A3Verdict(False, None, None, exc.dimension)
    ok = s.points == EXPECTED_QUINTIC_NODES and s.length == EXPECTED_QUINTIC_NODES
    return A3Verdict(ok, s.points, s.length, 0 if s.points else -1, s)


@dataclass
class Rank2Locus:
    scheme: ZeroDimScheme | None
    dimension: int
    rank_le1_empty: bool

    @property
    def count(self) -> int | None:
        return self.scheme.points if self.scheme else None


def rank2_locus(web: Web, seed: int = 0, deadline=None) -> Rank2Locus:
    """Points ``y`` with rank B(y) <= 2 (3x3 minors), and whether rank <= 1 ever occurs (2x2 minors)."""
    D = web.derived
    By = D.B_of_y
    low = Ideal(D.Ry, By.minors(2)).groebner(deadline=deadline)
    empty = dimension(low, projective=True) < 0
    try:
        s = zero_dim_analyze(Ideal(D.Ry, By.minors(3)), seed, projective=True, deadline=deadline)
        return Rank2Locus(s, 0, empty)
    except PositiveDimensional as exc:
        return Rank2Locus(None, exc.dimension, empty)
