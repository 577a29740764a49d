"""Zero-dimensional schemes: length, point count, multiplicity profile, point orbits.

Everything after the Groebner basis is linear algebra on the quotient
algebra ``A = R/I``: multiplication matrices on the staircase basis,
minimal polynomials by Krylov iteration, and the characteristic polynomial
of a random linear form, whose root multiplicities are the local lengths.

Homogeneous ideals are read in one random affine chart.  A random linear
change of coordinates moves the hyperplane ``z_{n-1} = 0`` off every point
(failure probability at most ``degree / |field|``), the homogeneous basis
is saturated by ``z_{n-1}`` and then dehomogenised.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from quadweb import univariate as uv
from quadweb import polymatrix as pm
from quadweb.exactnum import ExtensionField, PrimeField
from quadweb.groebner.engine import GroebnerBasis, buchberger
from quadweb.groebner.ideal import Ideal, affine_dimension, saturate_by_variable
from quadweb.multipoly import DEGREVLEX, Poly, PolyRing

MAX_SHAPE_ATTEMPTS = 5


class PositiveDimensional(ValueError):
    def __init__(self, dimension: int):
        super().__init__(f"ideal is positive dimensional (dimension {dimension})")
        self.dimension = dimension


@dataclass
class Orbit:
    """A Galois orbit of points: ``degree`` conjugate points over the working prime field.

    ``coords`` holds one representative with entries in ``field``
    (``F_p`` itself when ``degree == 1``).
    """

    modulus: list[int]
    degree: int
    local_length: int
    field: object
    coords: list


@dataclass
class ZeroDimScheme:
    ring: PolyRing
    length: int
    points: int
    profile: dict[int, int] | None  # local length -> number of points
    orbits: list[Orbit] | None = None
    projective: bool = False
    notes: list[str] = dc_field(default_factory=list)
    shape: Shape | None = None

    def profile_pairs(self) -> list[tuple[int, int]]:
        return sorted((self.profile or {}).items())

    def is_reduced(self) -> bool:
        return self.length == self.points


# -- quotient algebra -----------------------------------------------------------------


class Quotient:
    """The finite-dimensional algebra ``R/I`` for a zero-dimensional basis ``gb``."""

    def __init__(self, gb: GroebnerBasis):
        self.gb = gb
        self.ring = gb.ring
        self.F = gb.ring.field
        self.basis = _staircase(gb)
        self.index = {m: i for i, m in enumerate(self.basis)}
        self._mult: dict[int, list[list]] = {}

    def __len__(self) -> int:
        return len(self.basis)

    def coords(self, f: Poly) -> list:
        r = self.gb.normal_form(f)
        v = [self.F.convert(0)] * len(self.basis)
        for k, c in r.terms.items():
            v[self.index[self.ring.decode(k)]] = c
        return v

    def mult_matrix(self, var: int) -> list[list]:
        if var not in self._mult:
            ring = self.ring
            n = len(self.basis)
            zero = self.F.convert(0)
            M = [[zero] * n for _ in range(n)]
            for j, m in enumerate(self.basis):
                e = list(m)
                e[var] += 1
                e = tuple(e)
                if e in self.index:
                    M[self.index[e]][j] = self.F.convert(1)
                    continue
                col = self.coords(ring.monomial(e))
                for i, c in enumerate(col):
                    M[i][j] = c
            self._mult[var] = M
        return self._mult[var]

    def linear_form_matrix(self, coeffs: Sequence) -> list[list]:
        F = self.F
        n = len(self.basis)
        M = [[F.convert(0)] * n for _ in range(n)]
        for var, c in enumerate(coeffs):
            if not c:
                continue
            Mv = self.mult_matrix(var)
            for i in range(n):
                row, src = M[i], Mv[i]
                for j in range(n):
                    if src[j]:
                        row[j] = F.norm(row[j] + c * src[j])
        return M

    def one_vector(self) -> list:
        v = [self.F.convert(0)] * len(self.basis)
        v[self.index[(0,) * self.ring.n]] = self.F.convert(1)
        return v


def _staircase(gb: GroebnerBasis) -> list[tuple[int, ...]]:
    ring = gb.ring
    lead = gb.leading_exponents()
    if any(sum(e) == 0 for e in lead):
        return []

    def standard(m):
        return not any(all(a <= b for a, b in zip(l, m)) for l in lead)

    start = (0,) * ring.n
    seen = {start}
    frontier = [start]
    out = [start]
    while frontier:
        nxt = []
        for m in frontier:
            for i in range(ring.n):
                e = list(m)
                e[i] += 1
                e = tuple(e)
                if e not in seen and standard(e):
                    seen.add(e)
                    nxt.append(e)
                    out.append(e)
                    if len(out) > 200000:
                        raise PositiveDimensional(1)
        frontier = nxt
    return out


def krylov_minpoly(F, M, v) -> tuple[list, list[list]]:
    """Minimal polynomial of ``M`` relative to ``v`` and the Krylov vectors ``v, Mv, ...``."""
    n = len(v)
    echelon: list[tuple[int, list, dict]] = []  # (pivot, vector, combination of Krylov vectors)
    vecs: list[list] = []
    cur = list(v)
    k = 0
    while True:
        red = list(cur)
        comb = {k: F.convert(1)}
        for piv, ev, ec in echelon:
            c = red[piv]
            if c:
                red = [F.norm(a - c * b) for a, b in zip(red, ev)]
                for i, x in ec.items():
                    comb[i] = F.norm(comb.get(i, 0) - c * x)
        piv = next((i for i in range(n) if red[i]), None)
        if piv is None:
            return uv.monic(F, uv.trim([comb.get(i, F.convert(0)) for i in range(k + 1)])), vecs
        s = F.inv(red[piv])
        echelon.append((piv, [F.norm(a * s) for a in red], {i: F.norm(x * s) for i, x in comb.items()}))
        vecs.append(cur)
        cur = pm.matvec(F, M, cur)
        k += 1


# -- charts --------------------------------------------------------------------------


@dataclass
class _Chart:
    affine_gb: GroebnerBasis
    change: list[list] | None  # x = change · (z', 1) for projective input


def _projective_chart(ideal: Ideal, rng: random.Random, deadline) -> _Chart | None:
    ring = ideal.ring
    F = ring.field
    n = ring.n
    while True:
        A = [[F.convert(F.random(rng)) for _ in range(n)] for _ in range(n)]
        if pm.det(F, A):
            break
    zr = PolyRing(n, F, DEGREVLEX, tuple(f"z{i}" for i in range(n)))
    images = [zr.linear_form(A[i]) for i in range(n)]
    gens = [g.substitute(images) for g in ideal.gens]
    gb = buchberger(gens, zr, deadline)
    d = affine_dimension(gb)
    if d <= 0:
        return None  # empty projective set
    if d > 1:
        raise PositiveDimensional(d - 1)
    sat = saturate_by_variable(gb, n - 1)
    ar = PolyRing(n - 1, F, DEGREVLEX, tuple(f"z{i}" for i in range(n - 1)))
    deh = []
    for f in sat:
        acc: dict = {}
        for k, c in f.terms.items():
            e = zr.decode(k)[:-1]
            key = ar.encode(e)
            v = F.norm(acc.get(key, 0) + c)
            if v:
                acc[key] = v
            else:
                acc.pop(key, None)
        if acc:
            deh.append(Poly(ar, acc))
    return _Chart(buchberger(deh, ar, deadline), A)


# -- main entry ----------------------------------------------------------------------


def zero_dim_analyze(ideal: Ideal, seed: int = 0, projective: bool = False,
                     deadline=None, orbits: bool = True) -> ZeroDimScheme:
    """Length, point count (Seidenberg radical), multiplicity profile and orbits.

    With ``projective`` the (homogeneous) ideal is counted in P^{n-1}.
    Raises :class:`PositiveDimensional` when the vanishing locus is not finite.
    """
    ring = ideal.ring
    F = ring.field
    rng = random.Random(f"zerodim-{seed}")
    notes = []
    if projective:
        if not ideal.homogeneous:
            raise ValueError("projective analysis needs a homogeneous ideal")
        chart = _projective_chart(ideal, rng, deadline)
        if chart is None:
            return ZeroDimScheme(ring, 0, 0, {}, [], True, ["empty projective locus"])
        notes.append("random affine chart")
    else:
        gb = ideal.groebner(DEGREVLEX, deadline) if ring.order == DEGREVLEX else buchberger(
            [ring.with_order(DEGREVLEX).convert(g) for g in ideal.gens], ring.with_order(DEGREVLEX), deadline)
        d = affine_dimension(gb)
        if d > 0:
            raise PositiveDimensional(d)
        chart = _Chart(gb, None)
    gb = chart.affine_gb
    if gb.is_unit():
        return ZeroDimScheme(ring, 0, 0, {}, [], projective, notes)
    Q = Quotient(gb)
    length = len(Q)

    rad_gb = seidenberg_radical(gb, deadline)
    RQ = Quotient(rad_gb) if rad_gb is not gb else Q
    points = len(RQ)

    profile = None
    orbit_list = None
    shape = None
    for _ in range(MAX_SHAPE_ATTEMPTS):
        coeffs = [F.convert(F.random(rng)) for _ in range(gb.ring.n)]
        Mt = Q.linear_form_matrix(coeffs)
        chi = pm.charpoly(F, Mt)
        parts = uv.squarefree_decomposition(F, chi)
        if sum(uv.degree(s) for s, _ in parts) != points:
            continue
        profile = {}
        for s, k in parts:
            if uv.degree(s) > 0:
                profile[k] = profile.get(k, 0) + uv.degree(s)
        if orbits:
            shape = _shape(RQ, coeffs, chart.change)
            if isinstance(F, PrimeField):
                orbit_list = _orbits(shape, parts, projective, rng)
        break
    else:
        notes.append("profile unavailable: no separating linear form found")
    return ZeroDimScheme(ring, length, points, profile, orbit_list, projective, notes, shape)


def seidenberg_radical(gb: GroebnerBasis, deadline=None) -> GroebnerBasis:
    """Radical of a zero-dimensional ideal via squarefree eliminants, iterated to a fixed point."""
    F = gb.ring.field
    ring = gb.ring
    while True:
        Q = Quotient(gb)
        if not len(Q):
            return gb
        one = Q.one_vector()
        extra = []
        for var in range(ring.n):
            mp, _ = krylov_minpoly(F, Q.mult_matrix(var), one)
            sq = uv.squarefree_part(F, mp)
            if len(sq) < len(mp):
                extra.append(_univariate_in(ring, var, sq))
        if not extra:
            return gb
        gb = buchberger(list(gb.polys) + extra, ring, deadline)


def _univariate_in(ring: PolyRing, var: int, coeffs: list) -> Poly:
    d = {}
    for k, c in enumerate(coeffs):
        if c:
            e = [0] * ring.n
            e[var] = k
            d[tuple(e)] = c
    return ring.from_dict(d)


@dataclass
class Shape:
    """Shape-lemma form of the reduced scheme: points are ``t = root of g``, coordinate ``j`` is ``coords[j](t)``.

    For projective schemes ``coords`` are homogeneous coordinates in the
    original variables (not normalised).
    """

    field: object
    g: list
    coords: list[list]


def _shape(RQ: Quotient, coeffs, change) -> Shape:
    F = RQ.F
    ring = RQ.ring
    N = len(RQ)
    Mt = RQ.linear_form_matrix(coeffs)
    one = RQ.one_vector()
    g, vecs = krylov_minpoly(F, Mt, one)
    if len(vecs) != N:
        raise ArithmeticError("linear form does not separate the points")
    Kinv = pm.inverse(F, pm.transpose(vecs))  # columns of the Krylov matrix are t^k
    hs = []
    for var in range(ring.n):
        target = pm.matvec(F, RQ.mult_matrix(var), one)
        hs.append(uv.trim(pm.matvec(F, Kinv, target)))
    if change is None:
        return Shape(F, g, hs)
    coords = []
    for row in change:
        acc = [F.convert(row[-1])] if row[-1] else []
        for a, h in zip(row[:-1], hs):
            if a:
                acc = uv.add(F, acc, uv.scale(F, h, a))
        coords.append(acc)
    return Shape(F, g, coords)


def _orbits(shape: Shape, parts, projective: bool, rng) -> list[Orbit]:
    F = shape.field
    out = []
    for s, k in parts:
        if uv.degree(s) <= 0:
            continue
        for f, _ in uv.factor(F, s, rng):
            deg = uv.degree(f)
            if deg == 1:
                root = F.norm(-f[0])
                pt = [uv.evaluate(F, h, root) for h in shape.coords]
                fld = F
            else:
                fld = ExtensionField(F, f)
                pt = [fld.element(uv.rem(F, h, f)) if h else fld.zero() for h in shape.coords]
            if projective:
                pt = normalize_projective(fld, pt)
            out.append(Orbit(list(f), deg, k, fld, pt))
    return out


def normalize_projective(F, pt: list) -> list:
    lead = next((c for c in pt if c), None)
    if lead is None:
        return pt
    inv = F.inv(lead)
    return [F.norm(c * inv) for c in pt]
