"""Ideals: dimension, Hilbert polynomial data, elimination, radical membership."""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from quadweb.groebner.engine import Deadline, GroebnerBasis, buchberger
from quadweb.multipoly import DEGREVLEX, MonomialOrder, Poly, PolyRing, elimination


class Ideal:
    """A finitely generated ideal; bases are computed lazily and cached per order."""

    def __init__(self, ring: PolyRing, gens: Sequence[Poly]):
        for g in gens:
            if g.ring != ring:
                raise TypeError("generator lives in a different ring")
        self.ring = ring
        self.gens = [g for g in gens if g]
        self.homogeneous = all(g.is_homogeneous()[0] for g in self.gens)
        self._gb: dict[MonomialOrder, GroebnerBasis] = {}

    def __repr__(self) -> str:
        return f"Ideal({len(self.gens)} generators in {self.ring.n} variables)"

    def __add__(self, other) -> Ideal:
        extra = other.gens if isinstance(other, Ideal) else list(other)
        return Ideal(self.ring, self.gens + extra)

    def groebner(self, order: MonomialOrder | None = None, deadline=None) -> GroebnerBasis:
        order = order or self.ring.order
        if order not in self._gb:
            ring = self.ring if order == self.ring.order else self.ring.with_order(order)
            gens = [ring.convert(g) for g in self.gens]
            self._gb[order] = buchberger(gens, ring, deadline) if gens else GroebnerBasis(ring, [])
        return self._gb[order]

    def contains(self, f: Poly, deadline=None) -> bool:
        gb = self.groebner(deadline=deadline)
        return not gb.normal_form(gb.ring.convert(f))

    def is_unit(self, deadline=None) -> bool:
        return self.groebner(deadline=deadline).is_unit()


# -- leading-term combinatorics ---------------------------------------------------


def minimal_monomials(exps: Sequence[tuple[int, ...]]) -> list[tuple[int, ...]]:
    exps = sorted(set(exps), key=sum)
    out: list[tuple[int, ...]] = []
    for e in exps:
        if not any(all(a <= b for a, b in zip(m, e)) for m in out):
            out.append(e)
    return out


def affine_dimension(gb: GroebnerBasis) -> int:
    """Krull dimension of ``R/I`` via maximal independent variable sets (-1 for the unit ideal)."""
    if gb.is_unit():
        return -1
    n = gb.ring.n
    lead = minimal_monomials(gb.leading_exponents())
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in lead]
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            s = set(subset)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def dimension(gb: GroebnerBasis, projective: bool | None = None) -> int:
    """Affine dimension, or projective dimension (affine - 1) for homogeneous ideals.

    ``projective`` defaults to "all basis elements homogeneous".
    """
    if projective is None:
        projective = all(f.is_homogeneous()[0] for f in gb.polys)
    d = affine_dimension(gb)
    if d < 0:
        return -1
    return d - 1 if projective else d


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _shift(a: list[int], d: int) -> list[int]:
    return [0] * d + a


def hilbert_numerator(monomials: Sequence[tuple[int, ...]]) -> list[int]:
    """Numerator ``N(t)`` of the Hilbert series ``N(t)/(1-t)^n`` of ``k[x]/(monomials)``."""
    gens = minimal_monomials(monomials)
    if not gens:
        return [1]
    if any(sum(m) == 0 for m in gens):
        return [0]
    # coprime generators: product of (1 - t^deg)
    used = [frozenset(i for i, e in enumerate(m) if e) for m in gens]
    if all(not (used[i] & used[j]) for i in range(len(gens)) for j in range(i)):
        out = [1]
        for m in gens:
            out = _poly_mul(out, _poly_sub([1], _shift([1], sum(m))))
        return out
    # pivot on a variable power shared by several generators
    counts: dict[int, int] = {}
    for u in used:
        for i in u:
            counts[i] = counts.get(i, 0) + 1
    var = max(counts, key=lambda i: (counts[i], -i))
    powers = sorted(m[var] for m in gens if m[var])
    e = powers[(len(powers) - 1) // 2]
    pivot = tuple(e if i == var else 0 for i in range(len(gens[0])))
    # N(I) = N(I + <p>) + t^deg(p) * N(I : p)
    with_p = gens + [pivot]
    colon = [tuple(max(a - b, 0) for a, b in zip(m, pivot)) for m in gens]
    left = hilbert_numerator(with_p)
    right = _shift(hilbert_numerator(colon), e)
    n = max(len(left), len(right))
    out = [(left[i] if i < len(left) else 0) + (right[i] if i < len(right) else 0) for i in range(n)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def hilbert_data(gb: GroebnerBasis) -> tuple[int, int, list[int]]:
    """``(projective_dimension, degree, reduced_numerator)`` of a homogeneous ideal.

    The Hilbert series is rewritten as ``Q(t)/(1-t)^(d+1)`` with ``Q(1) != 0``;
    then ``d`` is the projective dimension and ``Q(1)`` the degree.
    """
    n = gb.ring.n
    num = hilbert_numerator(gb.leading_exponents())
    if num == [0]:
        return -1, 0, [0]
    k = n
    while k > 0 and sum(num) == 0:
        # synthetic division by (1 - t)
        q = []
        acc = 0
        for c in num[:-1]:
            acc += c
            q.append(acc)
        num = q
        k -= 1
    return k - 1, sum(num), num


# -- derived constructions -------------------------------------------------------------


def extend_ring(ring: PolyRing, extra: Sequence[str], order: MonomialOrder) -> PolyRing:
    """``ring`` with variables ``extra`` prepended."""
    return PolyRing(ring.n + len(extra), ring.field, order, tuple(extra) + ring.names)


def embed(f: Poly, target: PolyRing, offset: int) -> Poly:
    """Map ``f`` into ``target`` by shifting its variables up by ``offset``."""
    out = {}
    pad = (0,) * offset
    for k, c in f.terms.items():
        out[target.encode(pad + f.ring.decode(k))] = c
    return Poly(target, out)


def eliminate(ideal: Ideal, first_k: int, deadline=None) -> Ideal:
    """Generators of ``I ∩ k[x_k..x_{n-1}]`` as an ideal in the ring of the remaining variables."""
    ring = ideal.ring
    if not 0 < first_k < ring.n:
        raise ValueError("first_k must be between 1 and n-1")
    gb = ideal.groebner(elimination(first_k), deadline)
    sub = PolyRing(ring.n - first_k, ring.field, DEGREVLEX, ring.names[first_k:])
    keep = []
    for f in gb.polys:
        exps = [f.ring.decode(k) for k in f.terms]
        if all(not any(e[:first_k]) for e in exps):
            keep.append(sub.from_dict({e[first_k:]: c for e, (_, c) in zip(exps, f.terms.items())}))
    return Ideal(sub, keep)


def radical_membership(f: Poly, ideal: Ideal, deadline=None) -> bool:
    """True iff ``f`` vanishes on ``V(ideal)`` (Rabinowitsch: ``1 ∈ I + <t f - 1>``)."""
    ring = ideal.ring
    if not f:
        return True
    big = extend_ring(ring, ["_t"], DEGREVLEX)
    t = big.gen(0)
    gens = [embed(g, big, 1) for g in ideal.gens]
    gens.append(t * embed(f, big, 1) - 1)
    return buchberger(gens, big, deadline).is_unit()


def saturate_by_variable(gb: GroebnerBasis, var: int) -> list[Poly]:
    """Divide each element of a homogeneous degrevlex basis by the largest power of the last variable.

    For the last variable of a degrevlex order this yields a Groebner basis of
    ``I : x^∞`` (the leading term is divisible by ``x^k`` iff the whole form is).
    """
    ring = gb.ring
    if var != ring.n - 1 or ring.order.kind != "degrevlex":
        raise ValueError("saturation by division needs the last variable of a degrevlex order")
    out = []
    for f in gb.polys:
        exps = [ring.decode(k) for k in f.terms]
        s = min(e[var] for e in exps)
        if s:
            d = {tuple(x - (s if i == var else 0) for i, x in enumerate(e)): c
                 for e, c in zip(exps, f.terms.values())}
            out.append(ring.from_dict(d))
        else:
            out.append(f)
    return out


def as_deadline(seconds_or_deadline) -> Deadline | None:
    if seconds_or_deadline is None or isinstance(seconds_or_deadline, Deadline):
        return seconds_or_deadline
    return Deadline(float(seconds_or_deadline))
