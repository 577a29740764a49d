import itertools
import random
from math import comb

import pytest
import sympy as sp

from oracles import macaulay_hilbert, monomials
from quadweb.exactnum import PrimeField
from quadweb.groebner import GroebnerTimeout, buchberger, is_groebner
from quadweb.groebner.ideal import Ideal, eliminate, hilbert_data, radical_membership
from quadweb.groebner.zerodim import PositiveDimensional, seidenberg_radical, zero_dim_analyze
from quadweb.multipoly import DEGREVLEX, LEX, PolyRing, parse

P = 32003
F = PrimeField(P)


def series_coefficient(pdim, num, d):
    if pdim < 0:  # empty projective locus: the series is a polynomial
        return num[d] if d < len(num) else 0
    return sum(c * comb(d - i + pdim, pdim) for i, c in enumerate(num) if d >= i)


def random_homogeneous(R, rng, deg, terms=4):
    pool = list(monomials(R.n, deg))
    return R.from_dict({m: F.random(rng) for m in rng.sample(pool, min(terms, len(pool)))})


def small_ideals():
    rng = random.Random(11)
    out = []
    for k in range(20):
        n = 3 if k % 2 else 4
        R = PolyRing(n, F, names=[f"x{i}" for i in range(n)])
        ngens = rng.randint(1, n + 1)
        gens = [random_homogeneous(R, rng, rng.randint(1, 3), rng.randint(1, 4)) for _ in range(ngens)]
        out.append((R, [g for g in gens if g]))
    return out


@pytest.mark.parametrize("case", range(20))
def test_hilbert_series_matches_macaulay_rank(case):
    R, gens = small_ideals()[case]
    gb = buchberger(gens, R)
    assert is_groebner(gb.polys)
    pdim, _, num = hilbert_data(gb)
    for d in range(7):
        assert series_coefficient(pdim, num, d) == macaulay_hilbert(R, gens, d), d


def _to_sympy(f, syms):
    return sum(int(c) * sp.prod([s ** k for s, k in zip(syms, e)]) for e, c in f.as_dict().items())


@pytest.mark.parametrize("seed", range(6))
def test_reduced_basis_agrees_with_sympy(seed):
    rng = random.Random(seed)
    R = PolyRing(3, F, DEGREVLEX, ["x", "y", "z"])
    syms = sp.symbols("x y z")
    gens = [random_homogeneous(R, rng, rng.randint(2, 3), 3) + R.gen(rng.randrange(3)) for _ in range(3)]
    ours = sorted(str(g.monic()) for g in buchberger(gens, R).polys)
    G = sp.groebner([_to_sympy(g, syms) for g in gens], *syms, modulus=P, order="grevlex")
    theirs = []
    for g in G.exprs:
        pg = sp.Poly(g, *syms, modulus=P)
        d = {e: int(c) % P for e, c in zip(pg.monoms(), pg.coeffs())}
        theirs.append(str(R.from_dict(d).monic()))
    assert ours == sorted(theirs)


def test_lex_basis_is_groebner():
    R = PolyRing(3, F, LEX, ["x", "y", "z"])
    gens = [parse(R, "x^2+y*z-1"), parse(R, "x*y-z^2"), parse(R, "y^3-x")]
    gb = buchberger(gens, R)
    assert is_groebner(gb.polys)
    assert not is_groebner([parse(R, "x^2-y"), parse(R, "x*y-1")])


def test_twisted_cubic():
    R = PolyRing(4, F, names=["a", "b", "c", "d"])
    gens = [parse(R, "a*c-b^2"), parse(R, "b*d-c^2"), parse(R, "a*d-b*c")]
    pdim, deg, _ = hilbert_data(buchberger(gens, R))
    assert (pdim, deg) == (1, 3)


def test_elimination_gives_implicit_equation():
    R = PolyRing(3, F, names=["t", "x", "y"])
    ideal = Ideal(R, [parse(R, "x-t^2"), parse(R, "y-t^3")])
    elim = eliminate(ideal, 1)
    S = elim.ring
    assert len(elim.gens) == 1
    assert elim.gens[0].monic() == parse(S, "x^3-y^2").monic()


def test_radical_membership():
    R = PolyRing(2, F, names=["x", "y"])
    ideal = Ideal(R, [parse(R, "x^3"), parse(R, "y^2-x")])
    assert radical_membership(parse(R, "x"), ideal)
    assert radical_membership(parse(R, "y"), ideal)
    assert not radical_membership(parse(R, "y-1"), ideal)


def test_radical_is_idempotent():
    R = PolyRing(2, F, names=["x", "y"])
    x, y = R.gens()
    gb = buchberger([x ** 2 * (x - 1) ** 3, y ** 2 - x * y], R)
    rad = seidenberg_radical(gb)
    again = seidenberg_radical(rad)
    assert sorted(map(str, rad.polys)) == sorted(map(str, again.polys))
    assert zero_dim_analyze(Ideal(R, rad.polys)).length == zero_dim_analyze(Ideal(R, gb.polys)).points


def test_zero_dim_length_and_points():
    R = PolyRing(2, F, names=["x", "y"])
    s = zero_dim_analyze(Ideal(R, [parse(R, "x^2"), parse(R, "y")]))
    assert (s.length, s.points, s.profile) == (2, 1, {2: 1})
    assert not s.is_reduced()
    R3 = PolyRing(3, F, names=["x", "y", "z"])
    s = zero_dim_analyze(Ideal(R3, [parse(R3, "x^2"), parse(R3, "y")]), projective=True)
    assert (s.length, s.points) == (2, 1)
    s = zero_dim_analyze(Ideal(R3, [parse(R3, "x^2-y^2"), parse(R3, "z")]), projective=True)
    assert (s.length, s.points, s.profile) == (2, 2, {1: 2})
    with pytest.raises(PositiveDimensional):
        zero_dim_analyze(Ideal(R, [parse(R, "x*y")]))


def test_orbits_over_extension():
    R = PolyRing(1, F, names=["x"])
    # x^2 + 1 is irreducible mod 32003 (32003 = 3 mod 4)
    s = zero_dim_analyze(Ideal(R, [parse(R, "x^3-5*x^2+x-5")]))
    assert sorted(o.degree for o in s.orbits) == [1, 2]


def test_timeout_is_raised():
    R = PolyRing(6, F, names=[f"x{i}" for i in range(6)])
    rng = random.Random(3)
    gens = [random_homogeneous(R, rng, 3, 12) for _ in range(5)]
    with pytest.raises(GroebnerTimeout):
        buchberger(gens, R, deadline=0.001)


def _all_pairs_reduce(polys):
    from quadweb.groebner.engine import _reducer, _spoly_terms, reduce_terms

    ring = polys[0].ring
    reds = [_reducer(f.monic().terms) for f in polys]
    for a, b in itertools.combinations(range(len(reds)), 2):
        s = _spoly_terms(ring, reds[a], reds[b], ring.mlcm(reds[a][0], reds[b][0]))
        if s and reduce_terms(ring, s, reds, None):
            return False
    return True


@pytest.mark.parametrize("case", range(20))
def test_criteria_in_checker_agree_with_all_pairs(case):
    R, gens = small_ideals()[case]
    polys = buchberger(gens, R).polys
    assert is_groebner(polys) == _all_pairs_reduce(polys) is True
    if len(polys) > 2:
        for drop in range(len(polys)):
            partial = polys[:drop] + polys[drop + 1:]
            assert is_groebner(partial) == _all_pairs_reduce(partial)
