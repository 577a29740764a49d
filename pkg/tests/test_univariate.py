import random

import pytest
import sympy as sp

from quadweb import polymatrix as pm
from quadweb import univariate as uv
from quadweb.exactnum import PrimeField

P = 10007
F = PrimeField(P)
x = sp.symbols("x")


def rand_poly(rng, d):
    return [rng.randrange(P) for _ in range(d)] + [rng.randrange(1, P)]


def to_sympy(a):
    return sp.Poly(list(reversed(a)), x, modulus=P)


def sylvester_det(a, b):
    """Oracle: determinant of the Sylvester matrix (sympy's own resultant has sign slips for some degrees)."""
    m, n = len(a) - 1, len(b) - 1
    rows = [[0] * i + list(reversed(a)) + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + list(reversed(b)) + [0] * (m - 1 - i) for i in range(m)]
    return int(sp.Matrix(rows).det()) % P if rows else 1


def from_sympy(f):
    return uv.trim([int(c) % P for c in reversed(f.all_coeffs())])


@pytest.mark.parametrize("seed", range(8))
def test_gcd_resultant_against_sympy(seed):
    rng = random.Random(seed)
    common = rand_poly(rng, rng.randint(0, 3))
    a = uv.mul(F, common, rand_poly(rng, rng.randint(1, 5)))
    b = uv.mul(F, common, rand_poly(rng, rng.randint(1, 5)))
    g = uv.gcd(F, a, b)
    assert g == from_sympy(sp.gcd(to_sympy(a), to_sympy(b)).monic())
    assert uv.resultant(F, a, b) == sylvester_det(a, b)
    q, r = uv.divmod_(F, a, b)
    assert uv.add(F, uv.mul(F, q, b), r) == uv.trim(a)


@pytest.mark.parametrize("seed", range(6))
def test_factor_against_sympy(seed):
    rng = random.Random(100 + seed)
    a = uv.mul(F, rand_poly(rng, 3), uv.mul(F, rand_poly(rng, 2), rand_poly(rng, 2)))
    a = uv.mul(F, a, rand_poly(rng, 1))
    a = uv.monic(F, uv.mul(F, a, a[:2] if uv.degree(a[:2]) == 1 else [1, 1]))
    ours = sorted((tuple(f), k) for f, k in uv.factor(F, a, rng))
    _, theirs = sp.factor_list(to_sympy(a))
    theirs = sorted((tuple(from_sympy(f.monic())), k) for f, k in theirs)
    assert ours == theirs


def test_squarefree_decomposition_reassembles():
    rng = random.Random(3)
    cube = uv.mul(F, [1, 1], uv.mul(F, [1, 1], [1, 1]))
    a = uv.mul(F, cube, rand_poly(rng, 2))
    parts = uv.squarefree_decomposition(F, a)
    prod = [1]
    for s, k in parts:
        for _ in range(k):
            prod = uv.mul(F, prod, s)
    assert prod == uv.monic(F, a)
    assert any(k == 3 for s, k in parts if uv.degree(s) > 0)


def test_interpolate_and_evaluate():
    rng = random.Random(5)
    a = rand_poly(rng, 6)
    xs = list(range(1, 8))
    assert uv.interpolate(F, xs, [uv.evaluate(F, a, t) for t in xs]) == a


@pytest.mark.parametrize("k", [0, 1, 2, 3, 4])
def test_subresultant_coefficients_detect_gcd_degree(k):
    rng = random.Random(50 + k)
    common = rand_poly(rng, k) if k else [1]
    f = uv.mul(F, common, rand_poly(rng, 10 - k))
    g = uv.mul(F, common, rand_poly(rng, 9 - k))
    values = [pm.det(F, uv.psc_matrix(f, g, j)) for j in range(min(k + 1, 9))]
    assert all(v == 0 for v in values[:k])
    if k < 9:
        assert values[k] != 0


def test_subresultant_zero_matches_resultant():
    rng = random.Random(9)
    f, g = rand_poly(rng, 5), rand_poly(rng, 4)
    assert pm.det(F, uv.psc_matrix(f, g, 0)) == uv.resultant(F, f, g)
