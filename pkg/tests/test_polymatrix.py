import random

import pytest
import sympy as sp

from quadweb import polymatrix as pm
from quadweb.exactnum import QQ, PrimeField
from quadweb.multipoly import PolyRing
from quadweb.polymatrix import PolyMatrix

P = 10007
F = PrimeField(P)


def rand_matrix(rng, n, m=None, lo=-5, hi=5):
    return [[rng.randint(lo, hi) for _ in range(m or n)] for _ in range(n)]


@pytest.mark.parametrize("seed", range(10))
def test_numeric_det_rank_kernel_against_sympy(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    A = rand_matrix(rng, n)
    if seed % 3 == 0 and n > 1:
        A[-1] = [a + b for a, b in zip(A[0], A[1 % n])]
    Aq = [[QQ.convert(a) for a in r] for r in A]
    S = sp.Matrix(A)
    assert pm.det(QQ, Aq) == S.det()
    assert pm.rank(QQ, Aq) == S.rank()
    for v in pm.kernel_basis(QQ, Aq):
        assert all(x == 0 for x in pm.matvec(QQ, Aq, v))
    assert len(pm.kernel_basis(QQ, Aq)) == n - S.rank()


@pytest.mark.parametrize("seed", range(5))
def test_charpoly_and_inverse(seed):
    rng = random.Random(20 + seed)
    A = [[QQ.convert(a) for a in r] for r in rand_matrix(rng, 4)]
    lam = sp.symbols("lam")
    expected = sp.Poly(sp.Matrix(A).charpoly(lam).as_expr(), lam).all_coeffs()[::-1]
    assert pm.charpoly(QQ, A) == [QQ.convert(c) for c in expected]
    if pm.det(QQ, A):
        assert pm.matmul(QQ, A, pm.inverse(QQ, A)) == pm.identity(QQ, 4)


def test_symbolic_det_laplace_matches_bareiss():
    R = PolyRing(3, F, names=["a", "b", "c"])
    rng = random.Random(7)
    gens = R.gens()
    for n in (3, 4, 5):
        rows = [[sum((g * rng.randint(-3, 3) for g in gens), R.zero()) + rng.randint(-2, 2) for _ in range(n)]
                for _ in range(n)]
        lap = pm._laplace(R, rows, tuple(range(n)))
        bar = pm._bareiss(R, rows)
        assert lap == bar
        point = [F.random(rng) for _ in range(3)]
        assert lap.evaluate(point) == pm.det(F, PolyMatrix(R, rows).evaluate(point))


def test_minors_count_and_order():
    R = PolyRing(2, QQ, names=["s", "t"])
    s, t = R.gens()
    M = PolyMatrix(R, [[s, t, s + t], [t, s, R.one()]])
    minors = M.minors(2)
    assert len(minors) == 3
    assert minors[0] == s * s - t * t
    assert M.maximal_minors_deleting_column() == [t - s * (s + t), s - t * (s + t), s * s - t * t]


def test_symmetry_check():
    assert pm.is_symmetric([[1, 2], [2, 3]])
    assert not pm.is_symmetric([[1, 2], [0, 3]])
