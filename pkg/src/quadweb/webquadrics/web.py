"""Webs of quadrics in P^7 through the plane {x0 = ... = x4 = 0} and their derived matrices.

A web is four symmetric 8x8 matrices ``q_i`` whose lower-right 3x3 block
vanishes.  Writing ``x = (xl, xp)`` with ``xl = (x0..x4)`` and
``xp = (x5, x6, x7)``, each quadric splits as

    x^T q_i x = xl^T qbar_i xl + 2 xp^T B_i xl

where ``qbar_i`` is the upper-left 5x5 block and ``B_i`` (3x5) is the
lower-left block with rows ``l_i, m_i, n_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from quadweb import polymatrix as pm
from quadweb.exactnum import QQ
from quadweb.multipoly import Poly, PolyRing
from quadweb.polymatrix import PolyMatrix

PLANE_DIM = 5  # number of coordinates cutting out the plane


class WebError(ValueError):
    """A web failed validation; ``problems`` lists every violated invariant."""

    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = problems


def validate_web(matrices: Sequence) -> list[list[list[int]]]:
    """Check shape, symmetry, the zero plane block and linear independence over Q.

    Returns the matrices as nested lists of ``int``/``Fraction``.
    """
    problems: list[str] = []
    if len(matrices) != 4:
        raise WebError([f"expected 4 matrices, got {len(matrices)}"])
    mats = []
    for k, M in enumerate(matrices):
        if len(M) != 8 or any(len(r) != 8 for r in M):
            raise WebError([f"matrix q{k} is not 8x8"])
        mats.append([[a if isinstance(a, Fraction) else int(a) for a in r] for r in M])
    for k, M in enumerate(mats):
        for i in range(8):
            for j in range(i + 1, 8):
                if M[i][j] != M[j][i]:
                    problems.append(f"q{k} is not symmetric: entry ({i},{j}) = {M[i][j]} but ({j},{i}) = {M[j][i]}")
        for i in range(5, 8):
            for j in range(5, 8):
                if M[i][j] != 0:
                    problems.append(f"plane not contained in Q{k}: entry ({i},{j}) = {M[i][j]} must be 0")
    if not problems:
        flat = [[QQ.convert(a) for r in M for a in r] for M in mats]
        if pm.rank(QQ, flat) < 4:
            problems.append("the four matrices are linearly dependent")
    if problems:
        raise WebError(problems)
    return mats


@dataclass
class Web:
    """A validated web reduced into a coefficient field."""

    matrices: list  # 4 x 8 x 8, original (integer or rational) entries
    field: object

    @classmethod
    def from_matrices(cls, matrices: Sequence, field=QQ) -> Web:
        return cls(validate_web(matrices), field)

    def over(self, field) -> Web:
        return Web(self.matrices, field)

    @cached_property
    def q(self) -> list[list[list]]:
        F = self.field
        return [[[F.convert(a) for a in r] for r in M] for M in self.matrices]

    @cached_property
    def derived(self) -> DerivedMatrices:
        return DerivedMatrices(self)

    def pencil_matrix(self, y: Sequence, F=None) -> list[list]:
        """``q(y) = sum y_i q_i`` for a point ``y`` with entries in ``F`` (default: the web's field)."""
        F = F or self.field
        zero = F.convert(0)
        out = [[zero] * 8 for _ in range(8)]
        for k in range(4):
            c = y[k]
            if not c:
                continue
            qk = self.q[k]
            for i in range(8):
                row, src = out[i], qk[i]
                for j in range(8):
                    if src[j]:
                        row[j] = F.norm(row[j] + c * src[j])
        return out

    def permuted(self, perm: Sequence[int]) -> Web:
        return Web([self.matrices[i] for i in perm], self.field)


# -- rings used throughout --------------------------------------------------------------


def ring_x(F) -> PolyRing:
    return PolyRing(8, F, names=[f"x{i}" for i in range(8)])


def ring_plane(F) -> PolyRing:
    return PolyRing(3, F, names=["x5", "x6", "x7"])


def ring_p4(F) -> PolyRing:
    return PolyRing(5, F, names=[f"x{i}" for i in range(5)])


def ring_y(F) -> PolyRing:
    return PolyRing(4, F, names=[f"y{i}" for i in range(4)])


def quadratic_form(ring: PolyRing, M: Sequence[Sequence], variables: Sequence[Poly]) -> Poly:
    """``v^T M v`` for a symmetric constant matrix and a list of polynomials ``v``."""
    n = len(variables)
    acc = ring.zero()
    for i in range(n):
        if M[i][i]:
            acc = acc + variables[i] * variables[i] * M[i][i]
        for j in range(i + 1, n):
            if M[i][j]:
                acc = acc + variables[i] * variables[j] * (2 * M[i][j])
    return acc


class DerivedMatrices:
    """Blocks of the web and the symbolic matrices built from them."""

    def __init__(self, web: Web):
        self.web = web
        F = self.F = web.field
        self.qbar = [[r[:5] for r in q[:5]] for q in web.q]
        self.B = [[r[:5] for r in q[5:8]] for q in web.q]
        self.Rx = ring_x(F)
        self.Rp = ring_plane(F)
        self.R4 = ring_p4(F)
        self.Ry = ring_y(F)

    @cached_property
    def quadrics(self) -> list[Poly]:
        xs = self.Rx.gens()
        return [quadratic_form(self.Rx, q, xs) for q in self.web.q]

    @cached_property
    def quadrics_on_p4(self) -> list[Poly]:
        """The forms ``xl^T qbar_i xl`` in x0..x4."""
        xs = self.R4.gens()
        return [quadratic_form(self.R4, qb, xs) for qb in self.qbar]

    @cached_property
    def B_of_y(self) -> PolyMatrix:
        """3x5, linear in y: ``sum y_i B_i``."""
        R = self.Ry
        y = R.gens()
        rows = [[sum((y[i] * self.B[i][r][c] for i in range(4) if self.B[i][r][c]), R.zero())
                 for c in range(5)] for r in range(3)]
        return PolyMatrix(R, rows)

    @cached_property
    def C_of_plane(self) -> PolyMatrix:
        """5x4, linear in (x5, x6, x7): column i is ``x5 l_i + x6 m_i + x7 n_i``."""
        R = self.Rp
        xp = R.gens()
        rows = [[sum((xp[r] * self.B[i][r][c] for r in range(3) if self.B[i][r][c]), R.zero())
                 for i in range(4)] for c in range(5)]
        return PolyMatrix(R, rows)

    @cached_property
    def a_of_x(self) -> PolyMatrix:
        """3x4, linear in x0..x4: entry (r, i) is ``row_r(B_i) . xl``."""
        R = self.R4
        xl = R.gens()
        rows = [[sum((xl[c] * self.B[i][r][c] for c in range(5) if self.B[i][r][c]), R.zero())
                 for i in range(4)] for r in range(3)]
        return PolyMatrix(R, rows)

    @cached_property
    def A_of_x(self) -> PolyMatrix:
        """4x4: column 0 holds ``xl^T qbar_i xl``, columns 1..3 are ``a(xl)^T``."""
        a = self.a_of_x
        rows = [[self.quadrics_on_p4[i]] + [a[r, i] for r in range(3)] for i in range(4)]
        return PolyMatrix(self.R4, rows)

    @cached_property
    def bordiga_cubics(self) -> list[Poly]:
        """``[C_0, C_1, C_2, C_3]``: the 3x3 minors of ``a(xl)`` deleting column ``i``."""
        return self.a_of_x.maximal_minors_deleting_column()

    @cached_property
    def S8(self) -> Poly:
        R = self.Ry
        y = R.gens()
        q = self.web.q
        rows = [[sum((y[k] * q[k][i][j] for k in range(4) if q[k][i][j]), R.zero())
                 for j in range(8)] for i in range(8)]
        return PolyMatrix(R, rows).det()

    def jacobian_of_quadrics(self) -> PolyMatrix:
        """4x8 matrix of partial derivatives ``2 (q_i x)_j``."""
        return PolyMatrix(self.Rx, [Q.gradient() for Q in self.quadrics])


def block_extract(M: Sequence[Sequence], region: str) -> list[list]:
    """Named blocks of an 8x8 matrix: ``upper-left-5x5``, ``lower-left-3x5``, ``lower-right-3x3``."""
    if region == "upper-left-5x5":
        return [list(r[:5]) for r in M[:5]]
    if region == "lower-left-3x5":
        return [list(r[:5]) for r in M[5:8]]
    if region == "lower-right-3x3":
        return [list(r[5:8]) for r in M[5:8]]
    if region == "upper-right-5x3":
        return [list(r[5:8]) for r in M[:5]]
    raise ValueError(f"unknown block {region!r}")


def stitch_blocks(ul, ur, ll, lr) -> list[list]:
    return [list(a) + list(b) for a, b in zip(ul, ur)] + [list(a) + list(b) for a, b in zip(ll, lr)]


def matrix_identities(web: Web) -> dict[str, bool]:
    """Coefficient-wise checks of the three structural identities in x0..x7, y0..y3.

    * ``a(xl) y = B(y) xl``
    * ``C(xp) y = B(y)^T xp``
    * ``x^T q(y) x = xl^T qbar(y) xl + 2 xp^T B(y) xl``
    """
    F = web.field
    R = PolyRing(12, F, names=[f"x{i}" for i in range(8)] + [f"y{i}" for i in range(4)])
    g = R.gens()
    x, y = g[:8], g[8:]
    xl, xp = x[:5], x[5:]
    B = [[r[:5] for r in q[5:8]] for q in web.q]
    qbar = [[r[:5] for r in q[:5]] for q in web.q]

    def lin(coeffs, vs):
        return sum((v * c for v, c in zip(vs, coeffs) if c), R.zero())

    # a(xl) (3x4) times y, vs B(y) (3x5) times xl
    a = [[lin(B[i][r], xl) for i in range(4)] for r in range(3)]
    By = [[lin([B[i][r][c] for i in range(4)], y) for c in range(5)] for r in range(3)]
    lhs1 = [sum((a[r][i] * y[i] for i in range(4)), R.zero()) for r in range(3)]
    rhs1 = [sum((By[r][c] * xl[c] for c in range(5)), R.zero()) for r in range(3)]

    C = [[lin([B[i][r][c] for r in range(3)], xp) for i in range(4)] for c in range(5)]
    lhs2 = [sum((C[c][i] * y[i] for i in range(4)), R.zero()) for c in range(5)]
    rhs2 = [sum((By[r][c] * xp[r] for r in range(3)), R.zero()) for c in range(5)]

    qy = [[lin([web.q[k][i][j] for k in range(4)], y) for j in range(8)] for i in range(8)]
    lhs3 = sum((x[i] * qy[i][j] * x[j] for i in range(8) for j in range(8) if qy[i][j]), R.zero())
    qbary = [[lin([qbar[k][i][j] for k in range(4)], y) for j in range(5)] for i in range(5)]
    rhs3 = sum((xl[i] * qbary[i][j] * xl[j] for i in range(5) for j in range(5) if qbary[i][j]), R.zero())
    rhs3 = rhs3 + sum((xp[r] * By[r][c] * xl[c] for r in range(3) for c in range(5) if By[r][c]), R.zero()) * 2
    return {
        "a(x)y = B(y)x": lhs1 == rhs1,
        "C(x5,x6,x7)y = B(y)^T(x5,x6,x7)": lhs2 == rhs2,
        "x^T q(y) x split": lhs3 == rhs3,
    }


def random_web_matrices(rng, bound: int = 4) -> list[list[list[int]]]:
    """Four random symmetric integer matrices with entries in [-bound, bound] and zero plane block."""
    mats = []
    for _ in range(4):
        M = [[0] * 8 for _ in range(8)]
        for i in range(8):
            for j in range(i, 8):
                if i >= 5 and j >= 5:
                    continue
                M[i][j] = M[j][i] = rng.randint(-bound, bound)
        mats.append(M)
    return mats
