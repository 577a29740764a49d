"""Dense linear algebra over exact fields and matrices of polynomials."""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from quadweb.multipoly import Poly, PolyRing

Matrix = list  # list of rows


# -- matrices over a field ------------------------------------------------------


def copy(M):
    return [list(r) for r in M]


def identity(F, n):
    one, zero = F.convert(1), F.convert(0)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(M):
    return [list(c) for c in zip(*M)] if M else []


def matmul(F, A, B):
    norm = F.norm
    Bt = transpose(B)
    return [[norm(sum(a * b for a, b in zip(r, c))) for c in Bt] for r in A]


def matvec(F, A, v):
    norm = F.norm
    return [norm(sum(a * b for a, b in zip(r, v))) for r in A]


def rref(F, M):
    """Reduced row echelon form; returns ``(R, pivot_columns)``."""
    R = copy(M)
    norm, inv = F.norm, F.inv
    rows = len(R)
    cols = len(R[0]) if rows else 0
    piv = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        k = next((i for i in range(r, rows) if R[i][c]), None)
        if k is None:
            continue
        R[r], R[k] = R[k], R[r]
        s = inv(R[r][c])
        R[r] = [norm(a * s) for a in R[r]]
        pr = R[r]
        for i in range(rows):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [norm(a - f * b) for a, b in zip(R[i], pr)]
        piv.append(c)
        r += 1
    return R, piv


def rank(F, M) -> int:
    if not M or not M[0]:
        return 0
    return len(rref(F, M)[1])


def kernel_basis(F, M, ncols: int | None = None):
    """Basis of the right kernel ``{v : M v = 0}``."""
    n = ncols if ncols is not None else (len(M[0]) if M else 0)
    if not M:
        return identity(F, n)
    R, piv = rref(F, M)
    free = [c for c in range(n) if c not in set(piv)]
    zero, one = F.convert(0), F.convert(1)
    basis = []
    for fc in free:
        v = [zero] * n
        v[fc] = one
        for i, pc in enumerate(piv):
            v[pc] = F.norm(-R[i][fc])
        basis.append(v)
    return basis


def det(F, M):
    n = len(M)
    A = copy(M)
    norm, inv = F.norm, F.inv
    d = F.convert(1)
    for c in range(n):
        k = next((i for i in range(c, n) if A[i][c]), None)
        if k is None:
            return F.convert(0)
        if k != c:
            A[c], A[k] = A[k], A[c]
            d = norm(-d)
        d = norm(d * A[c][c])
        s = inv(A[c][c])
        for i in range(c + 1, n):
            if A[i][c]:
                f = norm(A[i][c] * s)
                A[i] = [norm(a - f * b) for a, b in zip(A[i], A[c])]
    return d


def solve(F, A, b):
    """One solution of ``A x = b`` or ``None`` when inconsistent."""
    n = len(A[0])
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    R, piv = rref(F, aug)
    if n in piv:
        return None
    x = [F.convert(0)] * n
    for i, c in enumerate(piv):
        x[c] = R[i][n]
    return x


def inverse(F, M):
    n = len(M)
    aug = [list(r) + e for r, e in zip(M, identity(F, n))]
    R, piv = rref(F, aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in R]


def charpoly(F, M) -> list:
    """Characteristic polynomial ``det(x I - M)`` as a low-to-high list (Hessenberg reduction)."""
    n = len(M)
    H = copy(M)
    norm, inv = F.norm, F.inv
    for m in range(1, n - 1):
        k = next((i for i in range(m, n) if H[i][m - 1]), None)
        if k is None:
            continue
        if k != m:
            H[m], H[k] = H[k], H[m]
            for r in H:
                r[m], r[k] = r[k], r[m]
        s = inv(H[m][m - 1])
        for i in range(m + 1, n):
            if H[i][m - 1]:
                u = norm(H[i][m - 1] * s)
                H[i] = [norm(a - u * b) for a, b in zip(H[i], H[m])]
                for r in H:
                    r[m] = norm(r[m] + u * r[i])
    # p_k = charpoly of leading k x k block
    polys = [[F.convert(1)]]
    for k in range(1, n + 1):
        a = H[k - 1][k - 1]
        prev = polys[k - 1]
        cur = [F.convert(0)] + list(prev)
        for i, c in enumerate(prev):
            cur[i] = norm(cur[i] - a * c)
        t = F.convert(1)
        for i in range(k - 1, 0, -1):
            t = norm(t * H[i][i - 1])
            coef = norm(t * H[i - 1][k - 1])
            if coef:
                for j, c in enumerate(polys[i - 1]):
                    cur[j] = norm(cur[j] - coef * c)
        polys.append(cur)
    return polys[n]


# -- matrices of polynomials ---------------------------------------------------------


class PolyMatrix:
    """An ``r x c`` matrix of polynomials in a common ring."""

    def __init__(self, ring: PolyRing, rows: Sequence[Sequence[Poly]]):
        self.ring = ring
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged matrix")

    @classmethod
    def from_constants(cls, ring: PolyRing, M) -> PolyMatrix:
        return cls(ring, [[ring.constant(a) for a in r] for r in M])

    def __getitem__(self, ij) -> Poly:
        i, j = ij
        return self.rows[i][j]

    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def T(self) -> PolyMatrix:
        return PolyMatrix(self.ring, transpose(self.rows))

    def __add__(self, other: PolyMatrix) -> PolyMatrix:
        return PolyMatrix(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: PolyMatrix) -> PolyMatrix:
        return PolyMatrix(self.ring, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, f) -> PolyMatrix:
        return PolyMatrix(self.ring, [[a * f for a in r] for r in self.rows])

    def __matmul__(self, other: PolyMatrix) -> PolyMatrix:
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        cols = transpose(other.rows)
        for r in self.rows:
            row = []
            for c in cols:
                acc = self.ring.zero()
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.ring, out)

    def block(self, r0: int, r1: int, c0: int, c1: int) -> PolyMatrix:
        return PolyMatrix(self.ring, [r[c0:c1] for r in self.rows[r0:r1]])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> PolyMatrix:
        return PolyMatrix(self.ring, [[self.rows[i][j] for j in cols] for i in rows])

    def evaluate(self, point) -> list[list]:
        return [[a.evaluate(point) for a in r] for r in self.rows]

    def substitute(self, images) -> PolyMatrix:
        target = images[0].ring
        return PolyMatrix(target, [[a.substitute(images) for a in r] for r in self.rows])

    def det(self) -> Poly:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        if n == 0:
            return self.ring.one()
        if n <= 4:
            return _laplace(self.ring, self.rows, tuple(range(n)))
        return _bareiss(self.ring, self.rows)

    def minors(self, k: int) -> list[Poly]:
        """All ``k x k`` minors, rows-subset major then columns-subset, both lexicographic."""
        out = []
        for rs in combinations(range(self.nrows), k):
            sub = [self.rows[i] for i in rs]
            memo: dict = {}
            for cs in combinations(range(self.ncols), k):
                out.append(_laplace(self.ring, sub, cs, memo))
        return out

    def maximal_minors_deleting_column(self) -> list[Poly]:
        """For an ``r x (r+1)`` matrix: entry ``i`` is the determinant with column ``i`` removed."""
        if self.ncols != self.nrows + 1:
            raise ValueError("need an r x (r+1) matrix")
        memo: dict = {}
        return [
            _laplace(self.ring, self.rows, tuple(j for j in range(self.ncols) if j != i), memo)
            for i in range(self.ncols)
        ]


def _laplace(ring, rows, cols, memo=None):
    """Determinant of ``rows`` restricted to ``cols`` by first-row expansion with memoisation."""
    if memo is None:
        memo = {}
    k = len(cols)
    if k == 0:
        return ring.one()
    key = cols
    hit = memo.get(key)
    if hit is not None:
        return hit
    r = rows[len(rows) - k]
    acc = ring.zero()
    for idx, c in enumerate(cols):
        a = r[c]
        if not a:
            continue
        sub = _laplace(ring, rows, cols[:idx] + cols[idx + 1:], memo)
        if not sub:
            continue
        term = a * sub
        acc = acc + term if idx % 2 == 0 else acc - term
    memo[key] = acc
    return acc


def _bareiss(ring, rows):
    """Fraction-free elimination; every division is exact."""
    A = [list(r) for r in rows]
    n = len(A)
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if not A[k][k]:
            s = next((i for i in range(k + 1, n) if A[i][k]), None)
            if s is None:
                return ring.zero()
            A[k], A[s] = A[s], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                A[i][j] = num.exact_div(prev) if num else num
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return d if sign == 1 else -d


def is_symmetric(M) -> bool:
    """True when a square matrix (list of rows) equals its transpose."""
    n = len(M)
    return all(M[i][j] == M[j][i] for i in range(n) for j in range(n))
