"""Dense univariate polynomials over an exact field.

A polynomial is a list of coefficients, lowest degree first, with no trailing
zeros; ``[]`` is the zero polynomial.  Every function takes the coefficient
field ``F`` first (anything exposing ``norm``, ``inv`` and, for the finite
field routines, ``p``).
"""

from __future__ import annotations

import random
from typing import Callable, Sequence

Poly1 = list


def trim(a: Poly1) -> Poly1:
    while a and not a[-1]:
        a.pop()
    return a


def degree(a: Sequence) -> int:
    return len(a) - 1


def add(F, a: Poly1, b: Poly1) -> Poly1:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.norm(out[i] + c)
    return trim(out)


def sub(F, a: Poly1, b: Poly1) -> Poly1:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = F.norm(out[i] - c)
    return trim(out)


def scale(F, a: Poly1, c) -> Poly1:
    return trim([F.norm(x * c) for x in a])


def mul(F, a: Poly1, b: Poly1) -> Poly1:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    mod = getattr(F, "mod", None)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    if mod:
        out = [c % mod for c in out]
    else:
        out = [F.norm(c) for c in out]
    return trim(out)


def monic(F, a: Poly1) -> Poly1:
    if not a or a[-1] == 1:
        return list(a)
    return scale(F, a, F.inv(a[-1]))


def divmod_(F, a: Poly1, b: Poly1) -> tuple[Poly1, Poly1]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], r
    q = [0] * (len(r) - db)
    inv_lc = F.inv(b[-1])
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if not c:
            continue
        c = F.norm(c * inv_lc)
        q[k - db] = c
        for j in range(db + 1):
            r[k - db + j] = F.norm(r[k - db + j] - c * b[j])
    return trim(q), trim(r[:db])


def rem(F, a: Poly1, b: Poly1) -> Poly1:
    return divmod_(F, a, b)[1]


def quo(F, a: Poly1, b: Poly1) -> Poly1:
    return divmod_(F, a, b)[0]


def exact_quo(F, a: Poly1, b: Poly1) -> Poly1:
    q, r = divmod_(F, a, b)
    if r:
        raise ArithmeticError("inexact univariate division")
    return q


def gcd(F, a: Poly1, b: Poly1) -> Poly1:
    """Monic gcd (``[]`` only when both inputs are zero)."""
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, rem(F, a, b)
    return monic(F, a)


def xgcd(F, a: Poly1, b: Poly1) -> tuple[Poly1, Poly1, Poly1]:
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    r0, r1 = trim(list(a)), trim(list(b))
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        t0, t1 = t1, sub(F, t0, mul(F, q, t1))
    if not r0:
        return [], s0, t0
    c = F.inv(r0[-1])
    return scale(F, r0, c), scale(F, s0, c), scale(F, t0, c)


def deriv(F, a: Poly1) -> Poly1:
    return trim([F.norm(i * a[i]) for i in range(1, len(a))])


def evaluate(F, a: Poly1, x):
    acc = 0
    for c in reversed(a):
        acc = F.norm(acc * x + c)
    return acc


def powmod(F, a: Poly1, e: int, m: Poly1) -> Poly1:
    result = [1]
    base = rem(F, a, m)
    while e:
        if e & 1:
            result = rem(F, mul(F, result, base), m)
        e >>= 1
        if e:
            base = rem(F, mul(F, base, base), m)
    return rem(F, result, m)


def pth_root(F, a: Poly1) -> Poly1:
    """For ``a = b(x)^p`` over F_p (so ``a' = 0``) return ``b``."""
    p = F.p
    if any(c for i, c in enumerate(a) if i % p):
        raise ArithmeticError("polynomial is not a p-th power")
    return trim([a[i] for i in range(0, len(a), p)])


def squarefree_part(F, a: Poly1) -> Poly1:
    """Product of the distinct monic irreducible factors of ``a``."""
    f = monic(F, trim(list(a)))
    if len(f) <= 1:
        return [1] if f else []
    d = deriv(F, f)
    if not d:
        return squarefree_part(F, pth_root(F, f))
    g = gcd(F, f, d)
    w = quo(F, f, g)
    y = g
    while True:
        z = gcd(F, y, w)
        if len(z) <= 1:
            break
        y = quo(F, y, z)
    if len(y) > 1:
        r = squarefree_part(F, pth_root(F, y))
        return monic(F, mul(F, w, quo(F, r, gcd(F, w, r))))
    return monic(F, w)


def squarefree_decomposition(F, a: Poly1) -> list[tuple[Poly1, int]]:
    """Pairs ``(s_k, k)`` with ``monic(a) = prod s_k^k``, ``s_k`` squarefree and coprime."""
    f = monic(F, trim(list(a)))
    if len(f) <= 1:
        return []
    out: dict[int, Poly1] = {}
    c = gcd(F, f, deriv(F, f))
    w = quo(F, f, c)
    i = 1
    while len(w) > 1:
        y = gcd(F, w, c)
        fac = quo(F, w, y)
        if len(fac) > 1:
            out[i] = fac
        i += 1
        w = y
        c = quo(F, c, y)
    if len(c) > 1:
        p = F.p
        for g, m in squarefree_decomposition(F, pth_root(F, c)):
            k = m * p
            out[k] = monic(F, mul(F, out[k], g)) if k in out else g
    return sorted(((v, k) for k, v in out.items()), key=lambda t: t[1])


def resultant(F, a: Poly1, b: Poly1):
    """Resultant over a field by the Euclidean recurrence."""
    a, b = trim(list(a)), trim(list(b))
    if not a or not b:
        return 0
    res = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return F.norm(res * pow_(F, b[0], da))
        r = rem(F, a, b)
        if not r:
            return 0
        dr = len(r) - 1
        if (da * db) % 2:
            res = F.norm(-res)
        res = F.norm(res * pow_(F, b[-1], da - dr))
        a, b = b, r


def pow_(F, x, e: int):
    out = 1
    for _ in range(e):
        out = F.norm(out * x)
    return out


def interpolate(F, xs: Sequence, ys: Sequence) -> Poly1:
    """Newton interpolation through ``(xs[i], ys[i])``."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = F.norm((coef[i] - coef[i - 1]) * F.inv(F.norm(xs[i] - xs[i - j])))
    out: Poly1 = []
    for i in range(n - 1, -1, -1):
        out = add(F, mul(F, out, [F.norm(-xs[i]), 1]), [coef[i]] if coef[i] else [])
    return trim(out)


# -- finite-field factorisation -------------------------------------------------


def _frobenius_rows(F, f: Poly1) -> list[Poly1]:
    """Rows ``x^(i*p) mod f`` for ``i < deg f``."""
    n = len(f) - 1
    xp = powmod(F, [0, 1], F.p, f)
    rows = [[1]]
    for _ in range(1, n):
        rows.append(rem(F, mul(F, rows[-1], xp), f))
    return rows


def _apply_frobenius(F, rows: list[Poly1], a: Poly1, n: int) -> Poly1:
    p = F.p
    acc = [0] * n
    for i, c in enumerate(a):
        if c:
            for j, r in enumerate(rows[i]):
                acc[j] += c * r
    return trim([v % p for v in acc])


def distinct_degree(F, f: Poly1) -> list[tuple[Poly1, int]]:
    """Split a monic squarefree ``f`` into products of equal-degree irreducibles."""
    f = monic(F, f)
    n = len(f) - 1
    if n <= 0:
        return []
    rows = _frobenius_rows(F, f)
    out = []
    h = [0, 1]
    rest = list(f)
    i = 0
    while len(rest) - 1 >= 2 * (i + 1):
        i += 1
        h = _apply_frobenius(F, rows, rem(F, h, f), n)
        g = gcd(F, rest, sub(F, rem(F, h, rest), [0, 1]))
        if len(g) > 1:
            out.append((g, i))
            rest = quo(F, rest, g)
    if len(rest) > 1:
        out.append((rest, len(rest) - 1))
    return out


def equal_degree(F, f: Poly1, d: int, rng: random.Random) -> list[Poly1]:
    """Cantor-Zassenhaus splitting of ``f`` (product of degree-``d`` irreducibles)."""
    f = monic(F, f)
    n = len(f) - 1
    if n == d:
        return [f]
    p = F.p
    rows = _frobenius_rows(F, f)
    stack, done = [f], []
    while stack:
        g = stack.pop()
        if len(g) - 1 == d:
            done.append(g)
            continue
        while True:
            a = trim([rng.randrange(p) for _ in range(len(g) - 1)])
            if len(a) < 2:
                continue
            # trace of a into F_p, computed mod f then reduced mod g
            t, cur = list(a), list(a)
            for _ in range(d - 1):
                cur = _apply_frobenius(F, rows, rem(F, cur, f), n)
                t = add(F, t, cur)
            b = powmod(F, rem(F, t, g), (p - 1) // 2, g)
            s = gcd(F, g, sub(F, b, [1]))
            if 1 < len(s) < len(g):
                stack.extend([s, quo(F, g, s)])
                break
    return sorted(done)


def factor(F, a: Poly1, rng: random.Random | None = None) -> list[tuple[Poly1, int]]:
    """Complete factorisation over F_p into monic irreducibles with multiplicity."""
    rng = rng or random.Random(0)
    out = []
    for s, k in squarefree_decomposition(F, a):
        for g, d in distinct_degree(F, s):
            for h in equal_degree(F, g, d, rng):
                out.append((h, k))
    out.sort(key=lambda t: (len(t[0]), t[0], t[1]))
    return out


def roots(F, a: Poly1, rng: random.Random | None = None) -> list[int]:
    """Distinct roots of ``a`` in F_p."""
    rng = rng or random.Random(0)
    f = monic(F, trim(list(a)))
    if len(f) <= 1:
        return []
    xp = powmod(F, [0, 1], F.p, f)
    g = gcd(F, f, sub(F, xp, [0, 1]))
    if len(g) <= 1:
        return []
    return sorted(F.norm(-h[0]) for h in equal_degree(F, g, 1, rng))


# -- subresultants ----------------------------------------------------------------


def psc_matrix(f: Sequence, g: Sequence, j: int, zero=0) -> list[list]:
    """Square matrix whose determinant is the j-th principal subresultant coefficient.

    ``f`` has formal degree ``len(f)-1``, likewise ``g``; entries may be any ring
    objects (e.g. multivariate polynomials).  Rows are the shifts
    ``x^k f`` (k < deg g - j) and ``x^k g`` (k < deg f - j); columns are the
    coefficients of ``x^(m+n-j-1) .. x^j``.
    """
    m, n = len(f) - 1, len(g) - 1
    size = m + n - 2 * j
    if size <= 0:
        raise ValueError("j too large for principal subresultant")
    top = m + n - j - 1
    rows = []
    for src, d, count in ((f, m, n - j), (g, n, m - j)):
        for k in range(count - 1, -1, -1):
            row = []
            for col in range(size):
                deg = top - col if col < size - 1 else j
                idx = deg - k
                row.append(src[idx] if 0 <= idx <= d else zero)
            rows.append(row)
    return rows


def map_coeffs(a: Sequence, fn: Callable) -> list:
    return [fn(c) for c in a]
