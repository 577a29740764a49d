"""Independent reference computations shared by several test modules."""

import itertools

from quadweb import polymatrix as pm


def monomials(n, d):
    for c in itertools.combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in c:
            e[i] += 1
        yield tuple(e)


def macaulay_hilbert(R, gens, d):
    """Hilbert function in degree d from the rank of the Macaulay matrix (no Groebner basis involved)."""
    cols = list(monomials(R.n, d))
    index = {m: i for i, m in enumerate(cols)}
    rows = []
    for g in gens:
        k = g.degree()
        if k > d:
            continue
        for m in monomials(R.n, d - k):
            row = [0] * len(cols)
            for e, c in (g * R.monomial(m)).as_dict().items():
                row[index[e]] = c
            rows.append(row)
    rank = pm.rank(R.field, rows) if rows else 0
    return len(cols) - rank


def proportional(F, u, v):
    """Whether two coefficient vectors agree up to a nonzero scalar in F."""
    if len(u) != len(v):
        return False
    i = next((k for k, c in enumerate(u) if F.convert(c)), None)
    if i is None or not F.convert(v[i]):
        return False
    s = F.norm(F.convert(v[i]) * F.inv(F.convert(u[i])))
    return all(F.norm(F.convert(b) - s * F.convert(a)) == 0 for a, b in zip(u, v))
