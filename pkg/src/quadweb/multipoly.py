"""Sparse distributed multivariate polynomials over an exact field.

Monomials are packed into a single Python int whose natural integer order *is*
the monomial order.  Each variable (and each degree block) occupies a 17-bit
field: 16 value bits plus a guard bit.  Revlex-style fields store the
complement ``M - e`` so that a smaller exponent compares larger.  With this
layout

* multiplying monomials is ``a + b - C`` for a per-ring constant ``C``,
* ``a | b`` is one subtraction and a mask test,
* comparing monomials is comparing ints.

Total degree is capped at ``2**16 - 1`` which also bounds every exponent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from quadweb.exactnum import QQ

WIDTH = 17
VBITS = 16
MAXDEG = (1 << VBITS) - 1
GUARD = 1 << VBITS


class ExponentOverflow(OverflowError):
    pass


class RingMismatch(TypeError):
    pass


@dataclass(frozen=True)
class MonomialOrder:
    """``degrevlex``, ``lex`` or ``elim`` (block order eliminating the first ``k`` variables)."""

    kind: str = "degrevlex"
    k: int = 0

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def __str__(self) -> str:
        return f"elim({self.k})" if self.kind == "elim" else self.kind


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


def elimination(k: int) -> MonomialOrder:
    return MonomialOrder("elim", k)


class PolyRing:
    """Polynomial ring ``field[x_0..x_{n-1}]`` with a fixed monomial order."""

    def __init__(self, nvars: int, field=QQ, order: MonomialOrder = DEGREVLEX,
                 names: Sequence[str] | None = None):
        if nvars < 1:
            raise ValueError("need at least one variable")
        self.n = nvars
        self.field = field
        self.order = order
        self.names = tuple(names) if names else tuple(f"x{i}" for i in range(nvars))
        if len(self.names) != nvars:
            raise ValueError("wrong number of variable names")
        self._layout()

    # -- layout ---------------------------------------------------------------

    def _layout(self) -> None:
        n, order = self.n, self.order
        # fields listed from most significant to least significant:
        # ('deg', var-tuple) | ('var', i, complemented)
        if order.kind == "degrevlex":
            fields = [("deg", tuple(range(n)))]
            fields += [("var", i, True) for i in reversed(range(n))]
        elif order.kind == "lex":
            fields = [("var", i, False) for i in range(n)]
            fields += [("deg", tuple(range(n)))]
        else:
            k = order.k
            if not 0 < k < n:
                raise ValueError("elimination block must be a proper nonempty prefix")
            fields = [("deg", tuple(range(k)))]
            fields += [("var", i, True) for i in reversed(range(k))]
            fields += [("deg", tuple(range(k, n)))]
            fields += [("var", i, True) for i in reversed(range(k, n))]
            fields += [("deg", tuple(range(n)))]
        nf = len(fields)
        self._fields = []
        self._var_off = [0] * n
        self._var_comp = [False] * n
        self._deg_offs = []  # (offset, vars)
        C = H = G = GX = 0
        for pos, fd in enumerate(fields):
            off = (nf - 1 - pos) * WIDTH
            self._fields.append((off, fd))
            if fd[0] == "deg":
                self._deg_offs.append((off, fd[1]))
                H |= GUARD << off
            else:
                _, i, comp = fd
                self._var_off[i] = off
                self._var_comp[i] = comp
                G |= GUARD << off
                if comp:
                    C |= MAXDEG << off
                    H |= MAXDEG << off
                else:
                    H |= GUARD << off
                    GX |= GUARD << off
        self.C = C
        self._H = H
        self._G = G
        self._GX = GX
        # total-degree field (the one covering every variable)
        self._tdeg_off = next(off for off, vs in self._deg_offs if len(vs) == n)
        self.one_key = C

    # -- monomial primitives -----------------------------------------------------

    def encode(self, exps: Sequence[int]) -> int:
        if len(exps) != self.n:
            raise ValueError("exponent vector has wrong length")
        if any(e < 0 for e in exps):
            raise ValueError("negative exponent")
        if sum(exps) > MAXDEG:
            raise ExponentOverflow(f"total degree {sum(exps)} exceeds {MAXDEG}")
        key = 0
        for off, vs in self._deg_offs:
            key += sum(exps[i] for i in vs) << off
        for i, e in enumerate(exps):
            v = MAXDEG - e if self._var_comp[i] else e
            key += v << self._var_off[i]
        return key

    def decode(self, key: int) -> tuple[int, ...]:
        out = []
        for i in range(self.n):
            v = (key >> self._var_off[i]) & MAXDEG
            out.append(MAXDEG - v if self._var_comp[i] else v)
        return tuple(out)

    def mdeg(self, key: int) -> int:
        return (key >> self._tdeg_off) & MAXDEG

    def mmul(self, a: int, b: int) -> int:
        return a + b - self.C

    def mdivides(self, a: int, b: int) -> bool:
        return ((b - a + self._H) & self._G) == self._GX

    def mquo(self, b: int, a: int) -> int:
        return b - a + self.C

    def mlcm(self, a: int, b: int) -> int:
        return self.encode([max(x, y) for x, y in zip(self.decode(a), self.decode(b))])

    def mcoprime(self, a: int, b: int) -> bool:
        return all(x == 0 or y == 0 for x, y in zip(self.decode(a), self.decode(b)))

    # -- constructors --------------------------------------------------------------

    def __repr__(self) -> str:
        return f"PolyRing({self.n}, {self.field!r}, {self.order}, names={self.names})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyRing)
            and self.n == other.n
            and self.field == other.field
            and self.order == other.order
            and self.names == other.names
        )

    def __hash__(self) -> int:
        return hash((self.n, self.field, self.order, self.names))

    def with_order(self, order: MonomialOrder) -> PolyRing:
        return PolyRing(self.n, self.field, order, self.names)

    def with_field(self, field) -> PolyRing:
        return PolyRing(self.n, field, self.order, self.names)

    def zero(self) -> Poly:
        return Poly(self, {})

    def one(self) -> Poly:
        return self.constant(1)

    def constant(self, c) -> Poly:
        c = self.field.convert(c)
        return Poly(self, {self.one_key: c} if c else {})

    def gen(self, i: int) -> Poly:
        e = [0] * self.n
        e[i] = 1
        return Poly(self, {self.encode(e): self.field.convert(1)})

    def gens(self) -> list[Poly]:
        return [self.gen(i) for i in range(self.n)]

    def monomial(self, exps: Sequence[int], c=1) -> Poly:
        c = self.field.convert(c)
        return Poly(self, {self.encode(exps): c} if c else {})

    def from_dict(self, d: Mapping[Sequence[int], object]) -> Poly:
        F = self.field
        out: dict[int, object] = {}
        for exps, c in d.items():
            k = self.encode(tuple(exps))
            v = F.norm(out.get(k, 0) + F.convert(c))
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return Poly(self, out)

    def linear_form(self, coeffs: Sequence, const=0) -> Poly:
        d = {}
        for i, c in enumerate(coeffs):
            e = [0] * self.n
            e[i] = 1
            d[tuple(e)] = c
        if const:
            d[(0,) * self.n] = const
        return self.from_dict(d)

    def convert(self, f: Poly) -> Poly:
        """Re-encode ``f`` from a ring with the same arity (order/field may differ)."""
        if f.ring is self:
            return f
        if f.ring.n != self.n:
            raise RingMismatch("cannot convert between rings of different arity")
        F = self.field
        out = {}
        for k, c in f.terms.items():
            v = F.convert(c) if f.ring.field != F else c
            if v:
                out[self.encode(f.ring.decode(k))] = v
        return Poly(self, out)


class Poly:
    """Immutable sparse polynomial; ``terms`` maps packed monomial -> nonzero coefficient."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- structure ------------------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[int, object]]:
        """Terms strictly descending in the monomial order."""
        return sorted(self.terms.items(), reverse=True)

    def leading_key(self) -> int:
        return max(self.terms)

    def lc(self):
        return self.terms[max(self.terms)]

    def lm(self) -> tuple[int, ...]:
        return self.ring.decode(max(self.terms))

    def degree(self) -> int:
        if not self.terms:
            return -1
        md = self.ring.mdeg
        return max(md(k) for k in self.terms)

    def is_homogeneous(self) -> tuple[bool, int | None]:
        if not self.terms:
            return True, None
        md = self.ring.mdeg
        degs = {md(k) for k in self.terms}
        if len(degs) == 1:
            return True, degs.pop()
        return False, None

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring.one_key in self.terms)

    def constant_coeff(self):
        return self.terms.get(self.ring.one_key, 0)

    def as_dict(self) -> dict[tuple[int, ...], object]:
        dec = self.ring.decode
        return {dec(k): c for k, c in self.terms.items()}

    def variables(self) -> set[int]:
        used = set()
        for k in self.terms:
            used.update(i for i, e in enumerate(self.ring.decode(k)) if e)
        return used

    # -- arithmetic -------------------------------------------------------------------

    def _check(self, other: Poly) -> None:
        if other.ring is not self.ring and other.ring != self.ring:
            raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")

    def _lift(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        return self.ring.constant(other)

    def __add__(self, other) -> Poly:
        other = self._lift(other)
        norm = self.ring.field.norm
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v = norm(v + c)
                if v:
                    out[k] = v
                else:
                    del out[k]
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        norm = self.ring.field.norm
        return Poly(self.ring, {k: norm(-c) for k, c in self.terms.items()})

    def __sub__(self, other) -> Poly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> Poly:
        return self._lift(other) - self

    def scale(self, c) -> Poly:
        F = self.ring.field
        c = F.convert(c)
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {k: F.norm(v * c) for k, v in self.terms.items()})

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        if not self.terms or not other.terms:
            return self.ring.zero()
        if self.degree() + other.degree() > MAXDEG:
            raise ExponentOverflow("product degree exceeds exponent bound")
        ring = self.ring
        C = ring.C
        mod = ring.field.mod
        out: dict[int, object] = {}
        get = out.get
        for k1, c1 in self.terms.items():
            base = k1 - C
            for k2, c2 in other.terms.items():
                k = base + k2
                out[k] = get(k, 0) + c1 * c2
        if mod:
            out = {k: v % mod for k, v in out.items()}
            out = {k: v for k, v in out.items() if v}
        else:
            norm = ring.field.norm
            out = {k: norm(v) for k, v in out.items() if v}
        return Poly(ring, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Poly:
        if e < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int) or hasattr(other, "numerator"):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def monic(self) -> Poly:
        if not self.terms:
            return self
        lc = self.lc()
        if lc == 1:
            return self
        return self.scale(self.ring.field.inv(lc))

    def mul_monomial(self, key: int, c=1) -> Poly:
        """Multiply by ``c * m`` where ``m`` is a packed monomial of this ring."""
        ring = self.ring
        F = ring.field
        shift = key - ring.C
        return Poly(ring, {k + shift: F.norm(v * c) for k, v in self.terms.items()})

    def exact_div(self, g: Poly) -> Poly:
        """Quotient ``self / g``; raises ``ArithmeticError`` if the division is not exact."""
        self._check(g)
        if not g.terms:
            raise ZeroDivisionError("division by zero polynomial")
        ring = self.ring
        F = ring.field
        gl = g.leading_key()
        ginv = F.inv(g.terms[gl])
        gtail = [(k, c) for k, c in g.terms.items() if k != gl]
        rest = dict(self.terms)
        q: dict[int, object] = {}
        while rest:
            k = max(rest)
            if not ring.mdivides(gl, k):
                raise ArithmeticError("inexact polynomial division")
            c = F.norm(rest.pop(k) * ginv)
            shift = k - gl
            q[shift + ring.C] = c
            for gk, gc in gtail:
                nk = gk + shift
                v = F.norm(rest.get(nk, 0) - c * gc)
                if v:
                    rest[nk] = v
                else:
                    rest.pop(nk, None)
        return Poly(ring, q)

    # -- calculus / evaluation -------------------------------------------------------------

    def diff(self, var: int) -> Poly:
        ring = self.ring
        F = ring.field
        out = {}
        for k, c in self.terms.items():
            e = list(ring.decode(k))
            if e[var]:
                v = F.norm(c * e[var])
                e[var] -= 1
                if v:
                    out[ring.encode(e)] = v
        return Poly(ring, out)

    def gradient(self) -> list[Poly]:
        return [self.diff(i) for i in range(self.ring.n)]

    def evaluate(self, point: Sequence):
        """Evaluate at a point whose entries live in the coefficient field or an extension."""
        ring = self.ring
        if len(point) != ring.n:
            raise ValueError("point has wrong length")
        F = ring.field
        norm = F.norm
        powers: list[dict[int, object]] = [{0: 1, 1: point[i]} for i in range(ring.n)]

        def pw(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = norm(pw(i, e - 1) * point[i])
            return cache[e]

        acc = 0
        for k, c in self.terms.items():
            t = c
            for i, e in enumerate(ring.decode(k)):
                if e:
                    t = norm(t * pw(i, e))
            acc = norm(acc + t)
        return acc

    def substitute(self, images: Sequence[Poly]) -> Poly:
        """Ring homomorphism ``x_i -> images[i]`` into the common ring of ``images``."""
        if len(images) != self.ring.n:
            raise ValueError("need one image per variable")
        target = images[0].ring
        for g in images:
            if g.ring != target:
                raise RingMismatch("substitution images must share a ring")
        cache: list[dict[int, Poly]] = [{0: target.one(), 1: g} for g in images]

        def pw(i, e):
            c = cache[i]
            if e not in c:
                c[e] = pw(i, e - 1) * images[i]
            return c[e]

        conv = target.field.convert if target.field != self.ring.field else (lambda x: x)
        acc = target.zero()
        for k, c in self.terms.items():
            t = target.constant(conv(c))
            for i, e in enumerate(self.ring.decode(k)):
                if e:
                    t = t * pw(i, e)
            acc = acc + t
        return acc

    def homogenize(self, target: PolyRing, var: int) -> Poly:
        """Homogenise into ``target`` (one more variable) using ``target.gen(var)``."""
        d = self.degree()
        out = {}
        for k, c in self.terms.items():
            e = list(self.ring.decode(k))
            e.insert(var, d - sum(e))
            out[target.encode(e)] = c
        return Poly(target, out)

    # -- text -------------------------------------------------------------------------------

    def __str__(self) -> str:
        return to_str(self)

    def __repr__(self) -> str:
        return f"Poly({to_str(self)})"


def to_str(f: Poly, signed: bool = True) -> str:
    """Human-readable form, e.g. ``3*x0^2*x1 - x2 + 5``.

    Prime-field coefficients print with the symmetric representative.
    """
    if not f.terms:
        return "0"
    ring = f.ring
    F = ring.field
    pieces = []
    for k, c in f.sorted_terms():
        if signed:
            c = F.to_signed(c)
        exps = ring.decode(k)
        mono = "*".join(
            ring.names[i] if e == 1 else f"{ring.names[i]}^{e}"
            for i, e in enumerate(exps) if e
        )
        neg = c < 0 if not hasattr(c, "c") else False
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        pieces.append(("- " if neg else "+ ") + body)
    s = " ".join(pieces)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


def parse(ring: PolyRing, text: str) -> Poly:
    """Parse the output format of :func:`to_str` (sum of ``c*x^e*...`` terms)."""
    import re

    s = text.replace(" ", "")
    if s in ("", "0"):
        return ring.zero()
    if s[0] not in "+-":
        s = "+" + s
    index = {name: i for i, name in enumerate(ring.names)}
    acc = ring.zero()
    for sign, body in re.findall(r"([+-])([^+-]+)", s):
        coeff = 1
        exps = [0] * ring.n
        for factor in body.split("*"):
            if factor in index:
                exps[index[factor]] += 1
            elif "^" in factor:
                name, e = factor.split("^")
                exps[index[name]] += int(e)
            else:
                coeff *= int(factor)
        if sign == "-":
            coeff = -coeff
        acc = acc + ring.monomial(exps, coeff)
    return acc


def poly_ring_like(ring: PolyRing, names: Iterable[str]) -> PolyRing:
    names = tuple(names)
    return PolyRing(len(names), ring.field, ring.order, names)
