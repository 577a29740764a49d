"""Exact coefficient fields: prime fields, the rationals, and extensions of F_p.

Coefficients are stored as plain Python objects (``int`` residues for F_p,
``fractions.Fraction`` for Q) so that polynomial kernels can use native
operators followed by a cheap ``norm`` call.  The element wrappers
(:class:`FpElement`) exist for the public arithmetic API and its checks.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from quadweb import univariate as uv

# Deterministic Miller-Rabin witnesses valid for every n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


class FieldError(ArithmeticError):
    pass


class MixedFieldError(FieldError):
    """Operands from two different fields were combined."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(bits: int, seed: int) -> int:
    """Odd prime in ``[2**(bits-1), 2**bits)``, determined by ``seed``."""
    if not 20 <= bits <= 62:
        raise ValueError(f"bits must lie in [20, 62], got {bits}")
    rng = random.Random(f"quadweb-prime-{bits}-{seed}")
    lo, hi = 1 << (bits - 1), (1 << bits) - 1
    while True:
        n = rng.randint(lo, hi) | 1
        if is_prime(n):
            return n


class PrimeField:
    """The field F_p for an odd prime p.  Elements are ints in ``[0, p)``."""

    __slots__ = ("p", "mod")

    def __init__(self, p: int, check: bool = True):
        if p == 2:
            raise FieldError("characteristic 2 is not supported")
        if check and not is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.mod = p

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("F", self.p))

    @property
    def characteristic(self) -> int:
        return self.p

    def norm(self, x: int) -> int:
        return x % self.p

    def convert(self, x) -> int:
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, FpElement):
            if x.field.p != self.p:
                raise MixedFieldError(f"element of F_{x.field.p} used in F_{self.p}")
            return x.value
        return int(x) % self.p

    def inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.p)
        return pow(x, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.p

    def to_signed(self, x: int) -> int:
        """Symmetric representative in ``(-p/2, p/2]``."""
        x %= self.p
        return x - self.p if x > self.p // 2 else x

    def random(self, rng: random.Random) -> int:
        return rng.randrange(self.p)

    def __call__(self, value) -> FpElement:
        return FpElement(self.convert(value), self)


class RationalField:
    """The field Q, with ``fractions.Fraction`` elements."""

    __slots__ = ()
    mod = None
    characteristic = 0

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")

    @staticmethod
    def norm(x):
        return x

    @staticmethod
    def convert(x) -> Fraction:
        if isinstance(x, FpElement):
            raise MixedFieldError("prime-field element used in QQ")
        return Fraction(x)

    @staticmethod
    def inv(x) -> Fraction:
        if x == 0:
            raise ZeroDivisionError("inverse of zero in QQ")
        return 1 / Fraction(x)

    def div(self, a, b) -> Fraction:
        return Fraction(a) * self.inv(b)

    @staticmethod
    def to_signed(x):
        return x

    @staticmethod
    def random(rng: random.Random) -> Fraction:
        return Fraction(rng.randint(-50, 50))


QQ = RationalField()


class FpElement:
    """An element of F_p that remembers its field; mixing moduli raises."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField):
        self.value = value % field.p
        self.field = field

    def _coerce(self, other) -> int:
        if isinstance(other, FpElement):
            if other.field.p != self.field.p:
                raise MixedFieldError(
                    f"cannot combine F_{self.field.p} and F_{other.field.p}"
                )
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def _wrap(self, v: int) -> FpElement:
        return FpElement(v, self.field)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self.value)

    def inv(self) -> FpElement:
        return self._wrap(self.field.inv(self.value))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._wrap(self.value * self.field.inv(o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._wrap(o * self.field.inv(self.value))

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        return self._wrap(pow(self.value, e, self.field.p))

    def __eq__(self, other) -> bool:
        if isinstance(other, FpElement):
            return self.field.p == other.field.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.field.p))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.field.p})"


class ExtensionField:
    """F_p[t]/(f) for a monic irreducible f; elements are :class:`ExtElement`.

    ``f`` is given as a low-to-high coefficient list.  Irreducibility is the
    caller's responsibility (orbits come out of a full factorisation).
    """

    def __init__(self, base: PrimeField, modulus: Sequence[int]):
        f = uv.monic(base, uv.trim(list(modulus)))
        if len(f) < 2:
            raise FieldError("extension modulus must have degree >= 1")
        self.base = base
        self.p = base.p
        self.modulus = tuple(f)
        self.degree = len(f) - 1
        self.mod = None  # elements are objects; norm is the identity

    def __repr__(self) -> str:
        return f"ExtensionField(p={self.p}, degree={self.degree})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExtensionField)
            and other.p == self.p
            and other.modulus == self.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))

    @property
    def characteristic(self) -> int:
        return self.p

    @staticmethod
    def norm(x):
        return x

    def element(self, coeffs: Sequence[int]) -> ExtElement:
        c = uv.rem(self.base, uv.trim([int(a) % self.p for a in coeffs]), list(self.modulus))
        return ExtElement(tuple(c), self)

    def convert(self, x) -> ExtElement:
        if isinstance(x, ExtElement):
            if x.field != self:
                raise MixedFieldError("element from a different extension")
            return x
        return self.element([self.base.convert(x)])

    def gen(self) -> ExtElement:
        return self.element([0, 1])

    def inv(self, x: ExtElement) -> ExtElement:
        return x.inv()

    def zero(self) -> ExtElement:
        return ExtElement((), self)

    def one(self) -> ExtElement:
        return self.element([1])


class ExtElement:
    __slots__ = ("c", "field")

    def __init__(self, c: tuple, field: ExtensionField):
        self.c = c
        self.field = field

    def _other(self, o):
        if isinstance(o, ExtElement):
            if o.field is not self.field and o.field != self.field:
                raise MixedFieldError("elements of different extensions")
            return o.c
        if isinstance(o, int):
            v = o % self.field.p
            return (v,) if v else ()
        return None

    def __add__(self, o):
        oc = self._other(o)
        if oc is None:
            return NotImplemented
        return ExtElement(tuple(uv.add(self.field.base, list(self.c), list(oc))), self.field)

    __radd__ = __add__

    def __sub__(self, o):
        oc = self._other(o)
        if oc is None:
            return NotImplemented
        return ExtElement(tuple(uv.sub(self.field.base, list(self.c), list(oc))), self.field)

    def __rsub__(self, o):
        return (-self) + o

    def __neg__(self):
        p = self.field.p
        return ExtElement(tuple((-a) % p for a in self.c), self.field)

    def __mul__(self, o):
        oc = self._other(o)
        if oc is None:
            return NotImplemented
        F = self.field
        prod = uv.mul(F.base, list(self.c), list(oc))
        return ExtElement(tuple(uv.rem(F.base, prod, list(F.modulus))), F)

    __rmul__ = __mul__

    def inv(self) -> ExtElement:
        if not self.c:
            raise ZeroDivisionError("inverse of zero in extension field")
        F = self.field
        g, s, _ = uv.xgcd(F.base, list(self.c), list(F.modulus))
        if len(g) != 1:
            raise FieldError("extension modulus is reducible (zero divisor found)")
        s = uv.scale(F.base, s, F.base.inv(g[0]))
        return ExtElement(tuple(uv.rem(F.base, s, list(F.modulus))), F)

    def __truediv__(self, o):
        if isinstance(o, int):
            o = self.field.convert(o)
        return self * o.inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        F = self.field
        r = uv.powmod(F.base, list(self.c), e, list(F.modulus))
        return ExtElement(tuple(r), F)

    def __eq__(self, o) -> bool:
        oc = self._other(o)
        if oc is None:
            return NotImplemented
        return self.c == tuple(oc)

    def __hash__(self) -> int:
        return hash(self.c)

    def __bool__(self) -> bool:
        return bool(self.c)

    def is_base(self) -> bool:
        return len(self.c) <= 1

    def to_base(self) -> int:
        if len(self.c) > 1:
            raise FieldError("element does not lie in the prime field")
        return self.c[0] if self.c else 0

    def __repr__(self) -> str:
        if not self.c:
            return "0"
        parts = []
        for i, a in enumerate(self.c):
            if a:
                parts.append(f"{a}" if i == 0 else f"{a}*t^{i}" if i > 1 else f"{a}*t")
        return " + ".join(parts)


def field_from_spec(spec) -> PrimeField | RationalField:
    """``'rational'``/``'QQ'`` gives Q; an int gives F_p."""
    if spec in ("rational", "QQ", "Q"):
        return QQ
    return PrimeField(int(spec))
