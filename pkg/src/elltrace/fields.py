"""Exact ground fields.

Three concrete fields are provided: the rationals :class:`RationalField`,
prime fields :class:`PrimeField` and rational function fields
:class:`RationalFunctionField` in one indeterminate ``l`` over either of
those.

A field object works on *raw* values (``Fraction``, ``int`` residues,
:class:`RationalFunction`), always kept in canonical form so that equality
is structural.  Raw values are falsy exactly when they are zero.  The
user-facing wrapper is :class:`FieldScalar`, which adds operator
overloading::

    >>> F = PrimeField(3)
    >>> F(2) + F(2)
    FieldScalar(F_3, 1)

Fields also carry dense univariate polynomial routines (``poly_*``) on
ascending coefficient lists of raw values with no trailing zeros.  They
are the substrate of :mod:`elltrace.poly`, of extension arithmetic and of
rational function normalization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .exceptions import FieldMismatchError
from . import parsing

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
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


class Field:
    """Base class: exact field with raw-value arithmetic."""

    characteristic = 0
    zero = None
    one = None

    # -- element construction -------------------------------------------------

    def __call__(self, value=0) -> FieldScalar:
        return FieldScalar(self, self.convert(value))

    def convert(self, value):
        """Coerce an int, Fraction, str or FieldScalar to a raw value."""
        if isinstance(value, FieldScalar):
            if value.field is not self and value.field != self:
                raise FieldMismatchError(f"element of {value.field} used in {self}")
            return value.value
        if isinstance(value, bool):
            raise TypeError("bool is not a field element")
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, Fraction):
            return self.div(self.from_int(value.numerator), self.from_int(value.denominator))
        if isinstance(value, str):
            return self.parse(value).value
        raise TypeError(f"cannot convert {type(value).__name__} to an element of {self}")

    def parse(self, text: str) -> FieldScalar:
        """Parse ``text`` in the element grammar (see :mod:`elltrace.parsing`)."""
        symbols = {name: FieldScalar(self, gen) for name, gen in self._generators().items()}
        value = parsing.evaluate(text, self, symbols)
        if not isinstance(value, FieldScalar):
            value = self(value)
        return value

    def _generators(self):
        return {}

    def format(self, a) -> str:
        return str(a)

    def pow(self, a, n: int):
        if n < 0:
            a, n = self.inv(a), -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            n >>= 1
            if n:
                a = self.mul(a, a)
        return result

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def random(self, rng):
        raise NotImplementedError

    # -- dense polynomials ------------------------------------------------------

    def poly_strip(self, f):
        f = list(f)
        while f and not f[-1]:
            f.pop()
        return f

    def poly_add(self, f, g):
        if len(f) < len(g):
            f, g = g, f
        h = list(f)
        add = self.add
        for i, c in enumerate(g):
            h[i] = add(h[i], c)
        return self.poly_strip(h) if len(f) == len(g) else h

    def poly_neg(self, f):
        neg = self.neg
        return [neg(c) for c in f]

    def poly_sub(self, f, g):
        return self.poly_add(f, self.poly_neg(g))

    def poly_scale(self, f, c):
        if not c:
            return []
        mul = self.mul
        return [mul(a, c) for a in f]

    def poly_mul(self, f, g):
        if not f or not g:
            return []
        add, mul, zero = self.add, self.mul, self.zero
        h = [zero] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if not a:
                continue
            for j, b in enumerate(g):
                if b:
                    h[i + j] = add(h[i + j], mul(a, b))
        return h

    def poly_divrem(self, f, g):
        """Schoolbook division; returns (quotient, remainder)."""
        if not g:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(f)
        dg = len(g) - 1
        if len(r) <= dg:
            return [], r
        inv_lc = self.inv(g[-1])
        q = [self.zero] * (len(r) - dg)
        sub, mul = self.sub, self.mul
        for i in range(len(r) - 1, dg - 1, -1):
            c = r[i]
            if not c:
                continue
            c = mul(c, inv_lc)
            q[i - dg] = c
            base = i - dg
            for j in range(dg):
                if g[j]:
                    r[base + j] = sub(r[base + j], mul(c, g[j]))
            r[i] = self.zero
        return q, self.poly_strip(r[:dg])

    def poly_rem(self, f, g):
        return self.poly_divrem(f, g)[1]

    def poly_monic(self, f):
        if not f or f[-1] == self.one:
            return list(f)
        return self.poly_scale(f, self.inv(f[-1]))

    def poly_gcd(self, f, g):
        """Monic gcd; the zero polynomial for gcd(0, 0)."""
        f, g = self.poly_monic(f), self.poly_monic(g)
        while g:
            f, g = g, self.poly_monic(self.poly_rem(f, g))
        return f

    def poly_gcdex(self, f, g):
        """Return (u, v, h) with u*f + v*g = h = monic gcd(f, g).

        Remainders are made monic at every step (with the cofactors scaled
        alongside), which keeps coefficient growth in check over Q and k(l).
        """
        def normalized(r, u, v):
            if not r or r[-1] == self.one:
                return r, u, v
            c = self.inv(r[-1])
            return self.poly_scale(r, c), self.poly_scale(u, c), self.poly_scale(v, c)

        r0, u0, v0 = normalized(list(f), [self.one], [])
        r1, u1, v1 = normalized(list(g), [], [self.one])
        while r1:
            q, r = self.poly_divrem(r0, r1)
            u = self.poly_sub(u0, self.poly_mul(q, u1))
            v = self.poly_sub(v0, self.poly_mul(q, v1))
            r0, u0, v0 = r1, u1, v1
            r1, u1, v1 = normalized(r, u, v)
        if not r0:
            return [], [], []
        return u0, v0, r0

    def poly_eval(self, f, a):
        add, mul = self.add, self.mul
        acc = self.zero
        for c in reversed(f):
            acc = add(mul(acc, a), c)
        return acc

    def poly_deriv(self, f):
        return self.poly_strip([self.mul(self.from_int(i), f[i]) for i in range(1, len(f))])

    def poly_format(self, f, var: str) -> str:
        """Descending-degree text with explicit signs, e.g. ``l^4 + l^3 + 1``."""
        if not f:
            return "0"
        terms = []
        for k in range(len(f) - 1, -1, -1):
            c = f[k]
            if not c:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            cs = self.format(c)
            if not mono:
                term = cs
            elif c == self.one:
                term = mono
            elif self.characteristic == 0 and c == self.neg(self.one):
                term = "-" + mono
            elif _is_atomic(cs):
                term = f"{cs}*{mono}"
            else:
                term = f"({cs})*{mono}"
            terms.append(term)
        return _join_terms(terms)


def _is_atomic(text: str) -> bool:
    """True if ``text`` can be multiplied on the right without parentheses."""
    body = text[1:] if text.startswith("-") else text
    return not any(ch in body for ch in "+- ") and "(" not in body


def _join_terms(terms):
    out = terms[0]
    for term in terms[1:]:
        if term.startswith("-"):
            out += " - " + term[1:]
        else:
            out += " + " + term
    return out


@dataclass(frozen=True, eq=True)
class RationalField(Field):
    """The field Q; raw values are :class:`fractions.Fraction`."""

    zero = Fraction(0)
    one = Fraction(1)

    kind = "Q"
    characteristic = 0

    def __str__(self):
        return "Q"

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero")
        return a / b

    def random(self, rng, bound=10):
        num = rng.randint(-bound, bound)
        return Fraction(num, rng.randint(1, bound))

    def describe(self):
        return {"kind": "Q"}

    def poly_gcd(self, f, g):
        """Monic gcd via a primitive remainder sequence over Z.

        Euclid over Q lets the denominators of the remainders explode; the
        rational function field calls this on every normalization.
        """
        f, g = _primitive_int(f), _primitive_int(g)
        if len(f) < len(g):
            f, g = g, f
        while g:
            f, g = g, _primitive_int(_int_prem(f, g))
        return self.poly_monic([Fraction(c) for c in f])


def _primitive_int(f):
    """Primitive integer polynomial proportional to ``f`` (ints or Fractions)."""
    if not f:
        return []
    den = math.lcm(*(Fraction(c).denominator for c in f))
    ints = [int(Fraction(c) * den) for c in f]
    content = math.gcd(*ints)
    if ints[-1] < 0:
        content = -content
    return [c // content for c in ints]


def _int_prem(f, g):
    """Pseudo-remainder of integer polynomials (only the sign-free multiple matters)."""
    r = list(f)
    dg = len(g) - 1
    lc = g[-1]
    while len(r) - 1 >= dg and r:
        c = r[-1]
        shift = len(r) - 1 - dg
        r = [lc * a for a in r]
        for j, b in enumerate(g):
            r[shift + j] -= c * b
        while r and not r[-1]:
            r.pop()
    return r


@dataclass(frozen=True, eq=True)
class PrimeField(Field):
    """The prime field F_p for a word-sized prime p; raw values are ints in [0, p)."""

    p: int
    kind = "Fp"
    zero = 0
    one = 1

    def __post_init__(self):
        if not isinstance(self.p, int) or not 2 <= self.p < 2**63:
            raise ValueError(f"prime field modulus must be an integer in [2, 2^63), got {self.p!r}")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def characteristic(self):
        return self.p

    def __str__(self):
        return f"F_{self.p}"

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        s = a + b
        return s - self.p if s >= self.p else s

    def sub(self, a, b):
        s = a - b
        return s + self.p if s < 0 else s

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return self.p - a if a else 0

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def pow(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        return pow(a, n, self.p)

    def random(self, rng):
        return rng.randrange(self.p)

    def elements(self):
        return range(self.p)

    def describe(self):
        return {"kind": "Fp", "p": self.p}

    # Integer fast paths: accumulate without reducing, reduce once at the end.

    def poly_add(self, f, g):
        p = self.p
        if len(f) < len(g):
            f, g = g, f
        h = list(f)
        for i, c in enumerate(g):
            h[i] = (h[i] + c) % p
        return self.poly_strip(h) if len(f) == len(g) else h

    def poly_neg(self, f):
        p = self.p
        return [(p - c) % p for c in f]

    def poly_scale(self, f, c):
        if not c:
            return []
        p = self.p
        return [a * c % p for a in f]

    def poly_mul(self, f, g):
        if not f or not g:
            return []
        p = self.p
        h = [0] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if a:
                for j, b in enumerate(g, i):
                    h[j] += a * b
        return [c % p for c in h]

    def poly_divrem(self, f, g):
        if not g:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        dg = len(g) - 1
        r = list(f)
        if len(r) <= dg:
            return [], r
        inv_lc = pow(g[-1], -1, p)
        q = [0] * (len(r) - dg)
        low = g[:dg]
        for i in range(len(r) - 1, dg - 1, -1):
            c = r[i] % p
            if not c:
                continue
            c = c * inv_lc % p
            q[i - dg] = c
            base = i - dg
            for j, gj in enumerate(low):
                if gj:
                    r[base + j] -= c * gj
        return q, self.poly_strip([c % p for c in r[:dg]])

    def poly_eval(self, f, a):
        p = self.p
        acc = 0
        for c in reversed(f):
            acc = (acc * a + c) % p
        return acc


class RationalFunction:
    """Raw value of k(l): a reduced fraction num/den with monic den.

    ``num`` and ``den`` are tuples of raw base-field coefficients in
    ascending degree.  Zero is ``((), (1,))``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        self.num = num
        self.den = den

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        return isinstance(other, RationalFunction) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"


@dataclass(frozen=True, eq=True)
class RationalFunctionField(Field):
    """The field k(l) of rational functions over k = Q or F_p."""

    base: Field
    var: str = "l"
    kind = "RatFunc"
    zero: RationalFunction = dc_field(init=False, compare=False, repr=False)
    one: RationalFunction = dc_field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.base, (RationalField, PrimeField)):
            raise ValueError("rational function fields are only supported over Q or F_p")
        object.__setattr__(self, "zero", RationalFunction((), (self.base.one,)))
        object.__setattr__(self, "one", RationalFunction((self.base.one,), (self.base.one,)))

    @property
    def characteristic(self):
        return self.base.characteristic

    def __str__(self):
        return f"{self.base}({self.var})"

    def _generators(self):
        return {self.var: self.gen_raw()}

    def gen_raw(self):
        b = self.base
        return RationalFunction((b.zero, b.one), (b.one,))

    def gen(self) -> FieldScalar:
        return FieldScalar(self, self.gen_raw())

    def describe(self):
        return {"kind": "RatFunc", "base": self.base.describe()}

    def make(self, num, den=None):
        """Canonical raw value from base-field coefficient sequences."""
        b = self.base
        num = b.poly_strip(num)
        den = b.poly_strip(den) if den is not None else [b.one]
        return self._normalize(num, den)

    def _normalize(self, num, den):
        b = self.base
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            return self.zero
        if len(den) > 1:
            g = b.poly_gcd(num, den)
            if len(g) > 1:
                num = b.poly_divrem(num, g)[0]
                den = b.poly_divrem(den, g)[0]
        lc = den[-1]
        if lc != b.one:
            c = b.inv(lc)
            num = b.poly_scale(num, c)
            den = b.poly_scale(den, c)
        return RationalFunction(tuple(num), tuple(den))

    def from_int(self, n):
        c = self.base.from_int(n)
        if not c:
            return self.zero
        return RationalFunction((c,), (self.base.one,))

    def from_base(self, c):
        return RationalFunction((c,), (self.base.one,)) if c else self.zero

    def add(self, a, b):
        base = self.base
        if not a.num:
            return b
        if not b.num:
            return a
        if a.den == b.den:
            num = base.poly_add(a.num, b.num)
            if len(a.den) == 1:
                return RationalFunction(tuple(num), a.den) if num else self.zero
            return self._normalize(num, list(a.den))
        num = base.poly_add(base.poly_mul(a.num, b.den), base.poly_mul(b.num, a.den))
        return self._normalize(num, base.poly_mul(a.den, b.den))

    def neg(self, a):
        if not a.num:
            return a
        return RationalFunction(tuple(self.base.poly_neg(a.num)), a.den)

    def mul(self, a, b):
        base = self.base
        if not a.num or not b.num:
            return self.zero
        num = base.poly_mul(a.num, b.num)
        if len(a.den) == 1 and len(b.den) == 1:
            return RationalFunction(tuple(num), a.den)
        return self._normalize(num, base.poly_mul(a.den, b.den))

    def inv(self, a):
        if not a.num:
            raise ZeroDivisionError("inverse of zero")
        return self._normalize(list(a.den), list(a.num))

    def random(self, rng, degree=3):
        b = self.base
        num = [b.random(rng) for _ in range(rng.randint(0, degree + 1))]
        den = [b.random(rng) for _ in range(rng.randint(0, degree))] + [b.one]
        return self.make(num, den)

    def format(self, a):
        b = self.base
        num = b.poly_format(list(a.num), self.var)
        if len(a.den) == 1:
            return num
        den = b.poly_format(list(a.den), self.var)
        if len(a.num) > 1 and sum(1 for c in a.num if c) > 1:
            num = f"({num})"
        if sum(1 for c in a.den if c) > 1:
            den = f"({den})"
        return f"{num}/{den}"


def field_from_description(desc) -> Field:
    """Build a field from the JSON descriptor used by problem documents."""
    if not isinstance(desc, dict) or "kind" not in desc:
        raise ValueError(f"invalid field descriptor: {desc!r}")
    kind = desc["kind"]
    if kind == "Q":
        return RationalField()
    if kind == "Fp":
        p = desc.get("p")
        if not isinstance(p, int) or isinstance(p, bool):
            raise ValueError(f"Fp descriptor needs an integer 'p', got {p!r}")
        return PrimeField(p)
    if kind == "RatFunc":
        base = field_from_description(desc.get("base"))
        if isinstance(base, RationalFunctionField):
            raise ValueError("nested rational function fields are not supported")
        return RationalFunctionField(base)
    raise ValueError(f"unknown field kind {kind!r}")


class FieldScalar:
    """An element of a ground field, with operator overloading."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FieldScalar):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatchError(f"cannot combine elements of {self.field} and {other.field}")
            return other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field.convert(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldScalar(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldScalar(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldScalar(self.field, self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldScalar(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldScalar(self.field, self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldScalar(self.field, self.field.div(b, self.value))

    def __neg__(self):
        return FieldScalar(self.field, self.field.neg(self.value))

    def __pos__(self):
        return self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return FieldScalar(self.field, self.field.pow(self.value, n))

    def inverse(self):
        return FieldScalar(self.field, self.field.inv(self.value))

    def __bool__(self):
        return bool(self.value)

    def is_zero(self):
        return not self.value

    def __eq__(self, other):
        if isinstance(other, FieldScalar):
            return (other.field is self.field or other.field == self.field) and other.value == self.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.value == self.field.convert(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"FieldScalar({self.field}, {self})"
