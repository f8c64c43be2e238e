"""Dense univariate polynomials over an exact field."""

from __future__ import annotations

from fractions import Fraction

from .exceptions import FieldMismatchError
from .fields import Field, FieldScalar
from . import parsing


class Polynomial:
    """Immutable dense polynomial, coefficients in ascending degree.

    The zero polynomial has no coefficients and degree -1.  Arithmetic
    operators accept other polynomials over the same field, field scalars
    and Python ints.  ``divmod`` performs schoolbook division.
    """

    __slots__ = ("field", "raw")

    def __init__(self, field: Field, coeffs=()):
        self.field = field
        self.raw = tuple(field.poly_strip([field.convert(c) for c in coeffs]))

    @classmethod
    def from_raw(cls, field, raw):
        """Wrap an already stripped list/tuple of raw coefficients."""
        obj = cls.__new__(cls)
        obj.field = field
        obj.raw = tuple(raw)
        return obj

    @classmethod
    def gen(cls, field):
        return cls.from_raw(field, (field.zero, field.one))

    @classmethod
    def constant(cls, field, c):
        return cls(field, [c])

    @classmethod
    def parse(cls, text: str, field: Field, var: str = "t") -> Polynomial:
        """Parse a polynomial in ``var`` with coefficients in ``field``.

        Division is only allowed by nonzero constants.  Function-field
        generators (``l``) are available as constants.
        """
        symbols = {name: cls.from_raw(field, (raw,)) for name, raw in field._generators().items()}
        if var in symbols:
            raise ValueError(f"variable name {var!r} clashes with the field generator")
        symbols[var] = cls.gen(field)
        value = parsing.evaluate(text, lambda n: cls(field, [n]), symbols)
        return value

    # -- basic accessors ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.raw) - 1

    @property
    def coeffs(self):
        return tuple(FieldScalar(self.field, c) for c in self.raw)

    def __getitem__(self, k):
        if 0 <= k < len(self.raw):
            return FieldScalar(self.field, self.raw[k])
        return FieldScalar(self.field, self.field.zero)

    @property
    def lc(self):
        if not self.raw:
            return FieldScalar(self.field, self.field.zero)
        return FieldScalar(self.field, self.raw[-1])

    def is_zero(self):
        return not self.raw

    def is_constant(self):
        return len(self.raw) <= 1

    def __bool__(self):
        return bool(self.raw)

    def __len__(self):
        return len(self.raw)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatchError(f"polynomials over {self.field} and {other.field}")
            return other.raw
        if isinstance(other, (FieldScalar, int, Fraction)) and not isinstance(other, bool):
            c = self.field.convert(other)
            return (c,) if c else ()
        return NotImplemented

    def _wrap(self, raw):
        return Polynomial.from_raw(self.field, raw)

    def __add__(self, other):
        g = self._coerce(other)
        if g is NotImplemented:
            return g
        return self._wrap(self.field.poly_add(self.raw, g))

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(self.field.poly_neg(self.raw))

    def __sub__(self, other):
        g = self._coerce(other)
        if g is NotImplemented:
            return g
        return self._wrap(self.field.poly_sub(self.raw, g))

    def __rsub__(self, other):
        g = self._coerce(other)
        if g is NotImplemented:
            return g
        return self._wrap(self.field.poly_sub(g, self.raw))

    def __mul__(self, other):
        g = self._coerce(other)
        if g is NotImplemented:
            return g
        return self._wrap(self.field.poly_mul(self.raw, g))

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = self._wrap((self.field.one,))
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other):
        g = self._coerce(other)
        if g is NotImplemented:
            return g
        q, r = self.field.poly_divrem(self.raw, g)
        return self._wrap(self.field.poly_strip(q)), self._wrap(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, other):
        """Exact division; raises ValueError when the remainder is nonzero."""
        g = self._coerce(other)
        if g is NotImplemented:
            return g
        if len(g) == 1:
            return self._wrap(self.field.poly_scale(self.raw, self.field.inv(g[0])))
        q, r = self.field.poly_divrem(self.raw, g)
        if r:
            raise ValueError("inexact polynomial division")
        return self._wrap(self.field.poly_strip(q))

    def __rtruediv__(self, other):
        g = self._coerce(other)
        if g is NotImplemented:
            return g
        return self._wrap(g) / self

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return (other.field is self.field or other.field == self.field) and other.raw == self.raw
        if isinstance(other, (FieldScalar, int, Fraction)) and not isinstance(other, bool):
            try:
                return self.raw == self._coerce(other)
            except FieldMismatchError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.raw))

    def __call__(self, a):
        """Horner evaluation at a field scalar, int, or any ring element."""
        if isinstance(a, (FieldScalar, int, Fraction)) and not isinstance(a, bool):
            return FieldScalar(self.field, self.field.poly_eval(self.raw, self.field.convert(a)))
        acc = 0 * a
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    def monic(self):
        return self._wrap(self.field.poly_monic(self.raw))

    def derivative(self):
        return self._wrap(self.field.poly_deriv(self.raw))

    def gcd(self, other):
        return gcd(self, other)

    def __str__(self):
        return self.to_str("x")

    def to_str(self, var="x"):
        return self.field.poly_format(list(self.raw), var)

    def __repr__(self):
        return f"Polynomial({self.field}, {self.to_str('x')})"


def divrem(num: Polynomial, den: Polynomial):
    """Return ``(quotient, remainder)`` with ``deg remainder < deg den``."""
    return divmod(num, den)


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor; ``gcd(0, 0) == 0``."""
    return a._wrap(a.field.poly_gcd(a.raw, a._coerce(b)))


def gcdex(a: Polynomial, b: Polynomial):
    """Extended gcd: ``(u, v, g)`` with ``u*a + v*b == g`` and g monic."""
    u, v, g = a.field.poly_gcdex(a.raw, a._coerce(b))
    return a._wrap(u), a._wrap(v), a._wrap(g)
