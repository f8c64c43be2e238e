"""Simple extensions L = K[t]/T(t) of an exact field K."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .exceptions import FieldMismatchError, NotInSubfieldError, ReducibleModulusError
from .fields import Field, FieldScalar, PrimeField
from .poly import Polynomial

# Above this degree, multiplication over F_p uses numpy convolution plus a
# precomputed reduction matrix, when int64 cannot overflow.
_NUMPY_MIN_DEGREE = 24


def is_irreducible(T: Polynomial) -> bool:
    """Irreducibility test over a prime field.

    T of degree n is irreducible iff gcd(T, t^(p^i) - t) = 1 for every
    1 <= i <= n/2.
    """
    K = T.field
    if not isinstance(K, PrimeField):
        raise TypeError("irreducibility test is only available over prime fields")
    n = T.degree
    if n < 1:
        return False
    if n == 1:
        return True
    T = T.monic()
    L = Extension(T)
    t = L.gen
    frob = t
    for _ in range(1, n // 2 + 1):
        frob = frob ** K.p
        g = K.poly_gcd(T.raw, K.poly_sub(frob.rep, t.rep))
        if len(g) > 1:
            return False
    return True


class Extension:
    """The field K[t]/T(t) for a (trusted) irreducible modulus T.

    ``T`` is stored monic.  Pass ``check_irreducible=True`` to verify the
    modulus when K is a prime field; over other fields irreducibility is a
    caller precondition and a violation surfaces later as
    :class:`ReducibleModulusError` from an inversion.
    """

    def __init__(self, modulus: Polynomial, check_irreducible: bool = False):
        if modulus.degree < 1:
            raise ValueError("extension modulus must have degree >= 1")
        self.field: Field = modulus.field
        self.modulus = modulus.monic()
        self.degree = self.modulus.degree
        self._T = self.modulus.raw
        self._p = self.field.p if isinstance(self.field, PrimeField) else None
        self._red = None
        if check_irreducible and not is_irreducible(self.modulus):
            raise ReducibleModulusError(f"{self.modulus.to_str('t')} is reducible over {self.field}")

    def __eq__(self, other):
        return isinstance(other, Extension) and self.field == other.field and self._T == other._T

    def __hash__(self):
        return hash((self.field, self._T))

    def __repr__(self):
        return f"Extension({self.field}[t]/({self.modulus.to_str('t')}))"

    # -- element construction ---------------------------------------------

    def __call__(self, value=0) -> ExtensionElement:
        if isinstance(value, ExtensionElement):
            if value.parent != self:
                raise FieldMismatchError("element of a different extension")
            return value
        if isinstance(value, Polynomial):
            if value.field != self.field:
                raise FieldMismatchError(f"polynomial over {value.field} used in {self}")
            return self._from_poly_raw(value.raw)
        if isinstance(value, (list, tuple)):
            return self(Polynomial(self.field, value))
        return self.from_raw_rep((self.field.convert(value),))

    def _from_poly_raw(self, raw):
        if len(raw) > self.degree:
            raw = self.field.poly_rem(raw, self._T)
        return self.from_raw_rep(raw)

    def from_raw_rep(self, rep):
        """Wrap a reduced raw representative (trailing zeros are stripped)."""
        rep = list(rep)
        while rep and not rep[-1]:
            rep.pop()
        obj = ExtensionElement.__new__(ExtensionElement)
        obj.parent = self
        obj.rep = tuple(rep)
        return obj

    @property
    def gen(self) -> ExtensionElement:
        """The class theta of t."""
        return self._from_poly_raw((self.field.zero, self.field.one))

    def zero(self):
        return self.from_raw_rep(())

    def one(self):
        return self.from_raw_rep((self.field.one,))

    def random(self, rng):
        return self.from_raw_rep([self.field.random(rng) for _ in range(self.degree)])

    def elements(self):
        """Enumerate all elements (finite prime-field ground only)."""
        if self._p is None:
            raise TypeError("only finite extensions can be enumerated")
        p, d = self._p, self.degree
        for n in range(p**d):
            rep = []
            for _ in range(d):
                n, c = divmod(n, p)
                rep.append(c)
            yield self.from_raw_rep(rep)

    @property
    def order(self):
        if self._p is None:
            raise TypeError("infinite field")
        return self._p**self.degree

    # -- raw arithmetic -------------------------------------------------------

    def _reduction_matrix(self):
        # Row i holds t^(d+i) mod T, for i in [0, d-1).
        if self._red is None:
            K, d = self.field, self.degree
            rows = []
            cur = list(self.field.poly_rem([K.zero] * d + [K.one], self._T))
            for _ in range(d - 1):
                rows.append(cur + [0] * (d - len(cur)))
                cur = K.poly_rem([0] + cur, self._T)
            self._red = np.array(rows, dtype=self._dtype).reshape(d - 1, d)
        return self._red

    def _numpy_ok(self):
        p, d = self._p, self.degree
        return p is not None and d >= _NUMPY_MIN_DEGREE and d * (p - 1) ** 2 < 2**62

    @property
    def _dtype(self):
        # float64 hits BLAS and is exact while every dot product stays below 2^53.
        return np.float64 if self.degree * (self._p - 1) ** 2 < 2**53 else np.int64

    def mul_raw(self, a, b):
        if not a or not b:
            return ()
        if self._numpy_ok():
            return self._mul_numpy(a, b)
        return self.field.poly_rem(self.field.poly_mul(a, b), self._T)

    def _mul_numpy(self, a, b):
        p, d, dt = self._p, self.degree, self._dtype
        prod = np.convolve(np.array(a, dtype=dt), np.array(b, dtype=dt)) % p
        if len(prod) > d:
            prod = (prod[:d] + prod[d:] @ self._reduction_matrix()[: len(prod) - d]) % p
        return prod.astype(np.int64).tolist()

    def inv_raw(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero in extension")
        u, _, g = self.field.poly_gcdex(a, self._T)
        if len(g) != 1:
            raise ReducibleModulusError(
                f"modulus {self.modulus.to_str('t')} is reducible: nontrivial gcd {Polynomial.from_raw(self.field, g).to_str('t')}"
            )
        return self.field.poly_rem(u, self._T) if len(u) > self.degree else u


class ExtensionElement:
    """Residue class modulo T, stored as its reduced representative."""

    __slots__ = ("parent", "rep")

    def __init__(self, parent: Extension, rep):
        reduced = parent(Polynomial(parent.field, rep))
        self.parent = parent
        self.rep = reduced.rep

    def _coerce(self, other):
        if isinstance(other, ExtensionElement):
            if other.parent is not self.parent and other.parent != self.parent:
                raise FieldMismatchError("elements of different extensions")
            return other.rep
        if isinstance(other, (FieldScalar, int, Fraction)) and not isinstance(other, bool):
            c = self.parent.field.convert(other)
            return (c,) if c else ()
        return NotImplemented

    def _wrap(self, rep):
        return self.parent.from_raw_rep(rep)

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.parent.field.poly_add(self.rep, b))

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(self.parent.field.poly_neg(self.rep))

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.parent.field.poly_sub(self.rep, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.parent.field.poly_sub(b, self.rep))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        if len(b) == 1:
            return self._wrap(self.parent.field.poly_scale(self.rep, b[0]))
        return self._wrap(self.parent.mul_raw(self.rep, b))

    __rmul__ = __mul__

    def inverse(self):
        return self._wrap(self.parent.inv_raw(self.rep))

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self * self._wrap(self.parent.inv_raw(b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(b) * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = self.parent.one()
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __bool__(self):
        return bool(self.rep)

    def __eq__(self, other):
        if isinstance(other, ExtensionElement):
            return (other.parent is self.parent or other.parent == self.parent) and other.rep == self.rep
        if isinstance(other, (FieldScalar, int, Fraction)) and not isinstance(other, bool):
            try:
                return self.rep == self._coerce(other)
            except FieldMismatchError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.parent, self.rep))

    def is_constant(self):
        return len(self.rep) <= 1

    def constant(self) -> FieldScalar:
        """The ground-field value of a constant element."""
        if len(self.rep) > 1:
            raise ValueError("element is not in the ground field")
        K = self.parent.field
        return FieldScalar(K, self.rep[0] if self.rep else K.zero)

    def vector(self):
        """Coordinates on the power basis 1, theta, ..., theta^(d-1)."""
        d = self.parent.degree
        return list(self.rep) + [self.parent.field.zero] * (d - len(self.rep))

    def polynomial(self) -> Polynomial:
        return Polynomial.from_raw(self.parent.field, self.rep)

    def __str__(self):
        return self.parent.field.poly_format(list(self.rep), "t")

    def __repr__(self):
        return f"ExtensionElement({self})"


def ext_int_pow(a: ExtensionElement, n: int) -> ExtensionElement:
    """a^n by square-and-multiply (a^0 = 1)."""
    if n < 0:
        raise ValueError("exponent must be nonnegative")
    return a**n


def subfield_coeffs(a: ExtensionElement, pd: int, target_deg: int) -> Polynomial:
    """Write ``a`` as q(theta^pd) with deg q < target_deg.

    Coefficient n of q is coefficient n*pd of a's representative; every
    other coefficient must vanish.
    """
    d = a.parent.degree
    if pd < 1 or d % pd or target_deg != d // pd:
        raise ValueError(f"need pd | deg T and target_deg = deg T / pd (got pd={pd}, target_deg={target_deg})")
    for i, c in enumerate(a.rep):
        if c and i % pd:
            raise NotInSubfieldError(f"coefficient of t^{i} is nonzero, so the element is not a polynomial in t^{pd}")
    return Polynomial.from_raw(a.parent.field, a.rep[::pd])
