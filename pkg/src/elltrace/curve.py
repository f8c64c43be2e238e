"""Elliptic curves in long Weierstrass form and their group law.

Points may have coordinates in the ground field K (:class:`FieldScalar`)
or in a simple extension L of K (:class:`ExtensionElement`).  The chord
and tangent formulas are written for the general equation

    y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6

so characteristics 2 and 3 need no special casing.
"""

from __future__ import annotations

from .exceptions import FieldMismatchError, NotOnCurveError, ParseError, SingularCurveError
from .extfield import Extension, ExtensionElement
from .fields import Field, FieldScalar, PrimeField
from . import parsing


class WeierstrassCurve:
    def __init__(self, field: Field, a1=0, a2=0, a3=0, a4=0, a6=0):
        self.field = field
        self.a1, self.a2, self.a3, self.a4, self.a6 = (field(a) for a in (a1, a2, a3, a4, a6))
        if not self.discriminant:
            raise SingularCurveError(f"singular curve {self}: discriminant is zero")

    @property
    def coefficients(self):
        return self.a1, self.a2, self.a3, self.a4, self.a6

    @property
    def b_invariants(self):
        a1, a2, a3, a4, a6 = self.coefficients
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def discriminant(self) -> FieldScalar:
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def __eq__(self, other):
        return isinstance(other, WeierstrassCurve) and self.field == other.field and self.coefficients == other.coefficients

    def __hash__(self):
        return hash((self.field, self.coefficients))

    def __repr__(self):
        return f"WeierstrassCurve({self.field}, [{', '.join(map(str, self.coefficients))}])"

    # -- points -------------------------------------------------------------

    def residual(self, x, y):
        """Left side minus right side of the curve equation at (x, y)."""
        a1, a2, a3, a4, a6 = self.coefficients
        return y * y + a1 * x * y + a3 * y - (x * x * x + a2 * x * x + a4 * x + a6)

    def contains(self, x, y) -> bool:
        return not self.residual(x, y)

    @property
    def infinity(self) -> CurvePoint:
        return CurvePoint(self, None, None)

    def point(self, x, y) -> CurvePoint:
        """Affine point, checked against the curve equation.

        ``x`` and ``y`` are coerced into the ground field unless at least one
        of them is an extension element.
        """
        x, y = self._coerce_coords(x, y)
        r = self.residual(x, y)
        if r:
            raise NotOnCurveError(f"({x}, {y}) is not on {self}: residual {r}", residual=r)
        return CurvePoint(self, x, y)

    def _coerce_coords(self, x, y):
        ext = next((c.parent for c in (x, y) if isinstance(c, ExtensionElement)), None)
        if ext is None:
            return self.field(x), self.field(y)
        if ext.field != self.field:
            raise FieldMismatchError(f"{ext} is not an extension of {self.field}")
        return ext(x), ext(y)

    def parse_point(self, text: str) -> CurvePoint:
        """Inverse of ``str(point)`` for points over the ground field."""
        text = text.strip()
        if text == "O":
            return self.infinity
        if not (text.startswith("(") and text.endswith(")")):
            raise ParseError("expected 'O' or '(x, y)'", text, 0)
        parts = parsing.split_top_level(text[1:-1])
        if len(parts) != 2:
            raise ParseError("expected exactly two coordinates", text, 0)
        return self.point(self.field.parse(parts[0]), self.field.parse(parts[1]))

    def rational_points(self):
        """All points of E(F_p) by brute force (prime fields only)."""
        if not isinstance(self.field, PrimeField):
            raise TypeError("enumeration needs a prime field")
        K = self.field
        pts = [self.infinity]
        for x in K.elements():
            for y in K.elements():
                if self.contains(K(x), K(y)):
                    pts.append(CurvePoint(self, K(x), K(y)))
        return pts

    def points_over(self, ext: Extension):
        """All points of E(L) for a finite extension L, by brute force."""
        elements = list(ext.elements())
        pts = [self.infinity]
        for x in elements:
            for y in elements:
                if self.contains(x, y):
                    pts.append(CurvePoint(self, x, y))
        return pts

    # -- group law ------------------------------------------------------------

    def neg(self, P: CurvePoint) -> CurvePoint:
        if P.is_infinity:
            return P
        return CurvePoint(self, P.x, -P.y - self.a1 * P.x - self.a3)

    def add(self, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        a1, a2, a3, a4, _ = self.coefficients
        x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
        if x1 == x2:
            psi2 = y1 + y2 + a1 * x1 + a3
            if not psi2:
                # Q = -P, including doubling a 2-torsion point.
                return self.infinity
            # x1 == x2 and Q != -P forces Q == P
            lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / psi2
        else:
            lam = (y2 - y1) / (x2 - x1)
        nu = y1 - lam * x1
        x3 = lam * lam + a1 * lam - a2 - x1 - x2
        y3 = -(lam + a1) * x3 - nu - a3
        return CurvePoint(self, x3, y3)

    def mul(self, n: int, P: CurvePoint) -> CurvePoint:
        """[n]P by double-and-add; negative n uses -P."""
        if n < 0:
            n, P = -n, self.neg(P)
        result = self.infinity
        addend = P
        while n:
            if n & 1:
                result = self.add(result, addend)
            n >>= 1
            if n:
                addend = self.add(addend, addend)
        return result


class CurvePoint:
    """The point at infinity (x = y = None) or an affine point."""

    __slots__ = ("curve", "x", "y")

    def __init__(self, curve: WeierstrassCurve, x, y):
        self.curve = curve
        self.x = x
        self.y = y

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __add__(self, other):
        if not isinstance(other, CurvePoint):
            return NotImplemented
        return self.curve.add(self, other)

    def __neg__(self):
        return self.curve.neg(self)

    def __sub__(self, other):
        if not isinstance(other, CurvePoint):
            return NotImplemented
        return self.curve.add(self, self.curve.neg(other))

    def __mul__(self, n):
        if not isinstance(n, int) or isinstance(n, bool):
            return NotImplemented
        return self.curve.mul(n, self)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, CurvePoint):
            return NotImplemented
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def on_curve(self) -> bool:
        return self.is_infinity or self.curve.contains(self.x, self.y)

    def map_coordinates(self, fn) -> CurvePoint:
        """Apply ``fn`` to both coordinates (e.g. Frobenius); O is fixed."""
        if self.is_infinity:
            return self
        return CurvePoint(self.curve, fn(self.x), fn(self.y))

    def __str__(self):
        if self.is_infinity:
            return "O"
        return f"({self.x}, {self.y})"

    def __repr__(self):
        return f"CurvePoint{self}" if not self.is_infinity else "CurvePoint(O)"
