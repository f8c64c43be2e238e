"""Trace of a point on an elliptic curve over a simple extension.

The trace of P in E(L), L = K(theta) = K[t]/T(t), is the sum under the
group law of the conjugates of P, weighted by the inseparable degree of
L/K.  It always lands in E(K).

:func:`ell_trace_sep` handles separable moduli with a Riemann-Roch
computation: it finds the function f_P = U(x) + V(x)*y of least degree
vanishing at all conjugates of P, reads the extra zero Q of f_P off the
norm R(x) = -f_P * (f_P o [-1]), and rescales.  :func:`ell_trace`
reduces the general case to the separable one by multiplying by the
inseparable degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .curve import CurvePoint, WeierstrassCurve
from .exceptions import InconsistentInputError, NotInSubfieldError
from .extfield import Extension, subfield_coeffs
from .fields import FieldScalar
from .linalg import Matrix, kernel_echelon, last_nonzero, minimal_polynomial
from .poly import Polynomial

#: Branch labels recorded on every witness.
BRANCH_RATIONAL = "rational"  # x_P and y_P constant: [d]P
BRANCH_CONJUGATE_PAIR = "conjugate-pair"  # x_P constant, y_P not: O
BRANCH_V_ZERO = "V=0"
BRANCH_S_CONSTANT = "degS=0"
BRANCH_GENERAL = "general"
BRANCH_INSEPARABLE_O = "insep-Q=O"  # [p^d]P = O in the general algorithm

TRIVIAL_BRANCHES = (BRANCH_RATIONAL, BRANCH_CONJUGATE_PAIR)


class TraceProblem:
    """Curve E over K, modulus T, and a point (x_P(theta), y_P(theta)) in E(L).

    ``x`` and ``y`` are reduced modulo T.  The on-curve condition is
    checked here; irreducibility of T is trusted unless
    ``check_irreducible`` is set (prime fields only).
    """

    def __init__(self, curve: WeierstrassCurve, modulus: Polynomial, x: Polynomial, y: Polynomial,
                 check_irreducible: bool = False):
        if modulus.field != curve.field or x.field != curve.field or y.field != curve.field:
            raise InconsistentInputError("curve, modulus and coordinates must share the ground field")
        self.curve = curve
        self.extension = Extension(modulus, check_irreducible=check_irreducible)
        L = self.extension
        self.point = curve.point(L(x), L(y))
        self.x = self.point.x.polynomial()
        self.y = self.point.y.polynomial()

    @property
    def field(self):
        return self.curve.field

    @property
    def modulus(self) -> Polynomial:
        return self.extension.modulus

    @property
    def degree(self) -> int:
        return self.extension.degree

    @classmethod
    def from_point(cls, curve, point: CurvePoint) -> TraceProblem:
        L = point.x.parent
        return cls(curve, L.modulus, point.x.polynomial(), point.y.polynomial())

    def __repr__(self):
        return (f"TraceProblem({self.curve}, T={self.modulus.to_str('t')}, "
                f"x={self.x.to_str('t')}, y={self.y.to_str('t')})")


@dataclass
class TraceWitness:
    """Result of a trace computation.

    ``intermediates`` is filled only when recording was requested; it maps
    names to values in a stable insertion order.
    """

    result: CurvePoint
    branch: str
    intermediates: Optional[dict] = field(default=None)

    def lines(self):
        """Stable ``key: value`` rendering used by the CLI ``--witness`` flag."""
        out = [f"result: {self.result}", f"branch: {self.branch}"]
        if self.intermediates:
            out.extend(_render(self.intermediates))
        return out


def _render(record, prefix=""):
    out = []
    for key, value in record.items():
        name = prefix + key
        if isinstance(value, dict):
            out.extend(_render(value, name + "."))
        elif isinstance(value, Matrix):
            for i, row in enumerate(value.rows):
                out.append(f"{name}[{i}]: [{', '.join(value.field.format(c) for c in row)}]")
        elif isinstance(value, Polynomial):
            out.append(f"{name}: {value.to_str(_poly_var(key))}")
        elif isinstance(value, (list, tuple)):
            out.append(f"{name}: [{', '.join(str(v) for v in value)}]")
        else:
            out.append(f"{name}: {value}")
    return out


def _poly_var(key):
    return "t" if key in ("T", "S_t", "x_Q(t)", "y_Q(t)") else "x"


def insep_decompose(T: Polynomial, p: int):
    """Largest d with T(t) = S(t^(p^d)); returns (d, S)."""
    if p <= 0:
        raise ValueError("inseparable decomposition needs positive characteristic")
    if T.is_zero():
        raise ValueError("zero polynomial")
    support = [i for i, c in enumerate(T.raw) if c]
    d = 0
    q = p
    while all(i % q == 0 for i in support):
        d += 1
        q *= p
    pd = p**d
    return d, Polynomial.from_raw(T.field, T.raw[::pd])


def _constant_point(curve, P):
    return curve.point(P.x.constant(), P.y.constant())


def ell_trace_sep(problem: TraceProblem, record: bool = False) -> TraceWitness:
    """Trace for a separable irreducible modulus."""
    E = problem.curve
    K = E.field
    L = problem.extension
    P = problem.point
    d = L.degree
    a1, a2, a3, a4, a6 = E.coefficients

    if P.x.is_constant():
        if P.y.is_constant():
            result = E.mul(d, _constant_point(E, P))
            return TraceWitness(result, BRANCH_RATIONAL, {"d": d} if record else None)
        return TraceWitness(E.infinity, BRANCH_CONJUGATE_PAIR, {"d": d} if record else None)

    # Values at P of the Riemann-Roch basis 1, x, y, x^2, xy, ... of L((d+1)O).
    values = [L.one(), P.x, P.y]
    for j in range(3, d + 1):
        values.append(P.x * values[j - 2])
    values = values[: d + 1]
    M = Matrix.from_columns(K, [v.vector() for v in values], d)
    Z = kernel_echelon(M)
    z = Z.column(0)

    U = Polynomial.from_raw(K, K.poly_strip([z[0]] + [z[2 * j - 1] for j in range(1, (d + 1) // 2 + 1)]))
    V = Polynomial.from_raw(K, K.poly_strip([z[2 * j + 2] for j in range(0, (d - 2) // 2 + 1)]))

    rec = None
    if record:
        rec = {"d": d, "L": values, "M": M, "kernel_dim": Z.ncols, "Z": [FieldScalar(K, c) for c in z], "U": U, "V": V}

    if V.is_zero():
        return TraceWitness(E.infinity, BRANCH_V_ZERO, rec)

    X = minimal_polynomial(P.x)
    x = Polynomial.gen(K)
    cubic = Polynomial(K, [a6, a4, a2, 1])
    R = cubic * V * V + (a1 * x + a3) * U * V - U * U
    S, rem = divmod(R, X)
    if rem:
        raise InconsistentInputError("R(x) is not divisible by the minimal polynomial of x_P")
    if record:
        rec.update({"X": X, "R": R, "S": S})

    if S.degree == 0:
        return TraceWitness(E.infinity, BRANCH_S_CONSTANT, rec)
    if S.degree != 1:
        raise InconsistentInputError(f"R(x)/X(x) has degree {S.degree}; expected at most 1")

    xQ = -S[0] / S[1]
    vQ = V(xQ)
    if not vQ:
        raise InconsistentInputError("V(x_Q) = 0")
    yQ = -U(xQ) / vQ
    if not E.contains(xQ, yQ):
        raise InconsistentInputError(f"recovered Q = ({xQ}, {yQ}) is not on the curve")
    Q = E.point(xQ, yQ)

    dP = last_nonzero(z)
    if dP <= 0 or d % dP:
        raise InconsistentInputError(f"d_P = {dP} does not divide d = {d}")
    result = E.mul(-(d // dP), Q)
    if record:
        rec.update({"Q": Q, "d_P": dP, "scalar": -(d // dP)})
    return TraceWitness(result, BRANCH_GENERAL, rec)


def ell_trace(problem: TraceProblem, record: bool = False) -> TraceWitness:
    """Trace for any irreducible modulus, in any characteristic."""
    E = problem.curve
    p = E.field.characteristic
    if p == 0:
        return ell_trace_sep(problem, record)

    d, S = insep_decompose(problem.modulus, p)
    if d == 0:
        return ell_trace_sep(problem, record)
    pd = p**d
    Q = E.mul(pd, problem.point)
    rec = {"p": p, "d": d, "S_t": S, "Q": Q} if record else None
    if Q.is_infinity:
        return TraceWitness(E.infinity, BRANCH_INSEPARABLE_O, rec)
    try:
        xQ = subfield_coeffs(Q.x, pd, S.degree)
        yQ = subfield_coeffs(Q.y, pd, S.degree)
    except NotInSubfieldError as exc:
        raise InconsistentInputError(f"[p^d]P is not defined over K(theta^{pd}): {exc}") from exc
    sep = ell_trace_sep(TraceProblem(E, S, xQ, yQ), record)
    if record:
        rec.update({"x_Q(t)": xQ, "y_Q(t)": yQ, "sep": sep.intermediates or {}})
    return TraceWitness(sep.result, sep.branch, rec)


def trace(problem: TraceProblem) -> CurvePoint:
    """Shorthand for ``ell_trace(problem).result``."""
    return ell_trace(problem).result
