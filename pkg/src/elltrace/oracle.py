"""Ground truth over finite fields and random instance generation.

Over a prime field K = F_p every embedding of L = F_p[t]/T into an
algebraic closure is a power of Frobenius, so the trace of P is simply

    P + F(P) + F^2(P) + ... + F^(n-1)(P),   F(x, y) = (x^p, y^p),

computed entirely inside L.  This is independent of the Riemann-Roch
machinery in :mod:`elltrace.trace` and is what the differential tests
compare against.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import NamedTuple

from .curve import CurvePoint, WeierstrassCurve
from .exceptions import GenerationError, InconsistentInputError, SingularCurveError
from .extfield import Extension, ExtensionElement, is_irreducible
from .fields import FieldScalar, PrimeField, RationalFunctionField
from .linalg import Matrix, kernel_echelon, last_nonzero
from .poly import Polynomial
from .trace import TraceProblem

DEFAULT_CHARS = (2, 3, 5, 7, 101)
DEFAULT_DEGREES = (2, 12)


def frobenius_orbit_sum(problem: TraceProblem) -> CurvePoint:
    """Sum of the n Frobenius conjugates of P, as a point over L."""
    K = problem.field
    if not isinstance(K, PrimeField):
        raise TypeError("the Frobenius oracle needs a prime ground field")
    E, P = problem.curve, problem.point
    p = K.p
    total = E.infinity
    conj = P
    for _ in range(problem.degree):
        total = E.add(total, conj)
        conj = conj.map_coordinates(lambda c: c**p)
    return total


def frobenius_trace(problem: TraceProblem) -> CurvePoint:
    """Trace of the problem's point by direct Frobenius-orbit summation."""
    E = problem.curve
    total = frobenius_orbit_sum(problem)
    if total.is_infinity:
        return E.infinity
    if not (total.x.is_constant() and total.y.is_constant()):
        raise InconsistentInputError(
            f"orbit sum {total} is not defined over the ground field; is the modulus irreducible?"
        )
    return E.point(total.x.constant(), total.y.constant())


# -- finite field helpers -------------------------------------------------------


def random_irreducible(K: PrimeField, n: int, rng: random.Random, max_tries: int = 10_000) -> Polynomial:
    """Uniform-ish random monic irreducible polynomial of degree n over F_p."""
    for _ in range(max_tries):
        T = Polynomial(K, [K.random(rng) for _ in range(n)] + [1])
        if n > 1 and not T.raw[0]:
            continue
        if is_irreducible(T):
            return T
    raise GenerationError(f"no irreducible polynomial of degree {n} over {K} found in {max_tries} tries")


def sqrt(a: ExtensionElement, rng: random.Random):
    """A square root of ``a`` in a finite extension of odd characteristic, or None.

    Tonelli-Shanks in the multiplicative group of order q - 1 = 2^s * odd.
    """
    L = a.parent
    q = L.order
    if q % 2 == 0:
        raise ValueError("odd characteristic required")
    if not a:
        return a
    if q % 4 == 3:
        r = a ** ((q + 1) // 4)
        return r if r * r == a else None
    s, odd = 0, q - 1
    while odd % 2 == 0:
        odd //= 2
        s += 1
    one = L.one()
    w = a ** ((odd - 1) // 2)
    t, r = w * w * a, w * a
    m, c = s, _two_power_generator(L, odd, rng)
    while t != one:
        i, t2 = 0, t
        while t2 != one:
            t2 = t2 * t2
            i += 1
        if i == m:
            return None
        b = c
        for _ in range(m - i - 1):
            b = b * b
        m, c = i, b * b
        t, r = t * c, r * b
    return r


def _two_power_generator(L, odd, rng):
    # z^odd for a quadratic non-residue z generates the 2-Sylow subgroup.
    cached = getattr(L, "_sylow2_generator", None)
    if cached is None:
        half = (L.order - 1) // 2
        one = L.one()
        while True:
            z = L.random(rng)
            if z and z**half != one:
                break
        cached = z**odd
        L._sylow2_generator = cached
    return cached


def solve_artin_schreier(w: ExtensionElement):
    """Some z with z^2 + z = w in an extension of F_2, or None.

    z -> z^2 + z is F_2-linear, so this is a linear system on the power
    basis, solved with an echelon kernel of [A | -w].
    """
    L = w.parent
    K = L.field
    basis = [L.from_raw_rep([0] * i + [1]) for i in range(L.degree)]
    columns = [(b * b + b).vector() for b in basis] + [(-w).vector()]
    Z = kernel_echelon(Matrix.from_columns(K, columns, L.degree))
    for col in Z.columns():
        if last_nonzero(col) == L.degree:
            return L.from_raw_rep(col[: L.degree])
    return None


def solve_y(curve: WeierstrassCurve, x, rng: random.Random):
    """Return the y-coordinates over L of points with abscissa x (0, 1 or 2 of them)."""
    L = x.parent
    a1, a2, a3, a4, a6 = curve.coefficients
    b = a1 * x + a3
    c = x * x * x + a2 * x * x + a4 * x + a6
    if curve.field.characteristic == 2:
        if not b:
            y = c ** (L.order // 2)
            return [y]
        z = solve_artin_schreier(c / (b * b))
        if z is None:
            return []
        y = b * z
        return [y, y + b]
    D = 4 * c + b * b
    root = sqrt(D, rng)
    if root is None:
        return []
    ys = {(root - b) / 2, (-root - b) / 2}
    return sorted(ys, key=lambda e: e.rep)


def random_point(curve: WeierstrassCurve, L: Extension, rng: random.Random, attempts: int = 64, x_sampler=None):
    """Random affine point of E(L) by sampling x and solving for y."""
    sample = x_sampler or L.random
    for _ in range(attempts):
        x = sample(rng)
        ys = solve_y(curve, x, rng)
        if ys:
            return curve.point(x, rng.choice(ys))
    raise GenerationError(f"no point of {curve} over {L} found in {attempts} attempts")


def subfield_sampler(L: Extension, m: int):
    """Sampler for uniform elements of the subfield F_(p^m) inside L."""
    p = L.field.p
    e = (L.order - 1) // (p**m - 1)

    def sample(rng):
        if rng.randrange(p**m) == 0:
            return L.zero()
        z = L.random(rng)
        while not z:
            z = L.random(rng)
        return z**e

    return sample


def in_subfield(a: ExtensionElement, m: int) -> bool:
    return a ** (a.parent.field.p**m) == a


def random_curve(K, rng: random.Random, max_tries: int = 1000) -> WeierstrassCurve:
    for _ in range(max_tries):
        try:
            return WeierstrassCurve(K, *(K(K.random(rng)) for _ in range(5)))
        except SingularCurveError:
            continue
    raise GenerationError(f"no nonsingular curve over {K} found")


def find_embedding(small: Polynomial, L: Extension) -> ExtensionElement:
    """A root of ``small`` in the finite extension L, by exhaustive search."""
    for beta in L.elements():
        if not small(beta):
            return beta
    raise ValueError(f"{small.to_str('t')} has no root in {L}")


# -- instance generation ----------------------------------------------------------

MODES = ("general", "constant-x", "subfield-x", "frobenius-difference")


class Instance(NamedTuple):
    problem: TraceProblem
    mode: str
    p: int
    degree: int


@dataclass
class InstanceGenerator:
    """Deterministic stream of random separable trace problems over F_p.

    ``chars`` lists the characteristics to draw from and ``degrees`` is an
    inclusive (lo, hi) range for deg T.  Modes are mixed so that every
    branch of the separable algorithm is exercised:

    - ``general``: x uniform in L;
    - ``constant-x``: x in F_p (trivial branches);
    - ``subfield-x``: x in a proper subfield, which makes V = 0 likely;
    - ``frobenius-difference``: P - F(P), whose trace is O.
    """

    seed: int = 0
    chars: tuple = DEFAULT_CHARS
    degrees: tuple = DEFAULT_DEGREES
    weights: tuple = (0.45, 0.1, 0.3, 0.15)
    rng: random.Random = field(init=False, repr=False)

    def __post_init__(self):
        self.rng = random.Random(self.seed)
        lo, hi = self.degrees
        if lo < 1 or hi < lo:
            raise ValueError(f"invalid degree range {self.degrees}")

    def sample(self) -> Instance:
        rng = self.rng
        p = rng.choice(list(self.chars))
        n = rng.randint(*self.degrees)
        K = PrimeField(p)
        T = random_irreducible(K, n, rng)
        L = Extension(T)
        mode = rng.choices(MODES, weights=self.weights)[0] if n > 1 else "constant-x"
        for _ in range(16):
            E = random_curve(K, rng)
            try:
                P = self._point(mode, E, L, n, rng)
            except GenerationError:
                continue
            if not P.is_infinity:
                return Instance(TraceProblem.from_point(E, P), mode, p, n)
        raise GenerationError(f"could not build a {mode!r} instance over {L}")

    def generate(self) -> TraceProblem:
        return self.sample().problem

    def _point(self, mode, E, L, n, rng):
        if mode == "constant-x":
            return random_point(E, L, rng, x_sampler=subfield_sampler(L, 1))
        if mode == "subfield-x":
            divisors = [m for m in range(1, n) if n % m == 0]
            m = divisors[-1] if rng.random() < 0.6 else rng.choice(divisors)
            return random_point(E, L, rng, x_sampler=subfield_sampler(L, m))
        P = random_point(E, L, rng)
        if mode == "frobenius-difference":
            p = L.field.p
            return E.add(P, E.neg(P.map_coordinates(lambda c: c**p)))
        return P


def generate_instance(gen: InstanceGenerator) -> TraceProblem:
    return gen.generate()


# -- instances over arbitrary fields ------------------------------------------------


def curve_through(L: Extension, x, y, rational_points=(), rng=None, max_tries=32) -> WeierstrassCurve:
    """A nonsingular curve over K passing through (x, y) in E(L) and the given K-points.

    The curve equation is linear in (a1, a2, a3, a4, a6), so the
    coefficients come from an echelon kernel: one row per power-basis
    coordinate of the residual at (x, y), plus one row per rational point.
    A random combination of the homogeneous solutions is added so that
    repeated calls give different curves.  Needs deg T + len(rational_points)
    to be at most 5 for a solution to exist in general.
    """
    K = L.field
    rng = rng or random.Random(0)
    x, y = L(x), L(y)
    cols = [x * y, -(x * x), y, -x, -L.one(), y * y - x * x * x]
    rows = [[col.vector()[i] for col in cols] for i in range(L.degree)]
    for px, py in rational_points:
        px, py = K(px), K(py)
        rows.append([K.convert(v) for v in (px * py, -(px * px), py, -px, -1, py * py - px * px * px)])
    Z = kernel_echelon(Matrix.from_raw(K, rows, 6))
    basis = Z.columns()
    particular = [c for c in basis if last_nonzero(c) == 5]
    homogeneous = [c for c in basis if last_nonzero(c) < 5]
    if not particular:
        raise GenerationError("no curve through the requested points")
    for _ in range(max_tries):
        coeffs = [FieldScalar(K, c) for c in particular[0][:5]]
        for h in homogeneous:
            w = FieldScalar(K, K.random(rng))
            coeffs = [a + w * FieldScalar(K, c) for a, c in zip(coeffs, h[:5])]
        try:
            return WeierstrassCurve(K, *coeffs)
        except SingularCurveError:
            if not homogeneous:
                break
    raise GenerationError("every curve through the requested points is singular")


def eisenstein_modulus(K: RationalFunctionField, sep_degree: int, d: int, rng: random.Random) -> Polynomial:
    """T = S(t^(p^d)) with S monic of degree ``sep_degree`` and Eisenstein at l.

    Every non-leading coefficient of S is l times a constant and the
    constant term is l times a nonzero constant, so T is Eisenstein at
    the prime l of k[l] as well, hence irreducible over k(l).
    """
    p = K.characteristic
    if p == 0 and d:
        raise ValueError("inseparable moduli need positive characteristic")
    base = K.base
    lam = K.gen()
    coeffs = [lam * K(base.random(rng)) for _ in range(sep_degree)]
    while not coeffs[0]:
        coeffs[0] = lam * K(base.random(rng))
    q = p**d if d else 1
    raw = [K(0)] * (sep_degree * q + 1)
    for i, c in enumerate(coeffs):
        raw[i * q] = c
    raw[-1] = K(1)
    return Polynomial(K, raw)


def random_element(L: Extension, rng: random.Random, lam_degree: int = 2):
    """Random element of L with small coefficients (polynomials in l of low degree)."""
    K = L.field
    if isinstance(K, RationalFunctionField):
        lam = K.gen()

        def coeff():
            return sum((K(K.base.random(rng)) * lam**i for i in range(lam_degree + 1)), K(0))
    else:
        def coeff():
            return FieldScalar(K, K.random(rng))
    return L([coeff() for _ in range(L.degree)])


def fitted_problem(modulus: Polynomial, rng: random.Random, rational_points=(), attempts: int = 32,
                   lam_degree: int = 2):
    """A TraceProblem over ``modulus`` with a random non-constant point and a curve fitted to it.

    Over k(l) the coordinates have coefficients of degree ``lam_degree`` in l;
    keep it small over Q(l), where heights grow quickly.
    """
    L = Extension(modulus)
    for _ in range(attempts):
        x, y = random_element(L, rng, lam_degree), random_element(L, rng, lam_degree)
        if x.is_constant():
            continue
        try:
            E = curve_through(L, x, y, rational_points, rng)
        except GenerationError:
            continue
        return TraceProblem(E, modulus, x.polynomial(), y.polynomial())
    raise GenerationError(f"could not fit a curve over {L}")
