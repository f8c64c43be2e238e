import itertools
import random

import pytest
import sympy

from elltrace.curve import WeierstrassCurve
from elltrace.exceptions import GenerationError, InconsistentInputError, ReducibleModulusError
from elltrace.extfield import Extension, is_irreducible
from elltrace.fields import PrimeField, RationalField, RationalFunctionField
from elltrace.oracle import (
    DEFAULT_CHARS,
    MODES,
    InstanceGenerator,
    curve_through,
    eisenstein_modulus,
    find_embedding,
    fitted_problem,
    frobenius_orbit_sum,
    frobenius_trace,
    in_subfield,
    random_curve,
    random_irreducible,
    random_point,
    solve_artin_schreier,
    solve_y,
    sqrt,
    subfield_sampler,
)
from elltrace.poly import Polynomial
from elltrace.trace import TraceProblem, ell_trace, insep_decompose

from conftest import load_problem

F2, F3, F5 = PrimeField(2), PrimeField(3), PrimeField(5)


def test_generator_is_deterministic():
    g1, g2 = InstanceGenerator(seed=9), InstanceGenerator(seed=9)
    for _ in range(15):
        assert repr(g1.generate()) == repr(g2.generate())
    assert repr(InstanceGenerator(seed=9).generate()) != repr(InstanceGenerator(seed=10).generate())


def test_generator_respects_characteristics_and_degrees():
    gen = InstanceGenerator(seed=1, chars=(3, 7), degrees=(2, 5))
    modes = set()
    for _ in range(60):
        inst = gen.sample()
        assert inst.p in (3, 7) and 2 <= inst.degree <= 5
        assert inst.problem.degree == inst.degree
        assert is_irreducible(inst.problem.modulus)
        assert inst.problem.point.on_curve()
        modes.add(inst.mode)
    assert modes == set(MODES)
    assert DEFAULT_CHARS == (2, 3, 5, 7, 101)


def test_degree_one_plan_gives_rational_points():
    gen = InstanceGenerator(seed=2, chars=(5,), degrees=(1, 1))
    for _ in range(10):
        inst = gen.sample()
        assert inst.mode == "constant-x"
        assert inst.problem.point.x.is_constant() and inst.problem.point.y.is_constant()
        assert frobenius_trace(inst.problem) == ell_trace(inst.problem).result


def test_invalid_degree_range():
    with pytest.raises(ValueError):
        InstanceGenerator(degrees=(3, 2))


def test_oracle_on_second_worked_example(example2):
    assert frobenius_trace(example2) == example2.curve.point(2, 1)


def test_oracle_rejects_non_prime_fields(example1):
    with pytest.raises(TypeError):
        frobenius_trace(example1)


def test_oracle_on_rational_point():
    E = WeierstrassCurve(F5, 0, 0, 0, 1, 1)
    T = Polynomial.parse("t^3 + t + 1", F5)
    for P in E.rational_points()[1:]:
        problem = TraceProblem(E, T, Polynomial.constant(F5, P.x.value), Polynomial.constant(F5, P.y.value))
        assert frobenius_trace(problem) == 3 * P


def test_orbit_sum_is_frobenius_stable():
    rng = random.Random(3)
    for _ in range(20):
        p = rng.choice([2, 3, 5, 7])
        K = PrimeField(p)
        L = Extension(random_irreducible(K, rng.randint(2, 6), rng))
        E = random_curve(K, rng)
        P = random_point(E, L, rng)
        total = frobenius_orbit_sum(TraceProblem.from_point(E, P))
        assert total == total.map_coordinates(lambda c: c**p)


def test_orbit_sum_does_not_depend_on_order():
    # summing the conjugates in a shuffled order gives the same point
    rng = random.Random(4)
    K = F3
    L = Extension(random_irreducible(K, 5, rng))
    E = random_curve(K, rng)
    for _ in range(5):
        P = random_point(E, L, rng)
        conj = [P]
        for _ in range(4):
            conj.append(conj[-1].map_coordinates(lambda c: c**3))
        rng.shuffle(conj)
        total = E.infinity
        for C in conj:
            total = total + C
        assert total == frobenius_orbit_sum(TraceProblem.from_point(E, P))


def test_oracle_flags_reducible_modulus():
    # over the non-field F_5[t]/(t^4 + 1) the orbit sum need not be constant
    E = WeierstrassCurve(F5, 0, 0, 0, 1, 1)
    T = Polynomial.parse("t^4 + 1", F5)
    L = Extension(T)
    squares = {y * y: y for y in L.elements()}
    flagged = 0
    for x in itertools.islice(L.elements(), 0, 625, 3):
        y = squares.get(x**3 + x + 1)
        if y is None:
            continue
        try:
            frobenius_trace(TraceProblem(E, T, x.polynomial(), y.polynomial()))
        except (InconsistentInputError, ReducibleModulusError):
            flagged += 1
    assert flagged


# -- subfield scaling ---------------------------------------------------------------------


def _subfield_case(p, a, b, rng):
    K = PrimeField(p)
    Ts = random_irreducible(K, a, rng)
    Tb = random_irreducible(K, a * b, rng)
    Ls, Lb = Extension(Ts), Extension(Tb)
    beta = find_embedding(Ts, Lb)
    E = random_curve(K, rng)
    P = random_point(E, Ls, rng)
    big = TraceProblem(E, Tb, P.x.polynomial()(beta).polynomial(), P.y.polynomial()(beta).polynomial())
    return TraceProblem.from_point(E, P), big


@pytest.mark.parametrize("p, a, b", [(2, 2, 2), (2, 2, 3), (3, 2, 2), (2, 3, 2), (5, 2, 2), (3, 1, 3), (2, 4, 2)])
def test_subfield_scaling(p, a, b):
    rng = random.Random(p * 100 + a * 10 + b)
    for _ in range(3):
        small, big = _subfield_case(p, a, b, rng)
        expected = b * ell_trace(small).result
        assert ell_trace(big).result == expected
        assert frobenius_trace(big) == expected


def test_find_embedding():
    L = Extension(Polynomial.parse("t^4 + t + 1", F2))
    small = Polynomial.parse("t^2 + t + 1", F2)
    beta = find_embedding(small, L)
    assert not small(beta) and in_subfield(beta, 2)
    with pytest.raises(ValueError):
        find_embedding(Polynomial.parse("t^3 + t + 1", F2), L)


# -- square roots and point sampling ----------------------------------------------------------


@pytest.mark.parametrize("p, n", [(3, 4), (5, 3), (7, 2), (101, 2), (13, 3)])
def test_sqrt(p, n):
    K = PrimeField(p)
    rng = random.Random(p + n)
    L = Extension(random_irreducible(K, n, rng))
    non_squares = 0
    for _ in range(40):
        a = L.random(rng)
        r = sqrt(a, rng)
        if r is None:
            non_squares += 1
            assert a ** ((L.order - 1) // 2) != L.one()
        else:
            assert r * r == a
    assert sqrt(L.zero(), rng) == L.zero()
    assert non_squares


def test_sqrt_needs_odd_characteristic():
    L = Extension(Polynomial.parse("t^2 + t + 1", F2))
    with pytest.raises(ValueError):
        sqrt(L.gen, random.Random(0))


def test_artin_schreier():
    L = Extension(Polynomial.parse("t^5 + t^2 + 1", F2))
    solvable = 0
    for w in L.elements():
        z = solve_artin_schreier(w)
        if z is None:
            continue
        solvable += 1
        assert z * z + z == w
    # z -> z^2 + z has kernel F_2, so half of L is in its image
    assert solvable == L.order // 2


@pytest.mark.parametrize("p", [2, 3, 5])
def test_solve_y_finds_every_point(p):
    K = PrimeField(p)
    rng = random.Random(p)
    L = Extension(random_irreducible(K, 2, rng))
    E = random_curve(K, rng)
    brute = {}
    for x in L.elements():
        brute[x] = sorted((y for y in L.elements() if E.contains(x, y)), key=lambda e: e.rep)
    for x, ys in brute.items():
        assert sorted(solve_y(E, x, rng), key=lambda e: e.rep) == ys


def test_subfield_sampler():
    rng = random.Random(1)
    L = Extension(random_irreducible(F3, 6, rng))
    sample = subfield_sampler(L, 2)
    for _ in range(20):
        assert in_subfield(sample(rng), 2)


def test_random_point_failure_is_reported():
    # y^2 + y = x^3 + x + 1 over F_2 ... restricted to x in F_2 there are no points
    E = WeierstrassCurve(F2, 0, 0, 1, 1, 1)
    L = Extension(Polynomial.parse("t^3 + t + 1", F2))
    with pytest.raises(GenerationError):
        random_point(E, L, random.Random(0), attempts=8, x_sampler=subfield_sampler(L, 1))


# -- instances over other fields ----------------------------------------------------------------


def test_curve_through_points():
    rng = random.Random(2)
    Q = RationalField()
    L = Extension(Polynomial.parse("t^2 - 2", Q))
    x, y = L([1, 1]), L([3, -1])
    E = curve_through(L, x, y, rational_points=[(0, 1), (2, 3)], rng=rng)
    assert E.contains(x, y)
    assert E.contains(Q(0), Q(1)) and E.contains(Q(2), Q(3))


def test_eisenstein_modulus():
    rng = random.Random(3)
    for p, k, d in ((2, 1, 1), (2, 3, 2), (3, 2, 1), (5, 2, 0)):
        K = RationalFunctionField(PrimeField(p))
        T = eisenstein_modulus(K, k, d, rng)
        assert T.degree == k * p**d
        assert insep_decompose(T, p) == (d, insep_decompose(T, p)[1])
        assert insep_decompose(T, p)[1].degree == k
        # Eisenstein at l: l divides every lower coefficient, l^2 does not divide the constant term
        for c in T.raw[:-1]:
            assert c.den == (1,) and (not c or not c.num[0])
        assert len(T.raw[0].num) == 2 and T.raw[0].num[1]
    with pytest.raises(ValueError):
        eisenstein_modulus(RationalFunctionField(RationalField()), 2, 1, rng)


def test_fitted_problem_over_rationals():
    problem = fitted_problem(Polynomial.parse("t^3 - 2", RationalField()), random.Random(0))
    assert not problem.point.x.is_constant()
    assert problem.point.on_curve()


def test_fixtures_agree_with_oracle():
    problem = load_problem("v_zero_f5.json")
    assert frobenius_trace(problem).is_infinity
    assert sympy.Poly([1, 3, 1, 3, 1], sympy.Symbol("t"), modulus=5).is_irreducible
