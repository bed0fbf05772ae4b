"""Operator calculus on truncated series: worked cases and properties."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from iwartin.errors import (
    DegreeCapExceeded,
    ParseError,
    PrecisionExhausted,
    SearchExhausted,
)
from iwartin.iwasawa import (
    CoefficientRing,
    ElementaryModule,
    TwistCharacter,
    char_ideal,
    coinvariants_finite,
    ext1_elementary,
    find_regular_twist,
    funceq_check,
    involute,
    module_twist,
    normal_form_equal,
    omega,
    twist,
    twist_lemma_check,
    wprep,
)

R3 = CoefficientRing(p=3, N=8, M=24)
R5 = CoefficientRing(p=5, N=8, M=24)


def series3(draw_len=9):
    return st.lists(st.integers(0, R3.pN - 1), min_size=1, max_size=draw_len
                    ).map(lambda cs: R3.series(cs))


def congruent(R, A, B, digits):
    q = R.p ** digits
    n = max(len(A.coeffs), len(B.coeffs))
    return all((x - y) % q == 0 for k in range(n)
               for x, y in zip(A.coeff(k), B.coeff(k)))


# -- worked cases -----------------------------------------------------------

def test_wprep_textbook_case():
    F = R3.series([3]) * R3.series([3, 1]) * R3.series([1, 1])
    w = wprep(F)
    assert w.mu == 1
    assert w.P.to_list() == [3, 1]
    assert w.unit.to_list() == [1, 1]
    assert w.precision == (7, 24)


def test_wprep_unit_series():
    w = wprep(R3.series([2, 5, 1]))
    assert (w.mu, w.lam) == (0, 0)
    assert w.P.to_list() == [1]


def test_wprep_zero_raises():
    with pytest.raises(PrecisionExhausted):
        wprep(R3.zero())
    with pytest.raises(PrecisionExhausted):
        wprep(R3.series([3**7]))  # all certified digits eaten by mu


def test_wprep_degree_guard():
    R = CoefficientRing(p=3, N=8, M=6)
    with pytest.raises(PrecisionExhausted):
        wprep(R.series([3, 3, 3, 3, 1]))  # lam = 4 > M - guard


def test_twist_of_x():
    k = TwistCharacter.kappa(R3)
    assert twist(R3.x(), k).to_list() == [3, 4]


def test_involute_of_x():
    # (1+X)^-1 - 1 = -X + X^2 - X^3 + ...
    got = involute(R3.x()).to_list()
    assert got[0] == 0
    assert all(c == (R3.pN - 1 if k % 2 else 1)
               for k, c in enumerate(got[1:], 1))


def test_omega_values():
    assert omega(R3, 0).to_list() == [0, 1]
    assert omega(R3, 1).to_list() == [0, 3, 3, 1]
    with pytest.raises(DegreeCapExceeded):
        omega(R3, 3)  # 27 > 24


def test_omega_divides_next():
    from iwartin.iwasawa import _poly_divmod
    for n in (0, 1):
        q, rem = _poly_divmod(omega(R3, n + 1), omega(R3, n))
        assert rem.is_zero()


def test_char_ideal_of_zero_module_is_one():
    assert char_ideal(ElementaryModule.zero(R3)).to_list() == [1]


def test_char_ideal_combines_factors():
    E = ElementaryModule(R3, (2,), ((R3.series([3, 1]), 1),))
    assert char_ideal(E).to_list() == [27, 9]


def test_coinvariants_worked_cases():
    E_x = ElementaryModule(R3, (), ((R3.x(), 1),))
    assert coinvariants_finite(E_x, 0) == "Infinite"
    E_xp = ElementaryModule(R3, (), ((R3.series([3, 1]), 1),))
    assert coinvariants_finite(E_xp, 0) == "Finite"
    E_p = ElementaryModule(R3, (2,), ())
    assert coinvariants_finite(E_p, 1) == "Finite"


def test_regular_twist_zero_module_is_trivial():
    t = find_regular_twist(ElementaryModule.zero(R3), 2)
    assert t.u == R3.o_from(1)


def test_regular_twist_moves_x_factor():
    E = ElementaryModule(R3, (), ((R3.x(), 1),))
    t = find_regular_twist(E, 2)
    assert t.u == R3.o_from(4)  # first candidate (1+p)^1 works
    assert coinvariants_finite(module_twist(E, t), 2) == "Finite"


def test_search_exhausted_in_tiny_ring():
    # not enough certified digits for any candidate to verify at p=3, N=3
    R = CoefficientRing(p=3, N=3, M=24)
    from iwartin.iwasawa import _xi
    E = ElementaryModule(R, (), ((_xi(R, 2), 1),))
    with pytest.raises(SearchExhausted):
        find_regular_twist(E, 2)


def test_twist_character_validation():
    with pytest.raises(ParseError):
        TwistCharacter.from_value(R3, 2)  # not 1 mod 3
    k = TwistCharacter.kappa(R3)
    assert k.is_kappa
    assert k.inverse().compose(k).u == R3.o_from(1)


def test_funceq_forward_and_perturbed():
    F_V = R3.series([9, 3, 27, 1, 2, 0, 5])
    k = TwistCharacter.kappa(R3)
    F_U = twist(involute(F_V), k.inverse())
    assert funceq_check(F_V, F_U, k) == "Pass"
    assert funceq_check(F_V + R3.series([3]), F_U, k) == "Fail"


def test_unramified_extension_roundtrip():
    R = CoefficientRing(p=5, f=2, N=6, M=20)
    a = R.o_from([2, 3])
    assert R.o_mul(a, R.o_inv(a)) == R.o_one()
    F = R.series([[5, 5], [1, 2], [0, 0], [3, 3]])
    w = wprep(F)
    rec = (w.P * w.unit).scale(R.p ** w.mu)
    assert congruent(R, rec, F, w.precision[0])


# -- properties -------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(series3())
def test_prop_wprep_reconstruction(F):
    try:
        w = wprep(F)
    except PrecisionExhausted:
        return
    rec = (w.P * w.unit).scale(R3.p ** w.mu)
    assert congruent(R3, rec, F, w.precision[0])


@settings(max_examples=60, deadline=None)
@given(series3())
def test_prop_involution_involutive(F):
    assert involute(involute(F)) == F


@settings(max_examples=60, deadline=None)
@given(series3(), st.integers(1, 3**7 - 1), st.integers(1, 3**7 - 1))
def test_prop_twist_composition(F, a, b):
    u = TwistCharacter.from_value(R3, 1 + 3 * a)
    v = TwistCharacter.from_value(R3, 1 + 3 * b)
    assert twist(twist(F, u), v) == twist(F, u.compose(v))


@settings(max_examples=60, deadline=None)
@given(series3(), st.integers(1, 3**7 - 1))
def test_prop_invariants_under_twist(F, a):
    u = TwistCharacter.from_value(R3, 1 + 3 * a)
    try:
        w1, w2 = wprep(F), wprep(twist(F, u))
    except PrecisionExhausted:
        return
    assert (w1.mu, w1.lam) == (w2.mu, w2.lam)


@settings(max_examples=60, deadline=None)
@given(series3())
def test_prop_invariants_under_involution(F):
    try:
        w1, w2 = wprep(F), wprep(involute(F))
    except PrecisionExhausted:
        return
    assert (w1.mu, w1.lam) == (w2.mu, w2.lam)


def _random_module(rng, R):
    factors = []
    for _ in range(rng.randint(0, 2)):
        lam = rng.randint(1, 3)
        coeffs = [R.p * rng.randrange(R.pN // R.p) for _ in range(lam)] + [1]
        factors.append((R.series(coeffs), rng.randint(1, 2)))
    mus = tuple(rng.randint(1, 2) for _ in range(rng.randint(0, 1)))
    return ElementaryModule(R, mus, tuple(factors))


def test_prop_twist_lemma_and_ext1():
    rng = random.Random(23)
    for _ in range(60):
        R = rng.choice([R3, R5])
        E = _random_module(rng, R)
        u = TwistCharacter.from_value(
            R, 1 + R.p * rng.randrange(1, R.pN // R.p))
        try:
            assert twist_lemma_check(E, u) == "Pass"
            assert normal_form_equal(char_ideal(ext1_elementary(E)),
                                     char_ideal(E))
        except PrecisionExhausted:
            continue


def test_prop_additivity_of_invariants():
    rng = random.Random(29)
    for _ in range(60):
        R = rng.choice([R3, R5])
        E1, E2 = _random_module(rng, R), _random_module(rng, R)
        Esum = ElementaryModule(R, E1.p_power_factors + E2.p_power_factors,
                                E1.poly_factors + E2.poly_factors)
        try:
            w1, w2, ws = (wprep(char_ideal(E)) for E in (E1, E2, Esum))
        except (PrecisionExhausted, DegreeCapExceeded):
            continue
        assert ws.mu == w1.mu + w2.mu
        assert ws.lam == w1.lam + w2.lam
