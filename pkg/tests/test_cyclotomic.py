"""Exact cyclotomic integer arithmetic, with sympy as an oracle."""

import random

import pytest
import sympy

from iwartin.cyclotomic import (
    CycloElement,
    _reduce,
    _reduce_slow,
    cyclotomic_polynomial,
    euler_phi,
)
from iwartin.errors import ConductorOverflow, NotAMultiple


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 15, 28, 36, 105])
def test_cyclotomic_polynomial_matches_sympy(m):
    ours = cyclotomic_polynomial(m)
    x = sympy.symbols("x")
    theirs = sympy.Poly(sympy.cyclotomic_poly(m, x), x).all_coeffs()[::-1]
    assert list(ours) == [int(c) for c in theirs]


@pytest.mark.parametrize("m,phi", [(1, 1), (12, 4), (28, 12), (36, 12)])
def test_euler_phi(m, phi):
    assert euler_phi(m) == phi


def test_reduce_fast_and_slow_agree():
    rng = random.Random(3)
    for _ in range(300):
        m = rng.choice([3, 4, 5, 7, 8, 9, 12, 28, 36])
        n = rng.randint(1, 2 * m)
        coords = [rng.randint(-10**6, 10**6) for _ in range(n)]
        assert _reduce(coords, m) == _reduce_slow(coords, m)


def test_reduce_big_integers():
    m = 12
    coords = [10**30, -(10**31), 7, 0, 10**29] + [1] * 10
    assert _reduce(coords, m) == _reduce_slow(coords, m)


def test_root_of_unity_order():
    z = CycloElement.zeta(5)
    acc = CycloElement.from_int(1)
    for _ in range(5):
        acc = acc * z
    assert acc == 1
    prod = z * z * z * z  # z^4 = z^-1
    assert prod == z.conj()


def test_geometric_sum_vanishes():
    # 1 + z + z^2 + ... + z^(m-1) = 0 for m > 1
    for m in (3, 4, 7, 12):
        total = CycloElement.from_int(0)
        for k in range(m):
            total = total + CycloElement.zeta(m, k)
        assert total == 0


def test_mixed_conductor_arithmetic():
    a = CycloElement.zeta(3)
    b = CycloElement.zeta(4)
    prod = a * b
    assert prod.conductor == 12
    assert prod == CycloElement.zeta(12, 7)  # 4/12 + 3/12 -> exponent 4+3


def test_conjugation_is_involution():
    rng = random.Random(5)
    for m in (5, 8, 12, 36):
        coords = [rng.randint(-50, 50) for _ in range(euler_phi(m))]
        el = CycloElement(m, tuple(coords))
        assert el.conj().conj() == el


def test_norm_is_rational_for_quadratic():
    # z_5 + z_5^-1 = (sqrt(5) - 1)/2 satisfies x^2 + x - 1 = 0
    g = CycloElement.zeta(5) + CycloElement.zeta(5, 4)
    assert g * g + g - 1 == 0


def test_embed_preserves_value():
    z3 = CycloElement.zeta(3)
    z12 = z3.embed(12)
    assert z12 == CycloElement.zeta(12, 4)
    with pytest.raises(NotAMultiple):
        z3.embed(8)


def test_conductor_cap():
    with pytest.raises(ConductorOverflow):
        CycloElement.zeta(101) * CycloElement.zeta(103)  # lcm 10403 > cap


def test_rationality_predicates():
    assert CycloElement.from_int(5, 12).is_rational()
    assert CycloElement.from_int(6).divided_by(3) == 2
    assert not CycloElement.zeta(5).is_rational()
    with pytest.raises(ValueError):
        CycloElement.zeta(5).rational_value()


def test_json_roundtrip():
    el = CycloElement.zeta(12, 5) + 3
    assert CycloElement.from_json(el.to_json()) == el


def test_oracle_random_products_via_complex_embedding():
    """Numerical oracle: exact products agree with complex floating point."""
    import cmath
    rng = random.Random(11)
    for _ in range(50):
        m = rng.choice([5, 7, 12])
        phi = euler_phi(m)
        a = CycloElement(m, tuple(rng.randint(-9, 9) for _ in range(phi)))
        b = CycloElement(m, tuple(rng.randint(-9, 9) for _ in range(phi)))
        z = cmath.exp(2j * cmath.pi / m)
        def ev(el):
            return sum(c * z**k for k, c in enumerate(el.coords))
        assert abs(ev(a * b) - ev(a) * ev(b)) < 1e-6
