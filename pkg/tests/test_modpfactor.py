"""Mod-p factor degrees, with sympy factor_list as the oracle."""

import random

import pytest
import sympy

from iwartin.errors import NotSquarefree
from iwartin.modpfactor import PolyModP, frobenius_consistency

x = sympy.symbols("x")


def _oracle_factor_degrees(coeffs, p):
    poly = sympy.Poly(list(reversed(coeffs)), x, modulus=p, symmetric=False)
    agg = {}
    for fac, mult in poly.factor_list()[1]:
        agg[fac.degree()] = agg.get(fac.degree(), 0) + mult
    return sorted(agg.items())


def test_factor_degrees_against_sympy_random():
    rng = random.Random(17)
    for _ in range(400):
        p = rng.choice([3, 5, 7, 11, 13])
        deg = rng.randint(1, 8)
        coeffs = [rng.randrange(p) for _ in range(deg)] + [1]
        ours = PolyModP.from_integers(coeffs, p).factor_degrees()
        assert ours == _oracle_factor_degrees(coeffs, p), (coeffs, p)


def test_pth_power_inputs():
    # (x+1)^9 over F_3 has zero derivative twice over
    coeffs = sympy.Poly((x + 1)**9, x, modulus=3,
                        symmetric=False).all_coeffs()[::-1]
    f = PolyModP.from_integers([int(c) for c in coeffs], 3)
    assert f.factor_degrees() == [(1, 9)]
    assert not f.is_squarefree()


def test_degree_profile_requires_squarefree():
    f = PolyModP.from_integers([0, 0, 1], 5)  # x^2
    with pytest.raises(NotSquarefree):
        f.degree_profile()


@pytest.mark.parametrize("coeffs,p,profile", [
    ([1, 2, 0, 1], 7, [3]),           # cubic, inert
    ([-1, -1, 0, 0, 1], 7, [1, 3]),
    ([-3, 0, -5, 0, 0, 1], 17, [5]),
    ([-2, 0, 0, 0, 0, 1], 11, [5]),
    ([-3, -2, -1, 0, 0, 1], 11, [5]),
])
def test_fixed_profiles(coeffs, p, profile):
    assert PolyModP.from_integers(coeffs, p).degree_profile() == profile


def test_frobenius_consistency_verdicts():
    assert frobenius_consistency([1, 2, 0, 1], 7, [3]) == "Consistent"
    assert frobenius_consistency([1, 2, 0, 1], 7, [1, 2]) == "Inconsistent"
    # x^5 - x^2 - 2x - 3 is not squarefree mod 29
    assert (frobenius_consistency([-3, -2, -1, 0, 0, 1], 29, [2, 2, 1])
            == "RamifiedInputAccepted")


def test_zero_polynomial_rejected():
    with pytest.raises(ValueError):
        PolyModP.from_integers([7, 14], 7)
