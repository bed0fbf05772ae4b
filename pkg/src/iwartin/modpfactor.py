"""Factorization behaviour of integer polynomials modulo a prime.

The audit uses this to diagnose the Frobenius conjugacy class at p from
the degree profile of f mod p, and to flag non-squarefree reductions
(ramified p) without refusing them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotSquarefree


def _norm(coeffs, p: int) -> tuple:
    c = [x % p for x in coeffs]
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c)


def _polymul(a, b, p: int) -> tuple:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _norm(out, p)


def _polydivmod(a, b, p: int):
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return (0,), _norm(a, p)
    inv_lead = pow(b[-1], -1, p)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv_lead % p
        q[i - db] = c
        if c:
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return _norm(q, p), _norm(a[:db] if db else [0], p)


def _polymod(a, m, p: int) -> tuple:
    return _polydivmod(a, m, p)[1]


def _polygcd(a, b, p: int) -> tuple:
    a, b = _norm(a, p), _norm(b, p)
    while b != (0,):
        a, b = b, _polymod(a, b, p)
    if a == (0,):
        return a
    inv = pow(a[-1], -1, p)
    return tuple(x * inv % p for x in a)


def _powmod_x(q: int, m, p: int) -> tuple:
    """x^q mod (m, p) by square and multiply."""
    result = (1,)
    base = _polymod((0, 1), m, p)
    while q:
        if q & 1:
            result = _polymod(_polymul(result, base, p), m, p)
        base = _polymod(_polymul(base, base, p), m, p)
        q >>= 1
    return result


def _derivative(a, p: int) -> tuple:
    return _norm([i * c % p for i, c in enumerate(a)][1:] or [0], p)


def _radical(f, p: int) -> tuple:
    """Product of the distinct monic irreducible factors of monic f."""
    if len(f) == 1:
        return (1,)
    d = _derivative(f, p)
    if d == (0,):
        # f(x) = g(x^p) = (g(x))^p over the prime field; same radical as g
        g = tuple(f[i] for i in range(0, len(f), p))
        return _radical(g, p)
    c = _polygcd(f, d, p)
    w, r = _polydivmod(f, c, p)
    assert r == (0,)
    # w carries each factor whose exponent is prime to p, exactly once;
    # strip those from c, leaving the factors with p-divisible exponent
    while True:
        g = _polygcd(c, w, p)
        if g == (1,):
            break
        c, r = _polydivmod(c, g, p)
        assert r == (0,)
    if len(c) == 1:
        return w
    return _polymul(w, _radical(c, p), p)


@dataclass(frozen=True)
class PolyModP:
    """A nonzero polynomial over F_p, stored as ascending coefficients."""

    p: int
    coeffs: tuple

    @classmethod
    def from_integers(cls, coeffs, p: int) -> "PolyModP":
        c = _norm(coeffs, p)
        if c == (0,):
            raise ValueError("zero polynomial mod p")
        return cls(p, c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def monic(self) -> "PolyModP":
        inv = pow(self.coeffs[-1], -1, self.p)
        return PolyModP(self.p, tuple(c * inv % self.p for c in self.coeffs))

    def is_squarefree(self) -> bool:
        d = _derivative(self.coeffs, self.p)
        if d == (0,):
            return len(self.coeffs) == 1
        return _polygcd(self.coeffs, d, self.p) == (1,)

    def degree_profile(self) -> list[int]:
        """Sorted degrees of the irreducible factors; requires squarefree."""
        if not self.is_squarefree():
            raise NotSquarefree(f"not squarefree mod {self.p}: {self.coeffs}")
        return sorted(d for d, cnt in self.factor_degrees() for _ in range(cnt))

    def factor_degrees(self) -> list[tuple]:
        """Sorted (degree, multiplicity) pairs of the irreducible factors.

        Works for arbitrary input: the radical is peeled off repeatedly,
        and distinct-degree factorization (gcd with x^(p^d) - x) counts
        the factors of each layer.
        """
        agg: dict[int, int] = {}
        rest = self.monic().coeffs
        while len(rest) > 1:
            rad = _radical(rest, self.p)
            for d, cnt in _distinct_degree_counts(rad, self.p):
                agg[d] = agg.get(d, 0) + cnt
            rest, r = _polydivmod(rest, rad, self.p)
            assert r == (0,)
        return sorted(agg.items())


def _distinct_degree_counts(f, p: int) -> list[tuple]:
    """(degree d, number of degree-d irreducible factors) for squarefree f."""
    out = []
    rest = f
    d = 0
    while len(rest) - 1 > 0:
        d += 1
        if 2 * d > len(rest) - 1:
            out.append((len(rest) - 1, 1))
            break
        xq = _powmod_x(p**d, rest, p)
        diff = list(xq) + [0, 0]  # x^(p^d) - x mod rest
        diff[1] = (diff[1] - 1) % p
        g = _polygcd(_norm(diff, p), rest, p)
        if g != (1,):
            deg_g = len(g) - 1
            assert deg_g % d == 0
            out.append((d, deg_g // d))
            rest, r = _polydivmod(rest, g, p)
            assert r == (0,)
    return out


def frobenius_consistency(coeffs, p: int, cycle_type: list[int]) -> str:
    """Compare the mod-p degree profile with a claimed Frobenius cycle type.

    Returns "Consistent" or "Inconsistent" for squarefree reductions, and
    "RamifiedInputAccepted" when f mod p is not squarefree (the profile
    carries no Frobenius information then, so any claim is let through).
    """
    f = PolyModP.from_integers(coeffs, p)
    if not f.is_squarefree():
        return "RamifiedInputAccepted"
    profile = f.degree_profile()
    return "Consistent" if profile == sorted(cycle_type) else "Inconsistent"
