"""Exact arithmetic in Z[zeta_m], the value domain of all characters.

Elements are integer coordinate vectors in the power basis
1, zeta, ..., zeta^(phi(m)-1) after reduction mod the m-th cyclotomic
polynomial.  No floating point is used anywhere: character multiplicities
must come out as exact integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ConductorOverflow, NotAMultiple

CONDUCTOR_CAP = 10**4


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple:
    """Ascending coefficients of Phi_m, computed by exact division of
    x^m - 1 by the product of Phi_d over proper divisors d of m."""
    if m == 1:
        return (-1, 1)
    num = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            num = _polydiv_exact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _polydiv_exact(num: list, den: list) -> list:
    """Exact division of integer polynomials (den monic up to sign)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(num) - 1, len(den) - 2, -1):
        q, r = divmod(num[i], lead)
        assert r == 0, "non-exact cyclotomic division"
        out[i - len(den) + 1] = q
        for j, c in enumerate(den):
            num[i - len(den) + 1 + j] -= q * c
    assert all(c == 0 for c in num), "non-exact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def _reduction_matrix(m: int):
    """Row t (t < 2m) is zeta_m^t in the power basis, as int64, together
    with a bound for overflow-free matrix application."""
    red = zeta_power_reductions(m)
    R = np.array([red[t % m] for t in range(2 * m)], dtype=np.int64)
    colsum = int(np.abs(R).sum(axis=0).max()) or 1
    return R, (2**62) // colsum


def _reduce(coords, m: int) -> tuple:
    """Reduce an ascending coefficient list mod Phi_m (monic).

    Coefficients are arbitrary Python ints; a vectorized int64 path is
    taken when a rigorous bound shows it cannot overflow."""
    if m > 1 and len(coords) <= euler_phi(m):
        out = tuple(coords) + (0,) * (euler_phi(m) - len(coords))
        return out
    R, safe = _reduction_matrix(m) if m > 1 else (None, 0)
    if m > 1 and len(coords) <= 2 * m:
        mx = max((abs(c) for c in coords), default=0)
        if mx < safe:
            v = np.array(coords, dtype=np.int64)
            return tuple(int(x) for x in v @ R[:len(coords)])
    return _reduce_slow(coords, m)


def _reduce_slow(coords: list, m: int) -> tuple:
    phi = list(cyclotomic_polynomial(m))
    deg = len(phi) - 1
    coords = list(coords)
    for i in range(len(coords) - 1, deg - 1, -1):
        c = coords[i]
        if c:
            for j in range(len(phi)):
                coords[i - deg + j] -= c * phi[j]
        coords[i] = 0
    coords = coords[:deg]
    coords += [0] * (deg - len(coords))
    return tuple(coords)


@lru_cache(maxsize=None)
def zeta_power_reductions(m: int) -> tuple:
    """Row t is zeta_m^t expressed in the power basis, for t = 0..m-1."""
    rows = []
    for t in range(m):
        poly = [0] * (t + 1)
        poly[t] = 1
        rows.append(_reduce_slow(poly, m))
    return tuple(rows)


def euler_phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


@dataclass(frozen=True)
class CycloElement:
    """An element of Z[zeta_m] in the power basis mod Phi_m."""

    conductor: int
    coords: tuple

    def __post_init__(self):
        assert len(self.coords) == euler_phi(self.conductor)

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_int(cls, n: int, conductor: int = 1) -> "CycloElement":
        coords = [0] * euler_phi(conductor)
        coords[0] = n
        return cls(conductor, tuple(coords))

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "CycloElement":
        return cls.from_root_multiplicities(m, {k % m: 1})

    @classmethod
    def from_root_multiplicities(cls, m: int, counts) -> "CycloElement":
        """Sum of counts[t] * zeta_m^t; counts is a dict or length-m list."""
        poly = [0] * m
        if isinstance(counts, dict):
            for t, c in counts.items():
                poly[t % m] += c
        else:
            for t, c in enumerate(counts):
                poly[t % m] += c
        return cls(m, _reduce(poly, m))

    # -- ring structure ---------------------------------------------------

    def _common(self, other: "CycloElement"):
        m = math.lcm(self.conductor, other.conductor)
        if m > CONDUCTOR_CAP:
            raise ConductorOverflow(f"lcm conductor {m} exceeds cap")
        return self.embed(m), other.embed(m)

    def __add__(self, other):
        other = _coerce(other)
        a, b = self._common(other)
        return CycloElement(a.conductor,
                            tuple(x + y for x, y in zip(a.coords, b.coords)))

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __neg__(self):
        return CycloElement(self.conductor, tuple(-x for x in self.coords))

    def __mul__(self, other):
        other = _coerce(other)
        a, b = self._common(other)
        n = len(a.coords)
        ma = max(abs(x) for x in a.coords)
        mb = max(abs(x) for x in b.coords)
        if ma * mb * n < 2**60:
            prod = np.convolve(np.array(a.coords, dtype=np.int64),
                               np.array(b.coords, dtype=np.int64))
            prod = [int(x) for x in prod]
        else:
            prod = [0] * (2 * n - 1)
            for i, x in enumerate(a.coords):
                if x:
                    for j, y in enumerate(b.coords):
                        if y:
                            prod[i + j] += x * y
        return CycloElement(a.conductor, _reduce(prod, a.conductor))

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return _coerce(other) - self

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycloElement.from_int(other)
        if not isinstance(other, CycloElement):
            return NotImplemented
        a, b = self._common(other)
        return a.coords == b.coords

    def __hash__(self):
        return hash((self.conductor, self.coords))

    # -- structure maps ----------------------------------------------------

    def embed(self, m_new: int) -> "CycloElement":
        """Value-preserving embedding zeta_m -> zeta_{m_new}^(m_new/m)."""
        if m_new % self.conductor != 0:
            raise NotAMultiple(
                f"{m_new} is not a multiple of conductor {self.conductor}")
        if m_new == self.conductor:
            return self
        return _embed_cached(self, m_new)

    def conj(self) -> "CycloElement":
        """Complex conjugation: zeta -> zeta^-1."""
        m = self.conductor
        poly = [0] * m
        for i, c in enumerate(self.coords):
            poly[(m - i) % m] += c
        return CycloElement(m, _reduce(poly, m))

    # -- rationality ----------------------------------------------------

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def rational_value(self) -> int:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    def divided_by(self, n: int) -> Fraction:
        """Exact rational quotient; requires the element to be rational."""
        return Fraction(self.rational_value(), n)

    # -- serialization -------------------------------------------------

    def to_json(self) -> dict:
        return {"conductor": self.conductor, "coords": list(self.coords)}

    @classmethod
    def from_json(cls, data: dict) -> "CycloElement":
        return cls(int(data["conductor"]), tuple(int(c) for c in data["coords"]))

    def __repr__(self):
        return f"CycloElement(m={self.conductor}, {list(self.coords)})"


@lru_cache(maxsize=65536)
def _embed_cached(elem: CycloElement, m_new: int) -> CycloElement:
    step = m_new // elem.conductor
    poly = [0] * m_new
    for i, c in enumerate(elem.coords):
        poly[i * step] += c
    return CycloElement(m_new, _reduce(poly, m_new))


def _coerce(x) -> CycloElement:
    if isinstance(x, CycloElement):
        return x
    if isinstance(x, int):
        return CycloElement.from_int(x)
    raise TypeError(f"cannot coerce {x!r} to CycloElement")
