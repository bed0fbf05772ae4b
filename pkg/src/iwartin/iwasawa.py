"""Finite-precision exact arithmetic in O[[X]] and its operator calculus.

O is Z_p or an unramified extension, held as (Z/p^N)[y]/(g(y)); series are
truncated at X-degree M.  The convention throughout: the topological
generator corresponds to 1+X, twists substitute X -> u(1+X)-1, and the
involution substitutes X -> (1+X)^(-1)-1.

Every answer is certified at a stated precision or the operation raises
PrecisionExhausted; there are no best-effort results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    DegreeCapExceeded,
    ParseError,
    PrecisionExhausted,
    SearchExhausted,
)

GUARD_X = 4   # X-degrees reserved below M for Weierstrass extraction
GUARD_P = 2   # p-digits dropped in normal-form comparison


@lru_cache(maxsize=None)
def _modulus_poly(p: int, f: int) -> tuple:
    """Non-leading coefficients of the smallest monic irreducible of
    degree f over F_p (lexicographic in ascending coefficients)."""
    if f == 1:
        return (0,)
    from .modpfactor import PolyModP
    for code in range(p**f):
        lower = [(code // p**i) % p for i in range(f)]
        poly = PolyModP.from_integers(lower + [1], p)
        if poly.factor_degrees() == [(f, 1)]:
            return tuple(lower)
    raise AssertionError("no irreducible polynomial found")


@dataclass(frozen=True)
class CoefficientRing:
    """O = unramified degree-f extension of Z_p, mod p^N; series mod X^(M+1)."""

    p: int
    f: int = 1
    N: int = 8
    M: int = 24

    def __post_init__(self):
        assert self.p >= 3 and self.f >= 1 and self.N >= 1 and self.M >= 1
        object.__setattr__(self, "_pN", self.p ** self.N)

    @property
    def pN(self) -> int:
        return self._pN

    @property
    def modulus(self) -> tuple:
        return _modulus_poly(self.p, self.f)

    # -- O-element arithmetic (length-f tuples mod p^N) -------------------

    def o_from(self, x) -> tuple:
        if isinstance(x, int):
            return (x % self.pN,) + (0,) * (self.f - 1)
        x = tuple(int(c) % self.pN for c in x)
        if len(x) != self.f:
            raise ParseError(f"need {self.f} coordinates, got {len(x)}")
        return x

    def o_zero(self) -> tuple:
        return (0,) * self.f

    def o_one(self) -> tuple:
        return self.o_from(1)

    def o_add(self, a, b) -> tuple:
        return tuple((x + y) % self.pN for x, y in zip(a, b))

    def o_neg(self, a) -> tuple:
        return tuple(-x % self.pN for x in a)

    def o_mul(self, a, b) -> tuple:
        if self.f == 1:
            return (a[0] * b[0] % self._pN,)
        prod = [0] * (2 * self.f - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return self._o_reduce(prod)

    def _o_reduce(self, prod: list) -> tuple:
        g = self.modulus
        for k in range(len(prod) - 1, self.f - 1, -1):
            c = prod[k]
            if c:
                for i, gi in enumerate(g):
                    prod[k - self.f + i] -= c * gi
            prod[k] = 0
        return tuple(c % self.pN for c in prod[:self.f])

    def o_val(self, a) -> int:
        """min p-valuation over coordinates, capped at N."""
        best = self.N
        for c in a:
            if c:
                v = 0
                while c % self.p == 0:
                    c //= self.p
                    v += 1
                best = min(best, v)
        return best

    def o_is_unit(self, a) -> bool:
        return self.o_val(a) == 0

    def o_shift_down(self, a, v: int) -> tuple:
        """Exact division by p^v; requires valuation >= v."""
        q = self.p ** v
        assert all(c % q == 0 for c in a)
        return tuple(c // q for c in a)

    def o_inv(self, a) -> tuple:
        """Inverse of a unit, by lifting the residue-field inverse."""
        if not self.o_is_unit(a):
            raise ZeroDivisionError("not a unit in O")
        x = self._o_inv_mod_p(a)
        k = 1
        while k < self.N:
            # x <- x (2 - a x), doubling the p-adic precision
            ax = self.o_mul(a, x)
            two = self.o_add(self.o_one(), self.o_one())
            x = self.o_mul(x, tuple((t - s) % self.pN
                                    for t, s in zip(two, ax)))
            k *= 2
        return x

    def _o_inv_mod_p(self, a) -> tuple:
        """Inverse in the residue field F_{p^f} via extended Euclid."""
        p = self.p
        if self.f == 1:
            return (pow(a[0] % p, -1, p),) + ()
        g = list(self.modulus) + [1]
        r0, r1 = g, [c % p for c in a]
        s0, s1 = [0], [1]
        while any(c % p for c in r1):
            q, r = _fp_polydivmod(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, _fp_polysub(s0, _fp_polymul(q, s1, p), p)
        # r0 is a nonzero constant gcd
        c = next(c for c in r0 if c % p)
        cinv = pow(c, -1, p)
        inv = [x * cinv % p for x in s0]
        inv += [0] * (self.f - len(inv))
        return tuple(inv[:self.f])

    # -- series constructors ---------------------------------------------

    def series(self, coeffs) -> "IwasawaElement":
        vals = [self.o_from(c) for c in coeffs]
        if len(vals) > self.M + 1:
            raise DegreeCapExceeded(
                f"series degree {len(vals) - 1} exceeds truncation {self.M}")
        return IwasawaElement(self, _trim(tuple(vals), self.o_zero()))

    def zero(self) -> "IwasawaElement":
        return self.series([])

    def one(self) -> "IwasawaElement":
        return self.series([1])

    def x(self) -> "IwasawaElement":
        return self.series([0, 1])

    def constant(self, c) -> "IwasawaElement":
        return self.series([c])


def _fp_polydivmod(a: list, b: list, p: int):
    a = [c % p for c in a]
    b = [c % p for c in b]
    while b and b[-1] == 0:
        b.pop()
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - db, 1)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % p
        q[i - db] = c
        if c:
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return q, a[:db] if db else [0]


def _fp_polymul(a: list, b: list, p: int) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def _fp_polysub(a: list, b: list, p: int) -> list:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return [(x - y) % p for x, y in zip(a, b)]


def _trim(coeffs: tuple, zero: tuple) -> tuple:
    n = len(coeffs)
    while n > 0 and coeffs[n - 1] == zero:
        n -= 1
    return coeffs[:n]


@dataclass(frozen=True)
class IwasawaElement:
    """A truncated power series over O; index = X-degree."""

    ring: CoefficientRing
    coeffs: tuple  # tuple of O-elements, trailing zeros trimmed

    def __post_init__(self):
        assert len(self.coeffs) <= self.ring.M + 1

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero series

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> tuple:
        return self.coeffs[k] if k < len(self.coeffs) else self.ring.o_zero()

    def __add__(self, other: "IwasawaElement") -> "IwasawaElement":
        R = self.ring
        n = max(len(self.coeffs), len(other.coeffs))
        vals = tuple(R.o_add(self.coeff(k), other.coeff(k)) for k in range(n))
        return IwasawaElement(R, _trim(vals, R.o_zero()))

    def __neg__(self) -> "IwasawaElement":
        R = self.ring
        return IwasawaElement(R, tuple(R.o_neg(c) for c in self.coeffs))

    def __sub__(self, other: "IwasawaElement") -> "IwasawaElement":
        return self + (-other)

    def __mul__(self, other: "IwasawaElement") -> "IwasawaElement":
        R = self.ring
        if self.is_zero() or other.is_zero():
            return R.zero()
        return IwasawaElement(R, _series_mul(R, self.coeffs, other.coeffs))

    def scale(self, c) -> "IwasawaElement":
        R = self.ring
        c = R.o_from(c)
        vals = tuple(R.o_mul(c, a) for a in self.coeffs)
        return IwasawaElement(R, _trim(vals, R.o_zero()))

    def shift(self, k: int) -> "IwasawaElement":
        """Multiply by X^k (truncating at M)."""
        R = self.ring
        vals = ((R.o_zero(),) * k + self.coeffs)[:R.M + 1]
        return IwasawaElement(R, _trim(vals, R.o_zero()))

    def __pow__(self, e: int) -> "IwasawaElement":
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, IwasawaElement):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def to_list(self) -> list:
        if self.ring.f == 1:
            return [c[0] for c in self.coeffs]
        return [list(c) for c in self.coeffs]

    def __repr__(self):
        return f"IwasawaElement(p={self.ring.p}, {self.to_list()})"


def _series_mul(R: CoefficientRing, A: tuple, B: tuple) -> tuple:
    """Convolution truncated at M, vectorized when int64 cannot overflow."""
    L = min(len(A) + len(B) - 1, R.M + 1)
    f = R.f
    if R.pN * R.pN * min(len(A), len(B)) < 2**62:
        a = np.array(A, dtype=np.int64).reshape(len(A), f)
        b = np.array(B, dtype=np.int64).reshape(len(B), f)
        acc = np.zeros((L, 2 * f - 1), dtype=np.int64)
        for i in range(f):
            for j in range(f):
                c = np.convolve(a[:, i], b[:, j])[:L]
                acc[:len(c), i + j] = (acc[:len(c), i + j] + c) % R.pN
        out = []
        for k in range(L):
            out.append(R._o_reduce([int(v) for v in acc[k]]))
        return _trim(tuple(out), R.o_zero())
    out = [[0] * (2 * f - 1) for _ in range(L)]
    for i, ca in enumerate(A):
        for j, cb in enumerate(B):
            k = i + j
            if k >= L:
                break
            for yi, x in enumerate(ca):
                if x:
                    for yj, y in enumerate(cb):
                        out[k][yi + yj] += x * y
    return _trim(tuple(R._o_reduce(row) for row in out), R.o_zero())


# ---------------------------------------------------------------------------
# Weierstrass preparation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeierstrassForm:
    mu: int
    P: IwasawaElement          # distinguished polynomial, monic, deg = lam
    unit: IwasawaElement       # unit power series, truncated
    precision: tuple           # (certified p-digits, certified X-degree)

    @property
    def lam(self) -> int:
        return self.P.degree


def wprep(F: IwasawaElement) -> WeierstrassForm:
    """F = p^mu * P * unit with P distinguished, to certified precision."""
    R = F.ring
    if F.is_zero():
        raise PrecisionExhausted("series vanishes at working precision")
    mu = min(R.o_val(c) for c in F.coeffs)
    Np = R.N - mu
    if Np <= GUARD_P:
        raise PrecisionExhausted(
            f"mu = {mu} leaves only {Np} certified p-digits")
    q = R.p ** Np
    G = [R.o_shift_down(c, mu) for c in F.coeffs]
    lam = next((k for k, c in enumerate(G) if R.o_is_unit(c)), None)
    if lam is None:
        raise PrecisionExhausted("no unit coefficient after removing p-power")
    if lam > R.M - GUARD_X:
        raise PrecisionExhausted(
            f"distinguished degree {lam} intrudes on the guard band "
            f"(M = {R.M}, guard {GUARD_X})")

    # Fast path: a polynomial of degree lam with unit leading coefficient
    # is a constant unit times its own distinguished normalization.
    if len(G) == lam + 1 and R.o_is_unit(G[lam]):
        lead = G[lam]
        inv = tuple(x % q for x in R.o_inv(lead))
        P = [tuple(x % q for x in R.o_mul(c, inv)) for c in G]
        Pel = IwasawaElement(R, _trim(tuple(P), R.o_zero()))
        Uel = IwasawaElement(R, (tuple(x % q for x in lead),))
        return WeierstrassForm(mu=mu, P=Pel, unit=Uel, precision=(Np, R.M))

    # Hensel lifting of the mod-p factorization G = X^lam * (unit part)
    p = R.p
    L = R.M + 1
    Ubar = [tuple(x % p for x in c) for c in G[lam:]]
    Vbar = _series_inv_mod_p(R, Ubar, L)
    P = [R.o_zero()] * lam + [R.o_one()]
    U = list(G[lam:]) + [R.o_zero()] * 0
    pk = p
    for _ in range(1, Np):
        D = _sub_mod(R, G, _mul_mod(R, P, U, L, q), q)
        d = [tuple((x // pk) % p for x in c) for c in D]
        assert all(x % pk == 0 for c in D for x in c), "lift step misaligned"
        w = _mul_mod_p(R, d, Vbar, L)
        s = w[:lam]
        t = _mul_mod_p(R, w[lam:], Ubar, L)
        P = [tuple((a + pk * b) % q for a, b in zip(P[k], s[k]))
             if k < lam else P[k] for k in range(lam + 1)]
        U = _add_scaled(R, U, t, pk, q)
        pk *= p
    Pel = IwasawaElement(R, _trim(tuple(P), R.o_zero()))
    Uel = IwasawaElement(R, _trim(tuple(U), R.o_zero()))
    # When P divides G exactly the unit is the polynomial quotient; prefer
    # that to the lifted series, whose top coefficients carry truncation
    # noise (coefficient M-j is only certified mod p^(j+1)).
    Gel = IwasawaElement(R, _trim(tuple(tuple(x % q for x in c) for c in G),
                                  R.o_zero()))
    quo, rem = _poly_divmod(Gel, Pel)
    if all(x % q == 0 for c in rem.coeffs for x in c):
        Uel = IwasawaElement(
            R, _trim(tuple(tuple(x % q for x in c) for c in quo.coeffs),
                     R.o_zero()))
    return WeierstrassForm(mu=mu, P=Pel, unit=Uel, precision=(Np, R.M))


def _mul_mod(R, A: list, B: list, L: int, q: int) -> list:
    prod = _series_mul(R, tuple(A), tuple(B))
    out = [tuple(x % q for x in c) for c in prod[:L]]
    out += [R.o_zero()] * (L - len(out))
    return out


def _sub_mod(R, A: list, B: list, q: int) -> list:
    n = max(len(A), len(B))
    z = R.o_zero()
    A = list(A) + [z] * (n - len(A))
    B = list(B) + [z] * (n - len(B))
    return [tuple((x - y) % q for x, y in zip(a, b)) for a, b in zip(A, B)]


def _add_scaled(R, A: list, B: list, pk: int, q: int) -> list:
    n = max(len(A), len(B))
    z = R.o_zero()
    A = list(A) + [z] * (n - len(A))
    B = list(B) + [z] * (n - len(B))
    return [tuple((x + pk * y) % q for x, y in zip(a, b))
            for a, b in zip(A, B)]


def _mul_mod_p(R, A: list, B: list, L: int) -> list:
    """Series product with coefficients in the residue field."""
    p = R.p
    f = R.f
    out = [[0] * (2 * f - 1) for _ in range(min(len(A) + len(B) - 1, L))]
    if not out:
        return [R.o_zero()] * L
    for i, ca in enumerate(A):
        for j, cb in enumerate(B):
            k = i + j
            if k >= L:
                break
            row = out[k]
            for yi, x in enumerate(ca):
                if x % p:
                    for yj, y in enumerate(cb):
                        row[yi + yj] += x * y
    res = [tuple(x % p for x in R._o_reduce(row)) for row in out]
    res += [R.o_zero()] * (L - len(res))
    return res


def _series_inv_mod_p(R, U: list, L: int) -> list:
    """Inverse of a unit series mod (p, X^L)."""
    p = R.p
    c0inv = R._o_inv_mod_p(U[0])
    inv = [c0inv]
    for k in range(1, L):
        acc = [0] * (2 * R.f - 1)
        for j in range(1, min(k, len(U) - 1) + 1):
            uj, vk = U[j], inv[k - j]
            for yi, x in enumerate(uj):
                if x % p:
                    for yj, y in enumerate(vk):
                        acc[yi + yj] += x * y
        s = tuple((-x) % p for x in R._o_reduce(acc))
        inv.append(tuple(x % p for x in R.o_mul(s, c0inv)))
    return inv


# ---------------------------------------------------------------------------
# twists and involution
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TwistCharacter:
    """A continuous character of the pro-p group, determined by the image
    u of the fixed topological generator; u = 1 mod p keeps substitutions
    inside the maximal ideal."""

    ring: CoefficientRing
    u: tuple  # O-element

    def __post_init__(self):
        R = self.ring
        diff = tuple((a - b) % R.pN
                     for a, b in zip(self.u, R.o_one()))
        if R.o_val(diff) < 1 and diff != R.o_zero():
            raise ParseError(f"twist value {self.u} is not 1 mod p")

    @classmethod
    def from_value(cls, ring: CoefficientRing, u) -> "TwistCharacter":
        return cls(ring, ring.o_from(u))

    @classmethod
    def kappa(cls, ring: CoefficientRing) -> "TwistCharacter":
        return cls(ring, ring.o_from(1 + ring.p))

    @property
    def is_kappa(self) -> bool:
        return self.u == self.ring.o_from(1 + self.ring.p)

    def inverse(self) -> "TwistCharacter":
        return TwistCharacter(self.ring, self.ring.o_inv(self.u))

    def compose(self, other: "TwistCharacter") -> "TwistCharacter":
        return TwistCharacter(self.ring, self.ring.o_mul(self.u, other.u))


def twist(F: IwasawaElement, t: TwistCharacter) -> IwasawaElement:
    """Substitute X -> u(1+X) - 1 (the generator is scaled by u)."""
    R = F.ring
    u = R.o_from(t.u)
    um1 = tuple((a - b) % R.pN for a, b in zip(u, R.o_one()))
    S = IwasawaElement(R, _trim((um1, u), R.o_zero()))
    acc = R.zero()
    for c in reversed(F.coeffs):
        acc = acc * S + R.constant(c)
    return acc


def involute(F: IwasawaElement) -> IwasawaElement:
    """Substitute X -> (1+X)^(-1) - 1, truncated at M.

    Computed polynomially: (1+X)^d F^i(X) = sum a_k (-X)^k (1+X)^(d-k)
    for d = deg F, followed by d exact synthetic divisions by 1+X."""
    R = F.ring
    d = F.degree
    if d <= 0:
        return F
    one_plus_x = R.series([1, 1])
    acc = R.constant(F.coeffs[d])
    W = R.one()
    for k in range(d - 1, -1, -1):
        W = W * one_plus_x  # (1+X)^(d-k)
        acc = -(acc.shift(1)) + W.scale(F.coeffs[k])
    # divide by (1+X)^d as a power series, exactly, term by term
    coeffs = list(acc.coeffs) + [R.o_zero()] * (R.M + 1 - len(acc.coeffs))
    for _ in range(d):
        out = [coeffs[0]]
        for k in range(1, R.M + 1):
            out.append(tuple((a - b) % R.pN
                             for a, b in zip(coeffs[k], out[k - 1])))
        coeffs = out
    return IwasawaElement(R, _trim(tuple(coeffs), R.o_zero()))


def normal_form_equal(F: IwasawaElement, G: IwasawaElement) -> bool:
    """Same characteristic ideal at certified precision: equal mu and
    equal distinguished polynomials mod p^(certified - guard)."""
    wf, wg = wprep(F), wprep(G)
    if wf.mu != wg.mu or wf.lam != wg.lam:
        return False
    digits = min(wf.precision[0], wg.precision[0]) - GUARD_P
    q = F.ring.p ** digits
    for a, b in zip(wf.P.coeffs, wg.P.coeffs):
        if any((x - y) % q for x, y in zip(a, b)):
            return False
    return True


@lru_cache(maxsize=4096)
def omega(R: CoefficientRing, n: int) -> IwasawaElement:
    """(1+X)^(p^n) - 1, the layer-n distinguished polynomial."""
    q = R.p ** n
    if q > R.M:
        raise DegreeCapExceeded(f"omega_{n} has degree {q} > M = {R.M}")
    coeffs = [0] + [math.comb(q, k) % R.pN for k in range(1, q + 1)]
    return R.series(coeffs)


# ---------------------------------------------------------------------------
# elementary modules
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ElementaryModule:
    """Finite direct sum of O[[X]]/(p^mu_i) and O[[X]]/(P_j^e_j)."""

    ring: CoefficientRing
    p_power_factors: tuple  # of mu_i >= 1
    poly_factors: tuple     # of (P_j: IwasawaElement distinguished, e_j >= 1)

    def __post_init__(self):
        assert all(m >= 1 for m in self.p_power_factors)
        for P, e in self.poly_factors:
            assert e >= 1 and _is_distinguished(P), f"not distinguished: {P}"

    @classmethod
    def zero(cls, ring: CoefficientRing) -> "ElementaryModule":
        return cls(ring, (), ())


def _is_distinguished(P: IwasawaElement) -> bool:
    R = P.ring
    if P.degree < 1 or P.coeffs[-1] != R.o_one():
        return False
    return all(R.o_val(c) >= 1 for c in P.coeffs[:-1])


def char_ideal(E: ElementaryModule) -> IwasawaElement:
    """Generator of the characteristic ideal: p^(sum mu) * prod P_j^e_j."""
    R = E.ring
    lam = sum(e * P.degree for P, e in E.poly_factors)
    if lam > R.M - GUARD_X:
        raise DegreeCapExceeded(
            f"total distinguished degree {lam} intrudes on the guard band")
    gen = R.one()
    for P, e in E.poly_factors:
        gen = gen * P ** e
    mu = sum(E.p_power_factors)
    return gen.scale(R.p ** mu % R.pN)


def module_twist(E: ElementaryModule, t: TwistCharacter) -> ElementaryModule:
    """Tensor with the character: each generator g -> normal form of the
    inverse-twist substitution applied to g."""
    tinv = t.inverse()
    new = []
    for P, e in E.poly_factors:
        w = wprep(twist(P, tinv))
        if w.mu != 0:
            raise PrecisionExhausted(
                "twisted generator acquired spurious p-content")
        new.append((w.P, e))
    return ElementaryModule(E.ring, E.p_power_factors, tuple(new))


def twist_lemma_check(E: ElementaryModule, t: TwistCharacter) -> str:
    """Ideal-level round trip through the module twist; Pass expected."""
    lhs = twist(char_ideal(module_twist(E, t)), t)
    rhs = char_ideal(E)
    return "Pass" if normal_form_equal(lhs, rhs) else "Fail"


def ext1_elementary(E: ElementaryModule) -> ElementaryModule:
    """First extension dual of an elementary module: same cyclic factor
    ideals, so the characteristic ideal is untouched."""
    return ElementaryModule(E.ring, E.p_power_factors, E.poly_factors)


# ---------------------------------------------------------------------------
# coinvariant finiteness and regular twists
# ---------------------------------------------------------------------------

def _poly_divmod(A: IwasawaElement, B: IwasawaElement):
    """Division by a monic polynomial; exact at working precision."""
    R = A.ring
    assert B.coeffs[-1] == R.o_one()
    db = B.degree
    rem = list(A.coeffs)
    quo = [R.o_zero()] * max(len(rem) - db, 1)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c == R.o_zero():
            continue
        quo[i - db] = c
        for j in range(db + 1):
            prod = R.o_mul(c, B.coeffs[j])
            rem[i - db + j] = tuple((x - y) % R.pN
                                    for x, y in zip(rem[i - db + j], prod))
    return (IwasawaElement(R, _trim(tuple(quo), R.o_zero())),
            IwasawaElement(R, _trim(tuple(rem[:db]), R.o_zero())))


@lru_cache(maxsize=4096)
def _xi(R: CoefficientRing, i: int) -> IwasawaElement:
    """omega_i / omega_(i-1): the layer-i irreducible distinguished factor."""
    if i == 0:
        return R.x()
    q, rem = _poly_divmod(omega(R, i), omega(R, i - 1))
    assert rem.is_zero()
    return q


def _resultant_with(P: IwasawaElement, Q: IwasawaElement) -> tuple:
    """Resultant-like certificate: determinant of multiplication by
    (Q mod P) on O[X]/(P), computed mod p^N."""
    R = P.ring
    lam = P.degree
    _, r = _poly_divmod(Q, P)
    cols = []
    cur = r
    for _ in range(lam):
        cols.append([cur.coeff(k) for k in range(lam)])
        _, cur = _poly_divmod(cur.shift(1), P)
    return _det_local(R, cols)


def _det_local(R: CoefficientRing, cols: list) -> tuple:
    """Determinant over O/p^N by elimination with minimal-valuation pivots;
    exact mod p^N."""
    n = len(cols)
    Mx = [[cols[j][i] for j in range(n)] for i in range(n)]
    det = R.o_one()
    sign = 1
    for c in range(n):
        piv_row, piv_val = None, R.N
        for r_ in range(c, n):
            v = R.o_val(Mx[r_][c])
            if v < piv_val:
                piv_row, piv_val = r_, v
        if piv_row is None:
            return R.o_zero()
        if piv_row != c:
            Mx[c], Mx[piv_row] = Mx[piv_row], Mx[c]
            sign = -sign
        pivot = Mx[c][c]
        det = R.o_mul(det, pivot)
        unit_inv = R.o_inv(R.o_shift_down(pivot, piv_val))
        for r_ in range(c + 1, n):
            a = Mx[r_][c]
            if a == R.o_zero():
                continue
            # a / pivot = (a / p^v) * unit^-1; valuation(a) >= v by choice
            q_ = R.o_mul(R.o_shift_down(a, piv_val), unit_inv)
            for k in range(c, n):
                prod = R.o_mul(q_, Mx[c][k])
                Mx[r_][k] = tuple((x - y) % R.pN
                                  for x, y in zip(Mx[r_][k], prod))
    if sign < 0:
        det = R.o_neg(det)
    return det


def coinvariants_finite(E: ElementaryModule, n: int) -> str:
    """Finiteness of the layer-n coinvariants: Finite / Infinite /
    Inconclusive.  p-power factors are always finite; a polynomial factor
    is infinite exactly when it shares a distinguished factor with
    omega_n, certified by exact divisibility of a layer factor."""
    R = E.ring
    if R.p ** n > R.M:
        raise DegreeCapExceeded(f"layer {n} exceeds the degree cap")
    verdicts = []
    for P, _ in E.poly_factors:
        shared = False
        for i in range(n + 1):
            xi = _xi(R, i)
            if xi.degree > P.degree:
                continue
            _, rem = _poly_divmod(P, xi)
            if rem.is_zero():
                shared = True
                break
        if shared:
            return "Infinite"
        det = _resultant_with(P, omega(R, n))
        verdicts.append("Finite" if det != R.o_zero() else "Inconclusive")
    if all(v == "Finite" for v in verdicts):
        return "Finite"
    return "Inconclusive"


def find_regular_twist(E: ElementaryModule, n_max: int) -> TwistCharacter:
    """A character making all coinvariants up to layer n_max finite, for
    both the module and its inverse twist.  Deterministic candidate order:
    (1+p)^k for k = 1..p-1, then 1+ap for a = 2..p-1."""
    R = E.ring
    if not E.poly_factors:
        return TwistCharacter.from_value(R, 1)
    if R.p ** n_max > R.M:
        raise DegreeCapExceeded(f"layer {n_max} exceeds the degree cap")
    candidates = [pow(1 + R.p, k, R.pN) for k in range(1, R.p)]
    candidates += [1 + a * R.p for a in range(2, R.p)]
    for u in candidates:
        t = TwistCharacter.from_value(R, u)
        try:
            twisted = [module_twist(E, t), module_twist(E, t.inverse())]
        except PrecisionExhausted:
            continue
        if all(coinvariants_finite(Ew, n) == "Finite"
               for Ew in twisted for n in range(n_max + 1)):
            return t
    raise SearchExhausted(
        f"no regular twist among {len(candidates)} candidates; raise the "
        f"precision caps rather than doubting the underlying lemma")


# ---------------------------------------------------------------------------
# functional equation
# ---------------------------------------------------------------------------

def funceq_check(F_V: IwasawaElement, F_U: IwasawaElement,
                 kappa: TwistCharacter) -> str:
    """Pass iff the involuted first series and the kappa-twisted second
    series generate the same ideal at certified precision."""
    lhs = involute(F_V)
    rhs = twist(F_U, kappa)
    return "Pass" if normal_form_equal(lhs, rhs) else "Fail"
