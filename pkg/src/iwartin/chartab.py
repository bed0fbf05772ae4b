"""Character tables via Dixon's modular method.

All character values are exact cyclotomic integers at the group exponent's
conductor.  The modular computation happens over F_ell for a prime
ell = 1 (mod exponent); eigenvalue multiplicities of each group element are
recovered by a discrete Fourier inversion mod ell and lifted to genuine
root-of-unity multiplicities, so the final table involves no numerics.

Both orthogonality relations are verified before a table is returned, via
a rigorous modular-evaluation certificate (exact given the coordinate
bounds, which are checked too).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _gf
from .cyclotomic import CycloElement, euler_phi, zeta_power_reductions
from .errors import (
    GroupMismatch,
    NonIntegerMultiplicity,
    NoSuitableModularPrime,
    NotASubgroup,
    OrthogonalityFailure,
)
from .perms import PermGroup, compose, inverse

MODULAR_PRIME_CAP = 10**7


@dataclass(frozen=True)
class ClassFunction:
    """A cyclotomic-valued class function, one value per conjugacy class
    in the group's canonical class order."""

    group: PermGroup
    values: tuple

    def __post_init__(self):
        assert len(self.values) == len(self.group.classes)

    @property
    def degree(self):
        return self.values[0]

    def __call__(self, perm) -> CycloElement:
        return self.values[self.group.class_index(perm)]

    def conj(self) -> "ClassFunction":
        return ClassFunction(self.group, tuple(v.conj() for v in self.values))

    def __mul__(self, other: "ClassFunction") -> "ClassFunction":
        if not _same_group(self.group, other.group):
            raise GroupMismatch("class functions on different groups")
        return ClassFunction(
            self.group, tuple(a * b for a, b in zip(self.values, other.values)))

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        if not _same_group(self.group, other.group):
            raise GroupMismatch("class functions on different groups")
        return ClassFunction(
            self.group, tuple(a + b for a, b in zip(self.values, other.values)))

    def to_json(self) -> list:
        return [v.to_json() for v in self.values]


@dataclass(frozen=True)
class CharTable:
    group: PermGroup
    irreducibles: tuple  # canonically ordered ClassFunctions

    def degrees(self) -> list[int]:
        return [chi.degree.rational_value() for chi in self.irreducibles]

    def to_json(self) -> dict:
        from .perms import perm_to_one_line
        return {
            "order": self.group.order,
            "classes": [
                {"representative": perm_to_one_line(c.representative),
                 "size": c.size, "element_order": c.element_order}
                for c in self.group.classes
            ],
            "irreducibles": [chi.to_json() for chi in self.irreducibles],
        }


def _same_group(g: PermGroup, h: PermGroup) -> bool:
    return g is h or (g.degree == h.degree and g.elements == h.elements)


def trivial_character(G: PermGroup) -> ClassFunction:
    one = CycloElement.from_int(1)
    return ClassFunction(G, tuple(one for _ in G.classes))


def regular_character(G: PermGroup) -> ClassFunction:
    vals = [CycloElement.from_int(G.order)]
    vals += [CycloElement.from_int(0)] * (len(G.classes) - 1)
    return ClassFunction(G, tuple(vals))


def find_modular_prime(G: PermGroup) -> int:
    """Smallest prime ell = 1 mod exponent(G), ell > 2 sqrt(|G|), ell
    coprime to |G|."""
    e = G.exponent()
    lower = 2 * math.isqrt(G.order) + 1
    ell = e + 1
    while ell <= MODULAR_PRIME_CAP:
        if ell > lower and G.order % ell != 0 and _is_prime(ell):
            return ell
        ell += e
    raise NoSuitableModularPrime(
        f"no prime = 1 mod {e} above {lower} below {MODULAR_PRIME_CAP}")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primitive_root(ell: int) -> int:
    fact = _factorize(ell - 1)
    for w in range(2, ell):
        if all(pow(w, (ell - 1) // q, ell) != 1 for q in fact):
            return w
    raise AssertionError("no primitive root found")


def _factorize(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Dixon's method
# ---------------------------------------------------------------------------

def dixon_table(G: PermGroup) -> CharTable:
    r = len(G.classes)
    e = G.exponent()
    ell = find_modular_prime(G)
    z = pow(_primitive_root(ell), (ell - 1) // e, ell)  # order-e root mod ell

    sizes = np.array([c.size for c in G.classes], dtype=np.int64)
    inv_class = np.array(
        [G.class_index(inverse(c.representative)) for c in G.classes],
        dtype=np.int64)

    A = _class_matrices(G, r)
    vectors = _split_central_characters(A, r, ell)

    # central character values -> character values mod ell
    inv_sizes = np.array([_gf.inv_mod(int(s), ell) for s in sizes],
                         dtype=np.int64)
    chars_mod = []
    degrees = []
    sqrt_table = _sqrt_table(ell)
    for v in vectors:
        s = int(np.sum(v * v[inv_class] % ell * inv_sizes % ell) % ell)
        deg_sq = G.order * _gf.inv_mod(s, ell) % ell
        d = sqrt_table.get(deg_sq)
        if d is None:
            raise OrthogonalityFailure("character degree is not a square mod ell")
        degrees.append(d)
        chars_mod.append(v * d % ell * inv_sizes % ell)

    # lift each character value to exact root-of-unity multiplicities:
    # invert the DFT chi(g^s) = sum_t m_t zk^(st) over F_ell, per class
    power_class = _power_map(G)
    red = np.array(zeta_power_reductions(e), dtype=np.int64)  # e x phi(e)
    CH = np.stack(chars_mod)  # r x r, CH[i, k] = chi_i(g_k) mod ell
    deg_arr = np.array(degrees, dtype=np.int64)
    counts = np.zeros((r, r, e), dtype=np.int64)
    for k in range(r):
        o = G.classes[k].element_order
        zk = pow(z, e // o, ell)
        zkp = np.ones(o, dtype=np.int64)
        for j in range(1, o):
            zkp[j] = zkp[j - 1] * zk % ell
        s_idx = np.arange(o, dtype=np.int64)
        Z = zkp[(-np.outer(s_idx, s_idx)) % o]  # Z[t, s] = zk^(-st)
        vals = CH[:, power_class[k]]  # r x o
        M = (vals @ Z.T) % ell * _gf.inv_mod(o, ell) % ell  # r x o
        if (M > deg_arr[:, None]).any():
            raise OrthogonalityFailure("eigenvalue multiplicity lift out of range")
        if not np.array_equal(M.sum(axis=1), deg_arr):
            raise OrthogonalityFailure("multiplicities do not sum to degree")
        counts[:, k, (s_idx * (e // o)) % e] = M
    values_coords = np.rint(
        np.tensordot(counts.astype(np.float64), red.astype(np.float64),
                     axes=(2, 0))).astype(np.int64)

    # canonical irrep ordering: by degree, then lex on concatenated coords
    order = sorted(range(r),
                   key=lambda i: (degrees[i],
                                  tuple(int(x) for x in values_coords[i].ravel())))
    values_coords = values_coords[order]

    _verify_orthogonality(G, values_coords, e, inv_class, sizes)

    irreducibles = []
    for i in range(r):
        vals = tuple(CycloElement(e, tuple(int(x) for x in values_coords[i, k]))
                     for k in range(r))
        irreducibles.append(ClassFunction(G, vals))
    table = CharTable(G, tuple(irreducibles))
    if sum(d * d for d in table.degrees()) != G.order:
        raise OrthogonalityFailure("sum of squared degrees != |G|")
    return table


def verify_orthogonality(table: CharTable) -> None:
    """Re-run the exact row/column orthogonality certificate on a finished
    table; raises OrthogonalityFailure on any defect, zero tolerance."""
    G = table.group
    e = G.exponent()
    sizes = np.array([c.size for c in G.classes], dtype=np.int64)
    inv_class = np.array(
        [G.class_index(inverse(c.representative)) for c in G.classes],
        dtype=np.int64)
    values_coords = np.array(
        [[list(v.embed(e).coords) for v in chi.values]
         for chi in table.irreducibles], dtype=np.int64)
    _verify_orthogonality(G, values_coords, e, inv_class, sizes)
    if sum(d * d for d in table.degrees()) != G.order:
        raise OrthogonalityFailure("sum of squared degrees != |G|")


def _class_matrices(G: PermGroup, r: int) -> np.ndarray:
    """a[i,j,k] = #{(x,y) in C_i x C_j : x y = g_k}."""
    inv_arr = np.array([inverse(x) for x in G.elements], dtype=np.int64)
    cls_of = np.array([G.class_index(x) for x in G.elements], dtype=np.int64)
    dt = np.uint8 if G.degree < 256 else np.uint16
    class_of_key = {np.array(x, dtype=dt).tobytes(): int(cls_of[i])
                    for i, x in enumerate(G.elements)}

    a = np.zeros((r, r, r), dtype=np.int64)
    for k, c in enumerate(G.classes):
        gk = np.array(c.representative, dtype=np.int64)
        Y = inv_arr[:, gk].astype(dt)  # row x is the permutation x^{-1} g_k
        cj = np.array([class_of_key[row.tobytes()] for row in Y],
                      dtype=np.int64)
        np.add.at(a, (cls_of, cj, np.full(G.order, k, dtype=np.int64)), 1)
    return a


def _split_central_characters(a: np.ndarray, r: int, ell: int) -> list:
    """Common eigenvectors of the class matrices over F_ell."""
    rng = random.Random(20260823)
    spaces = [np.eye(r, dtype=np.int64)]
    for _ in range(60):
        if all(B.shape[1] == 1 for B in spaces):
            break
        combo = np.array([rng.randrange(ell) for _ in range(r)], dtype=np.int64)
        M = np.tensordot(combo, a % ell, axes=(0, 0)) % ell
        new_spaces = []
        for B in spaces:
            m = B.shape[1]
            if m == 1:
                new_spaces.append(B)
                continue
            R = _gf.restrict_to_subspace(M, B, ell)
            eigvals = _eigenvalues(R, ell, rng)
            pieces = []
            for lam in eigvals:
                K = _gf.kernel((R - lam * np.eye(m, dtype=np.int64)) % ell, ell)
                if K.shape[1]:
                    pieces.append((B @ K) % ell)
            if sum(K.shape[1] for K in pieces) == m:
                new_spaces.extend(pieces)
            else:
                # some eigenvalue was missed; retry this space next round
                new_spaces.append(B)
        spaces = new_spaces
    if not all(B.shape[1] == 1 for B in spaces) or len(spaces) != r:
        raise OrthogonalityFailure("failed to split class algebra")
    out = []
    for B in spaces:
        w = B[:, 0] % ell
        out.append(w * _gf.inv_mod(int(w[0]), ell) % ell)
    return out


def _eigenvalues(R: np.ndarray, ell: int, rng) -> list[int]:
    m = R.shape[0]
    roots: set[int] = set()
    for _ in range(8):
        v = np.array([rng.randrange(ell) for _ in range(m)], dtype=np.int64)
        if not v.any():
            continue
        mp = _gf.minpoly_of_vector(R, v, ell)
        roots.update(_gf.poly_roots_bruteforce(mp, ell))
        if len(roots) == m:
            break
    return sorted(roots)


def _power_map(G: PermGroup) -> list:
    """power_class[k][s] = class index of rep_k^s, s < order(rep_k)."""
    out = []
    for c in G.classes:
        x = c.representative
        ident = tuple(range(G.degree))
        cur = ident
        row = []
        for _ in range(c.element_order):
            row.append(G.class_index(cur))
            cur = compose(cur, x)
        out.append(np.array(row, dtype=np.int64))
    return out


def _sqrt_table(ell: int) -> dict:
    """x^2 -> x for the square root at most (ell-1)//2."""
    table = {}
    for x in range((ell - 1) // 2 + 1):
        table.setdefault(x * x % ell, x)
    return table


# ---------------------------------------------------------------------------
# orthogonality certificate
# ---------------------------------------------------------------------------

def _verify_orthogonality(G, values_coords, e, inv_class, sizes):
    """Row and column orthogonality, exactly, via modular evaluations.

    Every orthogonality sum is a cyclotomic integer with power-basis
    coordinates bounded by B (computed below from the actual arrays).  It
    vanishes iff all its evaluations at the full set of conjugate roots
    zeta -> z^u vanish mod q, once the product of the check primes
    exceeds 2B.
    """
    r = values_coords.shape[0]
    phi = values_coords.shape[2]
    cmax = int(np.abs(values_coords).max()) or 1
    red = np.array(zeta_power_reductions(e), dtype=np.int64)
    rmax = int(np.abs(red).max()) or 1
    bound = 2 * (G.order * phi * cmax * cmax * (rmax + 1) * phi + G.order)

    units = [u for u in range(e) if math.gcd(u, e) == 1]
    primes = _certificate_primes(e, bound)

    order_vec = np.full(r, G.order, dtype=np.int64)
    centralizers = (G.order // sizes).astype(np.int64)
    for q in primes:
        zq = pow(_primitive_root(q), (q - 1) // e, q)
        # evaluation points z^(u*a) for basis exponents a < phi
        pts = np.array([[pow(zq, (u * aa) % e, q) for u in units]
                        for aa in range(phi)], dtype=np.int64)
        X = np.tensordot(values_coords, pts, axes=(2, 0)) % q  # r x r x nu
        for ui in range(len(units)):
            # entries below q < 4e6, so every float64 product is < 2^53/r
            # and every partial sum stays < 2^53: the matmuls are exact
            Xu = X[:, :, ui]
            Xinv = X[:, inv_class, ui].astype(np.float64)
            left = (Xu * sizes % q).astype(np.float64)
            row = (left @ Xinv.T).astype(np.int64) % q
            if not np.array_equal(row, np.diag(order_vec % q)):
                raise OrthogonalityFailure("row orthogonality failed")
            col = (Xu.T.astype(np.float64) @ Xinv).astype(np.int64) % q
            if not np.array_equal(col, np.diag(centralizers % q)):
                raise OrthogonalityFailure("column orthogonality failed")


def _certificate_primes(e: int, bound: int) -> list[int]:
    """Primes = 1 mod e whose product exceeds the coordinate bound, small
    enough that float64 matmul stays exact."""
    primes = []
    prod = 1
    q = (10**6 // e) * e + 1
    while prod <= bound:
        if _is_prime(q) and q > 10**6 and q < 4 * 10**6:
            primes.append(q)
            prod *= q
        q += e
        if q >= 4 * 10**6:
            raise NoSuitableModularPrime(
                f"not enough certificate primes = 1 mod {e}")
    return primes


# ---------------------------------------------------------------------------
# inner products, restriction, decomposition
# ---------------------------------------------------------------------------

def inner_product(chi: ClassFunction, psi: ClassFunction) -> Fraction:
    """(1/|G|) sum over classes of size * chi(g) * conj(psi(g)).

    Exact; raises NonIntegerMultiplicity when a non-rational value comes
    out (which signals an invalid input character)."""
    if not _same_group(chi.group, psi.group):
        raise GroupMismatch("inner product across different groups")
    G = chi.group
    T = _inner_sums_vectorized(chi, [psi])
    if T is not None:
        if T[0, 1:].any():
            raise NonIntegerMultiplicity(
                f"inner product not rational: coordinates {T[0].tolist()}")
        return Fraction(int(T[0, 0]), G.order)
    total = CycloElement.from_int(0)
    for c, a, b in zip(G.classes, chi.values, psi.values):
        total = total + (a * b.conj()) * c.size
    if not total.is_rational():
        raise NonIntegerMultiplicity(f"inner product not rational: {total}")
    return Fraction(total.rational_value(), G.order)


def restrict(chi: ClassFunction, H: PermGroup) -> ClassFunction:
    if not H.is_subgroup_of(chi.group):
        raise NotASubgroup("H is not a subgroup of the character's group")
    vals = tuple(chi.values[chi.group.class_index(c.representative)]
                 for c in H.classes)
    return ClassFunction(H, vals)


def decompose(chi: ClassFunction, table: CharTable) -> list:
    """Multiset of (irrep index, multiplicity), multiplicities positive."""
    out = _decompose_pairs(chi, table)
    total_dim = sum(m * table.irreducibles[i].degree.rational_value()
                    for i, m in out)
    if CycloElement.from_int(total_dim) != chi.degree:
        raise NonIntegerMultiplicity("decomposition does not recompose")
    return out


def _decompose_pairs(chi: ClassFunction, table: CharTable) -> list:
    G = chi.group
    if not _same_group(G, table.group):
        raise GroupMismatch("decomposing against a table of another group")
    fast = _decompose_vectorized(chi, table)
    if fast is not None:
        return fast
    out = []
    for i, irr in enumerate(table.irreducibles):
        m = inner_product(chi, irr)
        if m.denominator != 1 or m < 0:
            raise NonIntegerMultiplicity(
                f"multiplicity of irrep {i} is {m}, not a non-negative integer")
        if m:
            out.append((i, int(m)))
    return out


def _decompose_vectorized(chi: ClassFunction, table: CharTable):
    """All multiplicities at once, or None when the overflow bound fails
    (caller falls back to exact big-int arithmetic)."""
    T = _inner_sums_vectorized(chi, table.irreducibles)
    if T is None:
        return None
    G = chi.group
    out = []
    for j in range(len(table.irreducibles)):
        if T[j, 1:].any():
            raise NonIntegerMultiplicity(
                f"multiplicity of irrep {j} is irrational: "
                f"coordinates {T[j].tolist()}")
        if T[j, 0] % G.order or T[j, 0] < 0:
            raise NonIntegerMultiplicity(
                f"multiplicity of irrep {j} is "
                f"{Fraction(int(T[j, 0]), G.order)}, not a non-negative integer")
        if T[j, 0]:
            out.append((j, int(T[j, 0]) // G.order))
    return out


def _inner_sums_vectorized(chi: ClassFunction, psis) -> np.ndarray | None:
    """Power-basis coordinates of sum_g chi(g) conj(psi(g)) for each psi,
    as an int64 array, or None when a rigorous bound cannot rule out
    overflow.  Each product is a convolution at a common conductor,
    reduced with the precomputed reduction rows; within the bound the
    float64 BLAS contractions are exact."""
    from .cyclotomic import _reduction_matrix
    G = chi.group
    r = len(G.classes)
    m = 1
    for v in chi.values:
        m = math.lcm(m, v.conductor)
    for psi in psis:
        for v in psi.values:
            m = math.lcm(m, v.conductor)
    phi = euler_phi(m)
    R, _ = _reduction_matrix(m)
    # conjugation zeta^i -> zeta^(m-i) as a matrix on the power basis
    red = zeta_power_reductions(m)
    C = np.array([red[(m - i) % m] for i in range(phi)], dtype=np.int64)

    A = np.array([v.embed(m).coords for v in chi.values], dtype=np.float64)
    if not np.isfinite(A).all() or np.abs(A).max() > 2**52:
        return None
    B = np.empty((len(psis), r, phi), dtype=np.float64)
    for j, psi in enumerate(psis):
        arr = np.array([v.embed(m).coords for v in psi.values],
                       dtype=np.float64)
        if not np.isfinite(arr).all() or np.abs(arr).max() > 2**52:
            return None
        B[j] = arr
    cmax = int(np.abs(C).max()) or 1
    cb0 = int(max(np.abs(B).max(), 1.0))
    if cb0 * phi * cmax >= 2**52:
        return None
    B = B @ C.astype(np.float64)  # exact: entries bounded by cb0*phi*cmax
    rmax = int(np.abs(R).max()) or 1
    ca = int(max(np.abs(A).max(), 1.0))
    cb = int(max(np.abs(B).max(), 1.0))
    sizes = np.array([c.size for c in G.classes], dtype=np.float64)
    # every intermediate in the contractions below is an integer bounded by
    # this product; under 2^52 the float64 arithmetic is exact
    if G.order * ca * cb * phi * phi * rmax >= 2**52:
        return None
    AW = A * sizes[:, None]
    S = np.einsum("ka,jkb->jab", AW, B, optimize=True)
    idx = np.arange(phi)
    RT = R[idx[:, None] + idx[None, :]].astype(np.float64)  # (phi, phi, phi)
    T = S.reshape(len(psis), phi * phi) @ RT.reshape(phi * phi, phi)
    return np.rint(T).astype(np.int64)


def find_irrep_index(table: CharTable, cf: ClassFunction) -> int:
    """Index of the irreducible equal to cf; raises if absent."""
    for i, irr in enumerate(table.irreducibles):
        if all(a == b for a, b in zip(irr.values, cf.values)):
            return i
    raise NonIntegerMultiplicity("class function is not an irreducible of the table")
