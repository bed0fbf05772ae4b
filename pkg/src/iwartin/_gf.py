"""Small dense linear algebra over a prime field F_ell, numpy-backed.

Only what the Dixon table construction needs: row reduction, kernels,
restriction of a matrix to an invariant subspace, and minimal polynomials
of vectors under a matrix action.
"""

from __future__ import annotations

import numpy as np


def inv_mod(x: int, ell: int) -> int:
    return pow(int(x) % ell, -1, ell)


def matmul(A, B, ell: int):
    return (A @ B) % ell


def rref(A, ell: int):
    """Reduced row echelon form; returns (R, pivot_columns)."""
    R = np.array(A, dtype=np.int64) % ell
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = (R[r] * inv_mod(R[r, c], ell)) % ell
        factors = R[:, c].copy()
        factors[r] = 0
        R = (R - np.outer(factors, R[r])) % ell
        pivots.append(c)
        r += 1
    return R, pivots


def kernel(A, ell: int):
    """Columns form a basis of the null space of A over F_ell."""
    A = np.asarray(A, dtype=np.int64)
    rows, cols = A.shape
    R, pivots = rref(A, ell)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[fc, k] = 1
        for r, pc in enumerate(pivots):
            basis[pc, k] = (-R[r, fc]) % ell
    return basis


def solve_square(A, B, ell: int):
    """Solve A X = B for invertible square A."""
    A = np.asarray(A, dtype=np.int64) % ell
    B = np.asarray(B, dtype=np.int64) % ell
    n = A.shape[0]
    aug = np.concatenate([A, B.reshape(n, -1)], axis=1)
    R, pivots = rref(aug, ell)
    if pivots[:n] != list(range(n)):
        raise np.linalg.LinAlgError("matrix is singular mod ell")
    return R[:n, n:]


def independent_rows(B, ell: int):
    """Indices of rows of B forming a basis of its row space."""
    R = np.array(B, dtype=np.int64).T % ell  # columns are rows of B
    _, pivots = rref(R, ell)
    return pivots


def restrict_to_subspace(M, B, ell: int):
    """Matrix of the action of M on the M-invariant span of B's columns."""
    MB = (M @ B) % ell
    rows = independent_rows(B, ell)
    return solve_square(B[rows, :], MB[rows, :], ell)


def minpoly_of_vector(M, v, ell: int):
    """Monic minimal polynomial (ascending coeffs) of v under M."""
    n = M.shape[0]
    echelon = []  # list of (vector, pivot index, coeff list)
    w = np.array(v, dtype=np.int64) % ell
    k = 0
    while True:
        vec = w.copy()
        coeff = [0] * (k + 1)
        coeff[k] = 1
        for evec, piv, ecoeff in echelon:
            c = int(vec[piv])
            if c:
                vec = (vec - c * evec) % ell
                for i, ec in enumerate(ecoeff):
                    coeff[i] = (coeff[i] - c * ec) % ell
        nz = np.nonzero(vec)[0]
        if len(nz) == 0:
            return [c % ell for c in coeff]
        piv = int(nz[0])
        inv = inv_mod(vec[piv], ell)
        vec = (vec * inv) % ell
        coeff = [(c * inv) % ell for c in coeff]
        echelon.append((vec, piv, coeff))
        w = (M @ w) % ell
        k += 1
        if k > n:
            raise AssertionError("minimal polynomial exceeds dimension")


def poly_roots_bruteforce(coeffs, ell: int):
    """All roots in F_ell of the polynomial with ascending coeffs."""
    xs = np.arange(ell, dtype=np.int64)
    acc = np.full(ell, coeffs[-1] % ell, dtype=np.int64)
    for c in reversed(coeffs[:-1]):
        acc = (acc * xs + c) % ell
    return [int(x) for x in xs[acc == 0]]
