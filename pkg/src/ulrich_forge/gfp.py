"""Dense Gaussian elimination over F_p on int64 numpy arrays.

Entries stay in [0, p); products fit in int64 for p < 2**31.
"""

from __future__ import annotations

import numpy as np

DEFAULT_PRIME = 32003


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p) or p >= 2**31:
        raise ValueError(f"expected a prime below 2**31, got {p!r}")
    return p


def row_echelon(A, p: int) -> tuple[np.ndarray, list[int]]:
    """Row-reduce ``A`` mod p.

    Returns the reduced row-echelon form and the pivot columns.
    """
    R = np.array(A, dtype=np.int64) % p
    m, n = R.shape
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.flatnonzero(R[row:, col])
        if nz.size == 0:
            continue
        k = row + nz[0]
        if k != row:
            R[[row, k]] = R[[k, row]]
        inv = pow(int(R[row, col]), -1, p)
        R[row] = R[row] * inv % p
        factors = R[:, col].copy()
        factors[row] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            R[hit] = (R[hit] - np.outer(factors[hit], R[row])) % p
        pivots.append(col)
        row += 1
    return R, pivots


def rank_mod_p(A, p: int) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    # eliminate along the shorter side
    if A.shape[0] > A.shape[1]:
        A = A.T
    return len(row_echelon(A, p)[1])


def kernel_basis(A, p: int) -> np.ndarray:
    """Columns spanning the right kernel of ``A`` mod p, shape (ncols, nullity)."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, pivots = row_echelon(A, p)
    free = [c for c in range(n) if c not in set(pivots)]
    K = np.zeros((n, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        K[f, j] = 1
        for i, pc in enumerate(pivots):
            K[pc, j] = (-R[i, f]) % p
    return K
