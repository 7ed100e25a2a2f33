"""Independent reference implementations used only by the tests."""

from functools import lru_cache

import numpy as np


def lcs_brute(x, y):
    x, y = tuple(x), tuple(y)

    @lru_cache(maxsize=None)
    def go(i, j):
        if i == len(x) or j == len(y):
            return 0
        if x[i] == y[j]:
            return 1 + go(i + 1, j + 1)
        return max(go(i + 1, j), go(i, j + 1))

    return go(0, 0)


def lcs_exhaustive(x, y):
    """Longest common subsequence by enumerating subsequences of the shorter input."""
    from itertools import combinations
    short, long_ = (x, y) if len(x) <= len(y) else (y, x)

    def is_subseq(sub, seq):
        it = iter(seq)
        return all(tok in it for tok in sub)

    for size in range(len(short), 0, -1):
        for idx in combinations(range(len(short)), size):
            if is_subseq([short[i] for i in idx], long_):
                return size
    return 0


def rouge_n_naive(system, reference, n):
    """Count every reference n-gram occurrence and greedily match it against system occurrences."""
    ref = [tuple(reference[i:i + n]) for i in range(len(reference) - n + 1)]
    if not ref:
        return 0.0
    available = [tuple(system[i:i + n]) for i in range(len(system) - n + 1)]
    hits = 0
    for g in ref:
        if g in available:
            available.remove(g)
            hits += 1
    return hits / len(ref)


def central_difference(f, x, h=1e-5):
    x = np.array(x, dtype=float)
    grad = np.zeros_like(x)
    for idx in np.ndindex(x.shape):
        xp, xm = x.copy(), x.copy()
        xp[idx] += h
        xm[idx] -= h
        grad[idx] = (f(xp) - f(xm)) / (2 * h)
    return grad


def rel_error(a, b, floor=1e-8):
    a, b = np.asarray(a, float), np.asarray(b, float)
    return float(np.max(np.abs(a - b)) / max(floor, np.max(np.abs(a)), np.max(np.abs(b))))


def literal_rank_fixed_point(omega, w, d):
    """Solve the stationary equations of the damped update (numerator Omega_ij,
    denominator sum of w_jk over Omega_jk > 0) directly."""
    n = len(omega)
    A = np.eye(n)
    for i in range(n):
        for j in range(n):
            if j == i or omega[i][j] <= 0:
                continue
            denom = sum(w[j][k] for k in range(n) if k != j and omega[j][k] > 0)
            if denom:
                A[i, j] -= d * omega[i][j] / denom
    return np.linalg.solve(A, np.full(n, 1 - d))


def incoming_rank_fixed_point(omega, d):
    """Weighted PageRank over in-edges with out-weight normalization, solved directly."""
    n = len(omega)
    A = np.eye(n)
    for i in range(n):
        for j in range(n):
            if j == i or omega[j][i] <= 0:
                continue
            out = sum(omega[j][k] for k in range(n) if k != j and omega[j][k] > 0)
            A[i, j] -= d * omega[j][i] / out
    return np.linalg.solve(A, np.full(n, 1 - d))


def total_variation(p, q):
    return 0.5 * float(np.abs(np.asarray(p) - np.asarray(q)).sum())
