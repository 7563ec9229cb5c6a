"""Hot numeric kernels with numba acceleration and a pure-numpy fallback.

Set MAXPAIR_NUMBA=0 to force the numpy path (useful for debugging and for
the benchmark in benchmarks/bench_kernels.py).
"""

from __future__ import annotations

import os

import numpy as np

USE_NUMBA = os.environ.get("MAXPAIR_NUMBA", "1") != "0"

if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        USE_NUMBA = False

__all__ = ["USE_NUMBA", "closure_members", "assoc_violation", "power_table"]


def _closure_py(mul: np.ndarray, seed: np.ndarray) -> np.ndarray:
    """Frontier-based subgroup closure, vectorized numpy."""
    n = mul.shape[0]
    member = np.zeros(n, dtype=np.bool_)
    member[0] = True
    member[seed] = True
    elems = np.flatnonzero(member)
    frontier = elems
    while frontier.size:
        prod = mul[np.ix_(elems, frontier)].ravel()
        prod = np.concatenate([prod, mul[np.ix_(frontier, elems)].ravel()])
        new = np.unique(prod[~member[prod]])
        member[new] = True
        elems = np.flatnonzero(member)
        frontier = new
    return member


def _assoc_py(mul: np.ndarray) -> int:
    """Return -1 if mul is associative, else the index a of a bad triple."""
    n = mul.shape[0]
    for a in range(n):
        left = mul[mul[a], :]          # (a*b)*c
        right = mul[a][mul]            # a*(b*c)
        if not np.array_equal(left, right):
            return a
    return -1


if USE_NUMBA:

    @njit(cache=False)
    def _closure_nb(mul, seed):
        n = mul.shape[0]
        member = np.zeros(n, dtype=np.bool_)
        elems = np.empty(n, dtype=np.int64)
        cnt = 0
        member[0] = True
        elems[cnt] = 0
        cnt += 1
        for s in seed:
            if not member[s]:
                member[s] = True
                elems[cnt] = s
                cnt += 1
        head = 0
        while head < cnt:
            x = elems[head]
            head += 1
            j = 0
            while j < cnt:
                y = elems[j]
                p = mul[x, y]
                if not member[p]:
                    member[p] = True
                    elems[cnt] = p
                    cnt += 1
                p = mul[y, x]
                if not member[p]:
                    member[p] = True
                    elems[cnt] = p
                    cnt += 1
                j += 1
        return member

    @njit(cache=False)
    def _assoc_nb(mul):
        n = mul.shape[0]
        for a in range(n):
            for b in range(n):
                ab = mul[a, b]
                for c in range(n):
                    if mul[ab, c] != mul[a, mul[b, c]]:
                        return a
        return -1


def closure_members(mul: np.ndarray, seed) -> np.ndarray:
    """Boolean membership vector of the subgroup generated by ``seed``."""
    seed = np.asarray(list(seed), dtype=np.int64)
    if USE_NUMBA:
        return _closure_nb(mul, seed)
    return _closure_py(mul, seed)


def assoc_violation(mul: np.ndarray) -> int:
    """First row index participating in a non-associative triple, or -1."""
    if USE_NUMBA:
        return int(_assoc_nb(mul))
    return _assoc_py(mul)


def power_table(mul: np.ndarray, k: int) -> np.ndarray:
    """x -> x**k for every element, by binary powering on index arrays."""
    n = mul.shape[0]
    result = np.zeros(n, dtype=mul.dtype)  # x**0 = identity
    base = np.arange(n, dtype=mul.dtype)
    while k:
        if k & 1:
            result = mul[result, base]
        base = mul[base, base]
        k >>= 1
    return result
