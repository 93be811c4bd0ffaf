"""Rank-constrained quadratic-form minimizer (the hot kernel).

Minimizes <psi| C |psi> over unit vectors psi in C^{dA} (x) C^{dB} of Schmidt
rank <= k by alternating eigenproblems: with one side's orthonormal frame
fixed, the optimal other side is the bottom eigenvector of a small effective
matrix, so the objective is exact and monotone at every half-step.

The kernel body is plain numpy written within numba's nopython subset. It is
compiled with @njit when numba imports and CONEKIT_NO_NUMBA is unset;
otherwise the same function runs as pure Python. benchmarks/bench_seesaw.py
times the two paths against each other.
"""

from __future__ import annotations

import os

import numpy as np

ENV_FLAG = "CONEKIT_NO_NUMBA"


def _seesaw_kernel(C, da, db, k, starts, max_iters, eps_conv):
    # C: (da*db, da*db) complex128 Hermitian, contiguous.
    # starts: (restarts, da, db) complex128.
    # Returns (best value, best coefficient matrix, total sweeps).
    n_restarts = starts.shape[0]
    best_q = np.inf
    best_m = np.zeros((da, db), dtype=np.complex128)
    sweeps = 0
    for r in range(n_restarts):
        m = starts[r] / np.sqrt(np.sum(np.abs(starts[r]) ** 2))
        q = np.inf
        q_prev = np.inf
        for _ in range(max_iters):
            # Fix the right frame V (rows span the row space of m, padded to k).
            u0, s0, vh0 = np.linalg.svd(m)
            v = np.ascontiguousarray(vh0[:k, :])
            aeff = np.zeros((da * k, da * k), dtype=np.complex128)
            for a in range(da):
                for c in range(da):
                    for i in range(k):
                        for l in range(k):
                            acc = 0.0 + 0.0j
                            for b in range(db):
                                cv = np.conj(v[i, b]) * 1.0
                                for e in range(db):
                                    acc += cv * C[a * db + b, c * db + e] * v[l, e]
                            aeff[a * k + i, c * k + l] = acc
            aeff = 0.5 * (aeff + np.conj(aeff.T))
            w_a, vec_a = np.linalg.eigh(aeff)
            q = w_a[0]
            p = np.ascontiguousarray(vec_a[:, 0]).reshape(da, k)
            m = p @ v
            # Fix the left frame U (columns span the column space of m).
            u1, s1, vh1 = np.linalg.svd(m)
            u = np.ascontiguousarray(u1[:, :k])
            beff = np.zeros((k * db, k * db), dtype=np.complex128)
            for i in range(k):
                for l in range(k):
                    for a in range(da):
                        cu = np.conj(u[a, i])
                        for c in range(da):
                            f = cu * u[c, l]
                            for b in range(db):
                                for e in range(db):
                                    beff[i * db + b, l * db + e] += (
                                        f * C[a * db + b, c * db + e]
                                    )
            beff = 0.5 * (beff + np.conj(beff.T))
            w_b, vec_b = np.linalg.eigh(beff)
            q = w_b[0]
            wv = np.ascontiguousarray(vec_b[:, 0]).reshape(k, db)
            m = u @ wv
            sweeps += 1
            if abs(q_prev - q) < eps_conv:
                break
            q_prev = q
        if q < best_q:
            best_q = q
            best_m = m.copy()
    return best_q, best_m, sweeps


_py_kernel = _seesaw_kernel
_jit_kernel = None
if not os.environ.get(ENV_FLAG):
    try:
        from numba import njit

        _jit_kernel = njit(cache=True)(_seesaw_kernel)
    except ImportError:
        _jit_kernel = None

NUMBA_ACTIVE = _jit_kernel is not None
_active_kernel = _jit_kernel if NUMBA_ACTIVE else _py_kernel


def random_starts(da: int, db: int, k: int, restarts: int, seed: int) -> np.ndarray:
    """Rank <= k complex Gaussian start matrices; restart r uses seed + r."""
    starts = np.empty((restarts, da, db), dtype=np.complex128)
    for r in range(restarts):
        rng = np.random.default_rng(seed + r)
        g1 = rng.normal(size=(da, k)) + 1j * rng.normal(size=(da, k))
        g2 = rng.normal(size=(k, db)) + 1j * rng.normal(size=(k, db))
        starts[r] = g1 @ g2
    return starts


def seesaw_minimize(c_mat: np.ndarray, dims: tuple[int, int], k: int,
                    restarts: int = 20, max_iters: int = 500,
                    eps_conv: float = 1e-10, seed: int = 42,
                    kernel=None) -> tuple[float, np.ndarray, int]:
    """Best value, best dA x dB coefficient matrix (unit Frobenius norm, rank
    <= k) and total sweep count over all restarts. Deterministic in seed."""
    da, db = dims
    c = np.ascontiguousarray(c_mat, dtype=np.complex128)
    starts = random_starts(da, db, k, restarts, seed)
    fn = kernel if kernel is not None else _active_kernel
    best_q, best_m, sweeps = fn(c, da, db, k, starts, int(max_iters), float(eps_conv))
    return float(best_q), best_m, int(sweeps)
