"""Bipartite linear algebra: operators with subsystem structure, Schmidt
decompositions, partial transposition and the reshuffling between
superoperator and Choi orderings.

Index convention used everywhere: row-major Kronecker ordering, first factor
slow, so e_i (x) e_j sits at flat index i*d_B + j and np.kron matches it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimMismatch, MissingDims, NotHermitian, ZeroVector

HERM_TOL = 1e-10
ZERO_TOL = 1e-14
SCHMIDT_RANK_TOL = 1e-8


def _freeze(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=np.complex128, copy=True, order="C")
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class MatrixOp:
    """Dense complex square matrix, optionally carrying bipartite dims (d_A, d_B)."""

    mat: np.ndarray
    dims: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        m = _freeze(self.mat)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimMismatch(f"expected a square matrix, got shape {m.shape}")
        if self.dims is not None:
            da, db = self.dims
            if da < 1 or db < 1 or da * db != m.shape[0]:
                raise DimMismatch(f"dims {self.dims} incompatible with size {m.shape[0]}")
            object.__setattr__(self, "dims", (int(da), int(db)))
        object.__setattr__(self, "mat", m)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def require_dims(self) -> tuple[int, int]:
        if self.dims is None:
            raise MissingDims("operation needs bipartite dims but none are declared")
        return self.dims


@dataclass(frozen=True, eq=False)
class BipartiteVector:
    """Vector in C^{d_A} (x) C^{d_B}, amplitudes in row-major Kronecker order."""

    d_a: int
    d_b: int
    amp: np.ndarray

    def __post_init__(self) -> None:
        a = np.array(self.amp, dtype=np.complex128, copy=True, order="C").reshape(-1)
        if a.shape[0] != self.d_a * self.d_b:
            raise DimMismatch(f"length {a.shape[0]} != {self.d_a}*{self.d_b}")
        a.setflags(write=False)
        object.__setattr__(self, "amp", a)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amp))

    def matrix(self) -> np.ndarray:
        """d_A x d_B coefficient matrix M with M[i, j] = amp[i*d_B + j]."""
        return self.amp.reshape(self.d_a, self.d_b)


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    """Schmidt data of a bipartite vector: v = sum_l c_l u_l (x) w_l."""

    coefficients: np.ndarray          # nonnegative, descending
    left_vectors: np.ndarray          # rows u_l, orthonormal
    right_vectors: np.ndarray         # rows w_l, orthonormal
    tol: float = field(default=SCHMIDT_RANK_TOL)

    @property
    def rank(self) -> int:
        c = self.coefficients
        if c.size == 0 or c[0] <= 0.0:
            return 0
        return int(np.count_nonzero(c > self.tol * c[0]))


def schmidt_decompose(v: BipartiteVector, tol: float = SCHMIDT_RANK_TOL) -> SchmidtDecomposition:
    """SVD of the coefficient matrix M = U diag(c) Vh, so that
    sum_l c_l kron(u_l, w_l) with w_l = Vh[l, :] reconstructs the input."""
    if v.norm < ZERO_TOL:
        raise ZeroVector("cannot decompose a (numerically) zero vector")
    m = v.matrix()
    u, s, vh = np.linalg.svd(m)
    r = min(v.d_a, v.d_b)
    return SchmidtDecomposition(
        coefficients=s[:r].copy(),
        left_vectors=u[:, :r].T.copy(),
        right_vectors=vh[:r, :].copy(),
        tol=tol,
    )


def schmidt_rank(v: BipartiteVector, tol: float = SCHMIDT_RANK_TOL) -> int:
    return schmidt_decompose(v, tol=tol).rank


def partial_transpose(x: MatrixOp, subsystem: str = "B") -> MatrixOp:
    """Transpose one tensor factor. For subsystem B:
    out_{ij,kl} = x_{il,kj}. Involutive and trace preserving."""
    da, db = x.require_dims()
    t4 = x.mat.reshape(da, db, da, db)
    if subsystem == "B":
        out = t4.transpose(0, 3, 2, 1)
    elif subsystem == "A":
        out = t4.transpose(2, 1, 0, 3)
    else:
        raise DimMismatch(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    n = da * db
    return MatrixOp(out.reshape(n, n), dims=(da, db))


def reshuffle(superop: np.ndarray, d: int) -> np.ndarray:
    """Superoperator ordering -> Choi ordering: out_{ij,kl} = in_{jl,ik}."""
    s4 = np.asarray(superop, dtype=np.complex128).reshape(d, d, d, d)
    return np.einsum("jlik->ijkl", s4).reshape(d * d, d * d)


def unreshuffle(choi: np.ndarray, d: int) -> np.ndarray:
    """Choi ordering -> superoperator ordering: out_{ab,ce} = in_{ca,eb}.
    Exact inverse of reshuffle (pure index permutation, no arithmetic)."""
    c4 = np.asarray(choi, dtype=np.complex128).reshape(d, d, d, d)
    return np.einsum("caeb->abce", c4).reshape(d * d, d * d)


def hermitian_eig(x: MatrixOp | np.ndarray, tol: float = HERM_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition with a Hermiticity gate. Ascending eigenvalues."""
    m = x.mat if isinstance(x, MatrixOp) else np.asarray(x, dtype=np.complex128)
    dev = float(np.abs(m - m.conj().T).max())
    if dev > tol * max(1.0, float(np.abs(m).max())):
        raise NotHermitian(f"max |X - X^dag| = {dev:.3e} exceeds tolerance")
    w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    return w, v


def hs_inner(a: MatrixOp | np.ndarray, b: MatrixOp | np.ndarray, tol: float = HERM_TOL) -> float:
    """Hilbert-Schmidt pairing Tr(a b) of two Hermitian matrices (real)."""
    ma = a.mat if isinstance(a, MatrixOp) else np.asarray(a, dtype=np.complex128)
    mb = b.mat if isinstance(b, MatrixOp) else np.asarray(b, dtype=np.complex128)
    if ma.shape != mb.shape:
        raise DimMismatch(f"shape mismatch {ma.shape} vs {mb.shape}")
    for m in (ma, mb):
        dev = float(np.abs(m - m.conj().T).max())
        if dev > tol * max(1.0, float(np.abs(m).max())):
            raise NotHermitian("hs_inner arguments must be Hermitian")
    return float(np.einsum("ij,ji->", ma, mb).real)


def max_entangled(d: int, normalized: bool = False) -> BipartiteVector:
    """sum_i e_i (x) e_i on C^d (x) C^d; unnormalized unless asked."""
    amp = np.eye(d, dtype=np.complex128).reshape(-1)
    if normalized:
        amp = amp / np.sqrt(d)
    return BipartiteVector(d, d, amp)


def swap_matrix(d: int) -> np.ndarray:
    """SWAP on C^d (x) C^d: sum_ij e_ij (x) e_ji."""
    s = np.zeros((d * d, d * d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            s[i * d + j, j * d + i] = 1.0
    return s


def numerical_rank(m: np.ndarray, tol: float = 1e-8) -> int:
    s = np.linalg.svd(np.asarray(m), compute_uv=False)
    if s.size == 0 or s[0] <= 0.0:
        return 0
    return int(np.count_nonzero(s > tol * s[0]))
