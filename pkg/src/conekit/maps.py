"""Linear maps on M_d: superoperator and Choi forms, Kraus decompositions,
conjugation maps ad(a): x -> a^dag x a, and the certified factorization of
compose(psi, ad(a)) into at most rank-k Kraus terms.

A map's superoperator S acts on row-major vectorizations: vec(phi(x)) = S vec(x),
with S[(i*d+j), (k*d+l)] = (phi(e_kl))[i, j].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BadK,
    BadParam,
    BadRank,
    BlockNotPSD,
    DimMismatch,
    EmptyList,
    NotCompletelyPositive,
    NotHermitian,
    NotHermiticityPreserving,
    RankTooHigh,
)
from .linalg import HERM_TOL, MatrixOp, _freeze, max_entangled, reshuffle, swap_matrix, unreshuffle

KRAUS_DROP_TOL = 1e-9
RANK_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class MapRep:
    """Hermiticity-preserving linear map on M_d, stored as its superoperator."""

    d: int
    super_mat: np.ndarray

    def __post_init__(self) -> None:
        s = _freeze(self.super_mat)
        n = self.d * self.d
        if s.shape != (n, n):
            raise DimMismatch(f"superoperator shape {s.shape} != ({n}, {n})")
        c = reshuffle(s, self.d)
        dev = float(np.abs(c - c.conj().T).max())
        if dev > HERM_TOL * max(1.0, float(np.abs(c).max())):
            raise NotHermiticityPreserving(f"Choi deviates from Hermitian by {dev:.3e}")
        object.__setattr__(self, "super_mat", s)

    @classmethod
    def of_matrix(cls, s: np.ndarray) -> "MapRep":
        s = np.asarray(s)
        d = int(round(np.sqrt(s.shape[0])))
        return cls(d, s)


@dataclass(frozen=True, eq=False)
class KrausSet:
    """Kraus operators of a CP map (or a certified CP factor)."""

    operators: tuple
    rank_bound: int | None = None

    def __post_init__(self) -> None:
        if len(self.operators) == 0:
            raise EmptyList("a Kraus set needs at least one operator")
        ops = tuple(_freeze(a) for a in self.operators)
        d = ops[0].shape[0]
        for a in ops:
            if a.shape != (d, d):
                raise DimMismatch("all Kraus operators must share one square shape")
        object.__setattr__(self, "operators", ops)

    @property
    def d(self) -> int:
        return self.operators[0].shape[0]

    def to_map(self) -> MapRep:
        return from_kraus(list(self.operators))


@dataclass(frozen=True)
class Detector:
    """A map together with the positivity level k it is certified for."""

    map: MapRep
    k_level: int
    label: str = ""


def _as_matrix(x) -> np.ndarray:
    if isinstance(x, MatrixOp):
        return x.mat
    return np.asarray(x, dtype=np.complex128)


def apply(phi: MapRep, x) -> MatrixOp:
    """phi(x) for a d x d matrix x."""
    m = _as_matrix(x)
    if m.shape != (phi.d, phi.d):
        raise DimMismatch(f"argument shape {m.shape} != ({phi.d}, {phi.d})")
    return MatrixOp((phi.super_mat @ m.reshape(-1)).reshape(phi.d, phi.d))


def apply_on_right_factor(phi: MapRep, x: MatrixOp) -> MatrixOp:
    """(1_m (x) phi)(x) for x on C^m (x) C^d, acting on the second factor."""
    m_dim, d = x.require_dims()
    if d != phi.d:
        raise DimMismatch(f"second factor size {d} != map dimension {phi.d}")
    s4 = phi.super_mat.reshape(d, d, d, d)
    x4 = x.mat.reshape(m_dim, d, m_dim, d)
    out = np.einsum("jltu,itku->ijkl", s4, x4)
    n = m_dim * d
    return MatrixOp(out.reshape(n, n), dims=(m_dim, d))


def choi(phi: MapRep) -> MatrixOp:
    """Choi matrix sum_ij e_ij (x) phi(e_ij), carried with dims (d, d)."""
    return MatrixOp(reshuffle(phi.super_mat, phi.d), dims=(phi.d, phi.d))


def map_from_choi(c) -> MapRep:
    """Inverse of choi(). The input must be Hermitian."""
    m = _as_matrix(c)
    n = m.shape[0]
    d = int(round(np.sqrt(n)))
    if d * d != n:
        raise DimMismatch(f"Choi matrix size {n} is not a perfect square")
    dev = float(np.abs(m - m.conj().T).max())
    if dev > HERM_TOL * max(1.0, float(np.abs(m).max())):
        raise NotHermitian(f"Choi matrix deviates from Hermitian by {dev:.3e}")
    return MapRep(d, unreshuffle(m, d))


def compose(f: MapRep, g: MapRep) -> MapRep:
    """f o g (g acts first)."""
    if f.d != g.d:
        raise DimMismatch(f"cannot compose maps on M_{f.d} and M_{g.d}")
    return MapRep(f.d, f.super_mat @ g.super_mat)


def adjoint(phi: MapRep) -> MapRep:
    """Adjoint for the Hilbert-Schmidt pairing: super(phi^dag) = super(phi)^dag."""
    return MapRep(phi.d, phi.super_mat.conj().T)


def co(phi: MapRep) -> MapRep:
    """transpose o phi. Satisfies choi(co(phi)) = PT_B(choi(phi))."""
    return compose(transpose_map(phi.d), phi)


def identity_map(d: int) -> MapRep:
    return MapRep(d, np.eye(d * d, dtype=np.complex128))


def transpose_map(d: int) -> MapRep:
    return MapRep(d, swap_matrix(d))


def ad(a) -> MapRep:
    """Conjugation x -> a^dag x a; superoperator kron(a^dag, a^T)."""
    m = _as_matrix(a)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimMismatch(f"expected a square matrix, got shape {m.shape}")
    return MapRep(m.shape[0], np.kron(m.conj().T, m.T))


def from_kraus(ops: list) -> MapRep:
    """Map x -> sum_i a_i^dag x a_i."""
    if len(ops) == 0:
        raise EmptyList("need at least one Kraus operator")
    mats = [_as_matrix(a) for a in ops]
    d = mats[0].shape[0]
    s = np.zeros((d * d, d * d), dtype=np.complex128)
    for a in mats:
        if a.shape != (d, d):
            raise DimMismatch("all Kraus operators must share one square shape")
        s += np.kron(a.conj().T, a.T)
    return MapRep(d, s)


def kraus_decompose(phi: MapRep, tol: float = KRAUS_DROP_TOL) -> KrausSet:
    """Eigen-decompose the Choi matrix into Kraus operators.

    Raises NotCompletelyPositive if the Choi matrix has an eigenvalue below
    -tol (relative to its largest). Eigenvalues under tol * lambda_max are
    dropped as numerical noise.
    """
    c = choi(phi).mat
    w, v = np.linalg.eigh(0.5 * (c + c.conj().T))
    lam_max = max(float(w[-1]), 0.0)
    if float(w[0]) < -tol * max(1.0, lam_max):
        raise NotCompletelyPositive(f"Choi eigenvalue {w[0]:.3e} below the CP floor")
    ops = []
    for lam, vec in zip(w, v.T):
        if lam > tol * max(lam_max, 1e-300):
            ops.append(np.conj((np.sqrt(lam) * vec).reshape(phi.d, phi.d)))
    if not ops:
        ops.append(np.zeros((phi.d, phi.d), dtype=np.complex128))
    return KrausSet(tuple(ops))


def reduction_family(d: int, c: float) -> MapRep:
    """a -> tr(a) 1 - c a. Choi matrix 1_{d^2} - c |psi+><psi+| (psi+ unnormalized);
    k-positive exactly when c <= 1/k, completely positive when c <= 1/d."""
    if d < 1:
        raise BadParam(f"dimension must be >= 1, got {d}")
    if not np.isfinite(c):
        raise BadParam("family parameter must be finite")
    v = np.eye(d, dtype=np.complex128).reshape(-1)
    return MapRep(d, np.outer(v, v.conj()) - c * np.eye(d * d, dtype=np.complex128))


def depolarizing(d: int, p: float) -> MapRep:
    """a -> (1-p) a + p tr(a) 1/d."""
    if not 0.0 <= p <= 1.0:
        raise BadParam(f"depolarizing strength must lie in [0, 1], got {p}")
    v = np.eye(d, dtype=np.complex128).reshape(-1)
    return MapRep(d, (1.0 - p) * np.eye(d * d, dtype=np.complex128) + (p / d) * np.outer(v, v.conj()))


def random_cp_map(d: int, k: int, n_ops: int, seed: int) -> MapRep:
    """CP map built from n_ops random Kraus operators of exact rank <= k,
    each a product of d x k and k x d complex Gaussian factors."""
    if not 1 <= k <= d:
        raise BadRank(f"rank level k={k} outside 1..{d}")
    if n_ops < 1:
        raise BadParam("need n_ops >= 1")
    rng = np.random.default_rng(seed)
    ops = []
    for _ in range(n_ops):
        g1 = rng.normal(size=(d, k)) + 1j * rng.normal(size=(d, k))
        g2 = rng.normal(size=(k, d)) + 1j * rng.normal(size=(k, d))
        a = g1 @ g2
        ops.append(a / np.linalg.norm(a))
    return from_kraus(ops)


def random_hp_map(d: int, seed: int) -> MapRep:
    """Hermiticity-preserving map with a GUE-like random Hermitian Choi matrix."""
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(d * d, d * d)) + 1j * rng.normal(size=(d * d, d * d))
    return map_from_choi(0.5 * (g + g.conj().T))


def random_k_positive_map(d: int, k: int, seed: int) -> MapRep:
    """Random member of a provably k-positive family: a convex mix of a CP map
    and the reduction-family map at its k-positivity boundary c = 1/k."""
    if not 1 <= k <= d:
        raise BadK(f"k={k} outside 1..{d}")
    rng = np.random.default_rng(seed)
    lam = float(rng.uniform(0.0, 1.0))
    cp_seed = int(rng.integers(0, 2**63 - 1))
    cp_part = random_cp_map(d, d, 2, cp_seed)
    red = reduction_family(d, 1.0 / k)
    return MapRep(d, lam * cp_part.super_mat + (1.0 - lam) * red.super_mat)


def block_action(phi: MapRep, psis: list) -> MatrixOp:
    """Matrix on C^k (x) C^d with block (i, j) = phi(|psi_i><psi_j|).

    For k-positive phi and any k vectors this is PSD: the block matrix of the
    dyads equals |eta><eta| with eta = sum_i e_i (x) psi_i.
    """
    if len(psis) == 0:
        raise EmptyList("need at least one vector")
    vs = [np.asarray(p, dtype=np.complex128).reshape(-1) for p in psis]
    d = phi.d
    for v in vs:
        if v.shape[0] != d:
            raise DimMismatch(f"vector length {v.shape[0]} != map dimension {d}")
    k = len(vs)
    out = np.zeros((k * d, k * d), dtype=np.complex128)
    for i in range(k):
        for j in range(k):
            dyad = np.outer(vs[i], vs[j].conj())
            out[i * d:(i + 1) * d, j * d:(j + 1) * d] = apply(phi, dyad).mat
    return MatrixOp(out, dims=(k, d))


def compose_certified(a, phi: MapRep, k: int, tol: float = 1e-9,
                      order: str = "map_after_ad") -> KrausSet:
    """Kraus operators of rank <= k reconstructing compose(phi, ad(a)) exactly,
    assuming rank(a) <= k and phi k-positive.

    Writes a = sum_i |f_i><g_i| from its SVD, eigendecomposes the PSD block
    matrix [phi(|g_i><g_j|)]_ij and slices each scaled eigenvector into the
    second legs of one Kraus operator. A negative block eigenvalue refutes
    k-positivity of phi and raises BlockNotPSD. With order="ad_after_map" the
    same route applied to (a^dag, phi^dag) certifies compose(ad(a), phi).
    """
    if order == "ad_after_map":
        inner = compose_certified(_as_matrix(a).conj().T, adjoint(phi), k, tol=tol)
        return KrausSet(tuple(b.conj().T for b in inner.operators), rank_bound=k)
    if order != "map_after_ad":
        raise BadParam(f"unknown order {order!r}")

    m = _as_matrix(a)
    d = phi.d
    if m.shape != (d, d):
        raise DimMismatch(f"operator shape {m.shape} != ({d}, {d})")
    if not 1 <= k <= d:
        raise BadK(f"k={k} outside 1..{d}")

    u, s, vh = np.linalg.svd(m)
    r = int(np.count_nonzero(s > RANK_TOL * s[0])) if s[0] > 0 else 0
    if r > k:
        raise RankTooHigh(f"rank(a) = {r} exceeds the certified level k = {k}")
    if r == 0:
        return KrausSet((np.zeros((d, d), dtype=np.complex128),), rank_bound=k)

    lefts = [s[i] * u[:, i] for i in range(r)]          # |f_i>, singular values absorbed
    rights = [vh[i, :].conj() for i in range(r)]        # |g_i>, orthonormal

    block = block_action(phi, rights).mat
    w, vecs = np.linalg.eigh(0.5 * (block + block.conj().T))
    lam_max = max(float(w[-1]), 0.0)
    if float(w[0]) < -tol * max(1.0, lam_max):
        raise BlockNotPSD(
            f"block eigenvalue {w[0]:.3e} < 0: the map is not {r}-positive")

    ops = []
    for lam, vec in zip(w, vecs.T):
        if lam <= 1e-14 * max(lam_max, 1e-300):
            continue
        xi = (np.sqrt(lam) * vec).reshape(r, d)
        op = np.zeros((d, d), dtype=np.complex128)
        for j in range(r):
            op += np.outer(lefts[j], xi[j].conj())
        ops.append(op)
    if not ops:
        ops.append(np.zeros((d, d), dtype=np.complex128))

    target = phi.super_mat @ ad(m).super_mat
    recon = np.zeros_like(target)
    for op in ops:
        recon += np.kron(op.conj().T, op.T)
    err = float(np.abs(recon - target).max())
    if err > max(tol, 1e-9) * max(1.0, float(np.abs(target).max())):
        raise BlockNotPSD(f"reconstruction residual {err:.3e} exceeds tolerance")
    return KrausSet(tuple(ops), rank_bound=k)


def reduction_detectors(d: int, include_co: bool = True) -> list[Detector]:
    """Default detector bank: reduction maps at c = 1/k for k = 1..d-1, each
    k-positive by the closed-form threshold, plus their co-maps."""
    dets = []
    for k in range(1, d):
        dets.append(Detector(reduction_family(d, 1.0 / k), k, f"reduction[c=1/{k}]"))
    if include_co:
        for k in range(1, d):
            dets.append(Detector(co(reduction_family(d, 1.0 / k)), k, f"co-reduction[c=1/{k}]"))
    return dets


def max_entangled_projector(d: int) -> MatrixOp:
    """|psi+><psi+| (unnormalized), dims (d, d)."""
    v = max_entangled(d).amp
    return MatrixOp(np.outer(v, v.conj()), dims=(d, d))
