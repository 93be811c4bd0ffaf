"""Cone membership certification.

Deciding k-block positivity is co-NP-hard in the dimension, so the certifiers
here are one-sided: a ViolationFound carries a re-verifiable witness vector, a
MembershipProven names a constructive proof, and everything else is
Inconclusive with the best value found.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from ._seesaw import seesaw_minimize
from .errors import BadK, ConekitError, DimMismatch, MissingDims, NotPSD
from .linalg import (
    BipartiteVector,
    MatrixOp,
    hermitian_eig,
    hs_inner,
    numerical_rank,
    partial_transpose,
    schmidt_decompose,
)
from .maps import (
    Detector,
    KrausSet,
    MapRep,
    apply_on_right_factor,
    choi,
    co,
    reduction_detectors,
)


class Verdict(str, Enum):
    VIOLATION = "ViolationFound"
    MEMBERSHIP = "MembershipProven"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class SeesawOpts:
    restarts: int = 20
    max_iters: int = 500
    eps_conv: float = 1e-10
    eps_neg: float = 1e-9
    seed: int = 42
    crosscheck: bool = False


DEFAULT_OPTS = SeesawOpts()


@dataclass(frozen=True, eq=False)
class Certificate:
    verdict: Verdict
    value: float
    witness: BipartiteVector | None = None
    detail: str = ""
    restarts_used: int = 0
    extras: dict | None = None


@dataclass(frozen=True, eq=False)
class ConeReport:
    d: int
    p: dict
    co_p: dict
    cp: bool
    schmidt_number: tuple[int, int] | None
    km_positive: dict
    km_superpositive: dict
    decomposable: Certificate | None


def _bipartite_dims(c: MatrixOp) -> tuple[int, int]:
    if c.dims is not None:
        return c.dims
    d = int(round(np.sqrt(c.dim)))
    if d * d != c.dim:
        raise MissingDims("matrix size is not a perfect square and no dims declared")
    return (d, d)


def _witness_quadratic_form(c: np.ndarray, w: BipartiteVector) -> float:
    val = complex(w.amp.conj() @ (c @ w.amp))
    return float(val.real)


def k_block_positive_certify(c: MatrixOp, k: int,
                             opts: SeesawOpts = DEFAULT_OPTS) -> Certificate:
    """Certify <psi|C|psi> >= 0 over Schmidt rank <= k unit vectors.

    PSD input is a constructive proof for every k. For k = min(dims) the
    rank constraint is vacuous and the bottom eigenpair decides. Otherwise
    the see-saw minimizer searches for a violating vector; its witnesses are
    re-verified against C before being reported.
    """
    da, db = _bipartite_dims(c)
    kmax = min(da, db)
    if not 1 <= k <= kmax:
        raise BadK(f"k={k} outside 1..{kmax}")
    w, v = hermitian_eig(c)
    lam_min = float(w[0])
    if lam_min >= -opts.eps_neg:
        return Certificate(Verdict.MEMBERSHIP, lam_min, detail="choi-psd")
    if k == kmax:
        wit = BipartiteVector(da, db, v[:, 0])
        val = _witness_quadratic_form(c.mat, wit)
        return Certificate(Verdict.VIOLATION, val, witness=wit, detail="min-eigenvector")
    val, m, _ = seesaw_minimize(c.mat, (da, db), k, restarts=opts.restarts,
                                max_iters=opts.max_iters, eps_conv=opts.eps_conv,
                                seed=opts.seed)
    wit = BipartiteVector(da, db, m.reshape(-1))
    val_check = _witness_quadratic_form(c.mat, wit)
    if abs(val_check - val) > 1e-8 * max(1.0, abs(val)):
        raise ConekitError("optimizer value disagrees with its own witness")
    if val_check < -opts.eps_neg:
        if schmidt_decompose(wit).rank > k:
            raise ConekitError("witness Schmidt rank exceeds the queried level")
        return Certificate(Verdict.VIOLATION, val_check, witness=wit,
                           detail="seesaw", restarts_used=opts.restarts)
    return Certificate(Verdict.INCONCLUSIVE, val_check, detail="seesaw-best",
                       restarts_used=opts.restarts)


def is_cp(phi: MapRep, tol: float = 1e-9) -> Certificate:
    """Complete positivity via the bottom Choi eigenpair."""
    c = choi(phi)
    w, v = hermitian_eig(c)
    lam_min = float(w[0])
    if lam_min >= -tol:
        return Certificate(Verdict.MEMBERSHIP, lam_min, detail="choi-psd")
    wit = BipartiteVector(phi.d, phi.d, v[:, 0])
    return Certificate(Verdict.VIOLATION, _witness_quadratic_form(c.mat, wit),
                       witness=wit, detail="min-eigenvector")


def is_ccp(phi: MapRep, tol: float = 1e-9) -> Certificate:
    """Complete copositivity: the partially transposed Choi matrix is tested."""
    c = partial_transpose(choi(phi))
    w, v = hermitian_eig(c)
    lam_min = float(w[0])
    if lam_min >= -tol:
        return Certificate(Verdict.MEMBERSHIP, lam_min, detail="pt-choi-psd")
    wit = BipartiteVector(phi.d, phi.d, v[:, 0])
    return Certificate(Verdict.VIOLATION, _witness_quadratic_form(c.mat, wit),
                       witness=wit, detail="pt-min-eigenvector")


def _crosscheck_violation(phi: MapRep, cert: Certificate, k: int,
                          opts: SeesawOpts) -> Certificate:
    """Re-express a k-positivity violation as a failure of positivity of
    x -> (1 (x) phi)((q (x) 1) x (q (x) 1)) for an explicit k-dim projection q
    built from the witness's Schmidt frame."""
    wit = cert.witness
    sd = schmidt_decompose(wit)
    r = sd.rank
    d = phi.d
    u_rows = sd.left_vectors          # orthonormal rows, min(dims) of them
    if u_rows.shape[0] < k:
        raise ConekitError("not enough frame vectors to build a k-dim projection")
    q = np.zeros((d, d), dtype=np.complex128)
    for l in range(k):
        q += np.outer(u_rows[l], u_rows[l].conj())
    if (abs(np.trace(q).real - k) > 1e-9
            or float(np.abs(q @ q - q).max()) > 1e-9
            or float(np.abs(q - q.conj().T).max()) > 1e-9):
        raise ConekitError("constructed q is not a rank-k projection")
    chi = np.zeros(d * d, dtype=np.complex128)
    beta = np.zeros(d * d, dtype=np.complex128)
    for l in range(r):
        chi += np.kron(u_rows[l], u_rows[l].conj())
        beta += sd.coefficients[l] * np.kron(u_rows[l], sd.right_vectors[l])
    q_ext = np.kron(q, np.eye(d, dtype=np.complex128))
    sandwiched = q_ext @ np.outer(chi, chi.conj()) @ q_ext
    mapped = apply_on_right_factor(phi, MatrixOp(sandwiched, dims=(d, d))).mat
    val = complex(beta.conj() @ (mapped @ beta)).real
    if abs(val - cert.value) > 1e-8 * max(1.0, abs(cert.value)):
        raise ConekitError(
            f"projection-form value {val:.6e} disagrees with witness value {cert.value:.6e}")
    if val >= -opts.eps_neg:
        raise ConekitError("projection-form value is not negative")
    return replace(cert, detail=cert.detail + "+projection-crosscheck")


def is_k_positive_certify(phi: MapRep, k: int,
                          opts: SeesawOpts = DEFAULT_OPTS) -> Certificate:
    """k-positivity of phi == k-block positivity of its Choi matrix."""
    cert = k_block_positive_certify(choi(phi), k, opts)
    if opts.crosscheck and cert.verdict is Verdict.VIOLATION:
        cert = _crosscheck_violation(phi, cert, k, opts)
    return cert


def dual_pairing(phi: MapRep, psi: MapRep) -> float:
    """Tr(C_phi C_psi). Nonnegative whenever one map is in S_k and the other
    in P_k (the cones are mutually dual under this pairing)."""
    if phi.d != psi.d:
        raise DimMismatch(f"maps act on M_{phi.d} and M_{psi.d}")
    return hs_inner(choi(phi).mat, choi(psi).mat)


def schmidt_number_bounds(c: MatrixOp, detectors: list[Detector] | None = None,
                          construction: KrausSet | None = None,
                          tol: float = 1e-9) -> tuple[int, int]:
    """(lower, upper) bounds on the Schmidt number of a PSD bipartite matrix.

    Lower bound: 1 + the largest k among detectors that fire (a k-positive
    map sends Schmidt-number <= k states to PSD, so a negative eigenvalue of
    (1 (x) psi)(C) proves Schmidt number >= k+1). Upper bound: the largest
    operator rank when a Kraus construction is supplied, the Schmidt rank of
    the range vector when C has rank one, else min(dims).
    """
    da, db = _bipartite_dims(c)
    w, _ = hermitian_eig(c)
    if float(w[0]) < -tol * max(1.0, float(w[-1])):
        raise NotPSD(f"matrix has eigenvalue {w[0]:.3e}; Schmidt number undefined")
    if detectors is None:
        detectors = reduction_detectors(db)
    cm = MatrixOp(c.mat, dims=(da, db))
    lower = 1
    for det in detectors:
        moved = apply_on_right_factor(det.map, cm)
        w_det, _ = hermitian_eig(moved)
        if float(w_det[0]) < -tol:
            lower = max(lower, det.k_level + 1)
    kmax = min(da, db)
    if construction is not None:
        upper = 0
        for op in construction.operators:
            upper = max(upper, numerical_rank(op))
        upper = max(1, min(upper, kmax))
    elif numerical_rank(c.mat) == 1:
        w_eig, v_eig = hermitian_eig(c)
        upper = schmidt_decompose(BipartiteVector(da, db, v_eig[:, -1])).rank
    else:
        upper = kmax
    if lower > upper:
        raise ConekitError(
            f"inconsistent bounds lower={lower} > upper={upper}; a detector's k tag is wrong")
    return lower, upper


def _flag(*certs) -> str:
    if any(cc.verdict is Verdict.VIOLATION for cc in certs):
        return "violated"
    if all(cc.verdict is Verdict.MEMBERSHIP for cc in certs):
        return "proven"
    return "inconclusive"


def _bound_flag(bounds: tuple[int, int] | None, psd_cert: Certificate, k: int) -> Certificate:
    """Schmidt-number evidence for membership in S_k, shaped as a certificate
    so it can feed _flag."""
    if psd_cert.verdict is Verdict.VIOLATION:
        return Certificate(Verdict.VIOLATION, psd_cert.value, detail="not-cp")
    if bounds is None:
        return Certificate(Verdict.INCONCLUSIVE, 0.0, detail="no-bounds")
    lower, upper = bounds
    if lower > k:
        return Certificate(Verdict.VIOLATION, float(k - lower), detail="detector-fired")
    if upper <= k:
        return Certificate(Verdict.MEMBERSHIP, 0.0, detail="rank-bound")
    return Certificate(Verdict.INCONCLUSIVE, 0.0, detail="bounds-straddle")


def classify(phi: MapRep, opts: SeesawOpts = DEFAULT_OPTS,
             km_pairs: list[tuple[int, int]] | None = None,
             include_dec: bool = True) -> ConeReport:
    """Certificates for every level of the positivity / copositivity chains,
    Schmidt-number evidence for the Choi matrix when it is PSD, and combined
    flags for the two-index cones.

    A violation witness found at level k is inherited upward (it is a valid
    witness at every k' > k), so reports never claim membership above a
    refuted level.
    """
    d = phi.d
    if km_pairs is None:
        km_pairs = [(k, m) for k in range(1, d + 1) for m in range(1, d + 1)]

    def chain(target: MapRep) -> dict:
        certs: dict[int, Certificate] = {}
        best_viol: Certificate | None = None
        target_choi = choi(target)
        for k in range(1, d + 1):
            cert = k_block_positive_certify(target_choi, k, opts)
            if best_viol is not None and cert.value > best_viol.value:
                inherited = Certificate(Verdict.VIOLATION, best_viol.value,
                                        witness=best_viol.witness,
                                        detail=best_viol.detail + "+inherited",
                                        restarts_used=cert.restarts_used)
                cert = inherited
            if cert.verdict is Verdict.VIOLATION:
                if best_viol is None or cert.value < best_viol.value:
                    best_viol = cert
            certs[k] = cert
        return certs

    p = chain(phi)
    co_phi = co(phi)
    co_p = chain(co_phi)
    cp = p[d].verdict is Verdict.MEMBERSHIP
    ccp = co_p[d].verdict is Verdict.MEMBERSHIP

    bounds = schmidt_number_bounds(choi(phi)) if cp else None
    co_bounds = schmidt_number_bounds(choi(co_phi)) if ccp else None

    km_positive = {}
    km_superpositive = {}
    for k, m in km_pairs:
        km_positive[(k, m)] = _flag(p[k], co_p[m])
        km_superpositive[(k, m)] = _flag(_bound_flag(bounds, p[d], k),
                                         _bound_flag(co_bounds, co_p[d], m))

    dec = decomposable_certify(choi(phi), opts=opts) if include_dec else None
    return ConeReport(d=d, p=p, co_p=co_p, cp=cp, schmidt_number=bounds,
                      km_positive=km_positive, km_superpositive=km_superpositive,
                      decomposable=dec)


def _clip_psd(m: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    w = np.clip(w, 0.0, None)
    return (v * w) @ v.conj().T


def decomposable_certify(c: MatrixOp, opts: SeesawOpts = DEFAULT_OPTS,
                         max_sweeps: int = 2000) -> Certificate:
    """Search for C = A + PT(B) with A, B PSD (Dykstra-corrected alternating
    projections between the PSD cone and its partial-transpose slide).

    Heuristic: success returns MembershipProven with the re-verified pair in
    extras; failure to converge is Inconclusive, never a refutation.
    """
    da, db = c.require_dims()
    w0, _ = hermitian_eig(c)
    target = 0.5 * (c.mat + c.mat.conj().T)

    def pt(m: np.ndarray) -> np.ndarray:
        return partial_transpose(MatrixOp(m, dims=(da, db))).mat

    x = target.copy()
    p_inc = np.zeros_like(target)
    q_inc = np.zeros_like(target)
    a_best = None
    res_best = np.inf
    sweeps_done = 0
    for sweep in range(max_sweeps):
        y = _clip_psd(x + p_inc)
        p_inc = x + p_inc - y
        z = y + q_inc
        x = target - pt(_clip_psd(pt(target - z)))
        q_inc = z - x
        sweeps_done = sweep + 1
        b = _clip_psd(pt(target - y))
        res = float(np.abs(target - y - pt(b)).max())
        if res < res_best:
            res_best = res
            a_best = y
        if res_best < opts.eps_neg:
            break

    a = _clip_psd(a_best)
    b = _clip_psd(pt(target - a))
    residual = float(np.abs(target - a - pt(b)).max())
    extras = {"A": a, "B": b, "residual": residual, "sweeps": sweeps_done}
    if residual < opts.eps_neg:
        return Certificate(Verdict.MEMBERSHIP, residual, detail="psd+pt-psd-split",
                           extras=extras)
    return Certificate(Verdict.INCONCLUSIVE, residual, detail="no-split-found",
                       extras=extras)
