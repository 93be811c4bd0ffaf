"""Entanglement-style detection on states: witnesses built from Choi matrices
of k-positive maps, detector sweeps and threshold scans over named families."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._seesaw import seesaw_minimize
from .certify import DEFAULT_OPTS, SeesawOpts
from .errors import BadFamily, BadK, BadParam, DimMismatch, NotAState
from .linalg import MatrixOp, hermitian_eig, max_entangled, partial_transpose
from .maps import (
    Detector,
    MapRep,
    apply_on_right_factor,
    choi,
    max_entangled_projector,
    reduction_family,
)

STATE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Witness:
    """Hermitian block-positive operator with the level it witnesses."""

    operator: MatrixOp
    k_level: int
    provenance: str = ""


@dataclass(frozen=True)
class DetectionResult:
    min_eigenvalue: float
    fired: bool
    detector_id: str
    implied_lower_bound: int


@dataclass(frozen=True)
class ScanPoint:
    param: float
    min_eig: float
    fired: bool


def _validate_state(rho: MatrixOp, tol: float = STATE_TOL) -> np.ndarray:
    m = rho.mat
    tr = complex(np.trace(m))
    if abs(tr - 1.0) > tol:
        raise NotAState(f"trace {tr:.12g} is not 1 within {tol}")
    w, v = hermitian_eig(m)
    if float(w[0]) < -tol:
        raise NotAState(f"eigenvalue {w[0]:.3e} below the positivity floor")
    w = np.clip(w, 0.0, None)
    return (v * w) @ v.conj().T


def expectation(w: Witness, rho: MatrixOp) -> float:
    """Tr(W rho) for a valid state rho. Nonnegative on every state of Schmidt
    number <= k when W is the Choi matrix of a k-positive map."""
    _validate_state(rho)
    if w.operator.dim != rho.dim:
        raise DimMismatch(f"witness dim {w.operator.dim} != state dim {rho.dim}")
    return float(np.einsum("ij,ji->", w.operator.mat, rho.mat).real)


def detect_schmidt_number(rho: MatrixOp, detector: Detector,
                          tol: float = STATE_TOL) -> DetectionResult:
    """Apply 1 (x) detector to the state; a negative eigenvalue proves the
    Schmidt number exceeds the detector's level."""
    clipped = _validate_state(rho, tol)
    da, db = rho.require_dims()
    moved = apply_on_right_factor(detector.map, MatrixOp(clipped, dims=(da, db)))
    w, _ = hermitian_eig(moved)
    min_eig = float(w[0])
    fired = min_eig < -tol
    return DetectionResult(
        min_eigenvalue=min_eig,
        fired=fired,
        detector_id=detector.label or f"k{detector.k_level}-detector",
        implied_lower_bound=detector.k_level + 1 if fired else 1,
    )


def isotropic_state(d: int, f: float) -> MatrixOp:
    """F-weighted mix of the maximally entangled projector and its complement:
    rho = F P+ + (1-F)(1 - P+)/(d^2 - 1), P+ normalized."""
    if d < 2:
        raise BadParam(f"need d >= 2, got {d}")
    if not 0.0 <= f <= 1.0:
        raise BadParam(f"fidelity must lie in [0, 1], got {f}")
    p_plus = max_entangled_projector(d).mat / d
    eye = np.eye(d * d, dtype=np.complex128)
    rho = f * p_plus + (1.0 - f) * (eye - p_plus) / (d * d - 1)
    return MatrixOp(rho, dims=(d, d))


def werner_state(p: float, d: int = 2) -> MatrixOp:
    """rho = p |psi-><psi-| + (1-p) 1/4 on two qubits. PPT exactly when
    p <= 1/3 (the partial transpose's bottom eigenvalue is (1-3p)/4)."""
    if d != 2:
        raise BadParam("this singlet-plus-noise family is defined for d=2 only")
    if not 0.0 <= p <= 1.0:
        raise BadParam(f"mixing weight must lie in [0, 1], got {p}")
    singlet = np.zeros(4, dtype=np.complex128)
    singlet[1] = 1.0 / np.sqrt(2.0)
    singlet[2] = -1.0 / np.sqrt(2.0)
    rho = p * np.outer(singlet, singlet.conj()) + (1.0 - p) * np.eye(4, dtype=np.complex128) / 4.0
    return MatrixOp(rho, dims=(2, 2))


def witness_from_map(phi: MapRep, k_level: int, provenance: str = "choi-of-map") -> Witness:
    """Choi matrix of a k-positive map, packaged as a Schmidt-number witness."""
    if not 1 <= k_level <= phi.d:
        raise BadK(f"k={k_level} outside 1..{phi.d}")
    return Witness(operator=choi(phi), k_level=k_level, provenance=provenance)


def random_schmidt_bounded_state(d: int, k: int, n_terms: int, seed: int) -> MatrixOp:
    """Random state of Schmidt number <= k: a convex mix of pure states whose
    coefficient matrices factor through rank k."""
    if not 1 <= k <= d:
        raise BadK(f"k={k} outside 1..{d}")
    if n_terms < 1:
        raise BadParam("need n_terms >= 1")
    rng = np.random.default_rng(seed)
    weights = rng.dirichlet(np.ones(n_terms))
    rho = np.zeros((d * d, d * d), dtype=np.complex128)
    for i in range(n_terms):
        g1 = rng.normal(size=(d, k)) + 1j * rng.normal(size=(d, k))
        g2 = rng.normal(size=(k, d)) + 1j * rng.normal(size=(k, d))
        v = (g1 @ g2).reshape(-1)
        v = v / np.linalg.norm(v)
        rho += weights[i] * np.outer(v, v.conj())
    return MatrixOp(rho, dims=(d, d))


def threshold_scan(family: str, d: int, k: int, grid,
                   tol: float = STATE_TOL,
                   opts: SeesawOpts = DEFAULT_OPTS) -> list[ScanPoint]:
    """Sweep a one-parameter family and record where the detector fires.

    isotropic: bottom eigenvalue of (1 (x) reduction[1/k]) rho_F; the flip
    sits at F = k/d. werner (d=2): bottom eigenvalue of the partial
    transpose; flip at p = 1/3. reduction: see-saw best value of the family's
    Choi matrix at level k (closed form 1 - ck); flip at c = 1/k.
    """
    rows: list[ScanPoint] = []
    if family == "isotropic":
        if not 1 <= k <= d:
            raise BadK(f"k={k} outside 1..{d}")
        det = reduction_family(d, 1.0 / k)
        for f in grid:
            rho = isotropic_state(d, float(f))
            w, _ = hermitian_eig(apply_on_right_factor(det, rho))
            rows.append(ScanPoint(float(f), float(w[0]), bool(w[0] < -tol)))
    elif family == "werner":
        if d != 2:
            raise BadParam("werner scans are defined for d=2 only")
        for p in grid:
            rho = werner_state(float(p))
            w, _ = hermitian_eig(partial_transpose(rho))
            rows.append(ScanPoint(float(p), float(w[0]), bool(w[0] < -tol)))
    elif family == "reduction":
        if not 1 <= k <= d:
            raise BadK(f"k={k} outside 1..{d}")
        psi_plus = max_entangled(d).amp
        eye = np.eye(d * d, dtype=np.complex128)
        for c in grid:
            cm = eye - float(c) * np.outer(psi_plus, psi_plus.conj())
            if k == d:
                w, _ = hermitian_eig(cm)
                val = float(w[0])
            else:
                val, _, _ = seesaw_minimize(cm, (d, d), k, restarts=opts.restarts,
                                            max_iters=opts.max_iters,
                                            eps_conv=opts.eps_conv, seed=opts.seed)
            rows.append(ScanPoint(float(c), val, bool(val < -tol)))
    else:
        raise BadFamily(f"unknown family {family!r}")
    return rows
