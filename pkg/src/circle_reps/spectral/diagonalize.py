from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np
import scipy.linalg as la

from ..errors import ToleranceError
from ..utils.logging_utils import get_logger
from .family import ToleranceConfig, UnitaryFamily, require_family

logger = get_logger(__name__)

_MAX_SPLIT_DEPTH = 8


@dataclass(frozen=True, eq=False)
class Diagonalization:
    """Columns of ``basis`` are joint eigenvectors; ``phases[v, x]`` is in [0, 1)."""

    basis: np.ndarray
    phases: np.ndarray
    residual: float
    orthonormality: float
    attempts: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "dim": int(self.basis.shape[0]),
            "phases": self.phases.tolist(),
            "residual": self.residual,
            "orthonormality": self.orthonormality,
            "attempts": self.attempts,
        }


def _clusters(evals: np.ndarray, tol: float) -> list[np.ndarray]:
    groups: list[list[int]] = []
    for k in range(len(evals)):
        if groups and abs(evals[k] - evals[groups[-1][-1]]) <= tol:
            groups[-1].append(k)
        else:
            groups.append([k])
    return [np.array(g) for g in groups]


def _is_scalar_block(
    mats: Sequence[np.ndarray], vecs: np.ndarray, tol: float
) -> bool:
    k = vecs.shape[1]
    for u in mats:
        block = vecs.conj().T @ u @ vecs
        scalar = np.trace(block) / k
        if np.linalg.norm(block - scalar * np.eye(k)) > tol:
            return False
    return True


def _split(
    mats: Sequence[np.ndarray],
    vecs: np.ndarray,
    tol: float,
    rng: np.random.Generator,
    depth: int = 0,
) -> np.ndarray:
    """Orthonormal joint eigenbasis of the invariant subspace spanned by ``vecs``."""
    coeffs = rng.standard_normal(len(mats)) + 1j * rng.standard_normal(len(mats))
    combo = sum(c * (vecs.conj().T @ u @ vecs) for c, u in zip(coeffs, mats))
    hermitian = (combo + combo.conj().T) / 2
    evals, evecs = la.eigh(hermitian)
    refined = vecs @ evecs

    scale = max(1.0, float(np.abs(coeffs).sum()))
    for inds in _clusters(evals, tol * scale):
        if len(inds) < 2 or depth >= _MAX_SPLIT_DEPTH:
            continue
        sub = refined[:, inds]
        if not _is_scalar_block(mats, sub, tol):
            # accidental collision of distinct joint eigenvalues
            refined[:, inds] = _split(mats, sub, tol, rng, depth + 1)
    return refined


def _rayleigh_phases(
    mats: Sequence[np.ndarray], basis: np.ndarray
) -> tuple[np.ndarray, float]:
    d = basis.shape[1]
    phases = np.zeros((d, len(mats)))
    worst = 0.0
    for x, u in enumerate(mats):
        images = u @ basis
        quotients = np.einsum("ij,ij->j", basis.conj(), images)
        angles = np.mod(np.angle(quotients) / (2 * np.pi), 1.0)
        angles[angles >= 1.0] = 0.0
        phases[:, x] = angles
        eigen = np.exp(2j * np.pi * angles)
        residuals = np.linalg.norm(images - basis * eigen, axis=0)
        worst = max(worst, float(residuals.max(initial=0.0)))
    return phases, worst


def simultaneous_diagonalize(
    family: UnitaryFamily,
    cfg: ToleranceConfig,
    rng: np.random.Generator | None = None,
) -> Diagonalization:
    """Joint eigenbasis of a commuting unitary family with per-point phases.

    Diagonalizes the Hermitian part of a random complex combination, splits
    accidental eigenvalue collisions recursively, and retries with a fresh
    combination while the residual target is missed.
    """
    require_family(family, cfg)
    if rng is None:
        rng = np.random.default_rng()
    mats = family.matrices
    start = np.eye(family.dim, dtype=np.complex128)

    best: Diagonalization | None = None
    for attempt in range(1, cfg.max_attempts + 1):
        basis = _split(mats, start, cfg.cluster_tol, rng)
        phases, residual = _rayleigh_phases(mats, basis)
        ortho = float(np.linalg.norm(basis.conj().T @ basis - start))
        result = Diagonalization(basis, phases, residual, ortho, attempt)
        if residual <= cfg.cluster_tol and ortho <= cfg.cluster_tol:
            logger.debug("Diagonalized d=%d in %d attempt(s)", family.dim, attempt)
            return result
        logger.warning(
            "Attempt %d missed the residual target: residual=%.3e orthonormality=%.3e",
            attempt,
            residual,
            ortho,
        )
        if best is None or max(residual, ortho) < max(best.residual, best.orthonormality):
            best = result

    assert best is not None
    msg = (
        f"Simultaneous diagonalization failed after {cfg.max_attempts} attempts; "
        f"worst residual {max(best.residual, best.orthonormality):.3e}"
    )
    raise ToleranceError(
        msg,
        witness={"residual": best.residual, "orthonormality": best.orthonormality},
    )
