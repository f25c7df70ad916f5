from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

import numpy as np
from scipy.stats import unitary_group

from ..errors import SpaceMismatchError, ToleranceError
from ..model.blocks import WeightMultiset
from ..model.space import OrderedSpace


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical tolerances; ``None`` for the first two means 1e-9 * d."""

    unitarity_tol: float | None = None
    commutation_tol: float | None = None
    cluster_tol: float = 1e-8
    rounding_tol: float = 1e-6
    max_attempts: int = 5

    def __post_init__(self) -> None:
        for name in ("unitarity_tol", "commutation_tol", "cluster_tol", "rounding_tol"):
            value = getattr(self, name)
            if value is None:
                continue
            if not math.isfinite(value) or value < 0:
                msg = f"{name} must be finite and >= 0, got {value}"
                raise ValueError(msg)
        if self.max_attempts < 1:
            msg = f"max_attempts must be >= 1, got {self.max_attempts}"
            raise ValueError(msg)

    @classmethod
    def from_mapping(
        cls, cfg: Mapping[str, Any], max_attempts: int | None = None
    ) -> ToleranceConfig:
        def _opt(key: str) -> float | None:
            value = cfg.get(key)
            return None if value is None else float(value)

        return cls(
            unitarity_tol=_opt("unitarity_tol"),
            commutation_tol=_opt("commutation_tol"),
            cluster_tol=float(cfg.get("cluster_tol", 1e-8)),
            rounding_tol=float(cfg.get("rounding_tol", 1e-6)),
            max_attempts=int(max_attempts or cfg.get("max_attempts", 5)),
        )

    def resolved(self, dim: int) -> tuple[float, float]:
        unitarity = self.unitarity_tol if self.unitarity_tol is not None else 1e-9 * dim
        commutation = (
            self.commutation_tol if self.commutation_tol is not None else 1e-9 * dim
        )
        return unitarity, commutation


@dataclass(frozen=True, eq=False)
class UnitaryFamily:
    """One d x d matrix per point x: the representation at e^{2 pi i / q} on x."""

    space: OrderedSpace
    matrices: tuple[np.ndarray, ...]
    sample_denominator: int
    weight_bound: int
    dim: int = field(init=False)

    def __post_init__(self) -> None:
        matrices = tuple(np.asarray(m, dtype=np.complex128) for m in self.matrices)
        if len(matrices) != len(self.space):
            msg = f"Got {len(matrices)} matrices for {len(self.space)} points"
            raise SpaceMismatchError(msg)
        if not matrices:
            msg = "A unitary family needs at least one point."
            raise SpaceMismatchError(msg)
        d = matrices[0].shape[0]
        for x, m in zip(self.space, matrices):
            if m.shape != (d, d):
                msg = f"Matrix at {x!r} has shape {m.shape}, expected {(d, d)}"
                raise SpaceMismatchError(msg)
        if self.sample_denominator < 1 or self.weight_bound < 1:
            msg = "q and B must be positive integers"
            raise ValueError(msg)
        if 2 * self.weight_bound >= self.sample_denominator:
            msg = (
                f"Need 2B < q, got B={self.weight_bound}, "
                f"q={self.sample_denominator}"
            )
            raise ValueError(msg)
        object.__setattr__(self, "matrices", matrices)
        object.__setattr__(self, "dim", d)


@dataclass(frozen=True)
class FamilyReport:
    unitarity_residual: float
    commutation_residual: float
    unitarity_tol: float
    commutation_tol: float

    @property
    def unitary(self) -> bool:
        return self.unitarity_residual <= self.unitarity_tol

    @property
    def commuting(self) -> bool:
        return self.commutation_residual <= self.commutation_tol

    @property
    def ok(self) -> bool:
        return self.unitary and self.commuting

    def to_dict(self) -> dict[str, Any]:
        return {
            "unitarity_residual": self.unitarity_residual,
            "commutation_residual": self.commutation_residual,
            "unitary": self.unitary,
            "commuting": self.commuting,
            "ok": self.ok,
        }


def check_family(family: UnitaryFamily, cfg: ToleranceConfig) -> FamilyReport:
    """Worst Frobenius residuals of U*U - I and of U_i U_j - U_j U_i."""
    eye = np.eye(family.dim)
    unitarity = max(
        float(np.linalg.norm(u.conj().T @ u - eye, "fro")) for u in family.matrices
    )
    commutation = 0.0
    mats: Sequence[np.ndarray] = family.matrices
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            residual = np.linalg.norm(mats[i] @ mats[j] - mats[j] @ mats[i], "fro")
            commutation = max(commutation, float(residual))
    unit_tol, comm_tol = cfg.resolved(family.dim)
    return FamilyReport(unitarity, commutation, unit_tol, comm_tol)


def require_family(family: UnitaryFamily, cfg: ToleranceConfig) -> FamilyReport:
    report = check_family(family, cfg)
    if not report.ok:
        msg = (
            "Unitary family fails its precondition audit "
            f"(unitarity {report.unitarity_residual:.3e}, "
            f"commutation {report.commutation_residual:.3e})"
        )
        raise ToleranceError(msg, witness=report.to_dict())
    return report


def sample_family(
    weights: WeightMultiset,
    q: int,
    bound: int,
    rng: np.random.Generator | None = None,
    conjugate: bool = True,
) -> UnitaryFamily:
    """Plant ``weights`` as diagonal characters and hide them by a Haar unitary."""
    if rng is None:
        rng = np.random.default_rng()
    vectors = [v for v, count in weights.items() for _ in range(count)]
    if not vectors:
        msg = "Cannot sample a family from an empty weight multiset."
        raise ValueError(msg)
    weight_array = np.array(vectors, dtype=np.int64)
    if np.abs(weight_array).max() > bound:
        msg = f"Weights exceed the declared bound B={bound}"
        raise ValueError(msg)
    d = len(vectors)
    if conjugate and d > 1:
        basis = unitary_group.rvs(d, random_state=rng)
    else:
        basis = np.eye(d, dtype=np.complex128)
    matrices = []
    for col in range(len(weights.space)):
        diag = np.exp(2j * np.pi * weight_array[:, col] / q)
        matrices.append(basis @ np.diag(diag) @ basis.conj().T)
    return UnitaryFamily(
        space=weights.space,
        matrices=tuple(matrices),
        sample_denominator=q,
        weight_bound=bound,
    )
