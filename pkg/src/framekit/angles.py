"""Infimum/supremum cosine angles, the subspace angle, and the gap.

The angle report derives theta and the gap from the infimum cosine, so
the trigonometric identities hold by construction; only ``gap_direct``
recomputes the gap spectrally, which turns "gap equals the sine of the
angle" into an actual two-route test.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DimensionError, NumericError, PreconditionError
from .fusion import Subspace, projection_matrix


@dataclass(frozen=True)
class AngleReport:
    """Cosine extremes, angle, and gap between an ordered subspace pair."""

    r: float
    s: float
    theta: float
    gap: float

    def to_dict(self) -> dict:
        return {"r": self.r, "s": self.s, "theta": self.theta, "gap": self.gap}


def _inf_sup_cos(vbasis: np.ndarray, wbasis: np.ndarray) -> tuple[float, float]:
    """Extreme values of ||P_W f|| over unit f in V, from orthonormal bases.

    Accepts a zero-column W (the trivial subspace), where both extremes
    vanish.
    """
    if wbasis.shape[1] == 0:
        return 0.0, 0.0
    sv = linalg.singular_values(wbasis.T @ vbasis)
    sup = min(1.0, float(sv[0]))
    if vbasis.shape[1] > wbasis.shape[1]:
        inf = 0.0  # the restricted projection has a kernel
    else:
        inf = min(1.0, max(0.0, float(sv[-1])))
    return inf, sup


def _check_pair(v: Subspace, w: Subspace) -> None:
    if v.ambient_dim != w.ambient_dim:
        raise DimensionError(
            f"ambient dimensions differ: {v.ambient_dim} vs {w.ambient_dim}"
        )


def orthogonal_complement(s: Subspace) -> np.ndarray:
    """Orthonormal basis of the complement (possibly with zero columns)."""
    u = np.linalg.svd(s.basis, full_matrices=True)[0]
    return u[:, s.dim :]


def cosine_angles(v: Subspace, w: Subspace) -> AngleReport:
    """Infimum and supremum cosine of the angle from V to W, with the
    derived angle and gap."""
    _check_pair(v, w)
    r, s = _inf_sup_cos(v.basis, w.basis)
    theta = float(np.arccos(np.clip(r, 0.0, 1.0)))
    gap = float(np.sqrt(max(0.0, 1.0 - r * r)))
    return AngleReport(r=r, s=s, theta=theta, gap=gap)


def gap_direct(v: Subspace, w: Subspace, samples: int = 512, seed: int = 0) -> float:
    """Largest distance from a unit vector of V to W, computed spectrally
    and cross-checked on sampled unit vectors of V."""
    _check_pair(v, w)
    if samples < 1:
        raise PreconditionError(f"samples must be >= 1, got {samples}")
    residual_map = v.basis - projection_matrix(w) @ v.basis
    spectral = min(1.0, linalg.operator_norm(residual_map))
    rng = np.random.default_rng(seed)
    coeffs = rng.standard_normal((samples, v.dim))
    coeffs /= np.linalg.norm(coeffs, axis=1, keepdims=True)
    sampled = float(np.linalg.norm(coeffs @ residual_map.T, axis=1).max())
    if sampled > spectral + 1e-9:
        raise NumericError(
            f"sampled gap {sampled!r} exceeds spectral gap {spectral!r}"
        )
    return spectral


def check_rs_relation(v: Subspace, w: Subspace) -> float:
    """Residual of the complement identity linking the infimum cosine to
    the supremum cosine against the orthogonal complement."""
    _check_pair(v, w)
    r = _inf_sup_cos(v.basis, w.basis)[0]
    s_comp = _inf_sup_cos(v.basis, orthogonal_complement(w))[1]
    return abs(r - float(np.sqrt(max(0.0, 1.0 - s_comp * s_comp))))


def redundancy_angle_sums(subspace_list, wprime: Subspace) -> tuple[float, float]:
    """Sum of squared infimum and supremum cosines from ``wprime`` to each
    listed subspace."""
    sum_r2 = 0.0
    sum_s2 = 0.0
    for sub in subspace_list:
        report = cosine_angles(wprime, sub)
        sum_r2 += report.r * report.r
        sum_s2 += report.s * report.s
    return sum_r2, sum_s2
