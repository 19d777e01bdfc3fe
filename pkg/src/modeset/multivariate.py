"""Multivariate lift: mode confidence sets for star-unimodal data (method m4).

A d-dimensional distribution is gamma-unimodal about its mode when it can
be written as U**(1/gamma) * Z with U uniform on (0, 1) independent of Z.
For such data the radial transform ||X_i - theta||_2**gamma produces, at
theta equal to the true mode, a univariate sample that is unimodal about
0.  A candidate theta therefore belongs to the lifted confidence set
exactly when 0 belongs to a univariate confidence set built on the
transformed sample; scanning candidates over a grid gives a finite
representation of the region.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .methods import compute_confidence_set

__all__ = [
    "MembershipGrid",
    "PointCloud",
    "contains_mode_candidate",
    "radial_transform",
    "scan_region",
]

_MAX_CELLS = 10_000_000


@dataclass(frozen=True)
class PointCloud:
    """Observations in R^d together with the unimodality exponent gamma."""

    points: np.ndarray
    gamma: float

    @classmethod
    def from_points(cls, points, gamma: float) -> "PointCloud":
        arr = np.asarray(points, dtype=np.float64)
        if arr.ndim == 1:
            arr = arr[:, None]
        if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
            raise ValueError("points must form a nonempty (n, d) array")
        if not np.all(np.isfinite(arr)):
            raise ValueError("points must be finite")
        if not gamma > 0:
            raise ValueError(f"gamma must be positive, got {gamma}")
        arr = arr.copy()
        arr.setflags(write=False)
        return cls(points=arr, gamma=float(gamma))

    @property
    def n(self) -> int:
        return int(self.points.shape[0])

    @property
    def d(self) -> int:
        return int(self.points.shape[1])


def radial_transform(cloud: PointCloud, theta) -> np.ndarray:
    """Transformed sample {||X_i - theta||_2 ** gamma}; zero exactly at X_i = theta."""
    theta = np.asarray(theta, dtype=np.float64).reshape(-1)
    if theta.size != cloud.d:
        raise ValueError(
            f"candidate point has dimension {theta.size}, cloud has {cloud.d}"
        )
    norms = np.linalg.norm(cloud.points - theta[None, :], axis=1)
    return norms**cloud.gamma


def contains_mode_candidate(
    cloud: PointCloud,
    theta,
    alpha: float,
    algorithm: str = "m1",
    **options,
) -> bool:
    """True when 0 lies in the univariate set built on the radial transform.

    ``algorithm`` is a univariate method code (m1, m2, m2a, m3, m3p) and
    ``options`` are forwarded to it.  The spacing interval m1 is the
    default: it needs no sample split, and its left tail extension handles
    a mode sitting at the support boundary 0.
    """
    transformed = radial_transform(cloud, theta)
    cs = compute_confidence_set(transformed, alpha, algorithm, **options)
    return cs.contains(0.0)


@dataclass(frozen=True)
class MembershipGrid:
    """Boolean mask of candidate cells whose centers pass the lift test."""

    box: tuple[tuple[float, float], ...]
    resolution: tuple[int, ...]
    mask: np.ndarray

    def centers(self, axis: int) -> np.ndarray:
        lo, hi = self.box[axis]
        k = self.resolution[axis]
        step = (hi - lo) / k
        return lo + step * (np.arange(k) + 0.5)

    def rows(self):
        """Yield (center coordinates..., in_set) per cell in index order."""
        axes = [self.centers(i) for i in range(len(self.resolution))]
        for idx in itertools.product(*(range(k) for k in self.resolution)):
            coords = tuple(axes[i][j] for i, j in enumerate(idx))
            yield coords + (bool(self.mask[idx]),)


def scan_region(
    cloud: PointCloud,
    box,
    resolution,
    alpha: float,
    algorithm: str = "m1",
    **options,
) -> MembershipGrid:
    """Evaluate the lift test at every cell center of a rectangular grid.

    ``box`` is a per-dimension sequence of (lo, hi); ``resolution`` an int
    or per-dimension counts.  Restricted to d <= 3 and at most 1e7 cells.
    """
    d = cloud.d
    if d > 3:
        raise ValueError("grid scanning is limited to 1, 2, or 3 dimensions")
    box = tuple((float(lo), float(hi)) for lo, hi in box)
    if len(box) != d:
        raise ValueError(f"box has {len(box)} dimensions, cloud has {d}")
    if any(hi <= lo for lo, hi in box):
        raise ValueError("box sides must have positive length")
    if np.isscalar(resolution):
        resolution = (int(resolution),) * d
    else:
        resolution = tuple(int(k) for k in resolution)
    if len(resolution) != d or any(k < 1 for k in resolution):
        raise ValueError("resolution must give a positive count per dimension")
    cells = int(np.prod(resolution))
    if cells > _MAX_CELLS:
        raise ValueError(f"grid of {cells} cells exceeds the {_MAX_CELLS} cell limit")
    axes = [
        lo + (hi - lo) / k * (np.arange(k) + 0.5)
        for (lo, hi), k in zip(box, resolution)
    ]
    mask = np.zeros(resolution, dtype=bool)
    for idx in itertools.product(*(range(k) for k in resolution)):
        theta = np.array([axes[i][j] for i, j in enumerate(idx)])
        mask[idx] = contains_mode_candidate(cloud, theta, alpha, algorithm, **options)
    mask.setflags(write=False)
    return MembershipGrid(box=box, resolution=resolution, mask=mask)
