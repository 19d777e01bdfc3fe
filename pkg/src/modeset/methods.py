"""Single dispatch point mapping method codes to the univariate constructions."""

from __future__ import annotations

from .core import ConfidenceSet, SortedSample
from .edelman import m3_confidence_set, m3prime_confidence_set
from .mest import MEstConfig, m2_adaptive_confidence_set, m2_confidence_set
from .numerics import RngStream
from .spacings import m1_confidence_interval

__all__ = ["METHOD_CODES", "compute_confidence_set"]

METHOD_CODES = ("m1", "m2", "m2a", "m3", "m3p")


def compute_confidence_set(
    data,
    alpha: float,
    method: str,
    *,
    h: float | None = None,
    h_grid: tuple[float, ...] | None = None,
    rho: float = 2.0,
    pilot_r: int | None = None,
    split_stream: RngStream = RngStream(0, 0),
    split_fraction: float = 0.5,
) -> ConfidenceSet:
    """Run one univariate mode confidence-set construction by code.

    ``m1`` needs no extra options; ``m2`` needs ``h``; ``m2a`` accepts an
    optional ``h_grid``; ``m3p`` accepts ``rho`` (> 1).  The split-based
    methods take ``pilot_r``, ``split_stream`` and ``split_fraction``.
    """
    if method not in METHOD_CODES:
        raise ValueError(f"unknown method {method!r}; choose one of {METHOD_CODES}")
    if method == "m1":
        return m1_confidence_interval(SortedSample.from_data(data), alpha)
    if method in ("m2", "m2a"):
        cfg = MEstConfig(
            alpha=alpha,
            h=h,
            h_grid=h_grid,
            pilot_r=pilot_r,
            split_stream=split_stream,
            split_fraction=split_fraction,
        )
        if method == "m2":
            return m2_confidence_set(data, cfg)
        return m2_adaptive_confidence_set(data, cfg)
    if method == "m3":
        return m3_confidence_set(
            data,
            alpha,
            split_stream=split_stream,
            split_fraction=split_fraction,
            pilot_r=pilot_r,
        )
    return m3prime_confidence_set(
        data,
        alpha,
        rho,
        split_stream=split_stream,
        split_fraction=split_fraction,
        pilot_r=pilot_r,
    )
