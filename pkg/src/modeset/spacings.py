"""Nested order-statistic spacing interval (method m1).

The construction compares equally-spaced order-statistic blocks across a
dyadic hierarchy of block widths.  At the coarsest level the narrowest
block marks the highest-density region; a run of neighbours whose widths
are within a Beta-quantile ratio of the narrowest survives, and the
procedure descends to finer blocks inside the surviving run.  A tail
inflation covers a mode that falls outside the sample range.  The result
is always a single closed interval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import ConfidenceSet, MethodInfeasibleError, SortedSample, make_confidence_set
from .numerics import qbeta

__all__ = [
    "SpacingsPlan",
    "build_plan",
    "lanke_inflation",
    "level_intervals",
    "m1_confidence_interval",
]


def lanke_inflation(n: int, alpha: float) -> float:
    """Tail inflation factor (alpha/2)**(-1/(n-1)) - 1.

    Inflating the sample range by this factor on each side covers a mode
    that falls outside the observed range with probability 1 - alpha/2.
    """
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ValueError(f"the inflation factor needs n >= 2, got {n}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie strictly in (0, 1), got {alpha}")
    return (alpha / 2.0) ** (-1.0 / (n - 1)) - 1.0


@dataclass(frozen=True)
class SpacingsPlan:
    """All derived quantities of the spacing construction for one (n, alpha).

    Attributes
    ----------
    s_n : int
        Base block exponent, ceil(log2(ln n)).
    b_max : int
        Coarsest level; level B uses blocks of 2**(B + s_n) spacings.
    n_b : tuple of int
        Number of complete blocks per level, index B in [0, b_max].
    t_n : float
        Normalizer sum_{B=0}^{b_max} 1/(B+2) for the per-level error split.
    h_b : tuple of float
        Width-ratio tolerances per level (upper over lower Beta quantile
        at complementary tail levels); always >= 1.
    lam : float
        Tail inflation factor (alpha/2)**(-1/(n-1)) - 1.
    """

    n: int
    alpha: float
    s_n: int
    b_max: int
    n_b: tuple[int, ...]
    t_n: float
    h_b: tuple[float, ...]
    lam: float


@lru_cache(maxsize=256)
def _cached_plan(n: int, alpha: float) -> SpacingsPlan:
    s_n = math.ceil(math.log2(math.log(n)))
    b_max = math.floor(math.log2(n / 8)) - s_n
    if b_max < 0:
        raise MethodInfeasibleError(
            f"sample too small for the spacing interval: n={n} gives no usable level"
        )
    n_b = []
    for b in range(b_max + 1):
        count = (n - 1) // (1 << (b + s_n))
        if count < 1:
            raise MethodInfeasibleError(
                f"sample too small for the spacing interval: level {b} has no block"
            )
        n_b.append(count)
    t_n = sum(1.0 / (b + 2) for b in range(b_max + 1))
    h_b = []
    for b in range(b_max + 1):
        a_shape = float(1 << (b + s_n))
        b_shape = float(n + 1 - (1 << (b + s_n)))
        level = alpha / (4.0 * (b + 2) * n_b[b] * t_n)
        upper = qbeta(1.0 - level, a_shape, b_shape)
        lower = qbeta(level, a_shape, b_shape)
        h_b.append(upper / lower)
    lam = lanke_inflation(n, alpha)
    return SpacingsPlan(
        n=n,
        alpha=alpha,
        s_n=s_n,
        b_max=b_max,
        n_b=tuple(n_b),
        t_n=t_n,
        h_b=tuple(h_b),
        lam=lam,
    )


def build_plan(n: int, alpha: float) -> SpacingsPlan:
    """Derive every plan quantity for a sample size and confidence level.

    Raises
    ------
    MethodInfeasibleError
        When n is too small to form even one coarse block (b_max < 0).
    """
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise MethodInfeasibleError(
            f"sample too small for the spacing interval: n={n}"
        )
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie strictly in (0, 1), got {alpha}")
    return _cached_plan(int(n), float(alpha))


def level_intervals(sample: SortedSample, plan: SpacingsPlan, level: int) -> np.ndarray:
    """Block intervals at one level as an (n_b, 2) array of endpoints.

    Block i (1-based) is [X_(1+(i-1)w), X_(1+i*w)] with w = 2**(level + s_n);
    consecutive blocks share exactly one endpoint and each spans w + 1
    order statistics.
    """
    if not 0 <= level <= plan.b_max:
        raise ValueError(f"level must lie in [0, {plan.b_max}], got {level}")
    w = 1 << (level + plan.s_n)
    n_b = plan.n_b[level]
    idx = np.arange(n_b + 1) * w  # 0-based positions of X_(1 + i*w)
    pts = sample.values[idx]
    return np.column_stack([pts[:-1], pts[1:]])


def m1_confidence_interval(sample: SortedSample, alpha: float) -> ConfidenceSet:
    """Spacing-based confidence interval for the mode (method m1).

    Parameters
    ----------
    sample : SortedSample
    alpha : float
        Miscoverage level in (0, 1).

    Returns
    -------
    ConfidenceSet
        A single closed interval; its endpoints lie within
        [X_(1) - lam*range, X_(n) + lam*range].
    """
    plan = build_plan(sample.n, alpha)
    v = sample.values
    cand_lo, cand_hi = 1, plan.n_b[plan.b_max]  # 1-based block ids
    lo_run = hi_run = 1
    for b in range(plan.b_max, -1, -1):
        w = 1 << (b + plan.s_n)
        idx = np.arange(cand_lo - 1, cand_hi + 1) * w
        widths = np.diff(v[idx])
        bound = plan.h_b[b] * float(widths.min())
        k = int(np.argmin(widths))
        left, right = k, k
        while left > 0 and widths[left - 1] <= bound:
            left -= 1
        while right < widths.size - 1 and widths[right + 1] <= bound:
            right += 1
        lo_run, hi_run = cand_lo + left, cand_lo + right
        if b > 0:
            # Finer blocks are halves of the surviving coarse blocks; only
            # those wholly inside the surviving run remain candidates.
            cand_lo = 2 * lo_run - 1
            cand_hi = min(plan.n_b[b - 1], 2 * hi_run)
    w0 = 1 << plan.s_n
    lo_val = float(v[(lo_run - 1) * w0])
    hi_val = float(v[hi_run * w0])
    span = float(v[-1] - v[0])
    if lo_run == 1:
        lo_val = float(v[0]) - plan.lam * span
    if hi_run == plan.n_b[0]:
        hi_val = float(v[-1]) + plan.lam * span
    return make_confidence_set([(lo_val, hi_val)])
