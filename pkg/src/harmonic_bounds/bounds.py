"""Coefficient-magnitude bounds from total variation, extrema swings and range.

For the trigonometric basis and every ``j >= 1``::

    |a_j|, |b_j| <= V / (pi j)                 variation bound
    |a_j|, |b_j| <= (sum_k delta_k) / (pi j)   extrema-swing bound
    |a_j|, |b_j| <= (2/pi) * (max f - min f)   range bound

For first-kind Chebyshev coefficients on ``[-1, 1]`` the variation bound
becomes ``2 V / (pi j)``. Both are instances of ``V / (j ||N||^2)`` with
``||N||^2`` the squared norm of a basis element (pi and pi/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .functions import FunctionSpec, require_chebyshev, require_periodic
from .spectral import cheb_spectrum, default_grid, trig_spectrum
from .variation import (
    DEFAULT_CHEB_GRID,
    VariationReport,
    variation_chebyshev,
    variation_periodic,
)

DEFAULT_ATOL = 1e-8
DEFAULT_RTOL = 1e-6

TRIG_NORM_SQUARED = np.pi
CHEB_NORM_SQUARED = np.pi / 2


@dataclass(frozen=True)
class GenericBasisParams:
    """Variation on the interval of orthogonality and squared basis norm."""

    variation: float
    norm_squared: float

    def __post_init__(self):
        if self.variation < 0:
            raise ValueError("variation must be >= 0")
        if self.norm_squared <= 0:
            raise ValueError("squared norm must be > 0")


def generic_bound(params: GenericBasisParams, j: int) -> float:
    """``V / (j * ||N||^2)``; ``j`` is taken as given (>= 1)."""
    if j < 1:
        raise ValueError(f"harmonic index must be >= 1, got {j}")
    return params.variation / (j * params.norm_squared)


@dataclass(frozen=True)
class BoundRow:
    j: int
    actual_abs_a: float
    actual_abs_b: float | None
    bound_variation: float
    bound_extrema: float
    bound_range: float
    ratio_tightness: float
    satisfied_variation: bool
    satisfied_extrema: bool
    satisfied_range: bool

    @property
    def satisfied(self) -> bool:
        return self.satisfied_variation and self.satisfied_extrema and self.satisfied_range


@dataclass(frozen=True)
class BoundReport:
    basis: str
    rows: tuple[BoundRow, ...]
    atol: float
    rtol: float
    variation: VariationReport
    grid: int

    @property
    def all_satisfied(self) -> bool:
        return all(row.satisfied for row in self.rows)

    @property
    def violations(self) -> list[BoundRow]:
        return [row for row in self.rows if not row.satisfied]


def within(actual: float, bound: float, atol: float = DEFAULT_ATOL, rtol: float = DEFAULT_RTOL) -> bool:
    """``actual <= bound`` up to the discretisation allowance ``atol + rtol*bound``."""
    return actual <= bound + atol + rtol * bound


def _tightness(actual: float, bound: float) -> float:
    if bound > 0:
        return actual / bound
    return 0.0 if actual == 0 else math.inf


def _row(j, amps, bound_var, bound_ext, bound_rng, atol, rtol):
    worst = max(amps)
    return BoundRow(
        j=j,
        actual_abs_a=amps[0],
        actual_abs_b=amps[1] if len(amps) > 1 else None,
        bound_variation=bound_var,
        bound_extrema=bound_ext,
        bound_range=bound_rng,
        ratio_tightness=_tightness(worst, bound_var),
        satisfied_variation=all(within(a, bound_var, atol, rtol) for a in amps),
        satisfied_extrema=all(within(a, bound_ext, atol, rtol) for a in amps),
        satisfied_range=all(within(a, bound_rng, atol, rtol) for a in amps),
    )


def bound_report_trig(
    spec: FunctionSpec,
    order: int = 16,
    grid: int | None = None,
    atol: float = DEFAULT_ATOL,
    rtol: float = DEFAULT_RTOL,
    plateau_tolerance: float = 0.0,
) -> BoundReport:
    """Check ``|a_j|`` and ``|b_j|`` for j = 1..order against all three trig bounds.

    The same grid feeds the spectrum and the variation, defaulting to
    ``max(4096, 8*order)``.
    """
    require_periodic(spec)
    grid = default_grid(order) if grid is None else grid
    table = trig_spectrum(spec, order, grid)
    var = variation_periodic(spec, grid, plateau_tolerance)
    swing_sum = math.fsum(var.deltas)
    bound_rng = 2.0 / np.pi * var.range
    rows = []
    for j in range(1, order + 1):
        rows.append(
            _row(
                j,
                (abs(table.a(j)), abs(table.b(j))),
                generic_bound(GenericBasisParams(var.total_variation, TRIG_NORM_SQUARED), j),
                generic_bound(GenericBasisParams(swing_sum, TRIG_NORM_SQUARED), j),
                bound_rng,
                atol,
                rtol,
            )
        )
    return BoundReport("trig", tuple(rows), atol, rtol, var, grid)


def bound_report_cheb(
    spec: FunctionSpec,
    order: int = 16,
    grid: int | None = None,
    atol: float = DEFAULT_ATOL,
    rtol: float = DEFAULT_RTOL,
    plateau_tolerance: float = 0.0,
    variation_grid: int = DEFAULT_CHEB_GRID,
) -> BoundReport:
    """Check first-kind Chebyshev coefficients against ``2V/(pi j)`` and the range bound.

    The range of ``f(cos theta)`` equals the range of ``f`` on ``[-1, 1]``,
    so the range bound reads the same as in the trig case.
    """
    require_chebyshev(spec)
    grid = default_grid(order) if grid is None else grid
    table = cheb_spectrum(spec, order, grid)
    var = variation_chebyshev(spec, variation_grid, plateau_tolerance)
    swing_sum = math.fsum(var.deltas)
    bound_rng = 2.0 / np.pi * var.range
    rows = []
    for j in range(1, order + 1):
        rows.append(
            _row(
                j,
                (abs(table.a(j)),),
                generic_bound(GenericBasisParams(var.total_variation, CHEB_NORM_SQUARED), j),
                generic_bound(GenericBasisParams(swing_sum, CHEB_NORM_SQUARED), j),
                bound_rng,
                atol,
                rtol,
            )
        )
    return BoundReport("chebyshev", tuple(rows), atol, rtol, var, grid)


def bound_report(spec: FunctionSpec, order: int = 16, grid: int | None = None, **kwargs) -> BoundReport:
    """Pick the basis from the spec's domain."""
    if spec.periodic:
        return bound_report_trig(spec, order, grid, **kwargs)
    return bound_report_cheb(spec, order, grid, **kwargs)
