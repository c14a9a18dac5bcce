"""Trigonometric and Chebyshev coefficients by fixed-grid quadrature.

Normalisation follows the classical series

    f(x) = a0/2 + sum_j (a_j cos jx + b_j sin jx),
    a_j = (1/pi) int_0^{2pi} f(x) cos(jx) dx,

and for the first-kind Chebyshev basis, after substituting ``x = cos(theta)``,

    a_j = (2/pi) int_0^pi f(cos theta) cos(j theta) dtheta.

The trigonometric integrals use the rectangle rule on a uniform periodic
grid, which is exact for trig polynomials of degree below ``n/2``. The
Chebyshev integrals use midpoint nodes in theta, which never touch the
endpoint singularity of the weighted form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AliasingError, DomainError
from .functions import FunctionSpec, SamplesCheb, TrigPoly, require_chebyshev, require_periodic
from .functions import sample_uniform

DEFAULT_GRID = 4096
ALIAS_MARGIN = 8


@dataclass(frozen=True)
class SpectrumTable:
    """Coefficients up to ``order`` together with the grid that produced them.

    ``sin`` is empty for the Chebyshev basis.
    """

    basis: str
    a0: float
    cos: tuple[float, ...]
    sin: tuple[float, ...]
    order: int
    grid: int

    def __post_init__(self):
        if self.basis not in ("trig", "chebyshev"):
            raise ValueError(f"unknown basis {self.basis!r}")
        object.__setattr__(self, "cos", tuple(float(v) for v in self.cos))
        object.__setattr__(self, "sin", tuple(float(v) for v in self.sin))
        if len(self.cos) != self.order:
            raise ValueError(f"expected {self.order} cosine coefficients, got {len(self.cos)}")
        expected_sin = self.order if self.basis == "trig" else 0
        if len(self.sin) != expected_sin:
            raise ValueError(f"expected {expected_sin} sine coefficients, got {len(self.sin)}")
        _check_grid(self.order, self.grid)

    def a(self, j: int) -> float:
        """Cosine-type coefficient ``a_j``; ``a(0)`` is ``a0``."""
        return self.a0 if j == 0 else self.cos[j - 1]

    def b(self, j: int) -> float:
        if self.basis != "trig":
            raise DomainError("Chebyshev tables carry no sine coefficients")
        return self.sin[j - 1]


def _check_grid(order: int, grid: int) -> None:
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    if grid < ALIAS_MARGIN * order:
        raise AliasingError(
            f"grid {grid} is below the anti-aliasing margin {ALIAS_MARGIN} * {order}"
        )


def default_grid(order: int) -> int:
    return max(DEFAULT_GRID, ALIAS_MARGIN * order)


def _projections(values: np.ndarray, order: int):
    """Rectangle-rule projections onto cos(jx), sin(jx) on the uniform grid.

    Trig factors come from a table indexed by ``j*i mod n`` so that large
    ``j`` does not amplify argument rounding.
    """
    n = values.size
    i = np.arange(n)
    table = 2.0 * np.pi * np.arange(n) / n
    cos_t, sin_t = np.cos(table), np.sin(table)
    a = np.empty(order)
    b = np.empty(order)
    for j in range(1, order + 1):
        idx = (j * i) % n
        a[j - 1] = cos_t[idx] @ values
        b[j - 1] = sin_t[idx] @ values
    scale = 2.0 / n
    return scale * values.sum(), scale * a, scale * b


def trig_spectrum(spec: FunctionSpec, order: int, grid: int | None = None) -> SpectrumTable:
    """Fourier coefficients ``a0, a_1..a_M, b_1..b_M`` of a periodic spec.

    Parameters
    ----------
    spec : FunctionSpec
        Any periodic kind.
    order : int
        Highest harmonic ``M`` to compute.
    grid : int, optional
        Number of uniform nodes; defaults to ``max(4096, 8*M)`` and must be at
        least ``8*M``.
    """
    require_periodic(spec)
    grid = default_grid(order) if grid is None else int(grid)
    _check_grid(order, grid)
    a0, a, b = _projections(sample_uniform(spec, grid), order)
    return SpectrumTable("trig", float(a0), tuple(a), tuple(b), order, grid)


def cheb_spectrum(spec: FunctionSpec, order: int, grid: int | None = None) -> SpectrumTable:
    """First-kind Chebyshev coefficients by midpoint quadrature in theta.

    A ``samples_cheb`` spec whose sample count equals ``grid`` is used as-is;
    anything else is evaluated at the ``grid`` midpoint nodes.
    """
    require_chebyshev(spec)
    grid = default_grid(order) if grid is None else int(grid)
    _check_grid(order, grid)
    if isinstance(spec, SamplesCheb) and len(spec.values) == grid:
        values = np.asarray(spec.values)
    else:
        values = spec(np.cos(np.pi * (np.arange(grid) + 0.5) / grid))
    # cos(j*theta_k) = cos(pi * (j*(2k+1) mod 4n) / 2n)
    odd = 2 * np.arange(grid) + 1
    table = np.cos(np.pi * np.arange(4 * grid) / (2 * grid))
    a = np.array([table[(j * odd) % (4 * grid)] @ values for j in range(1, order + 1)])
    scale = 2.0 / grid
    return SpectrumTable("chebyshev", float(scale * values.sum()), tuple(scale * a), (), order, grid)


def spectrum(spec: FunctionSpec, order: int, grid: int | None = None) -> SpectrumTable:
    """Dispatch to :func:`trig_spectrum` or :func:`cheb_spectrum` by domain."""
    if spec.periodic:
        return trig_spectrum(spec, order, grid)
    return cheb_spectrum(spec, order, grid)


def synthesize(table: SpectrumTable) -> TrigPoly:
    """Partial Fourier sum of a trig table as a ``trig_poly`` spec."""
    if table.basis != "trig":
        raise DomainError("synthesis is only defined for the trigonometric basis")
    return TrigPoly(a0=table.a0, cos=table.cos, sin=table.sin)
