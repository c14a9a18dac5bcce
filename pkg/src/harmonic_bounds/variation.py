"""Total variation, extrema structure and range of sampled functions.

Everything here is defined on the evaluation grid. For a continuous
function the grid variation is a lower bound that increases under
refinement and converges to the continuous one.

The variation is assembled from the extrema decomposition: the swings
``deltas[k] = |y(e_{k+1}) - y(e_k)|`` between consecutive extrema, whose sum
is the total variation by construction. On the circle the extrema list is
cyclic and has as many swings as extrema. On ``[-1, 1]`` the two interval
endpoints are added as segment boundaries, so there is one more swing than
interior extrema.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SizeError
from .functions import FunctionSpec, require_chebyshev, require_periodic, sample_uniform
from .functions import TWO_PI

DEFAULT_GRID = 4096
DEFAULT_CHEB_GRID = 16385
MIN_GRID = 16


@dataclass(frozen=True)
class Extremum:
    x: float
    y: float
    kind: str  # "max" or "min"


@dataclass(frozen=True)
class VariationReport:
    """Variation ``V``, extrema, swings ``deltas`` and range of one function.

    ``extrema_count`` counts interior extrema only; on the circle every
    extremum is interior.
    """

    total_variation: float
    extrema: tuple[Extremum, ...]
    deltas: tuple[float, ...]
    extrema_count: int
    range: float
    plateau_tolerance: float
    grid: int
    domain: str  # "periodic" or "chebyshev"


def _extrema_runs(d: np.ndarray, eta: float, cyclic: bool):
    """Locate extrema from the signs of consecutive differences.

    ``d[i]`` is the step from point ``i`` to point ``i+1``. Steps with
    ``|d| <= eta`` count as flat, and a flat run between a rise and a fall
    (or a fall and a rise) collapses into one extremum. Returns
    ``(first_point, last_point, kind)`` triples in grid order; on the circle
    ``last_point`` may exceed ``n - 1`` and wraps.
    """
    sign = np.where(np.abs(d) > eta, np.sign(d), 0.0)
    steps = np.flatnonzero(sign)
    if steps.size == 0:
        return []
    pairs = list(zip(steps[:-1], steps[1:]))
    if cyclic:
        pairs.append((steps[-1], steps[0] + d.size))
    runs = []
    for a, b in pairs:
        if sign[a] != sign[b % d.size]:
            runs.append((int(a) + 1, int(b), "max" if sign[a] > 0 else "min"))
    return runs


def _run_extremum(y: np.ndarray, run, to_x) -> Extremum:
    first, last, kind = run
    n = y.size
    block = y[np.arange(first, last + 1) % n]
    value = block.max() if kind == "max" else block.min()
    return Extremum(to_x(0.5 * (first + last)), float(value), kind)


def _range(y: np.ndarray, extrema) -> float:
    top = max([float(y.max())] + [e.y for e in extrema])
    bottom = min([float(y.min())] + [e.y for e in extrema])
    return top - bottom


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_GOLDEN_STEPS = 60


def _refine(func, runs, extrema, to_x):
    """Polish grid extrema on the continuous function by golden-section search.

    Each search is bracketed by the grid neighbours of its run, and the
    refined value is never less extreme than the sampled one.
    """
    if not runs:
        return extrema
    sign = np.array([1.0 if kind == "max" else -1.0 for _, _, kind in runs])
    a = np.array([to_x(first - 1) for first, _, _ in runs])
    b = np.array([to_x(last + 1) for _, last, _ in runs])
    for _ in range(_GOLDEN_STEPS):
        c = b - _INV_PHI * (b - a)
        d = a + _INV_PHI * (b - a)
        left = sign * func(c) > sign * func(d)
        b = np.where(left, d, b)
        a = np.where(left, a, c)
    x = 0.5 * (a + b)
    fx = func(x)
    out = []
    for e, s, xi, vi in zip(extrema, sign, x, fx):
        if s * vi > s * e.y:
            out.append(Extremum(float(xi), float(vi), e.kind))
        else:
            out.append(e)
    return out


def cyclic_variation(values, plateau_tolerance: float = 0.0, func=None) -> VariationReport:
    """Variation report of samples on the uniform periodic grid ``2*pi*i/n``.

    If ``func`` (the sampled function, vectorised) is given, extrema are
    refined on it; otherwise everything stays on the grid.
    """
    y = np.asarray(values, dtype=float)
    n = y.size
    if n < MIN_GRID:
        raise SizeError(f"variation grid must have at least {MIN_GRID} points, got {n}")
    if plateau_tolerance < 0:
        raise ValueError("plateau tolerance must be >= 0")
    d = np.roll(y, -1) - y
    runs = _extrema_runs(d, plateau_tolerance, cyclic=True)

    def to_x(pos):
        return float(math.fmod(pos, n) * TWO_PI / n)

    extrema = [_run_extremum(y, r, to_x) for r in runs]
    if func is not None:
        extrema = _refine(func, runs, extrema, lambda pos: pos * TWO_PI / n)
        extrema = [Extremum(e.x % TWO_PI, e.y, e.kind) for e in extrema]
    extrema.sort(key=lambda e: e.x)
    if len(extrema) >= 2:
        ys = [e.y for e in extrema]
        deltas = tuple(abs(ys[(k + 1) % len(ys)] - ys[k]) for k in range(len(ys)))
    else:
        deltas = ()
    return VariationReport(
        total_variation=math.fsum(deltas),
        extrema=tuple(extrema),
        deltas=deltas,
        extrema_count=len(extrema),
        range=_range(y, extrema),
        plateau_tolerance=float(plateau_tolerance),
        grid=n,
        domain="periodic",
    )


def open_variation(values, x=None, plateau_tolerance: float = 0.0, func=None) -> VariationReport:
    """Variation report of samples on an interval, endpoints included.

    ``x`` gives the abscissae for reporting extrema positions; it defaults
    to a uniform grid on ``[-1, 1]``. ``func`` enables extremum refinement as
    in :func:`cyclic_variation`.
    """
    y = np.asarray(values, dtype=float)
    n = y.size
    if n < MIN_GRID:
        raise SizeError(f"variation grid must have at least {MIN_GRID} points, got {n}")
    if plateau_tolerance < 0:
        raise ValueError("plateau tolerance must be >= 0")
    xs = np.linspace(-1.0, 1.0, n) if x is None else np.asarray(x, dtype=float)
    runs = _extrema_runs(np.diff(y), plateau_tolerance, cyclic=False)

    def to_x(pos):
        return float(np.interp(pos, np.arange(n), xs))

    extrema = [_run_extremum(y, r, to_x) for r in runs]
    if func is not None:
        extrema = _refine(func, runs, extrema, to_x)
    ys = [float(y[0])] + [e.y for e in extrema] + [float(y[-1])]
    deltas = tuple(abs(b - a) for a, b in zip(ys[:-1], ys[1:]))
    return VariationReport(
        total_variation=math.fsum(deltas),
        extrema=tuple(extrema),
        deltas=deltas,
        extrema_count=len(extrema),
        range=_range(y, extrema),
        plateau_tolerance=float(plateau_tolerance),
        grid=n,
        domain="chebyshev",
    )


def variation_periodic(
    spec: FunctionSpec,
    n: int = DEFAULT_GRID,
    plateau_tolerance: float = 0.0,
    refine: bool = False,
) -> VariationReport:
    """Total variation of a periodic spec over one period, wrap step included.

    With ``refine=False`` (default) this is the grid variation, a lower bound
    that never decreases under grid doubling. ``refine=True`` polishes each
    extremum on the spec itself, which removes the ``O(h^2)`` error from
    extrema falling between grid points.
    """
    require_periodic(spec)
    if n < MIN_GRID:
        raise SizeError(f"variation grid must have at least {MIN_GRID} points, got {n}")
    return cyclic_variation(sample_uniform(spec, n), plateau_tolerance, spec if refine else None)


def variation_chebyshev(
    spec: FunctionSpec,
    n: int = DEFAULT_CHEB_GRID,
    plateau_tolerance: float = 0.0,
    refine: bool = False,
) -> VariationReport:
    """Total variation of a Chebyshev-domain spec over ``[-1, 1]``.

    Uses ``n`` equispaced points in ``x`` with both endpoints.
    """
    require_chebyshev(spec)
    if n < MIN_GRID:
        raise SizeError(f"variation grid must have at least {MIN_GRID} points, got {n}")
    x = np.linspace(-1.0, 1.0, n)
    return open_variation(spec(x), x, plateau_tolerance, spec if refine else None)


@dataclass(frozen=True)
class IdentityCheck:
    lhs: float
    rhs: float
    rel_diff: float


def check_variation_identity(
    spec: FunctionSpec, n: int = DEFAULT_CHEB_GRID, refine: bool = False
) -> IdentityCheck:
    """Compare the variation of ``theta -> f(cos theta)`` on ``[0, pi]`` with that of ``f`` on ``[-1, 1]``.

    The left side is sampled uniformly in theta and the right side uniformly
    in x, so the two grids differ and agreement is a genuine check.
    """
    require_chebyshev(spec)
    theta = np.linspace(0.0, np.pi, n)
    composed = (lambda t: spec(np.cos(t))) if refine else None
    lhs = open_variation(spec(np.cos(theta)), theta, func=composed).total_variation
    rhs = variation_chebyshev(spec, n, refine=refine).total_variation
    return IdentityCheck(lhs, rhs, abs(lhs - rhs) / max(rhs, 1e-30))
