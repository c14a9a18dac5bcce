"""Proximity bands that guarantee a q-fold reduction of one harmonic.

The workflow for reducing ``|a_j|`` of ``f`` by a factor ``q``:

1. pick a *center* whose j-th coefficient vanishes: the mean of ``f``
   ("trivial") or ``f`` minus its j-th harmonic ("minimal");
2. any distorted ``f~`` with ``f~ - center`` of total variation at most
   ``|a_j0| * pi * j / q`` has ``|a_j(f~)| <= |a_j0| / q``;
3. keeping ``f~`` inside ``center +- delta/2`` is sufficient when either

   ``delta = |a_j0| * pi * j / (q * N)`` with N the extrema count of the
   difference, or ``delta = |a_j0| * pi / (2 q)`` via the range bound.

:func:`verify_candidate` re-derives every link of that chain on a grid and
measures the amplitude actually achieved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CenterNotZeroedError
from .functions import FunctionSpec, Samples, TrigPoly, constant, require_periodic
from .functions import sample_uniform, uniform_grid
from .spectral import DEFAULT_GRID, trig_spectrum
from .variation import VariationReport, cyclic_variation

CENTER_KINDS = ("trivial", "minimal")
PROVENANCES = ("eq11", "eq12", "max_of_both", "override")
CENTER_ZERO_TOL = 1e-8
DEFAULT_TOL = 1e-8
# starting amplitudes at or below this are treated as already removed
ATTAINED_TOL = 1e-12
# relative step size below which the difference f~ - center counts as flat
ROUNDING_PLATEAU = 1e-12


@dataclass(frozen=True)
class DesignRequest:
    """Target harmonic ``j``, reduction factor ``q`` and starting amplitude.

    ``n_extrema`` is the assumed extrema count of ``f~ - center`` used by the
    extrema-count width; leave it ``None`` to use the range-based width only.
    """

    j: int
    q: float
    a_j0: float
    b_j0: float = 0.0
    n_extrema: int | None = None
    center_kind: str = "minimal"

    def __post_init__(self):
        if int(self.j) != self.j or self.j < 1:
            raise ValueError(f"harmonic j must be an integer >= 1, got {self.j}")
        if not self.q > 1:
            raise ValueError(f"reduction factor q must be > 1, got {self.q}")
        if not (math.isfinite(self.a_j0) and math.isfinite(self.b_j0)):
            raise ValueError("initial amplitudes must be finite")
        if self.n_extrema is not None and self.n_extrema < 1:
            raise ValueError(f"extrema count N must be >= 1, got {self.n_extrema}")
        if self.center_kind not in CENTER_KINDS:
            raise ValueError(f"center kind must be one of {CENTER_KINDS}, got {self.center_kind!r}")
        object.__setattr__(self, "j", int(self.j))

    @property
    def target_amplitude(self) -> float:
        return abs(self.a_j0) / self.q


def variation_budget(request: DesignRequest) -> float:
    """Largest variation of ``f~ - center`` that still guarantees the reduction."""
    return abs(request.a_j0) * np.pi * request.j / request.q


@dataclass(frozen=True)
class BandWidths:
    eq11: float | None
    eq12: float
    recommended: float
    provenance: str
    budget: float
    already_attained: bool


def design_width(request: DesignRequest) -> BandWidths:
    """Sufficient band widths for ``request``.

    The recommendation is the wider of the two, since a wider band asks for
    less deviation from ``f``. A starting amplitude that is zero (up to
    ``ATTAINED_TOL``) gives zero widths, zero budget and ``already_attained=True``.
    """
    amp = abs(request.a_j0)
    if amp <= ATTAINED_TOL:
        eq11 = None if request.n_extrema is None else 0.0
        return BandWidths(eq11, 0.0, 0.0, "eq12" if eq11 is None else "max_of_both", 0.0, True)
    eq11 = None
    if request.n_extrema is not None:
        eq11 = amp * np.pi * request.j / (request.q * request.n_extrema)
    eq12 = amp * np.pi / (2.0 * request.q)
    if eq11 is None:
        recommended, provenance = eq12, "eq12"
    else:
        recommended, provenance = max(eq11, eq12), "max_of_both"
    return BandWidths(eq11, eq12, recommended, provenance, variation_budget(request), False)


@dataclass(frozen=True)
class BandSpec:
    center: FunctionSpec
    delta: float
    request: DesignRequest
    provenance: str = "eq12"

    def __post_init__(self):
        require_periodic(self.center)
        if not (math.isfinite(self.delta) and self.delta > 0):
            raise ValueError(f"band width must be > 0, got {self.delta}")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    def lower(self, x):
        return self.center(x) - 0.5 * self.delta

    def upper(self, x):
        return self.center(x) + 0.5 * self.delta


def make_band(center: FunctionSpec, request: DesignRequest, delta: float | None = None) -> BandSpec:
    """Band around ``center`` at the recommended width, or at ``delta`` if given."""
    if delta is not None:
        return BandSpec(center, float(delta), request, "override")
    widths = design_width(request)
    if widths.already_attained:
        raise ValueError("initial amplitude is zero: the reduction is already attained")
    return BandSpec(center, widths.recommended, request, widths.provenance)


def make_center(
    spec: FunctionSpec, j: int, kind: str = "minimal", grid: int | None = None
) -> FunctionSpec:
    """A function with vanishing j-th harmonic, derived from ``spec``.

    ``trivial`` returns the mean of ``spec`` as a constant. ``minimal``
    subtracts ``a_j cos(jx) + b_j sin(jx)``: for a trig polynomial the j-th
    coefficients are set to zero, other kinds become samples on the grid
    with the computed harmonic removed.
    """
    require_periodic(spec)
    if kind not in CENTER_KINDS:
        raise ValueError(f"center kind must be one of {CENTER_KINDS}, got {kind!r}")
    grid = DEFAULT_GRID if grid is None else grid
    table = trig_spectrum(spec, j, grid)
    if kind == "trivial":
        return constant(0.5 * table.a0)
    if isinstance(spec, TrigPoly) and grid > 2 * max(len(spec.cos), len(spec.sin), j):
        cos = list(spec.cos) + [0.0] * max(0, j - len(spec.cos))
        sin = list(spec.sin) + [0.0] * max(0, j - len(spec.sin))
        cos[j - 1] = 0.0
        sin[j - 1] = 0.0
        return TrigPoly(spec.a0, cos, sin)
    a_j, b_j = table.a(j), table.b(j)
    x = uniform_grid(grid)
    values = sample_uniform(spec, grid) - a_j * np.cos(j * x) - b_j * np.sin(j * x)
    return Samples(values)


def design_band(
    spec: FunctionSpec,
    j: int,
    q: float,
    n_extrema: int | None = None,
    center_kind: str = "minimal",
    grid: int | None = None,
    a_j0: float | None = None,
    delta: float | None = None,
):
    """Request, widths and band for reducing harmonic ``j`` of ``spec`` by ``q``.

    ``a_j0`` defaults to the computed coefficient of ``spec``. The band is
    ``None`` when the amplitude is already zero and no ``delta`` is forced.
    """
    grid = DEFAULT_GRID if grid is None else grid
    table = trig_spectrum(spec, j, grid)
    request = DesignRequest(
        j=j,
        q=q,
        a_j0=table.a(j) if a_j0 is None else float(a_j0),
        b_j0=table.b(j),
        n_extrema=n_extrema,
        center_kind=center_kind,
    )
    widths = design_width(request)
    center = make_center(spec, j, center_kind, grid)
    if delta is None and widths.already_attained:
        return request, widths, None
    return request, widths, make_band(center, request, delta)


def clamp_candidate(spec: FunctionSpec, band: BandSpec, grid: int = DEFAULT_GRID) -> Samples:
    """Clip ``spec`` into the band on the grid; the result lies inside by construction."""
    require_periodic(spec)
    x = uniform_grid(grid)
    values = sample_uniform(spec, grid)
    return Samples(np.clip(values, band.lower(x), band.upper(x)))


@dataclass(frozen=True)
class VerificationResult:
    containment: bool
    max_deviation: float
    delta_report: VariationReport
    budget: float
    budget_ok: bool
    chain_ok: bool
    n_extrema_measured: int
    achieved_abs_a: float
    achieved_abs_b: float
    reduction_factor: float
    target_amplitude: float
    certified: bool


def verify_candidate(
    candidate: FunctionSpec,
    band: BandSpec,
    grid: int = DEFAULT_GRID,
    tol: float = DEFAULT_TOL,
    plateau_tolerance: float | None = None,
) -> VerificationResult:
    """Certify that ``candidate`` reduces the band's target harmonic by ``q``.

    ``budget_ok`` and ``chain_ok`` are the sufficient conditions; ``certified``
    compares the measured amplitude with ``|a_j0|/q`` directly, so it may hold
    even where the sufficient conditions fail.

    The extrema of ``f~ - center`` are found with ``plateau_tolerance``,
    which defaults to ``1e-12`` times the magnitude of the sampled values so
    that rounding noise in an equidistant candidate does not count as
    oscillation.

    Raises
    ------
    CenterNotZeroedError
        If the band center's ``|a_j|`` exceeds 1e-8 on the grid.
    """
    require_periodic(candidate)
    request = band.request
    j = request.j
    center_table = trig_spectrum(band.center, j, grid)
    if abs(center_table.a(j)) > CENTER_ZERO_TOL:
        raise CenterNotZeroedError(
            f"band center has |a_{j}| = {abs(center_table.a(j)):.3e} > {CENTER_ZERO_TOL}"
        )
    cand_values = sample_uniform(candidate, grid)
    center_values = sample_uniform(band.center, grid)
    diff = cand_values - center_values
    max_dev = float(np.max(np.abs(diff)))
    if plateau_tolerance is None:
        scale = max(1.0, float(np.max(np.abs(cand_values))), float(np.max(np.abs(center_values))))
        plateau_tolerance = ROUNDING_PLATEAU * scale
    report = cyclic_variation(diff, plateau_tolerance)
    budget = variation_budget(request)
    achieved = trig_spectrum(candidate, j, grid)
    amp_a, amp_b = abs(achieved.a(j)), abs(achieved.b(j))
    if amp_a > 0:
        reduction = abs(request.a_j0) / amp_a
    else:
        reduction = math.inf if request.a_j0 != 0 else 1.0
    return VerificationResult(
        containment=max_dev <= 0.5 * band.delta + tol,
        max_deviation=max_dev,
        delta_report=report,
        budget=budget,
        budget_ok=report.total_variation <= budget + tol,
        chain_ok=report.total_variation <= report.extrema_count * band.delta + tol,
        n_extrema_measured=report.extrema_count,
        achieved_abs_a=amp_a,
        achieved_abs_b=amp_b,
        reduction_factor=reduction,
        target_amplitude=request.target_amplitude,
        certified=amp_a <= request.target_amplitude + tol,
    )

