"""Function specs: the inputs every other module analyses.

Two domains are supported. Periodic kinds live on the circle ``[0, 2*pi)``
and are reduced modulo ``2*pi`` before evaluation; Chebyshev kinds live on
``[-1, 1]`` and reject arguments outside it.

Periodic kinds
    ``trig_poly``, ``samples``, ``piecewise_linear``, ``smoothed_square``,
    ``wake_profile``
Chebyshev kinds
    ``poly_cheb``, ``samples_cheb``

Specs are frozen dataclasses. They can be called directly (``spec(x)``) or
through :func:`evaluate`; both accept scalars and arrays.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, ClassVar

import numpy as np
from numpy.polynomial import chebyshev as npcheb

from .errors import DomainError, SizeError, SpecError

TWO_PI = 2.0 * np.pi
MIN_SAMPLES = 4

# grid offsets closer than this (in cells) to a node evaluate to the node value
_SNAP = 1e-9


def _real(value, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float, np.floating, np.integer)):
        raise SpecError(f"field '{name}': expected a real number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise SpecError(f"field '{name}': must be finite, got {value!r}")
    return value


def _reals(values, name: str) -> tuple[float, ...]:
    if isinstance(values, (str, bytes)) or not hasattr(values, "__iter__"):
        raise SpecError(f"field '{name}': expected a list of real numbers")
    return tuple(_real(v, f"{name}[{i}]") for i, v in enumerate(values))


class FunctionSpec:
    """Base class of all function specs."""

    kind: ClassVar[str]
    periodic: ClassVar[bool]

    def __call__(self, x):
        return evaluate(self, x)

    def _eval(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def to_dict(self) -> dict[str, Any]:
        raise NotImplementedError


@dataclass(frozen=True, eq=True)
class TrigPoly(FunctionSpec):
    """``a0/2 + sum_j (a_j cos jx + b_j sin jx)``.

    ``cos`` holds ``a_1..a_M`` and ``sin`` holds ``b_1..b_M``; the shorter
    list is implicitly zero-padded.
    """

    a0: float = 0.0
    cos: tuple[float, ...] = ()
    sin: tuple[float, ...] = ()

    kind: ClassVar[str] = "trig_poly"
    periodic: ClassVar[bool] = True

    def __post_init__(self):
        object.__setattr__(self, "a0", _real(self.a0, "a0"))
        object.__setattr__(self, "cos", _reals(self.cos, "cos"))
        object.__setattr__(self, "sin", _reals(self.sin, "sin"))

    @property
    def degree(self) -> int:
        return max(len(self.cos), len(self.sin))

    def _eval(self, x):
        # elementwise accumulation keeps results independent of array shape
        out = np.full(x.shape, 0.5 * self.a0)
        for j, a in enumerate(self.cos, start=1):
            if a:
                out = out + a * np.cos(j * x)
        for j, b in enumerate(self.sin, start=1):
            if b:
                out = out + b * np.sin(j * x)
        return out

    def to_dict(self):
        return {"kind": self.kind, "a0": self.a0, "cos": list(self.cos), "sin": list(self.sin)}


def constant(value: float) -> TrigPoly:
    """The constant function ``value`` as a degree-0 trig polynomial."""
    return TrigPoly(a0=2.0 * value)


@dataclass(frozen=True, eq=True)
class Samples(FunctionSpec):
    """Uniform samples ``f(2*pi*i/n)``, linearly interpolated and periodically closed."""

    values: tuple[float, ...]

    kind: ClassVar[str] = "samples"
    periodic: ClassVar[bool] = True

    def __post_init__(self):
        values = _reals(self.values, "values")
        if len(values) < MIN_SAMPLES:
            raise SizeError(
                f"field 'values': need at least {MIN_SAMPLES} samples, got {len(values)}"
            )
        object.__setattr__(self, "values", values)

    @cached_property
    def _array(self) -> np.ndarray:
        return np.asarray(self.values)

    def _eval(self, x):
        y = self._array
        n = y.size
        t = x * (n / TWO_PI)
        nearest = np.rint(t)
        on_node = np.abs(t - nearest) < _SNAP
        lo = np.floor(t)
        frac = t - lo
        i0 = lo.astype(np.int64) % n
        i1 = (i0 + 1) % n
        out = (1.0 - frac) * y[i0] + frac * y[i1]
        return np.where(on_node, y[nearest.astype(np.int64) % n], out)

    def to_dict(self):
        return {"kind": self.kind, "values": list(self.values)}


@dataclass(frozen=True, eq=True)
class PiecewiseLinear(FunctionSpec):
    """Linear interpolation through ``(x, y)`` knots.

    The last knot connects to the first one shifted by ``2*pi``, so the
    function is continuous and periodic by construction.
    """

    knots: tuple[tuple[float, float], ...]

    kind: ClassVar[str] = "piecewise_linear"
    periodic: ClassVar[bool] = True

    def __post_init__(self):
        if isinstance(self.knots, (str, bytes)) or not hasattr(self.knots, "__iter__"):
            raise SpecError("field 'knots': expected a list of [x, y] pairs")
        knots = []
        for i, knot in enumerate(self.knots):
            if isinstance(knot, (str, bytes)) or not hasattr(knot, "__len__") or len(knot) != 2:
                raise SpecError(f"field 'knots[{i}]': expected an [x, y] pair")
            kx = _real(knot[0], f"knots[{i}][0]")
            ky = _real(knot[1], f"knots[{i}][1]")
            if not 0.0 <= kx < TWO_PI:
                raise SpecError(f"field 'knots[{i}][0]': x = {kx} outside [0, 2*pi)")
            if knots and kx <= knots[-1][0]:
                raise SpecError(
                    f"field 'knots[{i}][0]': knots must be strictly increasing in x "
                    f"({kx} follows {knots[-1][0]})"
                )
            knots.append((kx, ky))
        if not knots:
            raise SpecError("field 'knots': at least one knot is required")
        object.__setattr__(self, "knots", tuple(knots))

    @cached_property
    def _table(self):
        xs = np.array([k[0] for k in self.knots])
        ys = np.array([k[1] for k in self.knots])
        xs = np.concatenate(([xs[-1] - TWO_PI], xs, [xs[0] + TWO_PI]))
        ys = np.concatenate(([ys[-1]], ys, [ys[0]]))
        return xs, ys

    def _eval(self, x):
        xs, ys = self._table
        return np.interp(x, xs, ys)

    def to_dict(self):
        return {"kind": self.kind, "knots": [list(k) for k in self.knots]}


@dataclass(frozen=True, eq=True)
class SmoothedSquare(FunctionSpec):
    """Trapezoidal wave: ``+A`` on ``(eps, pi-eps)``, ``-A`` on ``(pi+eps, 2pi-eps)``.

    Linear ramps of half-width ``eps`` join the plateaus at 0 and pi. The
    sine series is ``b_j = 4A/(pi j) * sin(j eps)/(j eps)`` for odd ``j`` and
    zero otherwise, which tends to the square wave as ``eps -> 0``.
    """

    amplitude: float = 1.0
    ramp_half_width: float = 0.01

    kind: ClassVar[str] = "smoothed_square"
    periodic: ClassVar[bool] = True

    def __post_init__(self):
        amp = _real(self.amplitude, "amplitude")
        eps = _real(self.ramp_half_width, "ramp_half_width")
        if amp <= 0:
            raise SpecError(f"field 'amplitude': must be > 0, got {amp}")
        if not 0.0 < eps < np.pi / 2:
            raise SpecError(f"field 'ramp_half_width': must lie in (0, pi/2), got {eps}")
        object.__setattr__(self, "amplitude", amp)
        object.__setattr__(self, "ramp_half_width", eps)

    def _eval(self, x):
        # triangle wave with slope +1 through 0 and -1 through pi
        tri = np.where(x < np.pi / 2, x, np.where(x < 1.5 * np.pi, np.pi - x, x - TWO_PI))
        return self.amplitude * np.clip(tri / self.ramp_half_width, -1.0, 1.0)

    def to_dict(self):
        return {
            "kind": self.kind,
            "amplitude": self.amplitude,
            "ramp_half_width": self.ramp_half_width,
        }


@dataclass(frozen=True, eq=True)
class Deficit:
    """One Gaussian dip of a wake profile; ``width`` is the standard deviation."""

    center: float
    depth: float
    width: float


@dataclass(frozen=True, eq=True)
class WakeProfile(FunctionSpec):
    """``mean`` minus periodically wrapped Gaussian dips.

    Each dip is summed over its three nearest periodic images, which is
    accurate to 1e-12 for widths up to pi/4.
    """

    mean: float = 0.0
    deficits: tuple[Deficit, ...] = field(default=())

    kind: ClassVar[str] = "wake_profile"
    periodic: ClassVar[bool] = True

    def __post_init__(self):
        mean = _real(self.mean, "mean")
        if isinstance(self.deficits, (str, bytes)) or not hasattr(self.deficits, "__iter__"):
            raise SpecError("field 'deficits': expected a list")
        deficits = []
        for i, d in enumerate(self.deficits):
            if isinstance(d, Deficit):
                d = (d.center, d.depth, d.width)
            elif isinstance(d, dict):
                extra = set(d) - {"center", "depth", "width"}
                if extra:
                    raise SpecError(f"field 'deficits[{i}]': unknown fields {sorted(extra)}")
                try:
                    d = (d["center"], d["depth"], d["width"])
                except KeyError as err:
                    raise SpecError(f"field 'deficits[{i}]': missing {err.args[0]!r}") from None
            elif not hasattr(d, "__len__") or len(d) != 3:
                raise SpecError(f"field 'deficits[{i}]': expected center, depth, width")
            center = _real(d[0], f"deficits[{i}].center")
            depth = _real(d[1], f"deficits[{i}].depth")
            width = _real(d[2], f"deficits[{i}].width")
            if not 0.0 <= center < TWO_PI:
                raise SpecError(f"field 'deficits[{i}].center': {center} outside [0, 2*pi)")
            if depth < 0:
                raise SpecError(f"field 'deficits[{i}].depth': must be >= 0, got {depth}")
            if width <= 0:
                raise SpecError(f"field 'deficits[{i}].width': must be > 0, got {width}")
            deficits.append(Deficit(center, depth, width))
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "deficits", tuple(deficits))

    def _eval(self, x):
        out = np.full(x.shape, self.mean)
        for d in self.deficits:
            offset = np.mod(x - d.center + np.pi, TWO_PI) - np.pi
            dip = sum(np.exp(-0.5 * ((offset + k * TWO_PI) / d.width) ** 2) for k in (-1, 0, 1))
            out = out - d.depth * dip
        return out

    def to_dict(self):
        return {
            "kind": self.kind,
            "mean": self.mean,
            "deficits": [
                {"center": d.center, "depth": d.depth, "width": d.width} for d in self.deficits
            ],
        }


@dataclass(frozen=True, eq=True)
class PolyCheb(FunctionSpec):
    """``sum_m c_m T_m(x)`` on ``[-1, 1]``."""

    coeffs: tuple[float, ...]

    kind: ClassVar[str] = "poly_cheb"
    periodic: ClassVar[bool] = False

    def __post_init__(self):
        coeffs = _reals(self.coeffs, "coeffs")
        if not coeffs:
            raise SpecError("field 'coeffs': at least one coefficient is required")
        object.__setattr__(self, "coeffs", coeffs)

    def _eval(self, x):
        return npcheb.chebval(x, np.asarray(self.coeffs))

    def to_dict(self):
        return {"kind": self.kind, "coeffs": list(self.coeffs)}


def chebyshev_nodes(n: int) -> np.ndarray:
    """First-kind nodes ``cos(pi*(k + 1/2)/n)``, k = 0..n-1 (descending)."""
    return np.cos(np.pi * (np.arange(n) + 0.5) / n)


@dataclass(frozen=True, eq=True)
class SamplesCheb(FunctionSpec):
    """Values at the first-kind Chebyshev nodes, interpolated by the degree n-1 polynomial."""

    values: tuple[float, ...]

    kind: ClassVar[str] = "samples_cheb"
    periodic: ClassVar[bool] = False

    def __post_init__(self):
        values = _reals(self.values, "values")
        if len(values) < MIN_SAMPLES:
            raise SizeError(
                f"field 'values': need at least {MIN_SAMPLES} samples, got {len(values)}"
            )
        object.__setattr__(self, "values", values)

    @cached_property
    def interpolant(self) -> np.ndarray:
        """Chebyshev coefficients of the interpolating polynomial."""
        y = np.asarray(self.values)
        n = y.size
        theta = np.pi * (np.arange(n) + 0.5) / n
        c = (2.0 / n) * (np.cos(np.multiply.outer(np.arange(n), theta)) @ y)
        c[0] *= 0.5
        return c

    def _eval(self, x):
        return npcheb.chebval(x, self.interpolant)

    def to_dict(self):
        return {"kind": self.kind, "values": list(self.values)}


KINDS: dict[str, type[FunctionSpec]] = {
    cls.kind: cls
    for cls in (TrigPoly, Samples, PiecewiseLinear, SmoothedSquare, WakeProfile, PolyCheb, SamplesCheb)
}


def evaluate(spec: FunctionSpec, x):
    """Evaluate ``spec`` at ``x`` (scalar or array).

    Periodic kinds reduce ``x`` modulo ``2*pi`` first. Chebyshev kinds raise
    :class:`DomainError` for any ``x`` outside ``[-1, 1]``.
    """
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("evaluation points must be finite")
    if spec.periodic:
        arr = np.mod(arr, TWO_PI)
        # np.mod can round tiny negatives up to exactly 2*pi
        arr = np.where(arr >= TWO_PI, 0.0, arr)
    elif np.any(np.abs(arr) > 1.0):
        raise DomainError(f"{spec.kind} is defined on [-1, 1] only")
    out = spec._eval(arr)
    if np.ndim(x) == 0:
        return float(out)
    return out


def uniform_grid(n: int) -> np.ndarray:
    """Points ``2*pi*i/n``, i = 0..n-1.

    Computed as ``(i * 2pi) / n`` so that the grid for ``2n`` contains the
    grid for ``n`` bit-for-bit.
    """
    return np.arange(n) * TWO_PI / n


def sample_uniform(spec: FunctionSpec, n: int) -> np.ndarray:
    """Values of a periodic spec on :func:`uniform_grid` ``(n)``."""
    if n < MIN_SAMPLES:
        raise SizeError(f"grid must have at least {MIN_SAMPLES} points, got {n}")
    require_periodic(spec)
    return evaluate(spec, uniform_grid(n))


def require_periodic(spec: FunctionSpec) -> None:
    if not spec.periodic:
        raise DomainError(f"expected a periodic function spec, got kind '{spec.kind}'")


def require_chebyshev(spec: FunctionSpec) -> None:
    if spec.periodic:
        raise DomainError(f"expected a Chebyshev-domain function spec, got kind '{spec.kind}'")


_FIELDS = {
    "trig_poly": ({"a0", "cos", "sin"}, set()),
    "samples": ({"values"}, {"values"}),
    "piecewise_linear": ({"knots"}, {"knots"}),
    "smoothed_square": ({"amplitude", "ramp_half_width"}, {"amplitude", "ramp_half_width"}),
    "wake_profile": ({"mean", "deficits"}, {"mean"}),
    "poly_cheb": ({"coeffs"}, {"coeffs"}),
    "samples_cheb": ({"values"}, {"values"}),
}


def spec_from_dict(data: dict[str, Any]) -> FunctionSpec:
    """Build a spec from its JSON object form; unknown fields are rejected."""
    if not isinstance(data, dict):
        raise SpecError("function spec must be a JSON object")
    kind = data.get("kind")
    if kind not in KINDS:
        raise SpecError(f"field 'kind': unknown kind {kind!r}; expected one of {sorted(KINDS)}")
    allowed, required = _FIELDS[kind]
    fields = {k: v for k, v in data.items() if k != "kind"}
    unknown = sorted(set(fields) - allowed)
    if unknown:
        raise SpecError(f"unknown field(s) for kind '{kind}': {', '.join(unknown)}")
    missing = sorted(required - set(fields))
    if missing:
        raise SpecError(f"missing field(s) for kind '{kind}': {', '.join(missing)}")
    return KINDS[kind](**fields)


def parse_spec(text: str) -> FunctionSpec:
    """Parse the JSON text of a function spec and validate it."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise SpecError(f"invalid JSON at line {err.lineno}, column {err.colno}: {err.msg}") from None
    return spec_from_dict(data)


def serialize_spec(spec: FunctionSpec) -> str:
    return json.dumps(spec.to_dict())


def load_spec(path) -> FunctionSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())
