"""Fourier and Chebyshev coefficient bounds from total variation, and
proximity bands that guarantee a prescribed harmonic reduction."""

__version__ = "0.1.0"

from .band import (
    BandSpec,
    BandWidths,
    DesignRequest,
    VerificationResult,
    clamp_candidate,
    design_band,
    design_width,
    make_band,
    make_center,
    variation_budget,
    verify_candidate,
)
from .bounds import (
    BoundReport,
    BoundRow,
    GenericBasisParams,
    bound_report,
    bound_report_cheb,
    bound_report_trig,
    generic_bound,
)
from .errors import AliasingError, CenterNotZeroedError, DomainError, SizeError, SpecError
from .functions import (
    Deficit,
    FunctionSpec,
    PiecewiseLinear,
    PolyCheb,
    Samples,
    SamplesCheb,
    SmoothedSquare,
    TrigPoly,
    WakeProfile,
    constant,
    evaluate,
    load_spec,
    parse_spec,
    sample_uniform,
    serialize_spec,
)
from .spectral import SpectrumTable, cheb_spectrum, spectrum, synthesize, trig_spectrum
from .variation import (
    Extremum,
    VariationReport,
    check_variation_identity,
    variation_chebyshev,
    variation_periodic,
)
