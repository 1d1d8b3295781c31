"""Bicomplex Fourier transforms: idempotent algebra, quadrature and residue inversion."""

from .bicomplex import (
    E1,
    E2,
    I1,
    I2,
    J,
    ONE,
    ZERO,
    Bicomplex,
    IdempotentPair,
    from_idempotent,
    inverse,
    mul,
    to_idempotent,
)
from .errors import BifourierError
from .parser import lower_to_rational, parse, parse_bicomplex, parse_spectrum, render_spectrum
from .rational import (
    ComplexPolynomial,
    ComplexRational,
    Pole,
    PoleSet,
    find_poles,
    residue_exp_kernel,
    residue_sum_halfplane,
)
from .transform import (
    BicomplexRational,
    DecayEstimate,
    RegionOfConvergence,
    TimeSignal,
    damped_sin,
    exp_abs,
    forward_transform,
    inverse_at_zero,
    inverse_transform,
    roc_contains_four,
    roc_contains_idem,
    roundtrip_error,
    zero_limits,
)

__version__ = "0.1.0"
