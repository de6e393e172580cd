"""Categorical entropy of Fourier-Mukai autoequivalences of abelian surfaces
with Picard number one, computed on the Mukai lattice."""

from .entropy import (
    EntropyFunction,
    GrowthSequence,
    choose_twist,
    delta0_sequence,
    entropy_closed,
    entropy_estimate,
    kt_check,
    mass_growth_estimate,
    shift_drift,
    slope_fixed_point,
    slope_step,
    spectral_radius,
)
from .exact_arith import GaussianRational, QuadraticReal, Surd, eigenvalues, surd_mul, to_float
from .fm_group import (
    FMMatrix,
    GhatElement,
    ShiftedFM,
    act_on_vector,
    factor_isotropic_pair,
    ghat_act,
    make_fm,
    power,
    power_closed,
    rep3_matrix,
    theta_square,
    transform_pq,
)
from .mukai_lattice import (
    MukaiVector,
    SurfaceParams,
    Sym2Matrix,
    b_form,
    central_charge,
    euler_chi,
    exp_vector,
    hom_total_bound,
    hom_vanishing,
    iota,
    iota_inv,
    is_isotropic,
    is_positive,
    lemma_d_search,
    pairing,
)
from .sympow import ppav_entropy, sym_power

__version__ = "0.1.0"

__all__ = [
    "EntropyFunction",
    "GrowthSequence",
    "choose_twist",
    "delta0_sequence",
    "entropy_closed",
    "entropy_estimate",
    "kt_check",
    "mass_growth_estimate",
    "shift_drift",
    "slope_fixed_point",
    "slope_step",
    "spectral_radius",
    "GaussianRational",
    "QuadraticReal",
    "Surd",
    "eigenvalues",
    "surd_mul",
    "to_float",
    "FMMatrix",
    "GhatElement",
    "ShiftedFM",
    "act_on_vector",
    "factor_isotropic_pair",
    "ghat_act",
    "make_fm",
    "power",
    "power_closed",
    "rep3_matrix",
    "theta_square",
    "transform_pq",
    "MukaiVector",
    "SurfaceParams",
    "Sym2Matrix",
    "b_form",
    "central_charge",
    "euler_chi",
    "exp_vector",
    "hom_total_bound",
    "hom_vanishing",
    "iota",
    "iota_inv",
    "is_isotropic",
    "is_positive",
    "lemma_d_search",
    "pairing",
    "ppav_entropy",
    "sym_power",
]
