"""Local type classification of newforms from quadratic-twist data.

The classifier reads level valuations and normalized root-number ratios and
returns the local type (principal series, Steinberg, supercuspidal with its
inducing extension where determined); finite exponential sums verify the
sign-variation identities it relies on, and a real-quadratic auxiliary-prime
search makes the twisting characters global over such fields.
"""

from .arith import is_prime, kronecker, p_star, valuation
from .characters import (
    DirichletCharacter,
    GlobalQuadCharacter,
    RootOfUnity,
    enumerate_chars,
    global_quad_char,
    legendre_char,
    primitive_chars,
    trivial_char,
    two_char,
)
from .classify import (
    ConsistencyError,
    ExceptionalCurveId,
    LocalTypeOdd,
    OddTwistObservation,
    TwoTwistObservation,
    TwoType,
    allowed_types_odd,
    allowed_types_two,
    classify_odd,
    classify_two,
    exceptional_level_valuation,
    exceptional_root_number,
    exceptional_twist,
    induced_conductor,
    normalized_ratio,
)
from .epsilon import (
    EpsilonSum,
    Fp2,
    RamifiedUnit,
    admissible_indices,
    gauss_sum,
    ps_product,
    ps_twist_ratio,
    ramified_norm_image,
    sc_ram_twist_ratio,
    sc_unram_epsilon,
    sc_unram_twist_ratio,
)
from .hilbert import (
    FieldUnit,
    RealQuadField,
    ResidueSymbolTable,
    chi_on_unit,
    find_auxiliary_prime,
    fundamental_unit,
    match_signature,
    needs_auxiliary,
    totally_positive_generator,
)
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ConsistencyError",
    "DirichletCharacter",
    "EpsilonSum",
    "ExceptionalCurveId",
    "FieldUnit",
    "Fp2",
    "GlobalQuadCharacter",
    "LocalTypeOdd",
    "OddTwistObservation",
    "RamifiedUnit",
    "RealQuadField",
    "ResidueSymbolTable",
    "RootOfUnity",
    "TwoTwistObservation",
    "TwoType",
    "admissible_indices",
    "allowed_types_odd",
    "allowed_types_two",
    "chi_on_unit",
    "classify_odd",
    "classify_two",
    "enumerate_chars",
    "exceptional_level_valuation",
    "exceptional_root_number",
    "exceptional_twist",
    "find_auxiliary_prime",
    "fundamental_unit",
    "gauss_sum",
    "global_quad_char",
    "induced_conductor",
    "is_prime",
    "kronecker",
    "legendre_char",
    "match_signature",
    "needs_auxiliary",
    "normalized_ratio",
    "p_star",
    "primitive_chars",
    "ps_product",
    "ps_twist_ratio",
    "ramified_norm_image",
    "sc_ram_twist_ratio",
    "sc_unram_epsilon",
    "sc_unram_twist_ratio",
    "totally_positive_generator",
    "trivial_char",
    "two_char",
    "valuation",
]
