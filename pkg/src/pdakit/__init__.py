"""Placement delivery arrays: construction, verification, lifting, simulation.

A placement delivery array encodes a whole coded-caching scheme in one grid:
stars mark cached subfiles, equal integer labels mark subfiles served by one
XOR transmission.  This package generates the standard families, checks the
defining conditions and the Blackburn-compatibility notions between arrays,
composes arrays through uniform and non-uniform lifting, reproduces the
rate-memory-subpacketization tradeoff tables through an exact rational
parameter calculus, and executes any valid array as a byte-level caching
round.
"""

from .compatibility import (
    CompatReport,
    CompatWitness,
    GenFamily,
    check_condition_cstar,
    is_blackburn_compatible,
    is_generalized_family,
    is_left_compatible,
    is_right_compatible,
)
from .constructions import (
    OddTilingFamily,
    all_star,
    filled,
    g_array,
    h_array,
    identity,
    mn,
    mn_reverse,
    odd_tiling,
    shangguan_direct,
    yan_half_memory,
)
from .core import (
    Pda,
    PdaParams,
    ValidationReport,
    Violation,
    canonicalize,
    disjoint_copy,
    hstack,
    params,
    relabel,
    validate,
    vstack,
)
from .errors import (
    CompatibilityError,
    DecodeError,
    GridParseError,
    InvalidPdaError,
    LiftError,
    PdaError,
)
from .gridio import parse_grid, pda_from_json, pda_to_json, serialize_grid
from .lifting import (
    LiftOutcome,
    ParamTuple,
    assemble_identity_lift,
    basic_lift,
    lift_family,
    lift_family_params,
    lifted_params,
    measure_family,
    mn_recursive,
    nonuniform_lift,
    odd_tiling_lift,
    shangguan_recursive,
    uniform_lift,
)
from .simulate import Library, RunReport, Transmission, decode, deliver, make_library, place, run

__version__ = "0.1.0"
