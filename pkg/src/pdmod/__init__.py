"""Exact analysis of linear constant-coefficient PD systems.

Systems are modules over polynomial rings: completion to involution,
characters and codimension, purity and torsion chains, parametrization, and
Macaulay inverse systems with minimal generators.
"""

from .arith import QQ, Field, Poly, RationalFunction, clear_denominators, poly_gcd, poly_lcm
from .errors import *  # noqa: F401,F403
from .jets import Jet, LinearEquation, PDSystem, autoreduce, change_coordinates, jet_key, reduce, specialize
from .parse import load_system, parse_json, parse_system, system_to_dsl, system_to_json
from .involution import (
    InvolutiveSystem,
    characters,
    class_profile,
    codim,
    complete,
    full_torsion_test,
    hilbert_dims,
    involution_test,
    solution_dim,
    spencer_form,
)
from .analysis import (
    contract,
    ideal_quotient,
    localize,
    parametrize,
    purity_test,
    torsion_chain,
    unmixedness_test,
)
from .dual import (
    DualSpace,
    ModularEquation,
    build_dual,
    delocalize,
    derivate,
    derivate_generation_check,
    generation_check,
    maximal_points,
    min_generators,
    section_space,
    socle,
    subsystem_sum,
    top_component,
)

__version__ = "0.1.0"
