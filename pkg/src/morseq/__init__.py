"""Morse sequences on simplicial complexes over Z/2.

A Morse sequence builds a complex from nothing by expansions and fillings.
The package computes such sequences, their reference and coreference maps,
the critical complex, extension maps and the gradient flow, and checks the
identities that relate them.
"""

from .complex import (
    Chain,
    Complex,
    boundary,
    boundary_op,
    closure,
    coboundary,
    coboundary_op,
    collapse,
    expand,
    fill,
    free_pairs,
    parse_cplx,
    perforate,
    read_cplx,
    simplex,
)
from .estimator import MorseReduction
from .exceptions import MorseError
from .flow import (
    ExtensionComplex,
    FlowOperator,
    coextension_map,
    count_cogradient_paths,
    count_gradient_paths,
    extension_complex,
    extension_map,
    flow,
    flow_apply,
    flow_stabilize,
)
from .functions import (
    DiscreteMorseFunction,
    basic_function_to_sequence,
    canonical_morse_function,
    gradient_field_of_function,
    is_acyclic,
    vf_to_morse_sequence,
)
from .homology import PresentedChainComplex, betti, betti_numbers, homologous
from .reference import CriticalComplex, Frame, coreference_map, critical_complex, reference_map
from .sequence import (
    Expand,
    Fill,
    MorseSequence,
    VectorField,
    arrange,
    decreasing_scheme,
    equivalent,
    gradient_vector_field,
    increasing_scheme,
    read_sequence,
    skeletons,
    validate,
    write_sequence,
)
from .suite import run_checks

__version__ = "0.1.0"
