"""Exact Fock space representations of the line and circle quantum groups on rational pyramids."""

from .coeff import LaurentCoeff, format_coeff, format_coeff_v, parse_coeff, quantum_integer
from .fock_circle import (
    CircleGenerator,
    apply_E_circle,
    apply_F_circle,
    apply_K_circle,
    enumerate_E_tuples,
    enumerate_F_tuples,
    expand_r_E,
    expand_r_F,
    n_bar,
    n_gt,
    n_lt,
    parse_circle_word,
)
from .fock_line import (
    FockVector,
    LineGenerator,
    apply_E_line,
    apply_F_line,
    apply_K_line,
    apply_word,
    parse_line_word,
    raise_from_vacuum,
)
from .pyramid import (
    EMPTY,
    Partition,
    Pyramid,
    PyramidError,
    add_interval,
    dominance_leq,
    nested_decomposition,
    partition_to_pyramid,
    pyramid_to_partition,
    remove_interval,
    validate,
)
from .stepfun import CircleInterval, LineInterval, StepFunction

__version__ = "0.1.0"
