"""Exact computations in the incidence Hopf algebra of colored interval partitions."""

from .algebra import (
    AlgebraElement,
    Generator,
    TensorElement,
    Y,
    coproduct,
    coproduct_op,
    convolution,
    counit,
    map_alpha,
    map_s,
    map_t,
    multiply,
    parse_element,
)
from .antipodes import (
    antipode,
    antipode_breadth,
    antipode_geometric,
    antipode_inverse_recursive,
    antipode_ost,
    antipode_recursive,
    antipode_reduced,
    antipode_right,
    lambda_monomial,
    omega,
    verify_antipode_axiom,
)
from .series import (
    FreeCoefficient,
    NCSeries,
    Polynomial,
    left_inverse,
    pairing,
    right_inverse,
    substitute,
    substitute_general,
    verify_inverse,
)
from .trees import PlanarTree, enumerate_trees, parse_tree

__all__ = [name for name in dir() if not name.startswith("_")]
