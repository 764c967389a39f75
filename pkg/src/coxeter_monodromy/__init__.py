"""Monodromy of discriminants of finite Coxeter groups, with independent
cross-checks over finite fields, by Gaussian integrals and by counting."""

from .arrangements import Arrangement, chamber_count, coxeter_euler_checks, quadric_complement_euler
from .classes import FactoredZeta, MonodromyClass, class_V, class_chi, phi_twist, tensor, zeta_of_class
from .coxeter import (
    CoxeterDiagram,
    DiagramError,
    GroupType,
    RootSystemData,
    classify,
    degrees,
    parse_diagram,
    parse_type,
    root_system,
)
from .finite_field import MultChar, PrimeField, char_sum, gauss_sum, rhs_theorem_finite, verify_finite
from .invariants import basic_invariants, discriminant_in_invariants, invariantize
from .macdonald import (
    macdonald_lhs_quadrature,
    macdonald_rhs,
    max_delta_closed_form,
    max_delta_optimize,
)
from .recursion import (
    brieskorn_oracle,
    global_class_at_0,
    global_class_at_inf,
    local_class_M,
    qN_class,
)

__version__ = "0.1.0"
