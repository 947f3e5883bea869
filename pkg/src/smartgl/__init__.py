"""
SmartGL - exact computations in the gl_2n-modules M_Q on U(gl_n).

PBW arithmetic in U(gl_n), matrices over it, the module action for every
rational Q, and mechanical verification of the module identities.
"""

__version__ = "0.1.0"

from .action import (
    Gl2nElement,
    ModuleSpec,
    Mutation,
    act,
    act_alternative,
    act_identity,
    act_parabolic,
    b_eigenvalues,
    twist,
)
from .config import SmartOptions
from .errors import SmartGLError
from .expr import parse_gl2n, parse_uea, print_gl2n, print_normal
from .matrices import UEAMatrix, f_power, gelfand, phi, psi
from .pbw import Monomial, UEAElement, commutator, mul
from .verify import VerificationReport, reduce_to_constant, run_suite, socle_layers

__all__ = [
    "Gl2nElement",
    "ModuleSpec",
    "Monomial",
    "Mutation",
    "SmartGLError",
    "SmartOptions",
    "UEAElement",
    "UEAMatrix",
    "VerificationReport",
    "act",
    "act_alternative",
    "act_identity",
    "act_parabolic",
    "b_eigenvalues",
    "commutator",
    "f_power",
    "gelfand",
    "mul",
    "parse_gl2n",
    "parse_uea",
    "phi",
    "print_gl2n",
    "print_normal",
    "psi",
    "reduce_to_constant",
    "run_suite",
    "socle_layers",
    "twist",
]
