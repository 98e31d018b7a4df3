"""Monodromy orbits, uniruled divisors and coisotropic loci on K3^[n]-type
hyperkähler manifolds, by exact lattice arithmetic."""

from .lattice_core import (
    CurveClass,
    DiscriminantClass,
    DivisorClass,
    LatticeError,
    NonPositiveSquareError,
    NonPrimitiveError,
    bb_square_curve,
    bb_square_divisor,
    discriminant_class,
    divisibility,
    dual_curve,
)
from .orbits import CurveNormalForm, OrbitInvariants, Window, normal_form_curve, orbit_invariants, same_orbit
from .existence import Outcome, osy_feasible, primitive_criterion
from .multiples import MBound, MOutcome, find_m, m_bounds, reproduce_table
from .coisotropic import codim_two_locus, klm_condition, shift_to_klm

__version__ = "0.1.0"
