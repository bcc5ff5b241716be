"""Exact-exponent kernel for filtered A-infinity data over the Novikov ring.

Checks the twisted functor equations, the cyclic action on weak
Maurer-Cartan points with equivariance of the superpotential, and the
compatibility of that action with wall-crossing gluing maps.
"""
from .errors import (ArityMismatch, BoundaryPoint, CharacterMismatch, DegreeRuleViolation,
                     DomainError, IllConditioned, Inconsistent, MissingELSystem, NoEnergyGap,
                     OutsideDomain, PreconditionFailed, UnknownSuite)
from .fukcat import (CategoryData, HolonomyCharacter, LagrangianLabel, MorphismComponent,
                     PolygonClass, build_twisted_structure, check_functor_order,
                     check_twisted_equations, phi1_scalar, phi_object)
from .graded import (GradedBasis, GradedVector, MultilinearTable, ml_apply, split_pr1,
                     twist_apply)
from .novikov import (T, NovikovScalar, RingConfig, nv_eq, nv_exp, nv_inv, nv_mul, nv_val)
from .potential import (DiskClass, FiberAlgebra, MCPoint, apply_tau, check_divisor_axiom,
                        check_equivariance, check_monomial_transform, compute_gamma, eval_P,
                        weak_mc_check)
from .report import Report
from .toric import Polytope, cho_oh_classes
from .wallcross import (IsotopyReparam, PseudoIsotopy, check_commute, eval_f, f_star, gluing,
                        psi_reparam)

__version__ = "0.1.0"
