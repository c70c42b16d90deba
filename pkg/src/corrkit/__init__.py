"""Exact symbolic toolkit for graph and labelled-graph operator algebras
and the correspondences between them.

Everything is computed over the rationals with zero tolerance: presented
commutative coefficient algebras, finitely presented correspondences
with the four morphism compatibility conditions, term arithmetic for the
universal algebras of graphs and labelled spaces, graph-algebra K-theory
through a verified Smith normal form, and the quantum-sphere example
family with its mirrored twin and labelled model.
"""
from .algebra import CommAlgebra, PresentationError, diagonal_algebra
from .correspondences import (Correspondence, Morphism, RestrictedSum,
                              check_covariant_rep, check_morphism,
                              check_pullback_hypotheses, compact_decomposition,
                              compose, identity_morphism, kernel_and_jx,
                              restricted_direct_sum, theta)
from .engine import Element, Engine, tautological_checks
from .errors import (BudgetError, ParseError, UnsupportedSpaceError,
                     ValidationError)
from .graphs import Graph
from .ktheory import KTheoryResult, k0_class_membership, k_theory
from .labelled import (Edge, EdgeFamily, LabelledGraph, LabelledSpace,
                       build_space, concrete_graph, is_left_resolving,
                       is_weakly_left_resolving, label_set, relative_range,
                       truncate_space)
from .obstruction import SweepResult, enumerate_candidates, sweep
from .properties import run_property_suites
from .reports import Check, Report
from .setexpr import EMPTY, SetExpr, atoms, tail, union_all
from .smith import invariant_factors, integer_solve, smith_normal_form
from .spheres import (SphereConfig, build_En_graph, build_En_space, build_X_A,
                      build_Y_B, build_Z_C, build_mirror_sum, build_omega,
                      build_psi, lemma_suite, verify_En_representation,
                      verify_sphere_suite, verify_XY_isomorphism)

__version__ = "0.1.0"
