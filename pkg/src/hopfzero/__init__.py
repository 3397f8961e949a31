"""Exact symbolic integrability analysis of nondegenerate Hopf-zero vector fields.

The package computes, in exact rational arithmetic, the orbital normal form
of a polynomial three-dimensional vector field whose lowest quasi-homogeneous
part is (-2y, 2x, x^2 + y^2), the obstruction sequences to the existence of
analytic first integrals and of inverse Jacobi multipliers shaped like
x^2 + y^2 or its square, and a classification verdict for the system.
"""

from .analyzers import (CaseTag, Classification, Method, ObstructionSequence,
                        classify, first_integral_obstructions,
                        jacobi_obstructions, obstruction_sequence,
                        recombination_defect)
from .coeffring import (ParamPolynomial, Rational, congruent_mod,
                        ppoly_normalize, ppoly_reduce, pseudo_remainder, rat)
from .errors import (DegreeError, HopfZeroError, ParameterError, ParseError,
                     PrincipalPartError, StructureError)
from .frontend import (AnalysisConfig, REPORT_SCHEMA, Scalings, build_report,
                       main, normalize_principal_part, run_cli)
from .gradedpoly import (GradedSliceBasis, Monomial3, QHPolynomial,
                         h_component, partial, qh_decompose, slice_basis,
                         slice_dimension)
from .goldens import (GoldenCase, GoldenResult, load_cases, parse_fixture,
                      run_golden, run_goldens)
from .homological import (HomologicalSolution, LieOperatorMatrix,
                          OperatorAnalysis, analyze_operator,
                          lie_operator_matrix, solve_homological)
from .normalform import (GeneratorStep, NormalFormResult, ResonanceData,
                         apply_generator_step, coprime_resonance,
                         first_resonance, normal_form_field,
                         orbital_normal_form, planar_reduction, principal_part)
from .parsing import SystemSource, parse_polynomial, parse_system
from .vectorfield import (ConDisSplit, PlanarVectorField, Poly2, VectorField3,
                          condis_split, directional_derivative, divergence,
                          hamiltonian_field, lie_bracket, planar_divergence,
                          radial_field, wedge2)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "1.0.0"
