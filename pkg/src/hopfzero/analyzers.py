"""Obstruction sequences and the integrability classification driver.

Three candidate functions are continued degree by degree against a field with
principal part (-2y, 2x, x^2+y^2):

  * FIRST_INTEGRAL: W = (x^2+y^2) + ..., residuals of grad(W) . F
  * JACOBI_H:       W = (x^2+y^2) + ..., residuals of grad(W) . F - W div F
  * JACOBI_H2:      W = (x^2+y^2)^2 + ..., same defining expression

At each even quasi-homogeneous degree 2k the unsolvable part of the defining
expression is a multiple of z^k; that coefficient is the entry of index k.
Entries are indexed by the z power k; the quasi-homogeneous degree they live
at is 2k, and reports carry both numbers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from .coeffring import ParamPolynomial, Rational, rat
from .errors import DegreeError, ParameterError, StructureError
from .gradedpoly import Monomial3, QHPolynomial
from .homological import solve_homological
from .normalform import (NormalFormResult, ResonanceData, coprime_resonance,
                         first_resonance, orbital_normal_form, principal_part,
                         require_principal_part)
from .vectorfield import VectorField3, directional_derivative, divergence


class Method(enum.Enum):
    FIRST_INTEGRAL = "FIRST_INTEGRAL"
    JACOBI_H = "JACOBI_H"
    JACOBI_H2 = "JACOBI_H2"


_SEED_POWER = {Method.FIRST_INTEGRAL: 1, Method.JACOBI_H: 1, Method.JACOBI_H2: 2}
_USES_DIV = {Method.FIRST_INTEGRAL: False, Method.JACOBI_H: True, Method.JACOBI_H2: True}
_START_INDEX = {Method.FIRST_INTEGRAL: 2, Method.JACOBI_H: 2, Method.JACOBI_H2: 3}


@dataclass(frozen=True)
class ObstructionSequence:
    """Ordered residual entries of one candidate continuation.

    entries[k] multiplies z^k (quasi-homogeneous degree 2k) in the defining
    expression of the witness; all indices from start_index through max_index
    are present, including exact zeros.  The witness is the accumulated
    candidate through quasi-homogeneous degree 2*max_index.
    """

    method: Method
    entries: Dict[int, ParamPolynomial]
    witness: QHPolynomial
    max_index: int
    params: Tuple[str, ...]

    @property
    def start_index(self) -> int:
        return _START_INDEX[self.method]

    def nonzero_entries(self) -> Dict[int, ParamPolynomial]:
        return {k: v for k, v in self.entries.items() if v}

    def all_zero(self) -> bool:
        return not self.nonzero_entries()

    def first_nonzero(self) -> Optional[int]:
        return next((k for k in sorted(self.entries) if self.entries[k]), None)


def _obstruction_driver(field: VectorField3, max_index: int, method: Method) -> ObstructionSequence:
    if max_index < 1:
        raise DegreeError("max_index must be at least 1")
    require_principal_part(field)
    params = field.params
    seed_degree = 2 * _SEED_POWER[method]
    seed = QHPolynomial.h_power(_SEED_POWER[method], params)
    use_div = _USES_DIV[method]

    components = {k: f for k, f in field.decompose().items() if k >= 1}
    divergences = {k: divergence(f) for k, f in components.items()} if use_div else {}

    # the defining expression must vanish identically at the seed degree
    f0 = principal_part(params)
    base = directional_derivative(seed, f0)
    if use_div:
        base = base - seed * divergence(f0)
    if not base.is_zero():
        raise StructureError("seed term fails the defining identity at its own degree")

    pieces: Dict[int, QHPolynomial] = {seed_degree: seed}
    gradients: Dict[int, Tuple[QHPolynomial, QHPolynomial, QHPolynomial]] = {
        seed_degree: (seed.partial("x"), seed.partial("y"), seed.partial("z"))}
    entries: Dict[int, ParamPolynomial] = {}
    zero_p = ParamPolynomial.zero(params)
    for degree in range(seed_degree + 1, 2 * max_index + 1):
        known = QHPolynomial.zero(params)
        for fdeg in sorted(components):
            j = degree - fdeg
            piece = pieces.get(j)
            if piece is None:
                continue
            gx, gy, gz = gradients[j]
            fk = components[fdeg]
            term = gx * fk.fx + gy * fk.fy + gz * fk.fz
            if use_div:
                term = term - piece * divergences[fdeg]
            known = known + term
        if known.is_zero():
            if degree % 2 == 0:
                entries[degree // 2] = zero_p
            continue
        solved = solve_homological(degree, -known)
        if degree % 2 == 1:
            if solved.residual:
                raise StructureError(
                    f"odd degree {degree} produced a nonzero obstruction residual")
        else:
            entries[degree // 2] = -solved.residual
        if solved.solution:
            pieces[degree] = solved.solution
            gradients[degree] = (solved.solution.partial("x"),
                                 solved.solution.partial("y"),
                                 solved.solution.partial("z"))

    witness = QHPolynomial.zero(params)
    for piece in pieces.values():
        witness = witness + piece
    full_entries = {k: entries.get(k, zero_p)
                    for k in range(_START_INDEX[method], max_index + 1)}
    return ObstructionSequence(method=method, entries=full_entries, witness=witness,
                               max_index=max_index, params=params)


def first_integral_obstructions(field: VectorField3, max_index: int) -> ObstructionSequence:
    """Residuals of grad(W) . F for the candidate W = x^2 + y^2 + ..."""
    return _obstruction_driver(field, max_index, Method.FIRST_INTEGRAL)


def jacobi_obstructions(field: VectorField3, max_index: int,
                        mode: Method) -> ObstructionSequence:
    """Residuals of grad(W) . F - W div(F) for W seeded by h or h^2."""
    if mode not in (Method.JACOBI_H, Method.JACOBI_H2):
        raise ValueError(f"mode must be JACOBI_H or JACOBI_H2, got {mode}")
    return _obstruction_driver(field, max_index, mode)


def obstruction_sequence(field: VectorField3, max_index: int,
                         method: Method) -> ObstructionSequence:
    return _obstruction_driver(field, max_index, method)


def recombination_defect(field: VectorField3, seq: ObstructionSequence) -> QHPolynomial:
    """Exact check of the defining identity.

    Returns the part of grad(W).F - c W div(F) - sum entries[k] z^k of
    quasi-homogeneous degree at most 2*max_index; an empty polynomial means
    the sequence satisfies its contract exactly.
    """
    w = seq.witness
    expr = directional_derivative(w, field)
    if _USES_DIV[seq.method]:
        expr = expr - w * divergence(field)
    for k, value in seq.entries.items():
        if value:
            expr = expr - QHPolynomial({Monomial3(0, 0, k): value}, seq.params)
    return expr.truncate(2 * seq.max_index)


# --------------------------------------------------------------------------
# classification


class CaseTag(enum.Enum):
    NF_LINEARIZABLE = "NF_LINEARIZABLE"
    B1 = "B1"
    B2 = "B2"
    B3 = "B3"
    NOT_INTEGRABLE = "NOT_INTEGRABLE"
    NO_OBSTRUCTION_UP_TO = "NO_OBSTRUCTION_UP_TO"
    SYMBOLIC = "SYMBOLIC"


@dataclass(frozen=True)
class Classification:
    """Verdict of the integrability analysis.

    NOT_INTEGRABLE carries the witness: either an obstruction entry
    (witness_method, witness_index with value witness_value) or, when the
    resonance admits no coprime pair, witness_method None and the resonance
    data as evidence.  B3 carries the coprime pair.  NO_OBSTRUCTION_UP_TO is a
    truncated statement, never a claim of integrability.
    """

    case_tag: CaseTag
    max_index: int
    resonance: Optional[ResonanceData] = None
    normal_form: Optional[NormalFormResult] = None
    obstructions: Tuple[ObstructionSequence, ...] = ()
    coprime_pair: Optional[Tuple[int, int]] = None
    witness_method: Optional[Method] = None
    witness_index: Optional[int] = None
    witness_value: Optional[ParamPolynomial] = None

    @property
    def witness_degree(self) -> Optional[int]:
        return None if self.witness_index is None else 2 * self.witness_index


def _pure_z_series(poly: QHPolynomial) -> Optional[Dict[int, ParamPolynomial]]:
    out = {}
    for m, c in poly.terms.items():
        if m.ex or m.ey:
            return None
        out[m.ez] = c
    return out


def _resonant_shape(field: VectorField3):
    """Detect fields that are exactly F0 + (p(z) x, p(z) y, q(z)).

    Returns (p, q) as maps z-power -> coefficient, or None when the field is
    not of that shape.
    """
    rest = field - principal_part(field.params)
    px = {}
    for m, c in rest.fx.terms.items():
        if m.ex != 1 or m.ey != 0:
            return None
        px[m.ez] = c
    py = {}
    for m, c in rest.fy.terms.items():
        if m.ex != 0 or m.ey != 1:
            return None
        py[m.ez] = c
    if px != py:
        return None
    q = _pure_z_series(rest.fz)
    if q is None:
        return None
    return px, q


def classify(field: VectorField3, max_index: int,
             parameter_values: Optional[Mapping[str, Rational]] = None,
             require_definitive: bool = False) -> Classification:
    """Dispatch per the resonance structure and run the matching obstruction test.

    The numeric path requires every coefficient that drives a branch decision
    to be an explicit rational.  With free parameters left in branch-deciding
    positions the verdict is SYMBOLIC and the relevant obstruction polynomials
    are returned for the caller to analyze; no branching on symbolic
    (in)equalities ever happens.
    """
    require_principal_part(field)
    if parameter_values:
        field = field.substitute_params(
            {name: rat(v) for name, v in parameter_values.items()})

    shape = _resonant_shape(field)
    if shape is not None:
        verdict = _classify_resonant_shape(field, shape, max_index, require_definitive)
        if verdict is not None:
            return verdict

    nf = orbital_normal_form(field, max_index, stop_at_first_resonance=True)
    res = first_resonance(nf)
    s = None
    for k in sorted(nf.a_coeffs):
        if nf.a_coeffs[k] or nf.b_coeffs[k]:
            s = k
            break

    if s is None:
        # no resonant term through max_index: test the first-integral candidate
        seq = first_integral_obstructions(field, max_index)
        return _verdict_from_sequences(field, (seq,), max_index, res, nf, None)

    a_s, b_s = nf.a_coeffs[s], nf.b_coeffs[s]
    if not (a_s.is_constant() and b_s.is_constant()):
        if require_definitive:
            raise ParameterError(
                "leading normal-form coefficients involve free parameters; "
                "bind them for a definitive verdict")
        sequences = (jacobi_obstructions(field, max_index, Method.JACOBI_H),
                     jacobi_obstructions(field, max_index, Method.JACOBI_H2))
        return Classification(case_tag=CaseTag.SYMBOLIC, max_index=max_index,
                              resonance=res, normal_form=nf, obstructions=sequences)

    av, bv = a_s.constant_value(), b_s.constant_value()
    if av and bv:
        pair = coprime_resonance(av, bv, s)
        if pair is None:
            return Classification(case_tag=CaseTag.NOT_INTEGRABLE, max_index=max_index,
                                  resonance=res, normal_form=nf)
        seq = jacobi_obstructions(field, max_index, Method.JACOBI_H2)
        return _verdict_from_sequences(field, (seq,), max_index, res, nf, pair)
    seq = jacobi_obstructions(field, max_index, Method.JACOBI_H)
    return _verdict_from_sequences(field, (seq,), max_index, res, nf, None)


def _classify_resonant_shape(field, shape, max_index, require_definitive):
    """Verdicts available when the field is syntactically its own normal form."""
    p, q = shape
    params = field.params
    constant = all(c.is_constant() for c in p.values()) and \
        all(c.is_constant() for c in q.values())
    if not p and not q:
        return Classification(case_tag=CaseTag.NF_LINEARIZABLE, max_index=max_index)
    if not constant:
        return None  # symbolic coefficients: fall through to the general path
    if p and not q:
        return Classification(case_tag=CaseTag.B1, max_index=max_index)
    if q and not p:
        return Classification(case_tag=CaseTag.B2, max_index=max_index)
    if len(p) == 1 and len(q) == 1:
        (mp, ap), (mq, bq) = next(iter(p.items())), next(iter(q.items()))
        if mq == mp + 1:
            pair = coprime_resonance(ap.constant_value(), bq.constant_value(), mp)
            if pair is None:
                return Classification(case_tag=CaseTag.NOT_INTEGRABLE,
                                      max_index=max_index)
            return Classification(case_tag=CaseTag.B3, max_index=max_index,
                                  coprime_pair=pair)
    return None  # mixed tail: needs the general truncated pipeline


def _verdict_from_sequences(field, sequences, max_index, res, nf, pair):
    for seq in sequences:
        first = seq.first_nonzero()
        if first is None:
            continue
        value = seq.entries[first]
        if value.is_constant():
            return Classification(case_tag=CaseTag.NOT_INTEGRABLE, max_index=max_index,
                                  resonance=res, normal_form=nf, obstructions=sequences,
                                  coprime_pair=pair, witness_method=seq.method,
                                  witness_index=first, witness_value=value)
        # symbolic nonzero entry: vanishing depends on the parameters
        return Classification(case_tag=CaseTag.SYMBOLIC, max_index=max_index,
                              resonance=res, normal_form=nf, obstructions=sequences,
                              coprime_pair=pair)
    return Classification(case_tag=CaseTag.NO_OBSTRUCTION_UP_TO, max_index=max_index,
                          resonance=res, normal_form=nf, obstructions=sequences,
                          coprime_pair=pair)
