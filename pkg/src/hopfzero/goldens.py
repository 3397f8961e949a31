"""Curated regression corpus: input systems with exact expected outputs.

Fixture files use the frontend input grammar followed by an `expect` block:

    expect {
      origin = literature            # literature | derived | trivial
      mode = JACOBI_H2               # AUTO | NORMAL_FORM | REDUCE | <method>
      max_index = 7
      param a001 = 1                 # optional bindings
      zero entries = 3 4 5 6
      entry 7 = 15/2048*a001^10 - ...
      a 1 = -1/4*a001^2              # normal-form coefficients
      constraint = 18*a001^2 - ...   # with `eliminate`, enables reduced checks
      eliminate = a001
      zero reduced = 8 9 10
      reduced 11 = ...               # congruence modulo the constraint ideal
      case = NOT_INTEGRABLE
      witness_method = JACOBI_H2
      witness_index = 7
      coprime_pair = 1 1
      du = v + 1/4*u^2               # planar reduction components
      dv = -1/2*u*v
    }

Every comparison is exact; there are no tolerances anywhere in the corpus.
"""

from __future__ import annotations

import pathlib
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .analyzers import CaseTag, Method, classify, obstruction_sequence
from .coeffring import ParamPolynomial, congruent_mod, ppoly_reduce, rat
from .errors import ParseError
from .frontend import normalize_principal_part
from .normalform import first_resonance, orbital_normal_form, planar_reduction
from .parsing import parse_polynomial, parse_system

DATA_DIR = pathlib.Path(__file__).parent / "goldens_data"


@dataclass(frozen=True)
class GoldenCase:
    name: str
    origin: str
    mode: str
    max_index: int
    system_text: str
    bindings: Dict[str, object]
    expectations: Tuple[tuple, ...]
    constraint: Optional[str] = None
    eliminate: Optional[str] = None


@dataclass
class GoldenResult:
    name: str
    origin: str
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def parse_fixture(text: str, name: str) -> GoldenCase:
    if "expect {" not in text:
        raise ParseError(f"fixture {name}: missing expect block")
    system_text, _, rest = text.partition("expect {")
    body, closed, _ = rest.partition("}")
    if not closed:
        raise ParseError(f"fixture {name}: unterminated expect block")
    origin = "derived"
    mode = "AUTO"
    max_index = 8
    bindings: Dict[str, object] = {}
    expectations: List[tuple] = []
    constraint = None
    eliminate = None
    for lineno, raw in enumerate(body.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"fixture {name}: malformed expect line {line!r}", lineno)
        key, _, value = line.partition("=")
        key_parts = key.split()
        value = value.strip()
        head = key_parts[0]
        if head == "origin":
            origin = value
        elif head == "mode":
            mode = value
        elif head == "max_index":
            max_index = int(value)
        elif head == "param":
            bindings[key_parts[1]] = rat(value)
        elif head == "constraint":
            constraint = value
        elif head == "eliminate":
            eliminate = value
        elif head == "zero" and key_parts[1] == "entries":
            expectations.append(("zero_entries", tuple(int(v) for v in value.split())))
        elif head == "zero" and key_parts[1] == "reduced":
            expectations.append(("zero_reduced", tuple(int(v) for v in value.split())))
        elif head == "entry":
            expectations.append(("entry", int(key_parts[1]), value))
        elif head == "reduced":
            expectations.append(("reduced", int(key_parts[1]), value))
        elif head in ("a", "b"):
            expectations.append(("coeff", head, int(key_parts[1]), value))
        elif head in ("l0", "m0", "n0"):
            expectations.append(("resonance", head, value))
        elif head == "case":
            expectations.append(("case", value))
        elif head == "witness_method":
            expectations.append(("witness_method", value))
        elif head == "witness_index":
            expectations.append(("witness_index", int(value)))
        elif head == "coprime_pair":
            expectations.append(("coprime_pair", tuple(int(v) for v in value.split())))
        elif head in ("du", "dv"):
            expectations.append(("planar", head, value))
        else:
            raise ParseError(f"fixture {name}: unknown expect key {head!r}", lineno)
    return GoldenCase(name=name, origin=origin, mode=mode, max_index=max_index,
                      system_text=system_text, bindings=bindings,
                      expectations=tuple(expectations),
                      constraint=constraint, eliminate=eliminate)


def run_golden(case: GoldenCase) -> GoldenResult:
    result = GoldenResult(name=case.name, origin=case.origin)
    source = parse_system(case.system_text)
    params = source.parameter_names
    field3, _ = normalize_principal_part(source.to_field())
    if case.bindings:
        field3 = field3.substitute_params(case.bindings)

    def expect_poly(text: str) -> ParamPolynomial:
        return parse_polynomial(text, params)

    sequence = None
    verdict = None
    nf = None
    planar = None
    if case.mode in ("FIRST_INTEGRAL", "JACOBI_H", "JACOBI_H2"):
        sequence = obstruction_sequence(field3, case.max_index, Method(case.mode))
    elif case.mode == "NORMAL_FORM":
        nf = orbital_normal_form(field3, case.max_index)
    elif case.mode == "REDUCE":
        nf = orbital_normal_form(field3, case.max_index)
        planar = planar_reduction(nf)
    elif case.mode == "AUTO":
        verdict = classify(field3, case.max_index)
    else:
        result.failures.append(f"unknown mode {case.mode!r}")
        return result

    constraint_poly = expect_poly(case.constraint) if case.constraint else None

    for expectation in case.expectations:
        kind = expectation[0]
        if kind == "zero_entries":
            for k in expectation[1]:
                got = sequence.entries[k]
                if got:
                    result.failures.append(f"entry {k}: expected 0, got {got}")
        elif kind == "entry":
            _, k, text = expectation
            want = expect_poly(text)
            got = sequence.entries[k]
            if got != want:
                result.failures.append(f"entry {k}: expected {want}, got {got}")
        elif kind == "zero_reduced":
            for k in expectation[1]:
                got = ppoly_reduce(sequence.entries[k], constraint_poly, case.eliminate)
                if got:
                    result.failures.append(
                        f"entry {k} mod constraint: expected 0, got {got}")
        elif kind == "reduced":
            _, k, text = expectation
            want = expect_poly(text)
            if not congruent_mod(sequence.entries[k], want, constraint_poly,
                                 case.eliminate):
                got = ppoly_reduce(sequence.entries[k], constraint_poly, case.eliminate)
                result.failures.append(
                    f"entry {k} mod constraint: expected {want}, reduced form {got}")
        elif kind == "coeff":
            _, which, k, text = expectation
            want = expect_poly(text)
            coeffs = nf.a_coeffs if which == "a" else nf.b_coeffs
            got = coeffs.get(k)
            if got != want:
                result.failures.append(f"{which}_{k}: expected {want}, got {got}")
        elif kind == "resonance":
            _, which, text = expectation
            res = first_resonance(nf) if nf is not None else verdict.resonance
            got = getattr(res, which)
            shown = str(got) if got is not None else f">={res.max_index + 1}"
            if shown != text:
                result.failures.append(f"{which}: expected {text}, got {shown}")
        elif kind == "case":
            if verdict.case_tag != CaseTag(expectation[1]):
                result.failures.append(
                    f"case: expected {expectation[1]}, got {verdict.case_tag.value}")
        elif kind == "witness_method":
            got = verdict.witness_method.value if verdict.witness_method else None
            if got != expectation[1]:
                result.failures.append(
                    f"witness method: expected {expectation[1]}, got {got}")
        elif kind == "witness_index":
            if verdict.witness_index != expectation[1]:
                result.failures.append(
                    f"witness index: expected {expectation[1]}, got {verdict.witness_index}")
        elif kind == "coprime_pair":
            if verdict.coprime_pair != expectation[1]:
                result.failures.append(
                    f"coprime pair: expected {expectation[1]}, got {verdict.coprime_pair}")
        elif kind == "planar":
            _, which, text = expectation
            got = str(planar.pu if which == "du" else planar.pv)
            if got != text:
                result.failures.append(f"{which}: expected {text!r}, got {got!r}")
    return result


def load_cases(directory: Optional[pathlib.Path] = None) -> List[GoldenCase]:
    directory = directory or DATA_DIR
    cases = []
    for path in sorted(directory.glob("*.hz")):
        cases.append(parse_fixture(path.read_text(encoding="utf-8"), path.stem))
    return cases


def run_goldens(filter_origin: Optional[str] = None,
                directory: Optional[pathlib.Path] = None) -> List[GoldenResult]:
    """Execute every fixture (optionally only one origin tag) and report."""
    results = []
    for case in load_cases(directory):
        if filter_origin and case.origin != filter_origin:
            continue
        results.append(run_golden(case))
    return results
