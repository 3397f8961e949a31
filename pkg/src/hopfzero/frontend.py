"""Principal-part normalization, analysis configuration, reports, and the CLI."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from .analyzers import (CaseTag, Classification, Method, classify,
                        first_integral_obstructions, jacobi_obstructions,
                        obstruction_sequence)
from .coeffring import ParamPolynomial, ppoly_reduce, rat
from .errors import HopfZeroError, ParseError, PrincipalPartError
from .gradedpoly import Monomial3, QHPolynomial
from .normalform import (NormalFormResult, first_resonance, orbital_normal_form,
                         planar_reduction, principal_part)
from .parsing import SystemSource, parse_polynomial, parse_system
from .vectorfield import VectorField3


@dataclass(frozen=True)
class Scalings:
    """Exact rescalings applied to bring the principal part to standard form."""

    time_factor: Fraction
    z_factor: Fraction

    def as_dict(self) -> Dict[str, str]:
        return {"time_factor": str(self.time_factor), "z_factor": str(self.z_factor)}


def normalize_principal_part(field: VectorField3) -> Tuple[VectorField3, Scalings]:
    """Rescale time and z so the degree-0 part becomes exactly (-2y, 2x, x^2+y^2).

    The degree-0 part must be (-w*y, w*x, d*(x^2+y^2)) for nonzero rationals
    w, d; anything else (cross terms, linear z feeds, parameters in the
    principal slice) is rejected with the offending monomials named, since a
    genuine linear preparation is out of scope.
    """
    params = field.params
    low = field.component(0)
    offending = []

    def scan(comp: QHPolynomial, allowed: Dict[Monomial3, str], label: str):
        found: Dict[str, ParamPolynomial] = {}
        for m, c in comp.terms.items():
            slot = allowed.get(m)
            if slot is None:
                offending.append(f"{label}: {QHPolynomial({m: c}, params)}")
            elif not c.is_constant():
                offending.append(f"{label}: parameter-dependent {QHPolynomial({m: c}, params)}")
            else:
                found[slot] = c
        return found

    fx = scan(low.fx, {Monomial3(0, 1, 0): "y"}, "dx")
    fy = scan(low.fy, {Monomial3(1, 0, 0): "x"}, "dy")
    fz = scan(low.fz, {Monomial3(2, 0, 0): "xx", Monomial3(0, 2, 0): "yy"}, "dz")
    if offending:
        raise PrincipalPartError(
            "inadmissible degree-0 terms: " + "; ".join(offending))
    minus_omega = fx.get("y", ParamPolynomial.zero(params)).constant_value()
    omega_check = fy.get("x", ParamPolynomial.zero(params)).constant_value()
    dxx = fz.get("xx", ParamPolynomial.zero(params)).constant_value()
    dyy = fz.get("yy", ParamPolynomial.zero(params)).constant_value()
    omega = -minus_omega
    if omega == 0 or omega_check != omega:
        raise PrincipalPartError(
            f"rotational part must be (-w*y, w*x) for one nonzero w; "
            f"found dx: {low.fx}, dy: {low.fy}")
    if dxx == 0 or dxx != dyy:
        raise PrincipalPartError(
            f"dz degree-0 part must be d*(x^2+y^2) with d nonzero; found {low.fz}")
    delta = dxx

    time_factor = Fraction(2) / omega
    z_factor = Fraction(2) * delta / omega
    rescaled = _substitute_z(field, z_factor)
    rescaled = VectorField3(rescaled.fx.scale(time_factor),
                            rescaled.fy.scale(time_factor),
                            rescaled.fz.scale(time_factor / z_factor))
    if rescaled.component(0) != principal_part(params):
        raise PrincipalPartError("principal-part normalization failed to converge")
    return rescaled, Scalings(time_factor=time_factor, z_factor=z_factor)


def _substitute_z(field: VectorField3, gamma: Fraction) -> VectorField3:
    def sub(comp: QHPolynomial) -> QHPolynomial:
        return QHPolynomial({m: c.scale(gamma ** m.ez) for m, c in comp.terms.items()},
                            comp.params)
    return VectorField3(sub(field.fx), sub(field.fy), sub(field.fz))


@dataclass(frozen=True)
class AnalysisConfig:
    """Settings shared by the CLI subcommands."""

    max_index: int = 30
    mode: str = "AUTO"  # AUTO | FIRST_INTEGRAL | JACOBI_H | JACOBI_H2 | NORMAL_FORM | REDUCE
    parameter_values: Optional[Dict[str, Fraction]] = None
    constraint: Optional[Tuple[ParamPolynomial, str]] = None
    json_output: bool = False


REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["schema_version"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": "1"},
        "system": {
            "type": "object",
            "properties": {
                "parameters": {"type": "array", "items": {"type": "string"}},
                "bound_values": {"type": "object",
                                 "additionalProperties": {"type": "string"}},
            },
            "additionalProperties": False,
        },
        "scalings_applied": {
            "type": "object",
            "required": ["time_factor", "z_factor"],
            "properties": {"time_factor": {"type": "string"},
                           "z_factor": {"type": "string"}},
            "additionalProperties": False,
        },
        "resonance": {
            "type": "object",
            "required": ["l0", "m0", "n0"],
            "properties": {
                "l0": {"type": ["integer", "string"]},
                "m0": {"type": ["integer", "string"]},
                "n0": {"type": ["integer", "string"]},
                "a_principal": {"type": ["string", "null"]},
                "b_principal": {"type": ["string", "null"]},
            },
            "additionalProperties": False,
        },
        "normal_form": {
            "type": "object",
            "required": ["a", "b"],
            "properties": {
                "a": {"type": "object", "additionalProperties": {"type": "string"}},
                "b": {"type": "object", "additionalProperties": {"type": "string"}},
            },
            "additionalProperties": False,
        },
        "obstructions": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["method", "entries"],
                "properties": {
                    "method": {"enum": ["FIRST_INTEGRAL", "JACOBI_H", "JACOBI_H2"]},
                    "start_index": {"type": "integer"},
                    "entries": {"type": "object",
                                "additionalProperties": {"type": "string"}},
                    "reduced_entries": {"type": "object",
                                        "additionalProperties": {"type": "string"}},
                },
                "additionalProperties": False,
            },
        },
        "planar_reduction": {
            "type": "object",
            "required": ["du", "dv"],
            "properties": {"du": {"type": "string"}, "dv": {"type": "string"}},
            "additionalProperties": False,
        },
        "classification": {
            "type": "object",
            "required": ["case"],
            "properties": {
                "case": {"enum": [tag.value for tag in CaseTag]},
                "max_index": {"type": "integer"},
                "witness_method": {"type": ["string", "null"]},
                "witness_index": {"type": ["integer", "null"]},
                "witness_degree": {"type": ["integer", "null"]},
                "witness_value": {"type": ["string", "null"]},
                "coprime_pair": {"type": ["array", "null"],
                                 "items": {"type": "integer"}},
            },
            "additionalProperties": False,
        },
    },
}


def _index_or_bound(value: Optional[int], max_index: int):
    return value if value is not None else f">={max_index + 1}"


def _resonance_dict(res) -> Dict[str, object]:
    return {
        "l0": _index_or_bound(res.l0, res.max_index),
        "m0": _index_or_bound(res.m0, res.max_index),
        "n0": _index_or_bound(res.n0, res.max_index),
        "a_principal": str(res.principal_a) if res.principal_a is not None else None,
        "b_principal": str(res.principal_b) if res.principal_b is not None else None,
    }


def _normal_form_dict(nf: NormalFormResult) -> Dict[str, object]:
    return {
        "a": {str(k): str(v) for k, v in sorted(nf.a_coeffs.items())},
        "b": {str(k): str(v) for k, v in sorted(nf.b_coeffs.items())},
    }


def _sequence_dict(seq, constraint=None) -> Dict[str, object]:
    out = {
        "method": seq.method.value,
        "start_index": seq.start_index,
        "entries": {str(k): str(v) for k, v in sorted(seq.entries.items())},
    }
    if constraint is not None:
        poly, var = constraint
        out["reduced_entries"] = {
            str(k): str(ppoly_reduce(v, poly, var)) if v else "0"
            for k, v in sorted(seq.entries.items())}
    return out


def _classification_dict(verdict: Classification) -> Dict[str, object]:
    return {
        "case": verdict.case_tag.value,
        "max_index": verdict.max_index,
        "witness_method": verdict.witness_method.value if verdict.witness_method else None,
        "witness_index": verdict.witness_index,
        "witness_degree": verdict.witness_degree,
        "witness_value": str(verdict.witness_value) if verdict.witness_value is not None else None,
        "coprime_pair": list(verdict.coprime_pair) if verdict.coprime_pair else None,
    }


def _render_text(report: Dict[str, object]) -> str:
    lines: List[str] = []
    if "scalings_applied" in report:
        sc = report["scalings_applied"]
        lines.append(f"scalings applied: time * {sc['time_factor']}, z * {sc['z_factor']}")
    if "resonance" in report:
        r = report["resonance"]
        lines.append(f"resonance: l0 = {r['l0']}, m0 = {r['m0']}, n0 = {r['n0']}")
        if r.get("a_principal"):
            lines.append(f"  leading a: {r['a_principal']}")
        if r.get("b_principal"):
            lines.append(f"  leading b: {r['b_principal']}")
    if "normal_form" in report:
        nf = report["normal_form"]
        for name in ("a", "b"):
            for k, v in nf[name].items():
                lines.append(f"{name}_{k} = {v}")
    for seq in report.get("obstructions", []):
        lines.append(f"obstruction sequence [{seq['method']}]:")
        for k, v in seq["entries"].items():
            lines.append(f"  z^{k} (quasi-homogeneous degree {2 * int(k)}): {v}")
        for k, v in seq.get("reduced_entries", {}).items():
            lines.append(f"  reduced z^{k}: {v}")
    if "planar_reduction" in report:
        pr = report["planar_reduction"]
        lines.append(f"planar reduction: du = {pr['du']}")
        lines.append(f"                  dv = {pr['dv']}")
    if "classification" in report:
        c = report["classification"]
        text = f"classification: {c['case']}"
        if c["case"] == "NO_OBSTRUCTION_UP_TO":
            text += f"({c['max_index']})"
        if c.get("coprime_pair"):
            text += f", coprime pair {tuple(c['coprime_pair'])}"
        if c.get("witness_index") is not None:
            text += (f", witness {c['witness_method']} entry z^{c['witness_index']}"
                     f" (quasi-homogeneous degree {c['witness_degree']})"
                     f" = {c['witness_value']}")
        lines.append(text)
    return "\n".join(lines) + "\n"


def _load_field(path: str) -> Tuple[SystemSource, VectorField3, Scalings]:
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    source = parse_system(text)
    field, scalings = normalize_principal_part(source.to_field())
    return source, field, scalings


def _bind(field: VectorField3, values: Optional[Mapping[str, Fraction]]) -> VectorField3:
    if values:
        return field.substitute_params(values)
    return field


def build_report(source: SystemSource, field: VectorField3, scalings: Scalings,
                 config: AnalysisConfig) -> Dict[str, object]:
    """Run the configured analysis and assemble the report dictionary."""
    report: Dict[str, object] = {
        "schema_version": "1",
        "system": {"parameters": list(source.parameter_names)},
        "scalings_applied": scalings.as_dict(),
    }
    if config.parameter_values:
        report["system"]["bound_values"] = {
            name: str(v) for name, v in sorted(config.parameter_values.items())}
    mode = config.mode
    n = config.max_index
    if mode == "NORMAL_FORM":
        nf = orbital_normal_form(_bind(field, config.parameter_values), n)
        report["normal_form"] = _normal_form_dict(nf)
        report["resonance"] = _resonance_dict(first_resonance(nf))
        return report
    if mode == "REDUCE":
        nf = orbital_normal_form(_bind(field, config.parameter_values), n)
        planar = planar_reduction(nf)
        report["planar_reduction"] = {"du": str(planar.pu), "dv": str(planar.pv)}
        report["resonance"] = _resonance_dict(first_resonance(nf))
        return report
    if mode in ("FIRST_INTEGRAL", "JACOBI_H", "JACOBI_H2"):
        bound = _bind(field, config.parameter_values)
        seq = obstruction_sequence(bound, n, Method(mode))
        report["obstructions"] = [_sequence_dict(seq, config.constraint)]
        return report
    # AUTO: full classification
    verdict = classify(field, n, parameter_values=config.parameter_values)
    if verdict.resonance is not None:
        report["resonance"] = _resonance_dict(verdict.resonance)
    if verdict.normal_form is not None:
        report["normal_form"] = _normal_form_dict(verdict.normal_form)
    if verdict.obstructions:
        report["obstructions"] = [_sequence_dict(s, config.constraint)
                                  for s in verdict.obstructions]
    report["classification"] = _classification_dict(verdict)
    return report


class _CliParser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _parse_param_bindings(pairs: Optional[List[str]]) -> Optional[Dict[str, Fraction]]:
    if not pairs:
        return None
    out = {}
    for pair in pairs:
        if "=" not in pair:
            raise _UsageError(f"--param expects name=p/q, got {pair!r}")
        name, value = pair.split("=", 1)
        try:
            out[name.strip()] = rat(value.strip())
        except (ValueError, ZeroDivisionError, TypeError):
            raise _UsageError(f"invalid rational {value!r} for parameter {name!r}")
    return out


def _build_cli() -> _CliParser:
    parser = _CliParser(prog="hopfzero",
                        description="Exact integrability analysis of polynomial "
                                    "Hopf-zero vector fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, mode_choices=None):
        p.add_argument("file", help="input system file")
        p.add_argument("--max-degree", type=int, default=30, dest="max_index",
                       metavar="N", help="largest z-power index analyzed (default 30)")
        p.add_argument("--param", action="append", default=[], metavar="NAME=P/Q",
                       help="bind a parameter to an exact rational (repeatable)")
        p.add_argument("--json", action="store_true", help="emit the JSON report")
        if mode_choices:
            p.add_argument("--mode", choices=mode_choices, default=mode_choices[0])

    analyze = sub.add_parser("analyze", help="classify the system")
    common(analyze, ["AUTO", "FIRST_INTEGRAL", "JACOBI_H", "JACOBI_H2"])

    nf = sub.add_parser("normal-form", help="orbital normal form coefficients")
    common(nf)

    obs = sub.add_parser("obstructions", help="one obstruction sequence")
    common(obs, ["FIRST_INTEGRAL", "JACOBI_H", "JACOBI_H2"])
    obs.add_argument("--constraint", metavar="EXPR",
                     help="reduce entries modulo this parameter polynomial")
    obs.add_argument("--eliminate", metavar="NAME",
                     help="parameter eliminated by the constraint reduction")

    reduce_cmd = sub.add_parser("reduce", help="print the reduced planar system")
    common(reduce_cmd)
    return parser


def run_cli(args: List[str]) -> Tuple[int, str]:
    """Run one CLI invocation; returns (exit code, report text).

    Exit codes: 0 success, 1 analysis or input error, 2 usage or syntax error.
    """
    parser = _build_cli()
    try:
        ns = parser.parse_args(args)
    except _UsageError as exc:
        return 2, f"usage error: {exc}\n"
    try:
        bindings = _parse_param_bindings(ns.param)
    except _UsageError as exc:
        return 2, f"usage error: {exc}\n"
    if ns.max_index < 1:
        return 2, "usage error: --max-degree must be at least 1\n"
    try:
        source, field, scalings = _load_field(ns.file)
    except ParseError as exc:
        return 2, f"parse error: {exc}\n"
    except OSError as exc:
        return 1, f"error: cannot read input: {exc}\n"
    except HopfZeroError as exc:
        return 1, f"error: {exc}\n"

    constraint = None
    if getattr(ns, "constraint", None):
        if not getattr(ns, "eliminate", None):
            return 2, "usage error: --constraint requires --eliminate NAME\n"
        try:
            poly = parse_polynomial(ns.constraint, source.parameter_names)
        except ParseError as exc:
            return 2, f"parse error in --constraint: {exc}\n"
        constraint = (poly, ns.eliminate)

    mode = {"analyze": getattr(ns, "mode", "AUTO"),
            "normal-form": "NORMAL_FORM",
            "obstructions": getattr(ns, "mode", "JACOBI_H"),
            "reduce": "REDUCE"}[ns.command]
    config = AnalysisConfig(max_index=ns.max_index, mode=mode,
                            parameter_values=bindings, constraint=constraint,
                            json_output=ns.json)
    try:
        report = build_report(source, field, scalings, config)
    except HopfZeroError as exc:
        return 1, f"error: {exc}\n"
    if config.json_output:
        return 0, json.dumps(report, indent=2, sort_keys=True) + "\n"
    return 0, _render_text(report)


def main() -> None:
    code, text = run_cli(sys.argv[1:])
    stream = sys.stdout if code == 0 else sys.stderr
    stream.write(text)
    sys.exit(code)
