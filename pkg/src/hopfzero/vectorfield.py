"""Vector-field calculus for the graded setting.

A `VectorField3` of quasi-homogeneous degree k has x- and y-components in the
degree-(k+1) slice and z-component in the degree-(k+2) slice.  The planar
types live in two variables (u, v) and carry the wedge product and the
conservative-dissipative splitting.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

from .coeffring import ParamPolynomial, RationalLike, rat
from .errors import DegreeError
from .gradedpoly import Monomial3, QHPolynomial


class VectorField3:
    """Triple of QHPolynomials (dx/dt, dy/dt, dz/dt)."""

    __slots__ = ("fx", "fy", "fz", "params")

    def __init__(self, fx: QHPolynomial, fy: QHPolynomial, fz: QHPolynomial):
        if fx.params != fy.params or fx.params != fz.params:
            raise ValueError("component parameter tables differ")
        object.__setattr__(self, "fx", fx)
        object.__setattr__(self, "fy", fy)
        object.__setattr__(self, "fz", fz)
        object.__setattr__(self, "params", fx.params)

    def __setattr__(self, name, value):
        raise AttributeError("VectorField3 is immutable")

    @classmethod
    def zero(cls, params: Iterable[str]) -> "VectorField3":
        z = QHPolynomial.zero(params)
        return cls(z, z, z)

    @property
    def components(self) -> Tuple[QHPolynomial, QHPolynomial, QHPolynomial]:
        return (self.fx, self.fy, self.fz)

    def __add__(self, other: "VectorField3") -> "VectorField3":
        return VectorField3(self.fx + other.fx, self.fy + other.fy, self.fz + other.fz)

    def __sub__(self, other: "VectorField3") -> "VectorField3":
        return VectorField3(self.fx - other.fx, self.fy - other.fy, self.fz - other.fz)

    def __neg__(self) -> "VectorField3":
        return VectorField3(-self.fx, -self.fy, -self.fz)

    def scale(self, factor: RationalLike) -> "VectorField3":
        return VectorField3(self.fx.scale(factor), self.fy.scale(factor),
                            self.fz.scale(factor))

    def scale_poly(self, g: QHPolynomial, max_degree: int | None = None) -> "VectorField3":
        """Multiply the whole field by a scalar polynomial (time rescaling)."""
        cap1 = None if max_degree is None else max_degree + 1
        cap2 = None if max_degree is None else max_degree + 2
        return VectorField3(g.mul(self.fx, cap1), g.mul(self.fy, cap1),
                            g.mul(self.fz, cap2))

    def component(self, k: int) -> "VectorField3":
        """Quasi-homogeneous component of field degree k."""
        return VectorField3(self.fx.slice(k + 1), self.fy.slice(k + 1),
                            self.fz.slice(k + 2))

    def decompose(self) -> Dict[int, "VectorField3"]:
        degrees = sorted({m.degree - 1 for m in self.fx.terms}
                         | {m.degree - 1 for m in self.fy.terms}
                         | {m.degree - 2 for m in self.fz.terms})
        return {k: self.component(k) for k in degrees}

    def truncate(self, max_field_degree: int) -> "VectorField3":
        return VectorField3(self.fx.truncate(max_field_degree + 1),
                            self.fy.truncate(max_field_degree + 1),
                            self.fz.truncate(max_field_degree + 2))

    def is_zero(self) -> bool:
        return self.fx.is_zero() and self.fy.is_zero() and self.fz.is_zero()

    def substitute_params(self, values: Mapping[str, RationalLike]) -> "VectorField3":
        return VectorField3(self.fx.substitute_params(values),
                            self.fy.substitute_params(values),
                            self.fz.substitute_params(values))

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorField3):
            return NotImplemented
        return self.components == other.components

    def __str__(self) -> str:
        return f"(dx = {self.fx}, dy = {self.fy}, dz = {self.fz})"

    def __repr__(self) -> str:
        return f"VectorField3{self}"


def divergence(field: VectorField3) -> QHPolynomial:
    """Sum of the three partial derivatives, exactly."""
    return (field.fx.partial("x") + field.fy.partial("y") + field.fz.partial("z"))


def directional_derivative(f: QHPolynomial, field: VectorField3,
                           max_degree: int | None = None) -> QHPolynomial:
    """grad(f) . field, optionally truncated above a quasi-homogeneous cap."""
    return (f.partial("x").mul(field.fx, max_degree)
            + f.partial("y").mul(field.fy, max_degree)
            + f.partial("z").mul(field.fz, max_degree))


def lie_bracket(f: VectorField3, g: VectorField3,
                max_field_degree: int | None = None) -> VectorField3:
    """[f, g] = Dg.f - Df.g; maps degrees (j, k) into degree j + k."""
    cap1 = None if max_field_degree is None else max_field_degree + 1
    cap2 = None if max_field_degree is None else max_field_degree + 2
    rx = directional_derivative(g.fx, f, cap1) - directional_derivative(f.fx, g, cap1)
    ry = directional_derivative(g.fy, f, cap1) - directional_derivative(f.fy, g, cap1)
    rz = directional_derivative(g.fz, f, cap2) - directional_derivative(f.fz, g, cap2)
    return VectorField3(rx, ry, rz)


# --------------------------------------------------------------------------
# planar objects (two variables u, v; planar type (1, 1))

PLANAR_VARS = ("u", "v")


class Poly2:
    """Sparse polynomial in u, v with ParamPolynomial coefficients."""

    __slots__ = ("terms", "params")

    def __init__(self, terms: Mapping[tuple, ParamPolynomial], params: Iterable[str]):
        params = tuple(params)
        clean = {}
        for m, c in terms.items():
            m = (int(m[0]), int(m[1]))
            if not isinstance(c, ParamPolynomial):
                c = ParamPolynomial.constant(c, params)
            if c:
                prev = clean.get(m)
                c = prev + c if prev is not None else c
                if c:
                    clean[m] = c
                elif m in clean:
                    del clean[m]
        object.__setattr__(self, "terms",
                           dict(sorted(clean.items(),
                                       key=lambda kv: (sum(kv[0]), kv[0][1]))))
        object.__setattr__(self, "params", params)

    def __setattr__(self, name, value):
        raise AttributeError("Poly2 is immutable")

    @classmethod
    def zero(cls, params: Iterable[str]) -> "Poly2":
        return cls({}, params)

    @classmethod
    def monomial(cls, m, coeff, params: Iterable[str]) -> "Poly2":
        return cls({tuple(m): coeff}, params)

    def __add__(self, other: "Poly2") -> "Poly2":
        out = dict(self.terms)
        for m, c in other.terms.items():
            prev = out.get(m)
            out[m] = prev + c if prev is not None else c
        return Poly2(out, self.params)

    def __sub__(self, other: "Poly2") -> "Poly2":
        return self + (-other)

    def __neg__(self) -> "Poly2":
        return Poly2({m: -c for m, c in self.terms.items()}, self.params)

    def __mul__(self, other: "Poly2") -> "Poly2":
        out = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = (ma[0] + mb[0], ma[1] + mb[1])
                prod = ca * cb
                prev = out.get(m)
                out[m] = prev + prod if prev is not None else prod
        return Poly2(out, self.params)

    def scale(self, factor: RationalLike) -> "Poly2":
        factor = rat(factor)
        return Poly2({m: c.scale(factor) for m, c in self.terms.items()}, self.params)

    def partial(self, var: str) -> "Poly2":
        idx = PLANAR_VARS.index(var)
        out = {}
        for m, c in self.terms.items():
            e = m[idx]
            if not e:
                continue
            lowered = list(m)
            lowered[idx] = e - 1
            key = tuple(lowered)
            contrib = c.scale(e)
            prev = out.get(key)
            out[key] = prev + contrib if prev is not None else contrib
        return Poly2(out, self.params)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly2):
            return NotImplemented
        return self.params == other.params and self.terms == other.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, coeff in self.terms.items():
            factors = []
            for name, e in zip(PLANAR_VARS, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            ct = str(coeff)
            if not mono:
                body = ct
            elif ct == "1":
                body = mono
            elif ct == "-1":
                body = "-" + mono
            elif " " in ct:
                body = f"({ct})*{mono}"
            else:
                body = f"{ct}*{mono}"
            parts.append(body)
        text = parts[0]
        for body in parts[1:]:
            if body.startswith("-"):
                text += " - " + body[1:]
            else:
                text += " + " + body
        return text

    def __repr__(self) -> str:
        return f"Poly2({self})"


class PlanarVectorField:
    """Pair (du/dt, dv/dt) of planar polynomials."""

    __slots__ = ("pu", "pv", "params")

    def __init__(self, pu: Poly2, pv: Poly2):
        if pu.params != pv.params:
            raise ValueError("component parameter tables differ")
        object.__setattr__(self, "pu", pu)
        object.__setattr__(self, "pv", pv)
        object.__setattr__(self, "params", pu.params)

    def __setattr__(self, name, value):
        raise AttributeError("PlanarVectorField is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, PlanarVectorField):
            return NotImplemented
        return self.pu == other.pu and self.pv == other.pv

    def __str__(self) -> str:
        return f"(du = {self.pu}, dv = {self.pv})"

    def __repr__(self) -> str:
        return f"PlanarVectorField{self}"


@dataclass(frozen=True)
class ConDisSplit:
    """Hamiltonian-plus-radial decomposition of a planar graded field."""

    hamiltonian: Poly2
    radial_factor: Poly2


def wedge2(f: PlanarVectorField, g: PlanarVectorField) -> Poly2:
    """Planar wedge product: f /\\ g = f_u g_v - f_v g_u."""
    return f.pu * g.pv - f.pv * g.pu


def planar_divergence(f: PlanarVectorField) -> Poly2:
    return f.pu.partial("u") + f.pv.partial("v")


def hamiltonian_field(h: Poly2) -> PlanarVectorField:
    """The planar Hamiltonian field (-dh/dv, dh/du)."""
    return PlanarVectorField(-h.partial("v"), h.partial("u"))


def radial_field(params: Iterable[str]) -> PlanarVectorField:
    """The planar radial field (u, v)."""
    return PlanarVectorField(Poly2.monomial((1, 0), 1, params),
                             Poly2.monomial((0, 1), 1, params))


def condis_split(pk: PlanarVectorField, k: int) -> ConDisSplit:
    """Unique splitting of a degree-k planar field into X_h + mu * (u, v).

    h has degree k+2 and mu degree k; h = (u,v) /\\ pk / (k+2) and
    mu = div(pk) / (k+2).  Raises DegreeError naming an offending monomial
    when the input is not quasi-homogeneous of degree k under type (1, 1).
    """
    for comp, name in ((pk.pu, "u"), (pk.pv, "v")):
        for m in comp.terms:
            if m[0] + m[1] != k + 1:
                raise DegreeError(
                    f"component d{name} contains u^{m[0]}*v^{m[1]}, which has "
                    f"degree {m[0] + m[1]} instead of {k + 1}")
    d0 = radial_field(pk.params)
    h = wedge2(d0, pk).scale(Fraction(1, k + 2))
    mu = planar_divergence(pk).scale(Fraction(1, k + 2))
    reconstructed = hamiltonian_field(h)
    rebuilt = PlanarVectorField(reconstructed.pu + mu * d0.pu,
                                reconstructed.pv + mu * d0.pv)
    if rebuilt != pk:
        raise DegreeError("conservative-dissipative reconstruction failed")
    return ConDisSplit(hamiltonian=h, radial_factor=mu)
