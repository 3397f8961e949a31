"""Exact coefficient ring: arbitrary-precision rationals and Q[p1, ..., pm].

Rationals are `fractions.Fraction` (always in lowest terms, positive
denominator).  A `ParamPolynomial` is a sparse polynomial over Q in a fixed
ordered tuple of parameter names; it is the coefficient ring for every graded
object in this package.  Values are immutable by convention: no operation
mutates its arguments, so instances are safe to share between workers.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import ParameterError

Rational = Fraction

RationalLike = Union[int, str, Fraction]


def rat(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction, or `p/q` string to an exact Rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def _term_sort_key(exps):
    # graded lexicographic, printed largest-first: higher total degree first,
    # then lexicographically larger exponent vector first
    return (-sum(exps), tuple(-e for e in exps))


class ParamPolynomial:
    """Sparse polynomial in the declared parameters with Rational coefficients.

    `terms` maps exponent tuples (one entry per declared parameter) to nonzero
    Rationals.  Terms are stored in a fixed graded-lexicographic order so that
    iteration, printing, and hashing are deterministic.
    """

    __slots__ = ("terms", "params")

    def __init__(self, terms: Mapping[tuple, RationalLike], params: Iterable[str]):
        params = tuple(params)
        n = len(params)
        clean = {}
        for exps, coeff in terms.items():
            exps = tuple(exps)
            if len(exps) != n:
                raise ParameterError(
                    f"exponent vector {exps} does not match {n} declared parameters")
            coeff = rat(coeff)
            if coeff:
                clean[exps] = clean.get(exps, Fraction(0)) + coeff
        object.__setattr__(self, "terms",
                           {e: c for e, c in sorted(clean.items(), key=lambda kv: _term_sort_key(kv[0])) if c})
        object.__setattr__(self, "params", params)

    def __setattr__(self, name, value):
        raise AttributeError("ParamPolynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, params: Iterable[str]) -> "ParamPolynomial":
        return cls({}, params)

    @classmethod
    def constant(cls, value: RationalLike, params: Iterable[str]) -> "ParamPolynomial":
        params = tuple(params)
        return cls({(0,) * len(params): rat(value)}, params)

    @classmethod
    def variable(cls, name: str, params: Iterable[str]) -> "ParamPolynomial":
        params = tuple(params)
        if name not in params:
            raise ParameterError(f"parameter {name!r} is not declared (have {params})")
        exps = tuple(1 if p == name else 0 for p in params)
        return cls({exps: 1}, params)

    # -- ring operations ---------------------------------------------------

    def _check_ring(self, other: "ParamPolynomial"):
        if self.params != other.params:
            raise ParameterError(
                f"parameter tables differ: {self.params} vs {other.params}")

    def __add__(self, other: "ParamPolynomial") -> "ParamPolynomial":
        self._check_ring(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return ParamPolynomial(out, self.params)

    def __sub__(self, other: "ParamPolynomial") -> "ParamPolynomial":
        return self + (-other)

    def __neg__(self) -> "ParamPolynomial":
        return ParamPolynomial({e: -c for e, c in self.terms.items()}, self.params)

    def __mul__(self, other: "ParamPolynomial") -> "ParamPolynomial":
        self._check_ring(other)
        out = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, Fraction(0)) + ca * cb
        return ParamPolynomial(out, self.params)

    def scale(self, factor: RationalLike) -> "ParamPolynomial":
        factor = rat(factor)
        if not factor:
            return ParamPolynomial.zero(self.params)
        return ParamPolynomial({e: c * factor for e, c in self.terms.items()}, self.params)

    def __pow__(self, n: int) -> "ParamPolynomial":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = ParamPolynomial.constant(1, self.params)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParamPolynomial):
            return NotImplemented
        return self.params == other.params and self.terms == other.terms

    def __hash__(self):
        return hash((self.params, tuple(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial (zero polynomial gives 0)."""
        if not self.is_constant():
            raise ParameterError(f"{self} is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, name: str) -> int:
        """Degree in one parameter; -1 for the zero polynomial."""
        idx = self._param_index(name)
        return max((e[idx] for e in self.terms), default=-1)

    def coefficient_of_power(self, name: str, power: int) -> "ParamPolynomial":
        """Coefficient of name**power, as a polynomial in the full ring."""
        idx = self._param_index(name)
        out = {}
        for e, c in self.terms.items():
            if e[idx] == power:
                reduced = tuple(0 if i == idx else x for i, x in enumerate(e))
                out[reduced] = out.get(reduced, Fraction(0)) + c
        return ParamPolynomial(out, self.params)

    def _param_index(self, name: str) -> int:
        try:
            return self.params.index(name)
        except ValueError:
            raise ParameterError(f"parameter {name!r} is not declared (have {self.params})")

    def substitute(self, values: Mapping[str, RationalLike]) -> "ParamPolynomial":
        """Substitute rational values for some parameters (table unchanged)."""
        idx = {self._param_index(name): rat(v) for name, v in values.items()}
        out = {}
        for e, c in self.terms.items():
            factor = Fraction(1)
            new = list(e)
            for i, v in idx.items():
                factor *= v ** e[i]
                new[i] = 0
            key = tuple(new)
            out[key] = out.get(key, Fraction(0)) + c * factor
        return ParamPolynomial(out, self.params)

    # -- printing ----------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, coeff in self.terms.items():
            factors = []
            for name, e in zip(self.params, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(coeff)
            if factors and mag == 1:
                body = "*".join(factors)
            elif factors:
                body = str(mag) + "*" + "*".join(factors)
            else:
                body = str(mag)
            parts.append(("-" if coeff < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"ParamPolynomial({self})"


def ppoly_normalize(p: ParamPolynomial) -> ParamPolynomial:
    """Return the canonical form of `p` (zero terms purged, fixed term order).

    Construction already canonicalizes, so this is idempotent and cheap; it
    exists so callers can normalize values assembled from raw term maps.
    """
    return ParamPolynomial(p.terms, p.params)


def ppoly_reduce(p: ParamPolynomial, constraint: ParamPolynomial,
                 var: str) -> ParamPolynomial:
    """Pseudo-remainder of `p` by `constraint` with respect to parameter `var`.

    Returns r with deg_var(r) < deg_var(constraint) such that
    lc^e * p = q * constraint + r for some q and some power e of the leading
    coefficient lc of the constraint in `var`.  In particular r is congruent
    to p modulo the ideal (constraint), up to that unit-power factor.
    """
    r, _ = pseudo_remainder(p, constraint, var)
    return r


def pseudo_remainder(p: ParamPolynomial, constraint: ParamPolynomial,
                     var: str) -> tuple:
    """Like `ppoly_reduce` but also returns the number e of lc-multiplications."""
    p._check_ring(constraint)
    idx = p._param_index(var)
    d = constraint.degree_in(var)
    if d < 1:
        raise ParameterError(f"constraint is constant in {var!r}")
    lc_shifted = constraint.coefficient_of_power(var, d)

    r = p
    steps = 0
    while True:
        dr = r.degree_in(var)
        if dr < d:
            break
        lead = r.coefficient_of_power(var, dr)
        # r <- lc*r - lead * var^(dr-d) * constraint
        shift = ParamPolynomial(
            {tuple((dr - d) if i == idx else 0 for i in range(len(p.params))): 1},
            p.params)
        r = lc_shifted * r - lead * shift * constraint
        steps += 1
    return r, steps


def congruent_mod(p: ParamPolynomial, q: ParamPolynomial,
                  constraint: ParamPolynomial, var: str) -> bool:
    """True when p == q modulo the principal ideal generated by `constraint`."""
    return ppoly_reduce(p - q, constraint, var).is_zero()
