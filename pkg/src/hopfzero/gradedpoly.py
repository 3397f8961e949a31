"""Sparse polynomials in x, y, z graded by quasi-homogeneous type (1, 1, 2).

A monomial x^i y^j z^l has quasi-homogeneous degree i + j + 2l.  Polynomials
are sparse maps from monomials to `ParamPolynomial` coefficients, so a single
object can hold symbolic-parameter content exactly.  The graded slice of
degree k, and a deterministic ordered basis of it, underpin all the linear
algebra downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, NamedTuple, Tuple

from .coeffring import ParamPolynomial, RationalLike, rat
from .errors import DegreeError

WEIGHTS = (1, 1, 2)
VAR_NAMES = ("x", "y", "z")


class Monomial3(NamedTuple):
    """Exponents of x, y, z.  The quasi-homogeneous degree is derived."""

    ex: int
    ey: int
    ez: int

    @property
    def degree(self) -> int:
        return self.ex + self.ey + 2 * self.ez


@dataclass(frozen=True)
class GradedSliceBasis:
    """Ordered monomial basis of the quasi-homogeneous slice of one degree."""

    degree: int
    monomials: Tuple[Monomial3, ...]

    def __len__(self):
        return len(self.monomials)

    def index(self, m: Monomial3) -> int:
        return self.monomials.index(m)


_slice_cache: Dict[int, GradedSliceBasis] = {}


def slice_basis(k: int) -> GradedSliceBasis:
    """All monomials of quasi-homogeneous degree k, ordered by ascending z
    exponent and then descending x exponent."""
    if k < 0:
        raise DegreeError(f"negative degree {k}")
    cached = _slice_cache.get(k)
    if cached is not None:
        return cached
    monomials = []
    for ez in range(k // 2 + 1):
        rest = k - 2 * ez
        for ex in range(rest, -1, -1):
            monomials.append(Monomial3(ex, rest - ex, ez))
    basis = GradedSliceBasis(k, tuple(monomials))
    _slice_cache[k] = basis
    return basis


def slice_dimension(k: int) -> int:
    return sum(k - 2 * l + 1 for l in range(k // 2 + 1)) if k >= 0 else 0


def _mono_sort_key(m: Monomial3):
    return (m.degree, m.ez, -m.ex)


class QHPolynomial:
    """Sparse polynomial in x, y, z with ParamPolynomial coefficients."""

    __slots__ = ("terms", "params")

    def __init__(self, terms: Mapping[Monomial3, ParamPolynomial], params: Iterable[str]):
        params = tuple(params)
        clean = {}
        for m, c in terms.items():
            m = Monomial3(*m)
            if not isinstance(c, ParamPolynomial):
                c = ParamPolynomial.constant(c, params)
            if c.params != params:
                raise ValueError("coefficient ring mismatch")
            if c:
                prev = clean.get(m)
                c = prev + c if prev is not None else c
                if c:
                    clean[m] = c
                elif m in clean:
                    del clean[m]
        object.__setattr__(self, "terms",
                           dict(sorted(clean.items(), key=lambda kv: _mono_sort_key(kv[0]))))
        object.__setattr__(self, "params", params)

    def __setattr__(self, name, value):
        raise AttributeError("QHPolynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, params: Iterable[str]) -> "QHPolynomial":
        return cls({}, params)

    @classmethod
    def constant(cls, value: RationalLike, params: Iterable[str]) -> "QHPolynomial":
        return cls({Monomial3(0, 0, 0): rat(value)}, params)

    @classmethod
    def monomial(cls, m, coeff, params: Iterable[str]) -> "QHPolynomial":
        return cls({Monomial3(*m): coeff}, params)

    @classmethod
    def variable(cls, name: str, params: Iterable[str]) -> "QHPolynomial":
        exps = [0, 0, 0]
        exps[VAR_NAMES.index(name)] = 1
        return cls({Monomial3(*exps): 1}, params)

    @classmethod
    def h_power(cls, m: int, params: Iterable[str]) -> "QHPolynomial":
        """(x^2 + y^2)^m, the generator of the rotation-invariant kernel line."""
        return cls({Monomial3(2 * i, 2 * (m - i), 0): math.comb(m, i)
                    for i in range(m + 1)}, params)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "QHPolynomial"):
        if self.params != other.params:
            raise ValueError("parameter tables differ")

    def __add__(self, other: "QHPolynomial") -> "QHPolynomial":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            prev = out.get(m)
            out[m] = prev + c if prev is not None else c
        return QHPolynomial(out, self.params)

    def __sub__(self, other: "QHPolynomial") -> "QHPolynomial":
        return self + (-other)

    def __neg__(self) -> "QHPolynomial":
        return QHPolynomial({m: -c for m, c in self.terms.items()}, self.params)

    def __mul__(self, other: "QHPolynomial") -> "QHPolynomial":
        return self.mul(other)

    def mul(self, other: "QHPolynomial", max_degree: int | None = None) -> "QHPolynomial":
        """Product, optionally dropping terms above a quasi-homogeneous cap.

        Truncating during multiplication keeps high-order normal-form updates
        from generating garbage far beyond the working degree.
        """
        self._check(other)
        out: Dict[Monomial3, ParamPolynomial] = {}
        bterms = [(m, m.degree, c) for m, c in other.terms.items()]
        for ma, ca in self.terms.items():
            da = ma.degree
            for mb, db, cb in bterms:
                if max_degree is not None and da + db > max_degree:
                    continue
                m = Monomial3(ma.ex + mb.ex, ma.ey + mb.ey, ma.ez + mb.ez)
                prod = ca * cb
                prev = out.get(m)
                out[m] = prev + prod if prev is not None else prod
        return QHPolynomial(out, self.params)

    def scale(self, factor: RationalLike) -> "QHPolynomial":
        factor = rat(factor)
        if not factor:
            return QHPolynomial.zero(self.params)
        return QHPolynomial({m: c.scale(factor) for m, c in self.terms.items()}, self.params)

    def scale_param(self, factor: ParamPolynomial) -> "QHPolynomial":
        if not factor:
            return QHPolynomial.zero(self.params)
        return QHPolynomial({m: c * factor for m, c in self.terms.items()}, self.params)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QHPolynomial):
            return NotImplemented
        return self.params == other.params and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- grading -----------------------------------------------------------

    def degrees(self) -> Tuple[int, ...]:
        return tuple(sorted({m.degree for m in self.terms}))

    def slice(self, k: int) -> "QHPolynomial":
        return QHPolynomial({m: c for m, c in self.terms.items() if m.degree == k},
                            self.params)

    def truncate(self, max_degree: int) -> "QHPolynomial":
        return QHPolynomial({m: c for m, c in self.terms.items() if m.degree <= max_degree},
                            self.params)

    def is_quasi_homogeneous(self, k: int) -> bool:
        return all(m.degree == k for m in self.terms)

    # -- calculus and evaluation -------------------------------------------

    def partial(self, var: str) -> "QHPolynomial":
        idx = VAR_NAMES.index(var)
        out = {}
        for m, c in self.terms.items():
            e = m[idx]
            if not e:
                continue
            lowered = list(m)
            lowered[idx] = e - 1
            key = Monomial3(*lowered)
            contrib = c.scale(e)
            prev = out.get(key)
            out[key] = prev + contrib if prev is not None else contrib
        return QHPolynomial(out, self.params)

    def substitute_params(self, values: Mapping[str, RationalLike]) -> "QHPolynomial":
        return QHPolynomial({m: c.substitute(values) for m, c in self.terms.items()},
                            self.params)

    def coefficient(self, m) -> ParamPolynomial:
        return self.terms.get(Monomial3(*m), ParamPolynomial.zero(self.params))

    # -- printing ----------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, coeff in self.terms.items():
            factors = []
            for name, e in zip(VAR_NAMES, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            ct = str(coeff)
            if not mono:
                body, sign = _signed(ct)
            elif ct == "1":
                body, sign = mono, "+"
            elif ct == "-1":
                body, sign = mono, "-"
            elif " " in ct:
                body, sign = f"({ct})*{mono}", "+"
            else:
                body, sign = _signed(ct)
                body = f"{body}*{mono}"
            parts.append((sign, body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"QHPolynomial({self})"


def _signed(text: str):
    if text.startswith("-"):
        return text[1:], "-"
    return text, "+"


def qh_decompose(f: QHPolynomial) -> Dict[int, QHPolynomial]:
    """Split into quasi-homogeneous slices, keyed by degree (sum equals f)."""
    buckets: Dict[int, Dict[Monomial3, ParamPolynomial]] = {}
    for m, c in f.terms.items():
        buckets.setdefault(m.degree, {})[m] = c
    return {k: QHPolynomial(t, f.params) for k, t in sorted(buckets.items())}


def partial(f: QHPolynomial, var: str) -> QHPolynomial:
    """Exact partial derivative; maps degree k into degree k - weight(var)."""
    return f.partial(var)


def h_component(f: QHPolynomial, m: int) -> ParamPolynomial:
    """Coefficient of (x^2+y^2)^m in the degree-2m part of f.

    Uses the harmonic projection: m applications of the plane Laplacian kill
    every degree-2m plane polynomial except multiples of (x^2+y^2)^m, and
    Laplacian^m (x^2+y^2)^m = 4^m (m!)^2.  Only z-free terms can contribute.
    """
    params = f.params
    current = {mm: c for mm, c in f.terms.items() if mm.ez == 0 and mm.degree == 2 * m}
    for _ in range(m):
        nxt: Dict[Monomial3, ParamPolynomial] = {}
        for mm, c in current.items():
            i, j, _ = mm
            if i >= 2:
                key = Monomial3(i - 2, j, 0)
                contrib = c.scale(i * (i - 1))
                prev = nxt.get(key)
                nxt[key] = prev + contrib if prev is not None else contrib
            if j >= 2:
                key = Monomial3(i, j - 2, 0)
                contrib = c.scale(j * (j - 1))
                prev = nxt.get(key)
                nxt[key] = prev + contrib if prev is not None else contrib
        current = {mm: c for mm, c in nxt.items() if c}
    const = current.get(Monomial3(0, 0, 0))
    if const is None:
        return ParamPolynomial.zero(params)
    return const.scale(Fraction(1, 4 ** m * math.factorial(m) ** 2))
