"""Independent symbolic cross-checks built on sympy.

These helpers re-derive derivative identities from scratch so the main
engine's calculus is never used to verify itself.
"""

import sympy as sp

X, Y, Z = sp.symbols("x y z")


def ppoly_to_sympy(p):
    syms = {name: sp.Symbol(name) for name in p.params}
    expr = sp.Integer(0)
    for exps, coeff in p.terms.items():
        term = sp.Rational(coeff.numerator, coeff.denominator)
        for name, e in zip(p.params, exps):
            term *= syms[name] ** e
        expr += term
    return expr


def qh_to_sympy(f):
    expr = sp.Integer(0)
    for m, coeff in f.terms.items():
        expr += ppoly_to_sympy(coeff) * X ** m.ex * Y ** m.ey * Z ** m.ez
    return sp.expand(expr)


def field_to_sympy(field):
    return [qh_to_sympy(c) for c in field.components]


def directional_derivative_sympy(f_expr, field_exprs):
    return sp.expand(sum(sp.diff(f_expr, var) * comp
                         for var, comp in zip((X, Y, Z), field_exprs)))


def divergence_sympy(field_exprs):
    return sp.expand(sum(sp.diff(comp, var)
                         for var, comp in zip((X, Y, Z), field_exprs)))


def multiplier_defect_sympy(w, field, use_div, entries):
    """grad(w).F - [use_div] w div(F) - sum entries[k] z^k, via sympy only."""
    w_expr = qh_to_sympy(w)
    field_exprs = field_to_sympy(field)
    expr = directional_derivative_sympy(w_expr, field_exprs)
    if use_div:
        expr -= w_expr * divergence_sympy(field_exprs)
    for k, value in entries.items():
        expr -= ppoly_to_sympy(value) * Z ** k
    return sp.expand(expr)


def truncate_sympy(expr, max_qh_degree):
    """Keep only monomials of quasi-homogeneous degree <= max_qh_degree."""
    expr = sp.expand(expr)
    if expr == 0:
        return expr
    out = sp.Integer(0)
    poly = sp.Poly(expr, X, Y, Z)
    for monom, coeff in zip(poly.monoms(), poly.coeffs()):
        if monom[0] + monom[1] + 2 * monom[2] <= max_qh_degree:
            out += coeff * X ** monom[0] * Y ** monom[1] * Z ** monom[2]
    return sp.expand(out)
