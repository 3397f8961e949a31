"""Input-format parser for polynomial Hopf-zero systems.

Grammar (one statement per line, `#` starts a comment):

    params NAME NAME ...          optional, at most once, before the equations
    dx = EXPR
    dy = EXPR
    dz = EXPR

EXPR is a polynomial expression over x, y, z and the declared parameters with
operators + - * ^ and parentheses.  Rational literals are written p or p/q;
division is only allowed by a positive integer literal.  Exponents are
nonnegative integer literals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from .coeffring import ParamPolynomial
from .errors import ParseError
from .gradedpoly import QHPolynomial
from .vectorfield import VectorField3

_VARS = ("x", "y", "z")


@dataclass(frozen=True)
class Token:
    kind: str  # "name" | "int" | "op"
    text: str
    line: int
    column: int


def _tokenize_expr(text: str, line: int, col_offset: int) -> List[Token]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in " \t":
            i += 1
            continue
        if ch == "#":
            break
        col = col_offset + i + 1
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(Token("int", text[i:j], line, col))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("name", text[i:j], line, col))
            i = j
        elif ch in "+-*/^()":
            tokens.append(Token("op", ch, line, col))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    return tokens


# expression trees: ("num", Fraction) | ("var", name) | ("neg", e)
#                   | ("add", l, r) | ("sub", l, r) | ("mul", l, r)
#                   | ("pow", e, int)


class _ExprParser:
    def __init__(self, tokens: List[Token], line: int):
        self.tokens = tokens
        self.pos = 0
        self.line = line

    def peek(self) -> Optional[Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression", self.line)
        self.pos += 1
        return tok

    def expect_op(self, text: str) -> Token:
        tok = self.take()
        if tok.kind != "op" or tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text!r}", tok.line, tok.column)
        return tok

    def parse(self):
        expr = self.parse_sum()
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.column)
        return expr

    def parse_sum(self):
        node = self.parse_term()
        while True:
            tok = self.peek()
            if tok is not None and tok.kind == "op" and tok.text in "+-":
                self.take()
                rhs = self.parse_term()
                node = ("add" if tok.text == "+" else "sub", node, rhs)
            else:
                return node

    def parse_term(self):
        node = self.parse_factor()
        while True:
            tok = self.peek()
            if tok is None or tok.kind != "op" or tok.text not in "*/":
                return node
            self.take()
            if tok.text == "*":
                node = ("mul", node, self.parse_factor())
            else:
                denom = self.peek()
                if denom is None or denom.kind != "int":
                    where = denom if denom is not None else tok
                    what = "variable" if denom is not None and denom.kind == "name" \
                        else "non-literal"
                    raise ParseError(f"division by {what}", where.line, where.column)
                self.take()
                value = int(denom.text)
                if value == 0:
                    raise ParseError("division by zero", denom.line, denom.column)
                node = ("mul", node, ("num", Fraction(1, value)))

    def parse_factor(self):
        tok = self.peek()
        if tok is not None and tok.kind == "op" and tok.text in "+-":
            self.take()
            inner = self.parse_factor()
            return inner if tok.text == "+" else ("neg", inner)
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        tok = self.peek()
        if tok is not None and tok.kind == "op" and tok.text == "^":
            self.take()
            exp = self.peek()
            if exp is None or exp.kind != "int":
                bad = exp if exp is not None else tok
                raise ParseError("exponent must be a nonnegative integer literal",
                                 bad.line, bad.column)
            self.take()
            return ("pow", base, int(exp.text))
        return base

    def parse_atom(self):
        tok = self.take()
        if tok.kind == "int":
            return ("num", Fraction(int(tok.text)))
        if tok.kind == "name":
            return ("var", tok.text)
        if tok.kind == "op" and tok.text == "(":
            inner = self.parse_sum()
            self.expect_op(")")
            return inner
        raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.column)


@dataclass(frozen=True)
class SystemSource:
    """Parsed system: declared parameters and one expression tree per component."""

    parameter_names: Tuple[str, ...]
    components: Tuple[object, object, object]  # trees for dx, dy, dz
    source_locations: Dict[str, Tuple[int, int]] = field(default_factory=dict)

    def to_field(self) -> VectorField3:
        polys = [_eval_tree(tree, self.parameter_names) for tree in self.components]
        return VectorField3(*polys)

    def to_text(self) -> str:
        """Canonical textual form; re-parsing yields an equal field."""
        lines = []
        if self.parameter_names:
            lines.append("params " + " ".join(self.parameter_names))
        field3 = self.to_field()
        for name, comp in zip(("dx", "dy", "dz"), field3.components):
            lines.append(f"{name} = {comp}")
        return "\n".join(lines) + "\n"


def _eval_tree(tree, params: Tuple[str, ...]) -> QHPolynomial:
    kind = tree[0]
    if kind == "num":
        return QHPolynomial.constant(tree[1], params)
    if kind == "var":
        name = tree[1]
        if name in _VARS:
            return QHPolynomial.variable(name, params)
        return QHPolynomial.constant(1, params).scale_param(
            ParamPolynomial.variable(name, params))
    if kind == "neg":
        return -_eval_tree(tree[1], params)
    if kind == "add":
        return _eval_tree(tree[1], params) + _eval_tree(tree[2], params)
    if kind == "sub":
        return _eval_tree(tree[1], params) - _eval_tree(tree[2], params)
    if kind == "mul":
        return _eval_tree(tree[1], params) * _eval_tree(tree[2], params)
    if kind == "pow":
        base = _eval_tree(tree[1], params)
        out = QHPolynomial.constant(1, params)
        for _ in range(tree[2]):
            out = out * base
        return out
    raise ValueError(f"unknown tree node {kind!r}")


def _check_names(tree, declared: Tuple[str, ...], line: int):
    kind = tree[0]
    if kind == "var":
        name = tree[1]
        if name not in _VARS and name not in declared:
            raise ParseError(f"undeclared identifier {name!r}", line)
    elif kind in ("neg",):
        _check_names(tree[1], declared, line)
    elif kind in ("add", "sub", "mul"):
        _check_names(tree[1], declared, line)
        _check_names(tree[2], declared, line)
    elif kind == "pow":
        _check_names(tree[1], declared, line)


def parse_system(text: str) -> SystemSource:
    """Parse an input file into a SystemSource; raise ParseError with position."""
    params: Optional[Tuple[str, ...]] = None
    trees: Dict[str, object] = {}
    locations: Dict[str, Tuple[int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        head = stripped.split()[0]
        if head == "params":
            if params is not None:
                raise ParseError("duplicate params line", lineno)
            if trees:
                raise ParseError("params line must precede the equations", lineno)
            names = stripped.split()[1:]
            if not names:
                raise ParseError("params line declares no names", lineno)
            for name in names:
                if name in _VARS:
                    raise ParseError(f"parameter name {name!r} clashes with a variable",
                                     lineno)
                if not (name[0].isalpha() or name[0] == "_") or \
                        not all(c.isalnum() or c == "_" for c in name):
                    raise ParseError(f"invalid parameter name {name!r}", lineno)
            if len(set(names)) != len(names):
                raise ParseError("duplicate parameter name", lineno)
            params = tuple(names)
            continue
        if head in ("dx", "dy", "dz"):
            if "=" not in stripped:
                raise ParseError(f"missing '=' in {head} line", lineno)
            lhs, rhs = stripped.split("=", 1)
            if lhs.strip() != head:
                raise ParseError(f"malformed left-hand side {lhs.strip()!r}", lineno)
            if head in trees:
                raise ParseError(f"duplicate {head} line", lineno)
            col_offset = raw.index("=") + 1
            tokens = _tokenize_expr(rhs, lineno, col_offset)
            if not tokens:
                raise ParseError(f"empty right-hand side for {head}", lineno)
            trees[head] = _ExprParser(tokens, lineno).parse()
            locations[head] = (lineno, col_offset + 1)
            continue
        raise ParseError(f"unrecognized line {stripped!r}", lineno)
    missing = [name for name in ("dx", "dy", "dz") if name not in trees]
    if missing:
        raise ParseError(f"missing component lines: {', '.join(missing)}")
    declared = params if params is not None else ()
    for name in ("dx", "dy", "dz"):
        _check_names(trees[name], declared, locations[name][0])
    return SystemSource(parameter_names=declared,
                        components=(trees["dx"], trees["dy"], trees["dz"]),
                        source_locations=locations)


def parse_polynomial(text: str, params: Iterable[str]) -> ParamPolynomial:
    """Parse a single expression in the declared parameters only."""
    params = tuple(params)
    tokens = _tokenize_expr(text, 1, 0)
    if not tokens:
        raise ParseError("empty expression", 1)
    tree = _ExprParser(tokens, 1).parse()
    _check_params_only(tree)
    _check_names(tree, params, 1)
    qh = _eval_tree(tree, params)
    for m in qh.terms:
        if m.ex or m.ey or m.ez:
            raise ParseError("expression must not involve x, y, z", 1)
    return qh.coefficient((0, 0, 0))


def _check_params_only(tree):
    kind = tree[0]
    if kind == "var" and tree[1] in _VARS:
        raise ParseError(f"variable {tree[1]!r} not allowed here", 1)
    for child in tree[1:]:
        if isinstance(child, tuple):
            _check_params_only(child)
