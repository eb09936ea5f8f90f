"""Tokenizer and recursive-descent parser for the native model format.

Grammar (authoritative):

    model      := statement*
    statement  := vardecl | objective | constraint
    vardecl    := "var" IDENT [">=" "0"] ["integer"] ";"
    objective  := ("max"|"min") linexpr ";"
    constraint := ["s.t."] [IDENT ":"] linexpr ("="|"<="|">=") linexpr ";"
    linexpr    := ["-"] term (("+"|"-") term)*
    term       := coef ["*" (IDENT | "(" linexpr ")")] | IDENT
    coef       := coef (("+"|"-"|"*"|"/") coef) | "(" coef ")" | "-" coef
                | INT ["/" INT] | "root" "(" INT "," INT ")" | "exp" "(" coef ")"
                | coef "^" "(" INT ["/" INT] ")"

root(k, n) denotes n**(1/k).  A coefficient may multiply a parenthesized
linear subexpression (it distributes), and ``^`` powers with positive
rational bases support reparsing rendered canonical forms.  Linearity is
enforced: no variable may multiply a variable.  Coefficient arithmetic is
exact and canonical; exp arguments must be pure radicals (no nesting).
"""

import re

from . import field
from .canon import Root, canonicalize
from .config import DEFAULT, Limits
from .errors import DomainError, ParseError, ResourceLimitError
from .model import Coefficient, Constraint, Model, Variable

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<st>s\.t\.)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<int>\d+)
  | (?P<op><=|>=|[=+\-*/();:^,])
    """,
    re.VERBOSE,
)

_KEYWORDS = {"var", "max", "min", "integer", "root", "exp"}


class _Tok:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col

    def __repr__(self):
        return f"{self.kind}:{self.text!r}@{self.line}:{self.col}"


def _tokenize(text):
    toks = []
    pos, line, line_start = 0, 1, 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(
                f"unexpected character {text[pos]!r}", line, pos - line_start + 1
            )
        col = pos - line_start + 1
        kind = m.lastgroup
        val = m.group()
        if kind == "ws":
            nl = val.count("\n")
            if nl:
                line += nl
                line_start = pos + val.rindex("\n") + 1
        elif kind == "ident" and val in _KEYWORDS:
            toks.append(_Tok(val, val, line, col))
        elif kind == "st":
            toks.append(_Tok("s.t.", val, line, col))
        else:
            toks.append(_Tok(kind, val, line, col))
        pos = m.end()
    toks.append(_Tok("eof", "", line, n - line_start + 1))
    return toks


_ONE = None  # set lazily to avoid import-order issues


def _one():
    global _ONE
    if _ONE is None:
        _ONE = Coefficient.from_rat(1)
    return _ONE


class _Parser:
    def __init__(self, text, limits: Limits):
        self.toks = _tokenize(text)
        self.i = 0
        self.limits = limits

    # -- token plumbing ------------------------------------------------------

    def peek(self, ahead=0):
        return self.toks[min(self.i + ahead, len(self.toks) - 1)]

    def next(self):
        t = self.toks[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def expect(self, kind, what=None):
        t = self.peek()
        if t.kind != kind:
            raise ParseError(
                f"expected {what or kind}, found {t.text or 'end of input'!r}",
                t.line,
                t.col,
            )
        return self.next()

    def fail(self, msg, tok=None):
        t = tok or self.peek()
        raise ParseError(msg, t.line, t.col)

    # -- model ---------------------------------------------------------------

    def parse_model(self) -> Model:
        variables = []
        names = set()
        objective = None
        constraints = []
        cnames = set()
        while self.peek().kind != "eof":
            t = self.peek()
            if t.kind == "var":
                v = self.parse_vardecl()
                if v.name in names:
                    self.fail(f"duplicate variable {v.name!r}", t)
                names.add(v.name)
                variables.append(v)
            elif t.kind in ("max", "min"):
                if objective is not None:
                    self.fail("more than one objective", t)
                objective = self.parse_objective(names)
            else:
                c = self.parse_constraint(names)
                if c.name is not None:
                    if c.name in cnames:
                        self.fail(f"duplicate constraint name {c.name!r}", t)
                    cnames.add(c.name)
                constraints.append(c)
        sense, obj, obj_const = objective or ("max", {}, Coefficient.zero())
        return Model(
            variables=tuple(variables),
            sense=sense,
            objective=obj,
            constraints=tuple(constraints),
            objective_constant=obj_const,
        )

    def parse_vardecl(self) -> Variable:
        self.expect("var")
        name = self.expect("ident", "variable name").text
        nonneg = False
        if self.peek().kind == "op" and self.peek().text == ">=":
            self.next()
            z = self.expect("int", "0")
            if z.text != "0":
                self.fail("only '>= 0' lower bounds are supported", z)
            nonneg = True
        is_int = False
        if self.peek().kind == "integer":
            self.next()
            is_int = True
        self._semi()
        return Variable(name=name, is_integer=is_int, nonneg=nonneg)

    def parse_objective(self, declared):
        sense = self.next().kind
        vmap, const = self.parse_linexpr(declared)
        self._semi()
        return sense, vmap, const

    def parse_constraint(self, declared) -> Constraint:
        if self.peek().kind == "s.t.":
            self.next()
        name = None
        if (
            self.peek().kind == "ident"
            and self.peek(1).kind == "op"
            and self.peek(1).text == ":"
        ):
            name = self.next().text
            self.next()
        lhs_v, lhs_c = self.parse_linexpr(declared)
        rel = self.peek()
        if rel.kind != "op" or rel.text not in ("=", "<=", ">="):
            self.fail("expected '=', '<=' or '>='")
        self.next()
        rhs_v, rhs_c = self.parse_linexpr(declared)
        self._semi()
        coeffs = dict(lhs_v)
        for v, c in rhs_v.items():
            coeffs[v] = coeffs.get(v, Coefficient.zero()) - c
        coeffs = {v: c for v, c in coeffs.items() if not c.is_zero()}
        return Constraint(
            name=name, coeffs=coeffs, relation=rel.text, rhs=rhs_c - lhs_c
        )

    def _semi(self):
        t = self.peek()
        if not (t.kind == "op" and t.text == ";"):
            self.fail("expected ';'")
        self.next()

    # -- expressions -----------------------------------------------------------

    def parse_linexpr(self, declared):
        vmap: dict = {}
        const = Coefficient.zero()
        sign = 1
        t = self.peek()
        if t.kind == "op" and t.text == "-":
            self.next()
            sign = -1
        while True:
            tv, tc = self.parse_term(declared)
            if sign < 0:
                tv = {v: -c for v, c in tv.items()}
                tc = -tc
            for v, c in tv.items():
                cur = vmap.get(v)
                vmap[v] = c if cur is None else cur + c
            const = const + tc
            t = self.peek()
            if t.kind == "op" and t.text in ("+", "-"):
                sign = 1 if t.text == "+" else -1
                self.next()
            else:
                break
        return {v: c for v, c in vmap.items() if not c.is_zero()}, const

    def parse_term(self, declared):
        """One product term; at most one variable (or linear group) factor."""

        def absorb(kind, payload, group, coef):
            if kind == "var":
                return ({payload: _one()}, Coefficient.zero()), coef
            if kind == "lin":
                return payload, coef
            return group, (payload if coef is None else coef * payload)

        kind, payload = self.parse_operand(declared)
        group, coef = absorb(kind, payload, None, None)
        while True:
            t = self.peek()
            if not (t.kind == "op" and t.text in ("*", "/")):
                break
            if group is not None:
                nxt = self.peek(1)
                if nxt.kind == "ident" or (nxt.kind == "op" and nxt.text == "("):
                    self.fail(
                        "nonlinear term: variable multiplied by a variable expression", t
                    )
                self.fail("coefficient must precede its variable", t)
            op = self.next()
            kind, payload = self.parse_operand(declared)
            if op.text == "/":
                if kind != "coef":
                    self.fail("nonlinear term: division by a variable expression", op)
                try:
                    coef = (coef if coef is not None else _one()).divide(
                        payload, self.limits
                    )
                except ResourceLimitError:
                    raise
                except DomainError as e:
                    self.fail(str(e), op)
            else:
                group, coef = absorb(kind, payload, group, coef)
        if group is not None:
            vmap, const = group
            if coef is not None:
                vmap = {v: c * coef for v, c in vmap.items()}
                const = const * coef
            return vmap, const
        return {}, coef if coef is not None else Coefficient.zero()

    def parse_operand(self, declared):
        t = self.peek()
        if t.kind == "ident":
            self.next()
            if t.text not in declared:
                self.fail(f"undeclared variable {t.text!r}", t)
            return "var", t.text
        if t.kind == "op" and t.text == "(":
            self.next()
            vmap, const = self.parse_linexpr(declared)
            self._close_paren()
            if vmap:
                if self.peek().kind == "op" and self.peek().text == "^":
                    self.fail("cannot raise a variable expression to a power")
                return "lin", (vmap, const)
            return "coef", self._maybe_power(const)
        if t.kind == "op" and t.text == "-":
            self.next()
            kind, payload = self.parse_operand(declared)
            if kind == "coef":
                return "coef", -payload
            if kind == "lin":
                vmap, const = payload
                return "lin", ({v: -c for v, c in vmap.items()}, -const)
            self.fail("unary minus before a bare variable; write '- x'", t)
        return "coef", self.parse_atom()

    def parse_atom(self) -> Coefficient:
        t = self.peek()
        if t.kind == "int":
            self.next()
            return self._maybe_power(Coefficient.from_rat(int(t.text)))
        if t.kind == "root":
            self.next()
            self._open_paren()
            deg = int(self.expect("int", "root degree").text)
            self._comma()
            rad = int(self.expect("int", "radicand").text)
            self._close_paren()
            try:
                value = canonicalize(Root(deg, rad), self.limits)
            except ResourceLimitError:
                raise
            except DomainError as e:
                self.fail(str(e), t)
            return self._maybe_power(Coefficient.from_radical(value))
        if t.kind == "exp":
            self.next()
            self._open_paren()
            vmap, const = self.parse_linexpr(set())
            self._close_paren()
            if vmap:
                self.fail("variables are not allowed inside exp()", t)
            if const.has_exp():
                self.fail("nested exp() is not allowed", t)
            alpha = field.minimize_basis(const.pure_part())
            return self._maybe_power(Coefficient({alpha: field.ONE}))
        self.fail(f"expected a coefficient, found {t.text or 'end of input'!r}")

    def _maybe_power(self, c: Coefficient) -> Coefficient:
        t = self.peek()
        if not (t.kind == "op" and t.text == "^"):
            return c
        self.next()
        self._open_paren()
        num = int(self.expect("int", "exponent numerator").text)
        den = 1
        if self.peek().kind == "op" and self.peek().text == "/":
            self.next()
            den = int(self.expect("int", "exponent denominator").text)
        self._close_paren()
        if den < 1:
            self.fail("power denominator must be >= 1", t)
        if not c.is_rational():
            self.fail("power base must be a positive rational", t)
        base = c.rational_value()
        if base <= 0:
            self.fail("power base must be a positive rational", t)
        if den == 1:
            return Coefficient.from_rat(base**num)
        try:
            up = canonicalize(Root(den, int(base.numerator) ** num), self.limits)
            down = canonicalize(Root(den, int(base.denominator) ** num), self.limits)
            value = Coefficient.from_radical(up).divide(
                Coefficient.from_radical(down), self.limits
            )
        except ResourceLimitError:
            raise
        except DomainError as e:
            self.fail(str(e), t)
        return value

    def _open_paren(self):
        t = self.peek()
        if not (t.kind == "op" and t.text == "("):
            self.fail("expected '('")
        self.next()

    def _close_paren(self):
        t = self.peek()
        if not (t.kind == "op" and t.text == ")"):
            self.fail("expected ')'")
        self.next()

    def _comma(self):
        t = self.peek()
        if not (t.kind == "op" and t.text == ","):
            self.fail("expected ','")
        self.next()


def parse_model(text: str, limits: Limits = DEFAULT) -> Model:
    return _Parser(text, limits).parse_model()


def parse_coefficient(text: str, limits: Limits = DEFAULT) -> Coefficient:
    """Parse a variable-free coefficient expression (the `canon` input)."""
    p = _Parser(text, limits)
    vmap, const = p.parse_linexpr(set())
    t = p.peek()
    if t.kind != "eof":
        p.fail(f"unexpected trailing input {t.text!r}")
    if vmap:
        p.fail("expected a constant expression, found variables")
    return const
