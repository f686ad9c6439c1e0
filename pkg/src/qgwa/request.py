"""Input documents describing one analysis.

A document has three sections of ``key = value`` lines::

    [algebra]
    conductor = 3
    base = laurent
    q = 1/2
    a = (h^2-1)*(h^2-4)

    [automorphism]
    gamma = -1
    mu = z

    [options]
    verify = true

``#`` starts a comment; values may be wrapped in double quotes.  Field
expressions use rationals, ``z`` (a primitive N-th root of unity), ``+ - * /``,
``^`` with integer exponents, and parentheses.  The defining polynomial is a
product of factors, each a scalar, a power of ``h``, or a parenthesized
binomial ``(alpha*h^e + beta)`` whose roots lie in Q(z_N).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .errors import ParseError, SemanticError
from .exactfield import FieldElement, nth_roots
from .gwacore import DEFAULT_GRADE_BOUND, DEFAULT_H_DEGREE_BOUND
from .polynomials import BaseKind, FactoredPoly, LaurentPoly
from .rootprops import DEFAULT_K_BOUND

__all__ = ["AnalysisRequest", "parse_request", "format_request", "parse_field", "parse_defining"]


@dataclass(frozen=True)
class Options:
    grade_bound: int = DEFAULT_GRADE_BOUND
    h_degree_bound: int = DEFAULT_H_DEGREE_BOUND
    k_bound: int = DEFAULT_K_BOUND
    verify: bool = False
    probe: bool = False


@dataclass(frozen=True)
class AnalysisRequest:
    conductor: int
    base_kind: BaseKind
    q: FieldElement
    a: FactoredPoly
    gamma: FieldElement
    mu: FieldElement
    mu_hpower: int = 0
    omega: bool = False
    i0: Optional[int] = None
    options: Options = field(default_factory=Options)


# -- expression parsing ---------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([hz])|(\*\*|[-+*/^()]))")


class _Tok:
    __slots__ = ("kind", "text", "col")

    def __init__(self, kind, text, col):
        self.kind, self.text, self.col = kind, text, col


def _tokenize(text, line, col0):
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col0 + pos,
                             ("number", "h", "z", "(", "-"))
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(_Tok("num", m.group(1), col0 + start))
        elif m.group(2):
            toks.append(_Tok(m.group(2), m.group(2), col0 + start))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            toks.append(_Tok(op, op, col0 + start))
        pos = m.end()
    toks.append(_Tok("end", "", col0 + len(text)))
    return toks


class _Parser:
    """Recursive descent over the shared expression grammar.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := primary ('^' ['-'] number)?
    primary:= number | 'z' | 'h' | '(' expr ')'

    Nodes are tuples; evaluation happens later so that the top-level
    product structure of a defining polynomial stays visible.
    """

    def __init__(self, text, line, col0, allow_h):
        self.toks = _tokenize(text, line, col0)
        self.i = 0
        self.line = line
        self.allow_h = allow_h
        self.open = []

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, expected):
        t = self.tok
        if t.kind == "end" and self.open:
            raise ParseError("unclosed parenthesis", self.line, self.open[-1], ("(...)",))
        what = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(f"unexpected {what}", self.line, t.col, tuple(expected))

    def eat(self, kind):
        t = self.tok
        if t.kind != kind:
            self.error((kind,))
        self.i += 1
        return t

    def parse(self):
        node = self.expr()
        if self.tok.kind != "end":
            self.error(("+", "-", "*", "/", "^", "end of input"))
        return node

    def expr(self):
        terms = [(1, self.term())]
        while self.tok.kind in "+-":
            sign = 1 if self.eat(self.tok.kind).kind == "+" else -1
            terms.append((sign, self.term()))
        return terms[0][1] if len(terms) == 1 and terms[0][0] == 1 else ("sum", terms)

    def term(self):
        factors = [("*", self.unary())]
        while self.tok.kind in ("*", "/"):
            op = self.eat(self.tok.kind).kind
            factors.append((op, self.unary()))
        return factors[0][1] if len(factors) == 1 else ("prod", factors)

    def unary(self):
        if self.tok.kind == "-":
            self.eat("-")
            return ("neg", self.unary())
        return self.power()

    def power(self):
        base = self.primary()
        if self.tok.kind == "^":
            self.eat("^")
            sign = 1
            if self.tok.kind == "-":
                self.eat("-")
                sign = -1
            if self.tok.kind != "num":
                self.error(("integer exponent",))
            return ("pow", base, sign * int(self.eat("num").text))
        return base

    def primary(self):
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return ("num", int(t.text))
        if t.kind == "z":
            self.i += 1
            return ("z", t.col)
        if t.kind == "h":
            if not self.allow_h:
                self.error(("number", "z", "("))
            self.i += 1
            return ("h",)
        if t.kind == "(":
            self.i += 1
            self.open.append(t.col)
            node = self.expr()
            self.eat(")")
            self.open.pop()
            return node
        self.error(("number", "z", "h", "(") if self.allow_h else ("number", "z", "("))


def _evaluate(node, conductor, line):
    """Evaluate to a LaurentPoly in h over Q(z_N)."""
    kind = node[0]
    if kind == "num":
        return LaurentPoly.constant(FieldElement.rational(node[1], conductor))
    if kind == "z":
        if conductor < 2:
            raise SemanticError(f"z is not available for conductor {conductor}", line, node[1])
        return LaurentPoly.constant(FieldElement.zeta(conductor))
    if kind == "h":
        return LaurentPoly.monomial(1, FieldElement.rational(1, conductor))
    if kind == "neg":
        return -_evaluate(node[1], conductor, line)
    if kind == "sum":
        out = LaurentPoly()
        for sign, t in node[1]:
            v = _evaluate(t, conductor, line)
            out = out + v if sign > 0 else out - v
        return out
    if kind == "prod":
        out = LaurentPoly.constant(FieldElement.rational(1, conductor))
        for op, f in node[1]:
            v = _evaluate(f, conductor, line)
            if op == "*":
                out = out * v
            else:
                if not (v.is_monomial() and v.exponents() == [0]):
                    raise SemanticError("division by a non-constant", line)
                out = out * v.coefficient(0).inverse()
        return out
    if kind == "pow":
        base = _evaluate(node[1], conductor, line)
        e = node[2]
        if e < 0 and not base.is_monomial():
            raise SemanticError("negative power of a non-monomial", line)
        if base.is_zero() and e < 0:
            raise SemanticError("division by zero", line)
        return base ** e
    raise AssertionError(kind)


def parse_field(text, conductor, line=1, col0=1):
    """Parse a field expression into an element of Q(z_N)."""
    node = _Parser(text, line, col0, allow_h=False).parse()
    try:
        val = _evaluate(node, conductor, line)
    except ZeroDivisionError as exc:
        raise SemanticError(f"division by zero in {text!r}", line, col0) from exc
    if val.is_zero():
        return FieldElement.rational(0, conductor)
    return val.coefficient(0)


def _factor_of(poly, conductor, line, col):
    """FactoredPoly for a single factor: a monomial or a binomial."""
    if poly.is_zero():
        raise SemanticError("defining polynomial is zero", line, col)
    if poly.is_monomial():
        ((e, c),) = poly.items()
        return FactoredPoly(c, e, ())
    exps = poly.exponents()
    if len(exps) != 2:
        raise SemanticError("each factor must be a monomial or a binomial in h", line, col)
    lo, hi = exps
    alpha, beta = poly.coefficient(hi), poly.coefficient(lo)
    e = hi - lo
    target = -beta / alpha
    roots = nth_roots(target, e)
    if len(roots) != e:
        raise SemanticError(f"the roots of {poly} are not all in Q(z_{conductor})", line, col)
    return FactoredPoly(alpha, lo, tuple((r, 1) for r in roots))


def _factored(node, conductor, line, col):
    kind = node[0]
    if kind == "neg":
        inner = _factored(node[1], conductor, line, col)
        return FactoredPoly(-inner.unit, inner.h_power, inner.roots)
    if kind == "prod":
        out = FactoredPoly(FieldElement.rational(1, conductor))
        for op, f in node[1]:
            part = _factored(f, conductor, line, col)
            if op == "/":
                if part.roots:
                    raise SemanticError("division by a non-monomial", line, col)
                part = FactoredPoly(part.unit.inverse(), -part.h_power, ())
            out = out.times(part)
        return out
    if kind == "pow":
        base = _factored(node[1], conductor, line, col)
        e = node[2]
        if e < 0 and base.roots:
            raise SemanticError("negative power of a non-monomial", line, col)
        return FactoredPoly(base.unit ** e, base.h_power * e,
                            tuple((r, mult * e) for r, mult in base.roots))
    return _factor_of(_evaluate(node, conductor, line), conductor, line, col)


def parse_defining(text, conductor, line=1, col0=1):
    """Parse the defining polynomial into factored form."""
    node = _Parser(text, line, col0, allow_h=True).parse()
    try:
        return _factored(node, conductor, line, col0)
    except ZeroDivisionError as exc:
        raise SemanticError(f"division by zero in {text!r}", line, col0) from exc


# -- documents --------------------------------------------------------------

_SECTIONS = {
    "algebra": ("conductor", "base", "q", "a"),
    "automorphism": ("gamma", "mu", "mu_hpower", "omega", "i0"),
    "options": ("grade_bound", "h_bound", "k_bound", "verify", "probe"),
}
_REQUIRED = {"algebra": ("base", "q", "a"), "automorphism": ("gamma", "mu")}


def _read_document(text):
    """{section: {key: (value, line, column)}} with positions of the values."""
    doc = {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        stripped = body.strip()
        if not stripped:
            continue
        col = len(body) - len(body.lstrip()) + 1
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise ParseError("unterminated section header", lineno, col + len(stripped), ("]",))
            name = stripped[1:-1].strip()
            if name not in _SECTIONS:
                raise ParseError(f"unknown section [{name}]", lineno, col + 1, tuple(_SECTIONS))
            if name in doc:
                raise SemanticError(f"section [{name}] appears twice", lineno, col)
            section = name
            doc[name] = {}
            continue
        if section is None:
            raise ParseError("expected a section header", lineno, col, ("[",))
        if "=" not in body:
            raise ParseError("expected 'key = value'", lineno, col + len(stripped), ("=",))
        key_part, value_part = body.split("=", 1)
        key = key_part.strip()
        if key not in _SECTIONS[section]:
            raise ParseError(f"unknown key {key!r} in [{section}]", lineno, col,
                             _SECTIONS[section])
        if key in doc[section]:
            raise SemanticError(f"key {key!r} given twice", lineno, col)
        vcol = len(key_part) + 2 + (len(value_part) - len(value_part.lstrip()))
        value = value_part.strip()
        if len(value) >= 2 and value[0] == value[-1] == '"':
            value = value[1:-1]
            vcol += 1
        if not value:
            raise ParseError(f"empty value for {key!r}", lineno, vcol, ("value",))
        doc[section][key] = (value, lineno, vcol)
    return doc


def _int(entry, minimum=None):
    value, line, col = entry
    try:
        v = int(value)
    except ValueError:
        raise ParseError(f"expected an integer, got {value!r}", line, col, ("integer",)) from None
    if minimum is not None and v < minimum:
        raise SemanticError(f"value must be at least {minimum}", line, col)
    return v


def _bool(entry):
    value, line, col = entry
    low = value.lower()
    if low in ("true", "yes", "1"):
        return True
    if low in ("false", "no", "0"):
        return False
    raise ParseError(f"expected a boolean, got {value!r}", line, col, ("true", "false"))


def parse_request(text):
    """Parse an input document into an :class:`AnalysisRequest`."""
    doc = _read_document(text)
    for sec, keys in _REQUIRED.items():
        if sec not in doc:
            raise SemanticError(f"missing section [{sec}]")
        for k in keys:
            if k not in doc[sec]:
                raise SemanticError(f"missing key {k!r} in [{sec}]")
    alg, aut, opt = doc["algebra"], doc["automorphism"], doc.get("options", {})
    N = _int(alg["conductor"], 1) if "conductor" in alg else 1
    base_value, bline, bcol = alg["base"]
    try:
        base = BaseKind(base_value.lower())
    except ValueError:
        raise ParseError(f"unknown base {base_value!r}", bline, bcol, ("poly", "laurent")) from None

    def fld(entry):
        return parse_field(entry[0], N, entry[1], entry[2])

    q = fld(alg["q"])
    a = parse_defining(alg["a"][0], N, alg["a"][1], alg["a"][2])
    gamma, mu = fld(aut["gamma"]), fld(aut["mu"])
    for name, v in (("q", q), ("gamma", gamma), ("mu", mu)):
        if v.is_zero():
            entry = alg["q"] if name == "q" else aut[name]
            raise SemanticError(f"{name} must be nonzero", entry[1], entry[2])
    options = Options(
        grade_bound=_int(opt["grade_bound"], 0) if "grade_bound" in opt else DEFAULT_GRADE_BOUND,
        h_degree_bound=_int(opt["h_bound"], 0) if "h_bound" in opt else DEFAULT_H_DEGREE_BOUND,
        k_bound=_int(opt["k_bound"], 1) if "k_bound" in opt else DEFAULT_K_BOUND,
        verify=_bool(opt["verify"]) if "verify" in opt else False,
        probe=_bool(opt["probe"]) if "probe" in opt else False,
    )
    return AnalysisRequest(
        conductor=N,
        base_kind=base,
        q=q,
        a=a,
        gamma=gamma,
        mu=mu,
        mu_hpower=_int(aut["mu_hpower"]) if "mu_hpower" in aut else 0,
        omega=_bool(aut["omega"]) if "omega" in aut else False,
        i0=_int(aut["i0"]) if "i0" in aut else None,
        options=options,
    )


def format_request(req):
    """Canonical document for ``req``; parsing it gives back an equal request."""
    o = req.options
    lines = [
        "[algebra]",
        f"conductor = {req.conductor}",
        f"base = {req.base_kind.value}",
        f"q = {str(req.q)}",
        f"a = {req.a.to_string('h')}",
        "",
        "[automorphism]",
        f"gamma = {str(req.gamma)}",
        f"mu = {str(req.mu)}",
        f"mu_hpower = {req.mu_hpower}",
        f"omega = {str(req.omega).lower()}",
    ]
    if req.i0 is not None:
        lines.append(f"i0 = {req.i0}")
    lines += [
        "",
        "[options]",
        f"grade_bound = {o.grade_bound}",
        f"h_bound = {o.h_degree_bound}",
        f"k_bound = {o.k_bound}",
        f"verify = {str(o.verify).lower()}",
        f"probe = {str(o.probe).lower()}",
    ]
    return "\n".join(lines) + "\n"
