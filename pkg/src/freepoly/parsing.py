"""Recursive-descent parser for polynomials, series literals, cone literals and job files.

Grammar (whitespace-insensitive)::

    expr     := term (("+" | "-") term)*
    term     := unary (("*" | "/") unary)*          # "/" only by constants
    unary    := ("+" | "-") unary | power
    power    := atom ("^" exponent)?
    exponent := INT | "-" INT | "(" ["-"] INT ["/" INT] ")"
    atom     := INT | "zeta" "(" INT ")" | "x" INT | "y" | "(" expr ")"
    series   := "series" "(" "n" "=" INT (";" item)* ")"
    item     := "(" ints ")" "->" expr | "prec" "=" rational
    cone     := "cone" "{" "(" ints ")" ("," "(" ints ")")* "}"
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .cones import Cone, OrderSpec
from .cyclotomic import CycNum, root_of_unity
from .exceptions import ParseError
from .series import FracSeries
from .ypoly import SeriesPoly

__all__ = [
    "RawPoly",
    "RawSeries",
    "parse_expression",
    "parse_series",
    "parse_cone",
    "parse_item",
    "parse_input",
    "parse_jobs",
    "split_jobs",
    "ParsedInput",
    "parse_rational",
]


# -- tokens -------------------------------------------------------------------


@dataclass(frozen=True)
class _Tok:
    kind: str  # "int", "name", "op", "eof"
    text: str
    line: int
    col: int


_OPS = ["->", "+", "-", "*", "/", "^", "(", ")", ",", ";", "{", "}", "="]


def _tokenize(text: str, line: int = 1):
    toks = []
    i, col = 0, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Tok("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Tok("name", text[i:j], line, col))
            col += j - i
            i = j
            continue
        for op in _OPS:
            if text.startswith(op, i):
                toks.append(_Tok("op", op, line, col))
                i += len(op)
                col += len(op)
                break
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    toks.append(_Tok("eof", "", line, col))
    return toks


# -- raw values -----------------------------------------------------------------


class RawPoly:
    """Sparse sum of c * y^k * x^a with rational exponent maps {index: exponent}."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for key, c in (terms or {}).items():
            c = CycNum.coerce(c)
            if not c.is_zero():
                self.terms[key] = c

    @staticmethod
    def const(c) -> "RawPoly":
        return RawPoly({(0, ()): c})

    @staticmethod
    def var(index: int) -> "RawPoly":
        if index == 0:
            return RawPoly({(1, ()): 1})
        return RawPoly({(0, ((index, Fraction(1)),)): 1})

    def is_const(self) -> bool:
        return all(k == (0, ()) for k in self.terms)

    def const_value(self) -> CycNum:
        return self.terms.get((0, ()), CycNum(0))

    def monomial(self):
        if len(self.terms) == 1:
            (k, c), = self.terms.items()
            return k, c
        return None

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return RawPoly(out)

    def __neg__(self):
        return RawPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out: dict = {}
        for (ya, xa), ca in self.terms.items():
            for (yb, xb), cb in other.terms.items():
                xs = dict(xa)
                for i, v in xb:
                    xs[i] = xs.get(i, 0) + v
                key = (ya + yb, tuple(sorted((i, v) for i, v in xs.items() if v != 0)))
                val = ca * cb
                out[key] = out[key] + val if key in out else val
        return RawPoly(out)

    def max_index(self) -> int:
        return max((i for (_, xs) in self.terms for i, _ in xs), default=0)

    def y_degree(self) -> int:
        return max((k for (k, _) in self.terms), default=0)

    def to_seriespoly(self, e: int, order: OrderSpec, cone: Cone | None = None,
                      check: bool = True) -> SeriesPoly:
        deg = self.y_degree()
        buckets = [dict() for _ in range(deg + 1)]
        den = 1
        for (_, xs) in self.terms:
            for _, v in xs:
                den = den * v.denominator // gcd(den, v.denominator)
        for (k, xs), c in self.terms.items():
            p = [0] * e
            for i, v in xs:
                if i > e:
                    raise ValueError(f"variable x{i} exceeds dimension e={e}")
                p[i - 1] = int(v * den)
            buckets[k][tuple(p)] = c
        coeffs = [FracSeries(b, den, order=order, cone=cone, check=check).reduce_denominator()
                  for b in buckets]
        return SeriesPoly(coeffs, order=order, cone=cone)


@dataclass
class RawSeries:
    n: int
    terms: dict
    precision: Fraction | None

    def dim(self) -> int:
        return len(next(iter(self.terms))) if self.terms else 0

    def to_series(self, order: OrderSpec, cone: Cone | None = None) -> FracSeries:
        return FracSeries(self.terms, self.n, order=order, cone=cone, precision=self.precision)


# -- parser ---------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, line: int = 1):
        self.toks = _tokenize(text, line)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg, expected=()):
        t = self.tok
        raise ParseError(msg, t.line, t.col, expected)

    def accept(self, text) -> bool:
        t = self.tok
        if t.kind in ("op", "name") and t.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            got = self.tok.text or "end of input"
            self.error(f"found {got!r}", [repr(text)])

    def expect_int(self) -> int:
        t = self.tok
        if t.kind != "int":
            self.error(f"found {t.text or 'end of input'!r}", ["integer"])
        self.i += 1
        return int(t.text)

    def signed_int(self) -> int:
        neg = self.accept("-")
        v = self.expect_int()
        return -v if neg else v

    def rational(self) -> Fraction:
        num = self.signed_int()
        if self.accept("/"):
            den = self.expect_int()
            if den == 0:
                self.error("zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def end(self):
        if self.tok.kind != "eof":
            self.error(f"unexpected {self.tok.text!r}", ["end of input"])

    # polynomial expressions

    def expr(self) -> RawPoly:
        val = self.term()
        while True:
            if self.accept("+"):
                val = val + self.term()
            elif self.accept("-"):
                val = val - self.term()
            else:
                return val

    def term(self) -> RawPoly:
        val = self.unary()
        while True:
            if self.accept("*"):
                val = val * self.unary()
            elif self.tok.kind == "op" and self.tok.text == "/":
                t = self.tok
                self.i += 1
                rhs = self.unary()
                if not rhs.is_const() or rhs.const_value().is_zero():
                    raise ParseError("division is only allowed by a nonzero constant",
                                     t.line, t.col, ["constant"])
                val = val * RawPoly.const(rhs.const_value().inverse())
            else:
                return val

    def unary(self) -> RawPoly:
        if self.accept("-"):
            return -self.unary()
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> RawPoly:
        base = self.atom()
        if not self.accept("^"):
            return base
        t = self.tok
        if self.accept("("):
            k = self.rational()
            self.expect(")")
        else:
            k = Fraction(self.signed_int())
        return self._raise(base, k, t)

    def _raise(self, base: RawPoly, k: Fraction, t: _Tok) -> RawPoly:
        if base.is_const():
            c = base.const_value()
            if k.denominator != 1:
                raise ParseError("constants take integer exponents only", t.line, t.col)
            if k < 0 and c.is_zero():
                raise ParseError("zero to a negative power", t.line, t.col)
            return RawPoly.const(c ** int(k) if k >= 0 else c.inverse() ** int(-k))
        mono = base.monomial()
        if mono is not None and (k.denominator != 1 or k < 0):
            (yk, xs), c = mono
            if yk != 0 or c != 1:
                raise ParseError("fractional or negative powers apply to x-monomials only",
                                 t.line, t.col)
            return RawPoly({(0, tuple((i, v * k) for i, v in xs)): 1})
        if k.denominator != 1 or k < 0:
            raise ParseError("fractional or negative powers apply to monomials only", t.line, t.col)
        out = RawPoly.const(1)
        for _ in range(int(k)):
            out = out * base
        return out

    def atom(self) -> RawPoly:
        t = self.tok
        if t.kind == "int":
            self.i += 1
            return RawPoly.const(Fraction(int(t.text)))
        if t.kind == "name":
            if t.text == "zeta":
                self.i += 1
                self.expect("(")
                N = self.expect_int()
                if N < 1:
                    self.error("zeta needs a positive conductor")
                self.expect(")")
                return RawPoly.const(root_of_unity(1, N))
            if t.text == "y":
                self.i += 1
                return RawPoly.var(0)
            if t.text[0] == "x" and t.text[1:].isdigit() and int(t.text[1:]) >= 1:
                self.i += 1
                return RawPoly.var(int(t.text[1:]))
            self.error(f"unknown name {t.text!r}", ["x<k>", "y", "zeta", "integer", "'('"])
        if self.accept("("):
            val = self.expr()
            self.expect(")")
            return val
        self.error(f"found {t.text or 'end of input'!r}", ["x<k>", "y", "zeta", "integer", "'('"])

    # literals

    def int_tuple(self):
        self.expect("(")
        vals = [self.signed_int()]
        while self.accept(","):
            vals.append(self.signed_int())
        self.expect(")")
        return tuple(vals)

    def series(self) -> RawSeries:
        self.expect("series")
        self.expect("(")
        self.expect("n")
        self.expect("=")
        n = self.expect_int()
        if n < 1:
            self.error("n must be positive")
        terms: dict = {}
        prec = None
        dim = None
        while self.accept(";"):
            if self.accept("prec"):
                self.expect("=")
                prec = self.rational()
                continue
            t = self.tok
            p = self.int_tuple()
            if dim is not None and len(p) != dim:
                raise ParseError("exponent vectors differ in length", t.line, t.col)
            dim = len(p)
            self.expect("->")
            c = self.expr()
            if not c.is_const():
                raise ParseError("series coefficients must be constants", t.line, t.col)
            val = c.const_value()
            terms[p] = terms[p] + val if p in terms else val
        self.expect(")")
        return RawSeries(n, {p: c for p, c in terms.items() if not c.is_zero()}, prec)

    def cone(self) -> Cone:
        t = self.tok
        self.expect("cone")
        self.expect("{")
        gens = [self.int_tuple()]
        while self.accept(","):
            gens.append(self.int_tuple())
        self.expect("}")
        try:
            return Cone(tuple(gens))
        except ValueError as exc:
            raise ParseError(str(exc), t.line, t.col) from None


def parse_expression(text: str, line: int = 1) -> RawPoly:
    p = _Parser(text, line)
    val = p.expr()
    p.end()
    return val


def parse_series(text: str, line: int = 1) -> RawSeries:
    p = _Parser(text, line)
    val = p.series()
    p.end()
    return val


def parse_cone(text: str, line: int = 1) -> Cone:
    p = _Parser(text, line)
    val = p.cone()
    p.end()
    return val


def parse_rational(text: str) -> Fraction:
    p = _Parser(text)
    val = p.rational()
    p.end()
    return val


def parse_item(text: str, line: int = 1):
    """One job line: ("poly", RawPoly) | ("series", RawSeries) | ("cone", Cone) | ("option", (k, v))."""
    p = _Parser(text, line)
    t = p.tok
    if t.kind == "name" and t.text == "series":
        val = p.series()
        p.end()
        return "series", val
    if t.kind == "name" and t.text == "cone":
        val = p.cone()
        p.end()
        return "cone", val
    nxt = p.toks[1] if len(p.toks) > 1 else None
    if t.kind == "name" and nxt is not None and nxt.kind == "op" and nxt.text == "=":
        key = t.text
        rest = text.split("=", 1)[1].strip()
        return "option", (key, rest)
    val = p.expr()
    p.end()
    return "poly", val


@dataclass
class ParsedInput:
    poly: RawPoly | None = None
    series: RawSeries | None = None
    cone: Cone | None = None
    options: dict = field(default_factory=dict)
    line: int = 1

    def dimension(self) -> int:
        dims = [1]
        if self.poly is not None:
            dims.append(self.poly.max_index())
        if self.series is not None and self.series.terms:
            dims.append(self.series.dim())
        if self.cone is not None:
            dims.append(self.cone.dim)
        if "e" in self.options:
            dims.append(int(self.options["e"]))
        return max(dims)


def parse_input(text: str, first_line: int = 1) -> ParsedInput:
    """Parse one job: one item per line (polynomial, series, cone, ``key = value``)."""
    out = ParsedInput(line=first_line)
    for offset, raw in enumerate(text.split("\n")):
        line = first_line + offset
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        kind, val = parse_item(stripped, line)
        if kind == "poly":
            if out.poly is not None:
                raise ParseError("a job holds a single polynomial", line, 1)
            out.poly = val
        elif kind == "series":
            if out.series is not None:
                raise ParseError("a job holds a single series", line, 1)
            out.series = val
        elif kind == "cone":
            out.cone = val
        else:
            k, v = val
            if k in out.options:
                old = out.options[k]
                out.options[k] = old + [v] if isinstance(old, list) else [old, v]
            else:
                out.options[k] = v
    return out


def split_jobs(text: str) -> list[tuple[str, int]]:
    """Cut a batch file at lines consisting of ``---``; returns (body, first line) pairs."""
    jobs = []
    chunk: list[str] = []
    start = 1
    for i, raw in enumerate(text.split("\n"), start=1):
        if raw.strip() == "---":
            jobs.append(("\n".join(chunk), start))
            chunk, start = [], i + 1
        else:
            chunk.append(raw)
    jobs.append(("\n".join(chunk), start))
    return [(body, line) for body, line in jobs
            if any(l.split("#", 1)[0].strip() for l in body.split("\n"))]


def parse_jobs(text: str) -> list[ParsedInput]:
    return [parse_input(body, line) for body, line in split_jobs(text)]
