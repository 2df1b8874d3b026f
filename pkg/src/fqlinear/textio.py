"""Text formats for field elements, series, operators and series files.

Printing is canonical and parsing is its exact inverse.  The parser
accepts a small expression language shared by all value types::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor (['*' | '/'] factor)*        # juxtaposition multiplies
    factor := atom ['^' power]
    atom   := INT | 'x' | 'g' | 'a' | 'tau' | 'd' | '[' INT ']'
            | 'O(' expr ')' | '(' expr ')'
    power  := ['-'] INT | '(' rational expression, may use the symbol q ')'

Products are noncommutative (``tau x`` is ``x^q tau``).  A scalar may be
raised to a power q^k for any integer k (k < 0 takes q-th roots);
``x`` may be raised to any exponent in Z[1/q].
"""
from __future__ import annotations

import re
from fractions import Fraction

from .coeff_field.ffield import FiniteField, field_for_q
from .coeff_field.laurent import PerfLaurent
from .errors import ParseError

# -- printing ------------------------------------------------------------


def format_ff(F: FiniteField, c: int) -> str:
    if c < F.p:
        return str(c)
    digits = F.digits(c)
    parts = []
    for idx in range(len(digits) - 1, -1, -1):
        dgt = digits[idx]
        if not dgt:
            continue
        if F.v > 1 and F.s > 1:
            i, j = idx % F.v, idx // F.v
            mono = "*".join(
                sym if e == 1 else f"{sym}^{e}" for sym, e in (("a", i), ("g", j)) if e
            )
        else:
            mono = "" if idx == 0 else ("g" if idx == 1 else f"g^{idx}")
        if not mono:
            parts.append(str(dgt))
        elif dgt == 1:
            parts.append(mono)
        else:
            parts.append(f"{dgt}*{mono}")
    return " + ".join(parts)


def _format_coef(F: FiniteField, c: int) -> str:
    s = format_ff(F, c)
    return s if c < F.p else f"({s})"


def format_exponent(e: Fraction) -> str:
    if e.denominator == 1 and e >= 0:
        return str(e.numerator)
    if e.denominator == 1:
        return f"({e.numerator})"
    return f"({e.numerator}/{e.denominator})"


def format_laurent(f: PerfLaurent) -> str:
    F = f.field
    parts = []
    for e, c in f.items():
        cs = _format_coef(F, c)
        if e == 0:
            parts.append(cs)
            continue
        mono = "x" if e == 1 else f"x^{format_exponent(e)}"
        parts.append(mono if c == 1 else f"{cs}*{mono}")
    if f.prec is not None:
        parts.append(f"O(x^{format_exponent(f.prec)})")
    return " + ".join(parts) if parts else "0"


def format_operator(op) -> str:
    if not op.terms:
        return "0"
    return " + ".join(
        f"({format_laurent(op.terms[(i, j)])}) tau^{i} d^{j}" for (i, j) in sorted(op.terms)
    )


def format_series(u) -> str:
    F = u.field
    lines = [f"fq-linear q={F.q} s={F.s} nprec={u.n_prec}"]
    lines += [f"{n}: {format_laurent(c)}" for n, c in enumerate(u.coeffs)]
    return "\n".join(lines) + "\n"


# -- parsing -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(tau|[A-Za-z]+)|(.))")


def _tokenize(text: str):
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, ident, sym = m.groups()
        if num is not None:
            out.append(("int", int(num)))
        elif ident is not None:
            out.append(("id", ident))
        elif sym is not None and not sym.isspace():
            out.append(("sym", sym))
        pos = m.end()
    out.append(("end", None))
    return out


class _Parser:
    def __init__(self, F: FiniteField, text: str, line: int | None = None):
        from .skew_ring import SkewOperator

        self.F = F
        self.Op = SkewOperator
        self.toks = _tokenize(text)
        self.i = 0
        self.line = line
        self.text = text

    def error(self, msg):
        raise ParseError(f"{msg} in {self.text!r}", self.line)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        if t[0] == "end":
            self.error("unexpected end of input")
        self.i += 1
        return t

    def expect(self, sym):
        t = self.take()
        if t != ("sym", sym):
            self.error(f"expected {sym!r}, got {t[1]!r}")

    def parse(self):
        val = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return val

    def expr(self):
        neg = False
        if self.peek() == ("sym", "-"):
            self.take()
            neg = True
        val = self.term()
        if neg:
            val = -val
        while self.peek() in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def _starts_factor(self, tok):
        kind, v = tok
        return kind in ("int", "id") or (kind == "sym" and v in "([")

    def term(self):
        val = self.factor()
        while True:
            tok = self.peek()
            if tok == ("sym", "*"):
                self.take()
                val = val * self.factor()
            elif tok == ("sym", "/"):
                self.take()
                val = self._divide(val, self.factor())
            elif self._starts_factor(tok):
                val = val * self.factor()
            else:
                return val

    def _divide(self, num, den):
        c = den.scalar_value()
        if c is None or len(c.terms) != 1 or not c.is_exact():
            self.error("division only by exact scalar monomials")
        return num * self.Op.scalar(c.inverse())

    def factor(self):
        base, is_x = self.atom()
        if self.peek() != ("sym", "^"):
            return base
        self.take()
        e = self.power()
        return self._raise(base, e, is_x)

    def _raise(self, base, e: Fraction, is_x: bool):
        F, Op = self.F, self.Op
        if is_x:
            return Op.scalar(PerfLaurent.monomial(F, 1, e))
        c = base.scalar_value()
        if e.denominator == 1 and e >= 0:
            out = Op.one(F)
            for _ in range(int(e)):
                out = out * base
            return out
        if c is not None:
            k = _q_log(e, F.q)
            if k is not None:
                return Op.scalar(c.frobenius(k))
            if e.denominator == 1 and c.is_exact() and len(c.terms) == 1:
                return Op.scalar(c.inverse() ** int(-e))
        self.error(f"unsupported power {e}")

    def power(self) -> Fraction:
        tok = self.peek()
        if tok == ("sym", "("):
            self.take()
            v = self.rexpr()
            self.expect(")")
            return v
        neg = False
        if tok == ("sym", "-"):
            self.take()
            neg = True
        t = self.take()
        if t[0] == "int":
            return Fraction(-t[1] if neg else t[1])
        if t == ("id", "q"):
            return Fraction(-self.F.q if neg else self.F.q)
        self.error(f"bad exponent {t[1]!r}")

    # rational arithmetic inside exponents
    def rexpr(self) -> Fraction:
        v = self.rterm()
        while self.peek() in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            w = self.rterm()
            v = v + w if op == "+" else v - w
        return v

    def rterm(self) -> Fraction:
        v = self.rfactor()
        while self.peek() in (("sym", "*"), ("sym", "/")):
            op = self.take()[1]
            w = self.rfactor()
            v = v * w if op == "*" else v / w
        return v

    def rfactor(self) -> Fraction:
        if self.peek() == ("sym", "-"):
            self.take()
            return -self.rfactor()
        t = self.take()
        if t[0] == "int":
            v = Fraction(t[1])
        elif t == ("id", "q"):
            v = Fraction(self.F.q)
        elif t == ("sym", "("):
            v = self.rexpr()
            self.expect(")")
        else:
            self.error(f"bad exponent token {t[1]!r}")
        if self.peek() == ("sym", "^"):
            self.take()
            ex = self.rfactor()
            if ex.denominator != 1:
                self.error("fractional power inside an exponent")
            v = v ** int(ex)
        return v

    def atom(self):
        F, Op = self.F, self.Op
        kind, v = self.take()
        if kind == "int":
            return Op.scalar(PerfLaurent.const(F, v)), False
        if kind == "id":
            if v == "x":
                return Op.scalar(PerfLaurent.x(F)), True
            if v == "tau":
                return Op.tau(F), False
            if v == "d":
                return Op.d(F), False
            if v == "g" and F.degree > 1:
                return Op.scalar(PerfLaurent(F, {0: F.generator()})), False
            if v == "a" and F.v > 1 and F.s > 1:
                return Op.scalar(PerfLaurent(F, {0: F.p})), False
            if v == "O":
                self.expect("(")
                inner = self.expr()
                self.expect(")")
                c = inner.scalar_value()
                if c is None or len(c.terms) != 1 or not c.is_exact():
                    self.error("O(...) takes a monomial")
                return Op.scalar(PerfLaurent.big_o(F, c.valuation())), False
            self.error(f"unknown symbol {v!r}")
        if (kind, v) == ("sym", "("):
            inner = self.expr()
            self.expect(")")
            return inner, False
        if (kind, v) == ("sym", "["):
            neg = False
            if self.peek() == ("sym", "-"):
                self.take()
                neg = True
            t = self.take()
            if t[0] != "int":
                self.error("bracket index must be an integer")
            self.expect("]")
            from .carlitz import bracket

            return Op.scalar(bracket(F, -t[1] if neg else t[1])), False
        self.error(f"unexpected {v!r}")


def _q_log(e: Fraction, q: int):
    """k with e = q**k, or None."""
    if e <= 0:
        return None
    k = 0
    while e.denominator == 1 and e > 1 and e.numerator % q == 0:
        e /= q
        k += 1
    while e.numerator == 1 and e.denominator > 1 and e.denominator % q == 0:
        e *= q
        k -= 1
    return k if e == 1 else None


def parse_operator(F: FiniteField, text: str, line: int | None = None):
    return _Parser(F, text, line).parse()


def parse_laurent(F: FiniteField, text: str, line: int | None = None) -> PerfLaurent:
    op = _Parser(F, text, line).parse()
    c = op.scalar_value()
    if c is None:
        raise ParseError(f"not a scalar: {text!r}", line)
    return c


def parse_ff(F: FiniteField, text: str) -> int:
    c = parse_laurent(F, text)
    v = c.constant_value()
    if v is None:
        raise ParseError(f"not a field constant: {text!r}")
    return v


_HEADER = re.compile(r"^fq-linear\s+q=(\d+)\s+s=(\d+)\s+nprec=(\d+)\s*$")


def parse_series(text: str, field: FiniteField | None = None):
    """Parse a series file; the field defaults to the header's (q, s)."""
    from .carlitz import FqLinearSeries

    lines = text.splitlines()
    if not lines:
        raise ParseError("empty series file", 1)
    m = _HEADER.match(lines[0])
    if not m:
        raise ParseError(f"bad header {lines[0]!r}", 1)
    q, s, nprec = (int(g) for g in m.groups())
    F = field if field is not None else field_for_q(q, s)
    if F.q != q or F.s != s:
        raise ParseError(f"header field q={q} s={s} does not match the job field", 1)
    coeffs: dict[int, PerfLaurent] = {}
    for lineno, raw in enumerate(lines[1:], start=2):
        if raw.startswith("#"):
            break  # a report follows the series
        if not raw.strip():
            continue
        idx, sep, body = raw.partition(":")
        if not sep or not idx.strip().isdigit():
            raise ParseError(f"expected '<n>: <series>', got {raw!r}", lineno)
        n = int(idx)
        if n >= nprec:
            raise ParseError(f"index {n} beyond nprec={nprec}", lineno)
        if n in coeffs:
            raise ParseError(f"duplicate index {n}", lineno)
        coeffs[n] = parse_laurent(F, body.strip(), lineno)
    zero = PerfLaurent.zero(F)
    return FqLinearSeries(F, [coeffs.get(n, zero) for n in range(nprec)])
