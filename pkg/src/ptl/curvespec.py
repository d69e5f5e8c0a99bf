"""Text format for curve models.

    spec  := kind ';' field ';' body
    kind  := 'hyp' | 'sup' | 'add'
    field := 'F' p [ '^' k ]
    hyp   := 'h=' poly
    sup   := 'm=' int ';a=' int {',' int} ';b=' elem {',' elem}
    add   := 'A=' poly-in-y ';h=' poly

Polynomials use '+', '-', '*', '^' and parentheses over integer constants,
the variable (x, or y for A) and the extension generator t.  Whitespace is
ignored everywhere.  Offsets in ParseError are byte offsets into the input.
"""

from __future__ import annotations

from .arith import Field, FieldElement, Poly, field_make, is_prime
from .curves import AdditiveCoverModel, CurveModel, HyperellipticModel, SuperellipticModel, validate
from .errors import ParseError, PtlError, SemanticError

MAX_EXPONENT = 10**6


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def offset(self, i: int | None = None) -> int:
        return len(self.text[: self.i if i is None else i].encode("utf-8"))

    def fail(self, message: str, i: int | None = None):
        raise ParseError(message, self.offset(i))

    def skip(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.i] if self.i < len(self.text) else ""

    def accept(self, token: str) -> bool:
        self.skip()
        if self.text.startswith(token, self.i):
            self.i += len(token)
            return True
        return False

    def expect(self, token: str):
        if not self.accept(token):
            found = self.peek() or "end of input"
            self.fail(f"expected {token!r}, found {found!r}")

    def word(self) -> str:
        self.skip()
        start = self.i
        while self.i < len(self.text) and self.text[self.i].isalpha():
            self.i += 1
        return self.text[start:self.i]

    def integer(self) -> int:
        self.skip()
        start = self.i
        while self.i < len(self.text) and (self.text[self.i].isdigit() or self.text[self.i].isspace()):
            self.i += 1
        digits = "".join(self.text[start:self.i].split())
        if not digits:
            self.i = start
            self.fail("expected an integer")
        return int(digits)

    def at_end(self) -> bool:
        return self.peek() == ""


class _PolyParser:
    """Recursive descent over the reader; ``var`` is None for field constants."""

    def __init__(self, reader: _Reader, field: Field, var: str | None):
        self.r = reader
        self.F = field
        self.var = var

    def expr(self) -> Poly:
        value = self.term()
        while True:
            if self.r.accept("+"):
                value = value + self.term()
            elif self.r.accept("-"):
                value = value - self.term()
            else:
                return value

    def term(self) -> Poly:
        value = self.power()
        while self.r.accept("*"):
            value = value * self.power()
        return value

    def power(self) -> Poly:
        base = self.unary()
        if self.r.accept("^"):
            start = self.r.i
            e = self.r.integer()
            if e > MAX_EXPONENT:
                self.r.fail(f"exponent {e} is too large", start)
            return base**e
        return base

    def unary(self) -> Poly:
        if self.r.accept("-"):
            return -self.unary()
        return self.atom()

    def atom(self) -> Poly:
        c = self.r.peek()
        start = self.r.i
        if c == "(":
            self.r.expect("(")
            value = self.expr()
            self.r.expect(")")
            return value
        if c.isdigit():
            return Poly.constant(self.F, self.F(self.r.integer()))
        if c.isalpha():
            self.r.skip()
            start = self.r.i
            name = self.r.text[self.r.i]
            self.r.i += 1
            if name == "t":
                if self.F.k == 1:
                    self.r.fail("the generator t needs an extension field F p^k", start)
                return Poly.constant(self.F, self.F.gen)
            if self.var is not None and name == self.var:
                return Poly.x(self.F)
            self.r.fail(f"unexpected symbol {name!r}", start)
        self.r.fail(f"expected a term, found {c or 'end of input'!r}", start)


def _field(r: _Reader) -> Field:
    r.expect("F")
    start = r.i
    p = r.integer()
    k = 1
    if r.accept("^"):
        k = r.integer()
    if not is_prime(p):
        raise SemanticError(f"{p} is not prime (byte {r.offset(start)})")
    if k < 1:
        raise SemanticError(f"extension degree must be positive (byte {r.offset(start)})")
    return field_make(p, k)


def _int_list(r: _Reader) -> list[int]:
    out = [r.integer()]
    while r.accept(","):
        out.append(r.integer())
    return out


def _elem_list(r: _Reader, F: Field) -> list[FieldElement]:
    out = []
    while True:
        out.append(_PolyParser(r, F, None).expr().coeff(0))
        if not r.accept(","):
            return out


def parse_curve_spec(text: str) -> CurveModel:
    r = _Reader(text)
    kind = r.word()
    if kind not in ("hyp", "sup", "add"):
        r.fail(f"unknown curve kind {kind!r}", 0)
    r.expect(";")
    F = _field(r)
    r.expect(";")
    try:
        if kind == "hyp":
            r.expect("h")
            r.expect("=")
            model: CurveModel = HyperellipticModel(_PolyParser(r, F, "x").expr())
        elif kind == "sup":
            r.expect("m")
            r.expect("=")
            m = r.integer()
            r.expect(";")
            r.expect("a")
            r.expect("=")
            a = _int_list(r)
            r.expect(";")
            r.expect("b")
            r.expect("=")
            b = _elem_list(r, F)
            model = SuperellipticModel(F, m, tuple(b), tuple(a))
        else:
            r.expect("A")
            r.expect("=")
            A = _PolyParser(r, F, "y").expr()
            r.expect(";")
            r.expect("h")
            r.expect("=")
            model = AdditiveCoverModel(A, _PolyParser(r, F, "x").expr())
    except ParseError:
        raise
    except PtlError as exc:  # e.g. a failed inversion while evaluating
        raise SemanticError(str(exc)) from exc
    if not r.at_end():
        r.fail(f"unexpected trailing input {r.peek()!r}")
    problems = validate(model)
    if problems:
        raise SemanticError("; ".join(str(d) for d in problems))
    return model


def format_curve_spec(model: CurveModel) -> str:
    """Canonical text for ``model``; parse_curve_spec inverts it."""
    F = model.field
    field = f"F{F.p}" if F.k == 1 else f"F{F.p}^{F.k}"
    if isinstance(model, HyperellipticModel):
        return f"hyp;{field};h={_poly_text(model.h, 'x')}"
    if isinstance(model, SuperellipticModel):
        a = ",".join(map(str, model.exponents))
        b = ",".join(format_element(x) for x in model.branch)
        return f"sup;{field};m={model.m};a={a};b={b}"
    return f"add;{field};A={_poly_text(model.A, 'y')};h={_poly_text(model.h, 'x')}"


def format_element(x: FieldElement) -> str:
    terms = []
    for i in reversed(range(len(x.coeffs))):
        c = x.coeffs[i]
        if not c:
            continue
        mon = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        terms.append(str(c) if not mon else (mon if c == 1 else f"{c}*{mon}"))
    return "+".join(terms) or "0"


def _poly_text(f: Poly, var: str) -> str:
    terms = []
    for i in reversed(range(f.degree + 1)):
        c = f.coeffs[i]
        if not c:
            continue
        mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        ct = format_element(c)
        if "+" in ct and mon:
            ct = f"({ct})"
        if not mon:
            terms.append(ct)
        elif ct == "1":
            terms.append(mon)
        else:
            terms.append(f"{ct}*{mon}")
    return "+".join(terms) or "0"
