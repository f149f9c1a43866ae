"""Exact truncated bivariate polynomial arithmetic and the germ expression parser.

Coefficients are ``fractions.Fraction`` on the parsing path, so every 2-jet
criterion downstream can be decided without tolerances.  The same containers
carry float coefficients after numeric frame changes; all arithmetic here is
agnostic to the coefficient type.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "GermParseError",
    "TruncatedPoly2",
    "MapGermR4",
    "Jet2",
    "parse_map_germ",
    "parse_poly",
    "differentiate",
    "template_parameters",
    "extract_jet2",
]


class GermParseError(ValueError):
    """Germ expression does not match the grammar (carries the input position)."""

    def __init__(self, message, position):
        super().__init__(f"parse error at position {position}: {message}")
        self.message = message
        self.position = position


def _is_exact(value) -> bool:
    return isinstance(value, (Fraction, int))


class TruncatedPoly2:
    """Bivariate polynomial truncated at a fixed total degree.

    Stored as a map (i, j) -> coefficient with i + j <= order; zero
    coefficients are never stored.  Instances are immutable; arithmetic
    returns new objects re-truncated to the smaller operand order.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order: int):
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        clean = {}
        for (i, j), c in coeffs.items():
            if i + j <= order and c != 0:
                clean[(i, j)] = c
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("TruncatedPoly2 is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "TruncatedPoly2":
        return cls({}, order)

    @classmethod
    def const(cls, value, order: int) -> "TruncatedPoly2":
        return cls({(0, 0): value}, order)

    @classmethod
    def variable(cls, name: str, order: int) -> "TruncatedPoly2":
        if name == "x":
            return cls({(1, 0): Fraction(1)}, order)
        if name == "y":
            return cls({(0, 1): Fraction(1)}, order)
        raise ValueError(f"unknown variable {name!r}")

    # -- queries ------------------------------------------------------

    def coefficient(self, i: int, j: int):
        return self.coeffs.get((i, j), 0)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_exact(self) -> bool:
        return all(_is_exact(c) for c in self.coeffs.values())

    def degree(self) -> int:
        if not self.coeffs:
            return -1
        return max(i + j for i, j in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncatedPoly2):
            return NotImplemented
        return self.coeffs == other.coeffs and self.order == other.order

    def __hash__(self):
        return hash((frozenset(self.coeffs.items()), self.order))

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "TruncatedPoly2") -> "TruncatedPoly2":
        order = min(self.order, other.order)
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out.get(key, 0) + c
        return TruncatedPoly2(out, order)

    def __sub__(self, other: "TruncatedPoly2") -> "TruncatedPoly2":
        return self + (-other)

    def __neg__(self) -> "TruncatedPoly2":
        return TruncatedPoly2({k: -c for k, c in self.coeffs.items()}, self.order)

    def __mul__(self, other):
        if isinstance(other, TruncatedPoly2):
            order = min(self.order, other.order)
            out = {}
            for (i1, j1), c1 in self.coeffs.items():
                for (i2, j2), c2 in other.coeffs.items():
                    i, j = i1 + i2, j1 + j2
                    if i + j > order:
                        continue
                    key = (i, j)
                    out[key] = out.get(key, 0) + c1 * c2
            return TruncatedPoly2(out, order)
        return TruncatedPoly2({k: c * other for k, c in self.coeffs.items()}, self.order)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TruncatedPoly2":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = TruncatedPoly2.const(Fraction(1), self.order)
        base = self
        k = n
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def diff(self, var: str) -> "TruncatedPoly2":
        """Formal partial derivative; the truncation order drops by one."""
        out = {}
        if var == "x":
            for (i, j), c in self.coeffs.items():
                if i > 0:
                    out[(i - 1, j)] = c * i
        elif var == "y":
            for (i, j), c in self.coeffs.items():
                if j > 0:
                    out[(i, j - 1)] = c * j
        else:
            raise ValueError(f"unknown variable {var!r}")
        return TruncatedPoly2(out, max(self.order - 1, 0))

    def compose(self, px: "TruncatedPoly2", py: "TruncatedPoly2") -> "TruncatedPoly2":
        """Substitute x -> px, y -> py; both must vanish at the origin."""
        if px.coefficient(0, 0) != 0 or py.coefficient(0, 0) != 0:
            raise ValueError("composition requires substitutions with zero constant term")
        order = min(self.order, px.order, py.order)
        max_i = max((i for i, _ in self.coeffs), default=0)
        max_j = max((j for _, j in self.coeffs), default=0)
        one = TruncatedPoly2.const(Fraction(1), order)
        x_pows = [one]
        for _ in range(max_i):
            x_pows.append(x_pows[-1] * px)
        y_pows = [one]
        for _ in range(max_j):
            y_pows.append(y_pows[-1] * py)
        result = TruncatedPoly2.zero(order)
        for (i, j), c in self.coeffs.items():
            result = result + (x_pows[i] * y_pows[j]) * c
        return result

    def evaluate(self, x, y):
        total = 0
        for (i, j), c in self.coeffs.items():
            total += c * x**i * y**j
        return total

    def map_coeffs(self, fn) -> "TruncatedPoly2":
        return TruncatedPoly2({k: fn(c) for k, c in self.coeffs.items()}, self.order)

    def to_float(self) -> "TruncatedPoly2":
        return self.map_coeffs(float)

    def truncate(self, order: int) -> "TruncatedPoly2":
        return TruncatedPoly2(self.coeffs, min(self.order, order))

    def drop_below(self, threshold: float) -> "TruncatedPoly2":
        return TruncatedPoly2(
            {k: c for k, c in self.coeffs.items() if abs(c) > threshold}, self.order
        )

    # -- printing -----------------------------------------------------

    @staticmethod
    def _coeff_str(c) -> str:
        if isinstance(c, Fraction):
            return str(c)
        if isinstance(c, int):
            return str(c)
        return repr(c)

    def to_expression(self) -> str:
        """Render as a germ-grammar expression; reparsing recovers the coefficients."""
        if not self.coeffs:
            return "0"
        parts = []
        for (i, j) in sorted(self.coeffs, key=lambda k: (k[0] + k[1], k[0], k[1])):
            c = self.coeffs[(i, j)]
            factors = []
            if i == 1:
                factors.append("x")
            elif i > 1:
                factors.append(f"x^{i}")
            if j == 1:
                factors.append("y")
            elif j > 1:
                factors.append(f"y^{j}")
            mag = abs(c)
            if not factors or mag != 1:
                factors.insert(0, self._coeff_str(mag))
            term = "*".join(factors)
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self):
        return f"TruncatedPoly2({self.to_expression()!r}, order={self.order})"


class MapGermR4:
    """Polynomial map germ (R^2, 0) -> (R^4, 0): four truncated components of one order."""

    __slots__ = ("components",)

    def __init__(self, components):
        components = tuple(components)
        if len(components) != 4:
            raise ValueError("a map germ into R^4 needs exactly 4 components")
        orders = {p.order for p in components}
        if len(orders) != 1:
            raise ValueError("all components must share one truncation order")
        for idx, p in enumerate(components):
            if p.coefficient(0, 0) != 0:
                raise ValueError(f"component {idx + 1} has a non-zero constant term")
        object.__setattr__(self, "components", components)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("MapGermR4 is immutable")

    @property
    def order(self) -> int:
        return self.components[0].order

    @property
    def is_exact(self) -> bool:
        return all(p.is_exact for p in self.components)

    def __eq__(self, other):
        if not isinstance(other, MapGermR4):
            return NotImplemented
        return self.components == other.components

    def jacobian_at_origin(self):
        """4x2 matrix of first-order coefficients (rows: components)."""
        return [
            [p.coefficient(1, 0), p.coefficient(0, 1)] for p in self.components
        ]

    def evaluate(self, x, y):
        return [p.evaluate(x, y) for p in self.components]

    def compose_source(self, px: TruncatedPoly2, py: TruncatedPoly2) -> "MapGermR4":
        return MapGermR4([p.compose(px, py) for p in self.components])

    def rotate_target(self, matrix) -> "MapGermR4":
        """Apply a linear target map: component_i <- sum_j matrix[i][j] * component_j."""
        out = []
        for row in matrix:
            acc = TruncatedPoly2.zero(self.order)
            for entry, comp in zip(row, self.components):
                if entry != 0:
                    acc = acc + comp * entry
            out.append(acc)
        return MapGermR4(out)

    def to_float(self) -> "MapGermR4":
        return MapGermR4([p.to_float() for p in self.components])

    def is_prenormal(self, tol: float = 0.0) -> bool:
        """First component exactly x, components 2..4 with vanishing 1-jet.

        With ``tol > 0`` the 1-jet conditions are checked up to ``tol`` and the
        first component's non-x terms must also stay below ``tol``.
        """
        kx = TruncatedPoly2.variable("x", self.order)
        first = self.components[0]
        if tol == 0.0:
            if first != kx:
                return False
            for p in self.components[1:]:
                if p.coefficient(1, 0) != 0 or p.coefficient(0, 1) != 0:
                    return False
            return True
        diff = first - kx
        if any(abs(c) > tol for c in diff.coeffs.values()):
            return False
        for p in self.components[1:]:
            if abs(p.coefficient(1, 0)) > tol or abs(p.coefficient(0, 1)) > tol:
                return False
        return True

    def to_expression(self) -> str:
        return "(" + ", ".join(p.to_expression() for p in self.components) + ")"

    def __repr__(self):
        return f"MapGermR4({self.to_expression()!r}, order={self.order})"


# ---------------------------------------------------------------------------
# Parser.  Grammar (whitespace insignificant):
#   germ     := "(" expr "," expr "," expr "," expr ")"
#   expr     := ("+"|"-")? term (("+"|"-") term)*
#   term     := factor ("*" factor)*
#   factor   := base ("^" uint)?
#   base     := "x" | "y" | ident | rational | "(" expr ")"
#   rational := uint ("/" uint)?
# ``ident`` covers sweep-template parameters bound through ``params``.
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|([()+\-*/^,]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            at = len(text) - len(stripped)
            raise GermParseError(f"unexpected character {stripped[0]!r}", at)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("ident", m.group(2), m.start(2)))
        else:
            tokens.append((m.group(3), m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, order: int, params=None):
        self.text = text
        self.order = order
        self.params = params or {}
        self.tokens = _tokenize(text)
        self.idx = 0

    def peek(self):
        return self.tokens[self.idx]

    def advance(self):
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def expect(self, kind: str):
        tok = self.advance()
        if tok[0] != kind:
            raise GermParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def parse_germ(self) -> MapGermR4:
        self.expect("(")
        comps = [self.parse_expr()]
        for _ in range(3):
            self.expect(",")
            comps.append(self.parse_expr())
        self.expect(")")
        tok = self.peek()
        if tok[0] != "eof":
            raise GermParseError(f"trailing input {tok[1]!r}", tok[2])
        return comps

    def parse_expr(self) -> TruncatedPoly2:
        sign = 1
        if self.peek()[0] in ("+", "-"):
            if self.advance()[0] == "-":
                sign = -1
        acc = self.parse_term()
        if sign < 0:
            acc = -acc
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            term = self.parse_term()
            acc = acc + term if op == "+" else acc - term
        return acc

    def parse_term(self) -> TruncatedPoly2:
        acc = self.parse_factor()
        while self.peek()[0] == "*":
            self.advance()
            acc = acc * self.parse_factor()
        return acc

    def parse_factor(self) -> TruncatedPoly2:
        base = self.parse_base()
        if self.peek()[0] == "^":
            self.advance()
            tok = self.expect("int")
            base = base ** int(tok[1])
        return base

    def parse_base(self) -> TruncatedPoly2:
        tok = self.advance()
        kind, value, pos = tok
        if kind == "int":
            num = int(value)
            if self.peek()[0] == "/":
                self.advance()
                den_tok = self.expect("int")
                den = int(den_tok[1])
                if den == 0:
                    raise GermParseError("zero denominator", den_tok[2])
                return TruncatedPoly2.const(Fraction(num, den), self.order)
            return TruncatedPoly2.const(Fraction(num), self.order)
        if kind == "ident":
            if value in ("x", "y"):
                return TruncatedPoly2.variable(value, self.order)
            if value in self.params:
                return TruncatedPoly2.const(self.params[value], self.order)
            raise GermParseError(f"unbound name {value!r}", pos)
        if kind == "(":
            inner = self.parse_expr()
            self.expect(")")
            return inner
        raise GermParseError(f"unexpected token {value!r}", pos)


def parse_poly(text: str, order: int = 6, params=None) -> TruncatedPoly2:
    """Parse a single expression into a truncated polynomial."""
    parser = _Parser(text, order, params)
    poly = parser.parse_expr()
    tok = parser.peek()
    if tok[0] != "eof":
        raise GermParseError(f"trailing input {tok[1]!r}", tok[2])
    return poly


def parse_map_germ(text: str, order: int = 6, params=None) -> MapGermR4:
    """Parse a 4-component germ expression, exactly expanded and truncated.

    ``params`` binds extra identifiers (sweep-template parameters) to exact
    rational values.  Raises ``GermParseError`` for syntax problems and
    ``ValueError`` when the germ is not based at the origin or ``order < 2``.
    """
    if order < 2:
        raise ValueError(f"jet order must be at least 2, got {order}")
    comps = _Parser(text, order, params).parse_germ()
    for idx, p in enumerate(comps):
        if p.coefficient(0, 0) != 0:
            raise ValueError(
                f"component {idx + 1} has constant term {p.coefficient(0, 0)}; "
                "the germ must vanish at the origin"
            )
    return MapGermR4(comps)


def differentiate(p: TruncatedPoly2, var: str) -> TruncatedPoly2:
    """Formal partial derivative with respect to "x" or "y"."""
    return p.diff(var)


def template_parameters(text: str):
    """Names used in a germ template beyond the variables x and y."""
    names = set()
    for kind, value, _ in _tokenize(text):
        if kind == "ident" and value not in ("x", "y"):
            names.add(value)
    return sorted(names)


# ---------------------------------------------------------------------------
# 2-jet extraction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Jet2:
    """Raw degree-2 Taylor coefficients of components 2..4 of a prenormal germ.

    The (x^2, xy, y^2) coefficients of component i+1 are row i; no 1/2
    factors are applied.
    """

    a20: object
    a11: object
    a02: object
    b20: object
    b11: object
    b02: object
    c20: object
    c11: object
    c02: object

    def rows(self):
        return (
            (self.a20, self.a11, self.a02),
            (self.b20, self.b11, self.b02),
            (self.c20, self.c11, self.c02),
        )

    @property
    def is_exact(self) -> bool:
        return all(_is_exact(v) for row in self.rows() for v in row)


def extract_jet2(germ, jet_tol: float = 1e-10) -> Jet2:
    """Degree-2 coefficients of components 2..4 of a prenormal germ.

    Accepts a ``MapGermR4`` or anything with a ``germ`` attribute holding one
    (an adapted germ).  Raises ``ValueError`` if the germ is not prenormal.
    """
    g = getattr(germ, "germ", germ)
    tol = 0.0 if g.is_exact else jet_tol
    if not g.is_prenormal(tol):
        raise ValueError("germ is not in prenormal form (x, f2, f3, f4)")
    vals = []
    for p in g.components[1:]:
        vals.extend([p.coefficient(2, 0), p.coefficient(1, 1), p.coefficient(0, 2)])
    return Jet2(*vals)
