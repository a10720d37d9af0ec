"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial stores a map from exponent tuples to nonzero rational
coefficients together with the ambient variable count, so the zero
polynomial in three variables stays distinct from the one in one
variable.  Rational arithmetic is exact at arbitrary precision (gmpy2
when available, fractions.Fraction otherwise); floating point enters
only when a polynomial is evaluated at an inexact point.

Values are immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

import math
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Sequence, Tuple, Union

try:
    from gmpy2 import mpq as Rat

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - gmpy2 is a normal dependency
    Rat = Fraction
    HAVE_GMPY2 = False

# Exponent tuple, one nonnegative int per variable.
Monomial = Tuple[int, ...]

RatLike = Union["Rat", Fraction, int, str]


def is_exact(value) -> bool:
    """True for values that participate in exact rational arithmetic."""
    return isinstance(value, (int, Fraction, Rat)) and not isinstance(value, bool)


def to_rat(value: RatLike) -> Rat:
    """Coerce an int, Fraction, or string ("7", "2/3", "0.4") to a rational."""
    if isinstance(value, Rat):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational value")
    if isinstance(value, (int, Fraction)):
        return Rat(value)
    if isinstance(value, str):
        try:
            return Rat(Fraction(value.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse {value!r} as a rational") from exc
    raise TypeError(f"cannot interpret {type(value).__name__} as an exact rational")


def rat_str(value) -> str:
    """Canonical "num/den" form (the "/den" is omitted when den = 1)."""
    return str(to_rat(value))


class ParseError(ValueError):
    """Syntax or semantic error in a polynomial expression, with position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _grlex_key(mono: Monomial):
    # Graded order, and within a degree the earlier variables come first
    # (descending lexicographic on the exponent tuple).
    return (sum(mono), tuple(-e for e in mono))


class Polynomial:
    """Sparse multivariate polynomial with exact rational coefficients.

    ``dim`` is the ambient variable count; ``terms`` maps exponent tuples of
    length ``dim`` to nonzero rationals.  The zero polynomial has an empty
    term map.
    """

    __slots__ = ("dim", "_terms")

    def __init__(self, dim: int, terms: Union[Mapping, Iterable] = ()):
        if not isinstance(dim, int) or dim < 1:
            raise ValueError("dim must be a positive integer")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for mono, coeff in items:
            mono = tuple(mono)
            if len(mono) != dim:
                raise ValueError(f"monomial {mono} has length {len(mono)}, expected {dim}")
            if any((not isinstance(e, int)) or e < 0 for e in mono):
                raise ValueError(f"monomial {mono} has a non-natural exponent")
            coeff = to_rat(coeff)
            if coeff != 0:
                clean[mono] = clean.get(mono, Rat(0)) + coeff
                if clean[mono] == 0:
                    del clean[mono]
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "_terms", clean)

    @property
    def terms(self) -> Mapping[Monomial, Rat]:
        return MappingProxyType(self._terms)

    @classmethod
    def constant(cls, dim: int, value: RatLike) -> "Polynomial":
        return cls(dim, {(0,) * dim: to_rat(value)})

    @classmethod
    def variable(cls, dim: int, j: int) -> "Polynomial":
        """The polynomial Z_j (1-based index)."""
        if not 1 <= j <= dim:
            raise ValueError(f"variable index {j} out of range 1..{dim}")
        mono = tuple(1 if k == j - 1 else 0 for k in range(dim))
        return cls(dim, {mono: 1})

    def is_zero(self) -> bool:
        return not self._terms

    def constant_term(self) -> Rat:
        return self._terms.get((0,) * self.dim, Rat(0))

    def total_degree(self) -> int:
        """Max total degree over terms; 0 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=0)

    def degrees(self) -> Tuple[int, ...]:
        """Per-variable maximal degree."""
        degs = [0] * self.dim
        for mono in self._terms:
            for k, e in enumerate(mono):
                if e > degs[k]:
                    degs[k] = e
        return tuple(degs)

    def coefficient(self, mono: Sequence[int]) -> Rat:
        return self._terms.get(tuple(mono), Rat(0))

    # -- ring operations -----------------------------------------------

    def _check_dim(self, other: "Polynomial"):
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        if is_exact(other):
            other = Polynomial.constant(self.dim, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_dim(other)
        out = dict(self._terms)
        for mono, c in other._terms.items():
            s = out.get(mono, Rat(0)) + c
            if s == 0:
                out.pop(mono, None)
            else:
                out[mono] = s
        return Polynomial(self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.dim, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if is_exact(other):
            other = Polynomial.constant(self.dim, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if is_exact(other):
            c = to_rat(other)
            if c == 0:
                return Polynomial(self.dim)
            return Polynomial(self.dim, {m: v * c for m, v in self._terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_dim(other)
        out: dict = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                mono = tuple(x + y for x, y in zip(ma, mb))
                s = out.get(mono, Rat(0)) + ca * cb
                if s == 0:
                    out.pop(mono, None)
                else:
                    out[mono] = s
        return Polynomial(self.dim, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial power requires a nonnegative integer")
        result = Polynomial.constant(self.dim, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self):
        return hash((self.dim, frozenset(self._terms.items())))

    def __str__(self):
        return to_string(self)

    def __repr__(self):
        return f"Polynomial({self.dim}, {to_string(self)!r})"


def default_variables(dim: int) -> Tuple[str, ...]:
    return tuple(f"Z{k + 1}" for k in range(dim))


def to_string(p: Polynomial, variables: Optional[Sequence[str]] = None) -> str:
    """Canonical text form: graded-lex term order, "num/den" coefficients."""
    names = list(variables) if variables is not None else list(default_variables(p.dim))
    if len(names) != p.dim:
        raise ValueError("variable name list length must equal dim")
    if p.is_zero():
        return "0"
    pieces = []
    for mono in sorted(p._terms, key=_grlex_key):
        coeff = p._terms[mono]
        factors = [
            names[k] if e == 1 else f"{names[k]}^{e}"
            for k, e in enumerate(mono)
            if e > 0
        ]
        mag = abs(coeff)
        if not factors:
            body = rat_str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([rat_str(mag)] + factors)
        if not pieces:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(pieces)


# -- parsing -----------------------------------------------------------

_OPS = {"+", "-", "*", "^", "/", "(", ")"}


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
        elif ch == "*" and i + 1 < n and text[i + 1] == "*":
            tokens.append(("op", "^", i))
            i += 2
        elif ch in _OPS:
            tokens.append(("op", ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    """Recursive descent over +, -, *, ^ with integer/rational literals."""

    def __init__(self, text: str, variables: Sequence[str]):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.dim = len(variables)
        self.var_index = {name: k for k, name in enumerate(variables)}
        if len(self.var_index) != len(variables):
            raise ValueError("duplicate variable names")

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expression(self) -> Polynomial:
        sign = 1
        kind, text, at = self.peek()
        if kind == "op" and text in "+-":
            self.take()
            sign = -1 if text == "-" else 1
        result = self.term() * sign
        while True:
            kind, text, at = self.peek()
            if kind == "op" and text in "+-":
                self.take()
                rhs = self.term()
                result = result + rhs if text == "+" else result - rhs
            else:
                return result

    def term(self) -> Polynomial:
        result = self.factor()
        while True:
            kind, text, at = self.peek()
            if kind == "op" and text == "*":
                self.take()
                result = result * self.factor()
            else:
                return result

    def factor(self) -> Polynomial:
        base = self.base()
        kind, text, at = self.peek()
        if kind == "op" and text == "^":
            self.take()
            kind, text, at = self.peek()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer literal", at)
            self.take()
            return base ** int(text)
        return base

    def base(self) -> Polynomial:
        kind, text, at = self.take()
        if kind == "int":
            value = Rat(int(text))
            kind2, text2, at2 = self.peek()
            if kind2 == "op" and text2 == "/":
                self.take()
                kind3, text3, at3 = self.peek()
                if kind3 != "int":
                    raise ParseError("denominator must be an integer literal", at3)
                self.take()
                if int(text3) == 0:
                    raise ParseError("zero denominator", at3)
                value = value / int(text3)
            return Polynomial.constant(self.dim, value)
        if kind == "name":
            if text not in self.var_index:
                raise ParseError(f"unknown variable {text!r}", at)
            return Polynomial.variable(self.dim, self.var_index[text] + 1)
        if kind == "op" and text == "(":
            inner = self.expression()
            kind2, text2, at2 = self.take()
            if not (kind2 == "op" and text2 == ")"):
                raise ParseError("expected ')'", at2)
            return inner
        if kind == "op" and text == "-":
            return -self.factor()
        if kind == "op" and text == "+":
            return self.factor()
        raise ParseError(f"unexpected {text!r}" if text else "unexpected end of input", at)


def parse_polynomial(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse a +,-,*,^ expression in the declared variables.

    Rational literals are written "p/q"; '/' is not valid anywhere else.
    Round-trip through :func:`to_string` is the identity on canonical forms.
    """
    if not variables:
        raise ValueError("at least one variable is required")
    parser = _Parser(text, variables)
    result = parser.expression()
    kind, text2, at = parser.peek()
    if kind != "end":
        raise ParseError(f"unexpected {text2!r} after expression", at)
    return result


# -- spec operations ----------------------------------------------------

def evaluate(p: Polynomial, point: Sequence):
    """Evaluate at a point: exact Rat for exact inputs, complex otherwise."""
    if len(point) != p.dim:
        raise ValueError(f"point length {len(point)} != dim {p.dim}")
    if all(is_exact(v) for v in point):
        vals = [to_rat(v) for v in point]
        total = Rat(0)
        for mono, coeff in p._terms.items():
            term = coeff
            for v, e in zip(vals, mono):
                if e:
                    term = term * v ** e
            total += term
        return total
    zs = [complex(v) if not is_exact(v) else complex(float(to_rat(v)), 0.0) for v in point]
    total = 0j
    for mono, coeff in p._terms.items():
        term = complex(float(coeff), 0.0)
        for z, e in zip(zs, mono):
            if e:
                term *= z ** e
        total += term
    return total


def partial_derivative(p: Polynomial, j: int) -> Polynomial:
    """Formal partial derivative with respect to Z_j (1-based)."""
    if not 1 <= j <= p.dim:
        raise ValueError(f"variable index {j} out of range 1..{p.dim}")
    k = j - 1
    out = {}
    for mono, coeff in p._terms.items():
        e = mono[k]
        if e:
            lowered = mono[:k] + (e - 1,) + mono[k + 1:]
            out[lowered] = out.get(lowered, Rat(0)) + coeff * e
    return Polynomial(p.dim, out)


def scale_coordinates(p: Polynomial, factors: Sequence[RatLike]) -> Polynomial:
    """P(c_1 Z_1, ..., c_d Z_d), exactly."""
    if len(factors) != p.dim:
        raise ValueError(f"factor list length {len(factors)} != dim {p.dim}")
    cs = [to_rat(c) for c in factors]
    if any(c == 0 for c in cs):
        raise ValueError("scale factors must be nonzero")
    out = {}
    for mono, coeff in p._terms.items():
        scaled = coeff
        for c, e in zip(cs, mono):
            if e:
                scaled = scaled * c ** e
        out[mono] = scaled
    return Polynomial(p.dim, out)


def diagonal_restriction(p: Polynomial) -> Polynomial:
    """The univariate polynomial P(t, t, ..., t), as a dim-1 Polynomial."""
    out = {}
    for mono, coeff in p._terms.items():
        key = (sum(mono),)
        s = out.get(key, Rat(0)) + coeff
        if s == 0:
            out.pop(key, None)
        else:
            out[key] = s
    return Polynomial(1, out)


def is_symmetric(p: Polynomial) -> bool:
    """True iff P is invariant under every adjacent-variable transposition."""
    for k in range(p.dim - 1):
        for mono, coeff in p._terms.items():
            swapped = list(mono)
            swapped[k], swapped[k + 1] = swapped[k + 1], swapped[k]
            if p._terms.get(tuple(swapped)) != coeff:
                return False
    return True


def normalize_constant(p: Polynomial) -> Tuple[Polynomial, Rat]:
    """Return (P / P(0), P(0)); the first component has constant term 1."""
    c = p.constant_term()
    if c == 0:
        raise ValueError("constant term is zero (no power series at the origin)")
    return p * (Rat(1) / c), c


def primitive_part(p: Polynomial) -> Polynomial:
    """Integer-coprime rescaling of p with positive leading canonical term.

    The result differs from p by a positive or negative rational constant;
    for the zero polynomial it is p itself.
    """
    if p.is_zero():
        return p
    num_gcd = 0
    den_lcm = 1
    for coeff in p._terms.values():
        num_gcd = math.gcd(num_gcd, abs(int(coeff.numerator)))
        den_lcm = math.lcm(den_lcm, int(coeff.denominator))
    scale = Rat(den_lcm, num_gcd)
    first = min(p._terms, key=_grlex_key)
    if p._terms[first] < 0:
        scale = -scale
    return p * scale
