"""Sparse multivariate polynomials with exact rational coefficients.

Indeterminates come in a handful of named families, optionally carrying a
series number and/or a bracketed multi-index subscript::

    (y1^2)    y family, series 1, squared
    g1[0,1]   g family, series 1, subscript (0, 1)
    f[2,0]    f family, subscript (2, 0)
    a4        a family, series 4
    k[1]^3    k family, subscript (1,), cubed

A polynomial prints as a sum of terms ``15(y1)(y2^2) + 10(y1^2)(y3)``;
``parse_expression`` reads the same text back.  A global rational prefix
``1/120( ... )`` is accepted as well.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Union

__all__ = [
    "Assignments",
    "FAMILIES",
    "Indeterminate",
    "ParseError",
    "Polynomial",
    "UnboundIndeterminateError",
    "format_expression",
    "parse_assignments",
    "parse_expression",
    "parse_name",
    "evaluate_fully",
    "poly_add",
    "poly_eval",
    "poly_mul",
]

# display order of families inside a term
FAMILIES = ("a", "f", "y", "g", "k", "m", "p")
_FAMILY_RANK = {name: rank for rank, name in enumerate(FAMILIES)}
_PAREN_FAMILIES = {"y", "p"}

Number = Union[int, Fraction]


class ParseError(ValueError):
    """Malformed expression or assignment text."""

    def __init__(self, message: str, text: str = "", position: int = 0):
        self.text = text
        self.position = position
        if text:
            message = f"{message} at position {position}: {text[:position]}<HERE>{text[position:]}"
        super().__init__(message)


class UnboundIndeterminateError(KeyError):
    """Raised when a full numeric evaluation meets an unbound indeterminate."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(name)

    def __str__(self) -> str:
        return f"no value given for indeterminate {self.name}"


@dataclass(frozen=True)
class Indeterminate:
    family: str
    series: int | None = None
    subscript: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.family not in _FAMILY_RANK:
            raise ValueError(f"unknown indeterminate family {self.family!r}")
        if self.series is not None and self.series < 1:
            raise ValueError("series numbers start at 1")
        if self.family in ("y", "a") and self.subscript is not None:
            raise ValueError(f"family {self.family} takes no subscript")
        if self.family == "f" and self.series is not None:
            raise ValueError("family f takes no series number")

    def sort_key(self):
        return (
            _FAMILY_RANK[self.family],
            0 if self.series is None else self.series,
            () if self.subscript is None else self.subscript,
        )

    def __lt__(self, other: "Indeterminate") -> bool:
        return self.sort_key() < other.sort_key()

    @property
    def name(self) -> str:
        text = self.family + ("" if self.series is None else str(self.series))
        if self.subscript is not None:
            text += "[" + ",".join(map(str, self.subscript)) + "]"
        return text

    def __str__(self) -> str:
        return self.name

    def render(self, power: int = 1, parenthesize: bool = True) -> str:
        exponent = f"^{power}" if power != 1 else ""
        if self.subscript is None and self.family in _PAREN_FAMILIES and parenthesize:
            return f"({self.name}{exponent})"
        return self.name + exponent


Monomial = tuple[tuple[Indeterminate, int], ...]


def _monomial_key(mono: Monomial):
    ydeg = sum(p for ind, p in mono if ind.family == "y")
    return (-ydeg, tuple((ind.sort_key(), -p) for ind, p in mono))


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    raise TypeError(f"cannot use {value!r} as an exact coefficient")


class Polynomial:
    """Immutable sparse polynomial over the rationals.

    Build polynomials with ``Polynomial.var`` and ``Polynomial.const`` and the
    usual ``+ - *`` and integer ``**`` operators, or from text with
    ``parse_expression``.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Number] | None = None):
        clean: dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            coeff = _as_fraction(coeff)
            if coeff:
                clean[mono] = clean.get(mono, Fraction(0)) + coeff
                if not clean[mono]:
                    del clean[mono]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, Fraction]) -> "Polynomial":
        out = cls.__new__(cls)
        out._terms = terms
        out._hash = None
        return out

    @classmethod
    def const(cls, value) -> "Polynomial":
        return cls({(): value})

    @classmethod
    def var(cls, family: str | Indeterminate, series: int | None = None,
            subscript: Iterable[int] | None = None, power: int = 1) -> "Polynomial":
        if isinstance(family, Indeterminate):
            ind = family
        else:
            ind = Indeterminate(family, series, None if subscript is None else tuple(subscript))
        if power == 0:
            return cls.const(1)
        return cls._raw({((ind, power),): Fraction(1)})

    @classmethod
    def from_factors(cls, coefficient, factors: Mapping[Indeterminate, int]) -> "Polynomial":
        mono = tuple(sorted(((i, p) for i, p in factors.items() if p), key=lambda ip: ip[0].sort_key()))
        return cls({mono: coefficient})

    def terms(self) -> list[tuple[Fraction, Monomial]]:
        """``(coefficient, monomial)`` pairs in canonical order."""
        return [(self._terms[m], m) for m in sorted(self._terms, key=_monomial_key)]

    def __iter__(self) -> Iterator[tuple[Fraction, Monomial]]:
        return iter(self.terms())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((), Fraction(0))

    def coefficient(self, factors: Mapping[Indeterminate, int] | Monomial = ()) -> Fraction:
        if isinstance(factors, Mapping):
            factors = tuple(sorted(factors.items(), key=lambda ip: ip[0].sort_key()))
        return self._terms.get(tuple(factors), Fraction(0))

    def indeterminates(self) -> set[Indeterminate]:
        return {ind for mono in self._terms for ind, _ in mono}

    def degree(self, family: str | None = None) -> int:
        if not self._terms:
            return 0
        return max(sum(p for i, p in mono if family is None or i.family == family) for mono in self._terms)

    # arithmetic

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial.const(other)

    def __add__(self, other) -> "Polynomial":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for mono, c in other._terms.items():
            total = out.get(mono, 0) + c
            if total:
                out[mono] = total
            else:
                out.pop(mono, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            try:
                scale = _as_fraction(other)
            except TypeError:
                return NotImplemented
            if not scale:
                return Polynomial()
            return Polynomial._raw({m: c * scale for m, c in self._terms.items()})
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = _merge(m1, m2)
                total = out.get(mono, 0) + c1 * c2
                if total:
                    out[mono] = total
                else:
                    out.pop(mono, None)
        return Polynomial._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Polynomial":
        scale = _as_fraction(other)
        return self * (1 / scale)

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = Polynomial.const(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        try:
            return self._terms == Polynomial.const(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({format_expression(self)!r})"

    def __str__(self) -> str:
        return format_expression(self)

    # rewriting

    def map_terms(self, fn) -> "Polynomial":
        """Rebuild the polynomial term by term.

        ``fn(coefficient, factors)`` receives a ``{Indeterminate: power}``
        dict and returns a Polynomial (or number) replacing that term.
        """
        out = Polynomial()
        for mono, coeff in self._terms.items():
            out = out + fn(coeff, dict(mono))
        return out

    def substitute(self, values: Mapping[Indeterminate, object]) -> "Polynomial":
        """Replace indeterminates by numbers or polynomials."""
        if not values:
            return self
        values = {k: v if isinstance(v, Polynomial) else Polynomial.const(v) for k, v in values.items()}
        powers: dict[tuple[Indeterminate, int], Polynomial] = {}
        out: dict[Monomial, Fraction] = {}
        acc = Polynomial()
        for mono, coeff in self._terms.items():
            kept = []
            term = Polynomial.const(coeff)
            for ind, p in mono:
                if ind in values:
                    key = (ind, p)
                    if key not in powers:
                        powers[key] = values[ind] ** p
                    term = term * powers[key]
                else:
                    kept.append((ind, p))
            if len(kept) == len(mono):
                out[mono] = out.get(mono, 0) + coeff
                continue
            acc = acc + term * Polynomial._raw({tuple(kept): Fraction(1)})
        return Polynomial(out) + acc


def _merge(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    powers = dict(m1)
    for ind, p in m2:
        powers[ind] = powers.get(ind, 0) + p
    return tuple(sorted(powers.items(), key=lambda ip: ip[0].sort_key()))


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    return a + b


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


# text output


def _format_number(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_expression(poly: Polynomial, prefix: Number | None = None, parenthesize: bool = True) -> str:
    """Render ``poly`` as expression text.

    ``prefix`` pulls a global rational factor out front, giving the
    ``1/120( 360(y1)(y2^2) + ... )`` form; the body is ``poly / prefix``.
    With ``parenthesize`` false, y and p factors print bare (``2y^3``).
    """
    if prefix is not None:
        prefix = _as_fraction(prefix)
        if prefix != 1:
            body = format_expression(poly / prefix, parenthesize=parenthesize)
            return f"{_format_number(prefix)}( {body} )"
    if poly.is_zero():
        return "0"
    pieces = []
    for coeff, mono in poly.terms():
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        factors = "".join(ind.render(p, parenthesize) for ind, p in mono)
        if not factors:
            text = _format_number(magnitude)
        elif magnitude == 1:
            text = factors
        else:
            text = _format_number(magnitude) + factors
        if not pieces:
            pieces.append(("-" if negative else "") + text)
        else:
            pieces.append((" - " if negative else " + ") + text)
    return "".join(pieces)


# text input

_NAME_RE = re.compile(r"([a-z])(\d*)")
_NUMBER_RE = re.compile(r"\d+(?:\.\d*)?(?:[eE][-+]?\d+)?(?:/\d+)?|\.\d+(?:[eE][-+]?\d+)?")
_INT_RE = re.compile(r"\d+")
_PREFIX_RE = re.compile(r"\s*([-+]?\d+(?:/\d+)?)\(\s")


class _Reader:
    def __init__(self, text: str, pos: int = 0, end: int | None = None):
        self.text = text
        self.pos = pos
        self.end = len(text) if end is None else end

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.text, self.pos)

    def skip(self):
        while self.pos < self.end and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < self.end else ""

    def expect(self, char: str):
        if self.peek() != char:
            raise self.error(f"expected {char!r}")
        self.pos += 1

    def match(self, pattern: re.Pattern):
        m = pattern.match(self.text, self.pos, self.end)
        if m:
            self.pos = m.end()
        return m

    def integer(self) -> int:
        m = self.match(_INT_RE)
        if not m:
            raise self.error("expected an integer")
        return int(m.group())

    def name(self) -> Indeterminate:
        start = self.pos
        m = self.match(_NAME_RE)
        if not m or m.group(1) not in _FAMILY_RANK:
            self.pos = start
            raise self.error("expected an indeterminate name")
        series = int(m.group(2)) if m.group(2) else None
        subscript = None
        if self.peek() == "[":
            self.pos += 1
            parts = []
            while True:
                self.skip()
                parts.append(self.integer())
                self.skip()
                if self.peek() == ",":
                    self.pos += 1
                    continue
                self.expect("]")
                break
            subscript = tuple(parts)
        try:
            return Indeterminate(m.group(1), series, subscript)
        except ValueError as exc:
            self.pos = start
            raise self.error(str(exc)) from None

    def power(self) -> int:
        if self.peek() == "^":
            self.pos += 1
            return self.integer()
        return 1

    def factor(self) -> tuple[Indeterminate, int] | None:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            self.skip()
            ind = self.name()
            p = self.power()
            self.skip()
            self.expect(")")
            return ind, p
        if ch.isalpha():
            ind = self.name()
            return ind, self.power()
        return None

    def term(self) -> Polynomial:
        self.skip()
        coeff = Fraction(1)
        m = self.match(_NUMBER_RE)
        if m:
            coeff = Fraction(m.group())
        factors: dict[Indeterminate, int] = {}
        while True:
            got = self.factor()
            if got is None:
                break
            ind, p = got
            factors[ind] = factors.get(ind, 0) + p
        if not m and not factors:
            raise self.error("expected a term")
        return Polynomial.from_factors(coeff, factors)

    def expression(self) -> Polynomial:
        total = Polynomial()
        self.skip()
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        total = total + self.term() * sign
        while True:
            self.skip()
            if self.pos >= self.end:
                return total
            ch = self.peek()
            if ch not in "+-":
                raise self.error("expected '+' or '-'")
            self.pos += 1
            total = total + self.term() * (-1 if ch == "-" else 1)


def parse_expression(text: str) -> Polynomial:
    """Parse expression text into a Polynomial.

    Accepts everything ``format_expression`` writes, the bare ``2y^3`` style
    and a global ``c( ... )`` prefix.

    Raises
    ------
    ParseError
        With the offending position, on malformed input.
    """
    prefix = Fraction(1)
    start, end = 0, len(text)
    m = _PREFIX_RE.match(text)
    if m and text.rstrip().endswith(")"):
        prefix = Fraction(m.group(1))
        start = m.end()
        end = len(text.rstrip()) - 1
    reader = _Reader(text, start, end)
    body = reader.expression()
    return body * prefix if prefix != 1 else body


def parse_name(text: str) -> Indeterminate:
    reader = _Reader(text.strip())
    ind = reader.name()
    if reader.pos != reader.end:
        raise reader.error("unexpected trailing characters")
    return ind


# assignments


class Assignments(Mapping[Indeterminate, Fraction]):
    """Numeric values bound to indeterminates.

    Values are stored exactly.  ``decimal`` records whether any value was
    written as a decimal, in which case full evaluations return floats.
    """

    def __init__(self, values: Mapping | None = None, decimal: bool | None = None):
        bound: dict[Indeterminate, Fraction] = {}
        saw_float = False
        for key, value in (values or {}).items():
            ind = key if isinstance(key, Indeterminate) else parse_name(str(key))
            if ind in bound:
                raise ValueError(f"duplicate binding for {ind}")
            if isinstance(value, float):
                saw_float = True
            bound[ind] = _as_fraction(value) if not isinstance(value, str) else Fraction(value)
        self._values = bound
        self.decimal = saw_float if decimal is None else decimal

    def __getitem__(self, key) -> Fraction:
        if not isinstance(key, Indeterminate):
            key = parse_name(str(key))
        return self._values[key]

    def __iter__(self):
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}={_format_number(v)}" for k, v in self._values.items())
        return f"Assignments({inner})"


_VALUE_RE = re.compile(r"\s*([-+]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][-+]?\d+)?(?:/\d+)?)\s*")


def parse_assignments(text: str) -> Assignments:
    """Parse ``"g1[0,1]=-2.1, g1[1,0]=2, y1=5"`` style bindings.

    Raises
    ------
    ParseError
        On a malformed pair or a name bound twice.
    """
    values: dict[Indeterminate, Fraction] = {}
    decimal = False
    reader = _Reader(text)
    reader.skip()
    if reader.pos >= reader.end:
        return Assignments()
    while True:
        reader.skip()
        start = reader.pos
        ind = reader.name()
        reader.skip()
        reader.expect("=")
        m = reader.match(_VALUE_RE)
        if not m:
            raise reader.error("expected a numeric value")
        literal = m.group(1)
        if ind in values:
            raise ParseError(f"duplicate binding for {ind}", text, start)
        values[ind] = Fraction(literal)
        if "." in literal or "e" in literal.lower():
            decimal = True
        if reader.pos >= reader.end:
            break
        reader.expect(",")
    return Assignments(values, decimal=decimal)


def poly_eval(poly: Polynomial, values: Assignments | Mapping) -> Polynomial | Fraction | float:
    """Substitute bound indeterminates.

    Returns a number when every indeterminate of ``poly`` is bound (an exact
    Fraction, or a float when a binding was written as a decimal), otherwise
    the residual polynomial.
    """
    if not isinstance(values, Assignments):
        values = Assignments(values)
    if not values:
        return poly
    residual = poly.substitute({ind: v for ind, v in values.items() if ind in poly.indeterminates()})
    if residual.is_constant():
        value = residual.constant_value()
        return float(value) if values.decimal else value
    return residual


def evaluate_fully(poly: Polynomial, values: Assignments | Mapping) -> Fraction | float:
    """Like ``poly_eval`` but every indeterminate must be bound."""
    if not isinstance(values, Assignments):
        values = Assignments(values)
    missing = sorted(poly.indeterminates() - set(values))
    if missing:
        raise UnboundIndeterminateError(missing[0].name)
    value = poly.substitute(dict(values)).constant_value()
    return float(value) if values.decimal else value
