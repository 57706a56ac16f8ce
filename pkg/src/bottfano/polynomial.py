"""Sparse multivariate polynomials with exact integer coefficients."""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Sequence

Exponents = tuple[int, ...]


class IntPolynomial:
    """Immutable polynomial in ``x1, ..., xm`` over the integers.

    Terms are stored as a mapping from exponent tuples to nonzero ``int``
    coefficients. Python ints are arbitrary precision, so all arithmetic
    is exact.
    """

    __slots__ = ("_terms", "_nvars", "_hash")

    def __init__(self, terms: Mapping[Exponents, int] | None = None, nvars: int = 0):
        clean: dict[Exponents, int] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} does not have {nvars} entries")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            if coeff:
                clean[exps] = clean.get(exps, 0) + int(coeff)
        self._terms = {k: v for k, v in clean.items() if v}
        self._nvars = nvars
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Exponents, int], nvars: int) -> IntPolynomial:
        # trusted constructor: terms already clean
        poly = cls.__new__(cls)
        poly._terms = terms
        poly._nvars = nvars
        poly._hash = None
        return poly

    @classmethod
    def constant(cls, c: int, nvars: int) -> IntPolynomial:
        return cls._raw({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def variable(cls, i: int, nvars: int) -> IntPolynomial:
        """The generator ``x_i`` (1-based)."""
        if not 1 <= i <= nvars:
            raise ValueError(f"variable index {i} out of range 1..{nvars}")
        exps = [0] * nvars
        exps[i - 1] = 1
        return cls._raw({tuple(exps): 1}, nvars)

    @classmethod
    def linear(cls, coeffs: Sequence[int]) -> IntPolynomial:
        """``sum(c_i * x_i)`` for the given coefficient vector."""
        nvars = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                exps = [0] * nvars
                exps[i] = 1
                terms[tuple(exps)] = int(c)
        return cls._raw(terms, nvars)

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> dict[Exponents, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, exps: Iterable[int]) -> int:
        return self._terms.get(tuple(exps), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        """Total degree in the generators; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def homogeneous_part(self, deg: int) -> IntPolynomial:
        return IntPolynomial._raw(
            {e: c for e, c in self._terms.items() if sum(e) == deg}, self._nvars
        )

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def _check(self, other: IntPolynomial) -> None:
        if other._nvars != self._nvars:
            raise ValueError(
                f"polynomials in {self._nvars} and {other._nvars} variables do not mix"
            )

    def _coerce(self, other) -> IntPolynomial:
        if isinstance(other, IntPolynomial):
            self._check(other)
            return other
        if isinstance(other, int):
            return IntPolynomial.constant(other, self._nvars)
        return NotImplemented

    def __add__(self, other) -> IntPolynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return IntPolynomial._raw(out, self._nvars)

    __radd__ = __add__

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial._raw({e: -c for e, c in self._terms.items()}, self._nvars)

    def __sub__(self, other) -> IntPolynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> IntPolynomial:
        return (-self) + other

    def __mul__(self, other) -> IntPolynomial:
        if isinstance(other, int):
            if not other:
                return IntPolynomial._raw({}, self._nvars)
            return IntPolynomial._raw({e: c * other for e, c in self._terms.items()}, self._nvars)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponents, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return IntPolynomial._raw({e: c for e, c in out.items() if c}, self._nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IntPolynomial:
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = IntPolynomial.constant(1, self._nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPolynomial.constant(other, self._nvars)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self._nvars == other._nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._nvars, frozenset(self._terms.items())))
        return self._hash

    def substitute(self, images: Sequence[IntPolynomial]) -> IntPolynomial:
        """Ring map sending ``x_i`` to ``images[i-1]``."""
        if len(images) != self._nvars:
            raise ValueError(f"need {self._nvars} images, got {len(images)}")
        target_nvars = images[0].nvars if images else 0
        result = IntPolynomial._raw({}, target_nvars)
        powers: list[dict[int, IntPolynomial]] = [{} for _ in images]
        for exps, coeff in self._terms.items():
            term = IntPolynomial.constant(coeff, target_nvars)
            for i, e in enumerate(exps):
                if e:
                    cached = powers[i].get(e)
                    if cached is None:
                        cached = powers[i][e] = images[i] ** e
                    term = term * cached
            result = result + term
        return result

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"IntPolynomial({format_polynomial(self)!r}, nvars={self._nvars})"

    @classmethod
    def parse(cls, text: str, nvars: int) -> IntPolynomial:
        return parse_polynomial(text, nvars)


def format_monomial(exps: Exponents) -> str:
    parts = []
    for i, e in enumerate(exps, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


def format_polynomial(poly: IntPolynomial) -> str:
    """Render as e.g. ``2*x1*x2^2 - x1^2*x2``.

    Terms are ordered by total degree, then by the text of the monomial.
    """
    if poly.is_zero():
        return "0"
    keyed = sorted(((sum(e), format_monomial(e)), c) for e, c in poly.items())
    out = []
    for idx, ((_, mono), coeff) in enumerate(keyed):
        mag = abs(coeff)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if idx == 0:
            out.append(("-" if coeff < 0 else "") + body)
        else:
            out.append(("- " if coeff < 0 else "+ ") + body)
    return " ".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|x(\d+)|(\^)|(\*)|([+-])|(\()|(\)))")


class PolynomialParseError(ValueError):
    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.column = column


def parse_polynomial(text: str, nvars: int) -> IntPolynomial:
    """Parse the output of :func:`format_polynomial` (and a bit more).

    Accepts integer constants, generators ``x1..xm``, ``+ - * ^`` and
    parentheses. Exponents must be nonnegative integer literals.
    """
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            while text[pos].isspace():
                pos += 1
            raise PolynomialParseError(f"unexpected character {text[pos]!r}", pos + 1)
        start = m.end() - len(m.group(0).lstrip())
        kind = ("int", "var", "^", "*", "sign", "(", ")")[m.lastindex - 1]
        tokens.append((kind, m.group(m.lastindex), start + 1))
        pos = m.end()
    tokens.append(("end", "", len(text) + 1))
    idx = 0

    def peek():
        return tokens[idx]

    def take(kind=None):
        nonlocal idx
        tok = tokens[idx]
        if kind is not None and tok[0] != kind:
            raise PolynomialParseError(f"expected {kind}, found {tok[1] or 'end of input'!r}", tok[2])
        idx += 1
        return tok

    def expr():
        result = IntPolynomial.constant(0, nvars)
        sign = 1
        if peek()[0] == "sign":
            sign = -1 if take()[1] == "-" else 1
        result = result + term() * sign
        while peek()[0] == "sign":
            sign = -1 if take()[1] == "-" else 1
            result = result + term() * sign
        return result

    def term():
        result = power()
        while peek()[0] == "*":
            take()
            result = result * power()
        return result

    def power():
        base = atom()
        if peek()[0] == "^":
            take()
            exp = int(take("int")[1])
            base = base ** exp
        return base

    def atom():
        kind, value, col = peek()
        if kind == "int":
            take()
            return IntPolynomial.constant(int(value), nvars)
        if kind == "var":
            take()
            i = int(value)
            if not 1 <= i <= nvars:
                raise PolynomialParseError(f"x{i} is not one of x1..x{nvars}", col)
            return IntPolynomial.variable(i, nvars)
        if kind == "(":
            take()
            inner = expr()
            take(")")
            return inner
        raise PolynomialParseError(f"unexpected {value or 'end of input'!r}", col)

    result = expr()
    if peek()[0] != "end":
        tok = peek()
        raise PolynomialParseError(f"trailing input {tok[1]!r}", tok[2])
    return result
