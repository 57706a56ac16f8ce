"""Integer data of generalized Bott manifolds.

An ``m``-stage tower is given by fiber dimensions ``n_1..n_m`` and, for
every pair ``j < i``, an exponent vector ``a_{i,j}`` of length ``n_i``.
Two-stage towers get their own lightweight type, :class:`TwoStageSpec`,
written ``B(n1;a1,...,an2)``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence


class DimensionMismatchError(ValueError):
    """Raised when a coefficient block does not fit the fiber dimensions."""

    def __init__(self, message: str, block: tuple[int, int] | None = None):
        super().__init__(message)
        self.block = block


class SpecParseError(ValueError):
    """Syntax error in the ``B(n1;a1,...)`` grammar or the JSON format."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class GeneralizedBottMatrix:
    fiber_dims: tuple[int, ...]
    coeffs: Mapping[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "fiber_dims", tuple(int(n) for n in self.fiber_dims))
        object.__setattr__(
            self,
            "coeffs",
            {(int(i), int(j)): tuple(int(x) for x in vec) for (i, j), vec in self.coeffs.items()},
        )

    @property
    def stages(self) -> int:
        return len(self.fiber_dims)

    @property
    def dimension(self) -> int:
        return sum(self.fiber_dims)

    def n(self, i: int) -> int:
        """Fiber dimension of stage ``i`` (1-based)."""
        return self.fiber_dims[i - 1]

    def a(self, i: int, j: int) -> tuple[int, ...]:
        """Exponent vector ``a_{i,j}`` for ``j < i`` (1-based)."""
        return self.coeffs[(i, j)]

    def is_product(self) -> bool:
        return all(x == 0 for vec in self.coeffs.values() for x in vec)

    def __hash__(self):
        return hash((self.fiber_dims, tuple(sorted(self.coeffs.items()))))

    def to_json(self) -> dict:
        return {
            "fiber_dims": list(self.fiber_dims),
            "coeffs": [
                {"i": i, "j": j, "vec": list(vec)} for (i, j), vec in sorted(self.coeffs.items())
            ],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> GeneralizedBottMatrix:
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise SpecParseError(exc.msg, exc.lineno, exc.colno) from None
        try:
            dims = [int(n) for n in data["fiber_dims"]]
            coeffs: dict[tuple[int, int], tuple[int, ...]] = {}
            for entry in data.get("coeffs", []):
                key = (int(entry["i"]), int(entry["j"]))
                if key in coeffs:
                    raise DimensionMismatchError(f"block {key} given twice", key)
                coeffs[key] = tuple(int(x) for x in entry["vec"])
        except (KeyError, TypeError) as exc:
            raise SpecParseError(f"malformed generalized Bott matrix JSON: {exc}") from None
        gbm = cls(tuple(dims), coeffs)
        validate(gbm)
        return gbm


def validate(gbm: GeneralizedBottMatrix) -> None:
    """Check the shape invariants; raise :class:`DimensionMismatchError`."""
    m = gbm.stages
    if m < 1:
        raise DimensionMismatchError("a tower needs at least one stage")
    for i, n in enumerate(gbm.fiber_dims, start=1):
        if n < 1:
            raise DimensionMismatchError(f"fiber dimension n_{i} = {n} is not positive")
    for key in gbm.coeffs:
        i, j = key
        if not 1 <= j < i <= m:
            raise DimensionMismatchError(f"block (i={i}, j={j}) is outside 1 <= j < i <= {m}", key)
    for i in range(2, m + 1):
        for j in range(1, i):
            if (i, j) not in gbm.coeffs:
                raise DimensionMismatchError(f"block (i={i}, j={j}) is missing", (i, j))
            vec = gbm.coeffs[(i, j)]
            if len(vec) != gbm.n(i):
                raise DimensionMismatchError(
                    f"block (i={i}, j={j}) has length {len(vec)}, expected n_{i} = {gbm.n(i)}",
                    (i, j),
                )


@dataclass(frozen=True)
class TwoStageSpec:
    """The tower ``P(C + gamma^a1 + ... + gamma^an2)`` over ``CP^n1``."""

    n1: int
    a: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "n1", int(self.n1))
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        if self.n1 < 1:
            raise DimensionMismatchError(f"n1 = {self.n1} is not positive")
        if not self.a:
            raise DimensionMismatchError("exponent vector must be nonempty (n2 >= 1)", (2, 1))

    @property
    def n2(self) -> int:
        return len(self.a)

    @property
    def type_pair(self) -> tuple[int, int]:
        return (self.n1, self.n2)

    @property
    def dimension(self) -> int:
        return self.n1 + self.n2

    @property
    def is_normalized(self) -> bool:
        return min(self.a) >= 0

    def is_product(self) -> bool:
        return canonical_form(self).is_product

    def to_matrix(self) -> GeneralizedBottMatrix:
        return GeneralizedBottMatrix((self.n1, self.n2), {(2, 1): self.a})

    @classmethod
    def from_matrix(cls, gbm: GeneralizedBottMatrix) -> TwoStageSpec:
        validate(gbm)
        if gbm.stages != 2:
            raise DimensionMismatchError(f"expected a two-stage tower, got {gbm.stages} stages")
        return cls(gbm.n(1), gbm.a(2, 1))

    def __str__(self) -> str:
        return f"B({self.n1};{','.join(str(x) for x in self.a)})"

    @classmethod
    def parse(cls, text: str) -> TwoStageSpec:
        return parse_spec(text)


@dataclass(frozen=True, order=True)
class CanonicalForm:
    type_pair: tuple[int, int]
    sorted_a: tuple[int, ...]
    is_product: bool

    def to_spec(self) -> TwoStageSpec:
        return TwoStageSpec(self.type_pair[0], self.sorted_a)

    def __str__(self) -> str:
        return str(self.to_spec())


def normalize(spec: TwoStageSpec) -> TwoStageSpec:
    """Twist so that the exponents are nonnegative with minimum 0.

    The full multiset ``{0, a1, ..., an2}`` is shifted by its minimum and
    one zero is dropped; the result describes an isomorphic variety.
    """
    shift = normalization_shift(spec)
    if shift == 0:
        return spec
    # the trivial summand takes the slot of the (first) minimal exponent
    shifted = [x - shift for x in (0, *spec.a)]
    shifted.remove(0)
    return TwoStageSpec(spec.n1, tuple(shifted))


def normalization_shift(spec: TwoStageSpec) -> int:
    """The ``d <= 0`` with ``normalize`` sending exponents ``a_k`` to ``a_k - d``."""
    return min(0, *spec.a)


def canonical_form(spec: TwoStageSpec) -> CanonicalForm:
    norm = normalize(spec)
    sorted_a = tuple(sorted(norm.a))
    if all(x == 0 for x in sorted_a):
        lo, hi = sorted(norm.type_pair)
        return CanonicalForm((lo, hi), (0,) * hi, True)
    return CanonicalForm(norm.type_pair, sorted_a, False)


def elementary_symmetric(values: Sequence[int], r: int) -> int:
    """``e_r(values)``: the sum over ``r``-subsets of products."""
    if not 1 <= r <= len(values):
        raise ValueError(f"r = {r} out of range 1..{len(values)}")
    # coefficients of prod(1 + b t), truncated at t^r
    coeffs = [1] + [0] * r
    for b in values:
        for k in range(r, 0, -1):
            coeffs[k] += b * coeffs[k - 1]
    return coeffs[r]


def elementary_symmetric_all(values: Sequence[int]) -> tuple[int, ...]:
    return tuple(elementary_symmetric(values, r) for r in range(1, len(values) + 1))


_SPEC = re.compile(r"\s*B\s*\(\s*")


def parse_spec(text: str) -> TwoStageSpec:
    """Parse ``B(<n1>;<a1>,...,<an2>)``, reporting line and column on error."""

    def where(pos: int) -> tuple[int, int]:
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def fail(msg: str, pos: int):
        raise SpecParseError(msg, *where(pos))

    pos = 0

    def skip_ws():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def expect(ch: str):
        nonlocal pos
        skip_ws()
        if pos >= len(text) or text[pos] != ch:
            found = repr(text[pos]) if pos < len(text) else "end of input"
            fail(f"expected {ch!r}, found {found}", pos)
        pos += 1

    def integer() -> int:
        nonlocal pos
        skip_ws()
        start = pos
        if pos < len(text) and text[pos] in "+-":
            pos += 1
        digits = pos
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        if pos == digits:
            found = repr(text[start]) if start < len(text) else "end of input"
            fail(f"expected an integer, found {found}", start)
        return int(text[start:pos])

    expect("B")
    expect("(")
    n1_pos = pos
    n1 = integer()
    if n1 < 1:
        fail(f"n1 must be positive, got {n1}", n1_pos)
    expect(";")
    a = [integer()]
    skip_ws()
    while pos < len(text) and text[pos] == ",":
        pos += 1
        a.append(integer())
        skip_ws()
    expect(")")
    skip_ws()
    if pos != len(text):
        fail(f"trailing input {text[pos:]!r}", pos)
    return TwoStageSpec(n1, tuple(a))


def load_tower(text: str) -> GeneralizedBottMatrix:
    """Accept either the two-stage grammar or inline/file JSON for general ``m``."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return GeneralizedBottMatrix.from_json(stripped)
    if stripped.startswith("B"):
        return parse_spec(text).to_matrix()
    try:
        with open(text, encoding="utf-8") as fh:
            return GeneralizedBottMatrix.from_json(fh.read())
    except FileNotFoundError:
        raise SpecParseError(f"not a B(...) spec, JSON object, or readable file: {text!r}") from None

