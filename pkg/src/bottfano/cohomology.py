"""Integral cohomology ring of a generalized Bott manifold.

``H^*(B) = Z[x_1..x_m] / < x_1^{n_1+1}, x_i prod_k (x_i - alpha_i^k) >``
with ``alpha_i^k = sum_{j<i} a_{i,j}^k x_j``. Under lex order with
``x_1 < ... < x_m`` the leading monomial of the ``i``-th relation is
``x_i^{n_i+1}``; these are pairwise coprime, so rewriting
``x_i^{n_i+1} -> x_i^{n_i+1} - r_i`` is confluent and every class has a
unique representative with all exponents ``k_i <= n_i``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .gbm import GeneralizedBottMatrix, TwoStageSpec, validate
from .polynomial import Exponents, IntPolynomial


def alpha(gbm: GeneralizedBottMatrix, i: int, k: int) -> IntPolynomial:
    """``alpha_i^k = sum_{j<i} a_{i,j}^k x_j``."""
    coeffs = [0] * gbm.stages
    for j in range(1, i):
        coeffs[j - 1] = gbm.a(i, j)[k - 1]
    return IntPolynomial.linear(coeffs)


def relations(gbm: GeneralizedBottMatrix) -> list[IntPolynomial]:
    validate(gbm)
    m = gbm.stages
    rels = [IntPolynomial.variable(1, m) ** (gbm.n(1) + 1)]
    for i in range(2, m + 1):
        xi = IntPolynomial.variable(i, m)
        r = xi
        for k in range(1, gbm.n(i) + 1):
            r = r * (xi - alpha(gbm, i, k))
        rels.append(r)
    return rels


class CohomologyRing:
    """Quotient ring with cached rewriting data for :func:`normal_form`."""

    def __init__(self, gbm: GeneralizedBottMatrix):
        validate(gbm)
        self.gbm = gbm
        self.m = gbm.stages
        self.fiber_dims = gbm.fiber_dims
        self.relations = tuple(relations(gbm))
        # x_i^{n_i+1} == tail_i in the quotient
        self._tails = []
        for i, rel in enumerate(self.relations, start=1):
            lead = [0] * self.m
            lead[i - 1] = gbm.n(i) + 1
            lead = tuple(lead)
            if rel.coefficient(lead) != 1:
                raise AssertionError(f"relation {i} is not monic in x{i}")
            tail = {e: -c for e, c in rel.items() if e != lead}
            self._tails.append(tail)

    def __repr__(self):
        return f"CohomologyRing({self.gbm.fiber_dims})"

    @property
    def rank(self) -> int:
        total = 1
        for n in self.fiber_dims:
            total *= n + 1
        return total

    def is_reduced(self, exps: Exponents) -> bool:
        return all(e <= n for e, n in zip(exps, self.fiber_dims))

    def generator(self, i: int) -> IntPolynomial:
        return IntPolynomial.variable(i, self.m)

    def zero(self) -> IntPolynomial:
        return IntPolynomial.constant(0, self.m)

    def one(self) -> IntPolynomial:
        return IntPolynomial.constant(1, self.m)

    def _rewrite(self, exps: Exponents, coeff: int, i: int, out: dict) -> None:
        """Replace one factor ``x_i^{n_i+1}`` of ``coeff * x^exps``; add into ``out``."""
        base = list(exps)
        base[i] -= self.fiber_dims[i] + 1
        for te, tc in self._tails[i].items():
            e = tuple(a + b for a, b in zip(base, te))
            v = out.get(e, 0) + coeff * tc
            if v:
                out[e] = v
            else:
                out.pop(e, None)

    def reduce(self, poly: IntPolynomial, strategy: str = "sweep") -> IntPolynomial:
        """Normal form of ``poly``.

        ``sweep`` clears variables from ``x_m`` down to ``x_1``; tails of
        ``r_i`` only involve ``x_1..x_i`` so a finished variable stays
        finished. ``lowest`` and ``highest`` rewrite one term at a time,
        always choosing the lowest (highest) reducible variable; they exist
        to check that the result does not depend on the order.
        """
        if poly.nvars != self.m:
            raise ValueError(f"polynomial has {poly.nvars} variables, ring has {self.m}")
        if strategy == "sweep":
            return self._reduce_sweep(poly)
        if strategy not in ("lowest", "highest"):
            raise ValueError(f"unknown reduction strategy {strategy!r}")
        terms = poly.terms
        while True:
            pick = None
            for exps in terms:
                bad = [i for i in range(self.m) if exps[i] > self.fiber_dims[i]]
                if bad:
                    i = bad[0] if strategy == "lowest" else bad[-1]
                    pick = (exps, i)
                    break
            if pick is None:
                return IntPolynomial._raw(terms, self.m)
            exps, i = pick
            coeff = terms.pop(exps)
            self._rewrite(exps, coeff, i, terms)

    def _reduce_sweep(self, poly: IntPolynomial) -> IntPolynomial:
        terms = poly.terms
        for i in range(self.m - 1, -1, -1):
            cap = self.fiber_dims[i]
            while True:
                todo = [e for e in terms if e[i] > cap]
                if not todo:
                    break
                for exps in todo:
                    coeff = terms.pop(exps, 0)
                    if coeff:
                        self._rewrite(exps, coeff, i, terms)
        return IntPolynomial._raw(terms, self.m)

    def multiply(self, p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
        return self.reduce(p * q)

    def power(self, p: IntPolynomial, k: int) -> IntPolynomial:
        result = self.one()
        for _ in range(k):
            result = self.reduce(result * p)
        return result

    def basis(self, degree: int | None = None) -> list[IntPolynomial]:
        """Reduced monomials, optionally only those of the given total degree."""
        out = []
        for exps in product(*(range(n + 1) for n in self.fiber_dims)):
            if degree is None or sum(exps) == degree:
                out.append(IntPolynomial._raw({exps: 1}, self.m))
        out.sort(key=lambda p: (p.degree(), str(p)))
        return out

    def top_monomial(self) -> Exponents:
        return tuple(self.fiber_dims)


@lru_cache(maxsize=512)
def ring_of(gbm: GeneralizedBottMatrix) -> CohomologyRing:
    return CohomologyRing(gbm)


def _ring(obj) -> CohomologyRing:
    if isinstance(obj, CohomologyRing):
        return obj
    if isinstance(obj, TwoStageSpec):
        obj = obj.to_matrix()
    return ring_of(obj)


def normal_form(p: IntPolynomial, ring, strategy: str = "sweep") -> IntPolynomial:
    return _ring(ring).reduce(p, strategy)


def multiply(p: IntPolynomial, q: IntPolynomial, ring) -> IntPolynomial:
    return _ring(ring).multiply(p, q)


def c1(gbm) -> IntPolynomial:
    """First Chern class ``sum (n_i+1) x_i - sum_{i>=2} sum_k alpha_i^k``."""
    if isinstance(gbm, TwoStageSpec):
        gbm = gbm.to_matrix()
    validate(gbm)
    m = gbm.stages
    coeffs = [n + 1 for n in gbm.fiber_dims]
    for i in range(2, m + 1):
        for j in range(1, i):
            coeffs[j - 1] -= sum(gbm.a(i, j))
    return IntPolynomial.linear(coeffs)


def total_chern(gbm) -> IntPolynomial:
    """Total Chern class, reduced in the cohomology ring."""
    ring = _ring(gbm)
    gbm = ring.gbm
    m = ring.m
    one = ring.one()
    x = [ring.generator(i) for i in range(1, m + 1)]
    factors = [one + x[0]] * (gbm.n(1) + 1)
    for i in range(2, m + 1):
        factors.append(one + x[i - 1])
        for k in range(1, gbm.n(i) + 1):
            factors.append(one + x[i - 1] - alpha(gbm, i, k))
    result = one
    for f in factors:
        result = ring.reduce(result * f)
    return result


def additive_basis(gbm, cohomological_degree: int) -> list[IntPolynomial]:
    ring = _ring(gbm)
    n = sum(ring.fiber_dims)
    if cohomological_degree % 2 or not 0 <= cohomological_degree <= 2 * n:
        raise ValueError(f"cohomological degree must be even and within 0..{2 * n}")
    return ring.basis(cohomological_degree // 2)


# ---------------------------------------------------------------------------
# two-variable fast path: binary forms of a fixed degree


@lru_cache(maxsize=None)
def _monomial_reductions(spec: TwoStageSpec, degree: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """For ``i = 0..degree``: normal form of ``x1^(degree-i) x2^i`` as sparse
    ``(basis index, coeff)`` pairs over the reduced monomials of that degree."""
    ring = _ring(spec)
    basis = [next(iter(b.terms)) for b in ring.basis(degree)]
    index = {e: k for k, e in enumerate(basis)}
    out = []
    for i in range(degree + 1):
        mono = IntPolynomial._raw({(degree - i, i): 1}, 2)
        red = ring.reduce(mono)
        out.append(tuple(sorted((index[e], c) for e, c in red.items())))
    return tuple(out)


def binary_form_product(linear_forms) -> list[int]:
    """Coefficients (by power of ``x2``) of a product of ``(u x1 + w x2)`` factors."""
    coeffs = [1]
    for u, w in linear_forms:
        nxt = [0] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            if c:
                nxt[k] += c * u
                nxt[k + 1] += c * w
        coeffs = nxt
    return coeffs


def binary_form_vanishes(spec: TwoStageSpec, coeffs: list[int]) -> bool:
    """Whether ``sum_i coeffs[i] x1^(d-i) x2^i`` is zero in ``H^*(spec)``."""
    degree = len(coeffs) - 1
    if degree > spec.dimension:
        return True
    acc: dict[int, int] = {}
    for c, red in zip(coeffs, _monomial_reductions(spec, degree)):
        if c:
            for k, v in red:
                acc[k] = acc.get(k, 0) + c * v
    return not any(acc.values())


def nilpotent_degree2(spec: TwoStageSpec, power: int, bound: int) -> list[IntPolynomial]:
    """Nonzero ``y = p x1 + q x2`` with ``|p|, |q| <= bound`` and ``y^power = 0``."""
    if power < 1 or bound < 1:
        raise ValueError("power and bound must be positive")
    out = []
    for p in range(-bound, bound + 1):
        for q in range(-bound, bound + 1):
            if (p, q) == (0, 0):
                continue
            if binary_form_vanishes(spec, binary_form_product([(p, q)] * power)):
                out.append(IntPolynomial.linear((p, q)))
    return out
