"""Isomorphism decisions for two-stage generalized Bott manifolds.

A graded ring map ``H^*(source) -> H^*(target)`` is fixed by where it sends
the degree-2 generators. A witness stores this as a 2x2 integer matrix
whose row ``i`` holds the target coordinates of the image of source ``x_i``.

Two independent routes are provided: :func:`ring_iso_search` scans every
unimodular matrix in a box, and :func:`decide_c1_iso` applies the
structural argument for Fano inputs (product detection, type rigidity,
elementary symmetric invariants).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd

from .cohomology import binary_form_product, binary_form_vanishes, c1, normal_form, relations
from .fan import is_fano_two_stage
from .gbm import (
    TwoStageSpec,
    canonical_form,
    elementary_symmetric,
    normalization_shift,
    normalize,
)
from .polynomial import IntPolynomial

Matrix = tuple[tuple[int, int], tuple[int, int]]

IDENTITY: Matrix = ((1, 0), (0, 1))
SWAP: Matrix = ((0, 1), (1, 0))


class NotFanoError(ValueError):
    pass


@dataclass(frozen=True)
class IsoWitness:
    matrix: Matrix
    c1_preserving: bool = False

    @property
    def det(self) -> int:
        (a, b), (c, d) = self.matrix
        return a * d - b * c

    def images(self) -> list[IntPolynomial]:
        return [IntPolynomial.linear(row) for row in self.matrix]


@dataclass
class IsoVerdict:
    answer: str  # "yes" | "no" | "unknown"
    witness: IsoWitness | None = None
    certificate: str = ""
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "answer": self.answer,
            "witness": [list(r) for r in self.witness.matrix] if self.witness else None,
            "certificate": self.certificate,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def compose(first: Matrix, second: Matrix) -> Matrix:
    """Matrix of ``second o first`` (apply ``first``, then ``second``)."""
    return tuple(
        tuple(sum(first[i][k] * second[k][j] for k in range(2)) for j in range(2)) for i in range(2)
    )


def inverse(mat: Matrix) -> Matrix:
    (a, b), (c, d) = mat
    det = a * d - b * c
    if det not in (1, -1):
        raise ValueError(f"matrix {mat} is not unimodular")
    return ((d * det, -b * det), (-c * det, a * det))


def same_fiber_dims(source: TwoStageSpec, target: TwoStageSpec) -> bool:
    return sorted(source.type_pair) == sorted(target.type_pair)


def verify_witness(w: IsoWitness, source: TwoStageSpec, target: TwoStageSpec) -> bool:
    """Check a witness with plain polynomial substitution and reduction.

    A unimodular substitution killing both source relations is a surjective
    graded map; with equal fiber-dimension multisets the ranks agree degree
    by degree, so it is an isomorphism.
    """
    if w.det not in (1, -1) or not same_fiber_dims(source, target):
        return False
    images = w.images()
    for rel in relations(source.to_matrix()):
        if not normal_form(rel.substitute(images), target).is_zero():
            return False
    if w.c1_preserving and c1(source).substitute(images) != c1(target):
        return False
    return True


def maps_c1(w: IsoWitness, source: TwoStageSpec, target: TwoStageSpec) -> bool:
    return c1(source).substitute(w.images()) == c1(target)


def relation_cofactor(w: IsoWitness, source: TwoStageSpec, target: TwoStageSpec) -> int:
    """The integer ``q`` with ``phi(r_2) = f * x1^(n1+1) + q * r_2~``.

    Only ``q * r_2~`` can contribute to the pure ``x2^(n2+1)`` term, so ``q``
    is read off from that coefficient of the substituted source relation.
    Requires equal type pairs.
    """
    if source.type_pair != target.type_pair:
        raise ValueError("cofactor is defined for equal type pairs")
    image = relations(source.to_matrix())[1].substitute(w.images())
    return image.coefficient((0, target.n2 + 1))


def default_bound(source: TwoStageSpec, target: TwoStageSpec) -> int:
    return sum(abs(x) for x in source.a) + sum(abs(x) for x in target.a) + 2


def _delta_candidates(alpha: int, beta: int, gamma: int, bound: int) -> list[int]:
    """All ``delta`` in ``[-bound, bound]`` with ``alpha*delta - beta*gamma = +-1``."""
    if alpha == 0:
        if abs(beta * gamma) == 1:
            return list(range(-bound, bound + 1))
        return []
    out = set()
    for s in (-1, 1):
        num = beta * gamma + s
        if num % alpha == 0:
            d = num // alpha
            if -bound <= d <= bound:
                out.add(d)
    return sorted(out)


def iter_unimodular(bound: int):
    """Unimodular 2x2 matrices with entries in ``[-bound, bound]``, row-major lex order."""
    rng = range(-bound, bound + 1)
    for alpha in rng:
        for beta in rng:
            if gcd(alpha, beta) != 1:
                continue
            for gamma in rng:
                for delta in _delta_candidates(alpha, beta, gamma, bound):
                    yield ((alpha, beta), (gamma, delta))


def ring_iso_search(
    source: TwoStageSpec,
    target: TwoStageSpec,
    bound: int | None = None,
    require_c1: bool = False,
) -> IsoWitness | None:
    """First witness (row-major lex order) with entries in ``[-bound, bound]``.

    The scan is exhaustive over the box; conditions are just checked in the
    cheapest order (first-row relation, then ``c1``, then second relation).
    """
    if not same_fiber_dims(source, target):
        return None
    if bound is None:
        bound = default_bound(source, target)
    n1, a = source.n1, source.a
    src_c1 = c1(source).coefficient((1, 0)), c1(source).coefficient((0, 1))
    tgt_c1 = c1(target).coefficient((1, 0)), c1(target).coefficient((0, 1))
    rng = range(-bound, bound + 1)
    for alpha in rng:
        for beta in rng:
            if gcd(alpha, beta) != 1:
                continue
            # x1^(n1+1) -> (alpha X1 + beta X2)^(n1+1)
            if not binary_form_vanishes(target, binary_form_product([(alpha, beta)] * (n1 + 1))):
                continue
            for gamma in rng:
                for delta in _delta_candidates(alpha, beta, gamma, bound):
                    if require_c1 and (
                        src_c1[0] * alpha + src_c1[1] * gamma != tgt_c1[0]
                        or src_c1[0] * beta + src_c1[1] * delta != tgt_c1[1]
                    ):
                        continue
                    # x2 prod (x2 - a_k x1)
                    factors = [(gamma, delta)] + [(gamma - ak * alpha, delta - ak * beta) for ak in a]
                    if binary_form_vanishes(target, binary_form_product(factors)):
                        return IsoWitness(((alpha, beta), (gamma, delta)), require_c1)
    return None


def normalization_witness(spec: TwoStageSpec) -> Matrix:
    """Ring isomorphism ``H^*(spec) -> H^*(normalize(spec))``.

    With ``d = min(0, a)``, sending ``x2 -> x2 + d x1`` turns
    ``x2 prod (x2 - a_k x1)`` into ``(x2 + d x1) prod (x2 - (a_k - d) x1)``,
    which is the relation of the normalized spec.
    """
    return ((1, 0), (normalization_shift(spec), 1))


def variety_witness(source: TwoStageSpec, target: TwoStageSpec) -> Matrix:
    """Ring isomorphism induced by a variety isomorphism between equal canonical forms."""
    ns, nt = normalize(source), normalize(target)
    middle = IDENTITY if ns.type_pair == nt.type_pair else SWAP
    return compose(compose(normalization_witness(source), middle), inverse(normalization_witness(target)))


def _e_certificate(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[str, list]:
    diffs = []
    for k in range(1, len(a) + 1):
        ea, eb = elementary_symmetric(a, k), elementary_symmetric(b, k)
        if ea != eb:
            diffs.append((k, ea, eb))
    text = ", ".join(f"e_{k}: {x} != {y}" for k, x, y in diffs)
    return text, diffs


def decide_c1_iso(source: TwoStageSpec, target: TwoStageSpec) -> IsoVerdict:
    """Exact c1-preserving ring isomorphism decision for Fano inputs."""
    ns, nt = normalize(source), normalize(target)
    for orig, norm in ((source, ns), (target, nt)):
        if not is_fano_two_stage(norm):
            raise NotFanoError(f"{orig} is not Fano; the structured decision needs Fano inputs")
    if not same_fiber_dims(ns, nt):
        return IsoVerdict(
            "no",
            certificate=f"fiber dimensions differ: {ns.type_pair} vs {nt.type_pair}",
            details={"reason": "fiber_dims"},
        )
    cs, ct = canonical_form(ns), canonical_form(nt)
    if cs.is_product != ct.is_product:
        which = "source" if cs.is_product else "target"
        other = nt if cs.is_product else ns
        return IsoVerdict(
            "no",
            certificate=(
                f"only the {which} is a product; {other} has no b with "
                f"prod(1 + a_k x) = (1 + b x)^(n2+1)"
            ),
            details={"reason": "product"},
        )
    if not cs.is_product and ns.type_pair != nt.type_pair:
        return IsoVerdict(
            "no",
            certificate=f"type mismatch: {ns.type_pair} vs {nt.type_pair}",
            details={"reason": "type"},
        )
    if cs == ct:
        w = IsoWitness(variety_witness(source, target), True)
        return IsoVerdict("yes", w, certificate=f"equal canonical form {cs}")
    text, diffs = _e_certificate(cs.sorted_a, ct.sorted_a)
    return IsoVerdict("no", certificate=text, details={"reason": "elementary_symmetric", "diffs": diffs})


def decide_variety_iso(source: TwoStageSpec, target: TwoStageSpec) -> IsoVerdict:
    """Canonical-form comparison; exact when both sides are Fano.

    Outside the Fano range equal forms still give an isomorphism, but
    different forms do not rule one out, so the answer is ``unknown``.
    """
    cs, ct = canonical_form(source), canonical_form(target)
    fano = is_fano_two_stage(normalize(source)) and is_fano_two_stage(normalize(target))
    if cs == ct:
        w = IsoWitness(variety_witness(source, target), True)
        note = "" if fano else " (sufficient only: non-Fano input)"
        return IsoVerdict("yes", w, certificate=f"equal canonical form {cs}{note}", details={"exact": fano})
    if not fano:
        return IsoVerdict(
            "unknown",
            certificate=f"canonical forms differ ({cs} vs {ct}); inconclusive for non-Fano input",
            details={"exact": False},
        )
    if cs.type_pair != ct.type_pair:
        cert = f"type mismatch: {cs.type_pair} vs {ct.type_pair}"
    else:
        cert, _ = _e_certificate(cs.sorted_a, ct.sorted_a)
    return IsoVerdict("no", certificate=cert, details={"exact": True})


def product_cohomology_test(spec: TwoStageSpec) -> int | None:
    """``b`` with ``prod(1 + a_k x) = (1 + b x)^(n2+1)`` mod ``x^(n1+1)``, if any."""
    if not spec.is_normalized:
        raise ValueError(f"{spec} is not normalized")
    n1, n2, a = spec.n1, spec.n2, spec.a
    total = sum(a)
    if total % (n2 + 1):
        return None
    b = total // (n2 + 1)
    lhs = [1] + [0] * n1
    for ak in a:
        for k in range(n1, 0, -1):
            lhs[k] += ak * lhs[k - 1]
    rhs = [1] + [0] * n1
    for _ in range(n2 + 1):
        for k in range(n1, 0, -1):
            rhs[k] += b * rhs[k - 1]
    return b if lhs == rhs else None


def hirzebruch_class(a: int, a_tilde: int, n1: int) -> bool:
    """Closed-form ring-isomorphism test for ``B(n1;a)`` vs ``B(n1;a~)``."""
    if a < 0 or a_tilde < 0:
        raise ValueError("exponents must be nonnegative")
    if n1 < 1:
        raise ValueError("n1 must be positive")
    if n1 == 1:
        return (a - a_tilde) % 2 == 0
    return a == a_tilde


def decide_ring_iso(source: TwoStageSpec, target: TwoStageSpec, bound: int | None = None) -> IsoVerdict:
    """Graded ring isomorphism (no c1 condition) via the bounded oracle."""
    if bound is None:
        bound = default_bound(source, target)
    if not same_fiber_dims(source, target):
        return IsoVerdict("no", certificate=f"fiber dimensions differ: {source.type_pair} vs {target.type_pair}")
    w = ring_iso_search(source, target, bound)
    if w is not None:
        w = IsoWitness(w.matrix, maps_c1(w, source, target))
        return IsoVerdict("yes", w, certificate="ring isomorphism; two-stage towers with isomorphic rings are diffeomorphic")
    return IsoVerdict("no", certificate=f"no unimodular witness with entries in [-{bound}, {bound}]")
