import random
from math import prod

import pytest

from bottfano.cohomology import (
    CohomologyRing,
    additive_basis,
    c1,
    multiply,
    nilpotent_degree2,
    normal_form,
    relations,
    total_chern,
)
from bottfano.fan import maximal_cones
from bottfano.gbm import GeneralizedBottMatrix, TwoStageSpec
from bottfano.polynomial import IntPolynomial, parse_polynomial
from towers import random_gbm, random_poly


def P(text, m=2):
    return parse_polynomial(text, m)


B211 = TwoStageSpec(2, (1, 1))
B201 = TwoStageSpec(2, (0, 1))


def test_relations_examples():
    assert relations(B211.to_matrix()) == [P("x1^3"), P("x2*(x2 - x1)^2")]
    assert relations(B201.to_matrix()) == [P("x1^3"), P("x2^2*(x2 - x1)")]
    assert relations(TwoStageSpec(3, (0, 0)).to_matrix()) == [P("x1^4"), P("x2^3")]


def test_normal_form_examples():
    expected = P("2*x1*x2^2 - x1^2*x2")
    assert normal_form(P("x2^3"), B211) == expected
    # the rewrite is exactly the relation
    assert P("x2^3") - expected == relations(B211.to_matrix())[1]
    assert normal_form(P("x1^3"), B211).is_zero()
    # x1 -> x1, x2 -> x1 - x2 carries the relations of B(2;1,1) into the ideal of B(2;0,1)
    images = [P("x1"), P("x1 - x2")]
    for rel in relations(B211.to_matrix()):
        assert normal_form(rel.substitute(images), B201).is_zero()


def test_multiply_examples():
    ring = CohomologyRing(B211.to_matrix())
    assert multiply(P("x1"), P("x1^2"), ring).is_zero()
    assert multiply(P("x2"), P("x2^2 - 2*x1*x2 + x1^2"), ring).is_zero()


def test_c1_examples():
    assert c1(B211) == P("x1 + 3*x2")
    assert c1(B201) == P("2*x1 + 3*x2")
    assert c1(GeneralizedBottMatrix((1, 2, 3), {(2, 1): (0, 0), (3, 1): (0,) * 3, (3, 2): (0,) * 3})) == P(
        "2*x1 + 3*x2 + 4*x3", 3
    )


def test_total_chern_examples():
    assert total_chern(GeneralizedBottMatrix((1,), {})) == P("1 + 2*x1", 1)
    assert total_chern(B211).homogeneous_part(1) == P("x1 + 3*x2")
    assert total_chern(B211).coefficient((2, 2)) == 9


def test_additive_basis_examples():
    assert additive_basis(B211, 2) == [P("x1"), P("x2")]
    ring = CohomologyRing(B211.to_matrix())
    assert sum(len(additive_basis(B211, 2 * k)) for k in range(5)) == 9 == ring.rank
    assert additive_basis(B211, 8) == [P("x1^2*x2^2")]
    with pytest.raises(ValueError):
        additive_basis(B211, 3)


def _specs(seed, count):
    rng = random.Random(seed)
    return [random_gbm(rng, max_m=3, max_n=3, lo=-2, hi=2) for _ in range(count)]


@pytest.mark.parametrize("gbm", _specs(1, 12), ids=str)
def test_relations_reduce_to_zero_and_leading_terms(gbm):
    ring = CohomologyRing(gbm)
    for i, rel in enumerate(ring.relations, start=1):
        lead = max(rel.terms, key=lambda e: tuple(reversed(e)))
        assert lead == tuple(gbm.n(i) + 1 if k == i else 0 for k in range(1, gbm.stages + 1))
        assert ring.reduce(rel).is_zero()


@pytest.mark.parametrize("gbm", _specs(2, 4), ids=str)
def test_reduction_strategy_independent(gbm):
    ring = CohomologyRing(gbm)
    rng = random.Random(hash(gbm.fiber_dims))
    for _ in range(200):
        p = random_poly(rng, gbm.stages, max_deg=4, nterms=4)
        low = ring.reduce(p, "lowest")
        assert low == ring.reduce(p, "highest") == ring.reduce(p)
        assert all(ring.is_reduced(e) for e in low.terms)


@pytest.mark.parametrize("gbm", _specs(3, 6), ids=str)
def test_quotient_ring_axioms(gbm):
    ring = CohomologyRing(gbm)
    rng = random.Random(17)
    for _ in range(20):
        p, q, r = (ring.reduce(random_poly(rng, gbm.stages, 3, 3)) for _ in range(3))
        assert ring.multiply(p, q) == ring.multiply(q, p)
        assert ring.multiply(ring.multiply(p, q), r) == ring.multiply(p, ring.multiply(q, r))
        assert ring.multiply(p, q + r) == ring.multiply(p, q) + ring.multiply(p, r)


def test_reduction_is_congruence():
    # reducing before or after multiplying by an ideal element gives the same class
    ring = CohomologyRing(GeneralizedBottMatrix((2, 1, 2), {(2, 1): (1,), (3, 1): (-1, 2), (3, 2): (2, 0)}))
    rng = random.Random(4)
    for _ in range(30):
        p = random_poly(rng, 3, 3, 3)
        f = random_poly(rng, 3, 2, 2)
        assert ring.reduce(p + f * ring.relations[2]) == ring.reduce(p)


@pytest.mark.parametrize("gbm", _specs(4, 25), ids=str)
def test_basis_count_chern_and_euler(gbm):
    ring = CohomologyRing(gbm)
    n = gbm.dimension
    count = sum(len(additive_basis(gbm, 2 * k)) for k in range(n + 1))
    assert count == prod(d + 1 for d in gbm.fiber_dims) == len(maximal_cones(gbm))
    c = total_chern(gbm)
    assert c.homogeneous_part(1) == c1(gbm)
    assert c.coefficient(ring.top_monomial()) == prod(d + 1 for d in gbm.fiber_dims)


def test_nilpotent_examples():
    found = nilpotent_degree2(TwoStageSpec(3, (0, 0)), 3, 3)
    assert IntPolynomial.linear((0, 1)) in found
    assert all(y.coefficient((1, 0)) == 0 for y in found) and len(found) == 6
    assert nilpotent_degree2(TwoStageSpec(3, (1, 1)), 3, 5) == []
    assert len(nilpotent_degree2(B211, 5, 3)) == 7 * 7 - 1


def test_nilpotent_matches_general_reduction():
    spec = TwoStageSpec(3, (0, 1))
    ring = CohomologyRing(spec.to_matrix())
    fast = set(nilpotent_degree2(spec, 3, 4))
    slow = {
        IntPolynomial.linear((p, q))
        for p in range(-4, 5)
        for q in range(-4, 5)
        if (p, q) != (0, 0) and ring.power(IntPolynomial.linear((p, q)), 3).is_zero()
    }
    assert fast == slow
