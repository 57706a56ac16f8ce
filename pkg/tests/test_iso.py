from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from bottfano.fan import is_fano_two_stage
from bottfano.gbm import TwoStageSpec, canonical_form, normalize, parse_spec
from bottfano.iso import (
    IsoVerdict,
    IsoWitness,
    NotFanoError,
    decide_c1_iso,
    decide_ring_iso,
    decide_variety_iso,
    default_bound,
    hirzebruch_class,
    iter_unimodular,
    normalization_witness,
    product_cohomology_test,
    relation_cofactor,
    ring_iso_search,
    verify_witness,
)
from towers import normalized_specs

B211, B201 = parse_spec("B(2;1,1)"), parse_spec("B(2;0,1)")
SHEAR = IsoWitness(((1, 0), (1, -1)))


def naive_search(source, target, bound, require_c1):
    """First valid matrix in row-major order, checked by plain substitution."""
    for entries in product(range(-bound, bound + 1), repeat=4):
        w = IsoWitness((entries[:2], entries[2:]), require_c1)
        if w.det in (1, -1) and verify_witness(w, source, target):
            return w
    return None


def test_verify_witness_examples():
    assert verify_witness(SHEAR, B211, B201)
    assert not verify_witness(IsoWitness(SHEAR.matrix, True), B211, B201)
    assert verify_witness(IsoWitness(((1, 0), (0, 1)), True), B211, B211)
    assert not verify_witness(IsoWitness(((2, 0), (0, 1))), B211, B211)


def test_iter_unimodular_is_lex_complete():
    naive = [
        (e[:2], e[2:]) for e in product(range(-2, 3), repeat=4) if e[0] * e[3] - e[1] * e[2] in (1, -1)
    ]
    assert list(iter_unimodular(2)) == naive


def test_search_examples():
    w = ring_iso_search(B211, B201, 5)
    assert w is not None and verify_witness(w, B211, B201)
    assert ring_iso_search(B211, B201, 5, require_c1=True) is None
    f1, f3 = parse_spec("B(1;1)"), parse_spec("B(1;3)")
    assert verify_witness(ring_iso_search(f1, f3, 6), f1, f3)
    assert ring_iso_search(B211, parse_spec("B(1;0,0,0)"), 5) is None


@pytest.mark.parametrize(
    "pair, require_c1",
    [
        (("B(2;1,1)", "B(2;0,1)"), False),
        (("B(2;1,1)", "B(2;0,1)"), True),
        (("B(1;0)", "B(1;2)"), False),
        (("B(1;0,0,0)", "B(3;0)"), True),
        (("B(2;-1,0)", "B(2;0,1)"), True),
        (("B(3;1)", "B(3;2)"), False),
    ],
)
def test_fast_search_matches_naive_scan(pair, require_c1):
    s, t = map(parse_spec, pair)
    assert ring_iso_search(s, t, 2, require_c1) == naive_search(s, t, 2, require_c1)


def test_relation_cofactor_for_shear():
    # phi(x2) = x1 - x2 so the x2^3 coefficient of phi(r2) is (-1)^3
    assert relation_cofactor(SHEAR, B211, B201) == -1


def test_normalization_witness_is_c1_iso():
    for a in [(-1, 1), (-3, 0, 2), (2, -2), (0, 5), (-4,)]:
        spec = TwoStageSpec(2, a)
        w = IsoWitness(normalization_witness(spec), True)
        assert verify_witness(w, spec, normalize(spec))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.lists(st.integers(-3, 3), min_size=1, max_size=3))
def test_normalize_preserves_ring_via_oracle(n1, a):
    spec = TwoStageSpec(n1, a)
    w = IsoWitness(normalization_witness(spec), True)
    assert verify_witness(w, spec, normalize(spec))


def test_decide_c1_iso_examples():
    v = decide_c1_iso(B211, B201)
    assert v.answer == "no" and v.witness is None
    assert "e_2: 1 != 0" in v.certificate
    assert v.details["diffs"][0] == (1, 2, 1)
    v = decide_c1_iso(parse_spec("B(3;1,2)"), parse_spec("B(3;2,1)"))
    assert v.answer == "yes" and verify_witness(v.witness, parse_spec("B(3;1,2)"), parse_spec("B(3;2,1)"))
    s, t = parse_spec("B(1;0,0,0)"), parse_spec("B(3;0)")
    v = decide_c1_iso(s, t)
    assert v.answer == "yes" and v.witness.matrix == ((0, 1), (1, 0))
    assert verify_witness(v.witness, s, t)
    assert ring_iso_search(s, t, default_bound(s, t), require_c1=True) is not None


def test_decide_c1_iso_certificates():
    v = decide_c1_iso(parse_spec("B(2;0,0)"), parse_spec("B(2;0,1)"))
    assert v.answer == "no" and v.details["reason"] == "product"
    v = decide_c1_iso(parse_spec("B(1;0,1)"), parse_spec("B(2;1)"))
    assert v.answer == "no" and "type mismatch" in v.certificate
    v = decide_c1_iso(parse_spec("B(1;1)"), parse_spec("B(2;1)"))
    assert v.answer == "no" and "fiber dimensions" in v.certificate
    with pytest.raises(NotFanoError):
        decide_c1_iso(parse_spec("B(1;2)"), parse_spec("B(1;0)"))


def test_decide_variety_iso_examples():
    assert decide_variety_iso(B211, B211).answer == "yes"
    assert decide_variety_iso(B211, B201).answer == "no"
    # shifting the full multiset {0, -1, 0} by +1 gives exponents (1, 1)
    s = parse_spec("B(2;-1,0)")
    v = decide_variety_iso(s, B211)
    assert v.answer == "yes" and verify_witness(v.witness, s, B211)
    assert ring_iso_search(s, B211, default_bound(s, B211), require_c1=True) is not None
    assert decide_variety_iso(s, B201).answer == "no"
    assert ring_iso_search(s, B201, default_bound(s, B201), require_c1=True) is None


def test_decide_variety_iso_non_fano_never_says_no():
    v = decide_variety_iso(parse_spec("B(1;2)"), parse_spec("B(1;0)"))
    assert v.answer == "unknown"
    v = decide_variety_iso(parse_spec("B(1;2)"), parse_spec("B(1;-2)"))
    assert v.answer == "yes" and not v.details["exact"]


def test_decide_ring_iso():
    v = decide_ring_iso(B211, B201)
    assert v.answer == "yes" and not v.witness.c1_preserving
    assert decide_ring_iso(parse_spec("B(2;1)"), parse_spec("B(2;2)")).answer == "no"


def test_verdict_json_shape():
    import json

    data = json.loads(decide_c1_iso(B211, B211).dumps())
    assert set(data) == {"answer", "witness", "certificate"}
    assert data["answer"] == "yes" and data["witness"] == [[1, 0], [0, 1]]
    assert IsoVerdict("no").to_json()["witness"] is None


def test_product_cohomology_test_examples():
    assert product_cohomology_test(TwoStageSpec(3, (0, 0, 0))) == 0
    assert product_cohomology_test(B211) is None
    assert product_cohomology_test(TwoStageSpec(1, (1, 1, 1))) is None
    assert product_cohomology_test(TwoStageSpec(1, (0, 0, 2))) is None
    assert product_cohomology_test(TwoStageSpec(1, (1, 1, 1, 1))) is None
    # F_2: (1 + 2x) = (1 + x)^2 mod x^2
    assert product_cohomology_test(TwoStageSpec(1, (2,))) == 1
    with pytest.raises(ValueError):
        product_cohomology_test(TwoStageSpec(1, (-1,)))


def test_product_cohomology_test_matches_ring_oracle():
    # b exists exactly when the ring is that of CP^n1 x CP^n2
    for spec in normalized_specs(4, slack=3):
        prod_spec = TwoStageSpec(spec.n1, (0,) * spec.n2)
        has_b = product_cohomology_test(spec) is not None
        found = ring_iso_search(spec, prod_spec, default_bound(spec, prod_spec)) is not None
        assert has_b == found, spec


def test_hirzebruch_examples():
    assert hirzebruch_class(0, 2, 1)
    assert not hirzebruch_class(0, 1, 1)
    assert not hirzebruch_class(1, 2, 2)
    with pytest.raises(ValueError):
        hirzebruch_class(-1, 2, 1)


def test_oracle_structured_agreement_small():
    specs = [s for s in normalized_specs(6) if is_fano_two_stage(s)]
    for s in specs:
        for t in specs:
            w = ring_iso_search(s, t, default_bound(s, t), require_c1=True)
            assert (w is not None) == (decide_c1_iso(s, t).answer == "yes")
            if w is not None:
                assert verify_witness(w, s, t)


def test_c1_witness_shape_non_products():
    specs = [s for s in normalized_specs(6) if is_fano_two_stage(s) and s.n2 >= 2 and any(s.a)]
    for s in specs:
        for t in specs:
            if canonical_form(s) != canonical_form(t):
                continue
            w = ring_iso_search(s, t, default_bound(s, t), require_c1=True)
            (al, be), (ga, de) = w.matrix
            assert be == 0 and al in (1, -1) and de in (1, -1)
            assert relation_cofactor(w, s, t) == de ** (s.n2 + 1)


@pytest.mark.parametrize("n1", [1, 2, 3])
def test_oracle_matches_hirzebruch_closed_form(n1):
    for a in range(7):
        for b in range(7):
            s, t = TwoStageSpec(n1, (a,)), TwoStageSpec(n1, (b,))
            assert (ring_iso_search(s, t, a + b + 2) is not None) == hirzebruch_class(a, b, n1)
