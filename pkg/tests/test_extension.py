"""Degree-p and degree-p^2 extensions: reduction, classification, norms."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from wittram import sampling
from wittram.errors import (
    DegenerateExtension,
    HypothesisViolation,
    PrecisionExhausted,
    ShapeMismatch,
    UnsupportedCase,
)
from wittram.extension import (
    Classification,
    CyclicExtDesc,
    ExtensionElem,
    as_reduce,
    classify_deg_p,
    classify_len2,
    newton_valuations,
    norm_element,
    witt_reduce,
)
from wittram.newton import newton_classify_deg_p
from wittram.valued import DEFAULT_PRECISION, LaurentElem, ext_val, pth_power
from wittram.witt import WittVector, artin_schreier_map, witt_add

from conftest import ALL_SPECS, F2, F2U, F3, F3U, L, W
from oracles import conjugate_product


# -- as_reduce ---------------------------------------------------------------

def test_as_reduce_strips_even_valuation():
    red = as_reduce(L("t^-2", F2))
    assert red.kind == "neg_coprime"
    assert red.element == L("t^-1", F2)
    assert any(step["op"] == "strip" for step in red.steps)


def test_as_reduce_collapses_coboundary():
    g = L("t^-3 + u*t^-1 + 1 + u*t^2", F2U)
    omega = pth_power(g) - g
    red = as_reduce(omega)
    assert red.kind == "zero"
    assert red.element.is_apparent_zero


def test_as_reduce_stalls_without_root():
    a = L("u*t^-2", F2U)
    red = as_reduce(a)
    assert red.kind == "stalled"
    assert red.element == a
    assert any(step["op"] == "stall" for step in red.steps)


@given(pairs=st.lists(st.tuples(st.integers(-7, 7), st.integers(1, 4)),
                      min_size=0, max_size=4),
       which=st.integers(0, 3))
@settings(max_examples=60)
def test_as_reduce_replay(pairs, which):
    spec = ALL_SPECS[which]
    terms = {}
    for e, c in pairs:
        terms[e] = terms.get(e, spec.zero()) + spec.from_int(c)
    omega = LaurentElem(spec, terms, DEFAULT_PRECISION)
    red = as_reduce(omega)
    g = red.witness
    assert omega - (pth_power(g) - g) == red.element


# -- classify_deg_p ----------------------------------------------------------

def test_classify_deg_p_totally_ramified():
    rep = classify_deg_p(L("t^-1", F2))
    assert rep.classification is Classification.TOTALLY_RAMIFIED
    assert rep.evidence["v_omega"] == -1
    assert rep.evidence["v_x1"] == Fraction(-1, 2)
    assert rep.evidence["ramification_index"] == 2
    assert rep.source == "classify_deg_p"


def test_classify_deg_p_unramified():
    rep = classify_deg_p(L("u", F2U))
    assert rep.classification is Classification.UNRAMIFIED


def test_classify_deg_p_split():
    rep = classify_deg_p(L("t^2 + t^5", F2))
    assert rep.classification is Classification.SPLIT


def test_classify_deg_p_stall_is_unclassified():
    rep = classify_deg_p(L("u*t^-2", F2U))
    assert rep.classification is Classification.UNCLASSIFIED


def test_classify_deg_p_empty_window():
    with pytest.raises(PrecisionExhausted):
        classify_deg_p(LaurentElem(F2, {}, precision=0))


def _random_classify_sweep(spec, n, seed):
    rng = sampling.make_rng(seed)
    mismatches = []
    unclassified = 0
    for _ in range(n):
        omega = sampling.random_classify_input(rng, spec)
        got = classify_deg_p(omega).classification.value
        want = newton_classify_deg_p(omega)
        if got == "unclassified":
            unclassified += 1
            continue
        if want == "unclassified":
            continue
        if got != want:
            mismatches.append((str(omega), got, want))
    return mismatches, unclassified


def test_classify_deg_p_matches_newton_oracle():
    for spec in ALL_SPECS:
        mismatches, unclassified = _random_classify_sweep(spec, 60, seed=5)
        assert mismatches == []
        if spec.kind.name == "PRIME":
            assert unclassified == 0


# -- witt_reduce and classify_len2 -------------------------------------------

def test_witt_reduce_reconstruction():
    rng = sampling.make_rng(9)
    for i in range(24):
        spec = ALL_SPECS[i % 4]
        eta = WittVector(spec.p, 2, (
            sampling.random_classify_input(rng, spec),
            sampling.random_classify_input(rng, spec),
        ))
        res = witt_reduce(eta)
        recon = witt_add(res.reduced, artin_schreier_map(res.witness))
        assert recon == eta


def test_classify_len2_totally_ramified():
    rep = classify_len2(W("[t^-1; 0]", F2))
    assert rep.classification is Classification.TOTALLY_RAMIFIED
    assert rep.evidence["v_x1"] == Fraction(-1, 2)
    assert rep.evidence["v_x2"] == Fraction(-3, 4)
    assert rep.evidence["ramification_index"] == 4


def test_classify_len2_unramified():
    rep = classify_len2(W("[u; u^3]", F2U))
    assert rep.classification is Classification.UNRAMIFIED


def test_classify_len2_stall_is_unclassified():
    rep = classify_len2(W("[u*t^-2; t]", F2U))
    assert rep.classification is Classification.UNCLASSIFIED


def test_classify_len2_dominated_second_component():
    rep = classify_len2(W("[t^-1; t^-5]", F2))
    assert rep.classification is Classification.UNCLASSIFIED
    assert rep.evidence["v_omega2"] == -5


def test_classify_len2_degenerate_first():
    rep = classify_len2(W("[t^2; t^-1]", F2))
    assert rep.evidence.get("degenerate") is True
    assert rep.classification is Classification.TOTALLY_RAMIFIED


def test_classify_len2_shape():
    with pytest.raises(ShapeMismatch):
        classify_len2(W("[t^-1]", F2))


def test_classify_len2_opaque_second_component():
    # an apparent zero whose window is already spent still certifies the
    # dominance test through its valuation lower bound
    eta = WittVector(2, 2, (
        LaurentElem(F2, {-25: F2.one()}, precision=37),
        LaurentElem(F2, {}, precision=-13),
    ))
    rep = classify_len2(eta)
    assert rep.classification is Classification.TOTALLY_RAMIFIED


def test_classify_len2_opaque_second_component_too_shallow():
    eta = WittVector(2, 2, (
        LaurentElem(F2, {-25: F2.one()}, precision=37),
        LaurentElem(F2, {}, precision=-90),
    ))
    with pytest.raises(PrecisionExhausted):
        classify_len2(eta)


def test_classify_len2_opaque_first_component():
    eta = WittVector(2, 2, (
        LaurentElem(F2, {}, precision=-1),
        LaurentElem(F2, {1: F2.one()}, precision=64),
    ))
    with pytest.raises(PrecisionExhausted):
        classify_len2(eta)


# -- newton_valuations -------------------------------------------------------

def test_newton_valuations_values():
    assert newton_valuations(W("[t^-1; 0]", F2)) == (Fraction(-1, 2), Fraction(-3, 4))
    assert newton_valuations(W("[t^-1; 0]", F3)) == (Fraction(-1, 3), Fraction(-7, 9))
    assert newton_valuations(W("[t^-3; 0]", F2)) == (Fraction(-3, 2), Fraction(-9, 4))


def test_newton_valuations_guards():
    with pytest.raises(HypothesisViolation):
        newton_valuations(W("[t; 0]", F2))
    with pytest.raises(HypothesisViolation):
        newton_valuations(W("[t^-2; 0]", F2))
    with pytest.raises(HypothesisViolation):
        newton_valuations(W("[t^-1; t^-3]", F2))
    with pytest.raises(ShapeMismatch):
        newton_valuations(W("[t^-1]", F2))
    eta = WittVector(2, 2, (
        L("t^-9", F2),
        LaurentElem(F2, {}, precision=-20),
    ))
    with pytest.raises(PrecisionExhausted):
        newton_valuations(eta)


def _random_strict_tr_vector(rng, spec):
    """First component of negative valuation coprime to p, second of
    strictly larger valuation (or zero)."""
    first = sampling.random_tr_element(rng, spec)
    v1 = first.val()
    if rng.random() < 0.3:
        second = LaurentElem(spec, {}, DEFAULT_PRECISION)
    else:
        second = sampling.random_laurent(rng, spec, vmin=v1 + 1, vmax=4)
    return WittVector(spec.p, 2, (first, second))


def test_newton_valuations_denominator_property():
    rng = sampling.make_rng(13)
    for spec in ALL_SPECS:
        for _ in range(12):
            eta = _random_strict_tr_vector(rng, spec)
            v1, v2 = newton_valuations(eta)
            assert v1.denominator == spec.p
            assert v2.denominator == spec.p ** 2


# -- extension arithmetic and norms ------------------------------------------

def test_minimal_relations_m1():
    for spec, src in ((F2, "t^-1"), (F3, "t^-1 + 2*t")):
        w = L(src, spec)
        desc = CyclicExtDesc(WittVector(spec.p, 1, (w,)))
        x1 = desc.x1()
        lhs = x1 ** spec.p - x1 - desc.scalar(w)
        assert lhs.is_apparent_zero


def test_minimal_relations_m2():
    eta = W("[t^-1; 0]", F2)
    desc = CyclicExtDesc(eta)
    x1, x2 = desc.x1(), desc.x2()
    w1, w2 = eta.components
    assert x1 * x1 == x1 + desc.scalar(w1)
    # x2^2 = x2 + w2 + w1 x1 over p = 2
    rhs = x2 + desc.scalar(w2) + desc.x1().scale(w1)
    assert x2 * x2 == rhs


def test_ext_mul_laws():
    rng = sampling.make_rng(21)
    eta = W("[t^-1; t]", F3)
    desc = CyclicExtDesc(eta)

    def rand_elem():
        coeffs = {}
        for key in desc.basis():
            coeffs[key] = sampling.random_laurent(rng, F3, vmin=-2, vmax=2)
        return ExtensionElem(desc, coeffs)

    for _ in range(6):
        a, b, c = rand_elem(), rand_elem(), rand_elem()
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_degenerate_extension_rejected():
    with pytest.raises(DegenerateExtension):
        CyclicExtDesc(W("[t^2]", F2))


def test_extension_m3_unsupported():
    with pytest.raises(UnsupportedCase):
        CyclicExtDesc(W("[t^-1; 0; 0]", F2))


def test_norm_of_one_and_scalars():
    for eta, spec in ((W("[t^-1]", F2), F2), (W("[t^-1; 0]", F3), F3)):
        desc = CyclicExtDesc(eta)
        one = desc.scalar(desc.omega1.ring_one())
        assert norm_element(desc, one) == LaurentElem.one(spec)
        c = L("t^3 + 2*t^5", spec) if spec.p == 3 else L("t^3 + t^5", spec)
        assert norm_element(desc, desc.scalar(c)) == c ** desc.degree


def test_norm_x1_is_conjugate_product():
    for spec in (F2, F3, F2U, F3U):
        w = L("t^-1", spec) if spec.p == 2 else L("t^-1 + t", spec)
        desc = CyclicExtDesc(WittVector(spec.p, 1, (w,)))
        sign = (-1) ** (spec.p + 1)
        got = norm_element(desc, desc.x1())
        prod = conjugate_product(desc)
        assert prod.coeff_at(0, 0) == w
        assert got == w.scale_int(sign)
        assert ext_val(spec.p, got) == Fraction(w.val(), spec.p)


def test_norm_x2_valuation():
    desc = CyclicExtDesc(W("[t^-1; 0]", F2))
    n = norm_element(desc, desc.x2())
    assert n.val() == -3
    assert ext_val(4, n) == Fraction(-3, 4)


def test_norm_multiplicative():
    rng = sampling.make_rng(31)
    for eta, spec in ((W("[t^-1]", F2), F2), (W("[t^-1; 0]", F2), F2),
                      (W("[t^-1 + t]", F3), F3)):
        desc = CyclicExtDesc(eta)

        def rand_elem():
            while True:
                coeffs = {}
                for key in desc.basis():
                    coeffs[key] = sampling.random_laurent(rng, spec, vmin=-1, vmax=2)
                if not all(c.is_apparent_zero for c in coeffs.values()):
                    return ExtensionElem(desc, coeffs)

        for _ in range(4):
            a, b = rand_elem(), rand_elem()
            assert norm_element(desc, a * b) == norm_element(desc, a) * norm_element(desc, b)
