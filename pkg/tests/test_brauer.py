"""Symbol algebra rewrites: certified traces, normalization, split tests."""

import pytest

from wittram import sampling
from wittram.brauer import (
    SPLIT,
    BrauerSymbol,
    TraceStep,
    absorb_split,
    frob_twist,
    is_split_quick,
    lemma53_split,
    lemma54_rewrite,
    normalize_symbol,
    power_adjust_b,
    same_b_add,
    same_omega_mul,
    strip_zero,
)
from wittram.errors import (
    HypothesisViolation,
    NoRootError,
    RuleViolation,
    ShapeMismatch,
    SpecMismatch,
)
from wittram.valued import LaurentElem, pth_root
from wittram.witt import WittVector, artin_schreier_map, witt_add

from conftest import ALL_SPECS, F2, F2U, F3, F3U, L, W


def test_symbol_shape_guards():
    with pytest.raises(ShapeMismatch):
        BrauerSymbol(W("[t]", F2), LaurentElem.zero(F2))
    with pytest.raises(SpecMismatch):
        BrauerSymbol(W("[t]", F2), L("t", F3))


# -- primitive rules ----------------------------------------------------------

def test_same_b_add():
    s1 = BrauerSymbol(W("[t^-1; t]", F2), L("t", F2))
    s2 = BrauerSymbol(W("[t; 0]", F2), L("t", F2))
    out, step = same_b_add(s1, s2)
    step.validate()
    assert out.omega == witt_add(s1.omega, s2.omega)
    assert out.b == s1.b
    with pytest.raises(HypothesisViolation):
        same_b_add(s1, BrauerSymbol(s2.omega, L("t^2", F2)))


def test_same_omega_mul():
    s1 = BrauerSymbol(W("[t^-1; t]", F2), L("t", F2))
    s2 = BrauerSymbol(W("[t^-1; t]", F2), L("t^2 + t^3", F2))
    out, step = same_omega_mul(s1, s2)
    step.validate()
    assert out.b == s1.b * s2.b
    assert out.omega == s1.omega


def test_strip_zero():
    z = BrauerSymbol(W("[0; t^-1]", F2), L("t", F2))
    out, step = strip_zero(z)
    step.validate()
    assert out.m == 1
    assert out.omega.components[0] == L("t^-1", F2)
    with pytest.raises(HypothesisViolation):
        strip_zero(BrauerSymbol(W("[t; t^-1]", F2), L("t", F2)))


def test_frob_twist_rule():
    s = BrauerSymbol(W("[t^-1; t]", F2), L("t", F2))
    out, step = frob_twist(s)
    step.validate()
    assert out.omega.components[0] == L("t^-2", F2)
    assert out.b == s.b


def test_power_adjust_b():
    s = BrauerSymbol(W("[t^-1; t]", F2), L("t", F2))
    out, step = power_adjust_b(s, L("t^-1", F2))
    step.validate()
    # v(b) shifts by p^m * v(gamma), preserving v(b) mod p^m
    assert out.b.val() == s.b.val() - 4
    assert out.b.val() % 4 == s.b.val() % 4


def test_absorb_split():
    tri = BrauerSymbol(W("[t; 0]", F2), L("t", F2))
    step = absorb_split(tri)
    step.validate()
    assert step.after is SPLIT
    with pytest.raises(HypothesisViolation):
        absorb_split(BrauerSymbol(W("[t^2; 0]", F2), L("t", F2)))


def test_tampered_step_rejected():
    s1 = BrauerSymbol(W("[t^-1; t]", F2), L("t", F2))
    s2 = BrauerSymbol(W("[t; 0]", F2), L("t", F2))
    good, _ = same_b_add(s1, s2)
    bogus = TraceStep("same_b", (s1, s2), BrauerSymbol(good.omega, L("t^5", F2)))
    with pytest.raises(RuleViolation):
        bogus.validate()
    with pytest.raises(RuleViolation):
        TraceStep("nonsense", (s1,), s1).validate()


# -- lemma 5.3 traces ---------------------------------------------------------

def test_lemma53_step_counts():
    out = lemma53_split(1, 1, L("t", F2), L("t", F2))
    out.trace.validate()
    assert out.trace.concludes_split
    assert len(out.trace) == 4

    out = lemma53_split(2, 1, L("t", F3), L("t", F3))
    out.trace.validate()
    assert out.trace.concludes_split
    assert len(out.trace) == 6


def test_lemma53_zero_scalar_collapses():
    # r = 0 mod p makes the symbol component vanish outright
    out = lemma53_split(2, 1, L("t", F2), L("t", F2))
    assert len(out.trace) == 1
    assert out.trace.steps[0].rule == "as_coboundary"
    out = lemma53_split(1, 1, L("0", F3), L("t", F3))
    assert len(out.trace) == 1


def test_lemma53_exponent_guard():
    with pytest.raises(HypothesisViolation):
        lemma53_split(1, 2, L("t", F2), L("t", F2))
    with pytest.raises(HypothesisViolation):
        lemma53_split(1, 0, L("t", F3), L("t", F3))


def test_lemma53_negative_exponent():
    out = lemma53_split(1, -1, L("t", F3), L("t^2", F3))
    out.trace.validate()
    assert out.trace.concludes_split


def test_lemma53_random_traces_self_certify():
    # shallow windows keep the negative-exponent cases quick
    rng = sampling.make_rng(17)
    n = 0
    while n < 20:
        spec = ALL_SPECS[n % 4]
        p = spec.p
        i = rng.randrange(-4, 7)
        if i % p == 0:
            continue
        r = rng.randrange(0, p)
        c = sampling.random_laurent(rng, spec, vmin=-2, vmax=2, precision=32)
        if i < 0 and c.is_apparent_zero:
            continue
        b = sampling.random_symbol_b(rng, spec, precision=32)
        out = lemma53_split(r, i, c, b)
        assert out.trace.validate()
        assert out.trace.concludes_split
        n += 1


# -- lemma 5.4 rewrite --------------------------------------------------------

def test_lemma54_golden():
    sym = BrauerSymbol(W("[t^2; t^4]", F2), L("t^-1", F2))
    out = lemma54_rewrite(sym)
    out.trace.validate()
    rules = [s.rule for s in out.trace.steps]
    assert rules == [
        "absorb", "same_b", "strip_zero", "same_omega",
        "absorb", "pth_power_b", "same_b",
    ]
    assert out.symbol.omega.components[0] == L("t^-1 + t^2", F2)
    assert out.symbol.omega.components[1] == L("t^4", F2)
    assert out.symbol.b == L("t^-1", F2)


def test_lemma54_requires_pth_power_first_component():
    with pytest.raises(NoRootError):
        lemma54_rewrite(BrauerSymbol(W("[u*t; 0]", F2U), L("t^-1", F2U)))


def test_lemma54_length_guard():
    with pytest.raises(HypothesisViolation):
        lemma54_rewrite(BrauerSymbol(W("[t^2]", F2), L("t^-1", F2)))


def test_lemma54_random_first_component_carries_vb():
    rng = sampling.make_rng(23)
    for k in range(12):
        spec = ALL_SPECS[k % 4]
        p = spec.p
        c = sampling.random_laurent(rng, spec, vmin=-2, vmax=2)
        w2 = sampling.random_laurent(rng, spec)
        from wittram.valued import pth_power

        omega = WittVector(p, 2, (pth_power(c), w2))
        b = sampling.random_tr_element(rng, spec)
        if b.val() >= p * c.val_lower_bound():
            continue
        out = lemma54_rewrite(BrauerSymbol(omega, b))
        out.trace.validate()
        assert out.symbol.omega.components[0].val() == b.val()
        assert out.symbol.b == b


# -- normalize_symbol ---------------------------------------------------------

def test_normalize_twists_when_needed():
    n = normalize_symbol(BrauerSymbol(W("[t^-1; 1]", F2), L("t", F2)))
    assert [s.rule for s in n.trace.steps] == ["frob_twist", "power_adjust_b"]
    assert n.symbol.omega.components[0] == L("t^-2", F2)
    assert n.symbol.omega.components[1] == L("1", F2)
    assert n.symbol.b.val() == -3
    n.trace.validate()


def test_normalize_skips_twist_when_roots_exist():
    n = normalize_symbol(BrauerSymbol(W("[t^-9]", F3), L("t", F3)))
    assert [s.rule for s in n.trace.steps] == ["power_adjust_b"]
    assert n.symbol.b.val() == -11


def test_normalize_fixed_point():
    sym = BrauerSymbol(W("[t^2; t^4]", F2), L("t^-3", F2))
    n = normalize_symbol(sym)
    assert n.trace.steps == ()
    assert n.symbol == sym


def test_normalize_postconditions_random():
    rng = sampling.make_rng(29)
    for k in range(16):
        spec = ALL_SPECS[k % 4]
        m = 1 + (k % 2)
        omega = WittVector(spec.p, m, tuple(
            sampling.random_laurent(rng, spec) for _ in range(m)))
        b = sampling.random_symbol_b(rng, spec)
        n = normalize_symbol(BrauerSymbol(omega, b))
        n.trace.validate()
        pm = spec.p ** m
        assert n.symbol.b.val() % pm == b.val() % pm
        bound = min([0] + [c.val() for c in n.symbol.omega.components
                           if not c.is_apparent_zero])
        assert n.symbol.b.val() < bound
        for c in n.symbol.omega.components:
            assert c.is_apparent_zero or pth_root(c) is not None


# -- is_split_quick -----------------------------------------------------------

def test_split_quick_coboundary():
    rng = sampling.make_rng(37)
    for k in range(12):
        spec = ALL_SPECS[k % 4]
        m = 1 + (k % 2)
        g = WittVector(spec.p, m, tuple(
            sampling.random_laurent(rng, spec, vmin=-3, vmax=3) for _ in range(m)))
        sym = BrauerSymbol(artin_schreier_map(g), sampling.random_symbol_b(rng, spec))
        trace = is_split_quick(sym)
        assert trace is not None
        trace.validate()
        assert trace.concludes_split


def test_split_quick_pth_power_b():
    sym = BrauerSymbol(W("[u*t^-1]", F2U), L("t^4", F2U))
    trace = is_split_quick(sym)
    assert trace is not None and trace.concludes_split
    trace.validate()


def test_split_quick_declines_division_case():
    # unramified slot with uniformizer b: the division-algebra pattern
    sym = BrauerSymbol(W("[u]", F2U), L("t", F2U))
    assert is_split_quick(sym) is None
