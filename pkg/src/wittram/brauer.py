"""Symbols [omega, b) and certified rewriting between them.

A symbol pairs a length-m vector omega with a nonzero b in K and stands
for the cyclic algebra built from the degree-p^m extension of omega and
the uniformizing action of b.  Rewrites are recorded as traces whose
steps each carry enough data to be re-checked arithmetically; a trace
is evidence, not just a log.

Rules:
  same_b          [w, b) + [w', b)  =  [w + w', b)
  same_omega      [w, b) + [w, b')  =  [w, b*b')
  strip_zero      [(0, w2..), b)    =  [(w2..), b)
  frob_twist      [w, b)            =  [F^r w, b)
  power_adjust_b  [w, b)            =  [w, gamma^(p^m) * b)
  absorb          [(b, 0,..,0), b)  =  split
  pth_power_b     [w, gamma^(p^m))  =  split
  as_coboundary   [F(g) - g, b)     =  split
"""

import dataclasses
import math

from . import coeff
from .errors import (
    HypothesisViolation,
    NoRootError,
    RuleViolation,
    ShapeMismatch,
    SpecMismatch,
    UnsupportedInput,
)
from .valued import LaurentElem, frobenius_power, nth_root, pth_root
from .witt import WittVector, artin_schreier_map, frobenius_twist, witt_add

SPLIT = "split"


class BrauerSymbol:
    """[omega, b): omega a Witt vector of Laurent components, b nonzero."""

    __slots__ = ("p", "m", "omega", "b")

    def __init__(self, omega, b):
        if not isinstance(omega, WittVector):
            raise ShapeMismatch("expected a Witt vector for the first slot")
        if not isinstance(omega.components[0], LaurentElem):
            raise ShapeMismatch("symbol components must be Laurent series")
        if not isinstance(b, LaurentElem):
            raise ShapeMismatch("expected a Laurent series for the second slot")
        if b.spec != omega.components[0].spec:
            raise SpecMismatch("omega and b live over different residue fields")
        if b.is_apparent_zero:
            raise ShapeMismatch("second slot must have a visible leading term")
        object.__setattr__(self, "p", omega.p)
        object.__setattr__(self, "m", omega.m)
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name, value):
        raise AttributeError("BrauerSymbol is immutable")

    def __eq__(self, other):
        if not isinstance(other, BrauerSymbol):
            return NotImplemented
        return self.omega == other.omega and self.b == other.b

    __hash__ = None

    def __str__(self):
        from .grammar import render_symbol

        return render_symbol(self)

    def __repr__(self):
        return f"BrauerSymbol({self!s})"


@dataclasses.dataclass(frozen=True)
class TraceStep:
    rule: str
    before: tuple
    after: object
    params: dict = dataclasses.field(default_factory=dict)

    def validate(self):
        checker = _VALIDATORS.get(self.rule)
        if checker is None:
            raise RuleViolation(f"unknown rule {self.rule!r}")
        checker(self)


@dataclasses.dataclass(frozen=True)
class RewriteTrace:
    steps: tuple
    note: str = ""

    def validate(self):
        for step in self.steps:
            step.validate()
        return True

    def __len__(self):
        return len(self.steps)

    @property
    def concludes_split(self):
        return bool(self.steps) and self.steps[-1].after is SPLIT


@dataclasses.dataclass(frozen=True)
class RewriteOutcome:
    symbol: object
    trace: RewriteTrace


def _want(cond, message):
    if not cond:
        raise RuleViolation(message)


def _one_before(step):
    _want(len(step.before) == 1, f"{step.rule} expects one input symbol")
    return step.before[0]


def _two_before(step):
    _want(len(step.before) == 2, f"{step.rule} expects two input symbols")
    return step.before


def _check_same_b(step):
    s1, s2 = _two_before(step)
    after = step.after
    _want(isinstance(after, BrauerSymbol), "same_b must produce a symbol")
    _want(s1.b == s2.b and after.b == s1.b, "same_b requires one common b")
    _want(
        after.omega == witt_add(s1.omega, s2.omega),
        "same_b output vector is not the Witt sum of the inputs",
    )


def _check_same_omega(step):
    s1, s2 = _two_before(step)
    after = step.after
    _want(isinstance(after, BrauerSymbol), "same_omega must produce a symbol")
    _want(s1.omega == s2.omega and after.omega == s1.omega,
          "same_omega requires one common vector")
    _want(after.b == s1.b * s2.b, "same_omega output b is not the product")


def _check_strip_zero(step):
    s = _one_before(step)
    after = step.after
    _want(isinstance(after, BrauerSymbol), "strip_zero must produce a symbol")
    _want(s.m >= 2, "strip_zero needs at least two components")
    _want(s.omega.components[0].is_apparent_zero,
          "strip_zero needs a zero leading component")
    _want(after.m == s.m - 1, "strip_zero must drop exactly one component")
    _want(
        all(a == b for a, b in zip(after.omega.components, s.omega.components[1:])),
        "strip_zero must keep the remaining components",
    )
    _want(after.b == s.b, "strip_zero must keep b")


def _check_frob_twist(step):
    s = _one_before(step)
    after = step.after
    r = step.params.get("r")
    _want(isinstance(after, BrauerSymbol), "frob_twist must produce a symbol")
    _want(isinstance(r, int) and r >= 0, "frob_twist needs a power r >= 0")
    _want(after.omega == frobenius_twist(s.omega, r),
          "frob_twist output is not the componentwise p^r power")
    _want(after.b == s.b, "frob_twist must keep b")


def _check_power_adjust_b(step):
    s = _one_before(step)
    after = step.after
    gamma = step.params.get("gamma")
    _want(isinstance(after, BrauerSymbol), "power_adjust_b must produce a symbol")
    _want(isinstance(gamma, LaurentElem), "power_adjust_b needs a witness gamma")
    _want(after.omega == s.omega, "power_adjust_b must keep the vector")
    _want(
        after.b == frobenius_power(gamma, s.m) * s.b,
        "power_adjust_b output b is not gamma^(p^m) times the input b",
    )


def _check_absorb(step):
    s = _one_before(step)
    _want(step.after is SPLIT, "absorb is a terminal split rule")
    comps = s.omega.components
    _want(comps[0] == s.b, "absorb needs the leading component to equal b")
    _want(
        all(c.is_apparent_zero for c in comps[1:]),
        "absorb needs zero trailing components",
    )


def _check_pth_power_b(step):
    s = _one_before(step)
    _want(step.after is SPLIT, "pth_power_b is a terminal split rule")
    gamma = step.params.get("gamma")
    _want(isinstance(gamma, LaurentElem), "pth_power_b needs a witness gamma")
    _want(
        frobenius_power(gamma, s.m) == s.b,
        "pth_power_b needs b to be the p^m-th power of the witness",
    )


def _check_as_coboundary(step):
    s = _one_before(step)
    _want(step.after is SPLIT, "as_coboundary is a terminal split rule")
    g = step.params.get("g")
    _want(isinstance(g, WittVector), "as_coboundary needs a vector witness g")
    _want(
        artin_schreier_map(g) == s.omega,
        "as_coboundary needs omega to equal F(g) - g",
    )


_VALIDATORS = {
    "same_b": _check_same_b,
    "same_omega": _check_same_omega,
    "strip_zero": _check_strip_zero,
    "frob_twist": _check_frob_twist,
    "power_adjust_b": _check_power_adjust_b,
    "absorb": _check_absorb,
    "pth_power_b": _check_pth_power_b,
    "as_coboundary": _check_as_coboundary,
}


def _zero_like(a):
    return a.scale_int(0)


def _vector(p, comps):
    return WittVector(p, len(comps), comps)


def same_b_add(s1, s2):
    if s1.b != s2.b:
        raise HypothesisViolation("same_b needs a common b")
    out = BrauerSymbol(witt_add(s1.omega, s2.omega), s1.b)
    return out, TraceStep("same_b", (s1, s2), out)


def same_omega_mul(s1, s2):
    if s1.omega != s2.omega:
        raise HypothesisViolation("same_omega needs a common vector")
    out = BrauerSymbol(s1.omega, s1.b * s2.b)
    return out, TraceStep("same_omega", (s1, s2), out)


def strip_zero(sym):
    if sym.m < 2:
        raise HypothesisViolation("strip_zero needs at least two components")
    if not sym.omega.components[0].is_apparent_zero:
        raise HypothesisViolation("strip_zero needs a zero leading component")
    out = BrauerSymbol(
        _vector(sym.p, sym.omega.components[1:]), sym.b
    )
    return out, TraceStep("strip_zero", (sym,), out)


def frob_twist(sym, r=1):
    out = BrauerSymbol(frobenius_twist(sym.omega, r), sym.b)
    return out, TraceStep("frob_twist", (sym,), out, {"r": r})


def power_adjust_b(sym, gamma):
    out = BrauerSymbol(sym.omega, frobenius_power(gamma, sym.m) * sym.b)
    return out, TraceStep("power_adjust_b", (sym,), out, {"gamma": gamma})


def absorb_split(sym):
    comps = sym.omega.components
    if comps[0] != sym.b or not all(c.is_apparent_zero for c in comps[1:]):
        raise HypothesisViolation("absorb needs the shape [(b, 0, ..., 0), b)")
    return TraceStep("absorb", (sym,), SPLIT)


def pth_power_b_split(sym, gamma):
    return TraceStep("pth_power_b", (sym,), SPLIT, {"gamma": gamma})


def as_coboundary_split(sym, g):
    return TraceStep("as_coboundary", (sym,), SPLIT, {"g": g})


def _binom_mod_p(p, i):
    """(p-1)! / (i! (p-i)!) as a plain integer (it divides exactly)."""
    return math.factorial(p - 1) // (math.factorial(i) * math.factorial(p - i))


def _lemma53_core(r, i, c, b):
    """Split trace for [a2, b) with a2 = r * c^(p*i) * b^(p-i), as a
    length-1 symbol.  Needs i coprime to p; r is an integer scalar."""
    p = b.spec.p
    if i % p == 0:
        raise HypothesisViolation("the exponent i must be coprime to p")
    cp = frobenius_power(c, 1)
    a2 = ((cp ** i) * (b ** (p - i))).scale_int(r)
    sym = BrauerSymbol(_vector(p, (a2,)), b)
    if a2.is_apparent_zero:
        g = _vector(p, (_zero_like(b),))
        return sym, RewriteTrace((as_coboundary_split(sym, g),))
    i0 = i % p
    j0 = p - i0
    lam = pow(j0, -1, p)
    a_star = a2.scale_int(lam)
    s_star = BrauerSymbol(_vector(p, (a_star,)), b)
    steps = []
    # [a2, b) as the j0-fold sum of [a_star, b)
    acc = s_star
    for _ in range(j0 - 1):
        acc, step = same_b_add(acc, s_star)
        steps.append(step)
    # the j0-fold sum collapses to [a_star, b^j0)
    acc2 = s_star
    for _ in range(j0 - 1):
        acc2, step = same_omega_mul(acc2, s_star)
        steps.append(step)
    # link b^j0 = a_star * X and split both factors
    eta_scalar = (pow(lam, -1, p) * pow(r % p, -1, p)) % p
    k_prime = (i - i0) // p
    x_factor = ((cp ** i).inverse() * (b ** (p * k_prime))).scale_int(eta_scalar)
    s_self = BrauerSymbol(_vector(p, (a_star,)), a_star)
    s_x = BrauerSymbol(_vector(p, (a_star,)), x_factor)
    _, link = same_omega_mul(s_self, s_x)
    steps.append(link)
    steps.append(absorb_split(s_self))
    gamma = (c ** i).inverse().scale_int(eta_scalar) * (b ** k_prime)
    steps.append(pth_power_b_split(s_x, gamma))
    return sym, RewriteTrace(tuple(steps))


def lemma53_split(r, i, c, b):
    """Certified split of [(0, r * c^(p*i) * b^(p-i)), b), length 2.

    Returns a RewriteOutcome whose symbol is the length-2 input and
    whose trace begins by stripping the zero component.
    """
    inner, core = _lemma53_core(r, i, c, b)
    zero = _zero_like(b)
    sym = BrauerSymbol(_vector(b.spec.p, (zero, inner.omega.components[0])), b)
    if len(core.steps) == 1 and core.steps[0].rule == "as_coboundary":
        g = _vector(b.spec.p, (zero, zero))
        trace = RewriteTrace((as_coboundary_split(sym, g),))
        return RewriteOutcome(SPLIT, trace)
    _, strip = strip_zero(sym)
    return RewriteOutcome(SPLIT, RewriteTrace((strip,) + core.steps))


def lemma54_rewrite(sym):
    """Rewrite [(c^p, w2), b) as [(c^p + b, w2), b) with a certificate.

    The leading component must have a p-th root (NoRootError otherwise).
    The exact Witt sum with (b, 0) perturbs the second component by
    cross terms r_i c^(p i) b^(p-i); each of those is split away by the
    length-2 split certificates, which is why w2 survives unchanged.
    """
    if sym.m != 2:
        raise HypothesisViolation("this rewrite needs length-2 symbols")
    omega1, omega2 = sym.omega.components
    c = pth_root(omega1)
    if c is None:
        raise NoRootError("leading component has no p-th root")
    p = sym.p
    b = sym.b
    zero = _zero_like(b)
    steps = []
    trivial = BrauerSymbol(_vector(p, (b, zero)), b)
    steps.append(absorb_split(trivial))
    mixed, step = same_b_add(sym, trivial)
    steps.append(step)
    # mixed = [(omega1 + b, omega2 - sum_i r_i c^(p i) b^(p-i)), b);
    # add back each cross term with its split certificate
    acc = mixed
    cp = frobenius_power(c, 1)
    for i in range(1, p):
        coef = _binom_mod_p(p, i) % p
        if coef == 0:
            continue
        piece = lemma53_split(coef, i, c, b)
        steps.extend(piece.trace.steps)
        cross = ((cp ** i) * (b ** (p - i))).scale_int(coef)
        piece_sym = BrauerSymbol(_vector(p, (zero, cross)), b)
        acc, step = same_b_add(acc, piece_sym)
        steps.append(step)
    return RewriteOutcome(acc, RewriteTrace(tuple(steps)))


def _min_term_val(omega):
    """min(0, valuations of the term-bearing components)."""
    m0 = 0
    for comp in omega.components:
        if not comp.is_apparent_zero:
            m0 = min(m0, comp.val())
    return m0


def normalize_symbol(sym):
    """Make b dominant: arrange v(b) < min(0, v(omega_i)) with v(b)
    kept coprime to p, twisting the vector first when some component
    has no p-th root.

    Raises HypothesisViolation unless gcd(v(b), p) = 1.
    """
    vb = sym.b.val()
    p = sym.p
    if math.gcd(vb, p) != 1:
        raise HypothesisViolation("v(b) must be coprime to p")
    steps = []
    current = sym
    needs_twist = any(
        not comp.is_apparent_zero and pth_root(comp) is None
        for comp in current.omega.components
    )
    if needs_twist:
        current, step = frob_twist(current, 1)
        steps.append(step)
    m0 = _min_term_val(current.omega)
    pm = p ** sym.m
    if vb >= m0:
        r = (vb - m0) // pm + 1
        gamma = LaurentElem.t_power(current.b.spec, -r, current.b.precision)
        current, step = power_adjust_b(current, gamma)
        steps.append(step)
    return RewriteOutcome(current, RewriteTrace(tuple(steps)))


def _iterated_pth_root(b, times):
    out = b
    for _ in range(times):
        out = pth_root(out)
        if out is None:
            return None
    return out


def _split_steps_m1(sym):
    """Split certificate steps for a length-1 symbol, or None."""
    from .extension import as_reduce

    p = sym.p
    omega = sym.omega.components[0]
    b = sym.b
    if omega.is_apparent_zero:
        return [as_coboundary_split(sym, _vector(p, (_zero_like(b),)))]
    gamma = _iterated_pth_root(b, 1)
    if gamma is not None:
        return [pth_power_b_split(sym, gamma)]
    red = as_reduce(omega)
    if red.kind == "zero":
        return [as_coboundary_split(sym, _vector(p, (red.witness,)))]
    if red.kind == "constant":
        try:
            w = coeff.in_AS_image(red.constant)
        except UnsupportedInput:
            w = None
        if w is not None:
            g = red.witness + LaurentElem.from_residue(
                w, max(red.element.precision, 1)
            )
            return [as_coboundary_split(sym, _vector(p, (g,)))]
        return None
    # look for the shape r * c^(p i) * b^(p-i)
    for r in range(1, p):
        r_inv = pow(r, -1, p)
        for i in range(1, p):
            candidate = (omega * (b ** (p - i)).inverse()).scale_int(r_inv)
            d = pth_root(candidate)
            if d is None:
                continue
            c = nth_root(d, i) if i > 1 else d
            if c is None:
                continue
            inner, core = _lemma53_core(r, i, c, b)
            if inner == sym:
                return list(core.steps)
    return None


def is_split_quick(sym):
    """Look for a certified split of the symbol.

    Returns a RewriteTrace concluding split, or None when no split was
    detected; None is not evidence that the symbol does not split.
    """
    from .extension import witt_reduce
    from .witt import witt_neg

    p = sym.p
    b = sym.b
    if all(c.is_apparent_zero for c in sym.omega.components):
        zero = _zero_like(b)
        g = _vector(p, (zero,) * sym.m)
        return RewriteTrace((as_coboundary_split(sym, g),))
    gamma = _iterated_pth_root(b, sym.m)
    if gamma is not None:
        return RewriteTrace((pth_power_b_split(sym, gamma),))
    if sym.m == 1:
        steps = _split_steps_m1(sym)
        return RewriteTrace(tuple(steps)) if steps is not None else None
    if sym.m != 2:
        return None
    res = witt_reduce(sym.omega)
    if res.first_kind != "zero":
        return None
    steps = []
    reduced_sym = sym
    if not all(c.is_apparent_zero for c in res.witness.components):
        neg_g = witt_neg(res.witness)
        cob = BrauerSymbol(artin_schreier_map(neg_g), b)
        steps.append(as_coboundary_split(cob, neg_g))
        reduced_sym, step = same_b_add(sym, cob)
        steps.append(step)
    if all(c.is_apparent_zero for c in reduced_sym.omega.components):
        g = _vector(p, (_zero_like(b), _zero_like(b)))
        steps.append(as_coboundary_split(reduced_sym, g))
        return RewriteTrace(tuple(steps))
    inner_sym, strip = strip_zero(reduced_sym)
    steps.append(strip)
    inner_steps = _split_steps_m1(inner_sym)
    if inner_steps is None:
        return None
    return RewriteTrace(tuple(steps) + tuple(inner_steps))
