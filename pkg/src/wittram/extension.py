"""Reduction and classification of degree-p and degree-p^2 equations.

Everything here works over K = k((t)).  An equation x^p - x = omega is
reduced by subtracting Artin-Schreier coboundaries g^p - g until the
right side is zero, a constant, or has negative valuation; the shape of
the reduced form decides how K(x)/K ramifies.  Length-2 vectors get the
same treatment one component at a time, with every step applied through
the Witt group law so the pair stays in the same class.
"""

import dataclasses
import enum
from fractions import Fraction

from . import coeff
from .errors import (
    DegenerateExtension,
    HypothesisViolation,
    PrecisionExhausted,
    ShapeMismatch,
    SpecMismatch,
    UnsupportedCase,
    UnsupportedInput,
)
from .valued import LaurentElem, frobenius_power
from .witt import WittVector, artin_schreier_map, sum_polys, witt_add, witt_sub


class Classification(enum.Enum):
    SPLIT = "split"
    UNRAMIFIED = "unramified"
    TOTALLY_RAMIFIED = "totally_ramified"
    UNCLASSIFIED = "unclassified"


@dataclasses.dataclass(frozen=True)
class ReducedForm:
    """Outcome of coboundary reduction of a single Laurent element.

    kind is one of "zero", "neg_coprime", "stalled", "constant";
    witness g satisfies original = element + (g^p - g) up to precision.
    """

    kind: str
    element: "LaurentElem"
    constant: object
    witness: "LaurentElem"
    steps: tuple


@dataclasses.dataclass(frozen=True)
class RamReport:
    classification: Classification
    trace: tuple
    evidence: dict
    reduced: object
    source: str


def _strip_witness(omega):
    """Witness c for one leading-term strip, or None if no strip applies.

    A strip applies when val(omega) is negative, divisible by p, and the
    leading coefficient has a p-th root r; then c = r * t^(v/p) and
    omega - (c^p - c) has strictly larger valuation.
    """
    if omega.is_apparent_zero:
        return None
    v = omega.val()
    p = omega.spec.p
    if v >= 0 or v % p != 0:
        return None
    r = coeff.pth_root(omega.leading_coeff())
    if r is None:
        return None
    prec = max(omega.precision, v // p + 1)
    return LaurentElem(omega.spec, {v // p: r}, prec)


def _tail_witness(omega):
    """Witness g with g^p - g = tail(omega) for the positive-val tail.

    g = -(tau + tau^p + tau^(p^2) + ...), truncated once the power's
    valuation clears the working precision.
    """
    tail_terms = {e: c for e, c in omega.terms.items() if e >= 1}
    tau = LaurentElem(omega.spec, tail_terms, omega.precision)
    if tau.is_apparent_zero:
        return None
    g = tau
    power = tau
    while power.val_lower_bound() * omega.spec.p < omega.precision:
        power = frobenius_power(power, 1)
        if power.is_apparent_zero:
            break
        g = g + power
    return -g


def _coboundary(g):
    return frobenius_power(g, 1) - g


def as_reduce(omega):
    """Reduce omega modulo Artin-Schreier coboundaries g^p - g.

    Returns a ReducedForm.  Raises PrecisionExhausted when omega looks
    like zero but the precision window is empty (nothing is known).
    """
    if not isinstance(omega, LaurentElem):
        raise ShapeMismatch("as_reduce expects a Laurent series element")
    steps = []
    witness = omega.scale_int(0)
    current = omega
    while True:
        if current.is_apparent_zero:
            if current.precision <= 0:
                raise PrecisionExhausted(
                    "series is zero to the available precision but the "
                    "precision window is empty"
                )
            return ReducedForm("zero", current, None, witness, tuple(steps))
        v = current.val()
        if v < 0:
            if v % current.spec.p != 0:
                return ReducedForm("neg_coprime", current, None, witness, tuple(steps))
            c = _strip_witness(current)
            if c is None:
                steps.append(
                    {
                        "op": "stall",
                        "valuation": v,
                        "leading": str(current.leading_coeff()),
                    }
                )
                return ReducedForm("stalled", current, None, witness, tuple(steps))
            current = current - _coboundary(c)
            witness = witness + c
            steps.append({"op": "strip", "witness": str(c), "new_val_above": v})
            continue
        g = _tail_witness(current)
        if g is not None:
            current = current - _coboundary(g)
            witness = witness + g
            steps.append({"op": "absorb_tail", "witness": str(g)})
            continue
        const = current.residue_at(0)
        return ReducedForm("constant", current, const, witness, tuple(steps))


def tr_valuation_evidence(p, m, v1):
    """Root valuations forced by a reduced first component of valuation v1."""
    if m == 1:
        return (Fraction(v1, p),)
    if m == 2:
        return (Fraction(v1, p), Fraction(v1 * (p * p - p + 1), p * p))
    raise UnsupportedCase("valuation evidence implemented for m <= 2")


def newton_valuations(eta):
    """Root valuations (v(x1), v(x2)) for length-2 data eta meeting the
    totally ramified hypotheses: v(eta1) < 0 and coprime to p, and
    v(eta1) < v(eta2).

    v(x1) = v(eta1)/p and v(x2) = ((p-1)v(eta1) + v(x1))/p; the second
    has denominator exactly p^2.  Raises HypothesisViolation when a
    hypothesis fails and PrecisionExhausted when eta2 looks like zero
    but its precision cannot certify v(eta1) < v(eta2).
    """
    if not isinstance(eta, WittVector) or eta.m != 2:
        raise ShapeMismatch("expected a length-2 vector")
    p = eta.p
    comp1, comp2 = eta.components
    if comp1.is_apparent_zero:
        raise HypothesisViolation("the first component must be nonzero")
    v1 = comp1.val()
    if v1 >= 0:
        raise HypothesisViolation(f"v(eta1) = {v1} is not negative")
    if v1 % p == 0:
        raise HypothesisViolation(f"v(eta1) = {v1} is divisible by {p}")
    if comp2.is_apparent_zero:
        if comp2.val_lower_bound() <= v1:
            raise PrecisionExhausted(
                "cannot certify v(eta1) < v(eta2) at this precision"
            )
    elif comp2.val() <= v1:
        raise HypothesisViolation("v(eta1) < v(eta2) is required")
    return tr_valuation_evidence(p, 2, v1)


def classify_deg_p(omega):
    """Classify K(x)/K for x^p - x = omega: split, unramified, totally
    ramified, or unclassified when reduction stalls."""
    red = as_reduce(omega)
    p = omega.spec.p
    trace = tuple(red.steps)
    if red.kind == "zero":
        return RamReport(
            Classification.SPLIT,
            trace,
            {"witness": str(red.witness)},
            red.element,
            "classify_deg_p",
        )
    if red.kind == "neg_coprime":
        v = red.element.val()
        return RamReport(
            Classification.TOTALLY_RAMIFIED,
            trace,
            {
                "v_omega": v,
                "v_x1": Fraction(v, p),
                "ramification_index": p,
            },
            red.element,
            "classify_deg_p",
        )
    if red.kind == "stalled":
        return RamReport(
            Classification.UNCLASSIFIED,
            trace,
            {"reason": "leading coefficient has no p-th root in the residue field"},
            red.element,
            "classify_deg_p",
        )
    const = red.constant
    try:
        g = coeff.in_AS_image(const)
    except UnsupportedInput:
        return RamReport(
            Classification.UNCLASSIFIED,
            trace + ({"op": "constant_undecided", "constant": str(const)},),
            {"reason": "membership in the coboundary image is undecided here"},
            red.element,
            "classify_deg_p",
        )
    if g is not None:
        return RamReport(
            Classification.SPLIT,
            trace + ({"op": "constant_split", "witness": str(g)},),
            {"witness": str(red.witness), "constant_witness": str(g)},
            red.element.scale_int(0),
            "classify_deg_p",
        )
    return RamReport(
        Classification.UNRAMIFIED,
        trace,
        {"residue_constant": str(const), "residue_degree": p},
        red.element,
        "classify_deg_p",
    )


def _unit_vector(eta, idx, g):
    """The vector with g in slot idx and zeros elsewhere."""
    zero = eta.components[0].scale_int(0)
    comps = [zero] * eta.m
    comps[idx] = g
    return WittVector(eta.p, eta.m, comps)


def _reduce_component(eta, witness, idx, steps):
    """Drive component idx of eta to a reduced form with vector-level
    coboundary corrections.  Returns (eta, witness, kind, constant);
    the witness vector accumulates g with eta_in = eta_out + (F(g) - g)."""
    def correct(state, g):
        eta, witness = state
        vec = _unit_vector(eta, idx, g)
        return witt_sub(eta, artin_schreier_map(vec)), witt_add(witness, vec)

    state = (eta, witness)
    while True:
        eta, witness = state
        comp = eta.components[idx]
        if comp.is_apparent_zero:
            if comp.precision <= 0:
                return eta, witness, "opaque", None
            return eta, witness, "zero", None
        v = comp.val()
        if v < 0:
            if v % eta.p != 0:
                return eta, witness, "neg_coprime", None
            c = _strip_witness(comp)
            if c is None:
                steps.append(
                    {
                        "op": "stall",
                        "component": idx,
                        "valuation": v,
                        "leading": str(comp.leading_coeff()),
                    }
                )
                return eta, witness, "stalled", None
            state = correct(state, c)
            steps.append({"op": "strip", "component": idx, "witness": str(c)})
            continue
        g = _tail_witness(comp)
        if g is not None:
            state = correct(state, g)
            steps.append({"op": "absorb_tail", "component": idx, "witness": str(g)})
            continue
        const = comp.residue_at(0)
        try:
            w = coeff.in_AS_image(const)
        except UnsupportedInput:
            steps.append({"op": "constant_undecided", "component": idx})
            return eta, witness, "constant_undecided", const
        if w is None:
            return eta, witness, "constant", const
        wl = LaurentElem.from_residue(w, max(comp.precision, 1))
        state = correct(state, wl)
        steps.append({"op": "kill_constant", "component": idx, "witness": str(w)})


@dataclasses.dataclass(frozen=True)
class WittReduceResult:
    reduced: "WittVector"
    first_kind: str
    first_const: object
    second_kind: str
    second_const: object
    steps: tuple
    witness: "WittVector"


def witt_reduce(eta):
    """Reduce both components of a length-2 vector through the group law.

    The result's witness vector g satisfies eta = reduced + (F(g) - g)
    in the Witt group, up to the working precision.
    """
    if not isinstance(eta, WittVector) or eta.m != 2:
        raise ShapeMismatch("witt_reduce expects a length-2 vector")
    if not isinstance(eta.components[0], LaurentElem):
        raise ShapeMismatch("witt_reduce expects Laurent series components")
    steps = []
    zero = eta.components[0].scale_int(0)
    witness = WittVector(eta.p, eta.m, (zero, zero))
    eta, witness, kind1, const1 = _reduce_component(eta, witness, 0, steps)
    eta, witness, kind2, const2 = _reduce_component(eta, witness, 1, steps)
    return WittReduceResult(
        eta, kind1, const1, kind2, const2, tuple(steps), witness
    )


def classify_len2(eta):
    """Classify the degree-p^2 extension attached to a length-2 vector."""
    res = witt_reduce(eta)
    eta = res.reduced
    kind1, const1 = res.first_kind, res.first_const
    kind2, const2 = res.second_kind, res.second_const
    steps = list(res.steps)
    p = eta.p
    trace = tuple(steps)
    comp1, comp2 = eta.components

    if kind1 == "opaque":
        raise PrecisionExhausted(
            "first component is zero to an empty precision window"
        )

    if kind1 == "zero":
        inner = _classify_reduced_single(p, kind2, const2, comp2)
        return RamReport(
            inner[0],
            trace + ({"op": "degenerate", "note": "first component reduces to zero; "
                      "the pair generates only a degree-p extension"},),
            dict(inner[1], degenerate=True),
            eta,
            "classify_len2",
        )

    if kind1 == "neg_coprime":
        v1 = comp1.val()
        threshold = v1 * (p * p - p + 1)  # p * ((p-1)*v1 + v1/p)
        if comp2.is_apparent_zero:
            bound = comp2.val_lower_bound()
            if p * bound <= threshold:
                raise PrecisionExhausted(
                    "second component is zero to a precision too small to "
                    "separate it from the dominant cross term"
                )
            dominated = True
            v2 = None
        else:
            v2 = comp2.val()
            dominated = p * v2 > threshold
        if dominated:
            vx1, vx2 = tr_valuation_evidence(p, 2, v1)
            return RamReport(
                Classification.TOTALLY_RAMIFIED,
                trace,
                {
                    "v_omega1": v1,
                    "v_x1": vx1,
                    "v_x2": vx2,
                    "ramification_index": p * p,
                    "value_group_note": "v(x2) lies in (1/p^2)Z but not in (1/p)Z",
                },
                eta,
                "classify_len2",
            )
        return RamReport(
            Classification.UNCLASSIFIED,
            trace,
            {
                "reason": "second component dominates; finishing the reduction "
                "needs arithmetic over the degree-p subextension",
                "v_omega1": v1,
                "v_omega2": v2,
            },
            eta,
            "classify_len2",
        )

    if kind1 == "constant":
        if kind2 in ("zero", "constant"):
            return RamReport(
                Classification.UNRAMIFIED,
                trace,
                {
                    "residue_constant": str(const1),
                    "second_constant": str(const2) if const2 is not None else "0",
                    "note": "unramified; the degree divides p^2 and may drop "
                    "if the second level splits over the first",
                },
                eta,
                "classify_len2",
            )
        return RamReport(
            Classification.UNCLASSIFIED,
            trace,
            {"reason": "first level is unramified but the second component "
             "is not integral or not decided"},
            eta,
            "classify_len2",
        )

    return RamReport(
        Classification.UNCLASSIFIED,
        trace,
        {"reason": "reduction of a component stalled or was undecided"},
        eta,
        "classify_len2",
    )


def _classify_reduced_single(p, kind, const, comp):
    """Classification data for an already-reduced single component."""
    if kind == "zero":
        return (Classification.SPLIT, {})
    if kind == "neg_coprime":
        v = comp.val()
        return (
            Classification.TOTALLY_RAMIFIED,
            {"v_omega": v, "v_x1": Fraction(v, p), "ramification_index": p},
        )
    if kind == "constant":
        return (
            Classification.UNRAMIFIED,
            {"residue_constant": str(const), "residue_degree": p},
        )
    return (Classification.UNCLASSIFIED, {"reason": f"component reduction: {kind}"})


def _second_relation_coeffs(p, omega1, omega2):
    """Coefficients R[0..p-1] with x2^p = x2 + sum_i R[i] x1^i.

    Read off the universal addition law: the second ghost equation for
    (x1^p, x2^p) = (x1, x2) + (omega1, omega2) gives x2^p in terms of
    x2, omega2, and cross terms x1^i omega1^(p-i).
    """
    s1 = sum_polys(p, 2)[1]
    coeffs = {i: None for i in range(p)}
    coeffs[0] = omega2
    saw_x1 = False
    saw_y1 = False
    for mono, c in s1.terms.items():
        e_x0, e_x1, e_y0, e_y1 = mono
        if mono == (0, 1, 0, 0):
            if c != 1:
                raise SpecMismatch("unexpected addition-law shape")
            saw_x1 = True
            continue
        if mono == (0, 0, 0, 1):
            if c != 1:
                raise SpecMismatch("unexpected addition-law shape")
            saw_y1 = True
            continue
        if e_x1 or e_y1:
            raise SpecMismatch("unexpected mixed term in the addition law")
        if e_x0 + e_y0 != p or e_x0 < 1 or e_y0 < 1:
            raise SpecMismatch("unexpected cross term in the addition law")
        term = (omega1 ** e_y0).scale_int(c)
        if coeffs[e_x0] is None:
            coeffs[e_x0] = term
        else:
            coeffs[e_x0] = coeffs[e_x0] + term
    if not (saw_x1 and saw_y1):
        raise SpecMismatch("addition law is missing its linear terms")
    zero = omega1.scale_int(0)
    return tuple(zero if coeffs[i] is None else coeffs[i] for i in range(p))


class CyclicExtDesc:
    """A cyclic extension of degree p^m (m <= 2) given by reduced data.

    m = 1: K(x1), x1^p = x1 + omega1.
    m = 2: K(x1, x2), x1^p = x1 + omega1 and x2^p = x2 + R(x1).
    """

    __slots__ = ("p", "m", "omega", "omega1", "relation", "first_report")

    def __init__(self, omega):
        if not isinstance(omega, WittVector):
            raise ShapeMismatch("expected a Witt vector of Laurent components")
        if omega.m not in (1, 2):
            raise UnsupportedCase("extension arithmetic implemented for m <= 2")
        if not isinstance(omega.components[0], LaurentElem):
            raise ShapeMismatch("expected Laurent series components")
        first_report = classify_deg_p(omega.components[0])
        if first_report.classification is Classification.SPLIT:
            raise DegenerateExtension(
                "first component splits; the data does not define a degree-p^m field"
            )
        object.__setattr__(self, "p", omega.p)
        object.__setattr__(self, "m", omega.m)
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "omega1", omega.components[0])
        if omega.m == 2:
            rel = _second_relation_coeffs(
                omega.p, omega.components[0], omega.components[1]
            )
        else:
            rel = None
        object.__setattr__(self, "relation", rel)
        object.__setattr__(self, "first_report", first_report)

    def __setattr__(self, name, value):
        raise AttributeError("CyclicExtDesc is immutable")

    @property
    def degree(self):
        return self.p ** self.m

    def zero_scalar(self):
        return self.omega1.scale_int(0)

    def scalar(self, a):
        return ExtensionElem(self, {(0, 0): a})

    def x1(self):
        return ExtensionElem(self, {(1, 0): self.omega1.ring_one()})

    def x2(self):
        if self.m != 2:
            raise UnsupportedCase("x2 exists only for m = 2")
        return ExtensionElem(self, {(0, 1): self.omega1.ring_one()})

    def basis(self):
        top2 = self.p if self.m == 2 else 1
        return [(i, j) for j in range(top2) for i in range(self.p)]


class ExtensionElem:
    """Element of the extension in the basis x1^i x2^j, 0 <= i, j < p."""

    __slots__ = ("desc", "coeffs")

    def __init__(self, desc, coeffs):
        p = desc.p
        top2 = p if desc.m == 2 else 1
        clean = {}
        for (i, j), a in coeffs.items():
            if not (0 <= i < p and 0 <= j < top2):
                raise ShapeMismatch("basis exponent out of range")
            if not isinstance(a, LaurentElem):
                raise ShapeMismatch("coefficients must be Laurent series")
            clean[(i, j)] = a
        object.__setattr__(self, "desc", desc)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("ExtensionElem is immutable")

    def coeff_at(self, i, j=0):
        a = self.coeffs.get((i, j))
        if a is None:
            return self.desc.zero_scalar()
        return a

    def _check(self, other):
        if not isinstance(other, ExtensionElem):
            raise TypeError("expected an ExtensionElem")
        if other.desc is not self.desc and other.desc.omega != self.desc.omega:
            raise SpecMismatch("elements live in different extensions")

    def __add__(self, other):
        self._check(other)
        coeffs = dict(self.coeffs)
        for key, a in other.coeffs.items():
            coeffs[key] = coeffs[key] + a if key in coeffs else a
        return ExtensionElem(self.desc, coeffs)

    def __neg__(self):
        return ExtensionElem(self.desc, {k: -a for k, a in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a):
        return ExtensionElem(self.desc, {k: c * a for k, c in self.coeffs.items()})

    def __mul__(self, other):
        self._check(other)
        p = self.desc.p
        out = {}
        work = []
        for (i1, j1), a in self.coeffs.items():
            for (i2, j2), b in other.coeffs.items():
                work.append((i1 + i2, j1 + j2, a * b))
        while work:
            i, j, a = work.pop()
            if j >= p:
                # x2^p = x2 + R(x1)
                work.append((i, j - p + 1, a))
                for k, r in enumerate(self.desc.relation):
                    work.append((i + k, j - p, a * r))
                continue
            if i >= p:
                # x1^p = x1 + omega1
                work.append((i - p + 1, j, a))
                work.append((i - p, j, a * self.desc.omega1))
                continue
            key = (i, j)
            out[key] = out[key] + a if key in out else a
        return ExtensionElem(self.desc, out)

    def __pow__(self, e):
        if e < 0:
            raise UnsupportedInput("negative powers are not implemented here")
        out = self.desc.scalar(self.desc.omega1.ring_one())
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def is_apparent_zero(self):
        return all(a.is_apparent_zero for a in self.coeffs.values())

    def __eq__(self, other):
        if not isinstance(other, ExtensionElem):
            return NotImplemented
        return (self - other).is_apparent_zero()

    __hash__ = None

    def __repr__(self):
        bits = []
        for (i, j) in self.desc.basis():
            a = self.coeffs.get((i, j))
            if a is None or a.is_apparent_zero:
                continue
            label = ""
            if i:
                label += f"x1^{i}" if i > 1 else "x1"
            if j:
                label += ("*" if label else "") + (f"x2^{j}" if j > 1 else "x2")
            bits.append(f"({a}){'*' + label if label else ''}")
        return "ExtensionElem(" + (" + ".join(bits) if bits else "0") + ")"


def _laurent_det(rows):
    """Determinant by elimination with minimal-valuation pivots.

    Raises PrecisionExhausted when some column carries no term that the
    working precision can see, since the determinant is then not
    separated from zero.
    """
    n = len(rows)
    rows = [list(r) for r in rows]
    sign = 1
    pivots = []
    for col in range(n):
        pivot_row = None
        pivot_val = None
        for r in range(col, n):
            entry = rows[r][col]
            if entry.is_apparent_zero:
                continue
            v = entry.val()
            if pivot_val is None or v < pivot_val:
                pivot_val = v
                pivot_row = r
        if pivot_row is None:
            raise PrecisionExhausted(
                "no usable pivot: determinant not separated from zero"
            )
        if pivot_row != col:
            rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
            sign = -sign
        pivot = rows[col][col]
        inv = pivot.inverse()
        for r in range(col + 1, n):
            entry = rows[r][col]
            if entry.is_apparent_zero:
                continue
            factor = entry * inv
            rows[r] = [
                rows[r][k] - factor * rows[col][k] for k in range(n)
            ]
        pivots.append(pivot)
    det = pivots[0]
    for piv in pivots[1:]:
        det = det * piv
    return det.scale_int(sign)


def norm_element(desc, elem):
    """Field norm: determinant of multiplication by elem on the basis
    x1^i x2^j."""
    if not isinstance(elem, ExtensionElem):
        raise ShapeMismatch("norm_element expects an ExtensionElem")
    if elem.desc is not desc and elem.desc.omega != desc.omega:
        raise SpecMismatch("element does not live in this extension")
    basis = desc.basis()
    index = {key: pos for pos, key in enumerate(basis)}
    n = len(basis)
    zero = desc.zero_scalar()
    cols = []
    for key in basis:
        b = ExtensionElem(desc, {key: desc.omega1.ring_one()})
        prod = elem * b
        col = [zero] * n
        for k, a in prod.coeffs.items():
            col[index[k]] = a
        cols.append(col)
    rows = [[cols[c][r] for c in range(n)] for r in range(n)]
    return _laurent_det(rows)
