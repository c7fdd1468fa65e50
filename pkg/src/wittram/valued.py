"""The complete discrete valued field K = k((t)) with precision tracking.

Elements are finite sums of terms c*t^e known modulo t^N; the integer N
is the absolute precision.  Nothing is ever guessed about coefficients
at or beyond t^N: operations that would need them raise
PrecisionExhausted instead.

Precision propagation rules (tested exactly in the suite):

* add/sub:    min(Na, Nb)
* mul:        min(va + Nb, vb + Na), reading va = Na for apparent zeros
* inverse:    Na - 2*val(a)
* p-th power: p * Na
* p-th root:  ceil(Na / p)

Equality means "indistinguishable at the shared precision": all
coefficients below min(Na, Nb) agree.  Laurent elements are therefore
not hashable.
"""

import math
from fractions import Fraction

from . import coeff as _coeff
from .errors import (
    DivisionByZero,
    LimitExceeded,
    PrecisionExhausted,
    SpecMismatch,
    UnsupportedInput,
)

DEFAULT_PRECISION = 64


class LaurentElem:
    """A Laurent series over the residue field, known modulo t^precision."""

    __slots__ = ("spec", "terms", "precision")

    def __init__(self, spec, terms, precision=DEFAULT_PRECISION):
        limit = spec.p * spec.p * max(abs(precision), DEFAULT_PRECISION)
        clean = {}
        for e, c in terms.items():
            if c.spec != spec:
                raise SpecMismatch("coefficient spec differs from series spec")
            if c.is_zero or e >= precision:
                continue
            if abs(e) > limit:
                raise LimitExceeded(f"exponent {e} outside the desk-scale range")
            clean[e] = c
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "precision", precision)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentElem is immutable")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, spec, precision=DEFAULT_PRECISION):
        return cls(spec, {}, precision)

    @classmethod
    def one(cls, spec, precision=DEFAULT_PRECISION):
        return cls(spec, {0: spec.one()}, precision)

    @classmethod
    def from_residue(cls, c, precision=DEFAULT_PRECISION):
        return cls(c.spec, {0: c}, precision)

    @classmethod
    def from_int(cls, spec, c, precision=DEFAULT_PRECISION):
        return cls(spec, {0: spec.from_int(c)}, precision)

    @classmethod
    def t_power(cls, spec, e, precision=DEFAULT_PRECISION):
        return cls(spec, {e: spec.one()}, precision)

    # -- views ---------------------------------------------------------------

    @property
    def is_apparent_zero(self):
        return not self.terms

    def val(self):
        """The valuation.  Raises PrecisionExhausted on apparent zeros."""
        if not self.terms:
            raise PrecisionExhausted(
                f"no terms visible below t^{self.precision}; valuation unknown"
            )
        return min(self.terms)

    def val_lower_bound(self):
        """A sound lower bound for the valuation (precision on apparent zeros)."""
        return min(self.terms) if self.terms else self.precision

    def leading_coeff(self):
        return self.terms[self.val()]

    def residue_at(self, e):
        return self.terms.get(e, self.spec.zero())

    def truncated(self, precision):
        """A view of the same value at lower (never higher) precision."""
        if precision > self.precision:
            raise UnsupportedInput("cannot raise precision after the fact")
        return LaurentElem(self.spec, self.terms, precision)

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, LaurentElem):
            raise TypeError(f"cannot combine LaurentElem with {type(other).__name__}")
        if other.spec != self.spec:
            raise SpecMismatch(f"{self.spec!r} vs {other.spec!r}")

    def __add__(self, other):
        self._check(other)
        precision = min(self.precision, other.precision)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            cur = terms.get(e)
            terms[e] = c if cur is None else cur + c
        return LaurentElem(self.spec, terms, precision)

    def __neg__(self):
        return LaurentElem(
            self.spec, {e: -c for e, c in self.terms.items()}, self.precision
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        va = self.val_lower_bound()
        vb = other.val_lower_bound()
        precision = min(va + other.precision, vb + self.precision)
        terms = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = ea + eb
                if e >= precision:
                    continue
                prod = ca * cb
                cur = terms.get(e)
                terms[e] = prod if cur is None else cur + prod
        return LaurentElem(self.spec, terms, precision)

    def scale(self, c):
        """Multiply by a residue-field scalar (exact, keeps precision)."""
        return LaurentElem(
            self.spec, {e: x * c for e, x in self.terms.items()}, self.precision
        )

    def scale_int(self, c):
        return LaurentElem(
            self.spec,
            {e: x.scale_int(c) for e, x in self.terms.items()},
            self.precision,
        )

    def ring_one(self):
        return LaurentElem.one(self.spec, max(self.precision, DEFAULT_PRECISION))

    def inverse(self):
        """Series inverse; precision reflects to Na - 2*val(a)."""
        if not self.terms:
            raise PrecisionExhausted("cannot invert an apparent zero")
        v = self.val()
        rel = self.precision - v
        # unit-part coefficients a_0, a_1, ... relative to t^v
        lead_inv = self.terms[v].inverse()
        q = [lead_inv]
        offsets = sorted(e - v for e in self.terms)
        for k in range(1, rel):
            acc = None
            for off in offsets:
                if off == 0 or off > k:
                    continue
                contrib = self.terms[v + off] * q[k - off]
                acc = contrib if acc is None else acc + contrib
            q.append(self.spec.zero() if acc is None else -(lead_inv * acc))
        terms = {-v + k: c for k, c in enumerate(q)}
        return LaurentElem(self.spec, terms, self.precision - 2 * v)

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.ring_one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    # -- comparison -------------------------------------------------------------

    def agrees_with(self, other):
        """True when both series match on all coefficients they both see."""
        self._check(other)
        cut = min(self.precision, other.precision)
        for e in set(self.terms) | set(other.terms):
            if e >= cut:
                continue
            if self.residue_at(e) != other.residue_at(e):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, LaurentElem):
            return NotImplemented
        return self.agrees_with(other)

    __hash__ = None

    def __str__(self):
        from .grammar import render_laurent

        return render_laurent(self)

    def __repr__(self):
        return f"LaurentElem({self!s})"


def laurent_arith(a, b, op):
    """Apply one of {add, sub, mul, inv} (inv ignores b)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown op {op!r}")


def val(a):
    return a.val()


def pth_power(a):
    """The Frobenius: exponents and precision scale by p; coefficients^p."""
    p = a.spec.p
    return LaurentElem(
        a.spec,
        {e * p: c ** p for e, c in a.terms.items()},
        a.precision * p,
    )


def pth_root(a):
    """The unique p-th root if one exists, else None.

    Requires every visible exponent divisible by p and every coefficient
    to have a p-th root in the residue field.  Precision drops to
    ceil(Na / p): the root is only determined that far.
    """
    p = a.spec.p
    terms = {}
    for e, c in a.terms.items():
        if e % p:
            return None
        r = _coeff.pth_root(c)
        if r is None:
            return None
        terms[e // p] = r
    return LaurentElem(a.spec, terms, math.ceil(a.precision / p))


def frobenius_power(a, r):
    """a^(p^r) for r >= 0 via repeated Frobenius."""
    if r < 0:
        raise UnsupportedInput("negative Frobenius power")
    for _ in range(r):
        a = pth_power(a)
    return a


def nth_root(a, n):
    """An n-th root for gcd(n, p) = 1, or None.

    Splits a = c*t^v*(1 + eps): v must be divisible by n, c needs an
    n-th root in the residue field, and the unit part is handled by a
    t-adic Newton iteration (n is invertible mod p, so it converges).
    """
    p = a.spec.p
    if n <= 0 or n % p == 0:
        raise UnsupportedInput("n must be positive and coprime to p")
    if n == 1:
        return a
    if not a.terms:
        return LaurentElem.zero(a.spec, math.ceil(a.precision / n))
    v = a.val()
    if v % n:
        return None
    r0 = _coeff.nth_root(a.leading_coeff(), n)
    if r0 is None:
        return None
    unit = a * LaurentElem(a.spec, {-v: a.leading_coeff().inverse()}, a.precision - v)
    y = LaurentElem.one(a.spec, unit.precision)
    n_inv_scalar = pow(n % p, p - 2, p)
    for _ in range(max(1, math.ceil(math.log2(max(unit.precision, 2))) + 2)):
        err = y ** n - unit
        if err.is_apparent_zero:
            break
        correction = (err / (y ** (n - 1))).scale_int(n_inv_scalar)
        y = y - correction
    root = y.scale(r0) * LaurentElem.t_power(a.spec, v // n, a.precision)
    if (root ** n).agrees_with(a):
        return root
    return None


def ext_val(n, norm_value):
    """Valuation in a degree-n extension: val(norm)/n as an exact Fraction."""
    if n <= 0:
        raise UnsupportedInput("extension degree must be positive")
    return Fraction(norm_value.val(), n)
