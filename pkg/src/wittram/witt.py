"""Truncated Witt vector calculus.

The universal layer works over Z: ghost polynomials w_n, the addition
law S_n, and the negation law N_n are exact integer polynomials obtained
by the standard recursion with exact division by p^n.  The vector layer
evaluates those polynomials on components drawn from any coefficient
ring here (residue elements or Laurent series); the integer coefficients
are reduced mod p at evaluation time.

Generation is capped at m <= 4 and p <= 5: beyond that the universal
polynomials outgrow the desk scale this package targets.
"""

import functools
import math

from .errors import (
    InternalInexactDivision,
    LimitExceeded,
    ShapeMismatch,
    SpecMismatch,
)

_MAX_M = 4
_MAX_P = 5


class IntPoly:
    """A sparse multivariate polynomial over Z.

    Monomials are exponent tuples of fixed length nvars; zero
    coefficients are never stored.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms):
        clean = {}
        for mono, c in terms.items():
            if c == 0:
                continue
            if len(mono) != nvars:
                raise ShapeMismatch("monomial length differs from nvars")
            clean[tuple(mono)] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars, i):
        mono = [0] * nvars
        mono[i] = 1
        return cls(nvars, {tuple(mono): 1})

    @property
    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            terms[mono] = terms.get(mono, 0) + c
        return IntPoly(self.nvars, terms)

    def __neg__(self):
        return IntPoly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        terms = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                mono = tuple(x + y for x, y in zip(ma, mb))
                terms[mono] = terms.get(mono, 0) + ca * cb
        return IntPoly(self.nvars, terms)

    def __pow__(self, e):
        out = IntPoly.constant(self.nvars, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def scale_int(self, c):
        return IntPoly(self.nvars, {m: c * x for m, x in self.terms.items()})

    def ring_one(self):
        return IntPoly.constant(self.nvars, 1)

    def exact_div_int(self, k):
        terms = {}
        for mono, c in self.terms.items():
            q, r = divmod(c, k)
            if r:
                raise InternalInexactDivision(
                    f"coefficient {c} not divisible by {k}"
                )
            terms[mono] = q
        return IntPoly(self.nvars, terms)

    def map_vars(self, mapping, new_nvars):
        """Re-index variables: variable i becomes variable mapping[i]."""
        terms = {}
        for mono, c in self.terms.items():
            out = [0] * new_nvars
            for i, e in enumerate(mono):
                if e:
                    out[mapping[i]] += e
            key = tuple(out)
            terms[key] = terms.get(key, 0) + c
        return IntPoly(new_nvars, terms)

    def evaluate(self, args):
        """Evaluate on ring elements supporting +, **, scale_int, ring_one."""
        if len(args) != self.nvars:
            raise ShapeMismatch("argument count differs from nvars")
        acc = None
        for mono, c in self.terms.items():
            term = None
            for i, e in enumerate(mono):
                if e == 0:
                    continue
                factor = args[i] ** e
                term = factor if term is None else term * factor
            if term is None:
                term = args[0].ring_one()
            term = term.scale_int(c)
            acc = term if acc is None else acc + term
        if acc is None:
            return args[0].scale_int(0)
        return acc

    def compose(self, values):
        """Substitute polynomial values for the variables."""
        return self.evaluate(values)

    def __eq__(self, other):
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        if not self.terms:
            return "IntPoly(0)"
        bits = []
        for mono, c in sorted(self.terms.items()):
            factors = []
            if c != 1 or not any(mono):
                factors.append(str(c))
            for i, e in enumerate(mono):
                if e == 0:
                    continue
                factors.append(f"v{i}" + (f"^{e}" if e > 1 else ""))
            bits.append("*".join(factors))
        return "IntPoly(" + " + ".join(bits) + ")"


def _check_caps(p, m):
    if m < 1 or m > _MAX_M:
        raise LimitExceeded(f"vector length {m} outside 1..{_MAX_M}")
    if p > _MAX_P:
        raise LimitExceeded(f"universal polynomials capped at p <= {_MAX_P}")
    if p < 2 or any(p % d == 0 for d in range(2, p)):
        raise LimitExceeded(f"p must be prime, got {p}")


@functools.lru_cache(maxsize=None)
def ghost_polys(p, m):
    """Ghost components w_n = sum_{i<=n} p^i X_i^(p^(n-i)) for n < m."""
    _check_caps(p, m)
    out = []
    for n in range(m):
        poly = IntPoly(m, {})
        for i in range(n + 1):
            mono = [0] * m
            mono[i] = p ** (n - i)
            poly = poly + IntPoly(m, {tuple(mono): p ** i})
        out.append(poly)
    return tuple(out)


@functools.lru_cache(maxsize=None)
def sum_polys(p, m):
    """Addition law S_0..S_{m-1} in Z[X_0..X_{m-1}, Y_0..Y_{m-1}].

    Defined by w_n(S_0..S_n) = w_n(X) + w_n(Y); solved recursively with
    the division by p^n checked exact.
    """
    _check_caps(p, m)
    nv = 2 * m
    ghosts = ghost_polys(p, m)
    gx = [g.map_vars(list(range(m)), nv) for g in ghosts]
    gy = [g.map_vars([m + i for i in range(m)], nv) for g in ghosts]
    out = []
    for n in range(m):
        rhs = gx[n] + gy[n]
        for i in range(n):
            rhs = rhs - (out[i] ** (p ** (n - i))).scale_int(p ** i)
        out.append(rhs.exact_div_int(p ** n))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def neg_polys(p, m):
    """Negation law N_0..N_{m-1}: w_n(N) = -w_n(X), solved like sum_polys."""
    _check_caps(p, m)
    ghosts = ghost_polys(p, m)
    out = []
    for n in range(m):
        rhs = -ghosts[n]
        for i in range(n):
            rhs = rhs - (out[i] ** (p ** (n - i))).scale_int(p ** i)
        out.append(rhs.exact_div_int(p ** n))
    return tuple(out)


class WittVector:
    """A length-m vector of ring components with the Witt group law."""

    __slots__ = ("p", "m", "components")

    def __init__(self, p, m, components):
        components = tuple(components)
        if len(components) != m:
            raise ShapeMismatch(f"expected {m} components, got {len(components)}")
        _check_caps(p, m)
        first = components[0]
        for c in components[1:]:
            if type(c) is not type(first):
                raise ShapeMismatch("mixed component kinds")
            if c.spec != first.spec:
                raise SpecMismatch("mixed component specs")
        if first.spec.p != p:
            raise SpecMismatch(
                f"component characteristic {first.spec.p} differs from p={p}"
            )
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "components", components)

    def __setattr__(self, name, value):
        raise AttributeError("WittVector is immutable")

    def _check(self, other):
        if not isinstance(other, WittVector):
            raise TypeError("expected a WittVector")
        if other.p != self.p or other.m != self.m:
            raise ShapeMismatch("vector shapes differ")

    def __add__(self, other):
        return witt_add(self, other)

    def __neg__(self):
        return witt_neg(self)

    def __sub__(self, other):
        return witt_sub(self, other)

    def __eq__(self, other):
        if not isinstance(other, WittVector):
            return NotImplemented
        if self.p != other.p or self.m != other.m:
            return False
        return all(a == b for a, b in zip(self.components, other.components))

    __hash__ = None

    def __str__(self):
        from .grammar import render_witt

        return render_witt(self)

    def __repr__(self):
        return f"WittVector({self!s})"


def witt_add(a, b):
    """Componentwise evaluation of the universal addition law."""
    a._check(b)
    polys = sum_polys(a.p, a.m)
    args = a.components + b.components
    return WittVector(a.p, a.m, [s.evaluate(args) for s in polys])


def witt_neg(a):
    polys = neg_polys(a.p, a.m)
    return WittVector(a.p, a.m, [s.evaluate(a.components) for s in polys])


def witt_sub(a, b):
    return witt_add(a, witt_neg(b))


def _component_frobenius(c, r):
    # Laurent components grow precision under the Frobenius; residue
    # components are plain powers.
    from .valued import LaurentElem, frobenius_power

    if isinstance(c, LaurentElem):
        return frobenius_power(c, r)
    return c ** (c.spec.p ** r)


def frobenius_twist(a, r):
    """Componentwise p^r-th powers (the Frobenius acting on the vector)."""
    if r < 0:
        raise LimitExceeded("negative Frobenius power")
    return WittVector(a.p, a.m, [_component_frobenius(c, r) for c in a.components])


def shift_in(a):
    """Prepend a zero component (the additive transfer to length m+1)."""
    zero = a.components[0].scale_int(0)
    return WittVector(a.p, a.m + 1, (zero,) + a.components)


def artin_schreier_map(a):
    """F(a) - a, the additive map whose cokernel indexes the extensions."""
    return witt_sub(frobenius_twist(a, 1), a)


def lemma54_closed_form(p, c, omega2, b):
    """The length-2 sum (c^p, omega2) + (b, 0) written in closed form.

    Returns (c^p + b, omega2 - sum_i ((p-1)!/(i!(p-i)!)) c^(p*i) b^(p-i)),
    which must agree with the universal addition law; the suite checks
    that identity on random inputs.
    """
    from .valued import frobenius_power

    cp = frobenius_power(c, 1)
    first = cp + b
    second = omega2
    for i in range(1, p):
        coef = math.factorial(p - 1) // (math.factorial(i) * math.factorial(p - i))
        term = (frobenius_power(c, 1) ** i) * (b ** (p - i))
        second = second - term.scale_int(coef)
    return WittVector(p, 2, (first, second))
