"""Terms, operators and products in the homogenized differential operator ring.

An operator is a finite sum of terms c * x^alpha * dx^beta * z^k, stored
normal-ordered (all x to the left of all dx).  The only nontrivial relation is
[dx_i, x_i] = z, so a product expands by

    dx^b x^a = sum_j C(b,j) * a!/(a-j)! * x^(a-j) dx^(b-j) z^j

coordinatewise.  Products preserve the total (dx,z)-degree, the grading of the
ring.  An optional cap on the total x-degree truncates formal (power-series)
computations; discarding a term sets the taint flag on the result.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import NamedTuple

from .errors import ZeroOperator
from .params import QQ_FIELD


class Exponent(NamedTuple):
    alpha: tuple
    beta: tuple
    k: int

    def __add__(self, other):
        return Exponent(tuple(a + b for a, b in zip(self.alpha, other.alpha)),
                        tuple(a + b for a, b in zip(self.beta, other.beta)),
                        self.k + other.k)

    def __sub__(self, other):
        return Exponent(tuple(a - b for a, b in zip(self.alpha, other.alpha)),
                        tuple(a - b for a, b in zip(self.beta, other.beta)),
                        self.k - other.k)

    def dominates(self, other):
        """Componentwise >= (self lies in other + N^{2n+1})."""
        return (self.k >= other.k
                and all(a >= b for a, b in zip(self.alpha, other.alpha))
                and all(a >= b for a, b in zip(self.beta, other.beta)))

    @property
    def xdeg(self):
        return sum(self.alpha)

    @property
    def level(self):
        """Total (dx,z)-degree |beta| + k, the grading degree."""
        return sum(self.beta) + self.k

    def vec(self):
        """Point of Z^{2n+1}: (alpha, beta, k)."""
        return self.alpha + self.beta + (self.k,)


def exponent(n, alpha=(), beta=(), k=0):
    a = tuple(alpha) + (0,) * (n - len(alpha))
    b = tuple(beta) + (0,) * (n - len(beta))
    return Exponent(a, b, k)


def _falling(a, j):
    r = 1
    for t in range(j):
        r *= a - t
    return r


class HOperator:
    """Element of the homogenized ring over a coefficient field."""

    __slots__ = ("n", "field", "terms", "cap", "tainted")

    def __init__(self, n, field, terms=None, cap=None, tainted=False):
        self.n = n
        self.field = field
        clean = {}
        if terms:
            for e, c in terms.items():
                if not c:
                    continue
                if cap is not None and e.xdeg > cap:
                    tainted = True
                    continue
                clean[e] = c
        self.terms = clean
        self.cap = cap
        self.tainted = tainted

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, n, field, cap=None):
        return cls(n, field, None, cap=cap)

    @classmethod
    def monomial(cls, n, field, e, coeff=None, cap=None):
        c = field.one if coeff is None else coeff
        return cls(n, field, {e: c}, cap=cap)

    # -- predicates / views -------------------------------------------------

    def is_zero(self):
        return not self.terms

    def support(self):
        return set(self.terms)

    @property
    def hom_degree(self):
        """Common grading degree of all terms, or None if inhomogeneous."""
        levels = {e.level for e in self.terms}
        if len(levels) == 1:
            return levels.pop()
        return None

    def z_free(self):
        return all(e.k == 0 for e in self.terms)

    def __eq__(self, other):
        if not isinstance(other, HOperator):
            return NotImplemented
        if self.n != other.n or set(self.terms) != set(other.terms):
            return False
        return all(self.terms[e] == other.terms[e] for e in self.terms)

    # -- arithmetic ----------------------------------------------------------

    def _meta(self, other):
        cap = self.cap
        if other.cap is not None:
            cap = other.cap if cap is None else min(cap, other.cap)
        return cap, self.tainted or other.tainted

    def __neg__(self):
        return HOperator(self.n, self.field, {e: -c for e, c in self.terms.items()},
                         cap=self.cap, tainted=self.tainted)

    def __add__(self, other):
        cap, taint = self._meta(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            if e in t:
                s = t[e] + c
                if s:
                    t[e] = s
                else:
                    del t[e]
            else:
                t[e] = c
        return HOperator(self.n, self.field, t, cap=cap, tainted=taint)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not c:
            return HOperator.zero(self.n, self.field, cap=self.cap)
        return HOperator(self.n, self.field, {e: v * c for e, v in self.terms.items()},
                         cap=self.cap, tainted=self.tainted)

    def __mul__(self, other):
        """Normal-ordered ring product, truncated at the combined cap."""
        cap, taint = self._meta(other)
        n = self.n
        out = {}
        discarded = False
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                base = c1 * c2
                lims = [min(e1.beta[i], e2.alpha[i]) for i in range(n)]
                if not any(lims):
                    choices = [((0,) * n, 1)]
                else:
                    choices = _commutation_choices(e1.beta, e2.alpha, lims)
                for j, mult in choices:
                    alpha = tuple(e1.alpha[i] + e2.alpha[i] - j[i] for i in range(n))
                    if cap is not None and sum(alpha) > cap:
                        discarded = True
                        continue
                    beta = tuple(e1.beta[i] + e2.beta[i] - j[i] for i in range(n))
                    e = Exponent(alpha, beta, e1.k + e2.k + sum(j))
                    c = base * mult if mult != 1 else base
                    if e in out:
                        s = out[e] + c
                        if s:
                            out[e] = s
                        else:
                            del out[e]
                    else:
                        out[e] = c
        return HOperator(n, self.field, out, cap=cap, tainted=taint or discarded)

    # -- transforms ----------------------------------------------------------

    def truncated(self, cap):
        """Discard terms of x-degree above cap; taint if any were nonzero."""
        t = {e: c for e, c in self.terms.items() if e.xdeg <= cap}
        taint = self.tainted or len(t) != len(self.terms)
        return HOperator(self.n, self.field, t, cap=cap, tainted=taint)

    def with_cap(self, cap):
        """Raise or clear the cap without discarding anything."""
        return HOperator(self.n, self.field, dict(self.terms), cap=cap,
                         tainted=self.tainted)

    def substitute_z_one(self):
        """Project z -> 1, merging exponents (alpha, beta, k) -> (alpha, beta, 0)."""
        out = {}
        for e, c in self.terms.items():
            e0 = Exponent(e.alpha, e.beta, 0)
            if e0 in out:
                s = out[e0] + c
                if s:
                    out[e0] = s
                else:
                    del out[e0]
            else:
                out[e0] = c
        return HOperator(self.n, self.field, out, cap=self.cap, tainted=self.tainted)

    def specialize(self, y0):
        """Coefficientwise evaluation at the parameter point y0."""
        out = {}
        for e, c in self.terms.items():
            v = c if isinstance(c, Fraction) else c.specialize(y0)
            if v:
                out[e] = v
        return HOperator(self.n, QQ_FIELD, out, cap=self.cap, tainted=self.tainted)

    def to_field(self, field):
        """Coerce every coefficient into another coefficient field."""
        out = {}
        for e, c in self.terms.items():
            v = field.coerce(c)
            if v:
                out[e] = v
        return HOperator(self.n, field, out, cap=self.cap, tainted=self.tainted)

    def apply_to_poly(self, f):
        """Action on a commutative polynomial in x (dict alpha -> Fraction),
        with z = 1.  Only meaningful for Fraction coefficients."""
        out = {}
        for e, c in self.terms.items():
            for g, cg in f.items():
                if any(g[i] < e.beta[i] for i in range(self.n)):
                    continue
                mult = 1
                for i in range(self.n):
                    mult *= _falling(g[i], e.beta[i])
                if not mult:
                    continue
                tgt = tuple(g[i] - e.beta[i] + e.alpha[i] for i in range(self.n))
                s = out.get(tgt, Fraction(0)) + c * cg * mult
                if s:
                    out[tgt] = s
                else:
                    out.pop(tgt, None)
        return out

    # -- display -------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        def key(e):
            return (e.level, e.xdeg, e.vec())
        parts = []
        for e in sorted(self.terms, key=key):
            parts.append(_fmt_term(e, self.terms[e]))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    __repr__ = __str__


def _commutation_choices(beta1, alpha2, lims):
    """All j vectors with multiplicity prod_i C(beta1_i, j_i)*(alpha2_i)_{j_i}."""
    from itertools import product
    out = []
    for j in product(*(range(l + 1) for l in lims)):
        mult = 1
        for i, ji in enumerate(j):
            if ji:
                mult *= comb(beta1[i], ji) * _falling(alpha2[i], ji)
        if mult:
            out.append((j, mult))
    return out


def _fmt_term(e, c):
    factors = []
    for i, p in enumerate(e.alpha):
        if p:
            factors.append(f"x{i+1}" + (f"^{p}" if p > 1 else ""))
    for i, p in enumerate(e.beta):
        if p:
            factors.append(f"dx{i+1}" + (f"^{p}" if p > 1 else ""))
    if e.k:
        factors.append("z" + (f"^{e.k}" if e.k > 1 else ""))
    mono = "*".join(factors)
    cs = str(c)
    if not mono:
        return cs
    if cs == "1":
        return mono
    if cs == "-1":
        return "-" + mono
    if any(ch in cs for ch in "+-") and not (cs.startswith("-") and
                                             not any(ch in cs[1:] for ch in "+-")):
        cs = f"({cs})"
    return f"{cs}*{mono}"


def homogenize(p):
    """h(P): insert z-powers so every term has (dx,z)-degree deg(P)."""
    if not p.z_free():
        raise ValueError("operator already involves z")
    if p.is_zero():
        return p
    d = max(sum(e.beta) for e in p.terms)
    out = {Exponent(e.alpha, e.beta, d - sum(e.beta)): c for e, c in p.terms.items()}
    return HOperator(p.n, p.field, out, cap=p.cap, tainted=p.tainted)


def leading_exponent_guard(p):
    if p.is_zero():
        raise ZeroOperator("zero operator has no leading data")
