"""Shared helpers: compact operator builders used across the test modules."""

import random
from fractions import Fraction

import pytest

from dfan.operators import Exponent, HOperator, exponent
from dfan.params import QQ_FIELD, ParamField, ParamIdeal
from dfan.parsing import parse_operator


def op(text, var_names, param_names=(), field=None):
    return parse_operator(text, var_names, param_names, field=field)


def qop(n, terms):
    """HOperator over QQ from {(alpha, beta, k): coeff} with tuples."""
    t = {}
    for (a, b, k), c in terms.items():
        t[Exponent(tuple(a), tuple(b), k)] = Fraction(c)
    return HOperator(n, QQ_FIELD, t)


def random_qop(rng, n, nterms, maxdeg=3, maxk=2):
    terms = {}
    for _ in range(nterms):
        a = tuple(rng.randint(0, maxdeg) for _ in range(n))
        b = tuple(rng.randint(0, maxdeg) for _ in range(n))
        k = rng.randint(0, maxk)
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        if c:
            terms[Exponent(a, b, k)] = c
    return HOperator(n, QQ_FIELD, terms)


@pytest.fixture
def rng():
    return random.Random(20240817)


@pytest.fixture
def F1():
    """Frac(Q[y]) with the zero ideal."""
    return ParamField(1, ParamIdeal.zero(1))
