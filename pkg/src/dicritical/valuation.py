"""Monomial valuations given by coprime positive weights on (x, y).

The value of a polynomial is the minimum of a*alpha + b*beta over its
support; the initial form collects the terms realising that minimum,
written in the graded variables (U, V). The edge data records the
supporting-line level gamma, the minimising terms, and the sorted set of
their y-exponents, the combinatorial core of the regenerability
classification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

from .errors import ContractError, ZeroPolynomial
from .poly import BiPoly


@dataclass(frozen=True)
class MonomialValuation:
    """Weight pair (alpha, beta) = (v(x), v(y)), normalised coprime.

    A non-coprime input pair is divided by its gcd; ``scale`` records the
    factor so callers can tell normalisation happened. Scaling changes no
    initial form and no edge set.
    """

    alpha: int
    beta: int
    scale: int = 1

    def __post_init__(self):
        if self.alpha < 1 or self.beta < 1:
            raise ContractError("weights must be positive integers")
        g = math.gcd(self.alpha, self.beta)
        if g > 1:
            object.__setattr__(self, "alpha", self.alpha // g)
            object.__setattr__(self, "beta", self.beta // g)
            object.__setattr__(self, "scale", self.scale * g)

    def weight(self, a, b):
        return a * self.alpha + b * self.beta

    def __repr__(self):
        return f"v({self.alpha},{self.beta})"


@dataclass(frozen=True)
class EdgeData:
    """Minimal-weight data of a polynomial under a monomial valuation."""

    valuation: MonomialValuation
    gamma: int
    edge_terms: tuple  # ((a, b, coeff), ...) sorted by (a, b)
    b_set: tuple  # sorted ascending

    @property
    def b_min(self):
        return self.b_set[0]

    @property
    def b_max(self):
        return self.b_set[-1]


def value(v, f):
    """min over the support of a*alpha + b*beta; errors on the zero polynomial."""
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has value infinity")
    return min(v.weight(a, b) for a, b in f.terms)


def initial_form(v, f):
    """The minimal-weight part of f, renamed into the graded variables (U, V)."""
    gamma = value(v, f)
    return BiPoly(
        f.field,
        {k: c for k, c in f.terms.items() if v.weight(*k) == gamma},
        ("U", "V"),
    )


def edge_data(v, f):
    gamma = value(v, f)
    terms = tuple(
        (a, b, c) for (a, b), c in f.terms.items() if v.weight(a, b) == gamma
    )
    b_set = tuple(sorted({b for _, b, _ in terms}))
    return EdgeData(v, gamma, terms, b_set)
