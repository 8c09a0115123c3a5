"""Weighted values, initial forms and edge data."""

import random

import pytest

from dicritical.errors import ZeroPolynomial
from dicritical.field import QQ, PrimeField
from dicritical.poly import BiPoly, parse_bipoly
from dicritical.valuation import MonomialValuation, edge_data, initial_form, value

F5 = PrimeField(5)


def P(text, field=QQ):
    return parse_bipoly(text, field)


def rand_poly(field, rng, max_terms=6, max_exp=5):
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            a, b = rng.randint(0, max_exp), rng.randint(0, max_exp)
            c = rng.randint(-5, 5) if field is QQ else rng.randrange(field.p)
            terms[(a, b)] = field.coerce(terms.get((a, b), field.zero()) + c)
        f = BiPoly(field, terms)
        if not f.is_zero():
            return f


def test_value_examples():
    assert value(MonomialValuation(2, 3), P("y^2-x^3")) == 6
    assert value(MonomialValuation(1, 1), P("x^2+x*y+y^2")) == 2
    assert value(MonomialValuation(1, 5), P("y+x^2")) == 2
    with pytest.raises(ZeroPolynomial):
        value(MonomialValuation(1, 1), BiPoly.zero(QQ))


def test_normalisation():
    v = MonomialValuation(4, 6)
    assert (v.alpha, v.beta, v.scale) == (2, 3, 2)


def test_initial_form_examples():
    assert str(initial_form(MonomialValuation(2, 3), P("y^2-x^3+x^4"))) == "V^2 - U^3"
    assert str(initial_form(MonomialValuation(1, 1), P("x+y^2"))) == "U"
    assert str(initial_form(MonomialValuation(1, 1), P("x+y"))) == "V + U"


def test_edge_data_examples():
    e = edge_data(MonomialValuation(1, 1), P("x^2+x*y+y^2"))
    assert (e.gamma, e.b_set) == (2, (0, 1, 2))
    e = edge_data(MonomialValuation(2, 3), P("y^2-x^3"))
    assert (e.gamma, e.b_set) == (6, (0, 2))
    e = edge_data(MonomialValuation(1, 1), P("y+x^2"))
    assert (e.gamma, e.b_set) == (1, (1,))


def test_value_multiplicative_and_subadditive():
    rng = random.Random(21)
    for _ in range(500):
        field = F5 if rng.random() < 0.5 else QQ
        v = MonomialValuation(rng.randint(1, 9), rng.randint(1, 9))
        f, g = rand_poly(field, rng), rand_poly(field, rng)
        assert value(v, f * g) == value(v, f) + value(v, g)
        if not (f + g).is_zero():
            lhs = value(v, f + g)
            assert lhs >= min(value(v, f), value(v, g))
            if value(v, f) != value(v, g):
                assert lhs == min(value(v, f), value(v, g))


def test_initial_form_multiplicative():
    rng = random.Random(22)
    for _ in range(300):
        field = F5 if rng.random() < 0.5 else QQ
        v = MonomialValuation(rng.randint(1, 9), rng.randint(1, 9))
        f, g = rand_poly(field, rng), rand_poly(field, rng)
        assert initial_form(v, f * g) == initial_form(v, f) * initial_form(v, g)


def test_edge_b_set_matches_initial_form():
    rng = random.Random(23)
    for _ in range(200):
        v = MonomialValuation(rng.randint(1, 9), rng.randint(1, 9))
        f = rand_poly(QQ, rng)
        e = edge_data(v, f)
        assert set(e.b_set) == {b for _, b in initial_form(v, f).terms}
