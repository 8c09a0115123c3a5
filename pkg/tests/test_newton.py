"""Newton polygon geometry and the position test."""

import random

import pytest

from dicritical.errors import NotOnLineD
from dicritical.field import QQ, PrimeField
from dicritical.newton import Position, newton_polygon, position_test, render_ascii, render_svg
from dicritical.poly import BiPoly, parse_bipoly
from dicritical.valuation import MonomialValuation, edge_data

F5 = PrimeField(5)


def P(text):
    return parse_bipoly(text, QQ)


def rand_poly(rng, max_terms=7, max_exp=6):
    while True:
        terms = {
            (rng.randint(0, max_exp), rng.randint(0, max_exp)): QQ.coerce(
                rng.randint(-4, 4)
            )
            for _ in range(rng.randint(1, max_terms))
        }
        f = BiPoly(QQ, terms)
        if not f.is_zero():
            return f


def test_polygon_examples():
    pg = newton_polygon(P("x^2+x*y+y^2"))
    assert pg.vertices == ((0, 2), (2, 0))
    assert len(pg.edges) == 1 and pg.edges[0].normal == (1, 1)

    pg = newton_polygon(P("y^2-x^3"))
    assert pg.vertices == ((0, 2), (3, 0))
    assert pg.edges[0].normal == (2, 3)

    pg = newton_polygon(P("x"))
    assert pg.vertices == ((1, 0),) and pg.edges == ()


def test_position_examples():
    e = edge_data(MonomialValuation(1, 1), P("x^2+x*y+y^2"))
    assert position_test((1, 1), e) is Position.STRICTLY_INTERIOR
    assert position_test((2, 0), e) is Position.OUTSIDE_OR_ENDPOINT
    assert position_test((0, 2), e) is Position.OUTSIDE_OR_ENDPOINT
    with pytest.raises(NotOnLineD):
        position_test((1, 0), e)


def test_minimizing_face_matches_edge_data():
    rng = random.Random(31)
    import math

    for _ in range(300):
        f = rand_poly(rng)
        pg = newton_polygon(f)
        for alpha in range(1, 11):
            for beta in range(1, 11):
                if math.gcd(alpha, beta) != 1:
                    continue
                v = MonomialValuation(alpha, beta)
                e = edge_data(v, f)
                face = {(a, b) for a, b, _ in e.edge_terms}
                # the hull face minimising the weight: vertices achieving it
                weights = {p: v.weight(*p) for p in f.terms}
                gamma = min(weights.values())
                assert gamma == e.gamma
                assert face == {p for p, w in weights.items() if w == gamma}
                # every face point lies on or above the hull chain
                hull_face = [p for p in pg.vertices if v.weight(*p) == gamma]
                assert set(hull_face) <= face


def test_position_symmetric_under_swap():
    rng = random.Random(32)
    for _ in range(200):
        f = rand_poly(rng)
        v = MonomialValuation(rng.randint(1, 8), rng.randint(1, 8))
        e = edge_data(v, f)
        gamma = e.gamma
        # points on the line with nonnegative integer coordinates
        candidates = [
            (a0, (gamma - a0 * v.alpha) // v.beta)
            for a0 in range(gamma // v.alpha + 1)
            if (gamma - a0 * v.alpha) % v.beta == 0
        ]
        if not candidates:
            continue
        s0 = candidates[rng.randrange(len(candidates))]
        sw = f.swap_vars().rename_vars(("x", "y"))
        vsw = MonomialValuation(v.beta, v.alpha)
        esw = edge_data(vsw, sw)
        assert position_test(s0, e) is position_test((s0[1], s0[0]), esw)


def test_single_monomial_polygon():
    pg = newton_polygon(P("x^2*y^3"))
    assert pg.vertices == ((2, 3),)
    e = edge_data(MonomialValuation(1, 1), P("x^2*y^3"))
    assert position_test((2, 3), e) is Position.OUTSIDE_OR_ENDPOINT


def test_renderers_mention_vertices():
    svg = render_svg(P("y^2-x^3"))
    assert "(3,0)" in svg and "(0,2)" in svg and svg.startswith("<svg")
    art = render_ascii(P("y^2-x^3"), s0=(1, 1), valuation=MonomialValuation(2, 3))
    assert "o" in art and "@" in art
