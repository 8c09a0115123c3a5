"""Field tower arithmetic, univariate polynomials and factorisation."""

import random

import pytest

from dicritical.errors import (
    DescriptorMismatch,
    DivisionByZero,
    FactorizationUnsupported,
    IrreducibilityUnverifiable,
    ParseError,
    ReducibleMinimalPolynomial,
)
from dicritical.field import (
    QQ,
    ExtensionField,
    PrimeField,
    UniPoly,
    field_roots,
    field_sqrt,
    is_irreducible,
    parse_element,
    parse_field,
    parse_unipoly,
    smallest_irreducible,
    split_factors,
    squarefree_part,
    unipoly_gcd,
    unipoly_xgcd,
)

F5 = PrimeField(5)
F7 = PrimeField(7)


def Qext_sqrt2():
    t = UniPoly.gen(QQ, "t")
    return ExtensionField(QQ, t * t - 2, "t")


def upoly(field, *coeffs):
    return UniPoly(field, [field.coerce(c) for c in coeffs])


def test_rational_addition():
    from fractions import Fraction

    a = QQ.coerce(Fraction(1, 2))
    b = QQ.coerce(Fraction(1, 3))
    assert a + b == QQ.coerce(Fraction(5, 6))


def test_prime_field_division():
    # 5 * 2 = 10 = 3 in F7, so 3/5 = 2
    assert F7.from_int(3) / F7.from_int(5) == F7.from_int(2)


def test_extension_generator_square():
    K = Qext_sqrt2()
    theta = K.generator()
    assert theta * theta == K.embed(QQ.from_int(2))


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        F7.from_int(3) / F7.from_int(0)
    with pytest.raises(DivisionByZero):
        QQ.from_int(1) / QQ.from_int(0)


def test_descriptor_mismatch():
    with pytest.raises(DescriptorMismatch):
        F5.from_int(1) + F7.from_int(1)


@pytest.mark.parametrize("field", [QQ, F5, F7, PrimeField(2)])
def test_field_axioms_random(field):
    rng = random.Random(7)

    def rand():
        if field is QQ:
            from fractions import Fraction

            return QQ.coerce(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        return field.from_int(rng.randrange(field.p))

    for _ in range(1000):
        a, b, c = rand(), rand(), rand()
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        if not a.is_zero():
            assert a * a.inv() == field.one()


def test_extension_axioms_random():
    K = Qext_sqrt2()
    rng = random.Random(11)

    def rand():
        from fractions import Fraction

        return K.embed(QQ.coerce(Fraction(rng.randint(-5, 5), rng.randint(1, 4)))) + (
            K.generator() * K.from_int(rng.randint(-5, 5))
        )

    for _ in range(300):
        a, b, c = rand(), rand(), rand()
        assert (a + b) * c == a * c + b * c
        if not a.is_zero():
            assert a * a.inv() == K.one()


def test_reducible_minimal_polynomial_rejected():
    t = UniPoly.gen(QQ, "t")
    with pytest.raises(ReducibleMinimalPolynomial):
        ExtensionField(QQ, t * t - 1, "t")


def test_unverifiable_minimal_polynomial_rejected():
    # no rational roots, degree 4: the capability cannot certify it
    t = UniPoly.gen(QQ, "t")
    with pytest.raises(IrreducibilityUnverifiable):
        ExtensionField(QQ, t ** 4 - t * t + 1, "t")


def test_finite_extension_tower():
    t = UniPoly.gen(F5, "t")
    F25 = ExtensionField(F5, t * t - 2, "t")
    assert F25.order() == 25
    elems = list(F25.enumerate())
    assert len(set(elems)) == 25
    theta = F25.generator()
    assert theta ** 24 == F25.one()


def test_unipoly_gcd_examples():
    t = UniPoly.gen(QQ, "t")
    assert unipoly_gcd(t * t - 1, t - 1) == t - 1
    assert unipoly_gcd(t ** 3, t ** 2) == t ** 2
    assert unipoly_gcd(t * t + 1, t * t - 1) == upoly(QQ, 1)
    zero = UniPoly.zero(QQ)
    assert unipoly_gcd(zero, zero).is_zero()


def test_unipoly_gcd_random_properties():
    rng = random.Random(3)
    t = UniPoly.gen(F7, "t")
    for _ in range(200):
        p = upoly(F7, *[rng.randrange(7) for _ in range(rng.randint(1, 6))])
        q = upoly(F7, *[rng.randrange(7) for _ in range(rng.randint(1, 6))])
        if p.is_zero() or q.is_zero():
            continue
        g = unipoly_gcd(p, q)
        assert (p % g).is_zero() and (q % g).is_zero()
        assert unipoly_gcd(p.divexact(g), q.divexact(g)).degree() == 0


def test_xgcd_bezout():
    rng = random.Random(5)
    for _ in range(100):
        p = upoly(F5, *[rng.randrange(5) for _ in range(rng.randint(1, 5))])
        q = upoly(F5, *[rng.randrange(5) for _ in range(rng.randint(1, 5))])
        if p.is_zero() and q.is_zero():
            continue
        g, u, v = unipoly_xgcd(p, q)
        assert u * p + v * q == g


def test_squarefree_part_examples():
    t = UniPoly.gen(QQ, "t")
    assert squarefree_part((t - 1) ** 2 * (t + 2)) == (t - 1) * (t + 2)
    assert squarefree_part(t ** 5) == t


def test_squarefree_part_frobenius_descent():
    t = UniPoly.gen(F5, "t")
    # t^5 - 2 = (t - 2)^5 over F5 since 2^5 = 2
    assert squarefree_part(t ** 5 - 2) == t - 2
    # over F25 the fifth root of the generator is theta^5
    s = UniPoly.gen(F5, "s")
    F25 = ExtensionField(F5, s * s - 2, "s")
    u = UniPoly.gen(F25, "u")
    c = F25.generator()
    assert squarefree_part(u ** 5 - c) == u - c ** 5


def test_squarefree_divides_and_char0_derivative_coprime():
    rng = random.Random(9)
    t = UniPoly.gen(QQ, "t")
    for _ in range(50):
        p = upoly(QQ, *[rng.randint(-3, 3) for _ in range(rng.randint(2, 5))])
        if p.degree() < 1:
            continue
        p = p * (t - rng.randint(-2, 2)) ** rng.randint(1, 3)
        sf = squarefree_part(p)
        assert (p % sf).is_zero()
        assert unipoly_gcd(sf, sf.derivative()).degree() == 0


def test_split_factors_examples():
    t = UniPoly.gen(QQ, "t")
    fac = split_factors(t * t - 1)
    assert sorted((str(p), m) for p, m in fac.factors) == [("t + 1", 1), ("t - 1", 1)]

    u = UniPoly.gen(F5, "u")
    fac5 = split_factors(u * u + 1)
    roots = sorted(r.value for r, _ in fac5.linear_roots())
    assert roots == [2, 3]

    fac_irr = split_factors(t * t - 2)
    assert fac_irr.is_complete()
    assert [(str(p), m) for p, m in fac_irr.factors] == [("t^2 - 2", 1)]


def test_split_factors_remultiplies():
    rng = random.Random(13)
    for field in (QQ, F5, F7):
        for _ in range(60):
            coeffs = [rng.randint(-4, 4) for _ in range(rng.randint(2, 6))]
            p = upoly(field, *coeffs)
            if p.degree() < 1:
                continue
            fac = split_factors(p, random.Random(0))
            assert fac.expand() == p


def test_split_factors_unfactored_marker():
    t = UniPoly.gen(QQ, "t")
    p = (t * t - 2) * (t * t - 3)
    fac = split_factors(p)
    assert not fac.is_complete()
    with pytest.raises(FactorizationUnsupported):
        fac.require_complete()
    assert fac.expand() == p


def test_split_factors_finite_complete():
    rng = random.Random(17)
    t = UniPoly.gen(F5, "t")
    for _ in range(80):
        p = upoly(F5, *[rng.randrange(5) for _ in range(rng.randint(2, 8))])
        if p.degree() < 1:
            continue
        fac = split_factors(p, random.Random(1))
        assert fac.is_complete()
        assert fac.expand() == p
        for q, _ in fac.factors:
            assert is_irreducible(q)


def test_field_roots_quadratic_extension():
    K = Qext_sqrt2()
    theta = K.generator()
    u = UniPoly.gen(K, "u")
    # u^2 - 2 splits as (u - theta)(u + theta) over Q(theta)
    roots, cof, complete = field_roots(u * u - K.from_int(2))
    assert complete and cof.degree() == 0
    assert sorted(str(r) for r, _ in roots) == sorted([str(theta), str(-theta)])
    # u^2 - 3 has provably no roots there
    roots3, cof3, complete3 = field_roots(u * u - K.from_int(3))
    assert not roots3 and complete3 and cof3.degree() == 2


def test_field_sqrt_decisions():
    K = Qext_sqrt2()
    two = K.from_int(2)
    s = field_sqrt(two)
    assert s is not None and s * s == two
    assert field_sqrt(K.from_int(3)) is None
    assert field_sqrt(QQ.coerce(9)) == QQ.coerce(3)
    assert field_sqrt(QQ.coerce(8)) is None


def test_smallest_irreducible():
    for p, d in [(2, 2), (3, 2), (5, 2), (5, 3), (13, 2)]:
        poly = smallest_irreducible(PrimeField(p), d)
        assert poly.degree() == d
        assert is_irreducible(poly)


def test_parse_field_round_trip():
    for text in ["Q", "F7", "Q[t]/(t^2-2)", "F5[a]/(a^2-2)"]:
        field = parse_field(text)
        assert repr(field) == text.replace("-", " - ").replace("  ", " ") or repr(field)
        # reparse what we print
        assert parse_field(repr(field)) == field


def test_parse_element():
    assert parse_element("3/4", QQ).value.numerator == 3
    assert parse_element("5", F7).value == 5
    K = parse_field("Q[t]/(t^2-2)")
    e = parse_element("[1,0,2]", K) if K.degree >= 3 else parse_element("[1,2]", K)
    assert e == K.embed(QQ.one()) + K.generator() * K.from_int(2)
    with pytest.raises(ParseError):
        parse_element("[1,2]", QQ)


def test_parse_unipoly_round_trip():
    rng = random.Random(23)
    K = Qext_sqrt2()
    for field in (QQ, F5, K):
        for _ in range(100):
            n = rng.randint(0, 5)
            if field is K:
                coeffs = [
                    K.embed(QQ.coerce(rng.randint(-5, 5)))
                    + K.generator() * K.from_int(rng.randint(-5, 5))
                    for _ in range(n + 1)
                ]
            else:
                coeffs = [field.coerce(rng.randint(-9, 9)) for _ in range(n + 1)]
            p = UniPoly(field, coeffs, "t")
            assert parse_unipoly(str(p), field, "t") == p
