"""Sparse bivariate polynomials and the chart substitutions of blow-ups.

A BiPoly is a map from exponent pairs to nonzero field coefficients with a
fixed ordered variable pair. Iteration order is lexicographic in (a, b) so
printing and hashing are reproducible.

The two affine charts of a point blow-up are Translate1(c), sending
(x, y) to (x, x*(y + c)) with exceptional coordinate x, and Chart2,
sending (x, y) to (x*y, y) with exceptional coordinate y. Homogenisation
to a three variable form and the charts at infinity (phi, psi) = (1/x, y/x)
or (1/y, x/y) support the analysis of points at infinity.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    ConstantPolynomial,
    ContractError,
    DegreeTooSmall,
    DescriptorMismatch,
    DivisionByZero,
    ParseError,
    ZeroPolynomial,
)
from .field import FieldElement, RationalField, UniPoly, parse_element


class BiPoly:
    """Sparse bivariate polynomial over a field descriptor."""

    __slots__ = ("field", "terms", "vars")

    def __init__(self, field, terms, vars=("x", "y")):
        cleaned = {}
        for (a, b), c in terms.items() if isinstance(terms, dict) else terms:
            if a < 0 or b < 0:
                raise ContractError(f"negative exponent ({a}, {b})")
            if isinstance(c, (int, Fraction)):
                c = field.coerce(c)
            elif c.field != field:
                raise DescriptorMismatch("coefficient from a different field")
            if c.is_zero():
                continue
            key = (a, b)
            if key in cleaned:
                c = cleaned[key] + c
                if c.is_zero():
                    del cleaned[key]
                    continue
            cleaned[key] = c
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "terms", dict(sorted(cleaned.items())))
        object.__setattr__(self, "vars", tuple(vars))

    def __setattr__(self, *args):
        raise AttributeError("BiPoly is immutable")

    @classmethod
    def zero(cls, field, vars=("x", "y")):
        return cls(field, {}, vars)

    @classmethod
    def constant(cls, c, vars=("x", "y")):
        return cls(c.field, {(0, 0): c}, vars)

    @classmethod
    def monomial(cls, field, a, b, coeff=1, vars=("x", "y")):
        return cls(field, {(a, b): field.coerce(coeff)}, vars)

    @classmethod
    def gen_x(cls, field, vars=("x", "y")):
        return cls.monomial(field, 1, 0, 1, vars)

    @classmethod
    def gen_y(cls, field, vars=("x", "y")):
        return cls.monomial(field, 0, 1, 1, vars)

    def is_zero(self):
        return not self.terms

    def support(self):
        return list(self.terms)

    def coeff(self, a, b):
        return self.terms.get((a, b), self.field.zero())

    def total_degree(self):
        if not self.terms:
            raise ZeroPolynomial("degree of the zero polynomial")
        return max(a + b for a, b in self.terms)

    def order(self):
        """Order of vanishing at the origin (minimal total degree)."""
        if not self.terms:
            raise ZeroPolynomial("order of the zero polynomial")
        return min(a + b for a, b in self.terms)

    def min_x_power(self):
        if not self.terms:
            raise ZeroPolynomial("x power of the zero polynomial")
        return min(a for a, _ in self.terms)

    def min_y_power(self):
        if not self.terms:
            raise ZeroPolynomial("y power of the zero polynomial")
        return min(b for _, b in self.terms)

    def _check(self, other):
        if self.field != other.field:
            raise DescriptorMismatch("polynomials over different fields")
        if self.vars != other.vars:
            raise DescriptorMismatch(
                f"variable systems differ: {self.vars} vs {other.vars}"
            )

    def _coerce(self, other):
        if isinstance(other, BiPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, FieldElement)):
            return BiPoly.constant(self.field.coerce(other), self.vars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        merged = dict(self.terms)
        for key, c in other.terms.items():
            if key in merged:
                s = merged[key] + c
                if s.is_zero():
                    del merged[key]
                else:
                    merged[key] = s
            else:
                merged[key] = c
        return BiPoly(self.field, merged, self.vars)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly(self.field, {k: -c for k, c in self.terms.items()}, self.vars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                c = c1 * c2
                if key in out:
                    c = out[key] + c
                    if c.is_zero():
                        del out[key]
                        continue
                out[key] = c
        return BiPoly(self.field, out, self.vars)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = BiPoly.constant(self.field.one(), self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return (
            self.field == other.field
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def shift(self, dx, dy):
        """Multiply by x**dx * y**dy."""
        return BiPoly(
            self.field,
            {(a + dx, b + dy): c for (a, b), c in self.terms.items()},
            self.vars,
        )

    def divide_x_power(self, k):
        if any(a < k for a, _ in self.terms):
            raise DivisionByZero(f"{self.vars[0]}^{k} does not divide {self}")
        return self if k == 0 else BiPoly(
            self.field,
            {(a - k, b): c for (a, b), c in self.terms.items()},
            self.vars,
        )

    def divide_y_power(self, k):
        if any(b < k for _, b in self.terms):
            raise DivisionByZero(f"{self.vars[1]}^{k} does not divide {self}")
        return self if k == 0 else BiPoly(
            self.field,
            {(a, b - k): c for (a, b), c in self.terms.items()},
            self.vars,
        )

    def evaluate(self, xv, yv):
        xv, yv = self.field.coerce(xv), self.field.coerce(yv)
        acc = self.field.zero()
        xpow, ypow = {0: self.field.one()}, {0: self.field.one()}

        def power(cache, base, n):
            if n not in cache:
                cache[n] = power(cache, base, n - 1) * base
            return cache[n]

        for (a, b), c in self.terms.items():
            acc = acc + c * power(xpow, xv, a) * power(ypow, yv, b)
        return acc

    def substitute(self, xrep, yrep):
        """Substitute polynomials for both variables."""
        self._check(xrep)
        self._check(yrep)
        one = BiPoly.constant(self.field.one(), self.vars)
        xpow, ypow = {0: one}, {0: one}

        def power(cache, base, n):
            if n not in cache:
                cache[n] = power(cache, base, n - 1) * base
            return cache[n]

        acc = BiPoly.zero(self.field, self.vars)
        for (a, b), c in self.terms.items():
            acc = acc + power(xpow, xrep, a) * power(ypow, yrep, b) * BiPoly.constant(
                c, self.vars
            )
        return acc

    def translate_y(self, c):
        """Substitute y by y + c."""
        c = self.field.coerce(c)
        if c.is_zero():
            return self
        x = BiPoly.gen_x(self.field, self.vars)
        y = BiPoly.gen_y(self.field, self.vars) + BiPoly.constant(c, self.vars)
        return self.substitute(x, y)

    def translate_x(self, c):
        c = self.field.coerce(c)
        if c.is_zero():
            return self
        x = BiPoly.gen_x(self.field, self.vars) + BiPoly.constant(c, self.vars)
        y = BiPoly.gen_y(self.field, self.vars)
        return self.substitute(x, y)

    def apply_linear(self, a, b, c, d):
        """Invertible linear change x <- a x + b y, y <- c x + d y."""
        a, b = self.field.coerce(a), self.field.coerce(b)
        c, d = self.field.coerce(c), self.field.coerce(d)
        if (a * d - b * c).is_zero():
            raise ContractError("singular linear substitution")
        gx = BiPoly.gen_x(self.field, self.vars)
        gy = BiPoly.gen_y(self.field, self.vars)
        return self.substitute(gx * a + gy * b, gx * c + gy * d)

    def swap_vars(self):
        return BiPoly(
            self.field,
            {(b, a): c for (a, b), c in self.terms.items()},
            (self.vars[1], self.vars[0]),
        )

    def rename_vars(self, vars):
        return BiPoly(self.field, self.terms, vars)

    def lift(self, target, embed):
        """Map coefficients into a larger field of the same tower."""
        return BiPoly(
            target, {k: embed(c) for k, c in self.terms.items()}, self.vars
        )

    def restrict_x0(self, var=None):
        """The univariate polynomial f(0, t)."""
        return UniPoly(
            self.field,
            _dense([(b, c) for (a, b), c in self.terms.items() if a == 0], self.field),
            var or self.vars[1],
        )

    def restrict_y0(self, var=None):
        """The univariate polynomial f(t, 0)."""
        return UniPoly(
            self.field,
            _dense([(a, c) for (a, b), c in self.terms.items() if b == 0], self.field),
            var or self.vars[0],
        )

    def lowest_form(self):
        """Sum of the terms of minimal total degree."""
        o = self.order()
        return BiPoly(
            self.field,
            {k: c for k, c in self.terms.items() if k[0] + k[1] == o},
            self.vars,
        )

    def degree_form(self):
        """Sum of the terms of maximal total degree."""
        d = self.total_degree()
        return BiPoly(
            self.field,
            {k: c for k, c in self.terms.items() if k[0] + k[1] == d},
            self.vars,
        )

    def to_y_coeffs(self, var=None):
        """View as a polynomial in y: list of UniPoly in x, index = y power."""
        var = var or self.vars[0]
        if self.is_zero():
            return []
        ymax = max(b for _, b in self.terms)
        rows = [[] for _ in range(ymax + 1)]
        for (a, b), c in self.terms.items():
            rows[b].append((a, c))
        return [UniPoly(self.field, _dense(row, self.field), var) for row in rows]

    @classmethod
    def from_y_coeffs(cls, field, rows, vars=("x", "y")):
        terms = {}
        for b, poly in enumerate(rows):
            for a in range(poly.degree() + 1):
                c = poly[a]
                if not c.is_zero():
                    terms[(a, b)] = c
        return cls(field, terms, vars)

    def __str__(self):
        return _format_terms(
            self.field,
            [((a, b), c) for (a, b), c in self.terms.items()],
            self.vars,
        )

    __repr__ = __str__


def _dense(pairs, field):
    if not pairs:
        return []
    n = max(i for i, _ in pairs)
    out = [field.zero()] * (n + 1)
    for i, c in pairs:
        out[i] = out[i] + c
    return out


def _format_terms(field, items, vars):
    """Shared printer for 2 and 3 variable forms, lexicographic term order."""
    if not items:
        return "0"
    items = sorted(items)
    parts = []
    one = field.one()
    rational = isinstance(field, RationalField)
    for exps, c in items:
        negative = rational and c.value < 0
        c_str = str(-c) if negative else str(c)
        var_bits = []
        for name, e in zip(vars, exps):
            if e == 1:
                var_bits.append(name)
            elif e > 1:
                var_bits.append(f"{name}^{e}")
        if not var_bits:
            body = c_str
        elif (c == one and not negative) or (negative and c == -one):
            body = "*".join(var_bits)
        else:
            body = "*".join([c_str] + var_bits)
        if not parts:
            parts.append(("-" if negative else "") + body)
        else:
            parts.append(("- " if negative else "+ ") + body)
    return " ".join(parts)


# ---------------------------------------------------------------------------
# blow-up charts


class ChartMap:
    """One affine chart of a point blow-up.

    Translate1(c): (x, y) <- (x, x*(y + c)), exceptional coordinate x.
    Chart2:        (x, y) <- (x*y, y),       exceptional coordinate y.
    """

    TRANSLATE1 = "translate1"
    CHART2 = "chart2"

    __slots__ = ("kind", "c")

    def __init__(self, kind, c=None):
        if kind not in (self.TRANSLATE1, self.CHART2):
            raise ContractError(f"unknown chart kind {kind!r}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "c", c)

    def __setattr__(self, *args):
        raise AttributeError("ChartMap is immutable")

    @classmethod
    def translate1(cls, c):
        return cls(cls.TRANSLATE1, c)

    @classmethod
    def chart2(cls):
        return cls(cls.CHART2)

    def __repr__(self):
        if self.kind == self.TRANSLATE1:
            return f"Translate1({self.c})"
        return "Chart2"


def substitute_chart(f, chart):
    """Total transform of f under one blow-up chart."""
    field = f.field
    if chart.kind == ChartMap.CHART2:
        return BiPoly(
            field, {(a, a + b): c for (a, b), c in f.terms.items()}, f.vars
        )
    c = field.coerce(chart.c) if chart.c is not None else field.zero()
    if c.is_zero():
        return BiPoly(
            field, {(a + b, b): co for (a, b), co in f.terms.items()}, f.vars
        )
    # group by y power; x^a * (x*(y+c))^b = x^(a+b) * (y+c)^b
    out = {}
    shifted_pows = {}
    y_plus_c = BiPoly(field, {(0, 1): field.one(), (0, 0): c}, f.vars)
    for (a, b), co in f.terms.items():
        if b not in shifted_pows:
            shifted_pows[b] = y_plus_c ** b
        for (_, j), c2 in shifted_pows[b].terms.items():
            key = (a + b, j)
            v = co * c2
            if key in out:
                v = out[key] + v
                if v.is_zero():
                    del out[key]
                    continue
            out[key] = v
    return BiPoly(field, out, f.vars)


def strict_transform(f, chart):
    """Total transform with the full exceptional power divided out.

    Returns (f_tilde, e) where e equals the order of vanishing of f at the
    origin; that identity is asserted.
    """
    if f.is_zero():
        raise ZeroPolynomial("strict transform of 0")
    total = substitute_chart(f, chart)
    if chart.kind == ChartMap.TRANSLATE1:
        e = total.min_x_power()
        tilde = total.divide_x_power(e)
    else:
        e = total.min_y_power()
        tilde = total.divide_y_power(e)
    assert e == f.order(), "exceptional multiplicity must equal the local order"
    return tilde, e


# ---------------------------------------------------------------------------
# homogenisation and charts at infinity


class TriForm:
    """Homogeneous form in three variables (X, Y, Z)."""

    __slots__ = ("field", "terms", "degree", "vars")

    def __init__(self, field, terms, degree, vars=("X", "Y", "Z")):
        cleaned = {}
        for key, c in terms.items():
            if c.is_zero():
                continue
            if sum(key) != degree:
                raise ContractError(f"term {key} is not of degree {degree}")
            cleaned[key] = c
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "terms", dict(sorted(cleaned.items())))
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "vars", tuple(vars))

    def __setattr__(self, *args):
        raise AttributeError("TriForm is immutable")

    def dehomogenize(self, vars=("x", "y")):
        """Set Z = 1."""
        return BiPoly(
            self.field,
            {(i, j): c for (i, j, _), c in self.terms.items()},
            vars,
        )

    def infinity_form(self, vars=("X", "Y")):
        """The restriction to the line Z = 0 as a binary form."""
        return BiPoly(
            self.field,
            {(i, j): c for (i, j, k), c in self.terms.items() if k == 0},
            vars,
        )

    def __eq__(self, other):
        if not isinstance(other, TriForm):
            return NotImplemented
        return (
            self.field == other.field
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __str__(self):
        return _format_terms(
            self.field, [(k, c) for k, c in self.terms.items()], self.vars
        )

    __repr__ = __str__


def homogenize(f, m):
    """Degree-m homogenisation: each x^a y^b becomes X^a Y^b Z^(m-a-b)."""
    if f.is_zero():
        raise ZeroPolynomial("homogenisation of 0")
    if m < f.total_degree():
        raise DegreeTooSmall(f"degree {m} below total degree {f.total_degree()}")
    terms = {(a, b, m - a - b): c for (a, b), c in f.terms.items()}
    return TriForm(f.field, terms, m)


X_CHART = "X"
Y_CHART = "Y"


def to_infinity_chart(f, which):
    """Rewrite f in an affine chart at infinity.

    In the X chart, (phi, psi) = (1/x, y/x) and
    f = (sum over terms of coeff * phi^(m-a-b) * psi^b) / phi^m
    with m the total degree; the Y chart swaps the roles of x and y.
    Returns (numerator, m).
    """
    if f.is_zero():
        raise ZeroPolynomial("infinity chart of 0")
    m = f.total_degree()
    if m == 0:
        raise ConstantPolynomial("constant polynomial has no points at infinity")
    terms = {}
    for (a, b), c in f.terms.items():
        key = (m - a - b, b) if which == X_CHART else (m - a - b, a)
        terms[key] = terms.get(key, f.field.zero()) + c
    return BiPoly(f.field, terms, ("phi", "psi")), m


# ---------------------------------------------------------------------------
# gcd and resultant

def content_y(f):
    """Gcd of the coefficients of f viewed in (K[x])[y]."""
    rows = f.to_y_coeffs()
    g = UniPoly.zero(f.field, f.vars[0])
    from .field import unipoly_gcd

    for row in rows:
        g = unipoly_gcd(g, row)
    return g


def bipoly_divexact(f, g):
    """Exact division of bivariate polynomials; raises if not divisible."""
    if g.is_zero():
        raise DivisionByZero("bivariate division by 0")
    if f.is_zero():
        return f
    rem = f
    out = {}
    glead = max(g.terms)
    gc = g.terms[glead]
    while not rem.is_zero():
        rlead = max(rem.terms)
        a, b = rlead[0] - glead[0], rlead[1] - glead[1]
        if a < 0 or b < 0:
            raise ContractError(f"{g} does not divide {f}")
        q = rem.terms[rlead] / gc
        out[(a, b)] = q
        rem = rem - g.shift(a, b) * BiPoly.constant(q, f.vars)
    return BiPoly(f.field, out, f.vars)


def bipoly_gcd(f, g):
    """Gcd in K[x, y] via contents and a primitive remainder sequence in y.

    The result is normalised so its lexicographically leading coefficient
    is one.
    """
    from .field import unipoly_gcd

    if f.is_zero():
        return _normalize_lead(g)
    if g.is_zero():
        return _normalize_lead(f)
    f._check(g)
    fy = [r for r in f.to_y_coeffs()]
    gy = [r for r in g.to_y_coeffs()]
    if len(fy) == 1 or len(gy) == 1:
        # one input is univariate in x: gcd with every coefficient
        cont = unipoly_gcd(content_y(f), content_y(g))
        return _normalize_lead(_from_x_poly(cont, f.field, f.vars))
    cont_f, cont_g = content_y(f), content_y(g)
    cont = unipoly_gcd(cont_f, cont_g)
    A = _primitive_part(f, cont_f)
    B = _primitive_part(g, cont_g)
    if _ydeg(A) < _ydeg(B):
        A, B = B, A
    while True:
        R = _pseudo_rem_y(A, B)
        if R.is_zero():
            break
        R = _primitive_part(R, content_y(R))
        A, B = B, R
        if _ydeg(B) == 0:
            # coprime as primitive polynomials in y
            B = BiPoly.constant(f.field.one(), f.vars)
            break
    result = B * _from_x_poly(cont, f.field, f.vars)
    return _normalize_lead(result)


def _ydeg(f):
    return max(b for _, b in f.terms) if f.terms else -1


def _from_x_poly(p, field, vars):
    return BiPoly(field, {(i, 0): p[i] for i in range(p.degree() + 1)}, vars)


def _primitive_part(f, cont):
    return bipoly_divexact(f, _from_x_poly(cont, f.field, f.vars))


def _pseudo_rem_y(A, B):
    """Pseudo remainder of A by B as polynomials in y over K[x]."""
    da, db = _ydeg(A), _ydeg(B)
    lead_b = _y_lead(B)
    R = A
    for _ in range(da - db + 1):
        dr = _ydeg(R)
        if dr < db or R.is_zero():
            break
        lead_r = _y_lead(R)
        R = R * lead_b - B * lead_r.shift(0, dr - db)
    return R


def _y_lead(f):
    d = _ydeg(f)
    return BiPoly(
        f.field,
        {(a, 0): c for (a, b), c in f.terms.items() if b == d},
        f.vars,
    )


def _normalize_lead(f):
    if f.is_zero():
        return f
    lead = f.terms[max(f.terms)]
    return f * BiPoly.constant(lead.inv(), f.vars)


def resultant_y(f, g):
    """Resultant of f and g with respect to y, as a UniPoly in x.

    Computed by fraction-free elimination of the Sylvester matrix, exact
    over K[x].
    """
    fy, gy = f.to_y_coeffs(), g.to_y_coeffs()
    m, n = len(fy) - 1, len(gy) - 1
    if m < 1 or n < 1:
        raise ContractError("resultant needs positive y-degrees")
    size = m + n
    zero = UniPoly.zero(f.field, f.vars[0])
    rows = []
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(fy)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(gy)):
            row[i + j] = c
        rows.append(row)
    # Bareiss fraction-free determinant
    sign = 1
    prev = UniPoly(f.field, (f.field.one(),), f.vars[0])
    for k in range(size - 1):
        if rows[k][k].is_zero():
            pivot = next(
                (i for i in range(k + 1, size) if not rows[i][k].is_zero()), None
            )
            if pivot is None:
                return zero
            rows[k], rows[pivot] = rows[pivot], rows[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]
                rows[i][j] = num.divexact(prev)
            rows[i][k] = zero
        prev = rows[k][k]
    det = rows[size - 1][size - 1]
    return det if sign == 1 else -det


# ---------------------------------------------------------------------------
# text grammar


def parse_bipoly(text, field, vars=("x", "y")):
    """Parse '+'/'-' separated terms such as '3/4*x^2*y', '-x', '[1,0,1]*y^3'."""
    text = text.strip()
    if not text:
        raise ParseError("empty polynomial")
    tokens = []
    depth = 0
    cur = []
    for i, ch in enumerate(text):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if depth == 0 and ch in "+-" and i > 0 and text[i - 1] not in "+-*(,":
            tokens.append("".join(cur).strip())
            tokens.append(ch)
            cur = []
        else:
            cur.append(ch)
    tokens.append("".join(cur).strip())

    result = BiPoly.zero(field, vars)
    sign = 1
    for tok in tokens:
        if tok in {"+", "-"}:
            sign = 1 if tok == "+" else -1
            continue
        if not tok:
            continue
        result = result + _parse_bi_term(tok, field, vars, sign)
        sign = 1
    return result


def _parse_bi_term(term, field, vars, sign):
    term = term.strip()
    negate = False
    while term.startswith(("-", "+")):
        if term[0] == "-":
            negate = not negate
        term = term[1:].strip()
    coeff = field.one()
    exps = [0, 0]
    pieces = []
    depth = 0
    cur = []
    for ch in term:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "*" and depth == 0:
            pieces.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    pieces.append("".join(cur).strip())
    for piece in pieces:
        if not piece:
            raise ParseError(f"empty factor in term {term!r}")
        name, _, exp = piece.partition("^")
        if name in vars:
            exps[vars.index(name)] += int(exp) if exp else 1
        elif name.isidentifier():
            raise ParseError(f"unknown variable {name!r}, expected one of {vars}")
        else:
            coeff = coeff * parse_element(piece, field)
    if negate != (sign < 0):
        coeff = -coeff
    return BiPoly.monomial(field, exps[0], exps[1], coeff, vars)
