"""Exact arithmetic in computable field towers.

Three kinds of coefficient fields are supported: the rationals, prime
fields F_p, and simple algebraic extensions stacked over either. A field
is an immutable descriptor object; elements are thin wrappers around a
canonical representation (reduced Fraction, residue in [0, p), coefficient
vector reduced modulo the minimal polynomial) so equality and hashing are
structural.

Univariate polynomials over any of these fields live here too, together
with gcd, squarefree part and factorisation. Factorisation is complete
over finite fields (squarefree split, distinct degree, randomised equal
degree). In characteristic zero it is capability limited: all rational
roots are found, quadratics are fully decided over Q and over a single
quadratic extension of Q, and anything beyond that is returned unfactored
rather than guessed.

Descriptor text syntax: ``Q``, ``F7``, ``Q[t]/(t^2-2)``, nesting by
repetition. Element syntax: ``3/4``, ``5``, ``[1,0,2]`` (coefficient
vector over the extension base, lowest degree first).
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from .errors import (
    DescriptorMismatch,
    DivisionByZero,
    FactorizationUnsupported,
    IrreducibilityUnverifiable,
    ParseError,
    ReducibleMinimalPolynomial,
)


class Field:
    """Abstract field descriptor. Concrete kinds construct elements."""

    char = 0

    def zero(self):
        return FieldElement(self, self._zero_raw())

    def one(self):
        return FieldElement(self, self._one_raw())

    def from_int(self, n):
        return FieldElement(self, self._from_int_raw(n))

    def coerce(self, x):
        """Coerce an int, Fraction or same-field element into this field."""
        if isinstance(x, FieldElement):
            if x.field != self:
                raise DescriptorMismatch(f"element of {x.field} used over {self}")
            return x
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, Fraction):
            if self.char != 0:
                raise DescriptorMismatch(f"rational {x} has no image in {self}")
            return self.from_int(x.numerator) / self.from_int(x.denominator)
        raise DescriptorMismatch(f"cannot coerce {x!r} into {self}")

    def order(self):
        """Number of elements, or None when infinite."""
        return None

    def enumerate(self):
        """Deterministic iterator over all elements (finite fields only)."""
        raise NotImplementedError(f"{self} is not enumerable")

    def _random_element(self, rng):
        raise NotImplementedError

    def __ne__(self, other):
        return not self.__eq__(other)


class RationalField(Field):
    """The field Q with elements stored as reduced Fractions."""

    char = 0

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def _zero_raw(self):
        return Fraction(0)

    def _one_raw(self):
        return Fraction(1)

    def _from_int_raw(self, n):
        return Fraction(n)

    def _add(self, a, b):
        return a + b

    def _sub(self, a, b):
        return a - b

    def _mul(self, a, b):
        return a * b

    def _neg(self, a):
        return -a

    def _inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of 0 in Q")
        return 1 / a

    def _is_zero(self, a):
        return a == 0

    def format_element(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


QQ = RationalField()


def _is_prime(n):
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


class PrimeField(Field):
    """The prime field F_p, elements as canonical residues in [0, p)."""

    def __init__(self, p):
        if not _is_prime(p):
            raise ParseError(f"{p} is not prime")
        self.p = p
        self.char = p

    def _zero_raw(self):
        return 0

    def _one_raw(self):
        return 1

    def _from_int_raw(self, n):
        return n % self.p

    def _add(self, a, b):
        return (a + b) % self.p

    def _sub(self, a, b):
        return (a - b) % self.p

    def _mul(self, a, b):
        return (a * b) % self.p

    def _neg(self, a):
        return (-a) % self.p

    def _inv(self, a):
        if a == 0:
            raise DivisionByZero(f"inverse of 0 in F{self.p}")
        return pow(a, -1, self.p)

    def _is_zero(self, a):
        return a == 0

    def order(self):
        return self.p

    def enumerate(self):
        for i in range(self.p):
            yield FieldElement(self, i)

    def _random_element(self, rng):
        return FieldElement(self, rng.randrange(self.p))

    def format_element(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"F{self.p}"


class ExtensionField(Field):
    """Simple algebraic extension base[g]/(minimal_polynomial).

    Elements are coefficient vectors over the base, length equal to the
    degree of the minimal polynomial, always reduced. The minimal
    polynomial must be monic of degree at least 2 and pass the capability
    limited irreducibility check; construction fails otherwise.
    """

    def __init__(self, base, minpoly, name):
        if minpoly.field != base:
            raise DescriptorMismatch("minimal polynomial not over the base field")
        if minpoly.degree() < 2:
            raise ReducibleMinimalPolynomial(f"degree {minpoly.degree()} minimal polynomial")
        if not minpoly.is_monic():
            raise ReducibleMinimalPolynomial("minimal polynomial must be monic")
        if not is_irreducible(minpoly):
            raise ReducibleMinimalPolynomial(f"{minpoly} factors over {base}")
        self.base = base
        self.minpoly = minpoly
        self.name = name
        self.char = base.char
        self.degree = minpoly.degree()
        # t^degree rewritten as a vector, used by the multiplication reducer
        self._top = tuple((-minpoly[i] for i in range(self.degree)))

    def generator(self):
        vec = [self.base.zero()] * self.degree
        vec[1] = self.base.one()
        return FieldElement(self, tuple(vec))

    def embed(self, a):
        """Embed a base field element as a constant vector."""
        a = self.base.coerce(a)
        vec = [self.base.zero()] * self.degree
        vec[0] = a
        return FieldElement(self, tuple(vec))

    def _zero_raw(self):
        return tuple([self.base.zero()] * self.degree)

    def _one_raw(self):
        vec = [self.base.zero()] * self.degree
        vec[0] = self.base.one()
        return tuple(vec)

    def _from_int_raw(self, n):
        vec = [self.base.zero()] * self.degree
        vec[0] = self.base.from_int(n)
        return tuple(vec)

    def _add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def _neg(self, a):
        return tuple(-x for x in a)

    def _mul(self, a, b):
        n = self.degree
        zero = self.base.zero()
        conv = [zero] * (2 * n - 1)
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j, y in enumerate(b):
                if y.is_zero():
                    continue
                conv[i + j] = conv[i + j] + x * y
        for k in range(2 * n - 2, n - 1, -1):
            c = conv[k]
            if c.is_zero():
                continue
            conv[k] = zero
            for i, top in enumerate(self._top):
                conv[k - n + i] = conv[k - n + i] + c * top
        return tuple(conv[:n])

    def _inv(self, a):
        poly = UniPoly(self.base, a, self.minpoly.var)
        if poly.is_zero():
            raise DivisionByZero(f"inverse of 0 in {self}")
        g, u, _ = unipoly_xgcd(poly, self.minpoly)
        if g.degree() != 0:
            raise DivisionByZero(f"{poly} is not invertible modulo {self.minpoly}")
        u = u * g[0].inv()
        vec = [u[i] for i in range(self.degree)]
        return tuple(vec)

    def _is_zero(self, a):
        return all(x.is_zero() for x in a)

    def order(self):
        base_order = self.base.order()
        if base_order is None:
            return None
        return base_order ** self.degree

    def enumerate(self):
        base_elems = list(self.base.enumerate())
        for combo in itertools.product(base_elems, repeat=self.degree):
            yield FieldElement(self, tuple(combo))

    def _random_element(self, rng):
        vec = tuple(self.base._random_element(rng) for _ in range(self.degree))
        return FieldElement(self, vec)

    def format_element(self, a):
        return "[" + ",".join(self.base.format_element(x.value) for x in a) + "]"

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and other.base == self.base
            and other.name == self.name
            and other.minpoly.coeffs == self.minpoly.coeffs
        )

    def __hash__(self):
        return hash(("ext", self.base, self.name, self.minpoly.coeffs))

    def __repr__(self):
        return f"{self.base}[{self.name}]/({self.minpoly})"


class FieldElement:
    """Immutable element of a Field, with operator arithmetic."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, *args):
        raise AttributeError("FieldElement is immutable")

    def _same(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.coerce(other)
        elif not isinstance(other, FieldElement):
            return NotImplemented
        elif other.field != self.field:
            raise DescriptorMismatch(f"mixing elements of {self.field} and {other.field}")
        return other

    def __add__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field._add(self.value, other.value))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field._sub(self.value, other.value))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field._mul(self.value, other.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.value))

    def inv(self):
        return FieldElement(self.field, self.field._inv(self.value))

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self):
        return self.field._is_zero(self.value)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.coerce(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.value == other.value

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        return self.field.format_element(self.value)

    __repr__ = __str__


def embed_into(elem, target):
    """Embed elem into target, which must sit above elem's field in a tower."""
    if elem.field == target:
        return elem
    if isinstance(target, ExtensionField):
        return target.embed(embed_into(elem, target.base))
    raise DescriptorMismatch(f"{elem.field} does not embed into {target}")


def tower_levels(field):
    """The chain of fields from the prime field up to ``field`` itself."""
    levels = []
    while isinstance(field, ExtensionField):
        levels.append(field)
        field = field.base
    levels.append(field)
    return list(reversed(levels))


# ---------------------------------------------------------------------------
# univariate polynomials


class UniPoly:
    """Dense univariate polynomial, coefficients lowest degree first.

    The coefficient list never has a trailing zero; the zero polynomial is
    the empty list and has degree -1.
    """

    __slots__ = ("field", "coeffs", "var")

    def __init__(self, field, coeffs, var="t"):
        cleaned = []
        for c in coeffs:
            if isinstance(c, (int, Fraction)):
                c = field.coerce(c)
            elif c.field != field:
                raise DescriptorMismatch("coefficient from a different field")
            cleaned.append(c)
        while cleaned and cleaned[-1].is_zero():
            cleaned.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(cleaned))
        object.__setattr__(self, "var", var)

    def __setattr__(self, *args):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def zero(cls, field, var="t"):
        return cls(field, (), var)

    @classmethod
    def constant(cls, c, var="t"):
        return cls(c.field, (c,), var)

    @classmethod
    def gen(cls, field, var="t"):
        return cls(field, (field.zero(), field.one()), var)

    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one()

    def lc(self):
        if not self.coeffs:
            raise DivisionByZero("leading coefficient of 0")
        return self.coeffs[-1]

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero()

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            if other.field != self.field:
                raise DescriptorMismatch("polynomials over different fields")
            return other
        if isinstance(other, (int, Fraction, FieldElement)):
            return UniPoly(self.field, (self.field.coerce(other),), self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.field, (self[i] + other[i] for i in range(n)), self.var)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.field, (self[i] - other[i] for i in range(n)), self.var)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return UniPoly(self.field, (-c for c in self.coeffs), self.var)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(self.field, self.var)
        zero = self.field.zero()
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_zero():
                    continue
                out[i + j] = out[i + j] + a * b
        return UniPoly(self.field, out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = UniPoly(self.field, (self.field.one(),), self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("polynomial division by 0")
        rem = list(self.coeffs)
        dd, dv = len(rem) - 1, other.degree()
        if dd < dv:
            return UniPoly.zero(self.field, self.var), self
        inv_lc = other.lc().inv()
        quo = [self.field.zero()] * (dd - dv + 1)
        for k in range(dd - dv, -1, -1):
            c = rem[k + dv]
            if c.is_zero():
                continue
            q = c * inv_lc
            quo[k] = q
            for i in range(dv + 1):
                rem[k + i] = rem[k + i] - q * other[i]
        return (
            UniPoly(self.field, quo, self.var),
            UniPoly(self.field, rem[:dv], self.var),
        )

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divexact(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError(f"{other} does not divide {self}")
        return q

    def monic(self):
        if self.is_zero():
            return self
        return self * self.lc().inv()

    def derivative(self):
        return UniPoly(
            self.field,
            (self.coeffs[i] * i for i in range(1, len(self.coeffs))),
            self.var,
        )

    def shift(self, k):
        """Multiply by var**k."""
        if self.is_zero():
            return self
        return UniPoly(
            self.field, [self.field.zero()] * k + list(self.coeffs), self.var
        )

    def __call__(self, x):
        """Evaluate at a field element or substitute another polynomial."""
        if isinstance(x, UniPoly):
            result = UniPoly.zero(self.field, x.var)
        else:
            x = self.field.coerce(x)
            result = self.field.zero()
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def map_coefficients(self, fn, new_field):
        return UniPoly(new_field, (fn(c) for c in self.coeffs), self.var)

    def rename(self, var):
        return UniPoly(self.field, self.coeffs, var)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return (
            self.field == other.field
            and self.coeffs == other.coeffs
            and self.var == other.var
        )

    def __hash__(self):
        return hash((self.field, self.coeffs, self.var))

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        one = self.field.one()
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            c_str = str(c)
            negative = isinstance(self.field, RationalField) and c.value < 0
            if negative:
                c_str = str(-c)
            if i == 0:
                body = c_str
            else:
                vpow = self.var if i == 1 else f"{self.var}^{i}"
                body = vpow if (c == one and not negative) else f"{c_str}*{vpow}"
                if negative and c == -one:
                    body = vpow
            if not parts:
                parts.append(("-" if negative else "") + body)
            else:
                parts.append(("- " if negative else "+ ") + body)
        return " ".join(parts)

    __repr__ = __str__


def lift_unipoly(p, target):
    """Map the coefficients of p into a field higher in the same tower."""
    if p.field == target:
        return p
    return p.map_coefficients(lambda c: embed_into(c, target), target)


def unipoly_gcd(p, q):
    """Monic greatest common divisor; gcd(0, 0) is 0."""
    if p.field != q.field:
        raise DescriptorMismatch("gcd of polynomials over different fields")
    while not q.is_zero():
        p, q = q, p % q
    return p.monic()


def unipoly_xgcd(p, q):
    """Extended euclidean algorithm: returns (g, u, v) with u*p + v*q = g."""
    field, var = p.field, p.var
    r0, r1 = p, q
    s0, s1 = UniPoly(field, (field.one(),), var), UniPoly.zero(field, var)
    t0, t1 = UniPoly.zero(field, var), UniPoly(field, (field.one(),), var)
    while not r1.is_zero():
        quo, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    return r0, s0, t0


def _pth_root(p):
    """Inverse Frobenius of a polynomial in K[t^char] over a finite field."""
    field = p.field
    char = field.char
    q = field.order()
    if q is None:
        raise ValueError("p-th roots only exist over finite fields")
    coeffs = []
    for i in range(0, p.degree() + 1, char):
        for j in range(i + 1, min(i + char, p.degree() + 1)):
            if not p[j].is_zero():
                raise ValueError("polynomial is not a p-th power")
        coeffs.append(p[i] ** (q // char))
    return UniPoly(field, coeffs, p.var)


def squarefree_part(p):
    """Monic polynomial with the same distinct roots as p, each once.

    Computed as p / gcd(p, p'), with the inverse-Frobenius correction in
    positive characteristic so that pure p-th powers are not missed.
    """
    if p.is_zero():
        raise ZeroDivisionError("squarefree part of 0")
    field = p.field
    if field.char == 0:
        return p.divexact(unipoly_gcd(p, p.derivative())).monic()
    result = UniPoly(field, (field.one(),), p.var)
    f = p.monic()
    while f.degree() > 0:
        d = f.derivative()
        if d.is_zero():
            f = _pth_root(f)
            continue
        g = unipoly_gcd(f, d)
        w = f.divexact(g)
        result = result * w.divexact(unipoly_gcd(result, w))
        f = g
    return result.monic()


def squarefree_decomposition(p):
    """Decompose monic p as a product of squarefree parts with multiplicities."""
    p = p.monic()
    if p.field.char == 0:
        return _squarefree_yun(p)
    return _squarefree_char_p(p)


def _squarefree_yun(f):
    out = []
    d = f.derivative()
    u = unipoly_gcd(f, d)
    v, w = f.divexact(u), d.divexact(u)
    i = 1
    while v.degree() > 0:
        s = w - v.derivative()
        h = unipoly_gcd(v, s)
        if h.degree() > 0:
            out.append((h.monic(), i))
        v = v.divexact(h)
        w = s.divexact(h)
        i += 1
    return out


def _squarefree_char_p(f):
    char = f.field.char
    if f.degree() == 0:
        return []
    d = f.derivative()
    if d.is_zero():
        return [(g, char * m) for g, m in _squarefree_char_p(_pth_root(f))]
    out = []
    g = unipoly_gcd(f, d)
    w = f.divexact(g)
    i = 1
    while w.degree() > 0:
        y = unipoly_gcd(w, g)
        z = w.divexact(y)
        if z.degree() > 0:
            out.append((z.monic(), i))
        w = y
        g = g.divexact(y)
        i += 1
    if g.degree() > 0:
        out.extend((h, char * m) for h, m in _squarefree_char_p(_pth_root(g)))
    return out


# ---------------------------------------------------------------------------
# factorisation


class Factorization:
    """Outcome of split_factors.

    ``factors`` holds certified irreducible monic pieces with their
    multiplicities; ``unfactored`` holds pieces the capability could not
    decide. lead * product(everything) reproduces the input exactly.
    """

    def __init__(self, lead, factors, unfactored):
        self.lead = lead
        self.factors = tuple(factors)
        self.unfactored = tuple(unfactored)

    def is_complete(self):
        return not self.unfactored

    def require_complete(self):
        if self.unfactored:
            pieces = ", ".join(str(p) for p, _ in self.unfactored)
            raise FactorizationUnsupported(
                f"cannot factor beyond capability: {pieces}",
                unfactored=self.unfactored,
            )
        return self

    def expand(self):
        out = None
        for poly, mult in itertools.chain(self.factors, self.unfactored):
            piece = poly ** mult
            out = piece if out is None else out * piece
        if out is None:
            field = self.lead.field
            out = UniPoly(field, (field.one(),))
        return out * UniPoly.constant(self.lead, out.var)

    def linear_roots(self):
        """Roots read off the certified linear factors, with multiplicity."""
        out = []
        for poly, mult in self.factors:
            if poly.degree() == 1:
                out.append((-poly[0], mult))
        return out

    def __repr__(self):
        return f"Factorization(lead={self.lead}, factors={list(self.factors)}, unfactored={list(self.unfactored)})"


def _unipoly_pow_mod(base, exp, mod):
    result = UniPoly(base.field, (base.field.one(),), base.var)
    base = base % mod
    while exp:
        if exp & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        exp >>= 1
    return result


def _equal_degree_split(f, d, rng):
    """Cantor-Zassenhaus split of a product of degree-d irreducibles."""
    if f.degree() == d:
        return [f.monic()]
    field = f.field
    q = field.order()
    k = round(math.log2(q)) if field.char == 2 else None
    while True:
        deg_r = rng.randrange(1, f.degree())
        coeffs = [field._random_element(rng) for _ in range(deg_r)] + [field.one()]
        r = UniPoly(field, coeffs, f.var)
        if field.char != 2:
            s = _unipoly_pow_mod(r, (q ** d - 1) // 2, f) - field.one()
        else:
            s = r % f
            cur = r % f
            for _ in range(k * d - 1):
                cur = (cur * cur) % f
                s = s + cur
        g = unipoly_gcd(f, s)
        if 0 < g.degree() < f.degree():
            return _equal_degree_split(g, d, rng) + _equal_degree_split(
                f.divexact(g), d, rng
            )


def _factor_squarefree_finite(f, rng):
    """Complete factorisation of a monic squarefree poly over a finite field."""
    field = f.field
    q = field.order()
    out = []
    h = UniPoly.gen(field, f.var)
    d = 0
    while f.degree() > 0:
        d += 1
        if 2 * d > f.degree():
            out.append(f.monic())
            break
        h = _unipoly_pow_mod(h, q, f)
        g = unipoly_gcd(f, h - UniPoly.gen(field, f.var))
        if g.degree() > 0:
            out.extend(_equal_degree_split(g, d, rng))
            f = f.divexact(g)
            h = h % f
    return sorted(out, key=str)


def _divisors(n):
    n = abs(n)
    out = []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            out.append(d)
            if d * d != n:
                out.append(n // d)
    return sorted(out)


def _rational_root_candidates(g):
    """Rational root candidates of a polynomial over Q, by the p/q test."""
    lcm_den = 1
    for c in g.coeffs:
        lcm_den = lcm_den * c.value.denominator // math.gcd(lcm_den, c.value.denominator)
    ints = [int(c.value * lcm_den) for c in g.coeffs]
    lo = next(i for i, c in enumerate(ints) if c != 0)
    a0, an = ints[lo], ints[-1]
    candidates = {Fraction(0)} if lo > 0 else set()
    for p in _divisors(a0):
        for q in _divisors(an):
            candidates.add(Fraction(p, q))
            candidates.add(Fraction(-p, q))
    return candidates


def _extract_root(g, r):
    """Divide out (t - r) as often as possible; returns (g, multiplicity)."""
    lin = UniPoly(g.field, (-r, g.field.one()), g.var)
    mult = 0
    while g.degree() > 0 and g(r).is_zero():
        g = g.divexact(lin)
        mult += 1
    return g, mult


def _flatten_to_rationals(elem):
    """Coordinates of a characteristic-zero tower element over the Q basis."""
    if isinstance(elem.field, RationalField):
        return [elem.value]
    out = []
    for comp in elem.value:
        out.extend(_flatten_to_rationals(comp))
    return out


def _sqrt_fraction(fr):
    if fr < 0:
        return None
    num, den = fr.numerator, fr.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def field_sqrt(elem):
    """Exact square root, None when provably not a square.

    Decidable over Q and over a single quadratic extension of Q; other
    fields raise NotImplementedError.
    """
    field = elem.field
    if isinstance(field, RationalField):
        r = _sqrt_fraction(elem.value)
        return None if r is None else FieldElement(field, r)
    if (
        isinstance(field, ExtensionField)
        and isinstance(field.base, RationalField)
        and field.degree == 2
    ):
        return _sqrt_quadratic_extension(elem)
    raise NotImplementedError(f"square roots undecided over {field}")


def _sqrt_quadratic_extension(elem):
    # minimal polynomial t^2 + P t + Q, generator theta: theta^2 = -P theta - Q
    field = elem.field
    P = field.minpoly[1].value
    Q = field.minpoly[0].value
    A, B = elem.value[0].value, elem.value[1].value

    def build(u, v):
        cand = FieldElement(field, (QQ.coerce(u), QQ.coerce(v)))
        return cand if cand * cand == elem else None

    if B == 0:
        r = _sqrt_fraction(A)
        if r is not None:
            got = build(r, Fraction(0))
            if got:
                return got
        denom = Fraction(P, 2) ** 2 - Q
        if denom != 0:
            w = A / denom
            v = _sqrt_fraction(w)
            if v is not None:
                got = build(P * v / 2, v)
                if got:
                    return got
        return None
    # v != 0: (P^2 - 4Q) w^2 + (2BP - 4A) w + B^2 = 0 with w = v^2
    a = Fraction(P * P - 4 * Q)
    b = 2 * B * P - 4 * A
    c = Fraction(B * B)
    disc = b * b - 4 * a * c
    s = _sqrt_fraction(disc)
    if s is None:
        return None
    for w in ((-b + s) / (2 * a), (-b - s) / (2 * a)):
        v = _sqrt_fraction(w)
        if v is None or v == 0:
            continue
        for vv in (v, -v):
            u = (B + P * vv * vv) / (2 * vv)
            got = build(u, vv)
            if got:
                return got
    return None


def _solve_monic_quadratic(g):
    """Roots of a monic quadratic, or None when undecidable.

    Returns a possibly empty list when the decision is complete.
    """
    b, c = g[1], g[0]
    disc = b * b - c * 4
    try:
        s = field_sqrt(disc)
    except NotImplementedError:
        return None
    if s is None:
        return []
    two_inv = g.field.from_int(2).inv()
    return [(-b + s) * two_inv, (-b - s) * two_inv]


def _generator_candidates(field):
    """Tower generators and their quadratic conjugates, embedded into field."""
    out = []
    for level in tower_levels(field):
        if not isinstance(level, ExtensionField):
            continue
        theta = embed_into(level.generator(), field)
        out.append(theta)
        if level.degree == 2:
            out.append(embed_into(-level.minpoly[1], field) - theta)
    return out


def field_roots(g, rng=None):
    """All roots of g in its own coefficient field that we can certify.

    Returns (roots, cofactor, complete): roots is a list of (element,
    multiplicity), cofactor is the monic rootless remainder, and complete
    says whether the cofactor provably has no further roots in the field.
    """
    if g.is_zero():
        raise ZeroDivisionError("roots of the zero polynomial")
    field = g.field
    g = g.monic()
    roots = []

    if field.order() is not None:
        rng = rng or random.Random(0)
        cofactor = UniPoly(field, (field.one(),), g.var)
        for part, mult in squarefree_decomposition(g):
            for irr in _factor_squarefree_finite(part, rng):
                if irr.degree() == 1:
                    roots.append((-irr[0], mult))
                else:
                    cofactor = cofactor * irr ** mult
        return roots, cofactor, True

    if isinstance(field, RationalField):
        for cand in sorted(_rational_root_candidates(g)):
            if g.degree() == 0:
                break
            g, mult = _extract_root(g, field.coerce(cand))
            if mult:
                roots.append((field.coerce(cand), mult))
        return roots, g, True

    # characteristic-zero extension tower
    candidates = []
    dim = 1
    for level in tower_levels(field):
        if isinstance(level, ExtensionField):
            dim *= level.degree
    comps = [[] for _ in range(dim)]
    for c in g.coeffs:
        for j, fr in enumerate(_flatten_to_rationals(c)):
            comps[j].append(QQ.coerce(fr))
    common = UniPoly.zero(QQ, g.var)
    for comp in comps:
        common = unipoly_gcd(common, UniPoly(QQ, comp, g.var))
    if common.degree() > 0:
        rational_roots, _, _ = field_roots(common)
        candidates.extend(embed_into(r, field) for r, _ in rational_roots)
    candidates.extend(_generator_candidates(field))

    progress = True
    decided_rootless = False
    while progress and g.degree() > 0:
        progress = False
        for cand in candidates:
            g, mult = _extract_root(g, cand)
            if mult:
                roots.append((cand, mult))
                progress = True
        if g.degree() == 1:
            roots.append((-g[0], 1))
            g = UniPoly(field, (field.one(),), g.var)
            progress = True
        elif g.degree() == 2:
            quad = _solve_monic_quadratic(g)
            if quad is None:
                break
            if not quad:
                decided_rootless = True
                break
            for r in quad:
                g, mult = _extract_root(g, r)
                if mult:
                    roots.append((r, mult))
            progress = True
    complete = g.degree() == 0 or decided_rootless
    return roots, g, complete


def split_factors(p, rng=None):
    """Factor p into monic irreducibles as far as the field capability allows.

    Complete over finite fields. Over Q all linear factors are extracted
    and degree <= 3 remainders are certified irreducible; over extension
    towers quadratic remainders are certified only when the square root
    decision is available. Everything else lands in ``unfactored``.
    """
    if p.is_zero() or p.degree() < 1:
        raise ZeroDivisionError("split_factors needs a nonconstant polynomial")
    rng = rng or random.Random(0)
    field = p.field
    lead = p.lc()
    factors = []
    unfactored = []
    for part, mult in squarefree_decomposition(p.monic()):
        if field.order() is not None:
            factors.extend((irr, mult) for irr in _factor_squarefree_finite(part, rng))
            continue
        roots, cofactor, complete = field_roots(part, rng)
        for r, m in roots:
            lin = UniPoly(field, (-r, field.one()), part.var)
            factors.append((lin, mult * m))
        if cofactor.degree() == 0:
            continue
        certified = False
        if isinstance(field, RationalField):
            certified = cofactor.degree() <= 3
        else:
            certified = complete and cofactor.degree() <= 3
        if certified:
            factors.append((cofactor, mult))
        else:
            unfactored.append((cofactor, mult))
    factors.sort(key=lambda fm: str(fm[0]))
    unfactored.sort(key=lambda fm: str(fm[0]))
    return Factorization(lead, factors, unfactored)


def is_irreducible(p, rng=None):
    """Decide irreducibility when possible, else raise IrreducibilityUnverifiable."""
    if p.degree() < 1:
        return False
    if p.degree() == 1:
        return True
    fac = split_factors(p, rng)
    whole = [(q, m) for q, m in itertools.chain(fac.factors, fac.unfactored)]
    if len(whole) > 1 or whole[0][1] > 1 or whole[0][0].degree() < p.degree():
        return False
    if fac.unfactored:
        raise IrreducibilityUnverifiable(
            f"cannot certify irreducibility of {p} over {p.field}"
        )
    return True


def smallest_irreducible(field, degree):
    """Lexicographically first monic irreducible of the given degree.

    Deterministic replacement for a pretabulated list; only meaningful over
    finite fields, where the irreducibility test is complete.
    """
    if field.order() is None:
        raise ValueError("irreducible search needs a finite field")
    elems = list(field.enumerate())
    for tail in itertools.product(elems, repeat=degree):
        poly = UniPoly(field, list(tail) + [field.one()])
        if poly.degree() == degree and is_irreducible(poly):
            return poly
    raise RuntimeError("no irreducible found; unreachable for true fields")


# ---------------------------------------------------------------------------
# text parsing


def parse_element(text, field):
    """Parse element syntax: '3/4', '5', '[1,0,2]' (vector over the base)."""
    text = text.strip()
    if not text:
        raise ParseError("empty element")
    if text.startswith("["):
        if not isinstance(field, ExtensionField):
            raise ParseError(f"vector element {text!r} over non-extension field {field}")
        if not text.endswith("]"):
            raise ParseError(f"unbalanced brackets in {text!r}")
        inner = text[1:-1]
        comps = []
        depth = 0
        cur = []
        for ch in inner:
            if ch == "[":
                depth += 1
            elif ch == "]":
                depth -= 1
            if ch == "," and depth == 0:
                comps.append("".join(cur))
                cur = []
            else:
                cur.append(ch)
        comps.append("".join(cur))
        if len(comps) > field.degree:
            raise ParseError(f"vector {text!r} longer than extension degree {field.degree}")
        vec = [parse_element(c, field.base) for c in comps]
        vec.extend([field.base.zero()] * (field.degree - len(vec)))
        return FieldElement(field, tuple(vec))
    if isinstance(field, ExtensionField):
        return field.embed(parse_element(text, field.base))
    if isinstance(field, RationalField):
        try:
            return FieldElement(field, Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {text!r}") from exc
    try:
        return field.from_int(int(text))
    except ValueError as exc:
        raise ParseError(f"bad residue {text!r} for {field}") from exc


def parse_unipoly(text, field, var="t"):
    """Parse '+'/'-' separated terms like '2*t^3', '-t', '[1,0]*t', '5'."""
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

    result = UniPoly.zero(field, var)
    sign = 1
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok in {"+", "-"}:
            sign = 1 if tok == "+" else -1
            i += 1
            continue
        if not tok:
            i += 1
            continue
        result = result + _parse_uni_term(tok, field, var, sign)
        sign = 1
        i += 1
    return result


def _parse_uni_term(term, field, var, sign):
    term = term.strip()
    negate = False
    while term.startswith("-") or term.startswith("+"):
        if term[0] == "-":
            negate = not negate
        term = term[1:].strip()
    coeff = field.one()
    power = 0
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
        if name == var:
            power += int(exp) if exp else 1
        elif name.isidentifier():
            raise ParseError(f"unknown variable {name!r}, expected {var!r}")
        else:
            coeff = coeff * parse_element(piece, field)
    if negate != (sign < 0):
        coeff = -coeff
    return UniPoly.constant(coeff, var).shift(power)


def parse_field(text):
    """Parse a field descriptor: 'Q', 'F7', 'Q[t]/(t^2-2)', nested by repetition."""
    text = text.strip()
    head = text
    rest = ""
    bracket = text.find("[")
    if bracket >= 0:
        head, rest = text[:bracket], text[bracket:]
    if head == "Q":
        field = QQ
    elif head.startswith("F") and head[1:].isdigit():
        field = PrimeField(int(head[1:]))
    else:
        raise ParseError(f"unknown base field {head!r}")
    while rest:
        if not rest.startswith("["):
            raise ParseError(f"bad extension syntax near {rest!r}")
        close = rest.find("]")
        if close < 0:
            raise ParseError(f"unterminated extension name in {rest!r}")
        name = rest[1:close]
        if not name.isidentifier():
            raise ParseError(f"bad generator name {name!r}")
        rest = rest[close + 1 :]
        if not rest.startswith("/("):
            raise ParseError(f"expected '/(' after generator name, got {rest!r}")
        close = rest.find(")")
        if close < 0:
            raise ParseError(f"unterminated minimal polynomial in {rest!r}")
        poly_text = rest[2:close]
        rest = rest[close + 1 :]
        minpoly = parse_unipoly(poly_text, field, name)
        field = ExtensionField(field, minpoly, name)
    return field


def field_descriptor(field):
    """Inverse of parse_field for the supported kinds."""
    return repr(field)
