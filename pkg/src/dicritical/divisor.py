"""Prime divisors as finite blow-up chains with exact pullback.

A chain of blow-up steps determines a divisorial valuation: the order of
vanishing along the exceptional curve of one more blow-up at the final
centre, equivalently the local order at the final chart of the fully
substituted polynomial. Pullback replays the steps while keeping the
decomposition

    f after substitution = x^ex * y^ey * strict

with the strict part divisible by neither coordinate, so both the value
and the residue leading forms come out exactly.

Satellite steps come in two kinds, Origin (Translate1 with c = 0) and
AtInfinity (Chart2); free steps recentre at y = c on the latest
exceptional line and may extend the residue field when c generates an
extension. Step text syntax: ``O``, ``I``, ``F(3/2)``, ``F(t^2-2)``,
comma separated.

The subtractive euclidean algorithm on a coprime weight pair produces the
unique satellite chain realising the monomial valuation with those
weights, together with the unimodular exponent matrix relating the
original coordinates to the final chart coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ContractError, NotCoprime, ParseError, ZeroPolynomial
from .field import (
    ExtensionField,
    UniPoly,
    embed_into,
    parse_element,
    parse_unipoly,
)
from .poly import BiPoly, ChartMap, substitute_chart

ORIGIN = "origin"
AT_INFINITY = "at_infinity"
FREE = "free"


@dataclass(frozen=True)
class BlowupStep:
    """One centre choice in a blow-up chain.

    Origin and AtInfinity are the two satellite charts; Free(c) recentres
    at y = c on the latest exceptional line. A free step whose point is
    not rational over the current residue field carries the minimal
    polynomial of the point instead of a value; the value becomes the
    generator of the extension while building the divisor.
    """

    kind: str
    value: object = None  # FieldElement once resolved
    minpoly: UniPoly = None

    @classmethod
    def origin(cls):
        return cls(ORIGIN)

    @classmethod
    def at_infinity(cls):
        return cls(AT_INFINITY)

    @classmethod
    def free(cls, value=None, minpoly=None):
        if value is None and minpoly is None:
            raise ContractError("free step needs a point or a minimal polynomial")
        return cls(FREE, value, minpoly)

    def __repr__(self):
        if self.kind == ORIGIN:
            return "O"
        if self.kind == AT_INFINITY:
            return "I"
        if self.minpoly is not None:
            return f"F({self.minpoly})"
        return f"F({self.value})"


@dataclass(frozen=True)
class ChartMatrix:
    """Unimodular exponent matrix of a satellite chain.

    x = x_nu^k1 * y_nu^k2 and y = x_nu^l1 * y_nu^l2, with
    k1*l2 - k2*l1 = 1, k1 + k2 = alpha and l1 + l2 = beta.
    """

    k1: int
    k2: int
    l1: int
    l2: int

    def __post_init__(self):
        if self.k1 * self.l2 - self.k2 * self.l1 != 1:
            raise ContractError("chart matrix must have determinant one")

    def apply(self, a, b):
        """Exponents (c, d) of x^a y^b in the final chart coordinates."""
        return (self.k1 * a + self.l1 * b, self.k2 * a + self.l2 * b)


def euclid_matrix(alpha, beta):
    """Satellite chain and exponent matrix of the weight pair (alpha, beta).

    Subtractive euclidean algorithm: Origin when the first weight is
    strictly smaller (the y weight drops), AtInfinity when strictly
    larger, stopping at (1, 1).
    """
    if alpha < 1 or beta < 1:
        raise ContractError("weights must be positive")
    if math.gcd(alpha, beta) != 1:
        raise NotCoprime(f"gcd({alpha}, {beta}) != 1")
    a, b = alpha, beta
    steps = []
    m = (1, 0, 0, 1)  # row-major 2x2, composed left of the running product
    while (a, b) != (1, 1):
        assert a != b, "subtractive euclid meets equality only at (1, 1)"
        if a < b:
            steps.append(BlowupStep.origin())
            b -= a
            step_m = (1, 1, 0, 1)
        else:
            steps.append(BlowupStep.at_infinity())
            a -= b
            step_m = (1, 0, 1, 1)
        m = _mat_mul(step_m, m)
    matrix = ChartMatrix(k1=m[0], k2=m[2], l1=m[1], l2=m[3])
    return matrix, steps


def _mat_mul(p, q):
    return (
        p[0] * q[0] + p[1] * q[2],
        p[0] * q[1] + p[1] * q[3],
        p[2] * q[0] + p[3] * q[2],
        p[2] * q[1] + p[3] * q[3],
    )


class PrimeDivisor:
    """A divisorial valuation encoded by its blow-up chain.

    ``step_fields[i]`` is the residue field in which step i operates
    (after any extension the step itself introduces);
    ``final_residue_field`` is the residue field K' of the divisor.
    The empty chain is the order of vanishing at the origin itself.
    """

    def __init__(self, base_field, steps, step_fields, final_field):
        self.base_field = base_field
        self.steps = tuple(steps)
        self.step_fields = tuple(step_fields)
        self.final_residue_field = final_field

    @property
    def nu(self):
        return len(self.steps)

    def is_satellite(self):
        return all(s.kind in (ORIGIN, AT_INFINITY) for s in self.steps)

    def __repr__(self):
        chain = ",".join(repr(s) for s in self.steps)
        return f"PrimeDivisor({chain or 'm-adic'} over {self.base_field})"


def build_divisor(base_field, steps):
    """Resolve a step list into a PrimeDivisor, extending the field as needed.

    Extension generators are named theta1, theta2, ... in chain order.
    Free steps at c = 0 are the Origin chart and are normalised to it.
    """
    current = base_field
    resolved = []
    step_fields = []
    theta = 0
    for step in steps:
        if step.kind == FREE:
            if step.minpoly is not None:
                minpoly = step.minpoly
                if minpoly.field != current:
                    minpoly = minpoly.map_coefficients(
                        lambda c: embed_into(c, current), current
                    )
                theta += 1
                current = ExtensionField(current, minpoly, f"theta{theta}")
                value = current.generator()
                resolved.append(BlowupStep(FREE, value, minpoly))
            else:
                value = embed_into(step.value, current) if step.value.field != current else step.value
                if value.is_zero():
                    resolved.append(BlowupStep.origin())
                else:
                    resolved.append(BlowupStep(FREE, value))
        else:
            resolved.append(step)
        step_fields.append(current)
    return PrimeDivisor(base_field, resolved, step_fields, current)


@dataclass(frozen=True)
class PullbackResult:
    """Replay outcome: total transform = x^x_exp * y^y_exp * strict."""

    x_exp: int
    y_exp: int
    strict: BiPoly
    value: int  # the divisorial value, x_exp + y_exp + order(strict)
    field: object


def pullback(f, d):
    """Replay f through the chain of d.

    Returns the monomial exponents, the strict part (coordinate factors
    removed at every step; unit factors created by free recentring stay
    multiplied in, they do not vanish at the final centre), and the value
    of f under the divisorial valuation.
    """
    if f.is_zero():
        raise ZeroPolynomial("pullback of 0")
    g = f
    if g.field != d.base_field:
        raise ContractError(f"polynomial over {g.field}, divisor over {d.base_field}")
    ex = ey = 0
    for step, field in zip(d.steps, d.step_fields):
        if g.field != field:
            g = g.lift(field, lambda c: embed_into(c, field))
        if step.kind == AT_INFINITY:
            ey = ex + ey
            g = substitute_chart(g, ChartMap.chart2())
            unit = None
        else:
            c = step.value if step.kind == FREE else field.zero()
            unit = None
            if step.kind == FREE and not c.is_zero() and ey:
                y_plus_c = BiPoly(
                    g.field, {(0, 1): field.one(), (0, 0): c}, g.vars
                )
                unit = y_plus_c ** ey
            if step.kind == FREE and not c.is_zero():
                ex, ey = ex + ey, 0
            else:
                ex = ex + ey
            g = substitute_chart(g, ChartMap.translate1(c))
        sx, sy = g.min_x_power(), g.min_y_power()
        g = g.divide_x_power(sx).divide_y_power(sy)
        ex += sx
        ey += sy
        if unit is not None:
            g = g * unit
    return PullbackResult(ex, ey, g, ex + ey + g.order(), g.field)


# ---------------------------------------------------------------------------
# chain text syntax


def parse_steps(text, base_field):
    """Parse a comma separated chain such as 'O,I,F(1)' or 'O,F(t^2-2)'.

    Minimal polynomials of free extension steps are parsed over the field
    reached at their position in the chain; the empty string is the empty
    chain.
    """
    text = text.strip()
    steps = []
    current = base_field
    theta = 0
    for raw in _split_chain(text):
        tok = raw.strip()
        if not tok:
            continue
        if tok == "O":
            steps.append(BlowupStep.origin())
        elif tok == "I":
            steps.append(BlowupStep.at_infinity())
        elif tok.startswith("F(") and tok.endswith(")"):
            inner = tok[2:-1].strip()
            step, current, theta = _parse_free(inner, current, theta)
            steps.append(step)
        else:
            raise ParseError(f"bad blow-up step {tok!r}")
    return steps


def _split_chain(text):
    parts = []
    depth = 0
    cur = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def _parse_free(inner, current, theta):
    try:
        value = parse_element(inner, current)
        return BlowupStep.free(value=value), current, theta
    except ParseError:
        pass
    var = _leading_identifier(inner)
    if var is None:
        raise ParseError(f"bad free point {inner!r}")
    minpoly = parse_unipoly(inner, current, var).monic()
    theta += 1
    new_field = ExtensionField(current, minpoly, f"theta{theta}")
    return BlowupStep.free(minpoly=minpoly), new_field, theta


def _leading_identifier(text):
    for i, ch in enumerate(text):
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            return text[i:j]
    return None


def format_steps(steps):
    return ",".join(repr(s) for s in steps)
