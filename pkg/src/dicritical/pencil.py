"""Resolution of pencil base points by iterated point blow-ups.

A pencil is a coprime pair (f, g); its local base point at the origin is
resolved by blowing up, dividing both total transforms by the shared
power of the exceptional coordinate (the local gcd), and recursing into
the common zeros of the two restrictions to the new exceptional line,
including the point at infinity of that line reached through the second
chart. Leaves have no remaining base points, so the pulled back ideal is
locally principal.

Every node records the restriction of F/G to its exceptional line as a
fraction in the line coordinate; a node is dicritical exactly when that
restriction is nonconstant, which is also when the pencil map onto the
projective line is dominant there. The sampling oracle verifies the flag
by brute force: a rational function of degree at most B that takes a
single value at B + 2 distinct points is constant.

Points at infinity of a single polynomial are handled per the projective
picture: homogenise, intersect with the line at infinity, and resolve the
pencil (numerator, phi^degree) in the chart (phi, psi) = (1/x, y/x), or
with the roles of x and y exchanged for the point (0:1:0).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field

from .errors import (
    ConstantPolynomial,
    CorollaryViolation,
    DepthExceeded,
    InsufficientSamples,
    NotCoprime,
    ZeroPolynomial,
)
from .field import (
    ExtensionField,
    UniPoly,
    embed_into,
    smallest_irreducible,
    split_factors,
    unipoly_gcd,
)
from .poly import (
    BiPoly,
    ChartMap,
    X_CHART,
    Y_CHART,
    bipoly_divexact,
    bipoly_gcd,
    substitute_chart,
    to_infinity_chart,
)
from .divisor import FREE, BlowupStep, build_divisor
from .residue import ResidueElement, is_dicritical, polynomial_regenerable, apply_mobius


@dataclass(frozen=True)
class PencilState:
    """Transformed pencil data in one chart.

    ``chart_history`` is the list of blow-up steps leading into the chart;
    the empty history is the original chart at the origin. ``level`` is
    the exceptional multiplicity divided out by the latest blow-up, zero
    for the original chart. The local gcd of F and G is a unit at every
    point under consideration.
    """

    F: BiPoly
    G: BiPoly
    chart_history: tuple
    residue_field: object
    level: int = 0


@dataclass(frozen=True)
class BasePoint:
    """A common zero of the pencil at the current stage.

    ``point`` is None for the origin of the original chart and for the
    point at infinity of the exceptional line (flagged by at_infinity);
    non-rational points carry the minimal polynomial of their coordinate.
    Multiplicities are the local orders of F and G at the point, when the
    state at the point is available.
    """

    point: object = None
    minpoly: UniPoly = None
    at_infinity: bool = False
    mults: tuple = None


class BlowupNode:
    """One exceptional divisor of the resolution."""

    def __init__(
        self,
        exceptional_id,
        steps,
        state,
        point_label,
        restriction_num,
        restriction_den,
        residue_map,
        dicritical,
        children,
    ):
        self.exceptional_id = exceptional_id
        self.steps = steps  # blow-up chain of the centre: the divisor of this node
        self.state = state  # chart containing the new exceptional line as x = 0
        self.point_label = point_label
        self.restriction_num = restriction_num
        self.restriction_den = restriction_den
        self.residue_map = residue_map
        self.dicritical = dicritical
        self.children = children

    def __repr__(self):
        res = str(self.residue_map) if self.residue_map is not None else "inf"
        flag = " dicritical" if self.dicritical else ""
        return f"<{self.exceptional_id} residue={res}{flag}>"


@dataclass
class BlowupTree:
    f: BiPoly
    g: BiPoly
    field: object
    root: BlowupNode = None

    def nodes(self):
        stack = [self.root] if self.root else []
        while stack:
            node = stack.pop(0)
            yield node
            stack = list(node.children) + stack

    def find(self, exceptional_id):
        for node in self.nodes():
            if node.exceptional_id == exceptional_id:
                return node
        raise KeyError(exceptional_id)

    def depth(self):
        def go(node):
            return 1 + max((go(c) for c in node.children), default=0)

        return go(self.root) if self.root else 0


def base_points(state, rng=None):
    """Common zeros of the pencil at the current stage.

    In the original chart (empty history) the only candidate is the
    origin. After a blow-up the candidates are the common roots of the
    two restrictions on the exceptional line plus the point at infinity
    of that line, which both restrictions reach when their degrees fall
    below the divided multiplicity.
    """
    if not state.chart_history:
        fo = state.F.coeff(0, 0)
        go = state.G.coeff(0, 0)
        if fo.is_zero() and go.is_zero():
            return [BasePoint(mults=(state.F.order(), state.G.order()))]
        return []
    out = []
    f_E = state.F.restrict_x0("t")
    g_E = state.G.restrict_x0("t")
    common = unipoly_gcd(f_E, g_E)
    if common.degree() > 0:
        fac = split_factors(common, rng or random.Random(0))
        fac.require_complete()
        for q, _ in sorted(fac.factors, key=lambda fm: str(fm[0])):
            if q.degree() == 1:
                c = -q[0]
                Fc = state.F.translate_y(c)
                Gc = state.G.translate_y(c)
                out.append(BasePoint(point=c, mults=(Fc.order(), Gc.order())))
            else:
                out.append(BasePoint(minpoly=q))
    h = state.level
    if f_E.degree() < h and g_E.degree() < h:
        out.append(BasePoint(at_infinity=True))
    return out


def monomialize(f, g, max_depth=64, rng=None):
    """Resolve the base point of the coprime pencil (f, g) at the origin.

    Returns a tree with one node per exceptional divisor; the tree is
    empty when the origin is not a base point. The depth cap guards
    against bugs only, termination is guaranteed by the dropping
    intersection multiplicity.
    """
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomial("pencil members must be nonzero")
    f._check(g)
    common = bipoly_gcd(f, g)
    if not common.is_zero() and (len(common.terms) > 1 or max(common.terms) != (0, 0)):
        raise NotCoprime(f"pencil members share the factor {common}")
    rng = rng or random.Random(0)
    tree = BlowupTree(f, g, f.field)
    if f.coeff(0, 0).is_zero() and g.coeff(0, 0).is_zero():
        ids = itertools.count(1)
        tree.root = _blow_up(
            f, g, (), "origin", f.field, 0, ids, max_depth, rng
        )
    return tree


def _blow_up(F, G, steps, point_label, field, depth, ids, max_depth, rng):
    """Blow up the origin of the current chart; F and G both vanish there."""
    if depth >= max_depth:
        raise DepthExceeded(f"blow-up recursion beyond {max_depth} levels")
    node_id = f"E{next(ids)}"
    h = min(F.order(), G.order())
    FA = substitute_chart(F, ChartMap.translate1(field.zero())).divide_x_power(h)
    GA = substitute_chart(G, ChartMap.translate1(field.zero())).divide_x_power(h)
    f_E = FA.restrict_x0("t")
    g_E = GA.restrict_x0("t")
    residue = None if g_E.is_zero() else ResidueElement(f_E, g_E)
    dicritical = residue is not None and is_dicritical(residue)
    state = PencilState(FA, GA, steps + (BlowupStep.origin(),), field, h)

    children = []
    common = unipoly_gcd(f_E, g_E)
    if common.degree() > 0:
        fac = split_factors(common, rng)
        fac.require_complete()
        for q, _ in sorted(fac.factors, key=lambda fm: str(fm[0])):
            if q.degree() == 1:
                c = -q[0]
                child_field = field
                FAc, GAc = FA, GA
            else:
                idx = 1 + sum(
                    1 for s in steps if s.kind == FREE and s.minpoly is not None
                )
                child_field = ExtensionField(field, q, f"theta{idx}")
                FAc = FA.lift(child_field, lambda e: embed_into(e, child_field))
                GAc = GA.lift(child_field, lambda e: embed_into(e, child_field))
                c = child_field.generator()
            Fc = FAc.translate_y(c)
            Gc = GAc.translate_y(c)
            if c.is_zero():
                step = BlowupStep.origin()
            else:
                step = BlowupStep(FREE, c, q if q.degree() > 1 else None)
            children.append(
                _blow_up(
                    Fc,
                    Gc,
                    steps + (step,),
                    str(c),
                    child_field,
                    depth + 1,
                    ids,
                    max_depth,
                    rng,
                )
            )
    FB = substitute_chart(F, ChartMap.chart2()).divide_y_power(h)
    GB = substitute_chart(G, ChartMap.chart2()).divide_y_power(h)
    if FB.coeff(0, 0).is_zero() and GB.coeff(0, 0).is_zero():
        children.append(
            _blow_up(
                FB,
                GB,
                steps + (BlowupStep.at_infinity(),),
                "inf",
                field,
                depth + 1,
                ids,
                max_depth,
                rng,
            )
        )
    return BlowupNode(
        node_id,
        steps,
        state,
        point_label,
        f_E,
        g_E,
        residue,
        dicritical,
        children,
    )


def dicritical_components(tree):
    """The flagged exceptional divisors with their restriction fractions."""
    return [
        (node.exceptional_id, node.residue_map)
        for node in tree.nodes()
        if node.dicritical
    ]


def node_divisor(tree, node):
    """The prime divisor of a node's exceptional line, rebuilt from its steps."""
    return build_divisor(tree.field, list(node.steps))


# ---------------------------------------------------------------------------
# sampling oracle


def sample_points(field, n):
    """n distinct deterministic sample values, extending small finite fields.

    Finite fields with fewer than n elements are extended by the smallest
    irreducible of the least sufficient degree, capped at 4.
    """
    if field.order() is None:
        return [field.from_int(i) for i in range(n)]
    if field.order() >= n:
        return list(itertools.islice(field.enumerate(), n))
    degree = 2
    while field.order() ** degree < n:
        degree += 1
        if degree > 4:
            raise InsufficientSamples(
                f"{n} samples need an extension of degree > 4 over {field}"
            )
    ext = ExtensionField(field, smallest_irreducible(field, degree), "w")
    return list(itertools.islice(ext.enumerate(), n))


def sampling_oracle(tree, exceptional_id, lambdas):
    """Brute-force dicriticality verdict for one exceptional divisor.

    Evaluates the restriction fraction at the given distinct sample
    points (poles count as the value infinity) and reports nonconstant
    when at least two distinct values appear. Sound because a nonconstant
    restriction of degree at most deg f + deg g cannot take one value
    more than deg f + deg g times.
    """
    bound = 2 + tree.f.total_degree() + tree.g.total_degree()
    if len(lambdas) < bound:
        raise InsufficientSamples(f"need at least {bound} samples, got {len(lambdas)}")
    if len(set(lambdas)) != len(lambdas):
        raise InsufficientSamples("sample points must be distinct")
    node = tree.find(exceptional_id)
    if node.residue_map is None:
        return False
    values = set()
    for lam in lambdas:
        got = node.residue_map.evaluate(lam)
        values.add("inf" if got is None else got)
        if len(values) >= 2:
            return True
    return False


# ---------------------------------------------------------------------------
# points at infinity


@dataclass
class InfinityPoint:
    chart: str  # "X" or "Y"
    label: str
    minpoly: UniPoly
    field: object
    tree: BlowupTree


@dataclass
class InfinityReport:
    polynomial: BiPoly
    field: object
    degree: int
    points: list
    dicriticals: list  # (point, node) pairs, flattened

    def to_json(self):
        out = {
            "polynomial": str(self.polynomial),
            "field": repr(self.field),
            "degree": self.degree,
            "points": [],
            "dicritical_divisors": [],
        }
        for pt in self.points:
            out["points"].append(
                {
                    "chart": pt.chart,
                    "point": pt.label,
                    "minpoly": str(pt.minpoly) if pt.minpoly else None,
                    "field": repr(pt.field),
                    "tree": tree_to_json(pt.tree),
                }
            )
        for pt, node in self.dicriticals:
            witness = polynomial_regenerable(node.residue_map)
            out["dicritical_divisors"].append(
                {
                    "chart": pt.chart,
                    "point": pt.label,
                    "id": node.exceptional_id,
                    "steps": ",".join(repr(s) for s in node.steps),
                    "residue": {
                        "num": str(node.residue_map.num),
                        "den": str(node.residue_map.den),
                    },
                    "regenerable": witness is not None,
                    "witness": witness.to_json() if witness else None,
                }
            )
        return out


def dicriticals_at_infinity(f, max_depth=64, rng=None):
    """Resolve the pencil (f, degree form denominator) at every point at infinity.

    The points at infinity are the zeros of the degree form on the line at
    infinity; at each one the local pair is the infinity-chart numerator
    recentred at the point together with phi^degree.
    """
    if f.is_zero():
        raise ZeroPolynomial("points at infinity of 0")
    if f.total_degree() == 0:
        raise ConstantPolynomial("a constant has no points at infinity")
    rng = rng or random.Random(0)
    m = f.total_degree()
    field = f.field
    deg_form = f.degree_form()
    # restriction of the degree form to the X chart of the infinity line
    px = UniPoly(
        field,
        _dense_from_pairs(
            [(b, c) for (a, b), c in deg_form.terms.items()], field
        ),
        "t",
    )
    points = []
    if px.degree() > 0:
        fac = split_factors(px, rng)
        fac.require_complete()
        for q, _ in sorted(fac.factors, key=lambda fm: str(fm[0])):
            if q.degree() == 1:
                points.append((X_CHART, -q[0], None, field))
            else:
                idx = 1 + sum(1 for p in points if p[2] is not None)
                ext = ExtensionField(field, q, f"theta{idx}")
                points.append((X_CHART, ext.generator(), q, ext))
    if deg_form.coeff(0, m).is_zero():
        points.append((Y_CHART, None, None, field))

    out_points = []
    dicriticals = []
    for chart, c, minpoly, pt_field in points:
        local_f = f if pt_field == field else f.lift(
            pt_field, lambda e: embed_into(e, pt_field)
        )
        N, deg = to_infinity_chart(local_f, chart)
        if c is not None and not c.is_zero():
            N = N.translate_y(c)
        G = BiPoly.monomial(pt_field, deg, 0, 1, ("phi", "psi"))
        tree = monomialize(N, G, max_depth=max_depth, rng=rng)
        label = "(0:1:0)" if chart == Y_CHART else str(c)
        pt = InfinityPoint(chart, label, minpoly, pt_field, tree)
        out_points.append(pt)
        for node in tree.nodes():
            if node.dicritical:
                dicriticals.append((pt, node))
    return InfinityReport(f, field, m, out_points, dicriticals)


def _dense_from_pairs(pairs, field):
    if not pairs:
        return []
    top = max(i for i, _ in pairs)
    out = [field.zero()] * (top + 1)
    for i, c in pairs:
        out[i] = out[i] + c
    return out


@dataclass
class CorollaryReport:
    report: InfinityReport
    witnesses: list  # (point, node, witness, regenerated)

    def to_json(self):
        base = self.report.to_json()
        base["regenerated"] = [
            {
                "id": node.exceptional_id,
                "point": pt.label,
                "witness": witness.to_json(),
                "polynomial_in_new_generator": str(regenerated),
            }
            for pt, node, witness, regenerated in self.witnesses
        ]
        return base


def corollary_check(f, max_depth=64, rng=None):
    """Require a polynomial regeneration witness at every dicritical divisor.

    Residues of a polynomial along its divisors at infinity always admit
    one; a missing witness is a bug and raises CorollaryViolation.
    """
    report = dicriticals_at_infinity(f, max_depth=max_depth, rng=rng)
    witnesses = []
    for pt, node in report.dicriticals:
        witness = polynomial_regenerable(node.residue_map)
        if witness is None:
            raise CorollaryViolation(
                f"residue {node.residue_map} at {node.exceptional_id} over "
                f"{pt.label} admits no polynomial generator"
            )
        regenerated = apply_mobius(node.residue_map, witness)
        if regenerated.den.degree() != 0:
            raise CorollaryViolation(
                f"witness at {node.exceptional_id} failed to clear the denominator"
            )
        witnesses.append((pt, node, witness, regenerated))
    return CorollaryReport(report, witnesses)


# ---------------------------------------------------------------------------
# output formats


def tree_to_json(tree):
    def go(node):
        return {
            "id": node.exceptional_id,
            "point": node.point_label,
            "steps": ",".join(repr(s) for s in node.steps),
            "dicritical": node.dicritical,
            "residue": None
            if node.residue_map is None
            else {
                "num": str(node.residue_map.num),
                "den": str(node.residue_map.den),
            },
            "children": [go(c) for c in node.children],
        }

    return {
        "f": str(tree.f),
        "g": str(tree.g),
        "field": repr(tree.field),
        "root": go(tree.root) if tree.root else None,
    }


def tree_to_dot(tree):
    lines = ["digraph blowups {", '  node [shape=box, fontname="monospace"];']
    for node in tree.nodes():
        res = "inf" if node.residue_map is None else str(node.residue_map)
        color = ', color="red"' if node.dicritical else ""
        flag = " dicritical" if node.dicritical else ""
        lines.append(
            f'  {node.exceptional_id} [label="{node.exceptional_id} at {node.point_label}\\n'
            f'residue = {res}{flag}"{color}];'
        )
        for child in node.children:
            lines.append(f"  {node.exceptional_id} -> {child.exceptional_id};")
    lines.append("}")
    return "\n".join(lines)


def pencil_reduce(f, g):
    """Divide out the global gcd; returns (f0, g0, h)."""
    h = bipoly_gcd(f, g)
    if h.is_zero() or (len(h.terms) == 1 and max(h.terms) == (0, 0)):
        return f, g, None
    return bipoly_divexact(f, h), bipoly_divexact(g, h), h
