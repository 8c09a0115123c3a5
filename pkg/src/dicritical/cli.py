"""Command line front door: ``dicrit``.

Subcommands map one to one onto the library operations; polynomials,
fields and blow-up chains arrive as text in the grammars of the library
parsers. Exit code 0 is success, 2 an input or contract error reported as
a single machine-parsable line, 1 a broken internal invariant.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .errors import ContractError, DicritError, InternalCheckFailed
from .field import parse_field
from .newton import newton_polygon, position_test, render_ascii, render_svg
from .pencil import (
    corollary_check,
    dicriticals_at_infinity,
    monomialize,
    pencil_reduce,
    sample_points,
    sampling_oracle,
    tree_to_dot,
    tree_to_json,
)
from .poly import BiPoly, parse_bipoly
from .divisor import build_divisor, parse_steps
from .residue import (
    apply_mobius,
    check_t1,
    classify_t2,
    classify_t2_divisor,
    is_dicritical,
    polynomial_regenerable,
    residue_general,
    residue_monomial,
)
from .valuation import MonomialValuation, edge_data


def _parser():
    parser = argparse.ArgumentParser(
        prog="dicrit",
        description="Exact dicritical divisor computations for plane rational functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, g=False, monomial=False, divisor=False, m=False, sampling=False):
        p.add_argument("--field", default="Q", help="field descriptor, e.g. Q, F7, Q[t]/(t^2-2)")
        p.add_argument("--f", required=True, help="polynomial in x, y")
        if g:
            p.add_argument("--g", help="second polynomial in x, y")
        if monomial:
            p.add_argument("--alpha", type=int, help="weight of x")
            p.add_argument("--beta", type=int, help="weight of y")
            p.add_argument("--a0", type=int, help="x-exponent of the denominator")
            p.add_argument("--b0", type=int, help="y-exponent of the denominator")
        if divisor:
            p.add_argument("--divisor", default="", help="blow-up chain, e.g. O,I,F(1)")
        if m:
            p.add_argument("--m", type=int, required=True, help="power of x in the denominator")
        if sampling:
            p.add_argument("--samples", type=int, default=32, help="oracle sample count")
            p.add_argument("--seed", type=int, default=0, help="random seed")
        p.add_argument("--json", action="store_true", help="emit JSON on stdout")

    p = sub.add_parser("residue", help="residue of f/g along a divisor")
    common(p, g=True, divisor=True, monomial=True)

    p = sub.add_parser("dicritical", help="decide dicriticality of f/g along a divisor")
    common(p, g=True, divisor=True, monomial=True)

    p = sub.add_parser("classify-t2", help="edge classification of f/(x^a0 y^b0)")
    common(p, monomial=True)

    p = sub.add_parser("check-t1", help="residue and witness analysis of f/x^m")
    common(p, divisor=True, m=True)

    p = sub.add_parser("newton", help="Newton polygon of f")
    common(p, monomial=True)
    p.add_argument("--svg", help="write an SVG rendering to this path")

    p = sub.add_parser("resolve", help="resolve the base point of the pencil (f, g)")
    common(p, g=True, sampling=True)
    p.add_argument("--dot", help="write a DOT rendering to this path")

    p = sub.add_parser("infinity", help="dicritical divisors at infinity of f")
    common(p, sampling=True)
    p.add_argument("--dot", help="write DOT trees to this path")

    p = sub.add_parser("corollary", help="regeneration witnesses at infinity of f")
    common(p, sampling=True)
    return parser


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        return _dispatch(args)
    except InternalCheckFailed as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ContractError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except DicritError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def _dispatch(args):
    field = parse_field(args.field)
    f = parse_bipoly(args.f, field)
    if args.command == "residue" or args.command == "dicritical":
        return _run_residue(args, field, f)
    if args.command == "classify-t2":
        return _run_classify(args, field, f)
    if args.command == "check-t1":
        return _run_check_t1(args, field, f)
    if args.command == "newton":
        return _run_newton(args, field, f)
    if args.command == "resolve":
        return _run_resolve(args, field, f)
    if args.command == "infinity":
        return _run_infinity(args, field, f)
    if args.command == "corollary":
        return _run_corollary(args, field, f)
    raise ContractError(f"unknown command {args.command}")


def _monomial_args(args):
    given = [args.alpha, args.beta, args.a0, args.b0]
    if all(v is None for v in given):
        return None
    if any(v is None for v in given):
        raise ContractError("--alpha, --beta, --a0, --b0 must be given together")
    return MonomialValuation(args.alpha, args.beta), args.a0, args.b0


def _report(residue, verdict, b_set=None, gamma=None):
    witness = polynomial_regenerable(residue)
    return {
        "dicritical": is_dicritical(residue),
        "residue": {"num": str(residue.num), "den": str(residue.den)},
        "regenerable": witness is not None,
        "witness": witness.to_json() if witness else None,
        "verdict": verdict,
        "B_f": list(b_set) if b_set is not None else None,
        "gamma": gamma,
    }


def _emit(args, data, text_lines):
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        for line in text_lines:
            print(line)
    return 0


def _run_residue(args, field, f):
    monomial = _monomial_args(args)
    if monomial is not None:
        v, a0, b0 = monomial
        r = residue_monomial(f, a0, b0, v)
        e = edge_data(v, f)
        verdict = classify_t2(f, a0, b0, v)
        data = _report(r, verdict.kind, e.b_set, e.gamma)
    else:
        g = parse_bipoly(args.g, field) if args.g else BiPoly.constant(field.one())
        steps = parse_steps(args.divisor, field)
        d = build_divisor(field, steps)
        r = residue_general(f, g, d)
        data = _report(r, "Dicritical" if is_dicritical(r) else "NotDicritical")
    lines = [
        f"residue = {r}",
        f"dicritical = {data['dicritical']}",
        f"regenerable = {data['regenerable']}",
    ]
    return _emit(args, data, lines)


def _run_classify(args, field, f):
    monomial = _monomial_args(args)
    if monomial is None:
        raise ContractError("classify-t2 needs --alpha, --beta, --a0, --b0")
    v, a0, b0 = monomial
    verdict = classify_t2(f, a0, b0, v)
    e = edge_data(v, f)
    r = residue_monomial(f, a0, b0, v)
    data = _report(r, verdict.kind, e.b_set, e.gamma)
    if is_dicritical(r) and data["regenerable"] != verdict.regenerable:
        raise InternalCheckFailed(
            "edge classification disagrees with the pole analysis"
        )
    lines = [
        f"verdict = {verdict.kind}",
        f"B_f = {list(e.b_set)}",
        f"gamma = {e.gamma}",
        f"residue = {r}",
        f"regenerable = {verdict.regenerable}",
    ]
    return _emit(args, data, lines)


def _run_check_t1(args, field, f):
    steps = parse_steps(args.divisor, field)
    d = build_divisor(field, steps)
    report = check_t1(f, args.m, d)
    data = report.to_json()
    lines = [
        f"v(f) = {report.value_f}, v(x) = {report.value_x}, m = {report.m}",
        f"residue = {report.residue}",
        f"dicritical = {report.dicritical}",
    ]
    if report.witness is not None:
        lines.append(f"witness: {report.witness}")
        lines.append(f"regenerated = {report.regenerated}")
    return _emit(args, data, lines)


def _run_newton(args, field, f):
    pg = newton_polygon(f)
    monomial = _monomial_args(args)
    s0 = None
    v = None
    position = None
    if monomial is not None:
        v, a0, b0 = monomial
        s0 = (a0, b0)
        position = position_test(s0, edge_data(v, f)).value
    if args.svg:
        with open(args.svg, "w") as handle:
            handle.write(render_svg(f, s0=s0, valuation=v))
    data = {
        "vertices": [list(p) for p in pg.vertices],
        "edges": [
            {"start": list(e.start), "end": list(e.end), "normal": list(e.normal)}
            for e in pg.edges
        ],
        "position": position,
    }
    lines = [render_ascii(f, s0=s0, valuation=v)]
    if position:
        lines.append(f"position = {position}")
    return _emit(args, data, lines)


def _run_resolve(args, field, f):
    if not args.g:
        raise ContractError("resolve needs --g")
    g = parse_bipoly(args.g, field)
    f0, g0, shared = pencil_reduce(f, g)
    rng = random.Random(args.seed)
    tree = monomialize(f0, g0, rng=rng)
    _verify_tree(tree, args.samples)
    data = tree_to_json(tree)
    if shared is not None:
        data["removed_gcd"] = str(shared)
    if args.dot:
        with open(args.dot, "w") as handle:
            handle.write(tree_to_dot(tree))
    lines = []
    if shared is not None:
        lines.append(f"removed common factor {shared}")
    lines.extend(_tree_lines(tree))
    return _emit(args, data, lines)


def _verify_tree(tree, samples):
    """Re-check every dicritical flag with the sampling oracle."""
    if tree.root is None:
        return
    bound = max(samples, 2 + tree.f.total_degree() + tree.g.total_degree())
    for node in tree.nodes():
        lambdas = sample_points(node.state.residue_field, bound)
        if sampling_oracle(tree, node.exceptional_id, lambdas) != node.dicritical:
            raise InternalCheckFailed(
                f"sampling oracle contradicts the flag at {node.exceptional_id}"
            )


def _tree_lines(tree, node=None, indent=0):
    if tree.root is None:
        return ["no base point at the origin: nothing to resolve"]
    node = node or tree.root
    res = "inf" if node.residue_map is None else str(node.residue_map)
    flag = "  [dicritical]" if node.dicritical else ""
    lines = [
        f"{'  ' * indent}{node.exceptional_id} at {node.point_label}: "
        f"residue {res}{flag}"
    ]
    for child in node.children:
        lines.extend(_tree_lines(tree, child, indent + 1))
    return lines


def _run_infinity(args, field, f):
    rng = random.Random(args.seed)
    report = dicriticals_at_infinity(f, rng=rng)
    for pt in report.points:
        _verify_tree(pt.tree, args.samples)
    data = report.to_json()
    if args.dot:
        with open(args.dot, "w") as handle:
            handle.write("\n".join(tree_to_dot(pt.tree) for pt in report.points))
    lines = [f"degree {report.degree}, {len(report.points)} point(s) at infinity"]
    for pt in report.points:
        lines.append(f"point {pt.label} in chart {pt.chart} over {pt.field}:")
        lines.extend("  " + line for line in _tree_lines(pt.tree))
    lines.append(f"dicritical divisors: {len(report.dicriticals)}")
    return _emit(args, data, lines)


def _run_corollary(args, field, f):
    rng = random.Random(args.seed)
    report = corollary_check(f, rng=rng)
    data = report.to_json()
    lines = [f"{len(report.witnesses)} dicritical divisor(s), all regenerable"]
    for pt, node, witness, regenerated in report.witnesses:
        lines.append(
            f"{node.exceptional_id} over {pt.label}: residue {node.residue_map}, "
            f"regenerated {regenerated}"
        )
    return _emit(args, data, lines)


if __name__ == "__main__":
    sys.exit(main())
