"""Command line behaviour: golden outputs, schemas, exit codes."""

import json
import pathlib
import random

import jsonschema
import pytest

from dicritical.cli import main
from dicritical.field import QQ, PrimeField, ExtensionField, UniPoly
from dicritical.poly import BiPoly, parse_bipoly
from dicritical.schemas import INFINITY_SCHEMA, REPORT_SCHEMA, TREE_SCHEMA

GOLDEN = pathlib.Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_t2_golden(capsys):
    code, out, _ = run(
        capsys,
        "classify-t2",
        "--field", "Q",
        "--f", "x^2+x*y+y^2",
        "--alpha", "1", "--beta", "1", "--a0", "1", "--b0", "1",
        "--json",
    )
    assert code == 0
    got = json.loads(out)
    expected = json.loads((GOLDEN / "classify_t2.json").read_text())
    assert got == expected
    jsonschema.validate(got, REPORT_SCHEMA)
    assert got["regenerable"] is False
    assert got["B_f"] == [0, 1, 2]
    assert got["residue"] == {"num": "t^2 + t + 1", "den": "t"}


def test_infinity_golden(capsys):
    code, out, _ = run(capsys, "infinity", "--field", "Q", "--f", "x", "--json")
    assert code == 0
    got = json.loads(out)
    expected = json.loads((GOLDEN / "infinity_x.json").read_text())
    assert got == expected
    jsonschema.validate(got, INFINITY_SCHEMA)
    assert len(got["dicritical_divisors"]) == 1
    entry = got["dicritical_divisors"][0]
    assert entry["residue"] == {"num": "t", "den": "1"}
    assert entry["witness"] is not None


def test_newton_svg_golden(capsys, tmp_path):
    target = tmp_path / "out.svg"
    code, _, _ = run(
        capsys, "newton", "--field", "Q", "--f", "y^2-x^3", "--svg", str(target)
    )
    assert code == 0
    assert target.read_text() == (GOLDEN / "newton_cusp.svg").read_text()
    svg = target.read_text()
    assert "(3,0)" in svg and "(0,2)" in svg


def test_residue_command(capsys):
    code, out, _ = run(
        capsys, "residue", "--field", "Q", "--f", "y", "--g", "x", "--json"
    )
    assert code == 0
    got = json.loads(out)
    jsonschema.validate(got, REPORT_SCHEMA)
    assert got["residue"]["num"] == "t" and got["dicritical"]


def test_residue_with_divisor(capsys):
    code, out, _ = run(
        capsys,
        "residue",
        "--field", "Q",
        "--f", "y^2-x^3",
        "--g", "y^2",
        "--divisor", "O,I",
        "--json",
    )
    assert code == 0
    got = json.loads(out)
    jsonschema.validate(got, REPORT_SCHEMA)
    assert got["dicritical"]


def test_check_t1_command(capsys):
    code, out, _ = run(
        capsys,
        "check-t1",
        "--field", "Q",
        "--f", "x^2+x*y+y^2",
        "--m", "2",
        "--json",
    )
    assert code == 0
    got = json.loads(out)
    assert got["dicritical"] and got["regenerable"]
    assert got["residue"] == {"num": "t^2 + t + 1", "den": "1"}


def test_resolve_command(capsys, tmp_path):
    dot = tmp_path / "tree.dot"
    code, out, _ = run(
        capsys,
        "resolve",
        "--field", "Q",
        "--f", "y^2-x^3",
        "--g", "x^3",
        "--dot", str(dot),
        "--json",
    )
    assert code == 0
    got = json.loads(out)
    jsonschema.validate(got, TREE_SCHEMA)
    assert dot.read_text().startswith("digraph")


def test_corollary_command(capsys):
    code, out, _ = run(capsys, "corollary", "--field", "F5", "--f", "x^2+y^2", "--json")
    assert code == 0
    got = json.loads(out)
    assert got["regenerated"]


def test_resolve_reduces_shared_factor(capsys):
    # the pencil (x, x) reduces to (1, 1): empty tree, no base points
    code, out, _ = run(capsys, "resolve", "--field", "Q", "--f", "x", "--g", "x")
    assert code == 0
    assert "removed common factor x" in out
    assert "nothing to resolve" in out


def test_exit_code_on_contract_error(capsys):
    code, _, err = run(
        capsys,
        "classify-t2",
        "--field", "Q",
        "--f", "y",
        "--alpha", "1", "--beta", "1", "--a0", "2", "--b0", "0",
    )
    assert code == 2
    assert err.startswith("error: ValueMismatch:")

    code, _, err = run(capsys, "residue", "--field", "Q", "--f", "x(", "--g", "x")
    assert code == 2
    assert err.startswith("error: ParseError:")


def test_text_output_human_readable(capsys):
    code, out, _ = run(capsys, "newton", "--field", "Q", "--f", "x^2+x*y+y^2")
    assert code == 0
    assert "legend" in out

    code, out, _ = run(capsys, "resolve", "--field", "Q", "--f", "y", "--g", "x")
    assert code == 0
    assert "E1" in out and "dicritical" in out


def test_parse_print_round_trip_cli_grammar():
    rng = random.Random(313)
    t = UniPoly.gen(QQ, "t")
    K = ExtensionField(QQ, t * t - 2, "t")
    fields = [QQ, PrimeField(5), K]
    for _ in range(500):
        field = fields[rng.randrange(3)]
        terms = {}
        for _ in range(rng.randint(1, 6)):
            key = (rng.randint(0, 5), rng.randint(0, 5))
            if field is K:
                c = K.embed(QQ.coerce(rng.randint(-6, 6))) + K.generator() * K.from_int(
                    rng.randint(-6, 6)
                )
            elif field is QQ:
                from fractions import Fraction

                c = QQ.coerce(Fraction(rng.randint(-9, 9), rng.randint(1, 6)))
            else:
                c = field.from_int(rng.randrange(5))
            terms[key] = c
        f = BiPoly(field, terms)
        assert parse_bipoly(str(f), field) == f
