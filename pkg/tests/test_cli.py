import io
import json
import subprocess
import sys

import pytest

from conftest import INSTANCES
from quatnss import NCPoly, ParseError, QPoly, parse
from quatnss.cli import run
from quatnss.grammar import format_value, parse_point
from quatnss.instances import InstanceError, canonical, expressions_of, instance_files, load_instance
from quatnss.mring import MatPoly


def cli(*argv):
    buf = io.StringIO()
    code = run(list(argv), buf)
    return code, buf.getvalue()


def test_ring_tag_selects_interpretation():
    assert parse("x1*i - i*x1", "Hc").is_zero()
    f = parse("x1*i - i*x1", "H")
    assert isinstance(f, NCPoly) and not f.is_zero()
    m = parse("[x, y; 0, 1]")
    assert isinstance(m, MatPoly) and m.shape == (2, 2)


def test_auto_ring():
    assert isinstance(parse("x^2 + 2i"), QPoly)
    assert parse("(3/2)*i*x1^2*x2", "Hc").degree() == 3


def test_parse_error_positions():
    with pytest.raises(ParseError) as e:
        parse("x +\n  * y")
    assert (e.value.line, e.value.column) == (2, 3)
    assert e.value.expected
    with pytest.raises(ParseError):
        parse("x1 + y1_2")
    with pytest.raises(ParseError):
        parse("x*i", "Q")


def test_commutative_mode_needs_star_between_variables():
    with pytest.raises(ParseError):
        parse("x y", "Q")


def test_quaternion_literal():
    assert format_value(parse_point("3/2 + 2i - j + 0k")[0]) == "3/2 + 2*i - j"


def corpus():
    for path in instance_files(INSTANCES):
        data = json.loads(path.read_text())
        for text, ring in expressions_of(data):
            yield path.stem, text, ring, data["nvars"]


@pytest.mark.parametrize("name,text,ring,nvars", list(corpus()))
def test_round_trip_on_corpus(name, text, ring, nvars):
    value = parse(text, ring, nvars)
    printed = format_value(value)
    again = parse(printed, ring, getattr(value, "nvars", None))
    assert again == value
    assert format_value(again) == printed


def test_round_trip_of_generated_values():
    import random
    import gen
    rng = random.Random(1)
    for _ in range(50):
        f = gen.ncpoly(rng, 2, 3)
        assert parse(format_value(f), "H", 2) == f
        q = gen.qpoly(rng, 3, 2)
        assert parse(format_value(q), "Hc", 3) == q


def test_cli_examples():
    code, out = cli("member", "(x, y)", "(x^2, x*y)", "(x*y, y^2)")
    assert code == 1 and "not a member" in out
    code, out = cli("check-instance", str(INSTANCES / "a_square.json"))
    assert code == 0
    code, out = cli("eval", "x1*i", "--ring", "H", "--at", "j")
    assert code == 0 and out.strip().splitlines()[-1].endswith("-k")


def test_cli_input_errors(capsys):
    assert cli("eval", "x +", "--at", "0")[0] == 2
    assert cli("check-instance", "/nonexistent.json")[0] == 2
    assert "error:" in capsys.readouterr().err


def test_cli_json_format():
    code, out = cli("member", "(x)", "(x^2)", "--format", "json")
    assert code == 1 and json.loads(out)["member"] is False


def test_check_all_is_byte_stable():
    first = cli("check-instance", "--all", str(INSTANCES))
    second = cli("check-instance", "--all", str(INSTANCES))
    parallel = cli("check-instance", "--all", str(INSTANCES), "--jobs", "2")
    assert first == second == parallel
    assert first[0] == 0


def test_instance_loader_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"name": "bad", "theorem": "A", "ring": "Q", "nvars": 1, "rank": 2,
                               "generators": ["x^2"], "query": "x"}))
    with pytest.raises(InstanceError):
        load_instance(bad)
    bad.write_text("{")
    with pytest.raises(InstanceError):
        load_instance(bad)


def test_canonical_is_idempotent():
    c = canonical("x^2 + 2*x*y - y*x", "Q")
    assert canonical(c, "Q") == c


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "quatnss.cli", "conj", "[x, i; 0, 1]"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip().endswith("[x1, 0; -i, 1]")


@pytest.mark.parametrize("argv,code,last", [
    (["eval", "x^2", "--at", "3"], 0, "value: 9"),
    (["eval", "--at", "1", "--", "-3x + 2i"], 0, "value: -3 + 2*i"),
    (["eval", "(x, y*i)", "--at", "(1, 2)"], 0, "value: (1, 2*i)"),
    (["eval", "[x, 0; 0, x]", "--at", "0", "--vector", "(1, 1)"], 0, "value: (0, 0)"),
    (["groebner", "x^2", "x*y"], 0, "  (x1*x2)"),
    (["cmodule", "--at", "(0,0)", "--vector", "(1,0)"], 0, "  (0, 1)"),
    (["kmodule", "(x,0)", "--at", "1"], 0, "  (0, x1 - 1)"),
    (["phi", "x1*i"], 0, "phi: i*y1_1 - y1_2 - k*y1_3 + j*y1_4"),
    (["conj", "x+i"], 0, "conjugate: x1 - i"),
    (["closure", "x^2 + y^2"], 0, "  step 1: admit (x1), (x2) [uses 0]"),
    (["verify-cert", str(INSTANCES / "d_non_semiprime.json")], 0, "accepted: accepted"),
])
def test_subcommands(argv, code, last):
    got, out = cli(*argv)
    assert got == code
    assert out.rstrip("\n").splitlines()[-1] == last


def test_commuting_eval_needs_rational_point(capsys):
    assert cli("eval", "x*i", "--at", "j")[0] == 2
    assert "rational point" in capsys.readouterr().err
