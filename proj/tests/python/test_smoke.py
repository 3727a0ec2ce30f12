import json
import os
import subprocess
import sys

import pytest

module_dir = os.environ.get("PDWA_MODULE_DIR")
if module_dir:
    sys.path.insert(0, module_dir)

try:
    import _pdwa as pdwa
except ImportError:  # installed package layout
    import pdwa


def test_decide():
    assert pdwa.decide("E x. 2*x = 6") is True
    assert pdwa.decide("E x. 2*x = 3") is False
    assert pdwa.decide("A x. 2 divides x | 2 divides x + 1") is True


def test_decide_rejects_open_formulas():
    with pytest.raises(ValueError):
        pdwa.decide("x > 0")


def test_parse_error_is_a_value_error():
    with pytest.raises(ValueError):
        pdwa.decide("x +")


def test_qe():
    assert pdwa.qe("E x. 2*x = y") == "2 divides y"
    assert pdwa.qe("x > 0") == "x > 0"


def test_solve():
    model = pdwa.solve("x - y > 32")
    assert model is not None
    assert model["x"] - model["y"] >= 33

    assert pdwa.solve("x < 0 & x > 0") is None
    assert pdwa.solve("x = -3") == {"x": -3}


def test_solve_handles_big_integers():
    n = 12345678901234567890
    model = pdwa.solve("x = %d" % n)
    assert model == {"x": n}


def test_compile():
    a = pdwa.compile("x - y > 32")
    assert a.states == 13
    assert a.arity == 2
    assert a.base == 2
    assert a.accepts([33, 0])
    assert not a.accepts([0, 33])
    assert a.to_dot().startswith("digraph dwa {")

    j = json.loads(a.to_json())
    assert j["states"] == 13
    b = pdwa.automaton_from_json(a.to_json())
    assert b.states == 13
    assert b.accepts([33, 0])


def test_compile_backends_agree():
    a = pdwa.compile("E x. 2*x = y")
    b = pdwa.compile("E x. 2*x = y", backend="qe")
    assert a.states == b.states == 3
    for y in range(-8, 9):
        assert a.accepts([y]) == b.accepts([y]) == (y % 2 == 0)


def test_mult_table():
    m = pdwa.mult_table(3)
    assert m.states == 37
    assert m.accepts([5, 7, 35])
    assert not m.accepts([5, 7, 34])


def test_crosscheck():
    r = pdwa.crosscheck("E x. 2*x = y")
    assert r["pass"] is True
    assert r["languages_equal"] is True
    assert r["sample_mismatches"] == 0


def test_cli_roundtrip():
    cli = os.environ.get("PDWA_CLI")
    if not cli:
        pytest.skip("PDWA_CLI not set")
    run = subprocess.run([cli, "decide", "E x. 2*x = 6"], capture_output=True, text=True)
    assert run.returncode == 0
    assert run.stdout == "TRUE\n"
