import json

import pytest

from shapiro_ct.arith import LaurentPoly
from shapiro_ct.cli import (
    emit_montgomery_report,
    factored,
    genfun_from_json,
    genfun_to_json,
    run_command,
)
from shapiro_ct.config import format_config, load_config, parse_config, preset
from shapiro_ct.errors import ConfigError
from shapiro_ct.recurrence import Recurrence
from shapiro_ct.scheme import moment_genfun

R3_CONFIG = """\
# radix three
r = 3

[c1]
0 = 1
[c2]
1 = 1
-1 = 1
"""


# -- configuration ------------------------------------------------------------------

def test_classic_preset():
    rec = preset("classic")
    assert rec == Recurrence(2, LaurentPoly.constant(1), LaurentPoly.monomial(1))
    assert rec.is_classic


def test_radix_three_document_accepted():
    rec = parse_config(R3_CONFIG)
    assert rec.r == 3
    assert rec.c2 == LaurentPoly({1: 1, -1: 1})
    assert not rec.c3 and not rec.c4
    assert parse_config(format_config(rec)) == rec


def test_degree_bound_violation_names_the_culprit():
    with pytest.raises(ConfigError, match=r"c1, exponent 2"):
        parse_config("r = 2\n[c1]\n2 = 1\n")


@pytest.mark.parametrize("text, pattern", [
    ("r = 2\n[c1]\nthis is not a pair\n", "line 3"),
    ("[c1]\n0 = 1\n", "missing radix"),
    ("r = two\n", "decimal integer"),
    ("r = 2\n[c9]\n0 = 1\n", "unknown section"),
    ("r = 2\nq = 1\n", "unknown top-level"),
    ("r = 1\n", ">= 2"),
])
def test_config_errors(text, pattern):
    with pytest.raises(ConfigError, match=pattern):
        parse_config(text)


def test_unknown_preset():
    with pytest.raises(ConfigError):
        load_config("no-such-preset-or-file")


# -- serialization ------------------------------------------------------------------

def test_json_round_trip():
    rf = moment_genfun(4, 4)
    doc = json.loads(json.dumps(genfun_to_json(rf, 33, (0, 4, 4, 0, 0))))
    assert all(isinstance(c, str) for c in doc["num"] + doc["den"])
    assert genfun_from_json(doc) == rf
    assert genfun_to_json(genfun_from_json(doc), 33, (0, 4, 4, 0, 0)) == doc


def test_factored_display():
    assert factored(moment_genfun(2, 2)) == "(1 + 4*t)/((1 + 2*t)*(1 - 4*t))"
    assert factored(moment_genfun(1, 1)) == "(1)/(1 - 2*t)"


# -- commands -----------------------------------------------------------------------

def test_genfun_command(capsys):
    assert run_command(["genfun", "--n", "2"]) == 0
    out = capsys.readouterr().out
    assert "num = [1, 4]" in out and "den = [1, -2, -8]" in out
    assert "(1 + 2*t)*(1 - 4*t)" in out


def test_genfun_json(capsys):
    assert run_command(["genfun", "--n", "3", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["num"] == ["1", "16"] and doc["den"] == ["1", "-4", "-32"]
    assert doc["seed"] == [0, 3, 3, 0, 0]


def test_capacity_failure(capsys):
    assert run_command(["genfun", "--n", "6", "--cap", "1"]) == 2
    assert "FAIL" in capsys.readouterr().out


def test_usage_errors(capsys):
    assert run_command(["genfun", "--bogus"]) == 64
    assert run_command(["nonsense"]) == 64
    assert run_command([]) == 64
    assert run_command(["moments", "--k", "3"]) == 64
    assert run_command(["moments", "--k", "3", "--alpha", "1,2"]) == 64
    assert run_command(["general", "--preset", "classic", "saffari", "--n", "2"]) == 64


def test_moments_with_brute(capsys):
    assert run_command(["moments", "--n", "2", "--k", "6", "--brute", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["values"][:5] == ["1", "6", "20", "88", "336"]
    assert doc["agree"] is True


def test_moments_alpha(capsys):
    assert run_command(["moments", "--alpha", "1,1,0,0,1", "--k", "4", "--brute"]) == 0
    assert "agree" in capsys.readouterr().out


def test_checks(capsys):
    assert run_command(["checkev", "--max", "50"]) == 0
    assert capsys.readouterr().out.strip() == "all true"
    assert run_command(["checkcp", "--max", "12"]) == 0
    assert capsys.readouterr().out.strip() == "all true"
    assert run_command(["identity", "--kmax", "8"]) == 0


def test_constant_and_census_commands(capsys):
    assert run_command(["saffari", "--n", "3"]) == 0
    assert "match" in capsys.readouterr().out
    assert run_command(["prop3", "--n", "2", "--m", "1", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["constant"] == "2/3"
    assert run_command(["pretenders", "--n", "4", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["count"] == doc["expected_count"] == 3


def test_montgomery_reports():
    two = emit_montgomery_report(2, 60)
    assert two.count("## (m, n)") == 1 and "(1, 2)" in two
    three = emit_montgomery_report(3, 60)
    assert three.count("## (m, n)") == 3
    assert "Summary: 3 of 3 pairs pass." in three
    assert "HEURISTIC" in three


def test_montgomery_low_confidence(capsys):
    code = run_command(["montgomery", "--max", "2", "--kmax", "10"])
    out = capsys.readouterr().out
    assert "LOW-CONFIDENCE" in out
    assert code in (0, 1)


def test_montgomery_is_deterministic(capsys):
    run_command(["montgomery", "--max", "3", "--json"])
    a = capsys.readouterr().out
    run_command(["montgomery", "--max", "3", "--json", "--parallel"])
    b = capsys.readouterr().out
    assert a == b


def test_general_with_config_file(tmp_path, capsys):
    path = tmp_path / "r3.ini"
    path.write_text(R3_CONFIG)
    assert run_command(["general", "--config", str(path), "moments", "--n", "1", "--k", "5", "--brute"]) == 0
    assert "agree" in capsys.readouterr().out
    assert run_command(["general", "--config", str(path), "genfun", "--n", "1"]) == 0


def test_general_config_error(tmp_path, capsys):
    path = tmp_path / "bad.ini"
    path.write_text("r = 2\n[c1]\n2 = 1\n")
    assert run_command(["general", "--config", str(path), "genfun", "--n", "1"]) == 64
    assert "c1, exponent 2" in capsys.readouterr().err


def test_general_classic_preset_matches_default(capsys):
    assert run_command(["general", "--preset", "classic", "genfun", "--n", "2", "--json"]) == 0
    a = capsys.readouterr().out
    assert run_command(["genfun", "--n", "2", "--json"]) == 0
    assert a == capsys.readouterr().out
