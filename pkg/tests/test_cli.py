from __future__ import annotations

import pytest

from orbiconf import library
from orbiconf.cli import main
from orbiconf.orbi import orbi_isomorphic
from orbiconf.textio import parse_configuration, parse_key_value_block, parse_orbiconfiguration


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_prime_fano(capsys):
    code, out, _ = run(capsys, "prime", "--method", "both", "fano.cfg")
    assert code == 0
    assert "status=prime reason=order_fast_path" in out


def test_prime_machine_output(capsys):
    code, out, _ = run(capsys, "--machine", "prime", "mod14.cfg")
    kv = parse_key_value_block(out)
    assert code == 0
    assert kv["status"] == "not_prime"
    assert kv["regular.degree"] == kv["general.degree"] == "2"


def test_machine_flag_after_command(capsys):
    _, before, _ = run(capsys, "--machine", "aut", "mod14.cfg")
    _, after, _ = run(capsys, "aut", "mod14.cfg", "--machine")
    assert before == after
    assert parse_key_value_block(before)["order"] == "14"


def test_prime_witness_files(capsys, tmp_path):
    stem = tmp_path / "w"
    code, _, _ = run(capsys, "prime", "mod14.cfg", "--method", "regular", "--witness", str(stem))
    assert code == 0
    base = parse_configuration((tmp_path / "w.cfg").read_text()).configuration()
    assert tuple(base.params) == (7, 7, 3, 3)


def test_budget_exhaustion_exit_code(capsys):
    code, out, _ = run(capsys, "--budget", "5", "prime", "mod14.cfg", "--method", "general")
    assert code == 2
    assert "inconclusive" in out


def test_cover_verify(capsys):
    code, out, _ = run(capsys, "--machine", "cover", "verify", "mod14.cfg", "fano.cfg",
                       "mod14_fano.map")
    kv = parse_key_value_block(out)
    assert code == 0 and kv["degree"] == "2"


def test_cover_search(capsys):
    code, out, _ = run(capsys, "--machine", "cover", "search", "hexagon.cfg", "triangle.cfg",
                       "--limit", "1")
    assert code == 0
    assert parse_key_value_block(out)["found"] == "1"


def test_quotient_square_half_turn(capsys):
    code, out, _ = run(capsys, "quotient", "square.cfg", "rot180.grp")
    assert code == 0
    parsed = parse_orbiconfiguration(out)
    assert orbi_isomorphic(parsed.structure, library.bigon()) is not None


def test_quotient_to_file(capsys, tmp_path):
    dest = tmp_path / "loop.orbi"
    code, _, _ = run(capsys, "quotient", "triangle.cfg", "c3.grp", "-o", str(dest))
    assert code == 0
    assert parse_orbiconfiguration(dest.read_text()).structure == library.loop()


def test_params_orbiconfiguration(capsys):
    code, out, _ = run(capsys, "--machine", "params", "half_triangle.orbi")
    kv = parse_key_value_block(out)
    assert code == 0
    assert (kv["n"], kv["m"]) == ("3/2", "3/2")


def test_lift_all(capsys):
    code, out, _ = run(capsys, "--machine", "lift", "mod14.cfg", "fano.cfg", "mod14_fano.map",
                       "--all")
    kv = parse_key_value_block(out)
    assert code == 0
    assert (kv["lifting"], kv["base_aut_order"]) == ("7", "168")


def test_lift_reflection(capsys):
    code, out, _ = run(capsys, "--machine", "lift", "mod14.cfg", "fano.cfg", "mod14_fano.map",
                       "--perm", "(1 4)(3 5)")
    assert code == 0
    assert parse_key_value_block(out)["lifts"] == "0"


def test_common_cover(capsys):
    code, out, _ = run(capsys, "--machine", "common-cover", "square.cfg", "hexagon.cfg")
    kv = parse_key_value_block(out)
    assert code == 0 and kv["status"] == "found" and kv["cover"] == "(12_2, 12_2)"


def test_goodbad(capsys):
    code, out, _ = run(capsys, "--machine", "goodbad", "half_triangle.orbi")
    assert code == 0
    assert parse_key_value_block(out)["status"] == "good"


def test_generate_and_validate(capsys, tmp_path):
    dest = tmp_path / "m7.cfg"
    code, _, _ = run(capsys, "generate", "mod", "--modulus", "7", "--base", "1", "2", "4",
                     "-o", str(dest))
    assert code == 0
    code, out, _ = run(capsys, "validate", str(dest))
    assert code == 0 and "valid configuration" in out


def test_invalid_configuration_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("configuration bad\npoints 4\nline 1 2\nline 3 4\n")
    code, out, _ = run(capsys, "validate", str(bad))
    assert code == 1 and "NO" in out


def test_missing_file(capsys):
    code, _, err = run(capsys, "aut", "no_such_file.cfg")
    assert code == 1 and "no such file" in err


def test_parse_error_prints_grammar(capsys, tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("configuration bad\npoints 3\nline 1 2\nline 2 1\n")
    code, _, err = run(capsys, "aut", str(bad))
    assert code == 1
    assert "lines 3 and 4" in err and "file formats:" in err


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1
    assert "file formats:" in capsys.readouterr().err


def test_levi_dot(capsys):
    code, out, _ = run(capsys, "levi", "fano.cfg")
    assert code == 0 and out.startswith("graph fano")


def test_deterministic_output(capsys):
    first = run(capsys, "--machine", "subgroups", "hexagon.cfg")
    second = run(capsys, "--machine", "subgroups", "hexagon.cfg")
    assert first == second


def test_conjecture_scan(capsys):
    code, out, _ = run(capsys, "--machine", "conjecture-scan")
    kv = parse_key_value_block(out)
    assert code == 0 and kv["counterexample"] == "false"
