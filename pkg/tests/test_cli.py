import io
import json

import pytest

from uawork import builtin, serialize_algebra
from uawork.cli import EXIT_FAILS, EXIT_INPUT, EXIT_OK, EXIT_UNDECIDED, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_parse_prints_the_algebra_back():
    code, out, _ = call("parse", "paper-z6.alg")
    assert code == EXIT_OK
    assert out == serialize_algebra(builtin("paper-z6"))
    code, out, _ = call("parse", "paper-b", "--format", "json")
    assert code == EXIT_OK
    document = json.loads(out)
    assert document["name"] == "paper-b"
    assert document["operations"][1] == {"symbol": "s", "arity": 1, "table": [0, 0]}


def test_congruences_and_subuniverses():
    assert call("con", "paper-z6.alg") == (EXIT_OK, "0|1|2|3|4|5\n0 3|1 4|2 5\n0 1 2 3 4 5\n", "")
    assert call("sub", "paper-z6.alg") == (EXIT_OK, "{0,3}\n{0,1,2,3,4,5}\n", "")
    code, out, _ = call("con", "klein4", "--format", "json")
    assert code == EXIT_OK
    assert len(json.loads(out)["congruences"]) == 5


def test_output_is_deterministic():
    for argv in (("con", "sym3"), ("sub", "dihedral-4"), ("commutator", "paper-z6.alg"),
                 ("retract", "cyclic-4", "--subalgebra", "2", "--format", "json")):
        assert call(*argv) == call(*argv)


def test_term_condition_commutator():
    code, out, _ = call("commutator", "paper-z6.alg", "--kind", "tc")
    assert code == EXIT_OK
    assert out == "value: 0 3|1 4|2 5\ndecided: exact\n"
    code, out, _ = call("commutator", "paper-z6.alg", "--kind", "tc", "--theta", "1", "--theta", "0-3")
    assert code == EXIT_OK
    assert out == "value: 0|1|2|3|4|5\ndecided: exact\n"
    code, _, err = call("commutator", "paper-z6.alg", "--kind", "tc", "--arity", "3")
    assert code == EXIT_INPUT
    assert err.startswith("error: ")
    code, out, _ = call("commutator", "paper-z6.alg", "--kind", "tc", "--budget", "1")
    assert code == EXIT_UNDECIDED
    assert out == "value: unknown\ndecided: unknown-budget\n"
    code, out, _ = call("commutator", "paper-z6.alg", "--kind", "tc", "--budget", "1", "--format", "json")
    assert code == EXIT_UNDECIDED
    assert json.loads(out) == {"value": None, "decided": "unknown-budget"}


def test_two_term_commutator():
    code, out, _ = call("commutator", "paper-z6.alg")
    assert code == EXIT_OK
    assert out.startswith("value: 0 3|1 4|2 5\ndecided: exact\n")
    code, out, _ = call("commutator", "paper-z6.alg", "--theta", "1", "--theta", "0-3", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["value"] == "0|1|2|3|4|5"
    code, out, _ = call("commutator", "paper-z6.alg", "--budget", "1")
    assert code == EXIT_UNDECIDED
    assert "decided: unknown-budget\n" in out


def test_supernilpotence_exit_codes():
    code, out, _ = call("supernil", "klein4")
    assert code == EXIT_OK
    assert out.startswith("supernilpotent: yes\n")
    code, out, _ = call("supernil", "sym3")
    assert code == EXIT_FAILS
    assert out.startswith("supernilpotent: no\n")
    assert "witness: s=(" in out
    code, out, _ = call("supernil", "paper-z6.alg", "--cls", "2")
    assert code == EXIT_FAILS
    assert "witness: s=(" in out
    code, out, _ = call("supernil", "paper-z6.alg", "--cls", "2", "--budget", "50")
    assert code == EXIT_UNDECIDED
    assert out.startswith("supernilpotent: unknown\n")


def test_retract_certificates():
    code, out, _ = call("retract", "cyclic-4", "--subalgebra", "2")
    assert code == EXIT_OK
    assert out.startswith("verdict: VALID\n")
    assert "subalgebra: {0,2}\n" in out
    code, out, _ = call("retract", "cyclic-4", "--subalgebra", "2", "--cls", "1", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["verdict"] == "VALID"
    code, out, _ = call("retract", "sym3", "--subalgebra", "0,1,2,3,4,5", "--cls", "1")
    assert code == EXIT_FAILS
    assert out.startswith("verdict: INVALID\n")
    code, out, _ = call("retract", "cyclic-4", "--subalgebra", "2", "--cls", "1", "--budget", "1")
    assert code == EXIT_UNDECIDED
    assert out.startswith("verdict: UNDECIDED\n")


def test_retract_precondition_is_an_input_error():
    code, out, err = call("retract", "paper-z6.alg", "--subalgebra", "0,3", "--theta", "0-3", "--cls", "1")
    assert code == EXIT_INPUT
    assert out == ""
    assert err.startswith("error: saturation")


def test_retract_theta_needs_a_class():
    code, out, err = call("retract", "paper-z6.alg", "--subalgebra", "0", "--theta", "0-3")
    assert code == EXIT_INPUT
    assert out == ""
    assert "--theta needs --cls" in err


def test_input_errors(tmp_path):
    bad = tmp_path / "bad.alg"
    bad.write_text("algebra X\nsize 2\nop f 1\n0 2\n")
    code, _, err = call("con", str(bad))
    assert code == EXIT_INPUT
    assert "line 4" in err
    assert call("con", "no-such-algebra")[0] == EXIT_INPUT
    assert call("commutator", "paper-z6.alg", "--theta", "a-b")[0] == EXIT_INPUT
    assert call("retract", "cyclic-4", "--subalgebra", "9")[0] == EXIT_INPUT
    assert call("con", "paper-z6.alg", "--config", str(tmp_path / "missing.yaml"))[0] == EXIT_INPUT
    assert call("supernil", "paper-z6.alg", "--cls", "2", "--budget", "0")[0] == EXIT_INPUT
    assert call("supernil", "paper-z6.alg", "--max-ops", "-5")[0] == EXIT_INPUT


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["con"], ["retract", "cyclic-4"], ["con", "sym3", "--format",
                                                                                          "xml"]])
def test_usage_errors(argv):
    code, out, err = call(*argv)
    assert code == EXIT_INPUT
    assert out == ""
    assert "error:" in err


def test_config_file_is_applied(tmp_path):
    path = tmp_path / "small.yaml"
    path.write_text("congruence_lattice:\n  max_size: 4\n")
    code, _, err = call("con", "paper-z6.alg", "--config", str(path))
    assert code == EXIT_INPUT
    assert "congruence_lattice" in err
    assert call("con", "klein4", "--config", str(path))[0] == EXIT_OK


def test_verbose_logs_go_to_err():
    code, _, err = call("sub", "cyclic-4", "--verbose")
    assert code == EXIT_OK
    assert "DEBUG" in err or "INFO" in err


def test_verify_paper_example():
    code, out, _ = call("verify-paper-example")
    assert code == EXIT_OK
    assert out.endswith("overall: PASS\n")
    assert "(d) PASS supernilpotence-witness: s=(" in out
