import json

import pytest

from dihedral_parity.cli import main


def put(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


@pytest.fixture
def curves_11a1(tmp_path):
    return put(tmp_path, "curves.txt",
               "# the conductor-11 curve\n0 -1 1 -10 -20\n")


# --- reduce ----------------------------------------------------------------

def test_reduce_single_prime(curves_11a1, capsys):
    assert main(["reduce", curves_11a1, "--ell", "11"]) == 0
    out = capsys.readouterr().out
    assert "I5" in out and "multiplicative split" in out


def test_reduce_all_bad_primes(tmp_path, capsys):
    curves = put(tmp_path, "c.txt", "1 0 1 4 -6\n")  # bad at 2 and 7
    assert main(["reduce", curves]) == 0
    out = capsys.readouterr().out
    assert "ell=2" in out and "ell=7" in out


def test_reduce_json_is_byte_deterministic(curves_11a1, tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert main(["reduce", curves_11a1, "--json", str(a)]) == 0
    assert main(["reduce", curves_11a1, "--json", str(b)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()
    report = json.loads(a.read_text())
    assert report[0]["kodaira"] == "I5" and report[0]["tamagawa"] == 5


def test_reduce_parse_errors(tmp_path, capsys):
    for body in ("1 2 3 4\n", "1 2 3 4 x\n", "0 0 0 0 0\n", ""):
        path = put(tmp_path, "bad.txt", body)
        assert main(["reduce", path]) == 2
        assert "error:" in capsys.readouterr().err
    assert main(["reduce", str(tmp_path / "missing.txt")]) == 2


# --- chars -----------------------------------------------------------------

def test_chars_table(capsys):
    assert main(["chars", "--p", "5"]) == 0
    out = capsys.readouterr().out
    assert "D_10" in out and "I(chi_2)" in out and "eta" in out


def test_chars_reduction_identity(capsys):
    assert main(["chars", "--p", "5", "--n", "2", "--verify-reduction"]) == 0
    assert "PASS" in capsys.readouterr().out
    assert main(["chars", "--p", "5", "--verify-reduction"]) == 2


def test_chars_bad_group(capsys):
    assert main(["chars", "--p", "4"]) == 2
    assert "error:" in capsys.readouterr().err


# --- regulator -------------------------------------------------------------

def test_regulator_output(tmp_path, capsys):
    out_json = tmp_path / "reg.json"
    assert main(["regulator", "--p", "5", "--json", str(out_json)]) == 0
    out = capsys.readouterr().out
    assert "C_Theta(1) = 1/5" in out
    assert out.count("T_Theta member: True") == 4
    payload = json.loads(out_json.read_text())
    assert payload["reps"]["eta"]["square_class"] == 5
    assert payload["reps"]["rho2"]["ord_p_parity"] == 1


# --- verify-local ----------------------------------------------------------

def test_verify_local_sweep(capsys):
    assert main(["verify-local", "--p", "5", "--sweep"]) == 0
    assert "0 disagree" in capsys.readouterr().out


def test_verify_local_table(capsys):
    assert main(["verify-local", "--p", "7", "--emit-table"]) == 0
    assert "tables match: PASS" in capsys.readouterr().out


def test_verify_local_needs_a_job(capsys):
    assert main(["verify-local", "--p", "5"]) == 2
    assert "nothing to do" in capsys.readouterr().err


# --- verify-global ---------------------------------------------------------

def test_verify_global_pass(tmp_path, capsys):
    curves = put(tmp_path, "c.txt", "0 -1 1 -10 -20\n0 0 1 -1 0\n")
    comp = put(tmp_path, "comp.txt",
               "11 D2p Cp\n37 D2p Cp  # nonsplit place\n")
    assert main(["verify-global", curves, "--p", "5",
                 "--completion", comp]) == 0
    out = capsys.readouterr().out
    assert out.count("c_product=-1 w_product=-1 agree") == 2


def test_verify_global_missing_completion(tmp_path, capsys):
    curves = put(tmp_path, "c.txt", "0 -1 1 -10 -20\n")
    comp = put(tmp_path, "comp.txt", "37 D2p Cp\n")
    assert main(["verify-global", curves, "--p", "5",
                 "--completion", comp]) == 2
    assert "no completion data" in capsys.readouterr().err


def test_verify_global_inadmissible_completion(tmp_path, capsys):
    curves = put(tmp_path, "c.txt", "0 -1 1 -10 -20\n")
    comp = put(tmp_path, "comp.txt", "11 1 D2\n")
    assert main(["verify-global", curves, "--p", "5",
                 "--completion", comp]) == 2
    assert "error:" in capsys.readouterr().err


def test_completion_parse_errors(tmp_path, capsys):
    curves = put(tmp_path, "c.txt", "0 -1 1 -10 -20\n")
    for body in ("11 D2p\n", "x D2p Cp\n", "11 D4 Cp\n",
                 "11 D2p Cp maybe\n", "11 D2p Cp\n11 D2p Cp\n"):
        comp = put(tmp_path, "comp.txt", body)
        assert main(["verify-global", curves, "--p", "5",
                     "--completion", comp]) == 2
        assert "error:" in capsys.readouterr().err


# --- surgery ---------------------------------------------------------------

def test_surgery_pass(tmp_path, capsys):
    curves = put(tmp_path, "c.txt", "0 -1 1 -10 -20\n")
    out_json = tmp_path / "s.json"
    assert main(["surgery", curves, "--p0", "11", "--v", "3",
                 "--json", str(out_json)]) == 0
    assert "PASS" in capsys.readouterr().out
    payload = json.loads(out_json.read_text())
    assert payload[0]["ok"] is True
    assert payload[0]["final"][1] % 3 == 1  # a2 = 1 mod v


def test_surgery_shallow_depth_fails(tmp_path, capsys):
    curves = put(tmp_path, "c.txt", "0 0 1 0 -7\n")
    assert main(["surgery", curves, "--p0", "3", "--v", "5", "--n", "1"]) == 1
    assert "FAILED" in capsys.readouterr().out


def test_surgery_bad_parameters(tmp_path, capsys):
    curves = put(tmp_path, "c.txt", "0 -1 1 -10 -20\n")
    assert main(["surgery", curves, "--p0", "4", "--v", "3"]) == 2
    assert "error:" in capsys.readouterr().err


# --- argparse plumbing -----------------------------------------------------

def test_usage_errors_exit_2():
    for argv in ([], ["reduce"], ["frobnicate"], ["chars"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2
