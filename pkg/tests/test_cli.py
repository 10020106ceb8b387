import json

from rank3loci.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_generators_table(capsys):
    code, out = run(capsys, "generators", "--d", "4")
    assert code == 0
    assert "Q[0,1]  z0*z2 - z1^2" in out
    assert out.count("Q[") == 6


def test_alpha_table_symbolic(capsys):
    code, out = run(capsys, "alpha-table", "--d", "5", "--ell", "2")
    assert code == 0
    assert "alpha[0,1]  q01^2*C0^2" in out
    assert "alpha[2,4]  q12^2*C0*C1 + 2*q02*q12*C1^2" in out


def test_alpha_table_evaluated(capsys):
    code, payload = run_json(capsys, "alpha-table", "--d", "4", "--ell", "1",
                             "--f", "x", "--g", "y", "--h", "x^2")
    assert code == 0
    assert payload["mode"] == "evaluated"
    values = {(e["i"], e["j"]): e["value"] for e in payload["entries"]}
    assert values[(0, 1)] == {"num": "1", "den": "1"}
    assert values[(2, 3)] == {"num": "0", "den": "1"}


def test_alpha_table_evaluated_needs_all_three(capsys):
    code = main(["alpha-table", "--d", "4", "--ell", "1", "--f", "x"])
    assert code == 2


def test_recurrences_exit_code(capsys):
    code, out = run(capsys, "recurrences", "--d", "6", "--ell", "2")
    assert code == 0
    assert "verified" in out


def test_witness(capsys):
    code, out = run(capsys, "witness", "--d", "4", "--ell", "2")
    assert code == 0
    assert "z0*z4 - z2^2" in out


def test_minimality_and_nondegeneracy(capsys):
    assert run(capsys, "minimality", "--d", "4")[0] == 0
    code, payload = run_json(capsys, "nondegeneracy", "--d", "5",
                             "--ell", "2")
    assert code == 0
    assert payload["rank"] == 10 and payload["verified"]


def test_fiber_json(capsys):
    code, payload = run_json(capsys, "fiber", "--d", "6", "--ell", "2",
                             "--f", "x^2", "--g", "x*y", "--h", "y^2")
    assert code == 0
    assert payload["verdict"] == "two-point-fiber"
    assert payload["certificate"]["s"] == 1


def test_fiber_parse_error_is_usage(capsys):
    assert main(["fiber", "--d", "6", "--ell", "2",
                 "--f", "x^", "--g", "y", "--h", "y^2"]) == 2


def test_theta(capsys):
    code, payload = run_json(capsys, "theta", "--n", "1", "--d", "7",
                             "--ell", "2")
    assert code == 0
    assert payload["maximum"] == 3
    assert payload["argmax"] == [1]


def test_sing_family_seeded(capsys):
    code, payload = run_json(capsys, "sing-family", "--n", "1", "--d", "6",
                             "--ell", "2", "--m", "1", "--count", "3",
                             "--seed", "11")
    assert code == 0
    assert len(payload["certificates"]) == 3


def test_w1_check(capsys):
    code, out = run(capsys, "w1-check", "--d", "4")
    assert code == 0
    assert "C0^2" in out


def test_gb_inline(capsys):
    code, out = run(capsys, "gb", "--vars", "x,y",
                    "--gens", "x^2 - y; x^3", "--order", "lex")
    assert code == 0
    assert "y^2" in out


def test_member_and_radical(capsys):
    code, out = run(capsys, "member", "--vars", "x,y", "--gens", "x^2 - y",
                    "--poly", "x^4 - y^2")
    assert code == 0
    assert "True" in out
    code, out = run(capsys, "radical-member", "--vars", "x,y",
                    "--gens", "x^2", "--poly", "x")
    assert code == 0
    assert "True" in out


def test_hilbert(capsys):
    code, out = run(capsys, "hilbert", "--vars", "z0,z1,z2",
                    "--gens", "z0*z2 - z1^2")
    assert code == 0
    assert "2*t + 1" in out


def test_gb_requires_input(capsys):
    assert main(["gb"]) == 2


def test_deterministic_json_output(capsys):
    _, first = run(capsys, "alpha-table", "--d", "5", "--ell", "2",
                   "--format", "json")
    _, second = run(capsys, "alpha-table", "--d", "5", "--ell", "2",
                    "--format", "json")
    assert first == second


def test_out_file(tmp_path, capsys):
    target = tmp_path / "cert.json"
    code = main(["nondegeneracy", "--d", "4", "--ell", "1",
                 "--format", "json", "--out", str(target)])
    assert code == 0
    payload = json.loads(target.read_text())
    assert payload["rank"] == 6


def test_example_d4(capsys):
    code, out = run(capsys, "example", "d4")
    assert code == 0
    assert "[PASS] intersection curve has Hilbert polynomial 4t + 1" in out
    assert "[FAIL]" not in out


def test_example_d5_default(capsys):
    code, out = run(capsys, "example", "d5")
    assert code == 0
    assert "[FAIL]" not in out
    assert "4t^3+8t^2+5t+1" in out
