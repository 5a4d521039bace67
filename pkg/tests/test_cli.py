import json
from pathlib import Path

import pytest

from swapreach.cli import ERROR, NO, YES, main
from swapreach.fileformat import loads_instance

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_four_agents(capsys):
    code, out, _ = run(capsys, "solve", DATA / "four_agents.json")
    assert code == YES
    assert "REACHABLE" in out and "(1,2) (2,3)" in out and "verified: yes" in out


def test_solve_json_output(capsys):
    code, out, _ = run(capsys, "solve", DATA / "eight_agents.json", "--format", "json")
    doc = json.loads(out)
    assert code == YES and doc["verified"] and doc["final"][4] == 1


def test_query_override_and_unreachable(capsys):
    code, out, _ = run(capsys, "solve", DATA / "four_agents.json", "--agent", "1", "--object", "4")
    assert code == NO and "UNREACHABLE" in out


def test_query_out_of_range(capsys):
    code, _, err = run(capsys, "solve", DATA / "four_agents.json", "--agent", "9", "--object", "1")
    assert code == ERROR and "out of range" in err


def test_weak_path_needs_oracle_flag(tmp_path, capsys):
    gadget = tmp_path / "g.json"
    assert run(capsys, "reduce-sat", DATA / "unsat_n1.cnf", "-o", gadget)[0] == YES
    code, _, err = run(capsys, "solve", gadget)
    assert code == ERROR and "--oracle" in err
    code, out, _ = run(capsys, "solve", gadget, "--oracle")
    assert code == NO and "method: oracle" in out
    code, out, _ = run(capsys, "oracle", gadget, "--format", "json")
    assert json.loads(out)["statistics"]["states"] > 1


def test_cap_flag(tmp_path, capsys):
    gadget = tmp_path / "g.json"
    run(capsys, "reduce-sat", DATA / "sat_n2.cnf", "-o", gadget)
    code, _, err = run(capsys, "oracle", gadget, "--cap", "1000")
    assert code == ERROR and "cap 1000" in err


def test_verify_valid_and_invalid(capsys):
    code, out, _ = run(capsys, "verify", DATA / "four_agents.json", "--swaps", "1-2 2-3")
    assert code == YES and "3:o1" in out
    code, out, _ = run(capsys, "verify", DATA / "four_agents.json", "--swaps", "1-3")
    assert code == NO and "step 0" in out


def test_verify_from_file(tmp_path, capsys):
    f = tmp_path / "s.txt"
    f.write_text("1 2\n2 3\n")
    code, _, _ = run(capsys, "verify", DATA / "four_agents.json", "--swaps-file", f)
    assert code == YES


def test_odd_swap_list(capsys):
    code, _, err = run(capsys, "verify", DATA / "four_agents.json", "--swaps", "1 2 3")
    assert code == ERROR and "odd" in err


def test_pareto(capsys):
    code, out, _ = run(capsys, "pareto", DATA / "four_agents.json", "--format", "json")
    assert code == YES and json.loads(out)["frontier"] == [[2, 4, 1, 3]]


def test_reduce_ham_and_welfare(tmp_path, capsys):
    star = tmp_path / "star.json"
    assert run(capsys, "reduce-ham", DATA / "ham_digraph.dg", "-o", star)[0] == YES
    inst = loads_instance(star.read_text())
    assert inst.n == 10 and inst.query.threshold == 16
    code, out, _ = run(capsys, "welfare", star)
    assert code == YES and "endowment welfare: 9" in out
    code, _, _ = run(capsys, "welfare", star, "--threshold", "100")
    assert code == NO


def test_reduce_sat_rejects_bad_formula(tmp_path, capsys):
    bad = tmp_path / "bad.cnf"
    bad.write_text("p cnf 1 1\n1 0\n")
    code, _, err = run(capsys, "reduce-sat", bad)
    assert code == ERROR and "2P1N" in err


def test_gen_is_deterministic(capsys):
    _, a, _ = run(capsys, "gen", "weak-star", 6, 42)
    _, b, _ = run(capsys, "gen", "weak-star", 6, 42)
    _, c, _ = run(capsys, "gen", "weak-star", 6, 43)
    assert a == b and a != c
    assert loads_instance(a).network.kind == "star"


def test_gen_rejects_zero_agents(capsys):
    assert run(capsys, "gen", "strict-path", 0, 1)[0] == ERROR


@pytest.mark.parametrize("seed", range(5))
def test_gen_then_solve_agrees_with_oracle(tmp_path, capsys, seed):
    f = tmp_path / "i.json"
    run(capsys, "gen", "strict-path", 5, seed, "-o", f)
    assert run(capsys, "solve", f)[0] == run(capsys, "oracle", f)[0]


def test_missing_file(capsys):
    code, _, err = run(capsys, "solve", "no/such/file.json")
    assert code == ERROR and "error" in err
