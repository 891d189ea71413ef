import json

import pytest

from fiedlertree.cli import main
from fiedlertree.graph import parse_edge_list


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_gen_path_stdout(capsys):
    code, out, _ = run_cli(capsys, "gen", "path", "4")
    assert code == 0
    assert out == "0 1\n1 2\n2 3\n"


def test_gen_rose_on_path_counts(capsys, tmp_path):
    target = tmp_path / "rose.txt"
    code, _, _ = run_cli(capsys, "gen", "rose-on-path", "9", "3", "12", "-o", str(target))
    assert code == 0
    g = parse_edge_list(target.read_text())
    assert g.n == 23 and g.m == 22


def test_analyze_path_strict_ok(capsys, tmp_path):
    p = tmp_path / "p10.txt"
    run_cli(capsys, "gen", "path", "10", "-o", str(p))
    code, out, _ = run_cli(capsys, "analyze", "-i", str(p), "--strict")
    assert code == 0
    payload = json.loads(out)
    assert payload["extrema"]["strict"] is True
    assert all(
        payload["bounds"][key]
        for key in ("mckay_ok", "upper10_ok", "path_upper_ok", "linf_ok", "positive_mass_ok")
    )
    assert payload["monotonicity"]["status"] == "pass"


def test_analyze_rose_trap_relaxed_fails(capsys, tmp_path):
    p = tmp_path / "rose.txt"
    run_cli(capsys, "gen", "rose-on-path", "9", "3", "12", "-o", str(p))
    code, out, _ = run_cli(capsys, "analyze", "-i", str(p), "--relaxed")
    assert code == 1
    assert json.loads(out)["extrema"]["relaxed"] is False


def test_analyze_dot_output(capsys, tmp_path):
    p = tmp_path / "p5.txt"
    run_cli(capsys, "gen", "path", "5", "-o", str(p))
    code, out, _ = run_cli(capsys, "analyze", "-i", str(p), "--format", "dot")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "graph fiedler {"
    assert sum(1 for l in lines if "[label=" in l) == 5
    assert sum(1 for l in lines if " -- " in l) == 4


def test_hit_p3(capsys, tmp_path):
    p = tmp_path / "p3.txt"
    run_cli(capsys, "gen", "path", "3", "-o", str(p))
    code, out, _ = run_cli(capsys, "hit", "-i", str(p), "--target", "0")
    assert code == 0
    payload = json.loads(out)
    assert payload["hit_max"] == 4
    assert payload["h"] == [0, 3, 4]


def test_game_exact_and_simulated(capsys, tmp_path):
    p = tmp_path / "p2.txt"
    run_cli(capsys, "gen", "path", "2", "-o", str(p))
    code, out, _ = run_cli(
        capsys, "game", "-i", str(p), "--from", "0", "--to", "1",
        "--samples", "20000", "--seed", "7",
    )
    assert code == 0
    payload = json.loads(out)
    assert abs(payload["mc_mean"] - 2**0.5) <= 4 * payload["mc_stderr"] + 1e-12
    assert payload["exact"] == pytest.approx(2**0.5)


def test_game_byte_determinism(capsys, tmp_path):
    p = tmp_path / "g.txt"
    run_cli(capsys, "gen", "rose-on-path", "6", "2", "4", "-o", str(p))
    args = ("game", "-i", str(p), "--from", "8", "--to", "6",
            "--samples", "5000", "--seed", "42")
    _, out1, _ = run_cli(capsys, *args)
    _, out2, _ = run_cli(capsys, *args)
    assert out1 == out2


def test_check_exit_codes(capsys, tmp_path):
    p = tmp_path / "adm.txt"
    run_cli(capsys, "gen", "rose-on-path", "120", "60", "0", "-o", str(p))
    code, out, _ = run_cli(capsys, "check", "-i", str(p))
    assert code == 0
    assert json.loads(out)["admissibility"]["admissible"] is True

    e = tmp_path / "rose.txt"
    run_cli(capsys, "gen", "rose-on-path", "9", "3", "12", "-o", str(e))
    code, out, _ = run_cli(capsys, "check", "-i", str(e))
    assert code == 1
    payload = json.loads(out)
    assert payload["admissibility"]["admissible"] is False
    assert payload["extrema"]["relaxed"] is False


def test_enumerate_counts(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "--n", "7", "--format", "levels")
    assert code == 0
    assert len(out.splitlines()) == 11
    code, out, _ = run_cli(capsys, "enumerate", "--n", "5", "--format", "g6")
    assert len(out.splitlines()) == 3


def test_survey_cli(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "survey", "--n", "6", "-o", str(tmp_path / "s"))
    assert code == 0
    payload = json.loads(out)
    assert payload["total"] == 6


def test_random_tree_seeded(capsys):
    _, out1, _ = run_cli(capsys, "gen", "random-tree", "12", "--seed", "5")
    _, out2, _ = run_cli(capsys, "gen", "random-tree", "12", "--seed", "5")
    _, out3, _ = run_cli(capsys, "gen", "random-tree", "12", "--seed", "6")
    assert out1 == out2
    assert out1 != out3


def test_parse_error_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("0 1\n0 1\n")
    code, _, err = run_cli(capsys, "analyze", "-i", str(bad))
    assert code == 2
    assert "error:" in err


def test_usage_error_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["analyze"])  # missing --input
    assert exc.value.code == 2


def test_solver_error_exit_2(capsys, tmp_path):
    single = tmp_path / "one.txt"
    single.write_text("0 1\n2 3\n")  # disconnected
    code, _, err = run_cli(capsys, "analyze", "-i", str(single))
    assert code == 2
    assert "error:" in err


def test_parallelism_env_default(monkeypatch):
    from fiedlertree.cli import build_parser

    monkeypatch.setenv("FIEDLERTREE_PARALLELISM", "6")
    args = build_parser().parse_args(["survey", "--n", "5"])
    assert args.parallelism == 6
    args = build_parser().parse_args(["survey", "--n", "5", "--parallelism", "2"])
    assert args.parallelism == 2
    monkeypatch.setenv("FIEDLERTREE_PARALLELISM", "junk")
    args = build_parser().parse_args(["survey", "--n", "5"])
    assert args.parallelism == 1
