import json

from singhunt import godeaux
from singhunt.cli import main
from singhunt.lattice import format_lattice

HESSE = "# plane cubics\nx0^3+x1^3+x2^3+p1*x0*x1*x2\n"

CONIC_POINTS = """\
0 1 0
0 0 1
1 1 6
1 2 3
1 3 2
1 4 5
1 5 4
1 6 1
"""

GRAM9 = """\
names: N1 N2 N3 N4 N5 N6 N7 N8 K
[-2  0  0  0  0  0  0  0  0]
[ 0 -2  0  0  0  0  0  0  0]
[ 0  0 -2  1  0  0  0  0  0]
[ 0  0  1 -2  1  0  0  0  0]
[ 0  0  0  1 -2  0  0  0  0]
[ 0  0  0  0  0 -2  1  0  0]
[ 0  0  0  0  0  1 -2  1  0]
[ 0  0  0  0  0  0  1 -2  0]
[ 0  0  0  0  0  0  0  0  1]
"""

TEMPLATE_C = "lhs: 8*K\ncurve: 4*C'\nsupport: N1 N3 N4 N5 N6 N7 N8\n"

CONSTRAINTS_C = """\
pair N1 {1}
pair N2 {0}
pair N3 {0}
pair N4 {0,1}
pair N5 {0,1}
pair N6 {0,1}
pair N7 {0,1}
pair N8 {0}
contact N3+N4+N5 = 1
contact N6+N7+N8 = 1
"""

COVER_FILE = """\
group: 2 4
branch: N4+N7 | N1 | N2 | N3 | N5 | N6 | N8
L (1,0): 2*K - D' - N7
L (1,1): 2*K - C'
"""


def strip_timings(text: str) -> str:
    lines = []
    for line in text.splitlines():
        if line.startswith("timings:"):
            break
        lines.append(line)
    return "\n".join(lines)


def test_hunt_command(tmp_path, capsys):
    fam = tmp_path / "hesse.txt"
    fam.write_text(HESSE)
    code = main(["hunt", "--family", str(fam), "--field", "7",
                 "--trials", "7", "--seed", "1", "--classify", "--threads", "1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "members: 3" in out
    assert "3A1" in out
    assert "|" in out  # params | signature | points


def test_hunt_determinism_bytes(tmp_path, capsys):
    fam = tmp_path / "hesse.txt"
    fam.write_text(HESSE)
    argv = ["hunt", "--family", str(fam), "--field", "7",
            "--trials", "7", "--seed", "9", "--classify", "--threads", "2"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    second = capsys.readouterr().out
    assert strip_timings(first) == strip_timings(second)


def test_interpolate_command(tmp_path, capsys):
    pts = tmp_path / "pts.txt"
    pts.write_text(CONIC_POINTS)
    code = main(["interpolate", "--points", str(pts), "--field", "7",
                 "--degree", "2", "--homogeneous"])
    out = capsys.readouterr().out
    assert code == 0
    assert "dimension: 1" in out
    assert "x0^2 + x1*x2" in out


def test_lift_command_pass_and_fail(tmp_path, capsys):
    good = tmp_path / "good.txt"
    good.write_text("101: 69\n103: 41\n107: 58\n109: 28\n")  # -22/7 mod each
    code = main(["lift", "--residues", str(good)])
    out = capsys.readouterr().out
    assert code == 0 and "value: -22/7" in out

    bad = tmp_path / "bad.txt"
    bad.write_text("101: 69\n103: 42\n107: 58\n109: 28\n113: 13\n")
    code = main(["lift", "--residues", str(bad)])
    out = capsys.readouterr().out
    assert code == 1
    assert "FAIL" in out


def test_lift_pairs_command(tmp_path, capsys):
    res = tmp_path / "pairs.txt"
    res.write_text("101: 1, 2\n103: 2, 1\n107: 1, 2\n")
    code = main(["lift", "--residues", str(res), "--pairs"])
    out = capsys.readouterr().out
    assert code == 0
    assert "x0^2 - 3*x0 + 2" in out


def test_lattice_rank_command(tmp_path, capsys):
    gram = tmp_path / "gram.txt"
    gram.write_text(GRAM9)
    code = main(["lattice", "--gram", str(gram), "rank"])
    out = capsys.readouterr().out
    assert code == 0
    assert "rank: 9" in out and "radical_dimension: 0" in out


def test_lattice_solve_command(tmp_path, capsys):
    gram = tmp_path / "gram.txt"
    gram.write_text(GRAM9)
    tfile = tmp_path / "template.txt"
    tfile.write_text(TEMPLATE_C)
    cfile = tmp_path / "constraints.txt"
    cfile.write_text(CONSTRAINTS_C)
    code = main(["lattice", "--gram", str(gram), "solve",
                 "--template", str(tfile), "--constraints", str(cfile)])
    out = capsys.readouterr().out
    assert code == 0
    assert "solutions: 1" in out
    assert "'N1': 2" in out and "'N5': 3" in out


def test_lattice_search_command(tmp_path, capsys):
    gram = tmp_path / "gram.txt"
    gram.write_text(GRAM9)
    bounds = ",".join([f"N{i}=0..1" for i in range(1, 9)] + ["K=0..4", "self=-2..4"])
    code = main(["lattice", "--gram", str(gram), "search",
                 "--bounds", bounds, "--limit", "500"])
    out = capsys.readouterr().out
    assert code == 0
    assert "degenerate_extensions: 118" in out
    assert "[-2, 0, -1, -2, -3, -3, -2, -1, 8, -4]" in out


def test_cover_commands(tmp_path, capsys):
    gram = tmp_path / "gram11.txt"
    gram.write_text(format_lattice(godeaux.extended_lattice()) + "\n")
    cov = tmp_path / "cover.txt"
    cov.write_text(COVER_FILE)
    code = main(["cover", "--lattice", str(gram), "--cover", str(cov), "verify"])
    out = capsys.readouterr().out
    assert code == 0 and out.count("pass | reduced-data") == 7

    code = main(["cover", "--lattice", str(gram), "--cover", str(cov), "invariants"])
    out = capsys.readouterr().out
    assert code == 0
    assert "chi_cover: 1" in out and "K2_cover: 8" in out


def test_fixture_command(capsys):
    code = main(["fixture", "godeaux-2a1-2a3"])
    out = capsys.readouterr().out
    assert code == 0
    assert "17/17 verdicts pass" in out


def test_fixture_json(capsys):
    code = main(["fixture", "--json"])
    out = capsys.readouterr().out
    assert code == 0
    payload = json.loads(out)
    assert payload["command"] == "fixture godeaux-2a1-2a3"
    assert all(v["status"] == "pass" for v in payload["verdicts"])
    names = [v["name"] for v in payload["verdicts"]]
    assert "relation-C" in names and "cover-b2" in names


def test_fixture_deterministic_json(capsys):
    main(["fixture", "--json"])
    first = json.loads(capsys.readouterr().out)
    main(["fixture", "--json"])
    second = json.loads(capsys.readouterr().out)
    first.pop("timings")
    second.pop("timings")
    assert first == second


def test_json_results_keep_repeated_keys(tmp_path, capsys):
    gram = tmp_path / "gram.txt"
    gram.write_text(GRAM9)
    tfile = tmp_path / "template.txt"
    tfile.write_text(TEMPLATE_C)
    cfile = tmp_path / "constraints.txt"
    cfile.write_text("\n".join(f"pair N{i} {{0,1}}" for i in range(1, 9)) + "\n")
    code = main(["lattice", "--gram", str(gram), "solve", "--json",
                 "--template", str(tfile), "--constraints", str(cfile)])
    out = capsys.readouterr().out
    assert code == 1  # 16 solutions: not unique
    payload = json.loads(out)
    solutions = [kv for kv in payload["results"] if kv[0] == "solution"]
    assert len(solutions) == 16


def test_threads_env_default(monkeypatch):
    from singhunt.cli import build_parser

    monkeypatch.setenv("SINGHUNT_THREADS", "3")
    args = build_parser().parse_args(["hunt", "--family", "f", "--field", "7"])
    assert args.threads == 3


def test_usage_error_exit_code(capsys):
    assert main(["hunt"]) == 2  # missing required arguments
    capsys.readouterr()


def test_data_error_exit_code(capsys):
    assert main(["hunt", "--family", "/nonexistent/f.txt", "--field", "7"]) == 3
    capsys.readouterr()


def test_output_file(tmp_path, capsys):
    out_path = tmp_path / "report.txt"
    code = main(["fixture", "--output", str(out_path)])
    assert code == 0
    assert "17/17" in out_path.read_text()
