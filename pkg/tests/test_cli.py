import json
from pathlib import Path

from affchab.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_check_conditions_imagquad(capsys):
    code, out = run(capsys, "check-conditions",
                    "--curve", DATA / "curve_sextic_imagquad.json")
    assert code == 0
    assert "4 < 5 PASS" in out


def test_check_conditions_cubic_types(capsys):
    code, payload = run_json(
        capsys, "check-conditions", "--curve", DATA / "curve_cubic_genus1.json",
        "--fibre", DATA / "fibre_cubic_3.json",
        "--fibre", DATA / "fibre_cubic_5.json",
        "--fibre", DATA / "fibre_cubic_7.json",
        "-S", "5", "-p", "7", "--prune")
    assert code == 0
    assert payload["all_pass"]
    assert all(t["lhs"] == 2 and t["rhs"] == 3 for t in payload["types"])
    assert all(t["selmer_rank"] == 2 for t in payload["types"])


def test_check_conditions_huge_rank_fails(capsys):
    code, out = run(capsys, "check-conditions",
                    "--curve", DATA / "curve_sextic_imagquad.json",
                    "--rank", "99")
    assert code == 1
    assert "FAIL" in out


def test_bound_quartic(capsys):
    code, payload = run_json(capsys, "bound",
                             "--curve", DATA / "curve_quartic_rank1.json",
                             "-p", "5")
    assert code == 0
    assert payload["bound"] == 5
    assert payload["by"] == "sharp-hyperelliptic"


def test_bound_sextic(capsys):
    code, payload = run_json(capsys, "bound",
                             "--curve", DATA / "curve_sextic_bielliptic.json",
                             "-p", "7")
    assert code == 0
    assert payload["bound"] == 6


def test_bound_cubic_inert_and_split(capsys):
    base = ["bound", "--curve", DATA / "curve_cubic_genus1.json",
            "--fibre", DATA / "fibre_cubic_3.json",
            "--fibre", DATA / "fibre_cubic_5.json",
            "--fibre", DATA / "fibre_cubic_7.json"]
    code, payload = run_json(capsys, *base, "--fibre",
                             DATA / "fibre_cubic_11.json", "-S", "5", "-p", "7")
    assert code == 0 and payload["bound"] == 6
    code, payload = run_json(capsys, *base, "--fibre",
                             DATA / "fibre_cubic_13.json", "-S", "13",
                             "-p", "7")
    assert code == 0 and payload["bound"] == 18


def test_bound_condition_failure_exit(capsys):
    code, payload = run_json(capsys, "bound",
                             "--curve", DATA / "curve_quartic_rank1.json",
                             "--rank", "7", "-p", "5")
    assert code == 1
    assert payload.get("bound") is None


def test_count_points(capsys):
    code, payload = run_json(capsys, "count-points",
                             "--curve", DATA / "curve_sextic_bielliptic.json",
                             "-p", "7")
    assert code == 0 and payload["count"] == 2


def test_sigma_report(capsys):
    code, payload = run_json(capsys, "sigma",
                             "--fibre", DATA / "fibre_cubic_5.json")
    assert code == 0
    assert payload["transversal"]
    kinds = {c["choice"]: c["kind"] for c in payload["constraints"]}
    assert kinds == {"C0": "point", "Q1": "line"}
    line = next(c for c in payload["constraints"] if c["kind"] == "line")
    assert line["covers_components"] == ["C0"]


def test_strassmann_report(capsys):
    code, out = run(capsys, "strassmann",
                    "--curve", DATA / "curve_sextic_imagquad.json",
                    "-p", "7", "--fixture", DATA / "alphas_imagquad_7.json")
    assert code == 0
    assert "disc (0,1): Exact(1) at t=0" in out
    assert out.count("Exact(1)") == 6


def test_strassmann_missing_anchor_exit_2(tmp_path, capsys):
    fixture = json.loads((DATA / "alphas_imagquad_7.json").read_text())
    fixture["known_points"] = fixture["known_points"][:3]
    path = tmp_path / "partial.json"
    path.write_text(json.dumps(fixture))
    code, payload = run_json(capsys, "strassmann",
                             "--curve", DATA / "curve_sextic_imagquad.json",
                             "-p", "7", "--fixture", path)
    assert code == 2
    assert payload["inconclusive"]


def test_strassmann_empty_curve_mod_p(tmp_path, capsys):
    # y^2 = x^4 + 2 has no points mod 5 at all: empty report, exit 0
    curve = {"field": "Q", "f_coefficients": [2, 0, 0, 0, 1], "genus": 1}
    cpath = tmp_path / "curve.json"
    cpath.write_text(json.dumps(curve))
    fixture = {"prime": 5, "precision": 6, "basis_size": 2,
               "alpha": ["0:1,0,0,0,0,0", "0:1,0,0,0,0,0"],
               "constant": "zero", "known_points": []}
    fpath = tmp_path / "fixture.json"
    fpath.write_text(json.dumps(fixture))
    code, payload = run_json(capsys, "strassmann", "--curve", cpath,
                             "-p", "5", "--fixture", fpath)
    assert code == 0
    assert payload["discs"] == []


def test_search_commands(capsys):
    code, payload = run_json(capsys, "search",
                             "--curve", DATA / "curve_quartic_rank1.json",
                             "-H", "1000")
    assert code == 0 and payload["total"] == 5
    code, payload = run_json(capsys, "search",
                             "--curve", DATA / "curve_sextic_bielliptic.json",
                             "-H", "1000")
    assert code == 0 and payload["total"] == 6
    assert ["0", "2"] in payload["points"]


def test_input_error_exit_3(capsys):
    code = main(["bound", "--curve", "/nonexistent.json", "-p", "5"])
    assert code == 3


def test_parse_error_exit_3(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    code = main(["count-points", "--curve", str(bad), "-p", "5"])
    assert code == 3
