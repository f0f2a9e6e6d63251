import json
import shutil
import subprocess
import sys

import pytest

from dhtoric import cli, gallery

SQUARE = {"dim": 2, "vertices": [["0", "0"], ["1", "0"], ["1", "1"], ["0", "1"]]}


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)

    return write


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dh_square(files, capsys):
    model = files("square.json", {"polytope": SQUARE, "projection": [[1, 1]]})
    code, out, _ = run(["dh", model], capsys)
    assert code == 0
    obj = json.loads(out)
    assert obj["breakpoints"] == ["0", "1", "2"]
    assert obj["pieces"] == [{"coeffs": ["0", "1"]}, {"coeffs": ["2", "-1"]}]


def test_dh_csv_samples(files, capsys, tmp_path):
    poly = files("square.json", SQUARE)
    code, out, _ = run(["dh", poly, "--projection", "1,1", "--format", "csv", "--samples", "5"], capsys)
    assert code == 0
    assert out.splitlines() == ["t,value", "0,0", "1/2,1/2", "1,1", "3/2,1/2", "2,0"]
    side = tmp_path / "s.csv"
    code, _, _ = run(["dh", poly, "--projection", "1,1", "--csv", str(side), "--out", str(tmp_path / "f.json")], capsys)
    assert code == 0 and len(side.read_text().splitlines()) == 201


def test_dh_malformed_json(files, capsys):
    bad = files("bad.json", '{"dim": 2,\n "vertices": [1,}')
    code, _, err = run(["dh", bad, "--projection", "1,1"], capsys)
    assert code == 2 and "line 2, column 17" in err


def test_dh_non_generic(files, capsys):
    poly = files("square.json", SQUARE)
    code, _, err = run(["dh", poly, "--projection", "1,0"], capsys)
    assert code == 3 and "edge" in err
    code, _, _ = run(["dh", poly, "--projection", "1,0", "--allow-degenerate"], capsys)
    assert code == 0


def test_dh_missing_projection_and_bad_file(files, capsys, tmp_path):
    poly = files("square.json", SQUARE)
    assert run(["dh", poly], capsys)[0] == 2
    assert run(["dh", str(tmp_path / "nope.json"), "--projection", "1,1"], capsys)[0] == 2
    assert run(["dh", poly, "--projection", "1,x"], capsys)[0] == 2


def test_check_line_verdicts(files, capsys):
    tri = files("tri.json", {"breakpoints": ["0", "1", "2"], "pieces": [{"coeffs": ["0", "1"]}, {"coeffs": ["2", "-1"]}]})
    code, out, _ = run(["check", tri], capsys)
    assert code == 0 and json.loads(out)["status"] in ("LogConcave", "StrictlyLogConcave")
    bump = files("bump.json", {"breakpoints": ["-1", "1"], "pieces": [{"coeffs": ["1", "0", "1"]}]})
    code, out, _ = run(["check", bump], capsys)
    assert code == 1 and json.loads(out) == {"status": "NotLogConcave", "witness": {"location": "0", "reason": "PieceFailure"}}
    model = files("m.json", {"polytope": SQUARE, "projection": [[1, 2]]})
    assert run(["check", model], capsys)[0] == 0


def test_check_negative_density(files, capsys):
    neg = files("neg.json", {"breakpoints": ["0", "2"], "pieces": [{"coeffs": ["1", "-1"]}]})
    code, _, err = run(["check", neg], capsys)
    assert code == 2 and "negative" in err


def test_check_circle(files, capsys):
    const = files("c.json", {"breakpoints": ["0", "1"], "pieces": [{"coeffs": ["3"]}], "period": "1"})
    code, out, _ = run(["check", "--circle", const], capsys)
    assert code == 1 and json.loads(out)["status"] == "NonHamiltonianCandidate"
    half = files("h.json", {"breakpoints": ["0", "1/2"], "pieces": [{"coeffs": ["1"]}], "period": "1"})
    code, out, _ = run(["check", "--circle", half], capsys)
    assert code == 0 and json.loads(out)["status"] == "Hamiltonian"
    quarter = files("q.json", {"breakpoints": ["0", "1/4", "1/2"], "pieces": [{"coeffs": ["0", "1"]}, {"coeffs": ["1/2", "-1"]}], "period": "1"})
    crits = files("k.json", [{"level": "1/4", "components": [{"level": "1/4", "weights": ["-1", "1"], "reduced_volume": "2"}]}])
    code, out, _ = run(["check", "--circle", quarter, "--criticals", crits], capsys)
    assert code == 0
    wrong = files("w.json", [{"level": "1/8", "components": [{"level": "1/8", "weights": ["-1", "1"]}]}])
    code, out, _ = run(["check", "--circle", quarter, "--criticals", wrong], capsys)
    assert code == 0  # proper support decides before criticals are consulted
    wave = files("wave.json", {"breakpoints": ["0", "1/2", "1"], "pieces": [{"coeffs": ["1", "1"]}, {"coeffs": ["2", "-1"]}], "period": "1"})
    code, out, _ = run(["check", "--circle", wave, "--criticals", wrong], capsys)
    assert code == 1 and json.loads(out)["status"] == "Inconsistent"


def test_jump(files, capsys):
    model = files("m.json", {"polytope": SQUARE, "projection": [[1, 1]]})
    code, out, _ = run(["jump", model, "--level", "1"], capsys)
    assert code == 0
    (rec,) = json.loads(out)
    assert rec["gls"] == rec["measured"] == ["0", "-2"]
    code, out, _ = run(["jump", model], capsys)
    assert [r["level"] for r in json.loads(out)] == ["0", "1", "2"]


def test_cut(files, capsys):
    poly = files("square.json", SQUARE)
    code, out, _ = run(["cut", poly, "--halfspace", '{"normal": [1, 0], "bound": "1/2"}'], capsys)
    assert code == 0 and json.loads(out)["volume"] == "1/2"
    hs = files("hs.json", [{"normal": [1, 0], "bound": "2"}])
    code, out, _ = run(["cut", poly, "--halfspaces", hs], capsys)
    assert code == 0 and json.loads(out)["vertices"] == [] and json.loads(out)["volume"] == "0"
    assert run(["cut", poly], capsys)[0] == 2
    model = files("m.json", {"polytope": SQUARE, "projection": [[1, 1]]})
    code, out, _ = run(["cut", model, "--halfspace", '{"normal": [1, 1], "bound": "1/2"}'], capsys)
    assert code == 0 and json.loads(out)["volume"] == "7/8"
    assert run(["cut", poly, "--halfspace", '{"normal": [1.5, 0], "bound": "1"}'], capsys)[0] == 2


def test_mc(files, capsys):
    model = files("m.json", {"polytope": SQUARE, "projection": [[1, 1]]})
    code, out, _ = run(["--seed", "5", "mc", model, "--N", "20000", "--points", "1/2,1"], capsys)
    lines = out.splitlines()
    assert code == 0 and lines[0] == "t,estimate,stderr,N,seed"
    assert lines[1].startswith("1/2,") and lines[1].endswith(",20000,5")
    code2, out2, _ = run(["mc", model, "--N", "20000", "--points", "1/2,1", "--seed", "5"], capsys)
    assert out2 == out
    code, out, _ = run(["mc", model, "--N", "20000", "--grid", "3", "--format", "json"], capsys)
    assert code == 0 and len(json.loads(out)["samples"]) == 3
    assert run(["mc", model, "--N", "10"], capsys)[0] == 2


def test_sl2(files, capsys):
    g = files("g.json", {"n": 2, "terms": [{"indices": ["x1", "x2"], "coeff": "1"}, {"indices": ["y1", "y2"], "coeff": "1"}]})
    code, out, _ = run(["sl2", "verify", g, "--s", "3"], capsys)
    assert code == 0 and json.loads(out)["gamma_squared"] == "-2"
    code, out, _ = run(["sl2", "decompose", g], capsys)
    assert code == 0 and json.loads(out)["components"][0]["r"] == 0
    w = files("w.json", {"n": 2, "terms": [{"indices": ["x1", "y1"], "coeff": "1"}, {"indices": ["x2", "y2"], "coeff": "1"}]})
    code, out, _ = run(["sl2", "star", w], capsys)
    assert code == 0 and json.loads(out) == json.loads(open(w).read())
    code, _, err = run(["sl2", "verify", w], capsys)
    assert code == 2 and "nonzero" in err
    bad = files("b.json", {"n": 2, "terms": [{"indices": ["z1"], "coeff": "1"}]})
    assert run(["sl2", "decompose", bad], capsys)[0] == 2


def test_gallery_filter_and_failures(tmp_path, capsys):
    code, out, _ = run(["gallery", "--filter", "sl2"], capsys)
    assert code == 0
    assert [ln.split()[0] for ln in out.splitlines()[1:-1]] == ["sl2_brackets", "sl2_primitive_dims", "sl2_roundtrip", "sl2_weil"]
    golden = tmp_path / "golden"
    shutil.copytree(gallery.default_golden_dir(), golden)
    target = golden / "square_w1_2.json"
    target.write_text(target.read_text().replace('"1/2"', '"1/3"', 1))
    code, out, _ = run(["gallery", "--filter", "square_w1_2", "--golden-dir", str(golden)], capsys)
    assert code == 1 and "FAIL" in out and "+++ computed" in out
    (golden / "triangle_w1_2.json").unlink()
    code, out, _ = run(["gallery", "--filter", "triangle_w1_2", "--golden-dir", str(golden)], capsys)
    assert code == 1 and "missing golden" in out
    assert run(["gallery", "--filter", "no-such-case"], capsys)[0] == 2


def test_gallery_update_golden(tmp_path, capsys):
    golden = tmp_path / "g"
    code, _, _ = run(["gallery", "--filter", "circle", "--update-golden", "--golden-dir", str(golden)], capsys)
    assert code == 0 and len(list(golden.iterdir())) == 4
    assert run(["gallery", "--filter", "circle", "--golden-dir", str(golden)], capsys)[0] == 0


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "dhtoric", "--help"], capture_output=True, text=True)
    assert res.returncode == 0 and "gallery" in res.stdout
