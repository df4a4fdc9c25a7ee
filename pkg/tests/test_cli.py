import json
import subprocess
import sys
from pathlib import Path

import pytest

from loopweights import cli
from loopweights.serialize import orbit_from_json, root_system_from_json

HERE = Path(__file__).parent
GOLDEN = HERE / "golden"
FIX = HERE / "fixtures"

GOLDEN_CASES = [
    ("roots_a1.json", ["roots", "--family", "A", "--rank", "1", "--format", "json"]),
    ("roots_a2.txt", ["roots", "--family", "A", "--rank", "2"]),
    ("roots_d4.csv", ["roots", "--family", "D", "--rank", "4", "--format", "csv"]),
    ("antidominant_a1_l1.json", ["antidominant", "--family", "A", "--rank", "1", "--level", "1", "--format", "json"]),
    ("antidominant_a2_l1.csv", ["antidominant", "--family", "A", "--rank", "2", "--level", "1", "--format", "csv"]),
    ("orbit_a1_0.json", ["orbit", "--level", "1", "--weight", "0", "--max-energy", "9", "--format", "json"]),
    ("orbit_a1_m1.csv", ["orbit", "--level", "1", "--weight", "-1", "--max-energy", "6", "--format", "csv"]),
    ("orbit_a1_0.txt", ["orbit", "--level", "1", "--weight", "0", "--max-energy", "9"]),
]


def run_cli(args, capsys):
    code = cli.run([str(a) for a in args])
    out, err = capsys.readouterr()
    return code, out, err


def _subprocess(args):
    return subprocess.run([sys.executable, "-m", "loopweights.cli", *args], capture_output=True)


@pytest.mark.parametrize("name,args", GOLDEN_CASES)
def test_golden_bytes(name, args):
    first, second = _subprocess(args), _subprocess(args)
    assert first.returncode == 0 and second.returncode == 0
    assert first.stdout == second.stdout
    assert first.stdout == (GOLDEN / name).read_bytes()


def test_roots_counts(capsys):
    for fam, rank, count in (("A", 2, 6), ("D", 4, 24)):
        code, out, _ = run_cli(["roots", "--family", fam, "--rank", rank, "--format", "json"], capsys)
        assert code == 0 and len(json.loads(out)["roots"]) == count


def test_roots_round_trip(capsys):
    _, out, _ = run_cli(["roots", "--family", "D", "--rank", "5", "--format", "json"], capsys)
    assert root_system_from_json(json.loads(out)).name == "D5"


def test_orbit_round_trip(capsys):
    _, out, _ = run_cli(["orbit", "--rank", "2", "--level", "1", "--weight=-1,0,0", "--max-energy", "3",
                         "--format", "json"], capsys)
    data = json.loads(out)
    lowest, ws = orbit_from_json(data)
    assert lowest.level == 1 and len(ws) == data["count"]
    assert data["norm_invariant"] and data["on_parabola"]


@pytest.mark.parametrize("args,code", [
    (["roots", "--family", "E", "--rank", "6"], 2),
    (["roots", "--rank", "0"], 2),
    (["roots", "--bogus"], 2),
    (["antidominant"], 2),
    (["antidominant", "--level", "-1"], 2),
    (["orbit", "--level", "1", "--weight", "1", "--max-energy", "4"], 3),
    (["orbit", "--level", "1", "--weight", "x", "--max-energy", "4"], 2),
    (["reduce", "--point", "1/2"], 4),
    (["reduce", "--rank", "2", "--point", "1,0"], 2),
    (["cocycle", FIX / "broken.json", FIX / "z.json"], 2),
    (["cocycle", FIX / "missing.json", FIX / "z.json"], 2),
    (["grassmann", FIX / "slow.json", "--window", "8"], 5),
    (["roots", "--threads", "0"], 2),
])
def test_exit_codes(args, code, capsys):
    got, _, err = run_cli(args, capsys)
    assert got == code
    assert err


def test_antidominant_counts(capsys):
    for args, count in ((["--level", "1"], 2), (["--level", "0"], 1), (["--rank", "2", "--level", "1"], 3)):
        _, out, _ = run_cli(["antidominant", *args, "--format", "json"], capsys)
        assert json.loads(out)["count"] == count


def test_orbit_seven_weights(capsys):
    _, out, _ = run_cli(["orbit", "--level", "1", "--weight", "0", "--max-energy", "9", "--format", "json"], capsys)
    assert json.loads(out)["count"] == 7


def test_orbit_csv_one_row_per_weight(capsys):
    _, out, _ = run_cli(["orbit", "--level", "1", "--weight", "-1", "--max-energy", "6", "--format", "csv"], capsys)
    assert len(out.strip().split("\n")) == 1 + 6


def test_reduce(capsys):
    _, out, _ = run_cli(["reduce", "--point", "23/10", "--format", "json"], capsys)
    data = json.loads(out)
    assert data["reduced_simple_values"] == ["3/5"]
    _, out, _ = run_cli(["reduce", "--point", "1/5", "--format", "json"], capsys)
    assert json.loads(out)["word"] == []


def test_cocycle(capsys):
    x, y = FIX / "su2_x1.json", FIX / "su2_y1.json"
    _, out, _ = run_cli(["cocycle", x, y, "--format", "json"], capsys)
    data = json.loads(out)
    assert data["closed_form_exact"] == [-2, 0]
    assert data["difference"] < 1e-10
    _, out, _ = run_cli(["cocycle", x, x, "--format", "json"], capsys)
    assert json.loads(out)["closed_form_exact"] == [0, 0]
    _, out, _ = run_cli(["cocycle", FIX / "identity2.json", y, "--format", "json"], capsys)
    assert json.loads(out)["closed_form_exact"] == [0, 0]
    _, out, _ = run_cli(["cocycle", x, y, "--mode", "float", "--format", "json"], capsys)
    assert "closed_form_exact" not in json.loads(out)


def test_grassmann_reports(capsys):
    _, out, _ = run_cli(["grassmann", FIX / "z.json", "--format", "json"], capsys)
    data = json.loads(out)
    assert data["virtual_dimension"] == -1 and (data["hs_b"], data["hs_c"]) == (1, 0)
    assert data["stabilized"] is True and data["pass"] is True
    _, out, _ = run_cli(["grassmann", FIX / "identity2.json", "--format", "json"], capsys)
    assert json.loads(out)["virtual_dimension"] == 0
    code, out, _ = run_cli(["grassmann", FIX / "singular.json", "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["pass"] is False


def test_grassmann_intersections_and_threads(capsys, monkeypatch):
    monkeypatch.setenv("LOOPWEIGHTS_THREADS", "3")
    _, out, _ = run_cli(["grassmann", FIX / "z.json", "--m=0,2", "--format", "json"], capsys)
    assert json.loads(out)["intersection_dimensions"] == {"0": 0, "2": 1}
    monkeypatch.setenv("LOOPWEIGHTS_THREADS", "many")
    assert run_cli(["grassmann", FIX / "z.json"], capsys)[0] == 2


def test_exp_su2(capsys):
    _, out, _ = run_cli(["exp-su2", "--n", "2", "--t", "1/2", "--format", "json"], capsys)
    data = json.loads(out)
    assert data["unitarity_defect"] < 1e-12
    assert sorted(t["degree"] for t in data["loop"]["terms"]) == [-2, 0, 2]


def test_split(capsys):
    _, out, _ = run_cli(["split", FIX / "su2_x1.json", "--format", "json"], capsys)
    data = json.loads(out)
    assert data["constant"] == [[[0, 0], [1, 0]], [[-1, 0], [0, 0]]]


def test_weyl_and_alcoves(capsys):
    _, out, _ = run_cli(["weyl", "--rank", "3", "--format", "json"], capsys)
    assert json.loads(out)["order"] == 24
    _, out, _ = run_cli(["alcoves", "--rank", "2", "--radius", "3", "--check", "--format", "json"], capsys)
    data = json.loads(out)
    assert data["count"] == data["geometric_count"] == 96 and data["routes_agree"]


def test_output_file(tmp_path, capsys):
    target = tmp_path / "roots.json"
    code, out, _ = run_cli(["roots", "--format", "json", "--output", target], capsys)
    assert code == 0 and out == ""
    assert target.read_bytes() == (GOLDEN / "roots_a1.json").read_bytes()
    assert run_cli(["roots", "--output", tmp_path / "no" / "such" / "dir.json"], capsys)[0] == 2


def test_table_and_csv_everywhere(capsys):
    for fmt in ("table", "csv"):
        for args in (["weyl"], ["reduce", "--point", "1/3"], ["grassmann", FIX / "z.json"]):
            code, out, _ = run_cli([*args, "--format", fmt], capsys)
            assert code == 0 and out
