import json
import pytest

from pcim.cli import EXIT_BUDGET, EXIT_INVALID, EXIT_OK, main
from pcim.maps import load_map


@pytest.fixture
def maps(tmp_path):
    d = tmp_path / "maps"
    d.mkdir()
    assert main(["gallery", "--out", str(d)]) == EXIT_OK
    return d


def _write(path, doc):
    path.write_text(json.dumps(doc))
    return path


def test_gallery_round_trip(maps, E1, E2):
    assert load_map(maps / "E1.json") == E1
    assert load_map(maps / "E2.json") == E2
    doc = json.loads((maps / "E2.json").read_text())
    assert doc["endpoints"][1] == "2/3"


@pytest.mark.parametrize(
    "cmd",
    [
        ["validate"],
        ["orbit", "--start", "d1+"],
        ["atoms", "--depth", "6"],
        ["complexity", "--horizon", "2000", "--n-max", "10"],
        ["classes", "--horizon", "2000"],
        ["decompose", "--depth", "8"],
        ["cross-validate", "--grid", "11", "--depth", "8"],
    ],
)
def test_commands_succeed_and_are_deterministic(cmd, maps, tmp_path, capsys):
    outputs = []
    for k in range(2):
        out = tmp_path / f"run{k}"
        out.mkdir()
        assert main([cmd[0], str(maps / "E2.json"), "--out", str(out), *cmd[1:]]) == EXIT_OK
        outputs.append({p.name: p.read_bytes() for p in sorted(out.iterdir())})
    assert outputs[0] == outputs[1]
    assert outputs[0] or cmd[0] == "classes"


def test_decompose_outputs(maps, tmp_path, capsys):
    assert main(["decompose", str(maps / "E1.json"), "--out", str(tmp_path)]) == EXIT_OK
    doc = json.loads((tmp_path / "E1.report.json").read_text())
    assert doc["N1"] == 2 and doc["N2"] == 0
    assert all(a["status"] == "PASS" for a in doc["bound_audit"])
    assert (tmp_path / "E1.spectral.svg").exists()
    assert "N1 = 2, N2 = 0" in capsys.readouterr().out


def test_formats_filter(maps, tmp_path):
    out = tmp_path / "out"
    assert main(["atoms", str(maps / "E1.json"), "--out", str(out), "--formats", "csv", "--depth", "3"]) == EXIT_OK
    assert sorted(p.name for p in out.iterdir()) == ["E1.atoms.csv"]
    with pytest.raises(SystemExit) as exc:
        main(["atoms", str(maps / "E1.json"), "--formats", "pdf"])
    assert exc.value.code == EXIT_INVALID


def test_env_out_dir(maps, tmp_path, monkeypatch):
    target = tmp_path / "env"
    monkeypatch.setenv("PCIM_OUT", str(target))
    assert main(["orbit", str(maps / "E1.json"), "--start", "1/3"]) == EXIT_OK
    assert (target / "E1.orbit.csv").exists()
    doc = json.loads((target / "E1.orbit.json").read_text())
    assert doc["point"] == "0/1" and doc["value"] == "1/3"


def test_invalid_maps_exit_2(tmp_path, capsys):
    good = {"endpoints": ["0", "1/2", "1"], "branches": [{"slope": "1/2", "intercept": "0"}, {"slope": "1/2", "intercept": "1/2"}]}
    bad_slope = json.loads(json.dumps(good))
    bad_slope["branches"][0]["slope"] = "3/2"
    assert main(["validate", str(_write(tmp_path / "a.json", bad_slope))]) == EXIT_INVALID
    assert "NonContracting" in capsys.readouterr().err
    decimal = json.loads(json.dumps(good))
    decimal["endpoints"][1] = "0.5"
    assert main(["validate", str(_write(tmp_path / "b.json", decimal))]) == EXIT_INVALID
    escaping = json.loads(json.dumps(good))
    escaping["branches"][1]["intercept"] = "7/8"
    assert main(["validate", str(_write(tmp_path / "c.json", escaping))]) == EXIT_INVALID
    assert main(["validate", str(tmp_path / "missing.json")]) == EXIT_INVALID


def test_bad_start_and_short_word(maps, tmp_path):
    assert main(["orbit", str(maps / "E1.json"), "--start", "1/2", "--out", str(tmp_path)]) == EXIT_INVALID
    assert main(["orbit", str(maps / "E1.json"), "--start", "2", "--out", str(tmp_path)]) == EXIT_INVALID
    assert main(["complexity", str(maps / "E1.json"), "--horizon", "10", "--n-max", "30", "--out", str(tmp_path)]) == EXIT_INVALID


def test_undetermined_exits_3(tmp_path):
    # d1- is the cut point itself
    doc = {"endpoints": ["0", "1/2", "1"], "branches": [{"slope": "1/2", "intercept": "1/4"}, {"slope": "1/2", "intercept": "1/4"}]}
    path = _write(tmp_path / "m.json", doc)
    assert main(["decompose", str(path), "--out", str(tmp_path), "--depth", "6"]) == EXIT_BUDGET
    report = json.loads((tmp_path / "m.report.json").read_text())
    assert "d1-" in report["undetermined"]


def test_eps_option(maps, tmp_path):
    args = ["classes", str(maps / "E2.json"), "--out", str(tmp_path), "--eps", "1/10,1/100"]
    assert main(args) == EXIT_OK
    args[-1] = "1/100,1/10"
    assert main(args) == EXIT_INVALID
