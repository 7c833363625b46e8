import json

import numpy as np
import pytest

from helicity_algebra.cli import TARGETS, derivation_text, main, snapshot
from helicity_algebra.fields import Lattice
from helicity_algebra.serialization import read_grid, write_grid


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("target", TARGETS)
def test_derive_matches_snapshot(capsys, target):
    code, out, _ = run(capsys, "derive", target)
    assert code == 0
    assert out == snapshot(target)
    assert derivation_text(target) + "\n" == snapshot(target)


def test_derive_json_is_deterministic(capsys):
    _, first, _ = run(capsys, "derive", "nabla-f", "--format", "json")
    _, second, _ = run(capsys, "derive", "nabla-f", "--format", "json")
    assert first == second
    data = json.loads(first)
    assert [g["label"] for g in data["groups"]][0] == "divE"


def test_derive_weyl_split_json(capsys):
    _, out, _ = run(capsys, "derive", "weyl-split", "--format", "json")
    data = json.loads(out)
    assert data["factor"] == "i/2"
    assert [s["index"] for s in data["spinors"]] == list(range(1, 9))


def test_unknown_target(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["derive", "nabla-b"])
    assert excinfo.value.code == 2


def test_decompose_text(capsys):
    code, out, _ = run(capsys, "decompose", "--n", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "C3: epsilon = i"
    assert "central: ok" in lines
    assert lines[-1] == "pseudo-conjugation: swap"


def test_decompose_json(capsys):
    code, out, _ = run(capsys, "decompose", "--n", "5", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["epsilon"] == "1"
    assert data["conjugation"] == "fix"
    assert all(data["laws"].values())
    assert data["lambda_plus"]["terms"][1]["blade"] == [1, 2, 3, 4, 5]


def test_decompose_layout(capsys):
    code, out, _ = run(capsys, "decompose", "--n", "3", "--layout", "direct-sum", "--rank", "2")
    assert code == 0
    assert "layout:" in out and "conjugate:" in out
    assert "00 01 0 0" in out


def test_decompose_even_n(capsys):
    code, out, err = run(capsys, "decompose", "--n", "4")
    assert code == 2
    assert out == ""
    assert err.strip() == "error: n must be odd, got 4"


def test_rep_generators(capsys):
    code, out, _ = run(capsys, "rep", "--basis", "gamma")
    data = json.loads(out)
    assert code == 0
    assert [g["name"] for g in data["generators"]] == ["gamma0", "gamma1", "gamma2", "gamma3", "gamma5"]
    assert data["generators"][4]["matrix"][0][2] == {"re": "-1/1", "im": "0/1"}


def test_rep_element(capsys):
    element = json.dumps({"signature": {"p": 3}, "terms": [{"blade": [1], "re": "1"}]})
    code, out, _ = run(capsys, "rep", "--basis", "pauli", "--element", element)
    data = json.loads(out)
    assert code == 0
    assert data["matrix"][0][1] == {"re": "1/1", "im": "0/1"}
    assert data["matrix"][0][0] == {"re": "0/1", "im": "0/1"}


def test_rep_element_wrong_algebra(capsys):
    element = json.dumps({"signature": {"p": 1, "q": 3}, "terms": [{"blade": [1], "re": "1"}]})
    code, _, err = run(capsys, "rep", "--basis", "pauli", "--element", element)
    assert code == 2
    assert err.startswith("error: ")


def test_check_algebra_suite(capsys):
    code, out, _ = run(capsys, "check", "--suite", "algebra", "--seed", "20011")
    data = json.loads(out)
    assert code == 0
    assert data["seed"] == 20011
    assert data["failed"] == 0
    assert {inv["suite"] for inv in data["invariants"]} == {"algebra"}


def test_field_em_constant_potential(capsys, data_dir):
    code, out, _ = run(capsys, "field", "--input", str(data_dir / "constant_a.json"), "--task", "em")
    data = json.loads(out)
    assert code == 0
    assert set(data["max"].values()) == {0.0}
    assert data["residual"]["lorentz"] == 0.0


def test_field_maxwell_plane_wave(capsys, data_dir, tmp_path):
    out_path = tmp_path / "residuals.json"
    code, out, _ = run(
        capsys, "field", "--input", str(data_dir / "plane_wave_tz.json"), "--task", "maxwell", "--out", str(out_path)
    )
    data = json.loads(out)
    assert code == 0
    assert data["h"] == [0.05, 0.05]
    assert max(data["residual"].values()) < 5e-3
    written = read_grid(out_path)
    assert "divE" in written and "curlH3" in written
    assert np.abs(written["divE"]).max() == 0.0


def test_field_missing_component(capsys, tmp_path):
    lattice = Lattice.cube(3, 0.1, axes=("x", "y", "z"))
    zeros = np.zeros(lattice.extent)
    path = write_grid(lattice.grid({"A0": zeros, "A1": zeros, "A3": zeros}), tmp_path / "a.json")
    code, _, err = run(capsys, "field", "--input", str(path), "--task", "em")
    assert code == 2
    assert "missing components: A2" in err


def test_wave_single_level(capsys):
    code, out, _ = run(capsys, "wave", "--k", "0,0,1", "--refine", "1")
    assert code == 0
    assert len(out.strip().splitlines()) == 2
    assert "order" not in out


def test_wave_json(capsys):
    code, out, _ = run(capsys, "wave", "--k", "3/5,4/5,0", "--helicity", "-", "--refine", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["helicity"] == "-"
    assert data["k"] == [0.6, 0.8, 0.0]
    assert "dh" in data["order"]


def test_wave_irrational_frequency_keeps_spinor_rows(capsys):
    code, out, _ = run(capsys, "wave", "--k", "1,1,0", "--refine", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["boundary"] == "periodic"
    assert {"dh", "split"} <= set(data["order"])


def test_wave_patch_mode(capsys):
    code, out, _ = run(capsys, "wave", "--k", "0,0,1", "--patch", "--refine", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["boundary"] == "patch"
    assert [row["h"] for row in data["rows"]] == [0.05, 0.025]


def test_wave_periodic_spacing_error(capsys):
    code, _, err = run(capsys, "wave", "--k", "0,0,1", "--h", "0.05")
    assert code == 2
    assert "multiple of 8" in err


def test_wave_zero_vector(capsys):
    code, _, err = run(capsys, "wave", "--k", "0,0,0")
    assert code == 2
    assert "nonzero" in err


@pytest.mark.parametrize("argv", [["wave", "--k", "1,2"], ["wave", "--k", "0,0,1", "--helicity", "up"]])
def test_wave_argument_errors(argv):
    with pytest.raises(SystemExit) as excinfo:
        main(argv)
    assert excinfo.value.code == 2
