import json
import subprocess
import sys
from pathlib import Path

import pytest

from chartensor.cli import main
from chartensor.io import corpus_text

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_flat_passes(capsys):
    code, out, _ = run(capsys, "check", "flat_e2")
    assert code == 0
    assert json.loads(out)["verdict"] == "pass"


def test_check_accepts_input_flag_and_file(tmp_path, capsys):
    p = tmp_path / "flat.json"
    p.write_text(corpus_text("flat_e2"))
    code, out, _ = run(capsys, "check", "--input", str(p))
    assert code == 0 and json.loads(out)["verdict"] == "pass"


def test_build_sphere(capsys):
    code, out, _ = run(capsys, "build", "sphere_s2")
    doc = json.loads(out)
    assert code == 0
    assert doc["killing_inertia"] == [0, 3, 0]
    assert doc["jacobi"] == "pass"
    assert doc["structure_constants"][1][2] == [1, 0, 0]


def test_build_flat_json_bytes(capsys):
    code, out, _ = run(capsys, "build", "flat_e2")
    assert code == 0
    doc = json.loads(out)
    assert doc["structure_constants"] == [
        [[0, 0, 0], [0, 0, 1], [0, -1, 0]],
        [[0, 0, -1], [0, 0, 0], [0, 0, 0]],
        [[0, 1, 0], [0, 0, 0], [0, 0, 0]],
    ]


def test_build_refuses_uncertified(capsys):
    code, out, _ = run(capsys, "build", "sphere_s2_bad_curvature")
    assert code == 1 and "certificate" in json.loads(out)


def test_corrupted_sphere_names_invariance(capsys):
    code, out, _ = run(capsys, "check", "sphere_s3_scaled_pair")
    doc = json.loads(out)
    assert code == 1
    assert [c["name"] for c in doc["checks"] if not c["pass"]] == ["inf_invariance_R"]


def test_reduce_torsion_output_is_an_instance(tmp_path, capsys):
    out_path = tmp_path / "reduced.json"
    code, _, _ = run(capsys, "reduce-torsion", "liegroup_so3_minus_connection", "-o", str(out_path))
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc["T0"] == []
    assert doc["lambda"][0] == [[0, 0, 0], [0, 0, "-1/2"], [0, "1/2", 0]]
    assert "note" in doc["metadata"]["reduction"]
    code, out, _ = run(capsys, "build", str(out_path))
    assert code == 0 and json.loads(out)["killing_inertia"] == [0, 3, 0]


def test_realize_sphere(capsys):
    code, out, _ = run(capsys, "realize", "sphere_s2", "--fd-step", "1e-4", "--tol", "1e-6", "--seed", "7")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "pass"
    assert len(doc["curvature"]["points"]) == 7


def test_realize_abelian_unsupported(capsys):
    code, out, _ = run(capsys, "realize", "abelian_r2")
    assert code == 0 and json.loads(out)["status"] == "unsupported"


def test_text_format(capsys):
    code, out, _ = run(capsys, "build", "sphere_s2", "--format", "text")
    assert code == 0 and "[e1, e2] = 1*h1" in out


@pytest.mark.parametrize("argv", [["check", "no_such_instance"], ["check"], ["check", "hyperbolic_h2_bad_generator", "-i", "flat_e2"]])
def test_input_errors_exit_2(argv, capsys):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_bad_instance_file_exit_2(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"dimension": 2, "R0": [{"i": 1, "j": 1, "matrix": [[0,0],[0,0]]}]}')
    code, _, err = run(capsys, "check", str(p))
    assert code == 2 and "i<j required" in err


def test_generators_flag_without_generators(capsys):
    code, _, err = run(capsys, "check", "flat_e2", "--generators")
    assert code == 2 and "group_generators" in err


def test_output_is_deterministic(capsys):
    first = run(capsys, "realize", "sphere_s3", "--seed", "3")[1]
    assert run(capsys, "realize", "sphere_s3", "--seed", "3")[1] == first


@pytest.mark.parametrize("golden", sorted(GOLDEN.glob("*.json")), ids=lambda p: p.stem)
def test_negative_controls_match_golden(golden, capsys):
    g = json.loads(golden.read_text())
    argv = ["check", g["instance"]] + (["--generators"] if g["generators"] else [])
    code, out, _ = run(capsys, *argv)
    doc = json.loads(out)
    failing = [c for c in doc["checks"] if not c["pass"]]
    assert code == 1
    assert [c["name"] for c in failing] == [g["failing"]]
    for key, value in g["witness"].items():
        assert failing[0]["witness"][key] == value


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "chartensor", "check", "sphere_s2"], capture_output=True, text=True)
    assert res.returncode == 0 and '"verdict": "pass"' in res.stdout
