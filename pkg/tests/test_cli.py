import json
import subprocess
import sys

import pytest

from quadinc import serialize as ser
from quadinc.cli import run
from quadinc.harness import InstanceSpec, generate_instance
from quadinc.quadric import CONE, HYPERBOLIC_PARABOLOID


@pytest.fixture
def instance_files(tmp_path):
    P, H, V = generate_instance(InstanceSpec("hyperbolic-paraboloid", 25, 25, "ruling-planes", seed=5))
    paths = {name: tmp_path / f"{name}.json" for name in ("points", "planes", "quadric", "instance")}
    ser.save(paths["points"], [ser.point_to_json(p) for p in P])
    ser.save(paths["planes"], {"planes": [ser.plane_to_json(h) for h in H]})
    ser.save(paths["quadric"], ser.quadric_to_json(V))
    ser.save(paths["instance"], ser.instance_to_json(P, H, V))
    return paths


def test_classify(tmp_path, capsys):
    path = tmp_path / "q.json"
    ser.save(path, ser.quadric_to_json(HYPERBOLIC_PARABOLOID))
    assert run(["classify", "--quadric", str(path)]) == 0
    assert capsys.readouterr().out.strip() == "doubly-ruled-nondegenerate"
    ser.save(path, ser.quadric_to_json(CONE))
    assert run(["classify", "--quadric", str(path)]) == 0
    assert capsys.readouterr().out.startswith("cone apex=")


def test_incidence_methods_agree(instance_files, tmp_path):
    out1, out2, out3 = (tmp_path / f"g{i}.csv" for i in range(3))
    base = ["incidence", "--instance", str(instance_files["instance"])]
    assert run(base + ["--out", str(out1)]) == 0
    assert run(base + ["--out", str(out2), "--method", "sweep", "--workers", "2"]) == 0
    assert run(["incidence", "--points", str(instance_files["points"]), "--planes", str(instance_files["planes"]),
                "--out", str(out3)]) == 0
    assert out1.read_bytes() == out2.read_bytes() == out3.read_bytes()
    assert out1.read_text().startswith("point_index,plane_index\n")


def test_decompose_and_verify(instance_files, tmp_path, capsys):
    out = tmp_path / "d.json"
    args = ["decompose", "--points", str(instance_files["points"]), "--planes", str(instance_files["planes"]),
            "--quadric", str(instance_files["quadric"])]
    assert run(args + ["--out", str(out)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "m,n,G0,sumPl,sumHl,bound_quadric,bound_weak,ratio"
    assert lines[1].startswith("25,25,")
    first = out.read_bytes()
    assert run(args + ["--out", str(out)]) == 0
    assert out.read_bytes() == first
    assert run(args + ["--verify", str(out)]) == 0

    # tamper: drop a factor, so coverage fails
    obj = json.loads(first)
    assert obj["factors"]
    obj["factors"].pop()
    ser.save(out, obj)
    assert run(args + ["--verify", str(out)]) == 1
    assert "coverage" in capsys.readouterr().err


def test_decompose_needs_quadric(instance_files, capsys):
    code = run(["decompose", "--points", str(instance_files["points"]), "--planes", str(instance_files["planes"])])
    assert code == 2 and "--quadric" in capsys.readouterr().err


def test_crossratio(tmp_path, capsys):
    A = tmp_path / "A.json"
    A.write_text(json.dumps(["1", "2", "1/2", "3", "1/3"]))
    out, js = tmp_path / "r.csv", tmp_path / "r.json"
    assert run(["crossratio", "--set", str(A), "--kmin", "3", "--out", str(out), "--json", str(js)]) == 0
    rows = out.read_text().splitlines()
    assert rows[0] == "k,N_geq_k,bound_ngek,ratio"
    assert [r.split(",")[0] for r in rows[1:]] == ["3", "4", "5"]
    summary = json.loads(js.read_text())
    assert summary["Q"] >= 120 and summary["N_geq"]["5"] >= 1
    assert "Q=" in capsys.readouterr().out
    first = out.read_bytes(), js.read_bytes()
    assert run(["crossratio", "--set", str(A), "--out", str(out), "--json", str(js)]) == 0
    assert (out.read_bytes(), js.read_bytes()) == first


def test_crossratio_limits(tmp_path, capsys):
    A = tmp_path / "A.json"
    A.write_text(json.dumps([str(i) for i in range(6)]))
    assert run(["crossratio", "--set", str(A), "--max-size", "5"]) == 2
    with pytest.raises(SystemExit) as exc:
        run(["crossratio", "--set", str(A), "--kmin", "2"])
    assert exc.value.code == 2
    assert "--kmin" in capsys.readouterr().err


def test_experiment(tmp_path):
    config = tmp_path / "c.json"
    config.write_text(json.dumps([
        {"quadric_kind": "paraboloid", "m": 15, "n": 15, "seed": 1},
        {"quadric_kind": "cone", "m": 15, "n": 15, "plane_strategy": "ruling-planes"},
    ]))
    out = tmp_path / "e.csv"
    assert run(["experiment", "--config", str(config), "--out", str(out)]) == 0
    first = out.read_bytes()
    assert len(first.decode().splitlines()) == 3
    assert run(["experiment", "--config", str(config), "--out", str(out)]) == 0
    assert out.read_bytes() == first
    assert run(["experiment", "--config", str(config), "--out", str(out), "--seed", "3"]) == 0
    assert out.read_bytes() != first


def test_experiment_bad_spec(tmp_path):
    config = tmp_path / "c.json"
    config.write_text(json.dumps([{"quadric_kind": "torus", "m": 3, "n": 3}]))
    assert run(["experiment", "--config", str(config)]) == 2
    config.write_text(json.dumps([{"kind": "sphere"}]))
    assert run(["experiment", "--config", str(config)]) == 2


def test_experiment_failure_exit_code(tmp_path):
    config = tmp_path / "c.json"
    config.write_text(json.dumps([{"quadric_kind": "sphere", "m": 2, "n": 3}]))
    assert run(["experiment", "--config", str(config), "--out", str(tmp_path / "e.csv")]) == 1


def test_bounds(capsys):
    assert run(["bounds", "--m", "8", "--n", "8"]) == 0
    out = capsys.readouterr().out
    assert "quadric = 55.603064404283973799" in out
    assert run(["bounds", "--ngek", "10", "4"]) == 0
    assert "1157.8125" in capsys.readouterr().out
    assert run(["bounds", "--m", "8"]) == 2
    assert run(["bounds", "--m", "0", "--n", "3"]) == 2


def test_input_errors(tmp_path, capsys):
    assert run(["classify", "--quadric", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["classify", "--quadric", str(bad)]) == 2
    dup = tmp_path / "dup.json"
    ser.save(dup, {"points": [{"x": "0", "y": "0", "z": "0"}] * 2, "planes": []})
    assert run(["incidence", "--instance", str(dup)]) == 2
    with pytest.raises(SystemExit) as exc:
        run(["nonsense"])
    assert exc.value.code == 2


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "quadinc", "bounds", "--m", "1", "--n", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "quadric = 4" in proc.stdout
