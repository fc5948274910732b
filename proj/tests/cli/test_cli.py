import csv
import io
import json
import os
import pathlib
import subprocess

import jsonschema
import pytest

BIN = os.environ.get("BOHRWAVE_BIN", "bohrwave")
SCHEMA = json.loads((pathlib.Path(__file__).resolve().parents[2] / "schema" / "result_envelope.schema.json").read_text())


def run(*args, env=None, check=None):
    full_env = {k: v for k, v in os.environ.items() if not k.startswith("BOHRWAVE_") or k == "BOHRWAVE_BIN"}
    full_env.update(env or {})
    proc = subprocess.run([BIN, *args], capture_output=True, text=True, env=full_env)
    if check is not None:
        assert proc.returncode == check, proc.stderr
    return proc


def as_json(*args, **kw):
    proc = run(*args, "--format", "json", **kw)
    doc = json.loads(proc.stdout)
    jsonschema.validate(doc, SCHEMA)
    return proc, doc


def read_csv(text):
    lines = text.splitlines()
    assert lines[0].startswith("# bohrwave ")
    assert lines[1].startswith("# envelope: ")
    envelope = json.loads(lines[1][len("# envelope: "):])
    return envelope, list(csv.reader(io.StringIO("\n".join(lines[2:]))))


def test_table_matches_published_values():
    proc = run("table", check=0)
    _, rows = read_csv(proc.stdout)
    assert rows[0] == ["quantity", "n=1/2", "n=1", "n=3/2", "n=2", "n=5/2", "n=10"]
    assert rows[1] == ["m_plus", "34.75", "138", "309.75", "550", "858.75", "13710"]
    assert rows[2] == ["m_minus", "33.75", "136", "306.75", "546", "853.75", "13690"]


def test_table_b2_halves():
    _, rows = read_csv(run("table", "--b", "2", "--n", "1,2", check=0).stdout)
    assert rows[1][1:] == ["69", "275"]
    assert rows[2][1:] == ["68", "273"]


def test_orbit_rows_and_flags():
    _, rows = read_csv(run("orbit", "--alpha-inv", "137", "--b", "1", "--n", "1,2,10", check=0).stdout)
    header = rows[0]
    data = [dict(zip(header, r)) for r in rows[1:]]
    assert [d["m_plus"] for d in data] == ["138", "550", "13710"]
    assert [d["m_minus"] for d in data] == ["136", "546", "13690"]
    half = dict(zip(header, read_csv(run("orbit", "--n", "0.5", check=0).stdout)[1][1]))
    assert half["selection_ok"] == "0"
    assert float(half["selection_residual"]) == 0.25


def test_orbit_rejects_alpha_above_bound():
    proc = run("orbit", "--alpha", "0.7", check=2)
    assert "params.alpha" in proc.stderr


def test_solver_error_names_n():
    proc = run("orbit", "--n", "1,0.001")
    assert proc.returncode == 3
    assert "n = 0.001" in proc.stderr


def test_empty_n_is_usage_error():
    assert run("table", "--n", "").returncode == 2


def test_csv_round_trip_is_exact():
    _, doc = as_json("orbit", "--n", "1,2,3")
    _, rows = read_csv(run("orbit", "--n", "1,2,3", check=0).stdout)
    for jrow, crow in zip(doc["payload"]["rows"], rows[1:]):
        for jv, cv in zip(jrow, crow):
            if jv is None:
                assert cv == ""
            else:
                assert float(cv) == jv


def test_determinism_and_threads(tmp_path):
    outs = []
    for threads in ("1", "3", "0"):
        out = tmp_path / f"map{threads}.csv"
        run("field-map", "--preset", "fig5", "--grid-n", "48", "--threads", threads, "-o", str(out), check=0)
        outs.append(out.read_bytes())
    assert outs[0] == outs[1] == outs[2]


def test_timestamp_only_on_request():
    _, doc = as_json("orbit")
    assert "timestamp" not in doc["provenance"]
    _, doc = as_json("orbit", "--timestamp")
    assert "timestamp" in doc["provenance"]


def test_grid_floor():
    run("field-map", "--grid-n", "16", check=0)
    proc = run("field-map", "--grid-n", "15", check=2)
    assert "grid_n" in proc.stderr


def test_field_map_metadata():
    _, doc = as_json("field-map", "--preset", "fig5", "--grid-n", "64")
    meta = doc["metadata"]
    assert meta["local_maxima"]["count"] == 2
    assert doc["payload"]["columns"] == ["x", "z", "intensity"]
    assert len(doc["payload"]["rows"]) == 64 * 64


def test_orbit_wave_fig1():
    _, doc = as_json("orbit-wave", "--preset", "fig1", "--samples", "2048")
    curves = doc["metadata"]["curves"]
    assert [c["n"] for c in curves] == [1, 2, 3]
    for c in curves:
        assert c["closure"] < 1e-10
        assert c["phase_zero_count"] == c["expected_phase_zero_count"]
        assert c["envelope_zero_count"] == c["expected_envelope_zero_count"]
        assert "warning" not in c
    kinds = {(row[0], row[1]) for row in doc["payload"]["rows"]}
    assert len(kinds) == 9


def test_orbit_wave_undersampling_warning():
    _, doc = as_json("orbit-wave", "--preset", "fig1", "--n", "3", "--samples", "64")
    assert "warning" in doc["metadata"]["curves"][0]


def test_integrate_zero_periods_echoes_initial_state():
    _, rows = read_csv(run("integrate", "--periods", "0", check=0).stdout)
    assert len(rows) == 2
    assert rows[1][0] == "0"


def test_integrate_detuned_slope():
    _, doc = as_json("integrate", "--periods", "2", "--omega-p-scale", "1.01")
    c = doc["metadata"]["constraint"]
    assert c["phase_slope"] == pytest.approx(c["expected_detuning_slope"], rel=1e-5)


def test_integrate_invalid_tolerance():
    assert run("integrate", "--tol", "-1").returncode == 2


def test_check_passes_and_fails():
    proc = run("check", check=0)
    assert proc.stdout.strip().splitlines()[-1] == "summary: 13/13 passed"
    proc = run("check", "--xi", "3", "--n", "1", check=4)
    line = next(l for l in proc.stdout.splitlines() if "quantum_potential" in l)
    assert line.startswith("FAIL") and "predicted" in line
    proc = run("check", "--n", "0.5", check=4)
    assert any(l.startswith("FAIL") and "selection_rule" in l for l in proc.stdout.splitlines())
    run("check", "--n", "1,2", "--no-strict", check=0)


def test_check_report_json():
    proc, doc = as_json("check")
    assert proc.returncode == 0
    assert doc["payload"]["kind"] == "report"
    assert doc["payload"]["passed_count"] == len(doc["payload"]["checks"])


def test_every_command_validates():
    for args in (["orbit"], ["table"], ["orbit-wave", "--samples", "32"], ["field-map", "--grid-n", "16"],
                 ["integrate", "--periods", "0.5"]):
        proc, _ = as_json(*args)
        assert proc.returncode == 0


def test_precedence_flags_env_config(tmp_path):
    cfg = tmp_path / "run.toml"
    cfg.write_text('alpha = "1/3"\n[model]\nxi = 1\n[field-map]\ngrid_n = 20\nplane = "meridian"\n')
    _, doc = as_json("field-map", "--config", str(cfg))
    assert doc["input"]["grid_n"] == 20
    assert doc["input"]["plane"] == "meridian"
    assert doc["input"]["params"]["alpha"] == "1/3"
    _, doc = as_json("field-map", "--config", str(cfg), env={"BOHRWAVE_GRID_N": "24"})
    assert doc["input"]["grid_n"] == 24
    _, doc = as_json("field-map", "--config", str(cfg), "--grid-n", "28", env={"BOHRWAVE_GRID_N": "24"})
    assert doc["input"]["grid_n"] == 28
    _, doc = as_json("field-map", env={"BOHRWAVE_CONFIG": str(cfg)})
    assert doc["input"]["grid_n"] == 20


def test_config_errors(tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text("bogus = 1\n")
    proc = run("orbit", "--config", str(bad), check=2)
    assert "bogus" in proc.stderr
    assert run("orbit", "--config", str(tmp_path / "missing.toml")).returncode == 2
    assert run("orbit", "--alpha", "one").returncode == 2
    assert run("orbit", "--m-p", "1").returncode == 2
    assert run("frobnicate").returncode == 2


def test_preset_pins_caption_constants():
    _, doc = as_json("field-map", "--preset", "fig3", "--grid-n", "16")
    p = doc["input"]["params"]
    assert (p["alpha"], p["b"], p["xi_charge"], p["omega0"]) == ("1/3", "1", 1.0, 0.0)
    assert doc["input"]["n"] == "2"
    assert doc["input"]["plane"] == "equatorial"
    _, doc = as_json("table", "--preset", "table2")
    assert doc["input"]["params"]["alpha"] == "1/137"
