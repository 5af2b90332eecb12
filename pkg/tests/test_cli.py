import json
import math

import pytest

from ghz_timing.cli import fmt, main, parse_angle, parse_grid
from ghz_timing.config import ConfigError, ConfigFile, dump_config, load_config
from ghz_timing.experiment import preset
from ghz_timing.spacetime import C


@pytest.fixture
def preset_file(tmp_path):
    def make(name, **changes):
        data = json.loads(dump_config(ConfigFile.from_experiment(preset(name))))
        for key, value in changes.items():
            data[key] = value
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(data))
        return str(path)

    return make


def _csv_rows(text):
    lines = text.strip().splitlines()
    header = lines[0].split(",")
    return header, [dict(zip(header, line.split(","))) for line in lines[1:]]


def test_fmt():
    assert fmt(-0.0) == "0"
    assert fmt(1 / 3) == "0.333333333333"
    assert fmt(1.0) == "1"


@pytest.mark.parametrize("text, value", [("2pi", 2 * math.pi), ("π/2", math.pi / 2), ("-pi", -math.pi), ("0.5*pi", math.pi / 2), ("1.5", 1.5)])
def test_parse_angle(text, value):
    assert parse_angle(text) == pytest.approx(value)


def test_parse_grid():
    assert len(parse_grid("0:2pi:13")) == 13
    with pytest.raises(ValueError):
        parse_grid("0:1")


def test_config_round_trip(tmp_path):
    cfg = preset("aaa")
    path = tmp_path / "aaa.json"
    path.write_text(dump_config(ConfigFile.from_experiment(cfg)))
    assert load_config(path).to_experiment() == cfg


def test_unknown_key_rejected(preset_file):
    path = preset_file("bbb", delta_t=2e-12)
    with pytest.raises(ConfigError):
        load_config(path)
    assert main(["classify", path]) == 2


def test_bad_json_and_missing_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["classify", str(bad)]) == 2
    assert main(["classify", str(tmp_path / "missing.json")]) == 2


def test_classify_bbb(preset_file, capsys):
    assert main(["classify", preset_file("bbb")]) == 0
    assert "regime: Before, Before, Before" in capsys.readouterr().out


def test_classify_at_rest(tmp_path, capsys):
    data = {
        "devices": [
            {"position_m": [0, 0, 0], "choice_time_s": 1.0},
            {"position_m": [10, 0, 0], "choice_time_s": 1.0},
            {"position_m": [20, 0, 0], "choice_time_s": 0.0},
        ]
    }
    path = tmp_path / "rest.json"
    path.write_text(json.dumps(data))
    assert main(["classify", str(path)]) == 0
    assert "regime: After, After, Before" in capsys.readouterr().out


def test_classify_light_speed_exit_3(preset_file, capsys):
    devices = json.loads(open(preset_file("bbb")).read())["devices"]
    devices[0]["velocity_mps"] = [C, 0, 0]
    assert main(["classify", preset_file("bbb", devices=devices)]) == 3


def test_scan_aab_csv(preset_file, tmp_path):
    out = tmp_path / "scan.csv"
    assert main(["scan", preset_file("aab"), "--grid", "0:2pi:13", "--out", str(out)]) == 0
    header, rows = _csv_rows(out.read_text())
    assert header == ["delta", "e_qm", "e_ms", "regime"]
    assert len(rows) == 13
    assert rows[3]["e_qm"] == "1" and rows[3]["e_ms"] == "0"
    assert all(r["regime"] == "a/a/b" for r in rows)


def test_scan_bbb_and_aaa(preset_file, capsys):
    assert main(["scan", preset_file("bbb"), "--grid", "0:2pi:13"]) == 0
    _, rows = _csv_rows(capsys.readouterr().out)
    assert {r["e_ms"] for r in rows} == {"0"}
    assert main(["scan", preset_file("aaa"), "--grid", "0:2pi:13"]) == 0
    _, rows = _csv_rows(capsys.readouterr().out)
    assert float(rows[1]["e_ms"]) == pytest.approx(0.125, abs=1e-11)


def test_scan_byte_stable(preset_file, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["scan", preset_file("aaa"), "--grid", "0:pi:7", "--out", str(a)])
    main(["scan", preset_file("aaa"), "--grid", "0:pi:7", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_sample_qm_quarter_turn(preset_file, tmp_path, capsys):
    path = preset_file("bbb", phases={"alpha": math.pi / 2})
    out = tmp_path / "counts.csv"
    assert main(["sample", path, "--theory", "qm", "--n", "100000", "--seed", "4", "--out", str(out)]) == 0
    _, rows = _csv_rows(out.read_text())
    for r in rows:
        if int(r["rho"]) * int(r["sigma"]) * int(r["omega"]) == -1:
            assert r["count"] == "0"
    assert sum(int(r["count"]) for r in rows) == 100000


def test_sample_ms_aab(preset_file, capsys):
    path = preset_file("aab", phases={"alpha": math.pi / 2})
    assert main(["sample", path, "--theory", "ms", "--n", "1000000", "--seed", "12"]) == 0
    line = [l for l in capsys.readouterr().out.splitlines() if l.startswith("E_hat")][0]
    e_hat, stderr = (float(x) for x in line.replace("E_hat =", "").split("+/-"))
    assert abs(e_hat) < 4 * stderr


def test_sample_deterministic_bytes(preset_file, capsys):
    path = preset_file("aaa", phases={"alpha": 0.7})
    main(["sample", path, "--theory", "ms", "--n", "20000", "--seed", "9"])
    first = capsys.readouterr().out
    main(["sample", path, "--theory", "ms", "--n", "20000", "--seed", "9"])
    assert capsys.readouterr().out == first


def test_sample_rejects_bad_n(preset_file):
    assert main(["sample", preset_file("bbb"), "--n", "0"]) == 2


def test_feasibility(capsys):
    assert main(["feasibility", "--delta-t", "2e-12", "--velocity", "2500"]) == 0
    assert "D_min = c^2 * dt / V = 71.9004142989 m" in capsys.readouterr().out
    main(["feasibility", "--delta-t", "2e-12", "--velocity", "2500", "--distance", "100"])
    assert "PASS" in capsys.readouterr().out
    main(["feasibility", "--delta-t", "2e-12", "--velocity", "2500", "--distance", "50"])
    assert "FAIL" in capsys.readouterr().out
    assert main(["feasibility", "--delta-t", "0", "--velocity", "2500"]) == 2
    assert main(["feasibility", "--delta-t", "2e-12", "--velocity", "-1"]) == 2


def test_validate_and_predict(preset_file, capsys):
    assert main(["validate", preset_file("aaa")]) == 0
    assert "overall: PASS" in capsys.readouterr().out
    assert main(["predict", preset_file("aaa", phases={"alpha": math.pi / 6})]) == 0
    out = capsys.readouterr().out
    assert "1,1,1,0.1875,0.140625" in out


def test_preset_command(tmp_path):
    out = tmp_path / "p.json"
    assert main(["preset", "aab", "--out", str(out)]) == 0
    assert load_config(out).intent == "a/a/b"
