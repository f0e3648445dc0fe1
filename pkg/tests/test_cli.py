import csv
import json

import numpy as np
import pytest

from pareto_forge.cli import build_config, ConfigError, main
from pareto_forge.dominance import nondominated_mask


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def test_run_writes_outputs(tmp_path):
    out = tmp_path / "r"
    assert main(["run", "--problem", "zdt1", "--algo", "sslpsa", "--seed", "7", "--generations", "5", "--out", str(out)]) == 0
    for name in ("front.csv", "decisions.csv", "trace.csv", "result.json"):
        assert (out / name).exists()
    header, rows = read_csv(out / "front.csv")
    assert header == ["f1", "f2"]
    F = np.array(rows, dtype=float)
    assert nondominated_mask(F).all()
    dheader, drows = read_csv(out / "decisions.csv")
    assert len(dheader) == 30 and len(drows) == len(rows)
    theader, trows = read_csv(out / "trace.csv")
    assert theader[:2] == ["generation", "archive_size"] and len(trows) == 5
    text = (out / "front.csv").read_text()
    assert text.endswith("\n") and text.count("f1,f2") == 1


def test_run_is_byte_identical_and_result_json_round_trips(tmp_path):
    args = ["run", "--problem", "sch", "--seed", "3", "--generations", "6"]
    assert main(args + ["--out", str(tmp_path / "a")]) == 0
    assert main(args + ["--out", str(tmp_path / "b")]) == 0
    assert (tmp_path / "a" / "front.csv").read_bytes() == (tmp_path / "b" / "front.csv").read_bytes()
    result = json.loads((tmp_path / "a" / "result.json").read_text())
    assert result["result"]["archive_size"] == len(read_csv(tmp_path / "a" / "front.csv")[1])
    assert main(["run", "--config", str(tmp_path / "a" / "result.json"), "--out", str(tmp_path / "c")]) == 0
    assert (tmp_path / "c" / "front.csv").read_bytes() == (tmp_path / "a" / "front.csv").read_bytes()


def test_config_precedence(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"problem": "fon", "generations": 3, "xi": 0.3, "seed": 4}))
    out = tmp_path / "o"
    assert main(["run", "--config", str(cfg), "--generations", "2", "--out", str(out)]) == 0
    params = json.loads((out / "result.json").read_text())["result"]["params"]
    assert params["generations"] == 2 and params["xi"] == 0.3 and params["p_mut"] == 0.1


def test_bad_config_exits_2(tmp_path, capsys):
    assert main(["run", "--problem", "bogus", "--out", str(tmp_path)]) == 2
    assert "bogus" in capsys.readouterr().err
    assert main(["run", "--xi", "3", "--out", str(tmp_path)]) == 2
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"problem": "zdt1", "colour": "red"}))
    assert main(["run", "--config", str(cfg)]) == 2
    assert main(["run", "--algo", "spea2"]) == 2
    assert main(["frobnicate"]) == 2


def test_runtime_failure_exits_1(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert main(["run", "--problem", "sch", "--generations", "1", "--out", str(blocker / "sub")]) == 1


def test_build_config_rejects_unknown_keys():
    with pytest.raises(ConfigError):
        build_config({"problme": "zdt1"})
    cfg = build_config({"problem": "ZDT2", "som_units": 4, "pool_size": 8})
    assert cfg.params_for("sslpsa").nu_qabc == 4 and cfg.params_for("sslpsa").pool_size == 8
    assert build_config({"algo": "all"}).algorithms == ("sslpsa", "nsga2")


def test_compare_single_run(tmp_path, monkeypatch):
    monkeypatch.setenv("PARETO_FORGE_THREADS", "1")
    out = tmp_path / "cmp"
    assert main(["compare", "--problem", "sch", "--runs", "1", "--generations", "3", "--seed", "5", "--out", str(out)]) == 0
    header, rows = read_csv(out / "metrics.csv")
    assert header == ["problem", "algorithm", "run", "seed", "gamma", "delta", "igd", "spread", "archive_size", "wall_time"]
    assert len(rows) == 2
    assert [r[1] for r in rows] == ["sslpsa", "nsga2"] and {r[3] for r in rows} == {"5"}
    sheader, srows = read_csv(out / "summary.csv")
    assert len(srows) == 1
    stds = [float(v) for h, v in zip(sheader, srows[0]) if h.startswith("std_")]
    assert len(stds) == 8 and all(v == 0.0 for v in stds)


def test_compare_row_count_and_seeds(tmp_path, monkeypatch):
    monkeypatch.setenv("PARETO_FORGE_THREADS", "2")
    out = tmp_path / "cmp"
    assert main(["compare", "--problem", "fon", "--algo", "sslpsa", "--runs", "3", "--generations", "2",
                 "--seed", "10", "--out", str(out)]) == 0
    _, rows = read_csv(out / "metrics.csv")
    assert [(r[2], r[3]) for r in rows] == [("0", "10"), ("1", "11"), ("2", "12")]
    assert (out / "runs" / "sslpsa_002" / "front.csv").exists()


def test_front_command(tmp_path):
    path = tmp_path / "zdt1.csv"
    assert main(["front", "--problem", "zdt1", "--k", "3", "--out", str(path)]) == 0
    header, rows = read_csv(path)
    assert header == ["f1", "f2"]
    assert np.allclose(np.array(rows, float), [[0, 1], [0.5, 1 - np.sqrt(0.5)], [1, 0]])
    assert path.read_text().count("f1,f2") == 1
    fon = tmp_path / "fon.csv"
    assert main(["front", "--problem", "fon", "--k", "1000", "--out", str(fon)]) == 0
    F = np.array(read_csv(fon)[1], float)
    assert len(F) == 1000 and nondominated_mask(F).all()
    assert np.all(np.diff(F[:, 0]) >= 0)
    assert main(["front", "--problem", "nope", "--out", str(path)]) == 2
