import json

import pytest

from irssim.cli import main
from irssim.report import sha256_file, verify_manifest


def _cfg(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


@pytest.fixture()
def conv_cfg(tmp_path):
    return _cfg(tmp_path, "conv.json", {"mode": "conventional", "carrier_ghz": 28})


@pytest.fixture()
def irs_cfg(tmp_path):
    return _cfg(tmp_path, "irs.json", {"mode": "irs", "carrier_ghz": 28})


def test_sweep_writes_outputs(conv_cfg, tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["sweep", "--config", conv_cfg, "--grid", "11",
                 "--out", str(out)]) == 0
    assert (out / "map.csv").is_file()
    assert (out / "summary.txt").is_file()
    assert verify_manifest(out / "manifest.json")
    assert "sweep ok" in capsys.readouterr().out
    assert len((out / "map.csv").read_text().splitlines()) == 122


def test_sweep_random_drop(conv_cfg, tmp_path):
    out = tmp_path / "out"
    assert main(["sweep", "--config", conv_cfg, "--random", "50",
                 "--seed", "9", "--out", str(out)]) == 0
    assert len((out / "map.csv").read_text().splitlines()) == 51


def test_sweep_deterministic_output_bytes(conv_cfg, tmp_path):
    out1, out2 = tmp_path / "o1", tmp_path / "o2"
    for out in (out1, out2):
        assert main(["sweep", "--config", conv_cfg, "--grid", "21",
                     "--out", str(out)]) == 0
    assert sha256_file(out1 / "map.csv") == sha256_file(out2 / "map.csv")


def test_sweep_grid_and_random_conflict(conv_cfg, tmp_path):
    with pytest.raises(SystemExit) as err:
        main(["sweep", "--config", conv_cfg, "--grid", "5",
              "--random", "10", "--out", str(tmp_path / "o")])
    assert err.value.code == 2


def test_config_error_exit_code(tmp_path):
    bad = _cfg(tmp_path, "bad.json", {"micro": {"transmit_power_w": -1}})
    assert main(["sweep", "--config", bad, "--out", str(tmp_path / "o")]) == 2
    missing = str(tmp_path / "absent.json")
    assert main(["sweep", "--config", missing, "--out", str(tmp_path / "o")]) == 2
    typo = _cfg(tmp_path, "typo.json", {"transmitt_power": 4})
    assert main(["sweep", "--config", typo, "--out", str(tmp_path / "o")]) == 2


def test_io_error_exit_code(conv_cfg, tmp_path):
    blocker = tmp_path / "blocked"
    blocker.write_text("a file where the out dir should go", encoding="utf-8")
    assert main(["sweep", "--config", conv_cfg, "--grid", "5",
                 "--out", str(blocker)]) == 4


def test_compare_writes_both_maps(conv_cfg, irs_cfg, tmp_path, capsys):
    out = tmp_path / "cmp"
    assert main(["compare", "--conv", conv_cfg, "--irs", irs_cfg,
                 "--grid", "21", "--out", str(out)]) == 0
    assert (out / "conv.csv").is_file() and (out / "irs.csv").is_file()
    assert verify_manifest(out / "manifest.json")
    assert "compare ok: edge_min delta +" in capsys.readouterr().out
    text = (out / "summary.txt").read_text(encoding="utf-8")
    assert "deltas (irs - conventional)" in text


def test_compare_mismatched_carrier_is_config_error(conv_cfg, tmp_path):
    irs90 = _cfg(tmp_path, "irs90.json", {"mode": "irs", "carrier_ghz": 90})
    assert main(["compare", "--conv", conv_cfg, "--irs", irs90,
                 "--out", str(tmp_path / "o")]) == 2


def test_optimize_power(tmp_path, capsys):
    cfg = _cfg(tmp_path, "opt.json",
               {"mode": "conventional", "carrier_ghz": 28,
                "macro_bs": {"position": [210.0, 210.0, 25.0]}})
    out = tmp_path / "opt"
    assert main(["optimize", "--config", cfg, "--target", "0.85",
                 "--var", "power", "--bracket", "0.5", "6.0",
                 "--tol", "1e-3", "--out", str(out)]) == 0
    text = (out / "summary.txt").read_text(encoding="utf-8")
    assert "transmit_power_w" in text
    assert "energy saving vs 6.0 W baseline" in text
    assert verify_manifest(out / "manifest.json")
    assert "optimize ok" in capsys.readouterr().out


def test_optimize_elements(tmp_path):
    cfg = _cfg(tmp_path, "opt.json",
               {"mode": "irs", "carrier_ghz": 90,
                "micro": {"transmit_power_w": 2.0}})
    out = tmp_path / "opt"
    assert main(["optimize", "--config", cfg, "--target", "0.8",
                 "--var", "elements", "--bracket", "1", "64",
                 "--out", str(out)]) == 0
    text = (out / "summary.txt").read_text(encoding="utf-8")
    assert "element_count" in text


def test_optimize_bracket_failure_exit_code(conv_cfg, tmp_path):
    # default geometry: even 0.5 W clears 0.5 edge probability
    assert main(["optimize", "--config", conv_cfg, "--target", "0.5",
                 "--var", "power", "--bracket", "0.5", "6.0",
                 "--out", str(tmp_path / "o")]) == 3


def test_optimize_infeasible_exit_code(tmp_path):
    cfg = _cfg(tmp_path, "opt.json",
               {"mode": "irs", "carrier_ghz": 90,
                "micro": {"transmit_power_w": 0.001}})
    assert main(["optimize", "--config", cfg, "--target", "0.999999",
                 "--var", "elements", "--bracket", "1", "2",
                 "--out", str(tmp_path / "o")]) == 3
