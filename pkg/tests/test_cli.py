import json
import math

import pytest

from sfqsim.cli import (
    ConfigError,
    build_config,
    format_cell,
    main,
    parse_angle,
    parse_float_list,
    parse_formats,
    parse_int_list,
    parse_seed,
)


# ------------------------------------------------------------ value parsing

@pytest.mark.parametrize(
    "text,expected",
    [
        ("pi", math.pi),
        ("pi/2", math.pi / 2),
        ("3pi/2", 3 * math.pi / 2),
        ("2pi", 2 * math.pi),
        ("0.5pi", 0.5 * math.pi),
        ("1.5707963267948966", 1.5707963267948966),
        (2.0, 2.0),
    ],
)
def test_parse_angle(text, expected):
    assert parse_angle(text) == pytest.approx(expected, rel=1e-15)


def test_parse_angle_rejects_garbage():
    with pytest.raises(ConfigError):
        parse_angle("two pies")
    with pytest.raises(ConfigError):
        parse_angle("pi/0")


def test_parse_lists_and_ranges():
    assert parse_int_list("100") == [100]
    assert parse_int_list("25,50,100") == [25, 50, 100]
    assert parse_int_list("10:20:5") == [10, 15, 20]
    assert parse_float_list("0.1:0.3:0.1") == pytest.approx([0.1, 0.2, 0.3])
    with pytest.raises(ConfigError):
        parse_int_list("10:20")
    with pytest.raises(ConfigError):
        parse_int_list("20:10:5")


def test_parse_formats():
    assert parse_formats("csv,svg") == ("csv", "svg")
    assert parse_formats("csv") == ("csv",)
    with pytest.raises(ConfigError):
        parse_formats("csv,pdf")


def test_parse_seed_bounds():
    assert parse_seed("7") == 7
    with pytest.raises(ConfigError):
        parse_seed(-1)
    with pytest.raises(ConfigError):
        parse_seed(2**64)


def test_format_cell_seventeen_digits():
    assert format_cell(0.1) == "0.10000000000000001"
    assert format_cell(3) == "3"
    assert format_cell(True) == "true"


# ------------------------------------------------------------ config merging

def test_build_config_defaults_file_and_flags(tmp_path):
    cfg_file = tmp_path / "cfg.json"
    cfg_file.write_text(json.dumps({"experiment": "oscillator", "f0": 4e9, "n": 10}))
    cfg = build_config("oscillator", {"n": "20", "out": None, "seed": None, "format": None,
                                      "f0": None, "c": None, "cc": None, "cycles": None}, str(cfg_file))
    assert cfg["f0"] == 4e9       # from file
    assert cfg["n"] == 20         # flag overrides file
    assert cfg["c"] == 1e-12      # default
    assert cfg["seed"] == 1


def test_build_config_rejects_unknown_key(tmp_path):
    cfg_file = tmp_path / "cfg.json"
    cfg_file.write_text(json.dumps({"sigma": 1e-13}))
    with pytest.raises(ConfigError):
        build_config("oscillator", {}, str(cfg_file))


def test_build_config_rejects_experiment_mismatch(tmp_path):
    cfg_file = tmp_path / "cfg.json"
    cfg_file.write_text(json.dumps({"experiment": "pointer"}))
    with pytest.raises(ConfigError):
        build_config("oscillator", {}, str(cfg_file))


# ------------------------------------------------------------ experiment runs

def test_oscillator_run_and_determinism(tmp_path):
    out = tmp_path / "run"
    argv = ["oscillator", "--f0", "5e9", "--C", "1e-12", "--Cc", "1e-15", "--n", "1", "--out", str(out)]
    assert main(argv) == 0
    csv_text = (out / "oscillator.csv").read_text()
    header, row = csv_text.strip().splitlines()
    assert header.startswith("k,alpha_re")
    photons = float(row.split(",")[3])
    assert photons == pytest.approx(6.4e-4, rel=0.02)
    assert (out / "oscillator.svg").exists()
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["experiment"] == "oscillator"
    assert manifest["seed"] == 1
    assert "wall_time_s" in manifest and "versions" in manifest

    assert main(argv) == 0
    assert (out / "oscillator.csv").read_text() == csv_text


def test_csv_only_format(tmp_path):
    out = tmp_path / "run"
    assert main(["oscillator", "--n", "3", "--format", "csv", "--out", str(out)]) == 0
    assert (out / "oscillator.csv").exists()
    assert not (out / "oscillator.svg").exists()


def test_gate3_canonical_error(tmp_path):
    out = tmp_path / "run"
    argv = ["gate3", "--theta", "pi/2", "--n", "100", "--f10", "5e9", "--f21", "4.8e9",
            "--format", "csv", "--out", str(out)]
    assert main(argv) == 0
    header, row = (out / "gate3.csv").read_text().strip().splitlines()
    error = float(row.split(",")[header.split(",").index("gate_error")])
    assert 3e-4 < error < 3e-3


def test_jitter_mc_reproducible(tmp_path):
    argv_base = ["jitter-mc", "--mode", "internal", "--sigma", "0.2e-12", "--n", "40",
                 "--theta", "pi/2", "--trials", "400", "--seed", "1", "--format", "csv"]
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(argv_base + ["--out", str(out1)]) == 0
    assert main(argv_base + ["--out", str(out2)]) == 0
    assert (out1 / "jitter-mc.csv").read_text() == (out2 / "jitter-mc.csv").read_text()


def test_unknown_config_key_exits_2(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"bogus": 1}))
    assert main(["pointer", "--config", str(cfg), "--out", str(tmp_path / "o")]) == 2


def test_bad_value_exits_2(tmp_path):
    assert main(["gate2", "--theta", "half a pie", "--out", str(tmp_path / "o")]) == 2


def test_domain_error_exits_3(tmp_path):
    assert main(["pointer", "--chi", "6e9", "--f0", "5e9", "--out", str(tmp_path / "o")]) == 3


def test_no_command_exits_2(capsys):
    assert main([]) == 2


def test_pointer_results_in_manifest(tmp_path):
    out = tmp_path / "run"
    assert main(["pointer", "--chi", "5e6", "--format", "csv", "--out", str(out)]) == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["results"]["n"] in (500, 501)
    assert manifest["results"]["contrast"] > 1e6


def test_jitter_analytic_table(tmp_path):
    out = tmp_path / "run"
    assert main(["jitter-analytic", "--mode", "external", "--n", "100", "--sigma", "0.2e-12",
                 "--theta", "pi/2", "--format", "csv", "--out", str(out)]) == 0
    header, row = (out / "jitter-analytic.csv").read_text().strip().splitlines()
    avg = float(row.split(",")[header.split(",").index("avg_error")])
    assert avg == pytest.approx(6.742e-6, rel=1e-3)
