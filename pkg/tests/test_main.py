import pytest

from biasness import __copyright__
from biasness.__main__ import (
    main,
    make_run_config,
    parse_command_line_args,
    sweep_options,
)
from biasness.errors import ConfigError
from biasness.util import parse_key_value_file

def options_for(argv):
    return sweep_options(parse_command_line_args(argv))

def test_defaults():
    cfg = make_run_config(options_for(["sweep"]))
    assert cfg.families == ("dc", "ad", "bf", "pf", "bpf")
    assert cfg.p_steps == 21
    assert cfg.optimizer.restarts == 50
    assert cfg.optimizer.seed == 42
    assert cfg.output == "results.csv"

def test_config_file_and_flags(tmp_path):
    config = tmp_path / "sweep.conf"
    config.write_text("# coarse run\n"
            "families = ad,pf\n"
            "p-steps = 5\n"
            "restarts = 7\n"
            "\n"
            "seed=3\n")
    options = options_for(["sweep", "--config", str(config), "--seed", "9",
        "--measures", "se,eb"])
    cfg = make_run_config(options)
    assert cfg.families == ("ad", "pf")
    assert cfg.p_steps == 5
    assert cfg.optimizer.restarts == 7
    assert cfg.optimizer.seed == 9
    assert cfg.measures == frozenset(["se", "eb"])

def test_config_file_errors(tmp_path):
    config = tmp_path / "sweep.conf"
    config.write_text("speed = 11\n")
    with pytest.raises(ConfigError):
        options_for(["sweep", "--config", str(config)])

    config.write_text("restarts 11\n")
    with pytest.raises(ConfigError):
        parse_key_value_file(str(config))

    with pytest.raises(ConfigError):
        options_for(["sweep", "--config", str(tmp_path / "missing.conf")])

def test_bad_numbers():
    with pytest.raises(ConfigError):
        make_run_config(options_for(["sweep", "--restarts", "lots"]))

def test_main_reports_errors(tmp_path):
    assert main(["sweep", "--families", "xx"]) == 1
    assert main(["plot", "--in", str(tmp_path / "none.csv"), "--out",
        str(tmp_path / "out.gp")]) == 1
    assert not (tmp_path / "out.gp").exists()

def test_main_sweep_and_plot(tmp_path):
    csv = tmp_path / "results.csv"
    script = tmp_path / "figures.gp"
    assert main(["sweep", "--families", "ad", "--p-steps", "2", "--measures",
        "ddc,cds", "--restarts", "2", "--out", str(csv)]) == 0
    assert csv.read_text().count("\n") == 3
    assert main(["plot", "--in", str(csv), "--out", str(script)]) == 0
    assert "panel: ad" in script.read_text()
    assert main(["plot", "--in", str(csv), "--out",
        str(tmp_path / "missing" / "figures.gp")]) == 1

def test_help_carries_project_copyright(capsys):
    with pytest.raises(SystemExit):
        parse_command_line_args(["--help"])
    assert __copyright__ in capsys.readouterr().out
    assert __copyright__.endswith("The biasness developers")
