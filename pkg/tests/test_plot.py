import pytest

from biasness.channels import FAMILY_NAMES
from biasness.errors import ConfigError, CsvFormatError
from biasness.plot import emit_plot_script
from biasness.sweep import FIELDS, SweepPoint, write_csv

def make_points():
    points = []
    for family in FAMILY_NAMES:
        for p in (0.0, 0.5, 1.0):
            values = dict.fromkeys(FIELDS)
            values.update(family=family, p=p, se=p * (1 - p), ec=1 - p,
                    restarts_used=4, seed=42, wall_ms=0)
            points.append(SweepPoint(**values))
    return points

@pytest.fixture
def sweep_csv(tmp_path):
    filename = str(tmp_path / "results.csv")
    write_csv(filename, make_points())
    return filename

def test_one_panel_per_family(sweep_csv, tmp_path):
    out = tmp_path / "figures.gp"
    emit_plot_script(sweep_csv, str(out))
    script = out.read_text()
    assert script.count("set title 'panel: ") == 5
    for family in FAMILY_NAMES:
        assert "$%s << EOD" % family in script
        assert "set title 'panel: %s'" % family in script
    assert "set multiplot layout 2,3" in script
    assert "NaN" in script

def test_rerun_is_byte_identical(sweep_csv, tmp_path):
    first = tmp_path / "a.gp"
    second = tmp_path / "b.gp"
    emit_plot_script(sweep_csv, str(first))
    emit_plot_script(sweep_csv, str(second))
    assert first.read_bytes() == second.read_bytes()

def test_empty_csv_writes_nothing(tmp_path):
    empty = tmp_path / "empty.csv"
    write_csv(str(empty), [])
    out = tmp_path / "figures.gp"
    with pytest.raises(CsvFormatError):
        emit_plot_script(str(empty), str(out))
    assert not out.exists()

def test_malformed_csv_writes_nothing(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("not,a,sweep\n")
    out = tmp_path / "figures.gp"
    with pytest.raises(CsvFormatError):
        emit_plot_script(str(bad), str(out))
    assert not out.exists()

def test_unwritable_output(sweep_csv, tmp_path):
    with pytest.raises(ConfigError):
        emit_plot_script(sweep_csv, str(tmp_path / "no" / "such" / "out.gp"))
