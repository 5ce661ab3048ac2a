import pytest

from biasness.errors import ConfigError, CsvFormatError, UnknownFamilyError
from biasness.optimizer import OptimizerConfig
from biasness.sweep import (
    FIELDS,
    RunConfig,
    SweepPoint,
    compute_point,
    default_workers,
    read_csv,
    run_sweep,
    write_csv,
)

CFG = OptimizerConfig(restarts=3, max_iterations=2000, seed=11)

def point(family="ad", p=0.5, **values):
    fields = dict.fromkeys(FIELDS)
    fields.update(family=family, p=p, restarts_used=3, seed=11, wall_ms=0)
    fields.update(values)
    return SweepPoint(**fields)

def test_csv_round_trip(tmp_path):
    filename = str(tmp_path / "rows.csv")
    points = [point(p=0.1, se=0.012345678901234567, ec=0.9),
            point(family="dc", p=1.0, ddc=1e-17)]
    write_csv(filename, points)
    assert read_csv(filename) == points

def test_csv_header_and_empty_fields(tmp_path):
    filename = tmp_path / "rows.csv"
    write_csv(str(filename), [point(p=0.25, ec=1.0)])
    lines = filename.read_text().splitlines()
    assert lines[0] == ",".join(FIELDS)
    assert lines[1] == "ad,0.25,,1,,,,,,3,11,0"

def test_read_csv_rejects_malformed(tmp_path):
    filename = tmp_path / "bad.csv"
    filename.write_text("family,p\nad,0.5\n")
    with pytest.raises(CsvFormatError):
        read_csv(str(filename))

    filename.write_text(",".join(FIELDS) + "\nad,zero,,,,,,,,1,1,0\n")
    with pytest.raises(CsvFormatError):
        read_csv(str(filename))

    filename.write_text(",".join(FIELDS) + "\nad,0.5\n")
    with pytest.raises(CsvFormatError):
        read_csv(str(filename))

    with pytest.raises(CsvFormatError):
        read_csv(str(tmp_path / "missing.csv"))

def test_write_csv_unwritable(tmp_path):
    with pytest.raises(ConfigError):
        write_csv(str(tmp_path / "no" / "such" / "dir.csv"), [point()])

def test_run_config_validation():
    for bad in (dict(p_start=0.6, p_end=0.4), dict(p_end=1.5),
            dict(p_steps=0), dict(measures=("se", "xx")), dict(workers=0)):
        with pytest.raises(ConfigError):
            RunConfig(optimizer=CFG, **bad)
    with pytest.raises(UnknownFamilyError):
        RunConfig(families=("ad", "zz"), optimizer=CFG)

def test_run_config_strengths():
    cfg = RunConfig(p_steps=5, optimizer=CFG, workers=1)
    assert cfg.strengths == [0.0, 0.25, 0.5, 0.75, 1.0]
    cfg = RunConfig(p_start=0.3, p_end=0.3, p_steps=1, optimizer=CFG,
            workers=1)
    assert cfg.strengths == [0.3]

def test_default_workers(monkeypatch):
    monkeypatch.setenv("BIASNESS_WORKERS", "3")
    assert default_workers() == 3
    monkeypatch.setenv("BIASNESS_WORKERS", "many")
    with pytest.raises(ConfigError):
        default_workers()

def test_compute_point_leaves_absent_measures_empty():
    row = compute_point("bf", 0.5, {"ddc", "cds"}, CFG)
    assert row.se is None and row.ec is None and row.eb1 is None
    assert row.ddc > 0
    assert abs(row.cds - 0.5) <= 1e-5
    assert row.wall_ms == 0

def test_eb_leaves_se_empty():
    row = compute_point("dc", 0.5, {"eb"}, CFG)
    assert row.se is None
    assert row.eb1 is not None and row.eb2 is not None

    row = compute_point("dc", 0.5, {"eb", "se"}, CFG)
    assert row.se is not None and row.eb1 is not None

def test_integer_strength_matches_float():
    assert compute_point("ad", 1, {"se", "ec"}, CFG)[2:4] == \
            compute_point("ad", 1.0, {"se", "ec"}, CFG)[2:4]

def test_capacity_at_zero_noise():
    cfg = RunConfig(p_start=0, p_end=0, p_steps=1, measures=("ec",),
            optimizer=CFG, output=None, workers=1)
    points = run_sweep(cfg)
    assert [row.family for row in points] == sorted(cfg.families)
    for row in points:
        assert abs(row.ec - 1) <= 1e-6

def test_sweep_is_reproducible(tmp_path):
    outputs = []
    for name in ("a.csv", "b.csv"):
        filename = tmp_path / name
        run_sweep(RunConfig(families=("pf", "ad"), p_steps=3,
            measures=("ec", "ddc"), optimizer=CFG, output=str(filename),
            workers=1))
        outputs.append(filename.read_bytes())
    assert outputs[0] == outputs[1]

    rows = read_csv(str(tmp_path / "a.csv"))
    assert [(row.family, row.p) for row in rows] == [("ad", 0.0),
            ("ad", 0.5), ("ad", 1.0), ("pf", 0.0), ("pf", 0.5), ("pf", 1.0)]

def test_sweep_process_pool_matches_serial():
    results = []
    for workers in (1, 2):
        results.append(run_sweep(RunConfig(families=("bf",), p_steps=2,
            measures=("ec",), optimizer=CFG, output=None, workers=workers)))
    assert results[0] == results[1]
