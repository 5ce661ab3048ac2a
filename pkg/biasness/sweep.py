"""
Sweeps of all channel functionals over noise strength, written as CSV.

Each (family, p) point is computed independently from random streams keyed
on (seed, functional, family, p), so the points can be farmed out to worker
processes in any order without changing a single output byte.
"""

import collections
import concurrent.futures
import csv
import os

import numpy as np

from .channels import FAMILY_NAMES, get_family
from .errors import ConfigError, CsvFormatError
from .measures import (
    cds,
    ddc,
    eb_bounds,
    entanglement_capacity,
    ic,
    saved_entanglement,
)
from .optimizer import OptimizerConfig
from .util import Stopwatch, format_float, log, parse_float

MEASURES = ("se", "ec", "ddc", "cds", "ic", "eb")
FIELDS = ("family", "p", "se", "ec", "ddc", "cds", "ic", "eb1", "eb2",
        "restarts_used", "seed", "wall_ms")
FLOAT_FIELDS = ("p", "se", "ec", "ddc", "cds", "ic", "eb1", "eb2")
INT_FIELDS = ("restarts_used", "seed", "wall_ms")

WORKERS_VARIABLE = "BIASNESS_WORKERS"

SweepPoint = collections.namedtuple("SweepPoint", FIELDS)

class RunConfig(object):
    def __init__(self, families=FAMILY_NAMES, p_start=0.0, p_end=1.0,
            p_steps=21, measures=MEASURES, optimizer=None,
            output="results.csv", workers=None, timing=False):
        """
        Args:
            families: Channel family names, e.g. ("dc", "ad").
            p_start, p_end, p_steps: The noise strength grid.
            measures: Subset of "se", "ec", "ddc", "cds", "ic", "eb".
            optimizer: OptimizerConfig shared by all functionals.
            output: CSV file to write, or None to skip writing.
            workers: Worker processes; None reads BIASNESS_WORKERS or uses
                every CPU.
            timing: Record wall_ms; off keeps the CSV reproducible.
        """
        self.families = tuple(families)
        self.p_start = float(p_start)
        self.p_end = float(p_end)
        self.p_steps = int(p_steps)
        self.measures = frozenset(measures)
        self.optimizer = optimizer if optimizer is not None else \
                OptimizerConfig()
        self.output = output
        self.workers = workers if workers is not None else default_workers()
        self.timing = bool(timing)

        for name in self.families:
            get_family(name)
        unknown = self.measures.difference(MEASURES)
        if unknown:
            raise ConfigError("Unknown measures: %s" % ", ".join(
                sorted(unknown)))
        if not 0.0 <= self.p_start <= self.p_end <= 1.0:
            raise ConfigError("Need 0 <= p_start <= p_end <= 1, got %g, %g" % (
                self.p_start, self.p_end))
        if self.p_steps < 1:
            raise ConfigError("p_steps must be at least 1")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")

    @property
    def strengths(self):
        if self.p_steps == 1:
            return [self.p_start]
        return [float(p) for p in np.linspace(self.p_start, self.p_end,
            self.p_steps)]

    def __repr__(self):
        return "<RunConfig: families=%s p=[%g, %g]x%d measures=%s>" % (
                ",".join(self.families), self.p_start, self.p_end,
                self.p_steps, ",".join(sorted(self.measures)))

def default_workers():
    value = os.environ.get(WORKERS_VARIABLE)
    if value is None:
        return os.cpu_count() or 1
    try:
        return int(value)
    except ValueError:
        raise ConfigError("%s must be an integer, not %r" % (
            WORKERS_VARIABLE, value))

def compute_point(family, p, measures, cfg, timing=False):
    """Computes one SweepPoint; measures absent from the set stay None."""
    watch = Stopwatch()
    channel = get_family(family)(p)
    values = dict.fromkeys(("se", "ec", "ddc", "cds", "ic", "eb1", "eb2"))

    if "se" in measures or "eb" in measures:
        se, pairs = saved_entanglement(family, p, cfg)
        if "se" in measures:
            values["se"] = se
        if "eb" in measures:
            values["eb1"], values["eb2"] = eb_bounds(channel, pairs, cfg)
    if "ec" in measures:
        values["ec"] = entanglement_capacity(family, p, cfg)
    if "ddc" in measures:
        values["ddc"] = ddc(channel, cfg)
    if "cds" in measures:
        values["cds"] = cds(channel, cfg)
    if "ic" in measures:
        values["ic"] = ic(channel, cfg)

    return SweepPoint(family=family, p=p, restarts_used=cfg.restarts,
            seed=cfg.seed, wall_ms=watch.elapsed_ms if timing else 0,
            **values)

def _compute(task):
    return compute_point(*task)

def run_sweep(cfg):
    """Computes every (family, p) point and writes cfg.output if set."""
    log("Sweeping %r" % cfg)
    tasks = [(family, p, cfg.measures, cfg.optimizer, cfg.timing)
            for family in cfg.families for p in cfg.strengths]

    points = []
    if cfg.workers == 1 or len(tasks) == 1:
        for task in tasks:
            points.append(_report(_compute(task)))
    else:
        with concurrent.futures.ProcessPoolExecutor(cfg.workers) as pool:
            for point in pool.map(_compute, tasks):
                points.append(_report(point))

    points.sort(key=lambda point: (point.family, point.p))
    if cfg.output is not None:
        write_csv(cfg.output, points)
        log("Wrote %d rows to %s" % (len(points), cfg.output))
    return points

def _report(point):
    log("  %-3s p=%.4f se=%s ec=%s (%d ms)" % (point.family, point.p,
        _short(point.se), _short(point.ec), point.wall_ms))
    return point

def _short(value):
    return "-" if value is None else "%.5f" % value

def _format(name, value):
    if name == "family":
        return value
    if name in INT_FIELDS:
        return "%d" % value
    return format_float(value)

def write_csv(filename, points):
    try:
        with open(filename, "w", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(FIELDS)
            for point in points:
                writer.writerow([_format(name, getattr(point, name))
                    for name in FIELDS])
    except (IOError, OSError) as e:
        raise ConfigError("Cannot write %s: %s" % (filename, e))

def read_csv(filename):
    """Parses a sweep CSV back into SweepPoints."""
    try:
        with open(filename, "r", newline="") as f:
            rows = list(csv.reader(f))
    except (IOError, OSError) as e:
        raise CsvFormatError("Cannot read %s: %s" % (filename, e))

    if not rows or tuple(rows[0]) != FIELDS:
        raise CsvFormatError("%s: expected header %s" % (filename,
            ",".join(FIELDS)))

    points = []
    for number, row in enumerate(rows[1:], 2):
        if len(row) != len(FIELDS):
            raise CsvFormatError("%s:%d: expected %d fields, got %d" % (
                filename, number, len(FIELDS), len(row)))
        values = dict(zip(FIELDS, row))
        try:
            for name in FLOAT_FIELDS:
                values[name] = parse_float(values[name])
            for name in INT_FIELDS:
                values[name] = int(values[name])
        except ValueError as e:
            raise CsvFormatError("%s:%d: %s" % (filename, number, e))
        if values["p"] is None:
            raise CsvFormatError("%s:%d: missing p" % (filename, number))
        points.append(SweepPoint(**values))
    return points
