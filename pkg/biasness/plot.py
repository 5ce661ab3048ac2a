"""
Turns a sweep CSV into a self-contained gnuplot script.

The data is embedded as one inline data block per family, and the script
draws one panel per family with SE, EC, DDC, CDS, IC and EB1 against p.
"""

import io

from .errors import ConfigError, CsvFormatError
from .sweep import read_csv
from .util import format_float

SERIES = (
    ("se", "SE", "pt 3"),
    ("ec", "EC", "pt 5"),
    ("ddc", "DDC", "pt 7"),
    ("cds", "CDS", "pt 2"),
    ("ic", "IC", "pt 13"),
    ("eb1", "EB1", "pt 9"),
)

def _value(value):
    return "NaN" if value is None else format_float(value)

def _grouped(points):
    families = []
    groups = {}
    for point in points:
        if point.family not in groups:
            families.append(point.family)
            groups[point.family] = []
        groups[point.family].append(point)
    return [(family, groups[family]) for family in sorted(families)]

def write_plot_script(points, stream, title="Channel functionals"):
    write = stream.write
    groups = _grouped(points)
    columns = min(len(groups), 3)
    rows = (len(groups) + columns - 1) // columns

    write("# gnuplot script: %d panels\n" % len(groups))
    for family, family_points in groups:
        write("$%s << EOD\n" % family)
        write("# p %s\n" % " ".join(name for name, _, _ in SERIES))
        for point in family_points:
            write("%s %s\n" % (format_float(point.p), " ".join(
                _value(getattr(point, name)) for name, _, _ in SERIES)))
        write("EOD\n")

    write("\nset terminal pngcairo size %d,%d\n" % (480 * columns, 360 * rows))
    write("set output 'figures.png'\n")
    write("set key top right font ',8'\n")
    write("set xlabel 'p'\n")
    write("set xrange [0:1]\n")
    write("set multiplot layout %d,%d title '%s'\n" % (rows, columns, title))
    for family, _ in groups:
        write("\nset title 'panel: %s'\n" % family)
        plots = ["$%s using 1:%d with linespoints %s title '%s'" % (family,
            index + 2, style, label)
            for index, (_, label, style) in enumerate(SERIES)]
        write("plot %s\n" % ", \\\n     ".join(plots))
    write("\nunset multiplot\n")

def emit_plot_script(csv_path, out_path):
    """Reads csv_path and writes the plot script to out_path.

    Nothing is written when the CSV is malformed or has no rows.
    """
    points = read_csv(csv_path)
    if not points:
        raise CsvFormatError("%s has no data rows" % csv_path)
    stream = io.StringIO()
    write_plot_script(points, stream)
    try:
        with open(out_path, "w", newline="") as f:
            f.write(stream.getvalue())
    except (IOError, OSError) as e:
        raise ConfigError("Cannot write %s: %s" % (out_path, e))
    return out_path
