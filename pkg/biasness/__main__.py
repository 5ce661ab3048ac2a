import argparse
import sys

from . import __copyright__
from .errors import BiasnessError, ConfigError
from .optimizer import OptimizerConfig
from .plot import emit_plot_script
from .sweep import MEASURES, RunConfig, run_sweep
from .channels import FAMILY_NAMES
from .util import log, parse_key_value_file, parse_list, setup_logging
from .verify import verify

# Defaults for the sweep command, overridden by --config and then by flags.
SWEEP_DEFAULTS = {
    "families": ",".join(FAMILY_NAMES),
    "p_start": "0",
    "p_end": "1",
    "p_steps": "21",
    "measures": ",".join(MEASURES),
    "restarts": "50",
    "max_iterations": "2000",
    "top_k": "3",
    "seed": "42",
    "ddc_mode": "min",
    "out": "results.csv",
}

def parse_command_line_args(argv=None):
    p = argparse.ArgumentParser(
            prog="biasness",
            description="Saved entanglement and biasness of noise channels",
            epilog=__copyright__)

    p.add_argument("-v", "--verbose", default=False, action="store_true",
            help="Log optimizer details")

    commands = p.add_subparsers(dest="command", metavar="COMMAND")

    sweep = commands.add_parser("sweep",
            help="Compute functionals over a noise strength grid")
    sweep.add_argument("--config", metavar="FILE", default=None,
            help="key=value file with defaults; flags win on conflict")
    sweep.add_argument("--families", default=None,
            help="Comma-separated channel families (%s)" %
            ",".join(FAMILY_NAMES))
    sweep.add_argument("--p-start", default=None, help="First noise strength")
    sweep.add_argument("--p-end", default=None, help="Last noise strength")
    sweep.add_argument("--p-steps", default=None,
            help="Number of noise strengths")
    sweep.add_argument("--measures", default=None,
            help="Comma-separated subset of %s" % ",".join(MEASURES))
    sweep.add_argument("--restarts", default=None,
            help="Random restarts per optimization")
    sweep.add_argument("--max-iterations", default=None,
            help="Simplex iterations per restart")
    sweep.add_argument("--top-k", default=None,
            help="Optimizer pairs kept for the EB bounds")
    sweep.add_argument("--seed", default=None, help="Base random seed")
    sweep.add_argument("--ddc-mode", default=None, choices=("min", "max"),
            help="Distance to the nearest (min) or farthest (max) "
            "depolarizing channel")
    sweep.add_argument("--out", default=None, metavar="FILE",
            help="CSV file to write")
    sweep.add_argument("--timing", default=False, action="store_true",
            help="Record wall_ms (makes the CSV differ between runs)")

    plot = commands.add_parser("plot", help="Write a gnuplot script for a CSV")
    plot.add_argument("--in", dest="input", required=True, metavar="FILE",
            help="Sweep CSV")
    plot.add_argument("--out", required=True, metavar="FILE",
            help="Script to write")

    check = commands.add_parser("verify", help="Run the self-checks")
    check.add_argument("--level", default="quick", choices=("quick", "full"))

    opt = p.parse_args(argv)
    if opt.command is None:
        p.print_help()
        sys.exit(1)
    return opt

def sweep_options(opt):
    """Merges defaults, the --config file and flags, in that order."""
    options = dict(SWEEP_DEFAULTS)
    if opt.config is not None:
        try:
            from_file = parse_key_value_file(opt.config)
        except (IOError, OSError) as e:
            raise ConfigError("Cannot read %s: %s" % (opt.config, e))
        unknown = set(from_file).difference(options)
        if unknown:
            raise ConfigError("%s: unknown keys %s" % (opt.config,
                ", ".join(sorted(unknown))))
        options.update(from_file)
    for key in SWEEP_DEFAULTS:
        value = getattr(opt, key)
        if value is not None:
            options[key] = value
    return options

def make_run_config(options, timing=False):
    try:
        optimizer = OptimizerConfig(
                restarts=int(options["restarts"]),
                max_iterations=int(options["max_iterations"]),
                top_k=int(options["top_k"]),
                seed=int(options["seed"]),
                ddc_mode=options["ddc_mode"])
        return RunConfig(
                families=parse_list(options["families"]),
                p_start=float(options["p_start"]),
                p_end=float(options["p_end"]),
                p_steps=int(options["p_steps"]),
                measures=parse_list(options["measures"]),
                optimizer=optimizer,
                output=options["out"],
                timing=timing)
    except ValueError as e:
        raise ConfigError("Invalid option: %s" % e)

def main(argv=None):
    opt = parse_command_line_args(argv)
    setup_logging(opt.verbose)

    try:
        if opt.command == "sweep":
            run_sweep(make_run_config(sweep_options(opt), opt.timing))
        elif opt.command == "plot":
            emit_plot_script(opt.input, opt.out)
            log("Wrote %s" % opt.out)
        elif opt.command == "verify":
            if not verify(opt.level).passed:
                return 1
    except BiasnessError as e:
        log("** Error: %s" % str(e).strip())
        return 1
    return 0

if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        pass
