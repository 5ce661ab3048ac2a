import logging
import time
import zlib

import numpy as np

from .errors import ConfigError

logger = logging.getLogger("biasness")

# Tags that keep the random streams of different functionals apart.
STREAM_SE = 1
STREAM_EC = 2
STREAM_CDS = 3
STREAM_IC = 4
STREAM_REFINE = 5
STREAM_VERIFY = 6

def log(msg):
    logger.info(msg)

def debug(msg):
    logger.debug(msg)

def setup_logging(verbose=False):
    """Sends log messages to stdout as plain lines."""
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter("%(message)s"))
    logger.handlers[:] = [handler]
    logger.setLevel(logging.DEBUG if verbose else logging.INFO)
    logger.propagate = False

def stream_key(value):
    """Maps a label or noise strength to a stable non-negative integer."""
    if isinstance(value, str):
        return zlib.crc32(value.encode("utf-8"))
    if isinstance(value, float):
        return int(round(value * 1e9))
    return int(value)

def make_stream(seed, *keys):
    """Returns a numpy Generator derived from a base seed and extra keys.

    The same (seed, keys) always give the same stream, regardless of which
    process or in which order it is created.
    """
    entropy = [int(seed) & 0xffffffffffffffff]
    entropy.extend(stream_key(k) for k in keys)
    return np.random.default_rng(np.random.SeedSequence(entropy))

def format_float(value):
    """Formats a float so that float(format_float(x)) == x."""
    if value is None:
        return ""
    return "%.17g" % value

def parse_float(s):
    s = s.strip()
    if s == "":
        return None
    return float(s)

def parse_list(s):
    return [item.strip() for item in s.split(",") if item.strip()]

def parse_key_value_file(filename):
    """Reads a plain key=value file into a dict.

    Blank lines and lines starting with '#' are skipped. Keys are normalized
    to use underscores, so "p-start" and "p_start" are the same key.
    """
    options = {}
    with open(filename, "r") as f:
        for number, line in enumerate(f, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError("%s:%d: expected key=value, got %r" % (
                    filename, number, line))
            key, value = line.split("=", 1)
            options[key.strip().replace("-", "_")] = value.strip()
    return options

class Stopwatch(object):
    def __init__(self):
        self.start = time.perf_counter()

    @property
    def elapsed_ms(self):
        return int(round((time.perf_counter() - self.start) * 1000))
