# coding=utf-8
import logging
import os
import re
import sys
import tempfile

import numpy as np

try:
    from importlib.metadata import version, PackageNotFoundError
except ImportError:  # pragma: no cover
    from importlib_metadata import version, PackageNotFoundError

try:
    __version__ = version('cssqec')
except PackageNotFoundError:
    __version__ = '0.0.0'

# Unitarity and normalisation checks
TOLERANCE = 1e-10

# Amplitudes at or below this magnitude are left out of state dumps
DUMP_CUTOFF = 1e-12


def utf8print(txt=None):
    if txt is None:
        sys.stdout.write('\n')
    else:
        sys.stdout.write('%s\n' % txt)


def trial_rng(seed, trial):
    """
    Independent random stream for one trial. The stream depends only on
    (seed, trial), so trials can be run in any order.
    """
    return np.random.default_rng(np.random.SeedSequence(entropy=int(seed), spawn_key=(int(trial),)))


def child_rng(seed, *keys):
    """Keyed random stream, e.g. child_rng(seed, 'inputs') for random logical inputs."""
    spawn_key = tuple(_key_to_int(key) for key in keys)
    return np.random.default_rng(np.random.SeedSequence(entropy=int(seed), spawn_key=spawn_key))


def _key_to_int(key):
    if isinstance(key, int):
        return key
    return int.from_bytes(str(key).encode('utf-8'), 'little') % (2 ** 63)


def atomic_write(path, text):
    """Write text to path through a temporary file in the same directory."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(prefix='.cssqec-', dir=directory)
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='\n') as fp:
            fp.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise


def format_amplitude(value):
    return '{:.17g}'.format(value)


def format_curve(value):
    return '{:.9g}'.format(value)


def strip_comments(text):
    """Lines of a text file without '#' comment lines and surrounding whitespace."""
    for line in text.splitlines():
        line = line.strip()
        if line.startswith('#'):
            continue
        yield line


class ColorStripFormatter(logging.Formatter):

    def format(self, record):
        s = super(ColorStripFormatter, self).format(record)
        s = re.sub(r'\x1b\[[0-9;]*m', '', s)

        return s


class RunNameFilter(logging.Filter):

    runname = ''

    def filter(self, record):
        record.runname = self.runname
        return True
