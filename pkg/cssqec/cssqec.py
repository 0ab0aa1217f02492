# coding=utf-8
import argparse
import getpass
import logging
import logging.config
import os
import sys
import tempfile
import time
from hashlib import sha1

import colorama
import yaml
from coloredlogs import ColoredFormatter
from diskcache import Cache
from raven import Client

from . import __version__
from .codes import SELFDUAL_LIMIT, hamming_7_4, load_code, steane_tower
from .css import CssCode, load_descriptor
from .job import Job
from .task import (BoundsTableTask, CodeInfoTask, CssBuildTask, EncodeDumpTask, ExhaustiveFidelityTask,
                   GvSearchTask, McFidelityTask, RecoverDemoTask, SelfDualEnumTask, SigmaCheckTask)
from .util import ColorStripFormatter, RunNameFilter

raven_client = None

DEFAULTS = {
    'seed': 0,
    'trials': 1000,
    'p': 0.01,
    'inputs': 20,
    'step': 0.005,
}

MODES = {
    'encode-dump': ('c', 's', 'steane'),
    'recover-demo': ('coherent', 'measure'),
}


class ConfigError(RuntimeError):
    pass


def configure_logging(config, runname, verbose=False):
    use_colors = sys.stdout.isatty()
    level = logging.DEBUG if verbose else logging.INFO
    formatter_options = {
        'fmt': '%(asctime)s %(levelname)-8s %(message)s',
        'datefmt': '%Y-%m-%d %H:%M:%S',
    }

    if use_colors:
        colorama.init(autoreset=True)
    else:
        # We're being piped, so skip colors
        colorama.init(strip=True)

    logging.config.dictConfig(config)

    logger = logging.getLogger()
    logger.setLevel(logging.DEBUG)

    handler = logging.StreamHandler()
    handler.setLevel(level)
    formatter_type = ColoredFormatter if use_colors else ColorStripFormatter
    handler.setFormatter(formatter_type(**formatter_options))
    handler.addFilter(RunNameFilter())

    RunNameFilter.runname = runname[:10]

    logger.addHandler(handler)


def add_code_argument(parser, default):
    parser.add_argument('--code', dest='code', default=default,
                        help='Code file, or "{}" for the built-in code. Default: {}'.format(default, default))


def parse_args(args, defaults=None):
    defaults = defaults or {}
    parser = argparse.ArgumentParser(prog='cssqec',
                                     description='Build CSS quantum codes from classical codes, simulate '
                                     'decoherence and recovery, and tabulate rate bounds.')
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    parser.add_argument('--verbose', dest='verbose', action='store_true', help='Show debug output')
    parser.add_argument('--no-progress', dest='no_progress', action='store_true', help='Hide progress bars')

    subparsers = parser.add_subparsers(title='subcommands')

    sub = subparsers.add_parser('code-info', help='Parameters of a classical code and its dual')
    add_code_argument(sub, 'hamming')
    sub.set_defaults(action='code-info')

    sub = subparsers.add_parser('css-build', help='Parameters of a CSS code')
    add_code_argument(sub, 'steane')
    sub.set_defaults(action='css-build')

    sub = subparsers.add_parser('encode-dump', help='Amplitudes of an encoded basis state')
    add_code_argument(sub, 'steane')
    sub.add_argument('--inputs', dest='label', default=None, help='Logical basis label, e.g. 0 or 1')
    sub.add_argument('--mode', dest='mode', default=None, choices=MODES['encode-dump'])
    sub.add_argument('--out', dest='out', default=None, help='Output CSV file')
    sub.set_defaults(action='encode-dump')

    sub = subparsers.add_parser('recover-demo', help='Random decoherence followed by recovery')
    add_code_argument(sub, 'steane')
    sub.add_argument('--trials', dest='trials', type=int, default=None)
    sub.add_argument('--seed', dest='seed', type=int, default=None)
    sub.add_argument('--mode', dest='mode', default=None, choices=MODES['recover-demo'])
    sub.add_argument('--out', dest='out', default=None, help='Output CSV file')
    sub.set_defaults(action='recover-demo')

    for name, helptext in [('mc-fidelity', 'Monte Carlo logical fidelity under depolarising noise'),
                           ('exhaustive-fidelity', 'Exact logical fidelity under depolarising noise')]:
        sub = subparsers.add_parser(name, help=helptext)
        add_code_argument(sub, 'steane')
        sub.add_argument('--p', dest='p', type=float, default=None, help='Error probability per qubit')
        sub.add_argument('--inputs', dest='inputs', type=int, default=None, help='Number of random logical inputs')
        sub.add_argument('--seed', dest='seed', type=int, default=None)
        if name == 'mc-fidelity':
            sub.add_argument('--trials', dest='trials', type=int, default=None)
            sub.add_argument('--out', dest='out', default=None, help='Trial log CSV file')
        sub.set_defaults(action=name)

    sub = subparsers.add_parser('selfdual-enum', help='Enumerate weakly self-dual codes')
    sub.add_argument('--n', dest='n', type=int, required=True)
    sub.add_argument('--k', dest='k', type=int, required=True)
    sub.add_argument('--out', dest='out', default=None)
    sub.set_defaults(action='selfdual-enum')

    sub = subparsers.add_parser('sigma-check', help='Check that sigma(n,k,s) does not depend on the seed')
    sub.add_argument('--n', dest='n', type=int, required=True)
    sub.add_argument('--k', dest='k', type=int, required=True)
    sub.add_argument('--s', dest='s', type=int, required=True)
    sub.set_defaults(action='sigma-check')

    sub = subparsers.add_parser('gv-search', help='Counting argument for a code with large dual distance')
    sub.add_argument('--n', dest='n', type=int, required=True)
    sub.add_argument('--k', dest='k', type=int, required=True)
    sub.add_argument('--d', dest='d', type=int, required=True)
    sub.add_argument('--out', dest='out', default=None)
    sub.set_defaults(action='gv-search')

    sub = subparsers.add_parser('bounds-table', help='Tabulate rate and capacity bounds')
    sub.add_argument('--step', dest='step', type=float, default=None)
    sub.add_argument('--out', dest='out', default=None)
    sub.set_defaults(action='bounds-table')

    args = parser.parse_args(args)

    if 'action' not in args:
        parser.error('Please specify a subcommand.')

    for key, value in DEFAULTS.items():
        if key in args and getattr(args, key) is None:
            setattr(args, key, defaults.get(key, value))
    if 'mode' in args and args.mode is None:
        choices = MODES[args.action]
        args.mode = defaults['mode'] if defaults.get('mode') in choices else choices[0]
    if 'label' in args and args.label is None:
        args.label = '0'
    if 'seed' not in args:
        args.seed = 0
    if 'out' not in args:
        args.out = None

    if 'p' in args and not 0 <= args.p <= 1:
        parser.error('--p must lie in [0, 1]')
    if 'trials' in args and args.trials < 1:
        parser.error('--trials must be at least 1')
    if 'inputs' in args and args.inputs < 0:
        parser.error('--inputs must be non-negative')
    if 'step' in args and not 0 < args.step <= 0.01:
        parser.error('--step must lie in (0, 0.01]')
    for key in ('n', 'k', 'd', 's'):
        if key in args and getattr(args, key) < 0:
            parser.error('--%s must be non-negative' % key)
    if args.action in ('selfdual-enum', 'sigma-check', 'gv-search'):
        if args.n % 2:
            parser.error('--n must be even, the all-ones word of odd length is not self-orthogonal')
        if not 2 <= args.n <= SELFDUAL_LIMIT:
            parser.error('--n must lie in [2, %d]' % SELFDUAL_LIMIT)
        if not 1 <= args.k <= args.n // 2:
            parser.error('--k must lie in [1, %d] for n = %d' % (args.n // 2, args.n))
    if 's' in args and not 1 <= args.s <= args.k:
        parser.error('--s must lie in [1, %d]' % args.k)
    if 'd' in args and args.d < 1:
        parser.error('--d must be at least 1')
    if args.seed < 0:
        parser.error('--seed must be non-negative')

    return args


def get_classical_code(name):
    if name == 'hamming':
        return hamming_7_4()
    return load_code(name)


def get_css_code(name):
    if name == 'steane':
        return CssCode.from_tower(steane_tower())
    return load_descriptor(name)


def make_task(args):
    if args.action == 'code-info':
        return CodeInfoTask(get_classical_code(args.code), args.code)
    if args.action == 'selfdual-enum':
        return SelfDualEnumTask(args.n, args.k)
    if args.action == 'sigma-check':
        return SigmaCheckTask(args.n, args.k, args.s)
    if args.action == 'gv-search':
        return GvSearchTask(args.n, args.k, args.d)
    if args.action == 'bounds-table':
        return BoundsTableTask(args.step)

    code = get_css_code(args.code)
    if args.action == 'css-build':
        return CssBuildTask(code, args.code)
    if args.action == 'encode-dump':
        return EncodeDumpTask(code, args.code, args.label, args.mode)
    if args.action == 'recover-demo':
        return RecoverDemoTask(code, args.code, args.trials, args.mode)
    if args.action == 'mc-fidelity':
        return McFidelityTask(code, args.code, args.p, args.inputs, args.trials)
    return ExhaustiveFidelityTask(code, args.code, args.p, args.inputs)


def get_config_filename():
    possible_file_locations = ['./cssqec.yml', os.path.expanduser('~/.cssqec.yml')]

    for filename in possible_file_locations:
        if os.path.exists(filename):
            return filename


def get_config():
    """ The YAML configuration, or an empty one when no file exists """
    filename = get_config_filename()
    if filename is None:
        return {}
    try:
        with open(filename, encoding='utf-8') as fp:
            config = yaml.load(fp, Loader=yaml.SafeLoader)
    except (IOError, yaml.YAMLError) as error:
        raise ConfigError('Could not read configuration file "%s": %s' % (filename, error))

    return config or {}


def run(config, cache, argv):
    global raven_client

    username = getpass.getuser()

    logging_defaults = {
        'version': 1,
        'disable_existing_loggers': False,
        'root': {
            'level': 'INFO',
        }
    }

    sha_input = u' '.join([str(time.time())] + argv)
    runname = sha1(sha_input.encode('utf-8')).hexdigest()

    try:
        args = parse_args(argv, config.get('defaults'))
    except SystemExit as error:
        return error.code

    configure_logging(config.get('logging', logging_defaults), runname, args.verbose)
    log = logging.getLogger()
    log.debug('Starting run %s as %s', runname, username)

    use_cache = config.get('cache', True)
    if cache is not None and use_cache:
        log.debug('Using cache dir: %s', cache.directory)
    else:
        cache = None

    if config.get('sentry') is not None:
        raven_client = Client(config['sentry']['dsn'])
        raven_client.context.merge({'user': {
            'username': username
        }})

    try:
        task = make_task(args)
        job = Job(task,
                  cache=cache,
                  seed=args.seed,
                  out=args.out,
                  show_progress=not args.no_progress and sys.stdout.isatty(),
                  cache_time=int(os.environ.get('CSSQEC_CACHE_TIME', 86400)))  # in seconds
        status = job.start()

    except (IOError, OSError) as error:
        log.error('Could not access "%s": %s', error.filename, error.strerror)
        return 2

    except (ValueError, RuntimeError) as error:
        log.error('%s', error)
        return 1

    except Exception:  # pylint: disable=broad-except
        if raven_client is not None:
            raven_client.captureException()
        log.exception('Uncaught exception:')
        return 1

    summary = logging.getLogger('summary')
    summary.info('%s - %s - %s - %s', runname[:10], username, task.name, job.summary)
    return status


def main():
    log = logging.getLogger()
    try:
        config = get_config()
    except ConfigError as error:
        logging.basicConfig()
        log.error('%s', error)
        sys.exit(2)

    username = getpass.getuser()
    cache_dir = os.path.join(tempfile.gettempdir(), 'cssqec-cache-%s' % username)
    with Cache(cache_dir) as cache:
        sys.exit(run(config, cache, sys.argv[1:]))


if __name__ == '__main__':
    main()
