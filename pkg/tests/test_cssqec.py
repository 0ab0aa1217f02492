# encoding=utf-8
import os
import re
import shutil
import tempfile
import unittest

import pytest
from mock import Mock, patch

from cssqec.cssqec import ConfigError, get_config, parse_args, run
from cssqec.job import Job
from cssqec.task import Task, TaskResult


def get_cache_mock():
    cache = Mock()
    cache.get = Mock(return_value=None)
    return cache


def get_data_path(filename):
    return os.path.join(os.path.abspath(os.path.dirname(__file__)), 'data', filename)


def strip_colors(txt):
    return re.sub(r'\x1b(\[.*?[@-~]|\].*?(\x07|\x1b\\))', '', str(txt))


def run_captured(argv, config=None):
    """ Runs the command line and returns (status, printed lines) """
    with patch('cssqec.job.utf8print') as printer:
        status = run(config or {}, get_cache_mock(), argv)
    lines = [strip_colors(call[0][0]) for call in printer.call_args_list]
    return status, lines


class TestArgumentParsing(unittest.TestCase):

    def test_missing_subcommand(self):
        with pytest.raises(SystemExit):
            parse_args([], None)

    def test_defaults(self):
        args = parse_args(['mc-fidelity'])

        assert args.action == 'mc-fidelity'
        assert args.code == 'steane'
        assert args.p == 0.01
        assert args.trials == 1000
        assert args.inputs == 20
        assert args.seed == 0
        assert args.out is None

    def test_config_defaults(self):
        args = parse_args(['recover-demo'], {'trials': 10, 'mode': 'measure'})

        assert args.trials == 10
        assert args.mode == 'measure'

    def test_encode_dump_defaults(self):
        args = parse_args(['encode-dump'])

        assert args.label == '0'
        assert args.mode == 'c'

    def test_probability_range(self):
        with pytest.raises(SystemExit):
            parse_args(['mc-fidelity', '--p', '1.5'])

    def test_step_range(self):
        with pytest.raises(SystemExit):
            parse_args(['bounds-table', '--step', '0.05'])

    def test_negative_seed(self):
        with pytest.raises(SystemExit):
            parse_args(['recover-demo', '--seed', '-1'])

    def test_selfdual_ranges(self):
        with pytest.raises(SystemExit):
            parse_args(['selfdual-enum', '--n', '7', '--k', '1'])
        with pytest.raises(SystemExit):
            parse_args(['selfdual-enum', '--n', '14', '--k', '1'])
        with pytest.raises(SystemExit):
            parse_args(['sigma-check', '--n', '6', '--k', '2', '--s', '3'])

        args = parse_args(['sigma-check', '--n', '6', '--k', '3', '--s', '2'])
        assert (args.n, args.k, args.s) == (6, 3, 2)


class TestConfig(unittest.TestCase):

    @patch('cssqec.cssqec.os.path.exists', autospec=True)
    def testConfigMissing(self, exists):
        exists.return_value = False

        assert get_config() == {}

    @patch('cssqec.cssqec.open', create=True)
    @patch('cssqec.cssqec.os.path.exists', autospec=True)
    def testConfigUnreadable(self, exists, mock_open):
        exists.return_value = True
        mock_open.side_effect = IOError('Permission denied')

        with pytest.raises(ConfigError):
            get_config()

        mock_open.assert_called_once_with('./cssqec.yml', encoding='utf-8')


class TestJob(unittest.TestCase):

    def setUp(self):
        self.tmpdir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmpdir)

    def testWritesArtifact(self):
        task = Task()
        task._run = Mock(return_value=TaskResult('done', 'a,b\n1,2\n', 0))
        out = os.path.join(self.tmpdir, 'out.csv')

        with patch('cssqec.job.utf8print'):
            status = Job(task, out=out).start()

        assert status == 0
        with open(out, encoding='utf-8') as fp:
            assert fp.read() == 'a,b\n1,2\n'

    def testSeedLineForRandomizedTasks(self):
        task = Task()
        task.randomized = True
        job = Job(task, seed=42)

        assert job.artifact('x\n') == '# seed=42\nx\n'

    def testProgressOnlyForLongRuns(self):
        job = Job(Task(), show_progress=True)
        items = [1, 2, 3]

        assert job.progress(items, len(items), 'short') is items


class TestCommands(unittest.TestCase):

    def setUp(self):
        self.tmpdir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmpdir)

    def read(self, filename):
        with open(os.path.join(self.tmpdir, filename), encoding='utf-8') as fp:
            return fp.read()

    def testCodeInfo(self):
        status, lines = run_captured(['code-info'])

        assert status == 0
        assert lines[-1] == 'n=7 k=4 d=3 dual_k=3 dual_d=4'

    def testCssBuild(self):
        status, lines = run_captured(['css-build'])

        assert status == 0
        assert lines[-1].startswith('n=7 k=1 t=1 rate=1/7')

    def testCssBuildFromDescriptor(self):
        status, lines = run_captured(['css-build', '--code', get_data_path('steane.code')])

        assert status == 0
        assert lines[-1] == 'n=7 k=1 t=1 rate=1/7 cosets=0000000,0001011'

    def testMissingCodeFile(self):
        status, _ = run_captured(['css-build', '--code', get_data_path('does-not-exist.code')])

        assert status == 2

    def testNotNested(self):
        status, _ = run_captured(['css-build', '--code', get_data_path('bad.code')])

        assert status == 1

    def testEncodeDump(self):
        status, lines = run_captured(['encode-dump', '--inputs', '1', '--mode', 's'])

        assert status == 0
        assert lines[0].startswith('index,re,im')
        assert lines[-1] == 'encoded |1> (s basis) with 8 nonzero amplitudes'

    def testBoundsTable(self):
        out = os.path.join(self.tmpdir, 'fig1.csv')
        status, _ = run_captured(['bounds-table', '--step', '0.001', '--out', out])

        assert status == 0
        lines = self.read('fig1.csv').splitlines()
        assert lines[0] == 'x,gv_rate,holevo_bound,entanglement_bound'
        assert lines[1] == '0,1,1,1'

    def testNoiselessMonteCarlo(self):
        status, lines = run_captured(['mc-fidelity', '--p', '0', '--trials', '100', '--seed', '7', '--inputs', '2'])

        assert status == 0
        assert lines[-1].startswith('min fidelity 1 ± ')

    def testMonteCarloLog(self):
        out = os.path.join(self.tmpdir, 'log.csv')
        argv = ['mc-fidelity', '--p', '0.1', '--trials', '20', '--seed', '3', '--inputs', '2', '--out', out]
        status, _ = run_captured(argv)

        assert status == 0
        lines = self.read('log.csv').splitlines()
        assert lines[0] == '# seed=3'
        assert lines[1] == 'trial,pattern,corrected,fidelity'
        assert len(lines) == 22

    def testRecoverDemoReproducible(self):
        outputs = []
        for name in ('a.csv', 'b.csv'):
            out = os.path.join(self.tmpdir, name)
            status, lines = run_captured(['recover-demo', '--trials', '4', '--seed', '9', '--out', out])
            assert status == 0
            outputs.append(self.read(name))

        assert outputs[0] == outputs[1]
        assert outputs[0].startswith('# seed=9\ntrial,support,fidelity,purity,correctable\n')

    def testRecoverDemoMeasureMode(self):
        status, lines = run_captured(['recover-demo', '--trials', '3', '--mode', 'measure'])

        assert status == 0
        assert lines[-1].startswith('3 trials: min fidelity')

    def testSelfDualEnum(self):
        status, lines = run_captured(['selfdual-enum', '--n', '4', '--k', '2'])

        assert status == 0
        assert lines[-1] == '3 weakly self-dual [4,2] codes'

    def testSelfDualEnumOddLength(self):
        status, _ = run_captured(['selfdual-enum', '--n', '5', '--k', '1'])

        assert status == 2

    def testSelfDualEnumTooLong(self):
        status, _ = run_captured(['selfdual-enum', '--n', '14', '--k', '2'])

        assert status == 2

    def testSelfDualEnumDimensionTooLarge(self):
        status, _ = run_captured(['selfdual-enum', '--n', '4', '--k', '3'])

        assert status == 2

    def testSigmaCheckSeedLargerThanK(self):
        status, _ = run_captured(['sigma-check', '--n', '4', '--k', '1', '--s', '2'])

        assert status == 2

    def testSigmaCheckZeroSeedDimension(self):
        status, _ = run_captured(['sigma-check', '--n', '4', '--k', '1', '--s', '0'])

        assert status == 2

    def testGvSearchRanges(self):
        for argv in (['--n', '4', '--k', '2', '--d', '0'], ['--n', '16', '--k', '2', '--d', '2'],
                     ['--n', '6', '--k', '0', '--d', '2']):
            status, _ = run_captured(['gv-search'] + argv)

            assert status == 2

    def testSigmaCheck(self):
        status, lines = run_captured(['sigma-check', '--n', '6', '--k', '3', '--s', '2'])

        assert status == 0
        assert lines[-1].startswith('sigma(6,3,2) = ')

    def testGvSearch(self):
        status, lines = run_captured(['gv-search', '--n', '4', '--k', '2', '--d', '2'])

        assert status == 0
        assert 'witness with dual distance 2' in lines[-1]

    def testCacheDisabled(self):
        cache = get_cache_mock()
        with patch('cssqec.job.utf8print'):
            run({'cache': False}, cache, ['selfdual-enum', '--n', '4', '--k', '1'])

        cache.get.assert_not_called()
