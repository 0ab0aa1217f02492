# coding=utf-8
import logging
from collections import namedtuple
from fractions import Fraction

from colorama import Fore, Style

from .bounds import figure1_csv, figure1_table, gv_figure_threshold
from .channels import (PauliChannelSpec, apply_general, binomial_fidelity_bound, default_inputs,
                       logical_fidelity_exhaustive, logical_fidelity_mc, random_decoherence)
from .codes import dump_codes, enumerate_weakly_self_dual, greedy_existence_check, sigma_census
from .css import codeword_c, codeword_s, codeword_steane, decode_density, prepare, recover, steane_reps
from .gf2 import BitWord
from .qsim import dump_csv, fidelity, partial_trace, purity, random_state
from .util import child_rng, format_curve, trial_rng

log = logging.getLogger(__name__)

TaskResult = namedtuple('TaskResult', ['summary', 'output', 'status'])


class Task(object):
    """
    Task class from which the command classes inherit. A task computes a
    summary line, optionally a text artifact, and an exit status.
    """

    name = None

    # Randomised artifacts start with a "# seed=<seed>" line
    randomized = False

    def __init__(self, **options):
        self.options = options

    def describe_options(self):
        return ' '.join('%s=%s' % (key, value) for key, value in sorted(self.options.items()) if value is not None)

    def __str__(self):
        return '{}{}{} {}'.format(Fore.CYAN, self.name, Style.RESET_ALL, self.describe_options()).rstrip()

    def _run(self, job):
        return TaskResult('', None, 0)

    def run(self, job):
        log.debug('Run task: %s', self)
        return self._run(job)


class CodeInfoTask(Task):
    """ Parameters of a classical code and its dual """

    name = 'code-info'

    def __init__(self, code, label):
        super(CodeInfoTask, self).__init__(code=label)
        self.code = code

    def _run(self, job):
        dual = self.code.dual()
        summary = 'n=%d k=%d d=%s dual_k=%d dual_d=%s' % (
            self.code.n, self.code.k, self.code.min_distance, dual.k, dual.min_distance)
        return TaskResult(summary, None, 0)


class CssBuildTask(Task):
    """ Parameters and coset representatives of a CSS code """

    name = 'css-build'

    def __init__(self, code, label):
        super(CssBuildTask, self).__init__(code=label)
        self.code = code

    def _run(self, job):
        code = self.code
        summary = 'n=%d k=%d t=%d rate=%s cosets=%s' % (
            code.n, code.k_logical, code.t, Fraction(code.k_logical, code.n),
            ','.join(str(rep) for rep in code.coset_reps))
        return TaskResult(summary, None, 0)


class EncodeDumpTask(Task):
    """ Amplitudes of an encoded logical basis state """

    name = 'encode-dump'

    def __init__(self, code, label, logical, mode):
        super(EncodeDumpTask, self).__init__(code=label, inputs=logical, mode=mode)
        self.code = code
        self.logical = logical
        self.mode = mode

    def _run(self, job):
        code = self.code
        if len(self.logical) != code.k_logical or any(c not in '01' for c in self.logical):
            raise ValueError('Logical label "%s" must be %d binary digits' % (self.logical, code.k_logical))
        x = BitWord.from_string(self.logical).bits
        if self.mode == 'c':
            state = codeword_c(code, code.coset_reps[x])
        elif self.mode == 's':
            state = codeword_s(code, code.coset_reps[x])
        else:
            state = codeword_steane(code, steane_reps(code)[x])
        output = dump_csv(state)
        count = len(output.splitlines()) - 1
        return TaskResult('encoded |%s> (%s basis) with %d nonzero amplitudes' % (code.logical_label(x), self.mode, count),
                          output, 0)


class RecoverDemoTask(Task):
    """
    Random decoherence coupling max(t, 1) data qubits to an environment,
    followed by recovery. Every trial uses its own random stream.
    """

    name = 'recover-demo'
    randomized = True

    def __init__(self, code, label, trials, mode):
        super(RecoverDemoTask, self).__init__(code=label, trials=trials, mode=mode)
        self.code = code
        self.trials = trials
        self.mode = mode

    def run_trial(self, trial, seed):
        code = self.code
        rng = trial_rng(seed, trial)
        support = sorted(rng.choice(code.n, size=max(code.t, 1), replace=False).tolist())
        dec = random_decoherence(code, support, rng)
        logical = random_state(code.k_logical, rng)
        state = apply_general(prepare(code, logical, env=dec.env), dec)
        state, record = recover(code, state, mode=self.mode, rng=rng)
        value = fidelity(decode_density(code, state), logical)
        data_purity = purity(partial_trace(state, 'data'))
        return dec.support, value, data_purity, record.correctable

    def _run(self, job):
        lines = ['trial,support,fidelity,purity,correctable']
        worst_fidelity, worst_purity, failures = 1.0, 1.0, 0
        for trial in job.progress(range(self.trials), self.trials, 'Recovery trials'):
            support, value, data_purity, correctable = self.run_trial(trial, job.seed)
            lines.append('%d,%s,%s,%s,%d' % (trial, support, format_curve(value), format_curve(data_purity),
                                             int(correctable)))
            worst_fidelity = min(worst_fidelity, value)
            worst_purity = min(worst_purity, data_purity)
            failures += 0 if correctable else 1
        if failures:
            return TaskResult('UNCORRECTABLE in %d of %d trials' % (failures, self.trials), '\n'.join(lines) + '\n', 1)
        summary = '%d trials: min fidelity %s, min data purity %s' % (
            self.trials, format_curve(worst_fidelity), format_curve(worst_purity))
        return TaskResult(summary, '\n'.join(lines) + '\n', 0)


class FidelityTask(Task):

    randomized = True

    def __init__(self, code, label, p, inputs, **options):
        super(FidelityTask, self).__init__(code=label, p=p, inputs=inputs, **options)
        self.code = code
        self.spec = PauliChannelSpec(p)
        self.num_random_inputs = inputs

    def inputs(self, seed):
        return default_inputs(self.code.k_logical, self.num_random_inputs, child_rng(seed, 'inputs'))

    def bound(self):
        return binomial_fidelity_bound(self.code.n, self.code.t, 1 - self.spec.p)


class McFidelityTask(FidelityTask):
    """ Monte Carlo logical fidelity under the depolarising channel """

    name = 'mc-fidelity'

    def __init__(self, code, label, p, inputs, trials):
        super(McFidelityTask, self).__init__(code, label, p, inputs, trials=trials)
        self.trials = trials

    def _run(self, job):
        report = logical_fidelity_mc(self.code, self.spec, self.inputs(job.seed), self.trials, seed=job.seed,
                                     show_progress=job.show_progress, keep_log=job.out is not None)
        output = None
        if job.out is not None:
            output = report.trial_log_csv()
        summary = 'min fidelity %s ± %s, average %s, corrected %s, bound %s' % (
            format_curve(report.minimum), format_curve(report.min_std_error), format_curve(report.average),
            format_curve(report.corrected_fraction), format_curve(self.bound()))
        return TaskResult(summary, output, 0)


class ExhaustiveFidelityTask(FidelityTask):
    """ Exact logical fidelity, summed over every Pauli pattern """

    name = 'exhaustive-fidelity'

    def _run(self, job):
        report = logical_fidelity_exhaustive(self.code, self.spec, self.inputs(job.seed),
                                             show_progress=job.show_progress)
        summary = 'exact min fidelity %s, average %s, bound %s' % (
            format_curve(report.minimum), format_curve(report.average), format_curve(self.bound()))
        return TaskResult(summary, None, 0)


class SelfDualEnumTask(Task):
    """ All weakly self-dual [n, k] codes """

    name = 'selfdual-enum'

    def __init__(self, n, k):
        super(SelfDualEnumTask, self).__init__(n=n, k=k)
        self.n = n
        self.k = k

    def _run(self, job):
        codes = enumerate_weakly_self_dual(self.n, self.k, job.cache, job.cache_time)
        return TaskResult('%d weakly self-dual [%d,%d] codes' % (len(codes), self.n, self.k), dump_codes(codes), 0)


class SigmaCheckTask(Task):
    """ Checks that every seed of dimension s lies in equally many [n, k] codes """

    name = 'sigma-check'

    def __init__(self, n, k, s):
        super(SigmaCheckTask, self).__init__(n=n, k=k, s=s)
        self.n = n
        self.k = k
        self.s = s

    def _run(self, job):
        census = sigma_census(self.n, self.k, self.s, job.cache)
        values = sorted(set(census.values()))
        if len(values) == 1:
            summary = 'sigma(%d,%d,%d) = %d for all %d seeds' % (self.n, self.k, self.s, values[0], len(census))
            return TaskResult(summary, None, 0)
        summary = 'sigma(%d,%d,%d) depends on the seed: %s' % (self.n, self.k, self.s, values)
        return TaskResult(summary, None, 1)


class GvSearchTask(Task):
    """ The counting argument for a weakly self-dual code with dual distance ≥ d """

    name = 'gv-search'

    def __init__(self, n, k, d):
        super(GvSearchTask, self).__init__(n=n, k=k, d=d)
        self.n = n
        self.k = k
        self.d = d

    def _run(self, job):
        check = greedy_existence_check(self.n, self.k, self.d, job.cache)
        summary = 'inequality %s: %d < %d' % ('holds' if check.holds else 'fails', check.lhs, check.rhs)
        output = None
        if check.witness is not None:
            summary += ', witness with dual distance %d' % check.dual_distance
            output = dump_codes([check.witness])
        else:
            summary += ', no witness'
        return TaskResult(summary, output, 0)


class BoundsTableTask(Task):
    """ Rate and capacity bound curves on a grid """

    name = 'bounds-table'

    def __init__(self, step):
        super(BoundsTableTask, self).__init__(step=step)
        self.step = step

    def _run(self, job):
        rows = figure1_table(self.step)
        summary = '%d grid points, rate reaches zero at x=%s' % (len(rows), format_curve(gv_figure_threshold()))
        return TaskResult(summary, figure1_csv(rows), 0)
