# coding=utf-8
"""
Noise models: decoherence of a few data qubits through a joint unitary with
the environment, and the per-qubit depolarising channel. Also the logical
fidelity campaigns run on top of them.
"""
import logging
from itertools import product

import numpy as np
from scipy.stats import binom
from tqdm import tqdm

from .css import prepare, recover
from .gf2 import BitWord, EnumerationLimitExceeded, popcount_array
from .qsim import (PAULI_MATRICES, DensityMatrix, InvalidDensityMatrix, RegisterLayout, StateVector, X,
                   apply_multi, check_unitary, random_state, random_unitary, register_matrix)
from .util import format_amplitude, trial_rng

log = logging.getLogger(__name__)

PAULI_LABELS = ''.join(PAULI_MATRICES)

# Largest number of Pauli patterns swept in exhaustive mode
EXHAUSTIVE_LIMIT = 1 << 20

# Fidelity at which a trial counts as fully corrected
CORRECTED_FIDELITY = 1 - 1e-9

# Progress bars are only shown for longer runs
PROGRESS_THRESHOLD = 50


class InvalidChannel(ValueError):
    pass


class PauliChannelSpec(object):
    """ Identity with probability 1 - p, each of X, Z, Y with p/3 """

    def __init__(self, p):
        if not 0 <= p <= 1:
            raise InvalidChannel('Error probability %r outside [0, 1]' % p)
        self.p = float(p)

    @property
    def probabilities(self):
        return np.array([1 - self.p, self.p / 3, self.p / 3, self.p / 3])

    def __repr__(self):
        return 'PauliChannelSpec(p=%r)' % self.p


class GeneralDecoherence(object):
    """
    A joint unitary on the data qubits in supp(E) followed by ``env`` environment
    qubits. The environment starts from the basis state ``env_init``.
    """

    def __init__(self, support, unitary, env, env_init=0):
        """
        :type support: BitWord
        """
        self.support = support
        self.env = env
        self.env_init = env_init
        self.unitary = check_unitary(unitary, 1 << (support.weight() + env))
        if not 0 <= env_init < 1 << env:
            raise InvalidChannel('Environment basis state %d outside %d qubits' % (env_init, env))

    def __repr__(self):
        return 'GeneralDecoherence(support=%s, env=%d)' % (self.support, self.env)


def apply_general(state, dec):
    layout = state.layout
    if dec.support.length != layout.data:
        raise InvalidChannel('Support of length %d on a %d-qubit data register' % (dec.support.length, layout.data))
    if dec.env > layout.env:
        raise InvalidChannel('Decoherence needs %d environment qubits, the layout has %d' % (dec.env, layout.env))
    env_qubits = layout.qubits('env')[:dec.env]
    for j, q in enumerate(env_qubits):
        if dec.env_init >> j & 1:
            state = apply_multi(state, [q], X)
    return apply_multi(state, list(dec.support.support()) + env_qubits, dec.unitary)


def random_decoherence(code_or_n, support, rng, env_per_qubit=2):
    """ Haar-random coupling of the given data qubits to a fresh environment """
    n = code_or_n if isinstance(code_or_n, int) else code_or_n.n
    if not isinstance(support, BitWord):
        support = BitWord(n, sum(1 << q for q in support))
    env = env_per_qubit * support.weight()
    return GeneralDecoherence(support, random_unitary(1 << (support.weight() + env), rng), env)


def draw_pauli_pattern(spec, count, rng):
    draws = rng.choice(len(PAULI_LABELS), size=count, p=spec.probabilities)
    return ''.join(PAULI_LABELS[i] for i in draws)


def apply_pauli_pattern(state, pattern, qubits=None):
    """ Apply pattern[j] to qubits[j] (the data register by default); Y is X then Z """
    qubits = state.layout.qubits('data') if qubits is None else state.layout.resolve(qubits)
    if len(pattern) != len(qubits):
        raise InvalidChannel('Pattern %s does not cover %d qubits' % (pattern, len(qubits)))
    xmask, zmask = 0, 0
    for label, q in zip(pattern, qubits):
        if label not in PAULI_LABELS:
            raise InvalidChannel('Unknown Pauli label "%s"' % label)
        if label in 'XY':
            xmask |= 1 << q
        if label in 'ZY':
            zmask |= 1 << q
    index = np.arange(state.layout.dim, dtype=np.int64)
    amps = state.amps[index ^ xmask]
    if zmask:
        amps = amps * (1 - 2 * (popcount_array(index & zmask) & 1))
    return StateVector(state.layout, amps, validate=False)


def sample_depolarize(state, spec, qubits, rng):
    qubits = state.layout.resolve(qubits)
    pattern = draw_pauli_pattern(spec, len(qubits), rng)
    return apply_pauli_pattern(state, pattern, qubits), pattern


def pattern_probability(pattern, p):
    errors = sum(1 for label in pattern if label != 'I')
    return (1 - p) ** (len(pattern) - errors) * (p / 3.) ** errors


def depolarize_density(rho, p):
    """ (1 - p) ρ + (p/3) Σ σ ρ σ† over σ ∈ {X, Z, Y} """
    if not 0 <= p <= 1:
        raise InvalidChannel('Error probability %r outside [0, 1]' % p)
    if rho.dim != 2:
        raise InvalidDensityMatrix('Expected a single-qubit density matrix')
    out = (1 - p) * rho.matrix
    for label in 'XZY':
        U = PAULI_MATRICES[label]
        out = out + p / 3. * U @ rho.matrix @ U.conj().T
    return DensityMatrix(out)


def binomial_fidelity_bound(n, t, F):
    """ Σ_{j ≤ t} C(n, j) F^(n-j) (1-F)^j """
    if not 0 <= F <= 1:
        raise ValueError('Fidelity %r outside [0, 1]' % F)
    if not 0 <= t <= n:
        raise ValueError('t = %d outside [0, %d]' % (t, n))
    return float(binom.cdf(t, n, 1 - F))


def axis_states(k):
    """ The six single-qubit axis states, each taken on all k logical qubits """
    s = 1 / np.sqrt(2)
    singles = [[1, 0], [0, 1], [s, s], [s, -s], [s, 1j * s], [s, -1j * s]]
    out = []
    for single in singles:
        amps = np.array([1], dtype=complex)
        for _ in range(k):
            amps = np.kron(np.array(single, dtype=complex), amps)
        out.append(StateVector(RegisterLayout(k), amps))
    return out


def default_inputs(k, count, rng):
    return axis_states(k) + [random_state(k, rng) for _ in range(count)]


class FidelityReport(object):
    """
    Per-input mean fidelities over trials (or exact values in exhaustive mode).
    The minimum over inputs stands in for the channel fidelity.
    """

    def __init__(self, means, std_errors, trials, corrected_fraction, trial_log=None):
        self.means = np.asarray(means, dtype=float)
        self.std_errors = np.asarray(std_errors, dtype=float)
        self.trials = trials
        self.corrected_fraction = corrected_fraction
        self.trial_log = trial_log or []

    @property
    def minimum(self):
        return float(self.means.min())

    @property
    def argmin(self):
        return int(self.means.argmin())

    @property
    def min_std_error(self):
        return float(self.std_errors[self.argmin])

    @property
    def average(self):
        return float(self.means.mean())

    def trial_log_csv(self):
        lines = ['trial,pattern,corrected,fidelity']
        for trial, pattern, corrected, value in self.trial_log:
            lines.append('%d,%s,%d,%s' % (trial, pattern, corrected, format_amplitude(value)))
        return '\n'.join(lines) + '\n'

    def __str__(self):
        return 'min fidelity %.9f (±%.2g), average %.9f, corrected %.4f' % (
            self.minimum, self.min_std_error, self.average, self.corrected_fraction)


class PatternFidelity(object):
    """
    Logical fidelity of every input after one Pauli pattern and recovery.
    Each pattern is simulated once per logical basis state and the inputs are
    combined linearly; results are memoised per pattern.
    """

    def __init__(self, code, inputs):
        self.code = code
        self.inputs = np.stack([x.amps for x in inputs])
        self.basis = [prepare(code, np.eye(1 << code.k_logical, dtype=complex)[x])
                      for x in range(1 << code.k_logical)]
        self.cache = {}

    def __call__(self, pattern):
        if pattern not in self.cache:
            self.cache[pattern] = self._evaluate(pattern)
        return self.cache[pattern]

    def _evaluate(self, pattern):
        components = []
        for state in self.basis:
            out, _ = recover(self.code, apply_pauli_pattern(state, pattern))
            components.append(register_matrix(out, 'data') @ self.code.codeword_matrix.conj())
        T = np.stack(components)
        combined = np.einsum('il,lrx->irx', self.inputs, T)
        overlaps = np.einsum('ix,irx->ir', self.inputs.conj(), combined)
        return np.clip((np.abs(overlaps) ** 2).sum(axis=1), 0, 1)


def logical_fidelity_mc(code, spec, inputs, trials, seed=0, show_progress=False, keep_log=False):
    """
    Monte Carlo logical fidelity: trial j draws one Pauli pattern over all data
    qubits from the stream trial_rng(seed, j) and applies it to every input.
    """
    if trials < 1:
        raise ValueError('At least one trial is needed')
    evaluate = PatternFidelity(code, inputs)
    values = np.empty((trials, len(inputs)))
    trial_log = []
    pbar = None
    if show_progress and trials > PROGRESS_THRESHOLD:
        pbar = tqdm(total=trials, desc='Monte Carlo trials')
    for trial in range(trials):
        pattern = draw_pauli_pattern(spec, code.n, trial_rng(seed, trial))
        values[trial] = evaluate(pattern)
        if keep_log:
            worst = float(values[trial].min())
            trial_log.append((trial, pattern, int(worst >= CORRECTED_FIDELITY), worst))
        if pbar is not None:
            pbar.update(1)
    if pbar is not None:
        pbar.close()

    means = values.mean(axis=0)
    if trials > 1:
        std_errors = values.std(axis=0, ddof=1) / np.sqrt(trials)
    else:
        std_errors = np.zeros(len(inputs))
    corrected = float((values.min(axis=1) >= CORRECTED_FIDELITY).mean())
    log.debug('%d trials, %d distinct patterns simulated', trials, len(evaluate.cache))
    return FidelityReport(means, std_errors, trials, corrected, trial_log)


def logical_fidelity_exhaustive(code, spec, inputs, show_progress=False):
    """ Exact logical fidelity, summing over all 4^n Pauli patterns """
    if 4 ** code.n > EXHAUSTIVE_LIMIT:
        raise EnumerationLimitExceeded('4^%d Pauli patterns exceed the exhaustive limit' % code.n)
    evaluate = PatternFidelity(code, inputs)
    means = np.zeros(len(inputs))
    corrected = 0.0
    pbar = None
    if show_progress and 4 ** code.n > PROGRESS_THRESHOLD:
        pbar = tqdm(total=4 ** code.n, desc='Pauli patterns')
    for labels in product(PAULI_LABELS, repeat=code.n):
        pattern = ''.join(labels)
        weight = pattern_probability(pattern, spec.p)
        if weight > 0:
            values = evaluate(pattern)
            evaluate.cache.pop(pattern)
            means += weight * values
            if values.min() >= CORRECTED_FIDELITY:
                corrected += weight
        if pbar is not None:
            pbar.update(1)
    if pbar is not None:
        pbar.close()
    return FidelityReport(np.clip(means, 0, 1), np.zeros(len(inputs)), None, corrected)
