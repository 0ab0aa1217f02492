# coding=utf-8
"""
CSS quantum codes built from a code tower C2 ⊂ C1.

The logical basis state |x⟩ is encoded as |c_w⟩ with w the x-th coset
representative of C1⊥ in C2⊥. Recovery runs in two stages: the C1 syndrome of
the data register is copied into ancilla A and the bit flips are undone; then,
in the rotated basis, the C2⊥ syndrome goes into ancilla A' and the phase
flips are undone.
"""
import logging
from collections import namedtuple
from itertools import combinations

import numpy as np

from .codes import LinearCode, make_tower
from .gf2 import BinMatrix, BitWord, MatrixFormatError, NotASubvector, parity_table, popcount_array, syndrome
from .qsim import (RegisterLayout, StateVector, DensityMatrix, X, apply_multi, apply_permutation, embed,
                   measure_register, register_matrix, register_probabilities, transversal_hadamard)

log = logging.getLogger(__name__)

# Largest residual weight outside the code space accepted by decode
LEAKAGE_TOLERANCE = 1e-8

# Syndromes less likely than this are ignored when checking correctability
SYNDROME_CUTOFF = 1e-12


class AmbiguousSyndrome(RuntimeError):
    pass


class LeakageError(RuntimeError):
    pass


class DescriptorFormatError(ValueError):
    pass


class InvalidCode(ValueError):
    pass


RecoveryRecord = namedtuple('RecoveryRecord', ['bitflip_error', 'phase_error', 'correctable',
                                               'bitflip_syndrome', 'phase_syndrome'])


def build_syndrome_table(check, t):
    """
    Map the syndrome (as an integer) of every error of weight ≤ t to that error.
    """
    n = check.cols
    table = {}
    for weight in range(t + 1):
        for positions in combinations(range(n), weight):
            error = BitWord(n, sum(1 << i for i in positions))
            key = syndrome(check, error).bits
            if key in table:
                raise AmbiguousSyndrome('Errors %s and %s share syndrome %d' % (table[key], error, key))
            table[key] = error
    log.debug('Syndrome table with %d entries for t=%d', len(table), t)
    return table


def decode_syndrome(table, s):
    """ The tabulated error for a syndrome, or None """
    key = s.bits if isinstance(s, BitWord) else int(s)
    return table.get(key)


class RecoveryStage(object):
    """
    Syndrome extraction and correction on data ⊗ ancilla as basis permutations.
    Syndromes missing from the table get no correction.
    """

    def __init__(self, check, table, n):
        self.check = check
        self.table = table
        self.n = n
        self.size = check.nrows
        self.syndromes = parity_table(check, n)
        self.correction = np.zeros(1 << self.size, dtype=np.int64)
        self.known = np.zeros(1 << self.size, dtype=bool)
        for key, error in table.items():
            self.correction[key] = error.bits
            self.known[key] = True

        index = np.arange(1 << (n + self.size), dtype=np.int64)
        data = index & ((1 << n) - 1)
        ancilla = index >> n
        extracted = ancilla ^ self.syndromes[data]
        self.extract = data | (extracted << n)
        self.coherent = (data ^ self.correction[extracted]) | (extracted << n)

    def syndrome_distribution(self, state):
        probs = register_probabilities(state, 'data')
        return np.bincount(self.syndromes, weights=probs, minlength=1 << self.size)


class CssCode(object):
    """
    The CSS code of a tower. ``t`` is derived from the smaller of d(C1) and
    d(C2⊥).
    """

    def __init__(self, tower):
        self.tower = tower
        self.n = tower.n
        self.k_logical = tower.c1.k - tower.c2.k
        if self.k_logical < 1:
            raise InvalidCode('dim C1 - dim C2 = %d encodes no qubits' % self.k_logical)
        self.d_bitflip = tower.c1.min_distance
        self.d_phase = tower.c2_dual.min_distance
        for name, distance in (('C1', self.d_bitflip), ('C2⊥', self.d_phase)):
            if distance is None:
                raise InvalidCode('Minimum distance of %s is unknown, the code is too large to search' % name)
        self.d = min(self.d_bitflip, self.d_phase)
        self.t = (self.d - 1) // 2
        self.coset_reps = tower.coset_reps

        # C1 is checked by its dual's generator, C2⊥ by the generator of C2
        self.bitflip_check = tower.c1.parity_check
        self.phase_check = tower.c2.generator
        self.bitflip_table = build_syndrome_table(self.bitflip_check, self.t)
        self.phase_table = build_syndrome_table(self.phase_check, self.t)
        self._codeword_matrix = None
        self._stages = None

    @classmethod
    def from_tower(cls, tower):
        return cls(tower)

    @classmethod
    def from_descriptor(cls, text):
        blocks = [[]]
        for line in text.splitlines():
            if line.strip() == '---':
                blocks.append([])
            else:
                blocks[-1].append(line)
        if len(blocks) != 2:
            raise DescriptorFormatError('Expected two matrix blocks separated by "---", got %d' % len(blocks))
        try:
            g1 = BinMatrix.from_text('\n'.join(blocks[0]))
            g2 = BinMatrix.from_text('\n'.join(blocks[1]), cols=g1.cols)
        except MatrixFormatError as error:
            raise DescriptorFormatError('Invalid code descriptor: %s' % error)
        return cls(make_tower(LinearCode.from_generator(g2), LinearCode.from_generator(g1)))

    def descriptor(self):
        return self.tower.c1.generator.to_text() + '---\n' + self.tower.c2.generator.to_text()

    @property
    def rate(self):
        return self.k_logical / float(self.n)

    def layout(self, env=0):
        return RegisterLayout(self.n, self.bitflip_check.nrows, self.phase_check.nrows, env)

    def logical_label(self, x):
        return ''.join('1' if x >> j & 1 else '0' for j in range(self.k_logical))

    @property
    def codeword_matrix(self):
        """ 2^n × 2^k matrix whose column x holds |c_w⟩ for the x-th coset representative """
        if self._codeword_matrix is None:
            columns = [codeword_c(self, rep).amps for rep in self.coset_reps]
            self._codeword_matrix = np.stack(columns, axis=1)
        return self._codeword_matrix

    @property
    def stages(self):
        if self._stages is None:
            self._stages = (RecoveryStage(self.bitflip_check, self.bitflip_table, self.n),
                            RecoveryStage(self.phase_check, self.phase_table, self.n))
        return self._stages

    def __str__(self):
        return '[[%d,%d]] CSS code, t=%d' % (self.n, self.k_logical, self.t)


def load_descriptor(path):
    with open(path, encoding='utf-8') as fp:
        return CssCode.from_descriptor(fp.read())


def _data_layout(code):
    return RegisterLayout(code.n)


def _check_word(code, w):
    if w.length != code.n:
        raise ValueError('Word of length %d for a code of length %d' % (w.length, code.n))


def codeword_c(code, w):
    """ 2^(-dim C1 / 2) Σ_{c ∈ C1} (-1)^(c·w) |c⟩ """
    _check_word(code, w)
    words = code.tower.c1.codeword_array()
    signs = 1 - 2 * (popcount_array(words & w.bits) & 1)
    amps = np.zeros(1 << code.n, dtype=complex)
    amps[words] = signs / np.sqrt(len(words))
    return StateVector(_data_layout(code), amps)


def codeword_s(code, w):
    """ 2^((dim C1 - n) / 2) Σ_{u ∈ C1⊥} |u + w⟩ """
    _check_word(code, w)
    words = code.tower.c1_dual.codeword_array() ^ w.bits
    amps = np.zeros(1 << code.n, dtype=complex)
    amps[words] = 1 / np.sqrt(len(words))
    return StateVector(_data_layout(code), amps)


def codeword_steane(code, w):
    """ 2^(-dim C2 / 2) Σ_{v ∈ C2} |v + w⟩ for w ∈ C1 """
    _check_word(code, w)
    if not code.tower.c1.contains(w):
        raise ValueError('%s is not a codeword of C1' % w)
    words = code.tower.c2.codeword_array() ^ w.bits
    amps = np.zeros(1 << code.n, dtype=complex)
    amps[words] = 1 / np.sqrt(len(words))
    return StateVector(_data_layout(code), amps)


def steane_reps(code):
    """ Representatives of the cosets of C2 in C1, by weight and then string order """
    c1, c2 = code.tower.c1, code.tower.c2
    seen, reps = set(), []
    for v in sorted(c1.codewords(), key=lambda v: (v.weight(), str(v))):
        residue = c2.residue(v.bits)
        if residue not in seen:
            seen.add(residue)
            reps.append(v)
    return reps


def encode(code, logical):
    amps = logical.amps if isinstance(logical, StateVector) else np.asarray(logical, dtype=complex)
    if amps.shape != (1 << code.k_logical,):
        raise ValueError('Expected a state on %d logical qubits' % code.k_logical)
    return StateVector(_data_layout(code), code.codeword_matrix @ amps)


def prepare(code, logical, env=0):
    """ Encoded state embedded in the recovery layout, ancillas and environment in |0⟩ """
    return embed(encode(code, logical), code.layout(env))


def _check_projection(code, E, e):
    if not e.precedes(E):
        raise NotASubvector('e = %s is not supported inside E = %s' % (e, E))
    if E.weight() >= code.tower.c1_dual.min_distance:
        raise ValueError('wt(E) = %d is not below d(C1⊥) = %d' % (E.weight(), code.tower.c1_dual.min_distance))


def projected_overlap(code, w1, E, e, w2):
    """ ⟨c_w1|P|c_w2⟩ with P the projector onto basis states x with x|_E = e """
    _check_projection(code, E, e)
    a = codeword_c(code, w1).amps
    b = codeword_c(code, w2).amps
    index = np.arange(1 << code.n, dtype=np.int64)
    mask = (index & E.bits) == e.bits
    return complex(np.vdot(a[mask], b[mask]))


def lemma2_closed_form(code, w1, E, e, w2):
    """
    ±2^(-wt(E)) when some c ∈ C1⊥ puts f = c + w1 + w2 inside supp(E), with
    sign (-1)^(e·f); zero otherwise.
    """
    _check_projection(code, E, e)
    shifted = code.tower.c1_dual.codeword_array() ^ (w1.bits ^ w2.bits)
    inside = shifted[(shifted & ~E.bits) == 0]
    if len(inside) == 0:
        return 0.0
    f = BitWord(code.n, int(inside[0]))
    return (-1) ** e.dot(f) * 2.0 ** -E.weight()


def phase_coset(code, u):
    """
    Coset index of the rotated-basis word u after phase correction, or None
    when its syndrome is not tabulated.
    """
    error = decode_syndrome(code.phase_table, syndrome(code.phase_check, u))
    if error is None:
        return None
    return code.tower.coset_index(u + error)


def _stage_qubits(state, register):
    return state.layout.qubits('data') + state.layout.qubits(register)


def _apply_correction(state, error):
    for q in error.support():
        state = apply_multi(state, [q], X)
    return state


def _run_stage(stage, state, register, mode, rng):
    """ Returns (state, error, syndrome) or None when uncorrectable """
    qubits = _stage_qubits(state, register)
    if mode == 'measure':
        state = apply_permutation(state, qubits, stage.extract)
        outcome, state = measure_register(state, register, rng)
        if not stage.known[outcome.bits]:
            log.warning('Measured syndrome %s is not correctable', outcome)
            return None
        error = BitWord(stage.n, int(stage.correction[outcome.bits]))
        return _apply_correction(state, error), error, outcome

    distribution = stage.syndrome_distribution(state)
    missing = np.flatnonzero((distribution > SYNDROME_CUTOFF) & ~stage.known)
    if len(missing):
        log.warning('Syndromes %s occur but are not correctable', ', '.join(str(s) for s in missing))
        return None
    likely = int(np.argmax(distribution))
    error = BitWord(stage.n, int(stage.correction[likely]))
    return apply_permutation(state, qubits, stage.coherent), error, BitWord(stage.size, likely)


def recover(code, state, mode='coherent', rng=None):
    """
    Two-stage recovery on a state in ``code.layout(env)`` with both ancillas in
    |0⟩. In coherent mode the corrections are controlled on the ancillas and the
    record holds the most probable syndrome; in measure mode the ancillas are
    measured first. An uncorrectable syndrome leaves the input state untouched
    and is reported through ``correctable``.
    """
    if mode not in ('coherent', 'measure'):
        raise ValueError('Unknown recovery mode "%s"' % mode)
    if mode == 'measure' and rng is None:
        raise ValueError('Measure mode needs a random generator')
    if state.layout != code.layout(state.layout.env):
        raise ValueError('State layout %r does not match the code layout %r' % (state.layout, code.layout(state.layout.env)))
    bitflip, phase = code.stages

    out = _run_stage(bitflip, state, 'ancilla_a', mode, rng)
    if out is None:
        return state, _uncorrectable(code)
    current, bit_error, bit_syndrome = out

    current = transversal_hadamard(current, 'data')
    out = _run_stage(phase, current, 'ancilla_a2', mode, rng)
    if out is None:
        return state, _uncorrectable(code)
    current, phase_error, phase_syndrome = out
    current = transversal_hadamard(current, 'data')

    record = RecoveryRecord(bit_error, phase_error, True, bit_syndrome, phase_syndrome)
    log.debug('Recovered bit flips %s and phase flips %s', bit_error, phase_error)
    return current, record


def _uncorrectable(code):
    return RecoveryRecord(BitWord.zeros(code.n), BitWord.zeros(code.n), False, None, None)


def _logical_components(code, state):
    return register_matrix(state, 'data') @ code.codeword_matrix.conj()


def decode(code, state):
    """
    Logical state carried by the data register. The data register must be
    (up to 1e-8) inside the code space and unentangled from the other registers.
    """
    T = _logical_components(code, state)
    leaked = 1 - float(np.vdot(T, T).real)
    if leaked > LEAKAGE_TOLERANCE:
        raise LeakageError('%.3g of the state lies outside the code space' % leaked)
    singular = np.linalg.svd(T, compute_uv=False)
    if len(singular) > 1 and singular[1] ** 2 > LEAKAGE_TOLERANCE:
        raise LeakageError('The data register is entangled with the other registers')
    row = T[np.argmax(np.linalg.norm(T, axis=1))]
    return StateVector(RegisterLayout(code.k_logical), row / np.linalg.norm(row))


def decode_density(code, state):
    """ Logical density matrix of the data register projected onto the code space """
    T = _logical_components(code, state)
    return DensityMatrix(T.T @ T.conj(), validate=False)
