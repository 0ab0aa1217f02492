# coding=utf-8
"""
Dense statevector simulation over the registers used for recovery:
data, ancilla A, ancilla A' and environment, in that order from the
least significant bit of the basis index.
"""
import logging
from collections import OrderedDict, namedtuple

import numpy as np
from scipy.stats import entropy, unitary_group

from .gf2 import BitWord, LengthMismatch
from .util import DUMP_CUTOFF, TOLERANCE, format_amplitude, strip_comments

log = logging.getLogger(__name__)

MAX_QUBITS = 26
MAX_GATE_QUBITS = 12
MAX_KEPT_QUBITS = 12

REGISTERS = ('data', 'ancilla_a', 'ancilla_a2', 'env')

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
Y = np.array([[0, 1], [-1, 0]], dtype=complex)  # X then Z, kept real
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)

PAULI_MATRICES = OrderedDict([('I', I2), ('X', X), ('Z', Z), ('Y', Y)])


class NotUnitary(ValueError):
    pass


class InvalidQubit(ValueError):
    pass


class InvalidDensityMatrix(ValueError):
    pass


class ZeroNormBranch(RuntimeError):
    pass


class LayoutTooLarge(ValueError):
    pass


class RegisterLayout(namedtuple('RegisterLayout', REGISTERS)):
    """ Qubit counts per register; each register is a contiguous block """

    __slots__ = ()

    def __new__(cls, data, ancilla_a=0, ancilla_a2=0, env=0):
        self = super(RegisterLayout, cls).__new__(cls, data, ancilla_a, ancilla_a2, env)
        if min(self) < 0:
            raise ValueError('Negative register size in %r' % (self,))
        if self.total > MAX_QUBITS:
            raise LayoutTooLarge('%d qubits requested, the simulator holds at most %d' % (self.total, MAX_QUBITS))
        return self

    @property
    def total(self):
        return sum(self)

    @property
    def dim(self):
        return 1 << self.total

    def offset(self, register):
        return sum(self[:REGISTERS.index(register)])

    def qubits(self, register):
        if register not in REGISTERS:
            raise InvalidQubit('Unknown register "%s"' % register)
        start = self.offset(register)
        return list(range(start, start + getattr(self, register)))

    def resolve(self, qubits):
        """ Qubit list from a register name, a list of names, or qubit indices """
        if isinstance(qubits, str):
            return self.qubits(qubits)
        out = []
        for q in qubits:
            if isinstance(q, str):
                out.extend(self.qubits(q))
            else:
                out.append(int(q))
        return out


class StateVector(object):

    def __init__(self, layout, amps, validate=True):
        amps = np.asarray(amps, dtype=complex)
        if amps.shape != (layout.dim,):
            raise LengthMismatch('Expected %d amplitudes, got %s' % (layout.dim, amps.shape))
        if validate:
            norm = np.vdot(amps, amps).real
            if abs(norm - 1) > TOLERANCE:
                raise ValueError('State is not normalised: Σ|amp|² = %.15g' % norm)
        self.layout = layout
        self.amps = amps

    @property
    def num_qubits(self):
        return self.layout.total

    def norm(self):
        return float(np.sqrt(np.vdot(self.amps, self.amps).real))

    def copy(self):
        return StateVector(self.layout, self.amps.copy(), validate=False)

    def __repr__(self):
        return 'StateVector(%r)' % (self.layout,)


class DensityMatrix(object):

    def __init__(self, matrix, validate=True):
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise InvalidDensityMatrix('Density matrix must be square, got %s' % (matrix.shape,))
        dim = matrix.shape[0]
        if dim & (dim - 1) or dim == 0:
            raise InvalidDensityMatrix('Dimension %d is not a power of two' % dim)
        if validate:
            if not np.allclose(matrix, matrix.conj().T, atol=TOLERANCE):
                raise InvalidDensityMatrix('Density matrix is not Hermitian')
            trace = np.trace(matrix).real
            if abs(trace - 1) > TOLERANCE:
                raise InvalidDensityMatrix('Density matrix has trace %.15g' % trace)
            if np.linalg.eigvalsh(matrix).min() < -TOLERANCE:
                raise InvalidDensityMatrix('Density matrix has a negative eigenvalue')
        self.matrix = matrix
        self.dim = dim

    @classmethod
    def from_state(cls, x):
        amps = x.amps if isinstance(x, StateVector) else np.asarray(x, dtype=complex)
        return cls(np.outer(amps, amps.conj()))

    @property
    def num_qubits(self):
        return self.dim.bit_length() - 1

    def trace(self):
        return float(np.trace(self.matrix).real)

    def __repr__(self):
        return 'DensityMatrix(%d×%d)' % (self.dim, self.dim)


def check_unitary(U, dim=None):
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1] or (dim is not None and U.shape[0] != dim):
        raise NotUnitary('Expected a %s×%s matrix, got %s' % (dim, dim, U.shape))
    deviation = np.abs(U @ U.conj().T - np.eye(U.shape[0])).max()
    if deviation > TOLERANCE:
        raise NotUnitary('Matrix deviates from unitarity by %.3g' % deviation)
    return U


def _check_qubits(state, qubits):
    qubits = state.layout.resolve(qubits)
    n = state.num_qubits
    for q in qubits:
        if not 0 <= q < n:
            raise InvalidQubit('Qubit %d outside [0, %d)' % (q, n))
    if len(set(qubits)) != len(qubits):
        raise InvalidQubit('Duplicate qubits in %r' % (qubits,))
    return qubits


def _gather(amps, n, qubits):
    """
    Reshape amplitudes into (rest, 2^m) where the column index has bit j equal
    to qubit qubits[j].
    """
    psi = amps.reshape([2] * n)
    src = [n - 1 - q for q in reversed(qubits)]
    dst = list(range(n - len(qubits), n))
    psi = np.moveaxis(psi, src, dst)
    return psi.reshape(-1, 1 << len(qubits)), (src, dst, psi.shape)


def _scatter(matrix, n, axes):
    src, dst, shape = axes
    return np.moveaxis(matrix.reshape(shape), dst, src).reshape(-1)


def register_matrix(state, register):
    """ Amplitudes as a (rest, 2^m) matrix, one column per basis state of the register """
    qubits = _check_qubits(state, register)
    M, _ = _gather(state.amps, state.num_qubits, qubits)
    return M


def basis_state(layout, bits):
    if isinstance(bits, BitWord):
        if bits.length != layout.total:
            raise LengthMismatch('Basis label has length %d, layout has %d qubits' % (bits.length, layout.total))
        index = bits.bits
    else:
        index = int(bits)
        if not 0 <= index < layout.dim:
            raise LengthMismatch('Basis index %d outside the layout' % index)
    amps = np.zeros(layout.dim, dtype=complex)
    amps[index] = 1
    return StateVector(layout, amps)


def apply_multi(state, qubits, U):
    """
    Apply U to the listed qubits; qubits[0] is the least significant bit of
    U's row and column index.
    """
    qubits = _check_qubits(state, qubits)
    if len(qubits) > MAX_GATE_QUBITS:
        raise InvalidQubit('At most %d qubits per gate, got %d' % (MAX_GATE_QUBITS, len(qubits)))
    U = check_unitary(U, 1 << len(qubits))
    psi, axes = _gather(state.amps, state.num_qubits, qubits)
    return StateVector(state.layout, _scatter(psi @ U.T, state.num_qubits, axes), validate=False)


def apply_1q(state, qubit, U):
    return apply_multi(state, [qubit], U)


def transversal_hadamard(state, qubits):
    qubits = _check_qubits(state, qubits)
    n = state.num_qubits
    psi = state.amps.reshape([2] * n)
    for q in qubits:
        psi = np.moveaxis(np.tensordot(H, psi, axes=([1], [n - 1 - q])), 0, n - 1 - q)
    return StateVector(state.layout, psi.reshape(-1), validate=False)


def apply_permutation(state, qubits, perm):
    """ Send local basis index j on the listed qubits to perm[j] """
    qubits = _check_qubits(state, qubits)
    perm = np.asarray(perm, dtype=np.int64)
    size = 1 << len(qubits)
    if perm.shape != (size,) or not np.array_equal(np.sort(perm), np.arange(size)):
        raise NotUnitary('Not a permutation of %d basis states' % size)
    psi, axes = _gather(state.amps, state.num_qubits, qubits)
    out = np.empty_like(psi)
    out[:, perm] = psi
    return StateVector(state.layout, _scatter(out, state.num_qubits, axes), validate=False)


def register_probabilities(state, register):
    qubits = _check_qubits(state, register)
    psi, _ = _gather(state.amps, state.num_qubits, qubits)
    return (np.abs(psi) ** 2).sum(axis=0)


def measure_register(state, register, rng):
    """ Projective measurement of a register; returns (outcome, collapsed state) """
    qubits = _check_qubits(state, register)
    if len(qubits) == 0:
        raise InvalidQubit('Cannot measure an empty register')
    probs = register_probabilities(state, qubits)
    cumulative = np.cumsum(probs)
    outcome = int(np.searchsorted(cumulative, rng.random() * cumulative[-1], side='right'))
    outcome = min(outcome, len(probs) - 1)

    psi, axes = _gather(state.amps, state.num_qubits, qubits)
    out = np.zeros_like(psi)
    out[:, outcome] = psi[:, outcome]
    norm = np.sqrt(probs[outcome])
    if norm < TOLERANCE:
        raise ZeroNormBranch('Measured outcome %d has zero probability' % outcome)
    collapsed = StateVector(state.layout, _scatter(out / norm, state.num_qubits, axes), validate=False)
    return BitWord(len(qubits), outcome), collapsed


def partial_trace(state, keep):
    qubits = _check_qubits(state, keep)
    if not 0 < len(qubits) <= MAX_KEPT_QUBITS:
        raise InvalidQubit('Can keep between 1 and %d qubits, got %d' % (MAX_KEPT_QUBITS, len(qubits)))
    M, _ = _gather(state.amps, state.num_qubits, qubits)
    return DensityMatrix(M.T @ M.conj())


def fidelity(rho, x):
    """ ⟨x|ρ|x⟩ """
    amps = x.amps if isinstance(x, StateVector) else np.asarray(x, dtype=complex)
    if amps.shape != (rho.dim,):
        raise ValueError('State of dimension %d against a %d-dimensional density matrix' % (amps.size, rho.dim))
    value = np.vdot(amps, rho.matrix @ amps).real
    return float(min(1.0, max(0.0, value)))


def von_neumann_entropy(rho):
    matrix = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    if not np.allclose(matrix, matrix.conj().T, atol=TOLERANCE):
        raise InvalidDensityMatrix('Entropy of a non-Hermitian matrix')
    eigenvalues = np.clip(np.linalg.eigvalsh(matrix), 0, None)
    if eigenvalues.sum() == 0:
        return 0.0
    return float(entropy(eigenvalues, base=2))


def purity(rho):
    return float(np.trace(rho.matrix @ rho.matrix).real)


def trace_distance(rho, sigma):
    return float(0.5 * np.abs(np.linalg.eigvalsh(rho.matrix - sigma.matrix)).sum())


def inner(a, b):
    """ ⟨a|b⟩ """
    return complex(np.vdot(a.amps, b.amps))


def embed(state, layout):
    """ Place a state on the lowest qubits of a larger layout, the rest in |0⟩ """
    if state.num_qubits > layout.total:
        raise LayoutTooLarge('Cannot embed %d qubits into %d' % (state.num_qubits, layout.total))
    amps = np.zeros(layout.dim, dtype=complex)
    amps[:state.layout.dim] = state.amps
    return StateVector(layout, amps, validate=False)


def random_state(num_qubits, rng):
    amps = rng.normal(size=1 << num_qubits) + 1j * rng.normal(size=1 << num_qubits)
    return StateVector(RegisterLayout(num_qubits), amps / np.linalg.norm(amps))


def random_unitary(dim, rng):
    """ Haar-random unitary """
    return unitary_group.rvs(dim, random_state=rng)


def dump_csv(state, cutoff=DUMP_CUTOFF):
    lines = ['index,re,im']
    for index in np.flatnonzero(np.abs(state.amps) > cutoff):
        amp = state.amps[index]
        lines.append('%d,%s,%s' % (index, format_amplitude(amp.real), format_amplitude(amp.imag)))
    return '\n'.join(lines) + '\n'


def load_csv(text, layout):
    amps = np.zeros(layout.dim, dtype=complex)
    lines = [line for line in strip_comments(text) if line != '']
    if not lines or lines[0] != 'index,re,im':
        raise ValueError('Missing "index,re,im" header')
    for line in lines[1:]:
        index, re, im = line.split(',')
        amps[int(index)] = complex(float(re), float(im))
    return StateVector(layout, amps)
