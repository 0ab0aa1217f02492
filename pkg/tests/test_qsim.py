# encoding=utf-8
import unittest

import numpy as np
import pytest

from cssqec.gf2 import BitWord
from cssqec.qsim import (H, X, Z, DensityMatrix, InvalidDensityMatrix, InvalidQubit, LayoutTooLarge, NotUnitary,
                         RegisterLayout, StateVector, apply_1q, apply_multi, apply_permutation, basis_state, dump_csv,
                         embed, fidelity, inner, load_csv, measure_register, partial_trace, purity, random_state,
                         random_unitary, register_probabilities, trace_distance, transversal_hadamard,
                         von_neumann_entropy)

SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)


def plus(layout=RegisterLayout(1)):
    return StateVector(layout, np.ones(layout.dim) / np.sqrt(layout.dim))


def bell():
    return StateVector(RegisterLayout(2), np.array([1, 0, 0, 1]) / np.sqrt(2))


class TestRegisterLayout(unittest.TestCase):

    def testRegisterOrder(self):
        layout = RegisterLayout(7, 3, 3, 2)
        assert layout.total == 15
        assert layout.qubits('data') == list(range(7))
        assert layout.qubits('ancilla_a') == [7, 8, 9]
        assert layout.qubits('ancilla_a2') == [10, 11, 12]
        assert layout.qubits('env') == [13, 14]

    def testResolve(self):
        layout = RegisterLayout(2, 1)
        assert layout.resolve(['ancilla_a', 0]) == [2, 0]

    def testTooLarge(self):
        with pytest.raises(LayoutTooLarge):
            RegisterLayout(20, 4, 4)

    def testUnknownRegister(self):
        with pytest.raises(InvalidQubit):
            RegisterLayout(2).qubits('bogus')


class TestGates(unittest.TestCase):

    def testBasisState(self):
        state = basis_state(RegisterLayout(3), 0)
        assert state.amps[0] == 1
        word = BitWord.from_string('0001011')
        state = basis_state(RegisterLayout(7), word)
        assert state.amps[word.index] == 1
        assert np.count_nonzero(state.amps) == 1

    def testIdentity(self):
        state = random_state(3, np.random.default_rng(1))
        out = apply_multi(state, [0, 2], np.eye(4))
        assert np.allclose(out.amps, state.amps, atol=1e-12)

    def testBitFlip(self):
        out = apply_1q(basis_state(RegisterLayout(1), 0), 0, X)
        assert np.allclose(out.amps, [0, 1])

    def testPhaseFlip(self):
        out = apply_1q(plus(), 0, Z)
        assert np.allclose(out.amps, np.array([1, -1]) / np.sqrt(2))

    def testQubitOrder(self):
        # qubit 1 of a two-qubit register sets bit 1 of the basis index
        out = apply_1q(basis_state(RegisterLayout(2), 0), 1, X)
        assert out.amps[2] == 1

    def testControlledOrder(self):
        cnot = np.eye(4, dtype=complex)[[0, 3, 2, 1]]
        state = apply_1q(basis_state(RegisterLayout(3), 0), 2, X)
        out = apply_multi(state, [2, 0], cnot)
        assert out.amps[0b101] == pytest.approx(1)

    def testNotUnitary(self):
        with pytest.raises(NotUnitary):
            apply_1q(basis_state(RegisterLayout(1), 0), 0, np.array([[1, 1], [0, 1]]))

    def testDuplicateQubits(self):
        with pytest.raises(InvalidQubit):
            apply_multi(basis_state(RegisterLayout(2), 0), [1, 1], SWAP)

    def testHadamardInvolution(self):
        state = random_state(4, np.random.default_rng(2))
        out = transversal_hadamard(transversal_hadamard(state, [0, 1, 2, 3]), [0, 1, 2, 3])
        assert np.allclose(out.amps, state.amps, atol=1e-12)

    def testHadamardUniform(self):
        out = transversal_hadamard(basis_state(RegisterLayout(7), 0), 'data')
        assert np.allclose(out.amps, 2 ** -3.5, atol=1e-12)

    def testHadamardMatchesGate(self):
        state = random_state(3, np.random.default_rng(3))
        a = transversal_hadamard(state, [1])
        b = apply_1q(state, 1, H)
        assert np.allclose(a.amps, b.amps, atol=1e-12)

    def testPermutationIdentity(self):
        state = random_state(2, np.random.default_rng(4))
        out = apply_permutation(state, [0, 1], [0, 1, 2, 3])
        assert np.allclose(out.amps, state.amps)

    def testSwap(self):
        state = basis_state(RegisterLayout(3), 0b001)
        out = apply_multi(state, [0, 1], SWAP)
        assert out.amps[0b010] == pytest.approx(1)
        out = apply_permutation(state, [0, 1], [0, 2, 1, 3])
        assert out.amps[0b010] == pytest.approx(1)

    def testInvalidPermutation(self):
        with pytest.raises(NotUnitary):
            apply_permutation(basis_state(RegisterLayout(2), 0), [0, 1], [0, 0, 1, 2])

    def testDisjointQubitsCommute(self):
        rng = np.random.default_rng(40)
        for _ in range(20):
            state = random_state(4, rng)
            a, b = rng.choice(4, size=2, replace=False)
            U, V = random_unitary(2, rng), random_unitary(2, rng)
            ab = apply_1q(apply_1q(state, int(a), U), int(b), V)
            ba = apply_1q(apply_1q(state, int(b), V), int(a), U)
            assert np.allclose(ab.amps, ba.amps, atol=1e-12)

    def testNormPreserved(self):
        rng = np.random.default_rng(41)
        for _ in range(50):
            state = random_state(5, rng)
            qubits = [int(q) for q in rng.choice(5, size=3, replace=False)]
            out = apply_multi(state, qubits, random_unitary(8, rng))
            assert abs(out.norm() - 1) < 1e-12


class TestMeasurement(unittest.TestCase):

    def testZeroState(self):
        outcome, state = measure_register(basis_state(RegisterLayout(2, 2), 0), 'ancilla_a', np.random.default_rng(0))
        assert outcome.bits == 0
        assert state.amps[0] == pytest.approx(1)

    def testProbabilities(self):
        probs = register_probabilities(plus(RegisterLayout(2)), [0])
        assert np.allclose(probs, [0.5, 0.5])

    def testCollapse(self):
        outcome, state = measure_register(bell(), [0], np.random.default_rng(5))
        assert state.amps[3 * outcome.bits] == pytest.approx(1)
        assert state.norm() == pytest.approx(1)


class TestDensityMatrix(unittest.TestCase):

    def testProductState(self):
        rng = np.random.default_rng(6)
        psi = random_state(2, rng)
        state = embed(psi, RegisterLayout(2, 0, 0, 2))
        rho = partial_trace(state, 'data')
        assert fidelity(rho, psi) == pytest.approx(1, abs=1e-12)
        assert purity(rho) == pytest.approx(1, abs=1e-12)

    def testBellPair(self):
        rho = partial_trace(bell(), [0])
        assert np.allclose(rho.matrix, np.eye(2) / 2)
        assert von_neumann_entropy(rho) == pytest.approx(1)

    def testKeptOrder(self):
        state = basis_state(RegisterLayout(3), 0b100)
        rho = partial_trace(state, [2, 0])
        assert rho.matrix[1, 1] == pytest.approx(1)

    def testFidelity(self):
        zero = basis_state(RegisterLayout(1), 0)
        assert fidelity(DensityMatrix.from_state(zero), zero) == pytest.approx(1)
        assert fidelity(DensityMatrix(np.eye(2) / 2), plus()) == pytest.approx(0.5)
        p = 0.3
        rho = DensityMatrix((1 - 4 * p / 3) * np.diag([1, 0]) + 4 * p / 3 * np.eye(2) / 2)
        assert fidelity(rho, zero) == pytest.approx(0.8)

    def testEntropy(self):
        assert von_neumann_entropy(DensityMatrix.from_state(plus())) == pytest.approx(0, abs=1e-12)
        assert von_neumann_entropy(DensityMatrix(np.eye(2) / 2)) == pytest.approx(1)
        assert von_neumann_entropy(DensityMatrix(np.diag([0.9, 0.1]))) == pytest.approx(0.468996, abs=1e-6)

    def testEntropyUnitaryInvariant(self):
        rng = np.random.default_rng(42)
        for _ in range(20):
            rho = partial_trace(random_state(4, rng), [0, 1])
            U = random_unitary(4, rng)
            rotated = DensityMatrix(U @ rho.matrix @ U.conj().T)
            assert von_neumann_entropy(rotated) == pytest.approx(von_neumann_entropy(rho), abs=1e-9)

    def testTraceDistance(self):
        a = DensityMatrix(np.diag([1, 0]))
        b = DensityMatrix(np.diag([0, 1]))
        assert trace_distance(a, b) == pytest.approx(1)
        assert trace_distance(a, a) == pytest.approx(0)

    def testInvalid(self):
        with pytest.raises(InvalidDensityMatrix):
            DensityMatrix(np.diag([1, 1]))
        with pytest.raises(InvalidDensityMatrix):
            DensityMatrix(np.eye(3) / 3)

    def testRandomUnitary(self):
        U = random_unitary(8, np.random.default_rng(7))
        assert np.allclose(U @ U.conj().T, np.eye(8), atol=1e-10)

    def testRandomStateReproducible(self):
        a = random_state(3, np.random.default_rng(8))
        b = random_state(3, np.random.default_rng(8))
        assert inner(a, b) == pytest.approx(1)


class TestCsv(unittest.TestCase):

    def testDumpAndLoad(self):
        state = plus(RegisterLayout(2))
        text = dump_csv(state)
        assert text.splitlines()[0] == 'index,re,im'
        assert len(text.splitlines()) == 5
        loaded = load_csv(text, RegisterLayout(2))
        assert np.allclose(loaded.amps, state.amps, atol=1e-15)

    def testMissingHeader(self):
        with pytest.raises(ValueError):
            load_csv('0,1,0\n', RegisterLayout(1))
