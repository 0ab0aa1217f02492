# encoding=utf-8
import os
import unittest
from itertools import combinations

import pytest
from mock import Mock

from cssqec.codes import (LinearCode, NotWeaklySelfDual, OddLengthError, TowerError, double_count,
                          dump_codes, enumerate_weakly_self_dual, even_weight_code, full_code, greedy_existence_check,
                          gv_classical_rate, gv_quantum_rate, gv_threshold, hamming_7_4, is_weakly_self_dual,
                          load_code, make_tower, parse_codes, repetition_code, sigma_count, sigma_is_seed_independent,
                          steane_tower, zero_code, brute_force_distance)
from cssqec.gf2 import BinMatrix, BitWord, EnumerationLimitExceeded, MatrixFormatError


def get_data_path(filename):
    return os.path.join(os.path.abspath(os.path.dirname(__file__)), 'data', filename)


def code(*rows):
    return LinearCode.from_rows(rows)


def get_cache_mock():
    cache = Mock()
    cache.get = Mock(return_value=None)
    return cache


def all_weakly_self_dual(n, k):
    """ Exhaustive search over all k-subsets of even-weight words """
    found = set()
    ones = (1 << n) - 1
    candidates = [v for v in range(1, 1 << n) if bin(v).count('1') % 2 == 0]
    for rows in combinations(candidates, k):
        C = LinearCode(BinMatrix(rows, n))
        if C.k == k and is_weakly_self_dual(C) and C.contains(BitWord(n, ones)):
            found.add(C)
    return found


class TestLinearCode(unittest.TestCase):

    def testHamming(self):
        C = hamming_7_4()
        assert len(C.codewords()) == 16
        assert C.min_distance == 3
        assert brute_force_distance(C) == 3
        assert C.dual().k == 3
        assert str(C) == '[7,4,3]'

    def testHammingDualIsEvenSubcode(self):
        C = hamming_7_4()
        D = C.dual()
        assert D.codewords() == set(v for v in C.codewords() if v.weight() % 2 == 0)
        assert D.min_distance == 4

    def testMinDistance(self):
        assert repetition_code(5).min_distance == 5
        assert even_weight_code(6).min_distance == 2
        assert full_code(4).min_distance == 1

    def testZeroCodeDistance(self):
        assert zero_code(7).min_distance == 8

    def testFromGeneratorRankDeficient(self):
        C = LinearCode.from_generator(BinMatrix.from_rows(['1100', '0110', '1010']))
        assert C.k == 2
        assert C == code('1100', '0110')

    def testEquality(self):
        assert code('1100', '0011') == code('1111', '0011')
        assert code('1100', '0011') != code('1010', '0101')

    def testContains(self):
        C = hamming_7_4()
        assert BitWord.from_string('0011101') in C
        assert BitWord.from_string('1000000') not in C

    def testParseAndDump(self):
        codes = [code('1100', '0011'), repetition_code(4)]
        assert parse_codes(dump_codes(codes)) == codes

    def testLoadCode(self):
        assert load_code(get_data_path('hamming.code')) == hamming_7_4()

    def testLoadRagged(self):
        with pytest.raises(MatrixFormatError):
            load_code(get_data_path('ragged.code'))


class TestCodeTower(unittest.TestCase):

    def testSteane(self):
        tower = steane_tower()
        assert len(tower.coset_reps) == 2
        assert [str(rep) for rep in tower.coset_reps] == ['0000000', '0001011']

    def testDegenerateLowerCode(self):
        tower = make_tower(zero_code(4), code('1100', '0011'))
        assert len(tower.coset_reps) == 4

    def testWrongOrder(self):
        hamming = hamming_7_4()
        with pytest.raises(TowerError):
            make_tower(hamming, hamming.dual())

    def testLengthMismatch(self):
        with pytest.raises(TowerError):
            make_tower(repetition_code(3), repetition_code(4))

    def testCosetIndex(self):
        tower = steane_tower()
        rep = tower.coset_reps[1]
        shifted = rep + BitWord.from_string('1110100')
        assert tower.coset_index(shifted) == 1
        assert tower.coset_index(BitWord.from_string('1110100')) == 0


class TestWeaklySelfDual(unittest.TestCase):

    def testIsWeaklySelfDual(self):
        assert is_weakly_self_dual(repetition_code(4))
        assert not is_weakly_self_dual(hamming_7_4())
        assert is_weakly_self_dual(code('1100', '0011'))

    def testEnumerateDimensionOne(self):
        assert enumerate_weakly_self_dual(4, 1) == [repetition_code(4)]
        assert enumerate_weakly_self_dual(6, 1) == [repetition_code(6)]

    def testEnumerateFourTwo(self):
        codes = enumerate_weakly_self_dual(4, 2)
        expected = set([code('1100', '0011'), code('1010', '0101'), code('1001', '0110')])
        assert set(codes) == expected
        assert len(codes) == 3

    def testEnumerateAgreesWithSearch(self):
        for n, k in [(6, 2), (6, 3)]:
            assert set(enumerate_weakly_self_dual(n, k)) == all_weakly_self_dual(n, k)

    def testEnumerateUsesCache(self):
        cache = get_cache_mock()
        codes = enumerate_weakly_self_dual(4, 2, cache)
        cache.set.assert_called_once()
        key, rows = cache.set.call_args[0]
        assert key == 'wsd:4:2'

        cache.get = Mock(return_value=rows)
        assert enumerate_weakly_self_dual(4, 2, cache) == codes

    def testOddLength(self):
        with pytest.raises(OddLengthError):
            enumerate_weakly_self_dual(5, 1)

    def testLengthLimit(self):
        with pytest.raises(EnumerationLimitExceeded):
            enumerate_weakly_self_dual(14, 2)

    def testDimensionRange(self):
        with pytest.raises(ValueError):
            enumerate_weakly_self_dual(4, 3)


class TestSigma(unittest.TestCase):

    def testSigmaFromRepetition(self):
        assert sigma_count(4, 2, repetition_code(4)) == 3

    def testSigmaAtFullDimension(self):
        assert sigma_count(4, 2, code('1100', '0011')) == 1

    def testSigmaSeedIndependent(self):
        for n, k, s in [(4, 2, 1), (4, 2, 2), (6, 2, 1), (6, 3, 2), (8, 3, 2)]:
            assert sigma_is_seed_independent(n, k, s)

    def testSigmaEqualForSixTwo(self):
        seeds = enumerate_weakly_self_dual(6, 2)
        assert len(set(sigma_count(6, 3, seed) for seed in seeds)) == 1

    def testNotWeaklySelfDualSeed(self):
        with pytest.raises(NotWeaklySelfDual):
            sigma_count(4, 2, code('1000'))

    def testDoubleCount(self):
        result = double_count(6, 2)
        assert result.pairs_by_code == result.pairs_by_vector
        assert len(result.vector_counts) == 1


class TestGilbertVarshamov(unittest.TestCase):

    def testClassicalRate(self):
        assert gv_classical_rate(0) == 1
        assert gv_classical_rate(0.5) == pytest.approx(0, abs=1e-12)
        assert gv_classical_rate(0.11) == pytest.approx(0.500084, abs=1e-5)

    def testQuantumRate(self):
        assert gv_quantum_rate(0) == 1
        assert gv_quantum_rate(0.05) == pytest.approx(0.427206, abs=1e-5)
        assert gv_quantum_rate(gv_threshold()) == pytest.approx(0, abs=1e-9)
        assert gv_quantum_rate(0.3) == 0

    def testThreshold(self):
        assert gv_threshold() == pytest.approx(0.110028, abs=1e-6)

    def testOutOfRange(self):
        with pytest.raises(ValueError):
            gv_quantum_rate(0.6)


class TestGreedyCheck(unittest.TestCase):

    def testTrivialDistance(self):
        check = greedy_existence_check(4, 2, 1)
        assert check.holds
        assert check.lhs == 0
        assert check.witness is not None

    def testDistanceTwo(self):
        check = greedy_existence_check(4, 2, 2)
        assert check.witness is not None
        assert check.dual_distance >= 2

    def testSixTwo(self):
        check = greedy_existence_check(6, 2, 2)
        assert check.rhs == len(enumerate_weakly_self_dual(6, 2))
        assert check.holds == (check.lhs < check.rhs)
