# coding=utf-8
"""
Classical binary linear codes, code towers, and the weakly self-dual machinery
used to argue that good CSS codes exist.
"""
import logging
from collections import Counter, namedtuple

import numpy as np
from scipy.optimize import brentq

from .bounds import h2
from .gf2 import (BinMatrix, BitWord, EnumerationLimitExceeded, LengthMismatch, brute_force_min_weight,
                  dual, popcount, popcount_array, reduce, row_space, span_array, span_ints)

log = logging.getLogger(__name__)

# Largest dimension for which minimum distances are computed
DISTANCE_LIMIT = 20

# Largest length for weakly self-dual enumeration
SELFDUAL_LIMIT = 12

HAMMING_GENERATOR = ['1000101', '0100111', '0010110', '0001011']


class TowerError(ValueError):
    pass


class NotWeaklySelfDual(ValueError):
    pass


class OddLengthError(ValueError):
    pass


class LinearCode(object):
    """
    A binary linear [n, k, d] code, kept as the reduced row echelon form of its
    generator matrix. Two codes are equal exactly when their row spaces are.
    """

    def __init__(self, generator, min_distance=None):
        """
        :type generator: BinMatrix
        """
        self.generator, self.pivots = generator.rref()
        self.n = generator.cols
        self.k = self.generator.nrows
        self._parity_check = None
        self._min_distance = min_distance

    @classmethod
    def from_generator(cls, M):
        return cls(M)

    @classmethod
    def from_rows(cls, rows, n=None):
        return cls(BinMatrix.from_rows(rows, n))

    @property
    def parity_check(self):
        if self._parity_check is None:
            self._parity_check = dual(self.generator)
        return self._parity_check

    def dual(self):
        return LinearCode(self.parity_check)

    def contains(self, v):
        if v.length != self.n:
            raise LengthMismatch('Word of length %d tested against a code of length %d' % (v.length, self.n))
        return reduce(v.bits, self.generator, self.pivots) == 0

    def __contains__(self, v):
        return self.contains(v)

    def residue(self, v):
        """ Canonical coset label of v modulo this code """
        return reduce(v, self.generator, self.pivots)

    def codewords(self):
        return row_space(self.generator)

    def codeword_array(self):
        return span_array(self.generator.rows)

    def is_subcode_of(self, other):
        return self.n == other.n and all(other.contains(row) for row in self.generator.words())

    @property
    def min_distance(self):
        if self._min_distance is None:
            self._min_distance = min_distance(self)
        return self._min_distance

    @property
    def rate(self):
        return self.k / float(self.n)

    def canonical_key(self):
        return self.n, self.generator.rows

    def __eq__(self, other):
        return isinstance(other, LinearCode) and self.canonical_key() == other.canonical_key()

    def __hash__(self):
        return hash(self.canonical_key())

    def __str__(self):
        d = self.min_distance
        return '[%d,%d,%s]' % (self.n, self.k, '?' if d is None else d)

    def __repr__(self):
        return 'LinearCode%s' % self


def min_distance(C):
    """
    Minimum weight of a nonzero codeword, or None when the code is too large to
    enumerate. The zero code reports n + 1.
    """
    if C.k > DISTANCE_LIMIT:
        log.warning('Not computing the minimum distance of a %d-dimensional code', C.k)
        return None
    if C.k == 0:
        return C.n + 1
    weights = popcount_array(C.codeword_array()[1:])
    return int(weights.min())


def hamming_7_4():
    return LinearCode(BinMatrix.from_rows(HAMMING_GENERATOR), min_distance=3)


def repetition_code(n):
    return LinearCode(BinMatrix([(1 << n) - 1], n))


def even_weight_code(n):
    return LinearCode(BinMatrix([1 | 1 << i for i in range(1, n)], n))


def zero_code(n):
    return LinearCode(BinMatrix([], n))


def full_code(n):
    return LinearCode(BinMatrix.identity(n))


class CodeTower(object):
    """
    A nested pair {0} ⊂ C2 ⊂ C1 of codes of equal length.

    ``coset_reps`` lists one representative of each coset of C1⊥ in C2⊥, chosen
    by minimal weight and then string order, so the zero word comes first.
    """

    def __init__(self, c2, c1):
        self.c2 = c2
        self.c1 = c1
        self.n = c1.n
        self.c1_dual = c1.dual()
        self.c2_dual = c2.dual()
        self.coset_reps = self._coset_representatives()

    def _coset_representatives(self):
        wanted = 1 << (self.c1.k - self.c2.k)
        candidates = sorted(self.c2_dual.codewords(), key=lambda v: (v.weight(), str(v)))
        seen = set()
        reps = []
        for v in candidates:
            residue = self.c1_dual.residue(v.bits)
            if residue in seen:
                continue
            seen.add(residue)
            reps.append(v)
            if len(reps) == wanted:
                break
        return reps

    def coset_index(self, w):
        """ Position in coset_reps of the coset w + C1⊥ """
        residue = self.c1_dual.residue(w.bits)
        for i, rep in enumerate(self.coset_reps):
            if self.c1_dual.residue(rep.bits) == residue:
                return i
        raise TowerError('%s does not lie in C2⊥' % w)

    def __str__(self):
        return 'CodeTower(C2=%s ⊂ C1=%s)' % (self.c2, self.c1)


def make_tower(c2, c1):
    if c1.n != c2.n:
        raise TowerError('Codes of length %d and %d cannot be nested' % (c2.n, c1.n))
    if c2.k > c1.k:
        raise TowerError('C2 has dimension %d, larger than C1 with dimension %d' % (c2.k, c1.k))
    if not c2.is_subcode_of(c1):
        raise TowerError('C2 is not contained in C1')
    tower = CodeTower(c2, c1)
    log.debug('Built %s with %d cosets', tower, len(tower.coset_reps))
    return tower


def steane_tower():
    hamming = hamming_7_4()
    return make_tower(hamming.dual(), hamming)


def is_weakly_self_dual(C):
    if not C.contains(BitWord.ones(C.n)):
        return False
    rows = C.generator.rows
    for i, a in enumerate(rows):
        for b in rows[i:]:
            if popcount(a & b) & 1:
                return False
    return True


def _complement(C, space):
    """ Rows of ``space`` that extend a basis of C to a basis of space """
    rows = list(C.generator.rows)
    extra = []
    for row in space.generator.rows:
        candidate = BinMatrix(rows, C.n).stack(BinMatrix([row], C.n))
        reduced, _ = candidate.rref()
        if reduced.nrows > len(rows):
            rows.append(row)
            extra.append(row)
    return extra


def _extensions(C):
    """ All weakly self-dual codes of dimension k + 1 containing C """
    out = {}
    for combo in span_ints(_complement(C, C.dual())):
        if combo == 0:
            continue
        code = LinearCode(C.generator.stack(BinMatrix([combo], C.n)))
        out[code.canonical_key()] = code
    return out


def _grow(seeds, k):
    level = dict((seed.canonical_key(), seed) for seed in seeds)
    dimension = min(seed.k for seed in seeds) if seeds else k
    while dimension < k:
        following = {}
        for code in level.values():
            following.update(_extensions(code))
        level = following
        dimension += 1
        log.debug('%d weakly self-dual codes of dimension %d', len(level), dimension)
    return [level[key] for key in sorted(level)]


def _check_selfdual_params(n, k):
    if n % 2:
        raise OddLengthError('The all-ones word of odd length %d is not self-orthogonal' % n)
    if n > SELFDUAL_LIMIT:
        raise EnumerationLimitExceeded('Weakly self-dual enumeration is limited to n <= %d' % SELFDUAL_LIMIT)
    if not 1 <= k <= n // 2:
        raise ValueError('Dimension k = %d outside [1, %d]' % (k, n // 2))


def enumerate_weakly_self_dual(n, k, cache=None, cache_time=86400):
    """
    All k-dimensional codes C with 1ⁿ ∈ C ⊆ C⊥, sorted by canonical generator.

    When a cache is given, canonical generator rows are stored under
    ``wsd:<n>:<k>``.
    """
    _check_selfdual_params(n, k)
    cache_key = 'wsd:{}:{}'.format(n, k)
    if cache is not None:
        cached = cache.get(cache_key)
        if cached is not None:
            log.debug('Using cached enumeration %s', cache_key)
            return [LinearCode(BinMatrix(rows, n)) for rows in cached]

    codes = _grow([repetition_code(n)], k)
    log.debug('Found %d weakly self-dual [%d,%d] codes', len(codes), n, k)
    if cache is not None:
        cache.set(cache_key, [code.generator.rows for code in codes], expire=cache_time)
    return codes


def sigma_count(n, k, seed):
    """ Number of k-dimensional weakly self-dual codes containing seed """
    if seed.n != n:
        raise LengthMismatch('Seed has length %d, expected %d' % (seed.n, n))
    if not is_weakly_self_dual(seed):
        raise NotWeaklySelfDual('Seed %s is not weakly self-dual' % seed.generator.to_text().replace('\n', ' '))
    _check_selfdual_params(n, k)
    if seed.k > k:
        raise ValueError('Seed dimension %d exceeds k = %d' % (seed.k, k))
    return len(_grow([seed], k))


def sigma_census(n, k, s, cache=None):
    """ sigma_count for every weakly self-dual seed of dimension s """
    return dict((seed.canonical_key(), sigma_count(n, k, seed))
                for seed in enumerate_weakly_self_dual(n, s, cache))


def sigma_is_seed_independent(n, k, s, cache=None):
    census = sigma_census(n, k, s, cache)
    return len(set(census.values())) == 1


DoubleCount = namedtuple('DoubleCount', ['codes', 'universe', 'pairs_by_code', 'pairs_by_vector', 'vector_counts'])


def double_count(n, k, cache=None):
    """
    Count (code, v) pairs with v ∈ C⊥ an even-weight word outside {0, 1ⁿ}, once
    per code and once per vector. ``vector_counts`` collects the distinct
    per-vector counts W(v).
    """
    codes = enumerate_weakly_self_dual(n, k, cache)
    ones = (1 << n) - 1
    counts = np.zeros(1 << n, dtype=np.int64)
    for code in codes:
        np.add.at(counts, code.dual().codeword_array(), 1)

    indices = np.arange(1 << n, dtype=np.int64)
    universe = (popcount_array(indices) % 2 == 0) & (indices != 0) & (indices != ones)
    pairs_by_code = len(codes) * ((1 << (n - k)) - 2)
    pairs_by_vector = int(counts[universe].sum())
    return DoubleCount(len(codes), int(universe.sum()), pairs_by_code, pairs_by_vector,
                       set(int(x) for x in np.unique(counts[universe])))


def _check_delta(delta):
    if not 0 <= delta <= 0.5:
        raise ValueError('delta = %r outside [0, 1/2]' % delta)


def gv_classical_rate(delta):
    _check_delta(delta)
    return 1 - h2(delta)


def gv_quantum_rate(delta):
    _check_delta(delta)
    return max(0.0, 1 - 2 * h2(delta))


def gv_threshold(xtol=1e-12):
    """ The δ in (0, 1/2) where the quantum GV rate reaches zero """
    return brentq(lambda x: 1 - 2 * h2(x), 1e-9, 0.5, xtol=xtol)


GreedyCheck = namedtuple('GreedyCheck', ['holds', 'lhs', 'rhs', 'witness', 'dual_distance'])


def greedy_existence_check(n, k, d, cache=None):
    """
    Compare Σ W(v) over the even-weight words 0 < wt(v) < d with the number of
    weakly self-dual [n, k] codes. When the sum is smaller, some code has a
    dual of distance at least d. The search for such a witness runs either way.
    """
    codes = enumerate_weakly_self_dual(n, k, cache)
    counts = np.zeros(1 << n, dtype=np.int64)
    for code in codes:
        np.add.at(counts, code.dual().codeword_array(), 1)

    indices = np.arange(1 << n, dtype=np.int64)
    weights = popcount_array(indices)
    bad = (weights % 2 == 0) & (weights > 0) & (weights < d)
    lhs = int(counts[bad].sum())
    rhs = len(codes)

    witness, witness_distance = None, None
    for code in codes:
        distance = code.dual().min_distance
        if distance >= d:
            witness, witness_distance = code, distance
            break
    log.debug('Greedy check n=%d k=%d d=%d: %d vs %d', n, k, d, lhs, rhs)
    return GreedyCheck(lhs < rhs, lhs, rhs, witness, witness_distance)


def parse_codes(text):
    """ Codes from blank-line separated stanzas of the matrix text format """
    stanzas, current = [], []
    for line in text.splitlines():
        line = line.strip()
        if line.startswith('#'):
            continue
        if line == '':
            if current:
                stanzas.append(current)
            current = []
        else:
            current.append(line)
    if current:
        stanzas.append(current)
    return [LinearCode(BinMatrix.from_text('\n'.join(stanza))) for stanza in stanzas]


def load_code(path):
    with open(path, encoding='utf-8') as fp:
        return LinearCode(BinMatrix.from_text(fp.read()))


def dump_codes(codes):
    return '\n'.join(code.generator.to_text() for code in codes)


def brute_force_distance(C):
    return brute_force_min_weight(C.generator)
