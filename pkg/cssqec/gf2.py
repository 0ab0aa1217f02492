# coding=utf-8
"""
Exact linear algebra over F2.

Vectors are bit-packed into Python integers: coordinate i of a word is bit i of
its integer, and the string form lists coordinate 0 first, so ``'0001011'`` has
coordinates 3, 5 and 6 set. The integer of a word is also the index of the
corresponding computational basis state in the simulator.
"""
import logging

import numpy as np

from .util import strip_comments

log = logging.getLogger(__name__)

# Largest number of columns for which row spaces are enumerated
ENUMERATION_LIMIT = 24


class LengthMismatch(ValueError):
    pass


class MatrixFormatError(ValueError):
    pass


class EnumerationLimitExceeded(RuntimeError):
    pass


class NotASubvector(ValueError):
    pass


def popcount(x):
    return bin(x).count('1')


def lowest_bit(x):
    return (x & -x).bit_length() - 1


class BitWord(object):
    """ A fixed-length binary vector """

    __slots__ = ('length', 'bits')

    def __init__(self, length, bits=0):
        if length < 0:
            raise ValueError('Negative length %d' % length)
        bits = int(bits)
        if bits < 0 or bits >> length:
            raise ValueError('Bits %d do not fit in a word of length %d' % (bits, length))
        object.__setattr__(self, 'length', length)
        object.__setattr__(self, 'bits', bits)

    def __setattr__(self, name, value):
        raise AttributeError('BitWord is immutable')

    @classmethod
    def from_string(cls, txt):
        txt = txt.strip()
        if any(c not in '01' for c in txt):
            raise MatrixFormatError('Not a binary word: "%s"' % txt)
        bits = 0
        for i, c in enumerate(txt):
            if c == '1':
                bits |= 1 << i
        return cls(len(txt), bits)

    @classmethod
    def from_index(cls, length, index):
        return cls(length, index)

    @classmethod
    def zeros(cls, length):
        return cls(length, 0)

    @classmethod
    def ones(cls, length):
        return cls(length, (1 << length) - 1)

    @classmethod
    def unit(cls, length, i):
        if not 0 <= i < length:
            raise IndexError('Coordinate %d outside [0, %d)' % (i, length))
        return cls(length, 1 << i)

    @property
    def index(self):
        return self.bits

    def _check(self, other):
        if not isinstance(other, BitWord):
            raise TypeError('Expected a BitWord, got %r' % (other,))
        if other.length != self.length:
            raise LengthMismatch('Length %d does not match length %d' % (self.length, other.length))

    def __add__(self, other):
        self._check(other)
        return BitWord(self.length, self.bits ^ other.bits)

    __xor__ = __add__

    def __and__(self, other):
        self._check(other)
        return BitWord(self.length, self.bits & other.bits)

    def weight(self):
        return popcount(self.bits)

    def dot(self, other):
        self._check(other)
        return popcount(self.bits & other.bits) & 1

    def support(self):
        return tuple(i for i in range(self.length) if self.bits >> i & 1)

    def precedes(self, other):
        """ e.precedes(E) is the relation e ⪯ E: supp(e) ⊆ supp(E) """
        self._check(other)
        return self.bits & ~other.bits == 0

    def __getitem__(self, i):
        if not 0 <= i < self.length:
            raise IndexError('Coordinate %d outside [0, %d)' % (i, self.length))
        return self.bits >> i & 1

    def __iter__(self):
        for i in range(self.length):
            yield self.bits >> i & 1

    def __len__(self):
        return self.length

    def __bool__(self):
        return self.bits != 0

    def __eq__(self, other):
        return isinstance(other, BitWord) and self.length == other.length and self.bits == other.bits

    def __ne__(self, other):
        return not self == other

    def __lt__(self, other):
        self._check(other)
        return str(self) < str(other)

    def __hash__(self):
        return hash((self.length, self.bits))

    def __str__(self):
        return ''.join('1' if self.bits >> i & 1 else '0' for i in range(self.length))

    def __repr__(self):
        return 'BitWord(%r)' % str(self)


def _as_int(row, cols):
    if isinstance(row, BitWord):
        if row.length != cols:
            raise LengthMismatch('Row of length %d in a matrix with %d columns' % (row.length, cols))
        return row.bits
    if isinstance(row, str):
        return _as_int(BitWord.from_string(row), cols)
    row = int(row)
    if row < 0 or row >> cols:
        raise ValueError('Row %d does not fit in %d columns' % (row, cols))
    return row


class BinMatrix(object):
    """ A binary matrix stored as bit-packed rows """

    __slots__ = ('rows', 'cols')

    def __init__(self, rows, cols):
        object.__setattr__(self, 'cols', cols)
        object.__setattr__(self, 'rows', tuple(_as_int(row, cols) for row in rows))

    def __setattr__(self, name, value):
        raise AttributeError('BinMatrix is immutable')

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = list(rows)
        if cols is None:
            if len(rows) == 0:
                raise MatrixFormatError('Cannot infer the column count of an empty matrix')
            first = rows[0]
            cols = first.length if isinstance(first, BitWord) else len(first)
        return cls(rows, cols)

    @classmethod
    def identity(cls, n):
        return cls([1 << i for i in range(n)], n)

    @classmethod
    def zeros(cls, nrows, cols):
        return cls([0] * nrows, cols)

    @classmethod
    def from_text(cls, text, cols=None):
        """
        Parse the matrix text format: one row per line, '0'/'1' only,
        '#' comment lines and blank lines are skipped.
        """
        lines = [line for line in strip_comments(text) if line != '']
        for line in lines:
            if any(c not in '01' for c in line):
                raise MatrixFormatError('Invalid matrix row: "%s"' % line)
        widths = set(len(line) for line in lines)
        if len(widths) > 1:
            raise MatrixFormatError('Ragged matrix: row lengths %s' % sorted(widths))
        if len(lines) == 0:
            if cols is None:
                raise MatrixFormatError('Empty matrix')
            return cls([], cols)
        width = widths.pop()
        if cols is not None and cols != width:
            raise MatrixFormatError('Expected %d columns, got %d' % (cols, width))
        return cls([BitWord.from_string(line) for line in lines], width)

    def to_text(self):
        return ''.join('%s\n' % row for row in self.words())

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def shape(self):
        return self.nrows, self.cols

    def words(self):
        return [BitWord(self.cols, row) for row in self.rows]

    def __getitem__(self, i):
        return BitWord(self.cols, self.rows[i])

    def __len__(self):
        return len(self.rows)

    def __eq__(self, other):
        return isinstance(other, BinMatrix) and self.cols == other.cols and self.rows == other.rows

    def __hash__(self):
        return hash((self.cols, self.rows))

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return 'BinMatrix(%d×%d)' % self.shape

    def stack(self, other):
        if other.cols != self.cols:
            raise LengthMismatch('Cannot stack %d and %d columns' % (self.cols, other.cols))
        return BinMatrix(self.rows + other.rows, self.cols)

    def to_array(self):
        out = np.zeros(self.shape, dtype=np.uint8)
        for i, row in enumerate(self.rows):
            for j in range(self.cols):
                out[i, j] = row >> j & 1
        return out

    def rref(self):
        """
        Reduced row echelon form with the lowest-index pivot first.
        Returns (matrix of the nonzero reduced rows, pivot columns).
        """
        rows = list(self.rows)
        pivots = []
        pivot_row = 0
        for col in range(self.cols):
            mask = 1 << col
            found = None
            for i in range(pivot_row, len(rows)):
                if rows[i] & mask:
                    found = i
                    break
            if found is None:
                continue
            rows[pivot_row], rows[found] = rows[found], rows[pivot_row]
            for i in range(len(rows)):
                if i != pivot_row and rows[i] & mask:
                    rows[i] ^= rows[pivot_row]
            pivots.append(col)
            pivot_row += 1
        return BinMatrix(rows[:pivot_row], self.cols), pivots

    def canonical_key(self):
        reduced, _ = self.rref()
        return self.cols, reduced.rows


def weight(v):
    return v.weight()


def distance(v, w):
    return (v + w).weight()


def restrict(v, E):
    """ v|_E: v on supp(E), zero elsewhere """
    return v & E


def rank(M):
    _, pivots = M.rref()
    return len(pivots)


def span_ints(rows):
    """ All linear combinations of independent rows, in Gray-code order """
    rows = list(rows)
    current = 0
    yield current
    for counter in range(1, 1 << len(rows)):
        current ^= rows[lowest_bit(counter)]
        yield current


def row_space(M):
    if M.cols > ENUMERATION_LIMIT:
        raise EnumerationLimitExceeded('Row space enumeration is limited to %d columns, got %d'
                                       % (ENUMERATION_LIMIT, M.cols))
    basis, _ = M.rref()
    return set(BitWord(M.cols, x) for x in span_ints(basis.rows))


def dual(M):
    """ Generator matrix of {v : v·c = 0 for all c in the row space of M} """
    basis, pivots = M.rref()
    pivot_set = set(pivots)
    rows = []
    for free in range(M.cols):
        if free in pivot_set:
            continue
        v = 1 << free
        for row, pivot in zip(basis.rows, pivots):
            if row >> free & 1:
                v |= 1 << pivot
        rows.append(v)
    return BinMatrix(rows, M.cols)


def syndrome(H, v):
    if H.cols != v.length:
        raise LengthMismatch('Parity check has %d columns, vector has length %d' % (H.cols, v.length))
    bits = 0
    for i, row in enumerate(H.rows):
        bits |= (popcount(row & v.bits) & 1) << i
    return BitWord(H.nrows, bits)


def reduce(v, basis, pivots):
    """
    Canonical residue of v modulo the row space of an RREF basis.
    Two words share a coset exactly when their residues agree.
    """
    bits = v.bits if isinstance(v, BitWord) else v
    for row, pivot in zip(basis.rows, pivots):
        if bits >> pivot & 1:
            bits ^= row
    if isinstance(v, BitWord):
        return BitWord(v.length, bits)
    return bits


def parity(values):
    """ Parity of each entry of a non-negative int64 array """
    x = np.array(values, dtype=np.int64, copy=True)
    for shift in (32, 16, 8, 4, 2, 1):
        x ^= x >> shift
    return x & 1


def parity_table(H, n=None):
    """ Syndrome (as an integer) of every basis index 0..2^n-1 under H """
    n = H.cols if n is None else n
    if n > ENUMERATION_LIMIT + 2:
        raise EnumerationLimitExceeded('Parity tables are limited to %d bits' % (ENUMERATION_LIMIT + 2))
    indices = np.arange(1 << n, dtype=np.int64)
    out = np.zeros(1 << n, dtype=np.int64)
    for i, row in enumerate(H.rows):
        out |= parity(indices & row) << i
    return out


def _generator_of(C):
    return C.generator if hasattr(C, 'generator') else C


def lemma1_solve(C, E, e):
    """
    Find a codeword v of C with v|_E = e.

    Elimination runs on the generator rows projected onto supp(E), carrying the
    full rows along. A solution always exists when wt(E) < d(C⊥); otherwise
    None may be returned.
    """
    G = _generator_of(C)
    if E.length != G.cols or e.length != G.cols:
        raise LengthMismatch('E and e must have length %d' % G.cols)
    if not e.precedes(E):
        raise NotASubvector('e = %s is not supported inside E = %s' % (e, E))

    basis = []
    for row in G.rows:
        projected, full = row & E.bits, row
        for p, f, pivot in basis:
            if projected >> pivot & 1:
                projected ^= p
                full ^= f
        if projected:
            basis.append((projected, full, lowest_bit(projected)))

    target, solution = e.bits, 0
    for p, f, pivot in basis:
        if target >> pivot & 1:
            target ^= p
            solution ^= f
    if target:
        log.debug('No codeword projects to %s on %s', e, E)
        return None
    return BitWord(G.cols, solution)


def lemma1_search(C, E, e):
    """ Exhaustive counterpart of lemma1_solve """
    G = _generator_of(C)
    for v in sorted(row_space(G), key=lambda x: x.bits):
        if restrict(v, E) == e:
            return v
    return None


def brute_force_min_weight(M):
    """
    Minimum weight of a nonzero vector in the row space of M. The zero code
    has no nonzero word; it reports cols + 1.
    """
    basis, _ = M.rref()
    best = M.cols + 1
    for x in span_ints(basis.rows):
        if x:
            best = min(best, popcount(x))
    return best


def popcount_array(values):
    """ Vectorised popcount of non-negative int64 values """
    x = np.array(values, dtype=np.uint64, copy=True)
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return ((x * np.uint64(0x0101010101010101)) >> np.uint64(56)).astype(np.int64)


def span_array(rows):
    """ All linear combinations of independent rows as an int64 array """
    words = np.zeros(1, dtype=np.int64)
    for row in rows:
        words = np.concatenate([words, words ^ np.int64(row)])
    return words
