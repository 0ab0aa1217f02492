# coding=utf-8
"""
Closed-form rate and capacity curves: binary entropy, the quantum
Gilbert-Varshamov rate and the two upper bounds it is compared against.
"""
import logging
import math
from collections import namedtuple

import numpy as np
from scipy.optimize import brentq
from scipy.stats import entropy

from .qsim import PAULI_MATRICES, DensityMatrix, von_neumann_entropy
from .util import TOLERANCE, format_curve

log = logging.getLogger(__name__)

CSV_HEADER = 'x,gv_rate,holevo_bound,entanglement_bound'

BoundCurvePoint = namedtuple('BoundCurvePoint', ['x', 'gv', 'holevo', 'entangle'])


def _check_probability(p, name='p'):
    if not 0 <= p <= 1:
        raise ValueError('%s = %r outside [0, 1]' % (name, p))


def h2(p):
    """ Binary entropy in bits, with h2(0) = h2(1) = 0 """
    _check_probability(p)
    if p == 0 or p == 1:
        return 0.0
    return float(entropy([p, 1 - p], base=2))


def holevo_capacity_bound(p):
    _check_probability(p)
    return 1 - h2(2 * p / 3.)


def entanglement_bound(p):
    _check_probability(p)
    if p >= 0.5:
        return 0.0
    return h2(min(1.0, 0.5 + math.sqrt(p * (1 - p))))


def composite_upper_bound(r):
    """
    The upper bound parameterised by the fraction r = t/n of corrected errors,
    min[1 - H2(2r/3), H2(1/2 + sqrt((1-r) r))], and 0 from r = 1/2 on.
    """
    _check_probability(r, 'r')
    if r >= 0.5:
        return 0.0
    return min(1 - h2(2 * r / 3.), h2(min(1.0, 0.5 + math.sqrt((1 - r) * r))))


def gv_figure_rate(x):
    """ max(0, 1 - 2 H2(2x)) """
    if not 0 <= x <= 0.5:
        raise ValueError('x = %r outside [0, 1/2]' % x)
    return max(0.0, 1 - 2 * h2(min(2 * x, 0.5)))


def gv_figure_threshold(xtol=1e-12):
    """ The x where gv_figure_rate first reaches zero """
    return brentq(lambda x: 1 - 2 * h2(2 * x), 1e-9, 0.25, xtol=xtol)


def holevo_chi(ensemble):
    """
    H(Σ p ρ) - Σ p H(ρ) for an ensemble of (probability, DensityMatrix) pairs.
    """
    ensemble = list(ensemble)
    if len(ensemble) == 0:
        raise ValueError('Empty ensemble')
    probs = np.array([p for p, _ in ensemble], dtype=float)
    if np.any(probs < 0) or abs(probs.sum() - 1) > TOLERANCE:
        raise ValueError('Ensemble probabilities must be non-negative and sum to 1, got %r' % probs.sum())
    average = sum(p * rho.matrix for p, rho in ensemble)
    chi = von_neumann_entropy(DensityMatrix(average)) - sum(p * von_neumann_entropy(rho) for p, rho in ensemble)
    return max(0.0, float(chi))


def depolarized_output_ensemble(rho, p):
    """ The four (probability, state) outcomes of one depolarised qubit """
    _check_probability(p)
    out = [(1 - p, rho)]
    for label in ('X', 'Z', 'Y'):
        U = PAULI_MATRICES[label]
        out.append((p / 3., DensityMatrix(U @ rho.matrix @ U.conj().T)))
    return out


def figure1_grid(step):
    if not 0 < step <= 0.01:
        raise ValueError('step = %r outside (0, 0.01]' % step)
    count = int(math.floor(0.5 / step + 1e-9))
    grid = [min(i * step, 0.5) for i in range(count + 1)]
    if grid[-1] < 0.5 - 1e-12:
        grid.append(0.5)
    return grid


def figure1_table(step):
    rows = [BoundCurvePoint(x, gv_figure_rate(x), holevo_capacity_bound(x), entanglement_bound(x))
            for x in figure1_grid(step)]
    log.debug('Tabulated %d bound curve points', len(rows))
    return rows


def figure1_csv(rows):
    lines = [CSV_HEADER]
    for row in rows:
        lines.append(','.join(format_curve(value) for value in row))
    return '\n'.join(lines) + '\n'
