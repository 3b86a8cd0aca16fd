"""Exact ranks and linear solves over Q and Q(zeta_D)."""
import logging
import math
from fractions import Fraction

import sympy
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .polyring import FieldElement, phi

LOGGER = logging.getLogger(__name__)


def _qq(c):
    return QQ(c.numerator, c.denominator)


def regular_representation(a):
    """matrix of multiplication by a on the basis 1, zeta, ..., zeta^(phi-1); column k is a*zeta^k"""
    n = len(a.coeffs)
    zeta = FieldElement.zeta(a.D)
    cols, power = [], FieldElement.rational(1, a.D)
    for _ in range(n):
        cols.append((a * power).coeffs)
        power = power * zeta
    return [[cols[k][i] for k in range(n)] for i in range(n)]


def exact_rank(entries, nrows, ncols, D=1):
    """
    Rank of a sparse matrix over Q(zeta_D).
    Args:
        entries: dict (row, col) -> FieldElement (or rational)
        nrows, ncols: shape
        D: cyclotomic index the entries live in
    Returns:
        the rank over Q(zeta_D), computed as the Q-rank of the regular representation divided by phi(D)
    """
    if not entries or nrows == 0 or ncols == 0:
        return 0
    D = math.lcm(D, *(c.D for c in entries.values() if isinstance(c, FieldElement)))
    elems = {key: FieldElement.coerce(c, D) for key, c in entries.items()}
    elems = {key: c for key, c in elems.items() if c}
    if not elems:
        return 0
    n = phi(D)
    rows = {}
    if n == 1 or all(c.is_rational() for c in elems.values()):
        for (i, j), c in elems.items():
            rows.setdefault(i, {})[j] = _qq(c.coeffs[0])
        rank = DomainMatrix(rows, (nrows, ncols), QQ).rank()
        LOGGER.debug('rank %d of %dx%d rational matrix', rank, nrows, ncols)
        return rank
    for (i, j), c in elems.items():
        block = regular_representation(c.lift(D))
        for a in range(n):
            for b in range(n):
                if block[a][b]:
                    rows.setdefault(i * n + a, {})[j * n + b] = _qq(block[a][b])
    rank = DomainMatrix(rows, (nrows * n, ncols * n), QQ).rank()
    assert rank % n == 0, f'regular representation rank {rank} not divisible by {n}'
    LOGGER.debug('rank %d of %dx%d matrix over Q(zeta_%d)', rank // n, nrows, ncols, D)
    return rank // n


def solve_rational(rows, rhs, ncols, fill=None):
    """
    One solution of A x = b over Q, or None when inconsistent.
    Args:
        rows: list of dict col -> Fraction, one per equation
        rhs: list of Fraction
        ncols: number of unknowns
        fill: callable n -> n integers used for the free parameters (zeros when None)
    """
    A = sympy.zeros(len(rows), ncols)
    for i, row in enumerate(rows):
        for j, v in row.items():
            A[i, j] = sympy.Rational(v.numerator, v.denominator)
    b = sympy.Matrix([sympy.Rational(v.numerator, v.denominator) for v in rhs])
    try:
        sol, params = A.gauss_jordan_solve(b)
    except ValueError:
        return None
    params = list(params)
    if params:
        values = fill(len(params)) if fill is not None else [0] * len(params)
        sol = sol.subs({p: int(v) for p, v in zip(params, values)})
    out = []
    for v in sol:
        v = sympy.Rational(v)
        out.append(Fraction(int(v.p), int(v.q)))
    return out
