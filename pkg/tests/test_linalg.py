from fractions import Fraction

from ulrich.linalg import exact_rank, regular_representation, solve_rational
from ulrich.polyring import FieldElement


def test_rational_rank():
    entries = {(0, 0): 1, (0, 1): 2, (1, 0): 2, (1, 1): 4}
    assert exact_rank(entries, 2, 2) == 1
    assert exact_rank({}, 3, 3) == 0


def test_rank_over_cyclotomic_field():
    zeta = FieldElement.zeta(3)
    # rows (1, zeta) and (zeta, zeta^2) are dependent over Q(zeta) but not over Q
    entries = {(0, 0): FieldElement.rational(1, 3), (0, 1): zeta, (1, 0): zeta, (1, 1): zeta ** 2}
    assert exact_rank(entries, 2, 2, 3) == 1
    entries[(1, 1)] = zeta
    assert exact_rank(entries, 2, 2, 3) == 2


def test_regular_representation():
    zeta = FieldElement.zeta(3)
    assert regular_representation(zeta) == [[0, -1], [1, -1]]


def test_solve_rational():
    rows = [{0: Fraction(1), 1: Fraction(1)}, {0: Fraction(1), 1: Fraction(-1)}]
    assert solve_rational(rows, [Fraction(3), Fraction(1)], 2) == [2, 1]
    assert solve_rational([{0: Fraction(1)}, {0: Fraction(1)}], [Fraction(1), Fraction(2)], 1) is None
    free = solve_rational([{0: Fraction(1), 1: Fraction(1)}], [Fraction(5)], 2, fill=lambda n: [2] * n)
    assert sum(free) == 5 and free[1] == 2
