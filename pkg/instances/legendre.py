"""
Three 3x3 linear matrices whose product is F * Id for the Legendre cubic
F = y^2 z + x (x - z)(x - lam z), and the size-9 factorization of t^3 - F built from them.
"""
from fractions import Fraction

from ulrich.matfac import MatrixFactorization, PolyMatrix, companion_root, split_t_power
from ulrich.polyring import parse_poly

from .covers import PLANE

DEFAULT_LAMBDAS = (2, 3, 5)


def legendre_cubic(lam):
    return parse_poly(f'y^2*z + x*(x - z)*(x - ({lam})*z)', PLANE)


def _matrix(rows, lam):
    return PolyMatrix([[parse_poly(text.format(lam=lam), PLANE) for text in row] for row in rows])


def legendre_factorization(lam=2):
    lam = Fraction(lam)
    alpha1 = _matrix((('-y', '0', 'x'),
                      ('(x - z)/2', '-y/2', '0'),
                      ('0', 'x - ({lam})*z', 'z')), lam)
    alpha2 = _matrix((('-y', '0', '2*x'),
                      ('x - z', '-2*z', '0'),
                      ('0', 'x - ({lam})*z', 'y')), lam)
    alpha3 = _matrix((('z', '0', 'x'),
                      ('x - z', 'y', '0'),
                      ('0', 'x - ({lam})*z', 'y')), lam)
    mf = MatrixFactorization((alpha1, alpha2, alpha3), legendre_cubic(lam), construction=f'legendre({lam})')
    return mf.with_verification()


def legendre_cover(lam=2):
    """companion root C of size 9 with C^3 = F Id, split into a factorization of t^3 - F over Q(zeta_3)"""
    return split_t_power(companion_root(legendre_factorization(lam)))
