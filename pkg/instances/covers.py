"""Covers with small explicit factorizations: the conic double cover, Fermat covers, t^3 - xyz."""
from ulrich.matfac import MatrixRoot, PolyMatrix, cyclic_root, split_t_power
from ulrich.polyring import VarSpec, parse_poly
from ulrich.veronese import build_cover_mf

PLANE = VarSpec(('x', 'y', 'z'))


def conic_root():
    """A = [[y, x], [z, -y]] with A^2 = (y^2 + xz) Id"""
    A = PolyMatrix([[parse_poly(text, PLANE) for text in row] for row in (('y', 'x'), ('z', '-y'))])
    return MatrixRoot(A, 2, parse_poly('y^2 + x*z', PLANE), construction='conic').with_verification()


def conic_cover():
    """(t Id - A, t Id + A) factoring t^2 - y^2 - xz"""
    return split_t_power(conic_root())


def fermat_branch(s):
    return parse_poly(f'x^{2 * s} - y^{2 * s} - z^{2 * s}', PLANE)


def fermat_cover(s):
    """double cover of P^2 branched along x^2s - y^2s - z^2s, through the degree-s Veronese chart"""
    return build_cover_mf(2, s, 2, fermat_branch(s))


def cyclic_cubic():
    """(t - A)(t - zeta A)(t - zeta^2 A) = (t^3 - xyz) Id over Q(zeta_3)"""
    x, y, z = (parse_poly(name, PLANE) for name in PLANE.names)
    return split_t_power(cyclic_root([x, y, z]))
