from .covers import conic_cover, cyclic_cubic, fermat_cover
from .legendre import legendre_cover, legendre_factorization

INSTANCES = {
    'conic' : conic_cover,
    'cyclic_cubic' : cyclic_cubic,
    'fermat4' : lambda: fermat_cover(2).mf,
    'fermat6' : lambda: fermat_cover(3).mf,
    'legendre2' : lambda: legendre_factorization(2),
    'legendre3' : lambda: legendre_factorization(3),
    'legendre5' : lambda: legendre_factorization(5),
    'legendre2_cover' : lambda: legendre_cover(2),
}
