import pytest

from instances import INSTANCES
from instances.covers import cyclic_cubic, fermat_branch
from instances.legendre import DEFAULT_LAMBDAS, legendre_cover, legendre_cubic, legendre_factorization
from ulrich.matfac import MatrixFactorization, verify_mf


@pytest.mark.parametrize('name', ['conic', 'cyclic_cubic', 'fermat4', 'legendre2', 'legendre3', 'legendre5'])
def test_instances_verify(name):
    mf = INSTANCES[name]()
    assert isinstance(mf, MatrixFactorization)
    assert mf.verified and verify_mf(mf)


@pytest.mark.parametrize('lam', DEFAULT_LAMBDAS)
def test_legendre_target(lam):
    mf = legendre_factorization(lam)
    assert mf.target == legendre_cubic(lam)
    assert len(mf.target) == 4


def test_legendre_cover_size():
    mf = legendre_cover(2)
    assert mf.size == 9 and mf.length == 3
    assert mf.target.D == 3
    assert all(a.is_linear() for a in mf.factors)


def test_cyclic_cubic_target():
    mf = cyclic_cubic()
    assert mf.target.render() == 't^3 - x*y*z'


def test_fermat_branch_terms():
    assert len(fermat_branch(3)) == 3
    assert fermat_branch(2).weighted_degree() == 4
