import numpy as np
import pytest

from instances import conic_cover, cyclic_cubic, legendre_factorization
from instances.covers import conic_root
from ulrich.errors import ArityError, InputError, NonLinearEntry, NotExpressible, UnverifiedInput, VerificationError
from ulrich.matfac import (MatrixFactorization, MatrixRoot, PolyMatrix, all_rotations_verify, clifford_combine_two_factor,
                           clifford_root, companion_root, cyclic_root, herzog_sum_mf, load_json,
                           mf_from_linear_product, mf_to_coker_presentation, products_of_form, root_of_sum,
                           root_to_constant_mf, rotate_mf, split_t_power, verify_mf, verify_root,
                           zeta_tensor_combine)
from ulrich.polyring import MultiPoly, VarSpec, parse_poly, random_form


def variables(names):
    spec = VarSpec.of(names)
    return [MultiPoly.variable(n, spec) for n in spec.names]


def test_conic_cover_factors_t2_minus_conic():
    mf = conic_cover()
    assert mf.verified and mf.size == 2 and mf.length == 2
    t, x, y, z = variables('t x y z')
    assert mf.target == t * t - y * y - x * z
    assert verify_mf(mf)


def test_perturbed_entry_is_located():
    mf = conic_cover()
    A1, A2 = mf.factors
    grid = [list(row) for row in A1.entries]
    grid[0][1] = grid[0][1] + MultiPoly.variable('y', A1.varspec)
    report = verify_mf(MatrixFactorization((PolyMatrix(grid), A2), mf.target))
    assert not report
    assert report.entry is not None
    assert 'entry' in report.describe()


def test_legendre_factorizations():
    for lam in (2, 3, 5):
        mf = legendre_factorization(lam)
        assert mf.verified and mf.size == 3 and mf.length == 3
        assert all(a.is_linear() for a in mf.factors)


def test_linear_product():
    x1, x2, x3 = variables('x1 x2 x3')
    mf = mf_from_linear_product([x1, x2, x3])
    assert mf.size == 1 and mf.target == x1 * x2 * x3
    assert mf_from_linear_product([x1]).length == 1
    assert mf_from_linear_product([x1, -x2]).target == -(x1 * x2)
    with pytest.raises(ArityError):
        mf_from_linear_product([])


def test_cyclic_root_layout():
    x, y, z = variables('x y z')
    root = cyclic_root([x, y, z])
    zero = MultiPoly.zero(x.varspec)
    assert root.M == PolyMatrix([[zero, zero, x], [y, zero, zero], [zero, z, zero]])
    assert root.verified and root.target == x * y * z
    w = MultiPoly.variable('w', VarSpec.of('w')).embed(VarSpec.of('x y z w'))
    four = [p.embed(w.varspec) for p in (x, y, z)] + [w]
    assert cyclic_root(four).size == 4


def test_root_to_constant_mf():
    x, y, z = variables('x y z')
    mf = root_to_constant_mf(cyclic_root([x, y, z]))
    assert mf.length == 3 and all(a == mf.factors[0] for a in mf.factors)
    square = MatrixRoot(PolyMatrix([[x]]), 2, x * x).with_verification()
    assert root_to_constant_mf(square).target == x * x
    with pytest.raises(UnverifiedInput):
        root_to_constant_mf(MatrixRoot(PolyMatrix([[x]]), 2, x * x))


def test_cyclic_cubic_split():
    mf = cyclic_cubic()
    assert mf.verified and mf.size == 3 and mf.length == 3
    assert mf.target.D == 3
    assert verify_mf(rotate_mf(mf, 2))


def test_split_rejects_t_in_target():
    t, x = variables('t x')
    root = MatrixRoot(PolyMatrix([[t]]), 2, t * t).with_verification()
    with pytest.raises(InputError):
        split_t_power(root, 't')


def test_companion_root_of_legendre():
    root = companion_root(legendre_factorization(2))
    assert root.size == 9 and root.exponent == 3
    assert verify_root(root)
    x, y = variables('x y')
    small = companion_root(mf_from_linear_product([x, y]))
    zero = MultiPoly.zero(x.varspec)
    assert small.M == PolyMatrix([[zero, x], [y, zero]])
    assert companion_root(conic_cover()).size == 4


def test_clifford_combine():
    x1, x2, y1, y2 = variables('x1 x2 y1 y2')
    mf = clifford_combine_two_factor(mf_from_linear_product([x1, x2]), mf_from_linear_product([y1, y2]))
    assert mf.size == 2 and mf.target == x1 * x2 + y1 * y2


def test_clifford_combine_gives_conic():
    x, y, z = variables('x y z')
    mf = clifford_combine_two_factor(mf_from_linear_product([y, y]), mf_from_linear_product([x, z]))
    assert mf.size == 2
    assert mf.target == conic_root().target


def test_herzog_sizes_for_d2():
    spec = VarSpec(tuple(f'x{i}' for i in range(8)))
    xs = [MultiPoly.variable(n, spec) for n in spec.names]
    for s in range(1, 5):
        mf = herzog_sum_mf([[xs[2 * i], xs[2 * i + 1]] for i in range(s)], 2)
        assert mf.size == 2 ** (s - 1)
        assert mf.notes['target_size'] == mf.size


@pytest.mark.parametrize('s', [1, 2, 3, 4])
def test_herzog_sizes_on_random_linear_forms(s):
    rng = np.random.default_rng(s)
    plane = VarSpec.of('x y z')
    summands = [[random_form(plane, 1, rng), random_form(plane, 1, rng)] for _ in range(s)]
    mf = herzog_sum_mf(summands, 2)
    assert mf.size == 2 ** (s - 1)
    assert mf.target == sum((f * g for f, g in summands), MultiPoly.zero(plane))
    assert verify_mf(mf) and all_rotations_verify(mf)


@pytest.mark.parametrize('d', [2, 3, 4, 5])
def test_split_t_power_on_random_roots(d):
    rng = np.random.default_rng(10 + d)
    plane = VarSpec.of('x y z')
    for _ in range(2):
        root = cyclic_root([random_form(plane, 1, rng) for _ in range(d)])
        mf = split_t_power(root)
        assert mf.length == d and mf.size == d
        assert verify_mf(mf)
        varspec, D = mf.target.varspec, mf.target.D
        assert varspec.names == ('t', 'x', 'y', 'z')
        assert mf.target == MultiPoly.variable('t', varspec, D) ** d - root.target.embed(varspec).lift(D)


def test_herzog_for_d3():
    x1, x2, x3, y1, y2, y3 = variables('x1 x2 x3 y1 y2 y3')
    assert herzog_sum_mf([[x1, x2, x3]], 3).size == 1
    mf = herzog_sum_mf([[x1, x2, x3], [y1, y2, y3]], 3)
    assert mf.size == 27
    assert mf.notes['target_size'] == 3 and mf.notes['achieved_size'] == 27
    assert mf.target == x1 * x2 * x3 + y1 * y2 * y3


def test_zeta_tensor_d2():
    x, y, z = variables('x y z')
    square = MatrixRoot(PolyMatrix([[y]]), 2, y * y).with_verification()
    root = zeta_tensor_combine(square, cyclic_root([x, z]))
    assert root.size == 4
    assert root.target == y * y + x * z


def test_rotations():
    mf = legendre_factorization(3)
    assert all_rotations_verify(mf)
    assert rotate_mf(mf, 0).factors == mf.factors
    rotated = rotate_mf(conic_cover(), 1)
    assert rotated.factors == tuple(reversed(conic_cover().factors))


def test_clifford_root_of_fermat_quadric():
    z1, z2, z3 = variables('z1 z2 z3')
    root = clifford_root(products_of_form(z1 * z1 - z2 * z2 - z3 * z3, 2))
    assert root.size == 2 and root.M.D == 4
    mf = split_t_power(root)
    assert mf.size == 2
    t = MultiPoly.variable('t', mf.target.varspec)
    assert mf.target == t * t - (z1 * z1 - z2 * z2 - z3 * z3).embed(mf.target.varspec)


def test_root_of_sum_methods():
    x, y, z = variables('x y z')
    products = products_of_form(x * y * z, 3)
    assert root_of_sum(products, 3, 'cyclic').size == 3
    assert root_of_sum(products_of_form(y * y + x * z, 2), 2, 'clifford').size == 2
    with pytest.raises(InputError):
        root_of_sum(products, 3, 'magic')


def test_products_of_form():
    x, y = variables('x y')
    with pytest.raises(NotExpressible):
        products_of_form(x + y, 2)
    products = products_of_form(x * x - y * y, 2)
    assert len(products) == 2


def test_coker_presentation():
    mf = conic_cover()
    pres = mf_to_coker_presentation(mf.factors[1])
    assert pres.m == 2 and pres.n_vars == 4 and pres.dim_x == 2
    x, y = variables('x y')
    with pytest.raises(NonLinearEntry) as err:
        mf_to_coker_presentation(PolyMatrix([[x, x * x], [y, x]]))
    assert err.value.entry == (0, 1)


def test_load_json_roundtrip_is_verifiable():
    mf = legendre_factorization(2)
    loaded = load_json(mf.to_json())
    assert not loaded.verified
    assert verify_mf(loaded)
    root = load_json(conic_root().to_json())
    assert isinstance(root, MatrixRoot) and verify_root(root)


def test_with_verification_raises():
    x, y = variables('x y')
    bad = MatrixFactorization((PolyMatrix([[x]]), PolyMatrix([[y]])), x * x)
    with pytest.raises(VerificationError):
        bad.with_verification()
