import numpy as np
import pytest

from instances.legendre import legendre_cubic
from ulrich.errors import CommonComponentError, DecompositionBudgetExhausted, DegreeError, InputError, NonFiniteMap
from ulrich.plane import (PLANE, CoverDescriptor, Decomposition, carlini_decompose, cover_equation,
                          even_parity_pipeline, instance_evidence, is_smooth_plane_curve, is_transversal,
                          module_generator_degrees, odd_parity_pipeline, pipeline_degrees, planted_cover,
                          pushforward_structure, random_form_through, random_points, rational_points,
                          run_parity_pipeline, splitting_type_p1)
from ulrich.polyring import VarSpec, parse_poly, random_form

LINE = VarSpec.of('x y')

# no x^4, y^4, z^4 terms and coefficient sum 0: the coordinate points and (1:1:1) lie on it
QUARTIC = 'x^3*y + y^3*z + z^3*x - x*y*z^2 - 2*x^2*y*z + 3*x*y^3 - 3*y^3*z'


def binary(text):
    return parse_poly(text, LINE)


def test_pushforward_structure(poly):
    assert pushforward_structure(CoverDescriptor(2, 2, 1, poly('y^2 + x*z'))).summands == {0: 1, -1: 1}
    cubic = CoverDescriptor(2, 3, 1, legendre_cubic(2))
    assert pushforward_structure(cubic).render_on_base(1) == 'O + O(-1) + O(-2)'
    assert pushforward_structure(CoverDescriptor(2, 1, 2, poly('x*y'))).summands == {0: 1}


def test_cover_descriptor_checks_degree(poly):
    with pytest.raises(DegreeError):
        CoverDescriptor(2, 2, 2, poly('y^2 + x*z'))
    cov = CoverDescriptor(2, 2, 2, poly('x^4 - y^4 - z^4'))
    assert cover_equation(cov).weighted_degree() == 4


def test_smoothness(poly, rng):
    assert is_smooth_plane_curve(legendre_cubic(2), rng)
    assert is_smooth_plane_curve(poly('y^2 + x*z'), rng)
    assert not is_smooth_plane_curve(poly('x*y*z'), rng)
    assert not is_smooth_plane_curve(poly('y^2*z - x^3'), rng)


def test_transversality(poly, rng):
    conic = poly('y^2 + x*z')
    assert not is_transversal(poly('z'), conic, rng)
    assert is_transversal(poly('y'), conic, rng)
    with pytest.raises(CommonComponentError):
        is_transversal(poly('x'), poly('x*y'), rng)


def test_rational_points(poly):
    points = rational_points(poly('y^2 + x*z'), 2)
    assert (1, 0, 0) in points and (0, 0, 1) in points and (1, 1, -1) in points
    assert all(p[1] ** 2 + p[0] * p[2] == 0 for p in points)


def test_splitting_of_power_map():
    for d in range(2, 6):
        split = splitting_type_p1(binary(f'x^{d}'), binary(f'y^{d}'), d - 1)
        assert split.parts == (0,) * d


def test_splitting_staircase():
    assert splitting_type_p1(binary('x^2 + y^2'), binary('x*y'), 0).parts == (0, -1)
    for d in (2, 3, 4):
        assert splitting_type_p1(binary(f'x^{d}'), binary(f'x*y^{d - 1} + y^{d}'), -1).parts == (-1,) * d


def random_finite_pair(d, rng):
    while True:
        f0, f1 = random_form(LINE, d, rng), random_form(LINE, d, rng)
        try:
            splitting_type_p1(f0, f1, 0)
        except NonFiniteMap:
            continue
        return f0, f1


@pytest.mark.parametrize('d', range(2, 7))
def test_splitting_of_random_pairs(d):
    rng = np.random.default_rng(d)
    for _ in range(20):
        f0, f1 = random_finite_pair(d, rng)
        assert splitting_type_p1(f0, f1, d - 1).parts == (0,) * d
        assert splitting_type_p1(f0, f1, -1).parts == (-1,) * d
        m = int(rng.integers(-5, 6))
        start = int(rng.integers(-6, 1))
        split = splitting_type_p1(f0, f1, m, window=(start, start + 10))
        assert sum(split.parts) == m + 1 - d
        assert len(split.staircase) == 11
        assert all(split.sections(t) == h0 for t, h0 in split.staircase.items())


def test_module_generators_agree():
    pairs = [('x^3', 'y^3'), ('x^2 + y^2', 'x*y'), ('x^3 - x*y^2', 'y^3 + x^2*y')]
    for f0, f1 in pairs:
        f0, f1 = binary(f0), binary(f1)
        for m in (-2, -1, 0, 1, 2, 5):
            assert module_generator_degrees(f0, f1, m) == splitting_type_p1(f0, f1, m).parts


def test_splitting_needs_finite_map():
    with pytest.raises(NonFiniteMap):
        splitting_type_p1(binary('x^2'), binary('x*y'), 1)
    with pytest.raises(DegreeError):
        splitting_type_p1(binary('x^2'), binary('y^3'), 1)


def test_decomposition_of_conic(poly):
    F = poly('y^2 + x*z')
    dec = carlini_decompose(F, 1, 1, seed=0)
    assert dec.verify()
    assert dec.F1.weighted_degree() == 1 and dec.F2.weighted_degree() == 1
    explicit = Decomposition(F, poly('y'), poly('y'), poly('x'), poly('z'), 1, 1)
    assert explicit.verify()


def test_decomposition_of_quartic(poly):
    F = poly(QUARTIC)
    dec = carlini_decompose(F, 1, 2, seed=3, budget=16)
    assert dec.F1 * dec.G1 + dec.F2 * dec.G2 == F
    assert dec.F2.weighted_degree() == 2 and dec.G2.weighted_degree() == 2
    again = carlini_decompose(F, 1, 2, seed=3, budget=16)
    assert again.F1 == dec.F1 and again.G2 == dec.G2


def test_decomposition_degree_precondition(poly):
    with pytest.raises(DegreeError):
        carlini_decompose(poly('x*y'), 3, 3)
    with pytest.raises(InputError):
        carlini_decompose(poly(QUARTIC), 2, 2, method='restriction')


def test_decomposition_budget(poly):
    with pytest.raises(DecompositionBudgetExhausted) as err:
        carlini_decompose(poly('x^4 + y^4 + z^4 + x*y*z^2'), 1, 2, seed=0, budget=2, point_bound=1)
    assert err.value.attempts == 2


def test_even_pipeline_on_conic(poly):
    report = even_parity_pipeline(CoverDescriptor(2, 2, 1, poly('y^2 + x*z')), seed=0)
    assert report.passed and report.rank == 2
    assert report.decomposition.verify()
    assert report.ledger.pushforward.summands == {0: 4}


def test_odd_pipeline_on_legendre():
    report = odd_parity_pipeline(CoverDescriptor(2, 3, 1, legendre_cubic(2)), seed=0)
    assert report.p == 3
    assert report.passed and report.rank == 6


def test_parity_preconditions(poly):
    with pytest.raises(InputError):
        even_parity_pipeline(CoverDescriptor(2, 3, 1, legendre_cubic(2)))
    with pytest.raises(InputError):
        odd_parity_pipeline(CoverDescriptor(2, 2, 1, poly('y^2 + x*z')))


def test_chain_break_is_reported():
    spec = VarSpec.of('x y z')
    branch = parse_poly('x^13 + y^13 + z^13', spec)
    report = run_parity_pipeline(CoverDescriptor(2, 13, 1, branch))
    assert not report.passed
    assert report.m_trace is None and 'not prime' in report.failure


def random_quartic(seed):
    rng = np.random.default_rng(seed)
    return random_form_through(PLANE, 4, random_points(2, rng), rng)


def test_random_form_through_points(rng):
    points = random_points(3, rng)
    assert len(set(points)) == 3
    F = random_form_through(PLANE, 4, points, rng)
    assert F.weighted_degree() == 4
    assert all(c.to_fraction().denominator == 1 for c in F.terms.values())
    assert all(point in rational_points(F) for point in points)


def test_random_quartic_decomposes():
    F = random_quartic(0)
    report = even_parity_pipeline(CoverDescriptor(2, 4, 1, F), seed=0)
    assert report.passed and report.rank == 4
    dec = report.decomposition
    assert dec.method == 'restriction' and (dec.d1, dec.d2) == (1, 2)
    assert dec.verify()
    assert report.smooth and all(report.transversal.values())


@pytest.mark.slow
def test_random_quartics_over_seeds():
    smooth = decomposed = 0
    for seed in range(50):
        F = random_quartic(seed)
        if not is_smooth_plane_curve(F, seed):
            continue
        smooth += 1
        report = even_parity_pipeline(CoverDescriptor(2, 4, 1, F), seed=seed, budget=32)
        decomposed += report.passed
    assert smooth >= 45
    assert decomposed >= 0.9 * smooth


def test_pipeline_degrees():
    assert pipeline_degrees(2, 2) == (2, 2, None)
    assert pipeline_degrees(3, 2) == (2, 3, None)
    assert pipeline_degrees(3, 1) == (1, 1, 3)
    assert pipeline_degrees(5, 3) == (3, 5, 3)


@pytest.mark.parametrize('d, k', [(2, 2), (3, 2)])
def test_even_pipeline_on_planted_branch(d, k):
    cov, dec = planted_cover(d, k, seed=1)
    assert cov.branch == dec.F
    assert (dec.d1, dec.d2) == (k, d * k // 2) and dec.method == 'planted'
    smooth, transversal = instance_evidence(dec, np.random.default_rng(1))
    assert smooth and all(transversal.values())
    report = even_parity_pipeline(cov, seed=1, decomposition=dec)
    assert report.passed and report.rank == d
    assert report.splitting.parts == (0,) * d
    assert report.ledger.pushforward.summands == {0: d * d}


def test_odd_pipeline_on_planted_branch():
    cov, dec = planted_cover(3, 1, seed=2)
    report = odd_parity_pipeline(cov, seed=2, decomposition=dec)
    assert report.p == 3
    assert report.passed and report.rank == 6


def test_planted_cover_is_seeded():
    first, second = planted_cover(2, 2, seed=5), planted_cover(2, 2, seed=5)
    assert first[0].branch == second[0].branch and first[1].F1 == second[1].F1


def test_given_decomposition_must_match_branch(poly):
    _, dec = planted_cover(2, 2, seed=0)
    cov = CoverDescriptor(2, 2, 2, poly('x^4 - y^4 - z^4'))
    with pytest.raises(InputError):
        even_parity_pipeline(cov, decomposition=dec)
    with pytest.raises(InputError):
        planted_cover(1, 2)
