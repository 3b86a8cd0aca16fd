"""
Plane-curve instance checks: decompositions F = F1*G1 + F2*G2, smoothness and transversality
by resultant elimination after seeded shears, pushforward splitting types on P^1, and the
even/odd parity pipelines for cyclic covers of P^2.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

import numpy as np
import sympy

from .errors import (CommonComponentError, DecompositionBudgetExhausted, DegreeError,
                     EliminationDegenerate, InputError, MathematicalFailure, NonFiniteMap, ChainBreak,
                     VerificationError)
from .linalg import exact_rank, solve_rational
from .polyring import MultiPoly, VarSpec, monomials_of_degree, random_form
from .ranks import LineBundleLedger, m_sequence, modification_ledger, smallest_prime_factor

LOGGER = logging.getLogger(__name__)

DEFAULT_BUDGET = 32
DEFAULT_COEFF_RANGE = (-9, 9)
DEFAULT_SHEAR_RETRIES = 3
DEFAULT_POINT_BOUND = 3

PLANE = VarSpec(('x', 'y', 'z'))


def _rng(seed):
    return np.random.default_rng(0 if seed is None else seed)


def spawn_rngs(seed, n):
    """n independent generators from one seed (int, SeedSequence or Generator)"""
    if isinstance(seed, np.random.Generator):
        return seed.spawn(n)
    seq = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    return [np.random.default_rng(child) for child in seq.spawn(n)]


def _check_ternary(F, label='F'):
    if len(F.varspec) != 3 or any(w != 1 for w in F.varspec.weights):
        raise InputError(f'{label} must be a ternary form in weight-1 variables, got {F.varspec.names}')
    if not F:
        raise DegreeError(f'{label} is the zero polynomial')
    return F.weighted_degree()


def _is_constant(expr, gens):
    return sympy.Poly(expr, *gens).total_degree() <= 0


#################

@dataclass(frozen=True)
class CoverDescriptor:
    """degree-d cyclic cover of P^n branched along branch = 0, with L = O(k)"""
    n: int
    d: int
    k: int
    branch: MultiPoly

    def __post_init__(self):
        if self.n < 1 or self.d < 1 or self.k < 1:
            raise InputError(f'invalid cover n={self.n}, d={self.d}, k={self.k}')
        if len(self.branch.varspec) != self.n + 1 or any(w != 1 for w in self.branch.varspec.weights):
            raise DegreeError(f'the branch of a cover of P^{self.n} needs {self.n + 1} weight-1 variables')
        if self.branch.weighted_degree() != self.d * self.k:
            raise DegreeError(f'branch degree {self.branch.weighted_degree()} != d*k = {self.d * self.k}')

    def to_json(self):
        return {'n': self.n, 'd': self.d, 'k': self.k, 'branch': self.branch.render()}


def pushforward_structure(cov):
    """O + L^-1 + ... + L^-(d-1)"""
    return LineBundleLedger.uniform(range(0, -cov.d, -1))


def cover_equation(cov, t='t'):
    """t^d - branch on the weighted space with weight k on t"""
    varspec = cov.branch.varspec.extend(t, cov.k)
    eq = MultiPoly.variable(t, varspec) ** cov.d - cov.branch.embed(varspec)
    assert eq.weighted_degree() == cov.d * cov.k
    return eq


#################

def rational_points(F, bound=DEFAULT_POINT_BOUND):
    """primitive integer points of F = 0 with coordinates in [-bound, bound], first nonzero coordinate positive"""
    names = F.varspec.names
    found = []
    for point in product(range(-bound, bound + 1), repeat=len(names)):
        nonzero = [v for v in point if v]
        if not nonzero or nonzero[0] < 0 or math.gcd(*point) != 1:
            continue
        if not F.evaluate(dict(zip(names, point))):
            found.append(point)
    return found


def random_points(n, rng, bound=DEFAULT_POINT_BOUND):
    """n distinct primitive integer points of P^2 in [-bound, bound]^3, normalized like rational_points"""
    points = []
    while len(points) < n:
        point = tuple(int(v) for v in rng.integers(-bound, bound + 1, size=3))
        nonzero = [v for v in point if v]
        if not nonzero or math.gcd(*point) != 1:
            continue
        if nonzero[0] < 0:
            point = tuple(-v for v in point)
        if point not in points:
            points.append(point)
    return points


def random_form_through(varspec, degree, points, rng, coeff_range=DEFAULT_COEFF_RANGE):
    """
    Seeded form of the given degree vanishing at every point, with integer coefficients.
    The vanishing conditions are solved exactly; the free coefficients are drawn from coeff_range.
    """
    monos = monomials_of_degree(len(varspec), degree)
    rows = [{j: Fraction(math.prod(c ** e for c, e in zip(point, mono))) for j, mono in enumerate(monos)}
            for point in points]
    lo, hi = coeff_range
    for _ in range(DEFAULT_BUDGET):
        solution = solve_rational(rows, [Fraction(0)] * len(rows), len(monos),
                                  fill=lambda n: [int(v) for v in rng.integers(lo, hi + 1, size=n)])
        if solution is not None and any(solution):
            scale = math.lcm(*(v.denominator for v in solution))
            return MultiPoly(varspec, {mono: v * scale for mono, v in zip(monos, solution) if v})
    raise DegreeError(f'no nonzero form of degree {degree} through {len(points)} points')


def _random_shear(rng, coeff_range):
    lo, hi = coeff_range
    return tuple(int(v) for v in rng.integers(lo, hi + 1, size=2))


def _apply_shear(F, shear):
    """u0 -> u0 + a*u2, u1 -> u1 + b*u2"""
    n0, n1, n2 = F.varspec.names
    a, b = shear
    last = MultiPoly.variable(n2, F.varspec)
    return F.substitute({n0: MultiPoly.variable(n0, F.varspec) + last.scale(a),
                         n1: MultiPoly.variable(n1, F.varspec) + last.scale(b)}, target=F.varspec)


def _leading_ok(expr, z, degree):
    poly = sympy.Poly(expr, z)
    return poly.degree() == degree and poly.LC() != 0


@dataclass(frozen=True)
class CurveCertificate:
    value: bool
    shear: tuple = None
    degree: int = None
    attempts: int = 0
    reason: str = ''

    def __bool__(self):
        return self.value

    def to_json(self):
        return {'value': self.value, 'shear': list(self.shear) if self.shear else None,
                'degree': self.degree, 'attempts': self.attempts, 'reason': self.reason}


def is_smooth_plane_curve(F, rng=None, retries=DEFAULT_SHEAR_RETRIES, coeff_range=DEFAULT_COEFF_RANGE):
    """
    Jacobian criterion by elimination: after a seeded shear that puts every nonzero partial in
    general position with respect to (0:0:1), the pairwise z-resultants of the partials have a
    constant gcd exactly when the partials have no common projective zero.
    """
    deg = _check_ternary(F)
    if deg == 1:
        return CurveCertificate(True, reason='line')
    rng = _rng(rng)
    gens = F.varspec.symbols()
    x, y, z = gens
    evidence = None
    for attempt in range(1, retries + 1):
        shear = _random_shear(rng, coeff_range)
        G = _apply_shear(F, shear).to_sympy()
        partials = [sympy.diff(G, v) for v in gens]
        partials = [p for p in partials if p != 0]
        if len(partials) < 2:
            return CurveCertificate(False, shear, attempts=attempt, reason='one partial vanishes identically')
        if not all(_leading_ok(p, z, deg - 1) for p in partials):
            LOGGER.debug('shear %s degenerate for elimination', shear)
            continue
        resultants = [sympy.resultant(p, q, z) for p, q in combinations(partials, 2)]
        if any(sympy.expand(r) == 0 for r in resultants):
            return CurveCertificate(False, shear, attempts=attempt, reason='partials share a component')
        g = resultants[0]
        for r in resultants[1:]:
            g = sympy.gcd(g, r)
        degree = sympy.Poly(g, x, y).total_degree()
        if degree <= 0:
            return CurveCertificate(True, shear, 0, attempt, 'resultant gcd is constant')
        evidence = CurveCertificate(False, shear, degree, attempt, 'common root of all resultants')
    if evidence is None:
        raise EliminationDegenerate(f'no non-degenerate shear among {retries} attempts for {F}')
    return evidence


def is_transversal(F1, H, rng=None, retries=DEFAULT_SHEAR_RETRIES, coeff_range=DEFAULT_COEFF_RANGE):
    """
    F1 and H meet in deg F1 * deg H distinct points: after a shear with both leading z-coefficients
    nonzero, Res_z(F1, H) is a squarefree binary form of that degree.
    """
    d1, d2 = _check_ternary(F1, 'F1'), _check_ternary(H, 'H')
    if F1.varspec != H.varspec:
        raise InputError('F1 and H use different variables')
    gens = F1.varspec.symbols()
    x, y, z = gens
    common = sympy.gcd(F1.to_sympy(), H.to_sympy())
    if not _is_constant(common, gens):
        raise CommonComponentError(f'{F1} and {H} share the component {common}')
    rng = _rng(rng)
    evidence = None
    for attempt in range(1, retries + 1):
        shear = _random_shear(rng, coeff_range)
        A, B = _apply_shear(F1, shear).to_sympy(), _apply_shear(H, shear).to_sympy()
        if not (_leading_ok(A, z, d1) and _leading_ok(B, z, d2)):
            continue
        R = sympy.expand(sympy.resultant(A, B, z))
        degree = sympy.Poly(R, x, y).total_degree()
        assert degree == d1 * d2, f'resultant degree {degree} != {d1 * d2}'
        _, factors = sympy.sqf_list(R, x, y)
        if all(mult == 1 for _, mult in factors):
            return CurveCertificate(True, shear, degree, attempt, 'squarefree resultant')
        evidence = CurveCertificate(False, shear, degree, attempt, 'repeated resultant root')
    if evidence is None:
        raise EliminationDegenerate(f'no non-degenerate shear among {retries} attempts')
    return evidence


#################

@dataclass(frozen=True)
class SplittingType:
    parts: tuple
    m: int
    d: int
    staircase: dict = field(compare=False, default_factory=dict)

    def sections(self, t):
        return sum(max(0, a + t + 1) for a in self.parts)

    def to_json(self):
        return {'parts': list(self.parts), 'm': self.m, 'd': self.d,
                'staircase': [{'t': t, 'h0': s} for t, s in sorted(self.staircase.items())]}


def _check_binary_pair(f0, f1):
    if f0.varspec != f1.varspec or len(f0.varspec) != 2:
        raise InputError('splitting types need two binary forms over the same two variables')
    if not f0 or not f1:
        raise NonFiniteMap('a zero form does not define a finite map')
    d = f0.weighted_degree()
    if f1.weighted_degree() != d:
        raise DegreeError(f'forms of degrees {d} and {f1.weighted_degree()}')
    gens = f0.varspec.symbols()
    common = sympy.gcd(f0.to_sympy(), f1.to_sympy())
    if not _is_constant(common, gens):
        raise NonFiniteMap(f'{f0} and {f1} share the root(s) of {common}')
    return d


def _section_count(m, d, t):
    return max(0, m + d * t + 1)


def splitting_type_p1(f0, f1, m, window=None):
    """
    Splitting type of f_* O(m) for f = (f0 : f1) of degree d. By the projection formula
    h^0(f_* O(m)(t)) = h^0(O(m + d t)); the number of parts >= j is s(-j) - s(-j-1).
    """
    d = _check_binary_pair(f0, f1)
    reach = abs(m) + d + 2
    count = {j: _section_count(m, d, -j) - _section_count(m, d, -j - 1) for j in range(-reach, reach + 1)}
    assert count[-reach] == d and count[reach] == 0, f'staircase window too small for m={m}, d={d}'
    parts = []
    for j in range(reach, -reach, -1):
        parts.extend([j - 1] * (count[j - 1] - count[j]))
    parts = tuple(sorted(parts, reverse=True))
    assert sum(parts) == m + 1 - d, f'sum of {parts} != {m + 1 - d}'
    window = window or (-reach, reach)
    staircase = {t: _section_count(m, d, t) for t in range(window[0], window[1] + 1)}
    split = SplittingType(parts, m, d, staircase)
    for t, s in staircase.items():
        assert split.sections(t) == s, f'staircase mismatch at t={t}'
    return split


def module_generator_degrees(f0, f1, m):
    """
    Parts of f_* O(m) read off the graded module M_t = H^0(O(m + d t)) over k[u, v], u and v acting
    through f0 and f1: a generator in degree t contributes the part -t.
    """
    d = _check_binary_pair(f0, f1)
    parts = []
    t = -((m + 1) // d) - 1
    while len(parts) < d:
        top = m + d * t
        if top >= 0:
            src = monomials_of_degree(2, top - d) if top - d >= 0 else []
            dst = {mono: idx for idx, mono in enumerate(monomials_of_degree(2, top))}
            entries = {}
            for block, f in enumerate((f0, f1)):
                for c_idx, mono in enumerate(src):
                    col = block * len(src) + c_idx
                    for exp, c in f.terms.items():
                        row = dst[tuple(a + b for a, b in zip(exp, mono))]
                        entries[(row, col)] = c
            image = exact_rank(entries, len(dst), 2 * len(src), f0.D) if src else 0
            parts.extend([-t] * (len(dst) - image))
        t += 1
        assert t < abs(m) + 2 * d + 4, 'generator search did not terminate'
    assert len(parts) == d, f'{len(parts)} generators for a rank-{d} bundle'
    return tuple(sorted(parts, reverse=True))


#################

@dataclass(frozen=True)
class Decomposition:
    F: MultiPoly
    F1: MultiPoly
    G1: MultiPoly
    F2: MultiPoly
    G2: MultiPoly
    d1: int
    d2: int
    method: str = ''
    attempts: int = 0
    line: tuple = None

    def __post_init__(self):
        if not self.verify():
            raise VerificationError('F != F1*G1 + F2*G2')
        if self.F1.weighted_degree() != self.d1 or self.F2.weighted_degree() != self.d2:
            raise VerificationError(f'degrees of F1, F2 are not ({self.d1}, {self.d2})')

    def verify(self):
        return self.F1 * self.G1 + self.F2 * self.G2 == self.F

    def to_json(self):
        data = {name: getattr(self, name).render() for name in ('F', 'F1', 'G1', 'F2', 'G2')}
        data.update({'d1': self.d1, 'd2': self.d2, 'method': self.method, 'attempts': self.attempts,
                     'line': [list(p) for p in self.line] if self.line else None})
        return data


def _fresh_varspec(varspec, names=('s', 'u')):
    while any(n in varspec.names for n in names):
        names = tuple(n + '_' for n in names)
    return VarSpec(names)


def _linear_form(row, varspec):
    return MultiPoly(varspec, {tuple(int(i == j) for i in range(len(varspec))): Fraction(int(v.p), int(v.q))
                               for j, v in enumerate(row) if v})


def _restriction_attempt(F, deg, d2, points, rng, coeff_range):
    """one decomposition with F1 the line through two rational points of F"""
    if len(points) < 2:
        return None
    pairs = list(combinations(points, 2))
    P, Q = pairs[int(rng.integers(len(pairs)))]
    names = F.varspec.names
    binary = _fresh_varspec(F.varspec)
    s, u = (MultiPoly.variable(n, binary) for n in binary.names)
    b = F.substitute({name: s.scale(p) + u.scale(q) for name, p, q in zip(names, P, Q)}, target=binary)
    if not b:
        return None
    const, factors = sympy.factor_list(b.to_sympy(), *binary.symbols())
    if any(mult > 1 for _, mult in factors):
        return None
    degrees = [sympy.Poly(f, *binary.symbols()).total_degree() for f, _ in factors]
    subsets = [c for r in range(1, len(factors) + 1) for c in combinations(range(len(factors)), r)
               if sum(degrees[i] for i in c) == d2]
    if not subsets:
        return None
    chosen = subsets[int(rng.integers(len(subsets)))]
    b2 = sympy.Mul(*[factors[i][0] for i in chosen])
    rest = const * sympy.Mul(*[factors[i][0] for i in range(len(factors)) if i not in chosen])
    for e in range(3):
        basis = sympy.Matrix([list(P), list(Q), [int(i == e) for i in range(3)]]).T
        if basis.det() != 0:
            break
    inv = basis.inv()
    s_form, u_form, w_form = (_linear_form(inv.row(i), F.varspec) for i in range(3))
    lift = {binary.names[0]: s_form, binary.names[1]: u_form}
    F2 = MultiPoly.from_sympy(b2, binary).substitute(lift, target=F.varspec)
    G2 = MultiPoly.from_sympy(rest, binary).substitute(lift, target=F.varspec)
    F2 = F2 + w_form * random_form(F.varspec, d2 - 1, rng, coeff_range)
    G2 = G2 + w_form * random_form(F.varspec, deg - d2 - 1, rng, coeff_range)
    gens = F.varspec.symbols()
    quotient, remainder = sympy.Poly((F - F2 * G2).to_sympy(), *gens, domain=sympy.QQ).div(
        sympy.Poly(w_form.to_sympy(), *gens, domain=sympy.QQ))
    assert remainder.is_zero, 'F - F2*G2 does not vanish on the line'
    scale = math.lcm(*(c.to_fraction().denominator for c in w_form.terms.values()))
    F1 = w_form.scale(scale)
    G1 = MultiPoly.from_sympy(quotient.as_expr(), F.varspec).scale(Fraction(1, scale))
    return F1, G1, F2, G2, (P, Q)


def _linear_attempt(F, deg, d1, d2, rng, coeff_range):
    """sample F1, F2 and solve F = F1*G1 + F2*G2 linearly for G1, G2"""
    varspec = F.varspec
    F1 = random_form(varspec, d1, rng, coeff_range)
    F2 = random_form(varspec, d2, rng, coeff_range)
    target = {mono: idx for idx, mono in enumerate(monomials_of_degree(3, deg))}
    rows = [dict() for _ in target]
    unknowns = []
    for f, cofactor_degree in ((F1, deg - d1), (F2, deg - d2)):
        for mono in monomials_of_degree(3, cofactor_degree):
            col = len(unknowns)
            unknowns.append((f, mono))
            for exp, c in f.terms.items():
                rows[target[tuple(a + b for a, b in zip(exp, mono))]][col] = c.to_fraction()
    rhs = [F.coefficient(mono).to_fraction() for mono in target]
    lo, hi = coeff_range
    solution = solve_rational(rows, rhs, len(unknowns),
                              fill=lambda n: [int(v) for v in rng.integers(lo, hi + 1, size=n)])
    if solution is None:
        return None
    G1 = MultiPoly(varspec, {mono: v for (f, mono), v in zip(unknowns, solution) if f is F1 and v})
    G2 = MultiPoly(varspec, {mono: v for (f, mono), v in zip(unknowns, solution) if f is F2 and v})
    return F1, G1, F2, G2, None


DECOMPOSITION_METHODS = ('auto', 'restriction', 'linear')


def carlini_decompose(F, d1, d2, seed=None, budget=DEFAULT_BUDGET, coeff_range=DEFAULT_COEFF_RANGE,
                      method='auto', point_bound=DEFAULT_POINT_BOUND, accept=None):
    """
    Seeded search for F = F1*G1 + F2*G2 with deg F1 = d1, deg F2 = d2.
    Args:
        F: rational ternary form
        seed: int, SeedSequence or numpy Generator
        budget: number of attempts
        method: 'restriction' (F1 a line through two rational points of F, needs d1 = 1),
            'linear' (random F1, F2 and a linear solve for G1, G2), or 'auto'
        accept: optional predicate a candidate must satisfy to be returned
    Returns:
        a verified Decomposition
    """
    deg = _check_ternary(F)
    if not 1 <= d1 <= d2 < deg:
        raise DegreeError(f'need 1 <= d1 <= d2 < deg F, got d1={d1}, d2={d2}, deg F={deg}')
    if method not in DECOMPOSITION_METHODS:
        raise InputError(f'unknown method {method!r}; choose from {DECOMPOSITION_METHODS}')
    if method == 'auto':
        method = 'restriction' if d1 == 1 else 'linear'
    if method == 'restriction' and d1 != 1:
        raise InputError('the restriction method produces a line, so it needs d1 = 1')
    rng = _rng(seed)
    points = rational_points(F, point_bound) if method == 'restriction' else []
    if method == 'restriction' and len(points) < 2:
        LOGGER.warning('fewer than two rational points with coordinates up to %d', point_bound)
    for attempt in range(1, budget + 1):
        if method == 'restriction':
            found = _restriction_attempt(F, deg, d2, points, rng, coeff_range)
        else:
            found = _linear_attempt(F, deg, d1, d2, rng, coeff_range)
        if found is None:
            continue
        F1, G1, F2, G2, line = found
        dec = Decomposition(F, F1, G1, F2, G2, d1, d2, method, attempt, line)
        if accept is not None and not accept(dec):
            LOGGER.debug('attempt %d rejected by the instance checks', attempt)
            continue
        LOGGER.info('decomposed after %d attempt(s) by %s', attempt, method)
        return dec
    raise DecompositionBudgetExhausted(f'no decomposition with (d1, d2) = ({d1}, {d2}) in {budget} attempts',
                                       attempts=budget)


#################

@dataclass
class PipelineReport:
    pipeline: str
    cover: CoverDescriptor
    p: int = None
    d1: int = None
    d2: int = None
    decomposition: Decomposition = None
    smooth: CurveCertificate = None
    transversal: dict = field(default_factory=dict)
    splitting: SplittingType = None
    ledger: object = None
    rank: int = None
    m_trace: object = None
    failure: str = None
    trace: list = field(default_factory=list)

    @property
    def passed(self):
        return self.rank is not None

    def to_json(self):
        return {'pipeline': self.pipeline, 'd': self.cover.d, 'k': self.cover.k, 'p': self.p,
                'd1': self.d1, 'd2': self.d2,
                'decomposition': self.decomposition.to_json() if self.decomposition else None,
                'smooth': self.smooth.to_json() if self.smooth else None,
                'transversal': {key: cert.to_json() for key, cert in self.transversal.items()},
                'splitting': self.splitting.to_json() if self.splitting else None,
                'ledger': self.ledger.to_json() if self.ledger else None,
                'm_trace': self.m_trace.to_json() if self.m_trace else None,
                'rank': self.rank, 'passed': self.passed, 'failure': self.failure, 'trace': list(self.trace)}


def _safe(check, *args, **kwargs):
    try:
        return check(*args, **kwargs)
    except MathematicalFailure as err:
        return CurveCertificate(False, reason=str(err))


def instance_evidence(dec, rng=None, shear_retries=DEFAULT_SHEAR_RETRIES):
    """smoothness of F1 and its transversality to F2, G2 and F2*G2"""
    smooth = _safe(is_smooth_plane_curve, dec.F1, rng, shear_retries)
    transversal = {
        'F2': _safe(is_transversal, dec.F1, dec.F2, rng, shear_retries),
        'G2': _safe(is_transversal, dec.F1, dec.G2, rng, shear_retries),
        'F2*G2': _safe(is_transversal, dec.F1, dec.F2 * dec.G2, rng, shear_retries),
    }
    return smooth, transversal


def _instance_checks(report, rng, shear_retries):
    """predicate for carlini_decompose that records the evidence on the report"""
    def accept(dec):
        report.smooth, report.transversal = instance_evidence(dec, rng, shear_retries)
        return bool(report.smooth) and all(report.transversal.values())
    return accept


def _decompose_for(report, F, seed, budget, coeff_range, shear_retries, decomposition=None):
    decomposition_rng, check_rng = spawn_rngs(seed, 2)
    accept = _instance_checks(report, check_rng, shear_retries)
    if decomposition is not None:
        if decomposition.F != F or (decomposition.d1, decomposition.d2) != (report.d1, report.d2):
            raise InputError(f'the given decomposition does not decompose the branch with '
                             f'(d1, d2) = ({report.d1}, {report.d2})')
        if not accept(decomposition):
            report.failure = 'the given decomposition fails the instance checks'
            report.trace.append(f'decomposition: given, {report.failure}')
            return False
        report.decomposition = decomposition
    else:
        try:
            report.decomposition = carlini_decompose(F, report.d1, report.d2, decomposition_rng, budget,
                                                     coeff_range, accept=accept)
        except DecompositionBudgetExhausted as err:
            report.failure = str(err)
            report.trace.append(f'decomposition: failed ({err})')
            return False
    report.trace.append(f'decomposition: {report.decomposition.method}, attempt {report.decomposition.attempts}')
    report.trace.append('F1 smooth and transversal to F2, G2, F2*G2')
    return True


def _check_plane_cover(cov, parity):
    if cov.n != 2:
        raise InputError(f'the parity pipelines work on P^2, got P^{cov.n}')
    if cov.d < 2:
        raise InputError('the covering degree must be at least 2')
    if ((cov.d * cov.k) % 2 == 0) != (parity == 'even'):
        raise InputError(f'd*k = {cov.d * cov.k} does not have {parity} parity')


def pipeline_degrees(d, k):
    """(d1, d2, p) of the decomposition used by the pipeline for d*k; p is None when d*k is even"""
    if (d * k) % 2 == 0:
        return k, d * k // 2, None
    p = smallest_prime_factor(d * k)
    return k, d * k // p, p


def planted_cover(d, k, seed=0, budget=DEFAULT_BUDGET, coeff_range=DEFAULT_COEFF_RANGE,
                  shear_retries=DEFAULT_SHEAR_RETRIES):
    """
    Seeded cover of P^2 whose branch is F = F1*G1 + F2*G2 built from random pieces.
    Args:
        d, k: covering degree and L = O(k); the pieces get the pipeline's degrees (d1, d2)
        seed: int, SeedSequence or numpy Generator
        budget: number of samples before giving up
    Returns:
        (CoverDescriptor, Decomposition) with F1 smooth and transversal to F2, G2 and F2*G2
    """
    if d < 2 or k < 1:
        raise InputError(f'planted covers need d >= 2 and k >= 1, got d={d}, k={k}')
    deg = d * k
    d1, d2, _ = pipeline_degrees(d, k)
    rng, check_rng = spawn_rngs(seed, 2)
    for attempt in range(1, budget + 1):
        F1, G1, F2, G2 = (random_form(PLANE, e, rng, coeff_range) for e in (d1, deg - d1, d2, deg - d2))
        F = F1 * G1 + F2 * G2
        if not F:
            continue
        dec = Decomposition(F, F1, G1, F2, G2, d1, d2, 'planted', attempt)
        smooth, transversal = instance_evidence(dec, check_rng, shear_retries)
        if smooth and all(transversal.values()):
            LOGGER.info('planted branch of degree %d after %d sample(s)', deg, attempt)
            return CoverDescriptor(2, d, k, F), dec
        LOGGER.debug('planted sample %d fails the instance checks', attempt)
    raise DecompositionBudgetExhausted(f'no planted branch with (d1, d2) = ({d1}, {d2}) in {budget} samples',
                                       attempts=budget)


def even_parity_pipeline(cov, seed=0, budget=DEFAULT_BUDGET, coeff_range=DEFAULT_COEFF_RANGE,
                         shear_retries=DEFAULT_SHEAR_RETRIES, decomposition=None):
    """rank-d certificate for d*k even: decomposition with (d1, d2) = (k, dk/2), instance checks,
    the splitting of (x^d, y^d) at d-1 and the modification ledger with r = 1"""
    _check_plane_cover(cov, 'even')
    d, k = cov.d, cov.k
    d1, d2, _ = pipeline_degrees(d, k)
    report = PipelineReport('even', cov, d1=d1, d2=d2)
    if not _decompose_for(report, cov.branch, seed, budget, coeff_range, shear_retries, decomposition):
        return report
    line = VarSpec(('x', 'y'))
    report.splitting = splitting_type_p1(MultiPoly.variable('x', line) ** d, MultiPoly.variable('y', line) ** d, d - 1)
    if any(report.splitting.parts):
        report.failure = f'splitting type {report.splitting.parts} is not trivial'
        return report
    report.trace.append(f'splitting of (x^{d}, y^{d}) at {d - 1}: trivial')
    report.ledger = modification_ledger(d, 1)
    report.trace.append(f'ledger: pushforward {report.ledger.pushforward}')
    report.rank = d
    return report


def odd_parity_pipeline(cov, seed=0, budget=DEFAULT_BUDGET, coeff_range=DEFAULT_COEFF_RANGE,
                        shear_retries=DEFAULT_SHEAR_RETRIES, variant='proof', decomposition=None):
    """rank bound d*m_p for d*k odd, p the smallest prime of d*k, decomposition with (d1, d2) = (k, dk/p)"""
    _check_plane_cover(cov, 'odd')
    d, k = cov.d, cov.k
    d1, d2, p = pipeline_degrees(d, k)
    report = PipelineReport('odd', cov, p=p, d1=d1, d2=d2)
    try:
        report.m_trace = m_sequence(p, variant)
    except ChainBreak as err:
        report.failure = str(err)
        report.trace.append(f'recursion: {err}')
        return report
    m_p = report.m_trace.value
    report.trace.append(f'recursion ({variant}): m_{p} = {m_p}')
    if not _decompose_for(report, cov.branch, seed, budget, coeff_range, shear_retries, decomposition):
        return report
    report.ledger = modification_ledger(d, m_p)
    report.trace.append(f'ledger: pushforward {report.ledger.pushforward}')
    report.rank = d * m_p
    return report


PIPELINES = {
    'even': even_parity_pipeline,
    'odd': odd_parity_pipeline,
}


def run_parity_pipeline(cov, **kwargs):
    parity = 'even' if (cov.d * cov.k) % 2 == 0 else 'odd'
    return PIPELINES[parity](cov, **kwargs)
