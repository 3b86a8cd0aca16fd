"""
Veronese rewriting of a degree d*k form as a degree d form in the degree-k monomial
coordinates z_0..z_N, and the cover pipeline producing a factorization of t^d - g'.
"""
import logging
import math
from dataclasses import dataclass, field

from .errors import DegreeError, VerificationError
from .matfac import products_of_form, root_of_sum, split_t_power
from .polyring import MultiPoly, VarSpec, monomials_of_degree

LOGGER = logging.getLogger(__name__)


def monomial_basis(n, k):
    """exponent vectors of degree k in n+1 variables, graded-lex descending"""
    if n < 1 or k < 1:
        raise DegreeError(f'monomial_basis needs n >= 1 and k >= 1, got n={n}, k={k}')
    basis = monomials_of_degree(n + 1, k)
    assert len(basis) == math.comb(n + k, n), f'{len(basis)} monomials, expected {math.comb(n + k, n)}'
    return basis


@dataclass(frozen=True)
class VeroneseChart:
    n: int
    k: int
    basis: tuple
    prefix: str = 'z'

    @classmethod
    def build(cls, n, k, prefix='z'):
        return cls(n, k, tuple(monomial_basis(n, k)), prefix)

    @property
    def N(self):
        return len(self.basis) - 1

    @property
    def names(self):
        return tuple(f'{self.prefix}{i}' for i in range(len(self.basis)))

    @property
    def varspec(self):
        return VarSpec(self.names)

    def index(self, exp):
        try:
            return self.basis.index(tuple(exp))
        except ValueError:
            raise DegreeError(f'{exp} is not a degree-{self.k} monomial of the chart') from None

    def substitution(self, source):
        """z_i -> x^basis[i] over the source variables"""
        if len(source) != self.n + 1:
            raise DegreeError(f'chart for P^{self.n} needs {self.n + 1} variables, got {len(source)}')
        return {name: MultiPoly.monomial(exp, source) for name, exp in zip(self.names, self.basis)}

    def to_json(self):
        return {'n': self.n, 'k': self.k, 'N': self.N,
                'coordinates': {name: list(exp) for name, exp in zip(self.names, self.basis)}}


def greedy_split(exp, d, k):
    """split x^exp into d degree-k monomials, always taking the lex-largest degree-k divisor first"""
    if sum(exp) != d * k:
        raise DegreeError(f'{exp} has degree {sum(exp)}, not {d}*{k}')
    rest = list(exp)
    parts = []
    for _ in range(d):
        part, need = [], k
        for i, e in enumerate(rest):
            take = min(e, need)
            part.append(take)
            need -= take
        rest = [e - a for e, a in zip(rest, part)]
        parts.append(tuple(part))
    return parts


@dataclass(frozen=True)
class RewriteCertificate:
    g: MultiPoly
    gprime: MultiPoly
    chart: VeroneseChart
    d: int
    splitting: tuple = field(compare=False)

    def verify(self):
        back = self.gprime.substitute(self.chart.substitution(self.g.varspec), target=self.g.varspec)
        return back == self.g

    @property
    def s(self):
        return len(self.gprime)

    def to_json(self):
        return {'g': self.g.to_json(), 'gprime': self.gprime.to_json(), 'd': self.d,
                'chart': self.chart.to_json(),
                'splitting': [{'exp': list(exp), 'parts': [list(p) for p in parts]} for exp, parts in self.splitting],
                'verified': self.verify()}


def veronese_rewrite(g, chart, d=None):
    """
    Rewrite g of degree d*k as g' of degree d in the chart coordinates.
    Args:
        g: homogeneous form in n+1 weight-1 variables
        chart: VeroneseChart(n, k)
        d: target degree; defaults to deg(g) / k
    Returns:
        RewriteCertificate whose substitution identity has been checked
    """
    if len(g.varspec) != chart.n + 1:
        raise DegreeError(f'g has {len(g.varspec)} variables, the chart expects {chart.n + 1}')
    if any(w != 1 for w in g.varspec.weights):
        raise DegreeError('veronese_rewrite needs weight-1 variables')
    degree = g.weighted_degree()
    if d is None:
        if degree % chart.k:
            raise DegreeError(f'degree {degree} is not a multiple of k={chart.k}')
        d = degree // chart.k
    if degree != d * chart.k:
        raise DegreeError(f'degree {degree} does not split into {d} parts of degree {chart.k}')
    target = chart.varspec
    terms, splitting = {}, []
    for exp, c in g.sorted_terms():
        parts = greedy_split(exp, d, chart.k)
        zexp = [0] * len(target)
        for part in parts:
            zexp[chart.index(part)] += 1
        zexp = tuple(zexp)
        terms[zexp] = terms[zexp] + c if zexp in terms else c
        splitting.append((exp, tuple(parts)))
    cert = RewriteCertificate(g, MultiPoly(target, terms, g.D), chart, d, tuple(splitting))
    if not cert.verify():
        raise VerificationError(f'substitution does not reproduce {g}')
    LOGGER.debug('rewrote degree %d form into %d z-terms', degree, cert.s)
    return cert


def sum_of_products_presentation(gprime):
    """one product of d coordinate forms per term of g', coefficient on the first form"""
    return products_of_form(gprime, gprime.weighted_degree())


@dataclass(frozen=True)
class CoverReport:
    n: int
    k: int
    d: int
    s: int
    target_size: int
    achieved_size: int
    certificate: RewriteCertificate
    mf: object
    stages: tuple

    def to_json(self):
        return {'n': self.n, 'k': self.k, 'd': self.d, 's': self.s,
                'target_size': self.target_size, 'achieved_size': self.achieved_size,
                'stages': [dict(stage) for stage in self.stages],
                'certificate': self.certificate.to_json(),
                'factorization': self.mf.to_json()}


def build_cover_mf(n, k, d, g, method='auto', t='t'):
    """
    Factorization of t^d - g' where g' is the Veronese rewrite of the branch form g.
    The root M of g' comes from the METHODS registry; t^d counts as one extra summand,
    so the target size is d^s with s the number of terms of g'.
    """
    chart = VeroneseChart.build(n, k)
    cert = veronese_rewrite(g, chart, d)
    products = sum_of_products_presentation(cert.gprime)
    root = root_of_sum(products, d, method)
    mf = split_t_power(root, t)
    stages = (
        {'stage': 'rewrite', 'terms': cert.s, 'coordinates': chart.N + 1},
        {'stage': 'root', 'construction': root.construction, 'size': root.size},
        {'stage': 'split', 'construction': mf.construction, 'size': mf.size},
    )
    LOGGER.info('cover of P^%d (d=%d, k=%d): s=%d, size %d (target %d)', n, d, k, cert.s, mf.size, d ** cert.s)
    return CoverReport(n, k, d, cert.s, d ** cert.s, mf.size, cert, mf, stages)
