"""
Cohomology tables of cokernel sheaves G = coker(O(-e)^m -> O^m) on projective space,
computed from graded ranks of the presentation, and the Ulrich certificate built on them.
"""
import logging
import math
from dataclasses import dataclass, field

import pandas as pd

from .errors import DegreeError, InputError, NonLinearEntry, SizeMismatch
from .linalg import exact_rank
from .polyring import monomials_of_degree

LOGGER = logging.getLogger(__name__)

D1_WINDOW_BELOW = 3
D1_WINDOW_ABOVE = 3
INJECTIVITY_ATTEMPTS = 8


@dataclass(frozen=True)
class CokerPresentation:
    """alpha: O(-degree)^m -> O^m on P^(n_vars - 1); dim_x is the dimension k of the support"""
    alpha: object
    dim_x: int
    degree: int = 1

    def __post_init__(self):
        alpha = self.alpha
        if alpha.rows != alpha.cols:
            raise SizeMismatch(f'presentation matrix must be square, got {alpha.rows}x{alpha.cols}')
        if any(w != 1 for w in alpha.varspec.weights):
            raise DegreeError('presentations live on an unweighted projective space')
        if len(alpha.varspec) < 2:
            raise InputError('the ambient projective space needs at least two variables')
        if self.degree < 0:
            raise DegreeError(f'entry degree must be non-negative, got {self.degree}')
        if not 0 <= self.dim_x < len(alpha.varspec) - 1:
            raise InputError(f'dim_x={self.dim_x} does not fit P^{len(alpha.varspec) - 1}')
        bad = alpha.first_entry_not_of_degree(self.degree)
        if bad is not None:
            i, j, text = bad
            if self.degree == 1:
                raise NonLinearEntry(f'entry ({i}, {j}) = {text} is not linear', entry=(i, j))
            raise DegreeError(f'entry ({i}, {j}) = {text} is not of degree {self.degree}')

    @property
    def m(self):
        return self.alpha.rows

    @property
    def n_vars(self):
        return len(self.alpha.varspec)

    @property
    def ambient(self):
        return self.n_vars - 1


def line_cohomology(N, i, j):
    """h^i(P^N, O(j))"""
    if N < 1:
        raise InputError(f'P^{N} is not a positive-dimensional projective space')
    if i == 0:
        return math.comb(N + j, N) if j >= 0 else 0
    if i == N:
        return math.comb(-j - 1, N) if j <= -N - 1 else 0
    return 0


def graded_map_rank(alpha, src_deg, e):
    """rank of v -> alpha v from (S_src)^m to (S_{src+e})^m, S the polynomial ring of alpha"""
    if src_deg < 0:
        return 0
    n = len(alpha.varspec)
    src = monomials_of_degree(n, src_deg)
    dst = {mono: idx for idx, mono in enumerate(monomials_of_degree(n, src_deg + e))}
    entries = {}
    for i in range(alpha.rows):
        for j in range(alpha.cols):
            p = alpha[i, j]
            if not p:
                continue
            for c_idx, u in enumerate(src):
                col = j * len(src) + c_idx
                for exp, c in p.terms.items():
                    row = i * len(dst) + dst[tuple(a + b for a, b in zip(exp, u))]
                    key = (row, col)
                    entries[key] = entries[key] + c if key in entries else c
    return exact_rank(entries, alpha.rows * len(dst), alpha.cols * len(src), alpha.D)


def graded_rank(alpha, t, degree=1):
    """rank of the induced map on global sections H^0(O(t - degree))^m -> H^0(O(t))^m"""
    return graded_map_rank(alpha, t - degree, degree)


@dataclass
class CohomologyTable:
    ambient: int
    m: int
    degree: int
    t_range: tuple
    entries: dict = field(default_factory=dict)
    ranks: dict = field(default_factory=dict)

    def h(self, i, t):
        return self.entries[(i, t)]

    def twists(self):
        return range(self.t_range[0], self.t_range[1] + 1)

    def to_rows(self):
        return [{'i': i, 't': t, 'h': h} for (i, t), h in sorted(self.entries.items())]

    def to_frame(self):
        frame = pd.DataFrame(self.to_rows())
        return frame.pivot(index='i', columns='t', values='h')

    def to_json(self):
        return {'ambient': self.ambient, 'm': self.m, 'degree': self.degree,
                'window': list(self.t_range), 'rows': self.to_rows()}


def coker_cohomology_table(pres, t_range):
    """
    h^i(G(t)) from the long exact sequence of 0 -> O(t-e)^m -> O(t)^m -> G(t) -> 0.
    Args:
        pres: CokerPresentation
        t_range: (t_min, t_max), inclusive
    Returns:
        CohomologyTable; the map on top cohomology is evaluated through its Serre dual, the
        transposed presentation on H^0(O(-t-N-1))^m
    """
    t_min, t_max = t_range
    if t_min > t_max:
        raise InputError(f'empty twist range {t_range}')
    amb, m, e = pres.ambient, pres.m, pres.degree
    alpha_t = pres.alpha.transpose()
    table = CohomologyTable(amb, m, e, (t_min, t_max))
    for t in range(t_min, t_max + 1):
        r0 = graded_rank(pres.alpha, t, e)
        rtop = graded_map_rank(alpha_t, -t - amb - 1, e)
        table.ranks[t] = (r0, rtop)
        top_src = m * line_cohomology(amb, amb, t - e) - rtop
        h = {i: 0 for i in range(amb + 1)}
        h[0] = m * line_cohomology(amb, 0, t) - r0
        if amb == 1:
            h[0] += top_src
        else:
            h[amb - 1] = top_src
        h[amb] = m * line_cohomology(amb, amb, t) - rtop
        for i, value in h.items():
            assert value >= 0, f'negative h^{i}(G({t})) = {value}'
            table.entries[(i, t)] = value
    LOGGER.debug('cohomology table on P^%d for t in [%d, %d]', amb, t_min, t_max)
    return table


def euler_characteristic_holds(table, t):
    """sum (-1)^i h^i(G(t)) = m (chi(O(t)) - chi(O(t-e)))"""
    amb = table.ambient

    def chi(j):
        return math.comb(amb + j, amb) if j >= -amb else (-1) ** amb * math.comb(-j - 1, amb)

    lhs = sum((-1) ** i * table.h(i, t) for i in range(amb + 1))
    return lhs == table.m * (chi(t) - chi(t - table.degree))


def is_injective(pres, rng, attempts=INJECTIVITY_ATTEMPTS, coeff_range=(-9, 9)):
    """det alpha != 0, certified by a full-rank evaluation at a seeded integer point"""
    lo, hi = coeff_range
    names = pres.alpha.varspec.names
    for _ in range(attempts):
        point = dict(zip(names, (int(v) for v in rng.integers(lo, hi + 1, size=len(names)))))
        entries = {(i, j): pres.alpha[i, j].evaluate(point)
                   for i in range(pres.m) for j in range(pres.m) if pres.alpha[i, j]}
        if exact_rank(entries, pres.m, pres.m, pres.alpha.D) == pres.m:
            return True
    return False


@dataclass(frozen=True)
class UlrichCertificate:
    d1: bool
    d2: bool
    h0: int
    m: int
    dim_x: int
    window: tuple
    table: CohomologyTable = field(compare=False)
    failures: tuple = ()

    @property
    def ulrich(self):
        return self.d1 and self.d2

    def to_json(self):
        data = self.table.to_json()
        data.update({'D1': self.d1, 'D2': self.d2, 'h0': self.h0, 'dim_x': self.dim_x,
                     'window': list(self.window), 'window_is_finite_proxy': True,
                     'failures': [list(f) for f in self.failures]})
        return data


def certify_ulrich(pres, dim_x=None, window=None):
    """
    Check the vanishing conditions on G = coker(alpha) with k = dim_x:
    D2: h^i(G(-i)) = 0 for i > 0 and h^i(G(-i-1)) = 0 for i < k (exact);
    D1: h^i(G(j)) = 0 for 0 < i < k, h^0(G(j)) = 0 for j < 0, h^k(G(j)) = 0 for j >= -k,
    checked over the finite twist window (default [-k-3, 3]).
    """
    k = pres.dim_x if dim_x is None else dim_x
    amb = pres.ambient
    window = tuple(window) if window is not None else (-k - D1_WINDOW_BELOW, D1_WINDOW_ABOVE)
    table = coker_cohomology_table(pres, (min(window[0], -amb - 1), max(window[1], 0)))
    failures = []
    for i in range(1, amb + 1):
        if table.h(i, -i):
            failures.append(('D2', i, -i, table.h(i, -i)))
    for i in range(k):
        if table.h(i, -i - 1):
            failures.append(('D2', i, -i - 1, table.h(i, -i - 1)))
    d2 = not failures
    for t in range(window[0], window[1] + 1):
        cells = [i for i in range(1, k)]
        if t < 0:
            cells.append(0)
        if k >= 1 and t >= -k:
            cells.append(k)
        for i in cells:
            if table.h(i, t):
                failures.append(('D1', i, t, table.h(i, t)))
    d1 = all(f[0] != 'D1' for f in failures)
    h0 = table.h(0, 0)
    LOGGER.info('Ulrich certificate (m=%d, k=%d): D1=%s D2=%s h0=%d', pres.m, k, d1, d2, h0)
    return UlrichCertificate(d1, d2, h0, pres.m, k, window, table, tuple(failures))


def check_pushforward_trivial(pres_or_cert):
    """the pushforward is trivial of rank m when D1, D2 hold and h^0(G) = m"""
    cert = pres_or_cert if isinstance(pres_or_cert, UlrichCertificate) else certify_ulrich(pres_or_cert)
    trivial = cert.d1 and cert.d2 and cert.h0 == cert.m
    return {'trivial': trivial, 'rank': cert.m, 'certificate': cert}
