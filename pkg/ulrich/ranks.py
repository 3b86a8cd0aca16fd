"""
Integer bookkeeping for the rank statements: the m/m' and N/N' recursions along prime
chains p -> (p-1)/2, the line-bundle ledger of the kernel modifications, and rank reports.
"""
import logging
from dataclasses import dataclass, field

import pandas as pd
import sympy

from .errors import ChainBreak, InputError

LOGGER = logging.getLogger(__name__)

# values as they were worked out by hand; the recursion is reported against them
HAND_COMPUTED_M = {2: 1, 3: 2, 5: 16, 7: 72}
HAND_COMPUTED_M_PRIME = {2: 2, 3: 12, 5: 80}

OPEN_EXPECTATION = 'a rank-d bundle is expected in the odd case as well; not computed'


def smallest_prime_factor(n):
    if n < 2:
        raise InputError(f'{n} has no prime factor')
    return min(sympy.primefactors(n))


def prime_chain(p):
    """[2, ..., p] following p -> (p-1)/2; 3 steps down to 2 directly"""
    if not sympy.isprime(p):
        raise InputError(f'{p} is not prime')
    chain = [p]
    while chain[-1] != 2:
        q = chain[-1]
        below = 2 if q == 3 else (q - 1) // 2
        if not sympy.isprime(below):
            raise ChainBreak(f'({q}-1)/2 = {below} is not prime; the recursion is undefined at {p}', prime=q)
        chain.append(below)
    return chain[::-1]


def _proof_step(q, m_prev, m_prime_prev):
    return (q - 1) * m_prime_prev ** 2


def _statement_step(q, m_prev, m_prime_prev):
    return (q - 1) * m_prev ** 2


VARIANTS = {
    'proof': _proof_step,
    'statement': _statement_step,
}


@dataclass(frozen=True)
class RecursionTrace:
    kind: str
    p: int
    variant: str
    chain: tuple
    values: tuple
    divergences: tuple = ()

    @property
    def value(self):
        return self.values[-1]['value']

    def value_at(self, prime):
        for row in self.values:
            if row['prime'] == prime:
                return row['value']
        raise KeyError(prime)

    def to_frame(self):
        return pd.DataFrame(list(self.values))

    def to_json(self):
        return {'kind': self.kind, 'p': self.p, 'variant': self.variant, 'chain': list(self.chain),
                'values': [dict(row) for row in self.values],
                'divergences': [dict(div) for div in self.divergences]}


def m_sequence(p, variant='proof'):
    """
    m_2 = 1, m'_2 = 2, m_3 = m'_2 = 2; above 3, m_p = (p-1) * x^2 with x = m'_q (proof variant)
    or x = m_q (statement variant), q = (p-1)/2; always m'_p = p * m_p^2.
    """
    if variant not in VARIANTS:
        raise InputError(f'unknown variant {variant!r}; choose from {sorted(VARIANTS)}')
    step = VARIANTS[variant]
    chain = prime_chain(p)
    values = [{'prime': 2, 'value': 1, 'value_prime': 2}]
    for q in chain[1:]:
        prev = values[-1]
        m = prev['value_prime'] if q == 3 else step(q, prev['value'], prev['value_prime'])
        values.append({'prime': q, 'value': m, 'value_prime': q * m * m})
    divergences = []
    for row in values:
        for key, hand in (('value', HAND_COMPUTED_M), ('value_prime', HAND_COMPUTED_M_PRIME)):
            written = hand.get(row['prime'])
            if written is not None and written != row[key]:
                divergences.append({'prime': row['prime'], 'quantity': key,
                                    'computed': row[key], 'hand_computed': written})
    if divergences:
        LOGGER.info('m recursion (%s) differs from hand-computed values at %s', variant,
                    sorted({div['prime'] for div in divergences}))
    return RecursionTrace('m', p, variant, tuple(chain), tuple(values), tuple(divergences))


def variant_divergence(p):
    """first prime of the chain where the two m variants disagree, or None"""
    proof, statement = m_sequence(p, 'proof'), m_sequence(p, 'statement')
    for a, b in zip(proof.values, statement.values):
        if a['value'] != b['value']:
            return a['prime']
    return None


def n_sequence(p):
    """N_2 = 2, N' = 2N, N_3 = N'_2 + 1, N_p = 1 + 4 N'_q above 3"""
    chain = prime_chain(p)
    values = [{'prime': 2, 'value': 2, 'value_prime': 4}]
    for q in chain[1:]:
        prev = values[-1]
        N = prev['value_prime'] + 1 if q == 3 else 1 + 4 * prev['value_prime']
        if q >= 5:
            assert N % 8 == 1, f'N_{q} = {N} is not 1 mod 8'
        values.append({'prime': q, 'value': N, 'value_prime': 2 * N})
    return RecursionTrace('N', p, 'proof', tuple(chain), tuple(values))


#################

class LineBundleLedger:
    """formal sum of L^j with multiplicities; twist j -> multiplicity"""

    def __init__(self, summands=None):
        self.summands = {int(j): int(n) for j, n in (summands or {}).items() if n}
        assert all(n > 0 for n in self.summands.values()), f'negative multiplicity in {self.summands}'

    @classmethod
    def uniform(cls, twists, multiplicity=1):
        return cls({j: multiplicity for j in twists})

    @property
    def rank(self):
        return sum(self.summands.values())

    @property
    def degree(self):
        return sum(j * n for j, n in self.summands.items())

    def multiplicity(self, j):
        return self.summands.get(j, 0)

    def twist(self, by=1):
        return LineBundleLedger({j + by: n for j, n in self.summands.items()})

    def replace(self, source, target, count):
        if self.multiplicity(source) < count:
            raise InputError(f'only {self.multiplicity(source)} copies of L^{source} to replace, need {count}')
        summands = dict(self.summands)
        summands[source] -= count
        summands[target] = summands.get(target, 0) + count
        return LineBundleLedger(summands)

    def __eq__(self, other):
        if not isinstance(other, LineBundleLedger):
            return NotImplemented
        return self.summands == other.summands

    __hash__ = None

    def _render(self, symbol):
        if not self.summands:
            return '0'
        parts = []
        for j in sorted(self.summands, reverse=True):
            n = self.summands[j]
            parts.append(symbol(j) if n == 1 else f'{symbol(j)}^{n}')
        return ' + '.join(parts)

    def render(self):
        return self._render(lambda j: 'O' if j == 0 else f'L({j})')

    def render_on_base(self, k):
        """the same sum with L = O(k)"""
        return self._render(lambda j: 'O' if j == 0 else f'O({j * k})')

    __str__ = render

    def __repr__(self):
        return f'LineBundleLedger({self.render()})'

    def to_json(self):
        return {'summands': [{'twist': j, 'multiplicity': self.summands[j]} for j in sorted(self.summands, reverse=True)],
                'rank': self.rank, 'degree': self.degree}


@dataclass(frozen=True)
class ModificationStep:
    index: int
    before: LineBundleLedger
    after: LineBundleLedger
    replaced: int


@dataclass(frozen=True)
class ModificationLedger:
    d: int
    r: int
    start: LineBundleLedger
    steps: tuple
    final_kernel: LineBundleLedger
    pushforward: LineBundleLedger

    def to_frame(self):
        rows = [{'step': 'start', 'rank': self.start.rank, 'degree': self.start.degree, 'ledger': self.start.render()}]
        for step in self.steps:
            rows.append({'step': step.index, 'rank': step.after.rank, 'degree': step.after.degree,
                         'ledger': step.after.render()})
        rows.append({'step': 'final', 'rank': self.pushforward.rank, 'degree': self.pushforward.degree,
                     'ledger': self.pushforward.render()})
        return pd.DataFrame(rows)

    def to_json(self):
        return {'d': self.d, 'r': self.r, 'start': self.start.to_json(),
                'steps': [{'index': s.index, 'replaced': s.replaced, 'before': s.before.to_json(),
                           'after': s.after.to_json()} for s in self.steps],
                'final_kernel': self.final_kernel.to_json(), 'pushforward': self.pushforward.to_json()}


def closed_form_kernel(d, r, i):
    """pushforward of the kernel after step i: (L^-1)^((i+2)dr) + (L^-2 + ... + L^-(d-i-1))^dr"""
    summands = {-1: (i + 2) * d * r}
    summands.update({-j: d * r for j in range(2, d - i)})
    return LineBundleLedger(summands)


def modification_ledger(d, r):
    """
    Replay the kernel modifications on pushforwards.
    Starting from (O + L^-1 + ... + L^-(d-1))^dr, step i replaces (i+1)dr copies of O by L^-1 and
    the result is twisted by L before the next step. Rank d^2 r is preserved, the degree
    drops by (i+1)dr at step i, and the final kernel (L^-1)^(d^2 r) twists to O^(d^2 r).
    """
    if d < 2 or r < 1:
        raise InputError(f'modification_ledger needs d >= 2 and r >= 1, got d={d}, r={r}')
    start = LineBundleLedger.uniform(range(0, -d, -1), d * r)
    current, steps = start, []
    for i in range(d - 1):
        count = (i + 1) * d * r
        after = current.replace(0, -1, count)
        assert after == closed_form_kernel(d, r, i), f'step {i}: {after} != {closed_form_kernel(d, r, i)}'
        assert after.rank == current.rank and after.degree == current.degree - count
        steps.append(ModificationStep(i, current, after, count))
        current = after.twist(1)
    final_kernel = steps[-1].after
    pushforward = final_kernel.twist(1)
    assert pushforward == LineBundleLedger({0: d * d * r}), f'pushforward {pushforward} is not trivial'
    LOGGER.debug('ledger (d=%d, r=%d): %d steps ending in %s', d, r, len(steps), pushforward)
    return ModificationLedger(d, r, start, tuple(steps), final_kernel, pushforward)


def pn_rank_bound(n, d, r):
    """rank r * d^(n-1) on a cyclic cover of P^n"""
    if n < 2 or d < 2 or r < 1:
        raise InputError(f'pn_rank_bound needs n >= 2, d >= 2, r >= 1, got n={n}, d={d}, r={r}')
    return r * d ** (n - 1)


def odd_rank_bound(d, k, variant='proof'):
    p = smallest_prime_factor(d * k)
    return d * m_sequence(p, variant).value


@dataclass
class RankReport:
    d: int
    k: int
    parity: str
    p: int = None
    m_proof: int = None
    m_statement: int = None
    rank_bound: int = None
    chain_break: str = None
    divergences: list = field(default_factory=list)
    ledger: ModificationLedger = None
    veronese_s: int = None
    veronese_size: int = None
    note: str = None

    def to_json(self):
        return {'d': self.d, 'k': self.k, 'parity': self.parity, 'p': self.p,
                'm_proof': self.m_proof, 'm_statement': self.m_statement,
                'rank_bound': self.rank_bound, 'chain_break': self.chain_break,
                'divergences': list(self.divergences),
                'ledger': self.ledger.to_json()['steps'] if self.ledger else [],
                'veronese_s': self.veronese_s, 'veronese_size': self.veronese_size,
                'note': self.note}


def rank_report(d, k, branch=None, n=2):
    """
    Even d*k: rank d. Odd d*k: rank bound d * m_p for the smallest prime p of d*k, with both
    recursion variants. With a branch form, also the size d^s of the Veronese route.
    """
    if d < 2 or k < 1:
        raise InputError(f'rank_report needs d >= 2 and k >= 1, got d={d}, k={k}')
    if (d * k) % 2 == 0:
        report = RankReport(d, k, 'even', rank_bound=d, ledger=modification_ledger(d, 1))
    else:
        p = smallest_prime_factor(d * k)
        report = RankReport(d, k, 'odd', p=p, note=OPEN_EXPECTATION)
        try:
            proof = m_sequence(p, 'proof')
            report.m_proof = proof.value
            report.m_statement = m_sequence(p, 'statement').value
            report.divergences = [dict(div) for div in proof.divergences]
            report.rank_bound = d * proof.value
            report.ledger = modification_ledger(d, proof.value)
        except ChainBreak as err:
            LOGGER.warning('no rank bound for d=%d, k=%d: %s', d, k, err)
            report.chain_break = str(err)
    if branch is not None:
        from .veronese import VeroneseChart, veronese_rewrite

        cert = veronese_rewrite(branch, VeroneseChart.build(n, k), d)
        report.veronese_s = cert.s
        report.veronese_size = d ** cert.s
    return report
