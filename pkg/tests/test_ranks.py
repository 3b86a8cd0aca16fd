import pytest

from ulrich.errors import ChainBreak, InputError
from ulrich.polyring import VarSpec, parse_poly
from ulrich.ranks import (LineBundleLedger, closed_form_kernel, m_sequence, modification_ledger, n_sequence,
                          odd_rank_bound, pn_rank_bound, prime_chain, rank_report, variant_divergence)


def test_prime_chain():
    assert prime_chain(3) == [2, 3]
    assert prime_chain(7) == [2, 3, 7]
    assert prime_chain(23) == [2, 5, 11, 23]
    with pytest.raises(ChainBreak) as err:
        prime_chain(13)
    assert err.value.prime == 13
    with pytest.raises(InputError):
        prime_chain(9)


def test_m_sequence():
    assert m_sequence(3).value == 2
    assert m_sequence(3, 'statement').value == 2
    assert m_sequence(5).value == 16
    trace = m_sequence(7)
    assert trace.value == 6 * 12 ** 2 == 864
    assert {'prime': 7, 'quantity': 'value', 'computed': 864, 'hand_computed': 72} in trace.divergences
    assert trace.value_at(3) == 2


def test_variants_diverge():
    assert m_sequence(7, 'statement').value == 6 * 2 ** 2
    assert variant_divergence(7) == 7
    assert variant_divergence(3) is None
    with pytest.raises(InputError):
        m_sequence(7, 'guess')


def test_n_sequence():
    assert n_sequence(3).value == 5
    assert n_sequence(5).value == 17
    assert n_sequence(7).value == 41
    assert all(row['value'] % 8 == 1 for row in n_sequence(23).values if row['prime'] >= 5)


def test_line_bundle_ledger():
    ledger = LineBundleLedger.uniform(range(0, -3, -1), 2)
    assert ledger.rank == 6 and ledger.degree == -6
    replaced = ledger.replace(0, -1, 2)
    assert replaced.rank == 6 and replaced.degree == -8
    assert replaced.twist(1).multiplicity(0) == 4
    assert LineBundleLedger({0: 2, -1: 2}).render() == 'O^2 + L(-1)^2'
    with pytest.raises(InputError):
        ledger.replace(0, -1, 3)


@pytest.mark.parametrize('d', range(2, 9))
@pytest.mark.parametrize('r', range(1, 5))
def test_modification_ledger(d, r):
    ledger = modification_ledger(d, r)
    assert len(ledger.steps) == d - 1
    assert ledger.start.rank == d * d * r
    for step in ledger.steps:
        assert step.after.rank == step.before.rank
        assert step.after.degree == step.before.degree - (step.index + 1) * d * r
        assert step.after == closed_form_kernel(d, r, step.index)
    assert ledger.pushforward.summands == {0: d * d * r}


def test_ledger_frame():
    frame = modification_ledger(3, 2).to_frame()
    assert list(frame['rank']) == [18] * len(frame)
    assert frame['ledger'].iloc[-1] == 'O^18'


def test_ledger_preconditions():
    with pytest.raises(InputError):
        modification_ledger(2, 0)
    with pytest.raises(InputError):
        modification_ledger(1, 1)


def test_rank_bounds():
    assert pn_rank_bound(2, 5, 3) == 15
    assert pn_rank_bound(3, 2, 2) == 8
    with pytest.raises(InputError):
        pn_rank_bound(1, 2, 1)
    assert odd_rank_bound(3, 1) == 6
    assert odd_rank_bound(7, 1) == 7 * 864


def test_rank_report():
    odd = rank_report(3, 1)
    assert odd.parity == 'odd' and odd.p == 3 and odd.rank_bound == 6
    assert rank_report(2, 5).rank_bound == 2
    assert rank_report(4, 1).parity == 'even' and rank_report(4, 1).rank_bound == 4
    broken = rank_report(13, 1)
    assert broken.rank_bound is None and broken.chain_break
    with pytest.raises(InputError):
        rank_report(1, 1)


def test_rank_report_with_branch():
    branch = parse_poly('x^4 - y^4 - z^4', VarSpec.of('x y z'))
    report = rank_report(2, 2, branch)
    assert report.veronese_s == 3 and report.veronese_size == 8
