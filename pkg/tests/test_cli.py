import json

import pytest

from ulrich.certificates import CertificateFile
from ulrich.cli import COMMANDS, get_args, main, seed


def run(*argv):
    return main(get_args(list(argv)))


def test_factorize_conic_cover(capsys):
    assert run('factorize', '--poly', 't^2 - y^2 - x*z', '--d', '2', '--json') == 0
    cert = json.loads(capsys.readouterr().out)
    assert cert['result']['size'] == 2 and cert['result']['length'] == 2
    assert all(check['passed'] for check in cert['checks'])


def test_factorize_cyclic_cubic(capsys):
    assert run('factorize', '--poly', 't^3 - x*y*z', '--d', '3', '--json') == 0
    assert json.loads(capsys.readouterr().out)['result']['size'] == 3


def test_factorize_sum_of_products(capsys):
    assert run('factorize', '--poly', 'a*b + c*d + e*f', '--d', '2', '--json') == 0
    assert json.loads(capsys.readouterr().out)['result']['size'] == 4


def test_factorize_not_expressible(capsys):
    assert run('factorize', '--poly', 'x + y', '--d', '2') == 2
    assert 'error' in capsys.readouterr().err


def test_bad_polynomial_exits_1(capsys):
    assert run('factorize', '--poly', 't^2 - (x', '--d', '2') == 1


def test_verify_saved_instance(tmp_path, capsys):
    path = tmp_path / 'legendre.json'
    assert run('instances', '--name', 'legendre2', '-o', str(path)) == 0
    assert run('verify', str(path)) == 0
    assert 'passed' in capsys.readouterr().out


def test_verify_tampered_entry(tmp_path, capsys):
    path = tmp_path / 'conic.json'
    assert run('instances', '--name', 'conic', '-o', str(path)) == 0
    data = json.loads(path.read_text())
    entries = data['result']['factors'][0]['entries']
    entries[0][0], entries[1][1] = entries[1][1], entries[0][0]
    path.write_text(json.dumps(data))
    capsys.readouterr()
    assert run('verify', str(path)) == 2
    assert 'entry (0, 0)' in capsys.readouterr().out


def test_verify_truncated_file(tmp_path):
    path = tmp_path / 'conic.json'
    assert run('instances', '--name', 'conic', '-o', str(path)) == 0
    text = path.read_text()
    path.write_text(text[:len(text) // 2])
    assert run('verify', str(path)) == 1


def test_pipeline_conic(capsys):
    assert run('pipeline', '--n', '2', '--k', '1', '--d', '2', '--branch', 'y^2 + x*z', '--json') == 0
    cert = json.loads(capsys.readouterr().out)
    names = [check['name'] for check in cert['checks']]
    assert 'factor 0: D2' in names and 'factor 1: h0 = m' in names
    assert cert['result']['ranks']['rank_bound'] == 2


def test_pipeline_non_homogeneous_branch():
    assert run('pipeline', '--n', '2', '--k', '1', '--d', '2', '--branch', 'x^2 + y') == 1


def test_certify_instance_writes_csv(tmp_path):
    csv = tmp_path / 'table.csv'
    assert run('certify', '--instance', 'conic', '--csv', str(csv)) == 0
    assert csv.exists()


def test_splitting_and_ledger(tmp_path, capsys):
    assert run('splitting', '--f0', 'x^3', '--f1', 'y^3', '--m', '2', '--json') == 0
    assert json.loads(capsys.readouterr().out)['result']['parts'] == [0, 0, 0]
    csv = tmp_path / 'ledger.csv'
    assert run('ledger', '--d', '3', '--r', '2', '--csv', str(csv)) == 0
    assert csv.read_text().count('\n') == 5


def test_ranks(capsys):
    assert run('ranks', '--d', '3', '--k', '1', '--p', '7', '--json') == 0
    result = json.loads(capsys.readouterr().out)['result']
    assert result['rank_bound'] == 6
    assert result['m']['proof']['values'][-1]['value'] == 864
    assert result['N']['values'][-1]['value'] == 41
    assert run('ranks', '--d', '13', '--k', '1') == 2


def test_decompose_is_seeded(capsys):
    argv = ('decompose', '--poly', 'y^2 + x*z', '--d1', '1', '--d2', '1', '--seed', '4', '--json')
    run(*argv)
    first = json.loads(capsys.readouterr().out)
    run(*argv)
    second = json.loads(capsys.readouterr().out)
    assert first['result'] == second['result']
    assert first['seed'] == 4


def test_parity_chain_break_exit_code():
    branch = 'x^13 + y^13 + z^13'
    assert run('parity', '--d', '13', '--k', '1', '--branch', branch) == 2


def test_seed_falls_back_to_environment(monkeypatch):
    monkeypatch.setenv('ULRICH_SEED', '5')
    args = get_args(['ledger', '--d', '2', '--r', '1'])
    assert seed(args) == 5
    args = get_args(['ledger', '--d', '2', '--r', '1', '--seed', '9'])
    assert seed(args) == 9


def test_save_path_and_certificate_file(tmp_path):
    assert run('ledger', '--d', '2', '--r', '1', '--save', '--save_path', str(tmp_path), '--seed', '1') == 0
    saved = list(tmp_path.iterdir())
    assert [p.name for p in saved] == ['ledger-d_2-r_1-seed_1.json']
    cert = CertificateFile.read(str(saved[0]))
    assert cert.command == 'ledger' and cert.passed


def test_every_command_is_registered():
    assert set(COMMANDS) == {'factorize', 'verify', 'pipeline', 'splitting', 'decompose', 'parity', 'ranks',
                             'ledger', 'certify', 'instances'}


def test_identifier_containing_t_is_not_the_cover_variable(capsys):
    assert run('factorize', '--poly', 'theta*x - y*z', '--d', '2', '--json') == 0
    result = json.loads(capsys.readouterr().out)['result']
    assert 't' not in result['target']['vars']
    assert result['size'] == 2


def test_verify_zero_denominator_exits_1(tmp_path):
    path = tmp_path / 'conic.json'
    assert run('instances', '--name', 'conic', '-o', str(path)) == 0
    data = json.loads(path.read_text())
    data['result']['target']['terms'][0]['coeff'] = [[1, 0]]
    path.write_text(json.dumps(data))
    assert run('verify', str(path)) == 1


def test_parity_on_planted_branch(capsys):
    assert run('parity', '--planted', '--d', '2', '--k', '2', '--seed', '1', '--json') == 0
    cert = json.loads(capsys.readouterr().out)
    assert cert['result']['rank'] == 2 and cert['inputs']['planted']


def test_parity_needs_a_branch():
    assert run('parity', '--d', '2', '--k', '2') == 1


def test_decompose_random_quartic(capsys):
    argv = ('decompose', '--random', '4', '--d1', '1', '--d2', '2', '--seed', '0', '--json')
    assert run(*argv) in (0, 2)
    first = json.loads(capsys.readouterr().out)
    checks = {check['name']: check['passed'] for check in first['checks']}
    assert checks['F = F1*G1 + F2*G2']
    run(*argv)
    assert json.loads(capsys.readouterr().out)['result'] == first['result']
