import os, sys, argparse, logging
from collections import namedtuple
from pprint import pprint

import psutil

from .certificates import CertificateFile, is_certificate, read_json
from .cohomology import (certify_ulrich, check_pushforward_trivial, euler_characteristic_holds,
                         is_injective)
from .errors import DecompositionBudgetExhausted, InputError, SchemaError, UlrichError
from .matfac import (METHODS, MatrixFactorization, MatrixRoot, all_rotations_verify, herzog_sum_mf,
                     load_json, mf_to_coker_presentation, products_of_form, root_of_sum,
                     root_to_constant_mf, split_t_power, verify_mf, verify_root)
from .plane import (DECOMPOSITION_METHODS, DEFAULT_BUDGET, DEFAULT_COEFF_RANGE, CoverDescriptor,
                    carlini_decompose, instance_evidence, module_generator_degrees, planted_cover,
                    random_form_through, random_points, run_parity_pipeline, splitting_type_p1, spawn_rngs)
from .polyring import MultiPoly, VarSpec, infer_varspec, parse_poly
from .ranks import m_sequence, modification_ledger, n_sequence, rank_report
from .veronese import build_cover_mf

LOGGER = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s %(name)s %(levelname)s: %(message)s'
SEED_ENV = 'ULRICH_SEED'
default_save_path = 'certificates'

# result of a command: the certificate, an optional pandas frame for --csv, an exit code override
Outcome = namedtuple('Outcome', ['certificate', 'frame', 'exit_code'], defaults=(None, None))


def main(hparams):
    seed(hparams)
    add_path_names(hparams)
    set_logger(hparams)
    try:
        outcome = COMMANDS[hparams.command](hparams)
    except UlrichError as err:
        LOGGER.error('%s failed: %s', hparams.command, err)
        print(f'error: {err}', file=sys.stderr)
        return err.exit_code

    cert = outcome.certificate
    print(cert.dumps() if hparams.json else cert.render_text())
    if hparams.save or hparams.out:
        cert.write(hparams.out_path)
    if hparams.csv and outcome.frame is not None:
        outcome.frame.to_csv(hparams.csv)
        LOGGER.info('wrote %s', hparams.csv)
    if hparams.verbose:
        LOGGER.info('resident memory %.1f MiB', psutil.Process().memory_info().rss / 2 ** 20)

    if outcome.exit_code is not None:
        return outcome.exit_code
    return 0 if cert.passed else 2


def seed(hparams):
    if hparams.seed is None:
        value = os.environ.get(SEED_ENV, '0')
        try:
            hparams.seed = int(value)
        except ValueError:
            raise SystemExit(f'{SEED_ENV}={value!r} is not an integer')
    return hparams.seed


def set_logger(hparams):
    level = {0: logging.WARNING, 1: logging.INFO}.get(hparams.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format=LOG_FORMAT, force=True)
    return logging.getLogger('ulrich')


def run():
    sys.exit(main(get_args()))


#################

def _varspec(text, poly_text=None, first=None):
    if text:
        return VarSpec.of(text)
    return infer_varspec(poly_text, first=first)


def _inputs(hparams, *keys):
    return {key: getattr(hparams, key) for key in keys}


def _factorization_checks(cert, obj):
    if isinstance(obj, MatrixRoot):
        report = verify_root(obj)
        cert.add('root identity', report, report.describe())
        return cert
    report = verify_mf(obj)
    cert.add('product identity', report, report.describe())
    if report:
        cert.add('cyclic rotations', all_rotations_verify(obj))
    return cert


def cmd_factorize(hparams):
    t = hparams.t
    identifiers = infer_varspec(hparams.poly).names
    varspec = _varspec(hparams.vars, hparams.poly, first=t if t in identifiers else None)
    D = hparams.D or 1
    f = parse_poly(hparams.poly, varspec, D)
    d = hparams.d
    head = MultiPoly.variable(t, varspec, D) ** d if t in varspec.names else None
    if head is not None and t not in (head - f).support_variables() and (head - f):
        rest = VarSpec(tuple(n for n in varspec.names if n != t))
        g = (head - f).embed(rest)
        root = root_of_sum(products_of_form(g, d), d, hparams.method)
        mf = split_t_power(root, t)
    elif hparams.method == 'auto':
        mf = herzog_sum_mf(products_of_form(f, d), d)
    else:
        mf = root_to_constant_mf(root_of_sum(products_of_form(f, d), d, hparams.method))
    cert = CertificateFile('factorize', _inputs(hparams, 'poly', 'd', 'method', 'vars', 'D', 't'),
                           hparams.seed, mf.to_json())
    return Outcome(_factorization_checks(cert, mf))


def cmd_verify(hparams):
    data = read_json(hparams.file)
    if is_certificate(data):
        result = data['result']
        data = result.get('factorization', result) if isinstance(result, dict) else result
    obj = load_json(data)
    cert = CertificateFile('verify', _inputs(hparams, 'file'), hparams.seed,
                           {'kind': 'root' if isinstance(obj, MatrixRoot) else 'factorization',
                            'size': obj.size})
    return Outcome(_factorization_checks(cert, obj))


def _plane_vars(n, text):
    if text:
        return VarSpec.of(text)
    return VarSpec(('x', 'y', 'z')) if n == 2 else VarSpec(tuple(f'x{i}' for i in range(n + 1)))


def cmd_pipeline(hparams):
    varspec = _plane_vars(hparams.n, hparams.vars)
    g = parse_poly(hparams.branch, varspec)
    report = build_cover_mf(hparams.n, hparams.k, hparams.d, g, hparams.method, hparams.t)
    result = report.to_json()
    result['ranks'] = rank_report(hparams.d, hparams.k, g, hparams.n).to_json()
    cert = CertificateFile('pipeline', _inputs(hparams, 'n', 'k', 'd', 'branch', 'vars', 'method', 't'),
                           hparams.seed, result)
    cert.add('substitution identity', report.certificate.verify())
    _factorization_checks(cert, report.mf)
    for idx, factor in enumerate(report.mf.factors):
        ulrich = certify_ulrich(mf_to_coker_presentation(factor))
        cert.add(f'factor {idx}: D2', ulrich.d2)
        cert.add(f'factor {idx}: D1 on window {list(ulrich.window)}', ulrich.d1)
        cert.add(f'factor {idx}: h0 = m', ulrich.h0 == ulrich.m, f'h0 = {ulrich.h0}, m = {ulrich.m}')
    return Outcome(cert)


def cmd_splitting(hparams):
    varspec = VarSpec.of(hparams.vars)
    f0, f1 = parse_poly(hparams.f0, varspec), parse_poly(hparams.f1, varspec)
    split = splitting_type_p1(f0, f1, hparams.m, tuple(hparams.window) if hparams.window else None)
    generators = module_generator_degrees(f0, f1, hparams.m)
    cert = CertificateFile('splitting', _inputs(hparams, 'f0', 'f1', 'm', 'vars', 'window'), hparams.seed,
                           split.to_json())
    cert.add('degree sum m + 1 - d', sum(split.parts) == hparams.m + 1 - split.d)
    cert.add('module generators agree', generators == split.parts, f'generators give {list(generators)}')
    return Outcome(cert)


def cmd_decompose(hparams):
    varspec = _plane_vars(2, hparams.vars)
    decomposition_rng, check_rng, sample_rng = spawn_rngs(hparams.seed, 3)
    if hparams.random is not None:
        points = random_points(hparams.points, sample_rng)
        F = random_form_through(varspec, hparams.random, points, sample_rng, tuple(hparams.coeff_range))
        LOGGER.info('sampled %s through %s', F, points)
    elif hparams.poly:
        F = parse_poly(hparams.poly, varspec)
    else:
        raise InputError('decompose needs --poly or --random')
    keys = ('poly', 'random', 'points', 'd1', 'd2', 'budget', 'coeff_range', 'decomposition_method', 'vars')
    try:
        dec = carlini_decompose(F, hparams.d1, hparams.d2, decomposition_rng, hparams.budget,
                                tuple(hparams.coeff_range), hparams.decomposition_method)
    except DecompositionBudgetExhausted as err:
        cert = CertificateFile('decompose', _inputs(hparams, *keys), hparams.seed,
                               {'F': F.render(), 'attempts': err.attempts, 'failure': str(err)})
        cert.add('decomposition found', False, str(err))
        return Outcome(cert, exit_code=err.exit_code)
    cert = CertificateFile('decompose', _inputs(hparams, *keys), hparams.seed, dec.to_json())
    cert.add('F = F1*G1 + F2*G2', dec.verify())
    smooth, transversal = instance_evidence(dec, check_rng)
    cert.add('F1 smooth', smooth, smooth.reason)
    for label, evidence in transversal.items():
        cert.add(f'F1 transversal to {label}', evidence, evidence.reason)
    return Outcome(cert)


def cmd_parity(hparams):
    decomposition = None
    if hparams.planted:
        cov, decomposition = planted_cover(hparams.d, hparams.k, seed=hparams.seed, budget=hparams.budget,
                                           coeff_range=tuple(hparams.coeff_range))
    elif hparams.branch:
        cov = CoverDescriptor(2, hparams.d, hparams.k, parse_poly(hparams.branch, _plane_vars(2, hparams.vars)))
    else:
        raise InputError('parity needs --branch or --planted')
    report = run_parity_pipeline(cov, seed=hparams.seed, budget=hparams.budget,
                                 coeff_range=tuple(hparams.coeff_range), decomposition=decomposition)
    cert = CertificateFile('parity', _inputs(hparams, 'd', 'k', 'branch', 'planted', 'vars', 'budget',
                                             'coeff_range'),
                           hparams.seed, report.to_json())
    cert.add(f'{report.pipeline} parity certificate', report.passed, report.failure or f'rank {report.rank}')
    exit_code = None
    if not report.passed:
        chain_broken = report.pipeline == 'odd' and report.m_trace is None
        searched = decomposition is None and report.decomposition is None
        exit_code = DecompositionBudgetExhausted.exit_code if searched and not chain_broken else 2
    return Outcome(cert, exit_code=exit_code)


def cmd_ranks(hparams):
    branch = parse_poly(hparams.branch, _plane_vars(2, hparams.vars)) if hparams.branch else None
    report = rank_report(hparams.d, hparams.k, branch)
    result = report.to_json()
    frame = None
    if hparams.p is not None:
        traces = {variant: m_sequence(hparams.p, variant) for variant in ('proof', 'statement')}
        result['m'] = {variant: trace.to_json() for variant, trace in traces.items()}
        result['N'] = n_sequence(hparams.p).to_json()
        frame = traces['proof'].to_frame()
    cert = CertificateFile('ranks', _inputs(hparams, 'd', 'k', 'p', 'branch', 'vars'), hparams.seed, result)
    cert.add('rank bound available', report.rank_bound is not None, report.chain_break or f'rank {report.rank_bound}')
    return Outcome(cert, frame)


def cmd_ledger(hparams):
    ledger = modification_ledger(hparams.d, hparams.r)
    cert = CertificateFile('ledger', _inputs(hparams, 'd', 'r'), hparams.seed, ledger.to_json())
    cert.add('pushforward trivial', ledger.pushforward.summands == {0: hparams.d ** 2 * hparams.r},
             ledger.pushforward.render())
    return Outcome(cert, ledger.to_frame())


def cmd_certify(hparams):
    if hparams.instance:
        from instances import INSTANCES

        mf = INSTANCES[hparams.instance]()
    elif hparams.file:
        data = read_json(hparams.file)
        if is_certificate(data):
            data = data['result'].get('factorization', data['result'])
        mf = load_json(data)
    else:
        raise InputError('certify needs a factorization file or --instance')
    if not isinstance(mf, MatrixFactorization):
        raise SchemaError('certify expects a factorization, not a root')
    if not 0 <= hparams.factor < mf.length:
        raise InputError(f'factor index {hparams.factor} outside 0..{mf.length - 1}')
    pres = mf_to_coker_presentation(mf.factors[hparams.factor], hparams.dim_x)
    ulrich = certify_ulrich(pres, window=tuple(hparams.window) if hparams.window else None)
    trivial = check_pushforward_trivial(ulrich)
    cert = CertificateFile('certify', _inputs(hparams, 'file', 'instance', 'factor', 'dim_x', 'window'),
                           hparams.seed, ulrich.to_json())
    cert.add('D2', ulrich.d2)
    cert.add(f'D1 on window {list(ulrich.window)}', ulrich.d1)
    cert.add('pushforward trivial', trivial['trivial'], f'rank {trivial["rank"]}, h0 = {ulrich.h0}')
    if is_injective(pres, spawn_rngs(hparams.seed, 1)[0]):
        cert.add('euler characteristic', all(euler_characteristic_holds(ulrich.table, t)
                                             for t in ulrich.table.twists()))
    return Outcome(cert, ulrich.table.to_frame())


def cmd_instances(hparams):
    from instances import INSTANCES

    if hparams.name is None:
        cert = CertificateFile('instances', {}, hparams.seed, {'instances': sorted(INSTANCES)})
        return Outcome(cert)
    mf = INSTANCES[hparams.name]()
    cert = CertificateFile('instances', _inputs(hparams, 'name'), hparams.seed, mf.to_json())
    return Outcome(_factorization_checks(cert, mf))


COMMANDS = {
    'factorize': cmd_factorize,
    'verify': cmd_verify,
    'pipeline': cmd_pipeline,
    'splitting': cmd_splitting,
    'decompose': cmd_decompose,
    'parity': cmd_parity,
    'ranks': cmd_ranks,
    'ledger': cmd_ledger,
    'certify': cmd_certify,
    'instances': cmd_instances,
}

#################

def get_args(*args):
    parent_parser = argparse.ArgumentParser(add_help=False)
    parent_parser.add_argument('--seed', type=int, default=None,
                               help=f'seed for the randomized steps; falls back to ${SEED_ENV}, then 0')
    parent_parser.add_argument('--json', dest='json', action='store_true',
                               help='print the certificate as JSON instead of text')
    parent_parser.add_argument('-v', '--verbose', dest='verbose', action='count', default=0,
                               help='-v logs progress, -vv logs every construction step')
    parent_parser.add_argument('--save_path', metavar='DIR', type=str, default=default_save_path,
                               help='directory for saved certificates')
    parent_parser.add_argument('--save', dest='save', action='store_true',
                               help='write the certificate to save_path under a name derived from the arguments')
    parent_parser.add_argument('-o', '--out', dest='out', type=str, default=None,
                               help='write the certificate to this file')
    parent_parser.add_argument('--csv', dest='csv', type=str, default=None,
                               help='write the table of ranks, ledger or certify to this csv file')

    parser = argparse.ArgumentParser(prog='ulrich', description='matrix factorizations and Ulrich certificates')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('factorize', parents=[parent_parser], help='matrix factorization of a form')
    p.add_argument('--poly', required=True, help='e.g. "t^2 - y^2 - x*z"')
    p.add_argument('--d', dest='d', type=int, required=True, help='factorization length')
    p.add_argument('--method', default='auto', choices=METHODS.keys(), help='root construction')
    p.add_argument('--vars', default=None, help='variable names in order; inferred when omitted')
    p.add_argument('--D', dest='D', type=int, default=None, help='cyclotomic index for zeta in --poly')
    p.add_argument('--t', dest='t', default='t', help='name of the covering variable')

    p = sub.add_parser('verify', parents=[parent_parser], help='re-verify a factorization or root file')
    p.add_argument('file', help='factorization, root or certificate JSON')

    p = sub.add_parser('pipeline', parents=[parent_parser], help='Veronese cover pipeline with certification')
    p.add_argument('--n', type=int, default=2, help='dimension of the base P^n')
    p.add_argument('--k', type=int, required=True, help='degree of L = O(k)')
    p.add_argument('--d', type=int, required=True, help='covering degree')
    p.add_argument('--branch', required=True, help='branch form of degree d*k')
    p.add_argument('--vars', default=None, help='base variables (default x y z on P^2)')
    p.add_argument('--method', default='auto', choices=METHODS.keys(), help='root construction')
    p.add_argument('--t', dest='t', default='t', help='name of the covering variable')

    p = sub.add_parser('splitting', parents=[parent_parser], help='splitting type of f_* O(m) on P^1')
    p.add_argument('--f0', required=True)
    p.add_argument('--f1', required=True)
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--vars', default='x y')
    p.add_argument('--window', type=int, nargs=2, default=None, help='twist window for the staircase')

    for name, helptext in (('decompose', 'decompose F = F1*G1 + F2*G2'),
                           ('parity', 'even/odd parity pipeline on P^2')):
        p = sub.add_parser(name, parents=[parent_parser], help=helptext)
        p.add_argument('--vars', default=None, help='plane variables (default x y z)')
        p.add_argument('--budget', type=int, default=DEFAULT_BUDGET, help='number of attempts')
        p.add_argument('--coeff_range', '--coeff-range', dest='coeff_range', type=int, nargs=2,
                       default=list(DEFAULT_COEFF_RANGE), help='range of sampled integer coefficients')
    decompose, parity = sub.choices['decompose'], sub.choices['parity']
    decompose.add_argument('--poly', default=None)
    decompose.add_argument('--random', type=int, default=None, metavar='DEGREE',
                           help='decompose a seeded random form of this degree through --points integer points')
    decompose.add_argument('--points', type=int, default=2, help='number of integer points for --random')
    decompose.add_argument('--d1', type=int, required=True)
    decompose.add_argument('--d2', type=int, required=True)
    decompose.add_argument('--method', dest='decomposition_method', default='auto', choices=DECOMPOSITION_METHODS)
    parity.add_argument('--d', type=int, required=True)
    parity.add_argument('--k', type=int, required=True)
    parity.add_argument('--branch', default=None)
    parity.add_argument('--planted', action='store_true',
                        help='sample a branch F = F1*G1 + F2*G2 from seeded random pieces instead of --branch')

    p = sub.add_parser('ranks', parents=[parent_parser], help='rank report and recursions')
    p.add_argument('--d', type=int, required=True)
    p.add_argument('--k', type=int, required=True)
    p.add_argument('--p', type=int, default=None, help='also trace the m and N recursions at this prime')
    p.add_argument('--branch', default=None, help='branch form, for the Veronese size estimate')
    p.add_argument('--vars', default=None)

    p = sub.add_parser('ledger', parents=[parent_parser], help='modification ledger of pushforwards')
    p.add_argument('--d', type=int, required=True)
    p.add_argument('--r', type=int, required=True)

    from instances import INSTANCES

    p = sub.add_parser('certify', parents=[parent_parser], help='Ulrich certificate of a cokernel')
    p.add_argument('file', nargs='?', default=None, help='factorization or certificate JSON')
    p.add_argument('--instance', default=None, choices=INSTANCES.keys())
    p.add_argument('--factor', type=int, default=0, help='which factor presents the cokernel')
    p.add_argument('--dim_x', type=int, default=None, help='dimension of the support (default: hypersurface)')
    p.add_argument('--window', type=int, nargs=2, default=None, help='twist window for D1')

    p = sub.add_parser('instances', parents=[parent_parser], help='list or export regression instances')
    p.add_argument('--name', default=None, choices=INSTANCES.keys())

    args = parser.parse_args(*args)
    args = add_path_names(args)
    if args.verbose: pprint(vars(args))
    return args


def add_path_names(hparams):
    hparams.file_name = get_filename(hparams)
    hparams.out_path = hparams.out or os.path.join(hparams.save_path, hparams.file_name + '.json')
    return hparams


def get_filename(hparams):
    keys = [key for key in ('d', 'k', 'n', 'r', 'p', 'm', 'd1', 'd2', 'method', 'name', 'instance', 'factor')
            if getattr(hparams, key, None) is not None]
    filename = hparams.command + ''.join(f'-{key}_{getattr(hparams, key)}' for key in keys)
    if hparams.seed is not None:
        filename += f'-seed_{hparams.seed}'
    return filename
