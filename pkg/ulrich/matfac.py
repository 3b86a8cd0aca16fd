"""
Matrix factorizations alpha_1 ... alpha_d = f * Id and matrix roots M^d = g * Id.

Every constructor returns verified objects; verification is the exact symbolic
identity of the product against the target times the identity.
"""
import logging
import math
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations

from .errors import (ArityError, DegreeError, InputError, NonLinearEntry, NotExpressible, SchemaError,
                     SizeMismatch, UnverifiedInput, VarSpecMismatch, VerificationError)
from .polyring import FieldElement, MultiPoly, polydot

LOGGER = logging.getLogger(__name__)


class PolyMatrix:
    """rectangular grid of MultiPoly sharing one VarSpec and one coefficient field"""

    __slots__ = ('entries', 'varspec', 'D', 'degree_profile')
    __hash__ = None

    def __init__(self, entries, varspec=None, degree_profile=None):
        rows = [list(r) for r in entries]
        if not rows or not rows[0]:
            raise SizeMismatch('a polynomial matrix needs at least one entry')
        if any(len(r) != len(rows[0]) for r in rows):
            raise SizeMismatch('ragged matrix rows')
        varspec = varspec or next(p.varspec for r in rows for p in r if isinstance(p, MultiPoly))
        D = math.lcm(*(p.D for r in rows for p in r if isinstance(p, MultiPoly)))
        grid = []
        for i, r in enumerate(rows):
            out = []
            for j, p in enumerate(r):
                if not isinstance(p, MultiPoly):
                    p = MultiPoly.constant(p, varspec, D)
                if p.varspec != varspec:
                    raise VarSpecMismatch(f'entry ({i}, {j}) is over {p.varspec.names}, expected {varspec.names}')
                out.append(p.lift(D))
            grid.append(tuple(out))
        self.entries = tuple(grid)
        self.varspec = varspec
        self.D = D
        self.degree_profile = degree_profile
        if degree_profile is not None:
            for i, r in enumerate(self.entries):
                for j, p in enumerate(r):
                    if p and (not p.is_homogeneous() or p.weighted_degree() != degree_profile[i][j]):
                        raise DegreeError(f'entry ({i}, {j}) = {p} does not have degree {degree_profile[i][j]}')

    @classmethod
    def _raw(cls, grid, varspec, D):
        obj = object.__new__(cls)
        obj.entries = tuple(tuple(r) for r in grid)
        obj.varspec = varspec
        obj.D = D
        obj.degree_profile = None
        return obj

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0])

    @property
    def size(self):
        if self.rows != self.cols:
            raise SizeMismatch(f'{self.rows}x{self.cols} matrix is not square')
        return self.rows

    def __getitem__(self, key):
        i, j = key
        return self.entries[i][j]

    @classmethod
    def zeros(cls, rows, cols, varspec, D=1):
        zero = MultiPoly.zero(varspec, D)
        return cls._raw([[zero] * cols for _ in range(rows)], varspec, D)

    @classmethod
    def scalar(cls, p, m):
        """p * Id_m"""
        zero = MultiPoly.zero(p.varspec, p.D)
        return cls._raw([[p if i == j else zero for j in range(m)] for i in range(m)], p.varspec, p.D)

    @classmethod
    def identity(cls, m, varspec, D=1):
        return cls.scalar(MultiPoly.constant(1, varspec, D), m)

    @classmethod
    def diagonal(cls, values, varspec, D=1):
        m = len(values)
        zero = MultiPoly.zero(varspec, D)
        grid = [[zero] * m for _ in range(m)]
        for i, v in enumerate(values):
            grid[i][i] = v if isinstance(v, MultiPoly) else MultiPoly.constant(v, varspec, D)
        return cls(grid, varspec)

    @classmethod
    def block(cls, blocks):
        """assemble a block matrix from a grid of PolyMatrix"""
        varspec = blocks[0][0].varspec
        D = math.lcm(*(b.D for row in blocks for b in row))
        grid = []
        for brow in blocks:
            height = brow[0].rows
            if any(b.rows != height for b in brow):
                raise SizeMismatch('block heights differ within a block row')
            for i in range(height):
                grid.append([p.lift(D) for b in brow for p in b.entries[i]])
        return cls(grid, varspec)

    def lift(self, D):
        if D == self.D:
            return self
        return PolyMatrix._raw([[p.lift(D) for p in r] for r in self.entries], self.varspec, D)

    def embed(self, varspec):
        return PolyMatrix._raw([[p.embed(varspec) for p in r] for r in self.entries], varspec, self.D)

    def map(self, fn):
        return PolyMatrix([[fn(p) for p in r] for r in self.entries], self.varspec)

    def _match(self, other):
        if other.varspec != self.varspec:
            raise VarSpecMismatch(f'{self.varspec.names} vs {other.varspec.names}')
        D = math.lcm(self.D, other.D)
        return self.lift(D), other.lift(D), D

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise SizeMismatch(f'cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}')
        a, b, D = self._match(other)
        bcols = list(zip(*b.entries))
        grid = [[polydot(zip(row, col), a.varspec, D) for col in bcols] for row in a.entries]
        return PolyMatrix._raw(grid, a.varspec, D)

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise SizeMismatch('matrix sum of different shapes')
        a, b, D = self._match(other)
        grid = [[p + q for p, q in zip(r, s)] for r, s in zip(a.entries, b.entries)]
        return PolyMatrix._raw(grid, a.varspec, D)

    def __neg__(self):
        return PolyMatrix._raw([[-p for p in r] for r in self.entries], self.varspec, self.D)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if isinstance(c, MultiPoly):
            grid = [[c * p for p in r] for r in self.entries]
            return PolyMatrix(grid, self.varspec)
        grid = [[p.scale(c) for p in r] for r in self.entries]
        D = grid[0][0].D
        return PolyMatrix._raw(grid, self.varspec, D)

    def transpose(self):
        return PolyMatrix._raw(list(zip(*self.entries)), self.varspec, self.D)

    def kron(self, other):
        """Kronecker product self (x) other"""
        a, b, D = self._match(other)
        grid = []
        for r in a.entries:
            for s in b.entries:
                grid.append([p * q for p in r for q in s])
        return PolyMatrix._raw(grid, a.varspec, D)

    def power(self, k):
        if k < 1:
            raise ArityError(f'matrix power needs k >= 1, got {k}')
        return reduce(lambda x, y: x @ y, [self] * k)

    def first_deviation(self, f):
        """first (i, j, expected, actual) where self differs from f * Id, or None"""
        zero = MultiPoly.zero(self.varspec, self.D)
        for i, r in enumerate(self.entries):
            for j, p in enumerate(r):
                expected = f if i == j else zero
                if p != expected:
                    return (i, j, expected.render(), p.render())
        return None

    def first_entry_not_of_degree(self, degree):
        for i, r in enumerate(self.entries):
            for j, p in enumerate(r):
                if p and (not p.is_homogeneous() or p.weighted_degree() != degree):
                    return (i, j, p.render())
        return None

    def is_linear(self):
        return self.first_entry_not_of_degree(1) is None

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            p == q for r, s in zip(self.entries, other.entries) for p, q in zip(r, s))

    def __repr__(self):
        body = '; '.join(', '.join(p.render() for p in r) for r in self.entries)
        return f'PolyMatrix[{body}]'

    def to_json(self):
        return {'rows': self.rows, 'cols': self.cols,
                'entries': [[p.to_json() for p in r] for r in self.entries]}

    @classmethod
    def from_json(cls, data):
        try:
            grid = [[MultiPoly.from_json(p) for p in r] for r in data['entries']]
            if len(grid) != data['rows'] or any(len(r) != data['cols'] for r in grid):
                raise SchemaError('matrix shape disagrees with its entries')
        except (KeyError, TypeError) as err:
            raise SchemaError(f'malformed matrix JSON: {err}') from err
        return cls(grid)


#################

@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    entry: tuple = None
    expected: str = None
    actual: str = None
    factor_count: int = 0

    def __bool__(self):
        return self.ok

    def describe(self):
        if self.ok:
            return 'product identity holds'
        return f'entry {self.entry}: expected {self.expected}, got {self.actual}'

    def to_json(self):
        return {'ok': self.ok, 'entry': list(self.entry) if self.entry else None,
                'expected': self.expected, 'actual': self.actual}


@dataclass(frozen=True)
class MatrixFactorization:
    factors: tuple
    target: MultiPoly
    verified: bool = False
    construction: str = ''
    notes: dict = field(default_factory=dict, compare=False)

    @property
    def size(self):
        return self.factors[0].size

    @property
    def length(self):
        return len(self.factors)

    def with_verification(self):
        report = verify_mf(self)
        if not report:
            raise VerificationError(f'{self.construction or "factorization"} fails: {report.describe()}', report)
        return MatrixFactorization(self.factors, self.target, True, self.construction, self.notes)

    def to_json(self):
        return {'kind': 'factorization', 'size': self.size, 'length': self.length,
                'target': self.target.to_json(),
                'factors': [a.to_json() for a in self.factors],
                'verified': self.verified, 'construction': self.construction,
                'notes': dict(self.notes)}

    @classmethod
    def from_json(cls, data):
        try:
            factors = tuple(PolyMatrix.from_json(a) for a in data['factors'])
            target = MultiPoly.from_json(data['target'])
            if len(factors) != data['length'] or factors[0].rows != data['size']:
                raise SchemaError('declared size/length disagree with the factors')
        except (KeyError, TypeError, IndexError) as err:
            raise SchemaError(f'malformed factorization JSON: {err}') from err
        except InputError as err:
            raise SchemaError(str(err)) from err
        return cls(factors, target, False, data.get('construction', ''), data.get('notes', {}))


@dataclass(frozen=True)
class MatrixRoot:
    M: PolyMatrix
    exponent: int
    target: MultiPoly
    verified: bool = False
    construction: str = ''

    @property
    def size(self):
        return self.M.size

    def with_verification(self):
        report = verify_root(self)
        if not report:
            raise VerificationError(f'{self.construction or "root"} fails: {report.describe()}', report)
        return MatrixRoot(self.M, self.exponent, self.target, True, self.construction)

    def to_json(self):
        return {'kind': 'root', 'size': self.size, 'exponent': self.exponent,
                'target': self.target.to_json(), 'matrix': self.M.to_json(),
                'verified': self.verified, 'construction': self.construction}

    @classmethod
    def from_json(cls, data):
        try:
            return cls(PolyMatrix.from_json(data['matrix']), int(data['exponent']),
                       MultiPoly.from_json(data['target']), False, data.get('construction', ''))
        except (KeyError, TypeError, ValueError) as err:
            raise SchemaError(f'malformed root JSON: {err}') from err


def load_json(data):
    """MatrixFactorization or MatrixRoot from its JSON form"""
    if not isinstance(data, dict):
        raise SchemaError('expected a JSON object')
    if data.get('kind', 'factorization') == 'root':
        return MatrixRoot.from_json(data)
    return MatrixFactorization.from_json(data)


#################

def verify_mf(mf):
    factors = mf.factors
    if not factors:
        raise SizeMismatch('a factorization needs at least one factor')
    sizes = {(a.rows, a.cols) for a in factors}
    if len(sizes) != 1 or factors[0].rows != factors[0].cols:
        raise SizeMismatch(f'factors must be square of one size, got {sorted(sizes)}')
    for a in factors:
        if a.varspec != mf.target.varspec:
            raise VarSpecMismatch('factors and target use different variables')
    product = reduce(lambda x, y: x @ y, factors)
    deviation = product.first_deviation(mf.target.lift(math.lcm(product.D, mf.target.D)))
    if deviation is None:
        return VerificationReport(True, factor_count=len(factors))
    i, j, expected, actual = deviation
    LOGGER.info('factorization fails at entry (%d, %d)', i, j)
    return VerificationReport(False, (i, j), expected, actual, len(factors))


def verify_root(root):
    if root.M.rows != root.M.cols:
        raise SizeMismatch('a matrix root must be square')
    power = root.M.power(root.exponent)
    deviation = power.first_deviation(root.target.lift(math.lcm(power.D, root.target.D)))
    if deviation is None:
        return VerificationReport(True, factor_count=root.exponent)
    i, j, expected, actual = deviation
    return VerificationReport(False, (i, j), expected, actual, root.exponent)


def _common_degree(forms):
    degrees = set()
    for f in forms:
        if not f or not f.is_homogeneous():
            raise DegreeError(f'{f} is not a nonzero homogeneous form')
        degrees.add(f.weighted_degree())
    if len(degrees) != 1:
        raise DegreeError(f'forms of inconsistent degrees {sorted(degrees)}')
    return degrees.pop()


def mf_from_linear_product(forms):
    """size-1 factorization ((f_1), ..., (f_d)) of the product f_1 ... f_d"""
    if not forms:
        raise ArityError('mf_from_linear_product needs at least one form')
    degree = _common_degree(forms)
    if degree < 1:
        raise DegreeError('factors must have positive degree')
    target = reduce(lambda a, b: a * b, forms)
    factors = tuple(PolyMatrix([[f]]) for f in forms)
    return MatrixFactorization(factors, target, construction=f'product({len(forms)})').with_verification()


def cyclic_root(forms):
    """M with M[j][j-1 mod d] = form_j, so that M^d = (prod forms) * Id"""
    d = len(forms)
    if d < 2:
        raise ArityError(f'a cyclic root needs at least two forms, got {d}')
    _common_degree(forms)
    varspec = forms[0].varspec
    D = math.lcm(*(f.D for f in forms))
    zero = MultiPoly.zero(varspec, D)
    grid = [[zero] * d for _ in range(d)]
    for j, f in enumerate(forms):
        grid[j][(j - 1) % d] = f.lift(D)
    target = reduce(lambda a, b: a * b, forms)
    return MatrixRoot(PolyMatrix(grid, varspec), d, target, construction=f'cyclic({d})').with_verification()


def root_to_constant_mf(root):
    """(M, M, ..., M) factoring g"""
    if not root.verified:
        raise UnverifiedInput('root_to_constant_mf needs a verified root')
    factors = (root.M,) * root.exponent
    return MatrixFactorization(factors, root.target, construction=f'constant[{root.construction}]').with_verification()


def split_t_power(root, t='t', weight=1):
    """
    Root-of-unity splitting t^d - g = prod_j (t - zeta^j M).
    Args:
        root: verified MatrixRoot of g with exponent d
        t: name of the covering variable, prepended to the variables when missing
        weight: grading weight of t when it has to be added
    Returns:
        MatrixFactorization of t^d - g over Q(zeta_d)
    """
    if not root.verified:
        raise UnverifiedInput('split_t_power needs a verified root')
    if t in root.target.support_variables():
        raise InputError(f'{t} occurs in the root target {root.target}')
    d = root.exponent
    varspec = root.M.varspec.extend(t, weight)
    D = math.lcm(root.M.D, root.target.D, d if d > 2 else 1)
    M = root.M.embed(varspec).lift(D)
    g = root.target.embed(varspec).lift(D)
    zeta = FieldElement.root_of_unity(d, D)
    tI = PolyMatrix.scalar(MultiPoly.variable(t, varspec, D), M.rows)
    factors = tuple(tI - M.scale(zeta ** j) for j in range(d))
    target = MultiPoly.variable(t, varspec, D) ** d - g
    LOGGER.debug('split %s over Q(zeta_%d)', root.construction, D)
    return MatrixFactorization(factors, target, construction=f'split[{root.construction}]').with_verification()


def companion_root(mf):
    """block matrix C with block (i, i+1 mod d) = alpha_{i+1}; C^d = f * Id of size d*m"""
    if not mf.verified:
        raise UnverifiedInput('companion_root needs a verified factorization')
    d, m = mf.length, mf.size
    varspec = mf.target.varspec
    zero = PolyMatrix.zeros(m, m, varspec, mf.factors[0].D)
    blocks = [[zero] * d for _ in range(d)]
    for i, alpha in enumerate(mf.factors):
        blocks[i][(i + 1) % d] = alpha
    C = PolyMatrix.block(blocks)
    return MatrixRoot(C, d, mf.target, construction=f'companion[{mf.construction}]').with_verification()


def _check_reversed(mf, label):
    reversed_mf = MatrixFactorization(tuple(reversed(mf.factors)), mf.target)
    report = verify_mf(reversed_mf)
    if not report:
        raise VerificationError(f'reversed order of {label} fails: {report.describe()}', report)


def clifford_combine_two_factor(mfA, mfB):
    """length-2 factorization of g + h of size 2*m*m' from length-2 factorizations of g and h"""
    for mf, label in ((mfA, 'first'), (mfB, 'second')):
        if mf.length != 2:
            raise ArityError(f'the {label} factorization has length {mf.length}, expected 2')
        if not mf.verified:
            raise UnverifiedInput(f'the {label} factorization is not verified')
        _check_reversed(mf, label)
    A1, A2 = mfA.factors
    B1, B2 = mfB.factors
    IA = PolyMatrix.identity(mfA.size, A1.varspec, A1.D)
    IB = PolyMatrix.identity(mfB.size, B1.varspec, B1.D)
    beta1 = PolyMatrix.block([[A1.kron(IB), IA.kron(B1)],
                              [-IA.kron(B2), A2.kron(IB)]])
    beta2 = PolyMatrix.block([[A2.kron(IB), -IA.kron(B1)],
                              [IA.kron(B2), A1.kron(IB)]])
    construction = f'clifford[{mfA.construction}, {mfB.construction}]'
    return MatrixFactorization((beta1, beta2), mfA.target + mfB.target,
                               construction=construction).with_verification()


def _zeta_matrices(d, varspec, D):
    zeta = FieldElement.root_of_unity(d, D)
    diag = PolyMatrix.diagonal([zeta ** j for j in range(d)], varspec, D)
    one = MultiPoly.constant(1, varspec, D)
    zero = MultiPoly.zero(varspec, D)
    shift = PolyMatrix([[one if i == (j + 1) % d else zero for j in range(d)] for i in range(d)], varspec)
    return zeta, diag, shift


def zeta_tensor_combine(rootA, rootB):
    """
    Root of g + h from roots M of g and N of h with a common exponent d:
    P = M (x) Id (x) D + Id (x) N (x) S, where D S = zeta S D, so that P^d = (g + h) * Id.
    """
    if rootA.exponent != rootB.exponent:
        raise InputError(f'exponent mismatch: {rootA.exponent} vs {rootB.exponent}')
    if not (rootA.verified and rootB.verified):
        raise UnverifiedInput('zeta_tensor_combine needs verified roots')
    d = rootA.exponent
    if d < 2:
        raise ArityError('zeta_tensor_combine needs exponent >= 2')
    varspec = rootA.M.varspec
    D = math.lcm(rootA.M.D, rootB.M.D, d if d > 2 else 1)
    zeta, diag, shift = _zeta_matrices(d, varspec, D)
    IA = PolyMatrix.identity(rootA.size, varspec, D)
    IB = PolyMatrix.identity(rootB.size, varspec, D)
    X = rootA.M.kron(IB).kron(diag)
    Y = IA.kron(rootB.M).kron(shift)
    commutator = (X @ Y) - (Y @ X).scale(zeta)
    deviation = commutator.first_deviation(MultiPoly.zero(varspec, commutator.D))
    if deviation is not None:
        raise VerificationError(f'XY = zeta YX fails at entry {deviation[:2]}')
    construction = f'zeta_tensor[{rootA.construction}, {rootB.construction}]'
    return MatrixRoot(X + Y, d, rootA.target + rootB.target, construction=construction).with_verification()


def _split_products(summands, d):
    if not summands:
        raise ArityError('a sum of products needs at least one summand')
    for p in summands:
        if len(p) != d:
            raise ArityError(f'every summand must have {d} forms, got {len(p)}')
    _common_degree([f for p in summands for f in p])


def herzog_sum_mf(summands, d):
    """
    Length-d factorization of sum_i prod_j f_ij.
    Args:
        summands: s lists of d forms of one common degree
        d: factorization length
    Returns:
        MatrixFactorization; for d = 2 of size 2^(s-1), for d >= 3 the size of the root pipeline,
        with notes recording the achieved and the d^(s-1) target size
    """
    _split_products(summands, d)
    s = len(summands)
    if d == 2:
        mf = reduce(clifford_combine_two_factor, [mf_from_linear_product(p) for p in summands])
    elif s == 1:
        mf = mf_from_linear_product(summands[0])
    else:
        root = reduce(zeta_tensor_combine, [cyclic_root(p) for p in summands])
        mf = root_to_constant_mf(root)
    notes = {'s': s, 'achieved_size': mf.size, 'target_size': d ** (s - 1)}
    LOGGER.info('sum of %d products of length %d: size %d (target %d)', s, d, mf.size, d ** (s - 1))
    return MatrixFactorization(mf.factors, mf.target, mf.verified, f'herzog[{mf.construction}]', notes)


def rotate_mf(mf, k):
    """cyclic rotation (alpha_{k+1}, ..., alpha_d, alpha_1, ..., alpha_k)"""
    if not mf.verified:
        raise UnverifiedInput('rotate_mf needs a verified factorization')
    k %= mf.length
    factors = mf.factors[k:] + mf.factors[:k]
    rotated = MatrixFactorization(factors, mf.target, construction=f'rotate{k}[{mf.construction}]', notes=mf.notes)
    return rotated.with_verification()


def all_rotations_verify(mf):
    return all(verify_mf(MatrixFactorization(mf.factors[k:] + mf.factors[:k], mf.target))
               for k in range(mf.length))


def mf_to_coker_presentation(factor, dim_x=None):
    """presentation O(-1)^m -> O^m of coker(factor) on P^(N+1); entries must be linear"""
    from .cohomology import CokerPresentation

    bad = factor.first_entry_not_of_degree(1)
    if bad is not None:
        i, j, text = bad
        raise NonLinearEntry(f'entry ({i}, {j}) = {text} is not linear', entry=(i, j))
    n_vars = len(factor.varspec)
    return CokerPresentation(factor, n_vars - 2 if dim_x is None else dim_x, degree=1)


#################
# d = 2 roots with squares on the diagonal

def _square_ratio(f1, f2):
    """c with f1 = c * f2, or None"""
    if not f2:
        return None
    exp, c2 = next(iter(f2.terms.items()))
    c = f1.coefficient(exp) / c2
    if c and f1 == f2.scale(c):
        return c
    return None


def _pair_squares(squares):
    """pair c*l^2 + c'*l'^2 into products of two forms wherever c'/c is +-(rational square)"""
    products, unpaired = [], list(squares)
    paired = True
    while paired:
        paired = False
        for (i, (c1, l1)), (j, (c2, l2)) in combinations(enumerate(unpaired), 2):
            ratio = c2 / c1
            if not ratio.is_rational():
                continue
            u = (-ratio).rational_sqrt()
            if u is not None:
                products.append([(l1 - l2.scale(u)).scale(c1), l1 + l2.scale(u)])
            else:
                u = ratio.rational_sqrt()
                if u is None:
                    continue
                D = math.lcm(l1.D, l2.D, 4)
                iu = FieldElement.root_of_unity(4, D) * u
                products.append([(l1.lift(D) + l2.scale(iu)).scale(c1), l1.lift(D) - l2.scale(iu)])
            unpaired = [sq for k, sq in enumerate(unpaired) if k not in (i, j)]
            paired = True
            break
    return products, unpaired


def clifford_root(products):
    """
    Square root of sum_i f_i1 f_i2. A product c*l*l with c a rational square becomes the
    diagonal a, square pairs are merged into single products, the rest form a Clifford
    factorization (H1, H2), and the root is [[a, H1], [H2, -a]] (or the companion root).
    """
    _split_products(products, 2)
    squares, others = [], []
    for f1, f2 in products:
        c = _square_ratio(f1, f2)
        if c is not None:
            squares.append((c, f2))
        else:
            others.append([f1, f2])
    diagonal = None
    for k, (c, l) in enumerate(squares):
        u = c.rational_sqrt()
        if u is not None:
            diagonal = l.scale(u)
            del squares[k]
            break
    pairs, unpaired = _pair_squares(squares)
    rest = others + pairs + [[l.scale(c), l] for c, l in unpaired]
    LOGGER.debug('clifford root: diagonal=%s, %d remaining products', diagonal is not None, len(rest))
    if not rest:
        if diagonal is None:
            raise ArityError('nothing to take a root of')
        return MatrixRoot(PolyMatrix([[diagonal]]), 2, diagonal * diagonal,
                          construction='square').with_verification()
    mf = herzog_sum_mf(rest, 2)
    if diagonal is None:
        return companion_root(mf)
    H1, H2 = mf.factors
    D = math.lcm(H1.D, diagonal.D)
    aI = PolyMatrix.scalar(diagonal.lift(D), mf.size)
    P = PolyMatrix.block([[aI, H1], [H2, -aI]])
    return MatrixRoot(P, 2, diagonal * diagonal + mf.target,
                      construction=f'diagonal_root[{mf.construction}]').with_verification()


def root_by_cyclic(products, d):
    if len(products) != 1:
        raise InputError(f'the cyclic method needs a single product, got {len(products)}')
    return cyclic_root(products[0])


def root_by_clifford(products, d):
    if d != 2:
        raise InputError(f'the clifford method needs d = 2, got d = {d}')
    return clifford_root(products)


def root_by_tensor(products, d):
    _split_products(products, d)
    return reduce(zeta_tensor_combine, [cyclic_root(p) for p in products])


def root_by_auto(products, d):
    if d == 2:
        return clifford_root(products)
    if len(products) == 1:
        return cyclic_root(products[0])
    return root_by_tensor(products, d)


METHODS = {
    'auto': root_by_auto,
    'cyclic': root_by_cyclic,
    'clifford': root_by_clifford,
    'tensor': root_by_tensor,
}


def root_of_sum(products, d, method='auto'):
    if method not in METHODS:
        raise InputError(f'unknown method {method!r}; choose from {sorted(METHODS)}')
    return METHODS[method](products, d)


def products_of_form(g, d):
    """one product of d forms per monomial of g, coefficient on the first form"""
    if not g:
        raise InputError('the zero polynomial has no sum-of-products presentation')
    products = []
    for exp, c in g.sorted_terms():
        forms = []
        for name, k in zip(g.varspec.names, exp):
            forms.extend([MultiPoly.variable(name, g.varspec, g.D)] * k)
        if len(forms) != d or any(f.weighted_degree() != forms[0].weighted_degree() for f in forms):
            raise NotExpressible(f'monomial {exp} is not a product of {d} variables of equal weight')
        forms[0] = forms[0].scale(c)
        products.append(forms)
    return products
