"""
Exact sparse polynomials over Q and the cyclotomic fields Q(zeta_D).

A FieldElement is a coefficient vector modulo the D-th cyclotomic polynomial, a
MultiPoly is a map exponent vector -> nonzero FieldElement over a VarSpec.
Everything is immutable after construction.
"""
import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from tokenize import TokenError

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from .errors import DegreeError, InputError, PolyParseError, SchemaError, VarSpecMismatch

LOGGER = logging.getLogger(__name__)

ZETA = 'zeta'
TRANSFORMATIONS = standard_transformations + (convert_xor,)
_IDENTIFIER = re.compile(r'[A-Za-z_][A-Za-z_0-9]*')


@lru_cache(maxsize=None)
def cyclotomic_coeffs(D):
    """coefficients of the D-th cyclotomic polynomial, lowest degree first (monic)"""
    if D < 1:
        raise InputError(f'cyclotomic index must be positive, got {D}')
    x = sympy.Symbol('x')
    poly = sympy.cyclotomic_poly(D, x, polys=True)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


def phi(D):
    return len(cyclotomic_coeffs(D)) - 1


def _reduce(vec, D):
    mod = cyclotomic_coeffs(D)
    n = len(mod) - 1
    vec = [Fraction(v) for v in vec]
    for top in range(len(vec) - 1, n - 1, -1):
        c = vec[top]
        if c:
            base = top - n
            for i in range(n):
                if mod[i]:
                    vec[base + i] -= c * mod[i]
    vec = vec[:n]
    vec.extend([Fraction(0)] * (n - len(vec)))
    return tuple(vec)


def _is_rational_square(q):
    if q < 0:
        return None
    q = Fraction(q)
    num, den = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


class FieldElement:
    """element of Q(zeta_D) stored as a residue modulo the D-th cyclotomic polynomial"""

    __slots__ = ('coeffs', 'D')
    __hash__ = None

    def __init__(self, coeffs, D=1):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != phi(D):
            coeffs = _reduce(coeffs, D)
        self.coeffs = coeffs
        self.D = D

    @classmethod
    def _make(cls, coeffs, D):
        obj = object.__new__(cls)
        obj.coeffs = coeffs
        obj.D = D
        return obj

    @classmethod
    def rational(cls, c, D=1):
        return cls._make((Fraction(c),) + (Fraction(0),) * (phi(D) - 1), D)

    @classmethod
    def zeta(cls, D):
        return cls._make(_reduce((0, 1), D), D)

    @classmethod
    def root_of_unity(cls, d, D=None):
        """a primitive d-th root of unity inside Q(zeta_D); D defaults to d"""
        D = d if D is None else D
        if d == 1:
            return cls.rational(1, D)
        if d == 2:
            return cls.rational(-1, D)
        if D % d:
            raise InputError(f'Q(zeta_{D}) holds no primitive {d}-th root of unity')
        return cls.zeta(D) ** (D // d)

    @classmethod
    def coerce(cls, value, D=1):
        if isinstance(value, FieldElement):
            return value if value.D == D else value.lift(math.lcm(value.D, D))
        if isinstance(value, (int, Fraction)):
            return cls.rational(value, D)
        if isinstance(value, sympy.Rational):
            return cls.rational(Fraction(int(value.p), int(value.q)), D)
        raise TypeError(f'cannot use {type(value).__name__} as a field element')

    def lift(self, D):
        if D == self.D:
            return self
        if D % self.D:
            raise InputError(f'Q(zeta_{self.D}) is not a subfield of Q(zeta_{D})')
        step = D // self.D
        vec = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1)
        for j, c in enumerate(self.coeffs):
            vec[j * step] = c
        return FieldElement._make(_reduce(vec, D), D)

    def _pair(self, other):
        if isinstance(other, FieldElement):
            if other.D == self.D:
                return self, other
            D = math.lcm(self.D, other.D)
            return self.lift(D), other.lift(D)
        if isinstance(other, (int, Fraction)):
            return self, FieldElement.rational(other, self.D)
        return None, None

    def is_zero(self):
        return not any(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def to_fraction(self):
        if not self.is_rational():
            raise InputError(f'{self} is not rational')
        return self.coeffs[0]

    def rational_sqrt(self):
        """u with u^2 = self when self is the square of a rational, else None"""
        if not self.is_rational():
            return None
        return _is_rational_square(self.coeffs[0])

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return FieldElement._make(tuple(x + y for x, y in zip(a.coeffs, b.coeffs)), a.D)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement._make(tuple(-x for x in self.coeffs), self.D)

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return FieldElement._make(tuple(x - y for x, y in zip(a.coeffs, b.coeffs)), a.D)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        if len(a.coeffs) == 1:
            return FieldElement._make((a.coeffs[0] * b.coeffs[0],), a.D)
        prod = [Fraction(0)] * (2 * len(a.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return FieldElement._make(_reduce(prod, a.D), a.D)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError('inverse of zero field element')
        if self.is_rational():
            return FieldElement.rational(1 / self.coeffs[0], self.D)
        x = sympy.Symbol('x')
        elem = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(self.coeffs)],
                          x, domain=sympy.QQ)
        modulus = sympy.Poly(list(reversed(cyclotomic_coeffs(self.D))), x, domain=sympy.QQ)
        inv = elem.invert(modulus)
        vec = [Fraction(int(c.p), int(c.q)) for c in reversed(inv.all_coeffs())]
        return FieldElement(vec, self.D)

    def __truediv__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = FieldElement.rational(1, self.D), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a.coeffs == b.coeffs

    def __repr__(self):
        return f'FieldElement({self}, D={self.D})'

    def __str__(self):
        if self.is_rational():
            return str(self.coeffs[0])
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = '' if j == 0 else (ZETA if j == 1 else f'{ZETA}^{j}')
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f'{abs(c)}*{mono}'
            if not parts:
                parts.append(body if c > 0 else f'-{body}')
            else:
                parts.append(f'+ {body}' if c > 0 else f'- {body}')
        return '(' + ' '.join(parts) + ')'

    def to_json(self):
        return [[c.numerator, c.denominator] for c in self.coeffs]

    @classmethod
    def from_json(cls, data, D=1):
        return cls([Fraction(num, den) for num, den in data], D)


#################

@dataclass(frozen=True)
class VarSpec:
    """ordered variable names with positive integer weights"""
    names: tuple
    weights: tuple = None

    def __post_init__(self):
        names = tuple(self.names)
        weights = tuple(self.weights) if self.weights is not None else (1,) * len(names)
        if len(set(names)) != len(names):
            raise InputError(f'variable names must be unique: {names}')
        if len(weights) != len(names):
            raise InputError(f'{len(weights)} weights for {len(names)} variables')
        for name in names:
            if not _IDENTIFIER.fullmatch(name) or name == ZETA:
                raise InputError(f'invalid variable name {name!r}')
        if any(int(w) < 1 for w in weights):
            raise InputError(f'weights must be positive: {weights}')
        object.__setattr__(self, 'names', names)
        object.__setattr__(self, 'weights', tuple(int(w) for w in weights))

    @classmethod
    def of(cls, names, weights=None):
        """VarSpec.of("t x y z", {"t": 2})"""
        if isinstance(names, str):
            names = [n for n in re.split(r'[\s,]+', names) if n]
        weights = weights or {}
        return cls(tuple(names), tuple(weights.get(n, 1) for n in names))

    def __len__(self):
        return len(self.names)

    def index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise VarSpecMismatch(f'variable {name!r} is not declared in {self.names}') from None

    def extend(self, name, weight=1, first=True):
        if name in self.names:
            return self
        if first:
            return VarSpec((name,) + self.names, (weight,) + self.weights)
        return VarSpec(self.names + (name,), self.weights + (weight,))

    def weighted_degree(self, exp):
        return sum(e * w for e, w in zip(exp, self.weights))

    def symbols(self):
        return [sympy.Symbol(name) for name in self.names]

    def to_json(self):
        return {'vars': list(self.names), 'weights': list(self.weights)}


def infer_varspec(text, first=None):
    """declare every identifier of text (except zeta), optionally pinning one name first"""
    names = sorted({m for m in _IDENTIFIER.findall(text) if m != ZETA})
    if first is not None:
        names = [first] + [n for n in names if n != first]
    return VarSpec(tuple(names))


def monomials_of_degree(nvars, degree):
    """all exponent vectors of total degree `degree`, lexicographically descending"""
    if degree < 0:
        return []
    if nvars == 1:
        return [(degree,)]
    out = []
    for head in range(degree, -1, -1):
        for tail in monomials_of_degree(nvars - 1, degree - head):
            out.append((head,) + tail)
    return out


#################

class MultiPoly:
    """sparse polynomial: exponent tuple -> nonzero FieldElement, all in Q(zeta_D)"""

    __slots__ = ('varspec', 'D', '_terms')
    __hash__ = None

    def __init__(self, varspec, terms=None, D=1):
        terms = dict(terms or {})
        for c in terms.values():
            if isinstance(c, FieldElement) and c.D != D:
                D = math.lcm(D, c.D)
        n = len(varspec)
        clean = {}
        for exp, c in terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n or any(e < 0 for e in exp):
                raise InputError(f'exponent {exp} does not fit {varspec.names}')
            c = FieldElement.coerce(c, D)
            if c:
                clean[exp] = clean[exp] + c if exp in clean else c
        self.varspec = varspec
        self.D = D
        self._terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def _raw(cls, varspec, terms, D):
        obj = object.__new__(cls)
        obj.varspec = varspec
        obj.D = D
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls, varspec, D=1):
        return cls._raw(varspec, {}, D)

    @classmethod
    def constant(cls, c, varspec, D=1):
        c = FieldElement.coerce(c, D)
        return cls._raw(varspec, {(0,) * len(varspec): c} if c else {}, c.D)

    @classmethod
    def variable(cls, name, varspec, D=1):
        exp = [0] * len(varspec)
        exp[varspec.index(name)] = 1
        return cls._raw(varspec, {tuple(exp): FieldElement.rational(1, D)}, D)

    @classmethod
    def monomial(cls, exp, varspec, coeff=1, D=1):
        return cls(varspec, {tuple(exp): coeff}, D)

    @property
    def terms(self):
        return self._terms

    def __len__(self):
        return len(self._terms)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def coefficient(self, exp):
        return self._terms.get(tuple(exp), FieldElement.rational(0, self.D))

    def is_rational(self):
        return all(c.is_rational() for c in self._terms.values())

    def lift(self, D):
        if D == self.D:
            return self
        return MultiPoly._raw(self.varspec, {e: c.lift(D) for e, c in self._terms.items()}, D)

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.varspec != self.varspec:
                raise VarSpecMismatch(f'{self.varspec.names} vs {other.varspec.names}')
            if other.D == self.D:
                return self, other
            D = math.lcm(self.D, other.D)
            return self.lift(D), other.lift(D)
        if isinstance(other, (int, Fraction, FieldElement)):
            c = FieldElement.coerce(other, self.D)
            return self.lift(c.D), MultiPoly.constant(c, self.varspec, c.D)
        return None, None

    # arithmetic
    def __add__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        terms = dict(a._terms)
        for e, c in b._terms.items():
            if e in terms:
                s = terms[e] + c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
            else:
                terms[e] = c
        return MultiPoly._raw(a.varspec, terms, a.D)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.varspec, {e: -c for e, c in self._terms.items()}, self.D)

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        terms = {}
        for e1, c1 in a._terms.items():
            for e2, c2 in b._terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms[e] + c1 * c2 if e in terms else c1 * c2
        return MultiPoly._raw(a.varspec, {e: c for e, c in terms.items() if c}, a.D)

    __rmul__ = __mul__

    def scale(self, c):
        c = FieldElement.coerce(c, self.D)
        if not c:
            return MultiPoly.zero(self.varspec, c.D)
        base = self.lift(c.D)
        return MultiPoly._raw(base.varspec, {e: v * c for e, v in base._terms.items()}, c.D)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise DegreeError(f'polynomial powers need a non-negative integer exponent, got {n}')
        result, base = MultiPoly.constant(1, self.varspec, self.D), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        a, b = self._coerce(other) if isinstance(other, (MultiPoly, int, Fraction, FieldElement)) else (None, None)
        if a is None:
            return NotImplemented
        return a._terms.keys() == b._terms.keys() and all(a._terms[e] == b._terms[e] for e in a._terms)

    # grading
    def is_homogeneous(self):
        degrees = {self.varspec.weighted_degree(e) for e in self._terms}
        return len(degrees) <= 1

    def weighted_degree(self):
        if not self._terms:
            raise DegreeError('the zero polynomial has no degree')
        if not self.is_homogeneous():
            raise DegreeError(f'{self} is not homogeneous')
        return self.varspec.weighted_degree(next(iter(self._terms)))

    def total_degree(self):
        return max((sum(e) for e in self._terms), default=-1)

    def support_variables(self):
        used = set()
        for e in self._terms:
            used.update(name for name, k in zip(self.varspec.names, e) if k)
        return used

    def sorted_terms(self):
        """terms in graded lexicographic order, largest first"""
        wdeg = self.varspec.weighted_degree
        return sorted(self._terms.items(), key=lambda item: (wdeg(item[0]), item[0]), reverse=True)

    # calculus and substitution
    def partial_derivative(self, var):
        i = self.varspec.index(var)
        terms = {}
        for e, c in self._terms.items():
            if e[i]:
                new = list(e)
                new[i] -= 1
                terms[tuple(new)] = c * e[i]
        return MultiPoly._raw(self.varspec, terms, self.D)

    def substitute(self, assignments, target=None):
        """ring homomorphism sending each assigned variable to its image; unassigned
        variables map to the same-named variable of the target"""
        for name in assignments:
            self.varspec.index(name)
        if target is None:
            spaces = {img.varspec for img in assignments.values() if isinstance(img, MultiPoly)}
            if len(spaces) > 1:
                raise VarSpecMismatch('substitution images live in different variable sets')
            target = spaces.pop() if spaces else self.varspec
        images = []
        for name in self.varspec.names:
            if name in assignments:
                img = assignments[name]
                if not isinstance(img, MultiPoly):
                    img = MultiPoly.constant(img, target)
                if img.varspec != target:
                    raise VarSpecMismatch(f'image of {name} is not over {target.names}')
            else:
                img = MultiPoly.variable(name, target)
            images.append(img)
        powers = {}
        acc = {}
        D = math.lcm(self.D, *(img.D for img in images))
        for e, c in self._terms.items():
            term = MultiPoly.constant(c, target, D)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in powers:
                        powers[(i, k)] = images[i] ** k
                    term = term * powers[(i, k)]
            _accumulate(acc, term)
        return MultiPoly._raw(target, {e: c for e, c in acc.items() if c}, D)

    def embed(self, varspec):
        """the same polynomial over a VarSpec containing all of its support variables"""
        idx = []
        for name in self.varspec.names:
            idx.append(varspec.index(name) if name in varspec.names else None)
        terms = {}
        for e, c in self._terms.items():
            new = [0] * len(varspec)
            for i, k in enumerate(e):
                if k:
                    if idx[i] is None:
                        raise VarSpecMismatch(f'{self.varspec.names[i]} is missing from {varspec.names}')
                    new[idx[i]] = k
            terms[tuple(new)] = c
        return MultiPoly._raw(varspec, terms, self.D)

    def evaluate(self, point):
        """value at a point given as name -> number"""
        vals = [FieldElement.coerce(point[name], self.D) for name in self.varspec.names]
        total = FieldElement.rational(0, self.D)
        for e, c in self._terms.items():
            term = c
            for v, k in zip(vals, e):
                if k:
                    term = term * v ** k
            total = total + term
        return total

    # sympy interop for rational polynomials
    def to_sympy(self):
        if not self.is_rational():
            raise InputError('only rational polynomials convert to sympy expressions')
        syms = self.varspec.symbols()
        rep = {e: sympy.Rational(c.coeffs[0].numerator, c.coeffs[0].denominator) for e, c in self._terms.items()}
        return sympy.Poly.from_dict(rep, *syms, domain=sympy.QQ).as_expr() if rep else sympy.Integer(0)

    @classmethod
    def from_sympy(cls, expr, varspec):
        poly = sympy.Poly(expr, *varspec.symbols())
        if not (poly.domain.is_ZZ or poly.domain.is_QQ):
            raise InputError(f'non-rational coefficients in {expr}')
        terms = {}
        for monom, coeff in poly.terms():
            coeff = sympy.Rational(coeff)
            if coeff:
                terms[monom] = Fraction(int(coeff.p), int(coeff.q))
        return cls(varspec, terms)

    # text and JSON
    def render(self):
        if not self._terms:
            return '0'
        pieces = []
        for e, c in self.sorted_terms():
            mono = '*'.join(name if k == 1 else f'{name}^{k}'
                            for name, k in zip(self.varspec.names, e) if k)
            if c.is_rational():
                q = c.coeffs[0]
                sign, mag = ('-' if q < 0 else '+'), abs(q)
                if not mono:
                    body = str(mag)
                elif mag == 1:
                    body = mono
                else:
                    body = f'{mag}*{mono}'
            else:
                sign = '+'
                body = f'{c}*{mono}' if mono else str(c)
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ('-' if first_sign == '-' else '') + first
        for sign, body in pieces[1:]:
            out += f' {sign} {body}'
        return out

    __str__ = render

    def __repr__(self):
        return f'MultiPoly({self.render()!r}, vars={self.varspec.names}, D={self.D})'

    def to_json(self):
        data = self.varspec.to_json()
        data['D'] = self.D
        data['terms'] = [{'exp': list(e), 'coeff': c.to_json()} for e, c in self.sorted_terms()]
        return data

    @classmethod
    def from_json(cls, data):
        try:
            varspec = VarSpec(tuple(data['vars']), tuple(data['weights']))
            D = int(data['D'])
            terms = {tuple(t['exp']): FieldElement.from_json(t['coeff'], D) for t in data['terms']}
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as err:
            raise SchemaError(f'malformed polynomial JSON: {err}') from err
        return cls(varspec, terms, D)


def _accumulate(acc, poly):
    for e, c in poly.terms.items():
        acc[e] = acc[e] + c if e in acc else c


def polydot(pairs, varspec, D=1):
    """sum of products p*q over pairs, accumulated in one pass"""
    acc = {}
    for p, q in pairs:
        if not p or not q:
            continue
        if p.D != q.D or p.D != D:
            D = math.lcm(D, p.D, q.D)
        for e1, c1 in p.terms.items():
            for e2, c2 in q.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                prod = c1 * c2
                acc[e] = acc[e] + prod if e in acc else prod
    terms = {}
    for e, c in acc.items():
        if c.D != D:
            c = c.lift(D)
        if c:
            terms[e] = c
    return MultiPoly._raw(varspec, terms, D)


#################

def parse_poly(text, varspec, D=1):
    """
    Parse a +,-,*,^ expression over the declared variables.
    Args:
        text: polynomial text such as "t^3 - x*y*z" or "(1 + zeta)*x"
        varspec: the declared variables
        D: cyclotomic index; `zeta` is allowed only when D > 1
    Returns:
        the canonical MultiPoly
    """
    local = {name: sympy.Symbol(name) for name in varspec.names}
    zeta = sympy.Symbol(ZETA)
    local[ZETA] = zeta
    try:
        expr = parse_expr(text, local_dict=local, transformations=TRANSFORMATIONS)
    except (SyntaxError, TokenError, TypeError, AttributeError) as err:
        raise PolyParseError(f'malformed polynomial {text!r}: {err}') from err
    if not isinstance(expr, sympy.Expr):
        raise PolyParseError(f'{text!r} is not a polynomial expression')
    unknown = {s.name for s in expr.free_symbols} - set(local)
    if unknown:
        raise PolyParseError(f'undeclared variable(s) {sorted(unknown)} in {text!r}')
    if zeta in expr.free_symbols and D == 1:
        raise PolyParseError(f'{ZETA} used with D = 1 in {text!r}')
    try:
        poly = sympy.Poly(expr, *varspec.symbols(), zeta)
    except sympy.PolynomialError as err:
        raise PolyParseError(f'{text!r} is not a polynomial: {err}') from err
    if not (poly.domain.is_ZZ or poly.domain.is_QQ):
        raise PolyParseError(f'non-rational coefficients in {text!r}')
    zeta_d = FieldElement.zeta(D)
    terms = {}
    for monom, coeff in poly.terms():
        coeff = sympy.Rational(coeff)
        if not coeff:
            continue
        value = FieldElement.rational(Fraction(int(coeff.p), int(coeff.q)), D) * zeta_d ** monom[-1]
        exp = tuple(monom[:-1])
        terms[exp] = terms[exp] + value if exp in terms else value
    return MultiPoly(varspec, terms, D)


def render(p):
    return p.render()


def weighted_degree(p):
    return p.weighted_degree()


def is_homogeneous(p):
    return p.is_homogeneous()


def partial_derivative(p, var):
    return p.partial_derivative(var)


def substitute(p, assignments, target=None):
    return p.substitute(assignments, target)


def _add(*ops):
    out = ops[0]
    for p in ops[1:]:
        out = out + p
    return out


def _mul(*ops):
    out = ops[0]
    for p in ops[1:]:
        out = out * p
    return out


POLY_OPS = {
    'add': _add,
    'mul': _mul,
    'pow': lambda p, n: p ** n,
    'negate': lambda p: -p,
}


def poly_arith(op, *operands):
    if op not in POLY_OPS:
        raise InputError(f'unknown polynomial operation {op!r}; choose from {sorted(POLY_OPS)}')
    return POLY_OPS[op](*operands)


def random_form(varspec, degree, rng, coeff_range=(-9, 9), D=1):
    """homogeneous form of the given degree with integer coefficients drawn from coeff_range"""
    lo, hi = coeff_range
    monos = monomials_of_degree(len(varspec), degree)
    while True:
        coeffs = rng.integers(lo, hi + 1, size=len(monos))
        if any(coeffs):
            return MultiPoly(varspec, {e: int(c) for e, c in zip(monos, coeffs) if c}, D)
