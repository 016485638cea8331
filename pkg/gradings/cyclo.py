"""
Exact arithmetic in cyclotomic fields Q(zeta_N).

A Cyclo value is a polynomial in zeta_N with rational coefficients,
reduced modulo the N-th cyclotomic polynomial. Operands with different
conductors are lifted to the lcm before combining; the minimal
conductor is only recovered on demand by `canonical()`.
"""

import re
from functools import lru_cache
from math import gcd

from sympy.ntheory import divisors, factorint
from sympy.polys.densearith import dup_add, dup_mul, dup_mul_ground, dup_neg, dup_rem, dup_sub
from sympy.polys.densebasic import dup_convert, dup_inflate, dup_strip
from sympy.polys.domains import QQ, ZZ
from sympy.polys.euclidtools import dup_invert
from sympy.polys.factortools import dup_zz_cyclotomic_poly
from sympy.polys.matrices import DomainMatrix
from sympy.polys.polyerrors import NotInvertible

from validation import NotInvertibleError, ParseError, validate_scalar_text


@lru_cache(maxsize=None)
def cyclotomic_modulus(n):
    """Dense QQ coefficients of the n-th cyclotomic polynomial."""
    return tuple(dup_convert(dup_zz_cyclotomic_poly(n, ZZ), ZZ, QQ))


@lru_cache(maxsize=None)
def euler_phi(n):
    result = 1
    for p, k in factorint(n).items():
        result *= p ** (k - 1) * (p - 1)
    return result


@lru_cache(maxsize=None)
def mobius(n):
    factors = factorint(n)
    if any(k > 1 for k in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


def _lcm(a, b):
    return a * b // gcd(a, b)


def _reduce(coeffs, n):
    coeffs = dup_strip(list(coeffs))
    if len(coeffs) <= euler_phi(n):
        return tuple(coeffs)
    return tuple(dup_strip(dup_rem(coeffs, list(cyclotomic_modulus(n)), QQ)))


@lru_cache(maxsize=4096)
def _lift(coeffs, n, m):
    if n == m or not coeffs:
        return coeffs
    return _reduce(dup_inflate(list(coeffs), m // n, QQ), m)


def _to_qq(value):
    if isinstance(value, int):
        return QQ(value)
    return QQ.convert(value)


class Cyclo:
    """
    Element of Q(zeta_N) stored as (N, dense coefficients, leading first).

    Zero is represented by an empty coefficient tuple. Conductors 1 and 2
    both describe rational numbers.
    """

    __slots__ = ('conductor', 'coeffs', '_hash')

    def __init__(self, conductor, coeffs=()):
        if conductor < 1:
            raise ValueError(f"Conductor must be positive, got {conductor}")
        self.conductor = conductor
        self.coeffs = _reduce(tuple(_to_qq(c) for c in coeffs), conductor)
        self._hash = None

    @classmethod
    def rational(cls, numerator, denominator=1):
        if denominator == 0:
            raise NotInvertibleError("Zero denominator in rational scalar")
        value = QQ(numerator, denominator)
        return cls(1, (value,) if value else ())

    @classmethod
    def coerce(cls, value):
        """Wrap ints and QQ values; Cyclo values pass through."""
        if isinstance(value, Cyclo):
            return value
        return cls(1, (_to_qq(value),))

    # -- structure --------------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_rational(self):
        return len(self.coeffs) <= 1

    def lift(self, m):
        """Rewrite in Q(zeta_m); m must be a multiple of the conductor."""
        if m % self.conductor:
            raise ValueError(f"Cannot lift conductor {self.conductor} to {m}")
        if self.is_rational():
            return _make(m, self.coeffs)
        return _make(m, _lift(self.coeffs, self.conductor, m))

    def _aligned(self, other):
        other = Cyclo.coerce(other)
        if self.conductor == other.conductor:
            return self.conductor, self.coeffs, other.coeffs
        if self.is_rational() and other.is_rational():
            return 1, self.coeffs, other.coeffs
        m = _lcm(self.conductor, other.conductor)
        return m, self.lift(m).coeffs, other.lift(m).coeffs

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        n, a, b = self._aligned(other)
        return _make(n, tuple(dup_add(list(a), list(b), QQ)))

    __radd__ = __add__

    def __sub__(self, other):
        n, a, b = self._aligned(other)
        return _make(n, tuple(dup_sub(list(a), list(b), QQ)))

    def __rsub__(self, other):
        return Cyclo.coerce(other) - self

    def __neg__(self):
        return _make(self.conductor, tuple(dup_neg(list(self.coeffs), QQ)))

    def __mul__(self, other):
        n, a, b = self._aligned(other)
        if len(a) <= 1 or len(b) <= 1:
            if not a or not b:
                return _make(n, ())
            if len(a) == 1:
                return _make(n, tuple(dup_mul_ground(list(b), a[0], QQ)))
            return _make(n, tuple(dup_mul_ground(list(a), b[0], QQ)))
        product = dup_rem(dup_mul(list(a), list(b), QQ), list(cyclotomic_modulus(n)), QQ)
        return _make(n, tuple(dup_strip(product)))

    __rmul__ = __mul__

    def inverse(self):
        if not self.coeffs:
            raise NotInvertibleError("Division by zero scalar")
        if len(self.coeffs) == 1:
            return _make(self.conductor, (QQ(1) / self.coeffs[0],))
        try:
            inv = dup_invert(list(self.coeffs), list(cyclotomic_modulus(self.conductor)), QQ)
        except NotInvertible:
            raise NotInvertibleError(f"Scalar {self} is not invertible")
        return _make(self.conductor, tuple(dup_strip(inv)))

    def __truediv__(self, other):
        return self * Cyclo.coerce(other).inverse()

    def __rtruediv__(self, other):
        return Cyclo.coerce(other) * self.inverse()

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, (Cyclo, int)):
            try:
                other = Cyclo.coerce(other)
            except Exception:
                return NotImplemented
        _, a, b = self._aligned(other)
        return a == b

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def normalized_trace(self):
        """Trace to Q divided by the field degree; independent of conductor."""
        n = self.conductor
        degree = len(self.coeffs) - 1
        total = QQ(0)
        for position, c in enumerate(self.coeffs):
            k = degree - position
            m = n // gcd(k, n)
            total += c * QQ(mobius(m), euler_phi(m))
        return total

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.normalized_trace())
        return self._hash

    def canonical(self):
        """Same value written over its minimal conductor."""
        n = self.conductor
        if n <= 2 or self.is_rational():
            return _make(1, self.coeffs)

        width = euler_phi(n)
        target = _padded(self.coeffs, width)
        for m in divisors(n):
            size = euler_phi(m)
            columns = [_padded(_lift(_monomial(j), m, n), width) for j in range(size)]
            rows = [[columns[j][i] for j in range(size)] + [target[i]] for i in range(width)]
            reduced, pivots = DomainMatrix(rows, (width, size + 1), QQ).rref()
            if size in pivots:
                continue
            solution = [QQ(0)] * size
            table = reduced.to_list()
            for row, col in enumerate(pivots):
                solution[col] = table[row][size]
            # solution is ascending in powers; dense form is leading first
            return _make(m if m > 2 else 1, tuple(dup_strip(solution[::-1])))
        return self

    # -- text -------------------------------------------------------------

    def to_literal(self):
        """Deterministic literal such as 'z4^3 * 5/2 + 1'."""
        if not self.coeffs:
            return '0'
        n = self.conductor
        degree = len(self.coeffs) - 1
        terms = []
        for position, c in enumerate(self.coeffs):
            if not c:
                continue
            k = degree - position
            if k == 0 or n <= 2:
                terms.append(_format_rational(c))
            elif c == 1:
                terms.append(f"z{n}^{k}")
            elif c == -1:
                terms.append(f"-z{n}^{k}")
            else:
                terms.append(f"z{n}^{k} * {_format_rational(c)}")
        return ' + '.join(reversed(terms))

    def __str__(self):
        return self.to_literal()

    def __repr__(self):
        return f"Cyclo({self.to_literal()!r})"


def _make(conductor, coeffs):
    value = Cyclo.__new__(Cyclo)
    value.conductor = conductor
    value.coeffs = coeffs
    value._hash = None
    return value


def _monomial(k):
    return (QQ(1),) + (QQ(0),) * k


def _padded(coeffs, width):
    ascending = list(coeffs[::-1]) + [QQ(0)] * (width - len(coeffs))
    return ascending[:width]


def _format_rational(c):
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


ZERO = _make(1, ())
ONE = _make(1, (QQ(1),))


def root_of_unity(n, k):
    """
    The scalar zeta_n^k.

    Args:
        n: Order of the root, at least 1
        k: Exponent, taken modulo n

    Returns:
        Cyclo over conductor n (rational for n <= 2)
    """
    if n < 1:
        raise ValueError(f"Root order must be positive, got {n}")
    k %= n
    if n == 1 or k == 0:
        return ONE
    if n == 2:
        return _make(1, (QQ(-1),))
    return _make(n, _reduce(_monomial(k), n))


_TERM = re.compile(r'^(-?)z(\d+)\^(\d+)(?: \* (-?\d+(?:/\d+)?))?$')


def parse_literal(text):
    """
    Parse a scalar literal written by `Cyclo.to_literal`.

    Raises:
        ParseError: on malformed input
    """
    is_valid, error = validate_scalar_text(text)
    if not is_valid:
        raise ParseError(error)

    total = ZERO
    for term in text.strip().split(' + '):
        match = _TERM.match(term)
        if match:
            sign, n, k, c = match.groups()
            value = root_of_unity(int(n), int(k))
            if c is not None:
                value = value * _parse_rational(c)
            if sign:
                value = -value
        else:
            value = _parse_rational(term)
        total = total + value
    return total


def _parse_rational(text):
    if '/' in text:
        num, den = text.split('/')
        return Cyclo.rational(int(num), int(den))
    return Cyclo.rational(int(text))


def root_exponent(value, n):
    """
    Find k with value == zeta_n^k.

    Returns:
        Exponent in range(n), or None if value is not an n-th root of unity
    """
    value = Cyclo.coerce(value)
    for k in range(n):
        if root_of_unity(n, k) == value:
            return k
    return None
