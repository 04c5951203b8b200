"""Exact coefficient arithmetic.

Everything downstream is built from two immutable value types:

* ``MultiLaurent``: a Laurent polynomial in ``q^(1/g)`` and ``y`` with rational
  coefficients. The stored integer exponent ``e`` stands for ``q^(e/g)``.
* ``ZSeries``: a formal power series in ``z`` truncated at an explicit order,
  with ``MultiLaurent`` coefficients.

No floating point is used anywhere.
"""
import os
from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union
from dotenv import load_dotenv
from lib.errors import DomainError, GranularityError, NotDivisibleError, NotInvertibleError
from lib.logger import qcore_logger

load_dotenv()
MAX_GRANULARITY = int(os.getenv('QTR_MAX_GRANULARITY', 12))

Key = Tuple[int, int]
Scalar = Union[int, Fraction]


def to_scalar(value: Union[int, Fraction, str]) -> Fraction:
    """Convert an int, Fraction or "p/q" string into an exact rational"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)) and not isinstance(value, bool):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as e:
            raise DomainError(f"Not an exact rational: {value!r}") from e
    raise DomainError(f"Not an exact rational: {value!r}")


def _common_granularity(g1: int, g2: int) -> int:
    if g1 % g2 == 0:
        return g1
    if g2 % g1 == 0:
        return g2
    raise GranularityError(f"Incompatible granularities {g1} and {g2}")


class MultiLaurent:
    """Laurent polynomial in q^(1/g) and y over the rationals.

    Values are kept at the smallest granularity able to hold them, so q^(2/2)
    is stored as q^1 with g=1. Two operands combine when one granularity
    divides the other.
    """

    __slots__ = ('_terms', '_g')

    def __init__(self, terms: Optional[Mapping[Key, Scalar]] = None, g: int = 1):
        if g < 1:
            raise GranularityError(f"Granularity must be positive, got {g}")
        clean: Dict[Key, Fraction] = {}
        for (qe, ye), c in (terms or {}).items():
            c = to_scalar(c)
            if c:
                clean[(int(qe), int(ye))] = c
        common = g
        for qe, _ in clean:
            common = gcd(common, qe)
            if common == 1:
                break
        if common > 1:
            clean = {(qe // common, ye): c for (qe, ye), c in clean.items()}
            g //= common
        self._terms = clean
        self._g = g

    # Construction

    @classmethod
    def from_exponents(cls, items: Iterable[Tuple[Fraction, int, Scalar]]) -> 'MultiLaurent':
        """Build from (rational q-exponent, y-exponent, coefficient) triples.

        Repeated exponents are summed.
        """
        collected: Dict[Tuple[Fraction, int], Fraction] = {}
        for qe, ye, c in items:
            qe = Fraction(qe)
            collected[(qe, ye)] = collected.get((qe, ye), Fraction(0)) + to_scalar(c)
        g = 1
        for qe, _ in collected:
            g = lcm(g, qe.denominator)
        if g > MAX_GRANULARITY:
            raise GranularityError(f"Granularity {g} exceeds the limit {MAX_GRANULARITY}")
        return cls({(int(qe * g), ye): c for (qe, ye), c in collected.items()}, g)

    @classmethod
    def zero(cls) -> 'MultiLaurent':
        return cls()

    @classmethod
    def one(cls) -> 'MultiLaurent':
        return cls({(0, 0): 1})

    @classmethod
    def constant(cls, c: Scalar) -> 'MultiLaurent':
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, c: Scalar = 1, q: Union[int, Fraction] = 0, y: int = 0) -> 'MultiLaurent':
        """c * q^q * y^y, with a possibly fractional q-exponent"""
        return cls.from_exponents([(Fraction(q), y, c)])

    @classmethod
    def coerce(cls, value) -> 'MultiLaurent':
        if isinstance(value, MultiLaurent):
            return value
        return cls.constant(to_scalar(value))

    # Inspection

    @property
    def g(self) -> int:
        return self._g

    @property
    def terms(self) -> Dict[Key, Fraction]:
        return dict(self._terms)

    def items(self) -> List[Tuple[Key, Fraction]]:
        """Terms in canonical (q-exponent, y-exponent) ascending order"""
        return sorted(self._terms.items())

    def rescaled_terms(self, g_new: int) -> Dict[Key, Fraction]:
        """Terms re-expressed on the finer grid q^(1/g_new)"""
        if g_new % self._g:
            raise GranularityError(f"Cannot rescale granularity {self._g} to {g_new}")
        factor = g_new // self._g
        return {(qe * factor, ye): c for (qe, ye), c in self._terms.items()}

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(key == (0, 0) for key in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def coefficient(self, q: Union[int, Fraction] = 0, y: int = 0) -> Fraction:
        qe = Fraction(q) * self._g
        if qe.denominator != 1:
            return Fraction(0)
        return self._terms.get((int(qe), y), Fraction(0))

    def constant_term(self) -> Fraction:
        return self._terms.get((0, 0), Fraction(0))

    def scalar(self) -> Fraction:
        """Value of a constant polynomial"""
        if not self.is_constant():
            raise DomainError(f"Not a constant: {self}")
        return self.constant_term()

    def q_exponents(self) -> List[Fraction]:
        return sorted({Fraction(qe, self._g) for qe, _ in self._terms})

    def y_exponents(self) -> List[int]:
        return sorted({ye for _, ye in self._terms})

    def leading_key(self) -> Key:
        return max(self._terms)

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def has_nonnegative_coefficients(self) -> bool:
        return all(c >= 0 for c in self._terms.values())

    def is_polynomial_in_q(self) -> bool:
        return all(qe >= 0 for qe, _ in self._terms)

    # Arithmetic

    def _aligned(self, other: 'MultiLaurent') -> Tuple[Dict[Key, Fraction], Dict[Key, Fraction], int]:
        g = _common_granularity(self._g, other._g)
        return self.rescaled_terms(g), other.rescaled_terms(g), g

    def __add__(self, other) -> 'MultiLaurent':
        try:
            other = MultiLaurent.coerce(other)
        except DomainError:
            return NotImplemented
        left, right, g = self._aligned(other)
        for key, c in right.items():
            left[key] = left.get(key, Fraction(0)) + c
        return MultiLaurent(left, g)

    __radd__ = __add__

    def __neg__(self) -> 'MultiLaurent':
        return MultiLaurent({key: -c for key, c in self._terms.items()}, self._g)

    def __sub__(self, other) -> 'MultiLaurent':
        try:
            other = MultiLaurent.coerce(other)
        except DomainError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> 'MultiLaurent':
        return MultiLaurent.coerce(other) - self

    def __mul__(self, other) -> 'MultiLaurent':
        try:
            other = MultiLaurent.coerce(other)
        except DomainError:
            return NotImplemented
        left, right, g = self._aligned(other)
        product: Dict[Key, Fraction] = {}
        for (q1, y1), c1 in left.items():
            for (q2, y2), c2 in right.items():
                key = (q1 + q2, y1 + y2)
                product[key] = product.get(key, Fraction(0)) + c1 * c2
        return MultiLaurent(product, g)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> 'MultiLaurent':
        if n < 0:
            return self.monomial_inverse() ** (-n)
        result = MultiLaurent.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def monomial_inverse(self) -> 'MultiLaurent':
        """Inverse of a single term c*q^a*y^b inside the Laurent ring"""
        if self.is_zero():
            raise NotInvertibleError("Zero has no inverse")
        if not self.is_monomial():
            raise NotInvertibleError(f"{self} is not a unit of the Laurent ring")
        (qe, ye), c = next(iter(self._terms.items()))
        return MultiLaurent({(-qe, -ye): 1 / c}, self._g)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiLaurent):
            try:
                other = MultiLaurent.coerce(other)
            except DomainError:
                return NotImplemented
        return self._g == other._g and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._g, frozenset(self._terms.items())))

    def __bool__(self) -> bool:
        return bool(self._terms)

    # Substitutions

    def map_exponents(self, fn: Callable[[Fraction, int, Fraction], Tuple[Fraction, int, Fraction]]) -> 'MultiLaurent':
        """Apply fn(q_exponent, y_exponent, coefficient) to every term"""
        return MultiLaurent.from_exponents(
            fn(Fraction(qe, self._g), ye, c) for (qe, ye), c in self._terms.items()
        )

    def invert_q(self) -> 'MultiLaurent':
        """q -> 1/q"""
        return MultiLaurent({(-qe, ye): c for (qe, ye), c in self._terms.items()}, self._g)

    def invert_y(self) -> 'MultiLaurent':
        """y -> 1/y"""
        return MultiLaurent({(qe, -ye): c for (qe, ye), c in self._terms.items()}, self._g)

    def power_q(self, m: Union[int, Fraction]) -> 'MultiLaurent':
        """q -> q^m"""
        m = Fraction(m)
        return self.map_exponents(lambda qe, ye, c: (qe * m, ye, c))

    def at_q_one(self) -> 'MultiLaurent':
        """q = 1, leaving a Laurent polynomial in y"""
        return self.map_exponents(lambda qe, ye, c: (Fraction(0), ye, c))

    def at_y_one(self) -> 'MultiLaurent':
        """y = 1, leaving a Laurent polynomial in q"""
        return self.map_exponents(lambda qe, ye, c: (qe, 0, c))

    def specialize_y(self, a: Union[int, Fraction], b: Union[int, Fraction] = 1) -> 'MultiLaurent':
        """y -> -q^a together with q -> q^b"""
        a, b = Fraction(a), Fraction(b)
        return self.map_exponents(
            lambda qe, ye, c: (a * ye + b * qe, 0, c if ye % 2 == 0 else -c)
        )

    def substitute_y(self, value: 'MultiLaurent') -> 'MultiLaurent':
        """y -> value, where value must be a Laurent unit when y^-1 occurs"""
        result = MultiLaurent.zero()
        for (qe, ye), c in self._terms.items():
            result = result + MultiLaurent({(qe, 0): c}, self._g) * (value ** ye)
        return result

    def truncate_q(self, order: Union[int, Fraction]) -> 'MultiLaurent':
        """Drop every term whose q-exponent is at least ``order``"""
        bound = Fraction(order) * self._g
        return MultiLaurent({key: c for key, c in self._terms.items() if key[0] < bound}, self._g)

    def __str__(self) -> str:
        return format_laurent(self)

    def __repr__(self) -> str:
        return f"MultiLaurent({format_laurent(self)!r})"


Q = MultiLaurent.monomial(q=1)
Y = MultiLaurent.monomial(y=1)
Y_INV = MultiLaurent.monomial(y=-1)
ONE = MultiLaurent.one()
ZERO = MultiLaurent.zero()


def _format_exponent(base: str, e: Fraction) -> str:
    if e == 1:
        return base
    if e.denominator == 1:
        return f"{base}^{e.numerator}"
    return f"{base}^({e})"


def format_laurent(f: MultiLaurent) -> str:
    """Render as e.g. "2 + q - 3*q^2*y^-1", terms in canonical order"""
    if f.is_zero():
        return "0"
    pieces = []
    for (qe, ye), c in f.items():
        factors = []
        if qe:
            factors.append(_format_exponent('q', Fraction(qe, f.g)))
        if ye:
            factors.append(_format_exponent('y', Fraction(ye)))
        magnitude = abs(c)
        if not factors:
            body = str(magnitude)
        elif magnitude == 1:
            body = '*'.join(factors)
        else:
            body = '*'.join([str(magnitude)] + factors)
        pieces.append((c < 0, body))
    negative, body = pieces[0]
    text = f"-{body}" if negative else body
    for negative, body in pieces[1:]:
        text += f" - {body}" if negative else f" + {body}"
    return text


def laurent_arith(lhs: MultiLaurent, rhs: MultiLaurent, op: str) -> MultiLaurent:
    """Exact add/sub/mul of two Laurent polynomials"""
    if op == 'add':
        return lhs + rhs
    if op == 'sub':
        return lhs - rhs
    if op == 'mul':
        return lhs * rhs
    raise DomainError(f"Unknown Laurent operation: {op}")


def qint(x: Union[int, Fraction, str]) -> MultiLaurent:
    """q-integer [x]_q.

    Integers give 1 + q + ... + q^(x-1). A half-integer x is taken over the
    base q^(1/2): (1 - q^x)/(1 - q^(1/2)) = 1 + q^(1/2) + ... + q^(x-1/2),
    the exact Laurent polynomial on the granularity-2 grid.
    """
    x = to_scalar(x)
    if x < 0:
        raise DomainError(f"q-integer of a negative number: {x}")
    if x.denominator not in (1, 2):
        raise DomainError(f"q-integer needs an integer or half-integer, got {x}")
    step = Fraction(1, x.denominator)
    count = int(x / step)
    return MultiLaurent.from_exponents((i * step, 0, 1) for i in range(count))


def pochhammer(a: MultiLaurent, n: int) -> MultiLaurent:
    """(a;q)_n = (1-a)(1-aq)...(1-aq^(n-1))"""
    result = MultiLaurent.one()
    for i in range(n):
        result = result * (1 - a * Q ** i)
    return result


def divide_exact(f: MultiLaurent, g: MultiLaurent) -> MultiLaurent:
    """Exact quotient f/g in the Laurent ring.

    Long division on lexicographic leading terms. Any quotient of an exact
    division has exponents inside the box [min f - min g, max f - max g] in each
    variable, so a candidate term outside it proves the remainder is nonzero.
    """
    if g.is_zero():
        raise NotDivisibleError("Division by zero")
    if f.is_zero():
        return MultiLaurent.zero()
    common = _common_granularity(f.g, g.g)
    num = f.rescaled_terms(common)
    den = g.rescaled_terms(common)
    nq = [k[0] for k in num]
    ny = [k[1] for k in num]
    dq = [k[0] for k in den]
    dy = [k[1] for k in den]
    q_lo, q_hi = min(nq) - min(dq), max(nq) - max(dq)
    y_lo, y_hi = min(ny) - min(dy), max(ny) - max(dy)
    lead_key = max(den)
    lead_c = den[lead_key]
    quotient: Dict[Key, Fraction] = {}
    remainder = dict(num)
    while remainder:
        rk = max(remainder)
        qk = (rk[0] - lead_key[0], rk[1] - lead_key[1])
        if not (q_lo <= qk[0] <= q_hi and y_lo <= qk[1] <= y_hi):
            qcore_logger.debug(f"Quotient term {qk} left the exponent box, remainder has {len(remainder)} terms")
            raise NotDivisibleError(f"{f} is not divisible by {g}")
        qc = remainder[rk] / lead_c
        quotient[qk] = quotient.get(qk, Fraction(0)) + qc
        for (dqe, dye), dc in den.items():
            key = (qk[0] + dqe, qk[1] + dye)
            value = remainder.get(key, Fraction(0)) - qc * dc
            if value:
                remainder[key] = value
            else:
                remainder.pop(key, None)
    return MultiLaurent(quotient, common)


def invert_q_series(f: MultiLaurent, order: int) -> MultiLaurent:
    """Inverse of a power series in q modulo q^order.

    The q^0 part must be a Laurent unit in y; integer q-exponents only.
    """
    if f.g != 1:
        raise GranularityError("q-series inversion works on integer exponents only")
    if any(qe < 0 for qe, _ in f.terms):
        raise NotInvertibleError(f"{f} has negative powers of q")
    rows: Dict[int, MultiLaurent] = {}
    for (qe, ye), c in f.terms.items():
        rows[qe] = rows.get(qe, MultiLaurent.zero()) + MultiLaurent({(0, ye): c})
    head = rows.get(0, MultiLaurent.zero())
    head_inv = head.monomial_inverse()
    inverse: List[MultiLaurent] = [head_inv]
    for m in range(1, order):
        acc = MultiLaurent.zero()
        for i in range(1, m + 1):
            if i in rows:
                acc = acc + rows[i] * inverse[m - i]
        inverse.append(-head_inv * acc)
    result = MultiLaurent.zero()
    for m, c in enumerate(inverse[:order]):
        result = result + c * Q ** m
    return result


class ZSeries:
    """Power series in z truncated at an explicit order.

    Holds the coefficients of z^0 .. z^order. Binary operations return the
    smaller of the two orders.
    """

    __slots__ = ('_coeffs', '_order')

    def __init__(self, coeffs: Sequence, order: int):
        if order < 0:
            raise DomainError(f"Series order must be nonnegative, got {order}")
        cs = [MultiLaurent.coerce(c) for c in list(coeffs)[:order + 1]]
        cs.extend(MultiLaurent.zero() for _ in range(order + 1 - len(cs)))
        self._coeffs: Tuple[MultiLaurent, ...] = tuple(cs)
        self._order = order
        g = 1
        for c in cs:
            g = lcm(g, c.g)
        if g > MAX_GRANULARITY:
            raise GranularityError(f"Series granularity {g} exceeds the limit {MAX_GRANULARITY}")

    @classmethod
    def constant(cls, c, order: int) -> 'ZSeries':
        return cls([c], order)

    @classmethod
    def monomial(cls, c, power: int, order: int) -> 'ZSeries':
        """c * z^power"""
        return cls([MultiLaurent.zero()] * power + [c], order)

    @classmethod
    def from_function(cls, fn: Callable[[int], object], order: int) -> 'ZSeries':
        return cls([fn(n) for n in range(order + 1)], order)

    @classmethod
    def geometric(cls, c, order: int) -> 'ZSeries':
        """1/(1 - c z) = sum c^n z^n"""
        c = MultiLaurent.coerce(c)
        return cls([c ** n for n in range(order + 1)], order)

    @property
    def order(self) -> int:
        return self._order

    @property
    def coeffs(self) -> Tuple[MultiLaurent, ...]:
        return self._coeffs

    @property
    def g(self) -> int:
        g = 1
        for c in self._coeffs:
            g = lcm(g, c.g)
        return g

    def coefficient(self, n: int) -> MultiLaurent:
        if n > self._order:
            raise DomainError(f"Coefficient z^{n} is beyond the series order {self._order}")
        return self._coeffs[n]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self._coeffs)

    def truncate(self, order: int) -> 'ZSeries':
        if order > self._order:
            raise DomainError(f"Cannot extend a series of order {self._order} to {order}")
        return ZSeries(self._coeffs, order)

    def _coerce_other(self, other) -> 'ZSeries':
        if isinstance(other, ZSeries):
            return other
        return ZSeries.constant(MultiLaurent.coerce(other), self._order)

    def __add__(self, other) -> 'ZSeries':
        other = self._coerce_other(other)
        order = min(self._order, other._order)
        return ZSeries([a + b for a, b in zip(self._coeffs[:order + 1], other._coeffs)], order)

    __radd__ = __add__

    def __neg__(self) -> 'ZSeries':
        return ZSeries([-c for c in self._coeffs], self._order)

    def __sub__(self, other) -> 'ZSeries':
        return self + (-self._coerce_other(other))

    def __rsub__(self, other) -> 'ZSeries':
        return self._coerce_other(other) - self

    def __mul__(self, other) -> 'ZSeries':
        if not isinstance(other, ZSeries):
            c = MultiLaurent.coerce(other)
            return ZSeries([a * c for a in self._coeffs], self._order)
        order = min(self._order, other._order)
        out = []
        for n in range(order + 1):
            acc = MultiLaurent.zero()
            for i in range(n + 1):
                a = self._coeffs[i]
                b = other._coeffs[n - i]
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return ZSeries(out, order)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> 'ZSeries':
        if n < 0:
            return self.inverse() ** (-n)
        result = ZSeries.constant(1, self._order)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, ZSeries):
            return NotImplemented
        return self._order == other._order and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self._order, self._coeffs))

    def shift(self, m: int = 1) -> 'ZSeries':
        """Multiply by z^m; the result is known to order + m"""
        return ZSeries([MultiLaurent.zero()] * m + list(self._coeffs), self._order + m)

    def scale_z(self, c) -> 'ZSeries':
        """f(z) -> f(c z)"""
        c = MultiLaurent.coerce(c)
        power = MultiLaurent.one()
        out = []
        for coeff in self._coeffs:
            out.append(coeff * power)
            power = power * c
        return ZSeries(out, self._order)

    def map_coefficients(self, fn: Callable[[MultiLaurent], MultiLaurent]) -> 'ZSeries':
        return ZSeries([fn(c) for c in self._coeffs], self._order)

    def inverse(self) -> 'ZSeries':
        return series_inverse(self)

    def __str__(self) -> str:
        parts = []
        for n, c in enumerate(self._coeffs):
            if c.is_zero():
                continue
            text = format_laurent(c)
            if n == 0:
                parts.append(text)
            elif n == 1:
                parts.append(f"({text})*z")
            else:
                parts.append(f"({text})*z^{n}")
        body = ' + '.join(parts) if parts else '0'
        return f"{body} + O(z^{self._order + 1})"

    def __repr__(self) -> str:
        return f"ZSeries({self})"


def series_arith(f: ZSeries, g: ZSeries, op: str) -> ZSeries:
    """Exact add/sub/mul of truncated series; the result has the smaller order"""
    if op == 'add':
        return f + g
    if op == 'sub':
        return f - g
    if op == 'mul':
        return f * g
    raise DomainError(f"Unknown series operation: {op}")


def series_inverse(f: ZSeries) -> ZSeries:
    """1/f to the order of f.

    The constant term has to be a single term r*q^a*y^b; anything else is not a
    unit and is rejected.
    """
    head = f.coefficient(0)
    if head.is_zero():
        raise NotInvertibleError("Series with zero constant term is not invertible")
    head_inv = head.monomial_inverse()
    out = [head_inv]
    coeffs = f.coeffs
    for n in range(1, f.order + 1):
        acc = MultiLaurent.zero()
        for i in range(1, n + 1):
            if coeffs[i]:
                acc = acc + coeffs[i] * out[n - i]
        out.append(-head_inv * acc)
    return ZSeries(out, f.order)


def series_scale_substitute(f: ZSeries, c_qexp: Union[int, Fraction], c_scalar: Scalar = 1) -> ZSeries:
    """f(c z) with c = c_scalar * q^c_qexp"""
    c_qexp = Fraction(c_qexp)
    needed = lcm(f.g, c_qexp.denominator)
    if needed > MAX_GRANULARITY:
        raise GranularityError(f"Substituting q^{c_qexp} needs granularity {needed}")
    return f.scale_z(MultiLaurent.monomial(to_scalar(c_scalar), q=c_qexp))


SUBSTITUTION_MODES = ('q_inverse', 'q_power', 'q_one', 'y_specialize', 'y_one')


def substitute_q(f: Union[MultiLaurent, ZSeries], mode: str, a: Union[int, Fraction] = 0,
                 b: Union[int, Fraction] = 1) -> Union[MultiLaurent, ZSeries]:
    """Apply one of the substitutions coefficientwise.

    Modes: ``q_inverse`` (q -> 1/q), ``q_power`` (q -> q^b), ``q_one`` (q = 1),
    ``y_specialize`` (y -> -q^a and q -> q^b), ``y_one`` (y = 1).
    """
    if mode == 'q_inverse':
        fn = MultiLaurent.invert_q
    elif mode == 'q_power':
        fn = lambda c: c.power_q(b)
    elif mode == 'q_one':
        fn = MultiLaurent.at_q_one
    elif mode == 'y_specialize':
        fn = lambda c: c.specialize_y(a, b)
    elif mode == 'y_one':
        fn = MultiLaurent.at_y_one
    else:
        raise DomainError(f"Unknown substitution mode: {mode}")
    if isinstance(f, ZSeries):
        return f.map_coefficients(fn)
    return fn(f)


def evaluate_at_one(f: MultiLaurent) -> Fraction:
    """The rational value at q = y = 1"""
    return f.at_q_one().at_y_one().scalar()


def truncate_q(f: Union[MultiLaurent, ZSeries], order: int) -> Union[MultiLaurent, ZSeries]:
    if isinstance(f, ZSeries):
        return f.map_coefficients(lambda c: c.truncate_q(order))
    return f.truncate_q(order)


def q_polynomial(coefficients: Sequence[Scalar]) -> MultiLaurent:
    """sum c_i q^i from a coefficient list"""
    return MultiLaurent({(i, 0): c for i, c in enumerate(coefficients)})

