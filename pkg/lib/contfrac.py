"""Continued fractions as truncated power series, plus 2x2 Mobius algebra.

S- and T-fractions are evaluated bottom-up at depth N+1: coefficient n of
either fraction only depends on lambda_1 .. lambda_n, so a finite tail gives
the exact first N+1 coefficients.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union
from lib.errors import DomainError, PoleAtOriginError
from lib.logger import contfrac_logger
from lib.qcore import MultiLaurent, Q, Y, Y_INV, ZSeries, qint, series_inverse, to_scalar


@dataclass(frozen=True)
class LambdaSequence:
    """A named, pure generator n -> lambda_n (n >= 1)"""
    name: str
    generator: Callable[[int], MultiLaurent] = field(compare=False)
    params: Tuple = ()

    def term(self, n: int) -> MultiLaurent:
        if n < 1:
            raise DomainError(f"Continued fraction coefficients start at n=1, got {n}")
        return MultiLaurent.coerce(self.generator(n))

    def terms(self, count: int) -> List[MultiLaurent]:
        return [self.term(n) for n in range(1, count + 1)]

    def with_overrides(self, overrides: Mapping[int, MultiLaurent]) -> 'LambdaSequence':
        """Same sequence with some entries replaced"""
        base = self.generator
        return LambdaSequence(f"{self.name}*", lambda n: overrides[n] if n in overrides else base(n), self.params)

    def scaled(self, factor: MultiLaurent) -> 'LambdaSequence':
        base = self.generator
        return LambdaSequence(f"{self.name}_scaled", lambda n: MultiLaurent.coerce(base(n)) * factor, self.params)


def _touchard(n: int) -> MultiLaurent:
    return qint(n)


def _qsecant(n: int) -> MultiLaurent:
    return qint(n) ** 2


def _jtp(n: int) -> MultiLaurent:
    if n % 2:
        return (1 + Q ** n * Y) * (1 + Q ** n * Y_INV)
    return (1 - Q ** n) ** 2


def _genocchi(n: int) -> MultiLaurent:
    if n % 2:
        return qint((n + 1) // 2) ** 2
    return qint(n // 2) * qint(n // 2 + 1)


def _v_seq(n: int) -> MultiLaurent:
    return 1 - Q ** n


def _xi(n: int) -> MultiLaurent:
    m, r = divmod(n - 1, 3)
    if r == 0:
        return (1 - Q ** (2 * m + 1)) ** 3
    if r == 1:
        return (1 - Q ** (2 * m + 1)) * (1 - Q ** (2 * m + 2)) ** 2
    return (1 - Q ** (2 * m + 2)) ** 2 * (1 - Q ** (2 * m + 3))


def _mu(a: Fraction, b: Fraction) -> Callable[[int], MultiLaurent]:
    def term(n: int) -> MultiLaurent:
        if n % 2:
            return qint(n * b + a) * qint(n * b - a)
        return qint(n * b) ** 2
    return term


def _eab(a: Fraction, b: Fraction) -> Callable[[int], MultiLaurent]:
    return lambda n: qint(a + n) * qint(b + n)


def _jtp_scaled(a: Fraction, b: Fraction) -> Callable[[int], MultiLaurent]:
    # (1-q)^2 times the MU(a,b) coefficients
    return lambda n: _jtp(n).specialize_y(a, b)


PRESET_NAMES = ('touchard', 'qsecant', 'jtp', 'jtp_scaled', 'mu', 'genocchi',
                'genocchi_scaled', 'eab', 'v', 'xi')


def lambda_preset(name: str, a: Union[int, Fraction, str, None] = None,
                  b: Union[int, Fraction, str, None] = None) -> LambdaSequence:
    """Look up a named coefficient sequence.

    Args:
        name: One of PRESET_NAMES
        a: First parameter for mu, jtp_scaled and eab
        b: Second parameter for mu, jtp_scaled and eab

    Returns:
        LambdaSequence: The preset
    """
    name = name.lower().replace('-', '_')
    if name in ('mu', 'jtp_scaled', 'eab'):
        if a is None or b is None:
            raise DomainError(f"Preset {name} needs both parameters a and b")
        a, b = to_scalar(a), to_scalar(b)
        if name == 'eab':
            if a.denominator != 1 or b.denominator != 1 or a < 0 or b < 0:
                raise DomainError(f"eab needs nonnegative integers, got a={a}, b={b}")
            return LambdaSequence('eab', _eab(a, b), (a, b))
        if a.denominator not in (1, 2) or b.denominator not in (1, 2):
            raise DomainError(f"{name} needs 2a and 2b integral, got a={a}, b={b}")
        if name == 'mu':
            if a.denominator != b.denominator:
                raise DomainError(f"mu needs a and b both integers or both half-integers, got a={a}, b={b}")
            return LambdaSequence('mu', _mu(a, b), (a, b))
        return LambdaSequence('jtp_scaled', _jtp_scaled(a, b), (a, b))
    simple = {
        'touchard': _touchard,
        'qsecant': _qsecant,
        'jtp': _jtp,
        'genocchi': _genocchi,
        'genocchi_scaled': lambda n: (1 - Q) ** 2 * _genocchi(n),
        'v': _v_seq,
        'xi': _xi,
    }
    if name not in simple:
        raise DomainError(f"Unknown lambda preset: {name}")
    return LambdaSequence(name, simple[name])


def constant_sequence(value) -> LambdaSequence:
    value = MultiLaurent.coerce(value)
    return LambdaSequence(f"const({value})", lambda n: value)


def _z(order: int) -> ZSeries:
    return ZSeries.monomial(1, 1, order)


def eval_s_fraction(lam: LambdaSequence, order: int) -> ZSeries:
    """Coefficients 0..order of 1/(1 - l1 z/(1 - l2 z/(1 - ...)))"""
    if order < 0:
        raise DomainError(f"Series order must be nonnegative, got {order}")
    contfrac_logger.debug(f"S-fraction {lam.name} to order {order}")
    z = _z(order)
    x = ZSeries.constant(1, order)
    for m in range(order, 0, -1):
        coefficient = lam.term(m)
        if coefficient.is_zero():
            x = ZSeries.constant(1, order)
            continue
        x = series_inverse(1 - z * x * coefficient)
    return x


def eval_t_fraction(lam: LambdaSequence, order: int) -> ZSeries:
    """Coefficients 0..order of 1/(1+z - l1 z/(1+z - l2 z/(1+z - ...)))"""
    if order < 0:
        raise DomainError(f"Series order must be nonnegative, got {order}")
    contfrac_logger.debug(f"T-fraction {lam.name} to order {order}")
    z = _z(order)
    x = series_inverse(1 + z)
    for m in range(order, 0, -1):
        x = series_inverse(1 + z - z * x * lam.term(m))
    return x


def ballot(n: int, k: int) -> Fraction:
    """C(2n, n-k) - C(2n, n-k-1), the Dyck prefixes of length 2n ending at height 2k"""
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"ballot({n}, {k}) needs 0 <= k <= n")
    lower = comb(2 * n, n - k - 1) if n - k - 1 >= 0 else 0
    return Fraction(comb(2 * n, n - k) - lower)


def catalan(n: int) -> Fraction:
    return ballot(n, 0)


def s_coeffs_from_t(nu: Sequence, order: int) -> List:
    """mu_n = sum_k ballot(n,k) nu_k for n <= order"""
    if len(nu) < order + 1:
        raise DomainError(f"Need {order + 1} coefficients, got {len(nu)}")
    out = []
    for n in range(order + 1):
        acc = 0 * nu[0]
        for k in range(n + 1):
            acc = acc + ballot(n, k) * nu[k]
        out.append(acc)
    return out


def t_coeffs_from_s(mu: Sequence, order: int) -> List:
    """Inverse transform nu_n = sum_k (-1)^(n-k) C(n+k, n-k) mu_k"""
    if len(mu) < order + 1:
        raise DomainError(f"Need {order + 1} coefficients, got {len(mu)}")
    out = []
    for n in range(order + 1):
        acc = 0 * mu[0]
        for k in range(n + 1):
            sign = -1 if (n - k) % 2 else 1
            acc = acc + Fraction(sign * comb(n + k, n - k)) * mu[k]
        out.append(acc)
    return out


def verify_lagrange_identity(k: int, order: int) -> ZSeries:
    """Residual of sum_{n>=k} ballot(n,k) u^n - (1+z) z^k with u = z/(1+z)^2"""
    if not 0 <= k <= order:
        raise DomainError(f"Lagrange check needs 0 <= k <= order, got k={k}, order={order}")
    z = _z(order)
    u = z * series_inverse((1 + z) ** 2)
    power = u ** k
    total = ZSeries.constant(0, order)
    for n in range(k, order + 1):
        total = total + power * ballot(n, k)
        power = power * u
    return total - (1 + z) * z ** k


def _indexed(c: Sequence[MultiLaurent], needed: int) -> Callable[[int], MultiLaurent]:
    if len(c) < needed:
        raise DomainError(f"Need coefficients c_1..c_{needed}, got {len(c)}")
    values = [MultiLaurent.coerce(v) for v in c]
    return lambda i: values[i - 1]


def plus_fraction(c: Sequence[MultiLaurent], order: int, power: int = 1) -> ZSeries:
    """z/(1 + c1 z^p/(1 + c2 z^p/(1 + ...))) to the given order"""
    depth = max(order // power, 1)
    cc = _indexed(c, depth)
    z = _z(order)
    zp = z ** power
    x = ZSeries.constant(1, order)
    for m in range(depth, 0, -1):
        x = series_inverse(1 + zp * x * cc(m))
    return z * x


def contract_fraction(c: Sequence[MultiLaurent], which: str, order: int) -> ZSeries:
    """Even-part contractions of the plus-sign fraction z/1 + c1 z/1 + c2 z/1 + ...

    ``first``:  z/(1 + c1 z - c1c2 z^2/(1 + (c2+c3) z - c3c4 z^2/(1 + ...)))
    ``second``: z - c1 z^2/(1 + (c1+c2) z - c2c3 z^2/(1 + (c3+c4) z - ...))
    """
    z = _z(order)
    x = ZSeries.constant(1, order)
    if which == 'first':
        cc = _indexed(c, 2 * order + 2)
        for j in range(order, 0, -1):
            head = 1 + z * (cc(2 * j) + cc(2 * j + 1))
            x = series_inverse(head - z * z * x * (cc(2 * j + 1) * cc(2 * j + 2)))
        x = series_inverse(1 + z * cc(1) - z * z * x * (cc(1) * cc(2)))
        return z * x
    if which == 'second':
        cc = _indexed(c, 2 * order + 1)
        for j in range(order, 0, -1):
            head = 1 + z * (cc(2 * j - 1) + cc(2 * j))
            x = series_inverse(head - z * z * x * (cc(2 * j) * cc(2 * j + 1)))
        return z - z * z * x * cc(1)
    raise DomainError(f"Unknown contraction: {which}")


def dumont_coefficients(a: MultiLaurent, count: int) -> List[MultiLaurent]:
    """c_{4n}=-2n, c_{4n+1}=2n+1+a, c_{4n+2}=-2n-1+a, c_{4n+3}=2n+2 for m=1..count"""
    out = []
    for m in range(1, count + 1):
        n, r = divmod(m, 4)
        if r == 0:
            out.append(MultiLaurent.constant(-2 * n))
        elif r == 1:
            out.append(a + (2 * n + 1))
        elif r == 2:
            out.append(a - (2 * n + 1))
        else:
            out.append(MultiLaurent.constant(2 * n + 2))
    return out


class ZPolynomial:
    """Polynomial in z with MultiLaurent coefficients (exact, untruncated)"""

    __slots__ = ('_coeffs',)

    def __init__(self, coeffs: Sequence = ()):
        cs = [MultiLaurent.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self._coeffs: Tuple[MultiLaurent, ...] = tuple(cs)

    @classmethod
    def z(cls) -> 'ZPolynomial':
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> 'ZPolynomial':
        return cls([c])

    @classmethod
    def coerce(cls, value) -> 'ZPolynomial':
        if isinstance(value, ZPolynomial):
            return value
        return cls.constant(MultiLaurent.coerce(value))

    @property
    def coeffs(self) -> Tuple[MultiLaurent, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def coefficient(self, i: int) -> MultiLaurent:
        return self._coeffs[i] if i < len(self._coeffs) else MultiLaurent.zero()

    def is_zero(self) -> bool:
        return not self._coeffs

    def __add__(self, other) -> 'ZPolynomial':
        other = ZPolynomial.coerce(other)
        size = max(len(self._coeffs), len(other._coeffs))
        return ZPolynomial([self.coefficient(i) + other.coefficient(i) for i in range(size)])

    __radd__ = __add__

    def __neg__(self) -> 'ZPolynomial':
        return ZPolynomial([-c for c in self._coeffs])

    def __sub__(self, other) -> 'ZPolynomial':
        return self + (-ZPolynomial.coerce(other))

    def __rsub__(self, other) -> 'ZPolynomial':
        return ZPolynomial.coerce(other) - self

    def __mul__(self, other) -> 'ZPolynomial':
        other = ZPolynomial.coerce(other)
        if self.is_zero() or other.is_zero():
            return ZPolynomial()
        out = [MultiLaurent.zero()] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other._coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return ZPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> 'ZPolynomial':
        result = ZPolynomial.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, ZPolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def scale_z(self, c) -> 'ZPolynomial':
        """p(z) -> p(c z)"""
        c = MultiLaurent.coerce(c)
        return ZPolynomial([coeff * c ** i for i, coeff in enumerate(self._coeffs)])

    def to_series(self, order: int) -> ZSeries:
        return ZSeries(self._coeffs, order)

    def __str__(self) -> str:
        return str(self.to_series(max(self.degree, 0))).rsplit(' + O(', 1)[0]


@dataclass(frozen=True)
class Mobius2x2:
    """The matrix [[a, b], [c, d]] acting as X -> (aX + b)/(cX + d)"""
    a: ZPolynomial
    b: ZPolynomial
    c: ZPolynomial
    d: ZPolynomial

    def __post_init__(self):
        for name in ('a', 'b', 'c', 'd'):
            object.__setattr__(self, name, ZPolynomial.coerce(getattr(self, name)))
        if self.determinant().is_zero():
            raise DomainError("Mobius matrix has zero determinant")

    @classmethod
    def identity(cls) -> 'Mobius2x2':
        return cls(ZPolynomial.constant(1), ZPolynomial(), ZPolynomial(), ZPolynomial.constant(1))

    def entries(self) -> Tuple[ZPolynomial, ZPolynomial, ZPolynomial, ZPolynomial]:
        return (self.a, self.b, self.c, self.d)

    def determinant(self) -> ZPolynomial:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: 'Mobius2x2') -> 'Mobius2x2':
        return Mobius2x2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def scale_z(self, c) -> 'Mobius2x2':
        return Mobius2x2(*(e.scale_z(c) for e in self.entries()))

    def replace(self, index: int, value) -> 'Mobius2x2':
        entries = list(self.entries())
        entries[index] = ZPolynomial.coerce(value)
        return Mobius2x2(*entries)

    def is_proportional(self, other: 'Mobius2x2') -> bool:
        """True when every 2x2 cross product of the flattened entries vanishes"""
        mine, theirs = self.entries(), other.entries()
        for i in range(4):
            for j in range(i + 1, 4):
                if not (mine[i] * theirs[j] - mine[j] * theirs[i]).is_zero():
                    return False
        return True

    def proportionality(self, other: 'Mobius2x2') -> Optional[Tuple[ZPolynomial, ZPolynomial]]:
        """(num, den) with other = (num/den) * self, or None if not proportional"""
        if not self.is_proportional(other):
            return None
        for mine, theirs in zip(self.entries(), other.entries()):
            if not mine.is_zero():
                return (theirs, mine)
        return None


def _poly(*coeffs) -> ZPolynomial:
    return ZPolynomial(coeffs)


Z = ZPolynomial.z()


def m_matrix(w: MultiLaurent) -> Mobius2x2:
    """Two T-fraction levels with l_odd = (1+wqy)(1+wq/y), l_even = (1-wq^2)^2"""
    w = MultiLaurent.coerce(w)
    even = (1 - w * Q ** 2) ** 2
    odd = (1 + w * Q * Y) * (1 + w * Q * Y_INV)
    one_z = 1 + Z
    return Mobius2x2(Z * even, -one_z, one_z * Z * even, Z * odd - one_z * one_z)


def n_matrix(w: MultiLaurent) -> Mobius2x2:
    """Two T-fraction levels with l_odd = (1-wq)^2, l_even = (1-wq)(1-wq^2)"""
    w = MultiLaurent.coerce(w)
    even = (1 - w * Q) * (1 - w * Q ** 2)
    odd = (1 - w * Q) ** 2
    one_z = 1 + Z
    return Mobius2x2(Z * even, -one_z, one_z * Z * even, Z * odd - one_z * one_z)


def _theta_denominator() -> ZPolynomial:
    # (1 - yzq)(1 - zq/y)
    return _poly(1, -Q * (Y + Y_INV), Q ** 2)


def s_matrix() -> Mobius2x2:
    """X -> 1/(1-yqz) + 1/(1-qz/y) - 1 + zq^2 X, denominators cleared"""
    den = _theta_denominator()
    return Mobius2x2(Z * Q ** 2 * den, _poly(1, 0, -Q ** 2), ZPolynomial(), den)


def p_matrix() -> Mobius2x2:
    """X -> (1 + (q-1) z X)/(1+z)^2"""
    return Mobius2x2(Z * (Q - 1), ZPolynomial.constant(1), ZPolynomial(), (1 + Z) ** 2)


def r_matrix() -> Mobius2x2:
    """X -> (1-z)/(1+z)^2 + qzX"""
    return Mobius2x2(Z * Q * (1 + Z) ** 2, 1 - Z, ZPolynomial(), (1 + Z) ** 2)


def omega_matrix(n: int) -> Mobius2x2:
    """Numerator matrix of Omega_n, before division by (1-yzq)(1-zq/y)"""
    if n < 0:
        raise DomainError(f"omega_matrix needs n >= 0, got {n}")
    y_sum = Y + Y_INV
    q2n = Q ** (2 * n)
    a = Z * Q ** 2 * _poly(2 * q2n - 1, -q2n * Q * y_sum, Q ** 2)
    b = _poly(1, 0, -Q ** 2)
    c = Z * Q ** 2 * (1 - q2n) ** 2 * _poly(-1, 0, Q ** 2)
    d = _poly(1, -q2n * Q * y_sum, 2 * q2n * Q ** 2 - Q ** 2)
    return Mobius2x2(a, b, c, d)


def lambda_matrix(n: int) -> Mobius2x2:
    """Lambda_n in closed form"""
    if n < 0:
        raise DomainError(f"lambda_matrix needs n >= 0, got {n}")
    qn = Q ** n
    a = Z * Q * _poly(qn * Q + qn - 1, 2 * qn * Q, Q)
    b = _poly(1, 0, -Q)
    c = Z * Q * (1 - qn) * (1 - qn * Q) * _poly(-1, 0, Q)
    d = _poly(1, 2 * qn * Q, qn * Q ** 2 + qn * Q - Q)
    return Mobius2x2(a, b, c, d)


def _recurrence_sides(which: str, n: int) -> Tuple[Mobius2x2, Mobius2x2]:
    if which == 'omega':
        step = m_matrix(Q ** (2 * n))
        return step @ omega_matrix(n + 1), omega_matrix(n) @ step.scale_z(Q ** 2)
    if which == 'lambda':
        step = n_matrix(Q ** n)
        return step @ lambda_matrix(n + 1), lambda_matrix(n) @ step.scale_z(Q)
    raise DomainError(f"Unknown matrix family: {which}")


def verify_matrix_recurrence(which: str, n: int, next_matrix: Optional[Mobius2x2] = None) -> bool:
    """Projective check of M(q^2n,z) Omega_{n+1} ~ Omega_n M(q^2n,zq^2).

    The lambda family uses N(q^n,z) Lambda_{n+1} ~ Lambda_n N(q^n,qz). Passing
    ``next_matrix`` replaces Omega_{n+1} (or Lambda_{n+1}) on the left.
    """
    if n < 0:
        raise DomainError(f"Recurrence index must be nonnegative, got {n}")
    left, right = _recurrence_sides(which, n)
    if next_matrix is not None:
        step = m_matrix(Q ** (2 * n)) if which == 'omega' else n_matrix(Q ** n)
        left = step @ next_matrix
    verdict = left.is_proportional(right)
    contfrac_logger.debug(f"{which} recurrence at n={n}: {verdict}")
    return verdict


def recurrence_scalar(which: str, n: int) -> Optional[Tuple[ZPolynomial, ZPolynomial]]:
    """The proportionality factor between the two sides of the recurrence"""
    left, right = _recurrence_sides(which, n)
    return left.proportionality(right)


def verify_base_cases() -> Dict[str, bool]:
    """Omega_0 ~ S and P(z) Lambda_0 ~ R P(qz)"""
    return {
        'omega_0_is_s': omega_matrix(0).is_proportional(s_matrix()),
        'lambda_0_conjugate': (p_matrix() @ lambda_matrix(0)).is_proportional(
            r_matrix() @ p_matrix().scale_z(Q)),
    }


def mobius_apply(m: Mobius2x2, f: ZSeries, order: int) -> ZSeries:
    """(a f + b)/(c f + d) as a series to the given order"""
    f = f.truncate(order) if f.order > order else f
    numerator = m.a.to_series(order) * f + m.b.to_series(order)
    denominator = m.c.to_series(order) * f + m.d.to_series(order)
    if denominator.coefficient(0).is_zero():
        raise PoleAtOriginError("Denominator of the Mobius action vanishes at z=0")
    return numerator * series_inverse(denominator)


def continued_fraction_product(which: str, order: int) -> ZSeries:
    """Evaluate M(1,z) M(q^2,z) ... [0] (or N(1,z) N(q,z) ... [0]) to the given order.

    Reproduces the jtp (resp. genocchi_scaled) T-fraction.
    """
    depth = order // 2 + 1
    product = Mobius2x2.identity()
    for i in range(depth):
        if which == 'omega':
            product = product @ m_matrix(Q ** (2 * i))
        elif which == 'lambda':
            product = product @ n_matrix(Q ** i)
        else:
            raise DomainError(f"Unknown matrix family: {which}")
    return mobius_apply(product, ZSeries.constant(0, order), order)


def w_series(which: str, n: int, order: int) -> ZSeries:
    """Omega_n[0] or Lambda_n[0] as a power series"""
    m = omega_matrix(n) if which == 'omega' else lambda_matrix(n)
    return mobius_apply(m, ZSeries.constant(0, order), order)
