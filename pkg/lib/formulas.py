"""Named formula families and the identities relating them.

Every closed form whose printed version carries a (1-q)^(-m) prefactor is
computed as an exact quotient: a remainder raises NotDivisibleError, which is
how a broken identity shows up.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import comb, factorial
from typing import List, Mapping, Optional, Sequence, Tuple, Union
from lib.contfrac import (LambdaSequence, ballot, catalan, eval_s_fraction, eval_t_fraction,
                          lambda_preset, plus_fraction, t_coeffs_from_s)
from lib.errors import DomainError
from lib.logger import formulas_logger
from lib.qcore import (MultiLaurent, ONE, Q, Y, Y_INV, ZSeries, divide_exact, evaluate_at_one,
                       invert_q_series, series_inverse, series_scale_substitute, to_scalar)

Rational = Union[int, Fraction, str]

FUNEQ_IDS = ('H', 'T_JTP', 'F_GEN', 'G_GEN')
PRODUCT_IDS = ('gauss', 'jtp', 'cube', 'pochhammer', 'ab')
GENOCCHI_FORMS = ('GY', 'PK')
HANKEL_FAMILIES = ('jtp_moments', 'genocchi_moments')
CONGRUENCE_SCHEMES = ('wt_q', 'wt_yq', 'wt_ab', 'wt_prime')


def _check_nonnegative(name: str, n: int):
    if n < 0:
        raise DomainError(f"{name} needs a nonnegative index, got {n}")


def _one_minus_q_power(m: int) -> MultiLaurent:
    return (1 - Q) ** m


# Touchard-Riordan, q-secant and the finite triple product

@dataclass(frozen=True)
class ThetaSum:
    k: int
    value: MultiLaurent


def theta_sum(k: int) -> ThetaSum:
    """sum_{j=-k}^{k} y^j q^(k(k+1)-j^2)"""
    _check_nonnegative('theta_sum', k)
    value = MultiLaurent.from_exponents(
        (Fraction(k * (k + 1) - j * j), j, 1) for j in range(-k, k + 1))
    return ThetaSum(k, value)


def gauss_sum(k: int) -> MultiLaurent:
    """sum_{i=-k}^{k} (-q)^(i^2)"""
    _check_nonnegative('gauss_sum', k)
    return MultiLaurent.from_exponents(
        (Fraction(i * i), 0, -1 if i % 2 else 1) for i in range(-k, k + 1))


def triple_sum(k: int) -> MultiLaurent:
    """sum_{i=-k}^{k} y^i q^(i^2)"""
    _check_nonnegative('triple_sum', k)
    return MultiLaurent.from_exponents((Fraction(i * i), i, 1) for i in range(-k, k + 1))


def rhs_touchard(n: int) -> MultiLaurent:
    _check_nonnegative('rhs_touchard', n)
    numerator = MultiLaurent.zero()
    for k in range(n + 1):
        sign = -1 if k % 2 else 1
        numerator = numerator + MultiLaurent.monomial(sign * ballot(n, k), comb(k + 1, 2))
    return divide_exact(numerator, _one_minus_q_power(n))


def jtp_cleared(n: int) -> MultiLaurent:
    """sum_k ballot(n,k) theta_sum(k), the n-th S-fraction coefficient of the jtp preset"""
    _check_nonnegative('jtp_cleared', n)
    total = MultiLaurent.zero()
    for k in range(n + 1):
        total = total + theta_sum(k).value * ballot(n, k)
    return total


@dataclass(frozen=True)
class Prefactored:
    """numerator / (1-q)^power, left unreduced while y is free"""
    numerator: MultiLaurent
    power: int

    def specialize_y(self, a: Rational, b: Rational = 1) -> MultiLaurent:
        """y -> -q^a and q -> q^b, then the exact quotient"""
        a, b = Fraction(a), Fraction(b)
        denominator = _one_minus_q_power(self.power).specialize_y(0, b)
        return divide_exact(self.numerator.specialize_y(a, b), denominator)

    def __str__(self) -> str:
        return f"({self.numerator}) / (1 - q)^{self.power}"


def rhs_jtp(n: int) -> Prefactored:
    """(1-q)^(-2n) sum_k ballot(n,k) theta_sum(k)"""
    _check_nonnegative('rhs_jtp', n)
    return Prefactored(jtp_cleared(n), 2 * n)


def rhs_qsecant(n: int) -> MultiLaurent:
    _check_nonnegative('rhs_qsecant', n)
    return rhs_jtp(n).specialize_y(0, 1)


def h_series(order: int) -> ZSeries:
    """sum_k theta_sum(k) z^k"""
    _check_nonnegative('h_series', order)
    return ZSeries.from_function(lambda k: theta_sum(k).value, order)


# mu_n(a,b,q)

def _mu_parameters(a: Rational, b: Rational) -> Tuple[Fraction, Fraction]:
    a, b = to_scalar(a), to_scalar(b)
    if a < 0:
        raise DomainError(f"mu needs a >= 0, got {a}")
    return a, b


def mu(n: int, a: Rational, b: Rational) -> MultiLaurent:
    """[z^n] of the S-fraction with l_odd = [nb+a][nb-a], l_even = [nb]^2"""
    _check_nonnegative('mu', n)
    a, b = _mu_parameters(a, b)
    return eval_s_fraction(lambda_preset('mu', a, b), n).coefficient(n)


def mu_rhs(n: int, a: Rational, b: Rational) -> MultiLaurent:
    """(1-q)^(-2n) sum_k ballot(n,k) sum_j (-1)^j q^(aj + b(k(k+1)-j^2))"""
    _check_nonnegative('mu_rhs', n)
    a, b = _mu_parameters(a, b)
    lambda_preset('mu', a, b)  # parameter validation
    numerator = MultiLaurent.zero()
    for k in range(n + 1):
        numerator = numerator + theta_sum(k).value.specialize_y(a, b) * ballot(n, k)
    return divide_exact(numerator, _one_minus_q_power(2 * n))


def mu_has_nonnegative_integer_coefficients(a: Rational, b: Rational) -> bool:
    """Whether (a,b) lies in the regime where mu_n is a polynomial with nonnegative integer coefficients"""
    a, b = _mu_parameters(a, b)
    if a.denominator != b.denominator:
        return False
    return a < b


def mu_at_one(n: int, a: Rational, b: Rational) -> Fraction:
    return evaluate_at_one(mu(n, a, b))


def _cos_series(c: Fraction, order: int) -> ZSeries:
    coeffs = []
    for m in range(order + 1):
        if m % 2:
            coeffs.append(0)
        else:
            sign = -1 if (m // 2) % 2 else 1
            coeffs.append(Fraction(sign) * c ** m / factorial(m))
    return ZSeries(coeffs, order)


def cos_ratio_series(a: Rational, b: Rational, order: int) -> ZSeries:
    """Taylor series of cos(az)/cos(bz) over the rationals"""
    a, b = to_scalar(a), to_scalar(b)
    return _cos_series(a, order) * series_inverse(_cos_series(b, order))


def tan_half_series(order: int) -> ZSeries:
    """Taylor series of z*tan(z/2) over the rationals"""
    sin_half = ZSeries([
        0 if m % 2 == 0 else Fraction(-1 if (m // 2) % 2 else 1, factorial(m) * 2 ** m)
        for m in range(order + 1)
    ], order)
    tan_half = sin_half * series_inverse(_cos_series(Fraction(1, 2), order))
    return tan_half.shift(1).truncate(order)


def egf_check_cos(a: Rational, b: Rational, max_n: int) -> bool:
    """mu_n(a,b,1) = (2n)! [z^2n] cos(az)/cos(bz) for n <= max_n"""
    series = cos_ratio_series(a, b, 2 * max_n)
    for n in range(max_n + 1):
        expected = series.coefficient(2 * n).scalar() * factorial(2 * n)
        actual = mu_at_one(n, a, b)
        if actual != expected:
            formulas_logger.debug(f"cos ratio ({a},{b}) differs at n={n}: {actual} != {expected}")
            return False
    return True


def egf_check_genocchi(max_n: int) -> bool:
    """G_2n(1) = (2n)! [z^2n] z tan(z/2) for 1 <= n <= max_n"""
    series = tan_half_series(2 * max_n)
    for n in range(1, max_n + 1):
        expected = series.coefficient(2 * n).scalar() * factorial(2 * n)
        actual = evaluate_at_one(genocchi(n))
        if actual != expected:
            formulas_logger.debug(f"Genocchi at q=1 differs at n={n}: {actual} != {expected}")
            return False
    return True


def _cosh_formal(order: int) -> ZSeries:
    # cosh(az) with a carried in the y slot
    return ZSeries([
        MultiLaurent.monomial(Fraction(1, factorial(m)), 0, m) if m % 2 == 0 else 0
        for m in range(order + 1)
    ], order)


def _cosh_plain(order: int) -> ZSeries:
    return ZSeries([Fraction(1, factorial(m)) if m % 2 == 0 else 0 for m in range(order + 1)], order)


def laplace_series(max_n: int) -> ZSeries:
    """Formal Laplace transform (z^n/n! -> z^(n+1)) of cosh(az)/cosh(z) to order 2N+1"""
    ratio = _cosh_formal(2 * max_n) * series_inverse(_cosh_plain(2 * max_n))
    return ZSeries([0] + [c * factorial(n) for n, c in enumerate(ratio.coeffs)], 2 * max_n + 1)


def laplace_fraction(max_n: int) -> ZSeries:
    """z/(1 + (1-a^2)z^2/(1 + 4z^2/(1 + (9-a^2)z^2/(1 + ...)))) with a in the y slot"""
    numerators = [m * m - Y ** 2 if m % 2 else MultiLaurent.constant(m * m)
                  for m in range(1, max_n + 2)]
    return plus_fraction(numerators, 2 * max_n + 1, power=2)


def laplace_check(max_n: int) -> bool:
    """Both sides agree to order 2N+1.

    The formal parameter lives in the y slot, so the check never mixes with a
    genuine y.
    """
    if max_n < 0:
        raise DomainError(f"laplace_check needs N >= 0, got {max_n}")
    return laplace_series(max_n) == laplace_fraction(max_n)


# q-Genocchi

def p_poly(k: int) -> MultiLaurent:
    """P_k = sum_{i=0}^{k} (-1)^i (2i+1) q^(C(k+1,2) - C(i+1,2)); P_-1 = 0"""
    if k < 0:
        return MultiLaurent.zero()
    top = comb(k + 1, 2)
    return MultiLaurent.from_exponents(
        (Fraction(top - comb(i + 1, 2)), 0, (-1 if i % 2 else 1) * (2 * i + 1)) for i in range(k + 1))


def _y_numerator(k: int, perturb: Optional[Mapping[int, MultiLaurent]] = None) -> MultiLaurent:
    # (q-1) Y_k
    def p(i: int) -> MultiLaurent:
        value = p_poly(i)
        if perturb and i in perturb:
            value = value + perturb[i]
        return value
    return p(k - 1) + 2 * p(k) + p(k + 1)


def y_poly(k: int) -> MultiLaurent:
    """Y_k = (P_{k-1} + 2P_k + P_{k+1})/(q-1); a remainder raises NotDivisibleError"""
    _check_nonnegative('y_poly', k)
    return divide_exact(_y_numerator(k), Q - 1)


def w_poly(k: int) -> MultiLaurent:
    """[z^k] of the T-fraction with the scaled Genocchi coefficients"""
    _check_nonnegative('w_poly', k)
    return eval_t_fraction(lambda_preset('genocchi_scaled'), k).coefficient(k)


@dataclass(frozen=True)
class GenocchiPair:
    """P_0..P_K together with Y_0..Y_K"""
    P: Tuple[MultiLaurent, ...]
    Y: Tuple[MultiLaurent, ...]

    @classmethod
    def build(cls, count: int) -> 'GenocchiPair':
        return cls(tuple(p_poly(k) for k in range(count + 1)),
                   tuple(y_poly(k) for k in range(count + 1)))

    def is_consistent(self) -> bool:
        for k, y in enumerate(self.Y):
            previous = self.P[k - 1] if k >= 1 else MultiLaurent.zero()
            following = self.P[k + 1] if k + 1 < len(self.P) else p_poly(k + 1)
            if y * (Q - 1) != previous + 2 * self.P[k] + following:
                return False
        return True


def genocchi(n: int) -> MultiLaurent:
    """G_2n(q) = [z^(n-1)] of the Genocchi S-fraction"""
    if n < 1:
        raise DomainError(f"Genocchi numbers start at n=1, got {n}")
    return eval_s_fraction(lambda_preset('genocchi'), n - 1).coefficient(n - 1)


def genocchi_rhs(n: int, form: str = 'GY') -> MultiLaurent:
    """G_2n from the Y_k expansion (GY) or straight from the P_k (PK)"""
    if n < 1:
        raise DomainError(f"Genocchi numbers start at n=1, got {n}")
    form = form.upper()
    if form == 'GY':
        m = n - 1
        numerator = MultiLaurent.zero()
        for k in range(m + 1):
            numerator = numerator + y_poly(k) * ballot(m, k)
        return divide_exact(numerator, _one_minus_q_power(2 * m))
    if form == 'PK':
        numerator = MultiLaurent.constant(catalan(n - 1))
        for k in range(n + 1):
            numerator = numerator + p_poly(k) * ballot(n, k)
        return divide_exact(numerator, (Q - 1) ** (2 * n - 1))
    raise DomainError(f"Unknown Genocchi form: {form}")


def f_series(order: int) -> ZSeries:
    """sum_k P_k z^k"""
    return ZSeries.from_function(p_poly, order)


def _f_from_y(order: int, perturb: Optional[Mapping[int, MultiLaurent]] = None) -> ZSeries:
    # (1+z)^-2 (1 + z (q-1) sum Y_k z^k) with (q-1)Y_k left undivided
    z = ZSeries.monomial(1, 1, order)
    body = ZSeries.from_function(lambda k: _y_numerator(k, perturb), order)
    return (1 + z * body) * series_inverse((1 + z) ** 2)


def g_series(order: int, lam: Optional[LambdaSequence] = None) -> ZSeries:
    """(1+z)^-2 (1 + z(q-1) T(z)), T the scaled Genocchi T-fraction"""
    lam = lam or lambda_preset('genocchi_scaled')
    z = ZSeries.monomial(1, 1, order)
    t = eval_t_fraction(lam, order)
    return (1 + z * t * (Q - 1)) * series_inverse((1 + z) ** 2)


# Functional equations

def _theta_head(order: int) -> ZSeries:
    return ZSeries.geometric(Q * Y, order) + ZSeries.geometric(Q * Y_INV, order) - 1


def _genocchi_head(order: int) -> ZSeries:
    z = ZSeries.monomial(1, 1, order)
    return (1 - z) * series_inverse((1 + z) ** 2)


def _overridden(lam: LambdaSequence, perturb: Optional[Mapping[int, MultiLaurent]]) -> LambdaSequence:
    if not perturb:
        return lam
    return lam.with_overrides({n: lam.term(n) + delta for n, delta in perturb.items()})


def functional_series(name: str, order: int,
                      perturb: Optional[Mapping[int, MultiLaurent]] = None) -> ZSeries:
    """The series a functional equation is checked on.

    ``perturb`` adds a value to one underlying term: the theta sum of index k
    for H, lambda_k for T_JTP and G_GEN, P_k for F_GEN.
    """
    perturb = {k: MultiLaurent.coerce(v) for k, v in (perturb or {}).items()}
    if name == 'H':
        return ZSeries.from_function(
            lambda k: theta_sum(k).value + perturb.get(k, MultiLaurent.zero()), order)
    if name == 'T_JTP':
        return eval_t_fraction(_overridden(lambda_preset('jtp'), perturb), order)
    if name == 'F_GEN':
        return _f_from_y(order, perturb)
    if name == 'G_GEN':
        return g_series(order, _overridden(lambda_preset('genocchi_scaled'), perturb))
    raise DomainError(f"Unknown functional equation: {name}")


def verify_functional_equation(name: str, order: int,
                               perturb: Optional[Mapping[int, MultiLaurent]] = None) -> ZSeries:
    """Residual LHS - RHS to order N-1.

    H and T_JTP: X(z) = 1/(1-yqz) + 1/(1-qz/y) - 1 + zq^2 X(zq^2).
    F_GEN and G_GEN: X(z) = (1-z)/(1+z)^2 + qz X(qz).
    """
    name = name.upper()
    if name not in FUNEQ_IDS:
        raise DomainError(f"Unknown functional equation: {name}")
    if order < 1:
        raise DomainError(f"Functional equation check needs N >= 1, got {order}")
    x = functional_series(name, order, perturb)
    if name in ('H', 'T_JTP'):
        rhs = _theta_head(order) + series_scale_substitute(x, 2).shift(1) * Q ** 2
    else:
        rhs = _genocchi_head(order) + series_scale_substitute(x, 1).shift(1) * Q
    residual = (x - rhs).truncate(order - 1)
    formulas_logger.debug(f"{name} residual to order {order - 1}: {'zero' if residual.is_zero() else 'nonzero'}")
    return residual


# E^{a,b} and T_k^{a,b}

def _check_ab(a: int, b: int):
    if not isinstance(a, int) or not isinstance(b, int) or a < 0 or b < 0:
        raise DomainError(f"E^(a,b) needs nonnegative integers, got a={a}, b={b}")


def e_ab(n: int, a: int, b: int) -> MultiLaurent:
    """[z^n] of the S-fraction with l_n = [a+n][b+n]"""
    _check_nonnegative('e_ab', n)
    _check_ab(a, b)
    return eval_s_fraction(lambda_preset('eab', a, b), n).coefficient(n)


def t_ab_sequence(k: int, a: int, b: int) -> List[MultiLaurent]:
    """T_0^(a,b) .. T_k^(a,b) by triangular inversion.

    (1-q)^(2n) E_n = sum_k ballot(n,k) q^(k(k+1+a+b)) T_k(1/q), and ballot(n,n)=1.
    """
    _check_nonnegative('t_ab', k)
    _check_ab(a, b)
    series = eval_s_fraction(lambda_preset('eab', a, b), k)
    cleared = [series.coefficient(n) * _one_minus_q_power(2 * n) for n in range(k + 1)]
    shifted = t_coeffs_from_s(cleared, k)
    return [(u * MultiLaurent.monomial(1, -m * (m + 1 + a + b))).invert_q() for m, u in enumerate(shifted)]


def t_ab(k: int, a: int, b: int) -> MultiLaurent:
    return t_ab_sequence(k, a, b)[k]


def t_ab_congruence(k: int, a: int, b: int) -> bool:
    """T_k^(a,b) is a polynomial and agrees with the (a,b) product mod q^k"""
    value = t_ab(k, a, b)
    if not value.is_polynomial_in_q():
        formulas_logger.debug(f"T_{k}^({a},{b}) is not a polynomial: {value}")
        return False
    return value.truncate_q(k) == truncated_products('ab', k, a=a, b=b)


# Truncated infinite products

def truncated_products(name: str, order: int, a: int = 0, b: int = 0,
                       base: Optional[MultiLaurent] = None) -> MultiLaurent:
    """An infinite product modulo q^order.

    Factors of index above ``order`` are dropped before expanding, then
    everything of q-degree >= order is discarded.

    * gauss: prod (1-q^i)/(1+q^i)
    * jtp: prod (1-q^2i)(1+yq^(2i-1))(1+q^(2i-1)/y)
    * cube: prod (1-q^i)^3
    * pochhammer: (base;q)_inf, base defaulting to q
    * ab: (q;q)_inf/(-q;q)_inf divided by (q;q)_a (q;q)_b
    """
    _check_nonnegative('truncated_products', order)
    if order == 0:
        return MultiLaurent.zero()
    product = ONE
    if name == 'gauss':
        numerator, denominator = ONE, ONE
        for i in range(1, order + 1):
            numerator = (numerator * (1 - Q ** i)).truncate_q(order)
            denominator = (denominator * (1 + Q ** i)).truncate_q(order)
        product = numerator * invert_q_series(denominator, order)
    elif name == 'jtp':
        for i in range(1, order + 1):
            factor = (1 - Q ** (2 * i)) * (1 + Y * Q ** (2 * i - 1)) * (1 + Y_INV * Q ** (2 * i - 1))
            product = (product * factor).truncate_q(order)
    elif name == 'cube':
        for i in range(1, order + 1):
            product = (product * (1 - Q ** i) ** 3).truncate_q(order)
    elif name == 'pochhammer':
        base = Q if base is None else MultiLaurent.coerce(base)
        for i in range(order + 1):
            product = (product * (1 - base * Q ** i)).truncate_q(order)
    elif name == 'ab':
        _check_ab(a, b)
        finite = ONE
        for i in list(range(1, a + 1)) + list(range(1, b + 1)):
            finite = finite * (1 - Q ** i)
        product = truncated_products('gauss', order) * invert_q_series(finite.truncate_q(order), order)
    else:
        raise DomainError(f"Unknown product: {name}")
    return product.truncate_q(order)


def jacobi_cube_limit_check(order: int, k: Optional[int] = None) -> bool:
    """(1-q) q^(C(k+2,2)-1) Y_k(1/q) agrees with prod (1-q^i)^3 mod q^order, k >= order"""
    k = order if k is None else k
    if k < order:
        raise DomainError(f"Cube limit check needs k >= K, got k={k}, K={order}")
    scaled = (1 - Q) * MultiLaurent.monomial(1, comb(k + 2, 2) - 1) * y_poly(k).invert_q()
    return scaled.truncate_q(order) == truncated_products('cube', order)


def delta_sum_congruence(k: int, scheme: str, a: int = 0, b: int = 0) -> bool:
    """Delta_k^+ weight sums against the matching infinite product mod q^k.

    wt_prime is compared with (q;q)_inf^3/(1-q).
    """
    from lib.configs import delta_plus_transfer_sum
    _check_nonnegative('delta_sum_congruence', k)
    if scheme == 'wt_q':
        target = truncated_products('gauss', k)
    elif scheme == 'wt_yq':
        target = truncated_products('jtp', k)
    elif scheme == 'wt_ab':
        target = truncated_products('ab', k, a=a, b=b)
    elif scheme == 'wt_prime':
        target = (truncated_products('cube', k) * invert_q_series(1 - Q, k)).truncate_q(k)
    else:
        raise DomainError(f"No product for scheme {scheme}")
    total = delta_plus_transfer_sum(k, scheme, a, b)
    return total.truncate_q(k) == target


# Hankel determinants

def _determinant(matrix: Sequence[Sequence[MultiLaurent]]) -> MultiLaurent:
    size = len(matrix)
    total = MultiLaurent.zero()
    for perm in permutations(range(size)):
        inversions = sum(1 for i in range(size) for j in range(i + 1, size) if perm[i] > perm[j])
        term = MultiLaurent.constant(-1 if inversions % 2 else 1)
        for row, column in enumerate(perm):
            term = term * matrix[row][column]
            if term.is_zero():
                break
        total = total + term
    return total


def hankel_determinants(moments: Sequence[MultiLaurent], n: int) -> Tuple[MultiLaurent, MultiLaurent]:
    """det(m_{i+j}) and det(m_{i+j+1}) for 0 <= i,j < n"""
    _check_nonnegative('hankel_determinants', n)
    if len(moments) < 2 * n:
        raise DomainError(f"Hankel determinants of size {n} need {2 * n} moments, got {len(moments)}")
    return _hankel(moments, n, 0), _hankel(moments, n, 1)


def _hankel(moments: Sequence[MultiLaurent], n: int, shift: int) -> MultiLaurent:
    return _determinant([[MultiLaurent.coerce(moments[i + j + shift]) for j in range(n)] for i in range(n)])


def hankel_product(lambdas: Sequence[MultiLaurent], n: int) -> Tuple[MultiLaurent, MultiLaurent]:
    """prod_{i<n} (l_{2i-1} l_{2i})^(n-i) and prod_{i<=n} l_{2i-1}^(n+1-i) l_{2i}^(n-i)"""
    lam = [None] + [MultiLaurent.coerce(x) for x in lambdas]
    if len(lam) < 2 * n + 1:
        raise DomainError(f"Hankel products of size {n} need {2 * n} coefficients")
    plain = ONE
    for i in range(1, n):
        plain = plain * (lam[2 * i - 1] * lam[2 * i]) ** (n - i)
    shifted = ONE
    for i in range(1, n + 1):
        shifted = shifted * lam[2 * i - 1] ** (n + 1 - i)
        if n - i:
            shifted = shifted * lam[2 * i] ** (n - i)
    return plain, shifted


def hankel_lambdas(moments: Sequence[MultiLaurent], n: int) -> List[MultiLaurent]:
    """Recover l_1 .. l_2n from the moments m_0 .. m_2n by determinant ratios"""
    if len(moments) < 2 * n + 1:
        raise DomainError(f"Recovering {2 * n} coefficients needs {2 * n + 1} moments")
    plain = [_hankel(moments, m, 0) for m in range(n + 2)]
    shifted = [_hankel(moments, m, 1) for m in range(n + 1)]
    out = []
    for m in range(1, n + 1):
        odd = divide_exact(shifted[m] * plain[m - 1], plain[m] * shifted[m - 1])
        even = divide_exact(shifted[m - 1] * plain[m + 1], plain[m] * shifted[m])
        out.extend([odd, even])
    formulas_logger.debug(f"Recovered {len(out)} coefficients from Hankel ratios")
    return out


def jtp_moments(count: int) -> List[MultiLaurent]:
    return [jtp_cleared(n) for n in range(count)]


def genocchi_moments(count: int) -> List[MultiLaurent]:
    """m_n = G_(2n+2), n < count"""
    return list(eval_s_fraction(lambda_preset('genocchi'), count - 1).coeffs)


def hankel_check(family: str, n: int) -> bool:
    """Hankel determinants of a moment family against its continued fraction coefficients.

    jtp_moments compares det(M_n), det(M'_n) with the generic products of the
    jtp coefficients; genocchi_moments recovers l_1 .. l_2n from determinant
    ratios and compares them with the Genocchi coefficients.
    """
    if n < 1:
        raise DomainError(f"Hankel check needs n >= 1, got {n}")
    if family == 'jtp_moments':
        moments = jtp_moments(2 * n)
        lam = lambda_preset('jtp').terms(2 * n)
        for m in range(1, n + 1):
            if hankel_determinants(moments, m) != hankel_product(lam, m):
                formulas_logger.debug(f"jtp Hankel determinants differ at size {m}")
                return False
        return True
    if family == 'genocchi_moments':
        moments = genocchi_moments(2 * n + 1)
        return hankel_lambdas(moments, n) == lambda_preset('genocchi').terms(2 * n)
    raise DomainError(f"Unknown moment family: {family}")
