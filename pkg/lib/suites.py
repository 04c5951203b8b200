"""Identity suites: named lists of independent, pure check cases.

A case is a thunk returning ``(passed, detail)``. Cases never share state, so
the runner may execute them in any order; reports keep declaration order.
"""
import os
import random
from dataclasses import dataclass
from math import comb, factorial
from typing import Any, Callable, Dict, List, Optional, Tuple
from dotenv import load_dotenv
from lib import configs, contfrac, formulas, paths
from lib.contfrac import ballot, eval_s_fraction, eval_t_fraction, lambda_preset
from lib.errors import DomainError, FixedPointError
from lib.qcore import MultiLaurent, evaluate_at_one

load_dotenv()
DEFAULT_SEED = int(os.getenv('QTR_SEED', 0))

Outcome = Tuple[bool, Any]


@dataclass(frozen=True)
class Case:
    id: str
    check: Callable[[], Outcome]


def _equal(left, right) -> Outcome:
    return left == right, left if left == right else {'lhs': left, 'rhs': right}


# Touchard-Riordan and q-secant

def _tourio_case(n: int) -> Outcome:
    lhs = eval_s_fraction(lambda_preset('touchard'), n).coefficient(n)
    if lhs != formulas.rhs_touchard(n):
        return False, {'lhs': lhs, 'rhs': formulas.rhs_touchard(n)}
    if n <= 5 and lhs != paths.weight_sum('dyck', n, paths.weight_pair('U,ONE')):
        return False, {'lhs': lhs, 'paths': 'Dyck weight sum differs'}
    return True, lhs


def _qsec_case(n: int) -> Outcome:
    lhs = eval_s_fraction(lambda_preset('qsecant'), n).coefficient(n)
    if lhs != formulas.rhs_qsecant(n):
        return False, {'lhs': lhs, 'rhs': formulas.rhs_qsecant(n)}
    if n <= 5 and lhs != paths.weight_sum('dyck', n, paths.weight_pair('U,U')):
        return False, {'lhs': lhs, 'paths': 'Dyck weight sum differs'}
    return True, lhs


def tourio_suite(max_n: int, seed: int) -> List[Case]:
    return [Case(f"tourio n={n}", lambda n=n: _tourio_case(n)) for n in range(max_n + 1)]


def qsec_suite(max_n: int, seed: int) -> List[Case]:
    return [Case(f"qsec n={n}", lambda n=n: _qsec_case(n)) for n in range(max_n + 1)]


# Finite triple product

def _jtp_specialization(a, b, order: int) -> Outcome:
    lhs = eval_t_fraction(lambda_preset('jtp_scaled', a, b), order)
    rhs = formulas.h_series(order).map_coefficients(lambda c: c.specialize_y(a, b))
    return _equal(lhs, rhs)


def jtp_suite(max_n: int, seed: int) -> List[Case]:
    cases = [
        Case(f"jtp s-form n={n}", lambda n=n: _equal(
            eval_s_fraction(lambda_preset('jtp'), n).coefficient(n), formulas.jtp_cleared(n)))
        for n in range(min(max_n, 6) + 1)
    ]
    order = max(max_n, 1)
    cases.append(Case(f"jtp t-form order={order}", lambda: _equal(
        eval_t_fraction(lambda_preset('jtp'), order), formulas.h_series(order))))
    cases += [
        Case(f"jtp schroder k={k}", lambda k=k: _equal(
            paths.weight_sum('schroder', k, paths.weight_pair('J,JP')), formulas.theta_sum(k).value))
        for k in range(min(max_n, 5) + 1)
    ]
    for a, b in ((0, 1), (1, 2)):
        cases.append(Case(f"jtp specialization a={a} b={b}",
                          lambda a=a, b=b: _jtp_specialization(a, b, min(order, 6))))
    return cases


# Delta_k^+ configurations

def _dkc_case(k: int) -> Outcome:
    wt_q = configs.config_weight_sum('delta_plus', k, 'wt_q')
    if wt_q != formulas.gauss_sum(k):
        return False, {'wt_q': wt_q, 'expected': formulas.gauss_sum(k)}
    if k >= 1:
        previous = configs.config_weight_sum('delta_plus', k - 1, 'wt_q')
        step = MultiLaurent.monomial(2 * (-1) ** (k * k), k * k)
        if wt_q != previous + step:
            return False, {'recurrence': 'fails', 'k': k}
    wt_yq = configs.config_weight_sum('delta_plus', k, 'wt_yq')
    if wt_yq != formulas.triple_sum(k):
        return False, {'wt_yq': wt_yq, 'expected': formulas.triple_sum(k)}
    wt_prime = configs.config_weight_sum('delta_plus', k, 'wt_prime')
    expected = MultiLaurent.monomial(1, comb(k + 2, 2) - 1) * formulas.y_poly(k).invert_q()
    if wt_prime != expected:
        return False, {'wt_prime': wt_prime, 'expected': expected}
    for scheme in ('wt_q', 'wt_yq', 'wt_prime'):
        if configs.delta_plus_transfer_sum(k, scheme) != configs.config_weight_sum('delta_plus', k, scheme):
            return False, {'transport': scheme}
    md = paths.weight_sum('md_star', k, paths.weight_pair('V-1,V-1'))
    if md != MultiLaurent.monomial(1, k * (k + 1)) * formulas.gauss_sum(k).invert_q():
        return False, {'md_star': md}
    if configs.config_weight_sum('half', k, 'half_wt_q') != MultiLaurent.one():
        return False, {'half': 'weight sum is not 1'}
    return True, wt_q


def dkc_suite(max_n: int, seed: int) -> List[Case]:
    return [Case(f"dkc k={k}", lambda k=k: _dkc_case(k)) for k in range(min(max_n, 5) + 1)]


# Bijections

def _half_bijection_case(k: int) -> Outcome:
    count = 0
    for h in configs.enumerate_configs('half', k):
        mu = configs.psi1(h)
        if not mu.in_op(k) or configs.phi1(mu, k) != h:
            return False, {'half': str(h)}
        if mu.weight() != configs.weights(h, 'half_wt_q'):
            return False, {'weight': str(h)}
        count += 1
    overpartitions = sum(1 for _ in configs.enumerate_configs('overpartition', k))
    return count == overpartitions, count


def _psi_phi_case(k: int) -> Outcome:
    images = set()
    for c in configs.enumerate_configs('delta_plus', k):
        image = configs.psi(c)
        if configs.phi(image) != c:
            return False, {'round_trip': c}
        if configs.weights(image, 'wt_q') != configs.weights(c, 'wt_q'):
            return False, {'weight': c}
        images.add(image)
    minus = set(configs.enumerate_configs('delta_minus', k))
    return images == minus, len(images)


def _scan_order_case(k: int) -> Outcome:
    steps = 0
    runs = [(configs.psi_trace(c), c) for c in configs.enumerate_configs('delta_plus', k)]
    runs += [(configs.phi_trace(c), c) for c in configs.enumerate_configs('delta_minus', k)]
    for trace, c in runs:
        for (_, before), (op, after) in zip(trace, trace[1:]):
            if configs.op_closure(before, op, reverse=True) != after:
                return False, {'config': c, 'op': op}
            steps += 1
    return True, steps


def _involution_case(k: int) -> Outcome:
    fixed = []
    for c in configs.enumerate_configs('delta_minus', k):
        if configs.is_embedded_previous(c):
            continue
        try:
            image = configs.involution_f(c)
        except FixedPointError:
            fixed.append(c)
            continue
        if configs.involution_f(image) != c:
            return False, {'not_involutive': c}
        if configs.weights(image, 'wt_q') != -configs.weights(c, 'wt_q'):
            return False, {'not_sign_reversing': c}
    expected = MultiLaurent.monomial((-1) ** (k * k), k * k)
    ok = (set(fixed) == set(configs.fixed_points(k))
          and all(configs.weights(c, 'wt_q') == expected for c in fixed))
    return ok, len(fixed)


def _overpartition_case(k: int) -> Outcome:
    total = MultiLaurent.zero()
    for mu in configs.enumerate_configs('overpartition', k):
        image = configs.overpartition_involution(mu)
        if configs.overpartition_involution(image) != mu:
            return False, {'not_involutive': str(mu)}
        if mu.parts and image.weight() != -mu.weight():
            return False, {'not_sign_reversing': str(mu)}
        total = total + mu.weight()
    return total == MultiLaurent.one(), total


def bijection_suite(max_n: int, seed: int) -> List[Case]:
    cases = [Case(f"psi1/phi1 k={k}", lambda k=k: _half_bijection_case(k)) for k in range(min(max_n, 6) + 1)]
    cases += [Case(f"psi/phi k={k}", lambda k=k: _psi_phi_case(k)) for k in range(min(max_n, 4) + 1)]
    cases += [Case(f"scan order k={k}", lambda k=k: _scan_order_case(k)) for k in range(min(max_n, 4) + 1)]
    cases += [Case(f"involution f k={k}", lambda k=k: _involution_case(k)) for k in range(1, min(max_n, 4) + 1)]
    cases += [Case(f"overpartition involution k={k}", lambda k=k: _overpartition_case(k))
              for k in range(max_n + 3)]
    return cases


# q-Genocchi

def _genocchi_case(n: int, tangent) -> Outcome:
    value = formulas.genocchi(n)
    for form in formulas.GENOCCHI_FORMS:
        other = formulas.genocchi_rhs(n, form)
        if other != value:
            return False, {'continued_fraction': value, form: other}
    k = n - 1
    y = formulas.y_poly(k)
    if y != formulas.w_poly(k):
        return False, {'Y': y, 'W': formulas.w_poly(k)}
    if k <= 5 and y != paths.weight_sum('md_star', k, paths.weight_pair('G1,G2')):
        return False, {'Y': y, 'paths': 'MD* weight sum differs'}
    # Y_k stays a polynomial a little past the Genocchi range
    formulas.y_poly(n + 2)
    at_one = tangent.coefficient(2 * n).scalar() * factorial(2 * n)
    if evaluate_at_one(value) != at_one:
        return False, {'at_one': evaluate_at_one(value), 'tangent': at_one}
    return True, value


def genocchi_suite(max_n: int, seed: int) -> List[Case]:
    tangent = formulas.tan_half_series(2 * max(max_n, 1))
    return [Case(f"genocchi n={n}", lambda n=n: _genocchi_case(n, tangent)) for n in range(1, max_n + 1)]


# Functional equations and matrices

def _residual_case(name: str, order: int) -> Outcome:
    residual = formulas.verify_functional_equation(name, order)
    return residual.is_zero(), residual


def funeq_suite(max_n: int, seed: int) -> List[Case]:
    order = max(max_n, 1)
    cases = [Case(f"funeq {name} order={order}", lambda name=name: _residual_case(name, order))
             for name in formulas.FUNEQ_IDS]
    for which in ('omega', 'lambda'):
        cases += [Case(f"{which} recurrence n={n}", lambda which=which, n=n: (
            contfrac.verify_matrix_recurrence(which, n), None)) for n in range(6)]
    cases.append(Case("matrix base cases", lambda: (all(contfrac.verify_base_cases().values()),
                                                    contfrac.verify_base_cases())))
    small = min(order, 6)
    cases.append(Case("omega product", lambda: _equal(
        contfrac.continued_fraction_product('omega', small), eval_t_fraction(lambda_preset('jtp'), small))))
    cases.append(Case("lambda product", lambda: _equal(
        contfrac.continued_fraction_product('lambda', small),
        eval_t_fraction(lambda_preset('genocchi_scaled'), small))))
    return cases


# Limit congruences

AB_PAIRS = ((0, 0), (0, 1), (1, 1), (1, 2))


def congruence_suite(max_n: int, seed: int) -> List[Case]:
    cases = []
    for k in range(max_n + 1):
        for scheme in ('wt_q', 'wt_yq', 'wt_prime'):
            cases.append(Case(f"{scheme} mod q^{k}", lambda k=k, scheme=scheme: (
                formulas.delta_sum_congruence(k, scheme), None)))
        for a, b in AB_PAIRS[1:]:
            cases.append(Case(f"wt_ab a={a} b={b} mod q^{k}", lambda k=k, a=a, b=b: (
                formulas.delta_sum_congruence(k, 'wt_ab', a, b), None)))
        cases.append(Case(f"gauss mod q^{k}", lambda k=k: _equal(
            formulas.gauss_sum(k).truncate_q(k), formulas.truncated_products('gauss', k))))
    for a, b in AB_PAIRS:
        cases += [Case(f"T_{k}^({a},{b})", lambda k=k, a=a, b=b: (
            formulas.t_ab_congruence(k, a, b), formulas.t_ab(k, a, b))) for k in range(min(max_n, 10) + 1)]
    return cases


# mu_n(a,b,q)

MU_PAIRS = (('0', '1'), ('0', '2'), ('1', '2'), ('1', '3'), ('1/2', '3/2'), ('3/2', '5/2'))
EGF_PAIRS = (('0', '1'), ('1', '2'), ('1', '3'), ('1/2', '3/2'))


def _mu_case(n: int, a: str, b: str) -> Outcome:
    lhs = formulas.mu(n, a, b)
    rhs = formulas.mu_rhs(n, a, b)
    if lhs != rhs:
        return False, {'lhs': lhs, 'rhs': rhs}
    if formulas.mu_has_nonnegative_integer_coefficients(a, b):
        if not (lhs.is_polynomial_in_q() and lhs.has_integer_coefficients()
                and lhs.has_nonnegative_coefficients()):
            return False, {'coefficients': lhs}
    return True, lhs


def theos_suite(max_n: int, seed: int) -> List[Case]:
    cases = []
    for a, b in MU_PAIRS:
        cases += [Case(f"mu a={a} b={b} n={n}", lambda n=n, a=a, b=b: _mu_case(n, a, b))
                  for n in range(min(max_n, 6) + 1)]
    for a, b in EGF_PAIRS:
        cases.append(Case(f"cos ratio a={a} b={b}", lambda a=a, b=b: (
            formulas.egf_check_cos(a, b, min(max_n, 5)), None)))
    cases.append(Case(f"laplace N={max_n}", lambda: (formulas.laplace_check(max_n), None)))
    return cases


# Transforms

def _round_trip_case(length: int) -> Outcome:
    mu = list(eval_s_fraction(lambda_preset('touchard'), length).coeffs)
    back = contfrac.s_coeffs_from_t(contfrac.t_coeffs_from_s(mu, length), length)
    return back == mu, length


def _t_to_s_case(name: str, order: int) -> Outcome:
    lam = lambda_preset(name)
    t = list(eval_t_fraction(lam, order).coeffs)
    s = list(eval_s_fraction(lam, order).coeffs)
    return contfrac.s_coeffs_from_t(t, order) == s, None


def _contraction_case(order: int) -> Outcome:
    c = contfrac.dumont_coefficients(MultiLaurent.monomial(1, 0, 1), 2 * order + 2)
    plus = contfrac.plus_fraction(c, order)
    first = contfrac.contract_fraction(c, 'first', order)
    second = contfrac.contract_fraction(c, 'second', order)
    return plus == first == second, plus


def _penaud_case(n: int) -> Outcome:
    census = paths.penaud_fibers(n)
    for k, cores in census.items():
        if len(cores) != paths.family_size('md_star', k):
            return False, {'k': k, 'cores': len(cores)}
        if any(count != ballot(n, k) for count in cores.values()):
            return False, {'k': k, 'fibers': sorted(set(cores.values()))}
    return sorted(census) == list(range(n + 1)), {str(k): len(v) for k, v in census.items()}


def _schroder_case(n: int, spec: str) -> Outcome:
    left, right = spec.split(',')
    shifted = paths.weight_pair(f"{left}-1,{right}-1")
    return _equal(paths.weight_sum('md_star', n, shifted), paths.weight_sum('schroder', n, paths.weight_pair(spec)))


def _sampled_involution_case(n: int, seed: int, samples: int = 200) -> Outcome:
    rng = random.Random(seed)
    population = [p for p in paths.enumerate_paths('marked_schroder', n) if not p.belongs_to('md_star')]
    w = paths.weight_pair('U-1,U-1')
    for p in rng.sample(population, min(samples, len(population))):
        image = paths.marked_peak_involution(p)
        if paths.marked_peak_involution(image) != p:
            return False, {'path': p}
        if paths.path_weight(image, w) != -paths.path_weight(p, w):
            return False, {'sign': p}
    return True, min(samples, len(population))


def transform_suite(max_n: int, seed: int) -> List[Case]:
    cases = [Case(f"ballot round trip length={m}", lambda m=m: _round_trip_case(m)) for m in range(min(max_n, 10) + 1)]
    cases += [Case(f"t-to-s transform {name}", lambda name=name: _t_to_s_case(name, max_n))
              for name in ('touchard', 'qsecant', 'jtp', 'genocchi', 'v')]
    cases += [Case(f"lagrange k={k}", lambda k=k: (contfrac.verify_lagrange_identity(k, max_n).is_zero(), None))
              for k in range(min(max_n, 4) + 1)]
    cases.append(Case("contractions", lambda: _contraction_case(min(max_n, 6))))
    cases += [Case(f"penaud n={n}", lambda n=n: _penaud_case(n)) for n in range(min(max_n, 4) + 1)]
    cases += [Case(f"md_star vs schroder {spec} n={n}", lambda n=n, spec=spec: _schroder_case(n, spec))
              for spec in ('U,U', 'J,JP') for n in range(min(max_n, 5) + 1)]
    cases.append(Case(f"marked peak involution seed={seed}", lambda: _sampled_involution_case(min(max_n, 4), seed)))
    return cases


# Hankel determinants and the Jacobi cube

def hankel_suite(max_n: int, seed: int) -> List[Case]:
    return [Case(f"hankel {family} n={n}", lambda family=family, n=n: (formulas.hankel_check(family, n), None))
            for family in formulas.HANKEL_FAMILIES for n in range(1, min(max_n, 4) + 1)]


def _cube_case(order: int) -> Outcome:
    product = formulas.truncated_products('cube', order)
    series = MultiLaurent.zero()
    i = 0
    while comb(i + 1, 2) < order:
        series = series + MultiLaurent.monomial((-1) ** i * (2 * i + 1), comb(i + 1, 2))
        i += 1
    if product != series:
        return False, {'product': product, 'series': series}
    return formulas.jacobi_cube_limit_check(order, order + 2), product


def cube_suite(max_n: int, seed: int) -> List[Case]:
    return [Case(f"cube K={k}", lambda k=k: _cube_case(k)) for k in range(1, max_n + 1)]


SUITES: Dict[str, Tuple[Callable[[int, int], List[Case]], int]] = {
    'tourio': (tourio_suite, 8),
    'qsec': (qsec_suite, 8),
    'jtp': (jtp_suite, 6),
    'dkc': (dkc_suite, 5),
    'bijection': (bijection_suite, 6),
    'genocchi': (genocchi_suite, 8),
    'funeq': (funeq_suite, 10),
    'congruence': (congruence_suite, 12),
    'theoS': (theos_suite, 6),
    'transform': (transform_suite, 8),
    'hankel': (hankel_suite, 4),
    'cube': (cube_suite, 10),
}


def build_suite(name: str, max_n: Optional[int] = None, seed: Optional[int] = None) -> List[Case]:
    """Cases of one suite; max_n falls back to the suite default"""
    if name not in SUITES:
        raise DomainError(f"Unknown suite: {name}")
    factory, default = SUITES[name]
    if max_n is not None and max_n < 0:
        raise DomainError(f"--max-n must be nonnegative, got {max_n}")
    return factory(default if max_n is None else max_n, DEFAULT_SEED if seed is None else seed)
