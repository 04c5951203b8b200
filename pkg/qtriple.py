import os
import asyncio
from contextlib import contextmanager
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Awaitable, Dict, List, Optional, Tuple
import typer
from dotenv import load_dotenv
from lib import configs, formulas, paths
from lib.contfrac import (eval_s_fraction, eval_t_fraction, lambda_preset, lambda_matrix, omega_matrix,
                          recurrence_scalar, verify_base_cases, verify_matrix_recurrence)
from lib.controllers.report_controller import ReportController, report_payload
from lib.controllers.suite_controller import SuiteController
from lib.errors import DomainError, FixedPointError, GranularityError, QTripleError
from lib.logger import setup_logging, cli_logger
from lib.qcore import MAX_GRANULARITY, MultiLaurent, to_scalar
from lib.serializers import config_to_json, dumps
from lib.suites import SUITES

load_dotenv()
MAX_ORDER = int(os.getenv('QTR_MAX_ORDER', 40))

COMPUTE_FAMILIES = ('touchard', 'qsecant', 'jtp', 'jtp_scaled', 'mu', 'genocchi', 'genocchi_scaled',
                    'eab', 'v', 'xi')
BIJECTIONS = ('psi', 'phi', 'psi1', 'phi1', 'f', 'overpartition-involution')
DEFAULT_WEIGHTS = {'half': 'half_wt_q', 'overpartition': 'half_wt_q'}

app = typer.Typer(
    add_completion=False,
    no_args_is_help=True,
    help="Exact q-series, continued fraction and configuration checks.",
)


class OutputFormat(str, Enum):
    json = 'json'
    text = 'text'


@dataclass
class Settings:
    format: OutputFormat = OutputFormat.json
    limit: Optional[int] = None
    seed: Optional[int] = None
    granularity: Optional[int] = None
    timing: bool = False


@contextmanager
def cli_errors():
    """Map library errors onto exit codes: 2 for bad input, 1 for violated identities"""
    try:
        yield
    except typer.Exit:
        raise
    except (DomainError, GranularityError) as e:
        # SizeLimitError is a DomainError
        cli_logger.warning(f"{e.__class__.__name__}: {e}")
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(2)
    except QTripleError as e:
        cli_logger.warning(f"{e.__class__.__name__}: {e}")
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(1)
    except Exception as e:
        cli_logger.error(f"Unexpected error: {e.__class__.__name__}: {e}")
        typer.echo(f"error: {e.__class__.__name__}: {e}", err=True)
        raise typer.Exit(1)


def _emit(ctx: typer.Context, payload: Any,
          render_text: Callable[[ReportController], Awaitable[str]]) -> None:
    settings: Settings = ctx.obj
    if settings.format == OutputFormat.json:
        typer.echo(dumps(payload, settings.granularity))
        return

    async def _text() -> str:
        controller = await ReportController.create()
        try:
            return await render_text(controller)
        finally:
            await controller.cleanup()

    typer.echo(asyncio.run(_text()).rstrip('\n'))


def _check_order(name: str, value: int) -> None:
    if value < 0:
        raise DomainError(f"{name} must be nonnegative, got {value}")
    if value > MAX_ORDER:
        raise DomainError(f"{name}={value} is above QTR_MAX_ORDER={MAX_ORDER}")


def _parse_y_spec(spec: Optional[str]) -> Optional[Tuple[Any, Any]]:
    """'a,b' for y -> -q^a, q -> q^b"""
    if spec is None:
        return None
    try:
        a, b = (to_scalar(part.strip()) for part in spec.split(','))
    except ValueError as e:
        raise DomainError(f"--y-spec must look like 'a,b', got {spec!r}") from e
    return a, b


def _integral(name: str, value: Optional[str]) -> int:
    x = to_scalar(value if value is not None else 0)
    if x.denominator != 1:
        raise DomainError(f"--{name} must be an integer here, got {value}")
    return int(x)


def compute_family(family: str, n: int, a: Optional[str] = None, b: Optional[str] = None,
                   y_spec: Optional[str] = None) -> Dict[str, Any]:
    """Coefficient n of a named family, its closed form when one exists, and whether they agree"""
    family = family.lower().replace('-', '_')
    if family not in COMPUTE_FAMILIES:
        raise DomainError(f"Unknown family: {family} (expected one of {', '.join(COMPUTE_FAMILIES)})")
    if family in ('mu', 'jtp_scaled', 'eab') and (a is None or b is None):
        raise DomainError(f"--family {family} needs both --a and --b")
    _check_order('--n', n)
    out: Dict[str, Any] = {'family': family, 'n': n, 'fraction': 's'}
    rhs: Optional[MultiLaurent] = None

    if family == 'mu':
        value, rhs = formulas.mu(n, a, b), formulas.mu_rhs(n, a, b)
    elif family == 'genocchi':
        value, rhs = formulas.genocchi(n), formulas.genocchi_rhs(n, 'GY')
    elif family == 'eab':
        ia, ib = _integral('a', a), _integral('b', b)
        value = formulas.e_ab(n, ia, ib)
        out['t'] = formulas.t_ab(n, ia, ib)
    elif family == 'xi':
        # no closed form; T-fraction coefficients only
        out['fraction'] = 't'
        value = eval_t_fraction(lambda_preset('xi'), n).coefficient(n)
    else:
        lam = lambda_preset(family, a, b)
        value = eval_s_fraction(lam, n).coefficient(n)
        closed_forms = {
            'touchard': formulas.rhs_touchard,
            'qsecant': formulas.rhs_qsecant,
            'jtp': formulas.jtp_cleared,
        }
        if family in closed_forms:
            rhs = closed_forms[family](n)

    if a is not None or b is not None:
        out['a'], out['b'] = str(to_scalar(a or 0)), str(to_scalar(b or 0))
    specialization = _parse_y_spec(y_spec)
    if specialization is not None:
        value = value.specialize_y(*specialization)
        rhs = None if rhs is None else rhs.specialize_y(*specialization)
        out['y_spec'] = [str(x) for x in specialization]
    out['value'] = value
    if rhs is not None:
        out['rhs'] = rhs
        out['match'] = value == rhs
    return out


def enumerate_objects(objects: str, k: int, weight: Optional[str] = None, a: int = 0, b: int = 0,
                      limit: Optional[int] = None) -> Dict[str, Any]:
    """Every object of a path or configuration family, with weights when a weight is named"""
    objects = objects.lower().replace('-', '_')
    _check_order('--k', k)
    if objects in paths.PATH_KINDS:
        paths.check_size(objects, k, limit)
        items = list(paths.enumerate_paths(objects, k))
        pair = paths.weight_pair(weight, a, b) if weight else None
        weigh = (lambda p: paths.path_weight(p, pair)) if pair else None
    elif objects in configs.CONFIG_KINDS:
        items = list(configs.enumerate_configs(objects, k, limit))
        scheme = weight or DEFAULT_WEIGHTS.get(objects)
        weigh = (lambda c: configs.weights(c, scheme, a, b)) if scheme else None
    else:
        raise DomainError(f"Unknown object family: {objects}")

    out: Dict[str, Any] = {'objects': objects, 'k': k, 'count': len(items)}
    if weigh is None:
        out['items'] = items
        return out
    weighted = [(item, weigh(item)) for item in items]
    out['weight'] = weight or DEFAULT_WEIGHTS[objects]
    out['items'] = [{'object': item, 'weight': w} for item, w in weighted]
    out['weight_sum'] = sum((w for _, w in weighted), MultiLaurent.zero())
    return out


def _bijection_pairs(name: str, k: int, trace: bool,
                     limit: Optional[int]) -> List[Dict[str, Any]]:
    pairs: List[Dict[str, Any]] = []
    if name in ('psi', 'phi'):
        source, step = ('delta_plus', configs.psi_trace) if name == 'psi' else ('delta_minus', configs.phi_trace)
        for c in configs.enumerate_configs(source, k, limit):
            steps = step(c)
            pair = {'input': c, 'output': steps[-1][1]}
            if trace:
                pair['trace'] = [config_to_json(s) for _, s in steps]
                pair['ops'] = [op for op, _ in steps]
            pairs.append(pair)
    elif name == 'psi1':
        pairs = [{'input': h, 'output': configs.psi1(h)} for h in configs.enumerate_configs('half', k, limit)]
    elif name == 'phi1':
        pairs = [{'input': mu, 'output': configs.phi1(mu, k)}
                 for mu in configs.enumerate_configs('overpartition', k, limit)]
    elif name == 'f':
        for c in configs.enumerate_configs('delta_minus', k, limit):
            if configs.is_embedded_previous(c):
                continue
            try:
                pairs.append({'input': c, 'output': configs.involution_f(c)})
            except FixedPointError:
                pairs.append({'input': c, 'output': None, 'fixed': True})
    elif name == 'overpartition-involution':
        pairs = [{'input': mu, 'output': configs.overpartition_involution(mu)}
                 for mu in configs.enumerate_configs('overpartition', k, limit)]
    else:
        raise DomainError(f"Unknown bijection: {name} (expected one of {', '.join(BIJECTIONS)})")
    return pairs


@app.callback()
def main(
    ctx: typer.Context,
    format: OutputFormat = typer.Option(OutputFormat.json, '--format', help="Output format"),
    limit: Optional[int] = typer.Option(None, '--limit', help="Enumeration size limit (overrides QTR_SIZE_LIMIT)"),
    seed: Optional[int] = typer.Option(None, '--seed', help="Seed for sampled checks (overrides QTR_SEED)"),
    granularity: Optional[int] = typer.Option(None, '--granularity', help="q-exponent grid of JSON output"),
    timing: bool = typer.Option(False, '--timing', help="Include elapsed_ms in reports"),
    log_level: Optional[str] = typer.Option(None, '--log-level', help="Overrides LOG_LEVEL"),
):
    setup_logging(log_level)
    with cli_errors():
        if limit is not None and limit < 0:
            raise DomainError(f"--limit must be nonnegative, got {limit}")
        if granularity is not None and not 1 <= granularity <= MAX_GRANULARITY:
            raise GranularityError(f"--granularity must lie in 1..{MAX_GRANULARITY}, got {granularity}")
    ctx.obj = Settings(format, limit, seed, granularity, timing)


@app.command()
def compute(
    ctx: typer.Context,
    family: str = typer.Option(..., '--family', help=f"One of {', '.join(COMPUTE_FAMILIES)}"),
    n: int = typer.Option(..., '--n'),
    a: Optional[str] = typer.Option(None, '--a', help="Rational such as 1/2"),
    b: Optional[str] = typer.Option(None, '--b', help="Rational such as 3/2"),
    y_spec: Optional[str] = typer.Option(None, '--y-spec', help="'a,b' for y -> -q^a, q -> q^b"),
):
    """Compute one coefficient of a continued-fraction family"""
    with cli_errors():
        out = compute_family(family, n, a, b, y_spec)
        fields = [('n', n), ('a', out.get('a')), ('b', out.get('b')), ('match', out.get('match'))]

        async def text(controller: ReportController) -> str:
            return await controller.render_value(out['family'], out['value'], fields)

        _emit(ctx, out, text)
        if out.get('match') is False:
            raise typer.Exit(1)


@app.command()
def verify(
    ctx: typer.Context,
    suite: str = typer.Option(..., '--suite', help=f"One of {', '.join(SUITES)}, or all"),
    max_n: Optional[int] = typer.Option(None, '--max-n', help="Largest size checked; defaults per suite"),
):
    """Run an identity suite and report every case"""
    with cli_errors():
        settings: Settings = ctx.obj
        report = asyncio.run(SuiteController().run_suite(suite, max_n, settings.seed))

        async def text(controller: ReportController) -> str:
            return await controller.render_report(report, settings.timing)

        _emit(ctx, report_payload(report, settings.timing), text)
        if not report.passed:
            raise typer.Exit(1)


@app.command('enumerate')
def enumerate_command(
    ctx: typer.Context,
    objects: str = typer.Option(..., '--objects', help="Path family or configuration family"),
    k: int = typer.Option(..., '--k'),
    weight: Optional[str] = typer.Option(None, '--weight', help="Weight pair 'A,B' for paths, scheme for configurations"),
    a: int = typer.Option(0, '--a'),
    b: int = typer.Option(0, '--b'),
):
    """List the objects of a family, optionally with their weights"""
    with cli_errors():
        out = enumerate_objects(objects, k, weight, a, b, ctx.obj.limit)
        items = [i['object'] if isinstance(i, dict) else i for i in out['items']]

        async def text(controller: ReportController) -> str:
            return await controller.render_listing(f"{out['objects']} k={k}", items, out.get('weight_sum'))

        _emit(ctx, out, text)


@app.command()
def bijection(
    ctx: typer.Context,
    name: str = typer.Option(..., '--name', help=f"One of {', '.join(BIJECTIONS)}"),
    k: int = typer.Option(..., '--k'),
    trace: bool = typer.Option(False, '--trace', help="Include intermediate configurations (psi, phi)"),
):
    """Apply a bijection or involution to every object of its domain"""
    with cli_errors():
        _check_order('--k', k)
        pairs = _bijection_pairs(name, k, trace, ctx.obj.limit)
        out = {'name': name, 'k': k, 'count': len(pairs), 'pairs': pairs}

        async def text(controller: ReportController) -> str:
            if trace and name in ('psi', 'phi'):
                step = configs.psi_trace if name == 'psi' else configs.phi_trace
                blocks = [await controller.render_trace(f"{name} #{i}", step(p['input']))
                          for i, p in enumerate(pairs)]
                return '\n'.join(blocks)
            lines = [f"{p['input']} -> {'fixed' if p.get('fixed') else p['output']}" for p in pairs]
            return await controller.render_listing(f"{name} k={k}", lines)

        _emit(ctx, out, text)


@app.command()
def funeq(
    ctx: typer.Context,
    identity: str = typer.Option(..., '--id', help=f"One of {', '.join(formulas.FUNEQ_IDS)}"),
    order: int = typer.Option(10, '--order'),
):
    """Residual of a functional equation; zero when the equation holds"""
    with cli_errors():
        _check_order('--order', order)
        residual = formulas.verify_functional_equation(identity.upper(), order)
        out = {'id': identity.upper(), 'order': order, 'residual': residual, 'zero': residual.is_zero()}

        async def text(controller: ReportController) -> str:
            return await controller.render_value(f"funeq {out['id']}", str(residual),
                                                 [('order', order), ('zero', out['zero'])])

        _emit(ctx, out, text)
        if not out['zero']:
            raise typer.Exit(1)


@app.command()
def matrix(
    ctx: typer.Context,
    which: str = typer.Option(..., '--which', help="omega or lambda"),
    n: int = typer.Option(..., '--n'),
):
    """Numerator matrix Omega_n or Lambda_n and its recurrence verdict"""
    with cli_errors():
        _check_order('--n', n)
        which = which.lower()
        if which not in ('omega', 'lambda'):
            raise DomainError(f"Unknown matrix family: {which}")
        m = omega_matrix(n) if which == 'omega' else lambda_matrix(n)
        holds = verify_matrix_recurrence(which, n)
        scalar = recurrence_scalar(which, n)
        out = {
            'which': which,
            'n': n,
            'matrix': m,
            'recurrence': holds,
            'scalar': None if scalar is None else list(scalar),
            'base_cases': verify_base_cases(),
        }

        async def text(controller: ReportController) -> str:
            entries = [f"{name} = {entry}" for name, entry in zip('abcd', m.entries())]
            return await controller.render_value(f"{which}_{n}", '\n'.join(entries), [('recurrence', holds)])

        _emit(ctx, out, text)
        if not holds:
            raise typer.Exit(1)


if __name__ == "__main__":
    app()
