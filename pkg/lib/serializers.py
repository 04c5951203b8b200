"""Canonical JSON structures for every value the CLI prints.

Terms are emitted in (q-exponent, y-exponent) order and keys are sorted, so
the same value always produces the same bytes.
"""
import json
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union
from lib.configs import Arrow, DeltaConfig, HalfConfig, Overpartition, Partition, render
from lib.contfrac import Mobius2x2, ZPolynomial
from lib.errors import DomainError
from lib.paths import LatticePath
from lib.qcore import MultiLaurent, ZSeries, format_laurent


def scalar_to_json(c: Fraction) -> str:
    return str(Fraction(c))


def laurent_to_json(f: MultiLaurent, granularity: Optional[int] = None) -> Dict[str, Any]:
    """{"g", "terms": [{"q", "y", "c"}]}; ``granularity`` re-expresses the terms on a finer grid"""
    g = granularity or f.g
    terms = f.rescaled_terms(g) if g != f.g else f.terms
    return {
        'g': g,
        'terms': [{'q': qe, 'y': ye, 'c': scalar_to_json(c)} for (qe, ye), c in sorted(terms.items())],
    }


def laurent_from_json(data: Dict[str, Any]) -> MultiLaurent:
    return MultiLaurent({(t['q'], t['y']): Fraction(t['c']) for t in data['terms']}, data.get('g', 1))


def series_to_json(f: ZSeries, granularity: Optional[int] = None) -> Dict[str, Any]:
    return {'order': f.order, 'coeffs': [laurent_to_json(c, granularity) for c in f.coeffs]}


def zpolynomial_to_json(p: ZPolynomial, granularity: Optional[int] = None) -> List[Dict[str, Any]]:
    return [laurent_to_json(c, granularity) for c in p.coeffs]


def matrix_to_json(m: Mobius2x2, granularity: Optional[int] = None) -> Dict[str, Any]:
    return {name: zpolynomial_to_json(entry, granularity) for name, entry in zip('abcd', m.entries())}


def path_to_json(p: LatticePath) -> str:
    return p.code


def arrow_to_json(arrow: Arrow) -> Dict[str, Any]:
    return {'o': arrow.orientation, 'kind': arrow.kind, 'i': arrow.index}


def partition_to_json(lam: Partition) -> List[int]:
    return list(lam.parts)


def config_to_json(c: Union[DeltaConfig, HalfConfig]) -> Dict[str, Any]:
    if isinstance(c, HalfConfig):
        c = c.as_delta_config()
    return {
        'k': c.k,
        'partition': partition_to_json(c.partition),
        'arrows': [arrow_to_json(a) for a in c.sorted_arrows()],
    }


def config_from_json(data: Dict[str, Any]) -> DeltaConfig:
    arrows = frozenset(Arrow(a['o'], a['kind'], a['i']) for a in data.get('arrows', []))
    return DeltaConfig(data['k'], Partition(tuple(data.get('partition', ()))), arrows)


def overpartition_to_json(mu: Overpartition) -> List[Dict[str, Any]]:
    return [{'part': v, 'overlined': o} for v, o in mu.parts]


def to_json_value(value: Any, granularity: Optional[int] = None) -> Any:
    """Dispatch on the value type; lists, tuples and dicts are converted recursively"""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return scalar_to_json(value)
    if isinstance(value, MultiLaurent):
        return laurent_to_json(value, granularity)
    if isinstance(value, ZSeries):
        return series_to_json(value, granularity)
    if isinstance(value, ZPolynomial):
        return zpolynomial_to_json(value, granularity)
    if isinstance(value, Mobius2x2):
        return matrix_to_json(value, granularity)
    if isinstance(value, LatticePath):
        return path_to_json(value)
    if isinstance(value, (DeltaConfig, HalfConfig)):
        return config_to_json(value)
    if isinstance(value, Overpartition):
        return overpartition_to_json(value)
    if isinstance(value, Partition):
        return partition_to_json(value)
    if isinstance(value, dict):
        return {str(k): to_json_value(v, granularity) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_json_value(v, granularity) for v in value]
    if hasattr(value, 'to_dict'):
        return to_json_value(value.to_dict(), granularity)
    raise DomainError(f"No JSON form for {type(value).__name__}")


def dumps(value: Any, granularity: Optional[int] = None) -> str:
    return json.dumps(to_json_value(value, granularity), sort_keys=True, separators=(",", ": "), indent=2)


def to_text(value: Any) -> str:
    """Human-readable single-value rendering"""
    if isinstance(value, MultiLaurent):
        return format_laurent(value)
    if isinstance(value, (DeltaConfig, HalfConfig)):
        return render(value)
    if isinstance(value, (list, tuple)):
        return '\n'.join(to_text(v) for v in value)
    return str(value)
