"""Weighted lattice paths.

A path is a string over U, D, H, u, d: lowercase letters are marked steps and
H is a horizontal step of length two. Families are streamed in lexicographic
order of that encoding and never materialized.
"""
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Tuple, Union
from dotenv import load_dotenv
from lib.errors import DomainError, FixedPointError, SizeLimitError
from lib.logger import paths_logger
from lib.qcore import MultiLaurent, Q, Y, Y_INV, qint

load_dotenv()
SIZE_LIMIT = int(os.getenv('QTR_SIZE_LIMIT', 10_000_000))

PATH_KINDS = ('dyck', 'schroder', 'marked_schroder', 'marked_dyck', 'md_star')

_ALPHABETS = {
    'dyck': 'DU',
    'schroder': 'DHU',
    'marked_schroder': 'DHUdu',
    'marked_dyck': 'DUdu',
    'md_star': 'DUdu',
}

_UPS = 'Uu'
_DOWNS = 'Dd'


def normalize_kind(kind: str) -> str:
    kind = kind.lower().replace('-', '_')
    if kind not in _ALPHABETS:
        raise DomainError(f"Unknown path family: {kind}")
    return kind


@dataclass(frozen=True, order=True)
class LatticePath:
    """A nonnegative path ending at height 0, encoded over U, D, H, u, d"""
    code: str

    def __post_init__(self):
        height = 0
        for step in self.code:
            if step in _UPS:
                height += 1
            elif step in _DOWNS:
                height -= 1
            elif step != 'H':
                raise DomainError(f"Unknown step {step!r} in path {self.code!r}")
            if height < 0:
                raise DomainError(f"Path {self.code!r} goes below height 0")
        if height:
            raise DomainError(f"Path {self.code!r} ends at height {height}")

    @property
    def half_length(self) -> int:
        return sum(2 if s == 'H' else 1 for s in self.code) // 2

    def heights(self) -> List[int]:
        """Height reached after each step"""
        out = []
        height = 0
        for step in self.code:
            if step in _UPS:
                height += 1
            elif step in _DOWNS:
                height -= 1
            out.append(height)
        return out

    def has_marked_peak(self) -> bool:
        return 'ud' in self.code

    def belongs_to(self, kind: str) -> bool:
        kind = normalize_kind(kind)
        if any(s not in _ALPHABETS[kind] for s in self.code):
            return False
        return kind != 'md_star' or not self.has_marked_peak()

    def __str__(self) -> str:
        return self.code


def enumerate_paths(kind: str, n: int) -> Iterator[LatticePath]:
    """Stream every path of the family with half-length n, in lexicographic order"""
    kind = normalize_kind(kind)
    if n < 0:
        raise DomainError(f"Half-length must be nonnegative, got {n}")
    alphabet = _ALPHABETS[kind]
    no_marked_peak = kind == 'md_star'
    total = 2 * n
    steps: List[str] = []

    def extend(position: int, height: int) -> Iterator[LatticePath]:
        if position == total:
            if height == 0:
                yield LatticePath(''.join(steps))
            return
        remaining = total - position
        for step in alphabet:
            if step in _UPS:
                if height + 1 > remaining - 1:
                    continue
                new_position, new_height = position + 1, height + 1
            elif step in _DOWNS:
                if height == 0:
                    continue
                if no_marked_peak and step == 'd' and steps and steps[-1] == 'u':
                    continue
                new_position, new_height = position + 1, height - 1
            else:
                if remaining < 2 or height > remaining - 2:
                    continue
                new_position, new_height = position + 2, height
            steps.append(step)
            yield from extend(new_position, new_height)
            steps.pop()

    yield from extend(0, 0)


@dataclass(frozen=True)
class WeightSequence:
    """h -> a_h for h >= 1"""
    name: str
    fn: Callable[[int], MultiLaurent] = field(compare=False)

    def __call__(self, h: int) -> MultiLaurent:
        return MultiLaurent.coerce(self.fn(h))

    def minus_one(self) -> 'WeightSequence':
        """The sequence a_h - 1"""
        base = self.fn
        return WeightSequence(f"{self.name}-1", lambda h: MultiLaurent.coerce(base(h)) - 1)


@dataclass(frozen=True)
class WeightSequencePair:
    a: WeightSequence
    b: WeightSequence

    @property
    def name(self) -> str:
        return f"({self.a.name},{self.b.name})"


def _j_sequence(y: MultiLaurent) -> Callable[[int], MultiLaurent]:
    return lambda h: 1 + y * Q ** h if h % 2 else 1 - Q ** h


def weight_sequence(name: str, a: int = 0) -> WeightSequence:
    """Named weight sequences, with an optional "-1" suffix for a_h - 1.

    ONE, ZERO, U ([h]), V (1-q^h), UA ([a+h]), VA (1-q^(a+h)), J (1+yq, 1-q^2, ...),
    JP (J with 1/y), G1 (-q^(1+h//2)), G2 (-q^ceil(h/2)).
    """
    raw = name.strip().upper()
    if raw.endswith('-1'):
        return weight_sequence(raw[:-2], a).minus_one()
    table: Dict[str, Callable[[int], MultiLaurent]] = {
        'ONE': lambda h: MultiLaurent.one(),
        'ZERO': lambda h: MultiLaurent.zero(),
        'U': lambda h: qint(h),
        'V': lambda h: 1 - Q ** h,
        'UA': lambda h: qint(a + h),
        'VA': lambda h: 1 - Q ** (a + h),
        'J': _j_sequence(Y),
        'JP': _j_sequence(Y_INV),
        "J'": _j_sequence(Y_INV),
        'G1': lambda h: -Q ** (1 + h // 2),
        'G2': lambda h: -Q ** ((h + 1) // 2),
    }
    if raw not in table:
        raise DomainError(f"Unknown weight sequence: {name}")
    label = raw if raw not in ('UA', 'VA') else f"{raw[0]}_{a}"
    return WeightSequence(label, table[raw])


def weight_pair(spec: str, a: int = 0, b: int = 0) -> WeightSequencePair:
    """Parse "A,B" such as "V-1,V-1" or "J,JP"; UA/VA on the right use b"""
    try:
        left, right = spec.split(',')
    except ValueError as e:
        raise DomainError(f"Weight pair must look like 'A,B', got {spec!r}") from e
    return WeightSequencePair(weight_sequence(left, a), weight_sequence(right, b))


def path_weight(p: LatticePath, w: WeightSequencePair) -> MultiLaurent:
    """Product of a_h (unmarked up to h), b_h (unmarked down from h), -1 per H"""
    result = MultiLaurent.one()
    height = 0
    for step in p.code:
        if step == 'U':
            height += 1
            result = result * w.a(height)
        elif step == 'D':
            result = result * w.b(height)
            height -= 1
        elif step == 'u':
            height += 1
        elif step == 'd':
            height -= 1
        else:
            result = -result
    return result


def _transfer(kind: str, n: int, step_value: Callable[[str, int], object], zero, one):
    """Sum over a family of the product of step values, by height recursion.

    States are (height, previous step was a marked up); step_value(step, h) gets
    the height reached by an up step or left by a down step.
    """
    kind = normalize_kind(kind)
    alphabet = _ALPHABETS[kind]
    no_marked_peak = kind == 'md_star'
    total = 2 * n
    layers: List[Dict[Tuple[int, bool], object]] = [dict() for _ in range(total + 1)]
    layers[0][(0, False)] = one
    for position in range(total):
        remaining = total - position
        for (height, after_u), value in layers[position].items():
            for step in alphabet:
                if step in _UPS:
                    if height + 1 > remaining - 1:
                        continue
                    target, new_height = position + 1, height + 1
                    factor = step_value(step, new_height)
                elif step in _DOWNS:
                    if height == 0 or (no_marked_peak and step == 'd' and after_u):
                        continue
                    target, new_height = position + 1, height - 1
                    factor = step_value(step, height)
                else:
                    if remaining < 2 or height > remaining - 2:
                        continue
                    target, new_height = position + 2, height
                    factor = step_value(step, height)
                key = (new_height, step == 'u')
                layers[target][key] = layers[target].get(key, zero) + value * factor
    return sum((v for (h, _), v in layers[total].items() if h == 0), zero)


def family_size(kind: str, n: int) -> int:
    """Exact number of paths in the family"""
    return int(_transfer(kind, n, lambda step, h: 1, 0, 1))


def transfer_weight_sum(kind: str, n: int, w: WeightSequencePair) -> MultiLaurent:
    """Weight sum over the family without enumerating it"""
    def step_value(step: str, h: int) -> MultiLaurent:
        if step == 'U':
            return w.a(h)
        if step == 'D':
            return w.b(h)
        if step == 'H':
            return MultiLaurent.constant(-1)
        return MultiLaurent.one()
    result = _transfer(kind, n, step_value, MultiLaurent.zero(), MultiLaurent.one())
    paths_logger.debug(f"Transfer weight sum of {kind} n={n} under {w.name}")
    return result


def check_size(kind: str, n: int, limit: Optional[int] = None) -> int:
    limit = SIZE_LIMIT if limit is None else limit
    size = family_size(kind, n)
    if size > limit:
        raise SizeLimitError(f"{kind} with n={n} has {size} paths, above the limit {limit}")
    return size


def weight_sum(kind: str, n: int, w: WeightSequencePair, limit: Optional[int] = None) -> MultiLaurent:
    """Brute-force weight sum over the enumerated family"""
    size = check_size(kind, n, limit)
    paths_logger.debug(f"Enumerating {size} {kind} paths of half-length {n}")
    total = MultiLaurent.zero()
    for p in enumerate_paths(kind, n):
        total = total + path_weight(p, w)
    return total


def _involution_site(code: str) -> Optional[int]:
    for i, step in enumerate(code):
        if step == 'H':
            return i
        if step == 'u' and code[i + 1:i + 2] == 'd':
            return i
    return None


def marked_peak_involution(p: LatticePath) -> LatticePath:
    """Swap the leftmost horizontal step or marked peak for the other one.

    Sign-reversing for the weights (A-1, B-1); the fixed points are exactly the
    paths with neither, i.e. MD*.
    """
    site = _involution_site(p.code)
    if site is None:
        raise FixedPointError(f"{p.code} has no horizontal step and no marked peak")
    code = p.code
    if code[site] == 'H':
        return LatticePath(code[:site] + 'ud' + code[site + 1:])
    return LatticePath(code[:site] + 'H' + code[site + 2:])


@dataclass(frozen=True)
class PenaudDecomposition:
    prefix: str
    core: LatticePath

    @property
    def k(self) -> int:
        return self.core.half_length


def penaud_decompose(p: LatticePath) -> PenaudDecomposition:
    """Split a marked Dyck path into a Dyck prefix and an MD* core.

    The core is what remains after deleting every maximal marked Dyck factor;
    the prefix is p with those factors kept as U/D and every kept step turned
    into an up step, so it ends at twice the core's half-length.
    """
    if not p.belongs_to('marked_dyck'):
        raise DomainError(f"{p.code} is not a marked Dyck path")
    # repeated deletion of adjacent "ud" is bracket cancellation on the kept steps
    deleted = [False] * len(p.code)
    kept: List[int] = []
    for i, step in enumerate(p.code):
        if step == 'd' and kept and p.code[kept[-1]] == 'u':
            deleted[kept.pop()] = True
            deleted[i] = True
        else:
            kept.append(i)
    prefix = []
    for i, step in enumerate(p.code):
        if deleted[i]:
            prefix.append('U' if step in _UPS else 'D')
        else:
            prefix.append('U')
    core = LatticePath(''.join(s for i, s in enumerate(p.code) if not deleted[i]))
    return PenaudDecomposition(''.join(prefix), core)


def penaud_fibers(n: int, limit: Optional[int] = None) -> Dict[int, Dict[str, int]]:
    """For each k, how many marked Dyck paths of half-length n share each core"""
    check_size('marked_dyck', n, limit)
    census: Dict[int, Dict[str, int]] = {}
    for p in enumerate_paths('marked_dyck', n):
        decomposition = penaud_decompose(p)
        bucket = census.setdefault(decomposition.k, {})
        bucket[decomposition.core.code] = bucket.get(decomposition.core.code, 0) + 1
    return census


def is_dyck_prefix(word: str) -> Tuple[bool, int]:
    height = 0
    for step in word:
        height += 1 if step == 'U' else -1
        if height < 0:
            return False, height
    return True, height
