"""Staircase configurations.

A configuration lives inside the staircase delta_k = (k, k-1, ..., 1): a
partition lambda inside delta_{k-1} plus arrows, each filling a whole row or
column of delta_k/lambda (a k-arrow) or of delta_{k-1}/lambda (a (k-1)-arrow).
Arrow lengths are never stored; they follow from lambda.
"""
import os
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union
from dotenv import load_dotenv
from lib.contfrac import catalan
from lib.errors import BijectionViolation, DomainError, FixedPointError, SizeLimitError
from lib.logger import configs_logger
from lib.paths import LatticePath, transfer_weight_sum, weight_pair
from lib.qcore import MultiLaurent, Y

load_dotenv()
SIZE_LIMIT = int(os.getenv('QTR_SIZE_LIMIT', 10_000_000))

CONFIG_KINDS = ('half', 'delta_plus', 'delta_minus', 'overpartition', 'general')
WEIGHT_SCHEMES = ('wt_q', 'wt_yq', 'wt_ab', 'wt_prime', 'half_wt_q')
CLOSURE_OPS = ('ascend', 'descend', 'shrink', 'stretch', 'fill', 'remove')

HORIZONTAL = 'h'
VERTICAL = 'v'
K_ARROW = 'k'
KM1_ARROW = 'km1'


@dataclass(frozen=True, order=True)
class Partition:
    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts):
            raise DomainError(f"Negative part in {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise DomainError(f"Parts {parts} are not weakly decreasing")
        object.__setattr__(self, 'parts', tuple(p for p in parts if p > 0))

    def part(self, i: int) -> int:
        """lambda_i, 1-based, zero past the end"""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    @property
    def size(self) -> int:
        return sum(self.parts)

    def transpose(self) -> 'Partition':
        if not self.parts:
            return Partition()
        return Partition(tuple(sum(1 for p in self.parts if p >= j) for j in range(1, self.parts[0] + 1)))

    def inside_staircase(self, m: int) -> bool:
        """Whether the partition fits inside delta_m = (m, m-1, ..., 1)"""
        return all(p <= m + 1 - i for i, p in enumerate(self.parts, start=1))

    def __str__(self) -> str:
        return '(' + ','.join(str(p) for p in self.parts) + ')'


def staircase_partitions(m: int) -> Iterator[Partition]:
    """Every partition inside delta_m, lexicographic in the part sequence"""
    def extend(prefix: List[int], i: int, cap: int) -> Iterator[Partition]:
        if i > m or cap == 0:
            yield Partition(tuple(prefix))
            return
        for p in range(0, min(cap, m + 1 - i) + 1):
            if p == 0:
                yield Partition(tuple(prefix))
            else:
                prefix.append(p)
                yield from extend(prefix, i + 1, p)
                prefix.pop()
    yield from extend([], 1, m)


@dataclass(frozen=True, order=True)
class Overpartition:
    """Parts as (value, overlined) pairs, largest first, plain before overlined"""
    parts: Tuple[Tuple[int, bool], ...] = ()

    def __post_init__(self):
        parts = tuple((int(v), bool(o)) for v, o in self.parts if int(v) > 0)
        object.__setattr__(self, 'parts', parts)
        for (v1, o1), (v2, o2) in zip(parts, parts[1:]):
            if v1 < v2:
                raise DomainError(f"Overpartition parts {parts} are not weakly decreasing")
            if v1 == v2 and o1:
                raise DomainError(f"Only the last occurrence of {v1} may be overlined")

    @classmethod
    def from_parts(cls, parts: Iterable[Tuple[int, bool]]) -> 'Overpartition':
        return cls(tuple(sorted(((int(v), bool(o)) for v, o in parts), key=lambda p: (-p[0], p[1]))))

    @property
    def size(self) -> int:
        return sum(v for v, _ in self.parts)

    @property
    def overlined_count(self) -> int:
        return sum(1 for _, o in self.parts if o)

    @property
    def underlying(self) -> Partition:
        return Partition(tuple(v for v, _ in self.parts))

    def in_op(self, k: int) -> bool:
        return self.underlying.inside_staircase(k - 1)

    def weight(self) -> MultiLaurent:
        return MultiLaurent.monomial((-1) ** self.overlined_count, self.size)

    def __str__(self) -> str:
        return '(' + ','.join(f"{v}'" if o else str(v) for v, o in self.parts) + ')'


def enumerate_overpartitions(k: int) -> Iterator[Overpartition]:
    for lam in staircase_partitions(k - 1):
        values = sorted(set(lam.parts), reverse=True)
        for flags in product((False, True), repeat=len(values)):
            overlined = dict(zip(values, flags))
            parts = []
            for i, v in enumerate(lam.parts):
                last = i + 1 == len(lam.parts) or lam.parts[i + 1] != v
                parts.append((v, last and overlined[v]))
            yield Overpartition(tuple(parts))


def overpartition_involution(mu: Overpartition) -> Overpartition:
    """Toggle the overline on the smallest part; the empty overpartition is fixed"""
    if not mu.parts:
        return mu
    value, overlined = mu.parts[-1]
    return Overpartition(mu.parts[:-1] + ((value, not overlined),))


@dataclass(frozen=True, order=True)
class Arrow:
    orientation: str
    kind: str
    index: int

    def __post_init__(self):
        if self.orientation not in (HORIZONTAL, VERTICAL):
            raise DomainError(f"Arrow orientation must be 'h' or 'v', got {self.orientation!r}")
        if self.kind not in (K_ARROW, KM1_ARROW):
            raise DomainError(f"Arrow kind must be 'k' or 'km1', got {self.kind!r}")
        if self.index < 1:
            raise DomainError(f"Arrow index must be positive, got {self.index}")

    def with_kind(self, kind: str) -> 'Arrow':
        return Arrow(self.orientation, kind, self.index)

    def moved(self, index: int, kind: str) -> 'Arrow':
        return Arrow(self.orientation, kind, index)

    def transposed(self) -> 'Arrow':
        return Arrow(VERTICAL if self.orientation == HORIZONTAL else HORIZONTAL, self.kind, self.index)


@dataclass(frozen=True)
class DeltaConfig:
    """A general delta_k-configuration: at most one arrow per row and per column"""
    k: int
    partition: Partition
    arrows: FrozenSet[Arrow] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, 'arrows', frozenset(self.arrows))
        if self.k < 0:
            raise DomainError(f"k must be nonnegative, got {self.k}")
        if self.k and not self.partition.inside_staircase(self.k - 1):
            raise DomainError(f"{self.partition} is not inside delta_{self.k - 1}")
        if not self.k and self.partition.parts:
            raise DomainError("delta_0 holds only the empty partition")
        seen = set()
        for arrow in self.arrows:
            if arrow.index > self.k:
                raise DomainError(f"Arrow index {arrow.index} exceeds k={self.k}")
            line = (arrow.orientation, arrow.index)
            if line in seen:
                raise DomainError(f"Two arrows share {arrow.orientation} line {arrow.index}")
            seen.add(line)
            length = self.length(arrow)
            if length < 0 or (length == 0 and arrow.kind == K_ARROW):
                raise DomainError(f"{arrow} does not fit: derived length {length}")

    @cached_property
    def rows(self) -> Tuple[int, ...]:
        """lambda_1..lambda_k, zero padded"""
        return tuple(self.partition.part(i) for i in range(1, self.k + 1))

    @cached_property
    def columns(self) -> Tuple[int, ...]:
        tr = self.partition.transpose()
        return tuple(tr.part(j) for j in range(1, self.k + 1))

    def lam(self, i: int) -> int:
        return self.rows[i - 1] if 1 <= i <= self.k else 0

    def lam_tr(self, j: int) -> int:
        return self.columns[j - 1] if 1 <= j <= self.k else 0

    def line(self, orientation: str, i: int) -> int:
        return self.lam(i) if orientation == HORIZONTAL else self.lam_tr(i)

    def length(self, arrow: Arrow) -> int:
        base = self.k + 1 - arrow.index - self.line(arrow.orientation, arrow.index)
        return base if arrow.kind == K_ARROW else base - 1

    @cached_property
    def _by_line(self) -> Dict[Tuple[str, int], Arrow]:
        return {(a.orientation, a.index): a for a in self.arrows}

    def h_arrow(self, i: int) -> Optional[Arrow]:
        return self._by_line.get((HORIZONTAL, i))

    def v_arrow(self, j: int) -> Optional[Arrow]:
        return self._by_line.get((VERTICAL, j))

    def arrow_on(self, orientation: str, i: int) -> Optional[Arrow]:
        return self._by_line.get((orientation, i))

    def sorted_arrows(self) -> List[Arrow]:
        """Horizontal arrows top to bottom, then vertical arrows left to right"""
        return sorted(self.arrows, key=lambda a: (a.orientation != HORIZONTAL, a.index))

    def is_outer_corner_row(self, i: int) -> bool:
        """Whether (i, lambda_i + 1) is an outer corner inside delta_k"""
        if not 1 <= i <= self.k or self.lam(i) + 1 > self.k + 1 - i:
            return False
        return i == 1 or self.lam(i - 1) > self.lam(i)

    def is_inner_corner_row(self, i: int) -> bool:
        """Whether (i, lambda_i) is an inner corner"""
        return 1 <= i <= self.k and self.lam(i) > 0 and self.lam(i + 1) < self.lam(i)

    def outer_corners(self) -> List[Tuple[int, int]]:
        return [(i, self.lam(i) + 1) for i in range(1, self.k + 1) if self.is_outer_corner_row(i)]

    def inner_corners(self) -> List[Tuple[int, int]]:
        return [(i, self.lam(i)) for i in range(1, self.k + 1) if self.is_inner_corner_row(i)]

    def forbidden_corners(self) -> List[Tuple[int, int]]:
        out = []
        for i, j in self.outer_corners():
            h, v = self.h_arrow(i), self.v_arrow(j)
            if h and v and h.kind == K_ARROW and v.kind == K_ARROW:
                out.append((i, j))
        return out

    def fillable_corners(self) -> List[Tuple[int, int]]:
        out = []
        for i, j in self.outer_corners():
            h, v = self.h_arrow(i), self.v_arrow(j)
            if (h and v and self.length(h) >= 1 and self.length(v) >= 1
                    and KM1_ARROW in (h.kind, v.kind)):
                out.append((i, j))
        return out

    def removable_corners(self) -> List[Tuple[int, int]]:
        out = []
        for i, j in self.inner_corners():
            h, v = self.h_arrow(i), self.v_arrow(j)
            if h and v and KM1_ARROW in (h.kind, v.kind):
                out.append((i, j))
        return out

    @property
    def norm(self) -> int:
        return sum(self.length(a) for a in self.arrows)

    def replace(self, rows: Optional[Sequence[int]] = None, remove: Iterable[Arrow] = (),
                add: Iterable[Arrow] = ()) -> 'DeltaConfig':
        arrows = set(self.arrows)
        arrows.difference_update(remove)
        arrows.update(add)
        partition = self.partition if rows is None else Partition(tuple(rows))
        return DeltaConfig(self.k, partition, frozenset(arrows))

    def __str__(self) -> str:
        arrows = ' '.join(f"{a.orientation}{a.index}:{a.kind}" for a in self.sorted_arrows())
        return f"k={self.k} {self.partition} [{arrows}]"


@dataclass(frozen=True)
class HalfConfig:
    """Horizontal k-arrows only, none starting at an outer corner"""
    k: int
    partition: Partition
    arrow_rows: FrozenSet[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, 'arrow_rows', frozenset(self.arrow_rows))
        if self.k < 0:
            raise DomainError(f"k must be nonnegative, got {self.k}")
        if self.k and not self.partition.inside_staircase(self.k - 1):
            raise DomainError(f"{self.partition} is not inside delta_{self.k - 1}")
        for i in self.arrow_rows:
            if not 2 <= i <= self.k or self.partition.part(i - 1) != self.partition.part(i):
                raise DomainError(f"Row {i} arrow would start at an outer corner")

    def length(self, i: int) -> int:
        return self.k + 1 - i - self.partition.part(i)

    @property
    def norm(self) -> int:
        return sum(self.length(i) for i in self.arrow_rows)

    def as_delta_config(self) -> DeltaConfig:
        return DeltaConfig(self.k, self.partition, frozenset(Arrow(HORIZONTAL, K_ARROW, i) for i in self.arrow_rows))

    def __str__(self) -> str:
        return f"k={self.k} {self.partition} rows={sorted(self.arrow_rows)}"


AnyConfig = Union[DeltaConfig, HalfConfig]


def is_delta_plus(c: DeltaConfig) -> bool:
    return all(a.kind == K_ARROW for a in c.arrows) and not c.forbidden_corners()


def _has_h(c: DeltaConfig, r: int, col: int, kinds: Tuple[str, ...]) -> Optional[str]:
    """Kind of the horizontal arrow starting at cell (r, col), if any"""
    a = c.h_arrow(r)
    if a and a.kind in kinds and c.lam(r) + 1 == col:
        return a.kind
    return None


def _has_v(c: DeltaConfig, r: int, col: int, kinds: Tuple[str, ...]) -> Optional[str]:
    a = c.v_arrow(col)
    if a and a.kind in kinds and c.lam_tr(col) + 1 == r:
        return a.kind
    return None


_BOTH = (K_ARROW, KM1_ARROW)
_K_ONLY = (K_ARROW,)


@dataclass(frozen=True)
class Miniature:
    """The three cells (k-i, i), (k-i, i+1) and (k-i+1, i).

    right_h/bottom_v are 'k', 'km1' or None; right_v/bottom_h see k-arrows only.
    """
    i: int
    row: int
    middle_filled: bool
    right_h: Optional[str]
    right_v: Optional[str]
    bottom_h: Optional[str]
    bottom_v: Optional[str]

    @property
    def name(self) -> Optional[str]:
        if not self.middle_filled:
            return None
        return MINIATURE_TABLE.get((self.right_h, self.right_v, self.bottom_h, self.bottom_v))


# (right horizontal, right vertical, bottom horizontal, bottom vertical)
MINIATURE_TABLE: Dict[Tuple[Optional[str], ...], str] = {
    (None, None, None, None): 'A0',
    (KM1_ARROW, None, None, None): 'A1',
    (None, None, None, KM1_ARROW): 'B0',
    (KM1_ARROW, None, None, KM1_ARROW): 'B1',
    (None, None, K_ARROW, None): 'C0',
    (KM1_ARROW, None, K_ARROW, None): 'C1',
    (None, None, None, K_ARROW): 'D0',
    (KM1_ARROW, None, None, K_ARROW): 'D1',
    (None, K_ARROW, None, None): 'E0',
    (None, K_ARROW, None, KM1_ARROW): 'E1',
    (K_ARROW, None, None, None): 'F0',
    (K_ARROW, None, None, KM1_ARROW): 'F1',
    (K_ARROW, None, K_ARROW, None): 'G0',
    (K_ARROW, None, K_ARROW, KM1_ARROW): 'G1',
    (None, K_ARROW, None, K_ARROW): 'H0',
    (KM1_ARROW, K_ARROW, None, K_ARROW): 'H1',
    (None, K_ARROW, K_ARROW, None): 'I0',
    (K_ARROW, None, None, K_ARROW): 'I1',
}


def miniatures(c: DeltaConfig) -> List[Miniature]:
    """Miniatures for i = 1..k-1, bottom first"""
    out = []
    k = c.k
    for i in range(1, k):
        r = k - i
        out.append(Miniature(
            i=i,
            row=r,
            middle_filled=c.lam(r) >= i,
            right_h=_has_h(c, r, i + 1, _BOTH),
            right_v=_has_v(c, r, i + 1, _K_ONLY),
            bottom_h=_has_h(c, r + 1, i, _K_ONLY),
            bottom_v=_has_v(c, r + 1, i, _BOTH),
        ))
    return out


def _miniature_implications_hold(m: Miniature) -> bool:
    if m.bottom_h == K_ARROW and not m.middle_filled:
        return False
    if m.right_v == K_ARROW and not m.middle_filled:
        return False
    if m.bottom_h == K_ARROW and m.bottom_v == KM1_ARROW and m.right_h != K_ARROW:
        return False
    if m.right_v == K_ARROW and m.right_h == KM1_ARROW and m.bottom_v != K_ARROW:
        return False
    return True


def delta_minus_violations(c: DeltaConfig) -> List[str]:
    problems = []
    if c.fillable_corners():
        problems.append(f"fillable corners {c.fillable_corners()}")
    if c.forbidden_corners():
        problems.append(f"forbidden corners {c.forbidden_corners()}")
    for orientation in (HORIZONTAL, VERTICAL):
        a = c.arrow_on(orientation, c.k)
        if a and c.length(a) == 0:
            problems.append(f"length-0 arrow on {orientation} line {c.k}")
    for a in c.arrows:
        if a.kind == K_ARROW and c.length(a) != 1:
            problems.append(f"k-arrow {a.orientation}{a.index} has length {c.length(a)}")
    for m in miniatures(c):
        if not _miniature_implications_hold(m):
            problems.append(f"miniature {m.i} breaks the corner implications")
    return problems


def is_delta_minus(c: DeltaConfig) -> bool:
    return not delta_minus_violations(c)


def _size_bound(kind: str, k: int) -> int:
    per_line = {'half': 2, 'delta_plus': 4, 'overpartition': 2, 'delta_minus': 9, 'general': 9}[kind]
    return int(catalan(k)) * per_line ** k


def _line_options(c_rows: Sequence[int], k: int, kind: str) -> List[List[Optional[str]]]:
    options = []
    for i in range(1, k + 1):
        k_length = k + 1 - i - (c_rows[i - 1] if i <= len(c_rows) else 0)
        opts: List[Optional[str]] = [None, K_ARROW]
        if kind in ('delta_minus', 'general'):
            if kind == 'delta_minus' and k_length != 1:
                opts = [None]
            if not (kind == 'delta_minus' and i == k):
                opts.append(KM1_ARROW)
        options.append(opts)
    return options


def _configs_over(lam: Partition, k: int, kind: str) -> Iterator[DeltaConfig]:
    padded = tuple(lam.part(i) for i in range(1, k + 1))
    tr = lam.transpose()
    padded_tr = tuple(tr.part(j) for j in range(1, k + 1))
    row_opts = _line_options(padded, k, kind)
    col_opts = _line_options(padded_tr, k, kind)
    for rows in product(*row_opts):
        for cols in product(*col_opts):
            arrows = [Arrow(HORIZONTAL, kd, i) for i, kd in enumerate(rows, start=1) if kd]
            arrows += [Arrow(VERTICAL, kd, j) for j, kd in enumerate(cols, start=1) if kd]
            yield DeltaConfig(k, lam, frozenset(arrows))


def enumerate_configs(kind: str, k: int, limit: Optional[int] = None) -> Iterator[Union[DeltaConfig, HalfConfig, Overpartition]]:
    """Stream a configuration family; raises SizeLimitError up front when too large"""
    if kind not in CONFIG_KINDS:
        raise DomainError(f"Unknown configuration family: {kind}")
    if k < 0:
        raise DomainError(f"k must be nonnegative, got {k}")
    limit = SIZE_LIMIT if limit is None else limit
    bound = _size_bound(kind, k)
    if bound > limit:
        raise SizeLimitError(f"{kind} at k={k} may hold {bound} objects, above the limit {limit}")
    configs_logger.debug(f"Enumerating {kind} configurations at k={k} (bound {bound})")
    if kind == 'overpartition':
        yield from enumerate_overpartitions(k)
        return
    for lam in staircase_partitions(max(k - 1, 0)):
        if kind == 'half':
            candidates = [i for i in range(2, k + 1) if lam.part(i - 1) == lam.part(i)]
            for flags in product((False, True), repeat=len(candidates)):
                yield HalfConfig(k, lam, frozenset(i for i, f in zip(candidates, flags) if f))
            continue
        for c in _configs_over(lam, k, kind):
            if kind == 'delta_plus' and c.forbidden_corners():
                continue
            if kind == 'delta_minus' and not is_delta_minus(c):
                continue
            yield c


def weights(c: Union[AnyConfig, Overpartition], scheme: str, a: int = 0, b: int = 0) -> MultiLaurent:
    """Weight of a configuration under a named scheme, from derived arrow lengths"""
    if scheme not in WEIGHT_SCHEMES:
        raise DomainError(f"Unknown weight scheme: {scheme}")
    if isinstance(c, Overpartition):
        if scheme != 'half_wt_q':
            raise DomainError(f"Overpartitions only carry half_wt_q, not {scheme}")
        return c.weight()
    if isinstance(c, HalfConfig):
        if scheme != 'half_wt_q':
            raise DomainError(f"Half configurations only carry half_wt_q, not {scheme}")
        return MultiLaurent.monomial((-1) ** len(c.arrow_rows), c.partition.size + c.norm)
    if scheme == 'half_wt_q':
        raise DomainError("half_wt_q applies to half configurations only")
    sign = (-1) ** len(c.arrows)
    if scheme == 'wt_q':
        return MultiLaurent.monomial(sign, 2 * c.partition.size + c.norm)
    if scheme == 'wt_yq':
        odd_h = sum(1 for u in c.arrows if u.orientation == HORIZONTAL and c.length(u) % 2)
        odd_v = sum(1 for u in c.arrows if u.orientation == VERTICAL and c.length(u) % 2)
        return MultiLaurent.monomial(sign, 2 * c.partition.size + c.norm) * (-Y) ** (odd_h - odd_v)
    if scheme == 'wt_ab':
        h = sum(1 for u in c.arrows if u.orientation == HORIZONTAL)
        v = len(c.arrows) - h
        return MultiLaurent.monomial(sign, 2 * c.partition.size + c.norm + a * h + b * v)
    exponent = c.partition.size
    for u in c.arrows:
        length = c.length(u)
        exponent += 1 + length // 2 if u.orientation == HORIZONTAL else (length + 1) // 2
    return MultiLaurent.monomial(sign, exponent)


def config_weight_sum(kind: str, k: int, scheme: str, a: int = 0, b: int = 0,
                      limit: Optional[int] = None) -> MultiLaurent:
    total = MultiLaurent.zero()
    count = 0
    for c in enumerate_configs(kind, k, limit):
        total = total + weights(c, scheme, a, b)
        count += 1
    configs_logger.debug(f"Summed {scheme} over {count} {kind} configurations at k={k}")
    return total


# weight pairs and the q-power of the transport law for each Delta^+ scheme
def _transport(scheme: str, k: int, a: int, b: int) -> Tuple[str, int, int, int]:
    if scheme == 'wt_q':
        return 'V-1,V-1', k * (k + 1), 0, 0
    if scheme == 'wt_yq':
        return 'J-1,JP-1', k * (k + 1), 0, 0
    if scheme == 'wt_ab':
        return 'VA-1,VA-1', k * (k + 1 + a + b), a, b
    if scheme == 'wt_prime':
        return 'G1,G2', (k + 2) * (k + 1) // 2 - 1, 0, 0
    raise DomainError(f"No path transport for scheme {scheme}")


def delta_plus_transfer_sum(k: int, scheme: str, a: int = 0, b: int = 0) -> MultiLaurent:
    """Delta_k^+ weight sum through the marked-path transport, without enumeration"""
    spec, shift, wa, wb = _transport(scheme, k, a, b)
    path_sum = transfer_weight_sum('md_star', k, weight_pair(spec, wa, wb))
    # path side is q^shift times the weight at (y^-1, q^-1); invert both back
    return (path_sum.invert_q().invert_y() * MultiLaurent.monomial(1, shift))


def config_to_mdstar(c: AnyConfig) -> LatticePath:
    """North-west border of delta_k/lambda read from row k up to row 1.

    Each row contributes an up step, marked when the row has an arrow, followed
    by down steps for columns lambda_i+1..lambda_{i-1}, marked when the column
    has an arrow. Half configurations mark every down step.
    """
    if isinstance(c, HalfConfig):
        marked_row = lambda i: i in c.arrow_rows
        marked_column = lambda j: True
        lam = c.partition
        k = c.k
    else:
        if not is_delta_plus(c):
            raise DomainError(f"{c} is not a Delta^+ configuration")
        marked_row = lambda i: c.h_arrow(i) is not None
        marked_column = lambda j: c.v_arrow(j) is not None
        lam = c.partition
        k = c.k
    steps = []
    for i in range(k, 0, -1):
        steps.append('u' if marked_row(i) else 'U')
        upper = k if i == 1 else lam.part(i - 1)
        for j in range(lam.part(i) + 1, upper + 1):
            steps.append('d' if marked_column(j) else 'D')
    return LatticePath(''.join(steps))


def mdstar_to_config(p: LatticePath, k: int, half: bool = False) -> AnyConfig:
    if p.half_length != k or 'H' in p.code or p.has_marked_peak():
        raise DomainError(f"{p.code} is not an MD* path of half-length {k}")
    if half and 'D' in p.code:
        raise DomainError(f"{p.code} has an unmarked down step")
    rows = [0] * (k + 1)
    arrow_rows = set()
    arrow_columns = set()
    i = k + 1
    column = 0
    for step in p.code:
        if step in 'Uu':
            i -= 1
            rows[i] = column
            if step == 'u':
                arrow_rows.add(i)
        else:
            column += 1
            if step == 'd':
                arrow_columns.add(column)
    lam = Partition(tuple(rows[1:]))
    if half:
        return HalfConfig(k, lam, frozenset(arrow_rows))
    arrows = [Arrow(HORIZONTAL, K_ARROW, r) for r in arrow_rows]
    arrows += [Arrow(VERTICAL, K_ARROW, j) for j in arrow_columns]
    return DeltaConfig(k, lam, frozenset(arrows))


def psi1(h: HalfConfig) -> Overpartition:
    """Arrow rows become overlined parts k+1-i; the other rows keep their parts"""
    parts = []
    for i in range(1, h.k + 1):
        if i in h.arrow_rows:
            parts.append((h.k + 1 - i, True))
        elif h.partition.part(i):
            parts.append((h.partition.part(i), False))
    return Overpartition.from_parts(parts)


def phi1(mu: Overpartition, k: int) -> HalfConfig:
    """Overlined v goes back to row k+1-v; plain parts fill the free rows in order"""
    if not mu.in_op(k):
        raise DomainError(f"{mu} is not in OP_{k}")
    arrow_rows = {k + 1 - v for v, o in mu.parts if o}
    plain = [v for v, o in mu.parts if not o]
    rows: List[int] = []
    for i in range(1, k + 1):
        if i in arrow_rows:
            rows.append(rows[-1] if rows else 0)
        else:
            rows.append(plain.pop(0) if plain else 0)
    try:
        h = HalfConfig(k, Partition(tuple(rows)), frozenset(arrow_rows))
    except DomainError as e:
        raise DomainError(f"{mu} has no half configuration at k={k}: {e}") from e
    if plain or psi1(h) != mu:
        raise DomainError(f"{mu} has no half configuration at k={k}")
    return h


# Moves. Each returns the moved configuration or None when the site is not eligible.

def _ascend(c: DeltaConfig, u: Arrow) -> Optional[DeltaConfig]:
    i = u.index
    if u.kind != K_ARROW or i < 2 or c.line(u.orientation, i - 1) != c.line(u.orientation, i):
        return None
    if c.arrow_on(u.orientation, i - 1):
        return None
    return c.replace(remove=[u], add=[u.moved(i - 1, KM1_ARROW)])


def _descend(c: DeltaConfig, u: Arrow) -> Optional[DeltaConfig]:
    i = u.index
    if u.kind != KM1_ARROW or i > c.k - 1 or c.line(u.orientation, i) != c.line(u.orientation, i + 1):
        return None
    if c.arrow_on(u.orientation, i + 1):
        return None
    return c.replace(remove=[u], add=[u.moved(i + 1, K_ARROW)])


def _start_cell(c: DeltaConfig, u: Arrow) -> Tuple[int, int]:
    if u.orientation == HORIZONTAL:
        return u.index, c.lam(u.index) + 1
    return c.lam_tr(u.index) + 1, u.index


def _with_cell(c: DeltaConfig, r: int, delta: int) -> List[int]:
    rows = list(c.rows)
    rows[r - 1] += delta
    return rows


def _shrink(c: DeltaConfig, u: Arrow) -> Optional[DeltaConfig]:
    if u.kind != K_ARROW or c.length(u) < 2:
        return None
    r, col = _start_cell(c, u)
    if not c.is_outer_corner_row(r) or c.lam(r) + 1 != col:
        return None
    other = c.v_arrow(col) if u.orientation == HORIZONTAL else c.h_arrow(r)
    if other is not None:
        return None
    return c.replace(rows=_with_cell(c, r, 1), remove=[u], add=[u.with_kind(KM1_ARROW)])


def _stretch(c: DeltaConfig, u: Arrow) -> Optional[DeltaConfig]:
    if u.kind != KM1_ARROW:
        return None
    if u.orientation == HORIZONTAL:
        r = u.index
        col = c.lam(r)
        if not c.is_inner_corner_row(r) or c.v_arrow(col) is not None:
            return None
    else:
        col = u.index
        r = c.lam_tr(col)
        if r == 0 or not c.is_inner_corner_row(r) or c.lam(r) != col or c.h_arrow(r) is not None:
            return None
    return c.replace(rows=_with_cell(c, r, -1), remove=[u], add=[u.with_kind(K_ARROW)])


def _fill(c: DeltaConfig, corner: Tuple[int, int]) -> Optional[DeltaConfig]:
    if corner not in c.fillable_corners():
        return None
    return c.replace(rows=_with_cell(c, corner[0], 1))


def _remove(c: DeltaConfig, corner: Tuple[int, int]) -> Optional[DeltaConfig]:
    if corner not in c.removable_corners():
        return None
    return c.replace(rows=_with_cell(c, corner[0], -1))


_ARROW_MOVES = {'ascend': _ascend, 'descend': _descend, 'shrink': _shrink, 'stretch': _stretch}
_CORNER_MOVES = {'fill': (_fill, 'outer_corners'), 'remove': (_remove, 'inner_corners')}


def _first_move(c: DeltaConfig, op: str, reverse: bool) -> Optional[DeltaConfig]:
    if op in _ARROW_MOVES:
        move = _ARROW_MOVES[op]
        sites = c.sorted_arrows()
        for u in reversed(sites) if reverse else sites:
            moved = move(c, u)
            if moved is not None:
                return moved
        return None
    move, corners = _CORNER_MOVES[op]
    sites = getattr(c, corners)()
    for corner in reversed(sites) if reverse else sites:
        moved = move(c, corner)
        if moved is not None:
            return moved
    return None


def op_closure(c: DeltaConfig, op: str, reverse: bool = False) -> DeltaConfig:
    """Apply a move at the first eligible site, rescanning, until none is left.

    Sites are scanned rows first, top to bottom, then columns left to right;
    reverse=True scans the other way round.
    """
    op = op.lower()
    if op not in CLOSURE_OPS:
        raise DomainError(f"Unknown move: {op}")
    passes = 0
    while True:
        moved = _first_move(c, op, reverse)
        if moved is None:
            break
        c = moved
        passes += 1
    configs_logger.debug(f"{op} closure stopped after {passes} moves")
    return c


PSI_STEPS = ('ascend', 'fill', 'shrink', 'fill')
PHI_STEPS = ('remove', 'stretch', 'remove', 'descend')


def _run_steps(c: DeltaConfig, steps: Sequence[str]) -> List[Tuple[str, DeltaConfig]]:
    trace = [('start', c)]
    for op in steps:
        c = op_closure(c, op)
        trace.append((op, c))
    return trace


def psi_trace(c: DeltaConfig) -> List[Tuple[str, DeltaConfig]]:
    if not is_delta_plus(c):
        raise DomainError(f"{c} is not a Delta^+ configuration")
    trace = _run_steps(c, PSI_STEPS)
    image = trace[-1][1]
    problems = delta_minus_violations(image)
    if problems:
        raise BijectionViolation(f"psi({c}) = {image} is not in Delta^-: {'; '.join(problems)}")
    return trace


def phi_trace(c: DeltaConfig) -> List[Tuple[str, DeltaConfig]]:
    if not is_delta_minus(c):
        raise DomainError(f"{c} is not a Delta^- configuration")
    trace = _run_steps(c, PHI_STEPS)
    image = trace[-1][1]
    if not is_delta_plus(image):
        raise BijectionViolation(f"phi({c}) = {image} is not in Delta^+")
    return trace


def psi(c: DeltaConfig) -> DeltaConfig:
    """Fill . Shrink . Fill . Ascend, from Delta^+_k to Delta^-_k"""
    return psi_trace(c)[-1][1]


def phi(c: DeltaConfig) -> DeltaConfig:
    """Descend . Remove . Stretch . Remove, from Delta^-_k to Delta^+_k"""
    return phi_trace(c)[-1][1]


def embed_previous(c: DeltaConfig) -> DeltaConfig:
    """A Delta^+_{k-1} configuration read as a delta_k configuration with (k-1)-arrows"""
    if not is_delta_plus(c):
        raise DomainError(f"{c} is not a Delta^+ configuration")
    return DeltaConfig(c.k + 1, c.partition, frozenset(a.with_kind(KM1_ARROW) for a in c.arrows))


def is_embedded_previous(c: DeltaConfig) -> bool:
    if c.k == 0 or any(a.kind != KM1_ARROW for a in c.arrows):
        return False
    try:
        previous = DeltaConfig(c.k - 1, c.partition, frozenset(a.with_kind(K_ARROW) for a in c.arrows))
    except DomainError:
        return False
    return is_delta_plus(previous)


def fixed_points(k: int) -> Tuple[DeltaConfig, DeltaConfig]:
    """The two configurations whose miniatures are all I0 or I1.

    lambda = delta_{k-1}; cell (k+1-m, m) starts a length-1 k-arrow, horizontal
    for odd m and vertical for even m, and the twin swaps the orientations.
    """
    if k < 1:
        raise DomainError(f"Fixed points exist for k >= 1, got {k}")
    lam = Partition(tuple(range(k - 1, 0, -1)))
    first, second = [], []
    for m in range(1, k + 1):
        horizontal = Arrow(HORIZONTAL, K_ARROW, k + 1 - m)
        vertical = Arrow(VERTICAL, K_ARROW, m)
        first.append(horizontal if m % 2 else vertical)
        second.append(vertical if m % 2 else horizontal)
    return DeltaConfig(k, lam, frozenset(first)), DeltaConfig(k, lam, frozenset(second))


_HZERO_TOGGLES = set('ABCDH')
_VZERO_TOGGLES = set('EFG')


def involution_f(c: DeltaConfig) -> DeltaConfig:
    """Toggle a length-0 arrow in the uppermost listed miniature other than I0/I1"""
    if not is_delta_minus(c):
        raise DomainError(f"{c} is not a Delta^- configuration")
    if is_embedded_previous(c):
        raise DomainError(f"{c} is the image of a Delta^+_{c.k - 1} configuration")
    for m in reversed(miniatures(c)):
        name = m.name
        if name is None or name[0] == 'I':
            continue
        r = c.k - m.i
        if name[0] in _HZERO_TOGGLES:
            zero = Arrow(HORIZONTAL, KM1_ARROW, r)
        else:
            zero = Arrow(VERTICAL, KM1_ARROW, m.i)
        if zero in c.arrows:
            return c.replace(remove=[zero])
        return c.replace(add=[zero])
    raise FixedPointError(f"Every miniature of {c} is I0 or I1")


def transpose(c: DeltaConfig) -> DeltaConfig:
    return DeltaConfig(c.k, c.partition.transpose(), frozenset(a.transposed() for a in c.arrows))


def render(c: AnyConfig) -> str:
    """ASCII Ferrers picture: '#' for lambda, '-' and '|' for arrows, '+' for both"""
    if isinstance(c, HalfConfig):
        c = c.as_delta_config()
    lines = []
    for i in range(1, c.k + 1):
        cells = []
        for j in range(1, c.k + 2 - i):
            if j <= c.lam(i):
                cells.append('#')
                continue
            h = c.h_arrow(i)
            v = c.v_arrow(j)
            in_h = h is not None and j <= c.lam(i) + c.length(h)
            in_v = v is not None and i <= c.lam_tr(j) + c.length(v)
            cells.append('+' if in_h and in_v else '-' if in_h else '|' if in_v else '.')
        lines.append(''.join(cells))
    zeros = [f"{a.orientation}{a.index}" for a in c.sorted_arrows() if c.length(a) == 0]
    if zeros:
        lines.append('length 0: ' + ' '.join(zeros))
    return '\n'.join(lines)
