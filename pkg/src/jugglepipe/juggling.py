"""Siteswaps, juggling states, bounded patterns and positroid rank data.

A juggling function of period n is stored by its throws ``t_i = f(i) - i``
for ``i = 1..n``.  Cyclic column intervals ``[i, j]`` are pairs with
``1 <= i <= n`` and ``i <= j < i + n``; column ``j`` means ``(j - 1) % n + 1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .coxeter import AffinePermutation
from .errors import (
    CollisionError,
    NegativeThrowError,
    RankDeficientError,
    UnsatisfiableConditionError,
)

__all__ = [
    "JugglingFunction",
    "JugglingState",
    "RankCondition",
    "PositroidData",
    "parse_siteswap",
    "validate_siteswap",
    "state_at",
    "state_graph",
    "count_cycles",
    "is_ground_state",
    "enumerate_bounded",
    "nested_arc_pairs",
    "juggling_poset",
    "positroid_data",
    "strip_diagram",
    "single_condition_pattern",
    "positroid_of_matrix",
    "matrix_rank",
    "interval_columns",
]


def parse_siteswap(text: str) -> tuple[int, ...]:
    """Digit string (one throw per digit) or comma-separated list."""
    text = text.strip()
    if "," in text or text.startswith("-"):
        return tuple(int(t) for t in text.split(","))
    return tuple(int(ch, 36) for ch in text)


def validate_siteswap(throws: Sequence[int]) -> int:
    """Ball count of a periodic siteswap; raises on a landing collision."""
    throws = tuple(throws)
    if not throws:
        raise ValueError("empty siteswap")
    n = len(throws)
    first = None
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            la, lb = a + throws[a - 1], b + throws[b - 1]
            if (la - lb) % n:
                continue
            # later periodic copies of the earlier-landing throw meet the other one
            time = max(la, lb)
            ta, tb = a + (time - la), b + (time - lb)
            if first is None or time < first[0]:
                first = (time, tuple(sorted((ta, tb))))
    if first is not None:
        raise CollisionError(*first)
    return sum(throws) // n


@dataclass(frozen=True)
class JugglingFunction:
    throws: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "throws", tuple(int(t) for t in self.throws))
        validate_siteswap(self.throws)

    @classmethod
    def parse(cls, text: str) -> "JugglingFunction":
        return cls(parse_siteswap(text))

    @classmethod
    def from_window(cls, window: Sequence[int]) -> "JugglingFunction":
        return cls(tuple(v - i for i, v in enumerate(window, start=1)))

    @classmethod
    def constant(cls, n: int, k: int) -> "JugglingFunction":
        return cls((k,) * n)

    @classmethod
    def from_lambda(cls, lam: Iterable[int], n: int) -> "JugglingFunction":
        """n-throws at the positions of ``lam`` and 0-throws elsewhere."""
        lam = set(lam)
        return cls(tuple(n if i in lam else 0 for i in range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.throws)

    @property
    def k(self) -> int:
        return sum(self.throws) // self.n

    def __call__(self, i: int) -> int:
        r = (i - 1) % self.n
        return i + self.throws[r]

    @property
    def window(self) -> tuple[int, ...]:
        return tuple(self(i) for i in range(1, self.n + 1))

    def to_affine(self) -> AffinePermutation:
        return AffinePermutation(self.n, self.window)

    @property
    def is_plain(self) -> bool:
        return all(t >= 0 for t in self.throws)

    @property
    def is_bounded(self) -> bool:
        return all(0 <= t <= self.n for t in self.throws)

    def __str__(self) -> str:
        if all(0 <= t < 10 for t in self.throws):
            return "".join(str(t) for t in self.throws)
        return ",".join(str(t) for t in self.throws)


@dataclass(frozen=True)
class JugglingState:
    landing: frozenset[int]

    def __str__(self) -> str:
        top = max(self.landing, default=0)
        return "".join("x" if j in self.landing else "-" for j in range(1, top + 1))


def state_at(f: JugglingFunction, i: int) -> JugglingState:
    """Offsets ``j >= 1`` at which balls already thrown by time ``i`` land."""
    if not f.is_plain:
        raise NegativeThrowError(f"{f} has a negative throw")
    landing = set()
    # any ball in the air at time i was thrown within the last max-throw beats
    for s in range(i - max(f.throws), i + 1):
        land = f(s)
        if land > i:
            landing.add(land - i)
    return JugglingState(frozenset(landing))


@dataclass(frozen=True)
class StateGraph:
    vertices: tuple[frozenset[int], ...]
    edges: tuple[tuple[frozenset[int], frozenset[int], int], ...]  # (source, target, throw)

    def adjacency(self) -> list[list[int]]:
        index = {v: a for a, v in enumerate(self.vertices)}
        mat = [[0] * len(self.vertices) for _ in self.vertices]
        for s, t, _ in self.edges:
            mat[index[s]][index[t]] += 1
        return mat


def state_graph(n: int, k: int, max_throw: int) -> StateGraph:
    """States are k-subsets of 1..max_throw; one edge per legal throw."""
    from itertools import combinations

    if max_throw < k:
        raise ValueError("max_throw must be at least k")
    vertices = tuple(frozenset(c) for c in combinations(range(1, max_throw + 1), k))
    edges = []
    for s in vertices:
        rest = frozenset(j - 1 for j in s if j > 1)
        if 1 in s:
            for t in range(1, max_throw + 1):
                if t not in rest:
                    edges.append((s, rest | {t}, t))
        else:
            edges.append((s, rest, 0))
    return StateGraph(vertices, tuple(edges))


def count_cycles(graph: StateGraph, length: int) -> int:
    """Closed walks of the given length, counted with their base point."""
    mat = graph.adjacency()
    size = len(mat)
    power = [[int(a == b) for b in range(size)] for a in range(size)]
    for _ in range(length):
        power = [[sum(power[a][c] * mat[c][b] for c in range(size)) for b in range(size)] for a in range(size)]
    return sum(power[a][a] for a in range(size))


def is_ground_state(f: JugglingFunction) -> bool:
    """True iff the pattern can follow an endless run of k-throws."""
    k, n = f.k, f.n
    # k-throws at times 1-k..0 bring one ball down at each time 1..k
    due = set(range(1, k + 1))
    collision = False
    for i in range(1, n + 1):
        land = f(i)
        has_ball = i in due
        if has_ball != (land > i) or land in due:
            collision = True
            break
        if has_ball:
            due.add(land)
    # characterization: the first k values of f all exceed k
    characterization = all(f(i) > k for i in range(1, k + 1))
    assert collision != characterization, f"ground-state tests disagree on {f}"
    return characterization


def enumerate_bounded(n: int, k: int) -> list[JugglingFunction]:
    """All bounded patterns of period n with k balls, in lexicographic order."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    out = []
    for throws in product(range(n + 1), repeat=n):
        if sum(throws) != n * k:
            continue
        if len({(i + t) % n for i, t in enumerate(throws)}) == n:
            out.append(JugglingFunction(throws))
    return out


def nested_arc_pairs(f: JugglingFunction) -> int:
    """Pairs of arcs, one starting in 1..n, strictly nested inside each other."""
    count = 0
    for i in range(1, f.n + 1):
        for j in range(i + 1, f(i)):
            if f(j) < f(i):
                count += 1
    return count


def _arc_swap(f: JugglingFunction, i: int, j: int) -> JugglingFunction:
    """Exchange the landing times of the throws at i and j (periodically)."""
    n = f.n
    window = list(f.window)
    ri, rj = (i - 1) % n, (j - 1) % n
    window[ri] = f(j) - (i - 1 - ri)
    window[rj] = f(i) - (j - 1 - rj)
    return JugglingFunction.from_window(window)


@dataclass(frozen=True)
class JugglingPoset:
    elements: tuple[JugglingFunction, ...]
    covers: frozenset[tuple[JugglingFunction, JugglingFunction]]  # (lower, upper)
    rank: dict = field(hash=False, compare=False)


def juggling_poset(n: int, k: int) -> JugglingPoset:
    """Bounded patterns ordered by arc swaps; rank is the nested-pair count."""
    elements = tuple(enumerate_bounded(n, k))
    covers = set()
    for f in elements:
        for i in range(1, n + 1):
            for j in range(i + 1, f(i)):
                if f(j) >= f(i):
                    continue
                blocked = any(f(m) > f(j) and f(m) < f(i) for m in range(i + 1, j))
                if not blocked:
                    covers.add((_arc_swap(f, i, j), f))
    rank = {f: nested_arc_pairs(f) for f in elements}
    return JugglingPoset(elements, frozenset(covers), rank)


# -- positroid rank data ---------------------------------------------------


@dataclass(frozen=True, order=True)
class RankCondition:
    i: int
    j: int
    bound: int

    def label(self, n: int) -> str:
        return f"rank[{self.i},{(self.j - 1) % n + 1}]<={self.bound}"


def interval_columns(i: int, j: int, n: int) -> list[int]:
    return [(c - 1) % n + 1 for c in range(i, j + 1)]


def _southwest_bound(f: JugglingFunction, i: int, j: int) -> int:
    """|[i,j]| minus the throws starting weakly after i and ending weakly before j."""
    inside = sum(1 for s in range(i, j + 1) if f(s) <= j)
    return (j - i + 1) - inside


def _arcs_entering(f: JugglingFunction, i: int, j: int) -> int:
    finv = f.to_affine().inverse()
    return sum(1 for t in range(i, j + 1) if finv(t) < i)


def _arcs_leaving(f: JugglingFunction, i: int, j: int) -> int:
    return sum(1 for s in range(i, j + 1) if f(s) > j)


@dataclass(frozen=True)
class PositroidData:
    n: int
    k: int
    conditions: tuple[RankCondition, ...]  # every nontrivial bound
    essential: tuple[RankCondition, ...]
    diagram: tuple[tuple[int, int], ...] = ()  # one period of strip boxes (row i in 1..n, column j)

    @property
    def implied(self) -> tuple[RankCondition, ...]:
        ess = set(self.essential)
        return tuple(c for c in self.conditions if c not in ess)

    def to_json(self) -> str:
        enc = lambda cs: [{"interval": [c.i, (c.j - 1) % self.n + 1], "bound": c.bound} for c in cs]
        return json.dumps(
            {
                "conditions": enc(self.conditions),
                "diagram": [list(b) for b in self.diagram],
                "essential": enc(self.essential),
                "k": self.k,
                "n": self.n,
            },
            sort_keys=True,
        )


def positroid_data(f: JugglingFunction) -> PositroidData:
    if not f.is_bounded:
        raise ValueError(f"{f} is not a bounded pattern")
    n, k = f.n, f.k

    def bound(i: int, j: int) -> int:
        if j < i:
            return 0
        b = _southwest_bound(f, i, j)
        assert b == _arcs_entering(f, i, j) == _arcs_leaving(f, i, j), (f, i, j)
        return b

    conditions = []
    essential = []
    for i in range(1, n + 1):
        for j in range(i, i + n):
            r = bound(i, j)
            if r >= min(k, j - i + 1):
                continue
            cond = RankCondition(i, j, r)
            conditions.append(cond)
            shrink_same = bound(i + 1, j) == r and bound(i, j - 1) == r
            grow_raises = bound(i - 1, j) == r + 1 and bound(i, j + 1) == r + 1
            if shrink_same and grow_raises:
                essential.append(cond)
    return PositroidData(n, k, tuple(conditions), tuple(essential), strip_diagram(f))


def strip_diagram(f: JugglingFunction) -> tuple[tuple[int, int], ...]:
    """Boxes (i, j) with j < f(i) whose column's 1 sits below row i."""
    finv = f.to_affine().inverse()
    boxes = tuple((i, j) for i in range(1, f.n + 1) for j in range(i, f(i)) if finv(j) > i)
    assert len(boxes) == nested_arc_pairs(f)
    return boxes


def single_condition_pattern(n: int, k: int, i: int, j: int, r: int) -> JugglingFunction:
    """The bounded pattern whose only essential condition is rank[i,j] <= r."""
    i = (i - 1) % n + 1
    while j < i:
        j += n
    target = (RankCondition(i, j, r),)
    found = [f for f in enumerate_bounded(n, k) if positroid_data(f).essential == target]
    if not found:
        raise UnsatisfiableConditionError(f"no bounded pattern has the single condition rank[{i},{j}]<={r}")
    return max(found, key=nested_arc_pairs)


# -- pattern of a concrete matrix ------------------------------------------


def matrix_rank(rows: Sequence[Sequence]) -> int:
    """Exact rank by fraction Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    rank, cols = 0, len(m[0])
    for c in range(cols):
        pivot = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                factor = m[r][c] / m[rank][c]
                m[r] = [a - factor * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def _columns_rank(matrix: Sequence[Sequence], cols: Iterable[int]) -> int:
    cols = list(cols)
    return matrix_rank([[row[c - 1] for c in cols] for row in matrix]) if cols else 0


def positroid_of_matrix(matrix: Sequence[Sequence]) -> JugglingFunction:
    """Pattern of a full-rank k x n matrix: first cyclic column dependency."""
    k, n = len(matrix), len(matrix[0])
    if matrix_rank(matrix) < k:
        raise RankDeficientError(f"matrix has rank below {k}")
    window = []
    for i in range(1, n + 1):
        for j in range(i, i + n + 1):
            after = interval_columns(i + 1, j, n) if j > i else []
            if _columns_rank(matrix, after + [i]) == _columns_rank(matrix, after):
                window.append(j)
                break
    return JugglingFunction.from_window(window)
