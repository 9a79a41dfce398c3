"""Classical pipe dreams on the staircase and their antidiagonal duals."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .coxeter import Permutation, Word
from .errors import IllegalMoveError

__all__ = [
    "PipeDream",
    "Antidiagonal",
    "staircase",
    "trace",
    "pipe_word",
    "d_bot",
    "d_top",
    "ladder",
    "chute",
    "ladder_closure",
    "chute_closure",
    "brute_force_pipe_dreams",
    "moves_and_enumerate",
    "antidiagonal_set",
    "transversal_dual",
    "minimal_sets",
]

Cell = tuple[int, int]


def staircase(n: int) -> list[Cell]:
    """Cells (i, j) with i + j <= n, row by row."""
    return [(i, j) for i in range(1, n) for j in range(1, n + 1 - i)]


@dataclass(frozen=True)
class PipeDream:
    n: int
    crosses: frozenset[Cell]

    def __post_init__(self):
        object.__setattr__(self, "crosses", frozenset(tuple(c) for c in self.crosses))
        for i, j in self.crosses:
            if i < 1 or j < 1 or i + j > self.n:
                raise ValueError(f"cross {(i, j)} lies outside the staircase of size {self.n}")

    def transpose(self) -> "PipeDream":
        return PipeDream(self.n, frozenset((j, i) for i, j in self.crosses))

    def __len__(self) -> int:
        return len(self.crosses)

    def ascii(self) -> str:
        return "\n".join(
            "".join("+" if (i, j) in self.crosses else "." for j in range(1, self.n + 1 - i))
            for i in range(1, self.n)
        )

    def to_json(self) -> str:
        return json.dumps({"crosses": sorted(list(c) for c in self.crosses), "n": self.n}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "PipeDream":
        data = json.loads(text)
        return cls(data["n"], frozenset(tuple(c) for c in data["crosses"]))


def trace(p: PipeDream) -> tuple[Permutation, bool]:
    """Follow each pipe from the west edge of its row to the north edge."""
    n = p.n
    window = []
    for start in range(1, n + 1):
        r, c, heading = start, 1, "east"
        while r >= 1:
            crossed = (r, c) in p.crosses
            # elbows turn east-travel north and north-travel east
            if (heading == "east") != crossed:
                heading = "north"
                r -= 1
            else:
                heading = "east"
                c += 1
        window.append(c)
    perm = Permutation(tuple(window))
    return perm, len(p.crosses) == perm.length()


def pipe_word(p: PipeDream) -> Word:
    """Letters i+j-1 read along rows top to bottom, each row right to left."""
    cells = sorted(p.crosses, key=lambda c: (c[0], -c[1]))
    return Word(tuple(i + j - 1 for i, j in cells), p.n)


def d_bot(w: Permutation) -> PipeDream:
    """Row i carries its Lehmer-code count of crosses, pushed west."""
    n = w.n
    crosses = set()
    for i in range(1, n + 1):
        m = sum(1 for j in range(i + 1, n + 1) if w(j) < w(i))
        crosses.update((i, c) for c in range(1, m + 1))
    return PipeDream(n, frozenset(crosses))


def d_top(w: Permutation) -> PipeDream:
    return d_bot(w.inverse()).transpose()


def ladder(p: PipeDream, i: int, j: int) -> PipeDream:
    """Move the cross at (i, j) up a ladder of crossed pairs to (i-m, j+1)."""
    x = p.crosses
    if (i, j) not in x or (i, j + 1) in x:
        raise IllegalMoveError(f"no ladder starts at {(i, j)}")
    m = 1
    while (i - m, j) in x and (i - m, j + 1) in x:
        m += 1
    top = (i - m, j + 1)
    if i - m < 1 or (i - m, j) in x or top in x or sum(top) > p.n:
        raise IllegalMoveError(f"no ladder starts at {(i, j)}")
    return PipeDream(p.n, (x - {(i, j)}) | {top})


def chute(p: PipeDream, i: int, j: int) -> PipeDream:
    """Mirror image of a ladder move: (i, j) goes to (i+1, j-m)."""
    return ladder(p.transpose(), j, i).transpose()


def _closure(start: PipeDream, move) -> frozenset[PipeDream]:
    seen = {start}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        for i, j in p.crosses:
            try:
                q = move(p, i, j)
            except IllegalMoveError:
                continue
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return frozenset(seen)


def ladder_closure(w: Permutation) -> frozenset[PipeDream]:
    return _closure(d_bot(w), ladder)


def chute_closure(w: Permutation) -> frozenset[PipeDream]:
    return _closure(d_top(w), chute)


def brute_force_pipe_dreams(w: Permutation) -> frozenset[PipeDream]:
    """Filter every cross subset of size l(w); exponential, small n only."""
    cells = staircase(w.n)
    found = set()
    for subset in combinations(cells, w.length()):
        p = PipeDream(w.n, frozenset(subset))
        perm, reduced = trace(p)
        if reduced and perm == w:
            found.add(p)
    return frozenset(found)


def moves_and_enumerate(w: Permutation) -> frozenset[PipeDream]:
    """All reduced pipe dreams of w; ladder and chute closures must agree."""
    by_ladder = ladder_closure(w)
    by_chute = chute_closure(w)
    assert by_ladder == by_chute, f"ladder and chute closures differ for {w}"
    return by_ladder


# -- antidiagonals ---------------------------------------------------------


@dataclass(frozen=True)
class Antidiagonal:
    cells: tuple[Cell, ...]  # sorted by row, so columns decrease

    def __post_init__(self):
        cells = tuple(sorted(tuple(c) for c in self.cells))
        for (a, b), (c, d) in combinations(cells, 2):
            if a >= c or b <= d:
                raise ValueError(f"cells {(a, b)} and {(c, d)} are not strictly antidiagonal")
        object.__setattr__(self, "cells", cells)

    def __iter__(self):
        return iter(self.cells)

    def __len__(self) -> int:
        return len(self.cells)


def minimal_sets(family: Iterable[frozenset]) -> frozenset[frozenset]:
    ordered = sorted(set(family), key=len)
    kept: list[frozenset] = []
    for s in ordered:
        if not any(t <= s for t in kept):
            kept.append(s)
    return frozenset(kept)


def antidiagonal_set(w: Permutation) -> frozenset[Antidiagonal]:
    """Inclusion-minimal antidiagonals longer than the rank of some northwest corner."""
    n = w.n
    candidates = set()
    for p in range(1, n + 1):
        for q in range(1, n + 1):
            size = 1 + sum(1 for i in range(1, p + 1) if w(i) <= q)
            if size > min(p, q):
                continue
            for rows in combinations(range(1, p + 1), size):
                for cols in combinations(range(1, q + 1), size):
                    candidates.add(frozenset(zip(rows, reversed(cols))))
    return frozenset(Antidiagonal(tuple(s)) for s in minimal_sets(candidates))


def transversal_dual(family: Iterable[Iterable]) -> frozenset[frozenset]:
    """Minimal sets meeting every member of the family."""
    blockers: set[frozenset] = {frozenset()}
    for member in family:
        member = frozenset(member)
        grown = set()
        for t in blockers:
            if t & member:
                grown.add(t)
            else:
                grown.update(t | {x} for x in member)
        blockers = set(minimal_sets(grown))
    return frozenset(blockers)
