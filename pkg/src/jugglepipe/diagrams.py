"""Le-diagrams, Cauchon diagrams, and the pipe dreams they turn into.

Boxes are indexed matrix-style: row 1 on top, column 1 on the left.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable, Optional, Sequence

from .coxeter import Permutation, Word, bruhat_leq, word_eval
from .errors import InvalidDiagramError, NonRectangularShapeError, NotBottomError
from .strip import AffinePipeDream, apd_trace, q_word, strip_layout

__all__ = [
    "LeDiagram",
    "CauchonDiagram",
    "le_cauchon",
    "cauchon_le",
    "w_lambda",
    "u_of_le",
    "grid_to_apd",
    "cauchon_to_bottom_apd",
    "bottom_apd_to_cauchon",
    "lowering_moves",
    "is_bottom",
    "cauchon_permutation",
    "all_le_diagrams",
    "all_cauchon_diagrams",
    "restricted_permutations",
    "restricted_by_bruhat",
]

Box = tuple[int, int]


def _partition(shape: Iterable[int]) -> tuple[int, ...]:
    shape = tuple(int(x) for x in shape)
    if any(x < 0 for x in shape) or any(a < b for a, b in zip(shape, shape[1:])):
        raise ValueError(f"{shape} is not a partition")
    return tuple(x for x in shape if x)


@dataclass(frozen=True)
class LeDiagram:
    shape: tuple[int, ...]
    filling: tuple[tuple[int, ...], ...]  # one row per part, entries 0/1

    def __post_init__(self):
        shape = _partition(self.shape)
        filling = tuple(tuple(int(x) for x in row) for row in self.filling)
        if tuple(len(r) for r in filling) != shape:
            raise ValueError(f"filling rows {[len(r) for r in filling]} do not match shape {shape}")
        if any(x not in (0, 1) for r in filling for x in r):
            raise ValueError("fillings use 0 and 1 only")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "filling", filling)

    def boxes(self) -> list[Box]:
        return [(i, j) for i, row in enumerate(self.shape, start=1) for j in range(1, row + 1)]

    def __getitem__(self, box: Box) -> int:
        i, j = box
        return self.filling[i - 1][j - 1]

    def ones(self) -> int:
        return sum(map(sum, self.filling))

    def validate(self) -> tuple[bool, Optional[tuple[Box, Box, Box]]]:
        """A 0 may not have a 1 to its left and a 1 above it.

        The witness is (left, zero, above) for the first offending box.
        """
        for i, j in self.boxes():
            if self[i, j]:
                continue
            left = next(((i, jj) for jj in range(1, j) if self[i, jj]), None)
            above = next(((ii, j) for ii in range(1, i) if self[ii, j]), None)
            if left and above:
                return False, (left, (i, j), above)
        return True, None

    def ascii(self) -> str:
        return "\n".join("".join(map(str, row)) for row in self.filling)

    def to_json(self) -> str:
        return json.dumps({"filling": [list(r) for r in self.filling], "shape": list(self.shape)}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "LeDiagram":
        data = json.loads(text)
        return cls(tuple(data["shape"]), tuple(tuple(r) for r in data["filling"]))


@dataclass(frozen=True)
class CauchonDiagram:
    m: int
    p: int
    black: frozenset[Box]

    def __post_init__(self):
        black = frozenset(tuple(b) for b in self.black)
        for i, j in black:
            if not (1 <= i <= self.m and 1 <= j <= self.p):
                raise ValueError(f"square {(i, j)} is outside the {self.m}x{self.p} grid")
        object.__setattr__(self, "black", black)

    def validate(self) -> tuple[bool, Optional[Box]]:
        """Each black square needs all squares to its left or all squares above black."""
        for i, j in sorted(self.black):
            left = all((i, jj) in self.black for jj in range(1, j))
            above = all((ii, j) in self.black for ii in range(1, i))
            if not (left or above):
                return False, (i, j)
        return True, None

    def ascii(self) -> str:
        return "\n".join(
            "".join("#" if (i, j) in self.black else "." for j in range(1, self.p + 1)) for i in range(1, self.m + 1)
        )

    @classmethod
    def parse(cls, text: str) -> "CauchonDiagram":
        rows = [r.strip() for r in text.strip().splitlines() if r.strip()]
        if not rows or len({len(r) for r in rows}) != 1:
            raise ValueError("a Cauchon grid needs rows of equal length")
        black = {(i, j) for i, r in enumerate(rows, 1) for j, ch in enumerate(r, 1) if ch == "#"}
        return cls(len(rows), len(rows[0]), frozenset(black))

    def to_json(self) -> str:
        return json.dumps({"black": sorted(list(b) for b in self.black), "m": self.m, "p": self.p}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "CauchonDiagram":
        data = json.loads(text)
        return cls(data["m"], data["p"], frozenset(tuple(b) for b in data["black"]))


# -- Le <-> Cauchon ----------------------------------------------------------


def le_cauchon(d: LeDiagram) -> CauchonDiagram:
    """Zeros become black squares."""
    if len(set(d.shape)) > 1:
        raise NonRectangularShapeError(f"shape {d.shape} is not a rectangle")
    m = len(d.shape)
    p = d.shape[0] if m else 0
    return CauchonDiagram(m, p, frozenset(b for b in d.boxes() if not d[b]))


def cauchon_le(c: CauchonDiagram) -> LeDiagram:
    filling = tuple(tuple(0 if (i, j) in c.black else 1 for j in range(1, c.p + 1)) for i in range(1, c.m + 1))
    return LeDiagram((c.p,) * c.m, filling)


# -- permutations of Le-diagrams ----------------------------------------------


def w_lambda(shape: Iterable[int], k: int, n: int) -> Permutation:
    """Inverse of the Grassmannian permutation i -> shape[k+1-i] + i (descent at k)."""
    shape = _padded(shape, k, n)
    top = [shape[k - i] + i for i in range(1, k + 1)]
    rest = [v for v in range(1, n + 1) if v not in top]
    return Permutation(tuple(top + rest)).inverse()


def _padded(shape: Iterable[int], k: int, n: int) -> tuple[int, ...]:
    shape = _partition(shape)
    if len(shape) > k or (shape and shape[0] > n - k):
        raise ValueError(f"shape {shape} does not fit in a {k}x{n - k} box")
    return shape + (0,) * (k - len(shape))


def _box_word(shape: Sequence[int], k: int, n: int, keep) -> Word:
    # rows from the bottom up, each row from right to left; box (i, j) carries k - i + j
    letters = [k - i + j for i in range(len(shape), 0, -1) for j in range(shape[i - 1], 0, -1) if keep((i, j))]
    return Word(tuple(letters), n)


def u_of_le(d: LeDiagram, k: int, n: int) -> Permutation:
    """Crosses on the 0-boxes, elbows on the 1-boxes, read as a wiring diagram."""
    _padded(d.shape, k, n)
    u, _ = word_eval(_box_word(d.shape, k, n, lambda b: not d[b]))
    return u


def all_le_diagrams(shape: Iterable[int]) -> list[LeDiagram]:
    shape = _partition(shape)
    size = sum(shape)
    out = []
    for bits in product((0, 1), repeat=size):
        rows, at = [], 0
        for r in shape:
            rows.append(bits[at : at + r])
            at += r
        d = LeDiagram(shape, tuple(rows))
        if d.validate()[0]:
            out.append(d)
    return out


# -- Cauchon diagrams as pipe dreams on the ground-state rectangle -----------


def _ground_layout(m: int, p: int):
    return strip_layout(range(1, m + 1), m, m + p)


def grid_to_apd(c: CauchonDiagram) -> AffinePipeDream:
    """Black squares become crosses after flipping the grid upside down.

    Square (i, j) lands on cell (m + 1 - i, m + j) of the k x n matrix.
    """
    layout = _ground_layout(c.m, c.p)
    return AffinePipeDream(layout, frozenset((c.m + 1 - i, c.m + j) for i, j in c.black))


def cauchon_to_bottom_apd(c: CauchonDiagram) -> AffinePipeDream:
    ok, witness = c.validate()
    if not ok:
        raise InvalidDiagramError(f"square {witness} breaks the Cauchon rule")
    return grid_to_apd(c)


def _ground_dims(apd: AffinePipeDream) -> tuple[int, int]:
    lay = apd.layout
    if lay.lam != tuple(range(1, lay.k + 1)):
        raise ValueError("Cauchon diagrams live on the ground-state layout lambda = (1..k)")
    return lay.k, lay.n - lay.k


def lowering_moves(apd: AffinePipeDream) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Pairs (cross, elbow) whose swap keeps the pipe dream reduced with the same
    permutation, where the elbow comes earlier in reading order."""
    order = apd.layout.reading_order
    word = q_word(apd.layout)
    here = set(apd.positions())
    x, reduced = word_eval(word.subword(here))
    if not reduced:
        return []
    moves = []
    for a in sorted(here):
        for b in range(a):
            if b in here:
                continue
            y, ok = word_eval(word.subword((here - {a}) | {b}))
            if ok and y == x:
                moves.append((order[a], order[b]))
    return moves


def is_bottom(apd: AffinePipeDream) -> bool:
    _, reduced = apd_trace(apd)
    return reduced and not lowering_moves(apd)


def bottom_apd_to_cauchon(apd: AffinePipeDream) -> CauchonDiagram:
    m, p = _ground_dims(apd)
    if not is_bottom(apd):
        raise NotBottomError("the pipe dream is non-reduced or has a lowering move")
    return CauchonDiagram(m, p, frozenset((m + 1 - r, c - m) for r, c in apd.crosses))


def cauchon_permutation(c: CauchonDiagram) -> Permutation:
    """Permutation of S_{m+p} traced by the black squares as crosses.

    The letters read off the grid multiply to its inverse, as for staircase
    pipe dreams.
    """
    apd = grid_to_apd(c)
    letters = q_word(apd.layout).subword(apd.positions()).letters
    x, _ = word_eval(Word(letters, c.m + c.p))
    return x.inverse()


def all_cauchon_diagrams(m: int, p: int) -> list[CauchonDiagram]:
    squares = [(i, j) for i in range(1, m + 1) for j in range(1, p + 1)]
    out = []
    for bits in product((0, 1), repeat=len(squares)):
        c = CauchonDiagram(m, p, frozenset(s for s, b in zip(squares, bits) if b))
        if c.validate()[0]:
            out.append(c)
    return out


def restricted_permutations(m: int, p: int) -> list[Permutation]:
    """w in S_{m+p} with -p <= w(i) - i <= m."""
    n = m + p
    return [
        Permutation(w)
        for w in permutations(range(1, n + 1))
        if all(-p <= v - i <= m for i, v in enumerate(w, start=1))
    ]


def restricted_by_bruhat(m: int, p: int) -> list[Permutation]:
    """The same set, as the Bruhat interval below (m+1, ..., m+p, 1, ..., m)."""
    n = m + p
    top = Permutation(tuple(range(m + 1, n + 1)) + tuple(range(1, m + 1)))
    return [Permutation(w) for w in permutations(range(1, n + 1)) if bruhat_leq(Permutation(w), top)]
