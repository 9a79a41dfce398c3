"""The strip attached to a k-subset of columns, its word and affine pipe dreams.

Cells are addressed by their position ``(row, col)`` in the k x n matrix whose
columns ``lam[i]`` hold the identity; only non-identity columns carry cells.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

from .complex import subword_complex
from .coxeter import AffinePermutation, Word, bruhat_leq, demazure_product, left_multiply, right_multiply, word_eval
from .errors import MalformedLambdaError
from .juggling import JugglingFunction

__all__ = [
    "StripLayout",
    "AffinePipeDream",
    "strip_layout",
    "q_word",
    "q_word_text",
    "pi_lambda",
    "apd_trace",
    "apd_enumerate",
    "apd_top",
    "apd_bottom",
    "target_of",
]

Cell = tuple[int, int]


@dataclass(frozen=True)
class StripLayout:
    n: int
    k: int
    lam: tuple[int, ...]
    path: str  # one step per original column: "S" on identity columns, "E" elsewhere
    cell_labels: dict  # (row, col) -> label in 1..n
    column_map: tuple[int, ...]  # collapsed column (1-based) -> original column

    def __hash__(self):
        return hash((self.n, self.k, self.lam))

    def __eq__(self, other):
        return isinstance(other, StripLayout) and (self.n, self.k, self.lam) == (other.n, other.k, other.lam)

    def depth(self, col: int) -> int:
        """Rows above the path at an original column."""
        return sum(1 for l in self.lam if l < col)

    def above_path(self, cell: Cell) -> bool:
        r, c = cell
        return r <= self.depth(c)

    def strip_row(self, cell: Cell) -> int:
        r, c = cell
        return r if self.above_path(cell) else r - self.k

    @cached_property
    def reading_order(self) -> tuple[Cell, ...]:
        """South to north by strip row, west to east inside a row."""
        return tuple(sorted(self.cell_labels, key=lambda cell: (-self.strip_row(cell), cell[1])))

    @property
    def cells(self) -> tuple[Cell, ...]:
        return self.reading_order

    def variable(self, cell: Cell) -> str:
        r, c = cell
        return f"a{r}{c}" if r < 10 and c < 10 else f"a{r}_{c}"

    def ascii(self, crosses: Iterable[Cell] = ()) -> str:
        """Collapsed block; '+' cross, '.' elbow, path along the grid lines."""
        crosses = set(crosses)
        width = self.n - self.k
        grid = [[" "] * (2 * width + 1) for _ in range(2 * self.k + 1)]
        for r in range(1, self.k + 1):
            for j, c in enumerate(self.column_map, start=1):
                grid[2 * r - 1][2 * j - 1] = "+" if (r, c) in crosses else "."
        y = x = 0
        for step in self.path:
            if step == "E":
                grid[y][x + 1] = "_"
                x += 2
            else:
                grid[y + 1][x] = "|"
                y += 2
        return "\n".join("".join(row).rstrip() for row in grid)


def _validate_lambda(lam: Iterable[int], k: int, n: int) -> tuple[int, ...]:
    lam = tuple(int(x) for x in lam)
    if len(lam) != k or any(b <= a for a, b in zip(lam, lam[1:])) or any(not 1 <= x <= n for x in lam):
        raise MalformedLambdaError(f"lambda must be {k} increasing entries of 1..{n}, got {lam}")
    return lam


def _labels(lam: tuple[int, ...], k: int, n: int) -> dict[Cell, int]:
    """Label each free cell by the cyclic k-window whose leading antidiagonal holds it.

    Window j covers columns j..j+k-1.  Its free columns, west to east, take the
    rows i, i-1, ..., 1, k, ..., i+1 (skipping rows owned by identity columns in
    the window), where i is the row of the last identity column before j.
    """
    labels: dict[Cell, int] = {}
    row_of = {c: r for r, c in enumerate(lam, start=1)}
    for j in range(1, n + 1):
        window = [(c - 1) % n + 1 for c in range(j, j + k)]
        before = next((j - d - 1) % n + 1 for d in range(n) if (j - d - 1) % n + 1 in row_of)
        start = row_of[before]
        taken = {row_of[c] for c in window if c in row_of}
        rows = [r for r in list(range(start, 0, -1)) + list(range(k, start, -1)) if r not in taken]
        free = [c for c in window if c not in row_of]
        label = (j - 1) % n or n
        for r, c in zip(rows, free):
            if (r, c) in labels:
                raise AssertionError(f"cell {(r, c)} labelled twice")
            labels[(r, c)] = label
    assert len(labels) == k * (n - k)
    return labels


def strip_layout(lam: Iterable[int], k: int, n: int) -> StripLayout:
    lam = _validate_lambda(lam, k, n)
    path = "".join("S" if c in lam else "E" for c in range(1, n + 1))
    column_map = tuple(c for c in range(1, n + 1) if c not in lam)
    labels = _labels(lam, k, n) if 0 < k < n else {}
    return StripLayout(n, k, lam, path, labels, column_map)


def q_word(layout: StripLayout) -> Word:
    """Labels in reading order, as affine letters (label n is letter 0)."""
    n = layout.n
    return Word(tuple(layout.cell_labels[c] % n for c in layout.reading_order), n, "affine")


def q_word_text(layout: StripLayout) -> str:
    """Letters grouped by strip row, with n written for the letter 0."""
    groups: list[list[str]] = []
    last = None
    for cell in layout.reading_order:
        row = layout.strip_row(cell)
        if row != last:
            groups.append([])
            last = row
        groups[-1].append(str(layout.cell_labels[cell]))
    sep = "" if layout.n < 10 else ","
    return " ".join(sep.join(g) for g in groups)


def _translate(x: AffinePermutation, k: int) -> AffinePermutation:
    return AffinePermutation(x.n, tuple(v + k for v in x.window))


def pi_lambda(layout: StripLayout) -> AffinePermutation:
    x, reduced = word_eval(q_word(layout))
    assert reduced, "strip word is not reduced"
    pi = _translate(x, layout.k)
    expected = tuple(i + layout.n if i in layout.lam else i for i in range(1, layout.n + 1))
    assert pi.window == expected, f"strip word gives {pi.window}, expected {expected}"
    return pi


# -- affine pipe dreams ----------------------------------------------------


@dataclass(frozen=True)
class AffinePipeDream:
    layout: StripLayout
    crosses: frozenset[Cell]

    def __post_init__(self):
        object.__setattr__(self, "crosses", frozenset(tuple(c) for c in self.crosses))
        stray = self.crosses - set(self.layout.cell_labels)
        if stray:
            raise ValueError(f"cells {sorted(stray)} are not in the strip block")

    def positions(self) -> tuple[int, ...]:
        return tuple(p for p, c in enumerate(self.layout.reading_order) if c in self.crosses)

    def ascii(self) -> str:
        return self.layout.ascii(self.crosses)

    def to_json(self) -> str:
        lay = self.layout
        return json.dumps(
            {"crosses": sorted(list(c) for c in self.crosses), "k": lay.k, "lambda": list(lay.lam), "n": lay.n},
            sort_keys=True,
        )


def apd_trace(apd: AffinePipeDream) -> tuple[AffinePermutation, bool]:
    layout = apd.layout
    x, _ = word_eval(q_word(layout).subword(apd.positions()))
    pi = _translate(x, layout.k)
    return pi, len(apd.crosses) == pi.length()


def target_of(layout: StripLayout, f: JugglingFunction) -> Optional[AffinePermutation]:
    """The shift-zero element f - k, or None when the ball counts differ."""
    if f.n != layout.n or f.k != layout.k:
        return None
    return _translate(f.to_affine(), -layout.k)


def apd_enumerate(layout: StripLayout, f: JugglingFunction) -> frozenset[AffinePipeDream]:
    """Pipe dreams whose elbow sets are the facets of the strip subword complex."""
    target = target_of(layout, f)
    if target is None:
        return frozenset()
    cx = subword_complex(q_word(layout), target)
    order = layout.reading_order
    everything = frozenset(range(len(order)))
    return frozenset(AffinePipeDream(layout, frozenset(order[p] for p in everything - facet)) for facet in cx.facets)


def _greedy(layout: StripLayout, f: JugglingFunction, backwards: bool) -> Optional[AffinePipeDream]:
    """Take each letter, in scan order, whenever the unscanned part can still finish the target."""
    target = target_of(layout, f)
    if target is None:
        return None
    word = q_word(layout)
    m = len(word)
    x = word.identity()
    kept = []
    for p in range(m - 1, -1, -1) if backwards else range(m):
        a = word.letters[p]
        y = right_multiply(x, a) if backwards else left_multiply(a, x)
        if y.length() <= x.length():
            continue
        # the word reads right to left, so target = later * earlier
        if backwards:
            rest, need = word.subword(range(p)), y.inverse().compose(target)
        else:
            rest, need = word.subword(range(p + 1, m)), target.compose(y.inverse())
        if y.length() + need.length() == target.length() and bruhat_leq(need, demazure_product(rest)):
            x = y
            kept.append(p)
    if x != target:
        return None
    return AffinePipeDream(layout, frozenset(layout.reading_order[p] for p in kept))


def apd_top(layout: StripLayout, f: JugglingFunction) -> Optional[AffinePipeDream]:
    """Lexicographically first reduced subword of the strip word for the target."""
    return _greedy(layout, f, backwards=False)


def apd_bottom(layout: StripLayout, f: JugglingFunction) -> Optional[AffinePipeDream]:
    """Lexicographically last one: the same scan run from the end of the word."""
    return _greedy(layout, f, backwards=True)
