"""Finite and affine permutations, words in simple reflections, Bruhat order.

Permutations are stored in one-line (window) notation, values 1-based.
Products of simple reflections follow one fixed convention everywhere in the
package: a word ``(a1, ..., am)`` acts by applying ``s_a1`` first, so

    >>> word_eval(Word((3, 1, 4, 2, 3), 5))[0].window
    (4, 1, 5, 2, 3)

Affine permutations are bijections of Z with ``pi(i + n) = pi(i) + n``; the
generator ``s_i`` swaps the residues ``i`` and ``i + 1`` mod n.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Literal, Union

from .errors import IncompatibleGroupError, NotFullyCommutativeError

__all__ = [
    "Permutation",
    "AffinePermutation",
    "Word",
    "length_and_inversions",
    "rothe_diagram",
    "RotheDiagram",
    "word_eval",
    "left_multiply",
    "reduced_word",
    "reduced_words",
    "bruhat_leq",
    "bruhat_leq_by_covers",
    "bruhat_down_covers",
    "demazure_product",
    "classify",
    "heap_and_wiring",
    "Heap",
    "count_linear_extensions",
    "affine_length",
    "length_by_search",
    "is_fully_commutative_word",
]


@dataclass(frozen=True)
class Permutation:
    window: tuple[int, ...]

    def __post_init__(self):
        window = tuple(int(v) for v in self.window)
        object.__setattr__(self, "window", window)
        if sorted(window) != list(range(1, len(window) + 1)):
            raise ValueError(f"{window} is not a permutation of 1..{len(window)}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        text = text.strip()
        if "," in text:
            return cls(tuple(int(t) for t in text.split(",")))
        return cls(tuple(int(ch) for ch in text))

    @property
    def n(self) -> int:
        return len(self.window)

    def __call__(self, i: int) -> int:
        return self.window[i - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.window, start=1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """Return ``self o other`` (apply ``other`` first)."""
        return Permutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def descents(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.n) if self(i) > self(i + 1))

    def length(self) -> int:
        return length_and_inversions(self)[0]

    def is_identity(self) -> bool:
        return self.window == tuple(range(1, self.n + 1))

    def to_affine(self) -> "AffinePermutation":
        return AffinePermutation(self.n, self.window)

    def __str__(self) -> str:
        if self.n < 10:
            return "".join(str(v) for v in self.window)
        return ",".join(str(v) for v in self.window)


@dataclass(frozen=True)
class AffinePermutation:
    n: int
    window: tuple[int, ...]

    def __post_init__(self):
        window = tuple(int(v) for v in self.window)
        object.__setattr__(self, "window", window)
        if len(window) != self.n or self.n < 1:
            raise ValueError(f"window {window} does not have length {self.n}")
        if len({v % self.n for v in window}) != self.n:
            raise ValueError(f"window {window} repeats a residue mod {self.n}")

    @classmethod
    def translation(cls, n: int, k: int) -> "AffinePermutation":
        return cls(n, tuple(i + k for i in range(1, n + 1)))

    def __call__(self, i: int) -> int:
        r = (i - 1) % self.n + 1
        return self.window[r - 1] + (i - r)

    @property
    def shift(self) -> int:
        """Net ball count: ``sum(pi(i) - i) / n``."""
        total = sum(self.window) - self.n * (self.n + 1) // 2
        return total // self.n

    def inverse(self) -> "AffinePermutation":
        inv = [0] * self.n
        for i, v in enumerate(self.window, start=1):
            r = (v - 1) % self.n + 1
            inv[r - 1] = i - (v - r)
        return AffinePermutation(self.n, tuple(inv))

    def compose(self, other: "AffinePermutation") -> "AffinePermutation":
        if other.n != self.n:
            raise IncompatibleGroupError("periods differ")
        return AffinePermutation(self.n, tuple(self(other(i)) for i in range(1, self.n + 1)))

    def shifted(self, c: int) -> "AffinePermutation":
        """Window with ``c`` added to every entry (post-compose a translation)."""
        return AffinePermutation(self.n, tuple(v + c for v in self.window))

    def length(self) -> int:
        return affine_length(self)

    def is_identity(self) -> bool:
        return self.window == tuple(range(1, self.n + 1))

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.window)


Element = Union[Permutation, AffinePermutation]


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...]
    n: int
    flavor: Literal["finite", "affine"] = "finite"

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(a) for a in self.letters))
        if self.flavor not in ("finite", "affine"):
            raise ValueError(f"unknown flavor {self.flavor!r}")
        lo, hi = (1, self.n - 1) if self.flavor == "finite" else (0, self.n - 1)
        for a in self.letters:
            if not lo <= a <= hi:
                raise ValueError(f"letter {a} out of range {lo}..{hi} for a {self.flavor} word")

    def __len__(self) -> int:
        return len(self.letters)

    def identity(self) -> Element:
        if self.flavor == "finite":
            return Permutation.identity(self.n)
        return AffinePermutation.translation(self.n, 0)

    def subword(self, positions: Iterable[int]) -> "Word":
        """Subword at the given 0-based positions, kept in word order."""
        return Word(tuple(self.letters[p] for p in sorted(positions)), self.n, self.flavor)

    def __str__(self) -> str:
        return "[" + ",".join(str(a) for a in self.letters) + "]"


# -- elementary actions ----------------------------------------------------


def left_multiply(i: int, x: Element) -> Element:
    """``s_i o x``: swap the values congruent to ``i`` and ``i + 1``."""
    if isinstance(x, Permutation):
        out = tuple(i + 1 if v == i else i if v == i + 1 else v for v in x.window)
        return Permutation(out)
    n = x.n
    a, b = i % n, (i + 1) % n
    out = []
    for v in x.window:
        r = v % n
        out.append(v + 1 if r == a else v - 1 if r == b else v)
    return AffinePermutation(n, tuple(out))


def right_multiply(x: Element, i: int) -> Element:
    """``x o s_i``: swap positions ``i`` and ``i + 1`` of the window."""
    w = list(x.window)
    if isinstance(x, Permutation):
        w[i - 1], w[i] = w[i], w[i - 1]
        return Permutation(tuple(w))
    n = x.n
    if i % n == 0:
        first, last = w[-1] - n, w[0] + n
        w[0], w[-1] = first, last
    else:
        w[i - 1], w[i] = w[i], w[i - 1]
    return AffinePermutation(n, tuple(w))


def word_eval(w: Word, side: Literal["left", "right"] = "left") -> tuple[Element, bool]:
    """Product of the word and whether the word is reduced.

    ``side="left"`` multiplies each successive letter on the left, which is the
    package convention (first letter applied first).  ``side="right"`` gives
    the inverse element.
    """
    x = w.identity()
    for a in w.letters:
        x = left_multiply(a, x) if side == "left" else right_multiply(x, a)
    return x, len(w) == x.length()


# -- length ----------------------------------------------------------------


def length_and_inversions(p: Permutation) -> tuple[int, frozenset[tuple[int, int]]]:
    inv = frozenset(
        (i, j) for i in range(1, p.n + 1) for j in range(i + 1, p.n + 1) if p(i) > p(j)
    )
    return len(inv), inv


def affine_length(a: AffinePermutation) -> int:
    """Shi's formula: sum over i < j of |floor((pi(j) - pi(i)) / n)|."""
    n, w = a.n, a.window
    return sum(abs((w[j] - w[i]) // n) for i in range(n) for j in range(i + 1, n))


def length_by_search(x: Element, limit: int = 64) -> int:
    """Shortest word length found by breadth-first search (test oracle).

    Affine elements are first moved into the zero-shift coset; the search
    runs over left multiplications by simple reflections.
    """
    if isinstance(x, AffinePermutation):
        target = x.shifted(-x.shift)
        start = AffinePermutation.translation(x.n, 0)
        gens = range(x.n)
    else:
        target, start, gens = x, Permutation.identity(x.n), range(1, x.n)
    if target == start:
        return 0
    seen = {start}
    frontier = [start]
    for depth in range(1, limit + 1):
        nxt = []
        for y in frontier:
            for i in gens:
                z = left_multiply(i, y)
                if z in seen:
                    continue
                if z == target:
                    return depth
                seen.add(z)
                nxt.append(z)
        frontier = nxt
    raise RuntimeError("search limit reached")


# -- reduced words ---------------------------------------------------------


def _generators(x: Element) -> range:
    return range(1, x.n) if isinstance(x, Permutation) else range(x.n)


def _base(x: Element) -> Element:
    """Element of the Coxeter group (zero shift) with the same reduced words."""
    if isinstance(x, AffinePermutation) and x.shift:
        return x.shifted(-x.shift)
    return x


def reduced_word(x: Element) -> Word:
    """One reduced word; affine elements are first translated to shift zero."""
    y = _base(x)
    letters: list[int] = []
    ell = y.length()
    while ell:
        for i in _generators(y):
            z = left_multiply(i, y)
            if z.length() < ell:
                letters.append(i)
                y, ell = z, ell - 1
                break
    flavor = "finite" if isinstance(x, Permutation) else "affine"
    return Word(tuple(reversed(letters)), x.n, flavor)


def reduced_words(x: Element) -> set[tuple[int, ...]]:
    """All reduced words (as letter tuples) of ``x``."""
    return set(_reduced_words(_base(x)))


@lru_cache(maxsize=4096)
def _reduced_words(y: Element) -> frozenset[tuple[int, ...]]:
    ell = y.length()
    if ell == 0:
        return frozenset({()})
    out = set()
    for i in _generators(y):
        z = left_multiply(i, y)
        if z.length() < ell:
            out.update(w + (i,) for w in _reduced_words(z))
    return frozenset(out)


# -- Bruhat order ----------------------------------------------------------


def _check_same_group(u: Element, v: Element) -> None:
    if type(u) is not type(v) or u.n != v.n:
        raise IncompatibleGroupError(f"cannot compare {u} and {v}: different groups")


def bruhat_leq(u: Element, v: Element) -> bool:
    """Bruhat comparison by the subword property against one reduced word of v.

    Affine elements with different shifts lie in different cosets and are
    incomparable.
    """
    _check_same_group(u, v)
    if isinstance(u, AffinePermutation):
        if u.shift != v.shift:
            return False
        u, v = _base(u), _base(v)
    if u.length() > v.length():
        return False
    word = reduced_word(v)
    reachable = {word.identity()}
    for a in word.letters:
        reachable |= {left_multiply(a, x) for x in reachable}
    return u in reachable


def bruhat_down_covers(v: Element) -> set[Element]:
    """Elements covered by ``v``: ``v`` times a reflection, one shorter."""
    ell = v.length()
    out = set()
    if isinstance(v, Permutation):
        for i in range(1, v.n + 1):
            for j in range(i + 1, v.n + 1):
                if v(i) > v(j):
                    w = list(v.window)
                    w[i - 1], w[j - 1] = w[j - 1], w[i - 1]
                    y = Permutation(tuple(w))
                    if y.length() == ell - 1:
                        out.add(y)
        return out
    n = v.n
    for i in range(1, n + 1):
        # an inversion (i, j) needs v(j) < v(i); j - i is bounded by the spread
        span = max(v.window) - min(v.window) + 2 * n
        for j in range(i + 1, i + span + 1):
            if (j - i) % n == 0 or v(j) >= v(i):
                continue
            w = [v(m) for m in range(1, n + 1)]
            # swap values at positions i and j (periodically)
            ri, rj = (i - 1) % n, (j - 1) % n
            w[ri] = v(j) - (i - 1 - ri)
            w[rj] = v(i) - (j - 1 - rj)
            y = AffinePermutation(n, tuple(w))
            if y.length() == ell - 1:
                out.add(y)
    return out


def bruhat_leq_by_covers(u: Element, v: Element) -> bool:
    """Brute-force oracle: search down from ``v`` through cover relations."""
    _check_same_group(u, v)
    if isinstance(u, AffinePermutation) and u.shift != v.shift:
        return False
    target_len = u.length()
    frontier = {v}
    while frontier:
        if u in frontier:
            return True
        if next(iter(frontier)).length() <= target_len:
            return False
        nxt = set()
        for x in frontier:
            nxt |= bruhat_down_covers(x)
        frontier = nxt
    return False


def demazure_product(w: Word) -> Element:
    """0-Hecke product: a letter only acts when it lengthens the element."""
    x = w.identity()
    for a in w.letters:
        y = left_multiply(a, x)
        if y.length() > x.length():
            x = y
    return x


# -- classification --------------------------------------------------------


def _adjacent(a: int, b: int, n: int, flavor: str) -> bool:
    if flavor == "finite":
        return abs(a - b) == 1
    if n == 2:
        return a != b
    return (a - b) % n in (1, n - 1)


def is_fully_commutative_word(w: Word) -> bool:
    """Reduced, and between consecutive equal letters sit two neighbours.

    This is the heap criterion for type A and affine type A (n >= 3).
    """
    if not word_eval(w)[1]:
        return False
    if w.flavor == "affine" and w.n == 2:
        return True
    last: dict[int, int] = {}
    for pos, a in enumerate(w.letters):
        if a in last:
            between = w.letters[last[a] + 1 : pos]
            if sum(1 for b in between if _adjacent(a, b, w.n, w.flavor)) < 2:
                return False
        last[a] = pos
    return True


def _avoids_321(p: Permutation) -> bool:
    w = p.window
    for i, j, k in combinations(range(p.n), 3):
        if w[i] > w[j] > w[k]:
            return False
    return True


def classify(p: Permutation) -> dict[str, bool]:
    grass = len(p.descents()) <= 1
    grass_inv = len(p.inverse().descents()) <= 1
    avoids = _avoids_321(p)
    fc = is_fully_commutative_word(reduced_word(p))
    assert avoids == fc, f"321-avoidance and full commutativity disagree on {p}"
    return {
        "grassmannian": grass,
        "inverse_grassmannian": grass_inv,
        "bigrassmannian": grass and grass_inv,
        "avoids_321": avoids,
        "fully_commutative": fc,
    }


# -- heaps -----------------------------------------------------------------


@dataclass(frozen=True)
class Heap:
    word: Word
    covers: frozenset[tuple[int, int]]  # (lower position, upper position)
    levels: tuple[int, ...]  # row (1 = base) where each letter came to rest

    def wiring(self) -> tuple[tuple[int, ...], ...]:
        """Rows of the dropped-letter picture, bottom row first."""
        top = max(self.levels, default=0)
        return tuple(
            tuple(self.word.letters[p] for p in range(len(self.levels)) if self.levels[p] == r)
            for r in range(1, top + 1)
        )

    def less_than(self) -> set[tuple[int, int]]:
        rel = set(self.covers)
        changed = True
        while changed:
            changed = False
            for a, b in list(rel):
                for c, d in list(rel):
                    if b == c and (a, d) not in rel:
                        rel.add((a, d))
                        changed = True
        return rel


def heap_and_wiring(w: Word) -> Heap:
    """Heap of a fully commutative word, built by dropping letters in order."""
    if not is_fully_commutative_word(w):
        raise NotFullyCommutativeError(f"{w} is not a fully commutative reduced word")
    letters = w.letters
    linked = lambda p, q: letters[p] == letters[q] or _adjacent(letters[p], letters[q], w.n, w.flavor)
    levels: list[int] = []
    below: dict[int, set[int]] = {}
    for q in range(len(letters)):
        direct = {p for p in range(q) if linked(p, q)}
        below[q] = set(direct)
        for p in direct:
            below[q] |= below[p]
        levels.append(1 + max((levels[p] for p in direct), default=0))
    covers = {
        (p, q)
        for q in range(len(letters))
        for p in below[q]
        if not any(p in below[r] for r in below[q])
    }
    return Heap(w, frozenset(covers), tuple(levels))


def count_linear_extensions(heap: Heap) -> int:
    size = len(heap.levels)
    preds = [0] * size
    for a, b in heap.less_than():
        preds[b] |= 1 << a

    @lru_cache(maxsize=None)
    def count(done: int) -> int:
        if done == (1 << size) - 1:
            return 1
        return sum(
            count(done | (1 << i))
            for i in range(size)
            if not done >> i & 1 and preds[i] & done == preds[i]
        )

    return count(0)


# -- Rothe diagram ---------------------------------------------------------


@dataclass(frozen=True)
class RotheDiagram:
    perm: Permutation
    boxes: frozenset[tuple[int, int]]
    essential: frozenset[tuple[int, int]]

    def rank(self, p: int, q: int) -> int:
        return sum(1 for i in range(1, p + 1) if self.perm(i) <= q)


def rothe_diagram(p: Permutation) -> RotheDiagram:
    inv = p.inverse()
    boxes = frozenset(
        (i, j) for i in range(1, p.n + 1) for j in range(1, p.n + 1) if p(i) > j and inv(j) > i
    )
    essential = frozenset(b for b in boxes if (b[0] + 1, b[1]) not in boxes and (b[0], b[1] + 1) not in boxes)
    return RotheDiagram(p, boxes, essential)


def rank_function(p: Permutation) -> Callable[[int, int], int]:
    return rothe_diagram(p).rank
