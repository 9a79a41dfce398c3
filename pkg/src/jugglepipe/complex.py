"""Simplicial complexes, subword complexes and squarefree monomial ideals."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Hashable, Iterable, Mapping, Optional

from .coxeter import Element, Permutation, Word, bruhat_leq, demazure_product, word_eval
from .errors import NotPureError
from .pipedream import minimal_sets, staircase, transversal_dual

__all__ = [
    "SimplicialComplex",
    "SquarefreeMonomialIdeal",
    "subword_complex",
    "pipe_dream_complex",
    "is_face_by_subsequence",
    "topology_checks",
    "vertex_decomposition",
    "is_shelling",
    "stanley_reisner",
    "decompose",
    "intersect",
]


def _key(v: Hashable) -> str:
    return str(v)


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: tuple
    facets: frozenset[frozenset]

    def __post_init__(self):
        facets = minimal_sets_reversed(frozenset(f) for f in self.facets)
        object.__setattr__(self, "facets", facets)
        object.__setattr__(self, "vertices", tuple(self.vertices))
        stray = set().union(*facets) - set(self.vertices) if facets else set()
        if stray:
            raise ValueError(f"facets use unknown vertices {sorted(stray, key=_key)}")

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable]) -> "SimplicialComplex":
        facets = [frozenset(f) for f in facets]
        verts = sorted(set().union(*facets), key=_key) if facets else []
        return cls(tuple(verts), frozenset(facets))

    def is_face(self, face: Iterable) -> bool:
        face = frozenset(face)
        return any(face <= f for f in self.facets)

    def faces(self) -> frozenset[frozenset]:
        out = set()
        for f in self.facets:
            for r in range(len(f) + 1):
                out.update(frozenset(c) for c in combinations(f, r))
        return frozenset(out)

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def dimension(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    @property
    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def ridges(self) -> dict[frozenset, int]:
        """Codimension-one faces of a pure complex with their facet counts."""
        counts: dict[frozenset, int] = {}
        for f in self.facets:
            for v in f:
                r = f - {v}
                counts[r] = counts.get(r, 0) + 1
        return counts

    def cone_vertices(self) -> frozenset:
        if not self.facets:
            return frozenset()
        return frozenset.intersection(*self.facets)

    def used_vertices(self) -> frozenset:
        return frozenset().union(*self.facets) if self.facets else frozenset()

    def link(self, face: Iterable) -> "SimplicialComplex":
        face = frozenset(face)
        facets = [f - face for f in self.facets if face <= f]
        return SimplicialComplex(tuple(v for v in self.vertices if v not in face), frozenset(facets))

    def deletion(self, vertex) -> "SimplicialComplex":
        facets = []
        for f in self.facets:
            facets.append(f - {vertex})
        return SimplicialComplex(tuple(v for v in self.vertices if v != vertex), frozenset(facets))

    def relabel(self, mapping: Mapping) -> "SimplicialComplex":
        return SimplicialComplex(
            tuple(mapping[v] for v in self.vertices),
            frozenset(frozenset(mapping[v] for v in f) for f in self.facets),
        )

    def to_json(self) -> str:
        facets = sorted(sorted(f, key=_key) for f in self.facets)
        return json.dumps({"facets": facets, "vertices": list(self.vertices)}, default=str, sort_keys=True)


def minimal_sets_reversed(family: Iterable[frozenset]) -> frozenset[frozenset]:
    """Inclusion-maximal members."""
    ordered = sorted(set(family), key=len, reverse=True)
    kept: list[frozenset] = []
    for s in ordered:
        if not any(s <= t for t in kept):
            kept.append(s)
    return frozenset(kept)


# -- subword complexes -----------------------------------------------------


def subword_complex(q: Word, w: Element) -> SimplicialComplex:
    """Vertices are positions of q; facets are complements of reduced words for w."""
    m, length = len(q), w.length()
    vertices = tuple(range(m))
    facets = []
    for positions in combinations(vertices, length):
        element, reduced = word_eval(q.subword(positions))
        if reduced and element == w:
            facets.append(frozenset(vertices) - set(positions))
    complex_ = SimplicialComplex(vertices, frozenset(facets))
    return complex_


def pipe_dream_complex(w: Permutation) -> tuple[SimplicialComplex, dict[int, tuple[int, int]]]:
    """Subword complex of the staircase word for w, with each position's cell.

    The staircase is read row by row from the top, each row right to left,
    cell (i, j) carrying the letter i + j - 1; a reduced pipe dream of w
    spells a reduced word of w^-1 in this order.
    """
    cells = sorted(staircase(w.n), key=lambda c: (c[0], -c[1]))
    word = Word(tuple(i + j - 1 for i, j in cells), w.n)
    return subword_complex(word, w.inverse()), dict(enumerate(cells))


def is_face_demazure(q: Word, w: Element, face: Iterable[int]) -> bool:
    face = set(face)
    rest = q.subword(p for p in range(len(q)) if p not in face)
    return bruhat_leq(w, demazure_product(rest))


def is_face_by_subsequence(q: Word, w: Element, face: Iterable[int]) -> bool:
    """Direct check that the complement still contains a reduced word for w."""
    face = set(face)
    rest = [p for p in range(len(q)) if p not in face]
    for positions in combinations(rest, w.length()):
        element, reduced = word_eval(q.subword(positions))
        if reduced and element == w:
            return True
    return False


# -- topology --------------------------------------------------------------


def vertex_decomposition(c: SimplicialComplex) -> Optional[list[frozenset]]:
    """A shelling order built from a vertex decomposition, or None."""
    if not c.is_pure:
        raise NotPureError("vertex decomposability needs a pure complex")
    return _decompose(c)


def _decompose(c: SimplicialComplex) -> Optional[list[frozenset]]:
    if len(c.facets) <= 1:
        return list(c.facets)
    dim = c.dimension
    for v in sorted(c.used_vertices() - c.cone_vertices(), key=_key):
        dele = c.deletion(v)
        # shedding vertex: the deletion keeps full dimension everywhere
        if not dele.is_pure or dele.dimension != dim:
            continue
        first = _decompose(dele)
        if first is None:
            continue
        rest = _decompose(c.link({v}))
        if rest is None:
            continue
        return first + [f | {v} for f in rest]
    if c.cone_vertices():
        v = min(c.cone_vertices(), key=_key)
        rest = _decompose(c.link({v}))
        return None if rest is None else [f | {v} for f in rest]
    return None


def is_shelling(order: list[frozenset]) -> bool:
    """Each facet meets the union of the earlier ones in a pure codimension-one complex."""
    for j in range(1, len(order)):
        fj = order[j]
        walls = [fj & order[i] for i in range(j) if len(fj & order[i]) == len(fj) - 1]
        for i in range(j):
            if not any(fj & order[i] <= wall for wall in walls):
                return False
    return True


def topology_checks(c: SimplicialComplex) -> dict[str, Any]:
    if c.is_void:
        raise ValueError("topology checks need a nonempty complex")
    pure = c.is_pure
    ridge_counts = c.ridges() if pure else {}
    thin = pure and all(v <= 2 for v in ridge_counts.values())
    order = vertex_decomposition(c) if pure else None
    if order is not None:
        assert is_shelling(order), "vertex decomposition produced a non-shelling"
    shape = "neither"
    if thin and order is not None:
        shape = "sphere" if all(v == 2 for v in ridge_counts.values()) else "ball"
    return {
        "pure": pure,
        "thin": thin,
        "vertex_decomposable": order is not None,
        "shellable_order": [sorted(f, key=_key) for f in order] if order is not None else None,
        "ball_or_sphere": shape,
    }


# -- squarefree monomial ideals --------------------------------------------


@dataclass(frozen=True)
class SquarefreeMonomialIdeal:
    generators: frozenset[frozenset]

    def __post_init__(self):
        object.__setattr__(self, "generators", minimal_sets(frozenset(g) for g in self.generators))

    def contains(self, monomial: Iterable) -> bool:
        m = frozenset(monomial)
        return any(g <= m for g in self.generators)

    @property
    def is_zero(self) -> bool:
        return not self.generators

    def to_json(self) -> str:
        gens = sorted(sorted((_key(v) for v in g)) for g in self.generators)
        return json.dumps(gens)


def stanley_reisner(c: SimplicialComplex) -> SquarefreeMonomialIdeal:
    """Minimal nonfaces: minimal sets meeting the complement of every facet."""
    verts = frozenset(c.vertices)
    return SquarefreeMonomialIdeal(transversal_dual(verts - f for f in c.facets))


def decompose(ideal: SquarefreeMonomialIdeal) -> frozenset[frozenset]:
    """Variable sets of the minimal primes."""
    return transversal_dual(ideal.generators)


def intersect(components: Iterable[Iterable]) -> SquarefreeMonomialIdeal:
    """Intersection of prime ideals generated by variable sets, via pairwise lcm."""
    result: Optional[set[frozenset]] = None
    for comp in components:
        gens = {frozenset({v}) for v in comp}
        if result is None:
            result = gens
        else:
            result = set(minimal_sets(a | b for a in result for b in gens))
    return SquarefreeMonomialIdeal(frozenset(result or ()))
