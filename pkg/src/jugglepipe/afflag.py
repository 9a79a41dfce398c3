"""Lattices in C((t^-1)) that contain every non-positive power of t, and flags of them.

A lattice is stored as its k finite generators; the tail of non-positive
powers is implicit.  Coefficients are symbolic ``Polynomial`` values in the
matrix variables, or exact rationals once specialized.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from .algebra import Polynomial, layout_matrix
from .errors import RetryExhaustedError, SymbolicInputError
from .juggling import JugglingFunction, matrix_rank, positroid_data, state_at
from .strip import StripLayout

__all__ = [
    "LaurentLattice",
    "AffineFlag",
    "FlagViolation",
    "lattice_from_matrix",
    "constructed_flag",
    "flag_validate",
    "t_lambda",
    "state_lattice",
    "schubert_dims",
    "lattice_contains",
    "specialize",
    "random_point",
    "rank_correspondence",
]

Coefficient = Union[Polynomial, Fraction, int]
Generator = dict  # degree -> coefficient


def _is_zero(c: Coefficient) -> bool:
    return c.is_zero() if isinstance(c, Polynomial) else c == 0


def _is_one(c: Coefficient) -> bool:
    return c == Polynomial.constant(1) if isinstance(c, Polynomial) else c == 1


def _clean(gen: Mapping[int, Coefficient]) -> Generator:
    return {d: c for d, c in gen.items() if not _is_zero(c)}


def _top(gen: Generator) -> int:
    return max(gen)


def _term_text(c: Coefficient, d: int) -> str:
    power = "1" if d == 0 else "t" if d == 1 else f"t^{d}"
    if _is_one(c):
        return power
    if isinstance(c, Polynomial):
        body = str(c)
        if len(c.terms) > 1:
            body = f"({body})"
    else:
        body = str(c)
        if c < 0 or "/" in body:
            body = f"({body})"
    return body if d == 0 else f"{body}*{power}"


@dataclass(frozen=True)
class LaurentLattice:
    generators: tuple  # of degree -> coefficient dicts, sorted by top degree

    def __post_init__(self):
        gens = [_clean(g) for g in self.generators]
        if any(not g for g in gens):
            raise ValueError("a lattice generator is zero")
        gens.sort(key=_top)
        tops = [_top(g) for g in gens]
        if len(set(tops)) != len(tops):
            raise ValueError(f"generator top degrees {tops} repeat")
        for g in gens:
            if not _is_one(g[_top(g)]):
                raise ValueError("generators need leading coefficient 1")
            if min(g) < 1:
                raise ValueError("generators carry only positive powers; the tail is implicit")
        object.__setattr__(self, "generators", tuple(gens))

    @property
    def index(self) -> int:
        return len(self.generators)

    @property
    def is_symbolic(self) -> bool:
        return any(isinstance(c, Polynomial) and not c.is_constant() for g in self.generators for c in g.values())

    def __str__(self) -> str:
        parts = []
        for g in self.generators:
            parts.append(" + ".join(_term_text(g[d], d) for d in sorted(g)))
        return "tail + <" + ", ".join(parts) + ">"

    def to_json(self) -> list:
        def enc(c):
            if isinstance(c, Polynomial):
                return str(c)
            return str(Fraction(c))

        return [{str(d): enc(g[d]) for d in sorted(g)} for g in self.generators]


@dataclass(frozen=True)
class AffineFlag:
    """Lattices L_1..L_n; L_{i+n} is L_i."""

    lattices: tuple[LaurentLattice, ...]

    @property
    def n(self) -> int:
        return len(self.lattices)

    def __getitem__(self, i: int) -> LaurentLattice:
        return self.lattices[(i - 1) % self.n]

    def to_json(self) -> str:
        return json.dumps({"lattices": [l.to_json() for l in self.lattices], "n": self.n}, sort_keys=True)


# -- the construction from a matrix ----------------------------------------


def _rotate_and_clear(matrix: Sequence[Sequence[Coefficient]], i: int, lam: Sequence[int], n: int) -> list[list[Coefficient]]:
    out = []
    for row, l in zip(matrix, lam):
        rotated = [row[(c + i - 1) % n] for c in range(n)]
        pivot = (l - i) % n  # where the identity entry of this row lands
        out.append([x if c <= pivot else 0 for c, x in enumerate(rotated)])
    return out


def lattice_from_matrix(layout: StripLayout, i: int, matrix: Optional[Sequence[Sequence[Coefficient]]] = None) -> LaurentLattice:
    """Rotate column i to the front, clear each row right of its identity entry,
    and read row r as the coefficients of t, t^2, ..., t^n."""
    if matrix is None:
        matrix = layout_matrix(layout)
    cleared = _rotate_and_clear(_pinned(layout, matrix), i, layout.lam, layout.n)
    gens = [{c + 1: x for c, x in enumerate(row)} for row in cleared]
    return LaurentLattice(tuple(gens))


def _pinned(layout: StripLayout, matrix):
    """Check the identity columns sit where the layout says."""
    for r, c in enumerate(layout.lam, start=1):
        for rr, row in enumerate(matrix, start=1):
            want = 1 if rr == r else 0
            x = row[c - 1]
            if not (_is_one(x) if want else _is_zero(x)):
                raise ValueError(f"column {c} of the matrix is not the unit vector e{r}")
    return matrix


def constructed_flag(layout: StripLayout, matrix=None) -> AffineFlag:
    return AffineFlag(tuple(lattice_from_matrix(layout, i, matrix) for i in range(1, layout.n + 1)))


def t_lambda(lam: Iterable[int], n: int) -> AffineFlag:
    """The torus-fixed flag: L_i spanned by t^((l - i) mod n + 1) for l in lambda."""
    lam = tuple(lam)
    return AffineFlag(
        tuple(LaurentLattice(tuple({(l - i) % n + 1: 1} for l in lam)) for i in range(1, n + 1))
    )


def state_lattice(f: JugglingFunction, i: int) -> LaurentLattice:
    """The lattice whose generators are t^j for each ball of the state before throw i."""
    return LaurentLattice(tuple({j: 1} for j in sorted(state_at(f, i - 1).landing)))


# -- containment -----------------------------------------------------------


@dataclass(frozen=True)
class FlagViolation:
    i: int
    generator: int  # position in L_i's generator list

    def __str__(self) -> str:
        return f"t^-1 * L_{self.i}[{self.generator}] is not in L_{self.i + 1}"


def _shift_down(gen: Generator) -> Generator:
    """t^-1 times a generator, with powers <= 0 absorbed into the tail."""
    return {d - 1: c for d, c in gen.items() if d - 1 >= 1}


def lattice_contains(lattice: LaurentLattice, vector: Mapping[int, Coefficient]) -> bool:
    """Exact span test modulo the tail; rational coefficients only."""
    vector = _clean(vector)
    if not vector:
        return True
    if lattice.is_symbolic or any(isinstance(c, Polynomial) and not c.is_constant() for c in vector.values()):
        raise SymbolicInputError("specialize the lattice before testing membership")
    degrees = sorted(set(vector).union(*lattice.generators))
    rows = [[_number(g.get(d, 0)) for d in degrees] for g in lattice.generators]
    extended = rows + [[_number(vector.get(d, 0)) for d in degrees]]
    return matrix_rank(extended) == matrix_rank(rows)


def _number(c: Coefficient) -> Fraction:
    if isinstance(c, Polynomial):
        return Fraction(c.terms.get((), 0))
    return Fraction(c)


def flag_validate(
    flag: AffineFlag, samples: int = 3, seed: int = 0
) -> tuple[bool, Optional[FlagViolation]]:
    """Check t^-1 L_i inside L_{i+1} for every i, returning the first failure.

    A shifted generator that is zero or literally equal to a generator of the
    next lattice passes term by term.  Anything else is tested by exact rank
    after substituting random rationals for the variables.
    """
    n = flag.n
    ks = {l.index for l in flag.lattices}
    if len(ks) != 1:
        return False, FlagViolation(min(range(1, n + 1), key=lambda i: flag[i].index), 0)
    rng = random.Random(seed)
    names = sorted({v for l in flag.lattices for g in l.generators for c in g.values() if isinstance(c, Polynomial) for v in c.variables})
    points = [{v: Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for v in names} for _ in range(samples)] if names else [{}]
    for i in range(1, n + 1):
        nxt = flag[i + 1]
        for g_index, g in enumerate(flag[i].generators):
            shifted = _shift_down(g)
            if not shifted or any(_same(shifted, h) for h in nxt.generators):
                continue
            for point in points:
                if not lattice_contains(specialize(nxt, point), _specialize_gen(shifted, point)):
                    return False, FlagViolation(i, g_index)
    return True, None


def _same(a: Generator, b: Generator) -> bool:
    return set(a) == set(b) and all(Polynomial.coerce(a[d]) == Polynomial.coerce(b[d]) if isinstance(a[d], Polynomial) or isinstance(b[d], Polynomial) else a[d] == b[d] for d in a)


def _specialize_coefficient(c: Coefficient, point: Mapping[str, Fraction]) -> Fraction:
    if isinstance(c, Polynomial):
        value = c.substitute(point)
        if isinstance(value, Polynomial):
            if not value.is_constant():
                raise SymbolicInputError(f"variables {sorted(value.variables)} were not given values")
            value = value.terms.get((), 0)
        return Fraction(value)
    return Fraction(c)


def _specialize_gen(g: Mapping[int, Coefficient], point) -> Generator:
    return {d: _specialize_coefficient(c, point) for d, c in g.items()}


def specialize(lattice: LaurentLattice, point: Mapping[str, Fraction]) -> LaurentLattice:
    return LaurentLattice(tuple(_specialize_gen(g, point) for g in lattice.generators))


# -- Schubert conditions ---------------------------------------------------


def schubert_dims(lattice: LaurentLattice, m: int) -> tuple[int, int]:
    """(up, down) for a rational lattice.

    up is the dimension of L modulo its part of degree <= m, down the
    dimension of its part of degree >= m.
    """
    if lattice.is_symbolic:
        raise SymbolicInputError("schubert_dims needs a specialized lattice")
    gens = [{d: _number(c) for d, c in g.items()} for g in lattice.generators]
    # distinct top degrees make "top degree > m" a basis-free count
    up = sum(1 for g in gens if _top(g) > m)
    low = list(range(1, m))
    rank = matrix_rank([[g.get(d, Fraction(0)) for d in low] for g in gens]) if low else 0
    down = len(gens) - rank + max(0, 1 - m)
    return up, down


def in_closed_cell(lattice: LaurentLattice, reference: LaurentLattice, m_range: Iterable[int]) -> bool:
    """Every down-dimension is at least the reference one."""
    return all(schubert_dims(lattice, m)[1] >= schubert_dims(reference, m)[1] for m in m_range)


def in_open_cell(lattice: LaurentLattice, reference: LaurentLattice, m_range: Iterable[int]) -> bool:
    return all(schubert_dims(lattice, m)[1] == schubert_dims(reference, m)[1] for m in m_range)


def in_opposite_closed_cell(lattice: LaurentLattice, reference: LaurentLattice, m_range: Iterable[int]) -> bool:
    """Every up-dimension is at least the reference one."""
    return all(schubert_dims(lattice, m)[0] >= schubert_dims(reference, m)[0] for m in m_range)


# -- rank conditions versus lattice conditions -----------------------------


def _free_cells(layout: StripLayout) -> list[tuple[int, int]]:
    return sorted(layout.cell_labels)


def random_point(layout: StripLayout, rng: random.Random, forced=None) -> dict[str, Fraction]:
    """Random rational values for the free entries.

    With ``forced = (i, j, r)`` the block of free entries in the cyclic
    interval [i, j] is drawn with rank r minus the identity columns inside it,
    so the interval has rank at most r.
    """
    value = lambda: Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 4))
    point = {layout.variable(c): value() for c in _free_cells(layout)}
    if forced is None:
        return point
    i, j, r = forced
    n = layout.n
    cols = sorted({(c - 1) % n + 1 for c in range(i, j + 1)})
    pivots = [c for c in cols if c in layout.lam]
    rows = [rr for rr in range(1, layout.k + 1) if layout.lam[rr - 1] not in pivots]
    free = [c for c in cols if c not in layout.lam]
    target = r - len(pivots)
    if target < 0:
        raise ValueError("the identity columns alone exceed the rank bound")
    left = [[value() for _ in range(target)] for _ in rows]
    right = [[value() for _ in free] for _ in range(target)]
    for a, rr in enumerate(rows):
        for b, c in enumerate(free):
            point[layout.variable((rr, c))] = sum((left[a][t] * right[t][b] for t in range(target)), Fraction(0))
    return point


def _numeric_matrix(layout: StripLayout, point) -> list[list[Fraction]]:
    return [[_specialize_coefficient(x, point) for x in row] for row in layout_matrix(layout)]


def _satisfies_rank_bounds(matrix, f: JugglingFunction) -> bool:
    n = f.n
    for cond in positroid_data(f).conditions:
        cols = [(c - 1) % n + 1 for c in range(cond.i, cond.j + 1)]
        if matrix_rank([[row[c - 1] for c in cols] for row in matrix]) > cond.bound:
            return False
    return True


def _satisfies_lattice_bounds(flag: AffineFlag, f: JugglingFunction) -> bool:
    n = f.n
    m_range = range(1, n + 2)
    return all(in_closed_cell(flag[i], state_lattice(f, i), m_range) for i in range(1, n + 1))


def rank_correspondence(
    layout: StripLayout, f: JugglingFunction, samples: int = 20, seed: int = 0, max_retries: int = 100
) -> bool:
    """Compare the cyclic rank bounds of f on M with the lattice inequalities.

    Half the samples are uniform; the rest are pushed onto one of f's
    essential conditions so that both verdicts get exercised.  A pushed sample
    whose forced block comes out of lower rank than intended is degenerate and
    is redrawn.
    """
    if f.n != layout.n or f.k != layout.k:
        raise ValueError("pattern and layout disagree on n or k")
    rng = random.Random(seed)
    essential = [c for c in positroid_data(f).essential if c.bound - _pivots_in(layout, c) >= 0]
    retries = 0
    done = 0
    while done < samples:
        forced = None
        if essential and done % 2 == 1:
            c = essential[rng.randrange(len(essential))]
            forced = (c.i, c.j, c.bound)
        point = random_point(layout, rng, forced)
        matrix = _numeric_matrix(layout, point)
        if forced is not None and _block_rank(matrix, layout, forced) != forced[2]:
            retries += 1
            if retries > max_retries:
                raise RetryExhaustedError(f"{retries} degenerate specializations in a row")
            continue
        flag = AffineFlag(tuple(lattice_from_matrix(layout, i, matrix) for i in range(1, layout.n + 1)))
        if _satisfies_rank_bounds(matrix, f) != _satisfies_lattice_bounds(flag, f):
            return False
        done += 1
    return True


def _pivots_in(layout: StripLayout, cond) -> int:
    cols = {(c - 1) % layout.n + 1 for c in range(cond.i, cond.j + 1)}
    return sum(1 for l in layout.lam if l in cols)


def _block_rank(matrix, layout: StripLayout, forced) -> int:
    i, j, _ = forced
    cols = sorted({(c - 1) % layout.n + 1 for c in range(i, j + 1)})
    return matrix_rank([[row[c - 1] for c in cols] for row in matrix])
