"""Integer polynomials, monomial orders, determinants and a small Buchberger.

A monomial is a sorted tuple of ``(variable, exponent)`` pairs; the empty
tuple is 1.  Coefficients are Python ints, and all reductions stay
division-free by scaling with leading coefficients and dividing out content.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Iterable, Mapping, Optional, Sequence

from .complex import stanley_reisner, subword_complex
from .coxeter import Word
from .errors import (
    EmptyPatchError,
    NonSquareError,
    NonSquarefreeError,
    ResourceLimitError,
    ZeroPolynomialError,
)
from .juggling import JugglingFunction, interval_columns, positroid_data
from .pipedream import minimal_sets
from .strip import StripLayout, apd_enumerate, q_word, target_of

__all__ = [
    "main_theorem_check",
    "Monomial",
    "Polynomial",
    "TermOrder",
    "strip_start_label",
    "monomial",
    "monomial_text",
    "det_symbolic",
    "init_term",
    "init_ideal_gens",
    "layout_matrix",
    "cyclic_minor_product",
    "patch_ideal",
    "minors",
    "buchberger",
    "is_groebner",
    "reduce_polynomial",
    "bott_samelson",
    "bott_samelson_by_paths",
    "crossing_names",
    "northwest_minors",
    "ideal_equal_monomial",
]

Monomial = tuple[tuple[str, int], ...]


def monomial(*variables: str, **powers: int) -> Monomial:
    exps: dict[str, int] = {}
    for v in variables:
        exps[v] = exps.get(v, 0) + 1
    for v, e in powers.items():
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted((v, e) for v, e in exps.items() if e))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def _mono_divides(a: Monomial, b: Monomial) -> bool:
    eb = dict(b)
    return all(eb.get(v, 0) >= e for v, e in a)


def _mono_div(b: Monomial, a: Monomial) -> Monomial:
    exps = dict(b)
    for v, e in a:
        exps[v] -= e
    return tuple(sorted((v, e) for v, e in exps.items() if e))


def _mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    exps = dict(a)
    for v, e in b:
        exps[v] = max(exps.get(v, 0), e)
    return tuple(sorted(exps.items()))


def _degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def monomial_text(m: Monomial) -> str:
    if not m:
        return "1"
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)


def _natural_key(name: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name)]


@dataclass(frozen=True)
class Polynomial:
    terms: Mapping[Monomial, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {m: c for m, c in dict(self.terms).items() if c}
        object.__setattr__(self, "terms", clean)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(other)
        return isinstance(other, Polynomial) and self.terms == other.terms

    @classmethod
    def var(cls, name: str) -> "Polynomial":
        return cls({((name, 1),): 1})

    @classmethod
    def constant(cls, c: int) -> "Polynomial":
        return cls({(): c})

    @classmethod
    def coerce(cls, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            return x
        if isinstance(x, int):
            return cls.constant(x)
        if isinstance(x, str):
            return cls.parse(x)
        raise TypeError(f"cannot make a polynomial from {x!r}")

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    @property
    def variables(self) -> frozenset[str]:
        return frozenset(v for m in self.terms for v, _ in m)

    def degree(self) -> int:
        return max((_degree(m) for m in self.terms), default=0)

    def __add__(self, other):
        other = Polynomial.coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Polynomial.coerce(other))

    def __rsub__(self, other):
        return Polynomial.coerce(other) - self

    def __mul__(self, other):
        other = Polynomial.coerce(other)
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(out)

    __rmul__ = __mul__

    def scale_monomial(self, m: Monomial, c: int) -> "Polynomial":
        return Polynomial({_mono_mul(m, mm): c * cc for mm, cc in self.terms.items()})

    def content(self) -> int:
        return reduce(gcd, self.terms.values(), 0)

    def primitive(self) -> "Polynomial":
        """Divide out the gcd of the coefficients."""
        g = self.content()
        if g in (0, 1):
            return self
        return Polynomial({m: c // g for m, c in self.terms.items()})

    def substitute(self, values: Mapping[str, object]):
        """Evaluate at numbers (or partially, leaving other variables symbolic)."""
        total = 0
        for m, c in self.terms.items():
            term = c
            for v, e in m:
                term = term * (values[v] ** e if v in values else Polynomial.var(v) ** e if e > 1 else Polynomial.var(v))
            total = total + term
        return total

    def __pow__(self, e: int) -> "Polynomial":
        out = Polynomial.constant(1)
        for _ in range(e):
            out = out * self
        return out

    # text format ----------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        order = sorted(self.terms, key=lambda m: (-_degree(m), [(_natural_key(v), -e) for v, e in m]))
        parts = []
        for i, m in enumerate(order):
            c = self.terms[m]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = monomial_text(m) if m else str(a)
            if m and a != 1:
                body = f"{a}*{body}"
            if i == 0:
                parts.append(("-" if sign == "-" else "") + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    __repr__ = __str__

    @classmethod
    def parse(cls, text: str) -> "Polynomial":
        text = text.replace(" ", "")
        if not text:
            raise ValueError("empty polynomial text")
        out = Polynomial()
        for sign, body in re.findall(r"([+-]?)([^+-]+)", text):
            coef = -1 if sign == "-" else 1
            mono: dict[str, int] = {}
            for factor in body.split("*"):
                if re.fullmatch(r"\d+", factor):
                    coef *= int(factor)
                    continue
                if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*(\^\d+)?", factor):
                    raise ValueError(f"bad factor {factor!r}")
                name, _, e = factor.partition("^")
                mono[name] = mono.get(name, 0) + (int(e) if e else 1)
            out = out + Polynomial({tuple(sorted(mono.items())): coef})
        return out

    def to_json(self) -> list:
        return [[dict(m), c] for m, c in sorted(self.terms.items())]


# -- term orders -----------------------------------------------------------


@dataclass(frozen=True)
class TermOrder:
    """A graded order; ``ranking`` lists variables from largest to smallest."""

    kind: str
    ranking: tuple[str, ...]

    def __post_init__(self):
        if self.kind not in ("graded_lex", "graded_revlex", "strip_revlex"):
            raise ValueError(f"unknown term order {self.kind!r}")
        object.__setattr__(self, "ranking", tuple(self.ranking))
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.ranking)})

    @classmethod
    def graded_lex(cls, variables: Iterable[str]) -> "TermOrder":
        return cls("graded_lex", tuple(variables))

    @classmethod
    def graded_revlex(cls, variables: Iterable[str]) -> "TermOrder":
        return cls("graded_revlex", tuple(variables))

    @classmethod
    def strip_revlex(cls, layout: StripLayout, within_label: str = "reading") -> "TermOrder":
        """Revlex on the cell labels read cyclically from ``strip_start_label``.

        The start label is the smallest; ties inside a label go by reading
        order, earlier cells ranking higher (or lower with ``within_label="reverse"``).
        """
        n = layout.n
        start = strip_start_label(layout)
        pos = {c: p for p, c in enumerate(layout.reading_order)}
        sign = 1 if within_label == "reading" else -1
        cells = sorted(layout.reading_order, key=lambda c: (-((layout.cell_labels[c] - start) % n), sign * pos[c]))
        return cls("strip_revlex", tuple(layout.variable(c) for c in cells))

    def vector(self, m: Monomial) -> tuple[int, ...]:
        vec = [0] * len(self.ranking)
        for v, e in m:
            try:
                vec[self._index[v]] = e
            except KeyError:
                raise ValueError(f"variable {v} is not ranked by this order") from None
        return tuple(vec)

    def key(self, m: Monomial):
        """Sort key: a larger key is a larger monomial."""
        vec = self.vector(m)
        if self.kind == "graded_lex":
            return (sum(vec), vec)
        return (sum(vec), tuple(-e for e in reversed(vec)))

    def sort(self, monomials: Iterable[Monomial]) -> list[Monomial]:
        """Largest first."""
        return sorted(monomials, key=self.key, reverse=True)


def strip_start_label(layout: StripLayout) -> int:
    """Lowest-ranked label: one less than the identity column after the widest cyclic gap.

    Gaps are measured from the previous identity column; among equally wide
    gaps the one followed by the tighter run of identity columns wins.
    """
    lam, n = layout.lam, layout.n
    if not lam:
        return n
    size = len(lam)
    gaps = [(lam[i] - lam[i - 1]) % n or n for i in range(size)]
    best = max(range(size), key=lambda i: (gaps[i],) + tuple(-gaps[(i + t) % size] for t in range(1, size)))
    return (lam[best] - 2) % n + 1


def init_term(p: Polynomial, order: TermOrder) -> Monomial:
    if p.is_zero():
        raise ZeroPolynomialError("the zero polynomial has no initial term")
    return max(p.terms, key=order.key)


def _lead(p: Polynomial, order: TermOrder) -> tuple[Monomial, int]:
    m = init_term(p, order)
    return m, p.terms[m]


def init_ideal_gens(gens: Iterable[Polynomial], order: TermOrder) -> frozenset[Monomial]:
    """Minimal generators of the ideal spanned by the leading monomials."""
    lead = {init_term(g, order) for g in gens if not g.is_zero()}
    kept = []
    for m in sorted(lead, key=_degree):
        if not any(_mono_divides(k, m) for k in kept):
            kept.append(m)
    return frozenset(kept)


# -- determinants and matrices ---------------------------------------------


def det_symbolic(matrix: Sequence[Sequence]) -> Polynomial:
    """Cofactor expansion along rows, memoized on the set of remaining columns."""
    size = len(matrix)
    if any(len(row) != size for row in matrix):
        raise NonSquareError(f"matrix is {size} x {len(matrix[0]) if matrix else 0}")
    rows = [[Polynomial.coerce(x) for x in row] for row in matrix]
    memo: dict[tuple[int, ...], Polynomial] = {}

    def expand(r: int, cols: tuple[int, ...]) -> Polynomial:
        if r == size:
            return Polynomial.constant(1)
        if cols in memo:
            return memo[cols]
        total = Polynomial()
        for idx, c in enumerate(cols):
            entry = rows[r][c]
            if entry.is_zero():
                continue
            minor = expand(r + 1, cols[:idx] + cols[idx + 1 :])
            term = entry * minor
            total = total + (term if idx % 2 == 0 else -term)
        memo[cols] = total
        return total

    return expand(0, tuple(range(size)))


def layout_matrix(layout: StripLayout) -> list[list[Polynomial]]:
    """k x n matrix: identity in the columns of lambda, a variable elsewhere."""
    k, n = layout.k, layout.n
    row_of = {c: r for r, c in enumerate(layout.lam, start=1)}
    mat = []
    for r in range(1, k + 1):
        row = []
        for c in range(1, n + 1):
            if c in row_of:
                row.append(Polynomial.constant(int(row_of[c] == r)))
            else:
                row.append(Polynomial.var(layout.variable((r, c))))
        mat.append(row)
    return mat


def minors(matrix: Sequence[Sequence[Polynomial]], cols: Sequence[int], size: int) -> list[Polynomial]:
    """All size x size minors using the given (1-based) columns."""
    out = []
    for rs in combinations(range(len(matrix)), size):
        for cs in combinations(cols, size):
            out.append(det_symbolic([[matrix[r][c - 1] for c in cs] for r in rs]))
    return out


def cyclic_minor_product(layout: StripLayout) -> Polynomial:
    mat = layout_matrix(layout)
    k, n = layout.k, layout.n
    total = Polynomial.constant(1)
    for i in range(1, n + 1):
        cols = interval_columns(i, i + k - 1, n)
        total = total * det_symbolic([[row[c - 1] for c in cols] for row in mat])
    return total


def patch_ideal(layout: StripLayout, f: JugglingFunction) -> list[Polynomial]:
    """Minors of size bound+1 on each essential interval, on the lambda patch."""
    if f.n != layout.n or f.k != layout.k:
        raise ValueError("pattern and layout disagree on n or k")
    mat = layout_matrix(layout)
    gens: list[Polynomial] = []
    seen = set()
    for cond in positroid_data(f).essential:
        cols = interval_columns(cond.i, cond.j, f.n)
        for p in minors(mat, cols, cond.bound + 1):
            if p.is_zero():
                continue
            if p.is_constant():
                raise EmptyPatchError(f"the lambda patch misses this positroid variety ({cond.label(f.n)})")
            key = p.primitive()
            if key not in seen and -key not in seen:
                seen.add(key)
                gens.append(p)
    return gens


# -- Groebner bases --------------------------------------------------------


def _normalize(p: Polynomial, order: TermOrder) -> Polynomial:
    p = p.primitive()
    if p.is_zero():
        return p
    _, c = _lead(p, order)
    return -p if c < 0 else p


def reduce_polynomial(p: Polynomial, basis: Sequence[Polynomial], order: TermOrder, full: bool = True) -> Polynomial:
    """Division-free remainder: every term (or just the lead) is made irreducible."""
    leads = [_lead(g, order) for g in basis]
    remainder = Polynomial()
    p = Polynomial(dict(p.terms))
    while not p.is_zero():
        m, c = _lead(p, order)
        for g, (gm, gc) in zip(basis, leads):
            if _mono_divides(gm, m):
                q = _mono_div(m, gm)
                # gc * p - c * q * g kills the term m without fractions
                p = p * gc - g.scale_monomial(q, c)
                remainder = remainder * gc
                g_ = gcd(p.content(), remainder.content())
                if g_ > 1:
                    p = Polynomial({mm: cc // g_ for mm, cc in p.terms.items()})
                    remainder = Polynomial({mm: cc // g_ for mm, cc in remainder.terms.items()})
                break
        else:
            if not full:
                return p + remainder
            remainder = remainder + Polynomial({m: c})
            p = Polynomial({mm: cc for mm, cc in p.terms.items() if mm != m})
    return remainder


def _s_polynomial(f: Polynomial, g: Polynomial, order: TermOrder) -> Polynomial:
    fm, fc = _lead(f, order)
    gm, gc = _lead(g, order)
    lcm = _mono_lcm(fm, gm)
    return f.scale_monomial(_mono_div(lcm, fm), gc) - g.scale_monomial(_mono_div(lcm, gm), fc)


def _coprime(a: Monomial, b: Monomial) -> bool:
    return not ({v for v, _ in a} & {v for v, _ in b})


def buchberger(gens: Iterable[Polynomial], order: TermOrder, max_pairs: int = 20000) -> list[Polynomial]:
    """Reduced Groebner basis (integer primitive, positive leading coefficients)."""
    basis = [_normalize(Polynomial.coerce(g), order) for g in gens]
    basis = [g for g in basis if not g.is_zero()]
    if not basis:
        raise ZeroPolynomialError("no nonzero generators")
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    done: set[tuple[int, int]] = set()
    processed = 0
    while pairs:
        i, j = pairs.pop(0)
        done.add((i, j))
        processed += 1
        if processed > max_pairs:
            raise ResourceLimitError(f"gave up after {max_pairs} S-pairs", (i, j))
        mi, mj = init_term(basis[i], order), init_term(basis[j], order)
        if _coprime(mi, mj):
            continue
        lcm = _mono_lcm(mi, mj)
        chain = False
        for t in range(len(basis)):
            if t in (i, j) or not _mono_divides(init_term(basis[t], order), lcm):
                continue
            if tuple(sorted((i, t))) in done and tuple(sorted((j, t))) in done:
                chain = True
                break
        if chain:
            continue
        r = reduce_polynomial(_s_polynomial(basis[i], basis[j], order), basis, order)
        if r.is_zero():
            continue
        basis.append(_normalize(r, order))
        new = len(basis) - 1
        pairs.extend((t, new) for t in range(new))
    return _reduced_basis(basis, order)


def _reduced_basis(basis: list[Polynomial], order: TermOrder) -> list[Polynomial]:
    basis = sorted(basis, key=lambda g: order.key(init_term(g, order)))
    minimal: list[Polynomial] = []
    for g in basis:
        m = init_term(g, order)
        if any(_mono_divides(init_term(h, order), m) for h in minimal):
            continue
        minimal = [h for h in minimal if not _mono_divides(m, init_term(h, order))]
        minimal.append(g)
    # no other lead divides g's lead, so full reduction keeps it and cleans the tail
    out = [_normalize(reduce_polynomial(g, minimal[:i] + minimal[i + 1 :], order), order) for i, g in enumerate(minimal)]
    return sorted(out, key=lambda g: order.key(init_term(g, order)), reverse=True)


def is_groebner(gens: Iterable[Polynomial], order: TermOrder) -> bool:
    """Every S-polynomial reduces to zero modulo the generators."""
    basis = [Polynomial.coerce(g) for g in gens if not Polynomial.coerce(g).is_zero()]
    for f, g in combinations(basis, 2):
        if _coprime(init_term(f, order), init_term(g, order)):
            continue
        if not reduce_polynomial(_s_polynomial(f, g, order), basis, order).is_zero():
            return False
    return True


# -- Bott-Samelson ---------------------------------------------------------


def _elementary(n: int, q: int, c: Polynomial) -> list[list[Polynomial]]:
    one, zero = Polynomial.constant(1), Polynomial()
    mat = [[one if r == s else zero for s in range(n)] for r in range(n)]
    mat[q - 1][q - 1] = c
    mat[q - 1][q] = Polynomial.constant(-1)
    mat[q][q - 1] = one
    mat[q][q] = zero
    return mat


def _matmul(a, b):
    size = len(a)
    return [[sum((a[r][t] * b[t][s] for t in range(size)), Polynomial()) for s in range(size)] for r in range(size)]


def crossing_names(q: Word, labels: str = "word") -> list[str]:
    """Variable for each letter: by word position, or by heap level then column."""
    if labels == "word":
        return [f"c{t}" for t in range(1, len(q) + 1)]
    if labels != "heap":
        raise ValueError(f"unknown labelling {labels!r}")
    levels: list[int] = []
    for p, a in enumerate(q.letters):
        # a letter drops until it lands on an equal or adjacent letter
        below = [levels[t] for t in range(p) if abs(q.letters[t] - a) <= 1]
        levels.append(1 + max(below, default=0))
    order = sorted(range(len(q)), key=lambda p: (levels[p], q.letters[p], p))
    names = [""] * len(q)
    for rank, p in enumerate(order, start=1):
        names[p] = f"c{rank}"
    return names


def bott_samelson(q: Word, n: Optional[int] = None, labels: str = "word") -> list[list[Polynomial]]:
    """Ordered product of elementary blocks, checked against the path sum."""
    n = n or q.n
    names = crossing_names(q, labels)
    mat = [[Polynomial.constant(int(r == s)) for s in range(n)] for r in range(n)]
    for a, name in zip(q.letters, names):
        mat = _matmul(mat, _elementary(n, a, Polynomial.var(name)))
    assert mat == bott_samelson_by_paths(q, n, labels), "path sum disagrees with the block product"
    return mat


def bott_samelson_by_paths(q: Word, n: Optional[int] = None, labels: str = "word") -> list[list[Polynomial]]:
    """Sum of weighted paths through the wiring diagram, read left to right.

    At the crossing for letter a a path on wire a may stay (weight c) or drop
    to wire a+1 (weight -1); a path on wire a+1 must climb to wire a (weight
    1).  Other wires pass with weight 1.
    """
    n = n or q.n
    letters = q.letters
    names = crossing_names(q, labels)
    out = [[Polynomial() for _ in range(n)] for _ in range(n)]

    def walk(start: int, step: int, wire: int, weight: Polynomial) -> None:
        if step == len(letters):
            out[start][wire] = out[start][wire] + weight
            return
        a = letters[step] - 1
        if wire == a:
            walk(start, step + 1, a, weight * Polynomial.var(names[step]))
            walk(start, step + 1, a + 1, -weight)
        elif wire == a + 1:
            walk(start, step + 1, a, weight)
        else:
            walk(start, step + 1, wire, weight)

    for i in range(n):
        walk(i, 0, i, Polynomial.constant(1))
    return out


def northwest_minors(matrix: Sequence[Sequence[Polynomial]], sizes: Iterable[int]) -> list[Polynomial]:
    return [det_symbolic([list(row[:i]) for row in matrix[:i]]) for i in sizes]


# -- monomial ideal comparison ---------------------------------------------


def _as_support(m) -> frozenset:
    if isinstance(m, (set, frozenset)):
        return frozenset(m)
    exps = dict(m)
    if any(e > 1 for e in exps.values()):
        raise NonSquarefreeError(f"{monomial_text(tuple(sorted(exps.items())))} is not squarefree")
    return frozenset(exps)


def ideal_equal_monomial(a: Iterable, b: Iterable) -> bool:
    """Equality of squarefree monomial ideals given by generators."""
    return minimal_sets(_as_support(m) for m in a) == minimal_sets(_as_support(m) for m in b)


# -- the patch ideal against its subword complex ---------------------------


def main_theorem_check(layout: StripLayout, f: JugglingFunction, max_pairs: int = 20000) -> dict:
    """Compare the Groebner degeneration of a patch with the strip subword complex.

    For an empty patch the check is that no affine pipe dream exists.
    """
    target = target_of(layout, f)
    if target is None:
        raise ValueError("pattern and layout disagree on n or k")
    order_cells = layout.reading_order
    try:
        gens = patch_ideal(layout, f)
    except EmptyPatchError:
        count = len(apd_enumerate(layout, f))
        return {"empty": True, "pipe_dreams": count, "passed": count == 0}
    order = TermOrder.strip_revlex(layout)
    # the whole positroid variety imposes nothing: the zero ideal
    basis = buchberger(gens, order, max_pairs=max_pairs) if gens else []
    raw_is_basis = is_groebner(gens, order) if gens else True
    initial = init_ideal_gens(basis, order)
    cx = subword_complex(q_word(layout), target)
    cell_vars = cx.relabel({p: layout.variable(c) for p, c in enumerate(order_cells)})
    sr = stanley_reisner(cell_vars)
    matches = ideal_equal_monomial(initial, sr.generators)
    return {
        "empty": False,
        "generators": len(gens),
        "basis": len(basis),
        "raw_minors_groebner": raw_is_basis,
        "initial_ideal": sorted(monomial_text(m) for m in initial),
        "stanley_reisner": sorted("*".join(sorted(g, key=_natural_key)) for g in sr.generators),
        "init_equals_sr": matches,
        "complex": cx,
        "passed": raw_is_basis and matches,
    }
