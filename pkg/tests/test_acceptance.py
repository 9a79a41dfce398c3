"""End-to-end checks, one group per acceptance criterion.

Each test carries a ``criterion`` marker; conftest prints a PASS/FAIL line
per criterion at the end of the run.
"""

from itertools import combinations, permutations, product

import pytest

from jugglepipe.algebra import (
    Polynomial,
    TermOrder,
    bott_samelson,
    bott_samelson_by_paths,
    buchberger,
    cyclic_minor_product,
    init_term,
    main_theorem_check,
    monomial_text,
    northwest_minors,
    patch_ideal,
)
from jugglepipe.afflag import constructed_flag, flag_validate, rank_correspondence
from jugglepipe.complex import SquarefreeMonomialIdeal, pipe_dream_complex, stanley_reisner, topology_checks
from jugglepipe.coxeter import Permutation, Word, affine_length, bruhat_leq
from jugglepipe.diagrams import (
    CauchonDiagram,
    LeDiagram,
    all_cauchon_diagrams,
    all_le_diagrams,
    bottom_apd_to_cauchon,
    cauchon_permutation,
    cauchon_to_bottom_apd,
    grid_to_apd,
    is_bottom,
    u_of_le,
    w_lambda,
)
from jugglepipe.errors import EmptyPatchError
from jugglepipe.juggling import (
    JugglingFunction,
    count_cycles,
    enumerate_bounded,
    nested_arc_pairs,
    positroid_data,
    state_graph,
)
from jugglepipe.pipedream import (
    antidiagonal_set,
    brute_force_pipe_dreams,
    d_bot,
    d_top,
    moves_and_enumerate,
    transversal_dual,
)
from jugglepipe.strip import apd_enumerate, pi_lambda, q_word_text, strip_layout

from oracles import affine_inversions, restricted

F = JugglingFunction.parse("4234233")
S4 = [Permutation(w) for w in permutations(range(1, 5))]


def layouts(pairs):
    for k, n in pairs:
        for lam in combinations(range(1, n + 1), k):
            yield strip_layout(lam, k, n)


def init_variables(layout, f):
    order = TermOrder.strip_revlex(layout)
    return {v for g in patch_ideal(layout, f) for v, _ in init_term(g, order)}


# 1


@pytest.mark.criterion(1, "strip word and pi for lambda=(1,2,4), n=7")
def test_01_strip_word():
    layout = strip_layout((1, 2, 4), 3, 7)
    assert q_word_text(layout) == "456 2345 1234 7"
    assert pi_lambda(layout).window == (8, 9, 3, 11, 5, 6, 7)


# 2


@pytest.mark.criterion(2, "initial monomials of 4234233 at two lambdas")
def test_02_picks_at_1_2_4():
    assert init_variables(strip_layout((1, 2, 4), 3, 7), F) == {"a33", "a35", "a26", "a17"}


@pytest.mark.criterion(2, "initial monomials of 4234233 at two lambdas")
def test_02_picks_at_4_6_7():
    layout = strip_layout((4, 6, 7), 3, 7)
    assert init_variables(layout, F) == {"a32", "a23", "a15"}
    assert len(apd_enumerate(layout, F)) == 2


# 3


@pytest.mark.criterion(3, "positroid data of 3401")
def test_03_positroid_3401():
    d = positroid_data(JugglingFunction.parse("3401"))
    assert {c.label(4) for c in d.essential} == {"rank[3,3]<=0", "rank[3,1]<=1"}
    assert "rank[4,1]<=1" in {c.label(4) for c in d.implied}


# 4


@pytest.mark.criterion(4, "initial term of the cyclic minor product")
@pytest.mark.parametrize("layout", list(layouts([(2, 4), (2, 5), (3, 5), (3, 6)])), ids=lambda l: f"{l.n},{l.lam}")
def test_04_init_of_minor_product(layout):
    order = TermOrder.strip_revlex(layout)
    every = tuple(sorted((v, 1) for v in order.ranking))
    assert tuple(sorted(init_term(cyclic_minor_product(layout), order))) == every


# 5 and 6


@pytest.mark.criterion(5, "Groebner degeneration matches the strip complex at (2,4)")
@pytest.mark.parametrize("layout", list(layouts([(2, 4)])), ids=lambda l: str(l.lam))
def test_05_main_theorem(layout):
    order = TermOrder.strip_revlex(layout)
    nonempty = 0
    for f in enumerate_bounded(4, 2):
        try:
            gens = patch_ideal(layout, f)
        except EmptyPatchError:
            assert not apd_enumerate(layout, f)
            continue
        nonempty += 1
        if gens:
            buchberger(gens, order)
        result = main_theorem_check(layout, f)
        assert result["raw_minors_groebner"] and result["init_equals_sr"], str(f)
    assert nonempty > 0


@pytest.mark.criterion(6, "strip complexes are regular at (2,4)")
@pytest.mark.parametrize("layout", list(layouts([(2, 4)])), ids=lambda l: str(l.lam))
def test_06_complexes_regular(layout):
    for f in enumerate_bounded(4, 2):
        result = main_theorem_check(layout, f)
        if result["empty"]:
            continue
        t = topology_checks(result["complex"])
        assert t["pure"] and t["thin"] and t["vertex_decomposable"]
        assert t["ball_or_sphere"] in ("ball", "sphere")


# 7


@pytest.mark.criterion(7, "Stanley-Reisner ideal of the 41523 staircase complex")
def test_07_stanley_reisner_example():
    c, cells = pipe_dream_complex(Permutation.parse("41523"))
    ours = {frozenset("x%d%d" % cells[v] for v in g) for g in stanley_reisner(c).generators}
    listed = SquarefreeMonomialIdeal(
        frozenset(
            frozenset(g)
            for g in [
                {"x23", "x31"},
                {"x23", "x22", "x32"},
                {"x23", "x32", "x31"},
                {"x23", "x22", "x31"},
                {"x22", "x32", "x31"},
                {"x23", "x22", "x32", "x31"},
            ]
        )
    )
    assert listed.generators == {
        frozenset({"x23", "x31"}),
        frozenset({"x22", "x23", "x32"}),
        frozenset({"x22", "x31", "x32"}),
    }
    assert {g for g in ours if len(g) > 1} == listed.generators


# 8


@pytest.mark.criterion(8, "antidiagonal duality over S4")
@pytest.mark.parametrize("w", S4, ids=str)
def test_08_duality(w):
    a = {frozenset(x.cells) for x in antidiagonal_set(w)}
    rp = {d.crosses for d in moves_and_enumerate(w)}
    assert transversal_dual(rp) == a
    assert transversal_dual(transversal_dual(rp)) == rp
    assert d_top(w) == d_bot(w.inverse()).transpose()


@pytest.mark.criterion(8, "antidiagonal duality over S4")
def test_08_count_2143():
    assert len(brute_force_pipe_dreams(Permutation.parse("2143"))) == 3


# 9


@pytest.mark.criterion(9, "affine flag construction")
def test_09_lattices_1_2_4():
    flag = constructed_flag(strip_layout((1, 2, 4), 3, 7))
    assert str(flag[1]) == "tail + <t, t^2, a33*t^3 + t^4>"
    assert str(flag[2]) == "tail + <t, a33*t^2 + t^3, a13*t^2 + a15*t^4 + a16*t^5 + a17*t^6 + t^7>"


@pytest.mark.criterion(9, "affine flag construction")
@pytest.mark.parametrize("n", range(2, 8))
def test_09_flags_validate(n):
    for k in range(1, n):
        for layout in layouts([(k, n)]):
            assert flag_validate(constructed_flag(layout)) == (True, None)


@pytest.mark.criterion(9, "affine flag construction")
@pytest.mark.parametrize("layout", list(layouts([(2, 4)])), ids=lambda l: str(l.lam))
def test_09_rank_correspondence_basic(layout):
    for f in enumerate_bounded(4, 2):
        if len(positroid_data(f).essential) == 1:
            assert rank_correspondence(layout, f, samples=20), str(f)


@pytest.mark.criterion(9, "affine flag construction")
def test_09_rank_correspondence_2333334():
    assert rank_correspondence(strip_layout((1, 2, 4), 3, 7), JugglingFunction.parse("2333334"), samples=20)


# 10


@pytest.mark.criterion(10, "Bott-Samelson minors and path sums")
def test_10_bott_samelson_12312():
    mat = bott_samelson(Word((1, 2, 3, 1, 2), 4), labels="heap")
    minors = northwest_minors(mat, [1, 2, 3])
    assert minors == [Polynomial.parse(s) for s in ("c1*c3 - c2", "c2*c5 - c3*c4", "c4")]
    order = TermOrder.graded_lex(["c1", "c2", "c3", "c4", "c5"])
    inits = [init_term(m, order) for m in minors]
    assert [monomial_text(m) for m in inits] == ["c1*c3", "c2*c5", "c4"]
    assert sorted(v for m in inits for v, _ in m) == ["c1", "c2", "c3", "c4", "c5"]


@pytest.mark.criterion(10, "Bott-Samelson minors and path sums")
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_10_paths_equal_products(n):
    for length in range(7):
        for letters in product(range(1, n), repeat=length):
            q = Word(letters, n)
            assert bott_samelson(q, labels="word") == bott_samelson_by_paths(q, labels="word")


# 11


@pytest.mark.criterion(11, "Le and Cauchon diagram bijections")
def test_11_le_instance():
    d = LeDiagram((3, 1), ((0, 1, 0), (0,)))
    assert (str(u_of_le(d, 2, 5)), str(w_lambda((3, 1), 2, 5))) == ("31254", "31452")


@pytest.mark.criterion(11, "Le and Cauchon diagram bijections")
def test_11_le_counts():
    n = 5
    for parts in product(range(4), repeat=2):
        if parts[0] < parts[1]:
            continue
        shape = tuple(x for x in parts if x)
        w = w_lambda(shape, 2, n)
        images = {u_of_le(d, 2, n) for d in all_le_diagrams(shape)}
        below = {Permutation(v) for v in permutations(range(1, n + 1)) if bruhat_leq(Permutation(v), w)}
        assert len(images) == len(all_le_diagrams(shape)) == len(below)
        assert images == below


@pytest.mark.criterion(11, "Le and Cauchon diagram bijections")
@pytest.mark.parametrize("m,p", [(m, p) for m in range(1, 4) for p in range(1, 4)])
def test_11_cauchon_bijection(m, p):
    valid = all_cauchon_diagrams(m, p)
    for c in valid:
        assert bottom_apd_to_cauchon(cauchon_to_bottom_apd(c)) == c
    squares = [(i, j) for i in range(1, m + 1) for j in range(1, p + 1)]
    bottoms = 0
    for bits in product((0, 1), repeat=len(squares)):
        c = CauchonDiagram(m, p, frozenset(s for s, b in zip(squares, bits) if b))
        bottoms += is_bottom(grid_to_apd(c))
    assert bottoms == len(valid) == len(restricted(m, p))
    assert {cauchon_permutation(c).window for c in valid} == set(restricted(m, p))


# 12


@pytest.mark.criterion(12, "bounded pattern enumeration and arc length")
def test_12_cross_enumeration():
    patterns = enumerate_bounded(4, 2)
    assert len(patterns) == count_cycles(state_graph(4, 2, 4), 4) == 33
    for f in patterns:
        a = f.to_affine()
        assert nested_arc_pairs(f) == affine_length(a) == affine_inversions(4, a.window)
