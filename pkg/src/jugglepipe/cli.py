"""Command-line entry point.

Every command builds a report dict; ``--json`` prints it as sorted JSON,
otherwise a short text rendering is printed.  Exit status is 0 on success,
1 when a verification fails and 2 on bad input.
"""

from __future__ import annotations

import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations
from typing import Any, Callable, Optional

import click

from . import afflag, algebra, complex as cx, diagrams, juggling, pipedream, strip
from .coxeter import AffinePermutation, Permutation, Word
from .errors import CollisionError, JugglePipeError

WORKERS_ENV = "JUGGLEPIPE_WORKERS"


class Failed(Exception):
    """Raised after output when a verification did not pass."""


class Context:
    def __init__(self, as_json: bool, fmt: str, seed: int, timing: bool):
        self.as_json = as_json or fmt == "json"
        self.seed = seed
        self.timing = timing


def _emit(ctx: click.Context, report: dict, text: Callable[[dict], str]) -> None:
    opts: Context = ctx.obj
    report = {"command": ctx.command_path, "parameters": dict(ctx.params), **report}
    if opts.timing:
        report["wall_time"] = round(time.perf_counter() - ctx.find_root().meta["started"], 6)
    if opts.as_json:
        click.echo(json.dumps(report, sort_keys=True, indent=2, default=str))
    else:
        click.echo(text(report))
    if report.get("passed") is False:
        raise Failed()


def _ints(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(t) for t in text.split(","))


def _pattern(text: str) -> juggling.JugglingFunction:
    return juggling.JugglingFunction.parse(text)


def _lambda_layout(n: int, k: int, lam: str) -> strip.StripLayout:
    return strip.strip_layout(_ints(lam), k, n)


def _key_lines(report: dict) -> str:
    return "\n".join(f"{k}: {v}" for k, v in report.items() if k not in ("command", "parameters"))


# -- root ------------------------------------------------------------------


@click.group()
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
@click.option("--format", "fmt", type=click.Choice(["ascii", "json"]), default="ascii")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for random specializations.")
@click.option("--timing", is_flag=True, help="Add wall time to the report.")
@click.pass_context
def cli(ctx: click.Context, as_json: bool, fmt: str, seed: int, timing: bool) -> None:
    """Juggling patterns, pipe dreams, subword complexes and positroid patches."""
    ctx.obj = Context(as_json, fmt, seed, timing)
    ctx.meta["started"] = time.perf_counter()


# -- juggling --------------------------------------------------------------


@cli.group()
def jp() -> None:
    """Juggling patterns."""


@jp.command("validate")
@click.argument("siteswap")
@click.pass_context
def jp_validate(ctx, siteswap):
    throws = juggling.parse_siteswap(siteswap)
    try:
        k = juggling.validate_siteswap(throws)
    except CollisionError as err:
        report = {"siteswap": siteswap, "valid": False, "reason": str(err), "passed": False}
    else:
        f = juggling.JugglingFunction(throws)
        report = {
            "siteswap": siteswap,
            "valid": True,
            "k": k,
            "window": list(f.window),
            "bounded": f.is_bounded,
            "ground_state": juggling.is_ground_state(f) if f.is_plain else False,
            "passed": True,
        }
    _emit(ctx, report, lambda r: f"k={r['k']}, valid" if r["valid"] else f"invalid: {r['reason']}")


@jp.command("enumerate")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.pass_context
def jp_enumerate(ctx, n, k):
    patterns = juggling.enumerate_bounded(n, k)
    cycles = juggling.count_cycles(juggling.state_graph(n, k, n), n)
    report = {
        "n": n,
        "k": k,
        "count": len(patterns),
        "state_graph_cycles": cycles,
        "patterns": [str(f) for f in patterns],
        "passed": len(patterns) == cycles,
    }
    _emit(ctx, report, lambda r: "\n".join(r["patterns"] + [f"count={r['count']} cycles={r['state_graph_cycles']}"]))


@jp.command("poset")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.pass_context
def jp_poset(ctx, n, k):
    poset = juggling.juggling_poset(n, k)
    covers = sorted((str(a), str(b)) for a, b in poset.covers)
    report = {
        "n": n,
        "k": k,
        "elements": {str(f): poset.rank[f] for f in poset.elements},
        "covers": [list(c) for c in covers],
    }
    _emit(ctx, report, lambda r: "\n".join(f"{a} < {b}" for a, b in r["covers"]))


@jp.command("positroid")
@click.argument("siteswap")
@click.pass_context
def jp_positroid(ctx, siteswap):
    f = _pattern(siteswap)
    data = juggling.positroid_data(f)
    report = json.loads(data.to_json())
    report["implied"] = [c.label(f.n) for c in data.implied]

    def text(r):
        lines = [f"essential {c.label(f.n)}" for c in data.essential]
        lines += [f"implied {c}" for c in r["implied"]]
        return "\n".join(lines) or "no conditions"

    _emit(ctx, report, text)


# -- classical pipe dreams -------------------------------------------------


@cli.group()
def pd() -> None:
    """Pipe dreams on the staircase."""


@pd.command("enum")
@click.argument("perm")
@click.pass_context
def pd_enum(ctx, perm):
    w = Permutation.parse(perm)
    dreams = sorted(pipedream.moves_and_enumerate(w), key=lambda p: sorted(p.crosses))
    brute = pipedream.brute_force_pipe_dreams(w)
    report = {
        "permutation": str(w),
        "count": len(dreams),
        "pipe_dreams": [sorted(list(c) for c in p.crosses) for p in dreams],
        "passed": set(dreams) == brute,
    }
    _emit(ctx, report, lambda r: "\n\n".join(p.ascii() for p in dreams) + f"\n\ncount={r['count']}")


@pd.command("dual")
@click.argument("perm")
@click.pass_context
def pd_dual(ctx, perm):
    w = Permutation.parse(perm)
    dreams = pipedream.moves_and_enumerate(w)
    dual = pipedream.transversal_dual(p.crosses for p in dreams)
    antidiagonals = pipedream.antidiagonal_set(w)
    expected = frozenset(frozenset(a.cells) for a in antidiagonals)
    report = {
        "permutation": str(w),
        "antidiagonals": sorted(sorted(list(c) for c in a) for a in expected),
        "dual_of_pipe_dreams": sorted(sorted(list(c) for c in s) for s in dual),
        "passed": dual == expected,
    }
    _emit(ctx, report, lambda r: "\n".join(str(a) for a in r["antidiagonals"]))


# -- strip -----------------------------------------------------------------


@cli.group("strip")
def strip_group() -> None:
    """The strip of a lambda patch."""


@strip_group.command("qword")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--lambda", "lam", required=True)
@click.pass_context
def strip_qword(ctx, n, k, lam):
    layout = _lambda_layout(n, k, lam)
    pi = strip.pi_lambda(layout) if 0 < k < n else AffinePermutation(n, tuple(i + n if i in layout.lam else i for i in range(1, n + 1)))
    report = {
        "n": n,
        "k": k,
        "lambda": list(layout.lam),
        "qword": strip.q_word_text(layout),
        "letters": list(strip.q_word(layout).letters),
        "pi": list(pi.window),
        "block": layout.ascii(),
    }
    _emit(ctx, report, lambda r: r["qword"])


@strip_group.command("apd")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--lambda", "lam", required=True)
@click.option("--f", "pattern", required=True)
@click.pass_context
def strip_apd(ctx, n, k, lam, pattern):
    layout = _lambda_layout(n, k, lam)
    f = _pattern(pattern)
    found = sorted(strip.apd_enumerate(layout, f), key=lambda a: sorted(a.crosses))
    top, bottom = strip.apd_top(layout, f), strip.apd_bottom(layout, f)
    cells = lambda a: sorted(layout.variable(c) for c in a.crosses) if a else None
    report = {
        "n": n,
        "k": k,
        "lambda": list(layout.lam),
        "f": str(f),
        "count": len(found),
        "pipe_dreams": [cells(a) for a in found],
        "top": cells(top),
        "bottom": cells(bottom),
        "passed": all(a is None or a in found for a in (top, bottom)),
    }
    _emit(ctx, report, lambda r: "\n\n".join(a.ascii() for a in found) + f"\n\ncount={r['count']}")


# -- complexes -------------------------------------------------------------


@cli.group("complex")
def complex_group() -> None:
    """Subword complexes and Stanley-Reisner ideals."""


def _word_and_target(word: str, perm: str, n: Optional[int]):
    letters = tuple(int(ch) for ch in word.replace(",", ""))
    w = Permutation.parse(perm)
    return Word(letters, n or w.n), w


def _load_facets(text: str) -> cx.SimplicialComplex:
    facets = json.loads(text)
    return cx.SimplicialComplex.from_facets(tuple(f) for f in facets)


@complex_group.command("subword")
@click.option("--word", required=True, help="Letters, e.g. 4321432434.")
@click.option("--perm", required=True, help="Target permutation in one-line notation.")
@click.option("--n", type=int, default=None)
@click.pass_context
def complex_subword(ctx, word, perm, n):
    q, w = _word_and_target(word, perm, n)
    c = cx.subword_complex(q, w)
    report = {"word": list(q.letters), "target": str(w), "facets": sorted(sorted(f) for f in c.facets)}
    if not c.is_void:
        report["topology"] = cx.topology_checks(c)
    _emit(ctx, report, lambda r: "\n".join(" ".join(map(str, f)) for f in r["facets"]) or "void")


@complex_group.command("check")
@click.option("--facets", required=True, help="JSON list of facets.")
@click.pass_context
def complex_check(ctx, facets):
    c = _load_facets(facets)
    report = cx.topology_checks(c)
    _emit(ctx, report, lambda r: "\n".join(f"{k}: {v}" for k, v in r.items() if k != "shellable_order"))


@complex_group.command("sr")
@click.option("--facets", default=None, help="JSON list of facets.")
@click.option("--word", default=None)
@click.option("--perm", default=None)
@click.pass_context
def complex_sr(ctx, facets, word, perm):
    if facets:
        c = _load_facets(facets)
    elif word and perm:
        c = cx.subword_complex(*_word_and_target(word, perm, None))
    else:
        raise click.UsageError("give --facets, or --word with --perm")
    ideal = cx.stanley_reisner(c)
    gens = sorted(sorted(str(v) for v in g) for g in ideal.generators)
    _emit(ctx, {"generators": gens}, lambda r: "\n".join("*".join(g) for g in r["generators"]) or "0")


# -- algebra ---------------------------------------------------------------


@cli.group()
def alg() -> None:
    """Term orders, Groebner bases and Bott-Samelson matrices."""


def _order(kind: str, variables, layout=None) -> algebra.TermOrder:
    if kind == "strip":
        if layout is None:
            raise click.UsageError("the strip order needs --n, --k and --lambda")
        return algebra.TermOrder.strip_revlex(layout)
    ranked = sorted(variables, key=algebra._natural_key)
    return algebra.TermOrder.graded_lex(ranked) if kind == "grlex" else algebra.TermOrder.graded_revlex(ranked)


@alg.command("init")
@click.argument("polys", nargs=-1, required=True)
@click.option("--order", "kind", type=click.Choice(["grlex", "grevlex", "strip"]), default="grevlex")
@click.option("--n", type=int, default=None)
@click.option("--k", type=int, default=None)
@click.option("--lambda", "lam", default=None)
@click.pass_context
def alg_init(ctx, polys, kind, n, k, lam):
    ps = [algebra.Polynomial.parse(p) for p in polys]
    layout = _lambda_layout(n, k, lam) if lam is not None and n and k is not None else None
    order = _order(kind, set().union(*(p.variables for p in ps)), layout)
    inits = [algebra.monomial_text(algebra.init_term(p, order)) for p in ps]
    _emit(ctx, {"order": kind, "initial_terms": inits}, lambda r: "\n".join(r["initial_terms"]))


@alg.command("groebner")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--lambda", "lam", required=True)
@click.option("--f", "pattern", required=True)
@click.pass_context
def alg_groebner(ctx, n, k, lam, pattern):
    layout = _lambda_layout(n, k, lam)
    f = _pattern(pattern)
    gens = algebra.patch_ideal(layout, f)
    order = algebra.TermOrder.strip_revlex(layout)
    basis = algebra.buchberger(gens, order) if gens else []
    report = {
        "generators": [str(g) for g in gens],
        "basis": [str(g) for g in basis],
        "initial_ideal": sorted(algebra.monomial_text(m) for m in algebra.init_ideal_gens(basis, order)),
        "raw_minors_groebner": algebra.is_groebner(gens, order) if gens else True,
    }
    _emit(ctx, report, lambda r: "\n".join(r["basis"]) + "\ninit: " + ", ".join(r["initial_ideal"]))


@alg.command("bottsamelson")
@click.argument("word")
@click.option("--n", type=int, default=None)
@click.option("--labels", type=click.Choice(["heap", "word"]), default="heap", show_default=True)
@click.pass_context
def alg_bottsamelson(ctx, word, n, labels):
    letters = tuple(int(ch) for ch in word.replace(",", ""))
    n = n or max(letters) + 1
    q = Word(letters, n)
    mat = algebra.bott_samelson(q, n, labels)
    minors = [m for m in algebra.northwest_minors(mat, range(1, n)) if not m.is_constant()]
    names = algebra.crossing_names(q, labels)
    order = algebra.TermOrder.graded_lex(sorted(set(names), key=algebra._natural_key))
    inits = [algebra.init_term(m, order) for m in minors]
    report = {
        "matrix": [[str(x) for x in row] for row in mat],
        "northwest_minors": [str(m) for m in minors],
        "initial_terms": [algebra.monomial_text(m) for m in inits],
    }
    _emit(ctx, report, lambda r: "\n".join(f"{m}  ->  {i}" for m, i in zip(r["northwest_minors"], r["initial_terms"])))


# -- affine flags ----------------------------------------------------------


@cli.group()
def flag() -> None:
    """Lattices of the lambda patch."""


@flag.command("build")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--lambda", "lam", required=True)
@click.pass_context
def flag_build(ctx, n, k, lam):
    layout = _lambda_layout(n, k, lam)
    fl = afflag.constructed_flag(layout)
    report = {"lattices": {f"L{i}": str(fl[i]) for i in range(1, n + 1)}}
    _emit(ctx, report, lambda r: "\n".join(f"{name} = {text}" for name, text in r["lattices"].items()))


@flag.command("check")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--lambda", "lam", required=True)
@click.option("--f", "pattern", default=None)
@click.option("--samples", type=int, default=20, show_default=True)
@click.pass_context
def flag_check(ctx, n, k, lam, pattern, samples):
    layout = _lambda_layout(n, k, lam)
    ok, violation = afflag.flag_validate(afflag.constructed_flag(layout), seed=ctx.obj.seed)
    report: dict[str, Any] = {"flag_valid": ok, "violation": str(violation) if violation else None}
    passed = ok
    if pattern:
        agree = afflag.rank_correspondence(layout, _pattern(pattern), samples=samples, seed=ctx.obj.seed)
        report["rank_correspondence"] = agree
        passed = passed and agree
    report["passed"] = passed
    _emit(ctx, report, _key_lines)


# -- verification ----------------------------------------------------------


@cli.group()
def verify() -> None:
    """Verification suites."""


def _instance(args) -> dict:
    n, k, lam, pattern = args
    layout = strip.strip_layout(lam, k, n)
    f = juggling.JugglingFunction(pattern)
    result = algebra.main_theorem_check(layout, f)
    out = {"lambda": list(lam), "f": str(f), "empty": result["empty"], "passed": result["passed"]}
    if not result["empty"]:
        topo = cx.topology_checks(result["complex"])
        regular = topo["pure"] and topo["thin"] and topo["vertex_decomposable"] and topo["ball_or_sphere"] != "neither"
        out.update(
            initial_ideal=result["initial_ideal"],
            raw_minors_groebner=result["raw_minors_groebner"],
            init_equals_sr=result["init_equals_sr"],
            complex=topo["ball_or_sphere"],
            passed=result["passed"] and regular,
        )
    return out


@verify.command("main-theorem")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--lambda", "lam", default=None)
@click.option("--f", "pattern", default=None)
@click.pass_context
def verify_main(ctx, n, k, lam, pattern):
    lams = [_ints(lam)] if lam else list(combinations(range(1, n + 1), k))
    fs = [_pattern(pattern)] if pattern else juggling.enumerate_bounded(n, k)
    for f in fs:
        if f.n != n or f.k != k:
            raise click.UsageError(f"pattern {f} is not a period-{n} pattern with {k} balls")
    jobs = sorted((n, k, tuple(l), f.throws) for l in lams for f in fs)
    workers = int(os.environ.get(WORKERS_ENV, "1") or 1)
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_instance, jobs))
    else:
        results = [_instance(j) for j in jobs]
    report = {
        "n": n,
        "k": k,
        "instances": len(results),
        "nonempty": sum(not r["empty"] for r in results),
        "failures": [r for r in results if not r["passed"]],
        "results": results,
        "passed": all(r["passed"] for r in results),
    }

    def text(r):
        return f"{r['instances']} instances, {r['nonempty']} nonempty patches, {len(r['failures'])} failures"

    _emit(ctx, report, text)


# -- diagrams --------------------------------------------------------------


@cli.group("diagrams")
def diagrams_group() -> None:
    """Le- and Cauchon diagrams."""


@diagrams_group.command("convert")
@click.option("--cauchon", default=None, help="Rows separated by '/', '#' black and '.' white.")
@click.option("--le", default=None, help='JSON {"shape": [...], "filling": [[...], ...]}.')
@click.option("--k", type=int, default=None, help="Rows of the ambient box for a Le-diagram.")
@click.option("--n", type=int, default=None)
@click.pass_context
def diagrams_convert(ctx, cauchon, le, k, n):
    if bool(cauchon) == bool(le):
        raise click.UsageError("give exactly one of --cauchon and --le")
    report: dict[str, Any] = {}
    if le:
        d = diagrams.LeDiagram.from_json(le)
        ok, witness = d.validate()
        report["le"] = json.loads(d.to_json())
        report["valid"] = ok
        report["witness"] = witness
        k = k or len(d.shape)
        n = n or k + (d.shape[0] if d.shape else 0)
        if ok:
            report["u"] = str(diagrams.u_of_le(d, k, n))
            report["w_lambda"] = str(diagrams.w_lambda(d.shape, k, n))
        if ok and len(set(d.shape)) == 1:
            c = diagrams.le_cauchon(d)
            report["cauchon"] = c.ascii().split("\n")
    else:
        c = diagrams.CauchonDiagram.parse(cauchon.replace("/", "\n"))
        ok, witness = c.validate()
        report["cauchon"] = c.ascii().split("\n")
        report["valid"] = ok
        report["witness"] = witness
        if ok:
            report["le"] = json.loads(diagrams.cauchon_le(c).to_json())
            apd = diagrams.cauchon_to_bottom_apd(c)
            report["pipe_dream"] = apd.ascii()
            report["permutation"] = str(diagrams.cauchon_permutation(c))
    report["passed"] = ok
    _emit(ctx, report, _key_lines)


@diagrams_group.command("count")
@click.option("--m", type=int, required=True)
@click.option("--p", type=int, required=True)
@click.pass_context
def diagrams_count(ctx, m, p):
    cauchon = diagrams.all_cauchon_diagrams(m, p)
    restricted = diagrams.restricted_permutations(m, p)
    traced = {diagrams.cauchon_permutation(c) for c in cauchon}
    report = {
        "m": m,
        "p": p,
        "cauchon": len(cauchon),
        "restricted_permutations": len(restricted),
        "passed": len(cauchon) == len(restricted) and traced == set(restricted),
    }
    _emit(ctx, report, lambda r: f"cauchon={r['cauchon']} restricted={r['restricted_permutations']}")


# -- entry point -----------------------------------------------------------


def run(argv: Optional[list[str]] = None) -> int:
    """Run the command line and return its exit status."""
    try:
        cli.main(args=argv, prog_name="jugglepipe", standalone_mode=False)
    except Failed:
        return 1
    except click.exceptions.Exit as ex:
        return ex.exit_code
    except click.ClickException as ex:
        ex.show()
        return 2
    except click.exceptions.Abort:
        return 2
    except (JugglePipeError, ValueError) as ex:
        click.echo(f"error: {ex}", err=True)
        return 2
    return 0


def main() -> None:
    sys.exit(run())
