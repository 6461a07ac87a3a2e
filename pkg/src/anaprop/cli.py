"""Command-line front end.

Subcommands: decide, solve, enumerate, lgg, solve-tree, check-tree,
antiunify, check-rule.  Algebras are selected by preset name (zplus, qmul,
nmul, word:<alphabet>, term:<sigfile>) or by a finite-algebra JSON file.
Output is plain text by default; ``--format json`` emits one JSON record per
line.  Exit status is 0 for every successfully executed query regardless of
the verdict, and 2 for input errors.
"""
from __future__ import annotations

import json
import os
import sys
from typing import Optional

import click

from . import antiunify
from .algebras import (
    Algebra,
    AlgebraFormatError,
    FiniteAlgebra,
    IntAddition,
    NaturalMultiplication,
    RationalMultiplication,
    TermAlgebra,
    UnsupportedQuery,
    WordConcatenation,
    load_finite_algebra,
    parse_word_pattern,
)
from .closedform import (
    decide_mono_add,
    decide_mono_mul,
    decide_mono_word,
    mono_add_rule,
    solve_mono_add,
    solve_mono_mul,
    solve_mono_word,
)
from .decider import (
    FragmentDecider,
    StateCapExceeded,
    Verdict,
    natural_solve,
    verify_characteristic,
)
from .oracle import OracleBudgetExceeded, OracleUniverse
from .terms import (
    RewriteRule,
    Signature,
    TermSyntaxError,
    canonical_term,
    parse_rule,
    parse_term,
    render,
    signature_of,
)
from .trees import check_tree_proportion, lgg, solve_tree_equation

INPUT_ERRORS = (
    ValueError,
    KeyError,
    AlgebraFormatError,
    TermSyntaxError,
    UnsupportedQuery,
    StateCapExceeded,
    OracleBudgetExceeded,
    OSError,
)


class Output:
    def __init__(self, fmt: str):
        self.fmt = fmt

    def emit(self, record: dict, text: str) -> None:
        if self.fmt == "json":
            click.echo(json.dumps(record, sort_keys=True))
        else:
            click.echo(text)


def load_algebra(spec: str, allow_empty: bool = False) -> Algebra:
    """Resolve a preset name or a finite-algebra file path."""
    if spec == "zplus":
        return IntAddition()
    if spec == "qmul":
        return RationalMultiplication()
    if spec == "nmul":
        return NaturalMultiplication()
    if spec.startswith("word:"):
        return WordConcatenation(spec[len("word:"):], allow_empty=allow_empty)
    if spec.startswith("term:"):
        with open(spec[len("term:"):], "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        return TermAlgebra(Signature(dict(doc["symbols"])))
    path = spec[len("file:"):] if spec.startswith("file:") else spec
    if os.path.exists(path):
        return load_finite_algebra(path)
    raise ValueError(
        f"unknown algebra {spec!r}: expected a preset "
        f"(zplus, qmul, nmul, word:<alphabet>, term:<sigfile>) or an algebra file"
    )


def _parse_ell(value: Optional[str]) -> Optional[int]:
    if value is None or value == "inf":
        return None
    try:
        n = int(value)
    except ValueError:
        raise ValueError(f"--l expects an integer or 'inf', got {value!r}") from None
    if n < 1:
        raise ValueError("--l must be at least 1")
    return n


def _require_monolinear(k: int, ell: Optional[int], what: str) -> None:
    if k != 1 or ell != 1:
        raise ValueError(
            f"{what} over this algebra is implemented for the monolinear "
            f"fragment only; pass --k 1 --l 1"
        )


def _verdict_record(command: str, verdict: Verdict, extra: Optional[dict] = None) -> dict:
    record = {
        "command": command,
        "holds": verdict.holds,
        "reason": verdict.reason,
        "witness": str(verdict.witness) if verdict.witness else None,
        "counter": verdict.counter,
        "arrow": verdict.arrow,
    }
    if extra:
        record.update(extra)
    return record


def _verdict_text(verdict: Verdict) -> str:
    if verdict.holds:
        head = "holds"
        detail = verdict.reason
        if verdict.witness is not None:
            detail += f"; witness: {verdict.witness}"
    else:
        head = "does not hold"
        detail = verdict.reason
        if verdict.counter is not None:
            detail += f": fourth element {verdict.counter} has a strictly larger justification set"
        if verdict.arrow is not None:
            detail += f" (arrow {verdict.arrow})"
    return f"{head} ({detail})"


algebra_option = click.option("--algebra", "algebra_spec", required=True,
                              help="preset name or finite-algebra file")
algebra2_option = click.option("--algebra2", "algebra2_spec", default=None,
                               help="second algebra of the pair (defaults to the first)")
k_option = click.option("--k", default=1, show_default=True,
                        help="number of distinct variables in justifications")
l_option = click.option("--l", "ell", default=None,
                        help="occurrence bound per variable (integer or 'inf')")
engine_option = click.option("--engine", default="auto", show_default=True,
                             type=click.Choice(["auto", "closed-form", "automata", "oracle"]))
depth_option = click.option("--depth", default=None, type=int,
                            help="term depth for the oracle engine (default: exactness bound)")
cap_option = click.option("--cap", default=10 ** 6, show_default=True,
                          help="behavior-state cap for the automata engine")
tokens_option = click.option("--tokens", is_flag=True,
                             help="read words as space-separated multi-character symbols")
allow_empty_option = click.option("--allow-empty", is_flag=True,
                                  help="admit the empty word in word algebras")


@click.group()
@click.option("--format", "fmt", default="text", show_default=True,
              type=click.Choice(["text", "json"]))
@click.pass_context
def main(ctx: click.Context, fmt: str) -> None:
    """Analogical proportions: decide, solve and enumerate a : b :: c : d."""
    ctx.obj = Output(fmt)


def _finite_engines(first: FiniteAlgebra, second: Optional[FiniteAlgebra],
                    k: int, ell: Optional[int], engine: str, depth: Optional[int],
                    cap: int):
    decider = FragmentDecider(first, second, k=k, ell=ell, cap=cap)
    if engine == "oracle":
        depth = depth if depth is not None else decider.state_count
        return OracleUniverse(first, second, k=k, ell=ell, depth=depth)
    return decider


def _load_pair(spec1: str, spec2: Optional[str], allow_empty: bool):
    first = load_algebra(spec1, allow_empty)
    second = load_algebra(spec2, allow_empty) if spec2 else None
    if second is not None and not (first.is_finite and second.is_finite):
        raise ValueError("--algebra2 is supported for finite algebras only")
    return first, second


@main.command()
@click.argument("a")
@click.argument("b")
@click.argument("c")
@click.argument("d")
@algebra_option
@algebra2_option
@k_option
@l_option
@engine_option
@depth_option
@cap_option
@tokens_option
@allow_empty_option
@click.pass_obj
def decide(out: Output, a: str, b: str, c: str, d: str, algebra_spec: str,
           algebra2_spec: Optional[str], k: int, ell: Optional[str], engine: str,
           depth: Optional[int], cap: int, tokens: bool, allow_empty: bool) -> None:
    """Decide whether A : B :: C : D holds."""
    first, second = _load_pair(algebra_spec, algebra2_spec, allow_empty)
    bound = _parse_ell(ell)
    if isinstance(first, FiniteAlgebra):
        if engine == "closed-form":
            raise ValueError("the closed-form engine applies to builtin number/word algebras")
        eng = _finite_engines(first, second, k, bound, engine, depth, cap)
        elems = [first.parse_element(a), first.parse_element(b)]
        target = second if second is not None else first
        elems += [target.parse_element(c), target.parse_element(d)]
        verdict = (
            eng.decide(*elems) if isinstance(eng, OracleUniverse)
            else eng.decide_proportion(*elems)
        )
        out.emit(_verdict_record("decide", verdict), _verdict_text(verdict))
        return
    if engine in ("automata", "oracle"):
        raise ValueError(f"engine {engine!r} requires a finite algebra")
    if bound is None:
        bound = 1
    _require_monolinear(k, bound, "deciding")
    if isinstance(first, IntAddition):
        va, vb, vc, vd = (first.parse_element(x) for x in (a, b, c, d))
        holds = decide_mono_add(va, vb, vc, vd)
        rel = f"{va}-{vb} {'=' if holds else '!='} {vc}-{vd}"
        out.emit(
            {"command": "decide", "holds": holds, "relation": "difference", "detail": rel},
            f"{'holds' if holds else 'does not hold'} (difference proportion: {rel})",
        )
    elif isinstance(first, (RationalMultiplication, NaturalMultiplication)):
        domain = "n2" if isinstance(first, NaturalMultiplication) else "q"
        va, vb, vc, vd = (first.parse_element(x) for x in (a, b, c, d))
        holds = decide_mono_mul(va, vb, vc, vd, domain=domain)
        rel = f"{va}:{vb} vs {vc}:{vd}"
        out.emit(
            {"command": "decide", "holds": holds, "relation": "geometric", "detail": rel},
            f"{'holds' if holds else 'does not hold'} (geometric proportion: {rel})",
        )
    elif isinstance(first, WordConcatenation):
        words = [_read_word(first, x, tokens) for x in (a, b, c, d)]
        split = decide_mono_word(*words)
        if split is None:
            out.emit(
                {"command": "decide", "holds": False, "relation": "word", "witness": None},
                "does not hold (no aligned factorization)",
            )
        else:
            shown = "|".join([split.a1, split.a2, split.a3]) + " ~ " + "|".join(
                [split.b1, split.b2, split.b3]
            )
            out.emit(
                {"command": "decide", "holds": True, "relation": "word",
                 "witness": [split.a1, split.a2, split.a3, split.b1, split.b2, split.b3]},
                f"holds (factorization {shown})",
            )
    else:
        raise ValueError("deciding over the term algebra: use check-tree instead")


def _read_word(algebra: WordConcatenation, text: str, tokens: bool) -> str:
    if tokens:
        text = text.replace(" ", "")
    return algebra.parse_element(text if text else "%e")


@main.command()
@click.argument("a")
@click.argument("b")
@click.argument("c")
@algebra_option
@algebra2_option
@k_option
@l_option
@engine_option
@depth_option
@cap_option
@tokens_option
@allow_empty_option
@click.pass_obj
def solve(out: Output, a: str, b: str, c: str, algebra_spec: str,
          algebra2_spec: Optional[str], k: int, ell: Optional[str], engine: str,
          depth: Optional[int], cap: int, tokens: bool, allow_empty: bool) -> None:
    """Solve A : B :: C : x, printing every solution."""
    first, second = _load_pair(algebra_spec, algebra2_spec, allow_empty)
    bound = _parse_ell(ell)
    if isinstance(first, FiniteAlgebra):
        eng = _finite_engines(first, second, k, bound, engine, depth, cap)
        target = second if second is not None else first
        elems = [first.parse_element(a), first.parse_element(b), target.parse_element(c)]
        solutions = eng.solve(*elems)
        out.emit(
            {"command": "solve", "solutions": list(solutions)},
            "{" + ", ".join(solutions) + "}",
        )
        return
    if engine in ("automata", "oracle"):
        raise ValueError(f"engine {engine!r} requires a finite algebra")
    if isinstance(first, NaturalMultiplication) and bound is None and engine == "auto":
        va, vb, vc = (first.parse_element(x) for x in (a, b, c))
        found = natural_solve(va, vb, vc)
        lines = ["{" + ", ".join(str(d) for d in sorted(found)) + "}"]
        for d in sorted(found):
            for rule in sorted(str(r) for r in found[d]):
                lines.append(f"witness for {d}: {rule}")
        out.emit(
            {
                "command": "solve",
                "solutions": sorted(found),
                "witnesses": {str(d): sorted(str(r) for r in found[d]) for d in found},
            },
            "\n".join(lines),
        )
        return
    if bound is None:
        bound = 1
    _require_monolinear(k, bound, "solving")
    if isinstance(first, IntAddition):
        va, vb, vc = (first.parse_element(x) for x in (a, b, c))
        d = solve_mono_add(va, vb, vc)
        rule = mono_add_rule(va, vb)
        out.emit(
            {"command": "solve", "solutions": [d], "witnesses": {str(d): [str(rule)]}},
            f"{{{d}}}\nwitness for {d}: {rule}",
        )
    elif isinstance(first, (RationalMultiplication, NaturalMultiplication)):
        domain = "n2" if isinstance(first, NaturalMultiplication) else "q"
        va, vb, vc = (first.parse_element(x) for x in (a, b, c))
        ds = solve_mono_mul(va, vb, vc, domain=domain)
        rendered = sorted(str(d) for d in ds)
        out.emit(
            {"command": "solve", "solutions": rendered},
            "{" + ", ".join(rendered) + "}",
        )
    elif isinstance(first, WordConcatenation):
        words = [_read_word(first, x, tokens) for x in (a, b, c)]
        ds = solve_mono_word(*words)
        shown = [d if d else "%e" for d in ds]
        out.emit(
            {"command": "solve", "solutions": shown},
            "{" + ", ".join(shown) + "}",
        )
    else:
        raise ValueError("solving over the term algebra: use solve-tree instead")


@main.command(name="enumerate")
@algebra_option
@algebra2_option
@k_option
@l_option
@engine_option
@cap_option
@click.pass_obj
def enumerate_command(out: Output, algebra_spec: str, algebra2_spec: Optional[str],
                      k: int, ell: Optional[str], engine: str, cap: int) -> None:
    """List every holding quadruple of a finite algebra pair."""
    first, second = _load_pair(algebra_spec, algebra2_spec, False)
    if not isinstance(first, FiniteAlgebra):
        raise ValueError("enumeration requires a finite algebra")
    decider = FragmentDecider(first, second, k=k, ell=_parse_ell(ell), cap=cap)
    quads = decider.enumerate_all()
    out.emit(
        {"command": "enumerate", "quadruples": [list(q) for q in quads]},
        "\n".join(f"{a} : {b} :: {c} : {d}" for a, b, c, d in quads) or "(none)",
    )


@main.command(name="lgg")
@click.argument("first")
@click.argument("second")
@click.pass_obj
def lgg_command(out: Output, first: str, second: str) -> None:
    """Least general generalization of two terms (prefix syntax)."""
    t1, t2 = parse_term(first), parse_term(second)
    signature_of([t1, t2])  # arity consistency check
    result = canonical_term(lgg(t1, t2))
    out.emit({"command": "lgg", "term": render(result)}, render(result))


@main.command(name="solve-tree")
@click.argument("p")
@click.argument("q")
@click.argument("r")
@click.pass_obj
def solve_tree_command(out: Output, p: str, q: str, r: str) -> None:
    """Exact solutions of the tree arrow equation P -> Q :: R -> x."""
    tp, tq, tr = parse_term(p), parse_term(q), parse_term(r)
    signature_of([tp, tq, tr])
    solutions = sorted(render(u) for u in solve_tree_equation(tp, tq, tr))
    out.emit(
        {"command": "solve-tree", "solutions": solutions},
        "\n".join(solutions) or "(none)",
    )


@main.command(name="check-tree")
@click.argument("p")
@click.argument("q")
@click.argument("r")
@click.argument("u")
@click.pass_obj
def check_tree_command(out: Output, p: str, q: str, r: str, u: str) -> None:
    """Sufficient check of the tree proportion P : Q :: R : U."""
    terms = [parse_term(x) for x in (p, q, r, u)]
    signature_of(terms)
    established = check_tree_proportion(*terms)
    out.emit(
        {"command": "check-tree", "established": established},
        "established" if established else "not established (the sufficient check is inconclusive)",
    )


@main.command(name="antiunify")
@click.argument("a")
@click.argument("b")
@algebra_option
@k_option
@click.option("--depth", default=2, show_default=True, help="term depth for finite algebras")
@click.pass_obj
def antiunify_command(out: Output, a: str, b: str, algebra_spec: str, k: int,
                      depth: int) -> None:
    """Common generalizations and their minima for two elements."""
    algebra = load_algebra(algebra_spec)
    if isinstance(algebra, NaturalMultiplication):
        va, vb = algebra.parse_element(a), algebra.parse_element(b)
        shared = sorted(str(m) for m in antiunify.common_gens(va, vb))
        minima = sorted(str(m) for m in antiunify.mgg(va, vb))
        out.emit(
            {"command": "antiunify", "common": shared, "mgg": minima},
            f"common: {{{', '.join(shared)}}}\nmgg: {{{', '.join(minima)}}}",
        )
    elif isinstance(algebra, FiniteAlgebra):
        va, vb = algebra.parse_element(a), algebra.parse_element(b)
        shared = sorted(
            render(t)
            for t in antiunify.bounded_gens(va, algebra, k, depth)
            & antiunify.bounded_gens(vb, algebra, k, depth)
        )
        out.emit(
            {"command": "antiunify", "common": shared},
            f"common: {{{', '.join(shared)}}}",
        )
    else:
        raise ValueError("antiunify supports the nmul preset and finite algebras")


@main.command(name="check-rule")
@click.argument("rule")
@click.argument("a")
@click.argument("b")
@click.argument("c")
@click.argument("d")
@algebra_option
@algebra2_option
@click.option("--full", is_flag=True,
              help="require all four uniqueness conditions (pins the full proportion)")
@tokens_option
@allow_empty_option
@click.pass_obj
def check_rule_command(out: Output, rule: str, a: str, b: str, c: str, d: str,
                       algebra_spec: str, algebra2_spec: Optional[str], full: bool,
                       tokens: bool, allow_empty: bool) -> None:
    """Verify a rewrite rule as a characteristic justification of A->B :: C->D."""
    first, second = _load_pair(algebra_spec, algebra2_spec, allow_empty)
    target = second if second is not None else first
    if isinstance(first, WordConcatenation):
        lhs_text, rhs_text = rule.split("->")
        parsed = RewriteRule(
            parse_word_pattern(first, lhs_text.strip(), tokens),
            parse_word_pattern(first, rhs_text.strip(), tokens),
        )
        elems = [_read_word(first, x, tokens) for x in (a, b, c, d)]
    else:
        parsed = parse_rule(rule)
        elems = [
            first.parse_element(a), first.parse_element(b),
            target.parse_element(c), target.parse_element(d),
        ]
    ok = verify_characteristic(parsed, *elems, first, target, full=full)
    out.emit(
        {"command": "check-rule", "characteristic": ok, "rule": str(parsed)},
        f"{'characteristic justification' if ok else 'not verified as characteristic'}: {parsed}",
    )


def run(argv: Optional[list[str]] = None) -> int:
    """Programmatic entry point returning the exit status."""
    try:
        main.main(args=argv, standalone_mode=False)
        return 0
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return 2
    except INPUT_ERRORS as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return 2


def entry() -> None:
    sys.exit(run())


if __name__ == "__main__":
    entry()
