"""Command-line front end.

Every invocation prints one JSON document on stdout.  Exit status: 0 for
a verified positive answer, 1 for a definitive negative one, 2 for bad
input or unmet preconditions, 3 when the answer is indeterminate.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import cartan, coxeter, forge, integral, represent
from . import serialize as S
from .corpus import corpus
from .errors import (
    CycleBudgetExceeded,
    CyclicProductObstruction,
    InvalidInput,
    NoConvergence,
    NotAReflection,
    PreconditionViolated,
    RelationViolation,
    SearchExhausted,
    UnsupportedPairing,
    VinbergError,
)

OK, NEGATIVE, INPUT_ERROR, INDETERMINATE = 0, 1, 2, 3


class UsageError(Exception):
    pass


# -- argument loading -----------------------------------------------------------

def _need(args, name: str):
    value = getattr(args, name, None)
    if value is None:
        raise UsageError(f"--{name} is required for {args.verb}")
    return value


def _coxeter(args, required=True):
    if args.coxeter is None and not required:
        return None
    return S.coxeter_from_json(S.load(_need(args, "coxeter")))


def _cartan(args):
    return cartan.validate(S.cartan_from_json(S.load(_need(args, "cartan"))))


def _rep(args):
    """--rep, or the representation built from --cartan and --coxeter."""
    if args.rep is not None:
        return S.rep_from_json(S.load(args.rep), _coxeter(args, required=False))
    return represent.rep_from_cartan(_cartan(args), _coxeter(args))


def _irreducible_rep(args):
    rep = _rep(args)
    return rep if represent.is_irreducible(rep) else represent.reduce_irreducible(rep)


def _pairs(text: str | None):
    if text is None:
        return None
    doc = S.load(text)
    try:
        return [(int(i) - 1, int(j) - 1) for i, j in doc]
    except (TypeError, ValueError):
        raise InvalidInput("--matching must be a list of index pairs, e.g. [[1,2]]") from None


# -- verbs -------------------------------------------------------------------------

def cmd_validate(args):
    out = {}
    if args.coxeter is not None:
        out["coxeter"] = S.coxeter_to_json(_coxeter(args))
    if args.cartan is not None:
        out["cartan"] = S.cartan_to_json(_cartan(args))
    if args.rep is not None:
        out["rep"] = S.rep_to_json(_rep(args))
    if not out:
        raise UsageError("validate needs --coxeter, --cartan or --rep")
    out["valid"] = True
    return out, OK


def cmd_classify(args):
    M = _coxeter(args)
    gc = coxeter.classify(M)
    out = {
        "kind": gc.kind.value,
        "irreducible": gc.is_irreducible,
        "components": [{"indices": S.word(c.indices), "kind": c.kind.value, "name": c.name}
                       for c in gc.components],
        "right_angled": M.is_right_angled(),
    }
    if coxeter.is_large_irreducible(M):
        out["quasi_lanner_subset"] = S.word(coxeter.find_quasi_lanner_subset(M))
    return out, OK


def cmd_compatible(args):
    A = _cartan(args)
    M = _coxeter(args, required=False)
    if M is None:
        return {"compatible": True, "coxeter": S.coxeter_to_json(cartan.labels_from_pairings(A))}, OK
    report = cartan.is_compatible(A, M)
    bad = [{"pair": [p.i + 1, p.j + 1], "label": S.label(p.label), "product": S.rat(p.product)}
           for p in report.failures()]
    return {"compatible": report.compatible, "failures": bad}, OK if report else NEGATIVE


def cmd_symmetrizable(args):
    sym = cartan.is_symmetrizable(_cartan(args))
    if sym:
        return {"symmetrizable": True, "weights": [S.rat(x) for x in sym.weights]}, OK
    return {"symmetrizable": False, "witness_cycle": S.cycle(sym.witness_cycle),
            "forward": S.rat(sym.forward), "reverse": S.rat(sym.reverse)}, NEGATIVE


def cmd_type(args):
    A = _cartan(args)
    return {"type": cartan.cartan_type(A).value, "rank": cartan.rank(A)}, OK


def cmd_cycles(args):
    report = cartan.cyclic_products(_cartan(args), budget=args.cycle_budget)
    out = {
        "all_integer": report.all_integer,
        "cycles": [{"cycle": S.cycle(c.cycle), "forward": S.rat(c.forward), "reverse": S.rat(c.reverse)}
                   for c in report.cycles],
    }
    if report.witness is not None:
        c, value = report.witness
        out["witness"] = {"cycle": S.cycle(c), "product": S.rat(value)}
    return out, OK if report.all_integer else NEGATIVE


def cmd_build_rep(args):
    rep = represent.rep_from_cartan(_cartan(args), _coxeter(args))
    return S.rep_to_json(rep), OK


def cmd_reduce(args):
    rep = _rep(args)
    sub = represent.invariant_subspaces(rep)
    red = represent.reduce_irreducible(rep)
    return {"dim_v_span": sub.dim_v_span, "dim_alpha_kernel": sub.dim_alpha_kernel,
            "representation": S.rep_to_json(red)}, OK


def cmd_relations(args):
    rep = _rep(args)
    try:
        report = represent.verify_relations(rep, args.order_cap)
    except RelationViolation as exc:
        return {"relations_hold": False, "pair": S.word(exc.pair), "power": S.label(exc.power),
                "message": str(exc)}, NEGATIVE
    orders = [{"pair": [s + 1, t + 1], "order": S.label(o)} for (s, t), o in sorted(report.orders.items())]
    return {"relations_hold": True, "orders": orders, "order_cap": report.order_cap}, OK


def cmd_closure(args):
    verdict = represent.closure_verdict(_irreducible_rep(args), args.word_cap)
    out = {"verdict": verdict.kind.value, "reason": verdict.reason}
    if verdict.form is not None:
        out["form"] = S.rat_matrix(verdict.form)
    code = INDETERMINATE if verdict.kind is represent.VerdictKind.INDETERMINATE else OK
    return out, code


def cmd_integralize(args):
    try:
        res = integral.conjugate_to_integers(_irreducible_rep(args), args.max_iters, args.cycle_budget)
    except CyclicProductObstruction as exc:
        return {"integral": False, "cycle": S.cycle(exc.cycle), "product": S.rat(exc.value),
                "message": str(exc)}, NEGATIVE
    return {"integral": True, **S.integral_to_json(res)}, OK


def cmd_forge(args):
    M = _coxeter(args)
    T = _pairs(args.matching)
    if args.rep is not None:
        out = forge.forge_rank_bump(M, S.rep_from_json(S.load(args.rep), M))
    elif T is not None:
        out = forge.forge_general(M, T)
    else:
        out = forge.forge_racg_spanning_tree(M)
    return S.forge_to_json(out), OK


def cmd_pipeline(args):
    stages = forge.pipeline_thin_embedding(_coxeter(args), _need(args, "target_dim"))
    docs = [{"dim": st.dim, "embedding": S.embedding_to_json(st.embedding),
             "forge": S.forge_to_json(st.forge), "integral": S.integral_to_json(st.integral)}
            for st in stages]
    return {"dims": [st.dim for st in stages], "stages": docs}, OK


def cmd_corpus(args):
    entries = corpus()
    if args.list or args.name is None:
        return {"entries": list(entries)}, OK
    if args.name not in entries:
        raise InvalidInput(f"no corpus entry {args.name!r}; try --list")
    e = entries[args.name]
    out = {"name": e.name, "coxeter": S.coxeter_to_json(e.coxeter),
           "cartan": None if e.cartan is None else S.cartan_to_json(e.cartan),
           "expected": dict(e.expected),
           "matching": None if e.matching is None else [S.word(p) for p in e.matching]}
    return out, OK


VERBS = {
    "validate": (cmd_validate, "check and normalise --coxeter, --cartan or --rep"),
    "classify": (cmd_classify, "spherical, affine or large, per component"),
    "compatible": (cmd_compatible, "does --cartan realise the labels of --coxeter"),
    "symmetrizable": (cmd_symmetrizable, "symmetrizing weights or a witness cycle"),
    "type": (cmd_type, "positive, zero or negative type, and the rank"),
    "cycles": (cmd_cycles, "cyclic products and their integrality"),
    "build-rep": (cmd_build_rep, "reflection representation of --cartan for --coxeter"),
    "reduce": (cmd_reduce, "irreducible quotient representation"),
    "relations": (cmd_relations, "check the Coxeter relations exactly"),
    "closure": (cmd_closure, "Zariski closure verdict"),
    "integralize": (cmd_integralize, "conjugate into GL(n, Z)"),
    "forge": (cmd_forge, "construct a non-symmetrizable integral Cartan matrix"),
    "pipeline": (cmd_pipeline, "iterated doubling and forging up to --target-dim"),
    "corpus": (cmd_corpus, "built-in examples"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cartan", help="Cartan matrix: JSON file or inline JSON")
    common.add_argument("--coxeter", help="Coxeter matrix: JSON file or inline JSON (0 = infinity)")
    common.add_argument("--rep", help="representation: JSON file or inline JSON")
    common.add_argument("--target-dim", type=int)
    common.add_argument("--order-cap", type=int, default=represent.DEFAULT_ORDER_CAP)
    common.add_argument("--word-cap", type=int, default=None)
    common.add_argument("--max-iters", type=int, default=integral.DEFAULT_MAX_ITERS)
    common.add_argument("--cycle-budget", type=int, default=cartan.DEFAULT_CYCLE_BUDGET)
    common.add_argument("--matching", help="forge: pairs T as JSON, 1-based, e.g. [[1,2]]")
    common.add_argument("--pretty", action="store_true", help="indented output and a summary on stderr")

    p = argparse.ArgumentParser(prog="vinberg", description="Exact computations with linear reflection groups.")
    sub = p.add_subparsers(dest="verb", required=True)
    for name, (_, help_text) in VERBS.items():
        sp = sub.add_parser(name, parents=[common], help=help_text)
        if name == "corpus":
            sp.add_argument("name", nargs="?")
            sp.add_argument("--list", action="store_true")
    return p


def _summary(verb: str, doc: dict, code: int) -> str:
    status = {OK: "ok", NEGATIVE: "negative", INPUT_ERROR: "error", INDETERMINATE: "indeterminate"}[code]
    keys = [k for k in ("verdict", "symmetrizable", "compatible", "all_integer", "integral",
                        "relations_hold", "type", "kind", "dims", "error") if k in doc]
    return f"{verb}: {status}" + "".join(f"; {k} = {doc[k]}" for k in keys)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else INPUT_ERROR
    handler = VERBS[args.verb][0]
    try:
        doc, code = handler(args)
    except UsageError as exc:
        print(f"vinberg {args.verb}: {exc}", file=stderr)
        return INPUT_ERROR
    except (InvalidInput, PreconditionViolated, NotAReflection, UnsupportedPairing) as exc:
        doc, code = {"error": type(exc).__name__, "message": str(exc)}, INPUT_ERROR
    except RelationViolation as exc:
        doc, code = {"error": type(exc).__name__, "message": str(exc)}, NEGATIVE
    except (NoConvergence, CycleBudgetExceeded, SearchExhausted) as exc:
        doc, code = {"error": type(exc).__name__, "message": str(exc), "verdict": "Indeterminate"}, INDETERMINATE
    except VinbergError as exc:
        doc, code = {"error": type(exc).__name__, "message": str(exc)}, INPUT_ERROR
    if "error" in doc:
        print(f"vinberg {args.verb}: {doc['message']}", file=stderr)
    json.dump(doc, stdout, indent=2 if args.pretty else None)
    stdout.write("\n")
    if args.pretty:
        print(_summary(args.verb, doc, code), file=stderr)
    return code


def main() -> None:
    sys.exit(run())
