"""JSON encodings of the library's objects.

Rationals are strings ("p/q" or "n"), the infinite Coxeter label is 0, and
generator indices are 1-based, as users number facets s_1, s_2, ...
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from . import rational as Q
from .cartan import CartanMatrix
from .cartan import validate as validate_cartan
from .coxeter import INF, CoxeterMatrix, SubgroupEmbedding
from .coxeter import validate as validate_coxeter
from .errors import InvalidInput
from .represent import ReflectionRep


def load(source: str):
    """Parse inline JSON, or the contents of the file named by ``source``."""
    text = source.strip()
    if not text.startswith(("{", "[")):
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise InvalidInput(f"cannot read {source}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"malformed JSON: {exc.msg}") from None


def _rows(doc, key: str):
    if isinstance(doc, dict):
        if key not in doc:
            raise InvalidInput(f'missing "{key}"')
        rows = doc[key]
        if "rank" in doc and doc["rank"] != len(rows):
            raise InvalidInput(f'"rank" is {doc["rank"]} but the matrix has {len(rows)} rows')
        return rows
    return doc


def rat(x) -> str:
    return Q.fmt(Fraction(x))


def rat_matrix(a) -> list[list[str]]:
    return [[rat(x) for x in row] for row in a]


def label(x) -> int:
    return 0 if x == INF else int(x)


# -- Coxeter ------------------------------------------------------------------

def coxeter_to_json(M: CoxeterMatrix) -> dict:
    return {"rank": M.rank, "m": [[label(x) for x in row] for row in M.m]}


def coxeter_from_json(doc) -> CoxeterMatrix:
    return validate_coxeter(_rows(doc, "m"))


# -- Cartan -------------------------------------------------------------------

def cartan_to_json(A: CartanMatrix) -> dict:
    return {"rank": A.size, "a": rat_matrix(A.a)}


def cartan_from_json(doc) -> CartanMatrix:
    return validate_cartan(_rows(doc, "a"))


# -- representations ----------------------------------------------------------

def rep_to_json(rep: ReflectionRep) -> dict:
    out = {
        "dim": rep.dim,
        "generators": [rat_matrix(g) for g in rep.generators],
        "alphas": [[rat(x) for x in a] for a in rep.alphas],
        "vs": [[rat(x) for x in v] for v in rep.vs],
    }
    if rep.coxeter is not None:
        out["coxeter"] = coxeter_to_json(rep.coxeter)
    return out


def rep_from_json(doc, coxeter: CoxeterMatrix | None = None) -> ReflectionRep:
    if not isinstance(doc, dict) or "alphas" not in doc or "vs" not in doc:
        raise InvalidInput('a representation needs "alphas" and "vs"')
    if coxeter is None and "coxeter" in doc:
        coxeter = coxeter_from_json(doc["coxeter"])
    try:
        alphas = [Q.vector(a) for a in doc["alphas"]]
        vs = [Q.vector(v) for v in doc["vs"]]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"unreadable root data: {exc}") from None
    rep = ReflectionRep.from_roots(alphas, vs, coxeter)
    if "generators" in doc:
        try:
            given = tuple(Q.matrix(g) for g in doc["generators"])
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"unreadable generators: {exc}") from None
        if given != rep.generators:
            raise InvalidInput("generators disagree with Id - v alpha")
    if "dim" in doc and doc["dim"] != rep.dim:
        raise InvalidInput(f'"dim" is {doc["dim"]} but the roots have length {rep.dim}')
    return rep


# -- results ------------------------------------------------------------------

def word(w) -> list[int]:
    return [s + 1 for s in w]


def cycle(c) -> list[int] | None:
    return None if c is None else [s + 1 for s in c]


def embedding_to_json(e: SubgroupEmbedding) -> dict:
    return {
        "coxeter": coxeter_to_json(e.new_matrix),
        "generator_words": [word(w) for w in e.generator_words],
        "index": e.index,
    }


def forge_to_json(out) -> dict:
    """Certificate bundle: everything needed to re-check without searching."""
    return {
        "coxeter": coxeter_to_json(out.coxeter),
        "parameter": out.parameter,
        "cartan": cartan_to_json(out.cartan),
        "certificates": dict(out.certificates),
        "witness_cycle": cycle(out.witness_cycle),
        "cycle": cycle(out.cycle),
    }


def integral_to_json(res) -> dict:
    return {
        "change_of_basis": rat_matrix(res.change_of_basis),
        "integer_generators": [[list(row) for row in g] for g in res.integer_generators],
        "iterations": res.iterations,
        "representation": rep_to_json(res.rep),
        "cartan": cartan_to_json(res.rep.cartan),
    }
