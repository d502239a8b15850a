"""Constructions of non-symmetrizable integral Cartan matrices of prescribed rank.

Each constructor scans an integer parameter upward and returns the first
matrix that passes every certificate; the certificates are re-derived from
the cartan module before anything is returned.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import rational as Q
from .cartan import (
    DEFAULT_CYCLE_BUDGET,
    CartanMatrix,
    cycle_product,
    cyclic_products,
    four_cos2,
    is_compatible,
    is_symmetrizable,
    rank,
    simple_cycles,
)
from .cartan import validate as validate_cartan
from .corpus import CorpusEntry, corpus
from .coxeter import (
    INF,
    CoxeterMatrix,
    Kind,
    SubgroupEmbedding,
    classify,
    components,
    compose,
    double_increase_rank,
    double_tree_to_triangle,
    identity_embedding,
    is_quasi_lanner,
    require_right_angled_irreducible,
)
from .errors import (
    BadLabels,
    ComplementNotAdmissible,
    InvalidInput,
    IsTree,
    NoInfinitePairInK,
    NoSuitableCycle,
    NotIrreducible,
    RankGapTooSmall,
    SearchExhausted,
    TargetTooSmall,
)
from .integral import IntegralizationResult, conjugate_to_integers
from .represent import ReflectionRep, is_irreducible, reduce_irreducible, rep_from_cartan, restrict_to_subgroup

PARAMETER_CAP = 10_000


@dataclass(frozen=True)
class ForgeOutput:
    cartan: CartanMatrix
    coxeter: CoxeterMatrix
    parameter: int | None
    certificates: dict
    witness_cycle: tuple[int, ...] | None = None
    cycle: tuple[int, ...] | None = None  # the cycle C of the general construction


def integer_cyclic_products(A: CartanMatrix, budget: int = DEFAULT_CYCLE_BUDGET) -> bool:
    if A.is_integral():
        return True
    return cyclic_products(A, budget=budget).all_integer


def certify(A: CartanMatrix, M: CoxeterMatrix, parameter, cycle=None) -> ForgeOutput:
    sym = is_symmetrizable(A)
    certs = {
        "compatible": bool(is_compatible(A, M)),
        "non_symmetrizable": not sym.symmetrizable,
        "rank": rank(A),
        "integer_cyclic_products": integer_cyclic_products(A),
    }
    return ForgeOutput(A, M, parameter, certs, sym.witness_cycle, cycle)


def _scan(build, accept, what: str):
    for t in range(1, PARAMETER_CAP + 1):
        a = build(t)
        if accept(a):
            return t, a
    raise SearchExhausted(f"no {what} found for parameters up to {PARAMETER_CAP}")


# -- right-angled groups whose diagram is not a tree -------------------------

def bfs_spanning_tree(M: CoxeterMatrix) -> set[frozenset]:
    seen = {0}
    tree = set()
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in M.neighbors(v):
            if w not in seen:
                seen.add(w)
                tree.add(frozenset((v, w)))
                queue.append(w)
    return tree


def spanning_tree_matrix(M: CoxeterMatrix, t: int, tree: set[frozenset] | None = None) -> CartanMatrix:
    """-2t above the diagonal, -2t below it on tree edges, -3t below it elsewhere."""
    tree = bfs_spanning_tree(M) if tree is None else tree
    n = M.rank
    a = [[Fraction(2) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for i, j, _ in M.edges():
        a[i][j] = Fraction(-2 * t)
        a[j][i] = Fraction(-2 * t if frozenset((i, j)) in tree else -3 * t)
    return validate_cartan(a)


def forge_racg_spanning_tree(M: CoxeterMatrix) -> ForgeOutput:
    require_right_angled_irreducible(M)
    if M.is_tree():
        raise IsTree("diagram is a tree; double it first")
    tree = bfs_spanning_tree(M)
    k, a = _scan(lambda t: spanning_tree_matrix(M, t, tree), lambda a: Q.det(a.a) != 0,
                 "nonsingular matrix")
    out = certify(a, M, k)
    assert out.certificates["rank"] == M.rank and out.certificates["non_symmetrizable"]
    return out


# -- raising the dimension by one --------------------------------------------

def spanning_indices(vectors: Sequence[Sequence[Fraction]]) -> list[int]:
    return Q.independent_subset(vectors)


def infinite_pair_in(M: CoxeterMatrix, K: Sequence[int]) -> tuple[int, int]:
    for a, i in enumerate(K):
        for j in K[a + 1:]:
            if M.m[i][j] == INF:
                return i, j
    raise NoInfinitePairInK(f"no infinity label among {list(K)}")


def bump_matrix(A: CartanMatrix, i0: int, j0: int, t: int) -> CartanMatrix:
    a = [list(r) for r in A.a]
    a[i0][j0] *= 1 + t
    return validate_cartan(a)


def forge_rank_bump(M: CoxeterMatrix, rep: ReflectionRep) -> ForgeOutput:
    """Cartan matrix of rank n + 1 for M, from a dimension-n representation of M."""
    require_right_angled_irreducible(M)
    n, N = rep.dim, M.rank
    if rep.size != N:
        raise InvalidInput(f"representation has {rep.size} generators, group has rank {N}")
    if N < 3 * n + 1:
        raise RankGapTooSmall(f"rank {N} < 3 * {n} + 1")
    if not is_irreducible(rep):
        raise NotIrreducible("the input representation must be irreducible")
    I = spanning_indices(rep.alphas)
    J = spanning_indices(rep.vs)
    K = [k for k in range(N) if k not in set(I) | set(J)]
    i0, j0 = infinite_pair_in(M, K)
    t, a = _scan(lambda t: bump_matrix(rep.cartan, i0, j0, t),
                 lambda a: rank(a) == n + 1 and not is_symmetrizable(a) and bool(is_compatible(a, M)),
                 "non-symmetrizable rank-raising matrix")
    return certify(a, M, t)


# -- the general construction ------------------------------------------------

SUPPORTED = {2, 3, 4, 6, INF}


def suitable_cycle(M: CoxeterMatrix) -> tuple[int, ...]:
    """A diagram cycle that is not an ~A_k cycle (some label other than 3).

    Cycles with only finite labels are preferred, then shorter ones, then
    the lexicographically least canonical form.
    """
    n = M.rank
    support = validate_cartan([[2 if i == j else (-1 if M.m[i][j] >= 3 else 0) for j in range(n)]
                               for i in range(n)])
    cands = [c for c in simple_cycles(support) if len(c) >= 3]

    def labels(c):
        return [M.m[a][b] for a, b in zip(c, c[1:] + c[:1])]

    good = [c for c in cands if any(x != 3 for x in labels(c))]
    if not good:
        raise NoSuitableCycle("every cycle of the diagram has all labels 3")
    return min(good, key=lambda c: (INF in labels(c), len(c), c))


def _check_matching(M: CoxeterMatrix, T) -> list[tuple[int, int]]:
    pairs = [tuple(p) for p in T]
    flat = [x for p in pairs for x in p]
    if len(set(flat)) != len(flat) or any(len(p) != 2 for p in pairs):
        raise ComplementNotAdmissible("T must consist of disjoint pairs")
    if any(not 0 <= x < M.rank for x in flat):
        raise ComplementNotAdmissible("T refers to a missing generator")
    for i, j in pairs:
        if M.m[i][j] != INF:
            raise ComplementNotAdmissible(f"pair ({i}, {j}) has label {M.m[i][j]}, not infinity")
    U = [x for x in range(M.rank) if x not in set(flat)]
    if U:
        sub = M.submatrix(U)
        for comp in components(sub):
            part = sub.submatrix(comp)
            if classify(part).kind is Kind.SPHERICAL or is_quasi_lanner(part):
                continue
            names = [U[c] for c in comp]
            raise ComplementNotAdmissible(f"component {names} of the complement is neither spherical nor quasi-Lanner")
    return pairs


def general_base_matrix(M: CoxeterMatrix, cycle: Sequence[int]) -> CartanMatrix:
    """Integral Cartan matrix that is -1 one way and -4cos^2 the other on every edge.

    Along the path c0 - c1 - ... - c_{r-1} the -1 sits on the side that
    walks forward; on the closing edge and off the cycle it sits on the
    side that goes from the later to the earlier vertex, where vertices
    are ordered cycle first, then the rest by index.
    """
    n = M.rank
    order = list(cycle) + [x for x in range(n) if x not in set(cycle)]
    pos = {v: p for p, v in enumerate(order)}
    path = {frozenset((cycle[k], cycle[k + 1])) for k in range(len(cycle) - 1)}
    a = [[Fraction(2) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for i, j, lab in M.edges():
        lo, hi = (i, j) if pos[i] < pos[j] else (j, i)
        c = -four_cos2(lab)
        if frozenset((i, j)) in path:
            a[lo][hi], a[hi][lo] = Fraction(-1), c
        else:
            a[lo][hi], a[hi][lo] = c, Fraction(-1)
    return validate_cartan(a)


def scale_pairs(A: CartanMatrix, T, t: int) -> CartanMatrix:
    a = [list(r) for r in A.a]
    for i, j in T:
        a[i][j] *= t
        a[j][i] *= t
    return validate_cartan(a)


def forge_general(M: CoxeterMatrix, T, cycle: Sequence[int] | None = None) -> ForgeOutput:
    bad = {M.m[i][j] for i in range(M.rank) for j in range(M.rank) if i != j} - SUPPORTED
    if bad:
        raise BadLabels(f"labels {sorted(bad)} are outside 2, 3, 4, 6, infinity")
    if not M.is_irreducible():
        raise NotIrreducible("diagram is disconnected")
    if cycle is None:
        cycle = suitable_cycle(M)
    else:
        cycle = tuple(cycle)
        closed = zip(cycle, cycle[1:] + cycle[:1])
        if len(cycle) < 3 or any(M.m[a][b] < 3 for a, b in closed):
            raise NoSuitableCycle(f"{list(cycle)} is not a cycle of the diagram")
        if all(M.m[a][b] == 3 for a, b in zip(cycle, cycle[1:] + cycle[:1])):
            raise NoSuitableCycle(f"{list(cycle)} is an ~A cycle")
    pairs = _check_matching(M, T)
    base = general_base_matrix(M, cycle)
    t0, a = _scan(lambda t: scale_pairs(base, pairs, t), lambda a: Q.det(a.a) != 0, "nonsingular matrix")
    out = certify(a, M, t0, tuple(cycle))
    assert out.certificates["non_symmetrizable"]
    return out


def cycle_inequality(out: ForgeOutput) -> tuple[Fraction, Fraction]:
    """|A_{c0 c_{r-1}} ... A_{c1 c0}| and |A_{c0 c1} ... A_{c_{r-1} c0}| for the construction's cycle.

    The first (against the path) exceeds the second (along it).
    """
    c = out.cycle
    against = cycle_product(out.cartan, (c[0],) + tuple(reversed(c[1:])))
    along = cycle_product(out.cartan, c)
    return abs(against), abs(along)


# -- the full pipeline -------------------------------------------------------

@dataclass(frozen=True)
class PipelineStage:
    embedding: SubgroupEmbedding  # relative to the input group
    forge: ForgeOutput
    integral: IntegralizationResult

    @property
    def dim(self) -> int:
        return self.integral.rep.dim


def _lookup_corpus(M: CoxeterMatrix, target_dim: int) -> CorpusEntry | None:
    for entry in corpus().values():
        if entry.cartan is not None and entry.coxeter == M and rank(entry.cartan) == target_dim \
                and not is_symmetrizable(entry.cartan) and integer_cyclic_products(entry.cartan):
            return entry
    return None


def _integralize(A: CartanMatrix, M: CoxeterMatrix) -> IntegralizationResult:
    rep = rep_from_cartan(A, M)
    if not is_irreducible(rep):
        rep = reduce_irreducible(rep)
    return conjugate_to_integers(rep)


def _pivot(M: CoxeterMatrix) -> int:
    return max(range(M.rank), key=lambda v: (M.degree(v), -v))


def pipeline_thin_embedding(M: CoxeterMatrix, target_dim: int) -> list[PipelineStage]:
    """Finite-index reflection subgroups with integral Zariski-dense representations.

    The first stage realises the (doubled, if the diagram is a tree) group in
    its own rank; each further stage doubles until the rank is at least
    3n + 1 and then raises the dimension n by one.
    """
    require_right_angled_irreducible(M)
    emb = double_tree_to_triangle(M) if M.is_tree() else identity_embedding(M)
    group = emb.new_matrix
    if target_dim < group.rank:
        entry = _lookup_corpus(group, target_dim)
        if entry is None:
            raise TargetTooSmall(f"target {target_dim} is below the rank {group.rank} of the first stage")
        first = certify(entry.cartan, group, None)
    else:
        first = forge_racg_spanning_tree(group)
    stages = [PipelineStage(emb, first, _integralize(first.cartan, group))]
    while stages[-1].dim < target_dim:
        n = stages[-1].dim
        rep = stages[-1].integral.rep
        while group.rank < 3 * n + 1:
            step = double_increase_rank(group, _pivot(group))
            rep = restrict_to_subgroup(rep, step)
            emb = compose(step, emb)
            group = step.new_matrix
        bumped = forge_rank_bump(group, rep)
        stages.append(PipelineStage(emb, bumped, _integralize(bumped.cartan, group)))
    return stages
