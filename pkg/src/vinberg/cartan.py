"""Cartan matrices over the rationals.

Compatibility with a Coxeter matrix, diagonal equivalence, symmetrizability,
Perron-Frobenius type, and cyclic products.  Only the labels whose
4cos^2(pi/m) is rational (2, 3, 4, 6 and infinity) are supported.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

import networkx as nx

from . import rational as Q
from .coxeter import INF, CoxeterMatrix
from .errors import (
    BadDiagonal,
    CycleBudgetExceeded,
    Decomposable,
    InvalidInput,
    PositiveOffDiagonal,
    RankMismatch,
    UnsupportedLabel,
    UnsupportedPairing,
    ZeroAsymmetry,
    ZeroPatternMismatch,
)

# 4cos^2(pi/m) for the labels that keep everything rational
FOUR_COS2 = {2: Fraction(0), 3: Fraction(1), 4: Fraction(2), 6: Fraction(3), INF: Fraction(4)}
_LABEL_OF_PAIRING = {Fraction(0): 2, Fraction(1): 3, Fraction(2): 4, Fraction(3): 6}

DEFAULT_CYCLE_BUDGET = 10**6


@dataclass(frozen=True)
class CartanMatrix:
    a: Q.Matrix

    @property
    def size(self) -> int:
        return len(self.a)

    def __getitem__(self, ij):
        i, j = ij
        return self.a[i][j]

    def submatrix(self, indices: Sequence[int]) -> "CartanMatrix":
        return CartanMatrix(tuple(tuple(self.a[i][j] for j in indices) for i in indices))

    def transpose(self) -> "CartanMatrix":
        return CartanMatrix(Q.transpose(self.a))

    def support_edges(self) -> list[tuple[int, int]]:
        n = self.size
        return [(i, j) for i in range(n) for j in range(i + 1, n) if self.a[i][j] != 0]

    def is_integral(self) -> bool:
        return Q.is_integral(self.a)

    def __str__(self):
        return "\n".join(" ".join(Q.fmt(x) for x in row) for row in self.a)


def validate(raw) -> CartanMatrix:
    if isinstance(raw, CartanMatrix):
        raw = raw.a
    try:
        a = Q.matrix(raw)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"unreadable Cartan matrix: {exc}") from None
    n = len(a)
    if n == 0 or any(len(r) != n for r in a):
        raise InvalidInput("Cartan matrix must be a non-empty square matrix")
    for i in range(n):
        if a[i][i] != 2:
            raise BadDiagonal(f"a[{i}][{i}] = {Q.fmt(a[i][i])} (must be 2)")
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if a[i][j] > 0:
                raise PositiveOffDiagonal(f"a[{i}][{j}] = {Q.fmt(a[i][j])} > 0")
            if (a[i][j] == 0) != (a[j][i] == 0):
                raise ZeroAsymmetry(f"a[{i}][{j}] and a[{j}][{i}] must vanish together")
    return CartanMatrix(a)


def _components(A: CartanMatrix) -> list[list[int]]:
    adj = {i: [] for i in range(A.size)}
    for i, j in A.support_edges():
        adj[i].append(j)
        adj[j].append(i)
    seen, out = set(), []
    for s in range(A.size):
        if s in seen:
            continue
        comp, queue = [], deque([s])
        seen.add(s)
        while queue:
            v = queue.popleft()
            comp.append(v)
            for w in sorted(adj[v]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        out.append(sorted(comp))
    return out


def is_indecomposable(A: CartanMatrix) -> bool:
    return len(_components(A)) == 1


def _bfs_tree(A: CartanMatrix) -> tuple[dict[int, int | None], list[int]]:
    """Parent pointers of a BFS spanning forest (least index first) and visit order."""
    adj = {i: sorted(j for j in range(A.size) if j != i and A.a[i][j] != 0) for i in range(A.size)}
    parent: dict[int, int | None] = {}
    order = []
    for root in range(A.size):
        if root in parent:
            continue
        parent[root] = None
        queue = deque([root])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in adj[v]:
                if w not in parent:
                    parent[w] = v
                    queue.append(w)
    return parent, order


# -- compatibility ----------------------------------------------------------

def four_cos2(label) -> Fraction:
    try:
        return FOUR_COS2[label]
    except KeyError:
        raise UnsupportedLabel(f"label {label}: 4cos^2(pi/{label}) is not rational") from None


def label_from_pairing(forward: Fraction, backward: Fraction):
    """Coxeter label realised by two reflections with pairings a(w), b(v)."""
    p = forward * backward
    if p == 0:
        if forward != 0 or backward != 0:
            raise UnsupportedPairing("one-sided zero pairing (unipotent product)")
        return 2
    if p >= 4:
        return INF
    if p in _LABEL_OF_PAIRING:
        return _LABEL_OF_PAIRING[p]
    raise UnsupportedPairing(f"pairing {Q.fmt(p)} is not 4cos^2(pi/m) for m in 2, 3, 4, 6, nor >= 4")


@dataclass(frozen=True)
class PairCheck:
    i: int
    j: int
    label: object
    product: Fraction
    ok: bool


@dataclass(frozen=True)
class CompatibilityReport:
    compatible: bool
    pairs: tuple[PairCheck, ...]

    def __bool__(self):
        return self.compatible

    def failures(self) -> list[PairCheck]:
        return [p for p in self.pairs if not p.ok]


def is_compatible(A: CartanMatrix, M: CoxeterMatrix) -> CompatibilityReport:
    if A.size != M.rank:
        raise RankMismatch(f"Cartan size {A.size} vs Coxeter rank {M.rank}")
    checks = []
    for i in range(A.size):
        for j in range(i + 1, A.size):
            m = M.m[i][j]
            target = four_cos2(m)
            prod = A.a[i][j] * A.a[j][i]
            if m == 2:
                ok = A.a[i][j] == 0
            elif m == INF:
                ok = prod >= 4
            else:
                ok = prod == target and A.a[i][j] != 0
            checks.append(PairCheck(i, j, m, prod, ok))
    return CompatibilityReport(all(c.ok for c in checks), tuple(checks))


def labels_from_pairings(A: CartanMatrix) -> CoxeterMatrix:
    """The Coxeter matrix whose labels the pairings of A realise."""
    from .coxeter import validate as coxeter_validate

    n = A.size
    m = [[1 if i == j else label_from_pairing(A.a[i][j], A.a[j][i]) for j in range(n)] for i in range(n)]
    return coxeter_validate(m)


def standard_cartan(M: CoxeterMatrix) -> CartanMatrix:
    """A rational Cartan matrix compatible with M.

    Labels 2, 3 and infinity get the Tits values 0, -1, -2 on both sides;
    labels 4 and 6 get -1 above the diagonal and -2 or -3 below.  For
    labels in {2, 3, infinity} this is the Tits matrix.
    """
    n = M.rank
    a = [[Fraction(2) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            m = M.m[i][j]
            if m == 2:
                continue
            if m in (3, INF):
                a[i][j] = a[j][i] = -Fraction(1 if m == 3 else 2)
            else:
                a[i][j] = Fraction(-1)
                a[j][i] = -four_cos2(m)
    return validate(a)


# -- equivalence and symmetrizability ---------------------------------------

def equivalent(A: CartanMatrix, B: CartanMatrix) -> tuple[Fraction, ...] | None:
    """Squared ratios t with (d_i/d_j)^2 = t_i/t_j if D A D^-1 = B for positive diagonal D.

    Each connected component is normalised so that its least index gets 1.
    """
    if A.size != B.size:
        raise RankMismatch(f"sizes {A.size} and {B.size}")
    n = A.size
    for i in range(n):
        for j in range(n):
            if (A.a[i][j] == 0) != (B.a[i][j] == 0):
                raise ZeroPatternMismatch(f"entry ({i}, {j}) vanishes in only one matrix")
    if any(A.a[i][i] != B.a[i][i] for i in range(n)):
        return None
    parent, order = _bfs_tree(A)
    t: dict[int, Fraction] = {}
    for v in order:
        p = parent[v]
        if p is None:
            t[v] = Fraction(1)
        else:
            r = B.a[p][v] / A.a[p][v]
            t[v] = t[p] / (r * r)
    for i in range(n):
        for j in range(n):
            if i != j and A.a[i][j] != 0:
                r = B.a[i][j] / A.a[i][j]
                if r <= 0 or t[i] / t[j] != r * r:
                    return None
    return tuple(t[i] for i in range(n))


def canonical_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    """Rotate to start at the least index; orient so the second entry is smaller than the last."""
    c = list(cycle)
    k = c.index(min(c))
    c = c[k:] + c[:k]
    if len(c) > 2 and c[1] > c[-1]:
        c = [c[0]] + c[1:][::-1]
    return tuple(c)


def cycle_product(A: CartanMatrix, cycle: Sequence[int]) -> Fraction:
    """a[c0][c1] a[c1][c2] ... a[ck][c0]."""
    out = Fraction(1)
    for x, y in zip(cycle, tuple(cycle[1:]) + (cycle[0],)):
        out *= A.a[x][y]
    return out


def reverse_cycle_product(A: CartanMatrix, cycle: Sequence[int]) -> Fraction:
    """a[c1][c0] a[c2][c1] ... a[c0][ck]."""
    out = Fraction(1)
    for x, y in zip(cycle, tuple(cycle[1:]) + (cycle[0],)):
        out *= A.a[y][x]
    return out


@dataclass(frozen=True)
class Symmetrization:
    weights: tuple[Fraction, ...] | None
    witness_cycle: tuple[int, ...] | None = None
    forward: Fraction | None = None
    reverse: Fraction | None = None

    @property
    def symmetrizable(self) -> bool:
        return self.weights is not None

    def __bool__(self):
        return self.symmetrizable


def _tree_path(parent, v) -> list[int]:
    path = [v]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path


def is_symmetrizable(A: CartanMatrix) -> Symmetrization:
    """Positive t with t_i a_ij = t_j a_ji, or a cycle whose two orientations disagree.

    Weights propagate along a BFS spanning forest; the first non-tree edge
    that disagrees closes the witness cycle.
    """
    parent, order = _bfs_tree(A)
    t: dict[int, Fraction] = {}
    for v in order:
        p = parent[v]
        t[v] = Fraction(1) if p is None else t[p] * A.a[p][v] / A.a[v][p]
    for i, j in A.support_edges():
        if t[i] * A.a[i][j] == t[j] * A.a[j][i]:
            continue
        up_i, up_j = _tree_path(parent, i), _tree_path(parent, j)
        common = next(x for x in up_i if x in set(up_j))
        path = up_i[: up_i.index(common) + 1] + up_j[: up_j.index(common)][::-1]
        cycle = canonical_cycle(path)
        return Symmetrization(None, cycle, cycle_product(A, cycle), reverse_cycle_product(A, cycle))
    return Symmetrization(tuple(t[i] for i in range(A.size)))


# -- type -------------------------------------------------------------------

class CartanType(str, Enum):
    POSITIVE = "Positive"
    ZERO = "Zero"
    NEGATIVE = "Negative"


def cartan_type(A: CartanMatrix) -> CartanType:
    """Sign of 2 - rho, rho the Perron root of 2 Id - A, decided by a Sturm count."""
    if not is_indecomposable(A):
        raise Decomposable("support graph is disconnected")
    n = A.size
    p = Q.charpoly(Q.sub(Q.scale(2, Q.identity(n)), A.a))
    if Q.count_roots_above(p, 2) > 0:
        return CartanType.NEGATIVE
    if Q.poly_eval(p, 2) == 0:
        return CartanType.ZERO
    return CartanType.POSITIVE


def rank(A: CartanMatrix) -> int:
    return Q.rank(A.a)


# -- cyclic products --------------------------------------------------------

@dataclass(frozen=True)
class CycleProducts:
    cycle: tuple[int, ...]
    forward: Fraction
    reverse: Fraction


@dataclass(frozen=True)
class CyclicProductReport:
    cycles: tuple[CycleProducts, ...]
    all_integer: bool
    witness: tuple[tuple[int, ...], Fraction] | None
    symmetrizable_witness: tuple[tuple[int, ...], Fraction, Fraction] | None

    @property
    def checked_cycles(self) -> list[tuple[int, ...]]:
        return [c.cycle for c in self.cycles]


def simple_cycles(A: CartanMatrix, max_len: int | None = None, budget: int = DEFAULT_CYCLE_BUDGET):
    """Simple cycles of the support graph with 2 <= length <= max_len, canonical and sorted."""
    n = A.size
    max_len = n if max_len is None else max_len
    if max_len > n:
        raise InvalidInput(f"max_len {max_len} exceeds size {n}")
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(A.support_edges())
    found = [tuple(e) for e in A.support_edges()] if max_len >= 2 else []
    if len(found) > budget:
        raise CycleBudgetExceeded(f"more than {budget} cycles")
    if max_len >= 3:
        for c in nx.simple_cycles(g, length_bound=max_len):
            if len(c) < 3:
                continue
            found.append(canonical_cycle(c))
            if len(found) > budget:
                raise CycleBudgetExceeded(f"more than {budget} cycles")
    return sorted(found, key=lambda c: (len(c), c))


def cyclic_products(A: CartanMatrix, max_len: int | None = None,
                    budget: int = DEFAULT_CYCLE_BUDGET) -> CyclicProductReport:
    rows = []
    witness = None
    sym_witness = None
    for c in simple_cycles(A, max_len, budget):
        fwd, rev = cycle_product(A, c), reverse_cycle_product(A, c)
        rows.append(CycleProducts(c, fwd, rev))
        if witness is None:
            if fwd.denominator != 1:
                witness = (c, fwd)
            elif rev.denominator != 1:
                witness = (c[:1] + c[1:][::-1], rev)
        if sym_witness is None and fwd != rev:
            sym_witness = (c, fwd, rev)
    return CyclicProductReport(tuple(rows), witness is None, witness, sym_witness)
