"""Coxeter matrices, their diagrams, and reflection subgroups.

Generators are indexed from 0.  The infinite label is ``math.inf`` in memory;
0 is accepted on input (and used in every serialized format) as a stand-in,
since 0 is never a legal Coxeter label.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence

from .errors import (
    BadDiagonal,
    BadOffDiagonal,
    DegreeTooSmall,
    InvalidInput,
    NonSymmetric,
    NotIrreducible,
    NotLarge,
    NotRightAngled,
    NotTree,
    RankTooSmall,
)

INF = math.inf

Word = tuple[int, ...]


def _read_label(x):
    if isinstance(x, bool):
        raise InvalidInput(f"bad Coxeter label {x!r}")
    if x == 0 or x == INF or (isinstance(x, str) and x.strip().lower() in {"inf", "infinity", "∞"}):
        return INF
    if isinstance(x, float):
        if not x.is_integer():
            raise InvalidInput(f"bad Coxeter label {x!r}")
        x = int(x)
    try:
        value = int(x)
    except (TypeError, ValueError):
        raise InvalidInput(f"bad Coxeter label {x!r}") from None
    if value != x and not isinstance(x, str):
        raise InvalidInput(f"bad Coxeter label {x!r}")
    if value < 0:
        raise InvalidInput(f"negative Coxeter label {x!r}")
    return value


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric label matrix; ``m[i][j]`` is the order of s_i s_j."""

    m: tuple[tuple, ...]

    @property
    def rank(self) -> int:
        return len(self.m)

    def label(self, i: int, j: int):
        return self.m[i][j]

    def edges(self) -> list[tuple[int, int, object]]:
        """Diagram edges (i < j, label >= 3)."""
        n = self.rank
        return [(i, j, self.m[i][j]) for i in range(n) for j in range(i + 1, n) if self.m[i][j] >= 3]

    def neighbors(self, i: int) -> list[int]:
        return [j for j in range(self.rank) if j != i and self.m[i][j] >= 3]

    def degree(self, i: int) -> int:
        return len(self.neighbors(i))

    def submatrix(self, indices: Sequence[int]) -> "CoxeterMatrix":
        return CoxeterMatrix(tuple(tuple(self.m[i][j] for j in indices) for i in indices))

    def is_right_angled(self) -> bool:
        return all(self.m[i][j] in (2, INF) for i in range(self.rank) for j in range(self.rank) if i != j)

    def is_irreducible(self) -> bool:
        return len(components(self)) == 1

    def is_tree(self) -> bool:
        return self.is_irreducible() and len(self.edges()) == self.rank - 1

    def finite_labels(self) -> set:
        return {self.m[i][j] for i in range(self.rank) for j in range(i + 1, self.rank) if self.m[i][j] != INF}

    def __str__(self):
        rows = (" ".join("oo" if x == INF else str(x) for x in row) for row in self.m)
        return "\n".join(rows)


def validate(raw) -> CoxeterMatrix:
    """Check a raw label matrix and freeze it."""
    if isinstance(raw, CoxeterMatrix):
        raw = raw.m
    rows = [list(r) for r in raw]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise InvalidInput("Coxeter matrix must be a non-empty square matrix")
    labels = [[_read_label(x) for x in r] for r in rows]
    for i in range(n):
        if labels[i][i] != 1:
            raise BadDiagonal(f"diagonal entry m[{i}][{i}] = {labels[i][i]} (must be 1)")
    for i in range(n):
        for j in range(n):
            if labels[i][j] != labels[j][i]:
                raise NonSymmetric(f"m[{i}][{j}] = {labels[i][j]} but m[{j}][{i}] = {labels[j][i]}")
            if i != j and labels[i][j] < 2:
                raise BadOffDiagonal(f"off-diagonal label m[{i}][{j}] = {labels[i][j]} (must be >= 2)")
    return CoxeterMatrix(tuple(tuple(r) for r in labels))


def from_edges(n: int, edges: dict) -> CoxeterMatrix:
    """Build from ``{(i, j): label}``; unlisted pairs commute (label 2)."""
    m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for (i, j), lab in edges.items():
        m[i][j] = m[j][i] = lab
    return validate(m)


def components(M: CoxeterMatrix) -> list[list[int]]:
    """Connected components of the diagram, each sorted, ordered by least element."""
    seen: set[int] = set()
    out = []
    for start in range(M.rank):
        if start in seen:
            continue
        comp = []
        queue = deque([start])
        seen.add(start)
        while queue:
            v = queue.popleft()
            comp.append(v)
            for w in M.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        out.append(sorted(comp))
    return out


# -- classification ---------------------------------------------------------

class Kind(str, Enum):
    SPHERICAL = "Spherical"
    AFFINE = "Affine"
    LARGE = "Large"


@dataclass(frozen=True)
class ComponentClass:
    indices: tuple[int, ...]
    kind: Kind
    name: str  # e.g. "A4", "~A2", "I2(5)"; "" for large components


@dataclass(frozen=True)
class GroupClass:
    kind: Kind
    components: tuple[ComponentClass, ...]

    @property
    def is_irreducible(self) -> bool:
        return len(self.components) == 1


def _path_order(M: CoxeterMatrix) -> list[int]:
    ends = [v for v in range(M.rank) if M.degree(v) <= 1]
    order = [min(ends)]
    prev = None
    while len(order) < M.rank:
        nxt = [w for w in M.neighbors(order[-1]) if w != prev]
        prev = order[-1]
        order.append(nxt[0])
    return order


def _classify_path(labels: list) -> tuple[Kind, str]:
    r = len(labels) + 1
    if r == 2:
        p = labels[0]
        names = {3: "A2", 4: "B2", 6: "G2"}
        return Kind.SPHERICAL, names.get(p, f"I2({p})")
    if all(x == 3 for x in labels):
        return Kind.SPHERICAL, f"A{r}"
    for seq in (labels, labels[::-1]):
        if seq == [4] + [3] * (r - 2):
            return Kind.SPHERICAL, f"B{r}"
        if seq == [5] + [3] * (r - 2) and r <= 4:
            return Kind.SPHERICAL, f"H{r}"
        if seq == [3, 4, 3]:
            return Kind.SPHERICAL, "F4"
        if seq == [4] + [3] * (r - 3) + [4]:
            return Kind.AFFINE, f"~C{r - 1}"
        if seq == [6, 3]:
            return Kind.AFFINE, "~G2"
        if seq == [3, 3, 4, 3]:
            return Kind.AFFINE, "~F4"
    return Kind.LARGE, ""


def _arms(M: CoxeterMatrix, center: int) -> list[list]:
    """Label sequences along each arm leaving a branch vertex."""
    arms = []
    for first in M.neighbors(center):
        labels = [M.m[center][first]]
        prev, cur = center, first
        while True:
            nxt = [w for w in M.neighbors(cur) if w != prev]
            if not nxt:
                break
            labels.append(M.m[cur][nxt[0]])
            prev, cur = cur, nxt[0]
        arms.append(labels)
    return arms


_SIMPLY_LACED_BRANCHED = {
    (1, 2, 2): (Kind.SPHERICAL, "E6"),
    (1, 2, 3): (Kind.SPHERICAL, "E7"),
    (1, 2, 4): (Kind.SPHERICAL, "E8"),
    (2, 2, 2): (Kind.AFFINE, "~E6"),
    (1, 3, 3): (Kind.AFFINE, "~E7"),
    (1, 2, 5): (Kind.AFFINE, "~E8"),
}


def _classify_connected(M: CoxeterMatrix) -> tuple[Kind, str]:
    r = M.rank
    if r == 1:
        return Kind.SPHERICAL, "A1"
    edges = M.edges()
    labels = [lab for _, _, lab in edges]
    if INF in labels:
        return (Kind.AFFINE, "~A1") if r == 2 else (Kind.LARGE, "")
    degrees = [M.degree(v) for v in range(r)]
    if len(edges) >= r:
        if len(edges) == r and all(d == 2 for d in degrees) and all(x == 3 for x in labels):
            return Kind.AFFINE, f"~A{r - 1}"
        return Kind.LARGE, ""
    # a tree from here on
    if max(degrees) <= 2:
        order = _path_order(M)
        return _classify_path([M.m[a][b] for a, b in zip(order, order[1:])])
    branch = [v for v in range(r) if degrees[v] >= 3]
    if len(branch) == 1 and degrees[branch[0]] == 3:
        arms = _arms(M, branch[0])
        lengths = tuple(sorted(len(a) for a in arms))
        if all(x == 3 for x in labels):
            if lengths[:2] == (1, 1):
                return Kind.SPHERICAL, f"D{r}"
            return _SIMPLY_LACED_BRANCHED.get(lengths, (Kind.LARGE, ""))
        odd = [x for x in labels if x != 3]
        if odd == [4]:
            short = [a for a in arms if len(a) == 1 and a[0] == 3]
            long_arm = [a for a in arms if 4 in a]
            if len(short) >= 2 and long_arm and long_arm[0][-1] == 4:
                return Kind.AFFINE, f"~B{r - 1}"
        return Kind.LARGE, ""
    if all(x == 3 for x in labels):
        if r == 5 and sorted(degrees) == [1, 1, 1, 1, 4]:
            return Kind.AFFINE, "~D4"
        if len(branch) == 2 and all(degrees[v] == 3 for v in branch):
            leaves = [v for v in range(r) if degrees[v] == 1]
            if len(leaves) == 4 and all(M.neighbors(v)[0] in branch for v in leaves):
                return Kind.AFFINE, f"~D{r - 1}"
    return Kind.LARGE, ""


def classify(M: CoxeterMatrix) -> GroupClass:
    """Spherical / affine / large, per irreducible component.

    The overall kind is Large if any component is large, otherwise Affine if
    any component is affine (the group is then infinite and virtually
    abelian), otherwise Spherical.
    """
    comps = []
    for comp in components(M):
        kind, name = _classify_connected(M.submatrix(comp))
        comps.append(ComponentClass(tuple(comp), kind, name))
    kinds = {c.kind for c in comps}
    if Kind.LARGE in kinds:
        overall = Kind.LARGE
    elif Kind.AFFINE in kinds:
        overall = Kind.AFFINE
    else:
        overall = Kind.SPHERICAL
    return GroupClass(overall, tuple(comps))


def is_large_irreducible(M: CoxeterMatrix) -> bool:
    gc = classify(M)
    return gc.is_irreducible and gc.kind is Kind.LARGE


def is_spherical(M: CoxeterMatrix) -> bool:
    return classify(M).kind is Kind.SPHERICAL


def is_quasi_lanner(M: CoxeterMatrix) -> bool:
    """Irreducible, large, and every maximal standard subgroup spherical or irreducible affine."""
    if not is_large_irreducible(M):
        return False
    for t in range(M.rank):
        rest = [i for i in range(M.rank) if i != t]
        gc = classify(M.submatrix(rest))
        if gc.kind is Kind.SPHERICAL:
            continue
        if gc.kind is Kind.AFFINE and gc.is_irreducible:
            continue
        return False
    return True


def _subsets_lex(n: int) -> Iterator[tuple[int, ...]]:
    stack = [((), 0)]
    while stack:
        prefix, start = stack.pop()
        for i in range(n - 1, start - 1, -1):
            stack.append((prefix + (i,), i + 1))
        if prefix:
            yield prefix


def find_quasi_lanner_subset(M: CoxeterMatrix) -> tuple[int, ...]:
    """Lexicographically least inclusion-minimal T with W_T irreducible and large.

    Such a T is quasi-Lannér.  A set is inclusion-minimal exactly when no
    T minus one element has a large component, since a large standard
    subgroup lies inside one component of any standard subgroup containing it.
    """
    if classify(M).kind is not Kind.LARGE:
        raise NotLarge("no irreducible component is large")
    for T in _subsets_lex(M.rank):
        sub = M.submatrix(T)
        if not is_large_irreducible(sub):
            continue
        if all(classify(sub.submatrix([k for k in range(len(T)) if k != t])).kind is not Kind.LARGE
               for t in range(len(T))):
            return T
    raise AssertionError("a large Coxeter group always has a quasi-Lannér standard subgroup")


# -- reflection subgroups ---------------------------------------------------

@dataclass(frozen=True)
class SubgroupEmbedding:
    """A reflection subgroup: its Coxeter matrix and generators as words in the parent."""

    new_matrix: CoxeterMatrix
    generator_words: tuple[Word, ...]
    index: int

    def __post_init__(self):
        if len(self.generator_words) != self.new_matrix.rank:
            raise ValueError("one generator word per new generator")
        if any(len(w) % 2 == 0 for w in self.generator_words):
            raise ValueError("reflection words have odd length")


def identity_embedding(M: CoxeterMatrix) -> SubgroupEmbedding:
    return SubgroupEmbedding(M, tuple((i,) for i in range(M.rank)), 1)


def free_reduce(word: Sequence[int]) -> Word:
    """Cancel adjacent repeated letters (generators are involutions)."""
    out: list[int] = []
    for letter in word:
        if out and out[-1] == letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def compose_words(outer: Sequence[Word], inner: Sequence[Word]) -> tuple[Word, ...]:
    """Rewrite words in a subgroup's generators as words in the ambient generators."""
    return tuple(free_reduce([x for letter in w for x in inner[letter]]) for w in outer)


def compose(outer: SubgroupEmbedding, inner: SubgroupEmbedding) -> SubgroupEmbedding:
    """``outer`` sits inside ``inner.new_matrix``; return it relative to inner's parent."""
    return SubgroupEmbedding(outer.new_matrix, compose_words(outer.generator_words, inner.generator_words),
                             outer.index * inner.index)


def reflection_subgroup_matrix(rep, words: Sequence[Sequence[int]]) -> CoxeterMatrix:
    """Coxeter matrix of the subgroup generated by the given reflection words.

    ``rep`` must be a faithful reflection representation of the parent group.
    Each pair's label is read off from the pairing p = alpha(w) beta(v) of
    the two reflections: p = 4cos^2(pi/m) for m in {2, 3, 4, 6}, and p >= 4
    means the product has infinite order.
    """
    from .cartan import label_from_pairing
    from .rational import dot
    from .represent import reflection_data

    data = [reflection_data(rep.evaluate(w)) for w in words]
    n = len(data)
    m = [[1] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            a_i, v_i = data[i]
            a_j, v_j = data[j]
            m[i][j] = m[j][i] = label_from_pairing(dot(a_i, v_j), dot(a_j, v_i))
    return validate(m)


def geometric_rep(M: CoxeterMatrix):
    """Reflection representation from the rational compatible Cartan matrix of M."""
    from .cartan import standard_cartan
    from .represent import rep_from_cartan

    return rep_from_cartan(standard_cartan(M), M)


def require_right_angled_irreducible(M: CoxeterMatrix):
    if not M.is_right_angled():
        raise NotRightAngled("all off-diagonal labels must be 2 or infinity")
    if M.rank < 3:
        raise RankTooSmall(f"rank {M.rank} < 3")
    if not M.is_irreducible():
        raise NotIrreducible("diagram is disconnected")


def double_tree_to_triangle(M: CoxeterMatrix) -> SubgroupEmbedding:
    """Index-2 reflection subgroup of the same rank whose diagram has a triangle.

    Takes the least leaf s_l, its neighbour s_a and the least other neighbour
    s_b of s_a; the new generators are s_l s_a s_l, s_a, s_b and then the
    remaining generators in index order.
    """
    require_right_angled_irreducible(M)
    if not M.is_tree():
        raise NotTree("diagram contains a cycle")
    leaf = min(v for v in range(M.rank) if M.degree(v) == 1)
    hub = M.neighbors(leaf)[0]
    third = min(w for w in M.neighbors(hub) if w != leaf)
    rest = [j for j in range(M.rank) if j not in (leaf, hub, third)]
    words = ((leaf, hub, leaf), (hub,), (third,)) + tuple((j,) for j in rest)
    return SubgroupEmbedding(reflection_subgroup_matrix(geometric_rep(M), words), words, 2)


def double_increase_rank(M: CoxeterMatrix, pivot: int) -> SubgroupEmbedding:
    """Index-2 reflection subgroup of rank n + deg(pivot) - 1.

    The kernel of the character sending the pivot to -1 and every other
    generator to 1; it is generated by the conjugates of the pivot's
    neighbours (in index order) followed by all non-pivot generators.
    """
    require_right_angled_irreducible(M)
    nbrs = M.neighbors(pivot)
    if len(nbrs) < 2:
        raise DegreeTooSmall(f"pivot {pivot} has degree {len(nbrs)} < 2")
    words = tuple((pivot, i, pivot) for i in nbrs) + tuple((j,) for j in range(M.rank) if j != pivot)
    return SubgroupEmbedding(reflection_subgroup_matrix(geometric_rep(M), words), words, 2)
