"""Built-in witnesses: explicit Cartan matrices and the Coxeter diagrams around them.

Indices are 0-based; facet s_i of the usual pictures is generator i - 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from types import MappingProxyType

from .cartan import CartanMatrix, validate as validate_cartan
from .coxeter import INF, CoxeterMatrix, from_edges, geometric_rep, reflection_subgroup_matrix


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    coxeter: CoxeterMatrix
    cartan: CartanMatrix | None = None
    expected: MappingProxyType = field(default_factory=lambda: MappingProxyType({}))
    matching: tuple[tuple[int, int], ...] | None = None  # T for the full-rank construction


def triangle_334() -> CoxeterMatrix:
    return from_edges(3, {(0, 1): 4, (0, 2): 3, (1, 2): 3})


def polygon_racg(n: int) -> CoxeterMatrix:
    """Reflections in the sides of a right-angled hyperbolic n-gon."""
    return from_edges(n, {(i, (i + 1) % n): INF for i in range(n)})


def prism_p1() -> CoxeterMatrix:
    """Triangular prism: ends s1, s2; side s3; the other two sides s4, s5."""
    return from_edges(5, {(0, 1): INF, (0, 2): 4, (1, 2): 4, (2, 3): 3, (2, 4): 3, (3, 4): 4})


def prism_q1() -> CoxeterMatrix:
    """Tetrahedron times interval: ends s1, s2; s3 meets both ends at angle pi/4."""
    return from_edges(6, {(0, 1): INF, (0, 2): 4, (1, 2): 4, (2, 3): 3,
                          (3, 4): 4, (4, 5): 3, (2, 5): 3})


def cube_family(p: int) -> CoxeterMatrix:
    """Rank-2p group whose chamber in the Davis complex is the p-cube."""
    if p < 2:
        raise ValueError("p >= 2")
    edges = {(0, 1): INF, (0, 2): 4, (1, 2): 4}
    for i in range(2, 2 * p - 1):
        # s_{i+1} - s_{i+2}: infinity after an odd-numbered facet, 3 after an even one
        edges[(i, i + 1)] = INF if i % 2 == 0 else 3
    return from_edges(2 * p, edges)


def incoherence(m: int) -> CoxeterMatrix:
    """Prism group with facet s adjoined m commuting copies s_1..s_m (rank 5 + m)."""
    if m < 1:
        raise ValueError("m >= 1")
    edges = {(0, 1): 4, (0, 2): 3, (1, 2): 3, (2, 3): 3}
    for extra in range(4, 5 + m):
        edges[(3, extra)] = INF
    return from_edges(5 + m, edges)


# -- the chamber chains P_k, Q_k, C_k ----------------------------------------

def chamber_word(j: int) -> tuple[int, ...]:
    """Element carrying the first chamber to the j-th one (j >= 1).

    Consecutive chambers are glued alternately across the walls of s2 and
    s1, starting with s2, so the word is s2 s1 s2 ... of length j - 1.
    """
    return tuple(1 if i % 2 == 0 else 0 for i in range(j - 1))


def _conj(u: tuple[int, ...], s: int) -> tuple[int, ...]:
    return u + (s,) + u[::-1]


def chain_words(k: int, n_base: int) -> tuple[tuple[int, ...], ...]:
    """Reflection words for the walls of k chambers glued along the s1/s2 ends.

    Generator 2 (the side meeting both ends) is copied once per chamber; the
    generators 3..n_base-1 commute with s1 and s2 and are shared.  Order:
    s1, far end, the k copies, then the shared generators.
    """
    if k < 1:
        raise ValueError("k >= 1")
    far = _conj(chamber_word(k), 1 if k % 2 == 1 else 0)
    copies = tuple(_conj(chamber_word(j), 2) for j in range(1, k + 1))
    return ((0,), far) + copies + tuple((s,) for s in range(3, n_base))


def _chain(base: CoxeterMatrix, k: int) -> CoxeterMatrix:
    return reflection_subgroup_matrix(geometric_rep(base), chain_words(k, base.rank))


def prism_family(k: int) -> CoxeterMatrix:
    """Coxeter matrix of the polytope P_k (rank k + 4), an index-k subgroup of P_1's group."""
    return _chain(prism_p1(), k)


def q_family(k: int) -> CoxeterMatrix:
    """Coxeter matrix of Q_k (rank k + 5)."""
    return _chain(prism_q1(), k)


def cube_chain(p: int, k: int) -> CoxeterMatrix:
    """Coxeter matrix of the chamber C_k of the cube family (rank 2p + k - 1)."""
    return _chain(cube_family(p), k)


def prism_matching(k: int) -> tuple[tuple[int, int], ...]:
    """The pairs T of infinity labels for P_k whose complement is Lanner or spherical.

    In P_k numbering: ends are 0 and 1, copies are 2..k+1.
    """
    if k % 2 == 1:
        pairs = [(0, 1)]
        lo, hi = 2, k + 1
        while lo < hi:
            pairs.append((lo, hi))
            lo, hi = lo + 1, hi - 1
        return tuple(pairs)
    pairs = [(0, k + 1)]
    lo, hi = 2, k
    while lo < hi:
        pairs.append((lo, hi))
        lo, hi = lo + 1, hi - 1
    pairs.append((1, (k + 4) // 2 - 1))
    return tuple(pairs)


# -- explicit matrices -------------------------------------------------------

KAC_VINBERG_3 = ((2, -1, -1), (-2, 2, -1), (-1, -1, 2))

PENTAGON_5 = (
    (2, -2, 0, 0, -1),
    (-4, 2, -2, 0, 0),
    (0, -4, 2, -2, 0),
    (0, 0, -4, 2, -2),
    (-12, 0, 0, -4, 2),
)

PRISM_5 = (
    (2, -3, -1, 0, 0),
    (-8, 2, -1, 0, 0),
    (-2, -2, 2, -1, -1),
    (0, 0, -1, 2, -1),
    (0, 0, -1, -2, 2),
)

FOUR_MANIFOLD_6 = (
    (2, -4, -1, 0, 0, 0),
    (-4, 2, -1, 0, 0, 0),
    (-2, -2, 2, -1, 0, -1),
    (0, 0, -1, 2, -1, 0),
    (0, 0, 0, -2, 2, -1),
    (0, 0, -1, 0, -1, 2),
)


def _entry(name, coxeter, cartan=None, matching=None, **expected):
    c = validate_cartan(cartan) if cartan is not None else None
    return CorpusEntry(name, coxeter, c, MappingProxyType(expected), matching)


@lru_cache(maxsize=None)
def _build() -> dict[str, CorpusEntry]:
    from .cartan import standard_cartan

    pent = polygon_racg(5)
    entries = [
        _entry("KacVinberg3", triangle_334(), KAC_VINBERG_3,
               rank=3, symmetrizable=False, integer_cyclic_products=True),
        _entry("Pentagon5", pent, PENTAGON_5,
               rank=4, symmetrizable=False, integer_cyclic_products=True),
        _entry("PentagonTits", pent, standard_cartan(pent).a,
               rank=5, symmetrizable=True, integer_cyclic_products=True),
        _entry("Prism5", prism_p1(), PRISM_5, matching=((0, 1),),
               rank=4, symmetrizable=False, integer_cyclic_products=True),
        _entry("FourManifold6", prism_q1(), FOUR_MANIFOLD_6, matching=((0, 1),),
               rank=5, symmetrizable=False, integer_cyclic_products=True),
        _entry("PrismP2", prism_family(2), matching=prism_matching(2), kind="Large"),
        _entry("PrismP3", prism_family(3), matching=prism_matching(3), kind="Large"),
        _entry("PrismQ2", q_family(2), kind="Large"),
        _entry("Cube4", cube_family(4), kind="Large"),
        _entry("Incoherence1", incoherence(1), kind="Large"),
        _entry("Incoherence2", incoherence(2), kind="Large"),
    ]
    return {e.name: e for e in entries}


def corpus() -> MappingProxyType:
    """Read-only mapping from entry name to CorpusEntry."""
    return MappingProxyType(_build())
