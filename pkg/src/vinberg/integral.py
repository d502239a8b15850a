"""Invariant lattices and integral conjugates of rational reflection groups.

A rational representation whose cyclic products are integers preserves the
lattice spanned by the orbit of the standard lattice.  That lattice is
found by saturation: L -> L + sum_s rho(s) L, kept in Hermite normal form
so the fixed point is recognised by plain comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

from . import rational as Q
from .cartan import DEFAULT_CYCLE_BUDGET, cyclic_products
from .errors import CyclicProductObstruction, InvalidInput, NoConvergence, NotIrreducible
from .represent import ReflectionRep, is_irreducible, verify_relations

DEFAULT_MAX_ITERS = 64
DENOMINATOR_LIMIT = 2**1024


def hnf_columns(cols: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """Column Hermite normal form of the integer lattice spanned by ``cols``.

    Returns n columns h_0..h_{n-1} forming an upper-triangular matrix with
    positive diagonal, where each entry right of a pivot lies in [0, pivot).
    Raises InvalidInput if the columns do not span a full-rank lattice.
    """
    pool = [list(c) for c in cols if any(c)]
    pivots: list[list[int] | None] = [None] * n
    for i in range(n - 1, -1, -1):
        while True:
            live = [c for c in pool if c[i] != 0]
            if len(live) <= 1:
                break
            p = min(live, key=lambda c: abs(c[i]))
            for c in live:
                if c is p:
                    continue
                q = c[i] // p[i]
                for r in range(i + 1):
                    c[r] -= q * p[r]
            pool = [c for c in pool if any(c[: i + 1])]
        live = [c for c in pool if c[i] != 0]
        if not live:
            raise InvalidInput("columns do not span a full-rank lattice")
        p = live[0]
        pool = [c for c in pool if c is not p]
        if p[i] < 0:
            p = [-x for x in p]
        pivots[i] = p
    h = [list(p) for p in pivots]  # h[j] is column j
    for i in range(n - 1, -1, -1):
        piv = h[i][i]
        for j in range(i + 1, n):
            q = h[j][i] // piv
            if q:
                for r in range(i + 1):
                    h[j][r] -= q * h[i][r]
    return h


@dataclass(frozen=True)
class Lattice:
    """Full-rank lattice in Q^n; the columns of ``basis`` are in Hermite normal form."""

    dim: int
    basis: Q.Matrix
    denominator: int

    @classmethod
    def spanned_by(cls, columns: Sequence[Sequence[Fraction]], n: int) -> "Lattice":
        d = Q.common_denominator(x for c in columns for x in c)
        ints = [[int(x * d) for x in c] for c in columns]
        h = hnf_columns(ints, n)
        basis = tuple(tuple(Fraction(h[j][i], d) for j in range(n)) for i in range(n))
        return cls(n, basis, Q.common_denominator(x for row in basis for x in row))

    @classmethod
    def standard(cls, n: int) -> "Lattice":
        return cls(n, Q.identity(n), 1)

    def columns(self) -> list[Q.Vector]:
        return [tuple(self.basis[i][j] for i in range(self.dim)) for j in range(self.dim)]

    def image(self, g: Q.Matrix) -> "Lattice":
        return Lattice.spanned_by([Q.matvec(g, c) for c in self.columns()], self.dim)

    def is_invariant(self, gens: Sequence[Q.Matrix]) -> bool:
        return all(self.image(g) == self for g in gens)


@dataclass(frozen=True)
class SaturationResult:
    lattice: Lattice
    iterations: int


def invariant_lattice(rep: ReflectionRep, max_iters: int = DEFAULT_MAX_ITERS,
                      check_irreducible: bool = True) -> SaturationResult:
    """Smallest lattice containing Z^n and preserved by every generator.

    ``iterations`` counts saturation passes, the last being the one that
    changed nothing (so an integral representation converges at 1).
    """
    if check_irreducible and not is_irreducible(rep):
        raise NotIrreducible("saturation is only guaranteed for irreducible representations")
    n = rep.dim
    lat = Lattice.standard(n)
    for it in range(1, max_iters + 1):
        cols = lat.columns()
        grown = list(cols)
        for g in rep.generators:
            grown.extend(Q.matvec(g, c) for c in cols)
        new = Lattice.spanned_by(grown, n)
        if new == lat:
            assert lat.is_invariant(rep.generators)
            return SaturationResult(lat, it)
        if new.denominator > DENOMINATOR_LIMIT:
            raise NoConvergence(f"denominators exceed 2^1024 after {it} iterations", it)
        lat = new
    raise NoConvergence(f"no fixed point after {max_iters} iterations", max_iters)


@dataclass(frozen=True)
class IntegralizationResult:
    change_of_basis: Q.Matrix
    integer_generators: tuple[tuple[tuple[int, ...], ...], ...]
    iterations: int
    rep: ReflectionRep  # the conjugated representation, root data rescaled by primitive_roots


def conjugate(rep: ReflectionRep, p: Q.Matrix) -> ReflectionRep:
    """The representation P^-1 rho P, with alpha -> alpha P and v -> P^-1 v."""
    p_inv = Q.inverse(p)
    return ReflectionRep.from_roots([Q.vecmat(a, p) for a in rep.alphas],
                                    [Q.matvec(p_inv, v) for v in rep.vs], rep.coxeter)


def primitive_roots(rep: ReflectionRep) -> ReflectionRep:
    """Rescale each (alpha, v) by a positive factor so that v is a primitive integer vector.

    The generators do not change.  When they are integral, alpha becomes
    integral as well, and so does the Cartan matrix.
    """
    alphas, vs = [], []
    for a, v in zip(rep.alphas, rep.vs):
        d = Q.common_denominator(v)
        g = reduce(gcd, (int(x * d) for x in v), 0)
        c = Fraction(d, g)
        vs.append(tuple(x * c for x in v))
        alphas.append(tuple(x / c for x in a))
    return ReflectionRep.from_roots(alphas, vs, rep.coxeter)


def conjugate_to_integers(rep: ReflectionRep, max_iters: int = DEFAULT_MAX_ITERS,
                          cycle_budget: int = DEFAULT_CYCLE_BUDGET) -> IntegralizationResult:
    # an integral Cartan matrix has integral cyclic products; skip the enumeration
    if not rep.cartan.is_integral():
        report = cyclic_products(rep.cartan, budget=cycle_budget)
        if not report.all_integer:
            cycle, value = report.witness
            raise CyclicProductObstruction(f"cyclic product {Q.fmt(value)} along {list(cycle)} is not an integer",
                                           cycle, value)
    sat = invariant_lattice(rep, max_iters)
    p = sat.lattice.basis
    conj = primitive_roots(conjugate(rep, p))
    ints = []
    for g in conj.generators:
        if not Q.is_integral(g) or Q.det(g) != -1:
            raise AssertionError("conjugated generator is not an integer reflection")
        ints.append(tuple(tuple(int(x) for x in row) for row in g))
    if rep.coxeter is not None:
        verify_relations(conj)
    return IntegralizationResult(p, tuple(ints), sat.iterations, conj)
