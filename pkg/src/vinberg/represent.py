"""Representations of Coxeter groups as linear reflection groups.

A representation is stored through its reflection data: generator s acts by
``Id - v_s alpha_s`` (column vector times row covector) with
``alpha_s(v_s) = 2``, and the Cartan matrix is ``a[s][t] = alpha_s(v_t)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from . import rational as Q
from .cartan import CartanMatrix, is_compatible
from .cartan import validate as validate_cartan
from .coxeter import INF, CoxeterMatrix, SubgroupEmbedding, is_large_irreducible
from .errors import (
    DegenerateRepresentation,
    Incompatible,
    InvalidInput,
    NotAReflection,
    NotIrreducible,
    NotLargeIrreducible,
    RankMismatch,
    RelationViolation,
)

DEFAULT_ORDER_CAP = 64


def reflection(alpha: Sequence[Fraction], v: Sequence[Fraction]) -> Q.Matrix:
    return Q.sub(Q.identity(len(v)), Q.outer(v, alpha))


@dataclass(frozen=True)
class ReflectionRep:
    dim: int
    generators: tuple[Q.Matrix, ...]
    alphas: tuple[Q.Vector, ...]
    vs: tuple[Q.Vector, ...]
    cartan: CartanMatrix
    coxeter: CoxeterMatrix | None = None

    def __post_init__(self):
        if self.dim < 2:
            raise DegenerateRepresentation("representations of dimension 1 are not supported")
        k = len(self.generators)
        if not (len(self.alphas) == len(self.vs) == self.cartan.size == k):
            raise InvalidInput("one alpha, one v and one Cartan row per generator")
        if self.coxeter is not None and self.coxeter.rank != k:
            raise RankMismatch(f"{k} generators for a Coxeter matrix of rank {self.coxeter.rank}")
        for s in range(k):
            a, v = self.alphas[s], self.vs[s]
            if len(a) != self.dim or len(v) != self.dim:
                raise InvalidInput(f"root data of generator {s} has the wrong length")
            if Q.dot(a, v) != 2:
                raise NotAReflection(f"alpha_{s}(v_{s}) = {Q.fmt(Q.dot(a, v))}, expected 2")
            if self.generators[s] != reflection(a, v):
                raise NotAReflection(f"generator {s} is not Id - v_{s} alpha_{s}")
            for t in range(k):
                if Q.dot(a, self.vs[t]) != self.cartan.a[s][t]:
                    raise InvalidInput(f"alpha_{s}(v_{t}) disagrees with the Cartan matrix")

    @classmethod
    def from_roots(cls, alphas, vs, coxeter: CoxeterMatrix | None = None) -> "ReflectionRep":
        alphas = tuple(Q.vector(a) for a in alphas)
        vs = tuple(Q.vector(v) for v in vs)
        if not alphas:
            raise InvalidInput("a representation needs at least one generator")
        if len(alphas) != len(vs) or any(len(x) != len(vs[0]) for x in alphas + vs):
            raise InvalidInput("root data must be one alpha and one v of equal length per generator")
        for s, (x, v) in enumerate(zip(alphas, vs)):
            if Q.dot(x, v) != 2:
                raise NotAReflection(f"alpha_{s}(v_{s}) = {Q.fmt(Q.dot(x, v))}, expected 2")
        a = [[Q.dot(x, v) for v in vs] for x in alphas]
        return cls(len(vs[0]), tuple(reflection(x, v) for x, v in zip(alphas, vs)),
                   alphas, vs, validate_cartan(a), coxeter)

    @property
    def size(self) -> int:
        return len(self.generators)

    def evaluate(self, word: Sequence[int]) -> Q.Matrix:
        """rho(w_0) rho(w_1) ... rho(w_k)."""
        out = Q.identity(self.dim)
        for s in word:
            out = Q.matmul(out, self.generators[s])
        return out

    def is_integral(self) -> bool:
        return all(Q.is_integral(g) for g in self.generators)


def rep_from_cartan(A: CartanMatrix, M: CoxeterMatrix) -> ReflectionRep:
    """The |S|-dimensional representation with v_s = e_s and alpha_s = row s of A."""
    if A.size != M.rank:
        raise RankMismatch(f"Cartan size {A.size} vs Coxeter rank {M.rank}")
    report = is_compatible(A, M)
    if not report:
        bad = report.failures()[0]
        raise Incompatible(f"pair ({bad.i}, {bad.j}): product {Q.fmt(bad.product)} does not fit label {bad.label}")
    if not is_large_irreducible(M):
        raise NotLargeIrreducible("the Coxeter group must be irreducible and large")
    n = A.size
    vs = tuple(Q.identity(n))
    return ReflectionRep(n, tuple(reflection(A.a[s], vs[s]) for s in range(n)),
                         tuple(A.a), vs, A, M)


def reflection_data(g: Q.Matrix) -> tuple[Q.Vector, Q.Vector]:
    """Write a reflection as Id - v alpha; return (alpha, v).

    The scaling is fixed by making the first nonzero column of Id - g equal
    to v; only products alpha(w) beta(v) are meaningful anyway.
    """
    n = len(g)
    d = Q.sub(Q.identity(n), g)
    if Q.rank(d) != 1:
        raise NotAReflection("Id - g does not have rank 1")
    j = next(c for c in range(n) if any(d[r][c] for r in range(n)))
    v = tuple(d[r][j] for r in range(n))
    i = next(r for r in range(n) if v[r] != 0)
    alpha = tuple(x / v[i] for x in d[i])
    if Q.dot(alpha, v) != 2:
        raise NotAReflection("g is a transvection or a dilation, not an involution")
    return alpha, v


# -- invariant subspaces ----------------------------------------------------

@dataclass(frozen=True)
class InvariantSubspaces:
    v_span_basis: tuple[Q.Vector, ...]
    alpha_kernel_basis: tuple[Q.Vector, ...]

    @property
    def dim_v_span(self) -> int:
        return len(self.v_span_basis)

    @property
    def dim_alpha_kernel(self) -> int:
        return len(self.alpha_kernel_basis)


def invariant_subspaces(rep: ReflectionRep) -> InvariantSubspaces:
    v_span = tuple(Q.span_basis(rep.vs))
    kernel = tuple(Q.nullspace(tuple(rep.alphas), n_cols=rep.dim))
    for basis in (v_span, kernel):
        span = Q.IncrementalSpan(rep.dim)
        for b in basis:
            span.add(b)
        for g in rep.generators:
            assert all(span.contains(Q.matvec(g, b)) for b in basis)
    return InvariantSubspaces(v_span, kernel)


def is_irreducible(rep: ReflectionRep) -> bool:
    sub = invariant_subspaces(rep)
    return sub.dim_v_span == rep.dim and sub.dim_alpha_kernel == 0


def reduce_irreducible(rep: ReflectionRep) -> ReflectionRep:
    """The representation on V_v / (V_alpha cap V_v).

    The quotient basis is the image of v_s for the greedily chosen s (in
    index order) that extend a basis of V_alpha cap V_v to one of V_v.
    """
    sub = invariant_subspaces(rep)
    vb = sub.v_span_basis
    # x = sum c_k vb_k lies in V_alpha iff alpha_s(x) = 0 for all s
    pair = tuple(tuple(Q.dot(a, b) for b in vb) for a in rep.alphas)
    inter = [tuple(sum((c * b[r] for c, b in zip(coeffs, vb)), Q.ZERO) for r in range(rep.dim))
             for coeffs in Q.nullspace(pair, n_cols=len(vb))]
    span = Q.IncrementalSpan(rep.dim)
    for w in inter:
        span.add(w)
    chosen = []
    for v in rep.vs:
        if span.add(v):
            chosen.append(v)
    full = inter + chosen
    r = len(chosen)
    if r < 2:
        raise DegenerateRepresentation(f"irreducible quotient has dimension {r}")
    k0 = len(inter)
    new_vs = tuple(Q.coordinates(full, v)[k0:] for v in rep.vs)
    new_alphas = tuple(tuple(Q.dot(a, b) for b in chosen) for a in rep.alphas)
    return ReflectionRep.from_roots(new_alphas, new_vs, rep.coxeter)


# -- relations --------------------------------------------------------------

@dataclass(frozen=True)
class RelationReport:
    orders: dict  # (s, t) -> observed order, INF if none up to the cap
    order_cap: int


def _order(g: Q.Matrix, cap: int):
    # g = G / d with G integral: g^k = Id iff G^k = d^k Id, and integer products are cheap
    d = Q.common_denominator(x for row in g for x in row)
    G = [[int(x * d) for x in row] for row in g]
    n = len(G)
    cols = list(zip(*G))
    power, scale = G, d
    for k in range(1, cap + 1):
        if all(power[i][j] == (scale if i == j else 0) for i in range(n) for j in range(n)):
            return k
        power = [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in power]
        scale *= d
    return INF


def verify_relations(rep: ReflectionRep, order_cap: int = DEFAULT_ORDER_CAP,
                     coxeter: CoxeterMatrix | None = None) -> RelationReport:
    """Check rho(s)^2 = Id and that each rho(s) rho(t) has exactly the order m_st.

    Infinite labels are checked up to ``order_cap``.
    """
    M = coxeter if coxeter is not None else rep.coxeter
    if M is None:
        raise InvalidInput("no Coxeter matrix to check against")
    if M.rank != rep.size:
        raise RankMismatch(f"{rep.size} generators vs rank {M.rank}")
    ident = Q.identity(rep.dim)
    for s, g in enumerate(rep.generators):
        if Q.is_identity(g):
            raise RelationViolation(f"rho({s}) is the identity", (s, s), 1)
        if Q.matmul(g, g) != ident:
            raise RelationViolation(f"rho({s})^2 != Id", (s, s), 2)
    orders = {}
    for s in range(rep.size):
        for t in range(s + 1, rep.size):
            m = M.m[s][t]
            prod = Q.matmul(rep.generators[s], rep.generators[t])
            cap = order_cap if m == INF else m
            found = _order(prod, cap)
            if found != m:
                power = found if found != INF else m
                raise RelationViolation(
                    f"(rho({s}) rho({t})) has order {found}, label is {m}", (s, t), power)
            orders[(s, t)] = found
    return RelationReport(orders, order_cap)


# -- invariant forms and absolute irreducibility ----------------------------

def invariant_symmetric_forms(rep: ReflectionRep) -> list[Q.Matrix]:
    """Basis of the symmetric B with g^T B g = B for every generator g.

    For g = Id - v alpha one has
    g^T B g - B = -alpha^T (Bv)^T - (Bv) alpha + (v^T B v) alpha^T alpha,
    which is linear in B; the basis comes from one exact nullspace.
    """
    n = rep.dim
    slots = [(i, j) for i in range(n) for j in range(i, n)]
    columns = []
    for i, j in slots:
        e = [[Q.ZERO] * n for _ in range(n)]
        e[i][j] = e[j][i] = Q.ONE
        col = []
        for a, v in zip(rep.alphas, rep.vs):
            u = [sum((e[r][c] * v[c] for c in range(n)), Q.ZERO) for r in range(n)]
            q = Q.dot(v, u)
            for r in range(n):
                for c in range(r, n):
                    col.append(-a[r] * u[c] - u[r] * a[c] + q * a[r] * a[c])
        columns.append(col)
    system = Q.transpose(tuple(tuple(c) for c in columns))
    forms = []
    for coeffs in Q.nullspace(system, n_cols=len(slots)):
        b = [[Q.ZERO] * n for _ in range(n)]
        for (i, j), c in zip(slots, coeffs):
            b[i][j] = b[j][i] = c
        forms.append(tuple(tuple(row) for row in b))
    return forms


def preserves_form(rep: ReflectionRep, b: Q.Matrix) -> bool:
    return all(Q.matmul(Q.matmul(Q.transpose(g), b), g) == b for g in rep.generators)


def algebra_dimension(rep: ReflectionRep, word_cap: int | None = None) -> int:
    """Dimension of the span of all products of at most word_cap generators."""
    n = rep.dim
    cap = 2 * n * n if word_cap is None else word_cap
    flat = lambda m: [x for row in m for x in row]  # noqa: E731
    span = Q.IncrementalSpan(n * n)
    ident = Q.identity(n)
    span.add(flat(ident))
    frontier = [ident]
    for _ in range(cap):
        if span.dim == n * n or not frontier:
            break
        new = []
        for f in frontier:
            for g in rep.generators:
                p = Q.matmul(f, g)
                if span.add(flat(p)):
                    new.append(p)
        frontier = new
    return span.dim


def absolute_irreducibility_certificate(rep: ReflectionRep, word_cap: int | None = None) -> bool:
    """True when products of generators span all n x n matrices.

    False only means the certificate was not found within the cap.
    """
    return algebra_dimension(rep, word_cap) == rep.dim ** 2


class VerdictKind(str, Enum):
    ORTHOGONAL = "OrthogonalGroup"
    SPECIAL_LINEAR = "SpecialLinearPM"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class ClosureVerdict:
    kind: VerdictKind
    form: Q.Matrix | None = None
    reason: str = ""


def closure_verdict(rep: ReflectionRep, word_cap: int | None = None) -> ClosureVerdict:
    """Zariski closure of the image: O_f(V) if a symmetric form survives, else SL^pm(V)."""
    if rep.coxeter is not None and not is_large_irreducible(rep.coxeter):
        raise NotLargeIrreducible("the Coxeter group must be irreducible and large")
    if not is_irreducible(rep):
        raise NotIrreducible("the representation is reducible; reduce it first")
    forms = invariant_symmetric_forms(rep)
    if forms:
        b = forms[0]
        assert Q.det(b) != 0 and preserves_form(rep, b)
        return ClosureVerdict(VerdictKind.ORTHOGONAL, b, "invariant symmetric form found")
    if rep.coxeter is None:
        return ClosureVerdict(VerdictKind.INDETERMINATE, None,
                              "no invariant form, but the group is not known to be large")
    if absolute_irreducibility_certificate(rep, word_cap):
        return ClosureVerdict(VerdictKind.SPECIAL_LINEAR, None,
                              "no invariant symmetric form; the image spans the full matrix algebra")
    return ClosureVerdict(VerdictKind.INDETERMINATE, None,
                          "no invariant form, and the matrix algebra was not spanned within the word cap")


# -- D(lambda) certificates -------------------------------------------------

@dataclass(frozen=True)
class PairingCertificate:
    words: tuple[tuple[int, ...], tuple[int, ...]]
    pairing: Fraction
    proximal: bool

    @property
    def quadratic(self) -> tuple[Fraction, Fraction, Fraction]:
        """Coefficients of x^2 - (p - 2) x + 1, whose roots are lambda and 1/lambda."""
        return (Fraction(1), -(self.pairing - 2), Fraction(1))


def dlambda_pairing(rep: ReflectionRep, w1: Sequence[int], w2: Sequence[int]) -> PairingCertificate:
    a, v = reflection_data(rep.evaluate(w1))
    b, w = reflection_data(rep.evaluate(w2))
    p = Q.dot(a, w) * Q.dot(b, v)
    return PairingCertificate((tuple(w1), tuple(w2)), p, p > 4)


def _reflection_words(rank: int, max_len: int):
    """Words u s u^-1 of length at most max_len, shortest first, u reduced."""
    words = [(s,) for s in range(rank)]
    seen = set(words)
    frontier = list(words)
    while frontier:
        nxt = []
        for w in frontier:
            for x in range(rank):
                if x == w[0]:
                    continue
                c = (x,) + w + (x,)
                if len(c) <= max_len and c not in seen:
                    seen.add(c)
                    nxt.append(c)
        words.extend(nxt)
        frontier = nxt
    return words


def find_proximal_pair(rep: ReflectionRep, max_len: int = 5) -> PairingCertificate | None:
    """Search conjugates of generators for two reflections with pairing > 4."""
    words = _reflection_words(rep.size, max_len)
    data = {}
    for j, w2 in enumerate(words):
        b, w = data[w2] = reflection_data(rep.evaluate(w2))
        for w1 in words[:j]:
            a, v = data[w1]
            p = Q.dot(a, w) * Q.dot(b, v)
            if p > 4:
                return PairingCertificate((w1, w2), p, True)
    return None


# -- restriction to reflection subgroups ------------------------------------

def _split_conjugate(word: Sequence[int]):
    k = len(word) // 2
    u, s, back = tuple(word[:k]), word[k], tuple(word[k + 1:])
    if back != u[::-1]:
        return None
    return u, s


def restrict_to_subgroup(rep: ReflectionRep, embedding: SubgroupEmbedding) -> ReflectionRep:
    """Restrict rep to a reflection subgroup given by palindromic words u s u^-1.

    The root data is transported: alpha' = alpha_s rho(u)^-1, v' = rho(u) v_s.
    If some off-diagonal pairing comes out positive, generators are re-signed
    (alpha, v) -> (-alpha, -v) to restore the sign conditions when possible.
    """
    alphas, vs = [], []
    for word in embedding.generator_words:
        split = _split_conjugate(word)
        if split is None:
            a, v = reflection_data(rep.evaluate(word))
        else:
            u, s = split
            a = Q.vecmat(rep.alphas[s], rep.evaluate(u[::-1]))
            v = Q.matvec(rep.evaluate(u), rep.vs[s])
        alphas.append(a)
        vs.append(v)
    k = len(alphas)
    pair = [[Q.dot(alphas[i], vs[j]) for j in range(k)] for i in range(k)]
    sign = _balance_signs(pair)
    alphas = [tuple(sign[i] * x for x in a) for i, a in enumerate(alphas)]
    vs = [tuple(sign[i] * x for x in v) for i, v in enumerate(vs)]
    return ReflectionRep.from_roots(alphas, vs, embedding.new_matrix)


def _balance_signs(pair) -> list[int]:
    k = len(pair)
    sign: dict[int, int] = {}
    for root in range(k):
        if root in sign:
            continue
        sign[root] = 1
        queue = deque([root])
        while queue:
            i = queue.popleft()
            for j in range(k):
                if j == i or pair[i][j] == 0:
                    continue
                want = sign[i] * (1 if pair[i][j] < 0 else -1)
                if j not in sign:
                    sign[j] = want
                    queue.append(j)
                elif sign[j] != want:
                    raise DegenerateRepresentation("no choice of root signs gives a Cartan matrix")
    return [sign[i] for i in range(k)]

