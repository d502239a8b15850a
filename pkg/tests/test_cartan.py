import itertools
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from vinberg import rational as Q
from vinberg.cartan import (
    CartanMatrix,
    CartanType,
    canonical_cycle,
    cartan_type,
    cycle_product,
    cyclic_products,
    equivalent,
    four_cos2,
    is_compatible,
    is_symmetrizable,
    label_from_pairing,
    labels_from_pairings,
    rank,
    reverse_cycle_product,
    simple_cycles,
    standard_cartan,
    validate,
)
from vinberg.corpus import KAC_VINBERG_3, PENTAGON_5, polygon_racg, triangle_334
from vinberg.coxeter import INF, from_edges
from vinberg.errors import (
    BadDiagonal,
    CycleBudgetExceeded,
    Decomposable,
    PositiveOffDiagonal,
    UnsupportedLabel,
    UnsupportedPairing,
    ZeroAsymmetry,
    ZeroPatternMismatch,
)

KV = validate(KAC_VINBERG_3)
PENT = validate(PENTAGON_5)

entry = st.fractions(min_value=-5, max_value=-Fraction(1, 3), max_denominator=3)


@st.composite
def cartan_matrices(draw, n_min=2, n_max=6, density=0.6):
    n = draw(st.integers(n_min, n_max))
    a = [[Fraction(2) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if draw(st.floats(0, 1)) < density:
                a[i][j] = draw(entry)
                a[j][i] = draw(entry)
    return validate(a)


def to_sympy(a):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in a])


# -- validation and compatibility ----------------------------------------------

@pytest.mark.parametrize("raw, exc", [
    ([[2, 1], [-1, 2]], PositiveOffDiagonal),
    ([[1, -1], [-1, 2]], BadDiagonal),
    ([[2, 0], [-1, 2]], ZeroAsymmetry),
])
def test_validate_rejects(raw, exc):
    with pytest.raises(exc):
        validate(raw)


def test_rational_strings_accepted():
    A = validate([["2", "-1/2"], ["-8", "2"]])
    assert A.a[0][1] == Fraction(-1, 2)


def test_kac_vinberg_compatible():  # [PAPER]
    assert is_compatible(KV, triangle_334())
    assert labels_from_pairings(KV) == triangle_334()


def test_pentagon_compatible():  # [PAPER]
    assert is_compatible(PENT, polygon_racg(5))


def test_incompatible_reports_the_pair():
    bad = validate([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])
    report = is_compatible(bad, triangle_334())
    assert not report
    assert [(p.i, p.j) for p in report.failures()] == [(0, 1)]


@pytest.mark.parametrize("m", [2, 3, 4, 6])
def test_four_cos2_matches_sympy(m):  # [DERIVED]
    assert four_cos2(m) == Fraction(str(sympy.nsimplify(4 * sympy.cos(sympy.pi / m) ** 2)))


def test_label_from_pairing():
    assert label_from_pairing(Fraction(-1), Fraction(-3)) == 6
    assert label_from_pairing(Fraction(-1), Fraction(-5)) == INF
    with pytest.raises(UnsupportedPairing):
        label_from_pairing(Fraction(-1), Fraction(-5, 2))
    with pytest.raises(UnsupportedPairing):
        label_from_pairing(Fraction(0), Fraction(-1))
    with pytest.raises(UnsupportedLabel):
        four_cos2(5)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 6).flatmap(lambda n: st.lists(st.sampled_from([2, 3, 4, 6, INF]),
                                                     min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2)))
def test_standard_cartan_is_compatible(labels):
    n = next(k for k in range(2, 7) if k * (k - 1) // 2 == len(labels))
    M = from_edges(n, dict(zip(itertools.combinations(range(n), 2), labels)))
    assert is_compatible(standard_cartan(M), M)


# -- symmetrizability ---------------------------------------------------------

def symmetrizable_oracle(A):
    """[DERIVED] t_i a_ij = t_j a_ji has a solution with no zero entry iff A is symmetrizable."""
    n = A.size
    rows = []
    for i, j in A.support_edges():
        r = [0] * n
        r[i], r[j] = A.a[i][j], -A.a[j][i]
        rows.append(r)
    if not rows:
        return True
    kernel = to_sympy(rows).nullspace()
    comps = len({frozenset(c) for c in _components(A)})
    return len(kernel) == comps


def _components(A):
    n = A.size
    adj = {i: {j for j in range(n) if j != i and A.a[i][j] != 0} for i in range(n)}
    comps, seen = [], set()
    for s in range(n):
        if s in seen:
            continue
        stack, comp = [s], set()
        while stack:
            v = stack.pop()
            if v in comp:
                continue
            comp.add(v)
            stack.extend(adj[v] - comp)
        seen |= comp
        comps.append(comp)
    return comps


@settings(max_examples=150, deadline=None)
@given(cartan_matrices())
def test_symmetrizable_matches_linear_algebra(A):
    sym = is_symmetrizable(A)
    assert bool(sym) == symmetrizable_oracle(A)
    if sym:
        t = sym.weights
        assert all(x > 0 for x in t)
        assert all(t[i] * A.a[i][j] == t[j] * A.a[j][i] for i in range(A.size) for j in range(A.size))
    else:
        c = sym.witness_cycle
        assert c == canonical_cycle(c)
        assert all(A.a[x][y] != 0 for x, y in zip(c, c[1:] + c[:1]))
        assert sym.forward == cycle_product(A, c) != reverse_cycle_product(A, c) == sym.reverse


@settings(max_examples=60, deadline=None)
@given(cartan_matrices(), st.lists(st.integers(1, 4), min_size=6, max_size=6))
def test_diagonal_conjugates_are_equivalent(A, ds):
    # symmetric S, then B = D S D^-1: symmetrizable, and equivalent to S with t_i/t_j = (d_i/d_j)^2
    n = A.size
    S = validate([[A.a[min(i, j)][max(i, j)] for j in range(n)] for i in range(n)])
    d = [Fraction(x) for x in ds[:n]]
    B = validate([[d[i] * S.a[i][j] / d[j] for j in range(n)] for i in range(n)])
    assert is_symmetrizable(S) and is_symmetrizable(B)
    t = equivalent(S, B)
    assert t is not None
    for i, j in S.support_edges():
        assert t[i] / t[j] == (d[i] / d[j]) ** 2


def test_equivalent_rejects_other_matrices():
    A = validate([[2, -1], [-1, 2]])
    B = validate([[2, -1], [-2, 2]])
    assert equivalent(A, B) is None
    with pytest.raises(ZeroPatternMismatch):
        equivalent(A, validate([[2, 0], [0, 2]]))


def test_kac_vinberg_witness():  # [PAPER] forward -1 vs reverse -2
    sym = is_symmetrizable(KV)
    assert not sym
    assert sym.witness_cycle == (0, 1, 2)
    assert (sym.forward, sym.reverse) == (-1, -2)


def test_pentagon_witness():  # [PAPER] 5-cycle -192 vs -256
    sym = is_symmetrizable(PENT)
    assert sym.witness_cycle == (0, 1, 2, 3, 4)
    assert (sym.forward, sym.reverse) == (-192, -256)


def test_canonical_cycle():
    assert canonical_cycle((3, 1, 2)) == (1, 2, 3)
    assert canonical_cycle((2, 0, 4, 1)) == (0, 2, 1, 4)
    assert canonical_cycle((1, 0)) == (0, 1)


# -- type and rank ------------------------------------------------------------

@settings(max_examples=120, deadline=None)
@given(cartan_matrices(density=0.8))
def test_rank_matches_sympy(A):  # [DERIVED]
    assert rank(A) == to_sympy(A.a).rank()


@settings(max_examples=120, deadline=None)
@given(cartan_matrices(density=0.8))
def test_type_matches_perron_root(A):  # [DERIVED] numeric Perron root of 2I - A
    assume(len(_components(A)) == 1)
    b = 2 * np.eye(A.size) - np.array([[float(x) for x in row] for row in A.a])
    rho = max(np.linalg.eigvals(b).real)
    assume(abs(2 - rho) > 1e-6)
    assert cartan_type(A) is (CartanType.POSITIVE if rho < 2 else CartanType.NEGATIVE)


def test_type_zero_on_affine():  # [TRIVIAL] the affine ~A2 matrix
    A = validate([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])
    assert cartan_type(A) is CartanType.ZERO
    assert cartan_type(validate([[2, -1], [-1, 2]])) is CartanType.POSITIVE
    assert cartan_type(KV) is CartanType.NEGATIVE
    with pytest.raises(Decomposable):
        cartan_type(validate([[2, 0], [0, 2]]))


def test_paper_ranks():  # [PAPER]
    assert rank(KV) == 3
    assert rank(PENT) == 4


# -- cycles -------------------------------------------------------------------

def brute_force_cycles(A, max_len):
    """[DERIVED] every simple cycle of the support graph, by permutations."""
    n = A.size
    out = set()
    for edge in A.support_edges():
        out.add(edge)
    for k in range(3, max_len + 1):
        for perm in itertools.permutations(range(n), k):
            if all(A.a[x][y] != 0 for x, y in zip(perm, perm[1:] + perm[:1])):
                out.add(canonical_cycle(perm))
    return sorted(out, key=lambda c: (len(c), c))


@settings(max_examples=80, deadline=None)
@given(cartan_matrices(n_max=6, density=0.7))
def test_simple_cycles_match_brute_force(A):
    assert simple_cycles(A) == brute_force_cycles(A, A.size)
    if A.size > 3:
        assert simple_cycles(A, max_len=3) == brute_force_cycles(A, 3)


def test_complete_graph_cycle_count():  # [DERIVED] K_n has sum_k C(n,k)(k-1)!/2 cycles of length >= 3
    n = 6
    A = validate([[2 if i == j else -1 for j in range(n)] for i in range(n)])
    from math import comb, factorial
    expected = comb(n, 2) + sum(comb(n, k) * factorial(k - 1) // 2 for k in range(3, n + 1))
    assert len(simple_cycles(A)) == expected
    with pytest.raises(CycleBudgetExceeded):
        simple_cycles(A, budget=20)


def test_cyclic_products_integrality():
    assert cyclic_products(KV).all_integer
    assert cyclic_products(PENT).all_integer
    half = validate([[2, "-3/4", -1], [-2, 2, -1], [-1, -1, 2]])
    report = cyclic_products(half)
    assert not report.all_integer
    assert report.witness == ((0, 1), Fraction(3, 2))


@settings(max_examples=60, deadline=None)
@given(cartan_matrices(n_max=5))
def test_cyclic_products_agree_with_symmetrizability(A):
    report = cyclic_products(A)
    assert (report.symmetrizable_witness is None) == bool(is_symmetrizable(A))
    for c in report.cycles:
        assert c.forward == cycle_product(A, c.cycle)
        assert c.reverse == reverse_cycle_product(A, c.cycle)


def test_transpose_and_submatrix():
    assert KV.transpose().a[0][1] == -2
    assert KV.submatrix([0, 2]).a == Q.matrix([[2, -1], [-1, 2]])
    assert isinstance(KV.submatrix([1]), CartanMatrix)
