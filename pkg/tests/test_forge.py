import itertools

import pytest
import sympy

from vinberg import rational as Q
from vinberg.cartan import cycle_product, four_cos2, reverse_cycle_product, validate
from vinberg.corpus import (
    corpus,
    polygon_racg,
    prism_family,
    prism_matching,
    prism_p1,
    prism_q1,
    triangle_334,
)
from vinberg.coxeter import INF, from_edges
from vinberg.errors import (
    BadLabels,
    ComplementNotAdmissible,
    IsTree,
    NoInfinitePairInK,
    NoSuitableCycle,
    NotRightAngled,
    RankGapTooSmall,
    TargetTooSmall,
)
from vinberg.forge import (
    cycle_inequality,
    forge_general,
    forge_racg_spanning_tree,
    forge_rank_bump,
    infinite_pair_in,
    pipeline_thin_embedding,
    spanning_tree_matrix,
    suitable_cycle,
)
from vinberg.represent import rep_from_cartan, restrict_to_subgroup, verify_relations

K4 = from_edges(4, {p: INF for p in itertools.combinations(range(4), 2)})
HEPTAGON_CHORD = from_edges(7, {**{(i, (i + 1) % 7): INF for i in range(7)}, (0, 3): INF})


def to_sympy(a):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in a])


def reverify(out):
    """[DERIVED] recompute the four certificates without the cartan module."""
    a, M = out.cartan.a, out.coxeter
    n = len(a)
    for i, j in itertools.combinations(range(n), 2):
        m, p = M.m[i][j], a[i][j] * a[j][i]
        if m == 2:
            assert a[i][j] == a[j][i] == 0
        elif m == INF:
            assert p >= 4
        else:
            assert p == four_cos2(m) and a[i][j] < 0
    assert to_sympy(a).rank() == out.certificates["rank"]
    # symmetrizable iff t_i a_ij = t_j a_ji has a one-dimensional solution space (connected support)
    rows = []
    for i, j in itertools.combinations(range(n), 2):
        if a[i][j] != 0:
            r = [0] * n
            r[i], r[j] = a[i][j], -a[j][i]
            rows.append(r)
    assert (len(to_sympy(rows).nullspace()) == 0) == out.certificates["non_symmetrizable"]
    assert all(x.denominator == 1 for row in a for x in row)
    return out.certificates


@pytest.mark.parametrize("M", [polygon_racg(5), K4, polygon_racg(7), HEPTAGON_CHORD],
                         ids=["pentagon", "K4", "heptagon", "heptagon+chord"])
def test_spanning_tree_forge(M):
    out = forge_racg_spanning_tree(M)
    certs = reverify(out)
    assert certs == {"compatible": True, "non_symmetrizable": True, "rank": M.rank,
                     "integer_cyclic_products": True}
    # the parameter is the least one giving a nonsingular matrix
    for t in range(1, out.parameter):
        assert Q.det(spanning_tree_matrix(M, t).a) == 0
    assert forge_racg_spanning_tree(M).parameter == out.parameter


def test_spanning_tree_preconditions():
    with pytest.raises(IsTree):
        forge_racg_spanning_tree(from_edges(3, {(0, 1): INF, (1, 2): INF}))
    with pytest.raises(NotRightAngled):
        forge_racg_spanning_tree(triangle_334())


def test_general_forge_on_prism():  # Fig-3 prism, T = {(s1, s2)}
    out = forge_general(prism_p1(), [(0, 1)])
    certs = reverify(out)
    assert certs["rank"] == 5 and certs["non_symmetrizable"] and certs["compatible"]
    against, along = cycle_inequality(out)
    assert against > along
    c = out.cycle
    assert against == abs(reverse_cycle_product(out.cartan, c))
    assert along == abs(cycle_product(out.cartan, c))


def test_general_forge_on_q1():
    out = forge_general(prism_q1(), [(0, 1)])
    assert reverify(out)["rank"] == 6


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_general_forge_on_prism_family(k):
    M = prism_family(k)
    out = forge_general(M, prism_matching(k))
    assert reverify(out)["rank"] == k + 4


def test_general_forge_preconditions():
    with pytest.raises(ComplementNotAdmissible):
        forge_general(prism_p1(), [(0, 2)])  # label 4, not infinity
    with pytest.raises(ComplementNotAdmissible):
        forge_general(prism_p1(), [(0, 1), (1, 0)])
    with pytest.raises(BadLabels):
        forge_general(from_edges(3, {(0, 1): 5, (1, 2): 3, (0, 2): 3}), [])
    with pytest.raises(NoSuitableCycle):
        forge_general(from_edges(3, {(0, 1): 3, (1, 2): 3, (0, 2): 3}), [])
    with pytest.raises(NoSuitableCycle):
        forge_general(prism_p1(), [(0, 1)], cycle=(0, 3, 4))


def test_suitable_cycle_prefers_finite_labels():
    assert suitable_cycle(prism_p1()) == (2, 3, 4)


def test_rank_bump():
    M = polygon_racg(5)
    entry = corpus()["Pentagon5"]
    from vinberg.coxeter import double_increase_rank
    from vinberg.represent import reduce_irreducible

    rep = reduce_irreducible(rep_from_cartan(entry.cartan, M))
    group = M
    while group.rank < 3 * rep.dim + 1:
        step = double_increase_rank(group, 0)
        rep = restrict_to_subgroup(rep, step)
        group = step.new_matrix
    out = forge_rank_bump(group, rep)
    assert reverify(out)["rank"] == rep.dim + 1
    with pytest.raises(RankGapTooSmall):
        forge_rank_bump(M, reduce_irreducible(rep_from_cartan(entry.cartan, M)))


def test_infinite_pair_helper():
    assert infinite_pair_in(polygon_racg(5), [0, 2, 3]) == (2, 3)
    with pytest.raises(NoInfinitePairInK):
        infinite_pair_in(polygon_racg(5), [0, 2])


def test_pipeline_to_dimension_six():
    stages = pipeline_thin_embedding(polygon_racg(5), 6)
    assert [s.dim for s in stages] == [5, 6]
    for s in stages:
        reverify(s.forge)
        assert all(Q.det(Q.matrix(g)) == -1 for g in s.integral.integer_generators)
        verify_relations(s.integral.rep)
        assert s.integral.rep.coxeter == s.embedding.new_matrix


def test_pipeline_small_target_uses_corpus():
    stages = pipeline_thin_embedding(polygon_racg(5), 4)
    assert [s.dim for s in stages] == [4]
    with pytest.raises(TargetTooSmall):
        pipeline_thin_embedding(polygon_racg(6), 3)


def test_pipeline_doubles_trees():
    stages = pipeline_thin_embedding(from_edges(3, {(0, 1): INF, (1, 2): INF}), 3)
    assert stages[0].embedding.index == 2
    assert stages[0].dim == 3
    assert validate(stages[0].forge.cartan).size == 3
