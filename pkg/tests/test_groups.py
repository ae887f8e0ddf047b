"""Group machinery: spec examples plus brute-force oracles."""

import pytest

from multinorm.errors import BadIndex, NonBijective, NotNormal, OrderBound, ParentMismatch
from multinorm.groups import (
    FiniteGroup,
    Subgroup,
    all_subgroups,
    cyclic_subgroups,
    derived_subgroup,
    group_from_permutations,
    left_cosets,
    normal_core,
    normalizer,
    quotient_group,
    subgroup_as_group,
    subgroup_closure,
    subgroup_intersection,
    subgroup_join,
    trivial_subgroup,
    whole_subgroup,
)


def d4():
    return group_from_permutations(4, [[[0, 1, 2, 3]], [[0, 2]]])


def a4():
    return group_from_permutations(4, [[[0, 1, 2]], [[0, 1], [2, 3]]])


def klein4():
    return group_from_permutations(4, [[[0, 1]], [[2, 3]]])


def c4():
    return group_from_permutations(4, [[[0, 1, 2, 3]]])


def s3():
    return group_from_permutations(3, [[[0, 1]], [[0, 1, 2]]])


def check_axioms(G):
    for a in G.elements():
        assert G.mul[0][a] == a == G.mul[a][0]
        assert G.mul[a][G.inv[a]] == 0 == G.mul[G.inv[a]][a]
    for a in G.elements():
        for b in G.elements():
            for c in G.elements():
                assert G.mul[G.mul[a][b]][c] == G.mul[a][G.mul[b][c]]


def test_group_orders():
    assert d4().order == 8
    assert a4().order == 12
    assert group_from_permutations(1, []).order == 1
    assert klein4().order == 4
    assert s3().order == 6


def test_axioms_exhaustive():
    for G in (d4(), a4(), klein4(), c4(), s3()):
        check_axioms(G)


def test_canonical_ordering_is_generator_independent():
    G1 = group_from_permutations(4, [[[0, 1, 2, 3]], [[0, 2]]])
    G2 = group_from_permutations(4, [[[0, 2]], [[1, 3]], [[0, 1, 2, 3]]])
    assert G1.order == G2.order == 8
    assert G1.mul == G2.mul
    assert G1.perm_images == G2.perm_images


def test_bad_generators():
    with pytest.raises(NonBijective):
        group_from_permutations(3, [[0, 0, 1]])
    with pytest.raises(NonBijective):
        group_from_permutations(2, [[[0, 5]]])
    with pytest.raises(OrderBound):
        group_from_permutations(4, [[[0, 1, 2, 3]], [[0, 2]]], order_bound=4)


def test_subgroup_closure():
    G = a4()
    assert subgroup_closure(G, []).members == (0,)
    full = subgroup_closure(G, list(G.generator_indices))
    assert full.members == tuple(G.elements())
    three_cycle = next(g for g in G.elements() if G.element_order(g) == 3)
    assert subgroup_closure(G, [three_cycle]).order == 3
    with pytest.raises(BadIndex):
        subgroup_closure(G, [99])


def test_cyclic_subgroups_counts():
    # oracle: direct enumeration of <g> per element, deduplicated
    for G, expected in ((klein4(), 4), (c4(), 3), (d4(), 7)):
        oracle = set()
        for g in G.elements():
            mem, x = {0}, g
            while x != 0:
                mem.add(x)
                x = G.mul[x][g]
            oracle.add(tuple(sorted(mem)))
        got = cyclic_subgroups(G)
        assert {s.members for s in got} == oracle
        assert len(got) == expected
        assert got == sorted(got, key=lambda s: (len(s.members), s.members))


def test_normal_core():
    G = d4()
    refl = next(g for g in G.elements()
                if G.element_order(g) == 2 and not all(
                    G.mul[g][h] == G.mul[h][g] for h in G.elements()))
    H = subgroup_closure(G, [refl])
    # oracle: intersect all conjugates directly
    core = set(H.members)
    for g in G.elements():
        core &= {G.conjugate(g, h) for h in H.members}
    assert normal_core(G, H).members == tuple(sorted(core)) == (0,)

    A = a4()
    H3 = subgroup_closure(A, [next(g for g in A.elements()
                                   if A.element_order(g) == 3)])
    assert normal_core(A, H3).members == (0,)

    N = subgroup_closure(G, [G.mul[refl][refl]])  # trivial; normal
    assert normal_core(G, trivial_subgroup(G)).members == (0,)
    center = [g for g in G.elements() if all(
        G.mul[g][h] == G.mul[h][g] for h in G.elements())]
    Z = Subgroup(parent=G, members=tuple(sorted(center)))
    assert normal_core(G, Z).members == Z.members


def test_join_and_intersection():
    A = a4()
    threes = [g for g in A.elements() if A.element_order(g) == 3]
    H1 = subgroup_closure(A, [threes[0]])
    H2 = next(subgroup_closure(A, [t]) for t in threes
              if subgroup_closure(A, [t]).members != H1.members)
    assert subgroup_join(A, H1, H2).order == 12  # <two 3-cycles> = A4
    assert subgroup_join(A, H1, trivial_subgroup(A)).members == H1.members

    V = klein4()
    a, b = [g for g in V.elements() if g != 0][:2]
    assert subgroup_join(V, subgroup_closure(V, [a]),
                         subgroup_closure(V, [b])).order == 4

    G = d4()
    r = next(g for g in G.elements() if G.element_order(g) == 4)
    s = next(g for g in G.elements() if G.element_order(g) == 2
             and g not in subgroup_closure(G, [r]).members)
    R = subgroup_closure(G, [r])
    S = subgroup_closure(G, [s])
    assert subgroup_intersection(R, S).members == (0,)
    assert subgroup_intersection(R, R).members == R.members
    assert subgroup_intersection(R, trivial_subgroup(G)).members == (0,)
    with pytest.raises(ParentMismatch):
        subgroup_intersection(R, trivial_subgroup(a4()))


def test_lattice_absorption():
    G = d4()
    subs = all_subgroups(G)
    for A in subs:
        for B in subs:
            assert subgroup_join(
                G, A, subgroup_intersection(A, B)).members == A.members
            assert subgroup_intersection(
                A, subgroup_join(G, A, B)).members == A.members


def test_quotient_group():
    G = d4()
    center = Subgroup(parent=G, members=tuple(sorted(
        g for g in G.elements()
        if all(G.mul[g][h] == G.mul[h][g] for h in G.elements()))))
    assert center.order == 2
    Q = quotient_group(G, center)
    assert Q.quotient.order == 4
    assert all(Q.quotient.element_order(x) in (1, 2)
               for x in Q.quotient.elements())
    for g in G.elements():
        for h in G.elements():
            assert Q.projection[G.mul[g][h]] == \
                Q.quotient.mul[Q.projection[g]][Q.projection[h]]
    for x in Q.quotient.elements():
        assert Q.projection[Q.section[x]] == x

    QG = quotient_group(G, whole_subgroup(G))
    assert QG.quotient.order == 1
    QE = quotient_group(G, trivial_subgroup(G))
    assert QE.quotient.order == G.order

    refl = next(g for g in G.elements() if G.element_order(g) == 2
                and g not in center.members)
    with pytest.raises(NotNormal):
        quotient_group(G, subgroup_closure(G, [refl]))


def test_derived_subgroup():
    assert derived_subgroup(klein4()).members == (0,)
    G = d4()
    D = derived_subgroup(G)
    center = tuple(sorted(g for g in G.elements() if all(
        G.mul[g][h] == G.mul[h][g] for h in G.elements())))
    assert D.members == center and D.order == 2
    A = a4()
    DA = derived_subgroup(A)
    # oracle: closure of the explicit commutator set
    comms = {A.commutator(a, b) for a in A.elements() for b in A.elements()}
    assert DA.members == subgroup_closure(A, sorted(comms)).members
    assert DA.order == 4
    Q = quotient_group(G, derived_subgroup(G))
    assert Q.quotient.is_abelian()


def test_normalizer():
    G = d4()
    N = subgroup_closure(G, [G.mul[0][0]])
    assert normalizer(G, trivial_subgroup(G)).order == G.order
    center = derived_subgroup(G)
    assert normalizer(G, center).order == G.order
    refl = next(g for g in G.elements() if G.element_order(g) == 2
                and g not in center.members)
    H = subgroup_closure(G, [refl])
    # oracle: direct check
    oracle = [g for g in G.elements()
              if {G.conjugate(g, h) for h in H.members} == set(H.members)]
    NH = normalizer(G, H)
    assert list(NH.members) == oracle
    assert NH.order == 4
    assert NH.contains(H)


def test_coset_counting():
    for G in (d4(), a4(), s3()):
        for H in all_subgroups(G):
            cosets = left_cosets(G, H)
            assert len(cosets) * H.order == G.order
            assert sorted(x for c in cosets for x in c) == list(G.elements())


def test_subgroup_as_group():
    G = a4()
    for H in all_subgroups(G):
        K = subgroup_as_group(H)
        check_axioms(K)
        assert K.order == H.order
        for i, gi in enumerate(H.members):
            for j, gj in enumerate(H.members):
                assert H.members[K.mul[i][j]] == G.mul[gi][gj]


def test_all_subgroups_counts():
    assert len(all_subgroups(d4())) == 10
    assert len(all_subgroups(a4())) == 10
    assert len(all_subgroups(klein4())) == 5
    assert len(all_subgroups(s3())) == 6
