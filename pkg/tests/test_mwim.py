import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from filaments.generators import gen_random_arcs, gen_worstcase
from filaments.instance import (AbstractFilament, Instance, build_index,
                                check_axioms, make_semicircle_instance)
from filaments.mwim import (AxiomWarning, build_union_instance,
                            intersecting_pairs, solve_mwim,
                            verify_induced_matching)
from filaments.mwis import MemoryBudgetError, solve_mwis
from filaments.oracle import brute_mwim


def test_union_of_single_crossing_pair():
    inst = make_semicircle_instance([(0, 2), (1, 3)])
    union = build_union_instance(inst)
    assert union.size == 1
    u = union.filaments[0]
    assert (u.a, u.b) == (0, 1)
    assert (u.left, u.right) == (0, 3)
    assert union.weights == (2,)


def test_unions_sharing_a_member_intersect():
    # chain: a-b and b-c cross, a-c do not
    inst = make_semicircle_instance([(0, 2), (1, 5), (3, 6)])
    union = build_union_instance(inst)
    assert union.size == 2
    assert union.intersects_positions(0, 1)


def test_union_of_edgeless_instance_is_empty():
    inst = make_semicircle_instance([(0, 1), (2, 3), (4, 9)])
    union = build_union_instance(inst)
    assert union.size == 0


def test_union_ordering_is_deterministic():
    inst = gen_random_arcs(8, seed=3)
    a = build_union_instance(inst)
    b = build_union_instance(inst)
    assert a.filaments == b.filaments and a.weights == b.weights
    spans = [(f.left, f.right, f.a, f.b) for f in a.filaments]
    assert spans == sorted(spans)


def test_solve_chain_takes_one_edge():
    inst = make_semicircle_instance([(0, 2), (1, 5), (3, 6)])
    matching, _ = solve_mwim(inst)
    assert matching.weight == 2 and len(matching.edges) == 1


def test_solve_two_independent_pairs():
    inst = make_semicircle_instance([(0, 2), (1, 3), (10, 12), (11, 13)])
    matching, _ = solve_mwim(inst)
    assert matching.weight == 4
    assert matching.edges == {(0, 1), (2, 3)}


def test_worstcase_matching_weight_four():
    # one outer pair plus one inner pair; brute force confirms at small k
    for k in (2, 3, 4):
        assert brute_mwim(gen_worstcase(k)).weight == 4
    matching, _ = solve_mwim(gen_worstcase(7))
    assert matching.weight == 4


def test_matches_oracle_on_random_arcs():
    for seed in range(120):
        inst = gen_random_arcs(2 + seed % 7, seed=seed, weight_range=(-10, 100))
        matching, _ = solve_mwim(inst)
        assert matching.weight == brute_mwim(inst).weight, seed


def test_matches_oracle_with_explicit_edge_weights():
    from filaments.generators import SplitMix64

    for seed in range(40):
        inst = gen_random_arcs(2 + seed % 7, seed=seed)
        rng = SplitMix64(seed ^ 0xABCD)
        ew = {e: rng.randint(-10, 100) for e in intersecting_pairs(inst)}
        matching, _ = solve_mwim(inst, ew)
        assert matching.weight == brute_mwim(inst, ew).weight, seed


def test_unit_edge_weights_give_max_cardinality():
    for seed in range(30):
        inst = gen_random_arcs(2 + seed % 7, seed=seed, weight_range=(1, 40))
        ones = {e: 1 for e in intersecting_pairs(inst)}
        matching, _ = solve_mwim(inst, ones)
        best = brute_mwim(inst, ones)
        assert matching.weight == best.weight == len(best.edges)


def test_edge_weight_for_non_edge_rejected():
    inst = make_semicircle_instance([(0, 1), (2, 3)])
    with pytest.raises(ValueError):
        solve_mwim(inst, {(0, 1): 5})


def test_edge_weight_given_twice_rejected():
    inst = make_semicircle_instance([(0, 2), (1, 3)])
    with pytest.raises(ValueError):
        solve_mwim(inst, {(0, 1): 5, (1, 0): 7})


def test_verify_single_edge():
    inst = make_semicircle_instance([(0, 2), (1, 3)])
    assert verify_induced_matching(inst, [(0, 1)])


def test_verify_rejects_shared_endpoint():
    inst = make_semicircle_instance([(0, 2), (1, 5), (3, 6)])
    assert not verify_induced_matching(inst, [(0, 1), (1, 2)])


def test_verify_rejects_cross_intersection():
    # edges (0,1) and (2,3) exist but filament 1 crosses filament 2
    inst = make_semicircle_instance([(0, 2), (1, 5), (4, 7), (6, 9)])
    assert verify_induced_matching(inst, [(0, 1)])
    assert verify_induced_matching(inst, [(2, 3)])
    assert not verify_induced_matching(inst, [(0, 1), (2, 3)])


def test_verify_rejects_non_edges():
    inst = make_semicircle_instance([(0, 1), (2, 3)])
    with pytest.raises(ValueError):
        verify_induced_matching(inst, [(0, 1)])


@given(st.integers(0, 10**6), st.integers(0, 10))
@settings(max_examples=60, deadline=None)
def test_union_instance_keeps_the_axioms(seed, n):
    base = gen_random_arcs(n, seed=seed)
    assert check_axioms(build_union_instance(base)).ok


def _independent_sets_of_union(union):
    n = union.size
    sets = []
    for mask in range(1 << n):
        chosen = [i for i in range(n) if mask >> i & 1]
        if all(not union.intersects_positions(a, b)
               for ai, a in enumerate(chosen) for b in chosen[ai + 1:]):
            sets.append(chosen)
    return sets


def _induced_matchings(inst, edges):
    out = []
    for mask in range(1 << len(edges)):
        chosen = [edges[i] for i in range(len(edges)) if mask >> i & 1]
        if verify_induced_matching(inst, chosen):
            out.append(frozenset(chosen))
    return out


def test_union_independent_sets_are_exactly_induced_matchings():
    for seed in range(30):
        base = gen_random_arcs(2 + seed % 6, seed=seed, weight_range=(1, 30))
        edges = intersecting_pairs(base)
        if len(edges) > 14:
            continue
        union = build_union_instance(base)
        from_union = {
            frozenset((union.filaments[p].a, union.filaments[p].b) for p in s)
            for s in _independent_sets_of_union(union)}
        direct = set(_induced_matchings(base, edges))
        assert from_union == direct, seed


def test_solution_always_verifies():
    for seed in range(40):
        inst = gen_random_arcs(seed % 9, seed=seed, weight_range=(-10, 100))
        matching, _ = solve_mwim(inst)
        assert verify_induced_matching(inst, matching.edges)
        edge_sum = sum(inst.weights[a] + inst.weights[b]
                       for a, b in matching.edges)
        assert matching.weight == edge_sum


def test_mwim_budget_reports_derived_size():
    inst = gen_random_arcs(60, seed=9)
    edges = len(intersecting_pairs(inst))
    with pytest.raises(MemoryBudgetError) as err:
        solve_mwim(inst, memory_budget=10_000)
    assert str(edges) in str(err.value)


def test_axiom_violating_matrix_warns():
    inst = Instance((AbstractFilament(0, 2), AbstractFilament(1, 3)), (1, 1),
                    adjacency=((True, False), (False, True)))
    with pytest.warns(AxiomWarning):
        build_union_instance(inst)


def test_mwim_reuses_the_independent_set_solver():
    inst = gen_random_arcs(7, seed=12, weight_range=(1, 9))
    union = build_union_instance(inst)
    direct, _ = solve_mwis(build_index(union))
    matching, _ = solve_mwim(inst)
    assert direct.weight == matching.weight
