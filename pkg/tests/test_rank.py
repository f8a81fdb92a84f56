import pytest

import chipfire as cf
from conftest import binary_graph, seeded_instances


# -- rank_geq -----------------------------------------------------------------


def test_rank_geq_zero_for_effective(dhar5):
    ok, witness = cf.rank_geq(dhar5.divisors["example"], 0)
    assert ok and witness is None


def test_rank_geq_dhar5(dhar5):
    d = dhar5.divisors["example"]
    ok, _ = cf.rank_geq(d, 2)
    assert ok
    ok, witness = cf.rank_geq(d, 3)
    assert not ok
    assert witness is not None and witness.degree == 3 and witness.is_effective
    # the witness really fails: d - witness has no effective representative
    reduced, _ = cf.reduce_divisor(d - witness, "v0")
    assert reduced["v0"] < 0


def test_rank_geq_rejects_weighted_or_looped(weighted_binary):
    with pytest.raises(cf.DomainError):
        cf.rank_geq(weighted_binary.divisors["example"], 1)
    loopy = cf.Graph(["a"], [("a", "a")])
    with pytest.raises(cf.DomainError):
        cf.rank_geq(cf.Divisor(loopy, (1,)), 0)
    with pytest.raises(cf.DomainError):
        cf.rank_geq(cf.Divisor(binary_graph(1), (1, 1)), -1)


# -- rank ---------------------------------------------------------------------


def test_rank_dhar5(dhar5):
    result = cf.rank(dhar5.divisors["example"])
    assert result.rank == 2
    assert result.method == "exhaustive"
    assert result.witness is not None and result.witness.degree == 3


def test_rank_weighted_binary_both_paths(weighted_binary):
    d = weighted_binary.divisors["example"]
    fast = cf.rank(d)
    assert (fast.rank, fast.method) == (2, "rank-explicit")
    slow = cf.rank(d, exhaustive=True)
    assert (slow.rank, slow.method) == (2, "exhaustive")
    assert fast.witness.degree == slow.witness.degree == 3


def test_rank_three_component():
    fixture = cf.load_fixture("three-component")
    assert cf.rank(fixture.divisors["example"]).rank == 2


def test_rank_single_vertex_formula():
    for local in range(4):
        g = cf.Graph([("v", local)])
        for d0 in range(-2, 9):
            result = cf.rank(cf.Divisor(g, (d0,)))
            expected = max(d0 - local, d0 // 2) if d0 >= 0 else -1
            assert result.rank == expected
            assert result.method == "formula"


def test_rank_negative_class(dhar5):
    result = cf.rank(cf.Divisor(dhar5.graph, {"v0": -1}))
    assert result.rank == -1
    assert result.method == "reduced-negative"
    assert result.witness is not None and result.witness.degree == 0


def test_rank_requires_connected():
    g = cf.Graph(["a", "b"])
    with pytest.raises(cf.DisconnectedError):
        cf.rank(cf.Divisor(g))


def test_rank_budget_guard(dhar5):
    with pytest.raises(cf.BudgetError) as info:
        cf.rank(dhar5.divisors["example"], budget=3)
    assert info.value.count is not None and info.value.count > 3
    assert info.value.budget == 3


def test_rank_witness_is_lex_smallest(dhar5):
    d = dhar5.divisors["example"]
    witness = cf.rank(d).witness
    g = dhar5.graph
    for e in cf.iter_effective_values(3, 5):
        candidate = cf.Divisor(g, e)
        reduced, _ = cf.reduce_divisor(d - candidate, "v0")
        failing = reduced["v0"] < 0
        if candidate == witness:
            assert failing
            break
        assert not failing


# -- rank-explicit ------------------------------------------------------------


def test_rank_explicit_weighted_binary(weighted_binary):
    d = weighted_binary.divisors["example"]
    assert cf.rank_explicit_vertex(d) == "v1"
    assert cf.rank_explicit_vertices(d) == ("v1", "v2")


def test_rank_explicit_absent_for_binary_genus_one_class():
    g = binary_graph(1)
    # the class of (0,2) has rank 1, and no representative is rank-explicit
    for rep in ((0, 2), (2, 0)):
        assert cf.rank_explicit_vertex(cf.Divisor(g, rep)) is None
    assert cf.rank(cf.Divisor(g, (0, 2))).rank == 1


def test_rank_explicit_absent_on_dhar5(dhar5):
    assert cf.rank_explicit_vertex(dhar5.divisors["example"]) is None


def test_rank_explicit_non_effective(dhar5):
    g = dhar5.graph
    assert cf.rank_explicit_vertices(cf.Divisor(g, {"v0": -1})) == ("v0",)
    # a non-effective divisor whose class is effective is not certified
    d = dhar5.divisors["example"] + cf.fire_set(g, {"v0"})
    assert not d.is_effective
    assert cf.rank(d).rank == 2
    assert cf.rank_explicit_vertices(d) == ()


# -- certified lower bound ----------------------------------------------------


def test_lower_bound_certified_trivial(dhar5):
    assert cf.rank_lower_bound_certified(dhar5.divisors["example"], 0)


def test_lower_bound_certified_weighted_binary(weighted_binary):
    g = weighted_binary.graph
    d = weighted_binary.divisors["example"]
    # the degree demands of the three degree-2 effective divisors
    assert cf.degree_demand(cf.Divisor(g, (2, 0))).values == (3, 0)
    assert cf.degree_demand(cf.Divisor(g, (1, 1))).values == (2, 2)
    assert cf.degree_demand(cf.Divisor(g, (0, 2))).values == (0, 4)
    assert cf.rank_lower_bound_certified(d, 2)
    assert not cf.rank_lower_bound_certified(d, 3)


def test_lower_bound_certified_at_capacity_floor():
    for rng, graph, divisor in seeded_instances(9, 40, max_vertices=5, max_edges=8, max_value=3):
        effective = cf.Divisor(graph, [abs(x) for x in divisor.values])
        floor_value = cf.rank_lower_bound(effective)
        if floor_value >= 0:
            assert cf.rank_lower_bound_certified(effective, floor_value)


def test_lower_bound_certified_rejects_negative_r(dhar5):
    with pytest.raises(cf.DomainError):
        cf.rank_lower_bound_certified(dhar5.divisors["example"], -1)


# -- saturation bound ---------------------------------------------------------


def test_saturation_bound_reduced_case(dhar5):
    reduced, _ = cf.reduce_divisor(dhar5.divisors["example"], "v0")
    # v0 does not attain the minimum of the reduced divisor; build a case that does
    g = binary_graph(2)
    d = cf.Divisor(g, (1, 2))
    assert cf.is_reduced(d, "v1")
    assert cf.saturation_bound(d, "v1") == 1


def test_saturation_bound_dhar5(dhar5):
    g = dhar5.graph
    d = dhar5.divisors["example"]
    tight = cf.saturation_bound(d, "v0", g.with_extra_edges([("v0", "v3"), ("v0", "v4")]))
    assert tight == 2 == cf.rank(d).rank
    loose = cf.saturation_bound(d, "v0")
    assert loose == 8
    assert loose >= cf.rank(d).rank


def test_saturation_bound_validates_input(dhar5):
    g = dhar5.graph
    d = dhar5.divisors["example"]
    with pytest.raises(cf.DomainError):
        cf.saturation_bound(d, "v3")  # v3 does not attain the minimum
    with pytest.raises(cf.DomainError):
        cf.saturation_bound(d, "v0", g.with_extra_edges([("v1", "v2")]))


# -- conformance identities ---------------------------------------------------


def test_rr_residual_canonical_is_zero(dhar5):
    assert cf.riemann_roch_residual(dhar5.graph.canonical_divisor()) == 0


def test_rr_residual_dhar5(dhar5):
    d = dhar5.divisors["example"]
    assert cf.riemann_roch_residual(d) == 0
    dual = dhar5.graph.canonical_divisor() - d
    assert cf.rank(dual).rank == 0


def test_rr_residual_binary_sweep():
    for genus in range(1, 6):
        g = binary_graph(genus)
        k = g.canonical_divisor()
        for a in range(genus + 1):
            for b in range(a, genus + 1):
                d = cf.Divisor(g, (a, b))
                assert cf.riemann_roch_residual(d) == 0
                assert cf.rank(d).rank == a
                assert cf.rank(k - d).rank == genus - b - 1


def test_clifford_examples(dhar5):
    assert cf.clifford_check(dhar5.divisors["example"])
    g3 = binary_graph(3)
    assert cf.rank(cf.Divisor(g3, (1, 2))).rank == 1  # 1 <= floor(3/2)
    assert cf.clifford_check(cf.Divisor(g3, (1, 2)))
    # degree beyond 2g-2 is vacuous
    assert cf.clifford_check(cf.Divisor(g3, (9, 9)))


# -- binary closed form -------------------------------------------------------


def test_binary_rank_examples():
    assert cf.binary_rank(1, 0, 2) == 1
    assert cf.binary_rank(3, 2, 5) == 4
    for genus in range(2, 6):
        for a in range(genus + 1):
            for b in range(a, genus + 1):
                assert cf.binary_rank(genus, a, b) == a


def test_binary_rank_negative_entries():
    g = binary_graph(2)
    cases = {
        (-1, -2): -1,  # negative degree
        (-1, 2): -1,  # degree 1 but no effective representative
        (-3, 4): 0,  # shifts to (0, 1)
        (-3, 7): 2,  # shifts to (0, 4); degree 4 >= 2g-1 so rank 4 - 2
    }
    for (a, b), expected in cases.items():
        assert cf.binary_rank(2, a, b) == expected
        assert cf.rank(cf.Divisor(g, (a, b))).rank == expected


def test_binary_rank_trees():
    g = binary_graph(0)
    for total in range(5):
        assert cf.binary_rank(0, total, 0) == total
        assert cf.rank(cf.Divisor(g, (total, 0))).rank == total
        assert cf.rank(cf.Divisor(g, (total - 2, 2))).rank == total


def test_binary_rank_agrees_with_shifted_representatives():
    for genus in range(5):
        period = genus + 1
        for a in range(-3, 6):
            for b in range(-3, 6):
                value = cf.binary_rank(genus, a, b)
                assert value == cf.binary_rank(genus, a - period, b + period)
                assert value == cf.binary_rank(genus, b, a)  # swap symmetry


# -- comparisons --------------------------------------------------------------


def test_g0_comparison_examples(dhar5):
    d = dhar5.divisors["example"]
    r0, r = cf.g0_comparison(d)
    assert r0 == r == 2  # already weightless loopless
    rose = cf.Graph([("v", 2)])
    assert cf.g0_comparison(cf.Divisor(rose, (2,))) == (2, 1)
    loop = cf.Graph(["v"], [("v", "v")])
    assert cf.g0_comparison(cf.Divisor(loop, (-1,))) == (-1, -1)


def test_bullet_identity_examples():
    loop = cf.Graph(["v"], [("v", "v")])
    assert cf.rank(cf.Divisor(loop, (1,))).rank == 0
    assert cf.bullet_rank_identity(cf.Divisor(loop, (1,)))
    plain = binary_graph(2)
    assert cf.bullet_rank_identity(cf.Divisor(plain, (1, 1)))


def test_rank_zero_characterization_small():
    # rank 0 iff some base-reduced representative vanishes at its base
    for rng, graph, divisor in seeded_instances(300, 40, max_vertices=4, max_edges=6, max_value=2):
        stripped = cf.strip_weights_and_loops(graph)
        d = cf.Divisor(stripped, divisor.values)
        value = cf.rank(d).rank
        zero_base = any(
            cf.reduce_divisor(d, u)[0][u] == 0 for u in stripped.vertex_ids
        )
        assert (value == 0) == zero_base


def test_rank_class_invariance_and_monotonicity_small(dhar5):
    g = dhar5.graph
    d = dhar5.divisors["example"]
    shifted = d + cf.fire_set(g, {"v1", "v2"})
    assert cf.rank(shifted).rank == 2
    assert cf.rank(d + cf.Divisor(g, {"v0": 1})).rank >= 2
