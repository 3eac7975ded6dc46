import dataclasses
import random

import pytest

from dpo import randgen
from dpo.errors import DependentDerivationsError, PreconditionError
from dpo.graph import graph, is_isomorphic
from dpo.independence import (
    ParallelPair,
    commute,
    parallel_independent,
    residual_match,
    sequential_independent,
    verify_commutation_squares,
)
from dpo.morphism import Morphism, identity, is_injective, validate_morphism
from dpo.rewriting import (
    Match,
    Rule,
    apply,
    dangling_condition,
    find_matches,
    identity_rule,
)

from .oracles import exhaustive_parallel_witness_exists


def node_deletion_rule() -> Rule:
    l = graph({0: "a"})
    empty = graph({})
    return Rule(L=l, K=empty, R=empty, b=Morphism(empty, l, {}, {}), r=identity(empty))


def loop_addition_rule() -> Rule:
    k = graph({0: "b"})
    r = graph({0: "b"}, {0: (0, 0, "y")})
    return Rule(L=k, K=k, R=r, b=identity(k), r=Morphism(k, r, {0: 0}, {}))


def edge_deletion_rule() -> Rule:
    k = graph({0: "a", 1: "a"})
    l = graph({0: "a", 1: "a"}, {0: (0, 1, "x")})
    return Rule(L=l, K=k, R=k, b=Morphism(k, l, {0: 0, 1: 1}, {}), r=identity(k))


class TestParallelIndependent:
    def test_disjoint_matches_are_independent(self):
        host = graph({0: "a", 1: "b"})
        d1 = apply(node_deletion_rule(), Match(Morphism(node_deletion_rule().L, host, {0: 0}, {})))
        d2 = apply(loop_addition_rule(), Match(Morphism(loop_addition_rule().L, host, {0: 1}, {})))
        witness = parallel_independent(ParallelPair(d1, d2))
        assert witness is not None
        assert validate_morphism(witness.j1).ok
        assert validate_morphism(witness.j2).ok

    def test_deleting_the_same_node_is_dependent(self):
        host = graph({0: "a"})
        rule = node_deletion_rule()
        match = Match(Morphism(rule.L, host, {0: 0}, {}))
        pair = ParallelPair(apply(rule, match), apply(rule, match))
        assert parallel_independent(pair) is None

    def test_deleting_an_edge_the_other_match_uses_is_dependent(self):
        host = graph({0: "a", 1: "a"}, {0: (0, 1, "x")})
        deleter = edge_deletion_rule()
        keeper = identity_rule(graph({0: "a", 1: "a"}, {0: (0, 1, "x")}))
        m = Match(Morphism(deleter.L, host, {0: 0, 1: 1}, {0: 0}))
        d1 = apply(deleter, m)
        d2 = apply(keeper, Match(identity(host)))
        pair = ParallelPair(d1, d2)
        assert parallel_independent(pair) is None
        assert not exhaustive_parallel_witness_exists(pair)

    def test_different_hosts_raise(self):
        g1, g2 = graph({0: "a"}), graph({0: "a", 1: "a"})
        d1 = apply(identity_rule(g1), Match(identity(g1)))
        d2 = apply(identity_rule(g2), Match(identity(g2)))
        with pytest.raises(PreconditionError):
            parallel_independent(ParallelPair(d1, d2))

    def test_forced_candidate_agrees_with_exhaustive_search(self):
        rng = random.Random(47)
        for _ in range(40):
            pair = randgen.random_parallel_pair(rng)
            assert (parallel_independent(pair) is not None) == exhaustive_parallel_witness_exists(pair)


class TestSequentialIndependent:
    def test_identity_first_then_anything(self):
        host = graph({0: "a", 1: "b"})
        first = apply(identity_rule(host), Match(identity(host)))
        rule = loop_addition_rule()
        second = apply(rule, Match(Morphism(rule.L, first.H, {0: 1}, {})))
        assert sequential_independent(first, second) is not None

    def test_create_then_delete_is_dependent(self):
        host = graph({})
        create = Rule(
            L=graph({}), K=graph({}), R=graph({0: "a"}),
            b=identity(graph({})), r=Morphism(graph({}), graph({0: "a"}), {}, {}),
        )
        first = apply(create, Match(Morphism(graph({}), host, {}, {})))
        deleter = node_deletion_rule()
        second = apply(deleter, find_matches(deleter, first.H)[0])
        assert sequential_independent(first, second) is None

    def test_graph_mismatch_raises(self):
        g = graph({0: "a"})
        d = apply(identity_rule(g), Match(identity(g)))
        other = graph({0: "a", 1: "a"})
        e = apply(identity_rule(other), Match(identity(other)))
        with pytest.raises(PreconditionError):
            sequential_independent(d, e)


class TestResidualMatch:
    def test_disjoint_matches_keep_their_item_ids(self):
        host = graph({0: "a", 1: "b"})
        rule1 = node_deletion_rule()
        rule2 = loop_addition_rule()
        d1 = apply(rule1, Match(Morphism(rule1.L, host, {0: 0}, {})))
        d2 = apply(rule2, Match(Morphism(rule2.L, host, {0: 1}, {})))
        pair = ParallelPair(d1, d2)
        witness = parallel_independent(pair)
        m2p, m1p = residual_match(pair, witness)
        assert m2p.m.fv == d2.match.m.fv
        assert m1p.m.fv == d1.match.m.fv

    def test_identity_first_leaves_the_match_unchanged(self):
        host = graph({0: "a", 1: "b"}, {0: (0, 1, "x")})
        rule2 = loop_addition_rule()
        d1 = apply(identity_rule(host), Match(identity(host)))
        d2 = apply(rule2, Match(Morphism(rule2.L, host, {0: 1}, {})))
        pair = ParallelPair(d1, d2)
        m2p, _ = residual_match(pair, parallel_independent(pair))
        assert m2p.m.fv == d2.match.m.fv and m2p.m.fe == d2.match.m.fe

    def test_residuals_are_valid_injective_and_applicable(self):
        rng = random.Random(53)
        for _ in range(30):
            pair = randgen.random_parallel_independent_pair(rng)
            witness = parallel_independent(pair)
            assert witness is not None
            m2p, m1p = residual_match(pair, witness)
            for rule, m in ((pair.d2.rule, m2p), (pair.d1.rule, m1p)):
                assert validate_morphism(m.m).ok
                assert is_injective(m.m)
                assert dangling_condition(rule, m)


class TestCommute:
    def test_identity_rules_commute_to_the_host(self):
        g = graph({0: "a", 1: "b"}, {0: (0, 1, "x")})
        d = apply(identity_rule(g), Match(identity(g)))
        result = commute(ParallelPair(d, d))
        assert is_isomorphic(result.Gp, g) is not None

    def test_two_creations_on_the_empty_graph(self):
        empty = graph({})
        create_a = Rule(L=empty, K=empty, R=graph({0: "a"}),
                        b=identity(empty), r=Morphism(empty, graph({0: "a"}), {}, {}))
        create_b = Rule(L=empty, K=empty, R=graph({0: "b"}),
                        b=identity(empty), r=Morphism(empty, graph({0: "b"}), {}, {}))
        d1 = apply(create_a, Match(Morphism(empty, empty, {}, {})))
        d2 = apply(create_b, Match(Morphism(empty, empty, {}, {})))
        result = commute(ParallelPair(d1, d2))
        assert len(result.Gp.nodes) == 2
        assert sorted(result.Gp.nlabel.values()) == ["a", "b"]

    def test_edge_deletion_and_loop_addition_commute(self):
        host = graph({0: "a", 1: "a", 2: "b"}, {0: (0, 1, "x")})
        deleter = edge_deletion_rule()
        adder = loop_addition_rule()
        d1 = apply(deleter, Match(Morphism(deleter.L, host, {0: 0, 1: 1}, {0: 0})))
        d2 = apply(adder, Match(Morphism(adder.L, host, {0: 2}, {})))
        result = commute(ParallelPair(d1, d2))
        assert is_isomorphic(result.e1.H, result.e2.H) is not None
        assert len(result.Gp.edges) == 1

    def test_dependent_pair_raises(self):
        host = graph({0: "a"})
        rule = node_deletion_rule()
        match = Match(Morphism(rule.L, host, {0: 0}, {}))
        pair = ParallelPair(apply(rule, match), apply(rule, match))
        with pytest.raises(DependentDerivationsError):
            commute(pair)

    def test_swapped_pair_gives_isomorphic_result(self):
        rng = random.Random(59)
        for _ in range(15):
            pair = randgen.random_parallel_independent_pair(rng)
            forward = commute(pair)
            backward = commute(ParallelPair(pair.d2, pair.d1))
            assert is_isomorphic(forward.Gp, backward.Gp) is not None

    def test_composites_are_sequentially_independent(self):
        rng = random.Random(61)
        for _ in range(15):
            pair = randgen.random_parallel_independent_pair(rng)
            result = commute(pair)
            assert sequential_independent(pair.d1, result.e1) is not None
            assert sequential_independent(pair.d2, result.e2) is not None


class TestVerifyCommutationSquares:
    def test_disjoint_instance_passes_all_squares(self):
        host = graph({0: "a", 1: "b", 2: "a"}, {0: (0, 0, "x")})
        rule1 = loop_addition_rule()
        rule2 = node_deletion_rule()
        d1 = apply(rule1, Match(Morphism(rule1.L, host, {0: 1}, {})))
        d2 = apply(rule2, Match(Morphism(rule2.L, host, {0: 2}, {})))
        pair = ParallelPair(d1, d2)
        witness = parallel_independent(pair)
        assert witness is not None
        result = commute(pair)
        assert verify_commutation_squares(pair, witness, result)

    def test_identity_instance_is_degenerate_but_passes(self):
        g = graph({0: "a"}, {0: (0, 0, "x")})
        d = apply(identity_rule(g), Match(identity(g)))
        pair = ParallelPair(d, d)
        witness = parallel_independent(pair)
        result = commute(pair)
        assert verify_commutation_squares(pair, witness, result)

    def test_generated_instances_pass(self):
        rng = random.Random(67)
        for _ in range(20):
            pair = randgen.random_parallel_independent_pair(rng)
            witness = parallel_independent(pair)
            result = commute(pair)
            report = verify_commutation_squares(pair, witness, result)
            assert report, report

    def test_corrupted_result_fails_the_final_square(self):
        empty = graph({})
        create_a = Rule(L=empty, K=empty, R=graph({0: "a"}),
                        b=identity(empty), r=Morphism(empty, graph({0: "a"}), {}, {}))
        create_b = Rule(L=empty, K=empty, R=graph({0: "b"}),
                        b=identity(empty), r=Morphism(empty, graph({0: "b"}), {}, {}))
        d1 = apply(create_a, Match(Morphism(empty, empty, {}, {})))
        d2 = apply(create_b, Match(Morphism(empty, empty, {}, {})))
        pair = ParallelPair(d1, d2)
        witness = parallel_independent(pair)
        result = commute(pair)
        assert verify_commutation_squares(pair, witness, result)
        kept = sorted(result.Gp.nodes)[:1]
        smaller = graph({v: result.Gp.nlabel[v] for v in kept})
        corrupted = dataclasses.replace(result, Gp=smaller)
        report = verify_commutation_squares(pair, witness, corrupted)
        assert not report
        assert "(5)" in report.failed_clause
