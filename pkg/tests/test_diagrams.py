import random

import pytest

from dpo import randgen
from dpo.constructions import gluing, pullback_construct
from dpo.diagrams import (
    Square,
    commutes,
    compose_squares_horizontal,
    compose_squares_vertical,
    is_pullback,
    is_pushout_injective,
    jointly_surjective,
    pushout_mediator,
    reduced_chain_condition,
    squares_agree,
    transpose_square,
)
from dpo.errors import PreconditionError
from dpo.graph import graph
from dpo.morphism import (
    Morphism,
    compose,
    enumerate_morphisms,
    identity,
    is_injective,
    is_surjective,
    morphisms_agree,
)


def identity_square(g) -> Square:
    i = identity(g)
    return Square(ab=i, ac=i, bd=i, cd=i)


def random_gluing_square(rng, **kwargs) -> Square:
    b, d = randgen.random_span(rng, **kwargs)
    result = gluing(b, d)
    return Square(ab=b, ac=d, bd=result.h, cd=result.c)


def random_pullback_square(rng) -> Square:
    f, g = randgen.random_cospan(rng)
    result = pullback_construct(f, g)
    return Square(ab=result.b, ac=result.c, bd=f, cd=g)


class TestCommutes:
    def test_identity_square(self):
        assert commutes(identity_square(graph({0: "a"}, {0: (0, 0, "x")})))

    def test_gluing_square_commutes(self):
        assert commutes(random_gluing_square(random.Random(1)))

    def test_perturbed_square_reports_the_node(self):
        g = graph({0: "a", 1: "a"})
        i = identity(g)
        swap = Morphism(g, g, {0: 1, 1: 0}, {})
        report = commutes(Square(ab=i, ac=i, bd=swap, cd=i))
        assert not report
        assert report.failed_clause == "commutativity"
        assert report.counterexample == ("node", 0)

    def test_wiring_mismatch_raises(self):
        with pytest.raises(PreconditionError):
            commutes(Square(ab=identity(graph({0: "a"})), ac=identity(graph({0: "b"})),
                            bd=identity(graph({0: "a"})), cd=identity(graph({0: "b"}))))


class TestReducedChainCondition:
    def test_identity_square(self):
        assert reduced_chain_condition(identity_square(graph({0: "a"})))

    def test_canonical_pullback_square(self):
        assert reduced_chain_condition(random_pullback_square(random.Random(2)))

    def test_empty_apex_with_agreeing_pair_fails(self):
        empty = graph({})
        single = graph({0: "a"})
        sq = Square(
            ab=Morphism(empty, single, {}, {}),
            ac=Morphism(empty, single, {}, {}),
            bd=identity(single),
            cd=identity(single),
        )
        report = reduced_chain_condition(sq)
        assert not report
        assert report.counterexample == ("node", 0, 0)


class TestJointlySurjective:
    def test_one_surjective_leg_suffices(self):
        g = graph({0: "a"})
        assert jointly_surjective(identity(g), Morphism(graph({}), g, {}, {}))

    def test_gluing_cospan_is_jointly_surjective(self):
        rng = random.Random(3)
        b, d = randgen.random_span(rng)
        result = gluing(b, d)
        assert jointly_surjective(result.h, result.c)

    def test_unreached_node_is_named(self):
        g = graph({0: "a"})
        h = graph({0: "a", 1: "b"})
        inc = Morphism(g, h, {0: 0}, {})
        report = jointly_surjective(inc, inc)
        assert not report
        assert report.counterexample == ("node", 1)


class TestIsPushoutInjective:
    def test_identity_square(self):
        assert is_pushout_injective(identity_square(graph({0: "a"}, {0: (0, 0, "x")})))

    def test_gluing_squares_pass(self):
        rng = random.Random(4)
        for _ in range(30):
            assert is_pushout_injective(random_gluing_square(rng))

    def test_extra_target_node_fails_joint_surjectivity(self):
        g = graph({0: "a"})
        h = graph({0: "a", 1: "b"})
        inc = Morphism(g, h, {0: 0}, {})
        report = is_pushout_injective(Square(ab=identity(g), ac=identity(g), bd=inc, cd=inc))
        assert not report
        assert report.failed_clause == "joint surjectivity"

    def test_non_injective_leg_is_a_scope_error(self):
        two = graph({0: "a", 1: "a"})
        one = graph({0: "a"})
        fold = Morphism(two, one, {0: 0, 1: 0}, {})
        with pytest.raises(PreconditionError):
            is_pushout_injective(Square(ab=fold, ac=fold, bd=identity(one), cd=identity(one)))

    def test_pushouts_are_pullbacks(self):
        rng = random.Random(5)
        for _ in range(30):
            sq = random_gluing_square(rng)
            assert is_pushout_injective(sq)
            assert is_pullback(sq)

    def test_preservation_of_surjectivity_and_injectivity(self):
        rng = random.Random(6)
        for _ in range(30):
            b, d = randgen.random_span(rng, surjective_b=True)
            result = gluing(b, d)
            sq = Square(ab=b, ac=d, bd=result.h, cd=result.c)
            assert is_surjective(sq.ab)
            assert is_surjective(sq.cd)
        for _ in range(30):
            sq = random_gluing_square(rng)
            assert is_injective(sq.ab)
            assert is_injective(sq.cd)


class TestIsPullback:
    def test_canonical_construction_passes(self):
        rng = random.Random(7)
        for _ in range(30):
            assert is_pullback(random_pullback_square(rng))

    def test_special_diagram_with_injective_m(self):
        rng = random.Random(8)
        for _ in range(30):
            k = randgen.random_graph(rng, 4, 3)
            m = randgen.random_embedding(rng, k, 2, 2)
            sq = Square(ab=identity(k), ac=identity(k), bd=m, cd=m)
            assert is_pullback(sq)

    def test_special_diagram_with_non_injective_m_fails(self):
        two = graph({0: "a", 1: "a"})
        one = graph({0: "a"})
        fold = Morphism(two, one, {0: 0, 1: 0}, {})
        sq = Square(ab=identity(two), ac=identity(two), bd=fold, cd=fold)
        report = is_pullback(sq)
        assert not report
        assert report.failed_clause == "mediating map not surjective"

    def test_dropping_a_pair_breaks_surjectivity_of_the_mediator(self):
        rng = random.Random(9)
        f, g = randgen.random_cospan(rng, max_target_nodes=3, max_source_nodes=3)
        result = pullback_construct(f, g)
        while not result.A.nodes:
            f, g = randgen.random_cospan(rng, max_target_nodes=3, max_source_nodes=3)
            result = pullback_construct(f, g)
        victim = max(
            (v for v in result.A.nodes
             if all(result.A.src[e] != v and result.A.tgt[e] != v for e in result.A.edges)),
            default=None,
        )
        if victim is None:
            pytest.skip("no isolated pair in this instance")
        smaller_nodes = result.A.nodes - {victim}
        smaller = type(result.A)(
            nodes=smaller_nodes,
            edges=result.A.edges,
            src=result.A.src,
            tgt=result.A.tgt,
            nlabel={v: result.A.nlabel[v] for v in smaller_nodes},
            elabel=result.A.elabel,
        )
        sq = Square(
            ab=Morphism(smaller, f.source, {v: result.b.fv[v] for v in smaller_nodes},
                        dict(result.b.fe)),
            ac=Morphism(smaller, g.source, {v: result.c.fv[v] for v in smaller_nodes},
                        dict(result.c.fe)),
            bd=f,
            cd=g,
        )
        report = is_pullback(sq)
        assert not report
        assert report.failed_clause == "mediating map not surjective"

    def test_non_commuting_square_raises(self):
        g = graph({0: "a", 1: "a"})
        i = identity(g)
        swap = Morphism(g, g, {0: 1, 1: 0}, {})
        with pytest.raises(PreconditionError):
            is_pullback(Square(ab=i, ac=i, bd=swap, cd=i))


class TestSquareComposition:
    def test_composing_with_identity_square_returns_the_same_square(self):
        rng = random.Random(10)
        sq = random_gluing_square(rng)
        right = Square(ab=identity(sq.B), ac=sq.bd, bd=sq.bd, cd=identity(sq.D))
        composed = compose_squares_horizontal(sq, right)
        assert squares_agree(composed, sq)

    def test_two_gluing_squares_compose_to_a_pushout(self):
        rng = random.Random(11)
        for _ in range(25):
            sq1 = random_gluing_square(rng)
            ext = randgen.random_embedding(rng, sq1.B, 1, 1)
            glue2 = gluing(ext, sq1.bd)
            sq2 = Square(ab=ext, ac=sq1.bd, bd=glue2.h, cd=glue2.c)
            composed = compose_squares_horizontal(sq1, sq2)
            assert is_pushout_injective(composed)

    def test_decomposition_recovers_the_inner_pushout(self):
        rng = random.Random(12)
        for _ in range(25):
            sq1 = random_gluing_square(rng)
            ext = randgen.random_embedding(rng, sq1.B, 1, 1)
            glue2 = gluing(ext, sq1.bd)
            sq2 = Square(ab=ext, ac=sq1.bd, bd=glue2.h, cd=glue2.c)
            composed = compose_squares_horizontal(sq1, sq2)
            assert is_pushout_injective(sq1)
            assert is_pushout_injective(composed)
            assert is_pushout_injective(sq2)

    def test_two_pullback_squares_compose_to_a_pullback(self):
        rng = random.Random(13)
        for _ in range(25):
            f_graph = randgen.random_graph(rng, 4, 4)
            w = randgen.random_morphism_into(rng, f_graph, 4, 4)
            u = randgen.random_morphism_into(rng, f_graph, 4, 4)
            pb2 = pullback_construct(u, w)
            sq2 = Square(ab=pb2.b, ac=pb2.c, bd=u, cd=w)
            g_leg = randgen.random_morphism_into(rng, w.source, 4, 4)
            pb1 = pullback_construct(pb2.c, g_leg)
            sq1 = Square(ab=pb1.b, ac=pb1.c, bd=pb2.c, cd=g_leg)
            composed = compose_squares_horizontal(sq1, sq2)
            assert is_pullback(composed)
            assert is_pullback(sq1)

    def test_wiring_mismatch_raises(self):
        sq = identity_square(graph({0: "a"}))
        other = identity_square(graph({0: "b"}))
        with pytest.raises(PreconditionError):
            compose_squares_horizontal(sq, other)

    def test_vertical_composition_transposes_correctly(self):
        sq = identity_square(graph({0: "a"}))
        assert squares_agree(compose_squares_vertical(sq, sq), sq)
        assert squares_agree(transpose_square(transpose_square(sq)), sq)


class TestPushoutMediator:
    def test_mediator_of_own_cospan_is_identity(self):
        rng = random.Random(14)
        sq = random_gluing_square(rng)
        u = pushout_mediator(sq, p=sq.bd, t=sq.cd)
        assert morphisms_agree(u, identity(sq.D))

    def test_mediator_satisfies_both_triangles(self):
        rng = random.Random(15)
        for _ in range(10):
            sq = random_gluing_square(rng, max_interface_nodes=2, extra_nodes=2, extra_edges=1)
            ext = randgen.random_embedding(rng, sq.D, 1, 1)
            p = compose(ext, sq.bd)
            t = compose(ext, sq.cd)
            u = pushout_mediator(sq, p=p, t=t)
            assert morphisms_agree(compose(u, sq.bd), p)
            assert morphisms_agree(compose(u, sq.cd), t)


class TestBoundedUniversalPropertyProbe:
    def test_exactly_one_mediator_for_every_small_cospan(self):
        rng = random.Random(16)
        family = [
            graph({0: "a"}),
            graph({0: "a", 1: "b"}, {0: (0, 1, "x")}),
            graph({0: "a", 1: "a", 2: "b"}, {0: (0, 1, "x"), 1: (1, 2, "y")}),
        ]
        checked = 0
        for _ in range(6):
            sq = random_gluing_square(rng, max_interface_nodes=2, extra_nodes=2, extra_edges=1)
            for x in family:
                from_d = enumerate_morphisms(sq.D, x)
                for p in enumerate_morphisms(sq.B, x):
                    for t in enumerate_morphisms(sq.C, x):
                        if not morphisms_agree(compose(p, sq.ab), compose(t, sq.ac)):
                            continue
                        mediators = [
                            u
                            for u in from_d
                            if morphisms_agree(compose(u, sq.bd), p)
                            and morphisms_agree(compose(u, sq.cd), t)
                        ]
                        assert len(mediators) == 1
                        checked += 1
        assert checked > 0
