"""Parallel/sequential independence and constructive commutation.

Because deletion contexts embed into their host by identity inclusions and
matches are injective, an independence witness is forced: the only possible
embedding of one rule's side into the other derivation's context is the
match (or comatch) itself, co-restricted. Commutation applies each rule to
the other's result at the residual match; the categorical decomposition used
in the classical proof is reconstructed and re-checked square by square on
the concrete instance by :func:`verify_commutation_squares`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .constructions import gluing, pullback_construct
from .diagrams import (
    CheckReport,
    Square,
    compose_squares_vertical,
    is_pullback,
    is_pushout_injective,
    pushout_mediator,
    squares_agree,
)
from .errors import (
    DanglingConditionError,
    DependentDerivationsError,
    InternalConsistencyError,
    PreconditionError,
    RewriteError,
)
from .graph import Graph, IsoWitness, is_isomorphic
from .morphism import Morphism, compose, is_injective, validate_morphism
from .rewriting import DirectDerivation, Match, apply, dangling_condition


@dataclass(frozen=True)
class ParallelPair:
    """Two direct derivations out of the same host graph."""

    d1: DirectDerivation
    d2: DirectDerivation


@dataclass(frozen=True)
class IndependenceWitness:
    """The two commuting embeddings certifying independence.

    For a parallel pair, ``j1: L1 -> D2`` and ``j2: L2 -> D1``; for a
    sequential pair, ``j1: R1 -> D2`` and ``j2: L2 -> D1``.
    """

    j1: Morphism
    j2: Morphism


@dataclass(frozen=True)
class CommutationResult:
    """The closed diamond: both composite derivations and the final iso."""

    Gp: Graph
    e1: DirectDerivation
    e2: DirectDerivation
    iso: IsoWitness


def _require_same_start(pair: ParallelPair) -> None:
    if pair.d1.G != pair.d2.G:
        raise PreconditionError("parallel pair: derivations start from different graphs")


def _corestrict(m: Morphism, sub: Graph) -> Optional[Morphism]:
    """View ``m`` as a morphism into an identity-included subgraph of its
    target, when its image lies inside that subgraph."""
    if any(m.fv[v] not in sub.nodes for v in m.source.nodes):
        return None
    if any(m.fe[e] not in sub.edges for e in m.source.edges):
        return None
    return Morphism(m.source, sub, dict(m.fv), dict(m.fe))


def parallel_independent(pair: ParallelPair) -> Optional[IndependenceWitness]:
    """Witness that neither derivation's match touches what the other deletes.

    The context inclusions are identity maps, so the candidate embeddings
    are forced: a witness exists iff each match's image survives the other
    derivation's deletion, item by item.
    """
    _require_same_start(pair)
    j1 = _corestrict(pair.d1.match.m, pair.d2.deletion.D)
    j2 = _corestrict(pair.d2.match.m, pair.d1.deletion.D)
    if j1 is None or j2 is None:
        return None
    return IndependenceWitness(j1=j1, j2=j2)


def sequential_independent(
    first: DirectDerivation, second: DirectDerivation
) -> Optional[IndependenceWitness]:
    """Witness for ``G => H => H'``: the first rule's comatch image survives
    the second deletion, and the second match lands in the first context."""
    if second.G != first.H:
        raise PreconditionError("sequential pair: second derivation does not start at first's result")
    j1 = _corestrict(first.comatch, second.deletion.D)
    j2 = _corestrict(second.match.m, first.deletion.D)
    if j1 is None or j2 is None:
        return None
    return IndependenceWitness(j1=j1, j2=j2)


def residual_match(pair: ParallelPair, witness: IndependenceWitness) -> tuple[Match, Match]:
    """Carry each match over to the other derivation's result graph.

    Returns ``(m2': L2 -> H1, m1': L1 -> H2)``. The theorem predicts both
    residuals are injective and applicable; a violation here is an engine
    inconsistency, not a user error.
    """
    _require_same_start(pair)
    m2p = compose(pair.d1.gluing.c, witness.j2)
    m1p = compose(pair.d2.gluing.c, witness.j1)
    for name, rule, m in (
        ("m2'", pair.d2.rule, m2p),
        ("m1'", pair.d1.rule, m1p),
    ):
        if not validate_morphism(m).ok or not is_injective(m):
            raise InternalConsistencyError(f"residual match {name} is not an injective morphism")
        report = dangling_condition(rule, Match(m))
        if not report:
            raise InternalConsistencyError(
                f"residual match {name} violates the dangling condition: {report.counterexample}"
            )
    return Match(m2p), Match(m1p)


def commute(pair: ParallelPair) -> CommutationResult:
    """Close the diamond of a parallel independent pair.

    Applies the second rule on the first result (and vice versa) at the
    residual matches, checks both composites are sequentially independent,
    and returns the isomorphism between the two final graphs.
    """
    witness = parallel_independent(pair)
    if witness is None:
        raise DependentDerivationsError("commute: pair is not parallel independent")
    m2p, m1p = residual_match(pair, witness)
    try:
        e1 = apply(pair.d2.rule, m2p)
        e2 = apply(pair.d1.rule, m1p)
    except (PreconditionError, DanglingConditionError) as exc:
        raise InternalConsistencyError(f"commute: residual application failed: {exc}") from exc
    iso = is_isomorphic(e1.H, e2.H)
    if iso is None:
        raise InternalConsistencyError("commute: composite derivations end in non-isomorphic graphs")
    if sequential_independent(pair.d1, e1) is None:
        raise InternalConsistencyError("commute: first composite is not sequentially independent")
    if sequential_independent(pair.d2, e2) is None:
        raise InternalConsistencyError("commute: second composite is not sequentially independent")
    return CommutationResult(Gp=e1.H, e1=e1, e2=e2, iso=iso)


def verify_commutation_squares(
    pair: ParallelPair, witness: IndependenceWitness, result: CommutationResult
) -> CheckReport:
    """Re-check the classical decomposition of the commutation on this instance.

    Rebuilds the intersection context as a canonical pullback, derives the
    interface embeddings from its pairing, reconstitutes all labelled
    squares of the decomposition, and checks each one plus the composite
    squares against the original derivations. The first failure is reported
    with the offending square's label.
    """
    d1, d2 = pair.d1, pair.d2
    b1, r1 = d1.rule.b, d1.rule.r
    b2, r2 = d2.rule.b, d2.rule.r
    c1, c2 = d1.deletion.c, d2.deletion.c
    cbar1, cbar2 = d1.gluing.c, d2.gluing.c
    j1, j2 = witness.j1, witness.j2

    try:
        pb = pullback_construct(c1, c2)
        pi1, pi2 = pb.b, pb.c
        node_id = {pairing: i for i, pairing in pb.node_pairs.items()}
        edge_id = {pairing: i for i, pairing in pb.edge_pairs.items()}
        k1 = Morphism(
            source=d1.rule.K,
            target=pb.A,
            fv={k: node_id[d1.deletion.d.fv[k], j1.fv[b1.fv[k]]] for k in d1.rule.K.nodes},
            fe={k: edge_id[d1.deletion.d.fe[k], j1.fe[b1.fe[k]]] for k in d1.rule.K.edges},
        )
        k2 = Morphism(
            source=d2.rule.K,
            target=pb.A,
            fv={k: node_id[j2.fv[b2.fv[k]], d2.deletion.d.fv[k]] for k in d2.rule.K.nodes},
            fe={k: edge_id[j2.fe[b2.fe[k]], d2.deletion.d.fe[k]] for k in d2.rule.K.edges},
        )
        for name, m in (("K1 -> D", k1), ("K2 -> D", k2)):
            if not validate_morphism(m).ok:
                return CheckReport(False, f"interface embedding {name} invalid", ("construction",))

        sq12 = Square(ab=pi2, ac=pi1, bd=c2, cd=c1)
        sq32 = Square(ab=pi1, ac=pi2, bd=c1, cd=c2)
        sq11 = Square(ab=b1, ac=k1, bd=j1, cd=pi2)
        sq31 = Square(ab=b2, ac=k2, bd=j2, cd=pi1)

        glue21 = gluing(r1, k1)
        rho1, delta1 = glue21.h, glue21.c
        sq21 = Square(ab=r1, ac=k1, bd=rho1, cd=delta1)
        sigma1 = pushout_mediator(sq21, p=d1.comatch, t=compose(cbar1, pi1))
        sq22 = Square(ab=delta1, ac=pi1, bd=sigma1, cd=cbar1)

        glue41 = gluing(r2, k2)
        rho2, delta2 = glue41.h, glue41.c
        sq41 = Square(ab=r2, ac=k2, bd=rho2, cd=delta2)
        sigma2 = pushout_mediator(sq41, p=d2.comatch, t=compose(cbar2, pi2))
        sq42 = Square(ab=delta2, ac=pi2, bd=sigma2, cd=cbar2)

        tau1 = Morphism(glue21.H, result.Gp, dict(sigma1.fv), dict(sigma1.fe))
        if not validate_morphism(tau1).ok:
            return CheckReport(False, "square (5): context embedding into G' invalid", ("construction",))
        tau2 = pushout_mediator(sq41, p=result.e1.comatch, t=compose(tau1, delta1))
        sq5 = Square(ab=delta2, ac=delta1, bd=tau2, cd=tau1)
    except RewriteError as exc:
        return CheckReport(False, f"decomposition construction failed: {exc}", ("construction",))

    labelled = [
        ("(12)", is_pullback, sq12),
        ("(11)", is_pushout_injective, sq11),
        ("(21)", is_pushout_injective, sq21),
        ("(22)", is_pushout_injective, sq22),
        ("(31)", is_pushout_injective, sq31),
        ("(32)", is_pushout_injective, sq32),
        ("(41)", is_pushout_injective, sq41),
        ("(42)", is_pushout_injective, sq42),
        ("(5)", is_pushout_injective, sq5),
    ]
    for label, check, sq in labelled:
        try:
            report = check(sq)
        except PreconditionError as exc:
            return CheckReport(False, f"square {label}: {exc}", ("scope",))
        if not report:
            return CheckReport(False, f"square {label}: {report.failed_clause}", report.counterexample)

    composites = [
        ("(11)+(12)", sq11, sq12, d1.left_square),
        ("(21)+(22)", sq21, sq22, d1.right_square),
        ("(31)+(32)", sq31, sq32, d2.left_square),
        ("(41)+(42)", sq41, sq42, d2.right_square),
    ]
    for label, top, bottom, expected in composites:
        try:
            built = compose_squares_vertical(top, bottom)
        except PreconditionError as exc:
            return CheckReport(False, f"composite {label}: {exc}", ("wiring",))
        if not squares_agree(built, expected):
            return CheckReport(False, f"composite {label} differs from the derivation square", ("maps",))
    return CheckReport(True)
