"""Decidable checks on commuting-candidate squares.

A square bundles four morphisms: a span ``ab: A -> B``, ``ac: A -> C`` and a
cospan ``bd: B -> D``, ``cd: C -> D``. Pushout recognition is restricted to
squares whose four morphisms are injective, where commutativity, the reduced
chain-condition and joint surjectivity together characterize pushouts.
Pullback recognition compares against the canonical pullback construction
through a mediating bijection.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .constructions import pullback_construct
from .errors import PreconditionError
from .graph import Graph
from .morphism import (
    Morphism,
    compose,
    is_bijective,
    is_injective,
    is_surjective,
    morphisms_agree,
    validate_morphism,
)


@dataclass(frozen=True)
class Square:
    """Four morphisms wired as ``A -> B -> D`` and ``A -> C -> D``."""

    ab: Morphism
    ac: Morphism
    bd: Morphism
    cd: Morphism

    @property
    def A(self) -> Graph:
        return self.ab.source

    @property
    def B(self) -> Graph:
        return self.ab.target

    @property
    def C(self) -> Graph:
        return self.ac.target

    @property
    def D(self) -> Graph:
        return self.bd.target


@dataclass(frozen=True)
class CheckReport:
    """Boolean verdict plus, on failure, the violated clause and a witness."""

    verdict: bool
    failed_clause: Optional[str] = None
    counterexample: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.verdict


def _check_wiring(sq: Square) -> None:
    if sq.ab.source != sq.ac.source:
        raise PreconditionError("square: ab and ac have different sources")
    if sq.ab.target != sq.bd.source:
        raise PreconditionError("square: ab.target differs from bd.source")
    if sq.ac.target != sq.cd.source:
        raise PreconditionError("square: ac.target differs from cd.source")
    if sq.bd.target != sq.cd.target:
        raise PreconditionError("square: bd and cd have different targets")


def commutes(sq: Square) -> CheckReport:
    """Whether ``bd after ab`` agrees with ``cd after ac`` on every item of A."""
    _check_wiring(sq)
    for v in sorted(sq.A.nodes):
        if sq.bd.fv[sq.ab.fv[v]] != sq.cd.fv[sq.ac.fv[v]]:
            return CheckReport(False, "commutativity", ("node", v))
    for e in sorted(sq.A.edges):
        if sq.bd.fe[sq.ab.fe[e]] != sq.cd.fe[sq.ac.fe[e]]:
            return CheckReport(False, "commutativity", ("edge", e))
    return CheckReport(True)


def reduced_chain_condition(sq: Square) -> CheckReport:
    """Every B/C item pair agreeing in D must have a common preimage in A."""
    if not commutes(sq):
        raise PreconditionError("reduced_chain_condition: square does not commute")
    node_pairs = {(sq.ab.fv[a], sq.ac.fv[a]) for a in sq.A.nodes}
    for b in sorted(sq.B.nodes):
        for c in sorted(sq.C.nodes):
            if sq.bd.fv[b] == sq.cd.fv[c] and (b, c) not in node_pairs:
                return CheckReport(False, "reduced chain-condition", ("node", b, c))
    edge_pairs = {(sq.ab.fe[a], sq.ac.fe[a]) for a in sq.A.edges}
    for b in sorted(sq.B.edges):
        for c in sorted(sq.C.edges):
            if sq.bd.fe[b] == sq.cd.fe[c] and (b, c) not in edge_pairs:
                return CheckReport(False, "reduced chain-condition", ("edge", b, c))
    return CheckReport(True)


def jointly_surjective(bd: Morphism, cd: Morphism) -> CheckReport:
    """Every item of the shared target has a preimage under ``bd`` or ``cd``."""
    if bd.target != cd.target:
        raise PreconditionError("jointly_surjective: targets differ")
    covered_v = {bd.fv[v] for v in bd.source.nodes} | {cd.fv[v] for v in cd.source.nodes}
    for v in sorted(bd.target.nodes):
        if v not in covered_v:
            return CheckReport(False, "joint surjectivity", ("node", v))
    covered_e = {bd.fe[e] for e in bd.source.edges} | {cd.fe[e] for e in cd.source.edges}
    for e in sorted(bd.target.edges):
        if e not in covered_e:
            return CheckReport(False, "joint surjectivity", ("edge", e))
    return CheckReport(True)


def is_pushout_injective(sq: Square) -> CheckReport:
    """Pushout recognition for squares of injective morphisms.

    Commutativity, the reduced chain-condition and joint surjectivity of the
    cospan are together equivalent to the pushout property in this scope.
    Non-injective inputs are outside the characterization's scope and raise.
    """
    _check_wiring(sq)
    for name, m in (("ab", sq.ab), ("ac", sq.ac), ("bd", sq.bd), ("cd", sq.cd)):
        if not is_injective(m):
            raise PreconditionError(f"is_pushout_injective: morphism {name} not injective")
    report = commutes(sq)
    if not report:
        return report
    report = reduced_chain_condition(sq)
    if not report:
        return report
    return jointly_surjective(sq.bd, sq.cd)


def is_pullback(sq: Square) -> CheckReport:
    """Compare the square's apex against the canonical pullback object.

    Builds the canonical pullback of the cospan and the mediating morphism
    ``u`` sending each apex item to its image pair; the square is a pullback
    iff ``u`` is a bijective morphism (pullbacks are unique up to iso).
    """
    if not commutes(sq):
        raise PreconditionError("is_pullback: square does not commute")
    canonical = pullback_construct(sq.bd, sq.cd)
    node_id = {pair: i for i, pair in canonical.node_pairs.items()}
    edge_id = {pair: i for i, pair in canonical.edge_pairs.items()}
    u = Morphism(
        source=sq.A,
        target=canonical.A,
        fv={a: node_id[sq.ab.fv[a], sq.ac.fv[a]] for a in sq.A.nodes},
        fe={a: edge_id[sq.ab.fe[a], sq.ac.fe[a]] for a in sq.A.edges},
    )
    if not validate_morphism(u).ok:
        return CheckReport(False, "mediating map not a morphism", ("apex",))
    if not is_injective(u):
        seen: dict[int, int] = {}
        for a in sorted(sq.A.nodes):
            i = u.fv[a]
            if i in seen:
                return CheckReport(False, "mediating map not injective", ("node", seen[i], a))
            seen[i] = a
        seen = {}
        for a in sorted(sq.A.edges):
            i = u.fe[a]
            if i in seen:
                return CheckReport(False, "mediating map not injective", ("edge", seen[i], a))
            seen[i] = a
    if not is_surjective(u):
        hit_v = set(u.fv.values())
        for i in sorted(canonical.A.nodes):
            if i not in hit_v:
                return CheckReport(
                    False, "mediating map not surjective", ("node",) + canonical.node_pairs[i]
                )
        hit_e = set(u.fe.values())
        for i in sorted(canonical.A.edges):
            if i not in hit_e:
                return CheckReport(
                    False, "mediating map not surjective", ("edge",) + canonical.edge_pairs[i]
                )
    return CheckReport(True)


def transpose_square(sq: Square) -> Square:
    """Mirror a square along its diagonal, swapping the B and C corners."""
    return Square(ab=sq.ac, ac=sq.ab, bd=sq.cd, cd=sq.bd)


def compose_squares_horizontal(sq1: Square, sq2: Square) -> Square:
    """Paste two squares sharing a vertical edge into their outer rectangle.

    ``sq2``'s left edge (its ``ac``) must be the same morphism as ``sq1``'s
    right edge (its ``bd``); the result has composite top and bottom arrows.
    """
    _check_wiring(sq1)
    _check_wiring(sq2)
    shared = sq2.ac
    if shared.source != sq1.bd.source or shared.target != sq1.bd.target:
        raise PreconditionError("compose_squares_horizontal: shared edge endpoints differ")
    if not morphisms_agree(shared, sq1.bd):
        raise PreconditionError("compose_squares_horizontal: shared edge maps differ")
    return Square(
        ab=compose(sq2.ab, sq1.ab),
        ac=sq1.ac,
        bd=sq2.bd,
        cd=compose(sq2.cd, sq1.cd),
    )


def compose_squares_vertical(top: Square, bottom: Square) -> Square:
    """Paste two squares sharing a horizontal edge (``top.cd`` = ``bottom.ab``)."""
    return transpose_square(
        compose_squares_horizontal(transpose_square(top), transpose_square(bottom))
    )


def squares_agree(sq1: Square, sq2: Square) -> bool:
    """Whether two squares have identical corners and pointwise-equal arrows."""
    try:
        return (
            morphisms_agree(sq1.ab, sq2.ab)
            and morphisms_agree(sq1.ac, sq2.ac)
            and morphisms_agree(sq1.bd, sq2.bd)
            and morphisms_agree(sq1.cd, sq2.cd)
        )
    except PreconditionError:
        return False


def pushout_mediator(sq: Square, p: Morphism, t: Morphism) -> Morphism:
    """Instantiate the pushout's universal property on a concrete cospan.

    For a pushout square and a cospan ``p: B -> X``, ``t: C -> X`` with
    ``p after ab = t after ac``, returns the unique ``u: D -> X`` with
    ``u after bd = p`` and ``u after cd = t``. Raises when the cospan does
    not factor (which for a genuine pushout means it did not commute).
    """
    _check_wiring(sq)
    if p.source != sq.B or t.source != sq.C or p.target != t.target:
        raise PreconditionError("pushout_mediator: cospan endpoints do not fit the square")
    fv: dict[int, int] = {}
    fe: dict[int, int] = {}
    for b in sq.B.nodes:
        fv[sq.bd.fv[b]] = p.fv[b]
    for c in sq.C.nodes:
        image = sq.cd.fv[c]
        if image in fv and fv[image] != t.fv[c]:
            raise PreconditionError("pushout_mediator: cospan does not factor on nodes")
        fv[image] = t.fv[c]
    for b in sq.B.nodes:
        if fv[sq.bd.fv[b]] != p.fv[b]:
            raise PreconditionError("pushout_mediator: cospan does not factor on nodes")
    for b in sq.B.edges:
        fe[sq.bd.fe[b]] = p.fe[b]
    for c in sq.C.edges:
        image = sq.cd.fe[c]
        if image in fe and fe[image] != t.fe[c]:
            raise PreconditionError("pushout_mediator: cospan does not factor on edges")
        fe[image] = t.fe[c]
    for b in sq.B.edges:
        if fe[sq.bd.fe[b]] != p.fe[b]:
            raise PreconditionError("pushout_mediator: cospan does not factor on edges")
    if set(fv) != set(sq.D.nodes) or set(fe) != set(sq.D.edges):
        raise PreconditionError("pushout_mediator: cospan of the square is not jointly surjective")
    u = Morphism(sq.D, p.target, fv, fe)
    if not validate_morphism(u).ok:
        raise PreconditionError("pushout_mediator: mediating map is not a morphism")
    return u
