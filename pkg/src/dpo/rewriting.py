"""Rules, match enumeration, the dangling condition, and direct derivations.

A direct derivation applies a rule at an injective match by deleting the
matched non-interface part (pushout complement) and gluing in the
replacement (pushout object). Both constructed squares are re-checked
against the pushout characterization on every application; a failure there
is an engine bug, not a user error.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import constructions
from .constructions import DeletionResult, GluingResult, deletion, gluing
from .diagrams import CheckReport, Square, is_pushout_injective
from .errors import DanglingConditionError, InternalConsistencyError, PreconditionError
from .graph import Graph, ValidationReport, Violation, is_isomorphic, validate_graph
from .morphism import Morphism, enumerate_morphisms, identity, is_injective, validate_morphism


@dataclass(frozen=True)
class Rule:
    """A span ``L <- K -> R`` with injective morphisms ``b`` and ``r``."""

    L: Graph
    K: Graph
    R: Graph
    b: Morphism
    r: Morphism


def identity_rule(g: Graph) -> Rule:
    """The rule that matches ``g`` and changes nothing."""
    i = identity(g)
    return Rule(L=g, K=g, R=g, b=i, r=i)


@dataclass(frozen=True)
class Match:
    """An injective morphism from a rule's left-hand side into a host graph."""

    m: Morphism


@dataclass(frozen=True)
class DirectDerivation:
    """One rule application: the deletion and gluing squares plus the comatch."""

    rule: Rule
    match: Match
    deletion: DeletionResult
    gluing: GluingResult
    comatch: Morphism

    @property
    def G(self) -> Graph:
        return self.match.m.target

    @property
    def D(self) -> Graph:
        return self.deletion.D

    @property
    def H(self) -> Graph:
        return self.gluing.H

    @property
    def left_square(self) -> Square:
        return Square(ab=self.rule.b, ac=self.deletion.d, bd=self.match.m, cd=self.deletion.c)

    @property
    def right_square(self) -> Square:
        return Square(ab=self.rule.r, ac=self.deletion.d, bd=self.gluing.h, cd=self.gluing.c)


def validate_rule(rule: Rule) -> ValidationReport:
    """Check graphs, morphism endpoints, morphism validity and injectivity."""
    bad: list[Violation] = []
    for name, g in (("L", rule.L), ("K", rule.K), ("R", rule.R)):
        for v in validate_graph(g).violations:
            bad.append(Violation(f"graph {name}: {v.clause}", v.item))
    for name, m, src, tgt in (("b", rule.b, rule.K, rule.L), ("r", rule.r, rule.K, rule.R)):
        if m.source != src or m.target != tgt:
            bad.append(Violation(f"{name} endpoint mismatch", name))
            continue
        for v in validate_morphism(m).violations:
            bad.append(Violation(f"{name}: {v.clause}", v.item))
        if validate_morphism(m).ok and not is_injective(m):
            bad.append(Violation(f"{name} not injective", name))
    return ValidationReport(tuple(bad))


def find_matches(rule: Rule, G: Graph) -> list[Match]:
    """All injective morphisms ``L -> G``, in deterministic order.

    The dangling condition is deliberately not filtered here; whether a
    match is applicable is decided at application time.
    """
    return [Match(m) for m in enumerate_morphisms(rule.L, G, injective_only=True)]


def dangling_condition(rule: Rule, match: Match) -> CheckReport:
    """Whether deleting the matched nodes leaves no edge without an endpoint."""
    edges = constructions.dangling_edges(rule.b, match.m)
    if edges:
        return CheckReport(False, "dangling condition", tuple(edges))
    return CheckReport(True)


def apply(rule: Rule, match: Match, fresh_offset: int | None = None) -> DirectDerivation:
    """Apply ``rule`` at ``match``: deletion then gluing.

    ``fresh_offset`` shifts the identifiers allocated for created items; the
    result is the same up to isomorphism for any offset. Raises
    :class:`DanglingConditionError` when the match is not applicable, and
    :class:`InternalConsistencyError` if either constructed square fails the
    pushout characterization (an engine bug).
    """
    rv = validate_rule(rule)
    if not rv.ok:
        raise PreconditionError(f"apply: invalid rule: {rv.violations[0]}")
    if match.m.source != rule.L:
        raise PreconditionError("apply: match source is not the rule's left-hand side")
    mv = validate_morphism(match.m)
    if not mv.ok:
        raise PreconditionError(f"apply: invalid match: {mv.violations[0]}")
    if not is_injective(match.m):
        raise PreconditionError("apply: match is not injective")
    report = dangling_condition(rule, match)
    if not report:
        raise DanglingConditionError(report.counterexample or ())

    deleted = deletion(rule.b, match.m)
    glued = gluing(rule.r, deleted.d, fresh_offset=fresh_offset)
    derivation = DirectDerivation(
        rule=rule, match=match, deletion=deleted, gluing=glued, comatch=glued.h
    )
    for side, sq in (("left", derivation.left_square), ("right", derivation.right_square)):
        check = is_pushout_injective(sq)
        if not check:
            raise InternalConsistencyError(
                f"apply: {side} square failed {check.failed_clause} at {check.counterexample}"
            )
    return derivation


def derivations_isomorphic(d1: DirectDerivation, d2: DirectDerivation) -> bool:
    """Whether two derivations have isomorphic contexts and isomorphic results."""
    return (
        is_isomorphic(d1.deletion.D, d2.deletion.D) is not None
        and is_isomorphic(d1.gluing.H, d2.gluing.H) is not None
    )
