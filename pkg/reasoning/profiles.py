"""
OWL 2 profile compatibility (EL, QL, RL).

Checking is structural over the RDF encoding of axioms: a table of
disallowed constructs (data/profile_rules.json) is matched against the
graph. Class-expression rules can be restricted to the subclass or
superclass side of an axiom; positions propagate through intersections,
unions, restriction fillers and complements (which swap sides).
"""

import json
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

from rdfkit.graphs import collection_items
from rdfkit.namespaces import OWL, RDF, RDFS, WELL_KNOWN_PREFIXES
from rdfkit.terms import BlankNode, Graph, Iri, Literal, Term, term_sort_key

logger = logging.getLogger(__name__)

RULES_PATH = Path(__file__).resolve().parent.parent / "data" / "profile_rules.json"

MATCH_KINDS = ("predicate", "type", "class-expression", "cardinality")
POSITIONS = ("any", "subclass", "superclass")

SUBCLASS = "subclass"
SUPERCLASS = "superclass"


class Profile(str, Enum):
    EL = "EL"
    QL = "QL"
    RL = "RL"


@dataclass(frozen=True)
class ProfileRule:
    rule_id: str
    match: str
    constructs: Tuple[Iri, ...]
    profiles: frozenset
    message: str
    position: str = "any"
    min_value: Optional[int] = None


@dataclass(frozen=True)
class ProfileViolation:
    profile: Profile
    construct: Iri
    focus: Term
    explanation: str
    rule_id: str = ""


def expand_curie(value: str) -> Iri:
    prefix, _, local = value.partition(":")
    if prefix in WELL_KNOWN_PREFIXES and not local.startswith("//"):
        return Iri(WELL_KNOWN_PREFIXES[prefix] + local)
    return Iri(value)


def parse_rule(record: dict) -> ProfileRule:
    """Validate one table record; raises ValueError on malformed records"""
    match = record.get("match")
    if match not in MATCH_KINDS:
        raise ValueError(f"profile rule {record.get('id')!r}: unknown match kind {match!r}")
    position = record.get("position", "any")
    if position not in POSITIONS:
        raise ValueError(f"profile rule {record.get('id')!r}: unknown position {position!r}")
    profiles = frozenset(Profile(name) for name in record.get("profiles", ()))
    if not profiles:
        raise ValueError(f"profile rule {record.get('id')!r}: no profiles")
    return ProfileRule(
        rule_id=record["id"],
        match=match,
        constructs=tuple(expand_curie(value) for value in record["constructs"]),
        profiles=profiles,
        message=record.get("message", ""),
        position=position,
        min_value=record.get("min_value"),
    )


@lru_cache(maxsize=None)
def load_profile_rules(path: Union[str, Path] = RULES_PATH) -> Tuple[ProfileRule, ...]:
    with open(path, "r", encoding="utf-8") as f:
        document = json.load(f)
    rules = tuple(parse_rule(record) for record in document["rules"])
    logger.debug("Loaded %d profile rules from %s", len(rules), path)
    return rules


def _flip(positions: Set[str]) -> Set[str]:
    return {SUPERCLASS if position == SUBCLASS else SUBCLASS for position in positions}


def class_expression_positions(graph: Graph) -> Dict[Term, Set[str]]:
    """Sides of axioms on which each class expression node occurs"""
    positions: Dict[Term, Set[str]] = {}

    def seed(node: Term, side: str):
        positions.setdefault(node, set()).add(side)

    for triple in graph.triples(predicate=RDFS.subClassOf):
        seed(triple.subject, SUBCLASS)
        seed(triple.object, SUPERCLASS)
    for predicate in (RDFS.domain, RDFS.range):
        for triple in graph.triples(predicate=predicate):
            seed(triple.object, SUPERCLASS)
    for triple in graph.triples(predicate=OWL.equivalentClass):
        for node in (triple.subject, triple.object):
            seed(node, SUBCLASS)
            seed(node, SUPERCLASS)
    for triple in graph.triples(predicate=OWL.disjointWith):
        seed(triple.subject, SUBCLASS)
        seed(triple.object, SUBCLASS)
    for triple in graph.triples(predicate=RDF.type):
        if isinstance(triple.object, BlankNode):
            seed(triple.object, SUPERCLASS)

    pending = list(positions)
    while pending:
        node = pending.pop()
        sides = positions[node]
        children: List[Tuple[Term, Set[str]]] = []
        for list_predicate in (OWL.intersectionOf, OWL.unionOf):
            for head in graph.objects(node, list_predicate):
                for item in collection_items(graph, head) or ():
                    children.append((item, sides))
        for filler_predicate in (OWL.someValuesFrom, OWL.allValuesFrom, OWL.onClass):
            for filler in graph.objects(node, filler_predicate):
                children.append((filler, sides))
        for operand in graph.objects(node, OWL.complementOf):
            children.append((operand, _flip(sides)))
        for child, child_sides in children:
            known = positions.setdefault(child, set())
            if not child_sides <= known:
                known.update(child_sides)
                pending.append(child)
    return positions


def anchor_of(graph: Graph, node: Term) -> Term:
    """Nearest named subject whose description contains node"""
    seen = {node}
    frontier = [node]
    while frontier:
        candidates = []
        for current in frontier:
            if isinstance(current, Iri):
                return current
            for triple in graph.triples(object=current):
                if triple.subject not in seen:
                    seen.add(triple.subject)
                    candidates.append(triple.subject)
        frontier = sorted(candidates, key=term_sort_key)
    return node


def _cardinality_value(term: Term) -> Optional[int]:
    if isinstance(term, Literal):
        try:
            return int(term.lexical)
        except ValueError:
            return None
    return None


def _matches(graph: Graph, rule: ProfileRule, positions: Dict[Term, Set[str]]) -> Iterable[Tuple[Iri, Term]]:
    for construct in rule.constructs:
        if rule.match == "type":
            for subject in graph.subjects(RDF.type, construct):
                yield construct, subject
        elif rule.match == "predicate":
            for triple in graph.triples(predicate=construct):
                yield construct, triple.subject
        elif rule.match == "cardinality":
            for triple in graph.triples(predicate=construct):
                value = _cardinality_value(triple.object)
                if value is not None and (rule.min_value is None or value >= rule.min_value):
                    yield construct, triple.subject
        else:
            for triple in graph.triples(predicate=construct):
                if rule.position == "any" or rule.position in positions.get(triple.subject, ()):
                    yield construct, triple.subject


def check_profile(graph: Graph, profile: Union[Profile, str],
                  rules: Optional[Sequence[ProfileRule]] = None,
                  extra_rules: Sequence[ProfileRule] = ()) -> List[ProfileViolation]:
    """
    List the constructs of graph that fall outside profile; an empty list
    means the graph is compatible. Violations are de-duplicated per rule and
    focus node and sorted for stable output.
    """
    profile = Profile(profile)
    table = list(load_profile_rules() if rules is None else rules) + list(extra_rules)
    positions = class_expression_positions(graph)
    violations: Dict[Tuple[str, Term], ProfileViolation] = {}
    for rule in table:
        if profile not in rule.profiles:
            continue
        for construct, node in _matches(graph, rule, positions):
            focus = anchor_of(graph, node)
            key = (rule.rule_id, focus)
            if key not in violations:
                violations[key] = ProfileViolation(profile, construct, focus, rule.message, rule.rule_id)
    return sorted(violations.values(), key=lambda v: (v.rule_id, term_sort_key(v.focus)))
