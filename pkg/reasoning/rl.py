"""
Forward-chaining OWL 2 RL reasoning over a subset of the RL rule set, and
the consistency check built on it.

Rule identifiers follow the OWL 2 RL rule names (cax-sco, prp-dom, ...).
Saturation runs naive passes over the whole graph until a pass derives
nothing new.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Set, Tuple

from rdfkit.errors import LintError
from rdfkit.namespaces import OWL, RDF, RDFS
from rdfkit.terms import BlankNode, Graph, Iri, Literal, Term, Triple

logger = logging.getLogger(__name__)

DEFAULT_MAX_ITERATIONS = 10000


class IterationLimitExceeded(LintError):
    """Saturation did not reach a fixpoint within the allowed passes"""

    def __init__(self, max_iterations: int):
        self.max_iterations = max_iterations
        super().__init__(f"OWL RL saturation did not reach a fixpoint within {max_iterations} passes")


@dataclass(frozen=True)
class InconsistencyEvidence:
    rule_id: str
    triples: Tuple[Triple, ...]


@dataclass(frozen=True)
class ConsistencyResult:
    consistent: bool
    evidence: Tuple[InconsistencyEvidence, ...] = ()
    saturated: Graph = field(default_factory=Graph, compare=False)


def _resource(term: Term) -> bool:
    return isinstance(term, (Iri, BlankNode))


def _typed(graph: Graph, owl_type: Iri) -> Set[Term]:
    return graph.subjects(RDF.type, owl_type)


def _same_as(graph: Graph) -> Iterator[Triple]:
    # eq-sym, eq-trans
    for triple in graph.triples(predicate=OWL.sameAs):
        if _resource(triple.object):
            yield Triple(triple.object, OWL.sameAs, triple.subject)
            for onward in graph.triples(triple.object, OWL.sameAs):
                yield Triple(triple.subject, OWL.sameAs, onward.object)


def _equality_replacement(graph: Graph) -> Iterator[Triple]:
    # eq-rep-s, eq-rep-p, eq-rep-o
    for same in graph.triples(predicate=OWL.sameAs):
        original, replacement = same.subject, same.object
        if original == replacement or not _resource(replacement):
            continue
        for triple in graph.triples(subject=original):
            yield Triple(replacement, triple.predicate, triple.object)
        for triple in graph.triples(object=original):
            yield Triple(triple.subject, triple.predicate, replacement)
        if isinstance(original, Iri) and isinstance(replacement, Iri):
            for triple in graph.triples(predicate=original):
                yield Triple(triple.subject, replacement, triple.object)


def _property_rules(graph: Graph) -> Iterator[Triple]:
    # prp-dom, prp-rng
    for axiom in graph.triples(predicate=RDFS.domain):
        if isinstance(axiom.subject, Iri) and _resource(axiom.object):
            for triple in graph.triples(predicate=axiom.subject):
                yield Triple(triple.subject, RDF.type, axiom.object)
    for axiom in graph.triples(predicate=RDFS.range):
        if isinstance(axiom.subject, Iri) and _resource(axiom.object):
            for triple in graph.triples(predicate=axiom.subject):
                if _resource(triple.object):
                    yield Triple(triple.object, RDF.type, axiom.object)
    # prp-symp
    for prop in _typed(graph, OWL.SymmetricProperty):
        if isinstance(prop, Iri):
            for triple in graph.triples(predicate=prop):
                if _resource(triple.object):
                    yield Triple(triple.object, prop, triple.subject)
    # prp-trp
    for prop in _typed(graph, OWL.TransitiveProperty):
        if isinstance(prop, Iri):
            for triple in graph.triples(predicate=prop):
                for onward in graph.triples(triple.object, prop):
                    yield Triple(triple.subject, prop, onward.object)
    # prp-inv1, prp-inv2
    for axiom in graph.triples(predicate=OWL.inverseOf):
        first, second = axiom.subject, axiom.object
        if isinstance(first, Iri) and isinstance(second, Iri):
            for triple in graph.triples(predicate=first):
                if _resource(triple.object):
                    yield Triple(triple.object, second, triple.subject)
            for triple in graph.triples(predicate=second):
                if _resource(triple.object):
                    yield Triple(triple.object, first, triple.subject)
    # prp-fp
    for prop in _typed(graph, OWL.FunctionalProperty):
        if isinstance(prop, Iri):
            by_subject: Dict[Term, List[Term]] = {}
            for triple in graph.triples(predicate=prop):
                if _resource(triple.object):
                    by_subject.setdefault(triple.subject, []).append(triple.object)
            for values in by_subject.values():
                for left in values:
                    for right in values:
                        if left != right:
                            yield Triple(left, OWL.sameAs, right)
    # prp-ifp
    for prop in _typed(graph, OWL.InverseFunctionalProperty):
        if isinstance(prop, Iri):
            by_object: Dict[Term, List[Term]] = {}
            for triple in graph.triples(predicate=prop):
                by_object.setdefault(triple.object, []).append(triple.subject)
            for values in by_object.values():
                for left in values:
                    for right in values:
                        if left != right:
                            yield Triple(left, OWL.sameAs, right)
    # prp-spo1
    for axiom in graph.triples(predicate=RDFS.subPropertyOf):
        if isinstance(axiom.subject, Iri) and isinstance(axiom.object, Iri):
            for triple in graph.triples(predicate=axiom.subject):
                yield Triple(triple.subject, axiom.object, triple.object)
    # prp-eqp1, prp-eqp2
    for axiom in graph.triples(predicate=OWL.equivalentProperty):
        if isinstance(axiom.subject, Iri) and isinstance(axiom.object, Iri):
            for triple in graph.triples(predicate=axiom.subject):
                yield Triple(triple.subject, axiom.object, triple.object)
            for triple in graph.triples(predicate=axiom.object):
                yield Triple(triple.subject, axiom.subject, triple.object)


def _class_rules(graph: Graph) -> Iterator[Triple]:
    # cax-sco
    for axiom in graph.triples(predicate=RDFS.subClassOf):
        if _resource(axiom.object):
            for instance in graph.subjects(RDF.type, axiom.subject):
                yield Triple(instance, RDF.type, axiom.object)
    # cax-eqc1, cax-eqc2
    for axiom in graph.triples(predicate=OWL.equivalentClass):
        if _resource(axiom.object):
            for instance in graph.subjects(RDF.type, axiom.subject):
                yield Triple(instance, RDF.type, axiom.object)
            for instance in graph.subjects(RDF.type, axiom.object):
                yield Triple(instance, RDF.type, axiom.subject)


def _schema_rules(graph: Graph) -> Iterator[Triple]:
    # scm-sco
    for axiom in graph.triples(predicate=RDFS.subClassOf):
        for onward in graph.triples(axiom.object, RDFS.subClassOf):
            yield Triple(axiom.subject, RDFS.subClassOf, onward.object)
    # scm-spo
    for axiom in graph.triples(predicate=RDFS.subPropertyOf):
        for onward in graph.triples(axiom.object, RDFS.subPropertyOf):
            yield Triple(axiom.subject, RDFS.subPropertyOf, onward.object)
    # scm-eqc1
    for axiom in graph.triples(predicate=OWL.equivalentClass):
        if _resource(axiom.object):
            yield Triple(axiom.subject, RDFS.subClassOf, axiom.object)
            yield Triple(axiom.object, RDFS.subClassOf, axiom.subject)


RULE_GROUPS: Tuple[Callable[[Graph], Iterator[Triple]], ...] = (
    _same_as,
    _equality_replacement,
    _property_rules,
    _class_rules,
    _schema_rules,
)


def saturate_rl(graph: Graph, max_iterations: int = DEFAULT_MAX_ITERATIONS) -> Graph:
    """
    Closure of graph under the implemented RL rules.

    Raises IterationLimitExceeded when max_iterations passes still derive
    new triples.
    """
    if max_iterations < 1:
        raise ValueError("max_iterations must be positive")
    current = graph
    for iteration in range(1, max_iterations + 1):
        derived: Set[Triple] = set()
        for rule_group in RULE_GROUPS:
            for triple in rule_group(current):
                if triple not in current:
                    derived.add(triple)
        if not derived:
            logger.debug("RL saturation reached a fixpoint after %d passes (%d triples)", iteration, len(current))
            return current
        current = current.with_triples(derived)
    raise IterationLimitExceeded(max_iterations)


def find_clashes(graph: Graph) -> List[InconsistencyEvidence]:
    """Falsity patterns present in an already saturated graph"""
    found: Dict[Tuple[str, frozenset], InconsistencyEvidence] = {}

    def record(rule_id: str, *premises: Triple):
        key = (rule_id, frozenset(premises))
        if key not in found:
            found[key] = InconsistencyEvidence(rule_id, tuple(sorted(set(premises), key=Triple.sort_key)))

    # eq-diff1
    for different in graph.triples(predicate=OWL.differentFrom):
        same = Triple(different.subject, OWL.sameAs, different.object)
        if same in graph:
            record("eq-diff1", same, different)
    # cax-dw
    for axiom in graph.triples(predicate=OWL.disjointWith):
        for instance in graph.subjects(RDF.type, axiom.subject):
            other = Triple(instance, RDF.type, axiom.object)
            if other in graph:
                record("cax-dw", axiom, Triple(instance, RDF.type, axiom.subject), other)
    # cls-nothing2
    for instance in graph.subjects(RDF.type, OWL.Nothing):
        record("cls-nothing2", Triple(instance, RDF.type, OWL.Nothing))
    # prp-irp
    for prop in _typed(graph, OWL.IrreflexiveProperty):
        if isinstance(prop, Iri):
            for triple in graph.triples(predicate=prop):
                if triple.subject == triple.object:
                    record("prp-irp", Triple(prop, RDF.type, OWL.IrreflexiveProperty), triple)
    # prp-asyp
    for prop in _typed(graph, OWL.AsymmetricProperty):
        if isinstance(prop, Iri):
            for triple in graph.triples(predicate=prop):
                if isinstance(triple.object, Literal):
                    continue
                reverse = Triple(triple.object, prop, triple.subject)
                if reverse in graph:
                    record("prp-asyp", Triple(prop, RDF.type, OWL.AsymmetricProperty), triple, reverse)
    return sorted(found.values(), key=lambda e: (e.rule_id, [t.sort_key() for t in e.triples]))


def check_consistency(graph: Graph, max_iterations: int = DEFAULT_MAX_ITERATIONS) -> ConsistencyResult:
    """Saturate then scan for falsity; propagates IterationLimitExceeded"""
    saturated = saturate_rl(graph, max_iterations)
    evidence = find_clashes(saturated)
    return ConsistencyResult(not evidence, tuple(evidence), saturated)
