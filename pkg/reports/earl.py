"""
EARL + PROV Turtle report.

The test run is a prov:Activity associated with the developer, using the
tested project and the test suite (both versioned entities), and generating
the two report files. Each assertion links a subject, a criterion and a
result whose outcomes carry their ordered pointers.

Blank node labels are derived from assertion positions so the same input
always yields the same graph.
"""

import logging
from typing import Dict, List, Sequence

from rdfkit.namespaces import DCTERMS, EARL, FOAF, PROV, RDF, XSD, Namespace
from rdfkit.iri import is_absolute
from rdfkit.terms import BlankNode, Graph, Iri, Literal, Term, Triple
from project.subjects import TestSubject
from project.version import VersionDescriptor
from suites.config import TestCriterion
from suites.outcomes import Assertion, OutcomeType, Pointer
from reports.context import ReportContext

logger = logging.getLogger(__name__)

REPORT_PREFIXES = {
    "earl": EARL.base,
    "prov": PROV.base,
    "dcterms": DCTERMS.base,
    "foaf": FOAF.base,
    "xsd": XSD.base,
    "rdf": RDF.base,
}

POINTER_CLASSES = {"uri": "UriPointer", "snippet": "SnippetPointer", "message": "MessagePointer"}


def outcome_class(outcome_type: OutcomeType, vocabulary: Namespace) -> Iri:
    if outcome_type in (OutcomeType.MAJOR_FAIL, OutcomeType.MINOR_FAIL):
        return vocabulary.term(outcome_type.value)
    return EARL.term(outcome_type.value)


class EarlBuilder:
    """Accumulates the triples of one report"""

    def __init__(self, ctx: ReportContext):
        self.ctx = ctx
        self.vocabulary = Namespace(ctx.vocabulary)
        self.triples: List[Triple] = []
        self.subject_nodes: Dict[str, BlankNode] = {}
        self.criteria_done: set = set()
        self.activity = BlankNode("activity")
        self.assertor = BlankNode("assertor")
        self.developer = BlankNode("developer")
        self.project = BlankNode("project")
        self.test_suite = BlankNode("testSuite")

    def add(self, subject: Term, predicate: Iri, obj: Term):
        self.triples.append(Triple(subject, predicate, obj))

    def versioned_entity(self, node: BlankNode, descriptor: VersionDescriptor):
        v = self.vocabulary
        self.add(node, RDF.type, PROV.Entity)
        self.add(node, RDF.type, v.VersionedEntity)
        self.add(node, v.hostUrl, Literal(descriptor.host_url))
        self.add(node, v.version, Literal(descriptor.version))
        if descriptor.derived_from_commit:
            self.add(node, v.derivedFromCommit, Literal(descriptor.derived_from_commit))

    def qualified(self, label: str, predicate: Iri, node_type: Iri, link: Iri, target: Term, role: Iri):
        node = BlankNode(label)
        self.add(self.activity, predicate, node)
        self.add(node, RDF.type, node_type)
        self.add(node, link, target)
        self.add(node, PROV.hadRole, role)

    def provenance(self):
        ctx, v = self.ctx, self.vocabulary
        timestamp = Literal(ctx.iso_timestamp, XSD.dateTime)
        self.add(self.activity, RDF.type, PROV.Activity)
        self.add(self.activity, PROV.startedAtTime, timestamp)
        self.add(self.activity, v.trigger, Literal(ctx.trigger.value))
        self.add(self.activity, PROV.wasAssociatedWith, self.developer)
        self.qualified("association", PROV.qualifiedAssociation, PROV.Association, PROV.agent,
                       self.developer, v.developerRole)

        self.add(self.developer, RDF.type, PROV.Agent)
        self.add(self.developer, RDF.type, FOAF.Person)
        self.add(self.developer, FOAF.name, Literal(ctx.developer))

        self.versioned_entity(self.project, ctx.project)
        self.versioned_entity(self.test_suite, ctx.test_suite)
        self.add(self.test_suite, DCTERMS.title, Literal(ctx.suite))
        for label, entity, role in (("projectUsage", self.project, v.testedProjectRole),
                                    ("suiteUsage", self.test_suite, v.testSuiteRole)):
            self.add(self.activity, PROV.used, entity)
            self.qualified(label, PROV.qualifiedUsage, PROV.Usage, PROV.entity, entity, role)

        for index, (uri, media_type) in enumerate(zip(ctx.report_uris, ("text/turtle", "text/markdown"))):
            report = Iri(uri) if uri and is_absolute(uri) else BlankNode(f"report{index}")
            self.add(report, RDF.type, PROV.Entity)
            self.add(report, DCTERMS.format, Literal(media_type))
            if uri and not is_absolute(uri):
                self.add(report, DCTERMS.identifier, Literal(uri))
            self.add(report, PROV.wasGeneratedBy, self.activity)
            generation = BlankNode(f"generation{index}")
            self.add(report, PROV.qualifiedGeneration, generation)
            self.add(generation, RDF.type, PROV.Generation)
            self.add(generation, PROV.activity, self.activity)
            self.add(generation, v.reportFormat, Literal(media_type))

        self.add(self.assertor, RDF.type, EARL.Assertor)
        self.add(self.assertor, EARL.mainAssertor, self.developer)
        self.add(self.assertor, v.usedSuite, self.test_suite)

    def subject_node(self, subject: TestSubject) -> BlankNode:
        if subject.id in self.subject_nodes:
            return self.subject_nodes[subject.id]
        node = BlankNode(f"subject{len(self.subject_nodes)}")
        self.subject_nodes[subject.id] = node
        self.add(node, RDF.type, EARL.TestSubject)
        self.add(node, DCTERMS.identifier, Literal(subject.id))
        self.add(node, DCTERMS.description, Literal(subject.description))
        for path in subject.files:
            self.add(node, DCTERMS.hasPart, Iri(self.ctx.file_uri(path)))
        return node

    def criterion_node(self, criterion: TestCriterion) -> Iri:
        node = self.vocabulary.term(criterion.id)
        if criterion.id not in self.criteria_done:
            self.criteria_done.add(criterion.id)
            self.add(node, RDF.type, EARL.TestCriterion)
            self.add(node, DCTERMS.title, Literal(criterion.title))
            self.add(node, DCTERMS.description, Literal(criterion.description))
        return node

    def pointer_list(self, prefix: str, pointers: Sequence[Pointer]) -> Term:
        if not pointers:
            return RDF.nil
        cells = [BlankNode(f"{prefix}_l{index}") for index in range(len(pointers))]
        for index, pointer in enumerate(pointers):
            node = BlankNode(f"{prefix}_p{index}")
            value = Iri(pointer.value) if pointer.kind == "uri" and is_absolute(pointer.value) else Literal(pointer.value)
            self.add(node, RDF.type, self.vocabulary.term(POINTER_CLASSES[pointer.kind]))
            self.add(node, RDF.value, value)
            self.add(cells[index], RDF.first, node)
            self.add(cells[index], RDF.rest, cells[index + 1] if index + 1 < len(cells) else RDF.nil)
        return cells[0]

    def assertion(self, index: int, assertion: Assertion):
        node = BlankNode(f"assertion{index}")
        result = BlankNode(f"result{index}")
        self.add(node, RDF.type, EARL.Assertion)
        self.add(node, EARL.assertedBy, self.assertor)
        self.add(node, EARL.subject, self.subject_node(assertion.subject))
        self.add(node, EARL.test, self.criterion_node(assertion.criterion))
        self.add(node, EARL.result, result)
        self.add(node, PROV.wasGeneratedBy, self.activity)
        self.add(result, RDF.type, EARL.TestResult)
        for position, outcome in enumerate(assertion.outcomes):
            outcome_node = BlankNode(f"outcome{index}_{position}")
            self.add(result, EARL.outcome, outcome_node)
            self.add(outcome_node, RDF.type, outcome_class(outcome.type, self.vocabulary))
            self.add(outcome_node, DCTERMS.title, Literal(outcome.title))
            self.add(outcome_node, DCTERMS.description, Literal(outcome.description))
            self.add(outcome_node, EARL.pointer, self.pointer_list(f"outcome{index}_{position}", outcome.pointers))

    def build(self, assertions: Sequence[Assertion]) -> Graph:
        self.provenance()
        for index, assertion in enumerate(assertions):
            self.assertion(index, assertion)
        prefixes = dict(REPORT_PREFIXES)
        prefixes["acimov"] = self.vocabulary.base
        return Graph(self.triples, prefixes)


def emit_earl(assertions: Sequence[Assertion], ctx: ReportContext) -> Graph:
    """Provenance skeleton plus one assertion node per assertion"""
    graph = EarlBuilder(ctx).build(list(assertions))
    logger.debug("EARL report holds %d triples for %d assertions", len(graph), len(assertions))
    return graph
