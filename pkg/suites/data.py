"""
Data suite: checks scenario datasets and use-case fragments against the
ontology they exercise.
"""

import logging
from typing import Dict, List, Optional, Set

from rdfkit.graphs import merge_graphs, namespace_of, terms_in_namespace
from rdfkit.terms import Graph
from project.parameters import Parameters
from project.subjects import TestSubject
from suites.base_suite import BaseSuite, Check, SuiteContext, typo_outcomes
from suites.model import consistency_outcomes, syntax_outcomes
from suites.outcomes import Assertion, Outcome, Pointer, failed, not_tested, passed

logger = logging.getLogger(__name__)


def used_namespaces(graph: Graph) -> Set[str]:
    """Namespaces of every IRI in the graph plus its declared prefixes"""
    namespaces = {namespace_of(iri) for iri in graph.iris()}
    namespaces.update(graph.prefixes.values())
    return {namespace for namespace in namespaces if namespace}


def project_namespaces(context: SuiteContext) -> Set[str]:
    """Registry namespaces plus those bound or used by the ontology"""
    namespaces = set(context.registry.values())
    if context.namespace:
        namespaces.add(context.namespace)
    if context.ontology is not None:
        namespaces.update(context.ontology.prefixes.values())
        namespaces.update(namespace_of(iri) for iri in context.ontology.iris() if context.ontology.has_subject(iri))
    return {namespace for namespace in namespaces if namespace}


class DataSuite(BaseSuite):
    """Data tests over datasets and use-case fragments"""

    name = "data"

    def __init__(self, context: SuiteContext):
        super().__init__(context)
        self.references = project_namespaces(context)

    def build_checks(self) -> Dict[str, Check]:
        return {
            "syntax-error": syntax_outcomes,
            "owl-rl-consistency": self.check_consistency,
            "known-terms": self.check_known_terms,
            "namespace-typo": self.check_namespace_typo,
        }

    def check_consistency(self, subject: TestSubject) -> List[Outcome]:
        graph = subject.graph
        if self.context.ontology is not None:
            graph = merge_graphs([subject.graph, self.context.ontology])
        return consistency_outcomes(graph, self.parameters.max_iterations)

    def check_known_terms(self, subject: TestSubject) -> List[Outcome]:
        ontology = self.context.ontology
        if ontology is None:
            return [not_tested(
                "Ontology unavailable",
                "No syntactically correct module or modelet could be merged into an ontology.",
                [Pointer.message("prerequisite whole-merge not available")],
            )]
        namespace = self.context.namespace
        if not namespace:
            return self.namespace_unknown()
        unknown = sorted(
            term for term in terms_in_namespace(subject.graph, namespace)
            if term.value != namespace and not ontology.has_subject(term)
        )
        if not unknown:
            return [passed("Known terms", "Every ontology-namespace term used is defined in the ontology.")]
        return [failed(
            "Undefined terms",
            "Some terms of the ontology namespace are not defined in the ontology.",
            [Pointer.uri(term) for term in unknown],
        )]

    def check_namespace_typo(self, subject: TestSubject) -> List[Outcome]:
        return typo_outcomes(used_namespaces(subject.graph), self.references, self.parameters.namespace_distance_max)


def run_data_suite(subjects, parameters: Optional[Parameters] = None, ontology: Optional[Graph] = None,
                   context: Optional[SuiteContext] = None) -> List[Assertion]:
    """Data criteria over dataset and use-case subjects"""
    if context is None:
        context = SuiteContext(parameters=parameters or Parameters(), ontology=ontology)
    return DataSuite(context).run(subjects)
