"""
Model suite: checks ontology modules, modelets and their merges.
"""

import logging
from itertools import combinations
from typing import Dict, List, Optional

from rdfkit.distance import levenshtein
from rdfkit.graphs import local_name, terms_described
from rdfkit.namespaces import OWL, RDF, RDFS
from rdfkit.terms import Graph, Iri, Literal, Triple
from reasoning.profiles import Profile, check_profile
from reasoning.rl import IterationLimitExceeded, check_consistency, saturate_rl
from project.parameters import Parameters
from project.subjects import TestSubject
from suites.base_suite import BaseSuite, Check, SuiteContext
from suites.outcomes import Assertion, Outcome, Pointer, cannot_tell, failed, passed

logger = logging.getLogger(__name__)

PROPERTY_TYPES = frozenset({RDF.Property, OWL.ObjectProperty, OWL.DatatypeProperty, OWL.AnnotationProperty})
CLASS_TYPES = frozenset({RDFS.Class, OWL.Class})


def _triple_text(triple: Triple) -> str:
    def show(term):
        if isinstance(term, Iri):
            return f"<{term}>"
        if isinstance(term, Literal):
            return repr(term.lexical)
        return str(term)
    return f"{show(triple.subject)} {show(triple.predicate)} {show(triple.object)} ."


def _has_type(graph: Graph, term, types) -> bool:
    return bool(graph.objects(term, RDF.type) & types)


def is_english(literal) -> bool:
    return isinstance(literal, Literal) and bool(literal.language) and (
        literal.language == "en" or literal.language.startswith("en-")
    )


def ontology_terms(graph: Graph, namespace: str) -> List[Iri]:
    """In-namespace terms described by graph, ontology headers excluded"""
    ontologies = graph.subjects(RDF.type, OWL.Ontology)
    return sorted(term for term in terms_described(graph, namespace) if term not in ontologies)


def imports_outcome(graph: Graph) -> Optional[Outcome]:
    imported = sorted({triple.object for triple in graph.triples(predicate=OWL.imports)}, key=str)
    if not imported:
        return None
    return cannot_tell(
        "Imports not resolved",
        "owl:imports are not fetched; axioms of imported ontologies were not taken into account.",
        [Pointer.uri(target) for target in imported],
    )


def consistency_outcomes(graph: Graph, max_iterations: int) -> List[Outcome]:
    """OWL RL consistency verdict, plus a CannotTell when the graph imports ontologies"""
    try:
        result = check_consistency(graph, max_iterations)
    except IterationLimitExceeded as e:
        outcomes = [cannot_tell("Reasoning did not terminate", str(e), [Pointer.message(str(e))])]
    else:
        if result.consistent:
            outcomes = [passed("Consistent", "No contradiction was derived under the OWL 2 RL rules.")]
        else:
            outcomes = [failed(
                "Inconsistent",
                "Saturating the subject under the OWL 2 RL rules derives a contradiction.",
                [
                    Pointer.snippet(f"{evidence.rule_id}: " + " ".join(_triple_text(t) for t in evidence.triples))
                    for evidence in result.evidence
                ],
            )]
    imports = imports_outcome(graph)
    if imports is not None:
        outcomes.append(imports)
    return outcomes


def syntax_outcomes(subject: TestSubject) -> List[Outcome]:
    if subject.graph is not None:
        return [passed("Valid syntax", "Every file of the subject parses as Turtle.")]
    return [failed(
        "Syntax error",
        "At least one file of the subject is not valid Turtle.",
        [Pointer.message(str(error)) for error in subject.parse_errors],
    )]


class ModelSuite(BaseSuite):
    """Model tests over the five subject levels"""

    name = "model"

    def build_checks(self) -> Dict[str, Check]:
        checks = {
            "syntax-error": syntax_outcomes,
            "term-referencing": self.check_term_referencing,
            "domain-range-vocabulary": self.check_domain_range_vocabulary,
            "subset-property-misuse": self.check_subset_property_misuse,
            "term-differentiation": self.check_term_differentiation,
            "english-labels": self.check_english_labels,
            "owl-rl-consistency": self.check_consistency,
        }
        for profile in Profile:
            checks[f"profile-compatibility-{profile.value}"] = self.profile_check(profile)
        return checks

    def check_term_referencing(self, subject: TestSubject) -> List[Outcome]:
        namespace = self.context.namespace
        if not namespace:
            return self.namespace_unknown()
        missing = [term for term in ontology_terms(subject.graph, namespace)
                   if not subject.graph.objects(term, RDFS.isDefinedBy)]
        if not missing:
            return [passed("Terms referenced", "Every ontology term carries rdfs:isDefinedBy.")]
        return [failed(
            "Missing rdfs:isDefinedBy",
            "Some ontology terms are not linked to their ontology with rdfs:isDefinedBy.",
            [Pointer.uri(term) for term in missing],
        )]

    def check_domain_range_vocabulary(self, subject: TestSubject) -> List[Outcome]:
        namespace = self.context.namespace
        if not namespace:
            return self.namespace_unknown()
        graph = subject.graph
        offending = sorted(
            (triple for predicate in (RDFS.domain, RDFS.range) for triple in graph.triples(predicate=predicate)
             if isinstance(triple.subject, Iri) and triple.subject.value.startswith(namespace)
             and not isinstance(triple.object, Iri)),
            key=Triple.sort_key,
        )
        if not offending:
            return [passed("Named domains and ranges", "Every domain and range points to a named class.")]
        return [failed(
            "Anonymous domain or range",
            "Some rdfs:domain or rdfs:range values are blank nodes or literals instead of named classes.",
            [Pointer.snippet(_triple_text(triple)) for triple in offending],
        )]

    def check_subset_property_misuse(self, subject: TestSubject) -> List[Outcome]:
        graph = subject.graph
        offending = []
        for triple in graph.triples(predicate=RDFS.subClassOf):
            if _has_type(graph, triple.subject, PROPERTY_TYPES) or _has_type(graph, triple.object, PROPERTY_TYPES):
                offending.append(triple)
        for triple in graph.triples(predicate=RDFS.subPropertyOf):
            if _has_type(graph, triple.subject, CLASS_TYPES) or _has_type(graph, triple.object, CLASS_TYPES):
                offending.append(triple)
        if not offending:
            return [passed("Subclass and subproperty usage", "rdfs:subClassOf and rdfs:subPropertyOf are used correctly.")]
        return [failed(
            "Subclass or subproperty misuse",
            "rdfs:subClassOf relates a property, or rdfs:subPropertyOf relates a class.",
            [Pointer.snippet(_triple_text(triple)) for triple in sorted(offending, key=Triple.sort_key)],
        )]

    def check_term_differentiation(self, subject: TestSubject) -> List[Outcome]:
        namespace = self.context.namespace
        if not namespace:
            return self.namespace_unknown()
        threshold = self.parameters.term_distance_threshold
        pointers: List[Pointer] = []
        for first, second in combinations(ontology_terms(subject.graph, namespace), 2):
            distance = levenshtein(local_name(first), local_name(second))
            if distance < threshold:
                pointers += [
                    Pointer.uri(first),
                    Pointer.uri(second),
                    Pointer.message(
                        f"{local_name(first)} and {local_name(second)} are at Levenshtein distance {distance}"
                    ),
                ]
        if not pointers:
            return [passed("Terms differentiated", f"No two term names are closer than {threshold} edits.")]
        return [failed(
            "Confusable terms",
            f"Some term names differ by fewer than {threshold} edits and could confuse users.",
            pointers,
        )]

    def check_english_labels(self, subject: TestSubject) -> List[Outcome]:
        namespace = self.context.namespace
        if not namespace:
            return self.namespace_unknown()
        graph = subject.graph
        missing = [term for term in ontology_terms(graph, namespace)
                   if not any(is_english(label) for label in graph.objects(term, RDFS.label))]
        if not missing:
            return [passed("English labels", "Every ontology term has an English rdfs:label.")]
        return [failed(
            "Missing English label",
            "Some ontology terms have no rdfs:label tagged as English.",
            [Pointer.uri(term) for term in missing],
        )]

    def check_consistency(self, subject: TestSubject) -> List[Outcome]:
        return consistency_outcomes(subject.graph, self.parameters.max_iterations)

    def shape_data(self, subject: TestSubject) -> Graph:
        """Custom model shapes see the RL closure, so class targets follow rdfs:subClassOf"""
        return saturate_rl(subject.graph, self.parameters.max_iterations)

    def profile_check(self, profile: Profile) -> Check:
        def check(subject: TestSubject) -> List[Outcome]:
            violations = check_profile(subject.graph, profile)
            if not violations:
                return [passed(f"OWL 2 {profile.value} compatible",
                               f"Only constructs of the OWL 2 {profile.value} profile are used.")]
            return [failed(
                f"OWL 2 {profile.value} incompatible",
                f"Some constructs are outside the OWL 2 {profile.value} profile.",
                [Pointer.message(f"{violation.construct} on {violation.focus}: {violation.explanation}")
                 for violation in violations],
            )]
        return check


def run_model_suite(subjects, parameters: Optional[Parameters] = None,
                    context: Optional[SuiteContext] = None) -> List[Assertion]:
    """Model criteria over subjects of the model kinds"""
    if context is None:
        context = SuiteContext(parameters=parameters or Parameters())
    return ModelSuite(context).run(subjects)
