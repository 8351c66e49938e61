"""
Query suite: checks that competency questions are well-formed SPARQL
queries of the expected form using valid IRIs.
"""

import logging
from typing import Dict, List, Optional, Union

from rdfkit.errors import ParseError
from rdfkit.graphs import namespace_of
from rdfkit.iri import validate_iri
from rdfkit.sparql import QueryInfo, parse_query_file, query_form_allowed
from project.parameters import Parameters
from project.subjects import TestSubject
from suites.base_suite import BaseSuite, Check, SuiteContext, typo_outcomes
from suites.data import project_namespaces
from suites.outcomes import Assertion, Outcome, Pointer, cannot_tell, failed, passed

logger = logging.getLogger(__name__)


class QuerySuite(BaseSuite):
    """Syntactic tests of the competency questions"""

    name = "query"

    def __init__(self, context: SuiteContext):
        super().__init__(context)
        self.references = project_namespaces(context)
        self._parsed: Dict[str, Union[QueryInfo, ParseError]] = {}

    def build_checks(self) -> Dict[str, Check]:
        return {
            "query-syntax": self.check_syntax,
            "query-form": self.check_form,
            "uri-validity": self.check_uri_validity,
            "namespace-typo": self.check_namespace_typo,
        }

    def parsed(self, subject: TestSubject) -> Union[QueryInfo, ParseError]:
        path = subject.files[0]
        if path not in self._parsed:
            try:
                self._parsed[path] = parse_query_file(self.context.root / path)
            except ParseError as e:
                logger.info("%s does not parse: %s", path, e)
                self._parsed[path] = e
            except OSError as e:
                self._parsed[path] = ParseError(1, 1, f"unreadable file: {e.strerror or e}")
        return self._parsed[path]

    def info(self, subject: TestSubject) -> QueryInfo:
        parsed = self.parsed(subject)
        if isinstance(parsed, ParseError):
            raise parsed
        return parsed

    def check_syntax(self, subject: TestSubject) -> List[Outcome]:
        parsed = self.parsed(subject)
        path = subject.files[0]
        if isinstance(parsed, ParseError):
            return [failed(
                "Query syntax error",
                "The competency question is not a valid SPARQL 1.1 query.",
                [Pointer.message(f"{path}:{parsed.line}:{parsed.column}: {parsed.message}")],
            )]
        outcomes = [passed("Valid query", f"{parsed.form} query parsed successfully.")]
        if parsed.services:
            outcomes.append(cannot_tell(
                "Federated query",
                "SERVICE clauses call remote endpoints that are not contacted by the linter.",
                [Pointer.message(f"SERVICE {service}") for service in parsed.services],
            ))
        return outcomes

    def check_form(self, subject: TestSubject) -> List[Outcome]:
        violation = query_form_allowed(self.info(subject))
        if violation is None:
            return [passed("Expected query form", "The competency question is a SELECT or ASK query.")]
        return [failed("Unexpected query form", violation.message, [Pointer.message(violation.message)])]

    def check_uri_validity(self, subject: TestSubject) -> List[Outcome]:
        info = self.info(subject)
        pointers = []
        for iri in sorted(info.iris):
            violation = validate_iri(iri.value)
            if violation is None:
                continue
            position = info.iri_positions.get(iri)
            where = f" (line {position[0]}, column {position[1]})" if position else ""
            pointers.append(Pointer.message(f"<{iri.value}>{where}: {violation}"))
        if not pointers:
            return [passed("Valid IRIs", "Every IRI of the query conforms to RFC 3986.")]
        return [failed("Invalid IRI", "Some IRIs of the query do not conform to RFC 3986.", pointers)]

    def check_namespace_typo(self, subject: TestSubject) -> List[Outcome]:
        info = self.info(subject)
        used = set(info.prefixes.values()) | {namespace_of(iri) for iri in info.iris}
        used = {namespace for namespace in used if namespace}
        return typo_outcomes(used, self.references, self.parameters.namespace_distance_max)


def run_query_suite(subjects, parameters: Optional[Parameters] = None,
                    context: Optional[SuiteContext] = None) -> List[Assertion]:
    """Query criteria over the competency question subjects"""
    if context is None:
        context = SuiteContext(parameters=parameters or Parameters())
    return QuerySuite(context).run(subjects)
