"""
Lint configuration constants and the catalogue of test criteria with their
prerequisite ordering.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Tuple

import networkx as nx

MODEL_KINDS = frozenset({"module", "modelet", "module-modelet", "modules-merge", "whole-merge"})
DATA_KINDS = frozenset({"dataset", "use-case"})
QUERY_KINDS = frozenset({"query"})


@dataclass(frozen=True)
class TestCriterion:
    """A constraint a test subject is checked against"""

    __test__ = False

    id: str
    title: str
    description: str
    applicable_kinds: FrozenSet[str]
    prerequisites: Tuple[str, ...] = ()
    suites: FrozenSet[str] = frozenset()

    def applies_to(self, kind: str) -> bool:
        return kind in self.applicable_kinds


class LintConfig:
    # Folder roles of an ACIMOV repository
    MODULES_DIR = "src"
    DOMAINS_DIR = "domains"
    USE_CASES_DIR = "use-cases"
    ACIMOV_DIR = ".acimov"
    PARAMETERS_FILE = ".acimov/parameters.json"
    CUSTOM_MODEL_TESTS_DIR = ".acimov/custom-tests/model"
    CUSTOM_DATA_TESTS_DIR = ".acimov/custom-tests/data"
    OUTPUT_DIR = ".acimov/output"
    BADGES_DIR = "badges"

    CONFIG_ENV_VAR = "ACIMOV_LINT_CONFIG"

    DEFAULT_TERM_DISTANCE_THRESHOLD = 3
    DEFAULT_NAMESPACE_DISTANCE_MAX = 2
    DEFAULT_MAX_ITERATIONS = 10000
    DEFAULT_BLOCKING_ERRORS = ("syntax-error",)
    DEFAULT_DATASET_PATTERN = "dataset*.ttl"
    DEFAULT_FILE_URL_TEMPLATE = "{host}/blob/{version}/{path}"

    # Namespace of MajorFail, MinorFail, VersionedEntity and the PROV roles
    REPORT_VOCABULARY = "https://w3id.org/acimov-lint/ns#"

    SUITE_NAME = "acimov-lint"
    SUITES = ("model", "data", "query")
    TRIGGERS = ("manual", "pre-commit", "ci")

    BAR_CHART_CAP = 40
    OUTCOME_ORDER = ("MajorFail", "MinorFail", "CannotTell", "NotTested", "Pass")
    BADGE_COLORS = {
        "MajorFail": "red",
        "MinorFail": "orange",
        "CannotTell": "yellow",
        "NotTested": "grey",
        "Pass": "green",
    }
    BADGE_OK_COLOR = "green"

    PACKAGE_ROOT = Path(__file__).resolve().parent.parent
    DATA_DIR = PACKAGE_ROOT / "data"
    PREFIX_REGISTRY = DATA_DIR / "prefixes.json"
    DEFAULT_PARAMETERS = DATA_DIR / "default_parameters.json"
    VOCABULARY_FILE = DATA_DIR / "vocabulary.ttl"


def _criterion(id, title, description, kinds, prerequisites=("syntax-error",), suites=("model",)):
    return TestCriterion(id, title, description, frozenset(kinds), tuple(prerequisites), frozenset(suites))


CRITERIA: Tuple[TestCriterion, ...] = (
    _criterion(
        "syntax-error", "Syntax",
        "Every file of the subject parses as Turtle.",
        MODEL_KINDS | DATA_KINDS, (), ("model", "data"),
    ),
    _criterion(
        "term-referencing", "Term referencing",
        "Every ontology term is linked to its ontology with rdfs:isDefinedBy.",
        MODEL_KINDS,
    ),
    _criterion(
        "domain-range-vocabulary", "Domain and range vocabulary",
        "Every rdfs:domain and rdfs:range of an ontology property points to a named class.",
        MODEL_KINDS,
    ),
    _criterion(
        "subset-property-misuse", "Subclass and subproperty usage",
        "rdfs:subClassOf never relates properties and rdfs:subPropertyOf never relates classes.",
        MODEL_KINDS,
    ),
    _criterion(
        "term-differentiation", "Term differentiation",
        "No two ontology terms have local names closer than the configured Levenshtein threshold.",
        MODEL_KINDS,
    ),
    _criterion(
        "english-labels", "English labels",
        "Every ontology term has an rdfs:label tagged as English.",
        MODEL_KINDS,
    ),
    _criterion(
        "owl-rl-consistency", "OWL 2 RL consistency",
        "Saturating the subject under OWL 2 RL rules derives no contradiction.",
        MODEL_KINDS | DATA_KINDS, ("syntax-error",), ("model", "data"),
    ),
    _criterion(
        "profile-compatibility-EL", "OWL 2 EL compatibility",
        "The subject only uses constructs allowed by the OWL 2 EL profile.",
        MODEL_KINDS,
    ),
    _criterion(
        "profile-compatibility-QL", "OWL 2 QL compatibility",
        "The subject only uses constructs allowed by the OWL 2 QL profile.",
        MODEL_KINDS,
    ),
    _criterion(
        "profile-compatibility-RL", "OWL 2 RL compatibility",
        "The subject only uses constructs allowed by the OWL 2 RL profile.",
        MODEL_KINDS,
    ),
    _criterion(
        "known-terms", "Known terms",
        "Every term of the ontology namespace used by the data is defined in the ontology.",
        DATA_KINDS, ("syntax-error",), ("data",),
    ),
    _criterion(
        "namespace-typo", "Namespace typos",
        "No namespace used is a near miss of a well-known or project namespace.",
        DATA_KINDS | QUERY_KINDS, ("syntax-error", "query-syntax"), ("data", "query"),
    ),
    _criterion(
        "query-syntax", "Query syntax",
        "The competency question parses as a SPARQL 1.1 query.",
        QUERY_KINDS, (), ("query",),
    ),
    _criterion(
        "query-form", "Query form",
        "The competency question is a SELECT (open question) or ASK (closed question) query.",
        QUERY_KINDS, ("query-syntax",), ("query",),
    ),
    _criterion(
        "uri-validity", "URI validity",
        "Every IRI used by the competency question conforms to RFC 3986.",
        QUERY_KINDS, ("query-syntax",), ("query",),
    ),
)

BUILTIN_CRITERION_IDS = frozenset(criterion.id for criterion in CRITERIA)
CUSTOM_PREFIXES = ("custom-model:", "custom-data:")


def is_known_criterion(criterion_id: str) -> bool:
    return criterion_id in BUILTIN_CRITERION_IDS or criterion_id.startswith(CUSTOM_PREFIXES)


def custom_criterion(suite: str, stem: str, path: str) -> TestCriterion:
    """Criterion backed by one shape file of the model or data custom tests"""
    kinds = MODEL_KINDS if suite == "model" else DATA_KINDS
    return _criterion(
        f"custom-{suite}:{stem}", f"Custom {suite} test {stem}",
        f"The subject conforms to the shapes of {path}.",
        kinds, ("syntax-error",), (suite,),
    )


def criterion_graph(criteria: Iterable[TestCriterion]) -> nx.DiGraph:
    """Prerequisite DAG: an edge runs from each prerequisite to its dependent"""
    graph = nx.DiGraph()
    criteria = list(criteria)
    ids = {criterion.id for criterion in criteria}
    for criterion in criteria:
        graph.add_node(criterion.id, criterion=criterion)
    for criterion in criteria:
        for prerequisite in criterion.prerequisites:
            if prerequisite in ids:
                graph.add_edge(prerequisite, criterion.id)
    if not nx.is_directed_acyclic_graph(graph):
        cycle = nx.find_cycle(graph)
        raise ValueError(f"criterion prerequisites form a cycle: {cycle}")
    return graph


def evaluation_order(criteria: Iterable[TestCriterion]) -> List[TestCriterion]:
    """Prerequisites first; ties keep declaration order"""
    criteria = list(criteria)
    position: Dict[str, int] = {criterion.id: index for index, criterion in enumerate(criteria)}
    graph = criterion_graph(criteria)
    ordered = nx.lexicographical_topological_sort(graph, key=lambda node: position[node])
    return [graph.nodes[node]["criterion"] for node in ordered]
