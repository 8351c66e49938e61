"""
Suite machinery shared by the model, data and query suites: criterion
ordering, skipping, prerequisite gating and custom SHACL tests.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Set, Tuple, Union

from rdfkit.distance import levenshtein
from rdfkit.errors import LintError
from rdfkit.terms import Graph
from rdfkit.turtle import parse_turtle_file
from reasoning.rl import IterationLimitExceeded
from reasoning.shacl import ShapesLoadResult, load_shapes, validate
from project.parameters import Parameters
from project.subjects import TestSubject
from suites.config import CRITERIA, TestCriterion, custom_criterion, evaluation_order
from suites.outcomes import (
    Assertion, Assertor, Outcome, OutcomeType, Pointer, cannot_tell, failed, not_tested, passed,
)

logger = logging.getLogger(__name__)

Check = Callable[[TestSubject], List[Outcome]]


@dataclass(frozen=True)
class SuiteContext:
    """Everything a suite needs besides its subjects"""

    root: Path = Path(".")
    parameters: Parameters = field(default_factory=Parameters)
    namespace: Optional[str] = None
    ontology: Optional[Graph] = field(default=None, compare=False)
    registry: Mapping[str, str] = field(default_factory=dict)
    custom_tests: Tuple[str, ...] = ()
    assertor: Optional[Assertor] = None


def near_misses(used: Iterable[str], references: Iterable[str], max_distance: int) -> List[Tuple[str, str, int]]:
    """
    (used, reference, distance) for every used namespace within
    1..max_distance edits of a reference. Exact matches are never reported.
    """
    references = sorted(set(references))
    exact = set(references)
    found = []
    for namespace in sorted(set(used)):
        if namespace in exact:
            continue
        for reference in references:
            if abs(len(reference) - len(namespace)) > max_distance:
                continue
            distance = levenshtein(namespace, reference)
            if 1 <= distance <= max_distance:
                found.append((namespace, reference, distance))
    return found


def typo_outcomes(used: Iterable[str], references: Iterable[str], max_distance: int) -> List[Outcome]:
    misses = near_misses(used, references, max_distance)
    if not misses:
        return [passed("No namespace typo", "No namespace used is a near miss of a known namespace.")]
    pointers = [
        Pointer.message(f"<{namespace}> is {distance} edit(s) away from <{reference}>")
        for namespace, reference, distance in misses
    ]
    return [cannot_tell(
        "Possible namespace typo",
        "Some namespaces are close to well-known or project namespaces; they could be correct yet unknown.",
        pointers,
    )]


class BaseSuite:
    """Runs the criteria of one suite over test subjects"""

    name = ""

    def __init__(self, context: SuiteContext):
        self.context = context
        self.parameters = context.parameters
        self.custom_paths: Dict[str, str] = {}
        custom = []
        for path in context.custom_tests:
            criterion = custom_criterion(self.name, Path(path).stem, path)
            self.custom_paths[criterion.id] = path
            custom.append(criterion)
        builtin = [criterion for criterion in CRITERIA if self.name in criterion.suites]
        self.criteria: List[TestCriterion] = evaluation_order(builtin + custom)
        self.criteria_by_id = {criterion.id: criterion for criterion in self.criteria}
        self.checks: Dict[str, Check] = self.build_checks()
        self._shapes: Dict[str, Union[ShapesLoadResult, LintError]] = {}

    def build_checks(self) -> Dict[str, Check]:
        """Criterion id to check function for the built-in criteria of the suite"""
        raise NotImplementedError

    def run(self, subjects: Iterable[TestSubject]) -> List[Assertion]:
        """One assertion per (subject, applicable and not skipped criterion), sorted"""
        assertions: List[Assertion] = []
        for subject in subjects:
            assertions.extend(self.run_subject(subject))
        logger.info("%s suite produced %d assertions", self.name, len(assertions))
        return sorted(assertions, key=lambda assertion: assertion.sort_key)

    def run_subject(self, subject: TestSubject) -> List[Assertion]:
        results: Dict[str, Assertion] = {}
        skipped: Set[str] = set()
        for criterion in self.criteria:
            if not criterion.applies_to(subject.kind):
                continue
            if self.parameters.is_skipped(criterion.id, subject.files):
                logger.debug("Skipping %s on %s", criterion.id, subject.id)
                skipped.add(criterion.id)
                continue
            unmet = self.unmet_prerequisites(criterion, subject, results, skipped)
            if unmet:
                outcomes = [not_tested(
                    "Prerequisite not validated",
                    f"{criterion.title} was not run because a prerequisite criterion was not validated.",
                    [Pointer.message(f"prerequisite {prerequisite} not validated") for prerequisite in unmet],
                )]
            else:
                outcomes = self.evaluate(criterion, subject)
            results[criterion.id] = Assertion(subject, criterion, tuple(outcomes), self.context.assertor)
        return list(results.values())

    def unmet_prerequisites(self, criterion: TestCriterion, subject: TestSubject,
                            results: Mapping[str, Assertion], skipped: Set[str]) -> List[str]:
        """A prerequisite is met when skipped, not applicable, or free of failures"""
        unmet = []
        for prerequisite in criterion.prerequisites:
            if prerequisite in skipped:
                continue
            assertion = results.get(prerequisite)
            if assertion is None:
                continue
            if any(outcome.type.is_failure or outcome.type == OutcomeType.NOT_TESTED
                   for outcome in assertion.outcomes):
                unmet.append(prerequisite)
        return unmet

    def evaluate(self, criterion: TestCriterion, subject: TestSubject) -> List[Outcome]:
        check = self.checks.get(criterion.id)
        if check is None and criterion.id in self.custom_paths:
            check = lambda target: self.check_custom(criterion, target)
        try:
            if check is None:
                raise LintError(f"no check registered for {criterion.id}")
            outcomes = check(subject)
        except Exception as e:
            logger.exception("Criterion %s failed on %s", criterion.id, subject.id)
            return [cannot_tell(
                "Test could not complete",
                f"An unexpected error interrupted the {criterion.title} test.",
                [Pointer.message(f"{type(e).__name__}: {e}")],
            )]
        return outcomes or [passed(criterion.title, criterion.description)]

    def namespace_unknown(self) -> List[Outcome]:
        return [cannot_tell(
            "Ontology namespace unknown",
            "The ontology namespace is neither configured nor inferable, so namespace-scoped terms cannot be listed.",
            [Pointer.message("set ontology_namespace in .acimov/parameters.json")],
        )]

    def load_custom(self, path: str) -> Union[ShapesLoadResult, LintError]:
        if path not in self._shapes:
            try:
                self._shapes[path] = load_shapes(parse_turtle_file(self.context.root / path).graph)
            except (LintError, OSError) as e:
                logger.warning("Custom test %s cannot be loaded: %s", path, e)
                self._shapes[path] = e if isinstance(e, LintError) else LintError(str(e))
        return self._shapes[path]

    def shape_data(self, subject: TestSubject) -> Graph:
        """Graph the custom shapes are validated against"""
        return subject.graph

    def check_custom(self, criterion: TestCriterion, subject: TestSubject) -> List[Outcome]:
        """Violations fail, warnings and unsupported features cannot tell, infos pass with pointers"""
        path = self.custom_paths[criterion.id]
        loaded = self.load_custom(path)
        if isinstance(loaded, LintError):
            return [cannot_tell(
                "Custom test not loadable",
                f"The shape file {path} could not be loaded.",
                [Pointer.uri(path), Pointer.message(str(loaded))],
            )]
        try:
            data = self.shape_data(subject)
        except IterationLimitExceeded as e:
            return [cannot_tell(
                "Reasoning did not terminate",
                f"The shapes of {path} need the saturated subject, which could not be computed.",
                [Pointer.message(str(e))],
            )]
        violations = validate(data, loaded.shapes)
        outcomes: List[Outcome] = []
        blocking = [v for v in violations if v.severity == "Violation"]
        advisory = [v for v in violations if v.severity == "Warning"]
        notes = [v for v in violations if v.severity == "Info"]
        if blocking:
            outcomes.append(failed(
                "Shape constraints violated",
                f"The subject does not conform to the shapes of {path}.",
                [Pointer.message(_describe_violation(violation)) for violation in blocking],
            ))
        if advisory:
            outcomes.append(cannot_tell(
                "Shape warnings",
                f"Shapes of {path} reported warnings.",
                [Pointer.message(_describe_violation(violation)) for violation in advisory],
            ))
        if loaded.diagnostics:
            outcomes.append(cannot_tell(
                "Unsupported shape features",
                f"Parts of {path} were ignored.",
                [Pointer.message(diagnostic) for diagnostic in loaded.diagnostics],
            ))
        if not blocking and not advisory:
            outcomes.insert(0, passed(
                "Shapes satisfied",
                f"The subject conforms to the shapes of {path}.",
                [Pointer.message(_describe_violation(violation)) for violation in notes],
            ))
        return outcomes


def _describe_violation(violation) -> str:
    path = f" {violation.path}" if violation.path is not None else ""
    value = f" value {violation.value}" if violation.value is not None else ""
    return f"{violation.severity}: {violation.focus}{path}{value}: {violation.message} ({violation.constraint})"
