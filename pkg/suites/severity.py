"""Fail severity: MajorFail for blocking criteria, MinorFail otherwise."""

from dataclasses import replace
from typing import AbstractSet, Iterable, List

from project.parameters import Parameters
from suites.outcomes import Assertion, Outcome, OutcomeType


def classify(outcome: Outcome, criterion_id: str, blocking_errors: AbstractSet[str]) -> Outcome:
    if outcome.type != OutcomeType.FAIL:
        return outcome
    if criterion_id in blocking_errors:
        return outcome.with_type(OutcomeType.MAJOR_FAIL)
    return outcome.with_type(OutcomeType.MINOR_FAIL)


def apply_severity(assertions: Iterable[Assertion], parameters: Parameters) -> List[Assertion]:
    """Replace every plain Fail; Pass, CannotTell and NotTested are kept as they are"""
    return [
        replace(assertion, outcomes=tuple(
            classify(outcome, assertion.criterion.id, parameters.blocking_errors)
            for outcome in assertion.outcomes
        ))
        for assertion in assertions
    ]


def blocking_assertions(assertions: Iterable[Assertion]) -> List[Assertion]:
    return [assertion for assertion in assertions if assertion.has_type(OutcomeType.MAJOR_FAIL)]
