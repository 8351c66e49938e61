"""
EARL result model: outcomes with their pointers, assertions and the assertor.
"""

from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, Optional, Tuple

from project.subjects import TestSubject
from project.version import VersionDescriptor
from suites.config import TestCriterion


class OutcomeType(str, Enum):
    PASS = "Pass"
    FAIL = "Fail"
    MINOR_FAIL = "MinorFail"
    MAJOR_FAIL = "MajorFail"
    CANNOT_TELL = "CannotTell"
    NOT_TESTED = "NotTested"

    def __str__(self) -> str:
        return self.value

    @property
    def is_failure(self) -> bool:
        return self in (OutcomeType.FAIL, OutcomeType.MINOR_FAIL, OutcomeType.MAJOR_FAIL)


@dataclass(frozen=True)
class Pointer:
    """Where an outcome applies: a URI, a code snippet or a message"""

    kind: str
    value: str

    KINDS = ("uri", "snippet", "message")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown pointer kind {self.kind!r}")

    @classmethod
    def uri(cls, value) -> "Pointer":
        return cls("uri", str(value))

    @classmethod
    def snippet(cls, value: str) -> "Pointer":
        return cls("snippet", value)

    @classmethod
    def message(cls, value: str) -> "Pointer":
        return cls("message", value)

    def __str__(self) -> str:
        return f"<{self.value}>" if self.kind == "uri" else self.value


@dataclass(frozen=True)
class Outcome:
    type: OutcomeType
    title: str
    description: str
    pointers: Tuple[Pointer, ...] = ()

    def with_type(self, outcome_type: OutcomeType) -> "Outcome":
        return replace(self, type=outcome_type)


@dataclass(frozen=True)
class Assertor:
    project: VersionDescriptor
    test_suite: VersionDescriptor
    developer: str
    trigger: str


@dataclass(frozen=True)
class Assertion:
    subject: TestSubject
    criterion: TestCriterion
    outcomes: Tuple[Outcome, ...]
    assertor: Optional[Assertor] = None

    def __post_init__(self):
        if not self.outcomes:
            raise ValueError(f"assertion of {self.criterion.id} on {self.subject.id} has no outcome")

    @property
    def sort_key(self) -> Tuple[str, str]:
        return (self.subject.id, self.criterion.id)

    def has_type(self, outcome_type: OutcomeType) -> bool:
        return any(outcome.type == outcome_type for outcome in self.outcomes)


def passed(title: str, description: str, pointers: Iterable[Pointer] = ()) -> Outcome:
    return Outcome(OutcomeType.PASS, title, description, tuple(pointers))


def failed(title: str, description: str, pointers: Iterable[Pointer] = ()) -> Outcome:
    return Outcome(OutcomeType.FAIL, title, description, tuple(pointers))


def cannot_tell(title: str, description: str, pointers: Iterable[Pointer] = ()) -> Outcome:
    return Outcome(OutcomeType.CANNOT_TELL, title, description, tuple(pointers))


def not_tested(title: str, description: str, pointers: Iterable[Pointer] = ()) -> Outcome:
    return Outcome(OutcomeType.NOT_TESTED, title, description, tuple(pointers))
