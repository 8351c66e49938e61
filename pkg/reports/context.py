"""
Report context and statistics shared by the Turtle, Markdown and badge
outputs.
"""

import os
import re
from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Dict, Iterable, Optional, Tuple

from project.version import VersionDescriptor
from suites.config import LintConfig
from suites.outcomes import Assertion, OutcomeType


class Trigger(str, Enum):
    MANUAL = "manual"
    PRE_COMMIT = "pre-commit"
    CI = "ci"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ReportContext:
    project: VersionDescriptor
    test_suite: VersionDescriptor
    developer: str
    trigger: Trigger
    timestamp: datetime
    suite: str = "model"
    root: Path = Path(".")
    output_dir: Optional[Path] = None
    report_uris: Tuple[str, str] = ("", "")
    vocabulary: str = LintConfig.REPORT_VOCABULARY
    file_url_template: str = LintConfig.DEFAULT_FILE_URL_TEMPLATE

    def __post_init__(self):
        object.__setattr__(self, "trigger", Trigger(self.trigger))
        if self.timestamp.tzinfo is None:
            object.__setattr__(self, "timestamp", self.timestamp.replace(tzinfo=timezone.utc))
        else:
            object.__setattr__(self, "timestamp", self.timestamp.astimezone(timezone.utc))

    @property
    def iso_timestamp(self) -> str:
        return self.timestamp.strftime("%Y-%m-%dT%H:%M:%SZ")

    @property
    def host_version(self) -> str:
        """Commit used in repository-host links"""
        return self.project.derived_from_commit or self.project.version

    def host_url(self, path: str) -> str:
        return self.file_url_template.format(host=self.project.host_url, version=self.host_version, path=path)

    def file_uri(self, path: str) -> str:
        """Repository-host URL in ci mode, local file URI otherwise"""
        if self.trigger == Trigger.CI:
            return self.host_url(path)
        return (Path(self.root).resolve() / path).as_uri()

    def file_link(self, path: str) -> str:
        """Markdown link target: host URL in ci mode, path relative to the report otherwise"""
        if self.trigger == Trigger.CI:
            return self.host_url(path)
        if self.output_dir is None:
            return path
        target = Path(self.root).resolve() / path
        return Path(os.path.relpath(target, Path(self.output_dir).resolve())).as_posix()


@dataclass(frozen=True)
class Statistics:
    total: int
    per_type: Dict[str, int]
    assertions: int = 0

    def count(self, outcome_type) -> int:
        return self.per_type.get(str(outcome_type), 0)


def compute_statistics(assertions: Iterable[Assertion]) -> Statistics:
    """Outcome counts per type; total is their sum"""
    per_type = {name: 0 for name in LintConfig.OUTCOME_ORDER}
    assertion_count = 0
    for assertion in assertions:
        assertion_count += 1
        for outcome in assertion.outcomes:
            per_type[outcome.type.value] = per_type.get(outcome.type.value, 0) + 1
    return Statistics(sum(per_type.values()), per_type, assertion_count)


def profile_results(assertions: Iterable[Assertion]) -> Dict[str, bool]:
    """Profile compatibility of the modules merge, for the profiles that were tested"""
    results: Dict[str, bool] = {}
    for assertion in assertions:
        criterion_id = assertion.criterion.id
        if assertion.subject.kind != "modules-merge" or not criterion_id.startswith("profile-compatibility-"):
            continue
        if assertion.has_type(OutcomeType.NOT_TESTED) or assertion.has_type(OutcomeType.CANNOT_TELL):
            continue
        results[criterion_id.rsplit("-", 1)[1]] = assertion.has_type(OutcomeType.PASS)
    return results


def _safe(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.\-]", "", text) or "unknown"


def report_file_stem(ctx: ReportContext) -> str:
    """{suite}-test-{trigger}-{developer}-{UTC timestamp} with ':' replaced by '-'"""
    stem = f"{ctx.suite}-test-{ctx.trigger.value}-{_safe(ctx.developer)}-{ctx.iso_timestamp.rstrip('Z')}"
    return stem.replace(":", "-")
