"""
Markdown report: a browsable rendering of the Turtle report for GitHub.

Sections: about, assertor, statistics, then one section per outcome type
present (MajorFail, MinorFail, CannotTell, NotTested, Pass), each made of a
summary table followed by detail blocks that link back to it.
"""

import re
from typing import Dict, List, Sequence, Tuple

from suites.config import LintConfig
from suites.outcomes import Assertion, Outcome, Pointer
from reports.context import ReportContext, Statistics, compute_statistics, report_file_stem

SEVERITY_EXPLANATIONS = {
    "MajorFail": "blocking error: the ontology should not be deployed until it is fixed",
    "MinorFail": "non-blocking error that should still be fixed",
    "CannotTell": "unexpected situation that needs a human judgement",
    "NotTested": "test not run because a prerequisite was not validated",
    "Pass": "the subject passed the test",
}

BAR = "\u2588"


def heading_slug(text: str) -> str:
    """GitHub heading anchor: lower-cased, punctuation dropped, spaces to hyphens"""
    slug = text.strip().lower()
    slug = re.sub(r"[^\w\- ]", "", slug)
    return slug.replace(" ", "-")


def row_anchor(name: str, number: int) -> str:
    """Anchor of the summary row that links to detail block number"""
    return f"{heading_slug(name)}-row-{number}"


def bar(count: int, cap: int = LintConfig.BAR_CHART_CAP) -> str:
    if count <= cap:
        return BAR * count
    return BAR * cap + f" +{count - cap}"


def cell(text: str) -> str:
    return str(text).replace("\\", "\\\\").replace("|", "\\|").replace("\r", "").replace("\n", "<br>")


def render_pointer(pointer: Pointer) -> str:
    if pointer.kind == "uri":
        return f"<{pointer.value}>" if re.match(r"^[A-Za-z][A-Za-z0-9+.\-]*:\S*$", pointer.value) else cell(pointer.value)
    if pointer.kind == "snippet":
        return "`" + cell(pointer.value).replace("`", "'") + "`"
    return cell(pointer.value)


class MarkdownReport:
    """Builds the Markdown document line by line"""

    def __init__(self, assertions: Sequence[Assertion], ctx: ReportContext):
        self.assertions = list(assertions)
        self.ctx = ctx
        self.stats = compute_statistics(self.assertions)
        self.lines: List[str] = []

    def emit(self, *lines: str):
        self.lines.extend(lines)

    def by_type(self) -> Dict[str, List[Tuple[Assertion, Outcome]]]:
        grouped: Dict[str, List[Tuple[Assertion, Outcome]]] = {}
        for assertion in self.assertions:
            for outcome in assertion.outcomes:
                grouped.setdefault(outcome.type.value, []).append((assertion, outcome))
        return grouped

    def about(self):
        stem = report_file_stem(self.ctx)
        self.emit(
            f"# {self.ctx.suite.capitalize()} test report",
            "",
            "## About this report",
            "",
            f"This report is the human-readable rendering of the EARL report `{stem}.ttl`. "
            "Each assertion of the Turtle report relates a test subject (one or several files) to a "
            "test criterion and to the outcomes of the test. Outcomes are grouped below by type, "
            "each group starting with a summary table linking to the outcome details.",
            "",
        )

    def assertor(self):
        ctx = self.ctx
        project = ctx.project
        self.emit(
            "## Assertor",
            "",
            "| Field | Value |",
            "| --- | --- |",
            f"| Developer | {cell(ctx.developer)} |",
            f"| Trigger | {ctx.trigger.value} |",
            f"| Test suite | {cell(ctx.suite)} ({cell(ctx.test_suite.host_url)} `{ctx.test_suite.version[:12]}`) |",
            f"| Date | {ctx.iso_timestamp} |",
            f"| Project | {cell(project.host_url)} |",
            f"| Project version | `{project.version}` |",
        )
        if project.derived_from_commit:
            self.emit(f"| Derived from commit | `{project.derived_from_commit}` |")
        self.emit("")

    def statistics(self):
        stats: Statistics = self.stats
        self.emit(
            "## Statistics",
            "",
            f"The report holds {len(self.assertions)} assertions and {stats.total} outcomes.",
            "",
            "| Outcome | Count | Chart | Meaning |",
            "| --- | ---: | --- | --- |",
        )
        for name in LintConfig.OUTCOME_ORDER:
            count = stats.count(name)
            self.emit(f"| {name} | {count} | {bar(count)} | {SEVERITY_EXPLANATIONS[name]} |")
        self.emit(f"| Total | {stats.total} | | |", "")

    def outcome_section(self, name: str, entries: List[Tuple[Assertion, Outcome]]):
        summary_heading = f"{name} summary"
        self.emit(
            f"## {name}",
            "",
            f"### {summary_heading}",
            "",
            "| # | Subject | Criterion | Outcome | Details |",
            "| ---: | --- | --- | --- | --- |",
        )
        for number, (assertion, outcome) in enumerate(entries, start=1):
            self.emit(
                f"| {number} | {cell(assertion.subject.id)} | {cell(assertion.criterion.id)} "
                f"| {cell(outcome.title)} | [details](#{heading_slug(f'{name} {number}')}) "
                f"<a id=\"{row_anchor(name, number)}\"></a> |"
            )
        self.emit("")
        for number, (assertion, outcome) in enumerate(entries, start=1):
            self.detail(name, number, assertion, outcome)

    def detail(self, name: str, number: int, assertion: Assertion, outcome: Outcome):
        subject, criterion = assertion.subject, assertion.criterion
        files = "<br>".join(f"[{cell(path)}]({self.ctx.file_link(path)})" for path in subject.files)
        pointers = "<br>".join(render_pointer(pointer) for pointer in outcome.pointers) or "none"
        self.emit(
            f"### {name} {number}",
            "",
            f"[Back to the {name} summary row](#{row_anchor(name, number)})",
            "",
            "| Subject | |",
            "| --- | --- |",
            f"| Identifier | {cell(subject.id)} |",
            f"| Description | {cell(subject.description)} |",
            f"| Files | {files} |",
            "",
            "| Criterion | |",
            "| --- | --- |",
            f"| Identifier | {cell(criterion.id)} |",
            f"| Title | {cell(criterion.title)} |",
            f"| Description | {cell(criterion.description)} |",
            "",
            "| Outcome | |",
            "| --- | --- |",
            f"| Type | {outcome.type.value} |",
            f"| Title | {cell(outcome.title)} |",
            f"| Description | {cell(outcome.description)} |",
            f"| Pointers | {pointers} |",
            "",
        )

    def render(self) -> str:
        self.about()
        self.assertor()
        self.statistics()
        grouped = self.by_type()
        for name in LintConfig.OUTCOME_ORDER:
            if grouped.get(name):
                self.outcome_section(name, grouped[name])
        return "\n".join(self.lines).rstrip("\n") + "\n"


def emit_markdown(assertions: Sequence[Assertion], ctx: ReportContext) -> str:
    return MarkdownReport(assertions, ctx).render()
