#!/usr/bin/env python3
"""
Lint Orchestrator for ACIMOV ontology repositories

Runs the test pipeline over a repository:
1. Scan the repository and load its parameters
2. Assemble test subjects (model, data and query)
3. Run the requested suites and apply error severity
4. Write the EARL/PROV Turtle report, the Markdown report and badges

The same pipeline serves the three execution contexts: manual runs,
pre-commit gating and continuous integration.
"""

import getpass
import logging
import shutil
import subprocess
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from project.layout import ProjectLayout, scan_repository
from project.parameters import Parameters, load_parameters, load_prefix_registry, resolve_parameters_path
from project.subjects import (
    SourceFile, TestSubject, assemble_data_subjects, assemble_model_subjects, assemble_query_subjects,
    infer_namespace, load_sources, ontology_graph,
)
from project.version import compute_suite_version, compute_version
from suites.base_suite import SuiteContext
from suites.config import LintConfig
from suites.data import DataSuite
from suites.model import ModelSuite
from suites.outcomes import Assertion, Assertor, OutcomeType
from suites.query import QuerySuite
from suites.severity import apply_severity, blocking_assertions
from reports.badges import emit_badges, write_badges
from reports.context import ReportContext, Trigger, compute_statistics, profile_results
from reports.writer import write_reports

logger = logging.getLogger(__name__)

SKELETON_DIRS = (
    LintConfig.MODULES_DIR,
    LintConfig.DOMAINS_DIR,
    LintConfig.USE_CASES_DIR,
    LintConfig.CUSTOM_MODEL_TESTS_DIR,
    LintConfig.CUSTOM_DATA_TESTS_DIR,
    LintConfig.OUTPUT_DIR,
)

SUITE_CLASSES = {"model": ModelSuite, "data": DataSuite, "query": QuerySuite}


@dataclass
class LintResult:
    assertions: List[Assertion] = field(default_factory=list)
    report_paths: Tuple[Path, ...] = ()
    badge_paths: Tuple[Path, ...] = ()

    @property
    def blocking(self) -> List[Assertion]:
        return blocking_assertions(self.assertions)

    @property
    def exit_code(self) -> int:
        return 1 if self.blocking else 0


class LintOrchestrator:
    """
    Orchestrates one linter run over an ACIMOV repository.
    Every write happens after all suites have completed.
    """

    def __init__(self, project_dir=".", config_path=None, output_dir=None):
        self.project_dir = Path(project_dir)
        self.config_path = config_path
        self._output_override = output_dir
        self._parameters: Optional[Parameters] = None

    @property
    def parameters(self) -> Parameters:
        if self._parameters is None:
            self._parameters = load_parameters(resolve_parameters_path(self.project_dir, self.config_path))
        return self._parameters

    @property
    def output_dir(self) -> Path:
        if self._output_override:
            output = Path(self._output_override)
            return output if output.is_absolute() else self.project_dir / output
        return self.project_dir / self.parameters.folder("output")

    def get_git_user(self):
        """Get the configured git user name"""
        try:
            result = subprocess.run(
                ['git', 'config', 'user.name'],
                capture_output=True,
                text=True,
                cwd=self.project_dir
            )
            return result.stdout.strip() or None
        except Exception as e:
            logger.info("Cannot read git user name: %s", e)
            return None

    def get_staged_files(self):
        """Get files staged for commit"""
        try:
            result = subprocess.run(
                ['git', 'diff', '--cached', '--name-only', '--diff-filter=ACM'],
                capture_output=True,
                text=True,
                cwd=self.project_dir
            )
            return result.stdout.strip().split('\n') if result.stdout.strip() else []
        except Exception as e:
            logger.info("Cannot list staged files: %s", e)
            return []

    def resolve_developer(self, developer: Optional[str] = None) -> str:
        """--developer, then git user.name, then the OS user"""
        if developer:
            return developer
        name = self.get_git_user()
        if name:
            return name
        try:
            return getpass.getuser()
        except Exception:
            return "unknown"

    def normalize_paths(self, paths: Iterable[str]) -> List[str]:
        """Repository-relative POSIX paths"""
        root = self.project_dir.resolve()
        normalized = []
        for path in paths:
            candidate = Path(path)
            if candidate.is_absolute():
                try:
                    candidate = candidate.resolve().relative_to(root)
                except ValueError:
                    logger.debug("Ignoring %s: outside the repository", path)
                    continue
            normalized.append(candidate.as_posix())
        return sorted(set(normalized))

    def init_project(self) -> List[Path]:
        """Create the repository skeleton; existing files are never touched"""
        created = []
        for folder in SKELETON_DIRS:
            directory = self.project_dir / folder
            directory.mkdir(parents=True, exist_ok=True)
            keep = directory / ".gitkeep"
            if not any(directory.iterdir()):
                keep.touch()
                created.append(keep)
        parameters_file = self.project_dir / LintConfig.PARAMETERS_FILE
        if not parameters_file.exists():
            shutil.copyfile(LintConfig.DEFAULT_PARAMETERS, parameters_file)
            created.append(parameters_file)
        for path in created:
            print(f"Created {path}")
        return created

    def flush_output(self) -> int:
        """Empty the output folder; returns the number of removed entries"""
        output = self.output_dir
        if not output.is_dir():
            return 0
        removed = 0
        for entry in sorted(output.iterdir()):
            if entry.name == ".gitkeep":
                continue
            if entry.is_dir():
                shutil.rmtree(entry)
            else:
                entry.unlink()
            removed += 1
        print(f"Flushed {removed} entries from {output}")
        return removed

    def build_context(self, suite: str, layout: ProjectLayout, sources: Dict[str, SourceFile],
                      assertor: Assertor) -> SuiteContext:
        parameters = self.parameters
        ontology = ontology_graph(layout, sources)
        try:
            registry = load_prefix_registry(parameters)
        except (OSError, ValueError) as e:
            logger.warning("Prefix registry unavailable: %s", e)
            registry = {}
        namespace = parameters.ontology_namespace
        if not namespace:
            first_module = next(
                (sources[path].graph for path in layout.modules if sources[path].valid), None
            )
            namespace = infer_namespace(ontology, first_module, registry.values())
            logger.info("Inferred ontology namespace: %s", namespace)
        custom = {"model": layout.custom_model_tests, "data": layout.custom_data_tests}.get(suite, ())
        return SuiteContext(
            root=self.project_dir,
            parameters=parameters,
            namespace=namespace,
            ontology=ontology,
            registry=registry,
            custom_tests=tuple(custom),
            assertor=assertor,
        )

    def assemble(self, suite: str, layout: ProjectLayout, sources: Dict[str, SourceFile]) -> List[TestSubject]:
        if suite == "model":
            return assemble_model_subjects(layout, sources)
        if suite == "data":
            return assemble_data_subjects(layout, sources)
        return assemble_query_subjects(layout)

    def run_tests(self, suites: Sequence[str], mode: str = "manual", staged_files: Optional[Sequence[str]] = None,
                  developer: Optional[str] = None) -> LintResult:
        """Run the requested suites and write the reports"""
        trigger = Trigger(mode)
        root = self.project_dir
        parameters = self.parameters
        layout = scan_repository(root, parameters)
        sources = load_sources(root, layout.turtle_files())
        staged = self.normalize_paths(staged_files) if staged_files is not None else None

        assertor = Assertor(
            project=compute_version(root, layout, parameters),
            test_suite=compute_suite_version(),
            developer=self.resolve_developer(developer),
            trigger=trigger.value,
        )

        assertions: List[Assertion] = []
        for suite in [name for name in LintConfig.SUITES if name in suites]:
            subjects = self.assemble(suite, layout, sources)
            if staged is not None:
                subjects = [subject for subject in subjects if subject.involves(staged)]
            logger.info("Running %s suite on %d subjects", suite, len(subjects))
            context = self.build_context(suite, layout, sources, assertor)
            assertions.extend(SUITE_CLASSES[suite](context).run(subjects))
        assertions = apply_severity(sorted(assertions, key=lambda a: a.sort_key), parameters)

        ctx = ReportContext(
            project=assertor.project,
            test_suite=assertor.test_suite,
            developer=assertor.developer,
            trigger=trigger,
            timestamp=datetime.now(timezone.utc),
            suite="-".join(name for name in LintConfig.SUITES if name in suites),
            root=root,
            vocabulary=parameters.report_vocabulary,
            file_url_template=parameters.file_url_template,
        )
        paths = write_reports(assertions, ctx, self.output_dir)
        badge_paths: Tuple[Path, ...] = ()
        if trigger == Trigger.CI:
            badges = emit_badges(compute_statistics(assertions), profile_results(assertions))
            badge_paths = tuple(write_badges(badges, self.output_dir / LintConfig.BADGES_DIR))

        result = LintResult(assertions, paths, badge_paths)
        self.print_summary(result)
        if trigger == Trigger.PRE_COMMIT and result.blocking:
            self.print_blocking(result)
        return result

    def print_summary(self, result: LintResult):
        stats = compute_statistics(result.assertions)
        print("=== acimov-lint ===")
        print(f"Assertions: {len(result.assertions)}")
        for name in LintConfig.OUTCOME_ORDER:
            print(f"  {name}: {stats.count(name)}")
        for path in result.report_paths:
            print(f"Report: {path}")
        for path in result.badge_paths:
            print(f"Badge: {path}")

    def print_blocking(self, result: LintResult):
        """One line per blocking outcome: <file>: <criterion>: <first pointer>"""
        for assertion in result.blocking:
            for outcome in assertion.outcomes:
                if outcome.type != OutcomeType.MAJOR_FAIL:
                    continue
                pointer = str(outcome.pointers[0]) if outcome.pointers else outcome.title
                for path in assertion.subject.files:
                    print(f"{path}: {assertion.criterion.id}: {pointer}")
        print("Commit blocked.")


def main():
    orchestrator = LintOrchestrator()
    result = orchestrator.run_tests(LintConfig.SUITES)
    raise SystemExit(result.exit_code)


if __name__ == "__main__":
    main()
