"""
Repository scanning.

An ACIMOV repository keeps ontology modules under src/, one folder per
domain and motivating scenario under domains/ (modelets, datasets and
competency questions), larger data fragments under use-cases/, and custom
SHACL tests under .acimov/custom-tests/. Folder roles can be remapped with
the layout_overrides parameter.
"""

import fnmatch
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Tuple, Union

from rdfkit.errors import LintError
from project.parameters import Parameters

logger = logging.getLogger(__name__)


class RootNotFoundError(LintError):
    """The repository root does not exist or is not a directory"""


@dataclass(frozen=True)
class ScenarioFile:
    domain: str
    scenario: str
    path: str


@dataclass(frozen=True)
class UseCaseFile:
    name: str
    path: str


@dataclass(frozen=True)
class ProjectLayout:
    root: Path
    modules: Tuple[str, ...] = ()
    modelets: Tuple[ScenarioFile, ...] = ()
    datasets: Tuple[ScenarioFile, ...] = ()
    questions: Tuple[ScenarioFile, ...] = ()
    use_cases: Tuple[UseCaseFile, ...] = ()
    custom_model_tests: Tuple[str, ...] = ()
    custom_data_tests: Tuple[str, ...] = ()

    @property
    def modelet_paths(self) -> Tuple[str, ...]:
        return tuple(entry.path for entry in self.modelets)

    @property
    def dataset_paths(self) -> Tuple[str, ...]:
        return tuple(entry.path for entry in self.datasets)

    @property
    def question_paths(self) -> Tuple[str, ...]:
        return tuple(entry.path for entry in self.questions)

    @property
    def use_case_paths(self) -> Tuple[str, ...]:
        return tuple(entry.path for entry in self.use_cases)

    def turtle_files(self) -> List[str]:
        """Every Turtle file tested as (part of) a subject"""
        return sorted(set(self.modules + self.modelet_paths + self.dataset_paths + self.use_case_paths))

    def all_files(self) -> List[str]:
        """Every scanned file, custom tests included"""
        return sorted(set(
            self.turtle_files() + list(self.question_paths)
            + list(self.custom_model_tests) + list(self.custom_data_tests)
        ))


def _by_path(entry) -> str:
    return entry.path


def _relative(root: Path, path: Path) -> str:
    return path.relative_to(root).as_posix()


def _files(root: Path, folder: str, pattern: str, parameters: Parameters, recursive: bool = True) -> List[str]:
    base = root / folder
    if not base.is_dir():
        logger.debug("Optional folder %s is missing", base)
        return []
    candidates = base.rglob(pattern) if recursive else base.glob(pattern)
    found = []
    for path in candidates:
        if not path.is_file():
            continue
        relative = _relative(root, path)
        if parameters.is_excluded(relative):
            logger.debug("Excluded %s", relative)
            continue
        found.append(relative)
    return sorted(found)


def scan_repository(root: Union[str, Path], parameters: Parameters) -> ProjectLayout:
    """Classify the repository files by role; missing folders yield empty roles"""
    root = Path(root)
    if not root.is_dir():
        raise RootNotFoundError(f"repository root not found: {root}")
    root = root.resolve()

    modules = _files(root, parameters.folder("modules"), "*.ttl", parameters)

    modelets: List[ScenarioFile] = []
    datasets: List[ScenarioFile] = []
    questions: List[ScenarioFile] = []
    domains_folder = parameters.folder("domains")
    for relative in _files(root, domains_folder, "*", parameters):
        parts = Path(relative).relative_to(domains_folder).parts
        if len(parts) < 3:
            logger.debug("Ignoring %s: not inside a scenario folder", relative)
            continue
        entry = ScenarioFile(parts[0], parts[1], relative)
        name = parts[-1]
        if name.endswith(".rq"):
            questions.append(entry)
        elif name.endswith(".ttl"):
            if fnmatch.fnmatch(name, parameters.dataset_pattern):
                datasets.append(entry)
            else:
                modelets.append(entry)

    use_cases: List[UseCaseFile] = []
    use_cases_folder = parameters.folder("use_cases")
    for relative in _files(root, use_cases_folder, "*.ttl", parameters):
        parts = Path(relative).relative_to(use_cases_folder).parts
        name = parts[0] if len(parts) > 1 else Path(parts[0]).stem
        use_cases.append(UseCaseFile(name, relative))

    layout = ProjectLayout(
        root=root,
        modules=tuple(modules),
        modelets=tuple(sorted(modelets, key=_by_path)),
        datasets=tuple(sorted(datasets, key=_by_path)),
        questions=tuple(sorted(questions, key=_by_path)),
        use_cases=tuple(sorted(use_cases, key=_by_path)),
        custom_model_tests=tuple(_files(root, parameters.folder("custom_model_tests"), "*.ttl", parameters, False)),
        custom_data_tests=tuple(_files(root, parameters.folder("custom_data_tests"), "*.ttl", parameters, False)),
    )
    logger.info(
        "Scanned %s: %d modules, %d modelets, %d datasets, %d questions, %d use-case files",
        root, len(layout.modules), len(layout.modelets), len(layout.datasets),
        len(layout.questions), len(layout.use_cases),
    )
    return layout
