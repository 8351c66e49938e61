"""
Project parameters: the optional .acimov/parameters.json document.

Every key is optional; missing keys keep their defaults, unknown keys are
reported as warnings, and values of the wrong type or range are errors
carrying the line of the offending key.
"""

import fnmatch
import json
import logging
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, FrozenSet, Mapping, Optional, Tuple, Union

import jsonschema

from rdfkit.errors import LintError
from suites.config import LintConfig, is_known_criterion

logger = logging.getLogger(__name__)

LAYOUT_ROLES = ("modules", "domains", "use_cases", "custom_model_tests", "custom_data_tests", "output")

PARAMETERS_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "properties": {
        "ontology_namespace": {"type": "string", "minLength": 1},
        "blocking_errors": {"type": "array", "items": {"type": "string"}},
        "skipped_tests": {
            "type": "array",
            "items": {
                "oneOf": [
                    {"type": "string"},
                    {
                        "type": "object",
                        "properties": {
                            "criterion": {"type": "string"},
                            "files": {"type": "string"},
                        },
                        "required": ["criterion"],
                        "additionalProperties": False,
                    },
                ]
            },
        },
        "tested_files_exclude": {"type": "array", "items": {"type": "string"}},
        "term_distance_threshold": {"type": "integer", "minimum": 1},
        "namespace_distance_max": {"type": "integer", "minimum": 1},
        "prefix_registry_path": {"type": "string", "minLength": 1},
        "max_iterations": {"type": "integer", "minimum": 1},
        "layout_overrides": {
            "type": "object",
            "properties": {role: {"type": "string", "minLength": 1} for role in LAYOUT_ROLES},
            "additionalProperties": False,
        },
        "report_vocabulary": {"type": "string", "minLength": 1},
        "repository_url": {"type": "string", "minLength": 1},
        "file_url_template": {"type": "string", "minLength": 1},
        "dataset_pattern": {"type": "string", "minLength": 1},
    },
}


class ConfigError(LintError):
    """Malformed parameters document"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass(frozen=True)
class SkippedTest:
    criterion: str
    files: Optional[str] = None

    def matches(self, criterion_id: str, files) -> bool:
        """Skip applies when the criterion matches and every file matches the glob"""
        if criterion_id != self.criterion:
            return False
        if self.files is None:
            return True
        files = list(files)
        return bool(files) and all(fnmatch.fnmatch(path, self.files) for path in files)


@dataclass(frozen=True)
class Parameters:
    ontology_namespace: Optional[str] = None
    blocking_errors: FrozenSet[str] = frozenset(LintConfig.DEFAULT_BLOCKING_ERRORS)
    skipped_tests: Tuple[SkippedTest, ...] = ()
    tested_files_exclude: Tuple[str, ...] = ()
    term_distance_threshold: int = LintConfig.DEFAULT_TERM_DISTANCE_THRESHOLD
    namespace_distance_max: int = LintConfig.DEFAULT_NAMESPACE_DISTANCE_MAX
    prefix_registry_path: Path = LintConfig.PREFIX_REGISTRY
    max_iterations: int = LintConfig.DEFAULT_MAX_ITERATIONS
    layout_overrides: Mapping[str, str] = field(default_factory=dict)
    report_vocabulary: str = LintConfig.REPORT_VOCABULARY
    repository_url: Optional[str] = None
    file_url_template: str = LintConfig.DEFAULT_FILE_URL_TEMPLATE
    dataset_pattern: str = LintConfig.DEFAULT_DATASET_PATTERN
    warnings: Tuple[str, ...] = field(default=(), compare=False)

    def is_skipped(self, criterion_id: str, files) -> bool:
        files = list(files)
        return any(skip.matches(criterion_id, files) for skip in self.skipped_tests)

    def is_excluded(self, relative_path: str) -> bool:
        return any(fnmatch.fnmatch(relative_path, pattern) for pattern in self.tested_files_exclude)

    def folder(self, role: str) -> str:
        """Repository-relative folder playing a layout role"""
        defaults = {
            "modules": LintConfig.MODULES_DIR,
            "domains": LintConfig.DOMAINS_DIR,
            "use_cases": LintConfig.USE_CASES_DIR,
            "custom_model_tests": LintConfig.CUSTOM_MODEL_TESTS_DIR,
            "custom_data_tests": LintConfig.CUSTOM_DATA_TESTS_DIR,
            "output": LintConfig.OUTPUT_DIR,
        }
        return self.layout_overrides.get(role, defaults[role])


def _line_of_key(text: str, key: Any) -> Optional[int]:
    if not isinstance(key, str):
        return None
    index = text.find(json.dumps(key))
    if index < 0:
        return None
    return text.count("\n", 0, index) + 1


def parse_parameters(text: str, source: str = "parameters.json") -> Parameters:
    """Build Parameters from the text of a parameters document"""
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{source}: invalid JSON: {exc.msg}", exc.lineno) from exc

    validator = jsonschema.Draft7Validator(PARAMETERS_SCHEMA)
    errors = sorted(validator.iter_errors(document), key=lambda error: [str(part) for part in error.path])
    if errors:
        error = errors[0]
        path = list(error.path)
        location = ".".join(str(part) for part in path) or "document"
        line = _line_of_key(text, path[0]) if path else 1
        raise ConfigError(f"{source}: {location}: {error.message}", line)

    warnings = []
    for key in sorted(set(document) - set(PARAMETERS_SCHEMA["properties"])):
        message = f"{source}: unknown key '{key}' ignored"
        logger.warning(message)
        warnings.append(message)

    values: Dict[str, Any] = {}
    if "blocking_errors" in document:
        unknown = [value for value in document["blocking_errors"] if not is_known_criterion(value)]
        if unknown:
            raise ConfigError(
                f"{source}: blocking_errors: unknown criterion '{unknown[0]}'",
                _line_of_key(text, "blocking_errors"),
            )
        values["blocking_errors"] = frozenset(document["blocking_errors"])
    if "skipped_tests" in document:
        skipped = []
        for entry in document["skipped_tests"]:
            if isinstance(entry, str):
                skipped.append(SkippedTest(entry))
            else:
                skipped.append(SkippedTest(entry["criterion"], entry.get("files")))
        values["skipped_tests"] = tuple(skipped)
    if "tested_files_exclude" in document:
        values["tested_files_exclude"] = tuple(document["tested_files_exclude"])
    if "prefix_registry_path" in document:
        values["prefix_registry_path"] = Path(document["prefix_registry_path"])
    if "layout_overrides" in document:
        values["layout_overrides"] = dict(document["layout_overrides"])
    for key in ("ontology_namespace", "term_distance_threshold", "namespace_distance_max", "max_iterations",
                "report_vocabulary", "repository_url", "file_url_template", "dataset_pattern"):
        if key in document:
            values[key] = document[key]
    return Parameters(warnings=tuple(warnings), **values)


def load_parameters(path: Optional[Union[str, Path]] = None) -> Parameters:
    """
    Load a parameters file. No path, or a path that does not exist, yields
    the defaults. A relative prefix_registry_path resolves against the
    repository holding the parameters file.
    """
    if path is None:
        return Parameters()
    path = Path(path)
    if not path.exists():
        logger.info("No parameters file at %s, using defaults", path)
        return Parameters()
    parameters = parse_parameters(path.read_text(encoding="utf-8"), str(path))
    registry = parameters.prefix_registry_path
    if not registry.is_absolute() and registry != LintConfig.PREFIX_REGISTRY:
        repository = path.resolve().parent
        if repository.name == LintConfig.ACIMOV_DIR:
            repository = repository.parent
        parameters = replace(parameters, prefix_registry_path=repository / registry)
    return parameters


def resolve_parameters_path(root: Union[str, Path], override: Optional[Union[str, Path]] = None) -> Path:
    """Explicit path, then the ACIMOV_LINT_CONFIG variable, then .acimov/parameters.json"""
    if override:
        return Path(override)
    environment = os.environ.get(LintConfig.CONFIG_ENV_VAR)
    if environment:
        return Path(environment)
    return Path(root) / LintConfig.PARAMETERS_FILE


def load_prefix_registry(parameters: Parameters) -> Dict[str, str]:
    """Prefix to namespace map of the registry snapshot"""
    with open(parameters.prefix_registry_path, "r", encoding="utf-8") as f:
        document = json.load(f)
    return dict(document.get("prefixes", document))
