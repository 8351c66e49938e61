"""
Test subjects: the files, individually or merged, that criteria are checked
against.

Model subjects follow the five checking levels of an ACIMOV project: each
module, each modelet, each module merged with each modelet, all modules
merged, and all modules and modelets merged. Only syntactically correct
files take part in merges.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from rdfkit.errors import ParseError
from rdfkit.graphs import merge_graphs
from rdfkit.namespaces import OWL, RDF, VANN, WELL_KNOWN_PREFIXES
from rdfkit.terms import Graph, Iri, Literal
from rdfkit.turtle import parse_turtle_file
from project.layout import ProjectLayout

logger = logging.getLogger(__name__)


class SubjectKind(str, Enum):
    MODULE = "module"
    MODELET = "modelet"
    MODULE_MODELET = "module-modelet"
    MODULES_MERGE = "modules-merge"
    WHOLE_MERGE = "whole-merge"
    DATASET = "dataset"
    USE_CASE = "use-case"
    QUERY = "query"

    def __str__(self) -> str:
        return self.value


DESCRIPTIONS = {
    SubjectKind.MODULE: "Ontology module tested individually",
    SubjectKind.MODELET: "Modelet tested individually",
    SubjectKind.MODULE_MODELET: "Ontology module merged with a modelet",
    SubjectKind.MODULES_MERGE: "Merge of all syntactically correct modules",
    SubjectKind.WHOLE_MERGE: "Merge of all syntactically correct modules and modelets",
    SubjectKind.DATASET: "Scenario dataset tested individually",
    SubjectKind.USE_CASE: "Use-case data fragment tested individually",
    SubjectKind.QUERY: "Competency question",
}


@dataclass(frozen=True)
class FileError:
    path: str
    error: ParseError

    def __str__(self) -> str:
        return f"{self.path}:{self.error.line}:{self.error.column}: {self.error.message}"


@dataclass(frozen=True)
class TestSubject:
    """One tested resource, possibly composed of several files"""

    __test__ = False

    id: str
    kind: SubjectKind
    files: Tuple[str, ...]
    graph: Optional[Graph] = field(default=None, compare=False, repr=False)
    parse_errors: Tuple[FileError, ...] = ()

    def __post_init__(self):
        if not self.files:
            raise ValueError(f"test subject {self.id} has no files")

    @property
    def description(self) -> str:
        return DESCRIPTIONS[self.kind]

    def involves(self, paths: Iterable[str]) -> bool:
        return bool(set(self.files) & set(paths))


@dataclass(frozen=True)
class SourceFile:
    path: str
    graph: Optional[Graph] = None
    error: Optional[ParseError] = None

    @property
    def valid(self) -> bool:
        return self.graph is not None


def load_sources(root: Path, paths: Iterable[str]) -> Dict[str, SourceFile]:
    """Parse each Turtle file once; failures are kept as values"""
    sources: Dict[str, SourceFile] = {}
    for relative in sorted(set(paths)):
        try:
            result = parse_turtle_file(Path(root) / relative)
        except ParseError as e:
            logger.info("%s does not parse: %s", relative, e)
            sources[relative] = SourceFile(relative, error=e)
        except OSError as e:
            logger.info("%s cannot be read: %s", relative, e)
            sources[relative] = SourceFile(relative, error=ParseError(1, 1, f"unreadable file: {e.strerror or e}"))
        else:
            sources[relative] = SourceFile(relative, graph=result.graph)
    return sources


def _single(kind: SubjectKind, path: str, sources: Mapping[str, SourceFile]) -> TestSubject:
    source = sources[path]
    errors = (FileError(path, source.error),) if source.error is not None else ()
    return TestSubject(f"{kind.value}:{path}", kind, (path,), source.graph, errors)


def _merged(subject_id: str, kind: SubjectKind, paths: List[str], sources: Mapping[str, SourceFile]) -> TestSubject:
    return TestSubject(subject_id, kind, tuple(paths), merge_graphs(sources[path].graph for path in paths))


def assemble_model_subjects(layout: ProjectLayout, sources: Mapping[str, SourceFile]) -> List[TestSubject]:
    """
    M + D + M*D + [M >= 1] + [D >= 1] subjects for M valid modules and D
    valid modelets, plus one individual subject per invalid file.
    """
    subjects: List[TestSubject] = []
    modules = list(layout.modules)
    modelets = list(layout.modelet_paths)
    for path in modules:
        subjects.append(_single(SubjectKind.MODULE, path, sources))
    for path in modelets:
        subjects.append(_single(SubjectKind.MODELET, path, sources))

    valid_modules = [path for path in modules if sources[path].valid]
    valid_modelets = [path for path in modelets if sources[path].valid]
    for module in valid_modules:
        for modelet in valid_modelets:
            subjects.append(_merged(
                f"{SubjectKind.MODULE_MODELET.value}:{module}+{modelet}",
                SubjectKind.MODULE_MODELET, [module, modelet], sources,
            ))
    if valid_modules:
        subjects.append(_merged(SubjectKind.MODULES_MERGE.value, SubjectKind.MODULES_MERGE, valid_modules, sources))
    if valid_modelets:
        subjects.append(_merged(
            SubjectKind.WHOLE_MERGE.value, SubjectKind.WHOLE_MERGE, valid_modules + valid_modelets, sources,
        ))
    logger.debug("Assembled %d model subjects", len(subjects))
    return subjects


def assemble_data_subjects(layout: ProjectLayout, sources: Mapping[str, SourceFile]) -> List[TestSubject]:
    """One subject per dataset and per use-case fragment"""
    subjects = [_single(SubjectKind.DATASET, path, sources) for path in layout.dataset_paths]
    subjects += [_single(SubjectKind.USE_CASE, path, sources) for path in layout.use_case_paths]
    return subjects


def assemble_query_subjects(layout: ProjectLayout) -> List[TestSubject]:
    return [TestSubject(f"{SubjectKind.QUERY.value}:{path}", SubjectKind.QUERY, (path,)) for path in layout.question_paths]


def ontology_graph(layout: ProjectLayout, sources: Mapping[str, SourceFile]) -> Optional[Graph]:
    """Whole merge of the valid modules and modelets, None when there are none"""
    paths = [path for path in layout.modules + layout.modelet_paths if path in sources and sources[path].valid]
    if not paths:
        return None
    return merge_graphs(sources[path].graph for path in paths)


def infer_namespace(ontology: Optional[Graph], first_module: Optional[Graph] = None,
                    known_namespaces: Iterable[str] = ()) -> Optional[str]:
    """
    vann:preferredNamespaceUri of an owl:Ontology, else the ':' binding,
    else the only project prefix of the first module.
    """
    if ontology is not None:
        declared = sorted(
            value.lexical if isinstance(value, Literal) else value.value
            for ontology_iri in ontology.subjects(RDF.type, OWL.Ontology)
            for value in ontology.objects(ontology_iri, VANN.preferredNamespaceUri)
            if isinstance(value, (Literal, Iri))
        )
        if declared:
            return declared[0]
        if ontology.prefixes.get(""):
            return ontology.prefixes[""]
    if first_module is not None:
        known = set(known_namespaces) | set(WELL_KNOWN_PREFIXES.values())
        candidates = sorted({namespace for namespace in first_module.prefixes.values() if namespace not in known})
        if len(candidates) == 1:
            return candidates[0]
    return None
