"""
Declarative custom tests: a SHACL core subset.

Supported: the four explicit target kinds plus implicit class targets,
predicate and inverse paths, and the constraints minCount, maxCount, class,
datatype, nodeKind, pattern (with flags), in and hasValue. Any other SHACL
feature found in a shape file is reported as a load diagnostic so the test
author knows it was not evaluated.
"""

import logging
import re
from dataclasses import dataclass
from typing import Any, List, Optional, Sequence, Set, Tuple

from rdfkit.errors import LintError
from rdfkit.graphs import collection_items, local_name
from rdfkit.namespaces import OWL, RDF, RDFS, SH
from rdfkit.terms import BlankNode, Graph, Iri, Literal, Term, term_sort_key

logger = logging.getLogger(__name__)

TARGET_PREDICATES = {
    SH.targetClass: "class",
    SH.targetNode: "node",
    SH.targetSubjectsOf: "subjectsOf",
    SH.targetObjectsOf: "objectsOf",
}
CONSTRAINT_PREDICATES = (
    SH.minCount, SH.maxCount, SH.term("class"), SH.datatype,
    SH.nodeKind, SH.pattern, SH.term("in"), SH.hasValue,
)
IGNORED_PREDICATES = {
    SH.property, SH.path, SH.flags, SH.message, SH.severity, SH.deactivated, SH.name,
    SH.description, SH.order, SH.group, SH.defaultValue, *TARGET_PREDICATES,
}
SEVERITIES = {SH.Violation: "Violation", SH.Warning: "Warning", SH.Info: "Info"}
NODE_KINDS = {
    SH.IRI: frozenset({"IRI"}),
    SH.Literal: frozenset({"Literal"}),
    SH.BlankNode: frozenset({"BlankNode"}),
    SH.BlankNodeOrIRI: frozenset({"BlankNode", "IRI"}),
    SH.BlankNodeOrLiteral: frozenset({"BlankNode", "Literal"}),
    SH.IRIOrLiteral: frozenset({"IRI", "Literal"}),
}
REGEX_FLAGS = {"i": re.IGNORECASE, "m": re.MULTILINE, "s": re.DOTALL, "x": re.VERBOSE}


class ShapeFileError(LintError):
    """A shape file uses a supported feature with an invalid value"""


@dataclass(frozen=True)
class Target:
    kind: str
    value: Term


@dataclass(frozen=True)
class PropertyPath:
    predicate: Iri
    inverse: bool = False

    def __str__(self) -> str:
        return f"^<{self.predicate}>" if self.inverse else f"<{self.predicate}>"


@dataclass(frozen=True)
class Constraint:
    kind: str
    value: Any

    def __str__(self) -> str:
        if self.kind == "pattern":
            return f"sh:pattern {self.value[0]!r}"
        if self.kind == "in":
            return "sh:in (" + " ".join(str(term) for term in self.value) + ")"
        return f"sh:{self.kind} {self.value}"


@dataclass(frozen=True)
class Shape:
    id: Term
    targets: Tuple[Target, ...]
    path: Optional[PropertyPath]
    constraints: Tuple[Constraint, ...]
    message: Optional[str] = None
    severity_hint: Optional[str] = None


@dataclass(frozen=True)
class ShapeViolation:
    shape: Term
    focus: Term
    value: Optional[Term]
    constraint: Constraint
    message: str
    severity: str = "Violation"
    path: Optional[PropertyPath] = None


@dataclass(frozen=True)
class ShapesLoadResult:
    shapes: Tuple[Shape, ...]
    diagnostics: Tuple[str, ...] = ()


def _integer(graph: Graph, node: Term, predicate: Iri, shape_id: Term) -> int:
    value = graph.value(node, predicate)
    if not isinstance(value, Literal):
        raise ShapeFileError(f"{local_name(predicate)} of shape {shape_id} must be an integer literal")
    try:
        number = int(value.lexical)
    except ValueError:
        raise ShapeFileError(f"{local_name(predicate)} of shape {shape_id} is not an integer: {value.lexical!r}")
    if number < 0:
        raise ShapeFileError(f"{local_name(predicate)} of shape {shape_id} must not be negative")
    return number


def _flags(text: str, shape_id: Term) -> int:
    combined = 0
    for flag in text:
        if flag not in REGEX_FLAGS:
            raise ShapeFileError(f"unsupported sh:flags value {flag!r} on shape {shape_id}")
        combined |= REGEX_FLAGS[flag]
    return combined


def read_constraints(graph: Graph, node: Term) -> List[Constraint]:
    """Supported constraints declared directly on a shape node"""
    constraints: List[Constraint] = []
    if graph.value(node, SH.minCount) is not None:
        constraints.append(Constraint("minCount", _integer(graph, node, SH.minCount, node)))
    if graph.value(node, SH.maxCount) is not None:
        constraints.append(Constraint("maxCount", _integer(graph, node, SH.maxCount, node)))
    for value in sorted(graph.objects(node, SH.term("class")), key=term_sort_key):
        if not isinstance(value, Iri):
            raise ShapeFileError(f"sh:class of shape {node} must be an IRI")
        constraints.append(Constraint("class", value))
    for value in sorted(graph.objects(node, SH.datatype), key=term_sort_key):
        if not isinstance(value, Iri):
            raise ShapeFileError(f"sh:datatype of shape {node} must be an IRI")
        constraints.append(Constraint("datatype", value))
    for value in sorted(graph.objects(node, SH.nodeKind), key=term_sort_key):
        if value not in NODE_KINDS:
            raise ShapeFileError(f"unknown sh:nodeKind {value} on shape {node}")
        constraints.append(Constraint("nodeKind", value))
    for value in sorted(graph.objects(node, SH.pattern), key=term_sort_key):
        flags_value = graph.value(node, SH.flags)
        flags = _flags(flags_value.lexical, node) if isinstance(flags_value, Literal) else 0
        try:
            re.compile(str(value), flags)
        except re.error as exc:
            raise ShapeFileError(f"invalid sh:pattern {str(value)!r} on shape {node}: {exc}")
        constraints.append(Constraint("pattern", (str(value), flags)))
    for head in sorted(graph.objects(node, SH.term("in")), key=term_sort_key):
        items = collection_items(graph, head)
        if items is None:
            raise ShapeFileError(f"sh:in of shape {node} must be an RDF list")
        constraints.append(Constraint("in", tuple(items)))
    for value in sorted(graph.objects(node, SH.hasValue), key=term_sort_key):
        constraints.append(Constraint("hasValue", value))
    return constraints


def _deactivated(graph: Graph, node: Term) -> bool:
    value = graph.value(node, SH.deactivated)
    return isinstance(value, Literal) and value.lexical == "true"


def _unsupported(graph: Graph, node: Term) -> List[str]:
    supported = IGNORED_PREDICATES.union(CONSTRAINT_PREDICATES)
    found = []
    for predicate, _ in graph.predicate_objects(node):
        if predicate in SH and predicate not in supported:
            found.append(f"unsupported feature sh:{local_name(predicate)} on shape {node}")
    return found


def _read_path(graph: Graph, node: Term) -> Optional[PropertyPath]:
    path = graph.value(node, SH.path)
    if isinstance(path, Iri):
        return PropertyPath(path)
    if isinstance(path, BlankNode):
        inverse = graph.value(path, SH.inversePath)
        if isinstance(inverse, Iri) and len(list(graph.predicate_objects(path))) == 1:
            return PropertyPath(inverse, inverse=True)
    return None


def _node_shapes(graph: Graph) -> List[Term]:
    found: Set[Term] = set()
    for predicate in TARGET_PREDICATES:
        found.update(triple.subject for triple in graph.triples(predicate=predicate))
    for shape_type in (SH.NodeShape, SH.PropertyShape):
        for node in graph.subjects(RDF.type, shape_type):
            if graph.objects(node, RDF.type) & {RDFS.Class, OWL.Class}:
                found.add(node)
    return sorted(found, key=term_sort_key)


def _targets(graph: Graph, node: Term) -> List[Target]:
    targets = [
        Target(kind, value)
        for predicate, kind in TARGET_PREDICATES.items()
        for value in graph.objects(node, predicate)
    ]
    if graph.objects(node, RDF.type) & {RDFS.Class, OWL.Class}:
        targets.append(Target("class", node))
    return sorted(targets, key=lambda target: (target.kind, term_sort_key(target.value)))


def _message(graph: Graph, *nodes: Term) -> Optional[str]:
    for node in nodes:
        value = graph.value(node, SH.message)
        if isinstance(value, Literal):
            return value.lexical
    return None


def _severity(graph: Graph, *nodes: Term) -> Optional[str]:
    for node in nodes:
        value = graph.value(node, SH.severity)
        if value in SEVERITIES:
            return SEVERITIES[value]
    return None


def load_shapes(graph: Graph) -> ShapesLoadResult:
    """
    Build shapes from a parsed shape file.

    Property shapes inherit the targets of their node shape. Raises
    ShapeFileError when a supported constraint carries an invalid value.
    """
    shapes: List[Shape] = []
    diagnostics: List[str] = []
    for node in _node_shapes(graph):
        if _deactivated(graph, node):
            logger.debug("Skipping deactivated shape %s", node)
            continue
        targets = tuple(_targets(graph, node))
        diagnostics.extend(_unsupported(graph, node))
        constraints = read_constraints(graph, node)
        # a targeted property shape constrains the values of its own path
        own_path = None
        if graph.value(node, SH.path) is not None:
            own_path = _read_path(graph, node)
            if own_path is None:
                diagnostics.append(f"unsupported sh:path on property shape {node}")
                constraints = []
        if constraints:
            shapes.append(Shape(node, targets, own_path, tuple(constraints),
                                _message(graph, node), _severity(graph, node)))
        for property_node in sorted(graph.objects(node, SH.property), key=term_sort_key):
            if _deactivated(graph, property_node):
                continue
            diagnostics.extend(_unsupported(graph, property_node))
            path = _read_path(graph, property_node)
            if path is None:
                diagnostics.append(f"unsupported sh:path on property shape {property_node} of {node}")
                continue
            property_constraints = read_constraints(graph, property_node)
            if not property_constraints:
                logger.debug("Property shape %s declares no supported constraint", property_node)
                continue
            shapes.append(Shape(
                property_node, targets, path, tuple(property_constraints),
                _message(graph, property_node, node), _severity(graph, property_node, node),
            ))
    return ShapesLoadResult(tuple(shapes), tuple(diagnostics))


def focus_nodes(data: Graph, shape: Shape) -> List[Term]:
    found: Set[Term] = set()
    for target in shape.targets:
        if target.kind == "class":
            found.update(data.subjects(RDF.type, target.value))
        elif target.kind == "node":
            found.add(target.value)
        elif target.kind == "subjectsOf":
            found.update(triple.subject for triple in data.triples(predicate=target.value))
        else:
            found.update(triple.object for triple in data.triples(predicate=target.value))
    return sorted(found, key=term_sort_key)


def value_nodes(data: Graph, focus: Term, path: Optional[PropertyPath]) -> List[Term]:
    if path is None:
        return [focus]
    if path.inverse:
        values = data.subjects(path.predicate, focus)
    else:
        values = data.objects(focus, path.predicate)
    return sorted(values, key=term_sort_key)


def _kind_of(term: Term) -> str:
    if isinstance(term, Iri):
        return "IRI"
    if isinstance(term, BlankNode):
        return "BlankNode"
    return "Literal"


def _value_conforms(data: Graph, constraint: Constraint, value: Term) -> bool:
    kind = constraint.kind
    if kind == "class":
        return not isinstance(value, Literal) and constraint.value in data.objects(value, RDF.type)
    if kind == "datatype":
        return isinstance(value, Literal) and value.datatype == constraint.value
    if kind == "nodeKind":
        return _kind_of(value) in NODE_KINDS[constraint.value]
    if kind == "pattern":
        if isinstance(value, BlankNode):
            return False
        regex, flags = constraint.value
        return re.search(regex, str(value), flags) is not None
    if kind == "in":
        return value in constraint.value
    return True


def default_message(constraint: Constraint, count: int = 0) -> str:
    kind = constraint.kind
    if kind == "minCount":
        return f"expected at least {constraint.value} value(s), found {count}"
    if kind == "maxCount":
        return f"expected at most {constraint.value} value(s), found {count}"
    if kind == "hasValue":
        return f"missing required value {constraint.value}"
    if kind == "class":
        return f"value is not an instance of {constraint.value}"
    if kind == "datatype":
        return f"value does not have datatype {constraint.value}"
    if kind == "nodeKind":
        return f"value is not of node kind {local_name(constraint.value)}"
    if kind == "pattern":
        return f"value does not match pattern {constraint.value[0]!r}"
    return "value is not in the allowed list"


def validate(data: Graph, shapes: Sequence[Shape]) -> List[ShapeViolation]:
    """Evaluate every shape against data; one violation per failing (focus, constraint, value)"""
    violations: List[ShapeViolation] = []
    for shape in shapes:
        severity = shape.severity_hint or "Violation"
        for focus in focus_nodes(data, shape):
            values = value_nodes(data, focus, shape.path)

            def report(constraint: Constraint, value: Optional[Term], count: int = 0):
                message = shape.message or default_message(constraint, count)
                violations.append(ShapeViolation(shape.id, focus, value, constraint, message, severity, shape.path))

            for constraint in shape.constraints:
                if constraint.kind == "minCount":
                    if len(values) < constraint.value:
                        report(constraint, None, len(values))
                elif constraint.kind == "maxCount":
                    if len(values) > constraint.value:
                        report(constraint, values[0], len(values))
                elif constraint.kind == "hasValue":
                    if constraint.value not in values:
                        report(constraint, None)
                else:
                    for value in values:
                        if not _value_conforms(data, constraint, value):
                            report(constraint, value)
    return violations
