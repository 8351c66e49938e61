"""Deterministic Turtle serializer used for the EARL report."""

import re
from typing import Dict, List, Mapping, Optional

from .namespaces import RDF
from .terms import XSD_STRING, BlankNode, Graph, Iri, Term, Triple, term_sort_key

SAFE_LOCAL = re.compile(r"^[A-Za-z_][A-Za-z0-9_\-]*$")
SAFE_PREFIX = re.compile(r"^(?:[A-Za-z][A-Za-z0-9_\-]*)?$")

STRING_ESCAPES = {
    "\\": "\\\\",
    '"': '\\"',
    "\n": "\\n",
    "\r": "\\r",
    "\t": "\\t",
    "\b": "\\b",
    "\f": "\\f",
}


def escape_string(value: str) -> str:
    out = []
    for character in value:
        if character in STRING_ESCAPES:
            out.append(STRING_ESCAPES[character])
        elif ord(character) < 0x20 or ord(character) == 0x7F:
            out.append(f"\\u{ord(character):04X}")
        else:
            out.append(character)
    return "".join(out)


def escape_iri(value: str) -> str:
    out = []
    for character in value:
        if ord(character) <= 0x20 or character in '<>"{}|^`\\':
            out.append(f"\\u{ord(character):04X}")
        else:
            out.append(character)
    return "".join(out)


class TurtleWriter:
    """Writes one graph; blank nodes are renamed b0, b1, ... in subject order"""

    def __init__(self, graph: Graph):
        self.graph = graph
        self.prefixes: Dict[str, str] = {
            prefix: namespace for prefix, namespace in graph.prefixes.items()
            if SAFE_PREFIX.match(prefix)
        }
        self.blank_names: Dict[BlankNode, str] = {}

    def compact(self, iri: Iri) -> Optional[str]:
        best = None
        for prefix, namespace in self.prefixes.items():
            if iri.value.startswith(namespace):
                local = iri.value[len(namespace):]
                if SAFE_LOCAL.match(local) and (best is None or len(namespace) > best[1]):
                    best = (f"{prefix}:{local}", len(namespace))
        return best[0] if best else None

    def blank_name(self, node: BlankNode) -> str:
        if node not in self.blank_names:
            self.blank_names[node] = f"_:b{len(self.blank_names)}"
        return self.blank_names[node]

    def term(self, term: Term, predicate_position: bool = False) -> str:
        if isinstance(term, Iri):
            if predicate_position and term == RDF.type:
                return "a"
            return self.compact(term) or f"<{escape_iri(term.value)}>"
        if isinstance(term, BlankNode):
            return self.blank_name(term)
        text = f'"{escape_string(term.lexical)}"'
        if term.language:
            return f"{text}@{term.language}"
        if term.datatype != XSD_STRING:
            return f"{text}^^{self.term(term.datatype)}"
        return text

    def write(self) -> str:
        lines: List[str] = [
            f"@prefix {prefix}: <{escape_iri(namespace)}> ."
            for prefix, namespace in sorted(self.prefixes.items())
        ]
        subjects = sorted({triple.subject for triple in self.graph}, key=term_sort_key)
        for node in subjects:
            if isinstance(node, BlankNode):
                self.blank_name(node)
        if lines and subjects:
            lines.append("")
        for subject in subjects:
            lines.extend(self.subject_block(subject))
            lines.append("")
        while lines and lines[-1] == "":
            lines.pop()
        return "\n".join(lines) + "\n"

    def subject_block(self, subject: Term) -> List[str]:
        pairs = sorted(
            self.graph.triples(subject=subject),
            key=lambda triple: (triple.predicate != RDF.type, Triple.sort_key(triple)),
        )
        head = self.term(subject)
        block = []
        for index, triple in enumerate(pairs):
            text = f"{self.term(triple.predicate, True)} {self.term(triple.object)}"
            terminator = " ." if index == len(pairs) - 1 else " ;"
            if index == 0:
                block.append(f"{head} {text}{terminator}")
            else:
                block.append(f"    {text}{terminator}")
        return block


def serialize_turtle(graph: Graph, prefixes: Optional[Mapping[str, str]] = None) -> str:
    """
    Serialize a graph as Turtle: sorted prefix directives, then one block per
    subject with one predicate-object pair per line. Output always ends with
    a single newline.
    """
    if prefixes:
        graph = graph.with_prefixes(prefixes)
    return TurtleWriter(graph).write()
