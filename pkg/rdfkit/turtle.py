"""
Turtle (RDF 1.1) parser.

A strict recursive-descent parser working directly on the document text
with anchored regular expressions for the terminals. It stops at the first
error and reports its 1-based line and column. Blank nodes are relabelled
b0, b1, ... in order of first appearance.
"""

import bisect
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Set, Tuple, Union

from .errors import ParseError
from .iri import resolve_iri
from .namespaces import RDF, XSD
from .terms import BlankNode, Graph, Iri, Literal, Term, Triple

logger = logging.getLogger(__name__)

PN_CHARS_BASE = (
    r"A-Za-z\u00C0-\u00D6\u00D8-\u00F6\u00F8-\u02FF\u0370-\u037D\u037F-\u1FFF"
    r"\u200C-\u200D\u2070-\u218F\u2C00-\u2FEF\u3001-\uD7FF\uF900-\uFDCF"
    r"\uFDF0-\uFFFD\U00010000-\U000EFFFF"
)
PN_CHARS_U = PN_CHARS_BASE + "_"
PN_CHARS = PN_CHARS_U + r"\-0-9\u00B7\u0300-\u036F\u203F-\u2040"
PLX = r"(?:%[0-9A-Fa-f]{2}|\\[_~.\-!$&'()*+,;=/?#@%])"
PN_PREFIX = rf"[{PN_CHARS_BASE}](?:[{PN_CHARS}.]*[{PN_CHARS}])?"
PN_LOCAL = rf"(?:[{PN_CHARS_U}:0-9]|{PLX})(?:(?:[{PN_CHARS}.:]|{PLX})*(?:[{PN_CHARS}:]|{PLX}))?"

UCHAR = r"\\u[0-9A-Fa-f]{4}|\\U[0-9A-Fa-f]{8}"
ECHAR = r"\\[tbnrf\"'\\]"

WHITESPACE = re.compile(r"(?:[ \t\r\n]|#[^\r\n]*)*")
IRIREF = re.compile(rf'<((?:[^\x00-\x20<>"{{}}|^`\\]|{UCHAR})*)>')
PNAME = re.compile(rf"({PN_PREFIX})?:({PN_LOCAL})?")
PNAME_NS = re.compile(rf"({PN_PREFIX})?:")
BLANK_NODE_LABEL = re.compile(rf"_:([{PN_CHARS_U}0-9](?:[{PN_CHARS}.]*[{PN_CHARS}])?)")
ANON = re.compile(r"\[[ \t\r\n]*\]")
LANGTAG = re.compile(r"@([a-zA-Z]+(?:-[a-zA-Z0-9]+)*)")
STRING_LONG_QUOTE = re.compile(rf'"""((?:(?:"|"")?(?:[^"\\]|{ECHAR}|{UCHAR}))*)"""')
STRING_LONG_SINGLE = re.compile(rf"'''((?:(?:'|'')?(?:[^'\\]|{ECHAR}|{UCHAR}))*)'''")
STRING_QUOTE = re.compile(rf'"((?:[^"\\\n\r]|{ECHAR}|{UCHAR})*)"')
STRING_SINGLE = re.compile(rf"'((?:[^'\\\n\r]|{ECHAR}|{UCHAR})*)'")
DOUBLE = re.compile(r"[+-]?(?:[0-9]+\.[0-9]*[eE][+-]?[0-9]+|\.[0-9]+[eE][+-]?[0-9]+|[0-9]+[eE][+-]?[0-9]+)")
DECIMAL = re.compile(r"[+-]?[0-9]*\.[0-9]+")
INTEGER = re.compile(r"[+-]?[0-9]+")
BOOLEAN = re.compile(r"(true|false)(?![" + PN_CHARS + r".:])")
VERB_A = re.compile(r"a(?=[ \t\r\n#<\[(\"'_])")
PREFIX_DIRECTIVE = re.compile(r"@prefix(?=[ \t\r\n#])")
BASE_DIRECTIVE = re.compile(r"@base(?=[ \t\r\n#<])")
SPARQL_PREFIX = re.compile(r"[Pp][Rr][Ee][Ff][Ii][Xx](?=[ \t\r\n#])")
SPARQL_BASE = re.compile(r"[Bb][Aa][Ss][Ee](?=[ \t\r\n#<])")
ESCAPE = re.compile(rf"{UCHAR}|{ECHAR}")
LOCAL_ESCAPE = re.compile(r"\\(.)")

ECHAR_VALUES = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}


def unescape(text: str) -> str:
    """Decode ECHAR and UCHAR escapes"""
    def replace(match):
        escape = match.group(0)
        if escape[1] in "uU":
            return chr(int(escape[2:], 16))
        return ECHAR_VALUES[escape[1]]
    return ESCAPE.sub(replace, text)


@dataclass(frozen=True)
class ParseResult:
    graph: Graph
    base: Optional[Iri]
    prefix_directives: Tuple[Tuple[str, str], ...]


class TurtleParser:
    """Single-use parser over one document"""

    def __init__(self, text: str, base: Optional[str] = None):
        self.text = text
        self.pos = 0
        self.base = base
        self.prefixes: Dict[str, str] = {}
        self.directives: List[Tuple[str, str]] = []
        self.triples: Set[Triple] = set()
        self.blank_labels: Dict[str, BlankNode] = {}
        self.blank_count = 0
        self.line_starts = [0] + [match.end() for match in re.finditer("\n", text)]

    # -- positions and errors

    def position(self, offset: int) -> Tuple[int, int]:
        line = bisect.bisect_right(self.line_starts, offset)
        return line, offset - self.line_starts[line - 1] + 1

    def error(self, message: str, expected: Optional[str] = None, offset: Optional[int] = None) -> ParseError:
        line, column = self.position(self.pos if offset is None else offset)
        return ParseError(line, column, message, expected)

    def describe_here(self) -> str:
        if self.pos >= len(self.text):
            return "end of input"
        return repr(self.text[self.pos])

    def skip(self):
        self.pos = WHITESPACE.match(self.text, self.pos).end()

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def match(self, pattern: re.Pattern):
        found = pattern.match(self.text, self.pos)
        if found:
            self.pos = found.end()
        return found

    def expect(self, character: str):
        self.skip()
        if self.peek() != character:
            raise self.error(f"expected '{character}', found {self.describe_here()}", f"'{character}'")
        self.pos += 1

    # -- terms

    def fresh_blank(self) -> BlankNode:
        node = BlankNode(f"b{self.blank_count}")
        self.blank_count += 1
        return node

    def resolve(self, reference: str) -> str:
        return resolve_iri(self.base, reference)

    def read_iriref(self) -> Optional[str]:
        found = self.match(IRIREF)
        if not found:
            return None
        return self.resolve(unescape(found.group(1)))

    def read_prefixed_name(self) -> Optional[Iri]:
        start = self.pos
        found = PNAME.match(self.text, self.pos)
        if not found:
            return None
        prefix = found.group(1) or ""
        if prefix not in self.prefixes:
            raise self.error(f"undeclared prefix '{prefix}:'", "declared prefix", start)
        self.pos = found.end()
        local = LOCAL_ESCAPE.sub(r"\1", found.group(2) or "")
        return Iri(self.prefixes[prefix] + local)

    def read_iri(self) -> Optional[Iri]:
        if self.peek() == "<":
            start = self.pos
            value = self.read_iriref()
            if value is None:
                raise self.error("malformed IRI reference", "IRI", start)
            return Iri(value)
        return self.read_prefixed_name()

    def read_blank_node(self) -> Optional[BlankNode]:
        found = self.match(BLANK_NODE_LABEL)
        if found:
            label = found.group(1)
            if label not in self.blank_labels:
                self.blank_labels[label] = self.fresh_blank()
            return self.blank_labels[label]
        if self.match(ANON):
            return self.fresh_blank()
        return None

    def read_string(self) -> Optional[str]:
        start = self.pos
        for pattern in (STRING_LONG_QUOTE, STRING_LONG_SINGLE, STRING_QUOTE, STRING_SINGLE):
            found = self.match(pattern)
            if found:
                return unescape(found.group(1))
        if self.peek() in "\"'":
            raise self.error("malformed string literal", "string", start)
        return None

    def read_literal(self) -> Optional[Literal]:
        lexical = self.read_string()
        if lexical is not None:
            tag = self.match(LANGTAG)
            if tag:
                return Literal(lexical, language=tag.group(1))
            if self.text.startswith("^^", self.pos):
                self.pos += 2
                datatype = self.read_iri()
                if datatype is None:
                    raise self.error(f"expected datatype IRI, found {self.describe_here()}", "IRI")
                return Literal(lexical, datatype)
            return Literal(lexical)
        for pattern, datatype in ((DOUBLE, XSD.double), (DECIMAL, XSD.decimal), (INTEGER, XSD.integer)):
            found = self.match(pattern)
            if found:
                return Literal(found.group(0), datatype)
        found = self.match(BOOLEAN)
        if found:
            return Literal(found.group(1), XSD.boolean)
        return None

    def read_collection(self) -> Term:
        self.pos += 1
        items: List[Term] = []
        while True:
            self.skip()
            if self.peek() == ")":
                self.pos += 1
                break
            if self.at_end():
                raise self.error("unterminated collection", "')'")
            items.append(self.read_object())
        if not items:
            return RDF.nil
        head = self.fresh_blank()
        node = head
        for index, item in enumerate(items):
            self.triples.add(Triple(node, RDF.first, item))
            following = self.fresh_blank() if index + 1 < len(items) else RDF.nil
            self.triples.add(Triple(node, RDF.rest, following))
            node = following
        return head

    def read_property_list_node(self) -> BlankNode:
        self.pos += 1
        node = self.fresh_blank()
        self.read_predicate_object_list(node)
        self.expect("]")
        return node

    # -- grammar

    def read_object(self) -> Term:
        self.skip()
        character = self.peek()
        if character == "(":
            return self.read_collection()
        if character == "[" and not ANON.match(self.text, self.pos):
            return self.read_property_list_node()
        term = self.read_iri() or self.read_blank_node() or self.read_literal()
        if term is None:
            raise self.error(f"expected object, found {self.describe_here()}", "object")
        return term

    def read_verb(self) -> Iri:
        self.skip()
        predicate = self.read_iri()
        if predicate is not None:
            return predicate
        if self.match(VERB_A):
            return RDF.type
        raise self.error(f"expected predicate, found {self.describe_here()}", "predicate")

    def read_object_list(self, subject, predicate: Iri):
        while True:
            self.triples.add(Triple(subject, predicate, self.read_object()))
            self.skip()
            if self.peek() != ",":
                return
            self.pos += 1

    def read_predicate_object_list(self, subject):
        self.read_object_list(subject, self.read_verb())
        while True:
            self.skip()
            if self.peek() != ";":
                return
            while self.peek() == ";":
                self.pos += 1
                self.skip()
            if self.peek() in (".", "]", ""):
                return
            self.read_object_list(subject, self.read_verb())

    def read_triples(self):
        character = self.peek()
        if character == "[" and not ANON.match(self.text, self.pos):
            subject = self.read_property_list_node()
            self.skip()
            if self.peek() != ".":
                self.read_predicate_object_list(subject)
            return
        if character == "(":
            subject = self.read_collection()
        else:
            subject = self.read_iri() or self.read_blank_node()
        if subject is None:
            raise self.error(f"expected subject, found {self.describe_here()}", "subject")
        self.read_predicate_object_list(subject)

    def read_prefix_declaration(self):
        self.skip()
        start = self.pos
        found = self.match(PNAME_NS)
        if not found:
            raise self.error(f"expected prefix name, found {self.describe_here()}", "prefix name", start)
        self.skip()
        namespace = self.read_iriref()
        if namespace is None:
            raise self.error(f"expected IRI, found {self.describe_here()}", "IRI")
        prefix = found.group(1) or ""
        self.prefixes[prefix] = namespace
        self.directives.append((prefix, namespace))

    def read_base_declaration(self):
        self.skip()
        value = self.read_iriref()
        if value is None:
            raise self.error(f"expected IRI, found {self.describe_here()}", "IRI")
        self.base = value

    def read_statement(self):
        if self.match(PREFIX_DIRECTIVE):
            self.read_prefix_declaration()
            self.expect(".")
        elif self.match(BASE_DIRECTIVE):
            self.read_base_declaration()
            self.expect(".")
        elif self.match(SPARQL_PREFIX):
            self.read_prefix_declaration()
        elif self.match(SPARQL_BASE):
            self.read_base_declaration()
        else:
            self.read_triples()
            self.expect(".")

    def parse(self) -> ParseResult:
        self.skip()
        while not self.at_end():
            self.read_statement()
            self.skip()
        graph = Graph(self.triples, self.prefixes)
        return ParseResult(graph, Iri(self.base) if self.base else None, tuple(self.directives))


def parse_turtle(text: str, base: Optional[Union[str, Iri]] = None) -> ParseResult:
    """Parse a full Turtle document, raising ParseError at the first error"""
    result = TurtleParser(text, str(base) if base is not None else None).parse()
    logger.debug("Parsed %d triples", len(result.graph))
    return result


def parse_turtle_file(path: Union[str, Path], base: Optional[Union[str, Iri]] = None) -> ParseResult:
    """Parse a UTF-8 Turtle file; the base defaults to the file's own file: IRI"""
    path = Path(path)
    data = path.read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = data.count(b"\n", 0, exc.start) + 1
        column = exc.start - (data.rfind(b"\n", 0, exc.start) + 1) + 1
        raise ParseError(line, column, f"invalid UTF-8 byte 0x{data[exc.start]:02x}", "UTF-8") from exc
    if base is None:
        base = path.resolve().as_uri()
    return parse_turtle(text, base)
