"""
SPARQL 1.1 query syntax checker for competency-question files.

The checker tokenizes the query and walks the query grammar by recursive
descent without building an algebra. It never evaluates anything: the
outcome is either a QueryInfo (form, prologue, IRIs used, SERVICE targets)
or a ParseError with line and column.
"""

import bisect
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, FrozenSet, List, Mapping, Optional, Set, Tuple, Union

from .errors import ParseError
from .iri import resolve_iri
from .terms import Iri
from .turtle import (
    BLANK_NODE_LABEL,
    DECIMAL,
    DOUBLE,
    INTEGER,
    LANGTAG,
    LOCAL_ESCAPE,
    PN_CHARS_U,
    PNAME,
    STRING_LONG_QUOTE,
    STRING_LONG_SINGLE,
    STRING_QUOTE,
    STRING_SINGLE,
    unescape,
)

logger = logging.getLogger(__name__)

QUERY_FORMS = ("SELECT", "CONSTRUCT", "DESCRIBE", "ASK")
ALLOWED_FORMS = frozenset({"SELECT", "ASK"})
UPDATE_KEYWORDS = frozenset({
    "INSERT", "DELETE", "LOAD", "CLEAR", "CREATE", "DROP", "COPY", "MOVE", "ADD", "WITH",
})
BUILTINS = frozenset({
    "STR", "LANG", "LANGMATCHES", "DATATYPE", "BOUND", "IRI", "URI", "BNODE", "RAND", "ABS",
    "CEIL", "FLOOR", "ROUND", "CONCAT", "STRLEN", "UCASE", "LCASE", "ENCODE_FOR_URI",
    "CONTAINS", "STRSTARTS", "STRENDS", "STRBEFORE", "STRAFTER", "YEAR", "MONTH", "DAY",
    "HOURS", "MINUTES", "SECONDS", "TIMEZONE", "TZ", "NOW", "UUID", "STRUUID", "MD5", "SHA1",
    "SHA256", "SHA384", "SHA512", "COALESCE", "IF", "STRLANG", "STRDT", "SAMETERM", "ISIRI",
    "ISURI", "ISBLANK", "ISLITERAL", "ISNUMERIC", "REGEX", "SUBSTR", "REPLACE",
})
AGGREGATES = frozenset({"COUNT", "SUM", "MIN", "MAX", "AVG", "SAMPLE", "GROUP_CONCAT"})
PATTERN_KEYWORDS = frozenset({"OPTIONAL", "MINUS", "GRAPH", "SERVICE", "FILTER", "BIND", "VALUES"})
RELATIONAL = frozenset({"=", "!=", "<", ">", "<=", ">="})

WHITESPACE = re.compile(r"(?:[ \t\r\n]|#[^\r\n]*)*")
IRIREF = re.compile(r'<([^<>"{}|^`\\\x00-\x20]*)>')
# scheme-prefixed references holding RFC 3986 violations still tokenize,
# so the IRI checks can name them instead of failing the whole query
LOOSE_IRIREF = re.compile(r'<([A-Za-z][A-Za-z0-9+.\-]*:[^<>"\r\n]*)>')
VAR = re.compile(rf"[?$]([{PN_CHARS_U}0-9][{PN_CHARS_U}0-9\u00B7\u0300-\u036F\u203F-\u2040]*)")
NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
PUNCTUATION = ("^^", "&&", "||", "!=", "<=", ">=", "{", "}", "(", ")", "[", "]", ".", ",", ";",
               "*", "+", "-", "/", "=", "<", ">", "!", "^", "|", "?")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int
    value: str = ""


@dataclass(frozen=True)
class QueryInfo:
    form: str
    prefixes: Mapping[str, str] = field(default_factory=dict)
    iris: FrozenSet[Iri] = frozenset()
    base: Optional[Iri] = None
    services: Tuple[str, ...] = ()
    source_path: Optional[str] = None
    iri_positions: Mapping[Iri, Tuple[int, int]] = field(default_factory=dict)


@dataclass(frozen=True)
class QueryFormViolation:
    form: str

    @property
    def message(self) -> str:
        return f"{self.form} query form used; competency questions must use SELECT or ASK"


class Tokenizer:
    """Splits a query into tokens; raises ParseError on unknown characters"""

    def __init__(self, text: str):
        self.text = text
        self.line_starts = [0] + [match.end() for match in re.finditer("\n", text)]

    def position(self, offset: int) -> Tuple[int, int]:
        line = bisect.bisect_right(self.line_starts, offset)
        return line, offset - self.line_starts[line - 1] + 1

    def tokens(self, pos: int = 0, operator: bool = False) -> List[Token]:
        """Tokens from pos to the end; with operator, a leading '<' or '<=' is punctuation"""
        text = self.text
        found: List[Token] = []
        if operator:
            symbol = "<=" if text.startswith("<=", pos) else "<"
            found.append(Token("PUNCT", symbol, pos, symbol))
            pos += len(symbol)
        while True:
            pos = WHITESPACE.match(text, pos).end()
            if pos >= len(text):
                found.append(Token("EOF", "", pos))
                return found
            token = self.next_token(pos)
            found.append(token)
            pos += len(token.text)

    def next_token(self, pos: int) -> Token:
        text = self.text
        for kind, pattern in (("IRI", IRIREF), ("IRI", LOOSE_IRIREF)):
            match = pattern.match(text, pos)
            if match:
                return Token(kind, match.group(0), pos, match.group(1))
        match = PNAME.match(text, pos)
        if match:
            return Token("PNAME", match.group(0), pos)
        match = VAR.match(text, pos)
        if match:
            return Token("VAR", match.group(0), pos, match.group(1))
        match = BLANK_NODE_LABEL.match(text, pos)
        if match:
            return Token("BLANK", match.group(0), pos, match.group(1))
        for pattern in (STRING_LONG_QUOTE, STRING_LONG_SINGLE, STRING_QUOTE, STRING_SINGLE):
            match = pattern.match(text, pos)
            if match:
                return Token("STRING", match.group(0), pos, unescape(match.group(1)))
        if text[pos] in "\"'":
            line, column = self.position(pos)
            raise ParseError(line, column, "malformed string literal", "string")
        for pattern in (DOUBLE, DECIMAL, INTEGER):
            match = pattern.match(text, pos)
            if match and match.group(0)[0] not in "+-":
                kind = "INTEGER" if pattern is INTEGER else "NUMBER"
                return Token(kind, match.group(0), pos)
        match = LANGTAG.match(text, pos)
        if match:
            return Token("LANGTAG", match.group(0), pos, match.group(1))
        match = NAME.match(text, pos)
        if match:
            return Token("NAME", match.group(0), pos, match.group(0).upper())
        for symbol in PUNCTUATION:
            if text.startswith(symbol, pos):
                return Token("PUNCT", symbol, pos, symbol)
        line, column = self.position(pos)
        raise ParseError(line, column, f"unexpected character {text[pos]!r}")


class QueryParser:
    """Recursive-descent walk over the SPARQL 1.1 query grammar"""

    def __init__(self, text: str):
        self.tokenizer = Tokenizer(text)
        self.tokens = self.tokenizer.tokens()
        self.index = 0
        self.prefixes: Dict[str, str] = {}
        self.base: Optional[str] = None
        self.iris: Set[Iri] = set()
        self.iri_positions: Dict[Iri, Tuple[int, int]] = {}
        self.services: List[str] = []

    # -- token helpers

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def lookahead(self, distance: int = 1) -> Token:
        return self.tokens[min(self.index + distance, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.current
        if token.kind != "EOF":
            self.index += 1
        return token

    def error(self, message: str, expected: Optional[str] = None, token: Optional[Token] = None) -> ParseError:
        token = token or self.current
        line, column = self.tokenizer.position(token.offset)
        return ParseError(line, column, message, expected)

    def describe(self, token: Token) -> str:
        return "end of query" if token.kind == "EOF" else repr(token.text)

    def is_keyword(self, *keywords: str) -> bool:
        return self.current.kind == "NAME" and self.current.value in keywords

    def is_punct(self, *symbols: str) -> bool:
        return self.current.kind == "PUNCT" and self.current.value in symbols

    def accept_keyword(self, keyword: str) -> bool:
        if self.is_keyword(keyword):
            self.advance()
            return True
        return False

    def accept(self, symbol: str) -> bool:
        if self.is_punct(symbol):
            self.advance()
            return True
        return False

    def expect_keyword(self, keyword: str):
        if not self.accept_keyword(keyword):
            raise self.error(f"expected {keyword}, found {self.describe(self.current)}", keyword)

    def expect(self, symbol: str):
        if not self.accept(symbol):
            raise self.error(f"expected '{symbol}', found {self.describe(self.current)}", f"'{symbol}'")

    # -- terms

    def resolve_pname(self, token: Token) -> Iri:
        match = PNAME.fullmatch(token.text)
        prefix = match.group(1) or ""
        if prefix not in self.prefixes:
            raise self.error(f"undeclared prefix '{prefix}:'", "declared prefix", token)
        return Iri(self.prefixes[prefix] + LOCAL_ESCAPE.sub(r"\1", match.group(2) or ""))

    def starts_iri(self) -> bool:
        return self.current.kind in ("IRI", "PNAME")

    def iri(self) -> Iri:
        token = self.current
        if token.kind == "IRI":
            self.advance()
            value = Iri(resolve_iri(self.base, unescape(token.value)))
        elif token.kind == "PNAME":
            self.advance()
            value = self.resolve_pname(token)
        else:
            raise self.error(f"expected IRI, found {self.describe(token)}", "IRI")
        self.iris.add(value)
        self.iri_positions.setdefault(value, self.tokenizer.position(token.offset))
        return value

    def literal(self):
        """RDFLiteral, NumericLiteral or BooleanLiteral; signs allowed on numbers"""
        token = self.current
        if token.kind == "STRING":
            self.advance()
            if self.current.kind == "LANGTAG":
                self.advance()
            elif self.accept("^^"):
                self.iri()
            return
        if self.is_punct("+", "-") and self.lookahead().kind in ("INTEGER", "NUMBER"):
            self.advance()
        if self.current.kind in ("INTEGER", "NUMBER"):
            self.advance()
            return
        if self.is_keyword("TRUE", "FALSE"):
            self.advance()
            return
        raise self.error(f"expected literal, found {self.describe(self.current)}", "literal")

    def starts_literal(self) -> bool:
        if self.current.kind in ("STRING", "INTEGER", "NUMBER") or self.is_keyword("TRUE", "FALSE"):
            return True
        return self.is_punct("+", "-") and self.lookahead().kind in ("INTEGER", "NUMBER")

    def var(self) -> str:
        token = self.current
        if token.kind != "VAR":
            raise self.error(f"expected variable, found {self.describe(token)}", "variable")
        self.advance()
        return token.value

    def var_or_iri(self):
        if self.current.kind == "VAR":
            self.var()
        else:
            self.iri()

    def starts_var_or_term(self) -> bool:
        if self.current.kind in ("VAR", "IRI", "PNAME", "BLANK"):
            return True
        if self.is_punct("(") and self.lookahead().text == ")":
            return True
        if self.is_punct("[") and self.lookahead().text == "]":
            return True
        return self.starts_literal()

    def var_or_term(self):
        token = self.current
        if token.kind == "VAR":
            self.advance()
        elif token.kind in ("IRI", "PNAME"):
            self.iri()
        elif token.kind == "BLANK":
            self.advance()
        elif self.is_punct("(") and self.lookahead().text == ")":
            self.advance()
            self.advance()
        elif self.is_punct("[") and self.lookahead().text == "]":
            self.advance()
            self.advance()
        elif self.starts_literal():
            self.literal()
        else:
            raise self.error(f"expected term, found {self.describe(token)}", "term")

    # -- prologue and query forms

    def prologue(self):
        while True:
            if self.accept_keyword("BASE"):
                token = self.current
                if token.kind != "IRI":
                    raise self.error(f"expected IRI, found {self.describe(token)}", "IRI")
                self.advance()
                self.base = resolve_iri(self.base, unescape(token.value))
            elif self.accept_keyword("PREFIX"):
                token = self.current
                if token.kind != "PNAME" or not token.text.endswith(":"):
                    raise self.error(f"expected prefix name, found {self.describe(token)}", "prefix name")
                self.advance()
                namespace = self.current
                if namespace.kind != "IRI":
                    raise self.error(f"expected IRI, found {self.describe(namespace)}", "IRI")
                self.advance()
                self.prefixes[token.text[:-1]] = resolve_iri(self.base, unescape(namespace.value))
            else:
                return

    def query(self) -> str:
        self.prologue()
        token = self.current
        if token.kind == "NAME" and token.value in UPDATE_KEYWORDS:
            raise self.error(
                f"SPARQL Update operation {token.value} is not allowed; competency questions must be queries",
                "query form",
            )
        if not (token.kind == "NAME" and token.value in QUERY_FORMS):
            raise self.error(
                f"expected SELECT, CONSTRUCT, DESCRIBE or ASK, found {self.describe(token)}", "query form"
            )
        form = token.value
        if form == "SELECT":
            self.select_clause()
            self.dataset_clauses()
            self.where_clause()
            self.solution_modifier()
        elif form == "CONSTRUCT":
            self.construct_query()
        elif form == "DESCRIBE":
            self.describe_query()
        else:
            self.advance()
            self.dataset_clauses()
            self.where_clause()
            self.solution_modifier()
        self.values_clause()
        if self.current.kind != "EOF":
            raise self.error(f"unexpected {self.describe(self.current)} after end of query", "end of query")
        return form

    def select_clause(self):
        self.expect_keyword("SELECT")
        if not self.accept_keyword("DISTINCT"):
            self.accept_keyword("REDUCED")
        if self.accept("*"):
            return
        count = 0
        while True:
            if self.current.kind == "VAR":
                self.var()
            elif self.is_punct("("):
                self.advance()
                self.expression()
                self.expect_keyword("AS")
                self.var()
                self.expect(")")
            else:
                break
            count += 1
        if count == 0:
            raise self.error(f"expected projection, found {self.describe(self.current)}", "variable or '*'")

    def construct_query(self):
        self.expect_keyword("CONSTRUCT")
        if self.is_punct("{"):
            self.advance()
            self.triples_template("}")
            self.expect("}")
            self.dataset_clauses()
            self.where_clause()
        else:
            self.dataset_clauses()
            self.expect_keyword("WHERE")
            self.expect("{")
            self.triples_template("}")
            self.expect("}")
        self.solution_modifier()

    def describe_query(self):
        self.expect_keyword("DESCRIBE")
        if not self.accept("*"):
            if not (self.current.kind in ("VAR", "IRI", "PNAME")):
                raise self.error(f"expected variable or IRI, found {self.describe(self.current)}", "variable or IRI")
            while self.current.kind in ("VAR", "IRI", "PNAME"):
                self.var_or_iri()
        self.dataset_clauses()
        if self.is_keyword("WHERE") or self.is_punct("{"):
            self.where_clause()
        self.solution_modifier()

    def dataset_clauses(self):
        while self.accept_keyword("FROM"):
            self.accept_keyword("NAMED")
            self.iri()

    def where_clause(self):
        self.accept_keyword("WHERE")
        self.group_graph_pattern()

    def solution_modifier(self):
        if self.accept_keyword("GROUP"):
            self.expect_keyword("BY")
            self.group_condition()
            while self.current.kind == "VAR" or self.is_punct("(") or self.starts_call():
                self.group_condition()
        if self.accept_keyword("HAVING"):
            self.constraint()
            while self.is_punct("(") or self.starts_call():
                self.constraint()
        if self.accept_keyword("ORDER"):
            self.expect_keyword("BY")
            self.order_condition()
            while (self.current.kind == "VAR" or self.is_punct("(") or self.starts_call()
                   or self.is_keyword("ASC", "DESC")):
                self.order_condition()
        for first, second in (("LIMIT", "OFFSET"), ("OFFSET", "LIMIT")):
            if self.accept_keyword(first):
                self.integer()
                if self.accept_keyword(second):
                    self.integer()
                break

    def integer(self):
        if self.current.kind != "INTEGER":
            raise self.error(f"expected integer, found {self.describe(self.current)}", "integer")
        self.advance()

    def group_condition(self):
        if self.current.kind == "VAR":
            self.var()
        elif self.is_punct("("):
            self.advance()
            self.expression()
            if self.accept_keyword("AS"):
                self.var()
            self.expect(")")
        else:
            self.call()

    def order_condition(self):
        if self.is_keyword("ASC", "DESC"):
            self.advance()
            self.bracketted_expression()
        elif self.current.kind == "VAR":
            self.var()
        else:
            self.constraint()

    def values_clause(self):
        if self.accept_keyword("VALUES"):
            self.data_block()

    def data_block(self):
        if self.current.kind == "VAR":
            self.var()
            self.expect("{")
            while not self.is_punct("}"):
                self.data_block_value()
            self.expect("}")
            return
        self.expect("(")
        while self.current.kind == "VAR":
            self.var()
        self.expect(")")
        self.expect("{")
        while self.accept("("):
            while not self.is_punct(")"):
                self.data_block_value()
            self.expect(")")
        self.expect("}")

    def data_block_value(self):
        if self.starts_iri():
            self.iri()
        elif self.accept_keyword("UNDEF"):
            return
        elif self.starts_literal():
            self.literal()
        else:
            raise self.error(f"expected data value, found {self.describe(self.current)}", "data value")

    # -- graph patterns

    def group_graph_pattern(self):
        self.expect("{")
        if self.is_keyword("SELECT"):
            self.select_clause()
            self.where_clause()
            self.solution_modifier()
            self.values_clause()
        else:
            self.group_graph_pattern_sub()
        self.expect("}")

    def starts_triples(self) -> bool:
        return self.starts_var_or_term() or self.is_punct("(", "[")

    def group_graph_pattern_sub(self):
        if self.starts_triples():
            self.triples_block()
        while self.is_punct("{") or (self.current.kind == "NAME" and self.current.value in PATTERN_KEYWORDS):
            self.graph_pattern_not_triples()
            self.accept(".")
            if self.starts_triples():
                self.triples_block()

    def triples_block(self, allow_paths: bool = True):
        while True:
            self.triples_same_subject(allow_paths)
            if not self.accept("."):
                return
            if not self.starts_triples():
                return

    def triples_template(self, closing: str):
        if not self.is_punct(closing) and self.starts_triples():
            self.triples_block(allow_paths=False)

    def graph_pattern_not_triples(self):
        if self.is_punct("{"):
            self.group_graph_pattern()
            while self.accept_keyword("UNION"):
                self.group_graph_pattern()
            return
        keyword = self.advance().value
        if keyword in ("OPTIONAL", "MINUS"):
            self.group_graph_pattern()
        elif keyword == "GRAPH":
            self.var_or_iri()
            self.group_graph_pattern()
        elif keyword == "SERVICE":
            self.accept_keyword("SILENT")
            target = self.current
            self.var_or_iri()
            self.services.append(target.text)
            self.group_graph_pattern()
        elif keyword == "FILTER":
            self.constraint()
        elif keyword == "BIND":
            self.expect("(")
            self.expression()
            self.expect_keyword("AS")
            self.var()
            self.expect(")")
        else:
            self.data_block()

    def triples_same_subject(self, allow_paths: bool):
        if self.is_punct("[") and self.lookahead().text != "]":
            self.blank_node_property_list(allow_paths)
            if self.starts_verb(allow_paths):
                self.property_list(allow_paths)
        elif self.is_punct("(") and self.lookahead().text != ")":
            self.collection(allow_paths)
            if self.starts_verb(allow_paths):
                self.property_list(allow_paths)
        else:
            self.var_or_term()
            self.property_list(allow_paths)

    def starts_verb(self, allow_paths: bool) -> bool:
        if self.current.kind in ("VAR", "IRI", "PNAME"):
            return True
        if self.current.kind == "NAME" and self.current.text == "a":
            return True
        return allow_paths and self.is_punct("!", "^", "(")

    def property_list(self, allow_paths: bool):
        self.verb(allow_paths)
        self.object_list(allow_paths)
        while self.accept(";"):
            while self.accept(";"):
                pass
            if self.starts_verb(allow_paths):
                self.verb(allow_paths)
                self.object_list(allow_paths)

    def verb(self, allow_paths: bool):
        if self.current.kind == "VAR":
            self.var()
        elif allow_paths:
            self.path_alternative()
        elif self.current.kind == "NAME" and self.current.text == "a":
            self.advance()
        else:
            self.iri()

    def object_list(self, allow_paths: bool):
        self.graph_node(allow_paths)
        while self.accept(","):
            self.graph_node(allow_paths)

    def graph_node(self, allow_paths: bool):
        if self.is_punct("[") and self.lookahead().text != "]":
            self.blank_node_property_list(allow_paths)
        elif self.is_punct("(") and self.lookahead().text != ")":
            self.collection(allow_paths)
        else:
            self.var_or_term()

    def blank_node_property_list(self, allow_paths: bool):
        self.expect("[")
        self.property_list(allow_paths)
        self.expect("]")

    def collection(self, allow_paths: bool):
        self.expect("(")
        self.graph_node(allow_paths)
        while not self.is_punct(")"):
            if self.current.kind == "EOF":
                raise self.error("unterminated collection", "')'")
            self.graph_node(allow_paths)
        self.expect(")")

    # -- property paths

    def path_alternative(self):
        self.path_sequence()
        while self.accept("|"):
            self.path_sequence()

    def path_sequence(self):
        self.path_elt_or_inverse()
        while self.accept("/"):
            self.path_elt_or_inverse()

    def path_elt_or_inverse(self):
        self.accept("^")
        self.path_primary()
        if self.is_punct("?", "*", "+"):
            self.advance()

    def path_primary(self):
        if self.current.kind == "NAME" and self.current.text == "a":
            self.advance()
        elif self.accept("!"):
            if self.accept("("):
                if not self.is_punct(")"):
                    self.path_one_in_property_set()
                    while self.accept("|"):
                        self.path_one_in_property_set()
                self.expect(")")
            else:
                self.path_one_in_property_set()
        elif self.accept("("):
            self.path_alternative()
            self.expect(")")
        else:
            self.iri()

    def path_one_in_property_set(self):
        self.accept("^")
        if self.current.kind == "NAME" and self.current.text == "a":
            self.advance()
        else:
            self.iri()

    # -- expressions

    def constraint(self):
        if self.is_punct("("):
            self.bracketted_expression()
        else:
            self.call()

    def bracketted_expression(self):
        self.expect("(")
        self.expression()
        self.expect(")")

    def expression(self):
        self.and_expression()
        while self.accept("||"):
            self.and_expression()

    def and_expression(self):
        self.relational_expression()
        while self.accept("&&"):
            self.relational_expression()

    def operator_expected(self):
        # an IRI token read where an operator belongs, as in ?a<3&&?b>2, is re-read from its '<'
        token = self.current
        if token.kind == "IRI":
            self.tokens[self.index:] = self.tokenizer.tokens(token.offset, operator=True)

    def relational_expression(self):
        self.additive_expression()
        self.operator_expected()
        if self.current.kind == "PUNCT" and self.current.value in RELATIONAL:
            self.advance()
            self.additive_expression()
        elif self.is_keyword("IN"):
            self.advance()
            self.expression_list()
        elif self.is_keyword("NOT") and self.lookahead().kind == "NAME" and self.lookahead().value == "IN":
            self.advance()
            self.advance()
            self.expression_list()

    def expression_list(self):
        self.expect("(")
        if self.accept(")"):
            return
        self.expression()
        while self.accept(","):
            self.expression()
        self.expect(")")

    def additive_expression(self):
        self.multiplicative_expression()
        while self.is_punct("+", "-"):
            self.advance()
            self.multiplicative_expression()

    def multiplicative_expression(self):
        self.unary_expression()
        while self.is_punct("*", "/"):
            self.advance()
            self.unary_expression()

    def unary_expression(self):
        if self.is_punct("!", "+", "-"):
            self.advance()
        self.primary_expression()

    def primary_expression(self):
        token = self.current
        if self.is_punct("("):
            self.bracketted_expression()
        elif token.kind == "VAR":
            self.advance()
        elif token.kind in ("IRI", "PNAME"):
            self.iri()
            if self.is_punct("("):
                self.argument_list()
        elif token.kind in ("STRING", "INTEGER", "NUMBER") or self.is_keyword("TRUE", "FALSE"):
            self.literal()
        elif self.starts_call():
            self.call()
        else:
            raise self.error(f"expected expression, found {self.describe(token)}", "expression")

    def starts_call(self) -> bool:
        token = self.current
        if token.kind in ("IRI", "PNAME"):
            return True
        if token.kind != "NAME":
            return False
        if token.value in BUILTINS or token.value in AGGREGATES or token.value == "EXISTS":
            return True
        return token.value == "NOT" and self.lookahead().value == "EXISTS"

    def call(self):
        token = self.current
        if token.kind in ("IRI", "PNAME"):
            self.iri()
            self.argument_list()
            return
        if not self.starts_call():
            raise self.error(f"expected function call, found {self.describe(token)}", "function call")
        self.advance()
        name = token.value
        if name == "NOT":
            self.expect_keyword("EXISTS")
            self.group_graph_pattern()
        elif name == "EXISTS":
            self.group_graph_pattern()
        elif name in AGGREGATES:
            self.aggregate(name)
        else:
            self.argument_list()

    def aggregate(self, name: str):
        self.expect("(")
        self.accept_keyword("DISTINCT")
        if name == "COUNT" and self.accept("*"):
            self.expect(")")
            return
        self.expression()
        if name == "GROUP_CONCAT" and self.accept(";"):
            self.expect_keyword("SEPARATOR")
            self.expect("=")
            if self.current.kind != "STRING":
                raise self.error(f"expected string, found {self.describe(self.current)}", "string")
            self.advance()
        self.expect(")")

    def argument_list(self):
        self.expect("(")
        if self.accept(")"):
            return
        self.accept_keyword("DISTINCT")
        self.expression()
        while self.accept(","):
            self.expression()
        self.expect(")")

    def parse(self, source_path: Optional[str]) -> QueryInfo:
        form = self.query()
        return QueryInfo(
            form=form,
            prefixes=dict(self.prefixes),
            iris=frozenset(self.iris),
            base=Iri(self.base) if self.base else None,
            services=tuple(self.services),
            source_path=source_path,
            iri_positions=dict(self.iri_positions),
        )


def parse_query(text: str, source_path: Optional[str] = None) -> QueryInfo:
    """Check a competency question and describe it, or raise ParseError"""
    info = QueryParser(text).parse(source_path)
    logger.debug("Parsed %s query with %d IRIs", info.form, len(info.iris))
    return info


def parse_query_file(path: Union[str, Path]) -> QueryInfo:
    path = Path(path)
    data = path.read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = data.count(b"\n", 0, exc.start) + 1
        column = exc.start - (data.rfind(b"\n", 0, exc.start) + 1) + 1
        raise ParseError(line, column, f"invalid UTF-8 byte 0x{data[exc.start]:02x}", "UTF-8") from exc
    return parse_query(text, str(path))


def query_form_allowed(info: QueryInfo) -> Optional[QueryFormViolation]:
    """None for SELECT and ASK queries, a violation naming the form otherwise"""
    if info.form in ALLOWED_FORMS:
        return None
    return QueryFormViolation(info.form)
