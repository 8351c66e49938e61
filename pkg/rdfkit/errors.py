"""Exception types shared by every acimov-lint package."""

from typing import Optional


class LintError(Exception):
    """Base class for all errors raised by acimov-lint"""


class ParseError(LintError):
    """
    Syntax error in a Turtle document or a SPARQL query.

    line and column are 1-based and point at the first character the parser
    could not accept.
    """

    def __init__(self, line: int, column: int, message: str, expected: Optional[str] = None):
        self.line = line
        self.column = column
        self.message = message
        self.expected = expected
        super().__init__(f"line {line}, column {column}: {message}")
