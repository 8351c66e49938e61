"""
IRI syntax checking (RFC 3986/3987 absolute references plus the characters
Turtle forbids inside IRIREF) and relative reference resolution.
"""

import re
import string
from dataclasses import dataclass
from typing import List, Optional, Tuple

SCHEME_PATTERN = re.compile(r"[A-Za-z][A-Za-z0-9+\-.]*:")
REFERENCE_PARTS = re.compile(r"(?://([^/?#]*))?([^?#]*)(?:\?([^#]*))?(?:#(.*))?", re.DOTALL)

UNRESERVED = set(string.ascii_letters + string.digits + "-._~")
GEN_DELIMS = set(":/?#[]@")
SUB_DELIMS = set("!$&'()*+,;=")
ALLOWED_ASCII = UNRESERVED | GEN_DELIMS | SUB_DELIMS
FORBIDDEN = set('<>"{}|^`\\')
HEX_DIGITS = set(string.hexdigits)


@dataclass(frozen=True)
class IriViolation:
    """First offending character of an IRI; index is 0-based"""

    index: int
    rule: str
    reason: str

    def __str__(self) -> str:
        return f"{self.reason} at index {self.index} ({self.rule})"


def _describe(character: str) -> str:
    if character == " ":
        return "space"
    if ord(character) < 0x20 or ord(character) == 0x7F:
        return f"control character U+{ord(character):04X}"
    return repr(character)


def _is_ucschar(character: str) -> bool:
    code_point = ord(character)
    if 0xD800 <= code_point <= 0xDFFF:
        return False
    if code_point & 0xFFFE == 0xFFFE:
        return False
    return code_point >= 0xA0


def _scheme_violation(value: str) -> IriViolation:
    if not value or not value[0].isascii() or not value[0].isalpha():
        return IriViolation(0, "scheme", "absolute IRI requires a scheme")
    index = 1
    while index < len(value) and (value[index].isascii() and (value[index].isalnum() or value[index] in "+-.")):
        index += 1
    return IriViolation(index, "scheme", "absolute IRI requires a scheme")


def _port_violation(authority: str, offset: int) -> Optional[IriViolation]:
    host_start = authority.rfind("@") + 1
    host_port = authority[host_start:]
    if host_port.startswith("["):
        closing = host_port.find("]")
        if closing < 0:
            return IriViolation(offset + host_start, "IP-literal", "unterminated IP literal")
        remainder = host_port[closing + 1:]
        remainder_offset = offset + host_start + closing + 1
    else:
        colon = host_port.find(":")
        if colon < 0:
            return None
        remainder = host_port[colon:]
        remainder_offset = offset + host_start + colon
    if not remainder:
        return None
    if not remainder.startswith(":"):
        return IriViolation(remainder_offset, "authority", "unexpected character after host")
    for position, character in enumerate(remainder[1:], start=1):
        if not character.isdigit() or not character.isascii():
            return IriViolation(remainder_offset + position, "port", "port must be digits")
    return None


def validate_iri(value: str) -> Optional[IriViolation]:
    """
    Check that value is an absolute IRI reference.

    Returns None when valid, otherwise the first violation found. Case and
    percent-encoding are not normalised.
    """
    match = SCHEME_PATTERN.match(value)
    if match is None:
        for index, character in enumerate(value):
            if character in FORBIDDEN or ord(character) <= 0x20:
                return IriViolation(index, "IRI", f"forbidden {_describe(character)}")
        return _scheme_violation(value)

    position = match.end()
    authority_start = authority_end = -1
    if value.startswith("//", position):
        authority_start = position + 2
        authority_end = authority_start
        while authority_end < len(value) and value[authority_end] not in "/?#":
            authority_end += 1

    seen_fragment = False
    index = position
    while index < len(value):
        character = value[index]
        in_authority = authority_start <= index < authority_end
        if character == "%":
            digits = value[index + 1:index + 3]
            if len(digits) != 2 or not set(digits) <= HEX_DIGITS:
                return IriViolation(index, "pct-encoded", "'%' must be followed by two hex digits")
            index += 3
            continue
        if ord(character) <= 0x20 or ord(character) == 0x7F or character in FORBIDDEN:
            return IriViolation(index, "IRI", f"forbidden {_describe(character)}")
        if character == "#":
            if seen_fragment:
                return IriViolation(index, "ifragment", "second '#' in fragment")
            seen_fragment = True
        elif character in "[]" and not in_authority:
            return IriViolation(index, "IP-literal", f"{character!r} only allowed in the host")
        elif ord(character) < 0x80:
            if character not in ALLOWED_ASCII:
                return IriViolation(index, "IRI", f"forbidden {_describe(character)}")
        elif not _is_ucschar(character):
            return IriViolation(index, "ucschar", f"character U+{ord(character):04X} not allowed")
        index += 1

    if authority_start >= 0:
        return _port_violation(value[authority_start:authority_end], authority_start)
    return None


def is_absolute(value: str) -> bool:
    return SCHEME_PATTERN.match(value) is not None


def remove_dot_segments(path: str) -> str:
    """Remove '.' and '..' segments from path (RFC 3986 section 5.2.4)"""
    output: List[str] = []
    while path:
        if path.startswith("../"):
            path = path[3:]
        elif path.startswith("./"):
            path = path[2:]
        elif path.startswith("/./"):
            path = path[2:]
        elif path == "/.":
            path = "/"
        elif path.startswith("/../") or path == "/..":
            path = "/" + path[4:]
            if output:
                output.pop()
        elif path in (".", ".."):
            path = ""
        else:
            end = path.find("/", 1)
            if end < 0:
                end = len(path)
            output.append(path[:end])
            path = path[end:]
    return "".join(output)


def _split(value: str, scheme: Optional[str]) -> Tuple[Optional[str], Optional[str], str, Optional[str], Optional[str]]:
    """(scheme, authority, path, query, fragment) of a reference whose scheme is already known"""
    rest = value[len(scheme) + 1:] if scheme is not None else value
    match = REFERENCE_PARTS.match(rest)
    return scheme, match.group(1), match.group(2), match.group(3), match.group(4)


def _merge(base_authority: Optional[str], base_path: str, reference_path: str) -> str:
    if base_authority is not None and not base_path:
        return "/" + reference_path
    return base_path[:base_path.rfind("/") + 1] + reference_path


def resolve_iri(base: Optional[str], reference: str) -> str:
    """
    Resolve a reference against base (RFC 3986 section 5.2).

    Absolute references are returned unchanged and so is every reference
    when there is no base. Any scheme is accepted, registered or not; the
    fragment of the base never reaches the result.
    """
    if is_absolute(reference) or not base:
        return reference
    base_scheme = SCHEME_PATTERN.match(base)
    scheme, authority, path, query, _ = _split(base, base_scheme.group(0)[:-1] if base_scheme else None)
    _, ref_authority, ref_path, ref_query, fragment = _split(reference, None)
    if ref_authority is not None:
        authority, path, query = ref_authority, remove_dot_segments(ref_path), ref_query
    elif not ref_path:
        if ref_query is not None:
            query = ref_query
    else:
        if ref_path.startswith("/"):
            path = remove_dot_segments(ref_path)
        else:
            path = remove_dot_segments(_merge(authority, path, ref_path))
        query = ref_query
    result = f"{scheme}:" if scheme is not None else ""
    if authority is not None:
        result += f"//{authority}"
    result += path
    if query is not None:
        result += f"?{query}"
    if fragment is not None:
        result += f"#{fragment}"
    return result
