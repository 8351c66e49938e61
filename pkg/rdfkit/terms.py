"""
RDF data model: IRIs, literals, blank nodes, triples and immutable graphs.

Terms are frozen dataclasses with structural equality, so they can be used
as dictionary keys and shared freely between concurrent test executions.
"""

from dataclasses import dataclass
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Set, Tuple, Union

XSD_STRING_VALUE = "http://www.w3.org/2001/XMLSchema#string"
RDF_LANG_STRING_VALUE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString"


@dataclass(frozen=True, order=True)
class Iri:
    """An IRI; absolute once resolved by a parser"""

    value: str

    def __str__(self) -> str:
        return self.value


XSD_STRING = Iri(XSD_STRING_VALUE)
RDF_LANG_STRING = Iri(RDF_LANG_STRING_VALUE)


@dataclass(frozen=True, order=True)
class BlankNode:
    """A blank node, its label scoped to one graph"""

    label: str

    def __post_init__(self):
        if not self.label:
            raise ValueError("blank node label must not be empty")

    def __str__(self) -> str:
        return f"_:{self.label}"


@dataclass(frozen=True)
class Literal:
    """
    An RDF literal.

    A language-tagged literal always carries rdf:langString as datatype;
    tags are stored lower-cased since RDF compares them case-insensitively.
    """

    lexical: str
    datatype: Iri = XSD_STRING
    language: Optional[str] = None

    def __post_init__(self):
        if self.language:
            object.__setattr__(self, "language", self.language.lower())
            object.__setattr__(self, "datatype", RDF_LANG_STRING)
        elif self.datatype == RDF_LANG_STRING:
            raise ValueError("rdf:langString literal requires a language tag")

    def __str__(self) -> str:
        return self.lexical


Term = Union[Iri, Literal, BlankNode]
Subject = Union[Iri, BlankNode]


def term_sort_key(term: Term) -> Tuple:
    """Total order over terms: IRIs, then blank nodes, then literals"""
    if isinstance(term, Iri):
        return (0, term.value, "", "")
    if isinstance(term, BlankNode):
        return (1, term.label, "", "")
    return (2, term.lexical, term.datatype.value, term.language or "")


@dataclass(frozen=True)
class Triple:
    subject: Subject
    predicate: Iri
    object: Term

    def __post_init__(self):
        if not isinstance(self.subject, (Iri, BlankNode)):
            raise TypeError(f"triple subject must be an IRI or blank node, got {self.subject!r}")
        if not isinstance(self.predicate, Iri):
            raise TypeError(f"triple predicate must be an IRI, got {self.predicate!r}")
        if not isinstance(self.object, (Iri, BlankNode, Literal)):
            raise TypeError(f"triple object must be an RDF term, got {self.object!r}")

    def sort_key(self) -> Tuple:
        return (term_sort_key(self.subject), term_sort_key(self.predicate), term_sort_key(self.object))


class Graph:
    """
    Immutable set of triples plus a prefix map.

    Subject, predicate and object indexes are built once at construction and
    back the pattern lookups used by the reasoners and test suites.
    """

    __slots__ = ("_triples", "_prefixes", "_by_subject", "_by_predicate", "_by_object")

    def __init__(self, triples: Iterable[Triple] = (), prefixes: Optional[Mapping[str, str]] = None):
        self._triples = frozenset(triples)
        self._prefixes = MappingProxyType(dict(prefixes or {}))
        self._by_subject: Dict[Term, Set[Triple]] = {}
        self._by_predicate: Dict[Iri, Set[Triple]] = {}
        self._by_object: Dict[Term, Set[Triple]] = {}
        for triple in self._triples:
            self._by_subject.setdefault(triple.subject, set()).add(triple)
            self._by_predicate.setdefault(triple.predicate, set()).add(triple)
            self._by_object.setdefault(triple.object, set()).add(triple)

    @property
    def prefixes(self) -> Mapping[str, str]:
        return self._prefixes

    @property
    def triples_set(self) -> frozenset:
        return self._triples

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def __len__(self) -> int:
        return len(self._triples)

    def __contains__(self, triple: Triple) -> bool:
        return triple in self._triples

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._triples == other._triples and dict(self._prefixes) == dict(other._prefixes)

    def __hash__(self) -> int:
        return hash(self._triples)

    def __repr__(self) -> str:
        return f"Graph({len(self._triples)} triples, {len(self._prefixes)} prefixes)"

    def triples(self, subject: Optional[Term] = None, predicate: Optional[Iri] = None,
                object: Optional[Term] = None) -> Iterator[Triple]:
        """Yield the triples matching a pattern; None is a wildcard"""
        if subject is not None:
            candidates = self._by_subject.get(subject, ())
        elif object is not None:
            candidates = self._by_object.get(object, ())
        elif predicate is not None:
            candidates = self._by_predicate.get(predicate, ())
        else:
            candidates = self._triples
        for triple in candidates:
            if predicate is not None and triple.predicate != predicate:
                continue
            if object is not None and triple.object != object:
                continue
            yield triple

    def objects(self, subject: Term, predicate: Iri) -> Set[Term]:
        return {triple.object for triple in self.triples(subject, predicate)}

    def subjects(self, predicate: Iri, object: Optional[Term] = None) -> Set[Subject]:
        return {triple.subject for triple in self.triples(None, predicate, object)}

    def value(self, subject: Term, predicate: Iri) -> Optional[Term]:
        """One object of (subject, predicate), the smallest in term order, or None"""
        values = self.objects(subject, predicate)
        if not values:
            return None
        return min(values, key=term_sort_key)

    def has_subject(self, term: Term) -> bool:
        return term in self._by_subject

    def terms(self) -> Set[Term]:
        """Every term occurring in any position"""
        found: Set[Term] = set()
        for triple in self._triples:
            found.add(triple.subject)
            found.add(triple.predicate)
            found.add(triple.object)
        return found

    def iris(self) -> Set[Iri]:
        return {term for term in self.terms() if isinstance(term, Iri)}

    def with_triples(self, extra: Iterable[Triple]) -> "Graph":
        return Graph(self._triples.union(extra), self._prefixes)

    def with_prefixes(self, prefixes: Mapping[str, str]) -> "Graph":
        merged = dict(self._prefixes)
        merged.update(prefixes)
        return Graph(self._triples, merged)

    def sorted_triples(self) -> List[Triple]:
        return sorted(self._triples, key=Triple.sort_key)

    def predicate_objects(self, subject: Term) -> Iterator[Tuple[Iri, Term]]:
        for triple in self._by_subject.get(subject, ()):
            yield triple.predicate, triple.object

    def triples_with_predicate(self, predicate: Iri) -> Set[Triple]:
        return set(self._by_predicate.get(predicate, ()))

    def union(self, other: "Graph") -> "Graph":
        """Plain set union; blank labels are NOT standardized apart"""
        merged = dict(self._prefixes)
        merged.update(other.prefixes)
        return Graph(self._triples.union(other.triples_set), merged)
