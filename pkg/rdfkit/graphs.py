"""Graph-level utilities: merging, namespace scoping and RDF collections."""

import logging
from typing import Dict, Iterable, List, Optional, Set

from .namespaces import RDF
from .terms import BlankNode, Graph, Iri, Term, Triple

logger = logging.getLogger(__name__)


def _relabel(term: Term, source_index: int) -> Term:
    if isinstance(term, BlankNode):
        return BlankNode(f"m{source_index}_{term.label}")
    return term


def merge_graphs(graphs: Iterable[Graph]) -> Graph:
    """
    Union of graphs with blank nodes standardized apart.

    Each source's blank nodes are relabelled with the source position so two
    sources never share a label. Prefix bindings merge left to right; a later
    binding of the same prefix to another namespace wins and is logged.
    """
    triples: Set[Triple] = set()
    prefixes: Dict[str, str] = {}
    for source_index, graph in enumerate(graphs):
        for triple in graph:
            triples.add(Triple(
                _relabel(triple.subject, source_index),
                triple.predicate,
                _relabel(triple.object, source_index),
            ))
        for prefix, namespace in graph.prefixes.items():
            previous = prefixes.get(prefix)
            if previous is not None and previous != namespace:
                logger.warning(
                    "Prefix '%s:' rebound from <%s> to <%s> while merging", prefix, previous, namespace
                )
            prefixes[prefix] = namespace
    return Graph(triples, prefixes)


def terms_in_namespace(graph: Graph, namespace: str) -> Set[Iri]:
    """Every IRI in any triple position whose value starts with namespace"""
    if not namespace:
        raise ValueError("namespace must not be empty")
    return {iri for iri in graph.iris() if iri.value.startswith(namespace)}


def terms_described(graph: Graph, namespace: str) -> Set[Iri]:
    """
    In-namespace IRIs appearing as subject of at least one triple; the
    namespace IRI itself is excluded.
    """
    return {
        iri for iri in terms_in_namespace(graph, namespace)
        if iri.value != namespace and graph.has_subject(iri)
    }


def namespace_of(iri: Iri) -> str:
    """IRI prefix up to and including the last '#' or '/'"""
    value = iri.value
    cut = max(value.rfind("#"), value.rfind("/"))
    if cut < 0:
        cut = value.find(":")
    return value[:cut + 1]


def local_name(iri: Iri) -> str:
    return iri.value[len(namespace_of(iri)):]


def collection_items(graph: Graph, head: Term) -> Optional[List[Term]]:
    """
    Members of the RDF collection starting at head, or None when head is
    not a well-formed list.
    """
    items: List[Term] = []
    seen: Set[Term] = set()
    node = head
    while node != RDF.nil:
        if node in seen:
            return None
        seen.add(node)
        first = graph.value(node, RDF.first)
        rest = graph.value(node, RDF.rest)
        if first is None or rest is None:
            return None
        items.append(first)
        node = rest
    return items
