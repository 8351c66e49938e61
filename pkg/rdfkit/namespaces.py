"""Namespace helper and the vocabularies acimov-lint reasons about."""

from .terms import Iri


class Namespace:
    """
    IRI factory for a namespace: ``OWL.Class`` or ``OWL.term("Class")``.
    """

    __slots__ = ("base",)

    def __init__(self, base: str):
        self.base = base

    def __getattr__(self, name: str) -> Iri:
        if name.startswith("_"):
            raise AttributeError(name)
        return Iri(self.base + name)

    def term(self, name: str) -> Iri:
        return Iri(self.base + name)

    def __contains__(self, iri) -> bool:
        return str(iri).startswith(self.base)

    def __str__(self) -> str:
        return self.base

    def __repr__(self) -> str:
        return f"Namespace({self.base!r})"


RDF = Namespace("http://www.w3.org/1999/02/22-rdf-syntax-ns#")
RDFS = Namespace("http://www.w3.org/2000/01/rdf-schema#")
OWL = Namespace("http://www.w3.org/2002/07/owl#")
XSD = Namespace("http://www.w3.org/2001/XMLSchema#")
SH = Namespace("http://www.w3.org/ns/shacl#")
EARL = Namespace("http://www.w3.org/ns/earl#")
PROV = Namespace("http://www.w3.org/ns/prov#")
DCTERMS = Namespace("http://purl.org/dc/terms/")
FOAF = Namespace("http://xmlns.com/foaf/0.1/")
VANN = Namespace("http://purl.org/vocab/vann/")

WELL_KNOWN_PREFIXES = {
    "rdf": RDF.base,
    "rdfs": RDFS.base,
    "owl": OWL.base,
    "xsd": XSD.base,
    "sh": SH.base,
    "earl": EARL.base,
    "prov": PROV.base,
    "dcterms": DCTERMS.base,
    "foaf": FOAF.base,
}
