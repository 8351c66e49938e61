#!/usr/bin/env python3
"""
Conformance tests for the Turtle parser, checked against rdflib

Every positive document must parse to a graph isomorphic to rdflib's reading
of the same text; every negative document must be rejected with a position
inside the document. The manifest under fixtures/turtle-tests drives the
same checks over files, with N-Triples results for the evaluation entries.

Run with: python -m pytest test_turtle_conformance.py -v
Or: python test_turtle_conformance.py
"""

import unittest
from pathlib import Path

import rdflib
from rdflib.collection import Collection
from rdflib.compare import isomorphic
from rdflib.namespace import RDF, Namespace

from rdfkit.errors import ParseError
from rdfkit.serializer import serialize_turtle
from rdfkit.terms import XSD_STRING, BlankNode, Iri
from rdfkit.turtle import parse_turtle, parse_turtle_file

BASE = "http://example.org/base/doc.ttl"
P = "@prefix : <http://example.org/ns#> .\n"

SUITE_DIR = Path(__file__).parent / "fixtures" / "turtle-tests"
SUITE_BASE = "http://www.w3.org/2013/TurtleTests/"
MF = Namespace("http://www.w3.org/2001/sw/DataAccess/tests/test-manifest#")
RDFT = Namespace("http://www.w3.org/ns/rdftest#")

POSITIVE = [
    ("simple triple", P + ":s :p :o ."),
    ("object list", P + ":s :p :o , :o2 ."),
    ("predicate list", P + ":s :p :o ; :q :o2 ."),
    ("trailing semicolon", P + ":s :p :o ; ."),
    ("rdf type keyword", P + ":s a :C ."),
    ("absolute IRIs", "<http://example.org/s> <http://example.org/p> <http://example.org/o> ."),
    ("plain string", P + ':s :p "plain" .'),
    ("single quoted string", P + ":s :p 'single' ."),
    ("language tag", P + ':s :p "tagged"@en .'),
    ("language subtag", P + ':s :p "tagged"@en-us .'),
    ("typed literal", P + ':s :p "5"^^<http://www.w3.org/2001/XMLSchema#integer> .'),
    ("integer", P + ":s :p 5 ."),
    ("negative integer", P + ":s :p -5 ."),
    ("zero", P + ":s :p 0 ."),
    ("decimal", P + ":s :p 1.5 ."),
    ("double", P + ":s :p 1e10 ."),
    ("double with exponent sign", P + ":s :p 1.5E-3 ."),
    ("negative double", P + ":s :p -1.5e3 ."),
    ("boolean true", P + ":s :p true ."),
    ("boolean false", P + ":s :p false ."),
    ("blank object", P + ":s :p _:b ."),
    ("blank subject", P + "_:b :p :o ."),
    ("blank cycle", P + "_:a :p _:b . _:b :p _:a ."),
    ("anonymous object", P + ":s :p [] ."),
    ("anonymous subject", P + "[] :p :o ."),
    ("property list object", P + ":s :p [ :q :o ] ."),
    ("nested property lists", P + ":s :p [ :q [ :r :o ] ] ."),
    ("property list statement", P + "[ :p :o ] ."),
    ("property list subject", P + "[ :p :o ] :q :o2 ."),
    ("labelled blank inside property list", P + "_:x :p [ :q _:x ] ."),
    ("empty collection", P + ":s :p ( ) ."),
    ("one item collection", P + ":s :p ( :a ) ."),
    ("collection", P + ":s :p ( :a :b :c ) ."),
    ("mixed collection", P + ':s :p ( 1 "x" [ :q :o ] ) .'),
    ("collection subject", P + "( :a :b ) :p :o ."),
    ("nested collection", P + ":s :p ( ( :a ) ) ."),
    ("property list in collection", P + ":s :p ([:q :o]) ."),
    ("long string", P + ':s :p """long\nstring""" .'),
    ("long single quoted string", P + ":s :p '''long 'single' text''' ."),
    ("empty string", P + ':s :p "" .'),
    ("empty long string", P + ':s :p """""" .'),
    ("quote inside single quotes", P + ":s :p 'a\"b' ."),
    ("string escapes", P + ':s :p "esc\\t\\n\\"\\\\" .'),
    ("unicode escapes", P + ':s :p "\\u00e9\\U0001F600" .'),
    ("comments", P + "# comment\n:s :p :o . # another\n"),
    ("sparql prefix", "PREFIX ex: <http://example.org/ex#>\nex:s ex:p ex:o ."),
    ("prefix redefinition", P + "@prefix : <http://example.org/other#> .\n:s :p :o ."),
    ("second prefix", "@prefix ns1: <http://example.org/n1/> .\nns1:s ns1:p ns1:o ."),
    ("relative IRIs", "<s> <p> <o> ."),
    ("fragment and parent references", "<#frag> <p> <../up> ."),
    ("base directive", "@base <http://example.org/newbase/> .\n<s> <p> <o> ."),
    ("sparql base", "BASE <http://example.org/newbase/>\n<s> <p> <o> ."),
    ("relative base", "@base <sub/> .\n<s> <p> <o> ."),
    ("duplicate triples", P + ":s :p :o .\n:s :p :o ."),
    ("spread over lines", P + ":s\n  :p\n    :o\n  ."),
    ("final dot after local name", P + ":s :p :o."),
    ("dot inside local name", P + ":s :p :a.b ."),
    ("dash and underscore in local name", P + ":s :p :a-b_c ."),
    ("abbreviations combined", P + ":s :p :o ; :q :o2 , :o3 ; :r [ :t 1 ] ."),
    ("custom datatype", P + ':s :p "x"^^:dt .'),
    ("tagged object list", P + ':s :p "chat"@fr , "cat"@en .'),
    ("hash in predicate IRI", P + ":s <http://example.org/p#with-hash> :o ."),
    ("unicode IRI", P + ":s :p <http://example.org/é> ."),
    ("unicode local name", P + ":é :p :o ."),
    ("repeated predicate", P + ":s :p :o ; :p :o ."),
    ("type among others", P + ":a :b :c , :d , :e ; a :T ."),
]

NEGATIVE = [
    ("missing final dot", P + ":s :p :o"),
    ("missing final dot on absolute IRIs", "<http://e/s> <http://e/p> <http://e/o>"),
    ("undeclared subject prefix", P + "ex:s :p :o ."),
    ("undeclared object prefix", P + ":s :p ex:o ."),
    ("prefix without colon", "@prefix ex <http://e/> ."),
    ("prefix without dot", "@prefix ex: <http://e/>\nex:s ex:p ex:o ."),
    ("base without dot", "@base <http://e/>\n<s> <p> <o> ."),
    ("missing object", P + ":s :p ."),
    ("literal predicate", P + ':s "lit" :o .'),
    ("literal subject", P + '"lit" :p :o .'),
    ("unterminated string", P + ':s :p "unterminated .'),
    ("trailing comma", P + ":s :p :o , ."),
    ("unterminated collection", P + ":s :p ( :a :b ."),
    ("unterminated property list", P + ":s :p [ :q :o ."),
    ("space in IRI", P + ":s :p <http://e/a b> ."),
    ("empty language tag", P + ':s :p "x"@ .'),
    ("numeric language tag", P + ":s :p 'x'@1 ."),
    ("missing datatype", P + ':s :p "x"^^ .'),
    ("literal datatype", P + ':s :p "x"^^"y" .'),
    ("sparql prefix followed by dot", "PREFIX ex: <http://e/> .\nex:s ex:p ex:o ."),
    ("blank subject without object", P + "_:b1 :p ."),
    ("type without class", "<http://e/s> a ."),
    ("double dot", P + ":s :p :o . ."),
    ("newline in short string", P + ":s :p 'line\nbreak' ."),
    ("invalid escape", P + ':s :p "bad \\q escape" .'),
    ("short unicode escape", P + ':s :p "bad \\u12 escape" .'),
    ("closing brace", P + ":s :p :o } ."),
    ("graph block", P + "{ :s :p :o } ."),
    ("two objects without comma", P + ":s :p :o :q ."),
    ("dangling prefix directive", P + ":s :p :o .\n@prefix "),
    ("two decimal points", P + ":s :p 1.2.3 ."),
    ("dangling subject", P + ":s"),
    ("anonymous node alone", P + "[] ."),
    ("unterminated long string", P + ':s :p """unterminated .'),
    ("predicate without object after semicolon", P + ":s :p :o ; :q ."),
    ("closing parenthesis as object", P + ":s :p ) ."),
    ("closing bracket after object", P + ":s :p :o ] ."),
    ("comma instead of predicate", P + ":s <http://e/p> :o ;, ."),
    ("empty blank label", P + "_: :p :o ."),
    ("unclosed IRI on second statement", P + ":s :p :o .\n<http://e/s> <http://e/p> <not closed ."),
]


def to_rdflib(graph):
    """Copy one of our graphs into an rdflib graph"""
    def convert(term):
        if isinstance(term, Iri):
            return rdflib.URIRef(term.value)
        if isinstance(term, BlankNode):
            return rdflib.BNode(term.label)
        if term.language:
            return rdflib.Literal(term.lexical, lang=term.language)
        if term.datatype == XSD_STRING:
            return rdflib.Literal(term.lexical)
        return rdflib.Literal(term.lexical, datatype=rdflib.URIRef(term.datatype.value))

    converted = rdflib.Graph()
    for triple in graph:
        converted.add((convert(triple.subject), convert(triple.predicate), convert(triple.object)))
    return converted


def rdflib_reading(text):
    return rdflib.Graph().parse(data=text, format="turtle", publicID=BASE)


def manifest_entries():
    """(type, name, action file, result file) for every manifest entry, in manifest order"""
    graph = rdflib.Graph().parse(str(SUITE_DIR / "manifest.ttl"), format="turtle", publicID=SUITE_BASE + "manifest.ttl")
    manifest = graph.value(predicate=RDF.type, object=MF.Manifest)
    entries = []
    for entry in Collection(graph, graph.value(manifest, MF.entries)):
        result = graph.value(entry, MF.result)
        entries.append((
            graph.value(entry, RDF.type),
            str(graph.value(entry, MF.name)),
            str(graph.value(entry, MF.action))[len(SUITE_BASE):],
            str(result)[len(SUITE_BASE):] if result is not None else None,
        ))
    return entries


def parse_suite_document(file_name):
    return parse_turtle((SUITE_DIR / file_name).read_text(encoding="utf-8"), SUITE_BASE + file_name)


class TestManifestSuite(unittest.TestCase):
    """Test the parser against the vendored Turtle test manifest"""

    @classmethod
    def setUpClass(cls):
        cls.entries = manifest_entries()

    def entries_of(self, test_type):
        return [entry for entry in self.entries if entry[0] == test_type]

    def test_manifest_size(self):
        """Test that the manifest holds enough entries of each kind"""
        self.assertGreaterEqual(len(self.entries_of(RDFT.TestTurtleEval)), 60)
        self.assertGreaterEqual(len(self.entries_of(RDFT.TestTurtleNegativeSyntax)), 30)
        self.assertEqual(len({entry[1] for entry in self.entries}), len(self.entries))

    def test_every_entry_has_files(self):
        """Test that every action and result named by the manifest exists"""
        for _, name, action, result in self.entries:
            with self.subTest(name):
                self.assertTrue((SUITE_DIR / action).is_file(), action)
                if result is not None:
                    self.assertTrue((SUITE_DIR / result).is_file(), result)

    def test_evaluation(self):
        """Test that every evaluation document yields the graph of its N-Triples result"""
        for _, name, action, result in self.entries_of(RDFT.TestTurtleEval):
            with self.subTest(name):
                ours = to_rdflib(parse_suite_document(action).graph)
                expected = rdflib.Graph().parse(str(SUITE_DIR / result), format="nt")
                self.assertTrue(isomorphic(ours, expected), name)

    def test_positive_syntax(self):
        """Test that every positive syntax document parses"""
        for _, name, action, _ in self.entries_of(RDFT.TestTurtlePositiveSyntax):
            with self.subTest(name):
                parse_suite_document(action)

    def test_negative_syntax(self):
        """Test that every negative syntax document is rejected inside the document"""
        for _, name, action, _ in self.entries_of(RDFT.TestTurtleNegativeSyntax):
            with self.subTest(name):
                text = (SUITE_DIR / action).read_text(encoding="utf-8")
                with self.assertRaises(ParseError) as raised:
                    parse_turtle(text, SUITE_BASE + action)
                self.assertGreaterEqual(raised.exception.line, 1)
                self.assertLessEqual(raised.exception.line, text.count("\n") + 1)
                self.assertGreaterEqual(raised.exception.column, 1)

    def test_parse_turtle_file(self):
        """Test that a suite document read from disk resolves against the given base"""
        graph = parse_turtle_file(SUITE_DIR / "relative_IRI.ttl", SUITE_BASE + "relative_IRI.ttl").graph
        self.assertIn(Iri(SUITE_BASE + "s"), {triple.subject for triple in graph})


class TestPositiveDocuments(unittest.TestCase):
    """Test documents both parsers accept"""

    def test_isomorphic_with_rdflib(self):
        """Test that every positive document yields rdflib's graph"""
        for name, text in POSITIVE:
            with self.subTest(name):
                ours = to_rdflib(parse_turtle(text, BASE).graph)
                self.assertTrue(isomorphic(ours, rdflib_reading(text)), name)

    def test_serialization_readable_by_rdflib(self):
        """Test that our serialization of every positive document reads back the same in rdflib"""
        for name, text in POSITIVE:
            with self.subTest(name):
                graph = parse_turtle(text, BASE).graph
                written = serialize_turtle(graph)
                self.assertTrue(isomorphic(to_rdflib(graph), rdflib_reading(written)), name)

    def test_enough_cases(self):
        """Test the size of the positive corpus"""
        self.assertGreaterEqual(len(POSITIVE), 60)


class TestNegativeDocuments(unittest.TestCase):
    """Test documents the parser must reject"""

    def test_rejected_with_position(self):
        """Test that every negative document fails inside the document"""
        for name, text in NEGATIVE:
            with self.subTest(name):
                with self.assertRaises(ParseError) as raised:
                    parse_turtle(text)
                error = raised.exception
                self.assertGreaterEqual(error.line, 1)
                self.assertLessEqual(error.line, text.count("\n") + 1)
                self.assertGreaterEqual(error.column, 1)

    def test_error_on_second_line(self):
        """Test that an error after a valid statement points at the later line"""
        with self.assertRaises(ParseError) as raised:
            parse_turtle(P + ":s :p :o .\n<http://e/s> <http://e/p> <not closed .")
        self.assertEqual(raised.exception.line, 3)
        self.assertEqual(raised.exception.column, 27)

    def test_enough_cases(self):
        """Test the size of the negative corpus"""
        self.assertGreaterEqual(len(NEGATIVE), 30)


def run_tests():
    """Run all tests"""
    loader = unittest.TestLoader()
    suite = unittest.TestSuite()

    suite.addTests(loader.loadTestsFromTestCase(TestManifestSuite))
    suite.addTests(loader.loadTestsFromTestCase(TestPositiveDocuments))
    suite.addTests(loader.loadTestsFromTestCase(TestNegativeDocuments))

    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(suite)

    return result.wasSuccessful()


if __name__ == '__main__':
    import sys
    success = run_tests()
    sys.exit(0 if success else 1)
