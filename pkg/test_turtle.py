#!/usr/bin/env python3
"""
Tests for the Turtle parser and serializer

Run with: python -m pytest test_turtle.py -v
Or: python test_turtle.py
"""

import shutil
import tempfile
import unittest
from pathlib import Path

from hypothesis import given, strategies as st

from rdfkit.errors import ParseError
from rdfkit.namespaces import RDF, XSD
from rdfkit.serializer import serialize_turtle
from rdfkit.terms import BlankNode, Graph, Iri, Literal, Triple
from rdfkit.turtle import parse_turtle, parse_turtle_file

E = "http://e/"
HEADER = f"@prefix ex: <{E}> .\n"


def ex(name):
    return Iri(E + name)


class TestTurtleParser(unittest.TestCase):
    """Test parse_turtle"""

    def test_empty_document(self):
        """Test that an empty document is an empty graph"""
        result = parse_turtle("")
        self.assertEqual(len(result.graph), 0)
        self.assertIsNone(result.base)

    def test_minimal_document(self):
        """Test the smallest useful document"""
        result = parse_turtle("@prefix ex: <http://e/> . ex:a ex:p ex:b .")
        self.assertEqual(len(result.graph), 1)
        self.assertIn(Triple(ex("a"), ex("p"), ex("b")), result.graph)
        self.assertEqual(result.prefix_directives, (("ex", E),))
        self.assertEqual(result.graph.prefixes["ex"], E)

    def test_forgotten_semicolon_reported_on_next_line(self):
        """Test that a missing ';' is reported where the next predicate starts"""
        text = HEADER + "ex:a ex:p ex:b\n    ex:q ex:c .\n"
        with self.assertRaises(ParseError) as raised:
            parse_turtle(text)
        self.assertEqual(raised.exception.line, 3)
        self.assertEqual(raised.exception.column, 5)
        self.assertIn("'.'", raised.exception.message)

    def test_undeclared_prefix(self):
        """Test that an undeclared prefix fails at the prefixed name"""
        with self.assertRaises(ParseError) as raised:
            parse_turtle("<http://e/s> <http://e/p>\n  foo:o .")
        self.assertEqual((raised.exception.line, raised.exception.column), (2, 3))
        self.assertIn("undeclared prefix 'foo:'", raised.exception.message)

    def test_predicate_object_lists(self):
        """Test ';' and ',' abbreviations, trailing ';' included"""
        graph = parse_turtle(HEADER + "ex:a ex:p ex:b , ex:c ; ex:q ex:d ; .").graph
        self.assertEqual(len(graph), 3)
        self.assertEqual(graph.objects(ex("a"), ex("p")), {ex("b"), ex("c")})

    def test_rdf_type_shorthand(self):
        """Test the 'a' keyword"""
        graph = parse_turtle(HEADER + "ex:a a ex:C .").graph
        self.assertIn(Triple(ex("a"), RDF.type, ex("C")), graph)

    def test_blank_nodes(self):
        """Test labelled, anonymous and property-list blank nodes"""
        graph = parse_turtle(HEADER + """
            _:x ex:p ex:a .
            _:x ex:q ex:b .
            ex:c ex:r [] .
            ex:d ex:s [ ex:t ex:e ] .
        """).graph
        labelled = {triple.subject for triple in graph if triple.predicate in (ex("p"), ex("q"))}
        self.assertEqual(len(labelled), 1)
        self.assertIsInstance(graph.value(ex("c"), ex("r")), BlankNode)
        inner = graph.value(ex("d"), ex("s"))
        self.assertEqual(graph.value(inner, ex("t")), ex("e"))

    def test_blank_property_list_as_statement(self):
        """Test a statement made of a blank node property list only"""
        graph = parse_turtle(HEADER + "[ ex:p ex:o ] .").graph
        self.assertEqual(len(graph), 1)

    def test_collections(self):
        """Test that collections become rdf:first/rdf:rest chains"""
        graph = parse_turtle(HEADER + "ex:s ex:p (ex:a ex:b) . ex:s ex:q () .").graph
        head = graph.value(ex("s"), ex("p"))
        self.assertEqual(graph.value(head, RDF.first), ex("a"))
        second = graph.value(head, RDF.rest)
        self.assertEqual(graph.value(second, RDF.first), ex("b"))
        self.assertEqual(graph.value(second, RDF.rest), RDF.nil)
        self.assertEqual(graph.value(ex("s"), ex("q")), RDF.nil)

    def test_literals(self):
        """Test numeric, boolean, typed and tagged literals"""
        graph = parse_turtle(HEADER + """
            @prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
            ex:s ex:int 42 ; ex:dec -1.5 ; ex:dbl 1e3 ; ex:bool true ;
                 ex:typed "2024-01-01"^^xsd:date ; ex:tagged "colour"@en-GB .
        """).graph
        self.assertEqual(graph.value(ex("s"), ex("int")), Literal("42", XSD.integer))
        self.assertEqual(graph.value(ex("s"), ex("dec")), Literal("-1.5", XSD.decimal))
        self.assertEqual(graph.value(ex("s"), ex("dbl")), Literal("1e3", XSD.double))
        self.assertEqual(graph.value(ex("s"), ex("bool")), Literal("true", XSD.boolean))
        self.assertEqual(graph.value(ex("s"), ex("typed")), Literal("2024-01-01", XSD.date))
        self.assertEqual(graph.value(ex("s"), ex("tagged")), Literal("colour", language="en-gb"))

    def test_string_escapes(self):
        """Test ECHAR and UCHAR escapes and long strings"""
        graph = parse_turtle(HEADER + 'ex:s ex:p "a\\tb\\u00e9" ; ex:q """line one\nline "two" end""" .').graph
        self.assertEqual(graph.value(ex("s"), ex("p")).lexical, "a\tbé")
        self.assertEqual(graph.value(ex("s"), ex("q")).lexical, 'line one\nline "two" end')

    def test_sparql_style_directives(self):
        """Test PREFIX and BASE without a final dot"""
        graph = parse_turtle("BASE <http://e/dir/>\nPREFIX ex: <http://e/>\n<a> ex:p <#b> .").graph
        self.assertIn(Triple(Iri("http://e/dir/a"), ex("p"), Iri("http://e/dir/#b")), graph)

    def test_relative_iris_resolve_against_base(self):
        """Test resolution against the supplied base"""
        result = parse_turtle("<s> <p> <../o> .", base="http://e/dir/doc.ttl")
        self.assertIn(Triple(Iri("http://e/dir/s"), Iri("http://e/dir/p"), Iri("http://e/o")), result.graph)
        self.assertEqual(result.base, Iri("http://e/dir/doc.ttl"))

    def test_comments_and_trailing_dot_in_local_name(self):
        """Test that a final '.' ends the statement rather than the local name"""
        graph = parse_turtle(HEADER + "# comment\nex:a ex:p ex:b. # trailing\n").graph
        self.assertIn(Triple(ex("a"), ex("p"), ex("b")), graph)

    def test_missing_object(self):
        """Test the error of a statement without object"""
        with self.assertRaises(ParseError) as raised:
            parse_turtle(HEADER + "ex:a ex:p .")
        self.assertEqual(raised.exception.line, 2)
        self.assertEqual(raised.exception.expected, "object")

    def test_deterministic_errors(self):
        """Test that the same input always fails at the same position"""
        text = HEADER + "ex:a ex:p \"unterminated .\n"
        positions = set()
        for _ in range(3):
            try:
                parse_turtle(text)
            except ParseError as e:
                positions.add((e.line, e.column))
        self.assertEqual(positions, {(2, 11)})


class TestTurtleFiles(unittest.TestCase):
    """Test parse_turtle_file"""

    def setUp(self):
        self.test_dir = tempfile.mkdtemp()

    def tearDown(self):
        if Path(self.test_dir).exists():
            shutil.rmtree(self.test_dir)

    def test_default_base_is_file_iri(self):
        """Test that relative IRIs resolve against the file location"""
        path = Path(self.test_dir) / "module.ttl"
        path.write_text("<#a> <#p> <other.ttl> .", encoding="utf-8")
        graph = parse_turtle_file(path).graph
        file_iri = path.resolve().as_uri()
        self.assertIn(Triple(Iri(file_iri + "#a"), Iri(file_iri + "#p"),
                             Iri(path.resolve().with_name("other.ttl").as_uri())), graph)

    def test_invalid_utf8(self):
        """Test that undecodable bytes are located by line and column"""
        path = Path(self.test_dir) / "broken.ttl"
        path.write_bytes(b'@prefix ex: <http://e/> .\nex:a ex:p "\xff" .\n')
        with self.assertRaises(ParseError) as raised:
            parse_turtle_file(path)
        self.assertEqual((raised.exception.line, raised.exception.column), (2, 12))
        self.assertIn("UTF-8", raised.exception.message)


class TestTurtleSerializer(unittest.TestCase):
    """Test serialize_turtle"""

    def test_empty_graph(self):
        """Test that an empty graph serializes to prefix directives only"""
        self.assertEqual(serialize_turtle(Graph()), "\n")
        self.assertEqual(serialize_turtle(Graph(prefixes={"ex": E})), f"@prefix ex: <{E}> .\n")

    def test_single_triple_round_trip(self):
        """Test that one triple survives a round trip"""
        graph = Graph([Triple(ex("a"), ex("p"), ex("b"))], {"ex": E})
        text = serialize_turtle(graph)
        self.assertTrue(text.endswith(" .\n"))
        self.assertEqual(parse_turtle(text).graph.triples_set, graph.triples_set)

    def test_language_tag_preserved(self):
        """Test that language tags survive a round trip"""
        graph = Graph([Triple(ex("a"), ex("label"), Literal("x", language="en"))])
        parsed = parse_turtle(serialize_turtle(graph)).graph
        self.assertEqual(parsed.value(ex("a"), ex("label")), Literal("x", language="en"))

    def test_prefixes_emitted(self):
        """Test that the prefix map becomes @prefix directives and compact names"""
        graph = Graph([Triple(ex("a"), RDF.type, ex("C"))], {"ex": E})
        text = serialize_turtle(graph)
        self.assertIn("@prefix ex: <http://e/> .", text)
        self.assertIn("ex:a a ex:C .", text)

    def test_objects_sorted(self):
        """Test that output is sorted and stable"""
        graph = Graph([Triple(ex("s"), ex("p"), ex(name)) for name in ("c", "a", "b")], {"ex": E})
        text = serialize_turtle(graph)
        self.assertLess(text.index("ex:a"), text.index("ex:b"))
        self.assertLess(text.index("ex:b"), text.index("ex:c"))
        self.assertEqual(text, serialize_turtle(Graph(graph, {"ex": E})))

    def test_blank_nodes_and_lists(self):
        """Test that blank structures keep their shape"""
        source = parse_turtle(HEADER + "ex:s ex:p (ex:a [ ex:q 1 ]) .").graph
        parsed = parse_turtle(serialize_turtle(source)).graph
        self.assertEqual(len(parsed), len(source))
        self.assertEqual(len([t for t in parsed if isinstance(t.subject, BlankNode)]),
                         len([t for t in source if isinstance(t.subject, BlankNode)]))

    @given(st.text())
    def test_any_string_literal_round_trips(self, text):
        """Test escaping of arbitrary literal text"""
        graph = Graph([Triple(ex("s"), ex("p"), Literal(text))])
        parsed = parse_turtle(serialize_turtle(graph)).graph
        self.assertEqual(parsed.value(ex("s"), ex("p")), Literal(text))


def run_tests():
    """Run all tests"""
    loader = unittest.TestLoader()
    suite = unittest.TestSuite()

    suite.addTests(loader.loadTestsFromTestCase(TestTurtleParser))
    suite.addTests(loader.loadTestsFromTestCase(TestTurtleFiles))
    suite.addTests(loader.loadTestsFromTestCase(TestTurtleSerializer))

    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(suite)

    return result.wasSuccessful()


if __name__ == '__main__':
    import sys
    success = run_tests()
    sys.exit(0 if success else 1)
