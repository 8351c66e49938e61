#!/usr/bin/env python3
"""
Tests for OWL 2 profile checking and OWL RL reasoning

Run with: python -m pytest test_owl_engine.py -v
Or: python test_owl_engine.py
"""

import unittest

from hypothesis import given, settings, strategies as st

from rdfkit.namespaces import OWL, RDF, RDFS
from rdfkit.terms import Graph, Iri, Triple
from rdfkit.turtle import parse_turtle
from reasoning.profiles import Profile, check_profile, load_profile_rules, parse_rule
from reasoning.rl import IterationLimitExceeded, check_consistency, find_clashes, saturate_rl

PREFIXES = """
@prefix ex: <http://e/> .
@prefix owl: <http://www.w3.org/2002/07/owl#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
"""

NODES = [Iri(f"http://e/{name}") for name in "abcde"]
PREDICATES = [RDF.type, RDFS.subClassOf, RDFS.subPropertyOf, RDFS.domain, OWL.sameAs, Iri("http://e/p")]
CLASH_PREDICATES = PREDICATES + [OWL.differentFrom, OWL.disjointWith]


def ex(name):
    return Iri("http://e/" + name)


def graph_of(text):
    return parse_turtle(PREFIXES + text).graph


def random_graphs(predicates):
    triple = st.builds(Triple, st.sampled_from(NODES), st.sampled_from(predicates), st.sampled_from(NODES))
    return st.lists(triple, max_size=8).map(Graph)


class TestProfiles(unittest.TestCase):
    """Test check_profile"""

    def rule_ids(self, text, profile):
        return [violation.rule_id for violation in check_profile(graph_of(text), profile)]

    def test_empty_graph(self):
        """Test that an empty graph fits every profile"""
        for profile in Profile:
            self.assertEqual(check_profile(Graph(), profile), [])

    def test_graph_without_owl_vocabulary(self):
        """Test that plain RDFS data raises nothing"""
        text = 'ex:a ex:p ex:b . ex:a rdfs:label "a" . ex:A rdfs:subClassOf ex:B .'
        for profile in Profile:
            self.assertEqual(self.rule_ids(text, profile), [])

    def test_disjoint_union(self):
        """Test that owl:disjointUnionOf violates every profile once"""
        text = "ex:C owl:disjointUnionOf (ex:A ex:B) ."
        violations = check_profile(graph_of(text), Profile.RL)
        self.assertEqual(len(violations), 1)
        self.assertEqual(violations[0].construct, OWL.disjointUnionOf)
        self.assertEqual(violations[0].focus, ex("C"))
        self.assertEqual(violations[0].profile, Profile.RL)
        self.assertEqual(self.rule_ids(text, "EL"), ["disjoint-union"])
        self.assertEqual(self.rule_ids(text, "QL"), ["disjoint-union"])

    def test_reflexive_property(self):
        """Test that reflexive properties only violate RL"""
        text = "ex:p a owl:ReflexiveProperty ."
        self.assertEqual(self.rule_ids(text, "RL"), ["reflexive-property"])
        self.assertEqual(self.rule_ids(text, "EL"), [])
        self.assertEqual(self.rule_ids(text, "QL"), [])

    def test_has_key(self):
        """Test that keys violate QL"""
        text = "ex:C owl:hasKey (ex:p) ."
        self.assertEqual(self.rule_ids(text, "QL"), ["has-key"])
        self.assertEqual(self.rule_ids(text, "RL"), [])

    def test_union_in_superclass_position(self):
        """Test a union used as a superclass"""
        text = "ex:A rdfs:subClassOf [ owl:unionOf (ex:B ex:C) ] ."
        violations = check_profile(graph_of(text), Profile.RL)
        self.assertEqual([v.rule_id for v in violations], ["union-superclass"])
        self.assertEqual(violations[0].focus, ex("A"))
        self.assertEqual(self.rule_ids(text, "EL"), ["union"])
        self.assertEqual(self.rule_ids(text, "QL"), ["union"])

    def test_union_in_subclass_position(self):
        """Test that RL accepts a union on the subclass side"""
        text = "[ owl:unionOf (ex:B ex:C) ] rdfs:subClassOf ex:A ."
        self.assertEqual(self.rule_ids(text, "RL"), [])
        self.assertEqual(self.rule_ids(text, "EL"), ["union"])

    def test_existential_superclass(self):
        """Test that an existential superclass violates RL only"""
        text = "ex:A rdfs:subClassOf [ a owl:Restriction ; owl:onProperty ex:p ; owl:someValuesFrom ex:B ] ."
        self.assertEqual(self.rule_ids(text, "RL"), ["some-values-superclass"])
        self.assertEqual(self.rule_ids(text, "EL"), [])
        self.assertEqual(self.rule_ids(text, "QL"), [])

    def test_complement_positions(self):
        """Test complements on either side of an axiom"""
        subclass = "[ owl:complementOf ex:B ] rdfs:subClassOf ex:A ."
        superclass = "ex:A rdfs:subClassOf [ owl:complementOf ex:B ] ."
        self.assertEqual(self.rule_ids(subclass, "RL"), ["complement-subclass"])
        self.assertEqual(self.rule_ids(subclass, "QL"), ["complement-subclass"])
        self.assertEqual(self.rule_ids(subclass, "EL"), ["complement"])
        self.assertEqual(self.rule_ids(superclass, "RL"), [])
        self.assertEqual(self.rule_ids(superclass, "EL"), ["complement"])

    def test_max_cardinality(self):
        """Test that RL only accepts maximum cardinalities of 0 or 1"""
        template = "ex:A rdfs:subClassOf [ a owl:Restriction ; owl:onProperty ex:p ; owl:maxCardinality {} ] ."
        self.assertEqual(self.rule_ids(template.format(1), "RL"), [])
        self.assertEqual(self.rule_ids(template.format(3), "RL"), ["max-cardinality-above-one"])
        self.assertEqual(self.rule_ids(template.format(1), "EL"), ["cardinality"])
        self.assertEqual(self.rule_ids(template.format(1), "QL"), ["cardinality"])

    def test_violations_deduplicated(self):
        """Test one violation per rule and anchor"""
        text = "ex:C owl:disjointUnionOf (ex:A ex:B) , (ex:D ex:E) ."
        self.assertEqual(len(check_profile(graph_of(text), "RL")), 1)

    def test_extra_rules(self):
        """Test that projects can extend the rule table"""
        rule = parse_rule({
            "id": "no-comments",
            "match": "predicate",
            "constructs": ["rdfs:comment"],
            "profiles": ["EL"],
            "message": "comments are banned here",
        })
        graph = graph_of('ex:A rdfs:comment "x" .')
        violations = check_profile(graph, Profile.EL, extra_rules=[rule])
        self.assertEqual([v.rule_id for v in violations], ["no-comments"])
        self.assertEqual(violations[0].construct, RDFS.comment)
        self.assertEqual(check_profile(graph, Profile.RL, extra_rules=[rule]), [])

    def test_malformed_rules(self):
        """Test that malformed rule records are refused"""
        for record in (
            {"id": "x", "match": "nonsense", "constructs": [], "profiles": ["EL"]},
            {"id": "x", "match": "class-expression", "position": "middle", "constructs": [], "profiles": ["EL"]},
            {"id": "x", "match": "predicate", "constructs": [], "profiles": []},
        ):
            with self.subTest(record):
                with self.assertRaises(ValueError):
                    parse_rule(record)

    def test_shipped_table(self):
        """Test that the shipped table covers the required constructs"""
        ids = {rule.rule_id for rule in load_profile_rules()}
        for required in ("disjoint-union", "reflexive-property", "union-superclass", "has-key",
                         "property-chain", "cardinality", "complement-subclass"):
            self.assertIn(required, ids)

    def test_unknown_profile(self):
        """Test that only EL, QL and RL exist"""
        with self.assertRaises(ValueError):
            check_profile(Graph(), "DL")


class TestSaturation(unittest.TestCase):
    """Test saturate_rl"""

    def test_subclass_membership(self):
        """Test cax-sco"""
        closure = saturate_rl(graph_of("ex:a rdfs:subClassOf ex:b . ex:x a ex:a ."))
        self.assertIn(Triple(ex("x"), RDF.type, ex("b")), closure)

    def test_domain(self):
        """Test prp-dom"""
        closure = saturate_rl(graph_of("ex:p rdfs:domain ex:C . ex:s ex:p ex:o ."))
        self.assertIn(Triple(ex("s"), RDF.type, ex("C")), closure)

    def test_same_as_transitive(self):
        """Test eq-trans and eq-sym"""
        closure = saturate_rl(graph_of("ex:a owl:sameAs ex:b . ex:b owl:sameAs ex:c ."))
        self.assertIn(Triple(ex("a"), OWL.sameAs, ex("c")), closure)
        self.assertIn(Triple(ex("c"), OWL.sameAs, ex("a")), closure)

    def test_property_characteristics(self):
        """Test prp-symp, prp-trp and prp-inv"""
        closure = saturate_rl(graph_of("""
            ex:knows a owl:SymmetricProperty .
            ex:partOf a owl:TransitiveProperty .
            ex:hasPart owl:inverseOf ex:partOf .
            ex:a ex:knows ex:b .
            ex:x ex:partOf ex:y . ex:y ex:partOf ex:z .
        """))
        self.assertIn(Triple(ex("b"), ex("knows"), ex("a")), closure)
        self.assertIn(Triple(ex("x"), ex("partOf"), ex("z")), closure)
        self.assertIn(Triple(ex("z"), ex("hasPart"), ex("x")), closure)

    def test_functional_property(self):
        """Test prp-fp"""
        closure = saturate_rl(graph_of("ex:p a owl:FunctionalProperty . ex:s ex:p ex:a , ex:b ."))
        self.assertIn(Triple(ex("a"), OWL.sameAs, ex("b")), closure)

    def test_schema_transitivity(self):
        """Test scm-sco and scm-spo"""
        closure = saturate_rl(graph_of("""
            ex:A rdfs:subClassOf ex:B . ex:B rdfs:subClassOf ex:C .
            ex:p rdfs:subPropertyOf ex:q . ex:q rdfs:subPropertyOf ex:r .
        """))
        self.assertIn(Triple(ex("A"), RDFS.subClassOf, ex("C")), closure)
        self.assertIn(Triple(ex("p"), RDFS.subPropertyOf, ex("r")), closure)

    def test_iteration_limit(self):
        """Test that a pass limit below the fixpoint raises"""
        graph = graph_of("ex:a rdfs:subClassOf ex:b . ex:x a ex:a .")
        with self.assertRaises(IterationLimitExceeded):
            saturate_rl(graph, max_iterations=1)
        self.assertIn(Triple(ex("x"), RDF.type, ex("b")), saturate_rl(graph, max_iterations=2))

    def test_non_positive_limit(self):
        """Test that the pass limit must be positive"""
        with self.assertRaises(ValueError):
            saturate_rl(Graph(), max_iterations=0)

    @settings(max_examples=50, deadline=None)
    @given(random_graphs(PREDICATES))
    def test_monotone_and_idempotent(self, graph):
        """Test that saturation only adds and reaches a fixpoint"""
        closure = saturate_rl(graph)
        self.assertTrue(graph.triples_set <= closure.triples_set)
        self.assertEqual(saturate_rl(closure).triples_set, closure.triples_set)


class TestConsistency(unittest.TestCase):
    """Test check_consistency"""

    def test_empty_graph(self):
        """Test that an empty graph is consistent"""
        result = check_consistency(Graph())
        self.assertTrue(result.consistent)
        self.assertEqual(result.evidence, ())

    def test_same_and_different(self):
        """Test eq-diff1"""
        result = check_consistency(graph_of("ex:a owl:sameAs ex:b . ex:a owl:differentFrom ex:b ."))
        self.assertFalse(result.consistent)
        self.assertEqual({e.rule_id for e in result.evidence}, {"eq-diff1"})

    def test_disjoint_classes(self):
        """Test cax-dw"""
        result = check_consistency(graph_of("ex:C owl:disjointWith ex:D . ex:x a ex:C , ex:D ."))
        self.assertFalse(result.consistent)
        self.assertEqual([e.rule_id for e in result.evidence], ["cax-dw"])
        self.assertIn(Triple(ex("x"), RDF.type, ex("C")), result.evidence[0].triples)

    def test_clash_through_inference(self):
        """Test that inferred memberships take part in clashes"""
        result = check_consistency(graph_of("""
            ex:A rdfs:subClassOf ex:B .
            ex:B owl:disjointWith ex:C .
            ex:x a ex:A , ex:C .
        """))
        self.assertFalse(result.consistent)
        evidence = [e for e in result.evidence if e.rule_id == "cax-dw"]
        self.assertTrue(any(Triple(ex("x"), RDF.type, ex("B")) in e.triples for e in evidence))

    def test_nothing_irreflexive_asymmetric(self):
        """Test cls-nothing2, prp-irp and prp-asyp"""
        cases = {
            "cls-nothing2": "ex:x a owl:Nothing .",
            "prp-irp": "ex:p a owl:IrreflexiveProperty . ex:x ex:p ex:x .",
            "prp-asyp": "ex:p a owl:AsymmetricProperty . ex:x ex:p ex:y . ex:y ex:p ex:x .",
        }
        for rule_id, text in cases.items():
            with self.subTest(rule_id):
                result = check_consistency(graph_of(text))
                self.assertIn(rule_id, {e.rule_id for e in result.evidence})

    def test_evidence_stable(self):
        """Test that evidence comes out in the same order every time"""
        graph = graph_of("""
            ex:C owl:disjointWith ex:D . ex:x a ex:C , ex:D . ex:y a ex:C , ex:D .
            ex:a owl:sameAs ex:b . ex:a owl:differentFrom ex:b .
        """)
        self.assertEqual(check_consistency(graph).evidence, check_consistency(graph).evidence)

    @settings(max_examples=50, deadline=None)
    @given(random_graphs(CLASH_PREDICATES), st.lists(st.booleans(), min_size=8, max_size=8))
    def test_subgraphs_of_consistent_graphs(self, graph, keep):
        """Test that removing triples never introduces a clash"""
        if not check_consistency(graph).consistent:
            return
        triples = graph.sorted_triples()
        subgraph = Graph(t for t, kept in zip(triples, keep) if kept)
        self.assertTrue(check_consistency(subgraph).consistent)

    def test_find_clashes_on_unsaturated_graph(self):
        """Test that find_clashes only looks at stated triples"""
        graph = graph_of("ex:A rdfs:subClassOf ex:B . ex:B owl:disjointWith ex:C . ex:x a ex:A , ex:C .")
        self.assertEqual(find_clashes(graph), [])


def run_tests():
    """Run all tests"""
    loader = unittest.TestLoader()
    suite = unittest.TestSuite()

    suite.addTests(loader.loadTestsFromTestCase(TestProfiles))
    suite.addTests(loader.loadTestsFromTestCase(TestSaturation))
    suite.addTests(loader.loadTestsFromTestCase(TestConsistency))

    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(suite)

    return result.wasSuccessful()


if __name__ == '__main__':
    import sys
    success = run_tests()
    sys.exit(0 if success else 1)
