"""
Difference-1 colouring pipeline tests
"""

import random
import unittest

from deepdiff import DeepDiff
from hypothesis import (
    given,
    settings
)
from mock import patch

from asbg.core import (
    Certificate,
    Colour,
    Colouring,
    ColouringPipeline,
    Decision,
    Graph,
    GraphUtils,
    Logger,
    Oracle,
    OracleBudget,
    StructureAnalyzer
)
from asbg.core.exceptions import (
    NotCactusException,
    NotColourableException,
    PreconditionException
)
from asbg.test.utilities import (
    all_trees,
    bowtie,
    c6,
    count_oracle_colourings,
    cycle_edges,
    double_star,
    heavy_junction,
    k33,
    overloaded_junctions,
    p2,
    pinwheel,
    random_coloured_cactus,
    stretched_bridge,
    theta,
    trees,
    triple_figure_eight,
    unconfigurable_shape
)


def is_difference1(g: Graph, colouring: Colouring) -> bool:
    """
    Checks a colouring against the definition
    """
    return ColouringPipeline.verify_difference_k(g, colouring, 1)


class VerifyTest(unittest.TestCase):
    """
    Test colouring verification
    """

    def test_verify(self):
        """
        Test verification of hand written colourings
        """
        g = p2()
        self.assertTrue(is_difference1(g, Colouring.uniform(g.edges,
                                                            Colour.Blue)))
        self.assertFalse(is_difference1(g, Colouring.uniform(g.edges,
                                                             Colour.Red)))
        self.assertFalse(is_difference1(g, Colouring({})))
        self.assertTrue(ColouringPipeline.verify_difference1(
            unconfigurable_shape()))
        self.assertTrue(ColouringPipeline.verify_difference_k(
            k33(), Colouring.uniform(k33().edges, Colour.Blue), 3))

    def test_extend(self):
        """
        Test colouring removed configurations back in
        """
        reduced, removed = StructureAnalyzer.reduce_with_history(
            double_star(2))
        colouring = ColouringPipeline.extend_colouring(
            Colouring.uniform(reduced.edges, Colour.Blue), removed)
        self.assertFalse(DeepDiff(colouring.to_json(), {
            'A--B': 'red',
            'A--a1': 'blue',
            'A--a2': 'blue',
            'B--b1': 'blue',
            'B--b2': 'blue'
        }))


class TreeTest(unittest.TestCase):
    """
    Test the tree decision
    """

    def test_trees(self):
        """
        Test colourable and irreducible trees
        """
        decision = ColouringPipeline.decide_tree(double_star(2))
        self.assertTrue(decision.colourable)
        self.assertTrue(is_difference1(double_star(2), decision.colouring))

        decision = ColouringPipeline.decide_tree(double_star(4))
        self.assertFalse(decision.colourable)
        self.assertEqual(decision.certificate, Certificate.IrreducibleTree)
        self.assertFalse(DeepDiff(decision.detail['reduced_form'],
                                  double_star(4).to_json()))

        path = Graph.from_edges(cycle_edges(['a', 'b', 'c', 'd'])[:3])
        decision = ColouringPipeline.decide_tree(path)
        self.assertEqual(decision.certificate, Certificate.IrreducibleTree)

        with self.assertRaises(PreconditionException):
            ColouringPipeline.decide_tree(c6())
        with self.assertRaises(PreconditionException):
            ColouringPipeline.decide_tree(
                Graph.from_edges([('a', 'b'), ('c', 'd')]))

    def test_all_small_trees(self):
        """
        Test every tree up to 12 vertices against the oracle: a tree has
        one colouring or none
        """
        for t in all_trees(12):
            decision = ColouringPipeline.decide_tree(t)
            count = count_oracle_colourings(t)
            self.assertIn(count, (0, 1))
            self.assertEqual(decision.colourable, count == 1)
            if decision.colourable:
                self.assertTrue(is_difference1(t, decision.colouring))

    @settings(deadline=None, max_examples=100)
    @given(trees(max_vertices=20))
    def test_random_trees(self, t: Graph):
        """
        Test that positive tree decisions carry valid colourings
        """
        decision = ColouringPipeline.decide_tree(t)
        if decision.colourable:
            self.assertTrue(is_difference1(t, decision.colouring))
        else:
            reduced = StructureAnalyzer.reduce(t)
            self.assertFalse(reduced.vertex_count() == 2
                             and reduced.edge_count() == 1)


class UnicyclicTest(unittest.TestCase):
    """
    Test the flow-free unicyclic decision
    """

    def test_pinwheel(self):
        """
        Test an all leaf-type cycle
        """
        decision = ColouringPipeline.decide_unicyclic(pinwheel())
        self.assertTrue(decision.colourable)
        self.assertTrue(is_difference1(pinwheel(), decision.colouring))

    def test_twig_and_triple(self):
        """
        Test a 4-cycle with a twig-type and a triple-type vertex
        """
        g = Graph.from_edges(
            [('x', 'p'), ('p', 'y'), ('y', 'q'), ('q', 'x'),
             ('p', 'lp'), ('q', 'lq'),
             ('x', 'tx'), ('tx', 'tx1'), ('tx', 'tx2'),
             ('y', 'y1'), ('y', 'y2'), ('y', 'y3')])
        decision = ColouringPipeline.decide_unicyclic(g)
        self.assertTrue(decision.colourable)
        self.assertEqual(decision.colouring[('x', 'p')], Colour.Blue)
        self.assertEqual(decision.colouring[('p', 'y')], Colour.Red)
        self.assertTrue(is_difference1(g, decision.colouring))
        self.assertEqual(count_oracle_colourings(g), 1)

    def test_limb_parity(self):
        """
        Test a balanced 8-cycle whose equal-type ends sit at even distance
        """
        cycle = ['x', 'p', 'z', 'q', 'y', 'r', 'w', 's']
        g = Graph.from_edges(
            cycle_edges(cycle)
            + [(v, 'l' + v) for v in ('p', 'q', 'r', 's')]
            + [('x', 'tx'), ('tx', 'tx1'), ('tx', 'tx2'),
               ('z', 'tz'), ('tz', 'tz1'), ('tz', 'tz2')]
            + [(v, '{}{}'.format(v, i)) for v in ('y', 'w')
               for i in range(1, 4)])
        self.assertTrue(GraphUtils.validate_candidate(g).all_hold())
        decision = ColouringPipeline.decide_unicyclic(g)
        self.assertEqual(decision.certificate,
                         Certificate.LimbParityViolation)
        self.assertEqual(decision.detail['limb'], ['w', 'r', 'y'])
        self.assertEqual(decision.detail['length'], 2)
        self.assertEqual(count_oracle_colourings(g), 0)

    def test_preconditions(self):
        """
        Test inputs that are not unicyclic
        """
        with self.assertRaises(PreconditionException):
            ColouringPipeline.decide_unicyclic(bowtie())
        with self.assertRaises(PreconditionException):
            ColouringPipeline.decide_unicyclic(double_star(2))

    def test_even_cycle(self):
        """
        Test a bare cycle
        """
        decision = ColouringPipeline.decide_unicyclic(c6())
        self.assertEqual(decision.certificate, Certificate.EvenDegreeVertex)
        self.assertFalse(DeepDiff(decision.detail,
                                  {'vertex': 'a', 'degree': 2}))


class WeightTest(unittest.TestCase):
    """
    Test weight assignment and redistribution
    """

    def test_theta(self):
        """
        Test weights on two junctions joined by three limbs
        """
        g = theta()
        report = StructureAnalyzer.analyze(g)
        result, wa = ColouringPipeline.assign_weights(g, report)
        self.assertTrue(result)
        self.assertEqual(wa.junction_sums, {'u': 1, 'v': 1})
        self.assertEqual(wa.weight[('a1', 'u')], 1)
        self.assertEqual(wa.weight[('b1', 'v')], 1)
        self.assertEqual(wa.weight[('a2', 'u')], 0)
        self.assertTrue(wa.is_total(g))
        self.assertEqual(len(wa.surplus_edges()), 6)
        for v in g.vertices:
            if v not in ('u', 'v'):
                self.assertEqual(wa.vertex_sum(g, v), 1)

        colouring = ColouringPipeline.redistribute(g, wa, report)
        self.assertTrue(is_difference1(g, colouring))

    def test_junction_sum(self):
        """
        Test a junction whose forced edges overshoot
        """
        g = heavy_junction()
        report = StructureAnalyzer.analyze(g)
        result, wa = ColouringPipeline.assign_weights(g, report)
        self.assertFalse(result)
        self.assertEqual(wa.junction_sums, {'j': 5})
        self.assertEqual(wa.to_json()['junction_sums'], {'j': 5})

        decision = ColouringPipeline.decide_difference1(g)
        self.assertEqual(decision.certificate, Certificate.Unbalanced)
        self.assertFalse(DeepDiff(decision.detail, {
            'component': 'j',
            'part1': 7,
            'part2': 11
        }))

    def test_junction_sum_decision(self):
        """
        Test a balanced candidate rejected by its junction sums
        """
        g = overloaded_junctions()
        self.assertTrue(GraphUtils.validate_candidate(g).all_hold())

        decision = ColouringPipeline.decide_difference1(g)
        self.assertEqual(decision.certificate,
                         Certificate.JunctionSumViolation)
        self.assertEqual(decision.detail['junction_sums'],
                         {'j1': 3, 'j2': 3})

        budget = OracleBudget(max_edges=27, max_vertices=32,
                              time_limit=600, cycle_relation_max_edges=14,
                              configuration_max_part=8)
        self.assertEqual(Oracle.oracle_difference_k(g, 1, budget), [])

    def test_bridge_failure(self):
        """
        Test a bridge carrying a weight of 3
        """
        g = stretched_bridge()
        report = StructureAnalyzer.analyze(g)
        result, wa = ColouringPipeline.assign_weights(g, report)
        self.assertTrue(result)
        self.assertEqual(wa.weight[('j1', 'm')], -3)
        self.assertEqual(wa.weight[('j2', 'm')], 3)
        self.assertFalse(ColouringPipeline.redistribute_cactus_check(g, wa))

        with patch.object(Logger, 'instance') as instance:
            self.assertIsNone(ColouringPipeline.redistribute(g, wa, report))
            logged = instance.return_value.log_message_json.call_args[0][0]
        self.assertEqual(logged['type'], Logger.REDISTRIBUTION)
        self.assertEqual(logged['edge'], 'j1--m')

        decision = ColouringPipeline.decide_difference1(g)
        self.assertEqual(decision.certificate,
                         Certificate.RedistributionFailure)
        self.assertIn('j1--m', decision.detail['surplus_edges'])

    def test_preconditions(self):
        """
        Test weight assignment outside its preconditions
        """
        report = StructureAnalyzer.analyze(bowtie())
        with self.assertRaises(PreconditionException):
            ColouringPipeline.assign_weights(pinwheel(), report)
        with self.assertRaises(PreconditionException):
            ColouringPipeline.assign_weights(
                c6(), StructureAnalyzer.analyze(c6()))

    def test_shuffled_order(self):
        """
        Test that the junction visiting order does not change the result
        """
        for g in (theta(), bowtie(), k33(), triple_figure_eight(),
                  heavy_junction(), stretched_bridge()):
            report = StructureAnalyzer.analyze(g)
            expected, _ = ColouringPipeline.assign_weights(g, report)
            for seed in range(20):
                result, _ = ColouringPipeline.assign_weights(
                    g, report, random.Random(seed))
                self.assertEqual(result, expected)

    def test_cactus_check(self):
        """
        Test the flow-free check on cacti
        """
        g = bowtie()
        report = StructureAnalyzer.analyze(g)
        _, wa = ColouringPipeline.assign_weights(g, report)
        self.assertTrue(ColouringPipeline.redistribute_cactus_check(g, wa))
        self.assertIsNotNone(ColouringPipeline.redistribute(g, wa, report))

        with self.assertRaises(NotCactusException):
            ColouringPipeline.redistribute_cactus_check(theta(), wa)


class DecisionTest(unittest.TestCase):
    """
    Test the full difference-1 decision
    """

    def test_curated(self):
        """
        Test decisions on small graphs with known answers
        """
        colourable = [p2(), double_star(2), pinwheel(), bowtie(), theta(),
                      k33(), triple_figure_eight(),
                      unconfigurable_shape().graph]
        for g in colourable:
            decision = ColouringPipeline.decide_difference1(g)
            self.assertTrue(decision.colourable, g)
            self.assertTrue(is_difference1(g, decision.colouring))

        self.assertEqual(
            ColouringPipeline.decide_difference1(c6()).certificate,
            Certificate.EvenDegreeVertex)
        self.assertEqual(
            ColouringPipeline.decide_difference1(double_star(4)).certificate,
            Certificate.IrreducibleTree)

        star = Graph.from_edges([('c', 'x'), ('c', 'y'), ('c', 'z')])
        self.assertEqual(
            ColouringPipeline.decide_difference1(star).certificate,
            Certificate.Unbalanced)

        triangle = Graph.from_edges([('a', 'b'), ('b', 'c'), ('a', 'c')])
        decision = ColouringPipeline.decide_difference1(triangle)
        self.assertEqual(decision.certificate, Certificate.NotBipartite)
        self.assertEqual(decision.detail['odd_cycle'], ['b', 'a', 'c'])

    def test_disconnected(self):
        """
        Test that components are decided on their own
        """
        g = Graph.from_edges(list(pinwheel().edges) + [('y1', 'y2')])
        decision = ColouringPipeline.decide_difference1(g)
        self.assertTrue(decision.colourable)
        self.assertTrue(is_difference1(g, decision.colouring))

        g = Graph.from_edges(list(double_star(4).edges) + [('y1', 'y2')])
        decision = ColouringPipeline.decide_difference1(g)
        self.assertEqual(decision.certificate, Certificate.IrreducibleTree)
        self.assertEqual(decision.detail['component'], 'A')

    def test_empty(self):
        """
        Test the graph with no vertices
        """
        decision = ColouringPipeline.decide_difference1(Graph((), ()))
        self.assertTrue(decision.colourable)
        self.assertEqual(len(decision.colouring), 0)

    def test_vertices_named_like_terminals(self):
        """
        Test vertex ids equal to the flow network's source and sink
        """
        names = {'a': '__source__', 'b': '__sink__'}
        g = Graph.from_edges(
            (names.get(u, u), names.get(v, v)) for u, v in pinwheel().edges)
        decision = ColouringPipeline.decide_difference1(g)
        self.assertTrue(decision.colourable)
        self.assertTrue(is_difference1(g, decision.colouring))

    def test_logs_certificate(self):
        """
        Test that negative decisions are logged
        """
        with patch.object(Logger, 'instance') as instance:
            ColouringPipeline.decide_difference1(c6())
            instance.return_value.log_message_json.assert_called_once_with({
                'type': Logger.DECISION,
                'certificate': 'EvenDegreeVertex',
                'detail': {'vertex': 'a', 'degree': 2}
            })

    def test_construct(self):
        """
        Test colouring construction
        """
        colouring = ColouringPipeline.construct_colouring(bowtie())
        self.assertTrue(is_difference1(bowtie(), colouring))
        with self.assertRaises(NotColourableException):
            ColouringPipeline.construct_colouring(c6())

    def test_json(self):
        """
        Test decision documents
        """
        decision = ColouringPipeline.decide_difference1(p2())
        self.assertFalse(DeepDiff(decision.to_json(), {
            'colourable': True,
            'colouring': {'a--b': 'blue'},
            'certificate': None,
            'detail': {}
        }))
        self.assertEqual(Decision.from_json(decision.to_json()), decision)

        decision = ColouringPipeline.decide_difference1(c6())
        document = decision.to_json()
        self.assertEqual(document['certificate'], 'EvenDegreeVertex')
        self.assertEqual(Decision.from_json(document), decision)

    def test_random_cacti(self):
        """
        Test that coloured cacti are recognised as colourable
        """
        rng = random.Random(11)
        for _ in range(25):
            cg = random_coloured_cactus(rng)
            decision = ColouringPipeline.decide_difference1(cg.graph)
            self.assertTrue(decision.colourable)
            self.assertTrue(is_difference1(cg.graph, decision.colouring))


class DifferenceKDecisionTest(unittest.TestCase):
    """
    Test difference-k decisions with certificates
    """

    def test_decisions(self):
        """
        Test certificates for other differences
        """
        g = k33()
        self.assertTrue(
            ColouringPipeline.decide_difference_k_decision(g, 3).colourable)
        self.assertTrue(
            ColouringPipeline.decide_difference_k_decision(g, 1).colourable)
        decision = ColouringPipeline.decide_difference_k_decision(g, 2)
        self.assertEqual(decision.certificate,
                         Certificate.DegreeParityViolation)

        decision = ColouringPipeline.decide_difference_k_decision(c6(), 0)
        self.assertTrue(decision.colourable)
        self.assertTrue(ColouringPipeline.verify_difference_k(
            c6(), decision.colouring, 0))

        # K2,4 plus a leaf on each big-side vertex
        g = Graph.from_edges(
            [(u, 'b{}'.format(i)) for u in ('a1', 'a2') for i in range(4)]
            + [('b{}'.format(i), 'l{}'.format(i)) for i in range(4)])
        decision = ColouringPipeline.decide_difference_k_decision(g, 2)
        self.assertEqual(decision.certificate,
                         Certificate.DegreeParityViolation)

        with self.assertRaises(PreconditionException):
            ColouringPipeline.decide_difference_k_decision(g, -1)

    def test_multimatching_violation(self):
        """
        Test a graph meeting the degree conditions with no red subgraph
        """
        g = Graph.from_edges(
            (u, 'b{}'.format(i)) for u in ('a1', 'a2') for i in range(4))
        decision = ColouringPipeline.decide_difference_k_decision(g, 2)
        self.assertEqual(decision.certificate,
                         Certificate.MultimatchingViolation)
        self.assertEqual(decision.detail, {'k': 2})
        self.assertEqual(count_oracle_colourings(g, 2), 0)



if __name__ == '__main__':
    unittest.main()
