"""
Flow and degree-constrained subgraph tests
"""

import random
import unittest

import networkx as nx
from hypothesis import (
    given,
    settings,
    strategies as st
)

from asbg.core import (
    Bipartition,
    Colour,
    FlowNetwork,
    FlowSolver,
    Graph,
    GraphUtils
)
from asbg.core.exceptions import (
    BudgetExceededException,
    DemandException,
    PreconditionException
)
from asbg.test.utilities import (
    c6,
    count_oracle_colourings,
    k33,
    random_bipartite,
    random_demand,
    random_flow_network
)


def networkx_flow_value(net: FlowNetwork) -> int:
    """
    Computes the max flow value of a network with networkx
    """
    digraph = nx.DiGraph()
    digraph.add_nodes_from(net.nodes())
    for (u, v), capacity in net.capacities.items():
        digraph.add_edge(u, v, capacity=capacity)
    return nx.maximum_flow_value(digraph, net.source, net.sink)


class FlowNetworkTest(unittest.TestCase):
    """
    Test network construction
    """

    def test_add_arc(self):
        """
        Test arcs accepted and rejected by a network
        """
        net = FlowNetwork.create([('s', 'a', 2), ('a', 't', 1)], 's', 't')
        self.assertEqual(net.nodes(), ['a', 's', 't'])
        self.assertEqual(net.arcs(), [('a', 't'), ('s', 'a')])

        with self.assertRaises(PreconditionException):
            net.add_arc('a', 'a', 1)
        with self.assertRaises(PreconditionException):
            net.add_arc('a', 'b', 0)
        with self.assertRaises(PreconditionException):
            net.add_arc('a', 's', 1)
        with self.assertRaises(PreconditionException):
            net.add_arc('t', 'a', 1)
        with self.assertRaises(PreconditionException):
            net.add_arc('s', 'a', 3)


class MaxFlowTest(unittest.TestCase):
    """
    Test the augmenting path max flow
    """

    def test_small(self):
        """
        Test a network with a bottleneck
        """
        net = FlowNetwork.create([
            ('s', 'a', 3), ('s', 'b', 2), ('a', 'b', 1),
            ('a', 't', 2), ('b', 't', 3)
        ], 's', 't')
        result = FlowSolver.max_flow(net)
        self.assertEqual(result.value, 5)
        self.assertEqual(result.flow[('s', 'a')], 3)
        self.assertEqual(result.flow[('a', 'b')], 1)
        self.assertIn(('b', 't'), result.saturated_arcs())

    def test_no_path(self):
        """
        Test a network with no source to sink path
        """
        net = FlowNetwork.create([('s', 'a', 3), ('b', 't', 3)], 's', 't')
        result = FlowSolver.max_flow(net)
        self.assertEqual(result.value, 0)
        self.assertEqual(result.saturated_arcs(), [])

    def test_against_networkx(self):
        """
        Test values and conservation on seeded random networks
        """
        rng = random.Random(1)
        for _ in range(60):
            net = random_flow_network(rng, rng.randint(1, 7),
                                      rng.randint(1, 25))
            result = FlowSolver.max_flow(net)
            self.assertEqual(result.value, networkx_flow_value(net))

            for arc, f in result.flow.items():
                self.assertTrue(0 <= f <= net.capacities[arc])
            for node in net.nodes():
                if node in (net.source, net.sink):
                    continue
                inflow = sum(f for (u, v), f in result.flow.items()
                             if v == node)
                outflow = sum(f for (u, v), f in result.flow.items()
                              if u == node)
                self.assertEqual(inflow, outflow)


class DegreeConstrainedTest(unittest.TestCase):
    """
    Test degree-constrained subgraphs and the subset condition
    """

    def test_validate_demand(self):
        """
        Test demand validation
        """
        g = Graph.from_edges([('a', 'b')])
        FlowSolver.validate_demand(g, {'a': 1, 'b': 0})
        with self.assertRaises(DemandException):
            FlowSolver.validate_demand(g, {'a': 1})
        with self.assertRaises(DemandException):
            FlowSolver.validate_demand(g, {'a': 2, 'b': 0})
        with self.assertRaises(DemandException):
            FlowSolver.validate_demand(g, {'a': -1, 'b': 0})
        with self.assertRaises(DemandException):
            FlowSolver.validate_demand(g, {'a': 1.0, 'b': 0})

    def test_vertices_named_like_terminals(self):
        """
        Test that vertex ids never collide with the source and sink
        """
        g = Graph.from_edges([('__source__', '__sink__'),
                              ('__sink__', '__source___')])
        bp = GraphUtils.bipartition(g)
        demand = {'__source__': 1, '__sink__': 1, '__source___': 0}
        net = FlowSolver.build_network(g, bp, demand)
        self.assertNotIn(net.source, g.vertices)
        self.assertNotIn(net.sink, g.vertices)
        self.assertNotEqual(net.source, net.sink)

        h = FlowSolver.degree_constrained_subgraph(g, bp, demand, exact=True)
        self.assertEqual(list(h.edges), [('__sink__', '__source__')])

    def test_perfect_matching(self):
        """
        Test a unit demand on a 6-cycle
        """
        g = c6()
        bp = GraphUtils.bipartition(g)
        h = FlowSolver.degree_constrained_subgraph(
            g, bp, {v: 1 for v in g.vertices}, exact=True)
        self.assertEqual(h.vertex_count(), 6)
        self.assertEqual(h.edge_count(), 3)
        for v in h.vertices:
            self.assertEqual(h.degree(v), 1)

    def test_exact_needs_equal_totals(self):
        """
        Test exact mode with unequal part totals
        """
        g = k33()
        bp = GraphUtils.bipartition(g)
        demand = {v: 1 for v in g.vertices}
        demand['a1'] = 2
        self.assertIsNone(FlowSolver.degree_constrained_subgraph(
            g, bp, demand, exact=True))

        h = FlowSolver.degree_constrained_subgraph(g, bp, demand)
        for v in sorted(bp.part2):
            self.assertEqual(h.degree(v), 1)
        for v in sorted(bp.part1):
            self.assertLessEqual(h.degree(v), demand[v])

    def test_dcs_against_condition(self):
        """
        Test that flow and the subset condition agree
        """
        rng = random.Random(2)
        for _ in range(150):
            g, bp = random_bipartite(rng, rng.randint(1, 5),
                                     rng.randint(1, 5), rng.random())
            demand = random_demand(rng, g)
            h = FlowSolver.degree_constrained_subgraph(g, bp, demand)
            self.assertEqual(
                h is not None,
                FlowSolver.multimatching_condition(g, bp, demand))
            if h is None:
                continue

            self.assertEqual(h.vertices, g.vertices)
            for u, v in h.edges:
                self.assertTrue(g.has_edge(u, v))
            for v in h.vertices:
                self.assertLessEqual(h.degree(v), demand[v])
            low = min((bp.part1, bp.part2),
                      key=lambda part: sum(demand[v] for v in part))
            for v in low:
                self.assertEqual(h.degree(v), demand[v])

    def test_hall_against_networkx(self):
        """
        Test Hall's condition against networkx maximum matchings
        """
        rng = random.Random(3)
        for _ in range(100):
            g, bp = random_bipartite(rng, rng.randint(1, 6),
                                     rng.randint(1, 6), rng.random())
            matching = nx.bipartite.maximum_matching(
                g.to_networkx(), top_nodes=sorted(bp.part1))
            self.assertEqual(FlowSolver.hall_check(g, bp),
                             len(matching) // 2 == len(bp.part1))

    def test_subset_budget(self):
        """
        Test that large subset scans are refused
        """
        g, bp = random_bipartite(random.Random(4), 5, 5, 0.5)
        with self.assertRaises(BudgetExceededException) as e:
            FlowSolver.hall_check(g, bp, max_part=4)
        self.assertEqual(e.exception.limit, 'multimatching_max_part')


class DifferenceKTest(unittest.TestCase):
    """
    Test difference-k decisions
    """

    def test_demand(self):
        """
        Test the red degree demand of a difference
        """
        self.assertEqual(FlowSolver.difference_k_demand(k33(), 1),
                         {v: 1 for v in k33().vertices})
        self.assertIsNone(FlowSolver.difference_k_demand(k33(), 2))
        self.assertIsNone(FlowSolver.difference_k_demand(k33(), 5))
        with self.assertRaises(PreconditionException):
            FlowSolver.difference_k_demand(k33(), -1)

    def test_difference_3(self):
        """
        Test that an all blue colouring is the only difference-3
        colouring of K3,3
        """
        colouring = FlowSolver.decide_difference_k(k33(), 3)
        self.assertEqual(colouring.edges_of_colour(Colour.Blue),
                         list(k33().edges))
        self.assertTrue(FlowSolver.difference_k_condition(k33(), 3))

    def test_against_oracle(self):
        """
        Test flow decisions, the subset condition and the exhaustive
        oracle on seeded random bipartite graphs
        """
        rng = random.Random(5)
        for _ in range(80):
            g, bp = random_bipartite(rng, rng.randint(1, 4),
                                     rng.randint(1, 4), 0.7)
            if g.edge_count() > 14:
                continue
            for k in range(0, 4):
                colouring = FlowSolver.decide_difference_k(g, k)
                expected = count_oracle_colourings(g, k) > 0
                self.assertEqual(colouring is not None, expected)
                self.assertEqual(
                    FlowSolver.difference_k_condition(g, k), expected)

    def test_cycle_decomposition(self):
        """
        Test edge-disjoint cycles of an even graph
        """
        g = Graph.from_edges(
            [('a', 'b'), ('b', 'c'), ('c', 'd'), ('d', 'a'),
             ('a', 'x'), ('x', 'y'), ('y', 'z'), ('z', 'a')])
        cycles = FlowSolver.eulerian_cycle_decomposition(g)
        self.assertEqual(len(cycles), 2)
        covered = []
        for cycle in cycles:
            closed = cycle + [cycle[0]]
            covered.extend(tuple(sorted(e)) for e in zip(closed, closed[1:]))
        self.assertEqual(sorted(covered), list(g.edges))

        with self.assertRaises(PreconditionException):
            FlowSolver.eulerian_cycle_decomposition(k33())

    @settings(deadline=None, max_examples=60)
    @given(st.integers(min_value=0, max_value=2 ** 16), st.data())
    def test_difference_0(self, seed: int, data):
        """
        Test that even bipartite graphs split into balanced colourings
        """
        rng = random.Random(seed)
        g, _ = random_bipartite(rng, data.draw(st.integers(1, 5)),
                                data.draw(st.integers(1, 5)), 0.6)
        colouring = FlowSolver.decide_difference_0(g)
        even = all(g.degree(v) % 2 == 0 for v in g.vertices)
        self.assertEqual(colouring is not None, even)
        if colouring is None:
            return
        for v in g.vertices:
            self.assertEqual(
                sum(colouring[e].sign() for e in g.incident_edges(v)), 0)

    def test_bipartition_argument(self):
        """
        Test swapping the parts of a bipartition
        """
        g = Graph.from_edges([('a', 'x'), ('a', 'y')])
        bp = Bipartition(frozenset({'a'}), frozenset({'x', 'y'}))
        demand = {'a': 2, 'x': 1, 'y': 1}
        h = FlowSolver.degree_constrained_subgraph(g, bp.swapped(), demand,
                                                   exact=True)
        self.assertEqual(h.edges, (('a', 'x'), ('a', 'y')))


if __name__ == '__main__':
    unittest.main()
