"""
Integer max-flow and degree-constrained subgraphs of bipartite graphs
"""

from collections import deque
from dataclasses import (
    dataclass,
    field
)
from typing import (
    Dict,
    Iterable,
    List,
    Mapping,
    Optional,
    Tuple
)

import networkx as nx

from .constants import (
    FLOW_SINK,
    FLOW_SOURCE
)
from .enums import Colour
from .exceptions import (
    BudgetExceededException,
    DemandException,
    PreconditionException
)
from .graph import (
    Bipartition,
    Colouring,
    Graph,
    GraphUtils,
    edge_key
)
from .logger import Logger
from .meta import PACKAGE_METADATA_PARSER

Arc = Tuple[str, str]
DegreeDemand = Mapping[str, int]


@dataclass
class FlowNetwork:
    """
    A directed network with integer arc capacities and a distinguished
    source and sink
    """

    source: str = FLOW_SOURCE
    sink: str = FLOW_SINK
    capacities: Dict[Arc, int] = field(default_factory=dict)

    @staticmethod
    def create(arcs: Iterable[Tuple[str, str, int]],
               source: str = FLOW_SOURCE,
               sink: str = FLOW_SINK) -> 'FlowNetwork':
        """
        Creates a network from (tail, head, capacity) triples
        :raises PreconditionException
        """
        net = FlowNetwork(source, sink)
        for u, v, capacity in arcs:
            net.add_arc(u, v, capacity)
        return net

    def add_arc(self, u: str, v: str, capacity: int):
        """
        Adds an arc, rejecting loops, duplicates, non-positive
        capacities, arcs into the source and arcs out of the sink
        :raises PreconditionException
        """
        if u == v:
            raise PreconditionException('Loop arc at "{}"'.format(u))
        if capacity < 1:
            raise PreconditionException(
                'Arc {}->{} has capacity {}'.format(u, v, capacity))
        if v == self.source or u == self.sink:
            raise PreconditionException(
                'Arc {}->{} enters the source or leaves the sink'.format(
                    u, v))
        if (u, v) in self.capacities:
            raise PreconditionException(
                'Duplicate arc {}->{}'.format(u, v))
        self.capacities[(u, v)] = capacity

    def nodes(self) -> List[str]:
        """
        Returns every node, including source and sink, sorted
        """
        res = {self.source, self.sink}
        for u, v in self.capacities:
            res.add(u)
            res.add(v)
        return sorted(res)

    def arcs(self) -> List[Arc]:
        """
        Returns the arcs in canonical order
        """
        return sorted(self.capacities)


@dataclass
class FlowResult:
    """
    A maximum flow: its value and the flow on each arc
    """

    value: int
    flow: Dict[Arc, int]

    def saturated_arcs(self) -> List[Arc]:
        """
        Returns the arcs carrying positive flow
        """
        return sorted(a for a, f in self.flow.items() if f > 0)


class FlowSolver:
    """
    Flow based solvers
    """

    @staticmethod
    def max_flow(net: FlowNetwork) -> FlowResult:
        """
        Computes an integral maximum flow by repeatedly augmenting along
        a shortest residual path. Neighbours are scanned in sorted order,
        so the result is deterministic (but not canonical).
        """
        residual: Dict[str, Dict[str, int]] = {n: {} for n in net.nodes()}
        for (u, v), capacity in net.capacities.items():
            residual[u][v] = residual[u].get(v, 0) + capacity
            residual[v].setdefault(u, 0)
        adjacency = {n: sorted(residual[n]) for n in residual}

        value = 0
        while True:
            parent = {net.source: None}
            queue = deque([net.source])
            while queue and net.sink not in parent:
                u = queue.popleft()
                for v in adjacency[u]:
                    if v not in parent and residual[u][v] > 0:
                        parent[v] = u
                        queue.append(v)
            if net.sink not in parent:
                break

            path = []
            v = net.sink
            while parent[v] is not None:
                path.append((parent[v], v))
                v = parent[v]
            bottleneck = min(residual[u][v] for u, v in path)
            for u, v in path:
                residual[u][v] -= bottleneck
                residual[v][u] += bottleneck
            value += bottleneck

        # residual[u][v] = c(u,v) - f(u,v) + f(v,u); an antiparallel pair
        # carries its net flow on a single arc
        flow = {
            (u, v): max(0, capacity - residual[u][v])
            for (u, v), capacity in net.capacities.items()
        }
        return FlowResult(value, flow)

    @staticmethod
    def validate_demand(g: Graph, demand: DegreeDemand):
        """
        Checks that demand gives every vertex an integer in [0, deg]
        :raises DemandException
        """
        missing = [v for v in g.vertices if v not in demand]
        if missing:
            raise DemandException(
                'No demand for {}'.format(', '.join(missing)))
        for v in g.vertices:
            r = demand[v]
            if isinstance(r, bool) or not isinstance(r, int):
                raise DemandException(
                    'Demand of "{}" is not an integer: {!r}'.format(v, r))
            if r < 0 or r > g.degree(v):
                raise DemandException(
                    'Demand {} of "{}" is outside 0..{}'.format(
                        r, v, g.degree(v)))

    @staticmethod
    def _terminal_names(g: Graph) -> Tuple[str, str]:
        """
        Returns source and sink names that are not vertices of g
        """
        names = []
        for name in (FLOW_SOURCE, FLOW_SINK):
            while g.has_vertex(name):
                name += '_'
            names.append(name)
        return names[0], names[1]

    @staticmethod
    def build_network(g: Graph, bp: Bipartition,
                      demand: DegreeDemand) -> FlowNetwork:
        """
        Builds the flow network of a degree demand: source to each part1
        vertex u with capacity r(u), unit arcs along the edges from part1
        to part2, and part2 vertex v to sink with capacity r(v). Arcs of
        capacity 0 are left out. Source and sink are renamed away from
        any vertex of g.
        :raises DemandException
        """
        FlowSolver.validate_demand(g, demand)
        source, sink = FlowSolver._terminal_names(g)

        net = FlowNetwork(source, sink)
        for u in sorted(bp.part1):
            if demand[u] > 0:
                net.add_arc(source, u, demand[u])
        for u, v in g.edges:
            if u in bp.part2:
                u, v = v, u
            net.add_arc(u, v, 1)
        for v in sorted(bp.part2):
            if demand[v] > 0:
                net.add_arc(v, sink, demand[v])
        return net

    @staticmethod
    def _oriented(bp: Bipartition, demand: DegreeDemand) -> Bipartition:
        """
        Swaps the parts when part1 asks for more than part2
        """
        if (sum(demand[v] for v in bp.part1)
                > sum(demand[v] for v in bp.part2)):
            return bp.swapped()
        return bp

    @staticmethod
    def degree_constrained_subgraph(g: Graph, bp: Bipartition,
                                    demand: DegreeDemand,
                                    exact: bool = False) -> Optional[Graph]:
        """
        Finds a spanning subgraph H with deg_H = r on the part with the
        smaller total demand and deg_H <= r on the other part. In exact
        mode deg_H = r everywhere, which needs equal totals. Returns None
        when no such subgraph exists.
        :raises DemandException
        """
        FlowSolver.validate_demand(g, demand)
        total1 = sum(demand[v] for v in bp.part1)
        total2 = sum(demand[v] for v in bp.part2)
        if exact and total1 != total2:
            return None

        bp = FlowSolver._oriented(bp, demand)
        required = min(total1, total2)
        net = FlowSolver.build_network(g, bp, demand)
        result = FlowSolver.max_flow(net)
        if result.value < required:
            return None

        return g.spanning_subgraph(
            edge_key(u, v) for (u, v) in result.saturated_arcs()
            if u != net.source and v != net.sink
        )

    @staticmethod
    def _subset_condition(g: Graph, part: List[str],
                          demand: DegreeDemand) -> bool:
        """
        Evaluates sum r(S) <= sum over n in N(S) of min(r(n), |N(n) & S|)
        for every subset S of part
        """
        part = sorted(part)
        for mask in range(1, 1 << len(part)):
            subset = {part[i] for i in range(len(part)) if mask >> i & 1}
            lhs = sum(demand[v] for v in subset)
            touched: Dict[str, int] = {}
            for v in subset:
                for n in g.neighbours(v):
                    touched[n] = touched.get(n, 0) + 1
            rhs = sum(min(demand.get(n, 0), count)
                      for n, count in touched.items())
            if lhs > rhs:
                return False
        return True

    @staticmethod
    def _check_part_budget(size: int, max_part: Optional[int]):
        limit = (max_part if max_part is not None
                 else PACKAGE_METADATA_PARSER.get_int_property(
                     'multimatching_max_part'))
        if size > limit:
            Logger.instance().log_error_json({
                'type': Logger.ORACLE_BUDGET,
                'limit': 'multimatching_max_part',
                'value': size
            })
            raise BudgetExceededException(
                'Subset scan is limited to parts of {} vertices'.format(
                    limit),
                'multimatching_max_part')

    @staticmethod
    def multimatching_condition(g: Graph, bp: Bipartition,
                                demand: DegreeDemand,
                                max_part: Optional[int] = None) -> bool:
        """
        Evaluates the subset inequality characterising degree-constrained
        subgraphs over every subset of the part with the smaller total
        demand
        :raises BudgetExceededException
        :raises DemandException
        """
        FlowSolver.validate_demand(g, demand)
        bp = FlowSolver._oriented(bp, demand)
        FlowSolver._check_part_budget(len(bp.part1), max_part)
        return FlowSolver._subset_condition(g, list(bp.part1), demand)

    @staticmethod
    def hall_check(g: Graph, bp: Bipartition,
                   max_part: Optional[int] = None) -> bool:
        """
        Returns True if every S within part1 has at least |S| neighbours,
        i.e. a matching saturating part1 exists
        :raises BudgetExceededException
        """
        FlowSolver._check_part_budget(len(bp.part1), max_part)
        demand = {v: 1 for v in g.vertices}
        return FlowSolver._subset_condition(g, list(bp.part1), demand)

    @staticmethod
    def difference_k_demand(g: Graph, k: int) -> Optional[Dict[str, int]]:
        """
        Returns r(v) = (deg(v) - k) / 2, or None when some vertex has
        degree below k or of the wrong parity
        :raises PreconditionException
        """
        if k < 0:
            raise PreconditionException(
                'Difference must be non-negative, got {}'.format(k))
        demand = {}
        for v in g.vertices:
            surplus = g.degree(v) - k
            if surplus < 0 or surplus % 2:
                return None
            demand[v] = surplus // 2
        return demand

    @staticmethod
    def decide_difference_k(g: Graph, k: int) -> Optional[Colouring]:
        """
        Returns a colouring with deg_blue(v) - deg_red(v) = k at every
        vertex, or None. The red edges form a subgraph with
        deg = (deg(v) - k) / 2 at every vertex.
        :raises OddCycleException
        :raises PreconditionException
        """
        bp = GraphUtils.bipartition(g)
        demand = FlowSolver.difference_k_demand(g, k)
        if demand is None:
            return None

        red = FlowSolver.degree_constrained_subgraph(g, bp, demand, exact=True)
        if red is None:
            return None
        red_edges = set(red.edges)
        return Colouring({
            e: Colour.Red if e in red_edges else Colour.Blue for e in g.edges
        })

    @staticmethod
    def difference_k_condition(g: Graph, k: int,
                               max_part: Optional[int] = None) -> bool:
        """
        Evaluates the characterisation of difference-k colourability
        directly: degrees at least k with the parity of k, equal demand
        totals on both parts and the subset inequality
        :raises BudgetExceededException
        :raises OddCycleException
        """
        bp = GraphUtils.bipartition(g)
        demand = FlowSolver.difference_k_demand(g, k)
        if demand is None:
            return False
        if (sum(demand[v] for v in bp.part1)
                != sum(demand[v] for v in bp.part2)):
            return False
        return FlowSolver.multimatching_condition(g, bp, demand, max_part)

    @staticmethod
    def eulerian_cycle_decomposition(g: Graph) -> List[List[str]]:
        """
        Splits a graph whose degrees are all even into edge-disjoint
        cycles, given as vertex sequences without the closing repeat
        :raises PreconditionException
        """
        odd = [v for v in g.vertices if g.degree(v) % 2]
        if odd:
            raise PreconditionException(
                'Odd degree vertices: {}'.format(', '.join(odd)))

        nxg = g.to_networkx()
        cycles = []
        for component in GraphUtils.component_vertex_sets(g):
            start = min(component)
            sub = nxg.subgraph(component)
            if sub.number_of_edges() == 0:
                continue

            stack = [start]
            position = {start: 0}
            for _, v in nx.eulerian_circuit(sub, source=start):
                if v in position:
                    i = position[v]
                    cycles.append(stack[i:])
                    for w in stack[i + 1:]:
                        del position[w]
                    del stack[i + 1:]
                else:
                    position[v] = len(stack)
                    stack.append(v)
        return cycles

    @staticmethod
    def decide_difference_0(g: Graph) -> Optional[Colouring]:
        """
        Returns a colouring with equal blue and red degree everywhere, by
        colouring each cycle of an Eulerian decomposition alternately, or
        None when some degree is odd
        :raises OddCycleException
        """
        GraphUtils.bipartition(g)
        if any(g.degree(v) % 2 for v in g.vertices):
            return None

        colours = {}
        for cycle in FlowSolver.eulerian_cycle_decomposition(g):
            closed = cycle + [cycle[0]]
            for i, (u, v) in enumerate(zip(closed, closed[1:])):
                colours[edge_key(u, v)] = (
                    Colour.Blue if i % 2 == 0 else Colour.Red)
        return Colouring(colours)
