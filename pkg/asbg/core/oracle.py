"""
Brute force reference implementations.

Nothing here calls into the pipeline modules: each oracle works from
the definitions alone, with budgets guarding the exponential scans.
"""

import time
from dataclasses import dataclass
from itertools import permutations
from typing import (
    Dict,
    List,
    Optional,
    Set
)

from .enums import Colour
from .exceptions import BudgetExceededException
from .graph import (
    Colouring,
    ColouredGraph,
    Edge,
    Graph,
    edge_key
)
from .logger import Logger
from .meta import (
    PACKAGE_METADATA_PARSER,
    PackageMetadataParser
)


@dataclass
class OracleBudget:
    """
    Size and time limits for exhaustive scans
    """

    max_edges: int
    max_vertices: int
    time_limit: float
    cycle_relation_max_edges: int
    configuration_max_part: int

    @staticmethod
    def from_metadata(
            parser: PackageMetadataParser = PACKAGE_METADATA_PARSER
    ) -> 'OracleBudget':
        """
        Reads the budget from the package metadata
        """
        return OracleBudget(
            max_edges=parser.get_int_property('oracle_max_edges'),
            max_vertices=parser.get_int_property('oracle_max_vertices'),
            time_limit=parser.get_int_property('oracle_time_limit'),
            cycle_relation_max_edges=parser.get_int_property(
                'cycle_relation_max_edges'),
            configuration_max_part=parser.get_int_property(
                'configuration_max_part')
        )

    def refuse(self, limit: str, value: float, maximum: float):
        """
        Logs and raises a budget error
        :raises BudgetExceededException
        """
        Logger.instance().log_error_json({
            'type': Logger.ORACLE_BUDGET,
            'limit': limit,
            'value': value,
            'maximum': maximum
        })
        raise BudgetExceededException(
            'Oracle budget exceeded: {} is {}, limit {}'.format(
                limit, value, maximum),
            limit)

    def check_size(self, g: Graph, max_edges: Optional[int] = None):
        """
        Refuses graphs above the edge or vertex limits
        :raises BudgetExceededException
        """
        max_edges = self.max_edges if max_edges is None else max_edges
        if g.edge_count() > max_edges:
            self.refuse('max_edges', g.edge_count(), max_edges)
        if g.vertex_count() > self.max_vertices:
            self.refuse('max_vertices', g.vertex_count(), self.max_vertices)

    def deadline(self) -> float:
        """
        Returns the monotonic time at which a scan must stop
        """
        return time.monotonic() + self.time_limit

    def check_deadline(self, deadline: float):
        """
        Refuses to continue past the deadline
        :raises BudgetExceededException
        """
        if time.monotonic() > deadline:
            self.refuse('time_limit', self.time_limit, self.time_limit)


class Oracle:
    """
    Definition-first exhaustive checks
    """

    @staticmethod
    def oracle_difference_k(g: Graph, k: int,
                            budget: Optional[OracleBudget] = None
                            ) -> List[Colouring]:
        """
        Returns every colouring with blue degree minus red degree equal
        to k at each vertex, in canonical order. Edges are coloured one
        at a time, blue first, abandoning a branch once some vertex can
        no longer reach k with its uncoloured edges.
        :raises BudgetExceededException
        """
        budget = budget or OracleBudget.from_metadata()
        budget.check_size(g)
        deadline = budget.deadline()

        edges = list(g.edges)
        balance = {v: 0 for v in g.vertices}
        uncoloured = {v: g.degree(v) for v in g.vertices}
        chosen: Dict[Edge, Colour] = {}
        found = []

        def feasible(v: str) -> bool:
            return abs(k - balance[v]) <= uncoloured[v]

        def extend(i: int):
            if i % 8 == 0:
                budget.check_deadline(deadline)
            if i == len(edges):
                if all(balance[v] == k for v in g.vertices):
                    found.append(Colouring(dict(chosen)))
                return
            u, v = edges[i]
            for colour, step in ((Colour.Blue, 1), (Colour.Red, -1)):
                for w in (u, v):
                    balance[w] += step
                    uncoloured[w] -= 1
                chosen[(u, v)] = colour
                if feasible(u) and feasible(v):
                    extend(i + 1)
                del chosen[(u, v)]
                for w in (u, v):
                    balance[w] -= step
                    uncoloured[w] += 1

        if all(feasible(v) for v in g.vertices):
            extend(0)
        return sorted(found, key=Colouring.key)

    @staticmethod
    def _all_cycles(g: Graph, deadline: float,
                    budget: OracleBudget) -> List[Set[Edge]]:
        """
        Enumerates every cycle as an edge set, each rooted at its
        smallest vertex
        """
        cycles = set()

        def walk(root: str, path: List[str], on_path: Set[str]):
            budget.check_deadline(deadline)
            current = path[-1]
            for w in g.neighbours(current):
                if w == root and len(path) >= 3:
                    closed = path + [root]
                    cycles.add(frozenset(
                        edge_key(a, b) for a, b in zip(closed, closed[1:])))
                elif w > root and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    walk(root, path, on_path)
                    on_path.remove(w)
                    path.pop()

        for root in g.vertices:
            walk(root, [root], {root})
        return [set(c) for c in cycles]

    @staticmethod
    def oracle_cycle_relation(g: Graph,
                              budget: Optional[OracleBudget] = None
                              ) -> List[List[Edge]]:
        """
        Groups the edges lying on cycles by the transitive closure of
        "appear on a common cycle", enumerating all cycles explicitly
        :raises BudgetExceededException
        """
        budget = budget or OracleBudget.from_metadata()
        budget.check_size(g, budget.cycle_relation_max_edges)
        deadline = budget.deadline()

        parent: Dict[Edge, Edge] = {}

        def find(e: Edge) -> Edge:
            while parent[e] != e:
                parent[e] = parent[parent[e]]
                e = parent[e]
            return e

        for cycle in Oracle._all_cycles(g, deadline, budget):
            edges = sorted(cycle)
            for e in edges:
                parent.setdefault(e, e)
            for e in edges[1:]:
                parent[find(e)] = find(edges[0])

        classes: Dict[Edge, List[Edge]] = {}
        for e in parent:
            classes.setdefault(find(e), []).append(e)
        return sorted(sorted(c) for c in classes.values())

    @staticmethod
    def _line_exists(cg: ColouredGraph, line: List[str], readers: List[str],
                     deadline: float, budget: OracleBudget) -> bool:
        """
        Returns True if some permutation of line shows every reader its
        edges as blue, red, ..., blue
        """
        for count, order in enumerate(permutations(line)):
            if count % 1024 == 0:
                budget.check_deadline(deadline)
            position = {v: i for i, v in enumerate(order)}
            valid = True
            for u in readers:
                neighbours = sorted(cg.graph.neighbours(u), key=position.get)
                colours = [cg.colouring[(u, w)] for w in neighbours]
                expected = [Colour.Blue if i % 2 == 0 else Colour.Red
                            for i in range(len(colours))]
                if (not colours or colours != expected
                        or colours[-1] != Colour.Blue):
                    valid = False
                    break
            if valid:
                return True
        return False

    @staticmethod
    def oracle_configurable(cg: ColouredGraph,
                            budget: Optional[OracleBudget] = None) -> bool:
        """
        Returns True if orders of both parts exist under which every
        vertex reads its edges blue, red, ..., blue. A vertex's reading
        depends only on the order of the other part, so each part's
        permutations are scanned on their own.
        :raises BudgetExceededException
        """
        budget = budget or OracleBudget.from_metadata()
        part1 = sorted(cg.bipartition.part1)
        part2 = sorted(cg.bipartition.part2)
        largest = max(len(part1), len(part2))
        if largest > budget.configuration_max_part:
            budget.refuse('configuration_max_part', largest,
                          budget.configuration_max_part)
        deadline = budget.deadline()

        return (Oracle._line_exists(cg, part2, part1, deadline, budget)
                and Oracle._line_exists(cg, part1, part2, deadline, budget))
