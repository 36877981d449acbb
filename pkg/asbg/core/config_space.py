"""
Configurations of coloured graphs and the space of difference-1
colourings
"""

import json
from collections import deque
from dataclasses import dataclass
from typing import (
    Dict,
    List,
    Optional,
    Sequence,
    Tuple,
    Union
)

import networkx as nx

from .colouring import ColouringPipeline
from .enums import (
    Colour,
    ConfigureMethod
)
from .exceptions import (
    BudgetExceededException,
    InvalidColouringException,
    NotAlternatingException,
    NotCactusException,
    OrderMismatchException,
    PreconditionException
)
from .graph import (
    Colouring,
    ColouredGraph,
    Edge,
    Graph,
    GraphUtils,
    edge_key
)
from .logger import Logger
from .meta import PACKAGE_METADATA_PARSER
from .structure import StructureAnalyzer


@dataclass(frozen=True)
class Configuration:
    """
    One total order per bipartition part. Only the relative order of a
    vertex's neighbours matters, so the two lines never interleave.
    """

    order1: Tuple[str, ...]
    order2: Tuple[str, ...]

    def to_json(self) -> Dict[str, List[str]]:
        """
        Returns the configuration as two ordered lists
        """
        return {
            'order1': list(self.order1),
            'order2': list(self.order2)
        }

    @staticmethod
    def from_json(jsons: Union[str, Dict]) -> 'Configuration':
        """
        Creates a configuration from a JSON string or decoded dict
        """
        res = json.loads(jsons) if isinstance(jsons, str) else jsons
        return Configuration(tuple(res['order1']), tuple(res['order2']))


@dataclass(frozen=True)
class AlternatingCycle:
    """
    A cycle whose edge colours alternate. colours[i] is the colour of
    the edge from vertices[i] to the next vertex.
    """

    vertices: Tuple[str, ...]
    colours: Tuple[Colour, ...]

    @staticmethod
    def from_vertices(vertices: Sequence[str],
                      colouring: Colouring) -> 'AlternatingCycle':
        """
        Creates the cycle through the given vertices, reading its colours
        from a colouring
        :raises NotAlternatingException
        """
        vertices = tuple(vertices)
        if len(vertices) < 4 or len(vertices) % 2:
            raise NotAlternatingException(
                'Alternating cycles have even length at least 4')
        if len(set(vertices)) != len(vertices):
            raise NotAlternatingException('Cycle repeats a vertex')

        colours = []
        for i, u in enumerate(vertices):
            e = edge_key(u, vertices[(i + 1) % len(vertices)])
            if e not in colouring:
                raise NotAlternatingException(
                    'Cycle uses a missing edge {}-{}'.format(*e))
            colours.append(colouring[e])
        for i, colour in enumerate(colours):
            if colour == colours[i - 1]:
                raise NotAlternatingException(
                    'Colours do not alternate at "{}"'.format(vertices[i]))
        return AlternatingCycle(vertices, tuple(colours))

    def edges(self) -> List[Edge]:
        """
        Returns the cycle edges in walking order
        """
        n = len(self.vertices)
        return [edge_key(self.vertices[i], self.vertices[(i + 1) % n])
                for i in range(n)]

    def to_json(self) -> Dict[str, List[str]]:
        """
        Returns the cycle as its vertex and colour sequences
        """
        return {
            'vertices': list(self.vertices),
            'colours': [c.to_string() for c in self.colours]
        }


class ConfigurationSpace:
    """
    Configurations, alternating cycles and colouring enumeration
    """

    @staticmethod
    def _alternates(colours: List[Colour]) -> bool:
        """
        Returns True for a non-empty sequence blue, red, ..., blue
        """
        if len(colours) % 2 == 0:
            return False
        return all((c == Colour.Blue) == (i % 2 == 0)
                   for i, c in enumerate(colours))

    @staticmethod
    def _check_order(order: Sequence[str], part: frozenset, name: str):
        if len(order) != len(part) or set(order) != part:
            raise OrderMismatchException(
                '{} is not a permutation of its part'.format(name))

    @staticmethod
    def is_configuration_valid(cg: ColouredGraph,
                               cfg: Configuration) -> bool:
        """
        Returns True if, for every vertex, its neighbours read along the
        opposite line have colours blue, red, ..., blue
        :raises OrderMismatchException
        """
        ConfigurationSpace._check_order(
            cfg.order1, cg.bipartition.part1, 'order1')
        ConfigurationSpace._check_order(
            cfg.order2, cg.bipartition.part2, 'order2')

        position = {v: i for i, v in enumerate(cfg.order1)}
        position.update({v: i for i, v in enumerate(cfg.order2)})
        for u in cg.graph.vertices:
            neighbours = sorted(cg.graph.neighbours(u), key=position.get)
            colours = [cg.colouring[(u, w)] for w in neighbours]
            if not ConfigurationSpace._alternates(colours):
                return False
        return True

    @staticmethod
    def _require_difference1(cg: ColouredGraph):
        if not ColouringPipeline.verify_difference1(cg):
            raise InvalidColouringException(
                'Colouring is not a difference-1 colouring')

    @staticmethod
    def _place_neighbours(cg: ColouredGraph, x: str, line: List[str],
                          placed: set):
        """
        Inserts x's unplaced neighbours into the opposite line so that
        x's edges read blue, red, ..., blue around its (at most two)
        already placed neighbours
        """
        position = {v: i for i, v in enumerate(line)}
        anchors = sorted((w for w in cg.graph.neighbours(x) if w in placed),
                         key=position.get)
        free = [w for w in cg.graph.neighbours(x) if w not in placed]
        if not free:
            return
        if len(anchors) > 2:
            raise PreconditionException(
                'Vertex "{}" has {} placed neighbours'.format(
                    x, len(anchors)))

        free_blue = [w for w in free if cg.colouring[(x, w)] == Colour.Blue]
        free_red = [w for w in free if cg.colouring[(x, w)] == Colour.Red]

        def take(index: int) -> str:
            return free_blue.pop(0) if index % 2 == 0 else free_red.pop(0)

        degree = cg.graph.degree(x)
        slots = []
        if anchors:
            first = 0 if cg.colouring[(x, anchors[0])] == Colour.Blue else 1
            slots.append(first)
            if len(anchors) == 2:
                parity = (0 if cg.colouring[(x, anchors[1])] == Colour.Blue
                          else 1)
                second = first + 1
                if second % 2 != parity:
                    second += 1
                slots.append(second)

        blocks = [[]]
        for index in range(degree):
            if index in slots:
                blocks.append([])
            else:
                blocks[-1].append(take(index))

        if not anchors:
            line.extend(blocks[0])
        else:
            before, after_first = blocks[0], blocks[1]
            i = line.index(anchors[0])
            line[i:i + 1] = before + [anchors[0]] + after_first
            if len(anchors) == 2:
                i = line.index(anchors[1])
                line[i + 1:i + 1] = blocks[2]
        placed.update(free)

    @staticmethod
    def configure_cactus(cg: ColouredGraph) -> Configuration:
        """
        Builds a configuration of a difference-1 coloured cactus, placing
        vertices layer by layer outward from each component's smallest
        vertex
        :raises NotCactusException
        :raises InvalidColouringException
        """
        if not StructureAnalyzer.is_cactus(cg.graph):
            raise NotCactusException('Graph is not a cactus')
        ConfigurationSpace._require_difference1(cg)

        order1 = []
        order2 = []
        for component in GraphUtils.components(cg.graph):
            root = component.vertices[0]
            lines = {1: [], 2: []}
            lines[cg.bipartition.part_of(root)].append(root)
            placed = {root}
            for layer in StructureAnalyzer.bfs_layers(component, root):
                for x in layer:
                    opposite = 3 - cg.bipartition.part_of(x)
                    ConfigurationSpace._place_neighbours(
                        cg, x, lines[opposite], placed)
            order1.extend(lines[1])
            order2.extend(lines[2])

        cfg = Configuration(tuple(order1), tuple(order2))
        Logger.instance().log_message_json({
            'type': Logger.CONFIGURATION,
            'method': 'cactus',
            'configuration': cfg.to_json()
        })
        return cfg

    @staticmethod
    def _check_part_budget(cg: ColouredGraph, max_part: Optional[int]):
        limit = (max_part if max_part is not None
                 else PACKAGE_METADATA_PARSER.get_int_property(
                     'configuration_max_part'))
        largest = max(len(cg.bipartition.part1), len(cg.bipartition.part2))
        if largest > limit:
            Logger.instance().log_error_json({
                'type': Logger.ORACLE_BUDGET,
                'limit': 'configuration_max_part',
                'value': largest
            })
            raise BudgetExceededException(
                'Configuration search is limited to parts of {} '
                'vertices'.format(limit),
                'configuration_max_part')

    @staticmethod
    def _search_line(cg: ColouredGraph, line: List[str],
                     readers: List[str]) -> Optional[List[str]]:
        """
        Orders line so that every reader vertex sees its neighbours
        coloured blue, red, ..., blue. Each partial order is pruned as
        soon as some reader's placed neighbours break the pattern.
        """
        seen = {u: 0 for u in readers}
        order = []
        remaining = sorted(line)

        def extend() -> bool:
            if not remaining:
                return all(seen[u] % 2 == 1 for u in readers)
            for v in list(remaining):
                ok = all(
                    (cg.colouring[(v, u)] == Colour.Blue) == (seen[u] % 2 == 0)
                    for u in cg.graph.neighbours(v)
                )
                if not ok:
                    continue
                for u in cg.graph.neighbours(v):
                    seen[u] += 1
                order.append(v)
                remaining.remove(v)
                if extend():
                    return True
                remaining.append(v)
                remaining.sort()
                order.pop()
                for u in cg.graph.neighbours(v):
                    seen[u] -= 1
            return False

        return order if extend() else None

    @staticmethod
    def brute_force_configuration(
            cg: ColouredGraph,
            max_part: Optional[int] = None) -> Optional[Configuration]:
        """
        Searches for a configuration by backtracking over the orders of
        each part. The two orders are independent: order2 only affects
        part1 vertices and order1 only affects part2 vertices.
        :raises BudgetExceededException
        """
        ConfigurationSpace._check_part_budget(cg, max_part)
        part1 = sorted(cg.bipartition.part1)
        part2 = sorted(cg.bipartition.part2)

        order2 = ConfigurationSpace._search_line(cg, part2, part1)
        order1 = (ConfigurationSpace._search_line(cg, part1, part2)
                  if order2 is not None else None)
        if order1 is None or order2 is None:
            Logger.instance().log_message_json({
                'type': Logger.CONFIGURATION,
                'method': 'brute',
                'configurable': False
            })
            return None
        return Configuration(tuple(order1), tuple(order2))

    @staticmethod
    def configure(cg: ColouredGraph,
                  method: ConfigureMethod = ConfigureMethod.Auto,
                  max_part: Optional[int] = None) -> Optional[Configuration]:
        """
        Finds a configuration with the chosen method. Auto uses the
        cactus construction on cacti and brute force otherwise.
        """
        if method == ConfigureMethod.Cactus or (
                method == ConfigureMethod.Auto
                and StructureAnalyzer.is_cactus(cg.graph)):
            return ConfigurationSpace.configure_cactus(cg)
        return ConfigurationSpace.brute_force_configuration(cg, max_part)

    @staticmethod
    def _alternating_digraph(g: Graph, colouring: Colouring) -> nx.DiGraph:
        """
        Orients blue edges from part1 to part2 and red edges back, so
        directed cycles are exactly the alternating cycles
        """
        bp = GraphUtils.bipartition(g)
        digraph = nx.DiGraph()
        digraph.add_nodes_from(g.vertices)
        for u, v in g.edges:
            if u in bp.part2:
                u, v = v, u
            if colouring[(u, v)] == Colour.Blue:
                digraph.add_edge(u, v)
            else:
                digraph.add_edge(v, u)
        return digraph

    @staticmethod
    def alternating_cycles(g: Graph,
                           colouring: Colouring) -> List[AlternatingCycle]:
        """
        Returns every alternating cycle, each starting at its smallest
        vertex, in sorted order
        """
        res = []
        for cycle in nx.simple_cycles(
                ConfigurationSpace._alternating_digraph(g, colouring)):
            start = cycle.index(min(cycle))
            res.append(AlternatingCycle.from_vertices(
                cycle[start:] + cycle[:start], colouring))
        return sorted(res, key=lambda c: c.vertices)

    @staticmethod
    def rotate(c: Colouring, cyc: AlternatingCycle) -> Colouring:
        """
        Flips the colours of an alternating cycle's edges
        :raises NotAlternatingException
        """
        current = AlternatingCycle.from_vertices(cyc.vertices, c)
        if current.colours != cyc.colours:
            raise NotAlternatingException(
                'Cycle colours differ from the colouring')
        return c.flipped(cyc.edges())

    @staticmethod
    def rotation_decomposition(c1: Colouring,
                               c2: Colouring) -> List[AlternatingCycle]:
        """
        Splits the edges on which two difference-1 colourings differ into
        edge-disjoint cycles alternating under c1. Rotating them all
        turns c1 into c2.
        :raises InvalidColouringException
        """
        if set(c1.edges()) != set(c2.edges()):
            raise InvalidColouringException(
                'Colourings have different edge sets')
        g = Graph.from_edges(c1.edges())
        for c in (c1, c2):
            if not ColouringPipeline.verify_difference_k(g, c, 1):
                raise InvalidColouringException(
                    'Colouring is not a difference-1 colouring')

        remaining = {e for e in c1.edges() if c1[e] != c2[e]}
        cycles = []
        while remaining:
            start = min(v for e in remaining for v in e)
            trail = [start]
            position = {start: 0}
            last = None
            # remaining edges are balanced in colour at every vertex, so
            # the trail can always leave by the other colour
            while True:
                current = trail[-1]
                step = min(
                    w for w in g.neighbours(current)
                    if edge_key(current, w) in remaining
                    and c1[(current, w)] != last
                )
                last = c1[(current, step)]
                if step in position:
                    cycle = trail[position[step]:]
                    break
                position[step] = len(trail)
                trail.append(step)

            alternating = AlternatingCycle.from_vertices(cycle, c1)
            remaining.difference_update(alternating.edges())
            cycles.append(alternating)
        return cycles

    @staticmethod
    def is_unique(g: Graph) -> bool:
        """
        Returns True if g has exactly one difference-1 colouring, that
        is the constructed colouring has no alternating cycle
        :raises NotColourableException
        """
        colouring = ColouringPipeline.construct_colouring(g)
        digraph = ConfigurationSpace._alternating_digraph(g, colouring)
        return next(iter(nx.simple_cycles(digraph)), None) is None

    @staticmethod
    def enumerate_colourings(g: Graph,
                             max_edges: Optional[int] = None
                             ) -> List[Colouring]:
        """
        Returns every difference-1 colouring of g, as the closure of the
        constructed colouring under alternating cycle rotations
        :raises BudgetExceededException
        :raises NotColourableException
        """
        limit = (max_edges if max_edges is not None
                 else PACKAGE_METADATA_PARSER.get_int_property(
                     'enumeration_max_edges'))
        if g.edge_count() > limit:
            Logger.instance().log_error_json({
                'type': Logger.ORACLE_BUDGET,
                'limit': 'enumeration_max_edges',
                'value': g.edge_count()
            })
            raise BudgetExceededException(
                'Enumeration is limited to {} edges'.format(limit),
                'enumeration_max_edges')

        seed = ColouringPipeline.construct_colouring(g)
        seen = {seed}
        queue = deque([seed])
        while queue:
            colouring = queue.popleft()
            for cycle in ConfigurationSpace.alternating_cycles(g, colouring):
                rotated = colouring.flipped(cycle.edges())
                if rotated not in seen:
                    seen.add(rotated)
                    queue.append(rotated)
        return sorted(seen, key=Colouring.key)
