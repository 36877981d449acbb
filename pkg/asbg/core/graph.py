"""
Graph model
"""

import json
from dataclasses import (
    dataclass,
    field
)
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union
)

import networkx as nx

from .constants import EDGE_KEY_SEPARATOR
from .enums import Colour
from .exceptions import (
    GraphFormatException,
    OddCycleException
)

Edge = Tuple[str, str]


def edge_key(u: str, v: str) -> Edge:
    """
    Returns the canonical (sorted) form of the edge uv
    """
    return (u, v) if u <= v else (v, u)


def edge_to_string(edge: Edge) -> str:
    """
    Converts an edge to the key used in JSON objects
    """
    return EDGE_KEY_SEPARATOR.join(edge_key(*edge))


def edge_from_string(string: str) -> Edge:
    """
    Parses an edge from its JSON object key
    """
    parts = string.split(EDGE_KEY_SEPARATOR)
    if len(parts) != 2:
        raise GraphFormatException(
            'Invalid edge key "{}"'.format(string))
    return edge_key(parts[0], parts[1])


@dataclass(frozen=True)
class Graph:
    """
    A simple undirected graph with string vertex identifiers.

    Vertices are kept sorted, edges are kept as sorted pairs ordered by
    (min endpoint, max endpoint), and adjacency lists are sorted. Use
    :meth:`create` to build a graph from untrusted input.
    """

    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    _adjacency: Dict[str, Tuple[str, ...]] = field(
        init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        adjacency = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adjacency[u].append(v)
            adjacency[v].append(u)
        object.__setattr__(
            self, '_adjacency',
            {v: tuple(sorted(n)) for v, n in adjacency.items()}
        )

    @staticmethod
    def create(vertices: Iterable[str],
               edges: Iterable[Sequence[str]]) -> 'Graph':
        """
        Creates a graph, validating that it is simple and that every
        edge endpoint is a declared vertex
        :raises GraphFormatException
        """
        vertex_set = set()
        for v in vertices:
            if not isinstance(v, str):
                raise GraphFormatException(
                    'Vertex identifiers must be strings, got {!r}'.format(v))
            if (EDGE_KEY_SEPARATOR in v or v.startswith('-')
                    or v.endswith('-')):
                raise GraphFormatException(
                    'Vertex id "{}" would make edge keys ambiguous'.format(
                        v))
            if v in vertex_set:
                raise GraphFormatException(
                    'Duplicate vertex id "{}"'.format(v))
            vertex_set.add(v)

        edge_set = set()
        for edge in edges:
            if not isinstance(edge, (list, tuple)) or len(edge) != 2:
                raise GraphFormatException(
                    'Edges must have exactly two endpoints, got {!r}'.format(
                        edge))
            u, v = edge
            for endpoint in (u, v):
                if not isinstance(endpoint, str) \
                        or endpoint not in vertex_set:
                    raise GraphFormatException(
                        'Edge {!r} references unknown vertex {!r}'.format(
                            list(edge), endpoint))
            if u == v:
                raise GraphFormatException(
                    'Self-loop at vertex "{}"'.format(u))
            key = edge_key(u, v)
            if key in edge_set:
                raise GraphFormatException(
                    'Duplicate edge {}'.format(edge_to_string(key)))
            edge_set.add(key)

        return Graph(
            vertices=tuple(sorted(vertex_set)),
            edges=tuple(sorted(edge_set))
        )

    @staticmethod
    def from_edges(edges: Iterable[Sequence[str]],
                   extra_vertices: Iterable[str] = ()) -> 'Graph':
        """
        Creates a graph whose vertices are the edge endpoints plus any
        extra vertices
        """
        edges = [tuple(e) for e in edges]
        vertices = set(extra_vertices)
        for u, v in edges:
            vertices.add(u)
            vertices.add(v)
        return Graph.create(vertices, edges)

    @staticmethod
    def from_json(jsons: Union[str, Dict]) -> 'Graph':
        """
        Creates a graph from a JSON string or decoded document
        :raises GraphFormatException
        """
        if isinstance(jsons, str):
            try:
                res = json.loads(jsons)
            except json.JSONDecodeError as e:
                raise GraphFormatException(
                    'Malformed JSON: {}'.format(e)) from e
        else:
            res = jsons

        if not isinstance(res, dict):
            raise GraphFormatException('Graph document must be an object')
        vertices = res.get('vertices')
        edges = res.get('edges', [])
        if not isinstance(vertices, list):
            raise GraphFormatException('"vertices" must be an array')
        if not isinstance(edges, list) or not all(
                isinstance(e, list) for e in edges):
            raise GraphFormatException(
                '"edges" must be an array of 2-element arrays')

        return Graph.create(vertices, edges)

    def to_json(self) -> Dict[str, object]:
        """
        Returns the graph as a JSON compatible document
        """
        return {
            'vertices': list(self.vertices),
            'edges': [list(e) for e in self.edges]
        }

    def serialize(self) -> str:
        """
        Returns the canonical JSON serialization of the graph
        """
        return json.dumps(self.to_json())

    def neighbours(self, v: str) -> Tuple[str, ...]:
        """
        Returns the sorted neighbours of v
        """
        return self._adjacency[v]

    def degree(self, v: str) -> int:
        """
        Returns the degree of v
        """
        return len(self._adjacency[v])

    def has_vertex(self, v: str) -> bool:
        """
        Returns True if v is a vertex of the graph
        """
        return v in self._adjacency

    def has_edge(self, u: str, v: str) -> bool:
        """
        Returns True if uv is an edge of the graph
        """
        return u in self._adjacency and v in self._adjacency[u]

    def incident_edges(self, v: str) -> List[Edge]:
        """
        Returns the canonical edges incident with v, ordered by the
        other endpoint
        """
        return [edge_key(v, w) for w in self._adjacency[v]]

    def vertex_count(self) -> int:
        """
        Returns the number of vertices
        """
        return len(self.vertices)

    def edge_count(self) -> int:
        """
        Returns the number of edges
        """
        return len(self.edges)

    def edge_subgraph(self, edges: Iterable[Edge],
                      keep_vertices: Iterable[str] = ()) -> 'Graph':
        """
        Returns the subgraph formed by the given edges and their
        endpoints, plus any vertices listed in keep_vertices
        """
        edges = {edge_key(*e) for e in edges}
        vertices = set(keep_vertices)
        for u, v in edges:
            vertices.add(u)
            vertices.add(v)
        return Graph(tuple(sorted(vertices)), tuple(sorted(edges)))

    def spanning_subgraph(self, edges: Iterable[Edge]) -> 'Graph':
        """
        Returns the subgraph on all vertices with only the given edges
        """
        return self.edge_subgraph(edges, self.vertices)

    def induced_subgraph(self, vertices: Iterable[str]) -> 'Graph':
        """
        Returns the subgraph induced by the given vertices
        """
        vertices = set(vertices)
        return Graph(
            tuple(sorted(vertices)),
            tuple(e for e in self.edges
                  if e[0] in vertices and e[1] in vertices)
        )

    def without_vertices(self, vertices: Iterable[str]) -> 'Graph':
        """
        Returns the graph with the given vertices and their incident
        edges removed
        """
        removed = set(vertices)
        return self.induced_subgraph(
            v for v in self.vertices if v not in removed)

    def without_edges(self, edges: Iterable[Edge]) -> 'Graph':
        """
        Returns the graph with the given edges removed, keeping all
        vertices
        """
        removed = {edge_key(*e) for e in edges}
        return Graph(
            self.vertices,
            tuple(e for e in self.edges if e not in removed)
        )

    def to_networkx(self) -> nx.Graph:
        """
        Returns an equivalent networkx graph. Vertices and adjacency are
        inserted in sorted order, so networkx traversals are deterministic.
        """
        nxg = nx.Graph()
        nxg.add_nodes_from(self.vertices)
        for v in self.vertices:
            for w in self._adjacency[v]:
                if not nxg.has_edge(v, w):
                    nxg.add_edge(v, w)
        return nxg

    @staticmethod
    def from_networkx(nxg: nx.Graph) -> 'Graph':
        """
        Creates a graph from a networkx graph with string nodes
        """
        return Graph.create(list(nxg.nodes), list(nxg.edges))


@dataclass(frozen=True)
class Bipartition:
    """
    A bipartition of a graph's vertex set
    """

    part1: FrozenSet[str]
    part2: FrozenSet[str]

    def part_of(self, v: str) -> int:
        """
        Returns 1 or 2, the part containing v
        """
        if v in self.part1:
            return 1
        if v in self.part2:
            return 2
        raise KeyError(v)

    def swapped(self) -> 'Bipartition':
        """
        Returns the bipartition with its parts exchanged
        """
        return Bipartition(self.part2, self.part1)

    def restricted(self, vertices: Iterable[str]) -> 'Bipartition':
        """
        Returns the bipartition restricted to a vertex subset
        """
        vertices = set(vertices)
        return Bipartition(
            frozenset(self.part1 & vertices),
            frozenset(self.part2 & vertices)
        )

    def is_balanced(self) -> bool:
        """
        Returns True if both parts have the same size
        """
        return len(self.part1) == len(self.part2)

    def to_json(self) -> Dict[str, List[str]]:
        """
        Returns the bipartition as sorted vertex lists
        """
        return {
            'part1': sorted(self.part1),
            'part2': sorted(self.part2)
        }


class Colouring:
    """
    A total map from edges to colours.

    Colourings are immutable and compare equal when they colour the same
    edges alike.
    """

    def __init__(self, colours: Mapping[Edge, Colour]):
        self._colours: Dict[Edge, Colour] = {
            edge_key(*e): c for e, c in colours.items()
        }

    @staticmethod
    def uniform(edges: Iterable[Edge], colour: Colour) -> 'Colouring':
        """
        Creates a colouring giving every edge the same colour
        """
        return Colouring({e: colour for e in edges})

    def __getitem__(self, edge: Edge) -> Colour:
        return self._colours[edge_key(*edge)]

    def __contains__(self, edge: Edge) -> bool:
        return edge_key(*edge) in self._colours

    def __len__(self) -> int:
        return len(self._colours)

    def __iter__(self) -> Iterator[Edge]:
        return iter(sorted(self._colours))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Colouring):
            return NotImplemented
        return self._colours == other._colours

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return 'Colouring({})'.format(
            ', '.join('{}:{}'.format(edge_to_string(e), c.to_string())
                      for e, c in self.items()))

    def items(self) -> List[Tuple[Edge, Colour]]:
        """
        Returns (edge, colour) pairs in canonical edge order
        """
        return sorted(self._colours.items())

    def key(self) -> Tuple[Tuple[Edge, str], ...]:
        """
        Returns a hashable, sortable key for the colouring
        """
        return tuple((e, c.to_string()) for e, c in self.items())

    def edges(self) -> List[Edge]:
        """
        Returns the coloured edges in canonical order
        """
        return sorted(self._colours)

    def edges_of_colour(self, colour: Colour) -> List[Edge]:
        """
        Returns the edges with the given colour in canonical order
        """
        return sorted(e for e, c in self._colours.items() if c == colour)

    def covers(self, g: Graph) -> bool:
        """
        Returns True if the colouring's domain is exactly E(g)
        """
        return set(self._colours) == set(g.edges)

    def flipped(self, edges: Iterable[Edge]) -> 'Colouring':
        """
        Returns a copy with the colours of the given edges exchanged
        """
        res = dict(self._colours)
        for e in edges:
            key = edge_key(*e)
            res[key] = res[key].opposite()
        return Colouring(res)

    def restricted(self, edges: Iterable[Edge]) -> 'Colouring':
        """
        Returns the colouring restricted to the given edges
        """
        return Colouring({e: self[e] for e in edges})

    def merged(self, other: 'Colouring') -> 'Colouring':
        """
        Returns the union of two colourings, the other colouring winning
        on shared edges
        """
        res = dict(self._colours)
        res.update(other._colours)  # pylint: disable=protected-access
        return Colouring(res)

    def to_json(self) -> Dict[str, str]:
        """
        Returns the colouring as an object keyed by "u--v"
        """
        return {edge_to_string(e): c.to_string() for e, c in self.items()}

    @staticmethod
    def from_json(jsons: Union[str, Dict]) -> 'Colouring':
        """
        Creates a colouring from a JSON string or decoded object
        :raises GraphFormatException
        """
        res = json.loads(jsons) if isinstance(jsons, str) else jsons
        if not isinstance(res, dict):
            raise GraphFormatException('Colouring must be an object')
        colours = {}
        for k, v in res.items():
            if not isinstance(v, str):
                raise GraphFormatException(
                    'Colour of "{}" must be a string, got {!r}'.format(k, v))
            try:
                colours[edge_from_string(k)] = Colour.from_string(v)
            except KeyError as e:
                raise GraphFormatException(
                    'Unknown colour "{}" for "{}"'.format(v, k)) from e
        return Colouring(colours)


@dataclass(frozen=True)
class ColouredGraph:
    """
    A graph endowed with an edge colouring and its bipartition
    """

    graph: Graph
    colouring: Colouring
    bipartition: Bipartition

    def __post_init__(self):
        if not self.colouring.covers(self.graph):
            raise GraphFormatException(
                'Colouring domain differs from the edge set')

    @staticmethod
    def create(graph: Graph, colouring: Colouring) -> 'ColouredGraph':
        """
        Creates a coloured graph using the canonical bipartition
        :raises OddCycleException
        """
        return ColouredGraph(graph, colouring, GraphUtils.bipartition(graph))

    def colour_degrees(self, v: str) -> Tuple[int, int]:
        """
        Returns (blue degree, red degree) of v
        """
        blue = 0
        red = 0
        for e in self.graph.incident_edges(v):
            if self.colouring[e] == Colour.Blue:
                blue += 1
            else:
                red += 1
        return blue, red

    def to_json(self) -> Dict[str, object]:
        """
        Returns the coloured graph as a JSON compatible document
        """
        res = self.graph.to_json()
        res['colouring'] = self.colouring.to_json()
        return res

    @staticmethod
    def from_json(jsons: Union[str, Dict]) -> 'ColouredGraph':
        """
        Creates a coloured graph from a graph document with an added
        "colouring" object
        :raises GraphFormatException
        """
        res = json.loads(jsons) if isinstance(jsons, str) else jsons
        if not isinstance(res, dict) or 'colouring' not in res:
            raise GraphFormatException(
                'Coloured graph document needs a "colouring" object')
        graph = Graph.from_json(res)
        return ColouredGraph.create(graph,
                                    Colouring.from_json(res['colouring']))


@dataclass
class CandidateReport:
    """
    The necessary conditions for ASBG-colourability
    """

    bipartite: bool
    balanced: bool
    connected: bool
    all_degrees_odd: bool

    def all_hold(self) -> bool:
        """
        Returns True if all four conditions hold
        """
        return (self.bipartite and self.balanced and self.connected
                and self.all_degrees_odd)

    def to_json(self) -> Dict[str, bool]:
        """
        Returns the report as a JSON compatible dict
        """
        return {
            'bipartite': self.bipartite,
            'balanced': self.balanced,
            'connected': self.connected,
            'all_degrees_odd': self.all_degrees_odd
        }


class GraphUtils:
    """
    Utilities for working with graphs
    """

    @staticmethod
    def parse_graph(text: str) -> Graph:
        """
        Parses a graph from its JSON document
        :raises GraphFormatException
        """
        return Graph.from_json(text)

    @staticmethod
    def serialize_graph(g: Graph) -> str:
        """
        Serializes a graph to canonical JSON
        """
        return g.serialize()

    @staticmethod
    def component_vertex_sets(g: Graph) -> List[FrozenSet[str]]:
        """
        Returns the vertex sets of the connected components, ordered by
        their smallest vertex
        """
        return sorted(
            (frozenset(c) for c in nx.connected_components(g.to_networkx())),
            key=min
        )

    @staticmethod
    def components(g: Graph) -> List[Graph]:
        """
        Returns the connected components of g in canonical order
        """
        return [
            g.induced_subgraph(c)
            for c in GraphUtils.component_vertex_sets(g)
        ]

    @staticmethod
    def is_connected(g: Graph) -> bool:
        """
        Returns True if g has at most one component
        """
        return len(GraphUtils.component_vertex_sets(g)) <= 1

    @staticmethod
    def bipartition(g: Graph) -> Bipartition:
        """
        Returns the canonical bipartition of g: per component, part1
        holds the side containing the component's smallest vertex
        :raises OddCycleException
        """
        nxg = g.to_networkx()
        part1 = set()
        part2 = set()
        for component in GraphUtils.component_vertex_sets(g):
            root = min(component)
            sub = nxg.subgraph(component)
            try:
                colours = nx.bipartite.color(sub)
            except nx.NetworkXError:
                raise OddCycleException(  # pylint: disable=raise-missing-from
                    GraphUtils._odd_cycle_witness(sub, root))

            flip = colours[root] == 1
            for v, c in colours.items():
                if (c == 1) == flip:
                    part1.add(v)
                else:
                    part2.add(v)

        return Bipartition(frozenset(part1), frozenset(part2))

    @staticmethod
    def _odd_cycle_witness(nxg: nx.Graph, root: str) -> List[str]:
        """
        Finds an odd cycle in a connected non-bipartite graph, from an
        edge joining two vertices at equal BFS depth
        """
        depth = nx.single_source_shortest_path_length(nxg, root)
        parent = dict(nx.bfs_predecessors(nxg, root))
        for u, v in sorted(edge_key(*e) for e in nxg.edges):
            if depth[u] != depth[v]:
                continue

            path_u = [u]
            while path_u[-1] != root:
                path_u.append(parent[path_u[-1]])
            path_v = [v]
            while path_v[-1] != root:
                path_v.append(parent[path_v[-1]])
            while (len(path_u) > 1 and len(path_v) > 1
                   and path_u[-2] == path_v[-2]):
                path_u.pop()
                path_v.pop()
            return path_u + list(reversed(path_v[:-1]))

        return []

    @staticmethod
    def is_bipartite(g: Graph) -> bool:
        """
        Returns True if g has no odd cycle
        """
        try:
            GraphUtils.bipartition(g)
        except OddCycleException:
            return False
        return True

    @staticmethod
    def validate_candidate(g: Graph) -> CandidateReport:
        """
        Reports the four necessary (not sufficient) conditions for
        ASBG-colourability. Balance is required of every component.
        """
        components = GraphUtils.component_vertex_sets(g)
        try:
            bp = GraphUtils.bipartition(g)
            bipartite = True
            balanced = all(bp.restricted(c).is_balanced()
                           for c in components)
        except OddCycleException:
            bipartite = False
            balanced = False

        return CandidateReport(
            bipartite=bipartite,
            balanced=balanced,
            connected=len(components) <= 1,
            all_degrees_odd=all(g.degree(v) % 2 == 1 for v in g.vertices)
        )

    @staticmethod
    def fresh_labels(g: Graph, count: int, prefix: str = 'x') -> List[str]:
        """
        Returns count vertex identifiers not used in g
        """
        labels = []
        index = 0
        while len(labels) < count:
            label = '{}{}'.format(prefix, index)
            if not g.has_vertex(label):
                labels.append(label)
            index += 1
        return labels

    @staticmethod
    def add_leaf_twig(g: Graph, anchor: str,
                      labels: Optional[Sequence[str]] = None) -> Graph:
        """
        Adds a leaf-twig configuration at anchor. labels names the new
        (leaf, twig base, twig leaf, twig leaf) vertices; fresh labels
        are generated when omitted.
        :raises GraphFormatException
        """
        if not g.has_vertex(anchor):
            raise GraphFormatException(
                'Unknown anchor vertex "{}"'.format(anchor))
        leaf, base, twig_leaf_1, twig_leaf_2 = (
            labels if labels is not None else GraphUtils.fresh_labels(g, 4))
        return Graph.create(
            list(g.vertices) + [leaf, base, twig_leaf_1, twig_leaf_2],
            list(g.edges) + [
                (anchor, leaf),
                (anchor, base),
                (base, twig_leaf_1),
                (base, twig_leaf_2)
            ]
        )
