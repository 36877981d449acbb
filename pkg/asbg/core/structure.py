"""
Structural analysis of graphs: leaf-twig reduction, skeletons, local
trees, vertex types, limbs and common cycle classes
"""

from dataclasses import (
    dataclass,
    field
)
from typing import (
    Dict,
    List,
    Optional,
    Tuple
)

import networkx as nx

from .enums import VertexType
from .exceptions import (
    AcyclicGraphException,
    AllLeafTypeException,
    DisconnectedGraphException,
    VertexNotInSkeletonException
)
from .graph import (
    Edge,
    Graph,
    GraphUtils,
    edge_key
)


@dataclass(frozen=True)
class LeafTwigConfiguration:
    """
    A leaf and a twig hanging off a common anchor vertex
    """

    anchor: str
    leaf: str
    twig_base: str
    twig_leaves: Tuple[str, str]

    def removed_vertices(self) -> List[str]:
        """
        Returns the vertices deleted when the configuration is removed
        """
        return [self.leaf, self.twig_base] + list(self.twig_leaves)

    def leaf_edge(self) -> Edge:
        """
        Returns the anchor-leaf edge
        """
        return edge_key(self.anchor, self.leaf)

    def base_edge(self) -> Edge:
        """
        Returns the anchor-base edge
        """
        return edge_key(self.anchor, self.twig_base)

    def twig_edges(self) -> List[Edge]:
        """
        Returns the two base-leaf edges of the twig
        """
        return [edge_key(self.twig_base, leaf) for leaf in self.twig_leaves]

    def to_json(self) -> Dict[str, object]:
        """
        Returns the configuration as a JSON compatible dict
        """
        return {
            'anchor': self.anchor,
            'leaf': self.leaf,
            'twig_base': self.twig_base,
            'twig_leaves': list(self.twig_leaves)
        }


@dataclass(frozen=True)
class Limb:
    """
    A skeleton trail whose interior vertices are leaf-type, stored as
    its vertex sequence. Closed limbs start and end at the same vertex.
    """

    vertices: Tuple[str, ...]

    @property
    def start(self) -> str:
        """
        First endpoint
        """
        return self.vertices[0]

    @property
    def end(self) -> str:
        """
        Last endpoint
        """
        return self.vertices[-1]

    @property
    def length(self) -> int:
        """
        Number of edges in the limb
        """
        return len(self.vertices) - 1

    def is_closed(self) -> bool:
        """
        Returns True if both endpoints coincide
        """
        return self.start == self.end

    def edges(self) -> List[Edge]:
        """
        Returns the limb edges in walking order
        """
        return [edge_key(u, v)
                for u, v in zip(self.vertices, self.vertices[1:])]

    def interior(self) -> Tuple[str, ...]:
        """
        Returns the interior (leaf-type) vertices
        """
        return self.vertices[1:-1]

    def reversed(self) -> 'Limb':
        """
        Returns the same limb walked from the other end
        """
        return Limb(tuple(reversed(self.vertices)))

    def to_json(self) -> List[str]:
        """
        Returns the limb as its vertex sequence
        """
        return list(self.vertices)


@dataclass
class StructureReport:
    """
    Full structural description of a graph.

    Classification, local trees and limbs are computed on the reduced
    form, whose skeleton equals the skeleton of the original graph.
    """

    graph: Graph
    reduced_form: Graph
    removed: List[LeafTwigConfiguration] = field(default_factory=list)
    skeleton: Optional[Graph] = None
    local_trees: Dict[str, Graph] = field(default_factory=dict)
    classification: Dict[str, VertexType] = field(default_factory=dict)
    limbs: List[Limb] = field(default_factory=list)
    all_leaf_type: bool = False
    cycle_classes: List[List[Edge]] = field(default_factory=list)
    is_cactus: bool = True

    def unclassifiable(self) -> List[str]:
        """
        Returns the unclassifiable skeleton vertices
        """
        return sorted(v for v, t in self.classification.items()
                      if t == VertexType.Unclassifiable)

    def junctions(self) -> List[str]:
        """
        Returns the junctions in sorted order
        """
        return sorted(v for v, t in self.classification.items()
                      if t == VertexType.Junction)

    def to_json(self) -> Dict[str, object]:
        """
        Returns the report as a JSON compatible dict
        """
        return {
            'reduced_form': self.reduced_form.to_json(),
            'removed': [c.to_json() for c in self.removed],
            'skeleton': (self.skeleton.to_json()
                         if self.skeleton is not None else None),
            'local_trees': {v: t.to_json()
                            for v, t in sorted(self.local_trees.items())},
            'classification': {
                v: t.to_string()
                for v, t in sorted(self.classification.items())
            },
            'limbs': [limb.to_json() for limb in self.limbs],
            'all_leaf_type': self.all_leaf_type,
            'cycle_classes': [[list(e) for e in c]
                              for c in self.cycle_classes],
            'is_cactus': self.is_cactus
        }


class StructureAnalyzer:
    """
    Structural analysis operations
    """

    @staticmethod
    def is_forest(g: Graph) -> bool:
        """
        Returns True if g has no cycle
        """
        return g.edge_count() == (
            g.vertex_count() - len(GraphUtils.component_vertex_sets(g)))

    @staticmethod
    def _leaves_of(g: Graph, v: str, exclude: str = None) -> List[str]:
        return [w for w in g.neighbours(v)
                if w != exclude and g.degree(w) == 1]

    @staticmethod
    def _twig_bases(g: Graph, anchor: str) -> List[str]:
        """
        Returns the neighbours of anchor that are bases of a twig
        """
        return [
            b for b in g.neighbours(anchor)
            if g.degree(b) == 3
            and len(StructureAnalyzer._leaves_of(g, b, exclude=anchor)) == 2
        ]

    @staticmethod
    def find_leaf_twig(g: Graph) -> Optional[LeafTwigConfiguration]:
        """
        Returns the lexicographically first leaf-twig configuration of
        g, ordered by (anchor, leaf, twig base), or None
        """
        for anchor in g.vertices:
            if g.degree(anchor) < 2:
                continue
            leaves = StructureAnalyzer._leaves_of(g, anchor)
            if not leaves:
                continue
            bases = StructureAnalyzer._twig_bases(g, anchor)
            if not bases:
                continue
            base = bases[0]
            twig_leaves = StructureAnalyzer._leaves_of(g, base, exclude=anchor)
            return LeafTwigConfiguration(
                anchor=anchor,
                leaf=leaves[0],
                twig_base=base,
                twig_leaves=(twig_leaves[0], twig_leaves[1])
            )
        return None

    @staticmethod
    def remove_leaf_twig(g: Graph, config: LeafTwigConfiguration) -> Graph:
        """
        Deletes a leaf-twig configuration from g
        """
        return g.without_vertices(config.removed_vertices())

    @staticmethod
    def reduce_with_history(
            g: Graph) -> Tuple[Graph, List[LeafTwigConfiguration]]:
        """
        Removes leaf-twig configurations until none remain, returning the
        reduced form and the removed configurations in removal order
        """
        removed = []
        config = StructureAnalyzer.find_leaf_twig(g)
        while config is not None:
            removed.append(config)
            g = StructureAnalyzer.remove_leaf_twig(g, config)
            config = StructureAnalyzer.find_leaf_twig(g)
        return g, removed

    @staticmethod
    def reduce(g: Graph) -> Graph:
        """
        Returns the reduced form of g
        """
        return StructureAnalyzer.reduce_with_history(g)[0]

    @staticmethod
    def skeleton(g: Graph) -> Graph:
        """
        Returns the skeleton of g: the maximal subgraph of minimum
        degree 2
        :raises AcyclicGraphException
        """
        if StructureAnalyzer.is_forest(g):
            raise AcyclicGraphException('A forest has no skeleton')
        core = nx.k_core(g.to_networkx(), 2)
        return g.induced_subgraph(core.nodes)

    @staticmethod
    def _local_trees(g: Graph, skeleton: Graph) -> Dict[str, Graph]:
        stripped = g.without_edges(skeleton.edges)
        nxg = stripped.to_networkx()
        return {
            v: stripped.induced_subgraph(nx.node_connected_component(nxg, v))
            for v in skeleton.vertices
        }

    @staticmethod
    def local_tree(g: Graph, v: str) -> Graph:
        """
        Returns the local tree of skeleton vertex v: its component once
        the skeleton edges are deleted
        :raises AcyclicGraphException
        :raises VertexNotInSkeletonException
        """
        skeleton = StructureAnalyzer.skeleton(g)
        if not skeleton.has_vertex(v):
            raise VertexNotInSkeletonException(
                'Vertex "{}" is not on the skeleton'.format(v))
        stripped = g.without_edges(skeleton.edges)
        return stripped.induced_subgraph(
            nx.node_connected_component(stripped.to_networkx(), v))

    @staticmethod
    def _tree_shape(tree: Graph, v: str) -> Tuple[int, int, bool]:
        """
        Returns (leaves, twigs, other) describing what hangs off v in its
        local tree; other is True if the tree is not a union of leaves
        and twigs at v
        """
        leaves = StructureAnalyzer._leaves_of(tree, v)
        bases = [
            b for b in tree.neighbours(v)
            if tree.degree(b) == 3
            and len(StructureAnalyzer._leaves_of(tree, b, exclude=v)) == 2
        ]
        expected = 1 + len(leaves) + 3 * len(bases)
        other = (tree.vertex_count() != expected
                 or tree.degree(v) != len(leaves) + len(bases))
        return len(leaves), len(bases), other

    @staticmethod
    def _classify(skeleton: Graph,
                  local_trees: Dict[str, Graph]) -> Dict[str, VertexType]:
        res = {}
        for v in skeleton.vertices:
            leaves, twigs, other = StructureAnalyzer._tree_shape(
                local_trees[v], v)
            if skeleton.degree(v) == 2:
                if other:
                    res[v] = VertexType.Unclassifiable
                elif (leaves, twigs) == (1, 0):
                    res[v] = VertexType.LeafType
                elif (leaves, twigs) == (0, 1):
                    res[v] = VertexType.TwigType
                elif (leaves, twigs) == (3, 0):
                    res[v] = VertexType.TripleType
                else:
                    res[v] = VertexType.Unclassifiable
            elif not other and (leaves == 0 or twigs == 0):
                res[v] = VertexType.Junction
            else:
                res[v] = VertexType.Unclassifiable
        return res

    @staticmethod
    def classify_vertices(g: Graph) -> Dict[str, VertexType]:
        """
        Classifies every skeleton vertex from its local tree in the
        reduced form
        :raises AcyclicGraphException
        """
        reduced = StructureAnalyzer.reduce(g)
        skeleton = StructureAnalyzer.skeleton(reduced)
        return StructureAnalyzer._classify(
            skeleton, StructureAnalyzer._local_trees(reduced, skeleton))

    @staticmethod
    def _limbs(skeleton: Graph,
               classification: Dict[str, VertexType]) -> List[Limb]:
        ends = [v for v in skeleton.vertices
                if classification[v] != VertexType.LeafType]
        if not ends:
            raise AllLeafTypeException(
                'Every skeleton vertex is leaf-type')

        used = set()
        res = []
        for start in ends:
            for w in skeleton.neighbours(start):
                if edge_key(start, w) in used:
                    continue
                trail = [start, w]
                used.add(edge_key(start, w))
                while classification[trail[-1]] == VertexType.LeafType:
                    current = trail[-1]
                    step = next(x for x in skeleton.neighbours(current)
                                if edge_key(current, x) not in used)
                    used.add(edge_key(current, step))
                    trail.append(step)
                res.append(Limb(tuple(trail)))
        return res

    @staticmethod
    def limbs(g: Graph) -> List[Limb]:
        """
        Returns the limbs of g's skeleton, walked from their smaller
        endpoint. Skeleton components made only of leaf-type vertices
        have no limbs.
        :raises AcyclicGraphException
        :raises AllLeafTypeException
        """
        reduced = StructureAnalyzer.reduce(g)
        skeleton = StructureAnalyzer.skeleton(reduced)
        classification = StructureAnalyzer._classify(
            skeleton, StructureAnalyzer._local_trees(reduced, skeleton))
        return StructureAnalyzer._limbs(skeleton, classification)

    @staticmethod
    def limb_parity_violation(report: StructureReport) -> Optional[Limb]:
        """
        Returns the first limb whose endpoints are both twig-type or
        triple-type and whose length has the wrong parity: odd is needed
        between equal types, even between different types
        """
        for limb in report.limbs:
            first = report.classification[limb.start]
            last = report.classification[limb.end]
            if not (first.is_end_type() and last.is_end_type()):
                continue
            if (limb.length % 2 == 1) != (first == last):
                return limb
        return None

    @staticmethod
    def _blocks(g: Graph) -> List[List[Edge]]:
        return [
            sorted(edge_key(*e) for e in block)
            for block in nx.biconnected_component_edges(g.to_networkx())
        ]

    @staticmethod
    def common_cycle_classes(g: Graph) -> List[List[Edge]]:
        """
        Partitions the edges lying on a cycle into the classes of "lie on
        a common cycle", which are the edge sets of the non-bridge
        biconnected blocks
        """
        return sorted(b for b in StructureAnalyzer._blocks(g) if len(b) > 1)

    @staticmethod
    def is_cactus(g: Graph) -> bool:
        """
        Returns True if every edge lies on at most one cycle
        """
        for block in StructureAnalyzer._blocks(g):
            vertices = {v for e in block for v in e}
            if len(block) > 1 and len(block) != len(vertices):
                return False
        return True

    @staticmethod
    def bfs_layers(g: Graph, v: str) -> List[List[str]]:
        """
        Returns the distance layers of a connected graph from v
        :raises DisconnectedGraphException
        """
        if not g.has_vertex(v):
            raise DisconnectedGraphException(
                'Vertex "{}" is not in the graph'.format(v))
        if not GraphUtils.is_connected(g):
            raise DisconnectedGraphException(
                'Distance layers need a connected graph')
        return [sorted(layer)
                for layer in nx.bfs_layers(g.to_networkx(), [v])]

    @staticmethod
    def analyze(g: Graph) -> StructureReport:
        """
        Builds the full structure report of g. Forests get a report with
        no skeleton.
        """
        reduced, removed = StructureAnalyzer.reduce_with_history(g)
        report = StructureReport(
            graph=g,
            reduced_form=reduced,
            removed=removed,
            cycle_classes=StructureAnalyzer.common_cycle_classes(reduced),
            is_cactus=StructureAnalyzer.is_cactus(g)
        )
        if StructureAnalyzer.is_forest(reduced):
            return report

        report.skeleton = StructureAnalyzer.skeleton(reduced)
        report.local_trees = StructureAnalyzer._local_trees(
            reduced, report.skeleton)
        report.classification = StructureAnalyzer._classify(
            report.skeleton, report.local_trees)
        try:
            report.limbs = StructureAnalyzer._limbs(
                report.skeleton, report.classification)
        except AllLeafTypeException:
            report.all_leaf_type = True
        return report
