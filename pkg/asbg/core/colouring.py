"""
Difference-1 colouring pipeline
"""

import json
import random
from dataclasses import (
    dataclass,
    field
)
from typing import (
    Dict,
    List,
    Optional,
    Set,
    Tuple,
    Union
)

from .enums import (
    Certificate,
    Colour,
    VertexType
)
from .exceptions import (
    NotCactusException,
    NotColourableException,
    OddCycleException,
    PreconditionException
)
from .flow import FlowSolver
from .graph import (
    Colouring,
    ColouredGraph,
    Edge,
    Graph,
    GraphUtils,
    edge_key,
    edge_to_string
)
from .logger import Logger
from .structure import (
    LeafTwigConfiguration,
    StructureAnalyzer,
    StructureReport
)

# (limb index, 0 for the start edge or 1 for the end edge)
LimbEnd = Tuple[int, int]

# red edges required among the two skeleton edges of a degree-2 vertex
SKELETON_RED_DEGREE = {
    VertexType.TwigType: 0,
    VertexType.LeafType: 1,
    VertexType.TripleType: 2,
}


@dataclass
class WeightAssignment:
    """
    Integer edge weights: +1 forces blue, -1 forces red, anything else
    is undetermined
    """

    weight: Dict[Edge, int] = field(default_factory=dict)
    junction_sums: Dict[str, int] = field(default_factory=dict)

    def vertex_sum(self, g: Graph, v: str) -> int:
        """
        Returns the sum of the weights of the edges at v
        """
        return sum(self.weight.get(e, 0) for e in g.incident_edges(v))

    def is_total(self, g: Graph) -> bool:
        """
        Returns True if every edge of g has a weight
        """
        return all(e in self.weight for e in g.edges)

    def surplus_edges(self) -> List[Edge]:
        """
        Returns the edges whose weight is not +1 or -1
        """
        return sorted(e for e, w in self.weight.items() if w not in (1, -1))

    def to_json(self) -> Dict[str, object]:
        """
        Returns the assignment as a JSON compatible dict
        """
        return {
            'weight': {edge_to_string(e): w
                       for e, w in sorted(self.weight.items())},
            'junction_sums': dict(sorted(self.junction_sums.items()))
        }


@dataclass
class Decision:
    """
    Outcome of a colourability decision: a colouring, or a certificate
    with details explaining why none exists
    """

    colourable: bool
    colouring: Optional[Colouring] = None
    certificate: Optional[Certificate] = None
    detail: Dict[str, object] = field(default_factory=dict)

    @staticmethod
    def colourable_with(colouring: Colouring) -> 'Decision':
        """
        Creates a positive decision
        """
        return Decision(colourable=True, colouring=colouring)

    @staticmethod
    def not_colourable(certificate: Certificate,
                       detail: Optional[Dict[str, object]] = None
                       ) -> 'Decision':
        """
        Creates a negative decision, logging its certificate
        """
        decision = Decision(colourable=False, certificate=certificate,
                            detail=detail or {})
        Logger.instance().log_message_json({
            'type': Logger.DECISION,
            'certificate': certificate.to_string(),
            'detail': decision.detail
        })
        return decision

    def to_json(self) -> Dict[str, object]:
        """
        Returns the decision as a JSON compatible dict
        """
        return {
            'colourable': self.colourable,
            'colouring': (self.colouring.to_json()
                          if self.colouring is not None else None),
            'certificate': (self.certificate.to_string()
                            if self.certificate is not None else None),
            'detail': self.detail
        }

    @staticmethod
    def from_json(jsons: Union[str, Dict]) -> 'Decision':
        """
        Creates a decision from a JSON string or decoded dict
        """
        res = json.loads(jsons) if isinstance(jsons, str) else jsons
        colouring = res.get('colouring')
        certificate = res.get('certificate')
        return Decision(
            colourable=res['colourable'],
            colouring=(Colouring.from_json(colouring)
                       if colouring is not None else None),
            certificate=(Certificate.from_string(certificate)
                         if certificate is not None else None),
            detail=res.get('detail') or {}
        )


class ColouringPipeline:
    """
    Decides and constructs difference-1 colourings
    """

    @staticmethod
    def verify_difference_k(g: Graph, colouring: Colouring, k: int) -> bool:
        """
        Returns True if the colouring covers E(g) and every vertex has
        blue degree minus red degree equal to k
        """
        if not colouring.covers(g):
            return False
        for v in g.vertices:
            balance = sum(colouring[e].sign() for e in g.incident_edges(v))
            if balance != k:
                return False
        return True

    @staticmethod
    def verify_difference1(cg: ColouredGraph) -> bool:
        """
        Returns True if blue degree minus red degree is 1 everywhere
        """
        return ColouringPipeline.verify_difference_k(
            cg.graph, cg.colouring, 1)

    @staticmethod
    def extend_colouring(colouring: Colouring,
                         removed: List[LeafTwigConfiguration]) -> Colouring:
        """
        Colours removed leaf-twig configurations back in, last removed
        first: leaf edges blue, base edge red, twig edges blue
        """
        colours = {e: c for e, c in colouring.items()}
        for config in reversed(removed):
            colours[config.leaf_edge()] = Colour.Blue
            colours[config.base_edge()] = Colour.Red
            for e in config.twig_edges():
                colours[e] = Colour.Blue
        return Colouring(colours)

    @staticmethod
    def _is_p2(g: Graph) -> bool:
        return g.vertex_count() == 2 and g.edge_count() == 1

    @staticmethod
    def decide_tree(t: Graph) -> Decision:
        """
        Decides a tree: it is colourable exactly when its reduced form is
        a single edge, and the colouring is then unique
        :raises PreconditionException
        """
        if (not GraphUtils.is_connected(t) or t.vertex_count() == 0
                or not StructureAnalyzer.is_forest(t)):
            raise PreconditionException('Input is not a tree')

        reduced, removed = StructureAnalyzer.reduce_with_history(t)
        if not ColouringPipeline._is_p2(reduced):
            return Decision.not_colourable(
                Certificate.IrreducibleTree,
                {'reduced_form': reduced.to_json()})

        return Decision.colourable_with(ColouringPipeline.extend_colouring(
            Colouring.uniform(reduced.edges, Colour.Blue), removed))

    @staticmethod
    def _candidate_certificate(g: Graph) -> Optional[Decision]:
        """
        Checks bipartiteness, per-component balance and odd degrees
        """
        try:
            bp = GraphUtils.bipartition(g)
        except OddCycleException as e:
            return Decision.not_colourable(
                Certificate.NotBipartite, {'odd_cycle': e.witness})

        for component in GraphUtils.component_vertex_sets(g):
            sides = bp.restricted(component)
            if not sides.is_balanced():
                return Decision.not_colourable(
                    Certificate.Unbalanced, {
                        'component': min(component),
                        'part1': len(sides.part1),
                        'part2': len(sides.part2)
                    })

        for v in g.vertices:
            if g.degree(v) % 2 == 0:
                return Decision.not_colourable(
                    Certificate.EvenDegreeVertex,
                    {'vertex': v, 'degree': g.degree(v)})
        return None

    @staticmethod
    def _structure_certificate(report: StructureReport) -> Optional[Decision]:
        """
        Checks vertex classification and limb parity on a report
        """
        unclassifiable = report.unclassifiable()
        if unclassifiable:
            return Decision.not_colourable(
                Certificate.UnclassifiableVertex,
                {'vertices': unclassifiable})

        limb = StructureAnalyzer.limb_parity_violation(report)
        if limb is not None:
            return Decision.not_colourable(
                Certificate.LimbParityViolation, {
                    'limb': limb.to_json(),
                    'length': limb.length
                })
        return None

    @staticmethod
    def _limb_edge_colours(report: StructureReport) -> Dict[Edge, Colour]:
        """
        Colours the limbs of a junction-free skeleton, starting from the
        forced colour at each limb's first endpoint
        """
        colours = {}
        for limb in report.limbs:
            first = report.classification[limb.start]
            colour = (Colour.Blue if first == VertexType.TwigType
                      else Colour.Red)
            for e in limb.edges():
                colours[e] = colour
                colour = colour.opposite()
        return colours

    @staticmethod
    def _local_tree_colours(report: StructureReport) -> Dict[Edge, Colour]:
        """
        Colours local tree edges: leaves blue, twig bases red and twig
        leaves blue
        """
        return {
            e: Colour.Blue if w > 0 else Colour.Red
            for e, w in ColouringPipeline._local_tree_weights(report).items()
        }

    @staticmethod
    def decide_unicyclic(g: Graph) -> Decision:
        """
        Decides a connected graph with exactly one cycle, without flows:
        twig-type skeleton edges are blue, triple-type ones red, and
        colours alternate along the limbs
        :raises PreconditionException
        """
        if (not GraphUtils.is_connected(g)
                or g.edge_count() != g.vertex_count()):
            raise PreconditionException('Input is not unicyclic')

        decision = ColouringPipeline._candidate_certificate(g)
        if decision is not None:
            return decision

        report = StructureAnalyzer.analyze(g)
        decision = ColouringPipeline._structure_certificate(report)
        if decision is not None:
            return decision

        colours = ColouringPipeline._local_tree_colours(report)
        if report.all_leaf_type:
            cycle = ColouringPipeline._cycle_order(
                report.skeleton, report.skeleton.edges)
            closed = cycle + [cycle[0]]
            for i, (u, v) in enumerate(zip(closed, closed[1:])):
                colours[edge_key(u, v)] = (
                    Colour.Blue if i % 2 == 0 else Colour.Red)
        else:
            colours.update(ColouringPipeline._limb_edge_colours(report))

        return Decision.colourable_with(ColouringPipeline.extend_colouring(
            Colouring(colours), report.removed))

    @staticmethod
    def _local_tree_weights(report: StructureReport) -> Dict[Edge, int]:
        weights = {}
        for v, tree in report.local_trees.items():
            for w in tree.neighbours(v):
                if tree.degree(w) == 1:
                    weights[edge_key(v, w)] = 1
                    continue
                weights[edge_key(v, w)] = -1
                for leaf in tree.neighbours(w):
                    if leaf != v:
                        weights[edge_key(w, leaf)] = 1
        return weights

    @staticmethod
    def _limb_ends_at(report: StructureReport) -> Dict[str, List[LimbEnd]]:
        res: Dict[str, List[LimbEnd]] = {}
        for i, limb in enumerate(report.limbs):
            res.setdefault(limb.start, []).append((i, 0))
            res.setdefault(limb.end, []).append((i, 1))
        return res

    @staticmethod
    def assign_weights(g: Graph, report: StructureReport,
                       rng: Optional[random.Random] = None
                       ) -> Tuple[bool, WeightAssignment]:
        """
        Assigns integer weights to the edges of a reduced graph so that
        every non-junction vertex sums to 1, then reports whether every
        junction sums to 1 as well.

        Junctions are visited in sorted order unless rng is given, in
        which case junction and edge orders are shuffled. Each limb from
        a junction gets a weight at the junction end from the type of its
        far endpoint: twig-type (-1)^(len+1), triple-type (-1)^len, an
        already visited junction 0. A new far junction is resolved first,
        its limb edge taking whatever makes its own sum 1, and that
        weight is carried back along the limb with alternating sign.
        :raises PreconditionException
        """
        if g != report.reduced_form and g != report.graph:
            raise PreconditionException(
                'Structure report does not describe the graph')
        if report.unclassifiable():
            raise PreconditionException('Graph has unclassifiable vertices')
        if StructureAnalyzer.limb_parity_violation(report) is not None:
            raise PreconditionException('Limb parity does not hold')

        reduced = report.reduced_form
        weight = ColouringPipeline._local_tree_weights(report)
        limb_ends = ColouringPipeline._limb_ends_at(report)
        end_weight: Dict[LimbEnd, int] = {}
        visited: Set[str] = set()

        def ordered(items: list) -> list:
            items = list(items)
            if rng is not None:
                rng.shuffle(items)
            return items

        def far(end: LimbEnd) -> LimbEnd:
            return end[0], 1 - end[1]

        def far_vertex(end: LimbEnd) -> str:
            limb = report.limbs[end[0]]
            return limb.start if end[1] == 1 else limb.end

        def vertex_weight(j: str, skip: Optional[LimbEnd]) -> int:
            total = sum(w for e, w in weight.items() if j in e)
            total += sum(end_weight.get(end, 0)
                         for end in limb_ends.get(j, []) if end != skip)
            return total

        def assign(j: str, skip: Optional[LimbEnd]):
            for end in ordered(limb_ends.get(j, [])):
                if end == skip or end in end_weight:
                    continue
                limb = report.limbs[end[0]]
                other = far_vertex(end)
                other_type = report.classification[other]
                if limb.is_closed():
                    end_weight[end] = 0
                    end_weight[far(end)] = 0
                elif other_type == VertexType.TwigType:
                    end_weight[end] = (-1) ** (limb.length + 1)
                    end_weight[far(end)] = 1
                elif other_type == VertexType.TripleType:
                    end_weight[end] = (-1) ** limb.length
                    end_weight[far(end)] = -1
                elif other in visited:
                    end_weight[end] = 0
                    end_weight[far(end)] = 0
                else:
                    visited.add(other)
                    assign(other, far(end))
                    balance = 1 - vertex_weight(other, far(end))
                    end_weight[far(end)] = balance
                    end_weight[end] = (-1) ** (limb.length - 1) * balance

        for j in ordered(report.junctions()):
            if j not in visited:
                visited.add(j)
                assign(j, None)

        for i, limb in enumerate(report.limbs):
            if (i, 0) not in end_weight:
                start = 1 if report.classification[limb.start] == \
                    VertexType.TwigType else -1
                end_weight[(i, 0)] = start
                end_weight[(i, 1)] = start * (-1) ** (limb.length - 1)
            start = end_weight[(i, 0)]
            for k, e in enumerate(limb.edges()):
                weight[e] = start * (-1) ** k

        # skeleton cycles made only of leaf-type vertices
        if report.skeleton is not None:
            for e in report.skeleton.edges:
                weight.setdefault(e, 0)

        missing = [e for e in reduced.edges if e not in weight]
        if missing:
            raise PreconditionException(
                'Edges outside the skeleton and its local trees: {}'.format(
                    ', '.join(edge_to_string(e) for e in missing)))

        wa = WeightAssignment(weight=weight)
        wa.junction_sums = {
            j: wa.vertex_sum(reduced, j) for j in report.junctions()
        }
        return all(s == 1 for s in wa.junction_sums.values()), wa

    @staticmethod
    def _cyclic_edges(report: StructureReport) -> Set[Edge]:
        return {e for c in report.cycle_classes for e in c}

    @staticmethod
    def _bridge_failure(g: Graph, wa: WeightAssignment,
                        cyclic: Set[Edge]) -> Optional[Edge]:
        """
        Returns the first edge off every cycle whose weight is not +1 or
        -1; such edges cannot change colour
        """
        for e in g.edges:
            if e not in cyclic and wa.weight.get(e) not in (1, -1):
                return e
        return None

    @staticmethod
    def _log_redistribution_failure(reason: str, **detail):
        detail.update({'type': Logger.REDISTRIBUTION, 'reason': reason})
        Logger.instance().log_message_json(detail)

    @staticmethod
    def class_demand(class_graph: Graph, wa: WeightAssignment,
                     report: StructureReport) -> Optional[Dict[str, int]]:
        """
        Returns the number of red class edges each class vertex needs:
        0, 1 or 2 for twig, leaf and triple-type vertices, and
        (deg - weight sum) / 2 over the class edges for junctions. None
        when a junction value is not an integer in range.
        """
        demand = {}
        for v in class_graph.vertices:
            vertex_type = report.classification[v]
            if vertex_type != VertexType.Junction:
                demand[v] = SKELETON_RED_DEGREE[vertex_type]
                continue
            degree = class_graph.degree(v)
            surplus = degree - sum(
                wa.weight[e] for e in class_graph.incident_edges(v))
            if surplus % 2 or not 0 <= surplus // 2 <= degree:
                return None
            demand[v] = surplus // 2
        return demand

    @staticmethod
    def redistribute(g: Graph, wa: WeightAssignment,
                     report: StructureReport) -> Optional[Colouring]:
        """
        Turns weights into a colouring by solving, in every common cycle
        class, for red edges meeting each vertex's required red degree.
        Edges off every cycle keep their forced colour. Returns None if
        some class cannot be solved.
        """
        reduced = report.reduced_form
        cyclic = ColouringPipeline._cyclic_edges(report)
        bridge = ColouringPipeline._bridge_failure(reduced, wa, cyclic)
        if bridge is not None:
            ColouringPipeline._log_redistribution_failure(
                'bridge weight', edge=edge_to_string(bridge),
                weight=wa.weight.get(bridge))
            return None

        red = {e for e in reduced.edges
               if e not in cyclic and wa.weight[e] == -1}
        for edges in report.cycle_classes:
            class_graph = reduced.edge_subgraph(edges)
            demand = ColouringPipeline.class_demand(class_graph, wa, report)
            if demand is None:
                ColouringPipeline._log_redistribution_failure(
                    'junction demand out of range',
                    cycle_class=[edge_to_string(e) for e in edges])
                return None

            solution = FlowSolver.degree_constrained_subgraph(
                class_graph, GraphUtils.bipartition(class_graph), demand,
                exact=True)
            if solution is None:
                ColouringPipeline._log_redistribution_failure(
                    'no degree-constrained subgraph',
                    cycle_class=[edge_to_string(e) for e in edges])
                return None
            red.update(solution.edges)

        return Colouring({
            e: Colour.Red if e in red else Colour.Blue for e in reduced.edges
        })

    @staticmethod
    def _cycle_order(g: Graph, edges: List[Edge]) -> List[str]:
        """
        Returns the vertices of a cycle in walking order from its
        smallest vertex, towards its smaller neighbour
        """
        cycle = g.edge_subgraph(edges)
        start = cycle.vertices[0]
        order = [start]
        previous = None
        current = start
        while True:
            step = next(w for w in cycle.neighbours(current) if w != previous)
            if step == start:
                break
            order.append(step)
            previous, current = current, step
        return order

    @staticmethod
    def redistribute_cactus_check(g: Graph, wa: WeightAssignment) -> bool:
        """
        Decides redistributability on a cactus from the weights alone.
        Along each cycle every vertex's weight over its two cycle edges
        must be -2, 0 or 2, and between consecutive non-zero vertices
        (counting both) the vertex count must be even for equal signs
        and odd for opposite signs.
        :raises NotCactusException
        :raises PreconditionException
        """
        if not StructureAnalyzer.is_cactus(g):
            raise NotCactusException('Graph is not a cactus')
        if not wa.is_total(g):
            raise PreconditionException('Weights do not cover the graph')

        cycles = StructureAnalyzer.common_cycle_classes(g)
        cyclic = {e for c in cycles for e in c}
        if ColouringPipeline._bridge_failure(g, wa, cyclic) is not None:
            return False

        for edges in cycles:
            order = ColouringPipeline._cycle_order(g, edges)
            size = len(order)
            sums = [
                wa.weight[edge_key(order[i - 1], order[i])]
                + wa.weight[edge_key(order[i], order[(i + 1) % size])]
                for i in range(size)
            ]
            if any(s not in (-2, 0, 2) for s in sums):
                return False
            marked = [i for i in range(size) if sums[i]]
            for index, i in enumerate(marked):
                j = marked[(index + 1) % len(marked)]
                count = (j - i) % size + 1 if j != i else size + 1
                if (count % 2 == 0) != (sums[i] == sums[j]):
                    return False
        return True

    @staticmethod
    def _decide_component(g: Graph) -> Decision:
        report = StructureAnalyzer.analyze(g)
        if report.skeleton is None:
            return ColouringPipeline.decide_tree(g)

        decision = ColouringPipeline._structure_certificate(report)
        if decision is not None:
            return decision

        result, wa = ColouringPipeline.assign_weights(
            report.reduced_form, report)
        if not result:
            return Decision.not_colourable(
                Certificate.JunctionSumViolation, {
                    'junction_sums': {j: s for j, s in
                                      sorted(wa.junction_sums.items())
                                      if s != 1}
                })

        colouring = ColouringPipeline.redistribute(
            report.reduced_form, wa, report)
        if colouring is None:
            return Decision.not_colourable(
                Certificate.RedistributionFailure,
                {'surplus_edges': [edge_to_string(e)
                                   for e in wa.surplus_edges()]})

        return Decision.colourable_with(
            ColouringPipeline.extend_colouring(colouring, report.removed))

    @staticmethod
    def decide_difference1(g: Graph) -> Decision:
        """
        Decides difference-1 colourability, returning a colouring or a
        certificate. Components are decided independently.
        """
        decision = ColouringPipeline._candidate_certificate(g)
        if decision is not None:
            return decision

        colouring = Colouring({})
        for component in GraphUtils.components(g):
            decision = ColouringPipeline._decide_component(component)
            if not decision.colourable:
                decision.detail.setdefault('component', component.vertices[0])
                return decision
            colouring = colouring.merged(decision.colouring)
        return Decision.colourable_with(colouring)

    @staticmethod
    def construct_colouring(g: Graph) -> Colouring:
        """
        Returns a difference-1 colouring of g
        :raises NotColourableException
        """
        decision = ColouringPipeline.decide_difference1(g)
        if not decision.colourable:
            raise NotColourableException(
                'Graph has no difference-1 colouring ({})'.format(
                    decision.certificate.to_string()))
        return decision.colouring

    @staticmethod
    def decide_difference_k_decision(g: Graph, k: int) -> Decision:
        """
        Decides difference-k colourability. k = 1 runs the full
        difference-1 pipeline, other values use degree-constrained
        subgraphs (or cycle decomposition for k = 0).
        :raises PreconditionException
        """
        if k < 0:
            raise PreconditionException(
                'Difference must be non-negative, got {}'.format(k))
        if k == 1:
            return ColouringPipeline.decide_difference1(g)

        try:
            GraphUtils.bipartition(g)
        except OddCycleException as e:
            return Decision.not_colourable(
                Certificate.NotBipartite, {'odd_cycle': e.witness})

        for v in g.vertices:
            surplus = g.degree(v) - k
            if surplus < 0 or surplus % 2:
                return Decision.not_colourable(
                    Certificate.DegreeParityViolation,
                    {'vertex': v, 'degree': g.degree(v), 'k': k})

        colouring = (FlowSolver.decide_difference_0(g) if k == 0
                     else FlowSolver.decide_difference_k(g, k))
        if colouring is None:
            return Decision.not_colourable(
                Certificate.MultimatchingViolation, {'k': k})
        return Decision.colourable_with(colouring)
