"""
DOT export of coloured graphs and configurations
"""

import json
from typing import (
    List,
    Optional,
    Sequence
)

from .graph import (
    ColouredGraph,
    Graph
)


class DotExporter:
    """
    Writes graphs in the DOT language, one rank per bipartition line
    """

    @staticmethod
    def _quote(name: str) -> str:
        return json.dumps(name)

    @staticmethod
    def _line(vertices: Sequence[str]) -> List[str]:
        """
        A same-rank group, chained by invisible edges to keep its order
        """
        if not vertices:
            return []
        quoted = [DotExporter._quote(v) for v in vertices]
        res = ['  {{ rank=same; {}; }}'.format('; '.join(quoted))]
        for a, b in zip(quoted, quoted[1:]):
            res.append('  {} -- {} [style=invis];'.format(a, b))
        return res

    @staticmethod
    def graph(g: Graph) -> str:
        """
        Returns an uncoloured graph as DOT
        """
        res = ['graph G {']
        for v in g.vertices:
            res.append('  {};'.format(DotExporter._quote(v)))
        for u, v in g.edges:
            res.append('  {} -- {};'.format(
                DotExporter._quote(u), DotExporter._quote(v)))
        res.append('}')
        return '\n'.join(res) + '\n'

    @staticmethod
    def coloured_graph(cg: ColouredGraph,
                       order1: Optional[Sequence[str]] = None,
                       order2: Optional[Sequence[str]] = None) -> str:
        """
        Returns a coloured graph as DOT, the two parts on two ranks in
        the given orders (sorted when omitted) and edges coloured
        blue or red
        """
        res = ['graph G {', '  node [shape=circle];']
        res.extend(DotExporter._line(
            list(order1) if order1 is not None
            else sorted(cg.bipartition.part1)))
        res.extend(DotExporter._line(
            list(order2) if order2 is not None
            else sorted(cg.bipartition.part2)))
        for e, colour in cg.colouring.items():
            res.append('  {} -- {} [color={}];'.format(
                DotExporter._quote(e[0]), DotExporter._quote(e[1]),
                colour.to_string()))
        res.append('}')
        return '\n'.join(res) + '\n'

    @staticmethod
    def configuration(cg: ColouredGraph, configuration) -> str:
        """
        Returns a configured coloured graph as DOT, reproducing the
        two-line drawing of the configuration
        """
        return DotExporter.coloured_graph(
            cg, configuration.order1, configuration.order2)
