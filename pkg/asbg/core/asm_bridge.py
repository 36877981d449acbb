"""
Alternating sign matrices and their signed bipartite graphs
"""

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import (
    Iterator,
    List,
    Optional,
    Sequence,
    Tuple,
    Union
)

import numpy as np

from .enums import Colour
from .exceptions import (
    BudgetExceededException,
    MatrixFormatException,
    NotAnAsmException,
    OrderMismatchException,
    PreconditionException
)
from .graph import (
    Colouring,
    ColouredGraph,
    Graph,
    edge_key
)
from .logger import Logger
from .meta import PACKAGE_METADATA_PARSER

ColumnState = Tuple[int, ...]


@dataclass(frozen=True)
class SignMatrix:
    """
    A rectangular matrix with entries in {-1, 0, 1}
    """

    entries: Tuple[Tuple[int, ...], ...]

    @staticmethod
    def create(rows: Sequence[Sequence[int]]) -> 'SignMatrix':
        """
        Creates a sign matrix, validating its shape and entries
        :raises MatrixFormatException
        """
        rows = [list(row) for row in rows]
        if not rows or not rows[0]:
            raise MatrixFormatException('Matrix must be at least 1x1')
        width = len(rows[0])
        for i, row in enumerate(rows):
            if len(row) != width:
                raise MatrixFormatException(
                    'Row {} has {} entries, expected {}'.format(
                        i + 1, len(row), width))
            for value in row:
                if isinstance(value, bool) or value not in (-1, 0, 1):
                    raise MatrixFormatException(
                        'Invalid entry {!r} in row {}'.format(value, i + 1))
        return SignMatrix(tuple(tuple(int(v) for v in row) for row in rows))

    @staticmethod
    def identity(n: int) -> 'SignMatrix':
        """
        Returns the n x n identity matrix
        """
        return SignMatrix.create(np.eye(n, dtype=int).tolist())

    @property
    def shape(self) -> Tuple[int, int]:
        """
        Returns (rows, columns)
        """
        return len(self.entries), len(self.entries[0])

    def to_numpy(self) -> np.ndarray:
        """
        Returns the entries as an integer array
        """
        return np.array(self.entries, dtype=int)

    def to_json(self) -> List[List[int]]:
        """
        Returns the matrix as nested lists
        """
        return [list(row) for row in self.entries]

    @staticmethod
    def from_json(jsons: Union[str, List]) -> 'SignMatrix':
        """
        Creates a matrix from a JSON string or nested lists
        :raises MatrixFormatException
        """
        if isinstance(jsons, str):
            try:
                jsons = json.loads(jsons)
            except json.JSONDecodeError as e:
                raise MatrixFormatException(
                    'Malformed JSON: {}'.format(e)) from e
        if not isinstance(jsons, list) or not all(
                isinstance(row, list) for row in jsons):
            raise MatrixFormatException('Matrix must be an array of arrays')
        return SignMatrix.create(jsons)


class AsmBridge:
    """
    Conversions between alternating sign matrices and coloured graphs
    """

    @staticmethod
    def row_vertex(i: int) -> str:
        """
        Returns the vertex id of row i (0 based)
        """
        return 'r{}'.format(i + 1)

    @staticmethod
    def column_vertex(j: int) -> str:
        """
        Returns the vertex id of column j (0 based)
        """
        return 'c{}'.format(j + 1)

    @staticmethod
    def natural_orders(m: SignMatrix) -> Tuple[List[str], List[str]]:
        """
        Returns the row and column vertex orders matching m's layout
        """
        rows, columns = m.shape
        return (
            [AsmBridge.row_vertex(i) for i in range(rows)],
            [AsmBridge.column_vertex(j) for j in range(columns)]
        )

    @staticmethod
    def is_asm(m: SignMatrix) -> bool:
        """
        Returns True if every row and column sums to 1 with alternating
        non-zero entries.

        With entries in {-1, 0, 1}, alternation starting from +1 is the
        same as every prefix sum lying in {0, 1}.
        """
        arr = m.to_numpy()
        for axis in (0, 1):
            prefix = np.cumsum(arr, axis=axis)
            if not np.isin(prefix, (0, 1)).all():
                return False
            totals = prefix[-1, :] if axis == 0 else prefix[:, -1]
            if not (totals == 1).all():
                return False
        return True

    @staticmethod
    def asm_to_asbg(m: SignMatrix) -> ColouredGraph:
        """
        Builds the signed bipartite graph of an ASM: row vertex ri is
        joined to column vertex cj when m[i][j] is non-zero, blue for +1
        and red for -1
        :raises NotAnAsmException
        """
        if not AsmBridge.is_asm(m):
            raise NotAnAsmException('Matrix is not an alternating sign matrix')

        rows, columns = AsmBridge.natural_orders(m)
        colours = {}
        for i, row in enumerate(m.entries):
            for j, value in enumerate(row):
                if value:
                    colours[edge_key(rows[i], columns[j])] = (
                        Colour.Blue if value > 0 else Colour.Red)

        graph = Graph.create(rows + columns, list(colours))
        return ColouredGraph.create(graph, Colouring(colours))

    @staticmethod
    def asbg_to_asm(cg: ColouredGraph, row_order: Sequence[str],
                    col_order: Sequence[str]) -> SignMatrix:
        """
        Builds the sign matrix of a coloured graph: entry (i, j) is +1
        for a blue edge, -1 for a red edge and 0 otherwise.

        row_order and col_order must list the two sides of a
        bipartition of the graph.
        :raises OrderMismatchException
        :raises PreconditionException
        """
        AsmBridge._check_orders(cg.graph, row_order, col_order)
        isolated = [v for v in cg.graph.vertices if cg.graph.degree(v) == 0]
        if isolated:
            raise PreconditionException(
                'Isolated vertices have no matrix line: {}'.format(
                    ', '.join(isolated)))

        entries = np.zeros((len(row_order), len(col_order)), dtype=int)
        col_index = {v: j for j, v in enumerate(col_order)}
        for i, u in enumerate(row_order):
            for w in cg.graph.neighbours(u):
                entries[i, col_index[w]] = cg.colouring[(u, w)].sign()
        return SignMatrix.create(entries.tolist())

    @staticmethod
    def _check_orders(g: Graph, row_order: Sequence[str],
                      col_order: Sequence[str]):
        """
        Checks that the orders partition V(g) with every edge crossing
        """
        rows = set(row_order)
        columns = set(col_order)
        if len(rows) != len(row_order) or len(columns) != len(col_order):
            raise OrderMismatchException('Vertex orders contain duplicates')
        if rows & columns:
            raise OrderMismatchException(
                'Vertex orders overlap: {}'.format(
                    ', '.join(sorted(rows & columns))))
        if rows | columns != set(g.vertices):
            raise OrderMismatchException(
                'Vertex orders do not cover the graph vertices')
        for u, v in g.edges:
            if (u in rows) == (v in rows):
                raise OrderMismatchException(
                    'Edge {}-{} does not join the two orders'.format(u, v))

    @staticmethod
    def _check_order(n: int, max_order: Optional[int]) -> int:
        if n < 1:
            raise PreconditionException(
                'Matrix order must be positive, got {}'.format(n))
        limit = max_order
        if limit is None:
            limit = PACKAGE_METADATA_PARSER.get_int_property('asm_max_order')
        if n > limit:
            Logger.instance().log_error_json({
                'type': Logger.ORACLE_BUDGET,
                'limit': 'asm_max_order',
                'value': n
            })
            raise BudgetExceededException(
                'ASM enumeration is limited to order {}'.format(limit),
                'asm_max_order')
        return n

    @staticmethod
    def _rows(state: ColumnState) -> List[Tuple[Tuple[int, ...], ColumnState]]:
        """
        Returns every row compatible with the column partial sums, with
        the column state it leads to.

        Both the row prefix sums and the column partial sums stay in
        {0, 1}, and each row sums to 1.
        """
        res = []

        def extend(j: int, prefix: int, row: List[int], columns: List[int]):
            if j == len(state):
                if prefix == 1:
                    res.append((tuple(row), tuple(columns)))
                return
            for value in (1, 0, -1):
                column_sum = state[j] + value
                row_sum = prefix + value
                if column_sum not in (0, 1) or row_sum not in (0, 1):
                    continue
                row.append(value)
                columns.append(column_sum)
                extend(j + 1, row_sum, row, columns)
                row.pop()
                columns.pop()

        extend(0, 0, [], [])
        return res

    @staticmethod
    def count_asms(n: int, max_order: Optional[int] = None) -> int:
        """
        Counts the n x n alternating sign matrices by row-by-row
        backtracking over column partial sums
        :raises BudgetExceededException
        :raises PreconditionException
        """
        AsmBridge._check_order(n, max_order)

        @lru_cache(maxsize=None)
        def count(remaining: int, state: ColumnState) -> int:
            if remaining == 0:
                return 1
            return sum(count(remaining - 1, next_state)
                       for _, next_state in AsmBridge._rows(state))

        return count(n, (0,) * n)

    @staticmethod
    def enumerate_asms(n: int, max_order: Optional[int] = None
                       ) -> Iterator[SignMatrix]:
        """
        Yields every n x n alternating sign matrix, in lexicographically
        decreasing order of rows
        :raises BudgetExceededException
        :raises PreconditionException
        """
        AsmBridge._check_order(n, max_order)
        row_cache = {}

        def rows_for(state: ColumnState):
            if state not in row_cache:
                row_cache[state] = AsmBridge._rows(state)
            return row_cache[state]

        def extend(prefix: List[Tuple[int, ...]], state: ColumnState):
            if len(prefix) == n:
                yield SignMatrix(tuple(prefix))
                return
            for row, next_state in rows_for(state):
                prefix.append(row)
                yield from extend(prefix, next_state)
                prefix.pop()

        yield from extend([], (0,) * n)

    @staticmethod
    def matrix_from_text(text: str) -> SignMatrix:
        """
        Parses whitespace separated rows of entries in {-1, 0, 1}
        :raises MatrixFormatException
        """
        rows = []
        for line in text.splitlines():
            if not line.strip():
                continue
            try:
                rows.append([int(token) for token in line.split()])
            except ValueError as e:
                raise MatrixFormatException(
                    'Invalid matrix entry: {}'.format(e)) from e
        return SignMatrix.create(rows)

    @staticmethod
    def matrix_to_text(m: SignMatrix) -> str:
        """
        Formats a matrix as whitespace separated rows
        """
        return '\n'.join(
            ' '.join(str(v) for v in row) for row in m.entries) + '\n'
