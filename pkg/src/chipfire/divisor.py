"""Divisor arithmetic, principal divisors, firing scripts, and linear equivalence.

A divisor is an integer-valued function on the vertices of one fixed graph;
a firing script is an integer level function on the same vertices.  Firing
the script moves chips along every edge according to the level difference
of its endpoints, which realises the graph Laplacian.  Two divisors are
linearly equivalent when their difference is such a script image.

Everything here is exact: equivalence is decided by rational elimination on
the reduced Laplacian followed by an integrality check, deliberately
independent of the Dhar machinery in :mod:`chipfire.reduction` so the two
can cross-check each other.
"""

from __future__ import annotations

import operator
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

from .errors import DomainError, GraphError, InternalError
from .graph import Graph, HatEmbedding

Values = Union[Mapping[str, int], Sequence[int]]


def _coerce_values(graph: Graph, values: Values) -> tuple[int, ...]:
    n = graph.vertex_count
    if isinstance(values, Mapping):
        out = [0] * n
        for key, val in values.items():
            out[graph.index(key)] = operator.index(val)
        return tuple(out)
    seq = [operator.index(v) for v in values]
    if len(seq) != n:
        raise DomainError(f"expected {n} values, got {len(seq)}")
    return tuple(seq)


def _same_graph(a: "_VertexMap", b: "_VertexMap") -> Graph:
    if a.graph is not b.graph and a.graph != b.graph:
        raise DomainError("operands are bound to different graphs")
    return a.graph


class _VertexMap:
    """Shared mechanics for integer functions on the vertices of one graph."""

    __slots__ = ("_graph", "_values")

    def __init__(self, graph: Graph, values: Values | None = None):
        if not isinstance(graph, Graph):
            raise DomainError(f"expected a Graph, got {type(graph).__name__}")
        self._graph = graph
        self._values = (
            (0,) * graph.vertex_count if values is None else _coerce_values(graph, values)
        )

    @property
    def graph(self) -> Graph:
        return self._graph

    @property
    def values(self) -> tuple[int, ...]:
        return self._values

    def __getitem__(self, vertex: str) -> int:
        return self._values[self._graph.index(vertex)]

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self._graph.vertex_ids, self._values))

    def nonzero_items(self) -> tuple[tuple[str, int], ...]:
        return tuple(
            (v, x) for v, x in zip(self._graph.vertex_ids, self._values) if x
        )

    def __eq__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        return self._graph == other._graph and self._values == other._values

    def __hash__(self):
        return hash((type(self).__name__, self._graph, self._values))

    def __repr__(self):
        body = ", ".join(f"{v}={x}" for v, x in zip(self._graph.vertex_ids, self._values))
        return f"{type(self).__name__}({body})"


class Divisor(_VertexMap):
    """An integer chip configuration on the vertices of a graph."""

    @property
    def degree(self) -> int:
        return sum(self._values)

    @property
    def is_effective(self) -> bool:
        return all(v >= 0 for v in self._values)

    def contains(self, other: "Divisor") -> bool:
        """True when both divisors are effective and self - other is too."""
        _same_graph(self, other)
        return (
            self.is_effective
            and other.is_effective
            and all(a >= b for a, b in zip(self._values, other._values))
        )

    def __add__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        g = _same_graph(self, other)
        return Divisor(g, [a + b for a, b in zip(self._values, other._values)])

    def __sub__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        g = _same_graph(self, other)
        return Divisor(g, [a - b for a, b in zip(self._values, other._values)])

    def __neg__(self):
        return Divisor(self._graph, [-a for a in self._values])

    def __mul__(self, scalar):
        scalar = operator.index(scalar)
        return Divisor(self._graph, [scalar * a for a in self._values])

    __rmul__ = __mul__


class FiringScript(_VertexMap):
    """Integer firing levels per vertex; defined up to an additive constant."""

    @property
    def levels(self) -> tuple[int, ...]:
        return self._values

    def normalized(self) -> "FiringScript":
        """The equivalent script with minimum level zero (the canonical form)."""
        lo = min(self._values)
        if lo == 0:
            return self
        return FiringScript(self._graph, [v - lo for v in self._values])

    def __add__(self, other):
        if not isinstance(other, FiringScript):
            return NotImplemented
        g = _same_graph(self, other)
        return FiringScript(g, [a + b for a, b in zip(self._values, other._values)])

    def __neg__(self):
        return FiringScript(self._graph, [-a for a in self._values])


# -- principal divisors ----------------------------------------------------


def _laplacian_image(graph: Graph, levels: Sequence[int]) -> list[int]:
    out = [0] * graph.vertex_count
    for i in range(graph.vertex_count):
        xi = levels[i]
        for j, mult in graph._adj_items[i]:
            out[i] += mult * (levels[j] - xi)
    return out


def apply_script(script: FiringScript) -> Divisor:
    """The degree-zero divisor produced by firing every vertex its level's
    number of times; invariant under adding a constant to the script."""
    return Divisor(script.graph, _laplacian_image(script.graph, script.levels))


def fire_set(graph: Graph, vertices: Iterable[str]) -> Divisor:
    """The principal divisor of firing a vertex set once.

    Each vertex of the set sends one chip along each edge leaving the set,
    so members lose their edge count to the complement and outsiders gain
    their edge count into the set.  Firing the empty set or all of V gives
    the zero divisor.
    """
    indicator = [0] * graph.vertex_count
    for v in vertices:
        indicator[graph.index(v)] = 1
    return Divisor(graph, _laplacian_image(graph, indicator))


def _reduced_inverse(graph: Graph):
    """Exact inverse of the Laplacian with the last vertex's row and column
    deleted; invertible precisely because the graph is connected.  Cached on
    the graph.  Entries are Fractions with denominator dividing the number
    of spanning trees."""
    cached = graph._lap_inverse
    if cached is not None:
        return cached
    graph.require_connected("principal-divisor solving")
    m = graph.vertex_count - 1
    lap = graph.laplacian()
    work = [
        [Fraction(lap[i][j]) for j in range(m)]
        + [Fraction(1 if j == i else 0) for j in range(m)]
        for i in range(m)
    ]
    for col in range(m):
        pivot = next((r for r in range(col, m) if work[r][col]), None)
        if pivot is None:
            raise InternalError("reduced Laplacian is singular on a connected graph")
        work[col], work[pivot] = work[pivot], work[col]
        inv = 1 / work[col][col]
        work[col] = [x * inv for x in work[col]]
        for r in range(m):
            if r != col and work[r][col]:
                factor = work[r][col]
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    inverse = tuple(tuple(row[m:]) for row in work)
    graph._lap_inverse = inverse
    return inverse


def principal_script(divisor: Divisor) -> Optional[FiringScript]:
    """The canonical (minimum level zero) script whose firing produces the
    divisor, or None when the divisor is not principal.

    Solves the reduced system obtained by deleting the last vertex, extends
    by zero, and accepts exactly when the rational solution is integral.
    """
    graph = divisor.graph
    graph.require_connected("principal_script")
    if divisor.degree != 0:
        return None
    n = graph.vertex_count
    if n == 1:
        return FiringScript(graph, (0,))
    inverse = _reduced_inverse(graph)
    rhs = divisor.values[: n - 1]
    levels = []
    for row in inverse:
        x = sum(c * r for c, r in zip(row, rhs) if r)
        if x.denominator != 1:
            return None
        levels.append(int(x))
    levels.append(0)
    script = FiringScript(graph, levels).normalized()
    if _laplacian_image(graph, script.levels) != list(divisor.values):
        raise InternalError("principal-divisor solve failed verification")
    return script


def equivalence_script(d1: Divisor, d2: Divisor) -> Optional[FiringScript]:
    """A script x with d1 = d2 + firing(x), or None when d1 and d2 are not
    linearly equivalent."""
    _same_graph(d1, d2)
    return principal_script(d1 - d2)


def equivalent(d1: Divisor, d2: Divisor) -> bool:
    return equivalence_script(d1, d2) is not None


def layer_decomposition(divisor: Divisor) -> tuple[frozenset[str], ...]:
    """Decompose a nonzero principal divisor as the level sets of its
    canonical script: firing level-set i exactly i times reproduces it.

    The first and last sets are nonempty; intermediate sets may be empty.
    """
    script = principal_script(divisor)
    if script is None:
        raise DomainError("divisor is not principal")
    levels = script.levels
    top = max(levels)
    if top == 0:
        raise DomainError("layer decomposition is undefined for the zero divisor")
    ids = divisor.graph.vertex_ids
    return tuple(
        frozenset(v for v, lv in zip(ids, levels) if lv == i) for i in range(top + 1)
    )


# -- degree/rank scalar maps ------------------------------------------------


def degree_for_rank(rank: int, genus: int) -> int:
    """Minimum degree forcing rank ``rank`` on a genus-``genus`` component:
    rank + min(rank, genus)."""
    rank = operator.index(rank)
    genus = operator.index(genus)
    if rank < 0 or genus < 0:
        raise DomainError("degree_for_rank needs non-negative arguments")
    return rank + min(rank, genus)


def rank_for_degree(degree: int, genus: int) -> int:
    """Maximum rank attainable in degree ``degree`` on a genus-``genus``
    component: max(degree - genus, floor(degree / 2))."""
    degree = operator.index(degree)
    genus = operator.index(genus)
    if degree < 0 or genus < 0:
        raise DomainError("rank_for_degree needs non-negative arguments")
    return max(degree - genus, degree // 2)


def degree_demand(divisor: Divisor) -> Divisor:
    """Pointwise degree_for_rank against each vertex's local genus.

    On a weightless loopless graph this is the identity.
    """
    if not divisor.is_effective:
        raise DomainError("degree_demand is defined for effective divisors only")
    g = divisor.graph
    return Divisor(
        g,
        [degree_for_rank(x, g.local_genus(v)) for v, x in zip(g.vertex_ids, divisor.values)],
    )


def rank_capacity(divisor: Divisor) -> Divisor:
    """Pointwise rank_for_degree against each vertex's local genus."""
    if not divisor.is_effective:
        raise DomainError("rank_capacity is defined for effective divisors only")
    g = divisor.graph
    return Divisor(
        g,
        [rank_for_degree(x, g.local_genus(v)) for v, x in zip(g.vertex_ids, divisor.values)],
    )


def rank_lower_bound(divisor: Divisor) -> int:
    """-1 for non-effective divisors, else the minimum of rank_capacity.

    Always a valid lower bound for the combinatorial rank.
    """
    if not divisor.is_effective:
        return -1
    return min(rank_capacity(divisor).values)


def lift_divisor(embedding: HatEmbedding, divisor: Divisor) -> Divisor:
    """Carry a divisor to the hat graph: unchanged on original vertices,
    zero on every fresh vertex.  Degree is preserved."""
    if divisor.graph is not embedding.source and divisor.graph != embedding.source:
        raise DomainError("divisor is not bound to the embedding's source graph")
    if embedding.is_trivial:
        return divisor
    extra = embedding.target.vertex_count - embedding.source.vertex_count
    return Divisor(embedding.target, divisor.values + (0,) * extra)


# -- enumeration -------------------------------------------------------------


def iter_effective_values(degree: int, size: int) -> Iterator[tuple[int, ...]]:
    """All non-negative integer tuples of the given length and sum, in
    lexicographic order; the count is C(degree + size - 1, size - 1)."""
    if size < 1:
        if degree == 0:
            yield ()
        return
    if size == 1:
        yield (degree,)
        return
    for first in range(degree + 1):
        for rest in iter_effective_values(degree - first, size - 1):
            yield (first,) + rest
