"""Exact combinatorial (Baker-Norine) rank with fast paths, bounds, and
conformance checks.

The rank of a divisor on an arbitrary weighted looped graph is defined as
the rank of its lift to the hat graph, where the classical definition
applies: the largest k such that subtracting any effective divisor of
degree k leaves something equivalent to an effective divisor.  Equivalence
to an effective divisor is decided by a single reduction at a fixed base
vertex (the first declared vertex): a class contains an effective divisor
exactly when its base-reduced representative is non-negative at the base.

The exhaustive search is exponential, so it is guarded by a candidate
budget and short-circuited by two exact fast paths: classes whose reduced
representative is negative at the base have rank -1, and effective
divisors reduced at a vertex of minimal rank capacity have rank equal to
that minimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .divisor import (
    Divisor,
    degree_for_rank,
    iter_effective_values,
    lift_divisor,
    rank_capacity,
    rank_for_degree,
    rank_lower_bound,
)
from .errors import BudgetError, DomainError, InternalError
from .graph import Graph, hat_graph, strip_weights_and_loops, subdivide_loops
from .reduction import _reduce_indices, is_reduced, is_saturation, reduce_divisor, saturate

DEFAULT_BUDGET = 10_000_000

METHOD_EXHAUSTIVE = "exhaustive"
METHOD_RANK_EXPLICIT = "rank-explicit"
METHOD_REDUCED_NEGATIVE = "reduced-negative"
METHOD_FORMULA = "formula"


@dataclass(frozen=True)
class RankResult:
    """Rank value, a certified failing witness, and the path that produced it.

    ``witness`` is the lexicographically smallest effective divisor of
    degree ``rank + 1`` on the graph the search ran on (the hat graph for
    weighted or looped input) such that subtracting it leaves a class with
    no effective representative.  For rank -1 it is the zero divisor.
    """

    rank: int
    witness: Optional[Divisor]
    method: str


def _require_weightless_loopless(graph: Graph, operation: str) -> None:
    if any(graph.weights) or any(graph.loop_count(v) for v in graph.vertex_ids):
        raise DomainError(f"{operation} is defined on weightless loopless graphs; use rank()")


def _level_count(k: int, n: int) -> int:
    return math.comb(k + n - 1, n - 1)


def _scan_level(
    graph: Graph, base_reduced: list[int], k: int, budget: int
) -> Optional[tuple[int, ...]]:
    """First (lex order) effective degree-k tuple e for which the class of
    the base-reduced values minus e has no effective representative."""
    n = graph.vertex_count
    count = _level_count(k, n)
    if count > budget:
        raise BudgetError(
            f"degree-{k} enumeration needs {count} candidates, over the budget of {budget}",
            count=count,
            budget=budget,
        )
    if sum(base_reduced) - k < 0:
        # every class at this level has negative degree, so every candidate
        # fails; the lex-smallest is all mass on the last vertex
        return (0,) * (n - 1) + (k,)
    for e in iter_effective_values(k, n):
        vals = [a - b for a, b in zip(base_reduced, e)]
        if min(vals) >= 0:
            continue  # already effective, nothing to decide
        reduced, _ = _reduce_indices(graph, vals, 0)
        if reduced[0] < 0:
            return e
    return None


def _certified_witness(
    graph: Graph, lifted_values: tuple[int, ...], base_reduced: list[int], value: int, budget: int
) -> Divisor:
    failing = _scan_level(graph, base_reduced, value + 1, budget)
    if failing is None:
        raise InternalError("no failing divisor found one degree above the computed rank")
    check = [a - b for a, b in zip(lifted_values, failing)]
    reduced, _ = _reduce_indices(graph, check, 0)
    if reduced[0] >= 0:
        raise InternalError("witness failed its certification re-run")
    return Divisor(graph, failing)


def rank(divisor: Divisor, *, budget: int = DEFAULT_BUDGET, exhaustive: bool = False) -> RankResult:
    """The combinatorial rank of a divisor on any connected graph.

    With ``exhaustive=True`` the fast paths are skipped and the definition
    is evaluated directly by incremental enumeration on the hat graph; the
    value is identical either way.  Raises BudgetError when the enumeration
    at some required degree exceeds ``budget`` candidates.
    """
    graph = divisor.graph
    graph.require_connected("rank")
    embedding = hat_graph(graph)
    hat = embedding.target
    lifted = lift_divisor(embedding, divisor)
    base_reduced, _ = _reduce_indices(hat, list(lifted.values), 0)

    if not exhaustive:
        if graph.vertex_count == 1:
            d0 = divisor.values[0]
            local = graph.local_genus(graph.vertex_ids[0])
            value = rank_for_degree(d0, local) if d0 >= 0 else -1
            witness = _certified_witness(hat, lifted.values, base_reduced, value, budget)
            return RankResult(value, witness, METHOD_FORMULA)
        if base_reduced[0] < 0:
            witness = _certified_witness(hat, lifted.values, base_reduced, -1, budget)
            return RankResult(-1, witness, METHOD_REDUCED_NEGATIVE)
        if divisor.is_effective and rank_explicit_vertex(divisor) is not None:
            value = rank_lower_bound(divisor)
            witness = _certified_witness(hat, lifted.values, base_reduced, value, budget)
            return RankResult(value, witness, METHOD_RANK_EXPLICIT)

    k = 0
    while True:
        failing = _scan_level(hat, base_reduced, k, budget)
        if failing is None:
            k += 1
            continue
        value = k - 1
        check = [a - b for a, b in zip(lifted.values, failing)]
        reduced, _ = _reduce_indices(hat, check, 0)
        if reduced[0] >= 0:
            raise InternalError("witness failed its certification re-run")
        return RankResult(value, Divisor(hat, failing), METHOD_EXHAUSTIVE)


def rank_geq(
    divisor: Divisor, k: int, *, budget: int = DEFAULT_BUDGET
) -> tuple[bool, Optional[Divisor]]:
    """Decide rank >= k on a weightless loopless connected graph.

    On failure, also return the lexicographically smallest effective
    degree-k divisor whose subtraction leaves no effective representative.
    """
    graph = divisor.graph
    _require_weightless_loopless(graph, "rank_geq")
    graph.require_connected("rank_geq")
    if k < 0:
        raise DomainError("rank_geq needs k >= 0")
    base_reduced, _ = _reduce_indices(graph, list(divisor.values), 0)
    failing = _scan_level(graph, base_reduced, k, budget)
    if failing is None:
        return True, None
    return False, Divisor(graph, failing)


def rank_explicit_vertices(divisor: Divisor) -> tuple[str, ...]:
    """All vertices certifying the divisor as rank-explicit.

    An effective divisor qualifies at u when it is u-reduced and its rank
    capacity at u attains the global minimum; its rank then equals that
    minimum.  A non-effective divisor qualifies only through the rank -1
    test: the base-reduced representative being negative at the base.
    """
    graph = divisor.graph
    graph.require_connected("rank_explicit_vertices")
    if divisor.is_effective:
        floor_value = rank_lower_bound(divisor)
        capacity = rank_capacity(divisor).values
        return tuple(
            v
            for i, v in enumerate(graph.vertex_ids)
            if capacity[i] == floor_value and is_reduced(divisor, v)
        )
    first = graph.vertex_ids[0]
    reduced, _ = reduce_divisor(divisor, first)
    return (first,) if reduced.values[0] < 0 else ()


def rank_explicit_vertex(divisor: Divisor) -> Optional[str]:
    """The first vertex (declaration order) certifying rank-explicitness,
    or None."""
    vertices = rank_explicit_vertices(divisor)
    return vertices[0] if vertices else None


def rank_lower_bound_certified(
    divisor: Divisor, r: int, *, budget: int = DEFAULT_BUDGET
) -> bool:
    """Certify rank >= r by the degree-demand test.

    True exactly when, for every effective divisor e of degree r on the
    original vertices, subtracting the pointwise degree demand of e leaves
    a divisor equivalent to an effective one (decided on the loop-stripped
    weightless graph, which has the same principal divisors).
    """
    if r < 0:
        raise DomainError("rank_lower_bound_certified needs r >= 0")
    graph = divisor.graph
    graph.require_connected("rank_lower_bound_certified")
    n = graph.vertex_count
    count = _level_count(r, n)
    if count > budget:
        raise BudgetError(
            f"degree-{r} enumeration needs {count} candidates, over the budget of {budget}",
            count=count,
            budget=budget,
        )
    local = [graph.local_genus(v) for v in graph.vertex_ids]
    dvals = divisor.values
    for e in iter_effective_values(r, n):
        vals = [dvals[i] - degree_for_rank(e[i], local[i]) for i in range(n)]
        if min(vals) >= 0:
            continue
        reduced, _ = _reduce_indices(graph, vals, 0)
        if reduced[0] < 0:
            return False
    return True


def saturation_bound(divisor: Divisor, base: str, saturation: Optional[Graph] = None) -> int:
    """Upper bound for the rank from a saturation at the base.

    With no saturation supplied, the deterministic recipe saturation is
    built; a supplied graph is validated first.  Returns the divisor's
    minimum value plus the number of added edges.
    """
    graph = divisor.graph
    _require_weightless_loopless(graph, "saturation_bound")
    graph.require_connected("saturation_bound")
    if not divisor.is_effective:
        raise DomainError("saturation_bound needs an effective divisor")
    floor_value = rank_lower_bound(divisor)
    if divisor[base] != floor_value:
        raise DomainError(
            f"base {base!r} has value {divisor[base]}, but the divisor's minimum is {floor_value}"
        )
    if saturation is None:
        _, added = saturate(divisor, base)
    else:
        if not is_saturation(graph, saturation, divisor, base):
            raise DomainError("supplied graph is not a saturation for this divisor and base")
        added = saturation.edge_count - graph.edge_count
    return floor_value + added


def riemann_roch_residual(divisor: Divisor, *, budget: int = DEFAULT_BUDGET) -> int:
    """rank(d) - rank(K - d) - (deg d - genus + 1); zero on every connected
    graph."""
    graph = divisor.graph
    graph.require_connected("riemann_roch_residual")
    direct = rank(divisor, budget=budget).rank
    residual_class = graph.canonical_divisor() - divisor
    dual = rank(residual_class, budget=budget).rank
    return direct - dual - (divisor.degree - graph.genus() + 1)


def clifford_check(divisor: Divisor, *, budget: int = DEFAULT_BUDGET) -> bool:
    """rank <= floor(degree / 2) whenever 0 <= degree <= 2*genus - 2 and the
    rank is non-negative; vacuously true otherwise."""
    graph = divisor.graph
    graph.require_connected("clifford_check")
    degree = divisor.degree
    if not 0 <= degree <= 2 * graph.genus() - 2:
        return True
    value = rank(divisor, budget=budget).rank
    if value < 0:
        return True
    return value <= degree // 2


def _binary_graph(genus: int) -> Graph:
    return Graph([("v1", 0), ("v2", 0)], [("v1", "v2", genus + 1)])


def binary_rank(genus: int, a: int, b: int, *, budget: int = DEFAULT_BUDGET) -> int:
    """Closed-form rank of the class of (a, b) on two vertices joined by
    genus + 1 parallel edges.

    Representatives shift by multiples of genus + 1 between the two
    coordinates.  With an effective representative normalized to
    0 <= a <= b, the rank is a when b <= genus and a + b - genus when
    b >= genus + 1; with no effective representative it is -1.  If the two
    case values ever disagreed across representatives the general engine
    would decide, but consistency is forced by Riemann-Roch.
    """
    if genus < 0:
        raise DomainError("binary_rank needs genus >= 0")
    period = genus + 1
    if a + b < 0:
        return -1
    shift_lo = -(b // period)
    shift_hi = a // period
    values = set()
    for shift in range(shift_lo, shift_hi + 1):
        x, y = a - shift * period, b + shift * period
        if x < 0 or y < 0:
            continue
        lo, hi = sorted((x, y))
        values.add(lo if hi <= genus else lo + hi - genus)
    if not values:
        return -1
    if len(values) == 1:
        return values.pop()
    return rank(Divisor(_binary_graph(genus), (a, b)), budget=budget).rank


def g0_comparison(divisor: Divisor, *, budget: int = DEFAULT_BUDGET) -> tuple[int, int]:
    """(rank on the loop-stripped weightless graph, rank on the graph itself).

    The first is always at least the second, and they are -1 together.
    """
    graph = divisor.graph
    graph.require_connected("g0_comparison")
    stripped = strip_weights_and_loops(graph)
    on_stripped = divisor if stripped is graph else Divisor(stripped, divisor.values)
    return (
        rank(on_stripped, budget=budget).rank,
        rank(divisor, budget=budget).rank,
    )


def bullet_rank_identity(divisor: Divisor, *, budget: int = DEFAULT_BUDGET) -> bool:
    """Rank is unchanged by subdividing every loop with a fresh vertex and
    extending the divisor by zero; returns the comparison outcome."""
    graph = divisor.graph
    graph.require_connected("bullet_rank_identity")
    subdivided, _ = subdivide_loops(graph)
    if subdivided is graph:
        return True
    extended = Divisor(subdivided, divisor.as_dict())
    return rank(extended, budget=budget).rank == rank(divisor, budget=budget).rank
