"""Dhar burning, reduced divisors, and graph saturation.

Reducedness ignores weights and loops entirely: the burning game is played
on the loop-stripped weightless graph, which has the same principal
divisors.  A divisor is reduced with respect to a base vertex u when it is
effective away from u and the fire started at u consumes every vertex.
Every divisor class has exactly one u-reduced representative, which is what
makes a single burn-and-check decide equivalence to an effective divisor.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DisconnectedError, DomainError, InternalError
from .divisor import Divisor, FiringScript
from .graph import Graph


@dataclass(frozen=True)
class DharDecomposition:
    """Ordered burned layers plus the unburned remainder.

    ``layers[0]`` is the singleton base vertex; ``layers[j]`` holds the
    vertices burned on day j, i.e. those whose chip count is smaller than
    their edge count into the already-burned region.  ``unburned`` is empty
    exactly when the divisor is reduced with respect to the base.
    """

    layers: tuple[frozenset[str], ...]
    unburned: frozenset[str]

    @property
    def is_reduced(self) -> bool:
        return not self.unburned

    @property
    def burned(self) -> frozenset[str]:
        out: set[str] = set()
        for layer in self.layers:
            out |= layer
        return frozenset(out)


def _dhar_indices(
    graph: Graph, values: list[int], base: int
) -> tuple[list[tuple[int, ...]], tuple[int, ...]]:
    """Run the burning game from ``base``; loops and weights play no part.

    Returns the layers (day 0 is the base alone) and the unburned vertices,
    all as index tuples.  ``values`` is read, never written.
    """
    n = graph.vertex_count
    adj_items = graph._adj_items
    burned = [False] * n
    burned[base] = True
    mass = [0] * n  # edges from each vertex into the burned region
    for w, mult in adj_items[base]:
        mass[w] += mult
    layers: list[tuple[int, ...]] = [(base,)]
    remaining = n - 1
    while remaining:
        newly = [v for v in range(n) if not burned[v] and values[v] < mass[v]]
        if not newly:
            break
        for v in newly:
            burned[v] = True
            for w, mult in adj_items[v]:
                mass[w] += mult
        layers.append(tuple(newly))
        remaining -= len(newly)
    unburned = tuple(v for v in range(n) if not burned[v])
    return layers, unburned


def _burn(graph: Graph, values: list[int], base: int) -> tuple[int, ...]:
    """The unburned remainder of the game, without layer bookkeeping."""
    adj_items = graph._adj_items
    mass = [0] * graph.vertex_count
    for w, mult in adj_items[base]:
        mass[w] += mult
    alive = [v for v in range(graph.vertex_count) if v != base]
    while alive:
        newly = [v for v in alive if values[v] < mass[v]]
        if not newly:
            break
        if len(newly) == len(alive):
            return ()
        survivors = [v for v in alive if values[v] >= mass[v]]
        for v in newly:
            for w, mult in adj_items[v]:
                mass[w] += mult
        alive = survivors
    return tuple(alive)


def _fire_indices(graph: Graph, values: list[int], members: tuple[int, ...], times: int = 1) -> None:
    """Fire a vertex set in place: each member sends ``times`` chips along
    every edge leaving the set."""
    inside = set(members)
    for v in members:
        for w, mult in graph._adj_items[v]:
            if w not in inside:
                values[v] -= mult * times
                values[w] += mult * times


def _reduce_indices(
    graph: Graph, values: list[int], base: int
) -> tuple[list[int], list[int]]:
    """Transform ``values`` into the unique base-reduced representative.

    Phase 1 clears negativity away from the base by firing BFS-ball
    prefixes: firing all vertices within distance i-1 raises every vertex
    at distance i by its edge count to the previous shell (at least 1) and
    cannot touch deeper shells, so one bottom-up pass suffices.  Phase 2
    repeatedly fires the unburned set of the Dhar game until it is empty;
    surviving the burn means a vertex keeps at least as many chips as it
    sends out, so effectivity off the base is preserved.

    Returns the reduced values and the accumulated firing levels (not yet
    normalized).  Mutates and returns ``values``.
    """
    n = graph.vertex_count
    levels = [0] * n
    if n == 1:
        return values, levels
    adj_items = graph._adj_items

    guard_scale = abs(sum(values)) + 2 * graph.edge_count + sum(map(abs, values))
    guard = n * guard_scale * guard_scale + 16

    needs_clearing = False
    for v in range(n):
        if values[v] < 0 and v != base:
            needs_clearing = True
            break
    if needs_clearing:
        dist = [-1] * n
        dist[base] = 0
        queue = [base]
        for v in queue:
            for w, _ in adj_items[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        shells: list[list[int]] = [[] for _ in range(max(dist) + 1)]
        for v in range(n):
            shells[dist[v]].append(v)
        for i in range(len(shells) - 1, 0, -1):
            need = 0
            for v in shells[i]:
                if values[v] < 0:
                    inflow = sum(
                        mult for w, mult in adj_items[v] if dist[w] == i - 1
                    )
                    need = max(need, (-values[v] + inflow - 1) // inflow)
            if need == 0:
                continue
            # Only edges between shells i-1 and i cross the fired prefix.
            for v in shells[i - 1]:
                for w, mult in adj_items[v]:
                    if dist[w] == i:
                        values[v] -= mult * need
                        values[w] += mult * need
            for shell in shells[:i]:
                for v in shell:
                    levels[v] += need

    rounds = 0
    while True:
        unburned = _burn(graph, values, base)
        if not unburned:
            break
        rounds += 1
        if rounds > guard:
            raise InternalError("reduction did not terminate within its step guard")
        _fire_indices(graph, values, unburned)
        for v in unburned:
            levels[v] += 1
    return values, levels


def _checked_base(divisor: Divisor, base: str, operation: str) -> int:
    graph = divisor.graph
    graph.require_connected(operation)
    return graph.index(base)


def dhar(divisor: Divisor, base: str) -> DharDecomposition:
    """The burning decomposition of the vertex set from ``base``.

    Requires the divisor to be effective away from the base.  The result
    depends only on the loop-stripped weightless graph.
    """
    graph = divisor.graph
    u = _checked_base(divisor, base, "dhar")
    for v, x in zip(graph.vertex_ids, divisor.values):
        if x < 0 and graph.index(v) != u:
            raise DomainError(f"divisor is negative at {v!r}; only the base may be negative")
    layers, unburned = _dhar_indices(graph, list(divisor.values), u)
    ids = graph.vertex_ids
    return DharDecomposition(
        layers=tuple(frozenset(ids[v] for v in layer) for layer in layers),
        unburned=frozenset(ids[v] for v in unburned),
    )


def is_reduced(divisor: Divisor, base: str) -> bool:
    """True when the divisor is effective off the base and the burn from the
    base consumes the whole graph."""
    graph = divisor.graph
    u = _checked_base(divisor, base, "is_reduced")
    if any(x < 0 for v, x in enumerate(divisor.values) if v != u):
        return False
    return not _burn(graph, list(divisor.values), u)


def reduce_divisor(divisor: Divisor, base: str) -> tuple[Divisor, FiringScript]:
    """The unique base-reduced representative of the divisor's class, with
    the canonical script carrying the input to it.

    Idempotent: reducing an already reduced divisor returns it unchanged
    together with the zero script.
    """
    graph = divisor.graph
    u = _checked_base(divisor, base, "reduce_divisor")
    values, levels = _reduce_indices(graph, list(divisor.values), u)
    return Divisor(graph, values), FiringScript(graph, levels).normalized()


def saturate(divisor: Divisor, base: str) -> tuple[Graph, int]:
    """Add edges at the base until the divisor becomes base-reduced.

    Uses the deterministic recipe: for every unburned vertex w of the burn
    from the base, add d(w) parallel edges between w and the base, and
    repeat until the burn consumes everything (one round suffices on a
    connected graph).  Returns the saturated graph and the number of added
    edges counted with multiplicity.  Minimal saturations are not sought.
    """
    graph = divisor.graph
    u = _checked_base(divisor, base, "saturate")
    for v, x in zip(graph.vertex_ids, divisor.values):
        if x < 0 and v != base:
            raise DomainError(f"divisor is negative at {v!r}; only the base may be negative")
    current = graph
    added = 0
    for _ in range(graph.vertex_count + 1):
        unburned = _burn(current, list(divisor.values), u)
        if not unburned:
            return current, added
        extra = []
        for v in unburned:
            mult = divisor.values[v]
            if mult > 0:
                extra.append((base, graph.vertex_ids[v], mult))
                added += mult
        current = current.with_extra_edges(extra)
    raise InternalError("saturation recipe failed to converge")


def is_saturation(original: Graph, candidate: Graph, divisor: Divisor, base: str) -> bool:
    """Check the three saturation conditions: the original is a spanning
    subgraph of the candidate, every extra edge touches the base, and the
    divisor is base-reduced on the candidate."""
    if divisor.graph != original:
        raise DomainError("divisor is not bound to the original graph")
    original.require_connected("is_saturation")
    if candidate.vertex_items != original.vertex_items:
        return False
    base_idx = original.index(base)
    for (a, b), mult in original.edge_items():
        if candidate.multiplicity(a, b) < mult:
            return False
    for (a, b), mult in candidate.edge_items():
        extra = mult - original.multiplicity(a, b)
        if extra < 0:
            return False
        if extra > 0 and base not in (a, b):
            return False
    rebound = Divisor(candidate, divisor.as_dict())
    if any(x < 0 for v, x in zip(candidate.vertex_ids, rebound.values) if v != base):
        return False
    return not _burn(candidate, list(rebound.values), base_idx)
