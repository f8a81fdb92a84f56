"""Deliberately naive brute-force oracles and pinned fixtures.

Everything here validates the main engine and therefore shares no code
with :mod:`chipfire.reduction` or :mod:`chipfire.rank`: rank is evaluated
straight from its definition with equivalence decided by the exact
Laplacian solver, and reducedness by enumerating every vertex subset.
Budgets are hard-coded and exceeding them is an error, never silent
truncation.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Mapping

from .divisor import (
    Divisor,
    _reduced_inverse,
    fire_set,
    iter_effective_values,
)
from .errors import BudgetError, DomainError, FixtureError
from .graph import Graph

BRUTE_RANK_MAX_VERTICES = 6
BRUTE_RANK_MAX_DEGREE = 8
BRUTE_REDUCED_MAX_VERTICES = 12


def _class_signature(graph: Graph, values: list[int]):
    """Fractional part of the reduced-Laplacian solve; two divisors of equal
    degree are linearly equivalent exactly when their signatures agree."""
    if graph.vertex_count == 1:
        return ()
    inverse = _reduced_inverse(graph)
    rhs = values[:-1]
    parts = []
    for row in inverse:
        total = sum(c * r for c, r in zip(row, rhs) if r)
        parts.append(total - math.floor(total))
    return tuple(parts)


def brute_rank(divisor: Divisor) -> int:
    """Rank straight from the definition, with no reduced divisors anywhere.

    For each k, every effective divisor e of degree k is subtracted and
    equivalence to an effective divisor is decided by comparing against all
    effective divisors of the remaining degree through the exact Laplacian
    solver.  Exponential on purpose; budget-limited to 6 vertices and
    degree 8.
    """
    graph = divisor.graph
    if any(graph.weights) or any(graph.loop_count(v) for v in graph.vertex_ids):
        raise DomainError("brute_rank handles weightless loopless graphs only")
    graph.require_connected("brute_rank")
    n = graph.vertex_count
    if n > BRUTE_RANK_MAX_VERTICES:
        raise BudgetError(
            f"brute_rank is limited to {BRUTE_RANK_MAX_VERTICES} vertices, got {n}"
        )
    degree = divisor.degree
    if degree > BRUTE_RANK_MAX_DEGREE:
        raise BudgetError(
            f"brute_rank is limited to degree {BRUTE_RANK_MAX_DEGREE}, got {degree}"
        )
    dvals = divisor.values
    k = 0
    while True:
        remaining = degree - k
        if remaining < 0:
            return k - 1
        effective_signatures = {
            _class_signature(graph, list(f)) for f in iter_effective_values(remaining, n)
        }
        for e in iter_effective_values(k, n):
            candidate = [a - b for a, b in zip(dvals, e)]
            if _class_signature(graph, candidate) not in effective_signatures:
                return k - 1
        k += 1


def brute_is_reduced(divisor: Divisor, base: str) -> bool:
    """Literal reducedness test: effective off the base, and every nonempty
    vertex set avoiding the base contains a vertex with fewer chips than
    its edges to the outside.  Enumerates all 2^(n-1) - 1 subsets."""
    graph = divisor.graph
    n = graph.vertex_count
    if n > BRUTE_REDUCED_MAX_VERTICES:
        raise BudgetError(
            f"brute_is_reduced is limited to {BRUTE_REDUCED_MAX_VERTICES} vertices, got {n}"
        )
    u = graph.index(base)
    vals = divisor.values
    if any(vals[i] < 0 for i in range(n) if i != u):
        return False
    others = [i for i in range(n) if i != u]
    adj = graph._adj
    outward = [sum(adj[i].values()) for i in range(n)]  # loops excluded by construction
    for mask in range(1, 1 << len(others)):
        inside = [others[t] for t in range(len(others)) if mask >> t & 1]
        member = set(inside)
        for v in inside:
            to_outside = outward[v] - sum(m for w, m in adj[v].items() if w in member)
            if vals[v] < to_outside:
                break
        else:
            return False
    return True


# -- pinned fixtures ---------------------------------------------------------


@dataclass(frozen=True)
class Fixture:
    """A pinned graph with named divisors and expected results.

    Every fixture re-derives its provenance checks when loaded (quoted
    principal divisors, genus) and loading fails hard on any mismatch.
    """

    name: str
    graph: Graph
    divisors: Mapping[str, Divisor] = field(hash=False)
    expected: Mapping[str, int] = field(hash=False)


def _check(fixture_name: str, condition: bool, what: str) -> None:
    if not condition:
        raise FixtureError(f"fixture {fixture_name!r} failed its self-check: {what}")


def _dhar5() -> Fixture:
    graph = Graph(
        ["v0", "v1", "v2", "v3", "v4"],
        [
            ("v0", "v1", 2),
            ("v0", "v2", 2),
            ("v0", "v3", 2),
            ("v1", "v2", 2),
            ("v1", "v3", 1),
            ("v1", "v4", 1),
            ("v2", "v3", 1),
            ("v2", "v4", 1),
            ("v3", "v4", 2),
        ],
    )
    _check("dhar5", fire_set(graph, {"v3", "v4"}).values == (2, 2, 2, -4, -2),
           "firing {v3,v4} must give (2,2,2,-4,-2)")
    _check("dhar5", fire_set(graph, {"v1", "v2", "v4"}).values == (4, -3, -3, 4, -2),
           "firing {v1,v2,v4} must give (4,-3,-3,4,-2)")
    _check("dhar5", graph.genus() == 10, "genus must be 10")
    return Fixture(
        name="dhar5",
        graph=graph,
        divisors={"example": Divisor(graph, (0, 1, 2, 4, 4))},
        expected={"genus": 10, "rank": 2, "lower_bound": 0, "canonical_degree": 18},
    )


def _weighted_binary() -> Fixture:
    graph = Graph([("v1", 1), ("v2", 2)], [("v1", "v2", 13)])
    _check("weighted-binary", graph.genus() == 15, "genus must be 15")
    return Fixture(
        name="weighted-binary",
        graph=graph,
        divisors={"example": Divisor(graph, (3, 4))},
        expected={"genus": 15, "rank": 2, "lower_bound": 2},
    )


def _three_component() -> Fixture:
    graph = Graph(["v1", "v2", "v3"], [("v1", "v3", 3), ("v2", "v3", 7)])
    _check("three-component", graph.genus() == 8, "genus must be 8")
    _check("three-component", graph.multiplicity("v1", "v2") == 0,
           "v1 and v2 must not be adjacent")
    return Fixture(
        name="three-component",
        graph=graph,
        divisors={"example": Divisor(graph, (1, 2, 3))},
        expected={"genus": 8, "rank": 2},
    )


def _binary(genus: int) -> Fixture:
    if genus < 0:
        raise DomainError("binary fixture needs genus >= 0")
    graph = Graph(["v1", "v2"], [("v1", "v2", genus + 1)])
    _check(f"binary({genus})", graph.genus() == genus, f"genus must be {genus}")
    return Fixture(
        name=f"binary({genus})",
        graph=graph,
        divisors={},
        expected={"genus": genus},
    )


def _rose(genus: int) -> Fixture:
    if genus < 0:
        raise DomainError("rose fixture needs genus >= 0")
    graph = Graph([("v", genus)])
    _check(f"rose({genus})", graph.genus() == genus, f"genus must be {genus}")
    return Fixture(
        name=f"rose({genus})",
        graph=graph,
        divisors={},
        expected={"genus": genus},
    )


def _bullet_loop() -> Fixture:
    graph = Graph(["v"], [("v", "v")])
    _check("bullet-loop", graph.genus() == 1, "genus must be 1")
    return Fixture(
        name="bullet-loop",
        graph=graph,
        divisors={"example": Divisor(graph, (1,))},
        expected={"genus": 1, "rank": 0},
    )


_PARAMETRIC = re.compile(r"(binary|rose)\((\d+)\)\Z")


def load_fixture(name: str) -> Fixture:
    """Load a pinned fixture by name, running its provenance self-checks.

    Known names: ``dhar5``, ``weighted-binary``, ``three-component``,
    ``bullet-loop``, and the parametric ``binary(g)`` and ``rose(g)``.
    """
    if name == "dhar5":
        return _dhar5()
    if name == "weighted-binary":
        return _weighted_binary()
    if name == "three-component":
        return _three_component()
    if name == "bullet-loop":
        return _bullet_loop()
    match = _PARAMETRIC.match(name)
    if match:
        builder = _binary if match.group(1) == "binary" else _rose
        return builder(int(match.group(2)))
    raise DomainError(f"unknown fixture {name!r}")
