"""Boundary strata of the compactified r-spin moduli over a fixed dual graph.

Each node carries either a locally free root or a singular order (u, v)
with u + v = r, u sitting on the first half-edge of the edge and v on the
second. An assignment is admissible when every vertex's twisted canonical
degree, minus the u-values on its half-edges, is divisible by r.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from math import gcd
from typing import Sequence

from .localroot import Order, ramification_index

Edge = tuple[int, int]
EdgeOrder = tuple[int, int] | None


@dataclass(frozen=True)
class Leg:
    vertex: int
    m: int = 0


@dataclass(frozen=True)
class DualGraph:
    """Vertex genera, edges as (v, w) with half-edge 0 at v and 1 at w, and legs."""

    vertices: tuple[int, ...]
    edges: tuple[Edge, ...] = ()
    legs: tuple[Leg, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(int(g) for g in self.vertices))
        object.__setattr__(self, "edges", tuple((int(a), int(b)) for a, b in self.edges))
        object.__setattr__(
            self, "legs", tuple(l if isinstance(l, Leg) else Leg(*l) for l in self.legs)
        )

    @property
    def twists(self) -> list[int]:
        return [leg.m for leg in self.legs]

    def half_edges_at(self, v: int) -> list[tuple[int, int]]:
        """(edge index, side) pairs incident to ``v``; a loop contributes both sides."""
        out = []
        for e, (a, b) in enumerate(self.edges):
            if a == v:
                out.append((e, 0))
            if b == v:
                out.append((e, 1))
        return out

    def valence(self, v: int) -> int:
        return len(self.half_edges_at(v))

    def legs_at(self, v: int) -> list[int]:
        return [i for i, leg in enumerate(self.legs) if leg.vertex == v]

    @classmethod
    def from_json(cls, data: dict | str) -> "DualGraph":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict):
            raise ValueError("graph JSON must be an object")
        try:
            vertices = [int(v["genus"]) for v in data.get("vertices", [])]
            edges = []
            for edge in data.get("edges", []):
                if len(edge) != 2:
                    raise ValueError(f"edge {edge!r} must have two endpoints")
                edges.append((int(edge[0]), int(edge[1])))
            legs = [Leg(int(l["vertex"]), int(l.get("m", 0))) for l in data.get("legs", [])]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed graph JSON: {exc}") from exc
        return cls(tuple(vertices), tuple(edges), tuple(legs))

    def to_json(self) -> dict:
        return {
            "vertices": [{"genus": g} for g in self.vertices],
            "edges": [list(e) for e in self.edges],
            "legs": [{"vertex": l.vertex, "m": l.m} for l in self.legs],
        }

    def with_twists(self, m: Sequence[int]) -> "DualGraph":
        if len(m) != len(self.legs):
            raise ValueError(f"{len(m)} twists given for {len(self.legs)} legs")
        return DualGraph(self.vertices, self.edges, tuple(Leg(l.vertex, x) for l, x in zip(self.legs, m)))


def _components(n: int, edges: Sequence[Edge]) -> int:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    count = n
    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            count -= 1
    return count


def validate(graph: DualGraph) -> tuple[bool, list[str]]:
    """Connectivity and stability, with one diagnostic per problem found."""
    problems = []
    n = len(graph.vertices)
    if n == 0:
        return False, ["graph has no vertices"]
    for v, g in enumerate(graph.vertices):
        if g < 0:
            problems.append(f"vertex {v}: negative genus {g}")
    for e, (a, b) in enumerate(graph.edges):
        if not (0 <= a < n and 0 <= b < n):
            problems.append(f"edge {e}: endpoint out of range")
    for i, leg in enumerate(graph.legs):
        if not 0 <= leg.vertex < n:
            problems.append(f"leg {i}: vertex {leg.vertex} out of range")
    if problems:
        return False, problems
    if _components(n, graph.edges) != 1:
        problems.append("graph is disconnected")
    for v, g in enumerate(graph.vertices):
        special = graph.valence(v) + len(graph.legs_at(v))
        if g == 0 and special < 3:
            problems.append(f"vertex {v}: genus 0 with {special} special points (needs 3)")
        if g == 1 and special < 1:
            problems.append(f"vertex {v}: genus 1 with no special points")
    return not problems, problems


def _require_valid(graph: DualGraph) -> None:
    ok, problems = validate(graph)
    if not ok:
        raise ValueError("invalid graph: " + "; ".join(problems))


def genus(graph: DualGraph) -> int:
    _require_valid(graph)
    return sum(graph.vertices) + len(graph.edges) - len(graph.vertices) + 1


def vertex_omega_degree(graph: DualGraph, v: int, m: Sequence[int] | None = None) -> int:
    """2 g_v - 2 + (half-edges at v) - (twists of legs at v)."""
    twists = graph.twists if m is None else list(m)
    return 2 * graph.vertices[v] - 2 + graph.valence(v) - sum(twists[i] for i in graph.legs_at(v))


def bridges(graph: DualGraph) -> frozenset[int]:
    """Indices of separating edges: removing one disconnects the graph."""
    n = len(graph.vertices)
    base = _components(n, graph.edges)
    out = set()
    for e, (a, b) in enumerate(graph.edges):
        if a == b:
            continue
        rest = [x for k, x in enumerate(graph.edges) if k != e]
        if _components(n, rest) > base:
            out.add(e)
    return frozenset(out)


def first_betti(n_vertices: int, edges: Sequence[Edge]) -> int:
    return len(edges) - n_vertices + _components(n_vertices, edges)


@dataclass(frozen=True)
class Stratum:
    graph: DualGraph
    r: int
    orders: tuple[EdgeOrder, ...]
    degrees: tuple[int, ...]
    twists: tuple[int, ...] = ()
    separating: frozenset[int] = field(default=frozenset(), repr=False)

    @property
    def singular(self) -> tuple[bool, ...]:
        return tuple(o is not None for o in self.orders)

    @property
    def codimension(self) -> int:
        return len(self.graph.edges)

    @property
    def ramification(self) -> list[int]:
        return deformation_profile(self)

    @property
    def gluing(self) -> list[int]:
        """mu_ell gluing choices per singular edge (1 across a separating node)."""
        return [
            1 if e in self.separating else gcd(*o)
            for e, o in enumerate(self.orders)
            if o is not None
        ]

    @property
    def count(self) -> int:
        return count_nets(self)


def _vertex_residues(graph: DualGraph, r: int, m: Sequence[int], orders: Sequence[EdgeOrder]) -> list[int]:
    out = []
    for v in range(len(graph.vertices)):
        total = vertex_omega_degree(graph, v, m)
        for e, side in graph.half_edges_at(v):
            if orders[e] is not None:
                total -= orders[e][side]
        out.append(total)
    return out


def enumerate_strata(graph: DualGraph, r: int, m: Sequence[int] | None = None) -> list[Stratum]:
    """Every admissible order assignment, ordered with locally free first per edge then by u.

    Loops are enumerated with u on the designated first half-edge for every
    u in 1..r-1; the two sides of a loop are distinct branches, so u and r-u
    are kept as separate strata.
    """
    _require_valid(graph)
    if r < 1:
        raise ValueError(f"r must be positive, got r={r}")
    twists = [x % r for x in (graph.twists if m is None else m)]
    if len(twists) != len(graph.legs):
        raise ValueError(f"{len(twists)} twists given for {len(graph.legs)} legs")
    g = genus(graph)
    if (2 * g - 2 - sum(twists)) % r:
        return []
    seps = bridges(graph)
    per_edge: list[EdgeOrder] = [None] + [(u, r - u) for u in range(1, r)]
    strata = []
    for orders in product(per_edge, repeat=len(graph.edges)):
        residues = _vertex_residues(graph, r, twists, orders)
        if any(x % r for x in residues):
            continue
        strata.append(Stratum(graph, r, orders, tuple(x // r for x in residues), tuple(twists), seps))
    return strata


def count_nets(stratum: Stratum) -> int:
    """prod r^{2 g_v} * r^{b_1(locally free part)} * prod gcd(u, v) over non-separating singular edges."""
    graph, r = stratum.graph, stratum.r
    free_edges = [edge for edge, o in zip(graph.edges, stratum.orders) if o is None]
    count = r ** (2 * sum(graph.vertices)) * r ** first_betti(len(graph.vertices), free_edges)
    for glue in stratum.gluing:
        count *= glue
    return count


def deformation_profile(stratum: Stratum) -> list[int]:
    """r / gcd(u, v) per singular edge and 1 per locally free edge, in edge order."""
    out = []
    for o in stratum.orders:
        out.append(1 if o is None else ramification_index(Order(*o), stratum.r))
    return out


def swap_edge(stratum: Stratum, e: int) -> Stratum:
    """The same stratum with edge ``e`` reversed and its (u, v) swapped."""
    graph = stratum.graph
    a, b = graph.edges[e]
    edges = list(graph.edges)
    edges[e] = (b, a)
    orders = list(stratum.orders)
    if orders[e] is not None:
        u, v = orders[e]
        orders[e] = (v, u)
    new_graph = DualGraph(graph.vertices, tuple(edges), graph.legs)
    return Stratum(new_graph, stratum.r, tuple(orders), stratum.degrees, stratum.twists, stratum.separating)


def one_loop_graph(g: int) -> DualGraph:
    """Genus g-1 vertex with a single loop: the generic curve with one non-separating node.

    In total genus 1 the vertex is rational and a loop alone is unstable,
    so one untwisted leg is attached.
    """
    if g < 1:
        raise ValueError(f"one-loop graph needs g >= 1, got g={g}")
    legs = (Leg(0, 0),) if g == 1 else ()
    return DualGraph((g - 1,), ((0, 0),), legs)


def weighted_boundary_count(graph: DualGraph, r: int) -> int:
    total = 0
    for stratum in enumerate_strata(graph, r):
        weight = 1
        for x in deformation_profile(stratum):
            weight *= x
        total += count_nets(stratum) * weight
    return total


def degree_identity_check(g: int, r: int) -> bool:
    """Weighted count over the one-loop boundary equals the smooth count r^{2g}."""
    if g < 1 or r < 2:
        raise ValueError(f"need g >= 1 and r >= 2, got g={g}, r={r}")
    if (2 * g - 2) % r:
        raise ValueError(f"r={r} does not divide 2g-2={2 * g - 2}")
    return weighted_boundary_count(one_loop_graph(g), r) == r ** (2 * g)
