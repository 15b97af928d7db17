"""Weighted integral gain graphs and their elementary transformations.

A gain graph has integer vertex weights ``h`` and edges ``(u, v, gain)``.
The edge ``(u, v, g)`` stands for the constraint ``x[v] != x[u] + g`` and is
the same edge as ``(v, u, -g)``. Vertex indices are 0-based.
"""
import logging
from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Sequence, Tuple

import networkx as nx

from utils.errors import InvalidGraphError


class Edge(NamedTuple):
    u: int
    v: int
    gain: int

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def oriented(self) -> "Edge":
        """Canonical orientation: links satisfy u < v, loops are kept as given."""
        if self.u > self.v:
            return Edge(self.v, self.u, -self.gain)
        return self

    def gain_from(self, vertex: int) -> int:
        """Gain of the edge when traversed away from ``vertex``."""
        return self.gain if vertex == self.u else -self.gain


@dataclass(frozen=True)
class GainGraph:
    weights: Tuple[int, ...]
    edges: Tuple[Edge, ...]

    @property
    def vertex_count(self) -> int:
        return len(self.weights)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def links(self) -> List[int]:
        return [index for index, edge in enumerate(self.edges) if not edge.is_loop]

    def __str__(self) -> str:
        edges = ", ".join(f"{e.gain}v{e.u + 1}v{e.v + 1}" for e in self.edges)
        return f"GainGraph(weights={list(self.weights)}, edges=[{edges}])"


@dataclass(frozen=True)
class SwitchingFunction:
    values: Tuple[int, ...]


def _checked_int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidGraphError(f"{what} must be an integer, got {value!r}")
    return value


def new_graph(weights: Sequence[int], edges: Iterable[Tuple[int, int, int]] = ()) -> GainGraph:
    """Build a gain graph; links are stored with u < v, nothing is merged."""
    weights = tuple(_checked_int(h, "vertex weight") for h in weights)
    stored = []
    for u, v, gain in edges:
        for end in (u, v):
            if not 0 <= _checked_int(end, "endpoint") < len(weights):
                raise InvalidGraphError(f"endpoint {end} out of range for {len(weights)} vertices")
        stored.append(Edge(u, v, _checked_int(gain, "gain")).oriented())
    return GainGraph(weights, tuple(stored))


def switch(g: GainGraph, eta: SwitchingFunction) -> GainGraph:
    """phi(f) -> phi(f) - eta[u] + eta[v] for f from u to v, and h -> h + eta."""
    if len(eta.values) != g.vertex_count:
        raise ValueError(
            f"switching function has {len(eta.values)} values for {g.vertex_count} vertices"
        )
    weights = tuple(h + shift for h, shift in zip(g.weights, eta.values))
    edges = tuple(Edge(e.u, e.v, e.gain - eta.values[e.u] + eta.values[e.v]) for e in g.edges)
    return GainGraph(weights, edges)


def _check_edge_index(g: GainGraph, index: int) -> Edge:
    if not 0 <= index < g.edge_count:
        raise InvalidGraphError(f"edge index {index} out of range for {g.edge_count} edges")
    return g.edges[index]


def delete_edge(g: GainGraph, index: int) -> GainGraph:
    _check_edge_index(g, index)
    return GainGraph(g.weights, g.edges[:index] + g.edges[index + 1:])


def contract_edge(g: GainGraph, index: int) -> GainGraph:
    """Contract a link.

    The link is read in the direction of nonnegative gain, tail to head. The
    tail is switched by that gain and merged into the head; the merged vertex
    keeps the head's place and gets weight max(h_tail + gain, h_head).
    """
    e = _check_edge_index(g, index)
    if e.is_loop:
        raise InvalidGraphError(f"edge {index} is a loop and cannot be contracted")

    if e.gain >= 0:
        tail, head, gain = e.u, e.v, e.gain
    else:
        tail, head, gain = e.v, e.u, -e.gain

    weights = list(g.weights)
    weights[head] = max(g.weights[tail] + gain, g.weights[head])
    del weights[tail]

    def renumber(vertex: int) -> int:
        if vertex == tail:
            vertex = head
        return vertex - 1 if vertex > tail else vertex

    edges = []
    for position, f in enumerate(g.edges):
        if position == index:
            continue
        phi = f.gain
        if f.u == tail:
            phi -= gain
        if f.v == tail:
            phi += gain
        edges.append(Edge(renumber(f.u), renumber(f.v), phi).oriented())
    return GainGraph(tuple(weights), tuple(edges))


def simplify(g: GainGraph) -> Tuple[GainGraph, bool]:
    """Drop loops and merge parallel links of equal gain.

    The flag reports whether a zero-gain loop was present; such a graph has
    no proper colourings at all.
    """
    has_zero_loop = False
    seen = set()
    edges = []
    for e in g.edges:
        if e.is_loop:
            has_zero_loop = has_zero_loop or e.gain == 0
            continue
        if e in seen:
            continue
        seen.add(e)
        edges.append(e)
    return GainGraph(g.weights, tuple(edges)), has_zero_loop


def components(g: GainGraph) -> List[GainGraph]:
    """Connected components, vertex order inherited from ``g``."""
    graph = nx.Graph()
    graph.add_nodes_from(range(g.vertex_count))
    graph.add_edges_from((e.u, e.v) for e in g.edges if not e.is_loop)

    parts = sorted((sorted(part) for part in nx.connected_components(graph)), key=lambda part: part[0])
    if len(parts) <= 1:
        return [g]

    owner = {}
    for number, part in enumerate(parts):
        for position, vertex in enumerate(part):
            owner[vertex] = (number, position)

    edge_lists = [[] for _ in parts]
    for e in g.edges:
        number, u = owner[e.u]
        _, v = owner[e.v]
        edge_lists[number].append(Edge(u, v, e.gain))

    return [
        GainGraph(tuple(g.weights[vertex] for vertex in part), tuple(edge_lists[number]))
        for number, part in enumerate(parts)
    ]


def translate_weights(g: GainGraph, shift: int) -> GainGraph:
    return GainGraph(tuple(h + shift for h in g.weights), g.edges)


def max_path_gain(g: GainGraph) -> int:
    """n0: the largest total gain of a simple path, single vertices included.

    Exact dynamic programming over (vertex subset, endpoint) states.
    """
    q = g.vertex_count
    if q == 0:
        raise InvalidGraphError("max_path_gain needs at least one vertex")

    # best directed gain for each ordered pair of distinct vertices
    arc = [[None] * q for _ in range(q)]
    for e in g.edges:
        if e.is_loop:
            continue
        for a, b, phi in ((e.u, e.v, e.gain), (e.v, e.u, -e.gain)):
            if arc[a][b] is None or phi > arc[a][b]:
                arc[a][b] = phi

    best = {(1 << v, v): 0 for v in range(q)}
    answer = 0
    for mask in range(1, 1 << q):
        for v in range(q):
            gain = best.get((mask, v))
            if gain is None:
                continue
            answer = max(answer, gain)
            for w in range(q):
                if mask & (1 << w) or arc[v][w] is None:
                    continue
                state = (mask | (1 << w), w)
                candidate = gain + arc[v][w]
                if candidate > best.get(state, candidate - 1):
                    best[state] = candidate

    logging.debug(f"max path gain {answer} over {len(best)} path states")
    return answer


def canonical_form(g: GainGraph) -> Tuple[tuple, GainGraph]:
    """Deterministic relabeling of a simplified graph and an exact key for it.

    Vertices are ordered by weight, degree and the sorted multiset of
    (outgoing gain, neighbour weight) pairs, ties broken by original index.
    Isomorphic graphs usually, not always, receive the same key; distinct
    graphs never do.
    """
    incident = [[] for _ in range(g.vertex_count)]
    for e in g.edges:
        incident[e.u].append((e.gain_from(e.u), g.weights[e.v]))
        if not e.is_loop:
            incident[e.v].append((e.gain_from(e.v), g.weights[e.u]))

    order = sorted(
        range(g.vertex_count),
        key=lambda v: (g.weights[v], len(incident[v]), sorted(incident[v]), v),
    )
    position = {vertex: rank for rank, vertex in enumerate(order)}

    weights = tuple(g.weights[v] for v in order)
    edges = tuple(sorted(Edge(position[e.u], position[e.v], e.gain).oriented() for e in g.edges))
    return (weights, edges), GainGraph(weights, edges)
