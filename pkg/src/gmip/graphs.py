"""Immutable graphs with 1-based node ids.

Provides the derived structure the encoders lean on (complements, distance-2
pairs, layered partitions) and the line-based text format the CLI reads.
Weights are exact rationals throughout; floats never enter the package.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations


class GraphError(ValueError):
    pass


class Graph:
    """A finite weighted graph, undirected or directed.

    Undirected edges are stored with u <= v and deduplicated; directed arcs
    keep their orientation.  Self-loops are rejected unless
    ``self_loops_allowed`` — loops only make sense on target graphs, where a
    loop marks a node that may host both endpoints of a matched edge.
    """

    __slots__ = ("n", "directed", "self_loops_allowed", "edges", "_adj", "_w")

    def __init__(self, n, edges=(), directed=False, self_loops_allowed=False):
        if n < 0:
            raise GraphError("node count must be >= 0")
        self.n = n
        self.directed = directed
        self.self_loops_allowed = self_loops_allowed
        norm = []
        seen = set()
        for item in edges:
            if len(item) == 2:
                u, v = item
                w = Fraction(1)
            else:
                u, v, w = item
                w = Fraction(w)
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphError(f"edge ({u},{v}) out of range 1..{n}")
            if u == v and not self_loops_allowed:
                raise GraphError(f"self-loop at {u} not allowed here")
            if not directed and u > v:
                u, v = v, u
            if (u, v) in seen:
                raise GraphError(f"duplicate edge ({u},{v})")
            seen.add((u, v))
            norm.append((u, v, w))
        norm.sort()
        self.edges = tuple(norm)
        adj = {u: set() for u in range(1, n + 1)}
        wmap = {}
        for u, v, w in norm:
            adj[u].add(v)
            if not directed:
                adj[v].add(u)
            wmap[(u, v)] = w
        self._adj = adj
        self._w = wmap

    def nodes(self):
        return range(1, self.n + 1)

    def neighbors(self, u):
        """N(u): adjacent nodes; out-neighbors when directed."""
        if not 1 <= u <= self.n:
            raise GraphError(f"node {u} out of range 1..{self.n}")
        return self._adj[u]

    def has_edge(self, u, v) -> bool:
        if not self.directed and u > v:
            u, v = v, u
        return (u, v) in self._w

    def has_loop(self, u) -> bool:
        return (u, u) in self._w

    def weight(self, u, v) -> Fraction:
        if not self.directed and u > v:
            u, v = v, u
        return self._w[(u, v)]

    def edge_pairs(self):
        """Edge endpoint tuples in storage order, loops included."""
        return [(u, v) for u, v, _ in self.edges]

    def simple_edges(self):
        """Edge endpoint tuples without loops."""
        return [(u, v) for u, v, _ in self.edges if u != v]

    def loops(self):
        return [u for u, v, _ in self.edges if u == v]

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n, self.directed, self.edges) == (other.n, other.directed, other.edges)

    def __hash__(self):
        return hash((self.n, self.directed, self.edges))

    def __repr__(self):
        kind = "digraph" if self.directed else "graph"
        return f"<{kind} n={self.n} m={len(self.edges)}>"


def complement(g: Graph) -> Graph:
    """Complement graph over node pairs (always undirected, never loops).

    For a directed g the result has an edge {u,v} exactly when neither arc
    (u,v) nor (v,u) exists — the "no arc in either direction" pairs.
    """
    edges = []
    for u, v in combinations(g.nodes(), 2):
        if g.directed:
            if not g.has_edge(u, v) and not g.has_edge(v, u):
                edges.append((u, v))
        else:
            if not g.has_edge(u, v):
                edges.append((u, v))
    return Graph(g.n, edges, directed=False)


def connected(g: Graph) -> bool:
    """Connectivity ignoring arc directions."""
    if g.n <= 1:
        return True
    seen = {1}
    stack = [1]
    while stack:
        u = stack.pop()
        for v, w, _ in g.edges:
            if v == u and w not in seen:
                seen.add(w)
                stack.append(w)
            elif w == u and v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == g.n


def distance_two_pairs(g: Graph):
    """Pairs of nodes at shortest-path distance exactly 2 (undirected only)."""
    if g.directed:
        raise GraphError("distance_two_pairs needs an undirected graph")
    out = set()
    for u in g.nodes():
        for mid in g.neighbors(u):
            for v in g.neighbors(mid):
                if v != u and v not in g.neighbors(u):
                    out.add((min(u, v), max(u, v)))
    return out


class LayeredGraph:
    """Nodes partitioned into ordered layers; arcs span consecutive layers."""

    def __init__(self, layers, arcs):
        seen = set()
        for layer in layers:
            for u in layer:
                if u in seen:
                    raise GraphError(f"node {u} appears in two layers")
                seen.add(u)
        n = len(seen)
        if seen != set(range(1, n + 1)):
            raise GraphError("layers must cover node ids 1..n exactly")
        self.layers = tuple(tuple(sorted(layer)) for layer in layers)
        self.n = n
        layer_of = {}
        for idx, layer in enumerate(self.layers):
            for u in layer:
                layer_of[u] = idx
        self.layer_of = layer_of
        clean = []
        for u, v in arcs:
            if u not in layer_of or v not in layer_of:
                raise GraphError(f"arc ({u},{v}) uses an unknown node")
            if layer_of[v] != layer_of[u] + 1:
                raise GraphError(f"arc ({u},{v}) must span consecutive layers")
            clean.append((u, v))
        clean.sort()
        if len(set(clean)) != len(clean):
            raise GraphError("duplicate arc in layered graph")
        self.arcs = tuple(clean)

    def __eq__(self, other):
        if not isinstance(other, LayeredGraph):
            return NotImplemented
        return (self.layers, self.arcs) == (other.layers, other.arcs)

    def __repr__(self):
        sizes = "x".join(str(len(layer)) for layer in self.layers)
        return f"<layered {sizes} arcs={len(self.arcs)}>"


def parse_graph(text: str):
    """Parse the graph text format; returns Graph or LayeredGraph.

    Format, one construct per line ('#' starts a comment):

        p graph <n> <m> <directed|undirected> [selfloops]
        e <u> <v> [w]
        l <layer-index> <node-id ...>
    """
    n = m = None
    directed = False
    loops_ok = False
    edges = []
    layer_lines = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        tag = parts[0]
        try:
            if tag == "p":
                if len(parts) < 5 or parts[1] != "graph":
                    raise GraphError("expected 'p graph <n> <m> <dir>'")
                n, m = int(parts[2]), int(parts[3])
                if parts[4] not in ("directed", "undirected"):
                    raise GraphError(f"unknown direction {parts[4]!r}")
                directed = parts[4] == "directed"
                loops_ok = "selfloops" in parts[5:]
            elif tag == "e":
                if len(parts) not in (3, 4):
                    raise GraphError("expected 'e <u> <v> [w]'")
                u, v = int(parts[1]), int(parts[2])
                w = Fraction(parts[3]) if len(parts) == 4 else Fraction(1)
                edges.append((u, v, w))
            elif tag == "l":
                if len(parts) < 3:
                    raise GraphError("expected 'l <layer> <node ...>'")
                idx = int(parts[1])
                if idx in layer_lines:
                    raise GraphError(f"layer {idx} given twice")
                layer_lines[idx] = [int(tok) for tok in parts[2:]]
            else:
                raise GraphError(f"unknown line tag {tag!r}")
        except (ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, GraphError):
                raise GraphError(f"line {lineno}: {exc}") from None
            raise GraphError(f"line {lineno}: {exc}") from None
    if n is None:
        raise GraphError("missing 'p graph' header line")
    if m != len(edges):
        raise GraphError(f"header says {m} edges, found {len(edges)}")
    if layer_lines:
        layers = [layer_lines[i] for i in sorted(layer_lines)]
        if sorted(layer_lines) != list(range(1, len(layer_lines) + 1)):
            raise GraphError("layer indices must be 1..p")
        return LayeredGraph(layers, [(u, v) for u, v, _ in edges])
    return Graph(n, edges, directed=directed, self_loops_allowed=loops_ok)


def graph_to_text(g) -> str:
    """Inverse of parse_graph, deterministic."""
    lines = []
    if isinstance(g, LayeredGraph):
        lines.append(f"p graph {g.n} {len(g.arcs)} directed")
        for idx, layer in enumerate(g.layers, start=1):
            lines.append("l " + " ".join(str(u) for u in ([idx] + list(layer))))
        for u, v in g.arcs:
            lines.append(f"e {u} {v}")
    else:
        head = f"p graph {g.n} {len(g.edges)} " + ("directed" if g.directed else "undirected")
        if g.self_loops_allowed:
            head += " selfloops"
        lines.append(head)
        for u, v, w in g.edges:
            lines.append(f"e {u} {v}" + (f" {w}" if w != 1 else ""))
    return "\n".join(lines) + "\n"


# small constructors the tests and fixtures use everywhere

def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(1, n)])


def cycle_graph(n):
    edges = [(i, i + 1) for i in range(1, n)] + [(1, n)]
    return Graph(n, edges)


def complete_graph(n, self_loops=False):
    edges = [(u, v) for u, v in combinations(range(1, n + 1), 2)]
    if self_loops:
        edges += [(u, u) for u in range(1, n + 1)]
    return Graph(n, edges, self_loops_allowed=self_loops)
