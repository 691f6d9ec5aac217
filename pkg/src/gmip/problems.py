"""Problem descriptions as plain data.

Holds the general matching-instance record, the per-problem spec records
(one tagged record per named problem), and the line-based problem-spec file
format.  Nothing here touches the IP machinery, so the brute-force oracles
can share these types without importing any of it.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction

from .graphs import Graph, GraphError, LayeredGraph, parse_graph


class ProblemError(ValueError):
    pass


REGIMES = ("many-to-one", "one-to-one", "onto-total", "injective-partial")
OBJECTIVE_FORMS = ("P1", "P2", "P3", "P4", "P5", "P6", "P7")


def canon_edge(u, v, directed=False):
    if directed or u <= v:
        return (u, v)
    return (v, u)


@dataclass(frozen=True)
class MatchingInstance:
    """Input to the general machinery: pattern g, target gp, allow sets L_u,
    node costs c(u,u'), edge costs d(e,e'), forbidden value sets t_e with
    penalties p_e^tau, and the assignment regime.

    Edge keys are canonical: (u,v) with u<v for undirected graphs, arcs
    verbatim for directed ones; target loops appear as (k,k).
    """

    g: Graph
    gp: Graph
    allow: dict
    node_cost: dict = field(default_factory=dict)
    edge_cost: dict = field(default_factory=dict)
    forbidden: dict = field(default_factory=dict)
    penalty: dict = field(default_factory=dict)
    regime: str = "many-to-one"

    def c(self, u, up) -> Fraction:
        return self.node_cost.get((u, up), Fraction(0))

    def d(self, e, ep) -> Fraction:
        return self.edge_cost.get((e, ep), Fraction(0))

    def t(self, e):
        return self.forbidden.get(e, frozenset())

    def p(self, e, tau) -> Fraction:
        return self.penalty.get((e, tau), Fraction(0))


def validate_instance(inst: MatchingInstance):
    if inst.regime not in REGIMES:
        raise ProblemError(f"unknown regime {inst.regime!r}")
    if inst.g.directed != inst.gp.directed:
        raise ProblemError("pattern and target must share directedness")
    if inst.g.loops():
        raise ProblemError("pattern graphs are loop-free; loops live in the target")
    targets = set(inst.gp.nodes())
    for u in inst.g.nodes():
        lu = inst.allow.get(u, ())
        if not set(lu) <= targets:
            raise ProblemError(f"allow set of node {u} leaves the target graph")
        if not lu and inst.regime != "injective-partial":
            raise ProblemError(f"empty allow set for node {u} under total regime")
    for (e, tau), pen in inst.penalty.items():
        if tau not in inst.forbidden.get(e, frozenset()):
            raise ProblemError(f"penalty on {e} for {tau} outside its forbidden set")
        if pen < 0:
            raise ProblemError(f"negative penalty on {e} for {tau}")


# ---------------------------------------------------------------------------
# per-problem spec records (the tagged union the encoders and oracles share)

@dataclass(frozen=True)
class KTsp:
    g: Graph                        # directed, nonnegative arc weights
    k: int
    variant: str = "A"              # A feasibility, B total distance, C bottleneck
    K: Fraction | None = None


@dataclass(frozen=True)
class Bandwidth:
    g: Graph                        # directedness decides plain vs directed form
    K: int | None = None
    optimize: bool = False


@dataclass(frozen=True)
class Arrangement:
    kind: str                       # LAP | DLAP | PMP | MCLAP
    g: Graph
    K: Fraction | None = None
    optimize: bool = True


@dataclass(frozen=True)
class Isomorphism:
    kind: str                       # GI | SI | ISI
    g: Graph                        # host
    gp: Graph                       # pattern; |V| >= |V'| for SI/ISI


@dataclass(frozen=True)
class CommonSubgraph:
    kind: str                       # LCS | MISM | MSM | CMP
    g: Graph
    gp: Graph


@dataclass(frozen=True)
class Coloring:
    kind: str                       # GKC|GC|GH|DGH|MWSCP_A|MWSCP_B|WVCP|MCP|MWIS
    g: Graph
    gp: Graph | None = None         # target for GH/DGH
    K: int | None = None            # colors (GKC) / clique budget (MCP)
    weights: dict | None = None     # node weights, WVCP
    costs: dict | None = None       # (u, color) -> value, MWSCP
    zstar: Fraction | None = None   # MWSCP_B only


@dataclass(frozen=True)
class Labeling:
    kind: str                       # GL_feas | GL_opt | FSFA
    g: Graph
    m: int = 1
    k: int = 0
    lam: int | None = None          # largest label; defaults to (n-1)(m+k)
    F: tuple | None = None          # frequency set, FSFA
    t: dict | None = None           # edge -> separation threshold, FSFA
    p: dict | None = None           # edge -> flat penalty, FSFA


@dataclass(frozen=True)
class MetricLabeling:
    g: Graph                        # undirected, weighted
    labels: tuple
    D: dict                         # (a,b) canonical -> distance, D(a,a)=0 implied
    c: dict = field(default_factory=dict)       # (u, label) -> cost
    allow: dict = field(default_factory=dict)   # u -> tuple of labels; default all
    objective: str = "P2"           # P2 total cost | P4 max label load
    noloop: tuple = ()              # labels where co-location is forbidden


@dataclass(frozen=True)
class Golomb:
    n: int
    K: int                          # largest admissible mark
    optimize: bool = True


@dataclass(frozen=True)
class IGC:
    g: Graph                        # connected, undirected


@dataclass(frozen=True)
class MLCM:
    layered: LayeredGraph


PROBLEM_TAGS = (
    ("ktsp", "circuit of k nodes; variants A feasibility, B total distance, C bottleneck"),
    ("bandwidth", "linear ordering minimizing the largest edge stretch (directed graphs: order must follow the arcs)"),
    ("lap", "linear arrangement minimizing total weighted edge stretch"),
    ("dlap", "directed linear arrangement (order must follow the arcs)"),
    ("pmp", "ordering minimizing the profile (sum of back-reaches)"),
    ("mclap", "ordering minimizing the largest positional cut"),
    ("gi", "graph isomorphism"),
    ("si", "subgraph isomorphism (pattern graph2 into host graph)"),
    ("isi", "induced subgraph isomorphism"),
    ("lcs", "largest common edge subgraph of two graphs"),
    ("mism", "maximum induced subgraph matching on digraphs"),
    ("msm", "maximum subgraph matching relation on digraphs"),
    ("cmp", "maximum shared contacts between two ordered graphs (non-crossing)"),
    ("gkc", "proper coloring with K colors (feasibility)"),
    ("gc", "smallest number of colors (optimize)"),
    ("gh", "graph homomorphism into a target graph"),
    ("dgh", "directed graph homomorphism"),
    ("mwscp_a", "maximum-weight subset coloring (value Z*)"),
    ("mwscp_b", "fewest colors attaining a given Z* (strength)"),
    ("wvcp", "weighted vertex coloring: minimize sum of per-color max weights"),
    ("mcp", "partition into cliques maximizing total within-clique edge weight"),
    ("mwis", "maximum independent set via the clique machinery on the complement"),
    ("gl", "labeling with |l(u)-l(v)| >= m on edges, >= k at distance two"),
    ("fsfa", "frequency assignment minimizing total interference penalty"),
    ("mlp", "metric labeling: assignment costs plus w*D separation costs"),
    ("golomb", "ruler with distinct pairwise differences"),
    ("igc", "fewest fill edges to an interval supergraph"),
    ("mlcm", "multi-layer crossing minimization"),
)


# ---------------------------------------------------------------------------
# problem spec file format

def _parse_labels(val):
    val = val.strip()
    if ".." in val:
        lo, hi = val.split("..", 1)
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(int(tok) for tok in val.split())


def parse_spec_text(text: str, graph_loader):
    """Parse the key=value problem spec format.

    graph_loader(path) must return a parsed graph; paths come from the
    `graph =` / `graph2 =` keys.  Table lines:

        c <u> <u'> <value>          node assignment cost
        d <u> <v> <u'> <v'> <value> edge pair cost
        t <u> <v> <int ...>         forbidden separations for an edge
        p <u> <v> [tau] <value>     penalty (flat, or for one value tau)
        D <a> <b> <value>           label metric (mlp)
        w <u> <value>               node weight (wvcp)
        allow <u> <label ...>       allowed labels for a node (mlp)
    """
    keys = {}
    c_tab, d_tab, t_tab, p_tab, dd_tab, w_tab, allow_tab = {}, {}, {}, {}, {}, {}, {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if "=" in line and line.split()[0] not in ("c", "d", "t", "p", "D", "w", "allow"):
                key, val = line.split("=", 1)
                keys[key.strip()] = val.strip()
                continue
            parts = line.split()
            tag = parts[0]
            if tag == "c":
                u, up, val = int(parts[1]), int(parts[2]), Fraction(parts[3])
                c_tab[(u, up)] = val
            elif tag == "d":
                u, v, a, b, val = (int(parts[1]), int(parts[2]), int(parts[3]),
                                   int(parts[4]), Fraction(parts[5]))
                d_tab[((u, v), (a, b))] = val
            elif tag == "t":
                u, v = int(parts[1]), int(parts[2])
                t_tab[(u, v)] = frozenset(int(tok) for tok in parts[3:])
            elif tag == "p":
                if len(parts) == 4:
                    p_tab[(int(parts[1]), int(parts[2]))] = Fraction(parts[3])
                elif len(parts) == 5:
                    p_tab[((int(parts[1]), int(parts[2])), int(parts[3]))] = Fraction(parts[4])
                else:
                    raise ProblemError("expected 'p <u> <v> [tau] <value>'")
            elif tag == "D":
                a, b, val = int(parts[1]), int(parts[2]), Fraction(parts[3])
                dd_tab[(min(a, b), max(a, b))] = val
            elif tag == "w":
                w_tab[int(parts[1])] = Fraction(parts[2])
            elif tag == "allow":
                allow_tab[int(parts[1])] = tuple(int(tok) for tok in parts[2:])
            else:
                raise ProblemError(f"unknown line tag {tag!r}")
        except (IndexError, ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, ProblemError):
                raise ProblemError(f"line {lineno}: {exc}") from None
            raise ProblemError(f"line {lineno}: {exc}") from None

    problem = keys.get("problem")
    if problem is None:
        raise ProblemError("missing 'problem =' line")
    problem = problem.lower()
    mode = keys.get("mode", "")
    optimize = mode == "optimize"
    if mode not in ("", "optimize", "feasibility"):
        raise ProblemError(f"unknown mode {mode!r}")

    def need_graph(key="graph"):
        if key not in keys:
            raise ProblemError(f"problem {problem!r} needs a '{key} =' line")
        return graph_loader(keys[key])

    def int_key(name, default=None):
        if name in keys:
            return int(keys[name])
        return default

    if problem == "ktsp":
        return KTsp(g=need_graph(), k=int_key("k"), variant=keys.get("variant", "A").upper(),
                    K=Fraction(keys["K"]) if "K" in keys else None)
    if problem == "bandwidth":
        return Bandwidth(g=need_graph(), K=int_key("K"), optimize=optimize)
    if problem in ("lap", "dlap", "pmp", "mclap"):
        return Arrangement(kind=problem.upper(), g=need_graph(),
                           K=Fraction(keys["K"]) if "K" in keys else None,
                           optimize=optimize or "K" not in keys)
    if problem in ("gi", "si", "isi"):
        return Isomorphism(kind=problem.upper(), g=need_graph(), gp=need_graph("graph2"))
    if problem in ("lcs", "mism", "msm", "cmp"):
        return CommonSubgraph(kind=problem.upper(), g=need_graph(), gp=need_graph("graph2"))
    if problem in ("gkc", "gc", "gh", "dgh", "mwscp_a", "mwscp_b", "wvcp", "mcp", "mwis"):
        gp = graph_loader(keys["graph2"]) if "graph2" in keys else None
        return Coloring(kind=problem.upper(), g=need_graph(), gp=gp, K=int_key("K"),
                        weights=w_tab or None, costs=c_tab or None,
                        zstar=Fraction(keys["zstar"]) if "zstar" in keys else None)
    if problem == "gl":
        lam = None
        if "labels" in keys:
            labels = _parse_labels(keys["labels"])
            lam = max(labels)
        return Labeling(kind="GL_opt" if optimize else "GL_feas", g=need_graph(),
                        m=int_key("m", 1), k=int_key("k", 0), lam=int_key("lambda", lam))
    if problem == "fsfa":
        if "labels" not in keys:
            raise ProblemError("fsfa needs a 'labels =' line (the frequency set)")
        return Labeling(kind="FSFA", g=need_graph(), F=_parse_labels(keys["labels"]),
                        t=t_tab or {}, p=p_tab or {})
    if problem == "mlp":
        if "labels" not in keys:
            raise ProblemError("mlp needs a 'labels =' line")
        noloop = tuple(int(tok) for tok in keys.get("noloop", "").split())
        return MetricLabeling(g=need_graph(), labels=_parse_labels(keys["labels"]),
                              D=dd_tab, c=c_tab, allow=allow_tab,
                              objective=keys.get("objective", "P2").upper(),
                              noloop=noloop)
    if problem == "golomb":
        n = int_key("n")
        if n is None:
            raise ProblemError("golomb needs 'n ='")
        K = int_key("K", 2 * n * n)
        return Golomb(n=n, K=K, optimize=mode != "feasibility")
    if problem == "igc":
        return IGC(g=need_graph())
    if problem == "mlcm":
        g = need_graph()
        if not isinstance(g, LayeredGraph):
            raise ProblemError("mlcm needs a layered graph ('l' lines)")
        return MLCM(layered=g)
    raise ProblemError(f"unknown problem tag {problem!r}")


def load_spec(path: str):
    """Read a problem spec file; graph paths resolve relative to it."""
    base = os.path.dirname(os.path.abspath(path))

    def loader(rel):
        gpath = rel if os.path.isabs(rel) else os.path.join(base, rel)
        try:
            with open(gpath) as fh:
                return parse_graph(fh.read())
        except FileNotFoundError:
            raise ProblemError(f"graph file not found: {gpath}") from None
        except GraphError as exc:
            raise ProblemError(f"{gpath}: {exc}") from None

    with open(path) as fh:
        return parse_spec_text(fh.read(), loader)
