"""Per-problem 0-1 encodings over the shared assignment-row families.

Every encode_* returns a model whose exact optimum matches the corresponding
brute-force oracle: feasibility problems carry an empty objective (value 0
when feasible), bounded forms fold the budget K into the continuous
variable's upper limit so an over-budget instance comes back infeasible
rather than clamped.  decode_witness turns a solver assignment back into the
problem's native witness shape (the same shape the oracles emit).
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .framework import _infeasible_marker, build_output2, build_output3
from .graphs import Graph, complement, complete_graph, connected, distance_two_pairs
from .model import IPModel, add_table2_constraints, x_name, y_name, z_name
from .problems import (IGC, MLCM, Arrangement, Bandwidth, Coloring,
                       CommonSubgraph, Golomb, Isomorphism, KTsp, Labeling,
                       MatchingInstance, MetricLabeling, ProblemError)

ZERO = Fraction(0)


def _grid(model, us, aas):
    for u in us:
        for a in aas:
            model.add_binary(x_name(u, a), tag=("x", u, a))


def _order_digraph(n):
    # arcs i -> j for i < j: mapped arcs must run up the position order
    return Graph(n, [(i, j) for i in range(1, n + 1)
                     for j in range(i + 1, n + 1)], directed=True)


def _band_graph(n, K, directed):
    edges = [(i, j) for i in range(1, n + 1)
             for j in range(i + 1, n + 1) if j - i <= K]
    return Graph(n, edges, directed=directed)


def _elook(tab, u, v, default):
    return tab.get((u, v), tab.get((v, u), default))


def _gap_rows(model, g, gp):
    # exact-correspondence gap: a one-way pattern pair cannot sit on a two-way
    # target pair, because the pattern's reverse gap must land on a gap too
    for (u, v) in g.simple_edges():
        if g.has_edge(v, u):
            continue
        for (a, b) in gp.simple_edges():
            if not gp.has_edge(b, a):
                continue
            model.add_constraint(f"gap_{u}_{v}__{a}_{b}",
                                 [(x_name(u, a), 1), (x_name(v, b), 1)], "<=", 1)


# ---------------------------------------------------------------------------
# k-TSP

def encode_ktsp(spec: KTsp) -> IPModel:
    g, k = spec.g, spec.k
    if not g.directed:
        raise ProblemError("ktsp takes a directed graph")
    if not 2 <= k <= g.n:
        raise ProblemError(f"need 2 <= k <= {g.n}")
    if spec.variant not in ("A", "B", "C"):
        raise ProblemError(f"unknown ktsp variant {spec.variant!r}")
    circle = Graph(k, [(i, i % k + 1) for i in range(1, k + 1)], directed=True)
    model = IPModel(f"ktsp_{spec.variant.lower()}")
    _grid(model, g.nodes(), circle.nodes())
    add_table2_constraints(model, "a2", g, circle)    # every slot gets a city
    add_table2_constraints(model, "b1", g, circle)    # a city rides at most once
    for u in g.nodes():
        nbrs = [v for v in sorted(g.neighbors(u)) if v != u]
        for i in circle.nodes():
            j = i % k + 1
            terms = [(x_name(u, i), 1)] + [(x_name(v, j), -1) for v in nbrs]
            model.add_constraint(f"succ_{u}_{i}", terms, "<=", 0)
    if spec.variant == "A":
        return model
    if any(g.weight(u, v) < 0 for u, v in g.simple_edges()):
        raise ProblemError("ktsp distance variants need nonnegative weights")
    ys = []
    for e in g.simple_edges():
        for i in circle.nodes():
            ep = (i, i % k + 1)
            yv = model.add_binary(y_name(e, ep), tag=("y", e, ep))
            ys.append((e, yv))
    add_table2_constraints(model, "g", g, circle)
    if spec.variant == "B":
        cap = sum((g.weight(u, v) for u, v in g.simple_edges()), ZERO)
    else:
        cap = max([g.weight(u, v) for u, v in g.simple_edges()], default=ZERO)
    if spec.K is not None:
        cap = min(cap, Fraction(spec.K))
    kv = model.add_continuous("K", cap, tag=("K",))
    if spec.variant == "B":
        terms = [(yv, g.weight(*e)) for e, yv in ys] + [(kv, -1)]
        model.add_constraint("total", terms, "<=", 0)
    else:
        for e, yv in ys:
            w = g.weight(*e)
            if w != 0:
                model.add_constraint(f"cap_{yv}", [(yv, w), (kv, -1)], "<=", 0)
    model.set_objective("min", [(kv, 1)])
    return model


# ---------------------------------------------------------------------------
# bandwidth and linear arrangements

def encode_bandwidth(spec: Bandwidth) -> IPModel:
    g, n = spec.g, spec.g.n
    model = IPModel("bandwidth")
    if not spec.optimize:
        K = spec.K if spec.K is not None else n - 1
        band = _band_graph(n, K, g.directed)
        _grid(model, g.nodes(), band.nodes())
        add_table2_constraints(model, "a1", g, band)
        add_table2_constraints(model, "a2", g, band)
        if g.directed:
            add_table2_constraints(model, "d1", g, band)
            add_table2_constraints(model, "e", g, band)
        else:
            add_table2_constraints(model, "c1", g, band)
        return model
    target = _order_digraph(n) if g.directed else complete_graph(n)
    _grid(model, g.nodes(), target.nodes())
    add_table2_constraints(model, "a1", g, target)
    add_table2_constraints(model, "a2", g, target)
    if g.directed:
        add_table2_constraints(model, "e", g, target)
    for e in g.simple_edges():
        for ep in target.simple_edges():
            model.add_binary(y_name(e, ep), tag=("y", e, ep))
    add_table2_constraints(model, "g" if g.directed else "f", g, target)
    kv = model.add_continuous("K", max(n - 1, 0), tag=("K",))
    for e in g.simple_edges():
        for ep in target.simple_edges():
            stretch = abs(ep[1] - ep[0])
            model.add_constraint(f"bw_{y_name(e, ep)}",
                                 [(model.by_tag(("y", e, ep)), stretch),
                                  (kv, -1)], "<=", 0)
    model.set_objective("min", [(kv, 1)])
    return model


def _encode_pmp(spec):
    g = spec.g
    target = complete_graph(g.n)
    node_cost, edge_cost = {}, {}
    for u in g.nodes():
        if g.neighbors(u):                # isolated nodes cost nothing
            for a in target.nodes():
                node_cost[(u, a)] = Fraction(a)
    for e in g.simple_edges():
        for ep in target.simple_edges():
            edge_cost[(e, ep)] = Fraction(-min(ep))
    inst = MatchingInstance(g=g, gp=target,
                            allow={u: tuple(target.nodes()) for u in g.nodes()},
                            node_cost=node_cost, edge_cost=edge_cost,
                            regime="onto-total")
    model = build_output2(inst, "P3")
    if spec.K is not None:
        terms = [(model.by_tag(("Ku", u)), 1) for u in g.nodes()]
        if terms:
            model.add_constraint("cap", terms, "<=", spec.K)
    if not spec.optimize:
        model.set_objective("min", [])
    return model


def encode_arrangement(spec: Arrangement) -> IPModel:
    g, kind, n = spec.g, spec.kind, spec.g.n
    if kind == "DLAP":
        if not g.directed:
            raise ProblemError("dlap takes a directed graph")
    elif g.directed:
        raise ProblemError(f"{kind.lower()} takes an undirected graph")
    if kind == "PMP":
        return _encode_pmp(spec)
    if kind not in ("LAP", "DLAP", "MCLAP"):
        raise ProblemError(f"unknown arrangement kind {kind!r}")
    if kind != "MCLAP" and any(g.weight(u, v) < 0 for u, v in g.simple_edges()):
        raise ProblemError(f"{kind.lower()} needs nonnegative weights")
    model = IPModel(kind.lower())
    target = _order_digraph(n) if kind == "DLAP" else complete_graph(n)
    _grid(model, g.nodes(), target.nodes())
    add_table2_constraints(model, "a1", g, target)
    add_table2_constraints(model, "a2", g, target)
    if kind == "DLAP":
        add_table2_constraints(model, "e", g, target)
    for e in g.simple_edges():
        for ep in target.simple_edges():
            model.add_binary(y_name(e, ep), tag=("y", e, ep))
    add_table2_constraints(model, "g" if kind == "DLAP" else "f", g, target)
    if kind == "MCLAP":
        cap = Fraction(len(g.simple_edges()))
    else:
        cap = sum((g.weight(u, v) * (n - 1) for u, v in g.simple_edges()), ZERO)
    if spec.K is not None:
        cap = min(cap, Fraction(spec.K))
    kv = model.add_continuous("K", cap, tag=("K",))
    if kind == "MCLAP":
        for i in range(1, n):
            terms = [(model.by_tag(("y", e, ep)), 1)
                     for e in g.simple_edges()
                     for ep in target.simple_edges() if ep[0] <= i < ep[1]]
            if terms:
                terms.append((kv, -1))
                model.add_constraint(f"cut_{i}", terms, "<=", 0)
    else:
        terms = []
        for e in g.simple_edges():
            w = g.weight(*e)
            for ep in target.simple_edges():
                coef = w * abs(ep[1] - ep[0])
                if coef:
                    terms.append((model.by_tag(("y", e, ep)), coef))
        terms.append((kv, -1))
        model.add_constraint("total", terms, "<=", 0)
    if spec.optimize:
        model.set_objective("min", [(kv, 1)])
    return model


# ---------------------------------------------------------------------------
# isomorphisms and common subgraphs

def encode_isomorphism(spec: Isomorphism) -> IPModel:
    host, pat, kind = spec.g, spec.gp, spec.kind
    model = IPModel(kind.lower())
    if kind == "GI":
        if host.directed != pat.directed:
            raise ProblemError("gi needs graphs of the same directedness")
        # mismatched sizes leave the two exactly-once families unsatisfiable
        _grid(model, pat.nodes(), host.nodes())
        add_table2_constraints(model, "a1", pat, host)
        add_table2_constraints(model, "a2", pat, host)
        if pat.directed:
            add_table2_constraints(model, "d1", pat, host)
            add_table2_constraints(model, "d2", pat, host)
            add_table2_constraints(model, "e", pat, host)
            _gap_rows(model, pat, host)
        else:
            add_table2_constraints(model, "c1", pat, host)
            add_table2_constraints(model, "c2", pat, host)
        return model
    if kind not in ("SI", "ISI"):
        raise ProblemError(f"unknown isomorphism kind {kind!r}")
    if host.directed or pat.directed:
        raise ProblemError("si/isi take undirected graphs")
    if pat.n > host.n:
        raise ProblemError("pattern larger than host")
    # the map runs host -> pattern: chosen host nodes cover the pattern once
    _grid(model, host.nodes(), pat.nodes())
    add_table2_constraints(model, "a2", host, pat)
    add_table2_constraints(model, "b1", host, pat)
    add_table2_constraints(model, "c2", host, pat)    # pattern edges need real edges
    if kind == "ISI":
        add_table2_constraints(model, "c1", host, pat)
    return model


def encode_common_subgraph(spec: CommonSubgraph) -> IPModel:
    g1, g2, kind = spec.g, spec.gp, spec.kind
    model = IPModel(kind.lower())
    if kind in ("LCS", "CMP"):
        if g1.directed or g2.directed:
            raise ProblemError(f"{kind.lower()} takes undirected graphs")
        _grid(model, g1.nodes(), g2.nodes())
        add_table2_constraints(model, "b1", g1, g2)
        add_table2_constraints(model, "b2", g1, g2)
        obj = []
        if kind == "CMP":
            for u, v in itertools.combinations(sorted(g1.nodes()), 2):
                for a, b in itertools.combinations(sorted(g2.nodes()), 2):
                    model.add_constraint(f"nc_{u}_{v}__{a}_{b}",
                                         [(x_name(u, b), 1), (x_name(v, a), 1)],
                                         "<=", 1)
        for e in g1.simple_edges():
            u, v = e
            for ep in g2.simple_edges():
                a, b = ep
                yv = model.add_binary(y_name(e, ep), tag=("y", e, ep))
                model.add_constraint(f"u1_{yv}",
                                     [(yv, 1), (x_name(u, a), -1)], "<=", 0)
                model.add_constraint(f"u2_{yv}",
                                     [(yv, 1), (x_name(v, b), -1)], "<=", 0)
                obj.append((yv, 1))
                if kind == "LCS":
                    zv = model.add_binary(z_name(e, ep), tag=("z", e, ep))
                    model.add_constraint(f"u3_{zv}",
                                         [(zv, 1), (x_name(u, b), -1)], "<=", 0)
                    model.add_constraint(f"u4_{zv}",
                                         [(zv, 1), (x_name(v, a), -1)], "<=", 0)
                    obj.append((zv, 1))
        model.set_objective("max", obj)
        return model
    if kind not in ("MISM", "MSM"):
        raise ProblemError(f"unknown common-subgraph kind {kind!r}")
    if not (g1.directed and g2.directed):
        raise ProblemError(f"{kind.lower()} takes directed graphs")
    _grid(model, g1.nodes(), g2.nodes())
    if kind == "MISM":
        add_table2_constraints(model, "b1", g1, g2)
        add_table2_constraints(model, "b2", g1, g2)
    else:
        add_table2_constraints(model, "h2", g1, g2)
        add_table2_constraints(model, "i2", g1, g2)
    add_table2_constraints(model, "d1", g1, g2)
    add_table2_constraints(model, "d2", g1, g2)
    add_table2_constraints(model, "e", g1, g2)
    _gap_rows(model, g1, g2)
    model.set_objective("max", [(x_name(u, a), 1)
                                for u in g1.nodes() for a in g2.nodes()])
    return model


# ---------------------------------------------------------------------------
# colorings, partitions, homomorphisms

def _mcp_core(model, h, K, weight_of, partial):
    # classes are cliques of h; each class node carries a self-loop so the
    # within-class and-variables have a well-formed target pair
    target = Graph(K, [(c, c) for c in range(1, K + 1)],
                   self_loops_allowed=True)
    _grid(model, h.nodes(), target.nodes())
    add_table2_constraints(model, "b1" if partial else "a1", h, target)
    for (u, v) in complement(h).simple_edges():
        for c in target.nodes():
            model.add_constraint(f"apart_{u}_{v}__{c}",
                                 [(x_name(u, c), 1), (x_name(v, c), 1)],
                                 "<=", 1)
    obj = []
    for e in h.simple_edges():
        w = weight_of(e)
        if w == 0:
            continue
        u, v = e
        for c in target.nodes():
            yv = model.add_binary(y_name(e, (c, c)), tag=("y", e, (c, c)))
            # linked both ways so the objective is exact for any weight sign
            model.add_constraint(f"yu1_{yv}", [(yv, 1), (x_name(u, c), -1)],
                                 "<=", 0)
            model.add_constraint(f"yu2_{yv}", [(yv, 1), (x_name(v, c), -1)],
                                 "<=", 0)
            model.add_constraint(f"yl_{yv}",
                                 [(x_name(u, c), 1), (x_name(v, c), 1), (yv, -1)],
                                 "<=", 1)
            obj.append((yv, w))
    model.set_objective("max", obj)


def encode_coloring(spec: Coloring) -> IPModel:
    g, kind = spec.g, spec.kind
    model = IPModel(kind.lower())
    if kind in ("GKC", "GC"):
        if kind == "GKC" and spec.K is None:
            raise ProblemError("gkc needs K")
        K = spec.K if kind == "GKC" else g.n
        if K == 0 and g.n:
            _infeasible_marker(model, "no_colors")
            return model
        target = complete_graph(K)
        _grid(model, g.nodes(), target.nodes())
        add_table2_constraints(model, "a1", g, target)
        add_table2_constraints(model, "i1", g, target)
        if kind == "GC":
            kv = model.add_continuous("K", g.n, tag=("K",))
            for u in g.nodes():
                for c in target.nodes():
                    model.add_constraint(f"idx_{u}_{c}",
                                         [(x_name(u, c), c), (kv, -1)], "<=", 0)
            model.set_objective("min", [(kv, 1)])
        return model
    if kind in ("GH", "DGH"):
        gp = spec.gp
        if gp is None:
            raise ProblemError(f"{kind.lower()} needs a target graph")
        want = kind == "DGH"
        if g.directed != want or gp.directed != want:
            raise ProblemError(f"{kind.lower()} directedness mismatch")
        _grid(model, g.nodes(), gp.nodes())
        add_table2_constraints(model, "a1", g, gp)
        if want:
            add_table2_constraints(model, "d1", g, gp)
            add_table2_constraints(model, "e", g, gp)
            add_table2_constraints(model, "i2", g, gp)
        else:
            add_table2_constraints(model, "c1", g, gp)
            add_table2_constraints(model, "i1", g, gp)
        return model
    if kind in ("MWSCP_A", "MWSCP_B"):
        if not spec.costs:
            raise ProblemError(f"{kind.lower()} needs assignment costs")
        K = spec.K if spec.K is not None else max(c for _, c in spec.costs)
        target = complete_graph(K)
        _grid(model, g.nodes(), target.nodes())
        add_table2_constraints(model, "b1", g, target)
        add_table2_constraints(model, "i1", g, target)
        priced = [(x_name(u, c), Fraction(w))
                  for (u, c), w in sorted(spec.costs.items())
                  if 1 <= c <= K and 1 <= u <= g.n and w != 0]
        if kind == "MWSCP_A":
            model.set_objective("max", priced)
            return model
        if spec.zstar is None:
            raise ProblemError("mwscp_b needs zstar")
        if priced:
            model.add_constraint("score", priced, "=", spec.zstar)
        elif spec.zstar != 0:
            _infeasible_marker(model, "score")
            return model
        kv = model.add_continuous("l", K, tag=("K",))
        for u in g.nodes():
            for c in target.nodes():
                model.add_constraint(f"span_{u}_{c}",
                                     [(x_name(u, c), c), (kv, -1)], "<=", 0)
        model.set_objective("min", [(kv, 1)])
        return model
    if kind == "WVCP":
        if not spec.weights:
            raise ProblemError("wvcp needs node weights")
        target = complete_graph(g.n)
        _grid(model, g.nodes(), target.nodes())
        add_table2_constraints(model, "a1", g, target)
        add_table2_constraints(model, "i1", g, target)
        cap = max([Fraction(w) for w in spec.weights.values() if w > 0],
                  default=ZERO)
        obj = []
        for c in target.nodes():
            kv = model.add_continuous(f"K_{c}", cap, tag=("Ku", c))
            for u in g.nodes():
                w = Fraction(spec.weights.get(u, 0))
                if w != 0:
                    model.add_constraint(f"load_{u}_{c}",
                                         [(x_name(u, c), w), (kv, -1)], "<=", 0)
            obj.append((kv, 1))
        model.set_objective("min", obj)
        return model
    if kind == "MCP":
        if g.directed:
            raise ProblemError("mcp takes an undirected graph")
        K = spec.K if spec.K is not None else g.n
        _mcp_core(model, g, K, lambda e: g.weight(*e), partial=False)
        return model
    if kind == "MWIS":
        if g.directed:
            raise ProblemError("mwis takes an undirected graph")
        _mcp_core(model, complement(g), 1, lambda e: Fraction(1), partial=True)
        return model
    raise ProblemError(f"unknown coloring kind {kind!r}")


# ---------------------------------------------------------------------------
# labelings

def encode_labeling(spec: Labeling) -> IPModel:
    g, kind = spec.g, spec.kind
    if kind in ("GL_feas", "GL_opt"):
        if g.directed:
            raise ProblemError("gl takes an undirected graph")
        m, k = spec.m, spec.k
        if m < k:
            raise ProblemError("gl needs m >= k")
        lam = spec.lam if spec.lam is not None else (g.n - 1) * (m + k)
        labels = range(lam + 1)
        model = IPModel("gl")
        for u in g.nodes():
            for a in labels:
                model.add_binary(x_name(u, a), tag=("x", u, a))
        for u in g.nodes():
            model.add_constraint(f"a1_{u}",
                                 [(x_name(u, a), 1) for a in labels], "=", 1)

        def separated(pairs, thr, prefix):
            for (u, v) in pairs:
                if thr > 0:
                    for a in labels:
                        model.add_constraint(f"{prefix}s_{u}_{v}__{a}",
                                             [(x_name(u, a), 1), (x_name(v, a), 1)],
                                             "<=", 1)
                for a, b in itertools.combinations(labels, 2):
                    if b - a < thr:
                        model.add_constraint(f"{prefix}_{u}_{v}__{a}_{b}_1",
                                             [(x_name(u, a), 1), (x_name(v, b), 1)],
                                             "<=", 1)
                        model.add_constraint(f"{prefix}_{u}_{v}__{a}_{b}_2",
                                             [(x_name(u, b), 1), (x_name(v, a), 1)],
                                             "<=", 1)

        separated(g.simple_edges(), m, "gl")
        separated(sorted(distance_two_pairs(g)), k, "gld")
        if kind == "GL_opt":
            kv = model.add_continuous("lam", lam, tag=("K",))
            for u in g.nodes():
                for a in labels:
                    if a:
                        model.add_constraint(f"span_{u}_{a}",
                                             [(x_name(u, a), a), (kv, -1)],
                                             "<=", 0)
            model.set_objective("min", [(kv, 1)])
        return model
    if kind != "FSFA":
        raise ProblemError(f"unknown labeling kind {kind!r}")
    if not spec.F:
        raise ProblemError("fsfa needs a frequency set")
    freqs = sorted(spec.F)
    target = complete_graph(len(freqs), self_loops=True)
    tt, pp = spec.t or {}, spec.p or {}
    edge_cost, forbidden, penalty = {}, {}, {}
    for e in g.simple_edges():
        u, v = e
        tol = int(_elook(tt, u, v, 0))
        pen = Fraction(_elook(pp, u, v, 0))
        forbidden[e] = frozenset(range(tol + 1))
        for ep in target.edge_pairs():
            gap = Fraction(abs(freqs[ep[0] - 1] - freqs[ep[1] - 1]))
            if gap != 0:
                edge_cost[(e, ep)] = gap
        if pen != 0:
            for tau in sorted(forbidden[e]):
                penalty[(e, tau)] = pen
    inst = MatchingInstance(g=g, gp=target,
                            allow={u: tuple(target.nodes()) for u in g.nodes()},
                            edge_cost=edge_cost, forbidden=forbidden,
                            penalty=penalty)
    return build_output3(inst)


def encode_metric_labeling(spec: MetricLabeling) -> IPModel:
    g = spec.g
    if spec.objective not in ("P2", "P4"):
        raise ProblemError(f"mlp objective must be P2 or P4, got {spec.objective!r}")
    labels = sorted(set(spec.labels))
    if not labels:
        raise ProblemError("mlp needs labels")
    idx = {lab: i + 1 for i, lab in enumerate(labels)}
    noloop = set(spec.noloop)
    if not noloop <= set(labels):
        raise ProblemError("noloop label outside the label set")
    pairs = [(idx[a], idx[b]) for a, b in itertools.combinations(labels, 2)]
    loops = [(idx[a], idx[a]) for a in labels if a not in noloop]
    target = Graph(len(labels), pairs + loops, self_loops_allowed=True)
    allow = {}
    for u in g.nodes():
        opts = spec.allow.get(u, labels)
        if not set(opts) <= set(labels):
            raise ProblemError(f"allow set of node {u} leaves the label set")
        allow[u] = tuple(sorted(idx[lab] for lab in opts))
    node_cost = {}
    for (u, lab), cost in spec.c.items():
        if lab not in idx:
            raise ProblemError(f"cost on unknown label {lab!r}")
        node_cost[(u, idx[lab])] = Fraction(cost)
    edge_cost = {}
    for e in g.simple_edges():
        w = g.weight(*e)
        for a, b in itertools.combinations_with_replacement(labels, 2):
            if a == b and a in noloop:
                continue
            dv = w * Fraction(spec.D.get((min(a, b), max(a, b)), 0))
            if dv != 0:
                edge_cost[(e, (idx[a], idx[b]))] = dv
    inst = MatchingInstance(g=g, gp=target, allow=allow,
                            node_cost=node_cost, edge_cost=edge_cost)
    return build_output2(inst, spec.objective)


# ---------------------------------------------------------------------------
# Golomb rulers, interval completion, layered crossings

def encode_golomb(spec: Golomb) -> IPModel:
    n, K = spec.n, spec.K
    if n < 1 or K < 0:
        raise ProblemError("golomb needs n >= 1, K >= 0")
    if n > K + 1:
        raise ProblemError("more marks than admissible values")
    model = IPModel("golomb")
    vals = range(K + 1)
    for i in range(1, n + 1):
        for a in vals:
            model.add_binary(x_name(i, a), tag=("x", i, a))
    for i in range(1, n + 1):
        model.add_constraint(f"a1_{i}",
                             [(x_name(i, a), 1) for a in vals], "=", 1)
    for a in vals:
        model.add_constraint(f"b2_{a}",
                             [(x_name(i, a), 1) for i in range(1, n + 1)],
                             "<=", 1)
    model.add_constraint("anchor", [(x_name(1, 0), 1)], "=", 1)
    by_diff = {}
    for i, j in itertools.combinations(range(1, n + 1), 2):
        for a, b in itertools.combinations(vals, 2):
            # earlier marks carry smaller values
            model.add_constraint(f"nc_{i}_{j}__{a}_{b}",
                                 [(x_name(i, b), 1), (x_name(j, a), 1)],
                                 "<=", 1)
            yv = model.add_binary(y_name((i, j), (a, b)),
                                  tag=("y", (i, j), (a, b)))
            model.add_constraint(f"g_{yv}",
                                 [(x_name(i, a), 1), (x_name(j, b), 1), (yv, -1)],
                                 "<=", 1)
            by_diff.setdefault(b - a, []).append(yv)
    for d in sorted(by_diff):
        model.add_constraint(f"diff_{d}",
                             [(yv, 1) for yv in by_diff[d]], "<=", 1)
    if spec.optimize:
        kv = model.add_continuous("K", K, tag=("K",))
        for i in range(1, n + 1):
            for a in vals:
                if a:
                    model.add_constraint(f"span_{i}_{a}",
                                         [(x_name(i, a), a), (kv, -1)], "<=", 0)
        model.set_objective("min", [(kv, 1)])
    return model


def encode_igc(g: Graph) -> IPModel:
    if g.directed:
        raise ProblemError("igc takes an undirected graph")
    if not connected(g):
        raise ProblemError("igc takes a connected graph")
    model = IPModel("igc")
    target = complete_graph(g.n)
    _grid(model, g.nodes(), target.nodes())
    add_table2_constraints(model, "a1", g, target)
    add_table2_constraints(model, "a2", g, target)
    fills, obj = {}, []
    for (a, b) in complement(g).simple_edges():
        yv = model.add_binary(f"fill_{a}_{b}", tag=("fill", a, b))
        fills[(a, b)] = yv
        obj.append((yv, 1))
    positions = range(1, g.n + 1)
    for (p, q) in g.simple_edges():
        for (u, v) in ((p, q), (q, p)):
            for z in g.nodes():
                if z in (u, v):
                    continue
                yv = fills.get((min(z, v), max(z, v)))
                if yv is None:          # {z,v} already an edge
                    continue
                # an edge spanning z forces z adjacent to its later endpoint
                for up, zp, vp in itertools.combinations(positions, 3):
                    model.add_constraint(
                        f"tri_{u}_{v}_{z}__{up}_{zp}_{vp}",
                        [(x_name(u, up), 1), (x_name(z, zp), 1),
                         (x_name(v, vp), 1), (yv, -1)], "<=", 2)
    model.set_objective("min", obj)
    return model


def encode_mlcm(layered) -> IPModel:
    L = layered
    model = IPModel("mlcm")
    for layer in L.layers:
        for u in layer:
            for p in range(1, len(layer) + 1):
                model.add_binary(x_name(u, p), tag=("x", u, p))
    for li, layer in enumerate(L.layers):
        size = len(layer)
        for u in layer:
            model.add_constraint(f"a1_{u}",
                                 [(x_name(u, p), 1) for p in range(1, size + 1)],
                                 "=", 1)
        for p in range(1, size + 1):
            model.add_constraint(f"a2_{li}_{p}",
                                 [(x_name(u, p), 1) for u in layer], "=", 1)
    obj = []
    for (u, v), (w, z) in itertools.combinations(L.arcs, 2):
        if L.layer_of[u] != L.layer_of[w] or u == w or v == z:
            continue
        yv = model.add_binary(f"cross_{u}_{v}__{w}_{z}",
                              tag=("cross", (u, v), (w, z)))
        obj.append((yv, 1))
        ns = len(L.layers[L.layer_of[u]])
        nd = len(L.layers[L.layer_of[v]])
        for p, q in itertools.permutations(range(1, ns + 1), 2):
            for r, s in itertools.permutations(range(1, nd + 1), 2):
                if (p < q) != (r < s):
                    model.add_constraint(
                        f"c_{u}_{v}_{w}_{z}__{p}_{q}_{r}_{s}",
                        [(x_name(u, p), 1), (x_name(w, q), 1),
                         (x_name(v, r), 1), (x_name(z, s), 1), (yv, -1)],
                        "<=", 3)
    model.set_objective("min", obj)
    return model


# ---------------------------------------------------------------------------
# dispatch and witness decoding

_ENCODERS = {
    KTsp: encode_ktsp,
    Bandwidth: encode_bandwidth,
    Arrangement: encode_arrangement,
    Isomorphism: encode_isomorphism,
    CommonSubgraph: encode_common_subgraph,
    Coloring: encode_coloring,
    Labeling: encode_labeling,
    MetricLabeling: encode_metric_labeling,
    Golomb: encode_golomb,
}


def encode(spec) -> IPModel:
    if isinstance(spec, IGC):
        return encode_igc(spec.g)
    if isinstance(spec, MLCM):
        return encode_mlcm(spec.layered)
    fn = _ENCODERS.get(type(spec))
    if fn is None:
        raise ProblemError(f"no encoder for {type(spec).__name__}")
    return fn(spec)


def decode_witness(spec, model: IPModel, assignment):
    """Solver assignment -> the problem's native witness shape."""
    chosen = [(tag[1], tag[2]) for name, tag in model.tag_of.items()
              if tag[0] == "x" and assignment.get(name)]
    amap = dict(chosen)
    if isinstance(spec, KTsp):
        bypos = {a: u for (u, a) in chosen}
        seq = [bypos[i] for i in range(1, spec.k + 1)]
        r = seq.index(min(seq))
        return tuple(seq[r:] + seq[:r])
    if isinstance(spec, (Bandwidth, Arrangement, IGC, MLCM)):
        return amap
    if isinstance(spec, Isomorphism):
        if spec.kind == "GI":
            return amap
        return {a: u for (u, a) in chosen}        # invert: pattern -> host
    if isinstance(spec, CommonSubgraph):
        return tuple(sorted(chosen)) if spec.kind == "MSM" else amap
    if isinstance(spec, Coloring):
        if spec.kind == "MWIS":
            return tuple(sorted(u for u, _ in chosen))
        return amap
    if isinstance(spec, Labeling):
        if spec.kind == "FSFA":
            freqs = sorted(spec.F)
            return {u: freqs[a - 1] for (u, a) in chosen}
        return amap
    if isinstance(spec, MetricLabeling):
        labels = sorted(set(spec.labels))
        return {u: labels[a - 1] for (u, a) in chosen}
    if isinstance(spec, Golomb):
        return tuple(amap[i] for i in range(1, spec.n + 1))
    raise ProblemError(f"no decoder for {type(spec).__name__}")


def render_witness(spec, witness) -> str:
    if witness is None:
        return "(none)"
    if isinstance(spec, KTsp):
        return "tour: " + " -> ".join(str(u) for u in witness + witness[:1])
    if isinstance(spec, Golomb):
        return "marks: " + " ".join(str(a) for a in witness)
    if isinstance(spec, Coloring) and spec.kind == "MWIS":
        return "set: " + (" ".join(str(u) for u in witness) or "(empty)")
    if isinstance(spec, CommonSubgraph) and spec.kind == "MSM":
        return "pairs: " + (" ".join(f"({u},{a})" for u, a in witness)
                            or "(empty)")
    if isinstance(spec, (Bandwidth, Arrangement, IGC, MLCM)):
        label = "positions"
    elif isinstance(spec, Coloring):
        label = "colors"
    elif isinstance(spec, (Labeling, MetricLabeling)):
        label = "labels"
    else:
        label = "map"
    body = ", ".join(f"{u}->{witness[u]}" for u in sorted(witness))
    return f"{label}: {body or '(empty)'}"
