"""Predicate checks: does a (value, witness) pair satisfy a problem?

A checker never searches.  It verifies one candidate against the problem
statement and recomputes its objective, so claimed optima from the solver and
the oracles can be cross-examined.  Kept deliberately separate from the
oracles: a bug now has to survive three independent readings of the same
semantics (model rows, oracle enumeration, these predicates) to go unnoticed.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .graphs import complement, distance_two_pairs
from .problems import canon_edge
from .problems import (IGC, MLCM, Arrangement, Bandwidth, Coloring,
                       CommonSubgraph, Golomb, Isomorphism, KTsp, Labeling,
                       MatchingInstance, MetricLabeling, ProblemError)

ZERO = Fraction(0)


# ---------------------------------------------------------------------------
# general matching instances

def _form_value(inst, f, obj):
    g = inst.g

    def node_term(u):
        return inst.c(u, f[u]) if u in f else ZERO

    def edge_term(e):
        u, v = e
        if u in f and v in f:
            return inst.d(e, canon_edge(f[u], f[v], g.directed))
        return ZERO

    if obj == "P2":
        return (sum((node_term(u) for u in g.nodes()), ZERO)
                + sum((edge_term(e) for e in g.simple_edges()), ZERO))
    if obj in ("P1", "P3", "P6"):
        per_node = []
        for u in g.nodes():
            nb = sorted(g.neighbors(u))
            if obj == "P6":
                per_node.append(node_term(u) + sum(
                    (edge_term(canon_edge(u, v)) for v in nb), ZERO))
            elif nb:
                per_node.append(max(node_term(u) + edge_term(canon_edge(u, v))
                                    for v in nb))
            else:
                per_node.append(node_term(u))
        if obj == "P3":
            return sum((max(ZERO, s) for s in per_node), ZERO)
        return max([ZERO] + per_node)
    if obj == "P4":
        loads = [ZERO]
        for a in inst.gp.nodes():
            s = sum((inst.c(u, a) for u in f if f[u] == a), ZERO)
            for e in g.simple_edges():
                u, v = e
                if u in f and v in f and a in (f[u], f[v]):
                    s += inst.d(e, canon_edge(f[u], f[v]))
            loads.append(s)
        return max(loads)
    if obj == "P5":
        tot = ZERO
        for a in inst.gp.nodes():
            cand = [inst.c(u, a)
                    + sum((inst.d(canon_edge(u, v), canon_edge(a, f[v]))
                           for v in g.neighbors(u) if v in f), ZERO)
                    for u in f if f[u] == a]
            if cand:
                tot += max(ZERO, max(cand))
        return tot
    if obj == "P7":
        worst = ZERO
        for i in sorted(inst.gp.nodes()):
            s = ZERO
            for e in g.simple_edges():
                u, v = e
                if u not in f or v not in f or f[u] == f[v]:
                    continue
                lo, hi = min(f[u], f[v]), max(f[u], f[v])
                if lo <= i < hi:
                    s += inst.c(u, f[u]) + inst.c(v, f[v]) + inst.d(e, (lo, hi))
            worst = max(worst, s)
        return worst
    raise ProblemError(f"unknown objective form {obj!r}")


def check_map(inst: MatchingInstance, value, f, obj="output1") -> bool:
    """Does map f respect the regime and preserve adjacency, at this value?"""
    g, gp = inst.g, inst.gp
    if not isinstance(f, dict) or not set(f) <= set(g.nodes()):
        return False
    if any(f[u] not in inst.allow.get(u, ()) for u in f):
        return False
    regime = inst.regime
    if regime != "injective-partial" and set(f) != set(g.nodes()):
        return False
    if regime in ("one-to-one", "onto-total", "injective-partial"):
        if len(set(f.values())) != len(f):
            return False
    if regime in ("onto-total", "injective-partial"):
        if set(f.values()) != set(gp.nodes()):
            return False
    for e in g.simple_edges():
        u, v = e
        if u not in f or v not in f:
            continue
        a, b = f[u], f[v]
        if a == b:
            if not gp.has_loop(a):
                return False
        elif not gp.has_edge(a, b):
            return False
        if obj != "output3":
            ep = canon_edge(a, b, g.directed)
            if inst.d(e, ep) in inst.t(e):
                return False
    if obj == "output1":
        return value == ZERO
    if obj == "output3":
        want = ZERO
        for e in g.simple_edges():
            u, v = e
            if u in f and v in f:
                ep = canon_edge(f[u], f[v], g.directed)
                tau = inst.d(e, ep)
                if tau in inst.t(e):
                    want += inst.p(e, tau)
        return value == want
    return value == _form_value(inst, f, obj)


# ---------------------------------------------------------------------------
# named problems

def _perm_positions(g, pos):
    return (isinstance(pos, dict) and set(pos) == set(g.nodes())
            and sorted(pos.values()) == list(range(1, g.n + 1)))


def _check_ktsp(spec, value, w):
    g, k = spec.g, spec.k
    w = tuple(w)
    if len(w) != k or len(set(w)) != k or not set(w) <= set(g.nodes()):
        return False
    hops = [(w[i], w[(i + 1) % k]) for i in range(k)]
    if not all(g.has_edge(u, v) for u, v in hops):
        return False
    if spec.variant == "A":
        return value == ZERO
    ws = [g.weight(u, v) for u, v in hops]
    got = sum(ws, ZERO) if spec.variant == "B" else max(ws)
    if spec.K is not None and got > spec.K:
        return False
    return value == got


def _check_bandwidth(spec, value, pos):
    g = spec.g
    if not _perm_positions(g, pos):
        return False
    if g.directed and any(pos[u] >= pos[v] for u, v in g.simple_edges()):
        return False
    spread = max([abs(pos[u] - pos[v]) for u, v in g.simple_edges()], default=0)
    if spec.optimize:
        return value == spread
    bound = spec.K if spec.K is not None else g.n - 1
    return spread <= bound and value == ZERO


def _check_arrangement(spec, value, pos):
    g = spec.g
    if not _perm_positions(g, pos):
        return False
    kind = spec.kind
    if kind == "DLAP" and any(pos[u] >= pos[v] for u, v in g.simple_edges()):
        return False
    if kind == "LAP":
        got = sum((g.weight(u, v) * abs(pos[u] - pos[v])
                   for u, v in g.simple_edges()), ZERO)
    elif kind == "DLAP":
        got = sum((g.weight(u, v) * (pos[v] - pos[u])
                   for u, v in g.simple_edges()), ZERO)
    elif kind == "PMP":
        got = sum((pos[u] - min([pos[u]] + [pos[v] for v in g.neighbors(u)])
                   for u in g.nodes()), ZERO)
    elif kind == "MCLAP":
        got = ZERO
        for i in range(1, g.n):
            cut = sum(1 for u, v in g.simple_edges()
                      if min(pos[u], pos[v]) <= i < max(pos[u], pos[v]))
            got = max(got, Fraction(cut))
    else:
        return False
    if spec.optimize:
        if spec.K is not None and got > spec.K:
            return False
        return value == got
    return (spec.K is None or got <= spec.K) and value == ZERO


def _check_isomorphism(spec, value, f):
    host, pat = spec.g, spec.gp
    if value != ZERO or not isinstance(f, dict):
        return False
    if set(f) != set(pat.nodes()) or not set(f.values()) <= set(host.nodes()):
        return False
    if len(set(f.values())) != len(f):
        return False
    if spec.kind == "GI":
        if host.n != pat.n:
            return False
        for u in pat.nodes():
            for v in pat.nodes():
                if u != v and pat.has_edge(u, v) != host.has_edge(f[u], f[v]):
                    return False
        return True
    if not all(host.has_edge(f[u], f[v]) for u, v in pat.simple_edges()):
        return False
    if spec.kind == "ISI":
        for u, v in itertools.combinations(sorted(pat.nodes()), 2):
            if not pat.has_edge(u, v) and host.has_edge(f[u], f[v]):
                return False
    return True


def _check_common_subgraph(spec, value, w):
    g1, g2, kind = spec.g, spec.gp, spec.kind
    if kind == "MSM":
        pairs = tuple(w)
        if len(set(pairs)) != len(pairs):
            return False
        for u, a in pairs:
            if u not in set(g1.nodes()) or a not in set(g2.nodes()):
                return False
        for (u, a), (v, b) in itertools.combinations(pairs, 2):
            if u == v:
                ok = not (g2.has_edge(a, b) or g2.has_edge(b, a))
            elif a == b:
                ok = g2.has_loop(a) or not (g1.has_edge(u, v) or g1.has_edge(v, u))
            else:
                ok = (g1.has_edge(u, v) == g2.has_edge(a, b)
                      and g1.has_edge(v, u) == g2.has_edge(b, a))
            if not ok:
                return False
        return value == len(pairs)
    f = w
    if not isinstance(f, dict) or not set(f) <= set(g1.nodes()):
        return False
    if not set(f.values()) <= set(g2.nodes()) or len(set(f.values())) != len(f):
        return False
    if kind in ("LCS", "CMP"):
        if kind == "CMP" and any(f[u] >= f[v] for u, v in
                                 itertools.combinations(sorted(f), 2)):
            return False
        got = sum(1 for u, v in g1.simple_edges()
                  if u in f and v in f and g2.has_edge(f[u], f[v]))
        return value == got
    if kind == "MISM":
        for u in f:
            for v in f:
                if u != v and g1.has_edge(u, v) != g2.has_edge(f[u], f[v]):
                    return False
        return value == len(f)
    return False


def _proper(g, col):
    return not any(u in col and v in col and col[u] == col[v]
                   for u, v in g.simple_edges())


def _check_coloring(spec, value, w):
    g, kind = spec.g, spec.kind
    if kind == "MWIS":
        subset = tuple(w)
        if len(set(subset)) != len(subset) or not set(subset) <= set(g.nodes()):
            return False
        if any(g.has_edge(u, v) for u, v in itertools.combinations(subset, 2)):
            return False
        r = len(subset)
        return value == Fraction(r * (r - 1), 2)
    col = w
    if not isinstance(col, dict) or not set(col) <= set(g.nodes()):
        return False
    if kind in ("GKC", "GC", "WVCP", "MCP"):
        if set(col) != set(g.nodes()):
            return False
    if kind == "GKC":
        return (_proper(g, col) and all(1 <= c <= spec.K for c in col.values())
                and value == ZERO)
    if kind == "GC":
        if g.n == 0:
            return value == ZERO
        return (_proper(g, col) and min(col.values()) >= 1
                and value == max(col.values()))
    if kind in ("GH", "DGH"):
        gp = spec.gp
        if not set(col.values()) <= set(gp.nodes()):
            return False
        for u, v in g.simple_edges():
            a, b = col[u], col[v]
            if (a == b and not gp.has_loop(a)) or (a != b and not gp.has_edge(a, b)):
                return False
        return value == ZERO
    if kind in ("MWSCP_A", "MWSCP_B"):
        K = spec.K if spec.K is not None else max(c for _, c in spec.costs)
        if not _proper(g, col) or not all(1 <= c <= K for c in col.values()):
            return False
        score = sum((spec.costs.get((u, c), ZERO) for u, c in col.items()), ZERO)
        if kind == "MWSCP_A":
            return value == score
        if score != spec.zstar:
            return False
        return value == (max(col.values()) if col else 0)
    if kind == "WVCP":
        if not _proper(g, col):
            return False
        got = ZERO
        for c in set(col.values()):
            got += max(ZERO, max(spec.weights.get(u, ZERO)
                                 for u in col if col[u] == c))
        return value == got
    if kind == "MCP":
        K = spec.K if spec.K is not None else g.n
        if not all(1 <= c <= K for c in col.values()):
            return False
        if any(col[u] == col[v] for u, v in complement(g).simple_edges()):
            return False
        got = sum((g.weight(u, v) for u, v in g.simple_edges()
                   if col[u] == col[v]), ZERO)
        return value == got
    return False


def _check_labeling(spec, value, lab):
    g, kind = spec.g, spec.kind
    if not isinstance(lab, dict) or set(lab) != set(g.nodes()):
        return False
    if kind in ("GL_feas", "GL_opt"):
        lam = spec.lam if spec.lam is not None else (g.n - 1) * (spec.m + spec.k)
        if not all(0 <= x <= lam for x in lab.values()):
            return False
        if any(abs(lab[u] - lab[v]) < spec.m for u, v in g.simple_edges()):
            return False
        if any(abs(lab[u] - lab[v]) < spec.k for u, v in distance_two_pairs(g)):
            return False
        if kind == "GL_feas":
            return value == ZERO
        return value == max([0] + list(lab.values()))
    if kind != "FSFA":
        return False
    if not set(lab.values()) <= set(spec.F):
        return False
    tt, pp = spec.t or {}, spec.p or {}

    def look(tab, u, v, dflt):
        return tab.get((u, v), tab.get((v, u), dflt))

    got = sum((look(pp, u, v, ZERO) for u, v in g.simple_edges()
               if abs(lab[u] - lab[v]) <= look(tt, u, v, 0)), ZERO)
    return value == got


def _check_metric_labeling(spec, value, lab):
    g = spec.g
    if not isinstance(lab, dict) or set(lab) != set(g.nodes()):
        return False
    allow = {u: tuple(spec.allow.get(u, spec.labels)) for u in g.nodes()}
    if any(lab[u] not in allow[u] for u in g.nodes()):
        return False
    noloop = set(spec.noloop)
    if any(lab[u] == lab[v] and lab[u] in noloop for u, v in g.simple_edges()):
        return False

    def dmet(a, b):
        key = (a, b) if a <= b else (b, a)
        return spec.D.get(key, ZERO)

    if spec.objective == "P2":
        got = sum((spec.c.get((u, lab[u]), ZERO) for u in g.nodes()), ZERO)
        got += sum((g.weight(u, v) * dmet(lab[u], lab[v])
                    for u, v in g.simple_edges()), ZERO)
    else:
        got = ZERO
        for a in spec.labels:
            s = sum((spec.c.get((u, a), ZERO)
                     for u in g.nodes() if lab[u] == a), ZERO)
            s += sum((g.weight(u, v) * dmet(lab[u], lab[v])
                      for u, v in g.simple_edges() if a in (lab[u], lab[v])), ZERO)
            got = max(got, s)
    return value == got


def _check_golomb(spec, value, marks):
    marks = tuple(marks)
    if len(marks) != spec.n or not marks or marks[0] != 0:
        return False
    if any(marks[i] >= marks[i + 1] for i in range(len(marks) - 1)):
        return False
    if marks[-1] > spec.K:
        return False
    diffs = [b - a for a, b in itertools.combinations(marks, 2)]
    if len(set(diffs)) != len(diffs):
        return False
    return value == marks[-1] if spec.optimize else value == ZERO


def _check_igc(spec, value, pos):
    g = spec.g
    if not _perm_positions(g, pos):
        return False
    fills = set()
    for a, b in g.simple_edges():
        if pos[a] > pos[b]:
            a, b = b, a
        for z in g.nodes():
            if z not in (a, b) and pos[a] < pos[z] < pos[b] \
                    and not g.has_edge(z, b):
                fills.add((min(z, b), max(z, b)))
    return value == len(fills)


def _check_mlcm(spec, value, pos):
    L = spec.layered
    if not isinstance(pos, dict) or set(pos) != {u for layer in L.layers
                                                 for u in layer}:
        return False
    for layer in L.layers:
        if sorted(pos[u] for u in layer) != list(range(1, len(layer) + 1)):
            return False
    got = 0
    for (u, v), (w, z) in itertools.combinations(L.arcs, 2):
        if L.layer_of[u] != L.layer_of[w] or u == w or v == z:
            continue
        if (pos[u] - pos[w]) * (pos[v] - pos[z]) < 0:
            got += 1
    return value == got


_CHECK = {
    KTsp: _check_ktsp,
    Bandwidth: _check_bandwidth,
    Arrangement: _check_arrangement,
    Isomorphism: _check_isomorphism,
    CommonSubgraph: _check_common_subgraph,
    Coloring: _check_coloring,
    Labeling: _check_labeling,
    MetricLabeling: _check_metric_labeling,
    Golomb: _check_golomb,
    IGC: _check_igc,
    MLCM: _check_mlcm,
}


def check_witness(spec, value, witness) -> bool:
    """True iff witness is feasible for spec and attains the claimed value."""
    fn = _CHECK.get(type(spec))
    if fn is None:
        raise ProblemError(f"no checker for {type(spec).__name__}")
    if value is None or witness is None:
        return False
    try:
        return bool(fn(spec, value, witness))
    except (TypeError, KeyError, IndexError, ValueError):
        return False
