"""Brute-force reference solvers.

Every oracle here enumerates candidate solutions straight from the problem
statement, using only the graph types — none of the IP machinery is imported,
so a disagreement between an oracle and a compiled model indicts exactly one
side.  Enumeration is guarded by a candidate cap (GMIP_ORACLE_CAP, default
10^7); exceeding it raises instead of silently truncating.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction

from .graphs import Graph, LayeredGraph, complement, connected, distance_two_pairs
from .problems import (Arrangement, Bandwidth, Coloring, CommonSubgraph, Golomb,
                       IGC, Isomorphism, KTsp, Labeling, MLCM, MatchingInstance,
                       MetricLabeling, OBJECTIVE_FORMS, ProblemError, canon_edge,
                       validate_instance)

DEFAULT_CAP = 10_000_000

ZERO = Fraction(0)


class OracleCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleResult:
    status: str                 # "optimal" | "infeasible"
    value: Fraction | None = None
    witness: object = None


INFEASIBLE = OracleResult("infeasible")


class _Budget:
    __slots__ = ("left",)

    def __init__(self):
        self.left = int(os.environ.get("GMIP_ORACLE_CAP", DEFAULT_CAP))

    def tick(self, k=1):
        self.left -= k
        if self.left < 0:
            raise OracleCapExceeded(
                "enumeration cap exceeded; set GMIP_ORACLE_CAP to raise it")


def _ok(value=ZERO, witness=None):
    return OracleResult("optimal", value, witness)


def _elook(tab, u, v, default):
    return tab.get((u, v), tab.get((v, u), default))


# ---------------------------------------------------------------------------
# general matching instances

def _framework_maps(inst, budget):
    g, gp = inst.g, inst.gp
    regime = inst.regime
    nodes = list(g.nodes())
    allow = {u: sorted(inst.allow.get(u, ())) for u in nodes}
    injective = regime in ("one-to-one", "onto-total", "injective-partial")
    partial = regime == "injective-partial"
    surjective = regime in ("onto-total", "injective-partial")
    targets = set(gp.nodes())
    f, used = {}, set()

    def rec(i):
        if i == len(nodes):
            budget.tick()
            if not surjective or used == targets:
                yield dict(f)
            return
        u = nodes[i]
        if partial:
            yield from rec(i + 1)
        for a in allow[u]:
            if injective and a in used:
                continue
            f[u] = a
            used.add(a)
            yield from rec(i + 1)
            used.discard(a)
            del f[u]

    yield from rec(0)


def _fpair(inst, f, e):
    a, b = f.get(e[0]), f.get(e[1])
    if a is None or b is None:
        return None
    return canon_edge(a, b, inst.g.directed)


def _map_ok(inst, f, respect_forbidden=True):
    gp = inst.gp
    for e in inst.g.simple_edges():
        ep = _fpair(inst, f, e)
        if ep is None:
            continue
        a, b = ep
        if a == b:
            if not gp.has_loop(a):
                return False
        elif not gp.has_edge(a, b):
            return False
        if respect_forbidden and inst.d(e, ep) in inst.t(e):
            return False
    return True


def _functional(inst, f, obj):
    g, gp = inst.g, inst.gp

    def cval(u):
        a = f.get(u)
        return inst.c(u, a) if a is not None else ZERO

    def dval(e):
        ep = _fpair(inst, f, e)
        return inst.d(e, ep) if ep is not None else ZERO

    if obj == "P1":
        rows = [ZERO]
        for u in g.nodes():
            nb = sorted(g.neighbors(u))
            if not nb:
                rows.append(cval(u))
            else:
                rows.extend(cval(u) + dval(canon_edge(u, v)) for v in nb)
        return max(rows)
    if obj == "P2":
        return (sum((cval(u) for u in g.nodes()), ZERO)
                + sum((dval(e) for e in g.simple_edges()), ZERO))
    if obj == "P3":
        tot = ZERO
        for u in g.nodes():
            nb = sorted(g.neighbors(u))
            if not nb:
                tot += max(ZERO, cval(u))
            else:
                tot += max(ZERO, max(cval(u) + dval(canon_edge(u, v)) for v in nb))
        return tot
    if obj == "P4":
        best = ZERO
        for a in gp.nodes():
            s = ZERO
            for u in g.nodes():
                if f.get(u) == a:
                    s += inst.c(u, a)
            for e in g.simple_edges():
                ep = _fpair(inst, f, e)
                if ep is not None and a in ep:
                    s += inst.d(e, ep)
            best = max(best, s)
        return best
    if obj == "P5":
        tot = ZERO
        for a in gp.nodes():
            vals = []
            for u in g.nodes():
                if f.get(u) != a:
                    continue
                s = inst.c(u, a)
                for v in sorted(g.neighbors(u)):
                    if f.get(v) is not None:
                        s += inst.d(canon_edge(u, v), canon_edge(a, f[v]))
                vals.append(s)
            if vals:
                tot += max(ZERO, max(vals))
        return tot
    if obj == "P6":
        best = ZERO
        for u in g.nodes():
            s = cval(u)
            for v in sorted(g.neighbors(u)):
                s += dval(canon_edge(u, v))
            best = max(best, s)
        return best
    if obj == "P7":
        best = ZERO
        for i in sorted(gp.nodes()):
            s = ZERO
            for e in g.simple_edges():
                ep = _fpair(inst, f, e)
                if ep is None or ep[0] == ep[1]:
                    continue
                if ep[0] <= i < ep[1]:
                    p, q = e
                    s += inst.c(p, f[p]) + inst.c(q, f[q]) + inst.d(e, ep)
            best = max(best, s)
        return best
    raise ProblemError(f"unknown objective form {obj!r}")


def _penalty_total(inst, f):
    tot = ZERO
    for e in inst.g.simple_edges():
        ep = _fpair(inst, f, e)
        if ep is None:
            continue
        tau = inst.d(e, ep)
        if tau in inst.t(e):
            tot += inst.p(e, tau)
    return tot


def oracle_framework(inst: MatchingInstance, obj="output1") -> OracleResult:
    """Exact optimum of the chosen form over all regime-respecting maps."""
    validate_instance(inst)
    if obj not in ("output1", "output3") and obj not in OBJECTIVE_FORMS:
        raise ProblemError(f"unknown objective {obj!r}")
    if obj != "output1" and inst.g.directed:
        raise ProblemError("cost and penalty forms are stated for undirected instances")
    budget = _Budget()
    best, bestw = None, None
    for f in _framework_maps(inst, budget):
        if not _map_ok(inst, f, respect_forbidden=obj != "output3"):
            continue
        if obj == "output1":
            return _ok(witness=f)
        val = _penalty_total(inst, f) if obj == "output3" else _functional(inst, f, obj)
        if best is None or val < best:
            best, bestw = val, f
    if best is None:
        return INFEASIBLE
    return OracleResult("optimal", best, bestw)


# ---------------------------------------------------------------------------
# named problems

def _positions(perm):
    return {u: i + 1 for i, u in enumerate(perm)}


def _oracle_ktsp(spec):
    g, k = spec.g, spec.k
    if not g.directed:
        raise ProblemError("ktsp takes a directed graph")
    if not 2 <= k <= g.n:
        raise ProblemError(f"need 2 <= k <= {g.n}")
    if spec.variant not in ("A", "B", "C"):
        raise ProblemError(f"unknown ktsp variant {spec.variant!r}")
    budget = _Budget()
    best, bestw = None, None
    for subset in itertools.combinations(g.nodes(), k):
        first = subset[0]
        for rest in itertools.permutations(subset[1:]):
            budget.tick()
            tour = (first,) + rest
            if not all(g.has_edge(tour[i], tour[(i + 1) % k]) for i in range(k)):
                continue
            if spec.variant == "A":
                return _ok(witness=tour)
            ws = [g.weight(tour[i], tour[(i + 1) % k]) for i in range(k)]
            val = sum(ws, ZERO) if spec.variant == "B" else max(ws)
            if best is None or val < best:
                best, bestw = val, tour
    if best is None:
        return INFEASIBLE
    if spec.K is not None and best > spec.K:
        return INFEASIBLE
    return OracleResult("optimal", best, bestw)


def _oracle_bandwidth(spec):
    g = spec.g
    budget = _Budget()
    best, bestw = None, None
    for perm in itertools.permutations(g.nodes()):
        budget.tick()
        pos = _positions(perm)
        if g.directed and any(pos[u] >= pos[v] for u, v in g.simple_edges()):
            continue
        stretch = [abs(pos[u] - pos[v]) for u, v in g.simple_edges()]
        bw = max(stretch) if stretch else 0
        if best is None or bw < best:
            best, bestw = bw, pos
    if best is None:
        return INFEASIBLE
    if spec.optimize:
        return OracleResult("optimal", Fraction(best), bestw)
    bound = spec.K if spec.K is not None else g.n - 1
    return _ok(witness=bestw) if best <= bound else INFEASIBLE


def _oracle_arrangement(spec):
    g, kind = spec.g, spec.kind
    if kind == "DLAP":
        if not g.directed:
            raise ProblemError("dlap takes a directed graph")
    elif g.directed:
        raise ProblemError(f"{kind.lower()} takes an undirected graph")
    budget = _Budget()
    best, bestw = None, None
    for perm in itertools.permutations(g.nodes()):
        budget.tick()
        pos = _positions(perm)
        if kind == "DLAP" and any(pos[u] >= pos[v] for u, v in g.simple_edges()):
            continue
        if kind == "LAP":
            val = sum((g.weight(u, v) * abs(pos[u] - pos[v])
                       for u, v in g.simple_edges()), ZERO)
        elif kind == "DLAP":
            val = sum((g.weight(u, v) * (pos[v] - pos[u])
                       for u, v in g.simple_edges()), ZERO)
        elif kind == "PMP":
            val = ZERO
            for u in g.nodes():
                lo = min([pos[u]] + [pos[v] for v in g.neighbors(u)])
                val += pos[u] - lo
        elif kind == "MCLAP":
            cuts = [0] * (g.n + 1)
            for u, v in g.simple_edges():
                a, b = sorted((pos[u], pos[v]))
                for i in range(a, b):
                    cuts[i] += 1
            val = Fraction(max(cuts)) if g.simple_edges() else ZERO
        else:
            raise ProblemError(f"unknown arrangement kind {kind!r}")
        if best is None or val < best:
            best, bestw = val, pos
    if best is None:
        return INFEASIBLE
    if spec.optimize:
        if spec.K is not None and best > spec.K:
            return INFEASIBLE
        return OracleResult("optimal", best, bestw)
    return _ok(witness=bestw) if spec.K is None or best <= spec.K else INFEASIBLE


def _oracle_isomorphism(spec):
    host, pat = spec.g, spec.gp
    budget = _Budget()
    if spec.kind == "GI":
        if host.directed != pat.directed:
            raise ProblemError("gi needs graphs of the same directedness")
        if host.n != pat.n:
            return INFEASIBLE
        pairs = (itertools.permutations(range(1, host.n + 1), 2) if host.directed
                 else itertools.combinations(range(1, host.n + 1), 2))
        pairs = list(pairs)
        for perm in itertools.permutations(host.nodes()):
            budget.tick()
            f = {u: perm[u - 1] for u in pat.nodes()}
            if all(pat.has_edge(u, v) == host.has_edge(f[u], f[v]) for u, v in pairs):
                return _ok(witness=f)
        return INFEASIBLE
    if spec.kind not in ("SI", "ISI"):
        raise ProblemError(f"unknown isomorphism kind {spec.kind!r}")
    if host.directed or pat.directed:
        raise ProblemError("si/isi take undirected graphs")
    if pat.n > host.n:
        raise ProblemError("pattern larger than host")
    induced = spec.kind == "ISI"
    nonedges = complement(pat).simple_edges()
    for image in itertools.permutations(host.nodes(), pat.n):
        budget.tick()
        f = dict(zip(pat.nodes(), image))
        if not all(host.has_edge(f[u], f[v]) for u, v in pat.simple_edges()):
            continue
        if induced and any(host.has_edge(f[u], f[v]) for u, v in nonedges):
            continue
        return _ok(witness=f)
    return INFEASIBLE


def _injective_partial_maps(src_nodes, dst_nodes, budget):
    f, used = {}, set()
    src = list(src_nodes)

    def rec(i):
        if i == len(src):
            budget.tick()
            yield dict(f)
            return
        u = src[i]
        yield from rec(i + 1)
        for a in dst_nodes:
            if a in used:
                continue
            f[u] = a
            used.add(a)
            yield from rec(i + 1)
            used.discard(a)
            del f[u]

    yield from rec(0)


def _oracle_common_subgraph(spec):
    g1, g2, kind = spec.g, spec.gp, spec.kind
    budget = _Budget()
    if kind in ("LCS", "CMP"):
        if g1.directed or g2.directed:
            raise ProblemError(f"{kind.lower()} takes undirected graphs")
        best, bestw = Fraction(-1), None
        for f in _injective_partial_maps(g1.nodes(), list(g2.nodes()), budget):
            if kind == "CMP" and any(f[u] >= f[v] for u, v in
                                     itertools.combinations(sorted(f), 2)):
                continue
            val = Fraction(sum(1 for u, v in g1.simple_edges()
                               if u in f and v in f and g2.has_edge(f[u], f[v])))
            if val > best:
                best, bestw = val, f
        return OracleResult("optimal", best, bestw)
    if kind == "MISM":
        if not (g1.directed and g2.directed):
            raise ProblemError("mism takes directed graphs")
        best, bestw = Fraction(-1), None
        for f in _injective_partial_maps(g1.nodes(), list(g2.nodes()), budget):
            ok = all(g1.has_edge(u, v) == g2.has_edge(f[u], f[v])
                     for u in f for v in f if u != v)
            if not ok:
                continue
            if Fraction(len(f)) > best:
                best, bestw = Fraction(len(f)), f
        return OracleResult("optimal", best, bestw)
    if kind != "MSM":
        raise ProblemError(f"unknown common-subgraph kind {kind!r}")
    if not (g1.directed and g2.directed):
        raise ProblemError("msm takes directed graphs")

    def compat(p1, p2):
        u, a = p1
        v, b = p2
        if u == v:
            return not (g2.has_edge(a, b) or g2.has_edge(b, a))
        if a == b:
            if (g1.has_edge(u, v) or g1.has_edge(v, u)) and not g2.has_loop(a):
                return False
            return True
        return (g1.has_edge(u, v) == g2.has_edge(a, b)
                and g1.has_edge(v, u) == g2.has_edge(b, a))

    cands = [(u, a) for u in g1.nodes() for a in g2.nodes()]
    best, bestw = 0, ()
    chosen = []

    def rec(idx):
        nonlocal best, bestw
        budget.tick()
        if len(chosen) > best:
            best, bestw = len(chosen), tuple(chosen)
        if idx == len(cands) or len(chosen) + len(cands) - idx <= best:
            return
        cand = cands[idx]
        if all(compat(cand, other) for other in chosen):
            chosen.append(cand)
            rec(idx + 1)
            chosen.pop()
        rec(idx + 1)

    rec(0)
    return OracleResult("optimal", Fraction(best), bestw)


def _proper_colorings(g, colors, budget, partial=False):
    nodes = list(g.nodes())
    col = {}

    def rec(i):
        budget.tick()
        if i == len(nodes):
            yield dict(col)
            return
        u = nodes[i]
        if partial:
            yield from rec(i + 1)
        for c in colors:
            if any(col.get(v) == c for v in g.neighbors(u)):
                continue
            col[u] = c
            yield from rec(i + 1)
            del col[u]

    yield from rec(0)


def _oracle_coloring(spec):
    g, kind = spec.g, spec.kind
    budget = _Budget()
    if kind == "GKC":
        if spec.K is None:
            raise ProblemError("gkc needs K")
        for col in _proper_colorings(g, range(1, spec.K + 1), budget):
            return _ok(witness=col)
        return INFEASIBLE
    if kind == "GC":
        if g.n == 0:
            return OracleResult("optimal", ZERO, {})
        for K in range(1, g.n + 1):
            for col in _proper_colorings(g, range(1, K + 1), budget):
                return OracleResult("optimal", Fraction(K), col)
        raise AssertionError("n colors always suffice")
    if kind in ("GH", "DGH"):
        gp = spec.gp
        if gp is None:
            raise ProblemError(f"{kind.lower()} needs a target graph")
        want = kind == "DGH"
        if g.directed != want or gp.directed != want:
            raise ProblemError(f"{kind.lower()} directedness mismatch")
        for image in itertools.product(list(gp.nodes()), repeat=g.n):
            budget.tick()
            f = {u: image[u - 1] for u in g.nodes()}
            ok = True
            for u, v in g.simple_edges():
                if f[u] == f[v]:
                    ok = gp.has_loop(f[u])
                else:
                    ok = gp.has_edge(f[u], f[v])
                if not ok:
                    break
            if ok:
                return _ok(witness=f)
        return INFEASIBLE
    if kind in ("MWSCP_A", "MWSCP_B"):
        if not spec.costs:
            raise ProblemError(f"{kind.lower()} needs assignment costs")
        K = spec.K if spec.K is not None else max(c for _, c in spec.costs)
        colors = range(1, K + 1)
        if kind == "MWSCP_A":
            best, bestw = None, None
            for col in _proper_colorings(g, colors, budget, partial=True):
                val = sum((spec.costs.get((u, c), ZERO) for u, c in col.items()), ZERO)
                if best is None or val > best:
                    best, bestw = val, col
            return OracleResult("optimal", best, bestw)
        if spec.zstar is None:
            raise ProblemError("mwscp_b needs zstar")
        best, bestw = None, None
        for col in _proper_colorings(g, colors, budget, partial=True):
            val = sum((spec.costs.get((u, c), ZERO) for u, c in col.items()), ZERO)
            if val != spec.zstar:
                continue
            span = max(col.values()) if col else 0
            if best is None or span < best:
                best, bestw = span, col
        if best is None:
            return INFEASIBLE
        return OracleResult("optimal", Fraction(best), bestw)
    if kind == "WVCP":
        if not spec.weights:
            raise ProblemError("wvcp needs node weights")
        best, bestw = None, None
        for col in _proper_colorings(g, range(1, g.n + 1), budget):
            val = ZERO
            for c in set(col.values()):
                val += max(ZERO, max(spec.weights.get(u, ZERO)
                                     for u in col if col[u] == c))
            if best is None or val < best:
                best, bestw = val, col
        return OracleResult("optimal", best, bestw)
    if kind == "MCP":
        if g.directed:
            raise ProblemError("mcp takes an undirected graph")
        K = spec.K if spec.K is not None else g.n
        non = complement(g).simple_edges()
        best, bestw = None, None
        for image in itertools.product(range(1, K + 1), repeat=g.n):
            budget.tick()
            lab = {u: image[u - 1] for u in g.nodes()}
            if any(lab[u] == lab[v] for u, v in non):
                continue
            val = sum((g.weight(u, v) for u, v in g.simple_edges()
                       if lab[u] == lab[v]), ZERO)
            if best is None or val > best:
                best, bestw = val, lab
        if best is None:
            return INFEASIBLE
        return OracleResult("optimal", best, bestw)
    if kind == "MWIS":
        if g.directed:
            raise ProblemError("mwis takes an undirected graph")
        best, bestw = 0, ()
        for r in range(g.n, -1, -1):
            for subset in itertools.combinations(g.nodes(), r):
                budget.tick()
                if all(not g.has_edge(u, v)
                       for u, v in itertools.combinations(subset, 2)):
                    best, bestw = r, subset
                    break
            if bestw or r == 0:
                break
        return OracleResult("optimal", Fraction(best * (best - 1), 2), bestw)
    raise ProblemError(f"unknown coloring kind {kind!r}")


def _oracle_labeling(spec):
    g, kind = spec.g, spec.kind
    budget = _Budget()
    if kind in ("GL_feas", "GL_opt"):
        m, k = spec.m, spec.k
        if m < k:
            raise ProblemError("gl needs m >= k")
        lam = spec.lam if spec.lam is not None else (g.n - 1) * (m + k)
        pairs2 = distance_two_pairs(g)
        near2 = {u: set() for u in g.nodes()}
        for a, b in pairs2:
            near2[a].add(b)
            near2[b].add(a)
        nodes = list(g.nodes())
        best, bestw = None, None
        lab = {}

        def rec(i, cur_max):
            nonlocal best, bestw
            budget.tick()
            if kind == "GL_opt" and best is not None and cur_max >= best:
                return
            if i == len(nodes):
                if best is None or cur_max < best:
                    best, bestw = cur_max, dict(lab)
                return
            u = nodes[i]
            for val in range(lam + 1):
                if kind == "GL_opt" and best is not None and max(cur_max, val) >= best:
                    continue
                if any(v in lab and abs(val - lab[v]) < m for v in g.neighbors(u)):
                    continue
                if any(v in lab and abs(val - lab[v]) < k for v in near2[u]):
                    continue
                lab[u] = val
                rec(i + 1, max(cur_max, val))
                del lab[u]
                if kind == "GL_feas" and best is not None:
                    return

        rec(0, 0)
        if best is None:
            return INFEASIBLE
        if kind == "GL_feas":
            return _ok(witness=bestw)
        return OracleResult("optimal", Fraction(best), bestw)
    if kind != "FSFA":
        raise ProblemError(f"unknown labeling kind {kind!r}")
    if not spec.F:
        raise ProblemError("fsfa needs a frequency set")
    tt, pp = spec.t or {}, spec.p or {}
    best, bestw = None, None
    for image in itertools.product(spec.F, repeat=g.n):
        budget.tick()
        lab = {u: image[u - 1] for u in g.nodes()}
        val = ZERO
        for u, v in g.simple_edges():
            if abs(lab[u] - lab[v]) <= _elook(tt, u, v, 0):
                val += _elook(pp, u, v, ZERO)
        if best is None or val < best:
            best, bestw = val, lab
    return OracleResult("optimal", best, bestw)


def _oracle_metric_labeling(spec):
    g = spec.g
    if g.directed:
        raise ProblemError("mlp takes an undirected graph")
    if spec.objective not in ("P2", "P4"):
        raise ProblemError(f"mlp objective must be P2 or P4, got {spec.objective!r}")
    labels = tuple(spec.labels)
    allow = {u: tuple(spec.allow.get(u, labels)) for u in g.nodes()}
    for u, opts in allow.items():
        if not opts or not set(opts) <= set(labels):
            raise ProblemError(f"bad allow set for node {u}")
    noloop = set(spec.noloop)

    def dmet(a, b):
        return spec.D.get((min(a, b), max(a, b)), ZERO)

    budget = _Budget()
    best, bestw = None, None
    for image in itertools.product(*(allow[u] for u in g.nodes())):
        budget.tick()
        lab = {u: image[u - 1] for u in g.nodes()}
        if any(lab[u] == lab[v] and lab[u] in noloop for u, v in g.simple_edges()):
            continue
        if spec.objective == "P2":
            val = sum((spec.c.get((u, lab[u]), ZERO) for u in g.nodes()), ZERO)
            val += sum((g.weight(u, v) * dmet(lab[u], lab[v])
                        for u, v in g.simple_edges()), ZERO)
        else:
            val = ZERO
            for a in labels:
                s = sum((spec.c.get((u, a), ZERO)
                         for u in g.nodes() if lab[u] == a), ZERO)
                s += sum((g.weight(u, v) * dmet(lab[u], lab[v])
                          for u, v in g.simple_edges() if a in (lab[u], lab[v])), ZERO)
                val = max(val, s)
        if best is None or val < best:
            best, bestw = val, lab
    if best is None:
        return INFEASIBLE
    return OracleResult("optimal", best, bestw)


def _oracle_golomb(spec):
    n, K = spec.n, spec.K
    if n < 1 or K < 0:
        raise ProblemError("golomb needs n >= 1, K >= 0")
    if n > K + 1:
        raise ProblemError("more marks than admissible values")
    budget = _Budget()
    best, bestw = None, None
    marks, diffs = [0], set()

    def rec():
        nonlocal best, bestw
        budget.tick()
        if len(marks) == n:
            if best is None or marks[-1] < best:
                best, bestw = marks[-1], tuple(marks)
            return best is not None and not spec.optimize
        for nxt in range(marks[-1] + 1, K + 1):
            if best is not None and nxt >= best:
                break           # marks ascend, so the last mark would too
            nd = [nxt - mk for mk in marks]
            if any(d in diffs for d in nd):
                continue
            marks.append(nxt)
            diffs.update(nd)
            done = rec()
            marks.pop()
            diffs.difference_update(nd)
            if done:
                return True
        return False

    rec()
    if best is None:
        return INFEASIBLE
    if not spec.optimize:
        return _ok(witness=bestw)
    return OracleResult("optimal", Fraction(best), bestw)


def _oracle_igc(spec):
    g = spec.g
    if g.directed:
        raise ProblemError("igc takes an undirected graph")
    if not connected(g):
        raise ProblemError("igc takes a connected graph")
    budget = _Budget()
    best, bestw = None, None
    for perm in itertools.permutations(g.nodes()):
        budget.tick()
        pos = _positions(perm)
        fills = set()
        for a, b in g.simple_edges():
            if pos[a] > pos[b]:
                a, b = b, a
            for z in g.nodes():
                # an edge spanning z forces z adjacent to the later endpoint
                if z not in (a, b) and pos[a] < pos[z] < pos[b] \
                        and not g.has_edge(z, b):
                    fills.add((min(z, b), max(z, b)))
        if best is None or len(fills) < best:
            best, bestw = len(fills), pos
    return OracleResult("optimal", Fraction(best), bestw)


def _oracle_mlcm(spec):
    L = spec.layered
    budget = _Budget()
    best, bestw = None, None
    for perms in itertools.product(*(itertools.permutations(layer)
                                     for layer in L.layers)):
        budget.tick()
        pos = {}
        for layer_perm in perms:
            for i, u in enumerate(layer_perm):
                pos[u] = i + 1
        val = 0
        for (u, v), (w, z) in itertools.combinations(L.arcs, 2):
            if L.layer_of[u] != L.layer_of[w] or u == w or v == z:
                continue
            if (pos[u] - pos[w]) * (pos[v] - pos[z]) < 0:
                val += 1
        if best is None or val < best:
            best, bestw = val, pos
    return OracleResult("optimal", Fraction(best), bestw)


_DISPATCH = (
    (KTsp, _oracle_ktsp),
    (Bandwidth, _oracle_bandwidth),
    (Arrangement, _oracle_arrangement),
    (Isomorphism, _oracle_isomorphism),
    (CommonSubgraph, _oracle_common_subgraph),
    (Coloring, _oracle_coloring),
    (Labeling, _oracle_labeling),
    (MetricLabeling, _oracle_metric_labeling),
    (Golomb, _oracle_golomb),
    (IGC, _oracle_igc),
    (MLCM, _oracle_mlcm),
)


def oracle_solve(spec) -> OracleResult:
    """Exhaustive reference answer for any problem spec record."""
    for rec_type, fn in _DISPATCH:
        if isinstance(spec, rec_type):
            return fn(spec)
    raise ProblemError(f"no oracle for {type(spec).__name__}")
