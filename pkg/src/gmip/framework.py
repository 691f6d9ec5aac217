"""Compilers from a matching instance to a 0-1 program.

build_output1 produces the feasibility form (assignment rows, preservation
rows, forbidden-value exclusions); build_output2 adds one of the seven cost
forms P1..P7; build_output3 swaps the forbidden-value exclusions for priced
penalty variables.

Edge-pair variables y are created lazily, only where some row or objective
gives them a nonzero coefficient.  A y that ever carries a negative
coefficient is linked exactly (upper rows plus co-location guards), because
minimization would otherwise exploit a spurious y=1 to relax its row.  The
reversed-orientation variables z are always linked exactly; they resolve
which way an edge landed, which the symmetric y cannot express.
"""

from __future__ import annotations

from fractions import Fraction

from .graphs import Graph, complement, cycle_graph
from .model import IPModel, add_table2_constraints, x_name, y_name, z_name, yt_name
from .problems import (MatchingInstance, OBJECTIVE_FORMS, ProblemError,
                       canon_edge, validate_instance)


def _x(model, u, a):
    return model.varmap.get(("x", u, a))


def _k_upper(inst) -> Fraction:
    # valid bound for every K-style variable: no row can exceed it
    tot = sum((abs(c) for c in inst.node_cost.values()), Fraction(0))
    tot += sum((abs(d) for d in inst.edge_cost.values()), Fraction(0))
    return tot


def _declare_x(model, inst):
    for u in inst.g.nodes():
        for a in sorted(inst.allow.get(u, ())):
            model.add_binary(x_name(u, a), tag=("x", u, a))


def _infeasible_marker(model, label):
    # a structurally empty "sum = 1" row: represent as an unsatisfiable row
    if not model.has_var("never"):
        model.add_binary("never", tag=("never",))
    model.add_constraint(f"infeasible_{label}", [("never", 1)], "=", 2)


def _regime_rows(model, inst):
    g, gp, regime = inst.g, inst.gp, inst.regime
    rel_u = "<=" if regime == "injective-partial" else "="
    for u in g.nodes():
        terms = [(_x(model, u, a), 1) for a in sorted(inst.allow.get(u, ()))]
        if terms:
            model.add_constraint(f"asg_{u}", terms, rel_u, 1)
        elif rel_u == "=":
            _infeasible_marker(model, f"asg_{u}")
    rel_t = {"many-to-one": None, "one-to-one": "<=",
             "onto-total": "=", "injective-partial": "="}[regime]
    if rel_t is None:
        return
    for a in gp.nodes():
        terms = []
        for u in g.nodes():
            xv = _x(model, u, a)
            if xv is not None:
                terms.append((xv, 1))
        if terms:
            model.add_constraint(f"tgt_{a}", terms, rel_t, 1)
        elif rel_t == "=":
            _infeasible_marker(model, f"tgt_{a}")


def _row2(model, base, u, v, a, b):
    # both orientations of a pairwise exclusion, skipping impossible ones
    for suffix, (p, q) in (("_1", (a, b)), ("_2", (b, a))):
        xu, xv = _x(model, u, p), _x(model, v, q)
        if xu is not None and xv is not None:
            model.add_constraint(base + suffix, [(xu, 1), (xv, 1)], "<=", 1)


def _preservation_rows(model, inst, forbid=True):
    """Edges must land on edges (same orientation for digraphs), co-location
    only on loop-bearing target nodes, and — when `forbid` — no landing on a
    target edge whose d value lies in the edge's forbidden set."""
    g, gp = inst.g, inst.gp
    nonedges = complement(gp).simple_edges()
    for (u, v) in g.simple_edges():
        e = (u, v)
        te = inst.t(e) if forbid else frozenset()
        if not g.directed:
            for (a, b) in nonedges:
                _row2(model, f"e2_{u}_{v}__{a}_{b}", u, v, a, b)
            if te:
                for (a, b) in gp.simple_edges():
                    if inst.d(e, (a, b)) in te:
                        _row2(model, f"e3_{u}_{v}__{a}_{b}", u, v, a, b)
        else:
            for (a, b) in nonedges:
                _row2(model, f"e4_{u}_{v}__{a}_{b}", u, v, a, b)
            for (a, b) in gp.simple_edges():
                # against-the-arrow exclusion only when the reverse arc is
                # absent; with both arcs present the reversed landing is legal
                if not gp.has_edge(b, a):
                    xu, xv = _x(model, u, b), _x(model, v, a)
                    if xu is not None and xv is not None:
                        model.add_constraint(f"e5_{u}_{v}__{a}_{b}",
                                             [(xu, 1), (xv, 1)], "<=", 1)
                if te and inst.d(e, (a, b)) in te:
                    xu, xv = _x(model, u, a), _x(model, v, b)
                    if xu is not None and xv is not None:
                        model.add_constraint(f"e6_{u}_{v}__{a}_{b}",
                                             [(xu, 1), (xv, 1)], "<=", 1)
        for c in gp.nodes():
            xu, xv = _x(model, u, c), _x(model, v, c)
            if xu is None or xv is None:
                continue
            if not gp.has_loop(c):
                model.add_constraint(f"sn_{u}_{v}__{c}", [(xu, 1), (xv, 1)], "<=", 1)
            elif te and inst.d(e, (c, c)) in te:
                tag = "e3" if not g.directed else "e6"
                model.add_constraint(f"{tag}_{u}_{v}__{c}_{c}", [(xu, 1), (xv, 1)], "<=", 1)


class _YState:
    """Lazy y/z creation with linking rows; tracks which y are exact."""

    def __init__(self, model, inst):
        self.model = model
        self.inst = inst
        self.exact = set()

    def y(self, e, ep, need_exact=False):
        model = self.model
        tag = ("y", e, ep)
        name = model.varmap.get(tag)
        u, v = e
        a, b = ep
        if name is None:
            orients = []
            if _x(model, u, a) is not None and _x(model, v, b) is not None:
                orients.append((a, b))
            if a != b and _x(model, u, b) is not None and _x(model, v, a) is not None:
                orients.append((b, a))
            if not orients:
                return None
            name = model.add_binary(y_name(e, ep), tag=tag)
            for i, (p, q) in enumerate(orients, 1):
                model.add_constraint(f"f_{name}_{i}",
                                     [(_x(model, u, p), 1), (_x(model, v, q), 1), (name, -1)],
                                     "<=", 1)
        if need_exact and tag not in self.exact:
            self.exact.add(tag)
            ends = (a,) if a == b else (a, b)
            for side, node in (("u", u), ("v", v)):
                terms = [(name, 1)]
                for c in ends:
                    xv = _x(model, node, c)
                    if xv is not None:
                        terms.append((xv, -1))
                model.add_constraint(f"fx_{name}_{side}", terms, "<=", 0)
            if a != b:
                for c in ends:
                    if self.inst.gp.has_loop(c):
                        xu, xv = _x(model, u, c), _x(model, v, c)
                        if xu is not None and xv is not None:
                            # both endpoints sitting on the loop at c means the
                            # edge landed on (c,c), not on (a,b)
                            model.add_constraint(f"fx_{name}_l{c}",
                                                 [(name, 1), (xu, 1), (xv, 1)], "<=", 2)
        return name

    def z(self, e, ep):
        model = self.model
        tag = ("z", e, ep)
        name = model.varmap.get(tag)
        if name is not None:
            return name
        (u, v), (a, b) = e, ep
        xu, xv = _x(model, u, b), _x(model, v, a)
        if xu is None or xv is None:
            return None
        name = model.add_binary(z_name(e, ep), tag=tag)
        model.add_constraint(f"zl_{name}", [(xu, 1), (xv, 1), (name, -1)], "<=", 1)
        model.add_constraint(f"zu_{name}_1", [(name, 1), (xu, -1)], "<=", 0)
        model.add_constraint(f"zu_{name}_2", [(name, 1), (xv, -1)], "<=", 0)
        return name

    def event(self, e, ep, u, a, need_exact=False):
        """Terms whose sum indicates: e lands on ep with endpoint u at a."""
        model = self.model
        p, q = e
        r, s = ep
        v = q if u == p else p
        b = r if a == s and r != s else s
        if _x(model, u, a) is None or _x(model, v, b) is None:
            return []
        if r == s:
            yv = self.y(e, ep, need_exact)
            return [(yv, 1)] if yv else []
        if (u == p and a == r) or (u == q and a == s):
            yv = self.y(e, ep, need_exact)
            out = [(yv, 1)]
            if _x(model, p, s) is not None and _x(model, q, r) is not None:
                out.append((self.z(e, ep), -1))
            return out
        zv = self.z(e, ep)
        return [(zv, 1)] if zv else []


def _c_part(model, inst, u):
    terms = []
    for a in sorted(inst.allow.get(u, ())):
        c = inst.c(u, a)
        xv = _x(model, u, a)
        if c != 0 and xv is not None:
            terms.append((xv, c))
    return terms


def _bottleneck_rows(model, inst, ys, kvar_of, prefix):
    # one row per ordered adjacent pair; isolated nodes keep their c-only row
    g, gp = inst.g, inst.gp
    for u in g.nodes():
        cpart = _c_part(model, inst, u)
        nb = sorted(g.neighbors(u))
        if not nb:
            if cpart:
                model.add_constraint(f"{prefix}_{u}", cpart + [(kvar_of(u), -1)], "<=", 0)
            continue
        for v in nb:
            e = canon_edge(u, v)
            terms = list(cpart)
            for ep in gp.edge_pairs():
                d = inst.d(e, ep)
                if d == 0:
                    continue
                yv = ys.y(e, ep, need_exact=d < 0)
                if yv is not None:
                    terms.append((yv, d))
            if terms:
                model.add_constraint(f"{prefix}_{u}_{v}", terms + [(kvar_of(u), -1)], "<=", 0)


def _total_cost_terms(model, inst, ys):
    # every assignment cost once, every edge pair once (unordered iteration;
    # this is the printed half-of-ordered-sum evaluated exactly)
    terms = []
    for u in inst.g.nodes():
        terms.extend(_c_part(model, inst, u))
    for e in inst.g.simple_edges():
        for ep in inst.gp.edge_pairs():
            d = inst.d(e, ep)
            if d == 0:
                continue
            yv = ys.y(e, ep, need_exact=d < 0)
            if yv is not None:
                terms.append((yv, d))
    return terms


def build_output1(inst: MatchingInstance) -> IPModel:
    """Feasibility form: a 0/1 point exists iff some allow-respecting map
    preserves all edges and avoids every forbidden d value."""
    validate_instance(inst)
    model = IPModel("output1")
    _declare_x(model, inst)
    _regime_rows(model, inst)
    _preservation_rows(model, inst)
    model.set_objective("min", [])
    return model


def build_output2(inst: MatchingInstance, obj: str) -> IPModel:
    """Feasibility rows plus one of the seven cost forms."""
    if obj not in OBJECTIVE_FORMS:
        raise ProblemError(f"unknown objective form {obj!r}")
    if inst.g.directed:
        raise ProblemError("cost forms are stated for undirected instances; "
                           "directed problems use their own recipes")
    validate_instance(inst)
    model = IPModel(f"output2_{obj.lower()}")
    _declare_x(model, inst)
    _regime_rows(model, inst)
    _preservation_rows(model, inst)
    ys = _YState(model, inst)
    g, gp = inst.g, inst.gp
    kub = _k_upper(inst)

    if obj == "P1":
        kv = model.add_continuous("K", kub, tag=("K",))
        _bottleneck_rows(model, inst, ys, lambda u: kv, "p1")
        model.set_objective("min", [(kv, 1)])
    elif obj == "P2":
        model.set_objective("min", _total_cost_terms(model, inst, ys))
    elif obj == "P3":
        kus = {u: model.add_continuous(f"K_u{u}", kub, tag=("Ku", u)) for u in g.nodes()}
        _bottleneck_rows(model, inst, ys, lambda u: kus[u], "p3")
        model.set_objective("min", [(kus[u], 1) for u in g.nodes()])
    elif obj == "P4":
        kv = model.add_continuous("K", kub, tag=("K",))
        for a in gp.nodes():
            terms = []
            for u in g.nodes():
                xv = _x(model, u, a)
                c = inst.c(u, a)
                if xv is not None and c != 0:
                    terms.append((xv, c))
            for e in g.simple_edges():
                for ep in gp.edge_pairs():
                    if a not in ep:
                        continue
                    d = inst.d(e, ep)
                    if d == 0:
                        continue
                    yv = ys.y(e, ep, need_exact=d < 0)
                    if yv is not None:
                        terms.append((yv, d))
            if terms:
                model.add_constraint(f"p4_{a}", terms + [(kv, -1)], "<=", 0)
        model.set_objective("min", [(kv, 1)])
    elif obj == "P5":
        kps = {a: model.add_continuous(f"Kp_{a}", kub, tag=("Kp", a)) for a in gp.nodes()}
        for a in gp.nodes():
            for u in g.nodes():
                xv = _x(model, u, a)
                if xv is None:
                    continue
                terms = []
                c = inst.c(u, a)
                if c != 0:
                    terms.append((xv, c))
                for v in sorted(g.neighbors(u)):
                    e = canon_edge(u, v)
                    for ep in gp.edge_pairs():
                        if a not in ep:
                            continue
                        d = inst.d(e, ep)
                        if d == 0:
                            continue
                        for var, mult in ys.event(e, ep, u, a, need_exact=d < 0):
                            terms.append((var, mult * d))
                if terms:
                    model.add_constraint(f"p5_{a}_{u}", terms + [(kps[a], -1)], "<=", 0)
        model.set_objective("min", [(kps[a], 1) for a in gp.nodes()])
    elif obj == "P6":
        kv = model.add_continuous("K", kub, tag=("K",))
        for u in g.nodes():
            terms = _c_part(model, inst, u)
            for v in sorted(g.neighbors(u)):
                e = canon_edge(u, v)
                for ep in gp.edge_pairs():
                    d = inst.d(e, ep)
                    if d == 0:
                        continue
                    yv = ys.y(e, ep, need_exact=d < 0)
                    if yv is not None:
                        terms.append((yv, d))
            if terms:
                model.add_constraint(f"p6_{u}", terms + [(kv, -1)], "<=", 0)
        model.set_objective("min", [(kv, 1)])
    else:  # P7: positional cut rows; target node ids are the positions
        kv = model.add_continuous("K", kub, tag=("K",))
        for i in sorted(gp.nodes()):
            terms = []
            for e in g.simple_edges():
                p, q = e
                for ep in gp.simple_edges():
                    r, s = ep
                    if not (r <= i < s):
                        continue
                    d = inst.d(e, ep)
                    ca = inst.c(p, r) + inst.c(q, s)
                    cb = inst.c(p, s) + inst.c(q, r)
                    a_ok = _x(model, p, r) is not None and _x(model, q, s) is not None
                    b_ok = _x(model, p, s) is not None and _x(model, q, r) is not None
                    if a_ok and b_ok:
                        coef = ca + d
                        if coef != 0:
                            terms.append((ys.y(e, ep, need_exact=coef < 0), coef))
                        if cb != ca:
                            terms.append((ys.z(e, ep), cb - ca))
                        elif coef == 0:
                            # keep y linked anyway so the pair stays decodable
                            ys.y(e, ep)
                    elif a_ok or b_ok:
                        coef = (ca if a_ok else cb) + d
                        if coef != 0:
                            terms.append((ys.y(e, ep, need_exact=coef < 0), coef))
            if terms:
                model.add_constraint(f"p7_{i}", terms + [(kv, -1)], "<=", 0)
        model.set_objective("min", [(kv, 1)])
    return model


def build_output3(inst: MatchingInstance) -> IPModel:
    """Feasibility rows without forbidden-value exclusions; instead every
    (edge, target edge) pair whose d value is forbidden gets a priced penalty
    variable forced to 1 whenever the edge lands there."""
    if inst.g.directed:
        raise ProblemError("the penalty form is stated for undirected instances")
    validate_instance(inst)
    model = IPModel("output3")
    _declare_x(model, inst)
    _regime_rows(model, inst)
    _preservation_rows(model, inst, forbid=False)
    terms = []
    for e in inst.g.simple_edges():
        te = inst.t(e)
        if not te:
            continue
        u, v = e
        for ep in inst.gp.edge_pairs():
            tau = inst.d(e, ep)
            if tau not in te:
                continue
            pen = inst.p(e, tau)
            if pen == 0:
                continue
            a, b = ep
            orients = []
            if _x(model, u, a) is not None and _x(model, v, b) is not None:
                orients.append((a, b))
            if a != b and _x(model, u, b) is not None and _x(model, v, a) is not None:
                orients.append((b, a))
            if not orients:
                continue
            name = model.add_binary(yt_name(e, ep, tau), tag=("yt", e, ep, tau))
            for i, (p, q) in enumerate(orients, 1):
                model.add_constraint(f"lt_{name}_{i}",
                                     [(_x(model, u, p), 1), (_x(model, v, q), 1), (name, -1)],
                                     "<=", 1)
            terms.append((name, pen))
    model.set_objective("min", terms)
    return model


def decode(model: IPModel, assignment) -> dict:
    """The matching: f(u) = u' wherever x_{uu'} = 1."""
    f = {}
    for tag, name in model.varmap.items():
        if tag[0] != "x":
            continue
        if Fraction(assignment[name]) == 1:
            _, u, a = tag
            if u in f:
                raise ProblemError(f"node {u} assigned to two targets")
            f[u] = a
    return f


# ---------------------------------------------------------------------------
# preset factories: the cycle-matching specializations

def ktsp_instance(g: Graph, k: int) -> MatchingInstance:
    """Tour-matching instance: pick k nodes onto a k-cycle target, d = the
    pattern edge weight (cycle edges all weigh 1)."""
    if g.directed:
        raise ProblemError("the cycle-matching factories take undirected graphs")
    if not 2 < k <= g.n:
        raise ProblemError(f"need 3 <= k <= {g.n}")
    cyc = cycle_graph(k)
    allow = {u: tuple(cyc.nodes()) for u in g.nodes()}
    dcost = {}
    for (u, v) in g.simple_edges():
        w = g.weight(u, v)
        for ep in cyc.simple_edges():
            dcost[((u, v), ep)] = w
    return MatchingInstance(g=g, gp=cyc, allow=allow, edge_cost=dcost,
                            regime="injective-partial")


def ktsp_framework_model(g: Graph, k: int, induced=False, total=False) -> IPModel:
    """Cycle matching through the general machinery.

    Always: assignment rows (each position filled once, nodes used at most
    once), non-edges kept off the cycle, and a bottleneck (default) or
    total-distance objective over tour edge weights.  `induced` additionally
    keeps selected-node edges off cycle chords (edges must map onto cycle
    edges).
    """
    inst = ktsp_instance(g, k)
    model = IPModel("ktsp_framework")
    _declare_x(model, inst)
    _regime_rows(model, inst)
    if induced:
        _preservation_rows(model, inst)
    ys = _YState(model, inst)
    if total:
        model.set_objective("min", _total_cost_terms(model, inst, ys))
    else:
        kv = model.add_continuous("K", _k_upper(inst), tag=("K",))
        _bottleneck_rows(model, inst, ys, lambda u: kv, "p1")
        model.set_objective("min", [(kv, 1)])
    add_table2_constraints(model, "c2", g, inst.gp)
    return model
