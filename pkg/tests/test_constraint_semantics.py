"""Exhaustive 0/1 semantics of the shared constraint families.

Each case builds the smallest model exercising one family, then enumerates
every assignment and compares row feasibility against the intended predicate
written out directly.
"""

import itertools
from fractions import Fraction as F

import pytest

from gmip.framework import build_output3
from gmip.graphs import Graph
from gmip.model import (IPModel, add_table2_constraints, evaluate, x_name,
                        y_name)
from gmip.oracles import oracle_framework
from gmip.problems import MatchingInstance


def _grid(g, gp):
    m = IPModel()
    for u in g.nodes():
        for a in gp.nodes():
            m.add_binary(x_name(u, a), tag=("x", u, a))
    return m


def _points(names):
    for bits in itertools.product((0, 1), repeat=len(names)):
        yield dict(zip(names, bits))


def _agree(model, predicate):
    """Row feasibility must equal the predicate at every 0/1 point."""
    names = [v.name for v in model.vars]
    seen_feasible = seen_infeasible = False
    for pt in _points(names):
        ok = evaluate(model, pt).feasible
        want = predicate(pt, x_of(pt))
        assert ok == want, pt
        seen_feasible |= ok
        seen_infeasible |= not ok
    assert seen_feasible and seen_infeasible   # the family actually bites


def x_of(pt):
    return lambda u, a: pt[x_name(u, a)]


# -- exclusion families ----------------------------------------------------------

UND_EDGE = Graph(2, [(1, 2)])                 # one pattern edge
UND_PAIR = Graph(2, [])                       # one pattern non-edge
DIR_ARC = Graph(2, [(1, 2)], directed=True)
DIR_PAIR = Graph(2, [], directed=True)
P3 = Graph(3, [(1, 2), (2, 3)])               # non-adjacent pair {1,3}
DP3 = Graph(3, [(1, 2), (2, 3)], directed=True)
K2 = Graph(2, [(1, 2)])
DK2 = Graph(2, [(1, 2)], directed=True)
TWOWAY = Graph(3, [(1, 2), (2, 3), (3, 2)], directed=True)
LOOPY = Graph(2, [(1, 1), (1, 2)], self_loops_allowed=True)


def pred_c1(pt, x):
    # the pattern edge never spans the non-adjacent target pair {1,3}
    return not (x(1, 1) and x(2, 3)) and not (x(1, 3) and x(2, 1))


def pred_c2(pt, x):
    # the pattern non-pair never spans the target edge {1,2}
    return not (x(1, 1) and x(2, 2)) and not (x(1, 2) and x(2, 1))


def pred_e(pt, x):
    # an arc cannot land against a one-way target arc; 2<->3 stays open
    return not (x(1, 2) and x(2, 1))


def pred_h(pt, x):
    # a single pattern node cannot cover both endpoints of a target edge
    return not (x(1, 1) and x(1, 2)) and not (x(2, 1) and x(2, 2))


def pred_i(pt, x):
    # a pattern edge cannot collapse onto one target node
    return not (x(1, 1) and x(2, 1)) and not (x(1, 2) and x(2, 2))


def pred_i_loops(pt, x):
    # ... unless that node carries a loop (node 1 here)
    return not (x(1, 2) and x(2, 2))


FAMILY_CASES = [
    ("c1", UND_EDGE, P3, pred_c1),
    ("c2", UND_PAIR, K2, pred_c2),
    ("d1", DIR_ARC, DP3, pred_c1),     # same shape, arcs instead of edges
    ("d2", DIR_PAIR, DK2, pred_c2),
    ("e", DIR_ARC, TWOWAY, pred_e),
    ("h1", UND_EDGE, K2, pred_h),
    ("h2", UND_EDGE, DK2, pred_h),
    ("i1", UND_EDGE, K2, pred_i),
    ("i2", DIR_ARC, DK2, pred_i),
    ("i1", UND_EDGE, LOOPY, pred_i_loops),
]


@pytest.mark.parametrize("fam,g,gp,pred", FAMILY_CASES,
                         ids=[f"{f}-{i}" for i, (f, *_) in enumerate(FAMILY_CASES)])
def test_exclusion_family(fam, g, gp, pred):
    model = _grid(g, gp)
    add_table2_constraints(model, fam, g, gp)
    _agree(model, pred)


# -- linking families --------------------------------------------------------------

def _linked_model(fams):
    g = gp = K2
    m = _grid(g, gp)
    yv = m.add_binary(y_name((1, 2), (1, 2)), tag=("y", (1, 2), (1, 2)))
    for fam in fams:
        add_table2_constraints(m, fam, g, gp)
    return m, yv


def test_f_pushes_y_up_in_both_orientations():
    model, yv = _linked_model(["f"])
    names = [v.name for v in model.vars]
    for pt in _points(names):
        x = x_of(pt)
        landed = (x(1, 1) and x(2, 2)) or (x(1, 2) and x(2, 1))
        want = pt[yv] >= landed
        assert evaluate(model, pt).feasible == want, pt


def test_g_pushes_y_up_in_declaration_order_only():
    model, yv = _linked_model(["g"])
    names = [v.name for v in model.vars]
    for pt in _points(names):
        x = x_of(pt)
        want = pt[yv] >= (x(1, 1) and x(2, 2))
        assert evaluate(model, pt).feasible == want, pt


def test_f_collapses_on_a_loop_target():
    g = Graph(2, [(1, 2)])
    lp = Graph(1, [(1, 1)], self_loops_allowed=True)
    m = _grid(g, lp)
    yv = m.add_binary(y_name((1, 2), (1, 1)), tag=("y", (1, 2), (1, 1)))
    add_table2_constraints(m, "f", g, lp)
    assert len(m.constraints) == 1
    for pt in _points([v.name for v in m.vars]):
        x = x_of(pt)
        want = pt[yv] >= (x(1, 1) and x(2, 1))
        assert evaluate(m, pt).feasible == want, pt


# -- penalty linking ----------------------------------------------------------------

def _penalty_instance():
    g = Graph(2, [(1, 2)])
    gp = Graph(3, [(1, 2), (2, 3)])
    return MatchingInstance(
        g=g, gp=gp, allow={1: (1, 2, 3), 2: (1, 2, 3)},
        edge_cost={((1, 2), (1, 2)): F(1), ((1, 2), (2, 3)): F(2)},
        forbidden={(1, 2): frozenset({F(1), F(2)})},
        penalty={((1, 2), F(1)): F(3), ((1, 2), F(2)): F(5)},
        regime="many-to-one")


def test_penalty_indicators_link_exactly():
    inst = _penalty_instance()
    model = build_output3(inst)
    names = [v.name for v in model.vars]
    x_names = [n for n in names if model.tag_of[n][0] == "x"]
    yt_tags = {n: model.tag_of[n] for n in names if model.tag_of[n][0] == "yt"}
    assert len(yt_tags) == 2
    min_pen = None
    for pt in _points(names):
        rep = evaluate(model, pt)
        # a point is feasible iff the map rows hold and every indicator
        # dominates its landing conjunction
        f = {}
        ok_map = True
        for n in x_names:
            _, u, a = model.tag_of[n]
            if pt[n]:
                ok_map &= u not in f
                f[u] = a
        ok_map &= len(f) == 2
        if ok_map:
            a, b = sorted((f[1], f[2]))
            ok_map = inst.gp.has_edge(a, b) if a != b else inst.gp.has_loop(a)
        want = ok_map
        if ok_map:
            for n, (_, e, ep, tau) in yt_tags.items():
                landed = sorted((f[1], f[2])) == sorted(ep)
                if landed and inst.d((1, 2), ep) == tau and not pt[n]:
                    want = False
        assert rep.feasible == want, pt
        if rep.feasible:
            pen = rep.objective
            if min_pen is None or pen < min_pen:
                min_pen = pen
    # minimizing the linked indicators reproduces the oracle's penalty form
    assert min_pen == oracle_framework(inst, "output3").value
