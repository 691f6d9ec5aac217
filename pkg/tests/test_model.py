"""IPModel container, LP text round-trip, and the shared formula families."""

import random
from fractions import Fraction as F

import pytest

import gen
from gmip.graphs import Graph
from gmip.model import (IPModel, ModelError, add_table2_constraints, emit_lp,
                        evaluate, parse_lp, x_name, y_name, yt_name, z_name)


def _grid(g, gp):
    m = IPModel()
    for u in g.nodes():
        for a in gp.nodes():
            m.add_binary(x_name(u, a), tag=("x", u, a))
    return m


def test_variable_declarations():
    m = IPModel()
    m.add_binary("a", tag=("x", 1))
    m.add_continuous("K", ub=F(7, 2), tag=("Ku", 1))
    assert m.varmap[("x", 1)] == "a"
    assert m.tag_of["K"] == ("Ku", 1)
    assert m.by_tag(("x", 1)) == "a" and m.has_tag(("Ku", 1))
    with pytest.raises(ModelError):
        m.add_binary("a")                   # name reuse
    with pytest.raises(ModelError):
        m.add_continuous("K2", ub=F(-1))


def test_constraint_validation():
    m = IPModel()
    m.add_binary("a")
    m.add_constraint("r", [("a", F(1)), ("a", F(0))], "<=", F(1))
    assert m.constraints[0].terms == (("a", F(1)),)   # zero coefs dropped
    with pytest.raises(ModelError):
        m.add_constraint("z", [("a", F(0))], "<=", F(1))
    with pytest.raises(ModelError):
        m.add_constraint("z", [], "<=", F(1))
    with pytest.raises(ModelError):
        m.add_constraint("z", [("nope", F(1))], "<=", F(1))
    with pytest.raises(ModelError):
        m.add_constraint("r", [("a", F(1))], "<=", F(2))  # name reuse


def test_evaluate():
    m = IPModel()
    m.add_binary("a")
    m.add_binary("b")
    m.add_constraint("r1", [("a", F(1)), ("b", F(1))], "<=", F(1))
    m.add_constraint("r2", [("a", F(1))], ">=", F(1))
    m.set_objective("min", [("a", F(2)), ("b", F(-1))])
    ok = evaluate(m, {"a": 1, "b": 0})
    assert ok.feasible and ok.objective == F(2)
    bad = evaluate(m, {"a": 1, "b": 1})
    assert not bad.feasible and bad.violations == ("r1",)
    assert evaluate(m, {"a": 0, "b": 0}).violations == ("r2",)


def test_stats_and_names():
    assert x_name(1, 2) == "x_1_2"
    assert y_name((1, 2), (3, 4)) == "y_1_2__3_4"
    assert z_name((1, 2), (3, 4)) == "z_1_2__3_4"
    assert yt_name((1, 2), (3, 4), F(1, 2)) == "yt_1_2__3_4_1/2"
    m = IPModel()
    m.add_binary("a")
    m.add_constraint("r", [("a", F(1))], "=", F(1))
    assert m.stats() == {"vars": 1, "constraints": 1}


def test_emit_lp_roundtrip():
    m = IPModel()
    m.add_binary("a")
    m.add_continuous("K", ub=F(7, 2))
    m.add_constraint("cap", [("a", F(2)), ("K", F(-1))], "<=", F(0))
    m.set_objective("min", [("K", F(1))])
    text = emit_lp(m)
    assert emit_lp(parse_lp(text)) == text
    assert emit_lp(m) == text               # deterministic re-emission


def test_emit_parse_identity_random():
    rng = random.Random(20240814)
    for _ in range(40):
        m = gen.rand_model(rng)
        text = emit_lp(m)
        assert emit_lp(parse_lp(text)) == text


# -- formula families ---------------------------------------------------------

def test_assignment_row_shapes():
    g, gp = Graph(2, [(1, 2)]), Graph(3, [(1, 2), (2, 3)])
    for fam, rel, count in (("a1", "=", 2), ("a2", "=", 3),
                            ("b1", "<=", 2), ("b2", "<=", 3)):
        m = _grid(g, gp)
        add_table2_constraints(m, fam, g, gp)
        rows = m.constraints
        assert len(rows) == count
        assert all(c.rel == rel and c.rhs == 1 for c in rows)
    # a1 over a sparse grid with an unmappable node is an error
    m = IPModel()
    m.add_binary(x_name(1, 1), tag=("x", 1, 1))
    with pytest.raises(ModelError):
        add_table2_constraints(m, "a1", g, gp)


def test_exclusion_row_counts():
    g, gp = Graph(3, [(1, 2)]), Graph(3, [(1, 2), (2, 3)])
    m = _grid(g, gp)
    add_table2_constraints(m, "c1", g, gp)
    assert len(m.constraints) == 2          # one pattern edge x one non-edge pair
    m = _grid(g, gp)
    add_table2_constraints(m, "c2", g, gp)
    assert len(m.constraints) == 8
    m = _grid(g, gp)
    add_table2_constraints(m, "i1", g, gp)
    assert len(m.constraints) == 3          # no loops in the target
    lp = Graph(2, [(1, 1), (1, 2)], self_loops_allowed=True)
    m = _grid(g, lp)
    add_table2_constraints(m, "i1", g, lp)
    assert [c.name for c in m.constraints] == ["i1_1_2__2"]


def test_direction_requirements():
    und, dirg = Graph(2, [(1, 2)]), Graph(2, [(1, 2)], directed=True)
    for fam, pat, tgt in (("c1", dirg, und), ("d1", und, und), ("e", und, dirg),
                          ("h1", und, dirg), ("h2", und, und),
                          ("i1", dirg, und), ("i2", und, dirg)):
        m = _grid(pat, tgt)
        with pytest.raises(ModelError):
            add_table2_constraints(m, fam, pat, tgt)
    with pytest.raises(ModelError):
        add_table2_constraints(_grid(und, und), "q9", und, und)


def test_linking_rows():
    g = gp = Graph(2, [(1, 2)])
    m = _grid(g, gp)
    yv = m.add_binary(y_name((1, 2), (1, 2)), tag=("y", (1, 2), (1, 2)))
    add_table2_constraints(m, "f", g, gp)
    add_table2_constraints(m, "g", g, gp)
    by_name = {c.name: c for c in m.constraints}
    # f: y is pushed up by either orientation of the mapped pair
    assert by_name[f"f_{yv}_1"].rel == "<=" and by_name[f"f_{yv}_1"].rhs == 1
    assert by_name[f"f_{yv}_2"].rel == "<="
    # g: y cannot rise unless some orientation is fully selected
    assert by_name[f"g_{yv}"].rhs == 1
    terms = dict(by_name[f"g_{yv}"].terms)
    assert terms[yv] == F(-1)
