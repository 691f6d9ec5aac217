"""Brute-force oracles against hand-checked optima on named instances.

Values here are frozen: they come from the problem definitions (classical
optima like bandwidth(K4)=3 or the length-6 perfect ruler on 4 marks), not
from running the package, so they anchor everything else.
"""

from fractions import Fraction as F

import pytest

import gen
from gmip.graphs import Graph, LayeredGraph, complete_graph
from gmip.oracles import (OracleCapExceeded, oracle_framework, oracle_solve)
from gmip.problems import (IGC, MLCM, Arrangement, Bandwidth, Coloring,
                           CommonSubgraph, Golomb, Isomorphism, KTsp,
                           Labeling, MatchingInstance, MetricLabeling,
                           ProblemError)

K4 = complete_graph(4)
# complete digraph on 4 nodes, arc weight |u - v|
K4D = Graph(4, [(u, v, F(abs(u - v))) for u in range(1, 5)
                for v in range(1, 5) if u != v], directed=True)
# host graph of the running example: hub 1 over the rim cycle 2-3-4-5-2;
# the rim is its only chordless 4-cycle
WHEEL5 = Graph(5, [(1, 2), (1, 3), (1, 4), (1, 5),
                   (2, 3), (2, 5), (3, 4), (4, 5)])
C4 = gen.cycle(4)
C5 = gen.cycle(5)

NAMED = [
    # tours
    ("ktsp A cycle", KTsp(Graph(3, [(1, 2), (2, 3), (3, 1)], directed=True), 3),
     "optimal", F(0)),
    ("ktsp A path", KTsp(Graph(3, [(1, 2), (2, 3)], directed=True), 3),
     "infeasible", None),
    ("ktsp A ignores K", KTsp(Graph(3, [(1, 2), (2, 3), (3, 1)], directed=True),
                              3, K=F(0)), "optimal", F(0)),
    ("ktsp B", KTsp(K4D, 4, variant="B"), "optimal", F(6)),
    ("ktsp C", KTsp(K4D, 4, variant="C"), "optimal", F(2)),
    # bandwidth: path 1, cycle 2, clique n-1
    ("bw P5", Bandwidth(gen.path(5), optimize=True), "optimal", F(1)),
    ("bw C5", Bandwidth(C5, optimize=True), "optimal", F(2)),
    ("bw K4", Bandwidth(K4, optimize=True), "optimal", F(3)),
    ("bw K4 opt ignores K", Bandwidth(K4, K=1, optimize=True), "optimal", F(3)),
    ("bw P5 fits band 1", Bandwidth(gen.path(5), K=1), "optimal", F(0)),
    ("bw C5 misses band 1", Bandwidth(C5, K=1), "infeasible", None),
    # linear arrangements: la(P4)=3, cutwidth(K4)=4, profile(Pn)=n-1, 2n-3 on Cn
    ("LAP P4", Arrangement("LAP", gen.path(4)), "optimal", F(3)),
    ("LAP K2", Arrangement("LAP", Graph(2, [(1, 2)])), "optimal", F(1)),
    ("LAP P4 within 3", Arrangement("LAP", gen.path(4), K=F(3)), "optimal", F(3)),
    ("LAP P4 over budget", Arrangement("LAP", gen.path(4), K=F(2)), "infeasible", None),
    ("MCLAP K4", Arrangement("MCLAP", K4), "optimal", F(4)),
    ("MCLAP P4", Arrangement("MCLAP", gen.path(4)), "optimal", F(1)),
    ("MCLAP K4 over budget", Arrangement("MCLAP", K4, K=F(3)), "infeasible", None),
    ("DLAP path", Arrangement("DLAP", Graph(3, [(1, 2), (2, 3)], directed=True)),
     "optimal", F(2)),
    ("PMP P4", Arrangement("PMP", gen.path(4)), "optimal", F(3)),
    ("PMP C5", Arrangement("PMP", C5), "optimal", F(7)),
    # isomorphism
    ("GI relabelled C5", Isomorphism("GI", Graph(5, [(1, 3), (3, 5), (5, 2),
                                                     (2, 4), (4, 1)]), C5),
     "optimal", F(0)),
    ("GI C5 vs P5", Isomorphism("GI", C5, gen.path(5)), "infeasible", None),
    ("SI wheel C4", Isomorphism("SI", WHEEL5, C4), "optimal", F(0)),
    ("ISI wheel C4", Isomorphism("ISI", WHEEL5, C4), "optimal", F(0)),
    # common subgraphs
    ("LCS identical", CommonSubgraph("LCS", gen.path(3), gen.path(3)),
     "optimal", F(2)),
    ("CMP one edge", CommonSubgraph("CMP", gen.path(3), Graph(2, [(1, 2)])),
     "optimal", F(1)),
    ("MISM identical", CommonSubgraph("MISM", Graph(3, [(1, 2), (2, 3)], directed=True),
                                      Graph(3, [(1, 2), (2, 3)], directed=True)),
     "optimal", F(3)),
    ("MSM identical", CommonSubgraph("MSM", Graph(4, [(1, 2), (2, 3), (3, 4)], directed=True),
                                     Graph(4, [(1, 2), (2, 3), (3, 4)], directed=True)),
     "optimal", F(4)),
    # colorings: chi(C5)=3, chi(K4)=4, chi(C4)=2
    ("GC C5", Coloring("GC", C5), "optimal", F(3)),
    ("GC K4", Coloring("GC", K4), "optimal", F(4)),
    ("GC C4", Coloring("GC", C4), "optimal", F(2)),
    ("GKC C4 two colors", Coloring("GKC", C4, K=2), "optimal", F(0)),
    ("GKC K3 two colors", Coloring("GKC", complete_graph(3), K=2), "infeasible", None),
    ("GH C4 to K2", Coloring("GH", C4, gp=complete_graph(2)), "optimal", F(0)),
    ("GH C5 to K2", Coloring("GH", C5, gp=complete_graph(2)), "infeasible", None),
    ("GH C5 to K3", Coloring("GH", C5, gp=complete_graph(3)), "optimal", F(0)),
    # best partial 2-coloring of P3: 3 at node 1, 5 at node 2, 4 at node 3
    ("MWSCP_A P3", Coloring("MWSCP_A", gen.path(3), K=2,
                            costs={(1, 1): F(3), (1, 2): F(1), (2, 1): F(2),
                                   (2, 2): F(5), (3, 1): F(4), (3, 2): F(1)}),
     "optimal", F(12)),
    # class {1,3} costs max(3,2)=3, class {2} costs 1
    ("WVCP P3", Coloring("WVCP", gen.path(3), weights={1: F(3), 2: F(1), 3: F(2)}),
     "optimal", F(4)),
    ("MCP K3", Coloring("MCP", Graph(3, [(1, 2, F(1)), (2, 3, F(1)), (1, 3, F(1))])),
     "optimal", F(3)),
    # value r(r-1)/2 for an r-node independent set: alpha(C5)=2, alpha(K4)=1
    ("MWIS C5", Coloring("MWIS", C5), "optimal", F(1)),
    ("MWIS K4", Coloring("MWIS", K4), "optimal", F(0)),
    # labelings: L(2,1) spans, then frequency penalties
    ("GL K2", Labeling("GL_opt", Graph(2, [(1, 2)]), m=2, k=1), "optimal", F(2)),
    ("GL K2 tight cap", Labeling("GL_feas", Graph(2, [(1, 2)]), m=2, k=1, lam=1),
     "infeasible", None),
    ("GL P3", Labeling("GL_opt", gen.path(3), m=2, k=1), "optimal", F(3)),
    ("FSFA room to move", Labeling("FSFA", Graph(2, [(1, 2)]), F=frozenset({1, 2, 3}),
                                   t={(1, 2): 1}, p={(1, 2): F(3)}), "optimal", F(0)),
    ("FSFA stuck", Labeling("FSFA", Graph(2, [(1, 2)]), F=frozenset({1, 2}),
                            t={(1, 2): 1}, p={(1, 2): F(3)}), "optimal", F(3)),
    # metric labeling on one edge: split labels pay D=4, sharing pays c=5
    ("MLP split", MetricLabeling(Graph(2, [(1, 2)]), labels=(1, 2),
                                 D={(1, 1): F(0), (1, 2): F(4), (2, 2): F(0)},
                                 c={(1, 1): F(0), (1, 2): F(5),
                                    (2, 1): F(5), (2, 2): F(0)}),
     "optimal", F(4)),
    ("MLP split P4", MetricLabeling(Graph(2, [(1, 2)]), labels=(1, 2),
                                    D={(1, 1): F(0), (1, 2): F(4), (2, 2): F(0)},
                                    c={(1, 1): F(0), (1, 2): F(5),
                                       (2, 1): F(5), (2, 2): F(0)},
                                    objective="P4"),
     "optimal", F(4)),
    # rulers: perfect ruler 0-1-4-6, optimal 5-mark length 11
    ("golomb 4 marks", Golomb(4, 10), "optimal", F(6)),
    ("golomb 5 marks", Golomb(5, 12), "optimal", F(11)),
    ("golomb 2 marks", Golomb(2, 1), "optimal", F(1)),
    ("golomb 3 in 2", Golomb(3, 2, optimize=False), "infeasible", None),
    ("golomb 3 in 3", Golomb(3, 3, optimize=False), "optimal", F(0)),
    # interval completion: paths are interval graphs, C4 needs 1 chord, C5 two
    ("IGC P4", IGC(gen.path(4)), "optimal", F(0)),
    ("IGC C4", IGC(C4), "optimal", F(1)),
    ("IGC C5", IGC(C5), "optimal", F(2)),
    # layered crossings: parallel arcs 0, K22 forces 1
    ("MLCM parallel", MLCM(LayeredGraph([(1, 2), (3, 4)], [(1, 3), (2, 4)])),
     "optimal", F(0)),
    ("MLCM K22", MLCM(LayeredGraph([(1, 2), (3, 4)],
                                   [(1, 3), (1, 4), (2, 3), (2, 4)])),
     "optimal", F(1)),
    ("MLCM three layers", MLCM(LayeredGraph([(1, 2), (3, 4), (5,)],
                                            [(1, 3), (2, 4), (3, 5)])),
     "optimal", F(0)),
]


@pytest.mark.parametrize("label,spec,status,value",
                         NAMED, ids=[n for n, *_ in NAMED])
def test_named_optima(label, spec, status, value):
    got = oracle_solve(spec)
    assert got.status == status
    assert got.value == value


def test_isi_image_is_the_rim():
    got = oracle_solve(Isomorphism("ISI", WHEEL5, C4))
    assert sorted(set(got.witness.values())) == [2, 3, 4, 5]


def test_golomb_marks():
    got = oracle_solve(Golomb(4, 10))
    assert got.witness == (0, 1, 4, 6)


# -- matching-framework oracle -------------------------------------------------

def _tiny(regime, forbidden={}, penalty={}):
    g = Graph(2, [(1, 2)])
    return MatchingInstance(g=g, gp=Graph(2, [(1, 2)]),
                            allow={1: (1, 2), 2: (1, 2)},
                            node_cost={(1, 1): F(5)},
                            edge_cost={((1, 2), (1, 2)): F(2)},
                            forbidden=forbidden, penalty=penalty,
                            regime=regime)


def test_framework_feasibility_form():
    assert oracle_framework(_tiny("one-to-one")).value == F(0)
    blocked = _tiny("one-to-one", forbidden={(1, 2): frozenset({F(2)})})
    assert oracle_framework(blocked).status == "infeasible"


def test_framework_cost_forms():
    inst = _tiny("one-to-one")
    # both injections map the edge onto the edge (d=2); only 1->1 pays c=5
    for obj in ("P2", "P4", "P6"):
        got = oracle_framework(inst, obj)
        assert got.value == F(2)
        assert got.witness == {1: 2, 2: 1}


def test_framework_penalty_form():
    inst = _tiny("one-to-one", forbidden={(1, 2): frozenset({F(2)})},
                 penalty={((1, 2), F(2)): F(3)})
    got = oracle_framework(inst, "output3")
    assert got.status == "optimal" and got.value == F(3)


def test_framework_injective_needs_room():
    inst = MatchingInstance(g=Graph(3, []), gp=Graph(2, []),
                            allow={u: (1, 2) for u in (1, 2, 3)},
                            node_cost={}, edge_cost={}, forbidden={},
                            penalty={}, regime="one-to-one")
    assert oracle_framework(inst).status == "infeasible"


def test_framework_rejects_directed_cost_forms():
    g = Graph(2, [(1, 2)], directed=True)
    inst = MatchingInstance(g=g, gp=g, allow={1: (1,), 2: (2,)},
                            node_cost={}, edge_cost={}, forbidden={},
                            penalty={}, regime="many-to-one")
    assert oracle_framework(inst).status == "optimal"
    with pytest.raises(ProblemError):
        oracle_framework(inst, "P2")


# -- guard rails ---------------------------------------------------------------

def test_oracle_rejects_wrong_directedness():
    d = Graph(3, [(1, 2), (2, 3)], directed=True)
    with pytest.raises(ProblemError):
        oracle_solve(Coloring("MWIS", d))
    with pytest.raises(ProblemError):
        oracle_solve(Coloring("MCP", d))
    with pytest.raises(ProblemError):
        oracle_solve(KTsp(Graph(3, [(1, 2)]), 2))   # tours need arcs


def test_labeling_guards():
    with pytest.raises(ProblemError):
        oracle_solve(Labeling("GL_opt", Graph(2, [(1, 2)]), m=1, k=2))
    with pytest.raises(ProblemError):
        oracle_solve(Labeling("FSFA", Graph(2, [(1, 2)]), F=frozenset()))


def test_enumeration_cap(monkeypatch):
    monkeypatch.setenv("GMIP_ORACLE_CAP", "10")
    with pytest.raises(OracleCapExceeded):
        oracle_solve(Golomb(4, 10))
