"""Every encoding against its oracle, witness checking included."""

import random
from fractions import Fraction as F

import pytest

import gen
from gmip.checkers import check_witness
from gmip.encoders import decode_witness, encode, render_witness
from gmip.graphs import Graph, complete_graph
from gmip.oracles import oracle_solve
from gmip.problems import (Arrangement, Bandwidth, Coloring, Golomb,
                           Isomorphism, KTsp, Labeling, MetricLabeling,
                           ProblemError)
from gmip.solver import solve


def roundtrip(spec):
    """solve(encode(spec)) compared against the enumeration oracle."""
    model = encode(spec)
    got = solve(model)
    want = oracle_solve(spec)
    assert got.status == want.status, spec
    if want.status == "infeasible":
        return None
    assert got.objective == want.value, spec
    witness = decode_witness(spec, model, got.assignment)
    assert check_witness(spec, got.objective, witness), spec
    return witness


@pytest.mark.parametrize("op", sorted(gen.GENERATORS))
def test_random_agreement(op):
    rng = random.Random(hash(op) % 100000 + 17)
    for _ in range(25):
        roundtrip(gen.GENERATORS[op](rng))


# -- cross-encoder identities ---------------------------------------------------

def test_subgraph_contains_induced_subgraph():
    rng = random.Random(71)
    hits = 0
    for _ in range(60):
        host = gen.rand_graph(rng, rng.randint(2, 5))
        pat = gen.rand_graph(rng, rng.randint(1, host.n))
        isi = solve(encode(Isomorphism("ISI", host, pat)))
        if isi.status != "optimal":
            continue
        hits += 1
        assert solve(encode(Isomorphism("SI", host, pat))).status == "optimal"
    assert hits > 5


def test_budgeted_coloring_matches_chromatic_number():
    rng = random.Random(72)
    for _ in range(25):
        g = gen.rand_graph(rng, rng.randint(1, 5))
        chi = solve(encode(Coloring("GC", g))).objective
        for K in (1, 2, 3):
            got = solve(encode(Coloring("GKC", g, K=K)))
            assert (got.status == "optimal") == (chi <= K), (g, K, chi)


def test_unit_weight_wvcp_is_chromatic():
    rng = random.Random(73)
    for _ in range(15):
        g = gen.rand_graph(rng, rng.randint(1, 5))
        chi = solve(encode(Coloring("GC", g))).objective
        wv = solve(encode(Coloring("WVCP", g,
                                   weights={u: F(1) for u in g.nodes()})))
        assert wv.objective == chi


def test_score_pinned_coloring_attains_the_score():
    rng = random.Random(74)
    for _ in range(10):
        g = gen.rand_graph(rng, rng.randint(2, 4))
        K = rng.randint(2, 3)
        costs = {(u, c): rng.choice(gen.COST_POOL)
                 for u in g.nodes() for c in range(1, K + 1)
                 if rng.random() < 0.8}
        if not costs:
            continue
        spec_a = Coloring("MWSCP_A", g, K=K, costs=costs)
        best = solve(encode(spec_a))
        assert best.status == "optimal"     # partial colorings always exist
        spec_b = Coloring("MWSCP_B", g, K=K, costs=costs, zstar=best.objective)
        got = solve(encode(spec_b))
        want = oracle_solve(spec_b)
        assert got.status == want.status == "optimal"
        assert got.objective == want.value


# -- witness shapes ---------------------------------------------------------------

def test_ruler_witness_and_rendering():
    spec = Golomb(4, 10)
    model = encode(spec)
    got = solve(model)
    marks = decode_witness(spec, model, got.assignment)
    assert marks[0] == 0 and len(marks) == 4
    diffs = [b - a for i, a in enumerate(marks) for b in marks[i + 1:]]
    assert len(set(diffs)) == len(diffs)
    assert render_witness(spec, marks).startswith("marks:")


def test_render_witness_prefixes():
    cases = [
        (KTsp(Graph(3, [(1, 2), (2, 3), (3, 1)], directed=True), 3), "tour:"),
        (Coloring("GC", gen.cycle(4)), "colors:"),
        (Isomorphism("SI", gen.cycle(4), gen.path(3)), "map:"),
        (Bandwidth(gen.path(3), optimize=True), "positions:"),
        (Labeling("GL_opt", gen.path(3), m=2, k=1), "labels:"),
    ]
    for spec, prefix in cases:
        model = encode(spec)
        got = solve(model)
        w = decode_witness(spec, model, got.assignment)
        assert render_witness(spec, w).startswith(prefix)


def test_checker_rejects_corrupt_witnesses():
    spec = Coloring("GC", gen.cycle(5))
    model = encode(spec)
    got = solve(model)
    w = decode_witness(spec, model, got.assignment)
    assert check_witness(spec, got.objective, w)
    assert not check_witness(spec, got.objective - 1, w)    # wrong value
    bad = dict(w)
    bad[1] = bad[2]                                         # adjacent clash
    assert not check_witness(spec, got.objective, bad)


# -- guard rails -------------------------------------------------------------------

def test_encoder_guards():
    dg = Graph(3, [(1, 2), (2, 3)], directed=True)
    neg = Graph(3, [(1, 2, F(-1)), (2, 3), (3, 1)], directed=True)
    with pytest.raises(ProblemError):
        encode(KTsp(neg, 3, variant="B"))
    with pytest.raises(ProblemError):
        encode(Arrangement("LAP", Graph(2, [(1, 2, F(-2))])))
    with pytest.raises(ProblemError):
        encode(Coloring("MWIS", dg))
    with pytest.raises(ProblemError):
        encode(Labeling("GL_opt", gen.path(3), m=1, k=2))
    with pytest.raises(ProblemError):
        encode(Isomorphism("SI", gen.path(2), gen.path(3)))   # pattern too big
    with pytest.raises(ProblemError):
        encode(MetricLabeling(Graph(2, [(1, 2)]), labels=(1, 2),
                              D={(1, 2): F(1)}, allow={1: (7,)}))
    with pytest.raises(ProblemError):
        encode(object())


def test_zero_budget_coloring_is_infeasible_not_an_error():
    got = solve(encode(Coloring("GKC", gen.path(2), K=0)))
    assert got.status == "infeasible"
