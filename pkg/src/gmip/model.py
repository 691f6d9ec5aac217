"""0-1 integer programs with optional continuous bound variables.

The model is a plain list of variables and rows with exact rational
coefficients, a bidirectional variable<->semantic-tag map, the shared
assignment-formula builders used by the problem encoders, and LP-format text
emission that round-trips through `parse_lp`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graphs import Graph, complement

BINARY = "binary"
CONTINUOUS = "continuous"

RELATIONS = ("<=", ">=", "=")


@dataclass(frozen=True)
class VarDecl:
    name: str
    kind: str
    lb: Fraction
    ub: Fraction


@dataclass(frozen=True)
class Constraint:
    name: str
    terms: tuple          # ((var name, Fraction coef), ...)
    rel: str
    rhs: Fraction


class ModelError(ValueError):
    pass


# deterministic variable names; tau uses 'm' for minus so names stay LP-safe
def x_name(u, up):
    return f"x_{u}_{up}"


def y_name(e, ep):
    return f"y_{e[0]}_{e[1]}__{ep[0]}_{ep[1]}"


def z_name(e, ep):
    return f"z_{e[0]}_{e[1]}__{ep[0]}_{ep[1]}"


def yt_name(e, ep, tau):
    return f"yt_{e[0]}_{e[1]}__{ep[0]}_{ep[1]}_{str(tau).replace('-', 'm')}"


class IPModel:
    def __init__(self, name="model"):
        self.name = name
        self.vars = []              # [VarDecl] in declaration order
        self.constraints = []       # [Constraint]
        self.objective_sense = "min"
        self.objective = ()         # ((var, coef), ...)
        self.varmap = {}            # semantic tag -> var name
        self.tag_of = {}            # var name -> semantic tag
        self._index = {}            # var name -> position in vars
        self._rownames = set()

    # -- variables ---------------------------------------------------------
    def add_binary(self, name, tag=None):
        return self._add_var(name, BINARY, Fraction(0), Fraction(1), tag)

    def add_continuous(self, name, ub, tag=None):
        ub = Fraction(ub)
        if ub < 0:
            raise ModelError(f"variable {name!r} has negative upper bound {ub}")
        return self._add_var(name, CONTINUOUS, Fraction(0), ub, tag)

    def _add_var(self, name, kind, lb, ub, tag):
        if name in self._index:
            raise ModelError(f"variable {name!r} declared twice")
        self._index[name] = len(self.vars)
        self.vars.append(VarDecl(name, kind, lb, ub))
        if tag is not None:
            if tag in self.varmap:
                raise ModelError(f"tag {tag!r} used twice")
            self.varmap[tag] = name
            self.tag_of[name] = tag
        return name

    def has_var(self, name):
        return name in self._index

    def has_tag(self, tag):
        return tag in self.varmap

    def by_tag(self, tag):
        return self.varmap[tag]

    # -- rows ----------------------------------------------------------------
    def add_constraint(self, name, terms, rel, rhs):
        if rel not in RELATIONS:
            raise ModelError(f"unknown relation {rel!r}")
        if name in self._rownames:
            raise ModelError(f"constraint {name!r} declared twice")
        if not terms:
            raise ModelError(f"constraint {name!r} has no terms")
        norm = []
        for var, coef in terms:
            if var not in self._index:
                raise ModelError(f"constraint {name!r} references undeclared {var!r}")
            coef = Fraction(coef)
            if coef != 0:
                norm.append((var, coef))
        if not norm:
            raise ModelError(f"constraint {name!r} has only zero coefficients")
        self._rownames.add(name)
        self.constraints.append(Constraint(name, tuple(norm), rel, Fraction(rhs)))

    def set_objective(self, sense, terms):
        if sense not in ("min", "max"):
            raise ModelError(f"objective sense must be min/max, got {sense!r}")
        norm = []
        for var, coef in terms:
            if var not in self._index:
                raise ModelError(f"objective references undeclared {var!r}")
            coef = Fraction(coef)
            if coef != 0:
                norm.append((var, coef))
        self.objective_sense = sense
        self.objective = tuple(norm)

    # structural identity: everything except the varmap tags
    def __eq__(self, other):
        if not isinstance(other, IPModel):
            return NotImplemented
        return (self.vars == other.vars
                and self.constraints == other.constraints
                and self.objective_sense == other.objective_sense
                and self.objective == other.objective)

    def __repr__(self):
        return (f"<IPModel {self.name!r} vars={len(self.vars)} "
                f"rows={len(self.constraints)}>")

    def stats(self):
        return {"vars": len(self.vars), "constraints": len(self.constraints)}


@dataclass(frozen=True)
class EvalReport:
    objective: Fraction
    violations: tuple

    @property
    def feasible(self):
        return not self.violations


def evaluate(model: IPModel, assignment) -> EvalReport:
    """Objective value and violated-constraint names under an assignment."""
    missing = [v.name for v in model.vars if v.name not in assignment]
    if missing:
        raise ModelError(f"assignment misses variables: {missing[:5]}")
    bad = []
    for con in model.constraints:
        lhs = sum(coef * Fraction(assignment[var]) for var, coef in con.terms)
        ok = (lhs <= con.rhs if con.rel == "<=" else
              lhs >= con.rhs if con.rel == ">=" else lhs == con.rhs)
        if not ok:
            bad.append(con.name)
    obj = sum((coef * Fraction(assignment[var]) for var, coef in model.objective),
              Fraction(0))
    return EvalReport(obj, tuple(bad))


# ---------------------------------------------------------------------------
# shared assignment-formula builders
#
# All builders reference x variables through ('x', u, a) tags and emit a row
# only when every variable it needs exists, so restricted allow sets simply
# thin the row set.  Several printed forms carry garbled subscripts; each
# reconstruction is commented with the semantics it enforces.

def _x(model, u, a):
    return model.varmap.get(("x", u, a))


def _pair_row(model, name, va, vb):
    if va is not None and vb is not None:
        model.add_constraint(name, [(va, 1), (vb, 1)], "<=", 1)


def _nonedge_pairs(g: Graph):
    # unordered node pairs with no edge/arc in either direction, loops ignored
    return complement(g).simple_edges()


def add_table2_constraints(model: IPModel, kind: str, g: Graph, gp: Graph):
    """Emit one assignment-formula family over pattern g and target gp.

    a1/a2: every pattern node / target node assigned exactly once.
    b1/b2: the at-most-once variants.
    c1: pattern edges cannot land on target non-edges (two rows per combo).
    c2: pattern non-edges cannot land on target edges.
    d1/d2: the directed analogues of c1/c2 (non-arc = no arc either way).
    e:  an arc cannot land against the direction of a target arc; emitted
        only when the reversed target arc is absent, otherwise the row would
        forbid legitimate maps onto two-way pairs.
    f/g: and-linking rows for every y variable already declared (one row per
        orientation; a loop target collapses to a single row).
    h1/h2: one pattern node cannot take both endpoints of a target edge/arc.
    i1/i2: both endpoints of a pattern edge/arc cannot share a target node;
        loop-bearing target nodes are exempt (the loop is what permits
        co-location).
    """
    if kind == "a1":
        _sum_rows(model, g, gp, per="pattern", rel="=")
    elif kind == "a2":
        _sum_rows(model, g, gp, per="target", rel="=")
    elif kind == "b1":
        _sum_rows(model, g, gp, per="pattern", rel="<=")
    elif kind == "b2":
        _sum_rows(model, g, gp, per="target", rel="<=")
    elif kind == "c1":
        if g.directed or gp.directed:
            raise ModelError("c1 needs undirected graphs")
        for (u, v) in g.simple_edges():
            for (a, b) in _nonedge_pairs(gp):
                _pair_row(model, f"c1_{u}_{v}__{a}_{b}_1", _x(model, u, a), _x(model, v, b))
                _pair_row(model, f"c1_{u}_{v}__{a}_{b}_2", _x(model, u, b), _x(model, v, a))
    elif kind == "c2":
        if g.directed or gp.directed:
            raise ModelError("c2 needs undirected graphs")
        for (u, v) in _nonedge_pairs(g):
            for (a, b) in gp.simple_edges():
                _pair_row(model, f"c2_{u}_{v}__{a}_{b}_1", _x(model, u, a), _x(model, v, b))
                _pair_row(model, f"c2_{u}_{v}__{a}_{b}_2", _x(model, u, b), _x(model, v, a))
    elif kind == "d1":
        if not (g.directed and gp.directed):
            raise ModelError("d1 needs directed graphs")
        for (u, v) in g.simple_edges():
            for (a, b) in _nonedge_pairs(gp):
                _pair_row(model, f"d1_{u}_{v}__{a}_{b}_1", _x(model, u, a), _x(model, v, b))
                _pair_row(model, f"d1_{u}_{v}__{a}_{b}_2", _x(model, u, b), _x(model, v, a))
    elif kind == "d2":
        if not (g.directed and gp.directed):
            raise ModelError("d2 needs directed graphs")
        for (u, v) in _nonedge_pairs(g):
            for (a, b) in gp.simple_edges():
                _pair_row(model, f"d2_{u}_{v}__{a}_{b}_1", _x(model, u, a), _x(model, v, b))
                _pair_row(model, f"d2_{u}_{v}__{a}_{b}_2", _x(model, u, b), _x(model, v, a))
    elif kind == "e":
        if not (g.directed and gp.directed):
            raise ModelError("e needs directed graphs")
        for (u, v) in g.simple_edges():
            for (a, b) in gp.simple_edges():
                if not gp.has_edge(b, a):      # two-way pairs stay legal
                    _pair_row(model, f"e_{u}_{v}__{a}_{b}", _x(model, u, b), _x(model, v, a))
    elif kind in ("f", "g"):
        _linking_rows(model, kind)
    elif kind == "h1":
        if gp.directed:
            raise ModelError("h1 needs an undirected target")
        for u in g.nodes():
            for (a, b) in gp.simple_edges():
                _pair_row(model, f"h1_{u}__{a}_{b}", _x(model, u, a), _x(model, u, b))
    elif kind == "h2":
        if not gp.directed:
            raise ModelError("h2 needs a directed target")
        for u in g.nodes():
            for (a, b) in gp.simple_edges():
                _pair_row(model, f"h2_{u}__{a}_{b}", _x(model, u, a), _x(model, u, b))
    elif kind == "i1":
        if g.directed:
            raise ModelError("i1 needs an undirected pattern")
        for (u, v) in g.simple_edges():
            for c in gp.nodes():
                if not gp.has_loop(c):
                    _pair_row(model, f"i1_{u}_{v}__{c}", _x(model, u, c), _x(model, v, c))
    elif kind == "i2":
        if not g.directed:
            raise ModelError("i2 needs a directed pattern")
        for (u, v) in g.simple_edges():
            for c in gp.nodes():
                if not gp.has_loop(c):
                    _pair_row(model, f"i2_{u}_{v}__{c}", _x(model, u, c), _x(model, v, c))
    else:
        raise ModelError(f"unknown formula kind {kind!r}")


def _sum_rows(model, g, gp, per, rel):
    prefix = {"pattern": {"=": "a1", "<=": "b1"}, "target": {"=": "a2", "<=": "b2"}}[per][rel]
    outer = g.nodes() if per == "pattern" else gp.nodes()
    inner = gp.nodes() if per == "pattern" else g.nodes()
    for i in outer:
        terms = []
        for j in inner:
            v = _x(model, i, j) if per == "pattern" else _x(model, j, i)
            if v is not None:
                terms.append((v, 1))
        if terms:
            model.add_constraint(f"{prefix}_{i}", terms, rel, 1)
        elif rel == "=":
            raise ModelError(f"{prefix}: no assignment variables for node {i}")


def _linking_rows(model, kind):
    # one 'x + x <= y + 1' row per orientation of every declared y variable
    for tag, yv in list(model.varmap.items()):
        if tag[0] != "y":
            continue
        _, (u, v), (a, b) = tag
        if kind == "g":
            xa, xb = _x(model, u, a), _x(model, v, b)
            if xa is not None and xb is not None:
                model.add_constraint(f"g_{yv}", [(xa, 1), (xb, 1), (yv, -1)], "<=", 1)
            continue
        xa, xb = _x(model, u, a), _x(model, v, b)
        if xa is not None and xb is not None:
            model.add_constraint(f"f_{yv}_1", [(xa, 1), (xb, 1), (yv, -1)], "<=", 1)
        if a != b:
            xc, xd = _x(model, u, b), _x(model, v, a)
            if xc is not None and xd is not None:
                model.add_constraint(f"f_{yv}_2", [(xc, 1), (xd, 1), (yv, -1)], "<=", 1)


# ---------------------------------------------------------------------------
# LP text

def _fmt_coef_var(coef, var, first):
    if coef < 0:
        lead = "- " if first else " - "
        coef = -coef
    else:
        lead = "" if first else " + "
    if coef == 1:
        return f"{lead}{var}"
    return f"{lead}{coef} {var}"


def _fmt_terms(terms):
    out = []
    for i, (var, coef) in enumerate(terms):
        out.append(_fmt_coef_var(coef, var, i == 0))
    return "".join(out)


def emit_lp(model: IPModel) -> str:
    """Deterministic LP-format text (Minimize/Maximize, Subject To, Bounds,
    Binary, End).  Every variable gets a Bounds line in declaration order so
    parsing restores the declaration order exactly; rational coefficients are
    written as p/q."""
    lines = []
    lines.append("Maximize" if model.objective_sense == "max" else "Minimize")
    lines.append(" obj: " + _fmt_terms(model.objective) if model.objective else " obj:")
    lines.append("Subject To")
    for con in model.constraints:
        lines.append(f" {con.name}: {_fmt_terms(con.terms)} {con.rel} {con.rhs}")
    lines.append("Bounds")
    for v in model.vars:
        lines.append(f" {v.lb} <= {v.name} <= {v.ub}")
    lines.append("Binary")
    for v in model.vars:
        if v.kind == BINARY:
            lines.append(f" {v.name}")
    lines.append("End")
    return "\n".join(lines) + "\n"


def _parse_terms(text):
    tokens = text.replace("+", " + ").replace("<=", " <= ").split()
    # '-' only ever appears as a standalone sign in emitted text
    terms = []
    sign = Fraction(1)
    coef = None
    for tok in tokens:
        if tok == "+":
            sign, coef = Fraction(1), None
        elif tok == "-":
            sign, coef = Fraction(-1), None
        elif tok[0].isdigit():
            coef = Fraction(tok)
        else:
            terms.append((tok, sign * (coef if coef is not None else Fraction(1))))
            sign, coef = Fraction(1), None
    return tuple(terms)


def parse_lp(text: str) -> IPModel:
    """Parse text produced by emit_lp back into a model (varmap not restored)."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("\\")]
    pos = 0

    def cur():
        return lines[pos].strip()

    sense = cur().lower()
    if sense not in ("minimize", "maximize"):
        raise ModelError(f"expected Minimize/Maximize, got {cur()!r}")
    sense = "min" if sense == "minimize" else "max"
    pos += 1
    if not cur().startswith("obj:"):
        raise ModelError("expected objective line")
    obj_terms = _parse_terms(cur()[len("obj:"):])
    pos += 1
    if cur() != "Subject To":
        raise ModelError("expected 'Subject To'")
    pos += 1
    rows = []
    while cur() != "Bounds":
        line = cur()
        name, rest = line.split(":", 1)
        rel = None
        for r in ("<=", ">=", "="):
            if f" {r} " in rest:
                rel = r
                break
        if rel is None:
            raise ModelError(f"no relation in row {name!r}")
        lhs, rhs = rest.rsplit(f" {rel} ", 1)
        rows.append((name.strip(), _parse_terms(lhs), rel, Fraction(rhs.strip())))
        pos += 1
    pos += 1
    bounds = []
    while cur() != "Binary":
        parts = cur().split("<=")
        if len(parts) != 3:
            raise ModelError(f"bad bounds line {cur()!r}")
        bounds.append((parts[1].strip(), Fraction(parts[0].strip()), Fraction(parts[2].strip())))
        pos += 1
    pos += 1
    binaries = set()
    while cur() != "End":
        binaries.add(cur())
        pos += 1

    model = IPModel()
    for name, lb, ub in bounds:
        if name in binaries:
            model.add_binary(name)
        else:
            model.add_continuous(name, ub)
        if (lb, ub) != (model.vars[-1].lb, model.vars[-1].ub):
            raise ModelError(f"unsupported bounds on {name!r}")
    for name, terms, rel, rhs in rows:
        model.add_constraint(name, terms, rel, rhs)
    model.set_objective(sense, obj_terms)
    return model
