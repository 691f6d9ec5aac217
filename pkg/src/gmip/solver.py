"""Exact branch-and-bound over binary variables.

Rows are scaled to integer coefficients once and maintained incrementally
(min/max attainable value, fixed sum, free count) so propagation is cheap.
Continuous bound variables are never branched: they may only appear in <=
rows, where their feasible interval is tightened as binaries get fixed and
their value is derived at leaves (the smallest value the rows admit).

A node is also closed by the completion test: setting every free binary to
its objective-preferred value (1 for negative cost, else 0) gives a point
whose objective equals the node bound; if that point is feasible the node is
solved outright.  This is what keeps slack and-variables from ever being
branched on.
"""

from __future__ import annotations

import itertools
import threading
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .model import BINARY, CONTINUOUS, IPModel, ModelError

ZERO = Fraction(0)


@dataclass
class SolveConfig:
    node_limit: int | None = None
    time_limit: float | None = None   # seconds
    thread_count: int = 1
    branch_rule: str = "most-constrained"     # or "declaration"
    log_bounds: bool = False
    on_incumbent: object = None       # callable(value, nodes) or None


@dataclass
class Solution:
    status: str                       # optimal | infeasible | limit-reached
    objective: Fraction | None
    assignment: dict | None
    stats: dict = field(default_factory=dict)


class _Incumbent:
    """Best feasible point so far, shared across worker threads."""

    def __init__(self):
        self.lock = threading.Lock()
        self.value = None
        self.assignment = None

    def offer(self, value, assignment_fn):
        with self.lock:
            if self.value is None or value < self.value:
                self.value = value
                self.assignment = assignment_fn()
                return True
        return False

    def cutoff(self):
        return self.value


class _Row:
    __slots__ = ("bterms", "cterms", "rel", "rhs",
                 "bin_min", "bin_max", "fixed_sum", "free_count")

    def __init__(self, bterms, cterms, rel, rhs):
        self.bterms = bterms          # ((var_idx, int coef), ...)
        self.cterms = cterms
        self.rel = rel
        self.rhs = rhs
        self.reset()

    def reset(self):
        self.bin_min = sum(min(0, c) for _, c in self.bterms)
        self.bin_max = sum(max(0, c) for _, c in self.bterms)
        self.fixed_sum = 0
        self.free_count = len(self.bterms)


class _Engine:
    def __init__(self, model: IPModel):
        self.model = model
        self.n = len(model.vars)
        self.names = [v.name for v in model.vars]
        self.index = {v.name: i for i, v in enumerate(model.vars)}
        self.is_bin = [v.kind == BINARY for v in model.vars]
        self.lb = [v.lb for v in model.vars]
        self.ub = [v.ub for v in model.vars]
        for v in model.vars:
            if v.kind not in (BINARY, CONTINUOUS):
                raise ModelError(f"variable {v.name!r} has unsupported kind")
        self.rows = []
        self.occ = [[] for _ in range(self.n)]       # binary -> [(row, coef)]
        self.cont_rows = [[] for _ in range(self.n)]  # continuous -> [(row, coef)]
        for con in model.constraints:
            self._scaled(con)
        self.cont_any = [row for row in self.rows if row.cterms]
        self.obj = [(self.index[v], c) for v, c in model.objective]
        self.sense = model.objective_sense
        if self.sense == "max":
            self.obj = [(i, -c) for i, c in self.obj]
        self.obj_bin = [(i, c) for i, c in self.obj if self.is_bin[i]]
        self.obj_cont = [(i, c) for i, c in self.obj if not self.is_bin[i]]
        for i, c in self.obj_cont:
            # completion always takes the smallest feasible continuous value,
            # which is only optimal when the objective pushes it down
            if c < 0:
                raise ModelError(
                    f"objective rewards raising continuous variable "
                    f"{self.names[i]!r}; continuous terms must be minimized")
        self.pref = [0] * self.n
        for i, c in self.obj_bin:
            if c < 0:
                self.pref[i] = 1
        self.reset()

    def _scaled(self, con):
        den = 1
        for _, c in con.terms:
            den = lcm(den, c.denominator)
        den = lcm(den, con.rhs.denominator)
        bterms, cterms = [], []
        for name, c in con.terms:
            i = self.index[name]
            ic = int(c * den)
            (bterms if self.is_bin[i] else cterms).append((i, ic))
        if cterms and con.rel != "<=":
            raise ModelError(
                f"constraint {con.name!r}: continuous variables only appear in <= rows")
        if len(cterms) > 1 and any(c < 0 for _, c in cterms):
            raise ModelError(
                f"constraint {con.name!r}: rows with several continuous "
                "variables must use nonnegative coefficients")
        row = _Row(tuple(bterms), tuple(cterms), con.rel, int(con.rhs * den))
        self.rows.append(row)
        for i, ic in bterms:
            self.occ[i].append((row, ic))
        for i, ic in cterms:
            self.cont_rows[i].append((row, ic))

    # -- search state --------------------------------------------------------
    def reset(self):
        self.val = [None] * self.n
        self.lo = list(self.lb)
        self.hi = list(self.ub)
        self.trail = []
        for row in self.rows:
            row.reset()

    def mark(self):
        return len(self.trail)

    def undo(self, mark):
        while len(self.trail) > mark:
            entry = self.trail.pop()
            if isinstance(entry, int):
                b = self.val[entry]
                self.val[entry] = None
                for row, c in self.occ[entry]:
                    row.bin_min -= c * b - min(0, c)
                    row.bin_max -= c * b - max(0, c)
                    row.fixed_sum -= c * b
                    row.free_count += 1
            else:
                which, i, old = entry
                (self.lo if which == "lo" else self.hi)[i] = old

    def _cont_span(self, row):
        cmin = cmax = ZERO
        for i, c in row.cterms:
            if c > 0:
                cmin += c * self.lo[i]
                cmax += c * self.hi[i]
            else:
                cmin += c * self.hi[i]
                cmax += c * self.lo[i]
        return cmin, cmax

    def _check_row(self, row, queue):
        if row.rel == "<=":
            if row.cterms:
                cmin, _ = self._cont_span(row)
                if row.bin_min + cmin > row.rhs:
                    return False
                if len(row.cterms) == 1:
                    i, c = row.cterms[0]
                    if c < 0:
                        need = Fraction(row.bin_min - row.rhs, -c)
                        if need > self.lo[i]:
                            self.trail.append(("lo", i, self.lo[i]))
                            self.lo[i] = need
                            if need > self.hi[i]:
                                return False
                    else:
                        cap = Fraction(row.rhs - row.bin_min, c)
                        if cap < self.hi[i]:
                            self.trail.append(("hi", i, self.hi[i]))
                            self.hi[i] = cap
                            if cap < self.lo[i]:
                                return False
                return True
            if row.bin_min > row.rhs:
                return False
            if row.free_count and row.bin_min == row.rhs:
                for i, c in row.bterms:
                    if self.val[i] is None:
                        queue.append((i, 0 if c > 0 else 1))
            return True
        if row.rel == "=":
            if row.bin_min > row.rhs or row.bin_max < row.rhs:
                return False
            if row.free_count == 1:
                need = row.rhs - row.fixed_sum
                for i, c in row.bterms:
                    if self.val[i] is None:
                        if need == 0:
                            queue.append((i, 0))
                        elif need == c:
                            queue.append((i, 1))
                        else:
                            return False
                        break
            return True
        # >=
        if row.bin_max < row.rhs:
            return False
        if row.free_count and row.bin_max == row.rhs:
            for i, c in row.bterms:
                if self.val[i] is None:
                    queue.append((i, 1 if c > 0 else 0))
        return True

    def assign(self, fixes):
        """Apply fixes (list of (var_idx, 0/1)) with propagation.

        Returns True, or False on conflict (caller must undo to its mark)."""
        queue = list(fixes)
        while queue:
            i, b = queue.pop()
            cur = self.val[i]
            if cur is not None:
                if cur != b:
                    return False
                continue
            self.val[i] = b
            self.trail.append(i)
            # update every row first so a mid-loop conflict leaves state
            # that undo() can reverse symmetrically
            for row, c in self.occ[i]:
                row.bin_min += c * b - min(0, c)
                row.bin_max += c * b - max(0, c)
                row.fixed_sum += c * b
                row.free_count -= 1
            for row, _ in self.occ[i]:
                if not self._check_row(row, queue):
                    return False
        return True

    def root_propagate(self):
        queue = []
        for row in self.rows:
            if not self._check_row(row, queue):
                return False
        return self.assign(queue)

    # -- bounding and completion ---------------------------------------------
    def bound(self):
        b = ZERO
        for i, c in self.obj_bin:
            v = self.val[i]
            b += c * v if v is not None else min(ZERO, c)
        for i, c in self.obj_cont:
            b += c * (self.lo[i] if c > 0 else self.hi[i])
        return b

    def _completion_value(self, i):
        v = self.val[i]
        return v if v is not None else self.pref[i]

    def try_completion(self):
        """Objective value of the preferred completion if feasible, else None.

        Continuous variables take the smallest value their rows allow under
        the completed binaries."""
        need_lo = {}
        for row in self.rows:
            if row.rel == "<=" and not row.cterms \
                    and row.bin_max <= row.rhs:
                continue
            s = row.fixed_sum
            for i, c in row.bterms:
                if self.val[i] is None and self.pref[i]:
                    s += c
            if row.cterms:
                if len(row.cterms) == 1:
                    i, c = row.cterms[0]
                    if c < 0:
                        lo = Fraction(s - row.rhs, -c)
                        if lo > need_lo.get(i, self.lo[i]):
                            need_lo[i] = lo
                # upper/multi-variable rows checked once lows are known
                continue
            if row.rel == "<=":
                if s > row.rhs:
                    return None
            elif row.rel == "=":
                if s != row.rhs:
                    return None
            elif s < row.rhs:
                return None

        def value_of(i):
            return max(self.lo[i], need_lo.get(i, self.lo[i]))

        for i in range(self.n):
            if not self.is_bin[i] and value_of(i) > self.ub[i]:
                return None
        # re-check every continuous row at the candidate point (minimal
        # values; exact because multi-variable rows have nonnegative coefs)
        for row in self.cont_any:
            s = row.fixed_sum
            for i, c in row.bterms:
                if self.val[i] is None and self.pref[i]:
                    s += c
            s += sum(c * value_of(i) for i, c in row.cterms)
            if s > row.rhs:
                return None
        cont_val = {i: value_of(i) for i in range(self.n) if not self.is_bin[i]}
        obj = ZERO
        for i, c in self.obj_bin:
            obj += c * self._completion_value(i)
        for i, c in self.obj_cont:
            obj += c * cont_val.get(i, self.lo[i])
        self._last_completion_cont = cont_val
        return obj

    def snapshot_completion(self):
        out = {}
        cont_val = getattr(self, "_last_completion_cont", {})
        for i, name in enumerate(self.names):
            if self.is_bin[i]:
                out[name] = self._completion_value(i)
            else:
                out[name] = cont_val.get(i, self.lo[i])
        return out

    # -- branching -------------------------------------------------------------
    def pick_branch(self, rule):
        if rule == "declaration":
            for i in range(self.n):
                if self.is_bin[i] and self.val[i] is None:
                    return i
            return None
        counts = {}
        for row in self.rows:
            if row.free_count == 0:
                continue
            if row.rel == "<=":
                cmax = self._cont_span(row)[1] if row.cterms else 0
                if row.bin_max + cmax <= row.rhs:
                    continue
            elif row.rel == ">=":
                cmin = self._cont_span(row)[0] if row.cterms else 0
                if row.bin_min + cmin >= row.rhs:
                    continue
            for i, _ in row.bterms:
                if self.val[i] is None:
                    counts[i] = counts.get(i, 0) + 1
        if counts:
            best = min(counts, key=lambda i: (-counts[i], i))
            return best
        for i in range(self.n):
            if self.is_bin[i] and self.val[i] is None:
                return i
        return None


class _Search:
    def __init__(self, engine, cfg, incumbent, deadline):
        self.eng = engine
        self.cfg = cfg
        self.incumbent = incumbent
        self.deadline = deadline
        self.nodes = 0
        self.prunes = 0
        self.hit_limit = False
        self.bound_trace = []

    def _out_of_budget(self):
        if self.cfg.node_limit is not None and self.nodes >= self.cfg.node_limit:
            return True
        if self.deadline is not None and self.nodes % 64 == 0 \
                and time.monotonic() > self.deadline:
            return True
        return False

    def run(self):
        eng = self.eng
        if not eng.root_propagate():
            return
        self.dive()

    def dive(self):
        eng, cfg = self.eng, self.cfg
        self.nodes += 1
        if self._out_of_budget():
            self.hit_limit = True
            return
        b = eng.bound()
        if cfg.log_bounds:
            self.bound_trace.append(b)
        cut = self.incumbent.cutoff()
        if cut is not None and b >= cut:
            self.prunes += 1
            return
        comp = eng.try_completion()
        if comp is not None:
            cut = self.incumbent.cutoff()
            if cut is None or comp < cut:
                if self.incumbent.offer(comp, eng.snapshot_completion) \
                        and cfg.on_incumbent:
                    cfg.on_incumbent(comp, self.nodes)
            if comp == b:
                return                  # the bound is attained: node solved
        var = eng.pick_branch(cfg.branch_rule)
        if var is None:
            return                      # leaf; completion above covered it
        for value in (1, 0):
            mark = eng.mark()
            if eng.assign([(var, value)]):
                self.dive()
            eng.undo(mark)
            if self.hit_limit:
                return


def _finish(model, incumbent, nodes, prunes, hit_limit, trace, cfg):
    stats = {"nodes": nodes, "prunes": prunes}
    if cfg.log_bounds:
        stats["bound_trace"] = trace
    sense = -1 if model.objective_sense == "max" else 1
    if incumbent.value is None:
        status = "limit-reached" if hit_limit else "infeasible"
        return Solution(status, None, None, stats)
    value = incumbent.value if sense == 1 else -incumbent.value
    status = "limit-reached" if hit_limit else "optimal"
    return Solution(status, value, incumbent.assignment, stats)


def solve(model: IPModel, cfg: SolveConfig | None = None) -> Solution:
    """Exact optimum (or feasibility verdict) of a 0-1 model."""
    cfg = cfg or SolveConfig()
    import sys
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * len(model.vars) + 1000))
    incumbent = _Incumbent()
    deadline = (time.monotonic() + cfg.time_limit) if cfg.time_limit is not None else None
    if cfg.thread_count <= 1:
        eng = _Engine(model)
        search = _Search(eng, cfg, incumbent, deadline)
        search.run()
        return _finish(model, incumbent, search.nodes, search.prunes,
                       search.hit_limit, search.bound_trace, cfg)

    # multi-threaded: split the tree below the root into prefix subproblems
    probe = _Engine(model)
    if not probe.root_propagate():
        return _finish(model, incumbent, 1, 0, False, [], cfg)
    prefixes = [[]]
    while 0 < len(prefixes) < cfg.thread_count:
        base = prefixes.pop(0)
        mark = probe.mark()
        ok = probe.assign(list(base))
        var = probe.pick_branch(cfg.branch_rule) if ok else None
        probe.undo(mark)
        if not ok:
            continue
        if var is None:
            prefixes.append(base)      # too small to split further
            break
        prefixes.append(base + [(var, 1)])
        prefixes.append(base + [(var, 0)])
    work = list(prefixes)
    lock = threading.Lock()
    searches = []

    def worker():
        eng = _Engine(model)
        while True:
            with lock:
                if not work:
                    return
                prefix = work.pop(0)
            eng.reset()
            if not eng.root_propagate():
                continue
            search = _Search(eng, cfg, incumbent, deadline)
            with lock:
                searches.append(search)
            if eng.assign(list(prefix)):
                search.dive()

    threads = [threading.Thread(target=worker) for _ in range(cfg.thread_count)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    nodes = sum(s.nodes for s in searches) + 1
    prunes = sum(s.prunes for s in searches)
    hit = any(s.hit_limit for s in searches)
    trace = list(itertools.chain.from_iterable(s.bound_trace for s in searches))
    return _finish(model, incumbent, nodes, prunes, hit, trace, cfg)


def propagate(model: IPModel, partial: dict):
    """Implied fixings from a partial binary assignment, or None on conflict."""
    eng = _Engine(model)
    fixes = []
    for name, value in partial.items():
        if name not in eng.index:
            raise ModelError(f"unknown variable {name!r}")
        fixes.append((eng.index[name], int(value)))
    if not eng.root_propagate():
        return None
    if not eng.assign(fixes):
        return None
    out = {}
    for i, v in enumerate(eng.val):
        if v is not None and eng.names[i] not in partial:
            out[eng.names[i]] = v
    return out
