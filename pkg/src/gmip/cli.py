"""Batch front door: parse instance files, encode, solve, verify, report.

Exit codes for solve/verify: 0 optimal or feasible (verify: match),
1 infeasible (verify: mismatch), 2 limit reached, 3 input error.
"""

import json
import sys
import time

import click

from .checkers import check_witness
from .encoders import decode_witness, encode, render_witness
from .graphs import GraphError
from .model import emit_lp
from .oracles import OracleCapExceeded, oracle_solve
from .problems import (PROBLEM_TAGS, Arrangement, Coloring, CommonSubgraph,
                       Isomorphism, Labeling, ProblemError, load_spec)
from .solver import SolveConfig, solve


def _fail(msg):
    click.echo(f"error: {msg}", err=True)
    sys.exit(3)


def _load(path):
    try:
        return load_spec(path)
    except (ProblemError, GraphError, OSError) as exc:
        _fail(exc)


def _tag_of(spec):
    if isinstance(spec, (Arrangement, Isomorphism, CommonSubgraph, Coloring)):
        return spec.kind.lower()
    if isinstance(spec, Labeling):
        return "gl" if spec.kind.startswith("GL") else "fsfa"
    return type(spec).__name__.lower().replace("metriclabeling", "mlp")


def _build(spec):
    try:
        return encode(spec)
    except (ProblemError, GraphError) as exc:
        _fail(exc)


def _emit_report(report, as_json):
    if as_json:
        click.echo(json.dumps(report, sort_keys=True))
        return
    for key in ("problem", "vars", "constraints", "status", "value",
                "witness", "verdict", "oracle_value", "nodes", "wall_time"):
        if report.get(key) is not None:
            click.echo(f"{key}: {report[key]}")


@click.group()
def main():
    """Compile graph-matching problems into 0-1 programs and solve them."""


@main.command("list-problems")
def cmd_list_problems():
    """Show every supported problem tag."""
    width = max(len(tag) for tag, _ in PROBLEM_TAGS)
    for tag, desc in PROBLEM_TAGS:
        click.echo(f"{tag:<{width}}  {desc}")


@main.command("encode")
@click.argument("spec_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("out_path", type=click.Path(dir_okay=False, writable=True))
def cmd_encode(spec_file, out_path):
    """Write the instance's 0-1 program as an LP file."""
    spec = _load(spec_file)
    model = _build(spec)
    with open(out_path, "w") as fh:
        fh.write(emit_lp(model))
    s = model.stats()
    click.echo(f"wrote {out_path}: {s['vars']} vars, "
               f"{s['constraints']} constraints")


def _solve_spec(spec, time_limit, node_limit, threads):
    model = _build(spec)
    cfg = SolveConfig(node_limit=node_limit, time_limit=time_limit,
                      thread_count=threads)
    t0 = time.perf_counter()
    sol = solve(model, cfg)
    wall = time.perf_counter() - t0
    report = {"problem": _tag_of(spec), "status": sol.status,
              "nodes": sol.stats.get("nodes"),
              "wall_time": round(wall, 4), **model.stats()}
    witness = None
    if sol.status == "optimal":
        report["value"] = str(sol.objective)
        witness = decode_witness(spec, model, sol.assignment)
        report["witness"] = render_witness(spec, witness)
    return sol, report, witness


_EXIT = {"optimal": 0, "infeasible": 1, "limit-reached": 2}


@main.command("solve")
@click.argument("spec_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--time-limit", type=float, default=None, help="seconds")
@click.option("--node-limit", type=int, default=None)
@click.option("--threads", type=int, default=1)
@click.option("--json", "as_json", is_flag=True, help="machine-readable report")
def cmd_solve(spec_file, time_limit, node_limit, threads, as_json):
    """Solve an instance with the built-in branch-and-bound engine."""
    spec = _load(spec_file)
    sol, report, _ = _solve_spec(spec, time_limit, node_limit, threads)
    _emit_report(report, as_json)
    sys.exit(_EXIT[sol.status])


@main.command("verify")
@click.argument("spec_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--time-limit", type=float, default=None, help="seconds")
@click.option("--threads", type=int, default=1)
@click.option("--json", "as_json", is_flag=True, help="machine-readable report")
def cmd_verify(spec_file, time_limit, threads, as_json):
    """Solve via the IP and via the brute-force oracle; report a verdict."""
    spec = _load(spec_file)
    sol, report, witness = _solve_spec(spec, time_limit, None, threads)
    if sol.status == "limit-reached":
        report["verdict"] = "no verdict (solver hit its limit)"
        _emit_report(report, as_json)
        sys.exit(2)
    try:
        ores = oracle_solve(spec)
    except OracleCapExceeded as exc:
        _fail(f"oracle cap exceeded: {exc}")
    if ores.status == "optimal":
        report["oracle_value"] = str(ores.value)
    ok = sol.status == ores.status
    if ok and sol.status == "optimal":
        ok = sol.objective == ores.value and check_witness(spec, sol.objective,
                                                           witness)
    report["verdict"] = "match" if ok else "mismatch"
    _emit_report(report, as_json)
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
