"""Command-line front end.

Subcommands: solve, validate, gen, bench, render, oracle. Exit codes are a
contract for shell harnesses: 0 success, 1 failed validation or other
run-time refusal, 2 malformed instance file or bad arguments, 3 axiom
violations in an abstract instance (override with --force), 4 memory budget
exceeded. The solve memory budget comes from --memory-budget, falling back
to the FILAMENT_MEMORY_BUDGET environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
import warnings

from .generators import GeneratorSpec, generate
from .geometry import PolylineFilament, validate_filament
from .instance import Instance, build_index, check_axioms
from .instfile import (InstanceDocument, InstanceFormatError, load,
                       make_document, serialize_document)
from .mwim import solve_mwim
from .mwis import (DEFAULT_MEMORY_BUDGET, MemoryBudgetError,
                   WeightOverflowError, solve_mwis)
from .oracle import OracleCapError, brute_mwim, brute_mwis
from .render import render_svg

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_MALFORMED = 2
EXIT_AXIOMS = 3
EXIT_MEMORY = 4


def _resolve_budget(arg: int | None) -> int:
    if arg is not None:
        return arg
    env = os.environ.get("FILAMENT_MEMORY_BUDGET")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InstanceFormatError(
                f"FILAMENT_MEMORY_BUDGET must be an integer, got {env!r}")
    return DEFAULT_MEMORY_BUDGET


def _write_out(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _geometry_problems(doc: InstanceDocument) -> list[str]:
    problems = []
    for i, f in enumerate(doc.instance.filaments):
        if isinstance(f, PolylineFilament):
            for v in validate_filament(f).violations:
                problems.append(
                    f"filament {doc.ids[i]}: {v.condition} violated at vertex {v.vertex}")
        elif f.left > f.right:
            problems.append(f"filament {doc.ids[i]}: l <= r violated")
    return problems


def _axiom_problems(inst: Instance, ids: tuple[str, ...]) -> list[str]:
    report = check_axioms(inst)
    lines = []
    for i, j in report.p1_violations:
        lines.append(f"p1 violation: ({ids[i]},{ids[j]}) intersect across disjoint spans")
    for i, j in report.p2_violations:
        lines.append(f"p2 violation: ({ids[i]},{ids[j]}) overlap properly but do not intersect")
    for i, j, k in report.p3_violations:
        lines.append(f"p3 violation: ({ids[i]},{ids[j]},{ids[k]}) nested chain leaks an intersection")
    return lines


def _emit_solution(args, payload: dict) -> None:
    if args.format == "machine":
        _write_out(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
        return
    lines = [f"problem: {payload['problem']}", f"solver: {payload['solver']}"]
    for warning in payload["warnings"]:
        lines.append(f"warning: {warning}")
    lines.append(f"weight: {payload['weight']}")
    if "members" in payload:
        lines.append("members: " + " ".join(payload["members"]))
    if "edges" in payload:
        lines.append("edges: " + " ".join(f"{a}-{b}" for a, b in payload["edges"]))
    if payload.get("s_prime") is not None:
        lines.append(f"s_prime: {payload['s_prime']}")
    if payload.get("evaluated_states") is not None:
        lines.append(f"evaluated_states: {payload['evaluated_states']}")
    lines.append(f"wall_time_ms: {payload['wall_time_ms']}")
    _write_out("\n".join(lines) + "\n", args.out)


def _load_or_fail(path: str) -> InstanceDocument:
    try:
        return load(path)
    except OSError as exc:
        raise InstanceFormatError(f"cannot read {path}: {exc.strerror}")


def _solution_payload(args, doc: InstanceDocument, solver: str,
                      notes: list[str]):
    inst = doc.instance
    t0 = time.perf_counter()
    if args.problem == "mwis":
        if solver == "oracle":
            solution = brute_mwis(inst)
            states = None
        else:
            solution, table = solve_mwis(build_index(inst),
                                         memory_budget=_resolve_budget(args.memory_budget))
            states = table.evaluated_states
        wall_ms = (time.perf_counter() - t0) * 1000
        return {
            "problem": "mwis",
            "solver": solver,
            "weight": solution.weight,
            "members": sorted(doc.ids[p] for p in solution.members),
            "evaluated_states": states,
            "wall_time_ms": round(wall_ms, 3),
            "warnings": notes,
        }
    if solver == "oracle":
        matching = brute_mwim(inst, doc.edge_weights)
        states = s_prime = None
    else:
        matching, table = solve_mwim(inst, doc.edge_weights,
                                     memory_budget=_resolve_budget(args.memory_budget))
        states, s_prime = table.evaluated_states, table.size - 1
    wall_ms = (time.perf_counter() - t0) * 1000
    return {
        "problem": "mwim",
        "solver": solver,
        "weight": matching.weight,
        "edges": sorted(sorted((doc.ids[a], doc.ids[b])) for a, b in matching.edges),
        "s_prime": s_prime,
        "evaluated_states": states,
        "wall_time_ms": round(wall_ms, 3),
        "warnings": notes,
    }


def _cmd_solve(args, solver: str = "dp") -> int:
    doc = _load_or_fail(args.instance)
    problems = _geometry_problems(doc)
    if problems:
        for p in problems:
            print(p, file=sys.stderr)
        print("instance contains invalid filaments", file=sys.stderr)
        return EXIT_MALFORMED

    notes: list[str] = []
    if doc.instance.adjacency is not None:
        axiom_lines = _axiom_problems(doc.instance, doc.ids)
        if axiom_lines:
            if not args.force:
                for line in axiom_lines:
                    print(line, file=sys.stderr)
                print("axiom violations: refusing to solve (use --force)",
                      file=sys.stderr)
                return EXIT_AXIOMS
            notes.append("axiom violations present; no correctness guarantee")

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # surfaced via the payload instead
        payload = _solution_payload(args, doc, solver, notes)
    _emit_solution(args, payload)
    return EXIT_OK


def _cmd_validate(args) -> int:
    doc = _load_or_fail(args.instance)
    problems = _geometry_problems(doc)
    problems += _axiom_problems(doc.instance, doc.ids)
    for line in problems:
        print(line)
    if problems:
        return EXIT_FAIL
    print("ok")
    return EXIT_OK


def _parse_weight_range(text: str | None) -> tuple[int, int] | None:
    if text is None:
        return None
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError:
        raise InstanceFormatError(f"--weights expects LO:HI, got {text!r}")


def _cmd_gen(args) -> int:
    spec = GeneratorSpec(family=args.family, n=args.n, seed=args.seed,
                         weight_range=_parse_weight_range(args.weights),
                         segments=args.segments)
    instance = generate(spec)
    _write_out(serialize_document(make_document(instance)), args.out)
    return EXIT_OK


def _cmd_bench(args) -> int:
    import csv
    import io

    budget = _resolve_budget(args.memory_budget)
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["family", "n", "s_prime", "evaluated_states",
                     "wall_time_ms", "optimal_weight"])
    for n in args.sizes:
        for rep in range(args.reps):
            spec = GeneratorSpec(family=args.family, n=n, seed=args.seed + rep,
                                 weight_range=_parse_weight_range(args.weights))
            inst = generate(spec)
            t0 = time.perf_counter()
            if args.problem == "mwis":
                solution, table = solve_mwis(build_index(inst),
                                             memory_budget=budget)
                weight, s_prime = solution.weight, ""
            else:
                matching, table = solve_mwim(inst, memory_budget=budget)
                weight, s_prime = matching.weight, table.size - 1
            wall_ms = (time.perf_counter() - t0) * 1000
            writer.writerow([args.family, n, s_prime, table.evaluated_states,
                             round(wall_ms, 3), weight])
    _write_out(buf.getvalue(), args.out)
    return EXIT_OK


def _highlight_ids(path: str) -> frozenset[str]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InstanceFormatError(f"cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"highlight file is not valid JSON: {exc}")
    if "members" in data:
        return frozenset(data["members"])
    if "edges" in data:
        return frozenset(fid for pair in data["edges"] for fid in pair)
    raise InstanceFormatError("highlight file has neither members nor edges")


def _cmd_render(args) -> int:
    doc = _load_or_fail(args.instance)
    highlight = _highlight_ids(args.highlight) if args.highlight else None
    try:
        svg = render_svg(doc, highlight)
    except ValueError as exc:
        raise InstanceFormatError(str(exc))
    _write_out(svg, args.out)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="filaments",
        description="Independent set and induced matching solvers for "
                    "interval filament instances.")
    sub = top.add_subparsers(dest="command", required=True)

    def add_solver(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("problem", choices=["mwis", "mwim"])
        p.add_argument("instance")
        p.add_argument("--format", choices=["text", "machine"], default="text")
        p.add_argument("--out")
        p.add_argument("--force", action="store_true",
                       help="solve even if the axioms are violated")
        p.add_argument("--memory-budget", type=int, default=None)
        return p

    add_solver("solve", "solve an instance with the dynamic program")
    add_solver("oracle", "solve an instance by exhaustive enumeration")

    p = sub.add_parser("validate", help="check filaments and axioms")
    p.add_argument("instance")

    p = sub.add_parser("gen", help="generate an instance file")
    p.add_argument("--family", required=True,
                   choices=["worstcase", "random-arcs", "random-polylines",
                            "nested-arcs"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--weights", default=None, metavar="LO:HI",
                   help="integer weight range; write --weights=-10:100 "
                        "for negative bounds")
    p.add_argument("--segments", type=int, default=3)
    p.add_argument("--out")

    p = sub.add_parser("bench", help="measure state counts and wall time")
    p.add_argument("--problem", choices=["mwis", "mwim"], default="mwis")
    p.add_argument("--family", required=True,
                   choices=["worstcase", "random-arcs", "random-polylines",
                            "nested-arcs"])
    p.add_argument("--sizes", required=True,
                   type=lambda s: [int(t) for t in s.split(",")])
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--weights", default=None, metavar="LO:HI")
    p.add_argument("--memory-budget", type=int, default=None)
    p.add_argument("--out")

    p = sub.add_parser("render", help="draw an instance as SVG")
    p.add_argument("instance")
    p.add_argument("--out", required=True)
    p.add_argument("--highlight", default=None,
                   help="machine-format solution file whose members get a "
                        "distinct stroke")

    return top


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "solve": lambda: _cmd_solve(args, "dp"),
        "oracle": lambda: _cmd_solve(args, "oracle"),
        "validate": lambda: _cmd_validate(args),
        "gen": lambda: _cmd_gen(args),
        "bench": lambda: _cmd_bench(args),
        "render": lambda: _cmd_render(args),
    }
    try:
        return handlers[args.command]()
    except InstanceFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except MemoryBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MEMORY
    except (OracleCapError, WeightOverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        # bad flag values, unsolvable content (e.g. edge weights on non-edges)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
