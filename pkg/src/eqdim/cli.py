"""Command-line front end: generate, verify, bound, solve, reproduce.

Every JSON output embeds a run manifest (command line, graph spec, options,
artifact version, seed); replaying the same command reproduces identical
bytes except for elapsed-time fields.  Exit codes: 0 success / valid /
optimal, 1 invalid certificate or value mismatch or unproven optimum,
2 invalid input (bad spec, disconnected graph, I/O problems).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .bounds import compute_bounds
from .constructions import parse_construction_spec, verify_construction
from .equalizer import is_distance_equalizer
from .families import build_family, parse_family_spec
from .graph import (Graph, all_pairs_distances, component_count,
                    graph_to_json_dict, is_connected, load_graph)
from .solver import (INFEASIBLE_INPUT, OPTIMAL, SolveOptions, solve_graph,
                     solve_bruteforce)

_KNOWN_FAMILIES = ("johnson", "kneser", "path", "cycle", "star", "complete",
                   "random")

# Expected values reproduced by the table command: exact equidistant
# dimensions for the tabulated Johnson/Kneser instances (None marks the
# disconnected Kneser case) plus the small enumerated instances.
TABULATED_VALUES = {
    (7, 3): {"johnson": 5, "kneser": 5},
    (8, 3): {"johnson": 8, "kneser": 3},
    (8, 4): {"johnson": 7, "kneser": None},
    (9, 3): {"johnson": 7, "kneser": 3},
}
SMALL_VALUES = [("johnson", 4, 2, 2), ("johnson", 5, 2, 3), ("johnson", 6, 3, 10)]


@dataclass
class RunManifest:
    command: list[str]
    graph: str | None
    options: dict
    seed: int | None

    def to_json_dict(self) -> dict:
        return {"command": self.command, "graph": self.graph,
                "options": self.options, "artifact_version": __version__,
                "seed": self.seed}


def _manifest(args, argv: list[str], graph_spec: str | None) -> dict:
    options = {
        "time_limit": getattr(args, "time_limit", None),
        "node_limit": getattr(args, "node_limit", None),
        "threads": getattr(args, "threads", None),
        "only": getattr(args, "only", None),
    }
    return RunManifest(argv, graph_spec, options,
                       getattr(args, "seed", None)).to_json_dict()


def _emit(payload: dict, args) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _looks_like_spec(text: str) -> bool:
    name = text.partition(":")[0].strip().lower()
    return ":" in text and name in _KNOWN_FAMILIES


def _resolve_graph(arg: str, seed: int) -> tuple[Graph, str, tuple | None]:
    """Return (graph, spec-or-path, family hint) for a --graph argument."""
    if _looks_like_spec(arg):
        spec = parse_family_spec(arg)
        g = build_family(spec, seed=seed)
        hint = None
        if spec.family in ("johnson", "kneser"):
            hint = (spec.family, spec.params[0], spec.params[1])
        return g, spec.text, hint
    g = load_graph(arg)
    hint = None
    try:
        data = json.loads(Path(arg).read_text(encoding="utf-8"))
        fam = data.get("family")
        if isinstance(fam, str) and _looks_like_spec(fam):
            spec = parse_family_spec(fam)
            if spec.family in ("johnson", "kneser"):
                hint = (spec.family, spec.params[0], spec.params[1])
    except (json.JSONDecodeError, OSError):
        pass
    return g, arg, hint


def _parse_member_list(text: str, g: Graph) -> list[int]:
    """Accept 1-based subset labels '{1,2},{1,3}' or raw 0-based indices '0,3,7'."""
    text = text.strip()
    if "{" in text:
        groups = re.findall(r"\{[^{}]*\}", text)
        if not groups or "".join(groups).replace(",", "") != \
                text.replace(",", "").replace(" ", ""):
            raise ValueError(f"malformed label list {text!r}")
        if g.labels is None:
            raise ValueError("graph carries no labels; pass raw indices instead")
        normalized = {}
        for i, lab in enumerate(g.labels):
            normalized[re.sub(r"\s+", "", lab)] = i
        members = []
        for grp in groups:
            key = re.sub(r"\s+", "", grp)
            elems = sorted(int(x) for x in key.strip("{}").split(","))
            key = "{" + ",".join(map(str, elems)) + "}"
            if key not in normalized:
                raise ValueError(f"unknown label {grp!r}")
            members.append(normalized[key])
        return members
    members = [int(tok) for tok in text.split(",") if tok.strip()]
    for v in members:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex index {v} outside 0..{g.n - 1}")
    return members


def _solve_options(args) -> SolveOptions:
    return SolveOptions(time_limit=args.time_limit, node_limit=args.node_limit,
                        threads=args.threads)


def cmd_gen(args, argv: list[str]) -> int:
    spec = parse_family_spec(args.spec)
    g = build_family(spec, seed=args.seed)
    payload = graph_to_json_dict(g, family=spec.text)
    payload["manifest"] = _manifest(args, argv, spec.text)
    _emit(payload, args)
    return 0


def cmd_verify(args, argv: list[str]) -> int:
    g, spec_text, _ = _resolve_graph(args.graph, args.seed)
    members = _parse_member_list(args.set, g)
    dm = all_pairs_distances(g)
    cert = is_distance_equalizer(dm, members)
    payload = cert.to_json_dict(list(g.labels) if g.labels else None)
    payload["graph_order"] = g.n
    payload["manifest"] = _manifest(args, argv, spec_text)
    _emit(payload, args)
    if args.pretty:
        state = "valid" if cert.valid else f"INVALID at pair {cert.violation}"
        print(f"# {spec_text}: set of size {len(members)} is {state}",
              file=sys.stderr)
    return 0 if cert.valid else 1


def cmd_solve(args, argv: list[str]) -> int:
    g, spec_text, hint = _resolve_graph(args.graph, args.seed)
    if not is_connected(g):
        print(f"error: graph is disconnected ({component_count(g)} components); "
              "the equidistant dimension is undefined", file=sys.stderr)
        return 2
    if args.brute_force:
        from .equalizer import build_instance
        rep = solve_bruteforce(build_instance(all_pairs_distances(g)))
    else:
        rep = solve_graph(g, _solve_options(args), family_hint=hint,
                          kernel=args.kernel)
    payload = rep.to_json_dict(list(g.labels) if g.labels else None)
    payload["manifest"] = _manifest(args, argv, spec_text)
    _emit(payload, args)
    if rep.status == OPTIMAL:
        return 0
    return 2 if rep.status == INFEASIBLE_INPUT else 1


def cmd_bounds(args, argv: list[str]) -> int:
    g, spec_text, _ = _resolve_graph(args.graph, args.seed)
    if not is_connected(g):
        print(f"error: graph is disconnected ({component_count(g)} components)",
              file=sys.stderr)
        return 2
    report = compute_bounds(g)
    payload = report.to_json_dict()
    payload["graph_order"] = g.n
    payload["manifest"] = _manifest(args, argv, spec_text)
    _emit(payload, args)
    return 0


def cmd_construction(args, argv: list[str]) -> int:
    construction = parse_construction_spec(args.spec)
    report = verify_construction(construction)
    payload = report.to_json_dict()
    payload["manifest"] = _manifest(args, argv, args.spec)
    _emit(payload, args)
    return 0 if report.certificate.valid else 1


def run_table_rows(only: tuple[int, int] | None, opts: SolveOptions,
                   kernel: str | None = None) -> list[dict]:
    """Compute the reproduction rows; each row reports computed vs expected."""
    from .families import johnson, kneser

    rows = []
    for (n, k), expected_by_family in TABULATED_VALUES.items():
        if only is not None and only != (n, k):
            continue
        for family, expected in expected_by_family.items():
            g = johnson(n, k)[0] if family == "johnson" else kneser(n, k)[0]
            row = {"section": "tabulated", "family": family, "n": n, "k": k,
                   "expected": expected}
            if not is_connected(g):
                row.update(computed=None, status="disconnected", nodes=0,
                           elapsed_s=0.0)
                row["pass"] = expected is None
            else:
                rep = solve_graph(g, opts, family_hint=(family, n, k),
                                  kernel=kernel)
                row.update(computed=rep.value, status=rep.status,
                           nodes=rep.nodes, elapsed_s=round(rep.elapsed_s, 3))
                row["pass"] = rep.status == OPTIMAL and rep.value == expected
            rows.append(row)
    for family, n, k, expected in SMALL_VALUES:
        if only is not None and only != (n, k):
            continue
        g = johnson(n, k)[0]
        rep = solve_graph(g, opts, family_hint=(family, n, k), kernel=kernel)
        rows.append({"section": "small", "family": family, "n": n, "k": k,
                     "expected": expected, "computed": rep.value,
                     "status": rep.status, "nodes": rep.nodes,
                     "elapsed_s": round(rep.elapsed_s, 3),
                     "pass": rep.status == OPTIMAL and rep.value == expected})
    return rows


def _format_table(rows: list[dict]) -> str:
    header = f"{'family':<8} {'n':>3} {'k':>3} {'computed':>9} {'expected':>9} " \
             f"{'status':<13} {'nodes':>12} {'sec':>8}  result"
    lines = [header, "-" * len(header)]
    section = None
    for row in rows:
        if row["section"] != section:
            section = row["section"]
            if section == "small":
                lines.append("# enumerated small instances")
        computed = "-" if row["computed"] is None else str(row["computed"])
        expected = "-" if row["expected"] is None else str(row["expected"])
        lines.append(f"{row['family']:<8} {row['n']:>3} {row['k']:>3} "
                     f"{computed:>9} {expected:>9} {row['status']:<13} "
                     f"{row['nodes']:>12} {row['elapsed_s']:>8.3f}  "
                     f"{'PASS' if row['pass'] else 'FAIL'}")
    return "\n".join(lines)


def cmd_table1(args, argv: list[str]) -> int:
    only = None
    if args.only:
        try:
            n_str, k_str = args.only.split(",")
            only = (int(n_str), int(k_str))
        except ValueError:
            print(f"error: --only expects 'n,k', got {args.only!r}", file=sys.stderr)
            return 2
    rows = run_table_rows(only, _solve_options(args), kernel=args.kernel)
    if not rows:
        print(f"error: no tabulated instance matches --only {args.only}",
              file=sys.stderr)
        return 2
    all_pass = all(row["pass"] for row in rows)
    if args.json:
        payload = {"rows": rows, "all_pass": all_pass,
                   "manifest": _manifest(args, argv, None)}
        _emit(payload, args)
    else:
        print(_format_table(rows))
        print(f"{sum(r['pass'] for r in rows)}/{len(rows)} rows pass")
    return 0 if all_pass else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eqdim",
        description="Equidistant dimension toolkit: generate Johnson/Kneser "
                    "graphs, verify distance-equalizer sets, compute bounds, "
                    "and solve exactly.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, graph=True):
        if graph:
            p.add_argument("--graph", required=True,
                           help="graph file (JSON or edge list) or family spec "
                                "like 'johnson:7,3'")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for 'random:n,p' specs")
        p.add_argument("--out", help="write JSON here instead of stdout")
        p.add_argument("--json", action="store_true",
                       help="force JSON output (default for most commands)")
        p.add_argument("--pretty", action="store_true",
                       help="add a human-readable summary on stderr")

    p = sub.add_parser("gen", help="generate a graph file from a family spec")
    p.add_argument("spec", help="johnson:n,k | kneser:n,k | path:n | cycle:n | "
                                "star:n | complete:n | random:n,p_percent")
    common(p, graph=False)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="verify a candidate distance-equalizer set")
    common(p)
    p.add_argument("--set", required=True,
                   help="members: subset labels '{1,2},{1,3},{2,3}' or indices '0,1,2'")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", help="compute the equidistant dimension exactly")
    common(p)
    p.add_argument("--time-limit", type=float, default=None, help="seconds")
    p.add_argument("--node-limit", type=int, default=None)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--kernel", choices=("c", "python"), default=None,
                   help="force a search kernel (default: compiled if built)")
    p.add_argument("--brute-force", action="store_true",
                   help="use the total-enumeration oracle instead")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bounds", help="lower/upper bound report with provenance")
    common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("construction",
                       help="verify a named construction: johnson2:n | "
                            "johnson3:n | halved:k | kneser2:n")
    p.add_argument("spec")
    common(p, graph=False)
    p.set_defaults(func=cmd_construction)

    p = sub.add_parser("table1",
                       help="recompute every tabulated value and compare")
    common(p, graph=False)
    p.add_argument("--only", default=None, metavar="N,K",
                   help="restrict to one (n, k) entry")
    p.add_argument("--time-limit", type=float, default=None)
    p.add_argument("--node-limit", type=int, default=None)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--kernel", choices=("c", "python"), default=None)
    p.set_defaults(func=cmd_table1)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, argv)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
