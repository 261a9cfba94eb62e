"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data/format error, 3 internal
invariant violation (simulation exceeded its convergence cap).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path


from . import __version__
from .convergence import estimate_avg_convergence
from .dynamics import NONPROGRESSIVE, PROGRESSIVE, simulate, strict_majority_thresholds
from .exceptions import (
    ConvergenceError,
    DisconnectedGraphError,
    GraphFormatError,
    NoPerfectTargetSetError,
    SizeLimitError,
)
from .graph import VertexMapping, format_edge_list, giant_component, read_edge_list
from .hardness import build_hardness_instance, format_labels
from .powerlaw import generate, lower_bound_fraction, powerlaw_weights
from .selection import (
    approximation_ratio,
    brute_force_min_pts,
    general_bounds,
    greedy_npts,
    prefix_pts,
    rank_centrality,
    rank_high_degree,
    rank_random,
)
from .validation import check_state

log = logging.getLogger("majority_pts")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 1, 2, 3
METHODS = ("greedy", "high-degree", "central", "random")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- inputs -----------------------------------------------------------------

def parse_generate(text):
    """Parse ``"n=2000,gamma=2.0"`` into ``(n, gamma)``."""
    fields = {}
    for part in text.split(","):
        key, sep, value = part.partition("=")
        if not sep:
            raise UsageError(f"bad --generate field {part!r}; expected key=value")
        fields[key.strip()] = value.strip()
    unknown = set(fields) - {"n", "gamma"}
    if unknown or not {"n", "gamma"} <= set(fields):
        raise UsageError("--generate needs exactly n=<int>,gamma=<float>")
    try:
        return int(fields["n"]), float(fields["gamma"])
    except ValueError:
        raise UsageError(f"bad --generate values in {text!r}") from None


class GraphInput:
    """A loaded graph with its display name, id mapping and gamma metadata."""

    def __init__(self, name, graph, mapping, gamma=None):
        self.name = name
        self.graph = graph
        self.mapping = mapping
        self.gamma = gamma

    def giant(self):
        g, inner = giant_component(self.graph)
        return GraphInput(self.name, g, inner.compose(self.mapping), self.gamma)


def load_inputs(args):
    inputs = []
    gammas = list(getattr(args, "gamma_meta", None) or [])
    for i, path in enumerate(args.input or []):
        g, mapping = read_edge_list(path)
        gamma = gammas[i] if i < len(gammas) else None
        inputs.append(GraphInput(Path(path).stem, g, mapping, gamma))
    for spec_text in args.generate or []:
        n, gamma = parse_generate(spec_text)
        g = generate(powerlaw_weights(n, gamma), args.seed)
        inputs.append(GraphInput(f"powerlaw(n={n},gamma={gamma},seed={args.seed})", g,
                                 VertexMapping.identity(g.n), gamma))
    if not inputs:
        raise UsageError("no graph given; use --input PATH or --generate n=..,gamma=..")
    if getattr(args, "giant", False):
        inputs = [gi.giant() for gi in inputs]
    return inputs


def single_input(args):
    inputs = load_inputs(args)
    if len(inputs) != 1:
        raise UsageError("this command takes exactly one graph")
    return inputs[0]


# -- output -----------------------------------------------------------------

def _cell(v):
    if isinstance(v, (list, tuple)):
        return " ".join(str(x) for x in v)
    if v is None:
        return ""
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return v


def render(rows, fmt, columns=None):
    if fmt == "json":
        return json.dumps(rows if len(rows) != 1 else rows[0], indent=2) + "\n"
    columns = columns or list(rows[0].keys())
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(r.get(c)) for c in columns])
    return buf.getvalue()


def emit(text, out):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# -- commands -----------------------------------------------------------------

def _method_cost(method, g, t, seed, cap):
    if method == "greedy":
        return greedy_npts(g, t)
    if method == "high-degree":
        order = rank_high_degree(g)
    elif method == "central":
        order = rank_centrality(g)
    else:
        order = rank_random(g, seed)
    return prefix_pts(g, t, order, method=method, cap=cap)


def cmd_compare(args):
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    bad = [m for m in methods if m not in METHODS]
    if not methods or bad:
        raise UsageError(f"--methods must be a non-empty subset of {','.join(METHODS)}")
    if "random" in methods and args.seed is None:
        raise UsageError("the random baseline needs --seed")
    rows = []
    for gi in load_inputs(args):
        gi = gi.giant()
        g = gi.graph
        t = strict_majority_thresholds(g)
        row = {"graph": gi.name, "nodes": g.n, "gamma": gi.gamma}
        for m in methods:
            log.info("%s: running %s", gi.name, m)
            rep = _method_cost(m, g, t, args.seed, args.cap)
            row[m] = rep.cost
        rows.append(row)
    return render(rows, args.format, ["graph", "nodes", "gamma", *methods])


def cmd_simulate(args):
    gi = single_input(args)
    if args.state is None:
        raise UsageError("simulate needs --state BITSTRING")
    s0 = check_state(args.state, gi.graph.n)
    t = strict_majority_thresholds(gi.graph)
    traj = simulate(gi.graph, t, s0, args.mode, args.cap, record=args.history)
    bits = lambda s: "".join(map(str, s.tolist()))
    row = {"graph": gi.name, "n": gi.graph.n, "mode": args.mode, "T": traj.T,
           "cycle_len": traj.cycle_len, "reached_all_ones": traj.reached_all_ones,
           "final": bits(traj.final)}
    if args.history:
        row["states"] = [bits(s) for s in traj.states]
    return render([row], args.format)


def _report_row(gi, rep):
    doc = rep.to_dict(gi.mapping)
    row = {"graph": gi.name, "n": gi.graph.n, **doc}
    if "bounds" in row:
        b = row.pop("bounds")
        row["lower"], row["upper"] = b["lower"], b["upper"]
    return row


def cmd_greedy(args):
    gi = single_input(args)
    return render([_report_row(gi, greedy_npts(gi.graph))], args.format)


def cmd_brute_force(args):
    gi = single_input(args)
    rep = brute_force_min_pts(gi.graph, limit_n=args.limit_n, cap=args.cap)
    return render([_report_row(gi, rep)], args.format)


def cmd_bounds(args):
    gi = single_input(args)
    g = gi.graph
    lower, upper = general_bounds(g)
    row = {"graph": gi.name, "n": g.n, "m": g.m, "max_degree": g.max_degree,
           "min_degree": g.min_degree, "lower": lower, "upper": upper,
           "approximation_ratio": approximation_ratio(g)}
    return render([row], args.format)


def cmd_powerlaw_bounds(args):
    if args.gamma_step <= 0 or args.gamma_max < args.gamma_min:
        raise UsageError("need gamma-step > 0 and gamma-max >= gamma-min")
    count = int(round((args.gamma_max - args.gamma_min) / args.gamma_step)) + 1
    rows = []
    for i in range(count):
        gamma = round(args.gamma_min + i * args.gamma_step, 10)
        try:
            b = lower_bound_fraction(gamma)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        rows.append(b.to_dict())
    return render(rows, args.format,
                  ["gamma", "lower_fraction", "upper_fraction", "k", "p", "truncated", "diverged"])


def cmd_generate(args):
    if args.seed is None:
        raise UsageError("generate needs --seed")
    spec = powerlaw_weights(args.n, args.gamma)
    g = generate(spec, args.seed)
    if args.spec_out:
        Path(args.spec_out).write_text(json.dumps(spec.to_dict(), indent=2) + "\n", encoding="utf-8")
    return format_edge_list(g)


def cmd_gadget(args):
    gi = single_input(args)
    inst = build_hardness_instance(gi.graph)
    if args.labels:
        Path(args.labels).write_text(format_labels(inst), encoding="utf-8")
    return format_edge_list(inst.h)


def cmd_avg_convergence(args):
    if args.seed is None:
        raise UsageError("avg-convergence needs --seed")
    gi = single_input(args)
    est = estimate_avg_convergence(gi.graph, m=args.samples, seed=args.seed, cap=args.cap)
    row = {"graph": gi.name, "n": gi.graph.n, "m": est.samples, "mean_ct": est.mean_ct,
           "guaranteed_epsilon": est.epsilon, "exhaustive": est.exhaustive}
    return render([row], args.format)


# -- parser -------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", action="append", metavar="PATH",
                        help="edge-list file ('u v' per line, '#' comments)")
    common.add_argument("--generate", action="append", metavar="SPEC",
                        help='random power-law graph, e.g. "n=2000,gamma=2.0"')
    common.add_argument("--seed", type=int)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", metavar="PATH", help="output file (default stdout)")
    common.add_argument("--cap", type=int, help="simulation step cap override")
    common.add_argument("--giant", action="store_true",
                        help="restrict to the giant component first")

    p = _Parser(prog="majority-pts", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compare", parents=[common], help="greedy vs. ranking heuristics")
    c.add_argument("--methods", default=",".join(METHODS))
    c.add_argument("--gamma-meta", action="append", type=float, metavar="GAMMA",
                   help="gamma column value for the matching --input (repeatable)")
    c.set_defaults(func=cmd_compare)

    c = sub.add_parser("simulate", parents=[common], help="run the dynamics from a state")
    c.add_argument("--state", metavar="BITSTRING")
    c.add_argument("--mode", choices=(NONPROGRESSIVE, PROGRESSIVE), default=NONPROGRESSIVE)
    c.add_argument("--history", action="store_true", help="include every state")
    c.set_defaults(func=cmd_simulate)

    c = sub.add_parser("greedy", parents=[common], help="greedy perfect target set")
    c.set_defaults(func=cmd_greedy)

    c = sub.add_parser("bounds", parents=[common], help="general lower/upper bounds")
    c.set_defaults(func=cmd_bounds)

    c = sub.add_parser("brute-force", parents=[common], help="exact minimum PTS")
    c.add_argument("--limit-n", type=int, default=16)
    c.set_defaults(func=cmd_brute_force)

    c = sub.add_parser("powerlaw-bounds", parents=[common], help="bound fractions vs gamma")
    c.add_argument("--gamma-min", type=float, default=2.0)
    c.add_argument("--gamma-max", type=float, default=2.8)
    c.add_argument("--gamma-step", type=float, default=0.1)
    c.set_defaults(func=cmd_powerlaw_bounds)

    c = sub.add_parser("generate", parents=[common], help="sample a random power-law graph")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--gamma", type=float, required=True)
    c.add_argument("--spec-out", metavar="PATH", help="write the weight spec as JSON")
    c.set_defaults(func=cmd_generate)

    c = sub.add_parser("gadget", parents=[common], help="hardness reduction graph")
    c.add_argument("--labels", metavar="PATH", help="write 'id label group' sidecar")
    c.set_defaults(func=cmd_gadget)

    c = sub.add_parser("avg-convergence", parents=[common], help="mean convergence time")
    c.add_argument("--samples", type=int, default=1000)
    c.set_defaults(func=cmd_avg_convergence)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        text = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (GraphFormatError, NoPerfectTargetSetError, DisconnectedGraphError,
            SizeLimitError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    emit(text, args.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
