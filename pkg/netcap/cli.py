"""Command-line interface of netcap.

Exit codes: 0 success, 1 violations, limit breach, counterexample or failed
induction, 2 parse error or shape/problem mismatch, 3 search exhausted,
4 search timed out.
"""
import argparse
import dataclasses
import logging
import sys

from netcap import __version__
from netcap.bounds import BOUND_KINDS, full_report
from netcap.codes import (
    dump_code,
    global_cut_order,
    induce_function,
    load_code,
    verify_code,
)
from netcap.cuts import cut_context, enumerate_cuts, enumerate_strong_partitions
from netcap.equivalence import PartitionContext, class_diagnostics
from netcap.exceptions import (
    CycleError,
    InvalidLinearSpecError,
    LimitExceededError,
    MultipleValidationError,
    NetcapError,
    NetworkParseError,
    NonPrimeFieldError,
    ProblemMismatchError,
    ShapeMismatchError,
    UnknownIdentifierError,
    ValidationError,
)
from netcap.functions import check_problem, dump_function, load_function
from netcap.limits import DEFAULT_LIMITS
from netcap.network import load_network
from netcap.search import search_code
from netcap.utils.io import dump_json
from netcap.validator import validate_network

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_EXHAUSTED = 3
EXIT_TIMEOUT = 4

INPUT_ERRORS = (
    CycleError,
    InvalidLinearSpecError,
    NetworkParseError,
    NonPrimeFieldError,
    ProblemMismatchError,
    ShapeMismatchError,
    UnknownIdentifierError,
    ValidationError,
    MultipleValidationError,
)


def _limits(args):
    overrides = {
        "max_table_entries": args.limit_table,
        "max_cut_edges": args.limit_edges,
        "max_search_space": args.limit_space,
    }
    return dataclasses.replace(
        DEFAULT_LIMITS,
        **{name: value for name, value in overrides.items() if value is not None},
    )


def _edge_list(text):
    return tuple(edge_id.strip() for edge_id in text.split(",") if edge_id.strip())


def _int_list(text):
    return tuple(int(value) for value in _edge_list(text))


def _load_problem(args, limits):
    net = load_network(args.network)
    validate_network(net).raise_for_violations()
    f = load_function(args.function, limits=limits)
    check_problem(f, net)
    return net, f


def _format_float(value):
    return "inf" if value == float("inf") else f"{value:.12g}"


def _sources(indices):
    return "{" + ",".join(str(i) for i in sorted(indices)) + "}"


def cmd_validate(args, limits):
    report = validate_network(load_network(args.network))
    if args.json:
        print(dump_json({"ok": report.ok, "violations": report.messages()}), end="")
    elif report.ok:
        print("ok")
    else:
        for message in report.messages():
            print(message)
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_bounds(args, limits):
    net, f = _load_problem(args, limits)
    kinds = BOUND_KINDS if args.bound == "all" else (args.bound,)
    report = full_report(net, f, kinds=kinds, max_size=args.max_cut_size, limits=limits)
    if args.json:
        print(dump_json(report.to_dict()), end="")
        return EXIT_OK
    for kind in BOUND_KINDS:
        bound = report.reports.get(kind)
        if bound is None:
            continue
        line = f"{kind}: {_format_float(bound.value)}"
        if bound.best is not None:
            size, count, q = bound.witness
            line += f" (|C|={size}, n={count}, q={q}) cut {','.join(bound.argmin)}"
            if kind == "improved":
                blocks = "|".join(",".join(block) for block in bound.best.partition)
                line += f" partition {blocks} aJ* {list(bound.best.a_J_star)}"
        print(line)
    if len(report.reports) > 1:
        print(f"ordered: {report.ordered}")
    return EXIT_OK


def cmd_cuts(args, limits):
    net = load_network(args.network)
    validate_network(net).raise_for_violations()
    rows = []
    for ctx in enumerate_cuts(net, max_size=args.max_cut_size, limits=limits):
        rows.append(
            {
                "cut": list(ctx.cut),
                "I": sorted(ctx.I),
                "K": sorted(ctx.K),
                "J": sorted(ctx.J),
                "is_global": ctx.is_global,
                "strong_partition_count": len(
                    enumerate_strong_partitions(net, ctx, limits=limits)
                ),
            }
        )
    if args.json:
        print(dump_json(rows), end="")
        return EXIT_OK
    for row in rows:
        print(
            f"{','.join(row['cut'])}  I={_sources(row['I'])} K={_sources(row['K'])} "
            f"J={_sources(row['J'])} global={row['is_global']} "
            f"strong_partition_count={row['strong_partition_count']}"
        )
    return EXIT_OK


def cmd_verify(args, limits):
    net, f = _load_problem(args, limits)
    code = load_code(args.code, limits=limits)
    verdict = verify_code(code, net, f, limits=limits)
    if args.json:
        document = {"ok": verdict.ok, "checked": verdict.checked}
        if verdict.counterexample is not None:
            document["counterexample"] = verdict.counterexample.to_dict()
        print(dump_json(document), end="")
    elif verdict.ok:
        print(f"ok ({verdict.checked} inputs)")
    else:
        counterexample = verdict.counterexample
        print("counterexample")
        print(f"  inputs: {counterexample.inputs.tolist()}")
        print(f"  expected: {list(counterexample.expected)}")
        print(f"  decoded: {list(counterexample.decoded)}")
        if counterexample.other is not None:
            print(f"  indistinguishable from: {counterexample.other.tolist()}")
    return EXIT_OK if verdict.ok else EXIT_FAILED


def cmd_search(args, limits):
    net, f = _load_problem(args, limits)
    result = search_code(
        net,
        f,
        args.k,
        args.n,
        timeout=args.timeout_seconds,
        max_candidates=args.max_candidates,
        prune=not args.no_prune,
        limits=limits,
    )
    if result.found:
        print(dump_code(result.code), end="")
        return EXIT_OK
    if args.json:
        print(
            dump_json(
                {
                    "status": result.status,
                    "candidates": result.candidates,
                    "nodes": result.nodes,
                    "reason": result.reason,
                }
            ),
            end="",
        )
    else:
        print(result.status)
    return EXIT_EXHAUSTED if result.status == "exhausted" else EXIT_TIMEOUT


def cmd_induce(args, limits):
    net, f = _load_problem(args, limits)
    code = load_code(args.code, limits=limits)
    cut = global_cut_order(net, _edge_list(args.cut))
    induced = induce_function(code, net, f, cut, edge_order=cut, limits=limits)
    print(dump_function(induced), end="")
    return EXIT_OK


def cmd_classes(args, limits):
    net, f = _load_problem(args, limits)
    ctx = cut_context(net, _edge_list(args.cut))
    if ctx is None:
        raise UnknownIdentifierError(f"{args.cut} separates no source")
    partitions = enumerate_strong_partitions(net, ctx, limits=limits)
    if not 0 <= args.partition < len(partitions):
        raise UnknownIdentifierError(
            f"partition {args.partition} out of range; the cut has "
            f"{len(partitions)} strong partitions"
        )
    sp = partitions[args.partition]
    context = PartitionContext.from_strong_partition(ctx, sp)
    a_L = _int_list(args.a_L) if args.a_L is not None else None
    a_J = _int_list(args.a_J) if args.a_J is not None else None
    document = class_diagnostics(f, context, a_L, a_J)
    document["cut"] = list(ctx.cut)
    document["partition"] = [list(block) for block in sp.blocks]
    print(dump_json(document), end="")
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON document")
    common.add_argument("-v", "--verbose", action="count", default=0)
    common.add_argument("--limit-table", type=int, help="largest dense table")
    common.add_argument("--limit-space", type=int, help="largest search space")
    common.add_argument("--limit-edges", type=int, help="largest enumerable edge count")

    parser = argparse.ArgumentParser(
        prog="netcap",
        description="Upper bounds and network codes for network function computation.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subparsers = parser.add_subparsers(dest="command", required=True)

    p_validate = subparsers.add_parser(
        "validate", parents=[common], help="check the structure of a network"
    )
    p_validate.add_argument("network")
    p_validate.set_defaults(handler=cmd_validate)

    p_bounds = subparsers.add_parser(
        "bounds", parents=[common], help="evaluate the cut-set upper bounds"
    )
    p_bounds.add_argument("network")
    p_bounds.add_argument("function")
    p_bounds.add_argument("--bound", choices=BOUND_KINDS + ("all",), default="all")
    p_bounds.add_argument("--max-cut-size", type=int)
    p_bounds.set_defaults(handler=cmd_bounds)

    p_cuts = subparsers.add_parser("cuts", parents=[common], help="list every cut set")
    p_cuts.add_argument("network")
    p_cuts.add_argument("--max-cut-size", type=int)
    p_cuts.set_defaults(handler=cmd_cuts)

    p_verify = subparsers.add_parser(
        "verify", parents=[common], help="check a code on every input"
    )
    p_verify.add_argument("network")
    p_verify.add_argument("function")
    p_verify.add_argument("code")
    p_verify.set_defaults(handler=cmd_verify)

    p_search = subparsers.add_parser(
        "search", parents=[common], help="search for a (k, n) code"
    )
    p_search.add_argument("network")
    p_search.add_argument("function")
    p_search.add_argument("--k", type=int, required=True)
    p_search.add_argument("--n", type=int, required=True)
    p_search.add_argument("--timeout-seconds", type=float)
    p_search.add_argument("--max-candidates", type=int)
    p_search.add_argument("--no-prune", action="store_true")
    p_search.set_defaults(handler=cmd_search)

    p_induce = subparsers.add_parser(
        "induce", parents=[common], help="the function a code defines on a global cut"
    )
    p_induce.add_argument("network")
    p_induce.add_argument("function")
    p_induce.add_argument("code")
    p_induce.add_argument("--cut", required=True, help="comma separated edge ids")
    p_induce.set_defaults(handler=cmd_induce)

    p_classes = subparsers.add_parser(
        "classes", parents=[common], help="dump equivalence classes of a cut"
    )
    p_classes.add_argument("network")
    p_classes.add_argument("function")
    p_classes.add_argument("--cut", required=True, help="comma separated edge ids")
    p_classes.add_argument("--partition", type=int, default=0)
    p_classes.add_argument("--a-L", dest="a_L", help="comma separated residual values")
    p_classes.add_argument("--a-J", dest="a_J", help="comma separated J values")
    p_classes.set_defaults(handler=cmd_classes)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.basicConfig(
            level=logging.DEBUG if args.verbose > 1 else logging.INFO,
            format="%(name)s: %(message)s",
        )
    try:
        return args.handler(args, _limits(args))
    except LimitExceededError as ex:
        print(f"netcap: {ex}", file=sys.stderr)
        return EXIT_FAILED
    except INPUT_ERRORS as ex:
        print(f"netcap: {ex}", file=sys.stderr)
        return EXIT_INPUT
    except NetcapError as ex:
        print(f"netcap: {ex}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
