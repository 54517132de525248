import argparse
import logging
import sys
from typing import Callable, Dict, Iterable, List, Optional

from chernwall.algebra import (
    AmbientMismatchError,
    DegreeMismatchError,
    ParseError,
    PresentationError,
    bundled_presentation,
    load_presentation,
)
from chernwall.chern import RankShapeError
from chernwall.cohomology import DEFAULT_TRUNCATION, RING_NAMES, NotAUnitError, load_rings
from chernwall.options import ConfigError, RunOptions
from chernwall.report import REPORT_VERSION, Report, StageRecord, render, report_from_certificates
from chernwall.stability import (
    ChainBundle,
    PatternError,
    WallError,
    destab_triples,
    dims_table,
    enumerate_destab_patterns,
    family_label,
    is_regular,
    lambda_oracle,
    lambda_set,
    reverse_transfer,
    to_rational,
    transfer,
    transfers_agree,
    type_catalog,
)
from chernwall.vanish import Pipeline

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2

VERIFY_TARGETS = ("c7", "c8", "stages", "all")


def _options(args: argparse.Namespace) -> RunOptions:
    return RunOptions(
        truncation=args.trunc,
        presentation_dir=args.presentation_dir,
        output_format=args.format,
        output_path=args.out,
        timings=not args.no_timings,
    )


def _joined(values: Iterable[object]) -> str:
    return ", ".join(str(v) for v in values)


def cmd_verify(args: argparse.Namespace, options: RunOptions, command: str) -> Report:
    rings = load_rings(options.presentation_dir)
    pipeline = Pipeline(rings, truncation=options.truncation, timings=options.timings)
    if args.target == "c7":
        certificates = [pipeline.verify_c7()]
    elif args.target == "c8":
        certificates = [pipeline.verify_c8()]
    elif args.target == "stages":
        certificates = pipeline.verify_stages()
    else:
        certificates = pipeline.verify_all()
    return report_from_certificates(command, certificates)


def cmd_ring_nf(args: argparse.Namespace, options: RunOptions, command: str) -> Report:
    if args.presentation in RING_NAMES:
        presentation = bundled_presentation(args.presentation)
    else:
        presentation = load_presentation(args.presentation)
    nf = presentation.normal_form(args.poly)
    return Report(
        version=REPORT_VERSION,
        command=command,
        summary={"presentation": presentation.name, "input": args.poly, "normal_form": str(nf)},
    )


def cmd_walls(args: argparse.Namespace, options: RunOptions, command: str) -> Report:
    walls = lambda_set(args.rank, args.chi)
    oracle = lambda_oracle(args.rank, args.chi)
    claimed = _joined(w.alpha for w in walls)
    computed = _joined(oracle)
    rows = tuple(
        {"alpha": str(w.alpha), "r0": str(w.r0), "r_dag": str(w.r_dag), "chi0": str(w.chi0)}
        for w in walls
    )
    check = StageRecord(
        name="oracle", claimed=claimed, computed=computed, match=claimed == computed
    )
    return Report(
        version=REPORT_VERSION,
        command=command,
        stages=(check,),
        summary={"rank": str(args.rank), "chi": str(args.chi), "walls": claimed},
        rows=rows,
    )


def cmd_destab(args: argparse.Namespace, options: RunOptions, command: str) -> Report:
    wall = to_rational(args.wall)
    triples = destab_triples(args.rank, args.chi, wall)
    rows = tuple(
        {
            "r0": str(t.r0),
            "r_dag": str(t.r_dag),
            "chi": str(t.chi),
            "family": family_label(t.family),
        }
        for t in triples
    )
    return Report(
        version=REPORT_VERSION,
        command=command,
        summary={"wall": str(wall), "solutions": _joined(triples)},
        rows=rows,
    )


def cmd_transfer(args: argparse.Namespace, options: RunOptions, command: str) -> Report:
    cb = ChainBundle.parse(args.chain)
    forward = transfer(cb, args.rank)
    backward = reverse_transfer(cb, args.rank)
    rows = tuple({"node": f"q{i}", "W": str(d)} for i, d in enumerate(forward.dims))
    return Report(
        version=REPORT_VERSION,
        command=command,
        summary={
            "chain": str(cb),
            "t_forward": str(forward.t),
            "t_backward": str(backward.t),
            "degree": str(cb.degree),
            "regular": str(is_regular(cb, args.rank)).lower(),
            "quotients_agree": str(transfers_agree(cb, args.rank)).lower(),
        },
        rows=rows,
    )


def cmd_patterns(args: argparse.Namespace, options: RunOptions, command: str) -> Report:
    patterns = enumerate_destab_patterns(args.n, args.marked)
    rows = tuple(
        {
            "pattern": p.name,
            "node_ranks": _joined(p.node_ranks),
            "ones_used": _joined(p.ones_used),
            "figure": p.text(),
        }
        for p in patterns
    )
    return Report(
        version=REPORT_VERSION,
        command=command,
        summary={"n": str(args.n), "marked": f"q{args.marked}", "count": str(len(patterns))},
        rows=rows,
    )


def cmd_catalog(args: argparse.Namespace, options: RunOptions, command: str) -> Report:
    catalog = type_catalog(args.family)
    rows = tuple(
        {
            "type": e.name,
            "reflection_of": e.reflection_of or "-",
            "identified_with": e.identified_with or "-",
        }
        for e in catalog.entries
    )
    summary = {f"count.{k}": str(v) for k, v in catalog.counts.items()}
    summary["total"] = str(len(catalog.entries))
    summary["distinct"] = str(catalog.distinct)
    for pair, shared in catalog.intersections.items():
        summary["meet." + "".join(sorted(pair))] = shared or "empty"
    return Report(version=REPORT_VERSION, command=command, summary=summary, rows=rows)


def cmd_dims(args: argparse.Namespace, options: RunOptions, command: str) -> Report:
    table = dims_table(args.genus)
    stages = tuple(
        StageRecord(name=i.name, claimed=str(i.lhs), computed=str(i.rhs), match=i.holds)
        for i in table.identities
    )
    return Report(
        version=REPORT_VERSION,
        command=command,
        stages=stages,
        summary={k: str(v) for k, v in table.values.items()},
    )


Handler = Callable[[argparse.Namespace, RunOptions, str], Report]

HANDLERS: Dict[str, Handler] = {
    "verify": cmd_verify,
    "ring-nf": cmd_ring_nf,
    "walls": cmd_walls,
    "destab": cmd_destab,
    "transfer": cmd_transfer,
    "patterns": cmd_patterns,
    "catalog": cmd_catalog,
    "dims": cmd_dims,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--out", default=None, help="write the report to this file")
    common.add_argument("--trunc", type=int, default=DEFAULT_TRUNCATION, help="even working degree")
    common.add_argument(
        "--presentation-dir",
        default=None,
        help="directory with b.ring, btilde.ring and s1.ring replacing the bundled ones",
    )
    common.add_argument("--no-timings", action="store_true", help="omit elapsed times")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(
        prog="chernwall",
        description="Chern class vanishing certificates and wall-crossing combinatorics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", parents=[common], help="recompute and check the displays")
    verify.add_argument("target", choices=VERIFY_TARGETS)

    ring_nf = sub.add_parser("ring-nf", parents=[common], help="normal form in a presentation")
    ring_nf.add_argument(
        "--presentation", required=True, help=f"a file or one of {', '.join(RING_NAMES)}"
    )
    ring_nf.add_argument("poly")

    walls = sub.add_parser("walls", parents=[common], help="critical values of alpha")
    walls.add_argument("--rank", type=int, required=True)
    walls.add_argument("--chi", type=int, required=True)

    destab = sub.add_parser("destab", parents=[common], help="destabilizing invariants on a wall")
    destab.add_argument("--rank", type=int, required=True)
    destab.add_argument("--chi", type=int, required=True)
    destab.add_argument("--wall", required=True, help="a rational such as 1/3")

    chain = sub.add_parser("transfer", parents=[common], help="transfer along a chain")
    chain.add_argument("--rank", type=int, required=True)
    chain.add_argument("--chain", required=True, help='splitting such as "0,0,1 | 0,1,1"')

    patterns = sub.add_parser("patterns", parents=[common], help="destabilizing subsheaf patterns")
    patterns.add_argument("--n", type=int, required=True)
    patterns.add_argument("--marked", type=int, required=True)

    catalog = sub.add_parser("catalog", parents=[common], help="types in a flip locus")
    catalog.add_argument("--family", choices=("sigma_plus", "sigma_minus"), required=True)

    dims = sub.add_parser("dims", parents=[common], help="dimensions of the flip loci")
    dims.add_argument("--genus", type=int, required=True)

    return parser


def _configure_logging(verbosity: int) -> None:
    if verbosity <= 0:
        return
    level = logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    command = " ".join(["chernwall", *argv])

    try:
        options = _options(args)
        report = HANDLERS[args.command](args, options, command)
    except (
        ConfigError,
        ParseError,
        PresentationError,
        AmbientMismatchError,
        DegreeMismatchError,
        NotAUnitError,
        RankShapeError,
        WallError,
        PatternError,
        ValueError,
        TypeError,
    ) as error:
        print(f"chernwall: error: {error}", file=sys.stderr)
        return EXIT_USAGE

    output = render(report, options.output_format)
    path = options.output_path
    if path is None:
        sys.stdout.write(output)
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(output, encoding="utf-8")
        logger.info("report written to %s", path)

    if not report.ok:
        failed = [s.name for s in report.stages if not s.match]
        print(f"chernwall: failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
