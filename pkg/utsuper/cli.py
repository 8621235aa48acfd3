"""Command line front door, installed as the ``utsuper`` console script.

>>> utsuper decompose --n 3 --q 2 --factors "(1,2):1,(1,2):1"
>>> utsuper count --n 7 --which third --seeds seeds.json --eval 2
>>> utsuper verify --suite lemma34 --n 4 --q 3

Every command prints a JSON document carrying ``"schema": 1`` to stdout,
or to ``--output`` when given.
"""

import argparse
import contextlib
import csv
import fcntl
import io
import json
import logging
import pathlib
from typing import Callable, Dict, Iterator, List, Optional

from pydantic import BaseModel, ValidationError

from utsuper import charoracle, enums, ffgroup, logger, models, polycount, rootsys, suites, superalg, version
from utsuper.polycount import BaseValueTable
from utsuper.rootsys import Root

LOCK_NAME = "utsuper.lock"


def _root_json(root: Root) -> models.RootJSON:
    return models.RootJSON(i=root.i, j=root.j)


def _parse_root(text: str) -> Root:
    try:
        i, j = (int(part) for part in text.strip("() ").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a root as 'i,j', got {text!r}")
    return Root(i, j)


def _read_seeds(path: Optional[pathlib.Path]) -> BaseValueTable:
    if path is None:
        return BaseValueTable()
    document = models.SeedsDocument.model_validate(json.loads(path.read_text()))
    seeds = BaseValueTable.from_document(document)
    logger.CUSTOM_LOGGER.debug("seeds loaded from %s: %s", path, seeds)
    return seeds


def _emit(text: str, output: Optional[pathlib.Path]) -> None:
    if output is None:
        print(text)
        return
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(text + "\n")
    logger.CUSTOM_LOGGER.info("written %s", output)


def _dump(document: BaseModel) -> str:
    return document.model_dump_json(by_alias=True, indent=2)


@contextlib.contextmanager
def cache_lock(directory: pathlib.Path) -> Iterator[pathlib.Path]:
    """Advisory lock making this process the only writer of the cache directory.

    Args:
        directory: Cache directory, created if missing.

    Yields:
        pathlib.Path:
        Path of the lock file.

    Raises:
        UnsupportedConfiguration: If another process holds the lock.
    """
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / LOCK_NAME
    with open(path, "w") as handle:
        try:
            fcntl.flock(handle, fcntl.LOCK_EX | fcntl.LOCK_NB)
        except BlockingIOError:
            raise models.UnsupportedConfiguration(f"cache directory {directory} is locked by another process")
        logger.CUSTOM_LOGGER.debug("acquired %s", path)
        try:
            yield path
        finally:
            fcntl.flock(handle, fcntl.LOCK_UN)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_roots(args: argparse.Namespace) -> int:
    """Root combinatorics of rank n, optionally around one root and one pair."""
    n = args.n
    document = models.RootsDocument(
        n=n,
        mu=rootsys.mu(n),
        positive_roots=[_root_json(root) for root in rootsys.positive_roots(n)],
        basic_sets=rootsys.count_basic_sets(n),
    )
    if args.root is not None:
        alpha = rootsys.check_root(n, args.root)
        parts = rootsys.hook_parts(n, alpha)
        regions: Dict[str, List[models.RootJSON]] = {
            "arm": [_root_json(root) for root in parts.arm],
            "leg": [_root_json(root) for root in parts.leg],
            "hook": [_root_json(root) for root in parts.hook],
        }
        for kind in enums.RegionKind:
            regions[kind.value] = [_root_json(root) for root in rootsys.region_roots(n, alpha, kind)]
        document.root = _root_json(alpha)
        document.regions = regions
        document.graph_auto = _root_json(rootsys.graph_auto(n, alpha))
        if args.beta is not None:
            pair = rootsys.classify_pair(n, alpha, args.beta)
            document.pair = models.PairJSON(
                other=_root_json(rootsys.check_root(n, args.beta)),
                relation=pair.relation.value,
                hook_overlap=[_root_json(root) for root in pair.hook_overlap],
            )
    elif args.beta is not None:
        raise models.UnsupportedConfiguration("--beta needs --root")
    _emit(_dump(document), args.output)
    return enums.ExitCode.ok


def cmd_decompose(args: argparse.Namespace) -> int:
    """Normalize a product of elementary characters into basic characters."""
    factors = superalg.parse_factors(args.factors)
    expr = superalg.expr_from_factors(args.n, args.q, factors)
    total = superalg.expr_total_degree(expr)
    expected = superalg.expected_total(args.n, args.q, factors)
    if total != expected:
        logger.CUSTOM_LOGGER.error("degree not conserved: %s != %s", total, expected)
    stats = None
    if args.stats:
        stats = [
            [row.to_json() for row in superalg.constituent_stats(symbol).rows] for symbol, _ in expr.expr_terms()
        ]
    document = models.ExprDocument(
        n=args.n,
        q=args.q,
        terms=expr.to_json(),
        total_degree=total.to_json(),
        expected_degree=expected.to_json(),
        conserved=total == expected,
        stats=stats,
    )
    logger.CUSTOM_LOGGER.info("%d basic term(s), total degree %s", len(document.terms), total)
    _emit(_dump(document), args.output)
    return enums.ExitCode.ok if document.conserved else enums.ExitCode.check_failure


def cmd_count(args: argparse.Namespace) -> int:
    """Counting polynomial for the top, second or third highest degree."""
    which = enums.Which(args.which)
    seeds = _read_seeds(args.seeds)
    seeded_terms: Dict[str, models.PolyJSON] = {}
    variant = None
    if which is enums.Which.top:
        count = polycount.SeededPoly(polycount.n_top(args.n))
    elif which is enums.Which.second:
        count = polycount.SeededPoly(polycount.n_second(args.n, args.mode, seeds))
    else:
        variant = enums.ThirdVariant(args.variant)
        count = polycount.n_third(args.n, seeds, variant)
        seeded_terms = {f"N[{n},{e}]": value.to_json(args.basis) for (n, e), value in count.terms.items()}
    value = count.evaluate(args.eval, seeds) if args.eval is not None else None
    document = models.CountDocument(
        n=args.n,
        which=which.value,
        variant=variant.value if variant else None,
        polynomial=count.constant.to_json(args.basis),
        seeds=seeded_terms,
        value=value,
    )
    logger.CUSTOM_LOGGER.info("N(%s, n=%d) = %s", which.value, args.n, count)
    _emit(_dump(document), args.output)
    return enums.ExitCode.ok


def _histogram_csv(histogram: Dict[int, int]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["exponent", "count"])
    for exponent, count in sorted(histogram.items()):
        writer.writerow([exponent, count])
    return buffer.getvalue().rstrip("\n")


def cmd_table(args: argparse.Namespace) -> int:
    """Build or load the character table of U_n(q) and print its degree histogram."""
    ffgroup.field_make(args.q)
    group = ffgroup.full_group(args.n, args.q)
    with cache_lock(models.config.cache_dir):
        table = charoracle.irr_table(group, charoracle.TableCache(models.config.cache_dir))
    histogram = charoracle.degree_histogram(table, args.q)
    if not polycount.degree_square_identity(histogram, args.n, args.q):
        logger.CUSTOM_LOGGER.error("degree-square identity fails for U_%d(%d)", args.n, args.q)
        return enums.ExitCode.check_failure
    if args.seeds_out is not None:
        seeds = BaseValueTable.from_histograms({(args.n, args.q): histogram})
        _emit(_dump(seeds.to_document()), args.seeds_out)
    if args.csv:
        _emit(_histogram_csv(histogram), args.output)
    else:
        document = models.HistogramDocument(
            n=args.n,
            q=args.q,
            classes=len(table.classes.sizes),
            histogram={str(exponent): count for exponent, count in sorted(histogram.items())},
        )
        _emit(_dump(document), args.output)
    return enums.ExitCode.ok


def cmd_verify(args: argparse.Namespace) -> int:
    """Run one verification suite and write its report."""
    options = {"seeds": _read_seeds(args.seeds), "variant": args.variant, "seed": args.seed}
    if args.samples is not None:
        options["samples"] = args.samples
    if args.pairs is not None:
        options["pairs"] = args.pairs
    with cache_lock(models.config.cache_dir):
        options["cache"] = charoracle.TableCache(models.config.cache_dir)
        report = suites.run_suite(args.suite, args.n, args.q, **options)
    _emit(_dump(report), args.output)
    if report.failed:
        return enums.ExitCode.check_failure
    if report.skipped and args.strict:
        return enums.ExitCode.cap_exceeded
    return enums.ExitCode.ok


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "roots": cmd_roots,
    "decompose": cmd_decompose,
    "count": cmd_count,
    "table": cmd_table,
    "verify": cmd_verify,
}


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per entry of ``COMMANDS``."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", type=pathlib.Path, default=None, help="Write the JSON document here.")
    common.add_argument("--cache-dir", type=pathlib.Path, default=None, help="Table cache directory.")
    common.add_argument("--strict", action="store_true", help="Exit with 3 when a cap forces a skip.")
    common.add_argument("--quiet", action="store_true", help="Only log warnings and errors.")

    parser = argparse.ArgumentParser(
        prog="utsuper", description="Exact supercharacter computations for unitriangular groups U_n(q)."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {version.version}")
    sub = parser.add_subparsers(dest="command", required=True)

    roots = sub.add_parser("roots", parents=[common], help="Inspect hooks, regions and pair relations.")
    roots.add_argument("--n", type=int, required=True)
    roots.add_argument("--root", type=_parse_root, default=None, help='Root as "i,j".')
    roots.add_argument("--beta", type=_parse_root, default=None, help='Second root as "i,j".')

    decompose = sub.add_parser("decompose", parents=[common], help="Normalize a product of elementary characters.")
    decompose.add_argument("--n", type=int, required=True)
    decompose.add_argument("--q", type=int, required=True)
    decompose.add_argument("--factors", required=True, help='Factor list such as "(1,2):1,(2,3):1".')
    decompose.add_argument("--stats", action="store_true", help="Add constituent statistics per term.")

    count = sub.add_parser("count", parents=[common], help="Emit a counting polynomial.")
    count.add_argument("--n", type=int, required=True)
    count.add_argument("--which", choices=[which.value for which in enums.Which], required=True)
    count.add_argument("--basis", choices=[basis.value for basis in enums.Basis], default=enums.Basis.q.value)
    count.add_argument("--mode", choices=[mode.value for mode in enums.SecondMode], default="closed")
    count.add_argument("--variant", choices=[variant.value for variant in enums.ThirdVariant], default="prose")
    count.add_argument("--seeds", type=pathlib.Path, default=None, help="Seeds document.")
    count.add_argument("--eval", type=int, default=None, help="Evaluate at this q.")

    table = sub.add_parser("table", parents=[common], help="Build or load an oracle character table.")
    table.add_argument("--n", type=int, required=True)
    table.add_argument("--q", type=int, required=True)
    table.add_argument("--csv", action="store_true", help="Print the histogram as CSV.")
    table.add_argument("--seeds-out", type=pathlib.Path, default=None, help="Write the histogram as seeds.")

    verify = sub.add_parser("verify", parents=[common], help="Run a verification suite.")
    verify.add_argument("--suite", choices=[suite.value for suite in enums.Suite], required=True)
    verify.add_argument("--n", type=int, required=True)
    verify.add_argument("--q", type=int, required=True)
    verify.add_argument("--samples", type=int, default=None, help="Randomized instances for lemma34.")
    verify.add_argument("--pairs", type=int, default=None, help="Sampled pairs for mackey7.")
    verify.add_argument("--seed", type=int, default=0, help="Random seed.")
    verify.add_argument("--seeds", type=pathlib.Path, default=None, help="Seeds document.")
    verify.add_argument("--variant", choices=[variant.value for variant in enums.ThirdVariant], default="prose")
    return parser


def main(argv: Optional[List[str]] = None, custom_logger: logging.Logger = None) -> int:
    """Entry point of the ``utsuper`` console script.

    Args:
        argv: Arguments, defaults to ``sys.argv[1:]``.
        custom_logger: Custom logger instance, defaults to the package logger.

    Returns:
        int:
        Exit code, one of ``enums.ExitCode``.
    """
    if custom_logger:
        assert isinstance(custom_logger, logging.Logger), "Custom logger must be an instance of logging.Logger"
        logger.CUSTOM_LOGGER = custom_logger
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return int(exit_.code or 0)
    if args.quiet:
        logger.CUSTOM_LOGGER.setLevel(logging.WARNING)
    models.config = models.env_loader(cache_dir=args.cache_dir)
    try:
        return int(COMMANDS[args.command](args))
    except models.CapExceeded as error:
        logger.CUSTOM_LOGGER.error("%s", error)
        return enums.ExitCode.cap_exceeded if args.strict else enums.ExitCode.usage
    except (models.UTSuperError, ValidationError, ValueError, OSError) as error:
        logger.CUSTOM_LOGGER.error("%s: %s", type(error).__name__, error)
        return enums.ExitCode.usage
