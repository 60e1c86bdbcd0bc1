"""Command-line interface."""

import argparse
import asyncio
import logging
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import TextIO

from mypy_extensions import DefaultNamedArg
from sympy import primerange

from .config import load_settings, parse_sweep
from .decmatrix import (
    DecompositionMatrix,
    decomposition_case,
    decomposition_case_names,
    symmetric_group_submatrix,
)
from .exceptions import DomainError, Error
from .gradedz import CoefficientSpec, change_coefficients
from .gysin import (
    EulerAction,
    complement_cohomology,
    complement_cohomology_over,
    parse_complement,
)
from .kostka import char0_ic_stalk_poly, kostka_foulkes
from .partitions import (
    Partition,
    closure_strata,
    conjugate,
    n_stat,
    orbit_dim,
    parse_partition,
)
from .render import OutputFormat, Report, groups_report, stalk_report, write
from .spaces import SpaceDescriptor, cohomology, parse_space
from .stalkcalc import CaseId, CaseKind, Perversity, ic_stalk_table

_LOGGER = logging.getLogger("nilstalk")

PROG = "nilstalk"

SweepTaskFn = Callable[[int, DefaultNamedArg(int | None, "n")], Report]


def _argument_type(parse: Callable[[str], object]) -> Callable[[str], object]:
    def convert(text: str) -> object:
        try:
            return parse(text)
        except DomainError as ex:
            raise argparse.ArgumentTypeError(str(ex)) from ex

    convert.__name__ = parse.__name__
    return convert


def _space_syntax(text: str) -> str:
    # Only the shape is checked here; whether the bundle exists is decided by _cohom.
    name, _, rest = text.strip().partition(":")
    if name == "complement-cotangent":
        parse_space(rest)
    elif name == "complement-line":
        try:
            values = [int(a) for a in rest.split(",")]
        except ValueError as ex:
            raise DomainError(f"Invalid line bundle: {text!r}") from ex
        if len(values) != 2:
            raise DomainError(f"Invalid line bundle: {text!r}")
    else:
        parse_space(text)
    return text.strip()


def _space_or_complement(text: str) -> SpaceDescriptor | EulerAction:
    if text.startswith("complement-"):
        return parse_complement(text)
    return parse_space(text)


def _orbits(args: argparse.Namespace) -> Report:
    top = args.closure or Partition.of(args.n)
    if args.closure is not None and args.n is not None and top.size != args.n:
        raise DomainError(f"{top} is not a partition of {args.n}")
    rows = [
        [str(lam), str(orbit_dim(lam)), str(conjugate(lam)), str(n_stat(lam))]
        for lam in closure_strata(top)
    ]
    return Report(
        meta={"n": str(top.size), "closure": str(top)},
        columns=["orbit", "dim", "conjugate", "n"],
        rows=rows,
        document={
            "n": top.size,
            "closure": str(top),
            "orbits": [
                {"label": r[0], "dim": int(r[1]), "conjugate": r[2], "n": int(r[3])}
                for r in rows
            ],
        },
    )


def _stalks_report(case: CaseId, k: CoefficientSpec, perversity: Perversity) -> Report:
    table = ic_stalk_table(case, k, perversity)
    meta = {
        "case": str(case),
        "coefficients": str(k),
        "perversity": table.perversity.value,
    }
    return stalk_report(table, meta)


def _stalks(args: argparse.Namespace) -> Report:
    case = CaseId.parse(args.case, args.n)
    return _stalks_report(case, args.coeff, Perversity(args.perversity))


def _cohom(args: argparse.Namespace) -> Report:
    k: CoefficientSpec = args.coeff
    label = args.space
    space = _space_or_complement(label)
    if isinstance(space, EulerAction):
        if k.is_field:
            groups = complement_cohomology_over(space, k)
        else:
            groups = complement_cohomology(space)
    else:
        groups = cohomology(space)
        if k.is_field:
            groups = change_coefficients(groups, k)
    return groups_report(groups, {"space": label, "coefficients": str(k)})


def _polynomial_report(
    name: str, lam: Partition, mu: Partition, poly_text: str, poly_json: dict[str, int]
) -> Report:
    return Report(
        meta={},
        columns=["lambda", "mu", name],
        rows=[[str(lam), str(mu), poly_text]],
        document={
            "lambda": str(lam),
            "mu": str(mu),
            "polynomial": poly_json,
            "text": poly_text,
        },
    )


def _kostka(args: argparse.Namespace) -> Report:
    poly = kostka_foulkes(args.lam, args.mu)
    return _polynomial_report("K(q)", args.lam, args.mu, poly.render(), poly.to_json())


def _ic0(args: argparse.Namespace) -> Report:
    poly = char0_ic_stalk_poly(args.lam, args.mu)
    return _polynomial_report("IC(q)", args.lam, args.mu, poly.render(), poly.to_json())


def _matrix_report(d: DecompositionMatrix, meta: dict[str, str]) -> Report:
    return Report(
        meta=meta,
        columns=[""] + d.col_labels(),
        rows=[
            [label] + [str(e) for e in row]
            for label, row in zip(d.row_labels(), d.entries)
        ],
        document={**meta, **d.to_json()},
    )


def _decmatrix_report(name: str, p: int, n: int | None, symmetric: bool) -> Report:
    d = decomposition_case(name, p, n)
    if symmetric:
        d = symmetric_group_submatrix(d, p)
    meta = {"case": name, "p": str(p)}
    if n is not None:
        meta["n"] = str(n)
    return _matrix_report(d, meta)


def _decmatrix(args: argparse.Namespace) -> Report:
    return _decmatrix_report(args.case, args.p, args.n, args.symmetric_group)


def _stalks_task(args: argparse.Namespace) -> SweepTaskFn:
    def task(p: int, *, n: int | None = None) -> Report:
        case = CaseId.parse(args.case, n)
        k = CoefficientSpec.prime_field(p)
        return _stalks_report(case, k, Perversity(args.perversity))

    return task


def _decmatrix_task(args: argparse.Namespace) -> SweepTaskFn:
    def task(p: int, *, n: int | None = None) -> Report:
        return _decmatrix_report(args.case, p, n, args.symmetric_group)

    return task


async def run_sweep(
    primes: Sequence[int], task: SweepTaskFn, n: int | None = None
) -> list[tuple[int, Report | Error]]:
    """Runs task for each prime in worker threads; results come back in prime order.

    :param primes: The characteristics to compute.
    :param task: The computation for one prime.
    :param n: The rank parameter passed on to the task.
    """

    async def one(p: int) -> tuple[int, Report | Error]:
        try:
            return p, await asyncio.to_thread(task, p, n=n)
        except Error as ex:
            return p, ex

    return list(await asyncio.gather(*(one(p) for p in primes)))


def _write_sweep(
    results: list[tuple[int, Report | Error]],
    fmt: OutputFormat,
    out: TextIO,
    err: TextIO,
) -> int:
    reports = []
    for p, result in results:
        if isinstance(result, Error):
            print(f"{PROG}: p={p}: {result}", file=err)
        else:
            reports.append(result)
    if fmt is OutputFormat.JSON:
        documents = [r.document for r in reports]
        out.write(write(Report({}, [], [], {"sweep": documents}), fmt))
    else:
        out.write("".join(write(r, fmt) for r in reports))
    return 0 if reports else 3


_COMMANDS: dict[str, Callable[[argparse.Namespace], Report]] = {
    "orbits": _orbits,
    "stalks": _stalks,
    "cohom": _cohom,
    "kostka": _kostka,
    "ic0": _ic0,
    "decmatrix": _decmatrix,
}

_SWEEP_TASKS: dict[str, Callable[[argparse.Namespace], SweepTaskFn]] = {
    "stalks": _stalks_task,
    "decmatrix": _decmatrix_task,
}


def build_parser() -> argparse.ArgumentParser:
    """Creates the argument parser for all commands."""
    partition = _argument_type(parse_partition)
    coefficients = _argument_type(CoefficientSpec.parse)
    sweep = _argument_type(parse_sweep)

    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Stalks of intersection cohomology complexes on nilpotent orbits.",
    )
    parser.add_argument("--format", choices=[f.value for f in OutputFormat])
    parser.add_argument(
        "--config", type=Path, help="Settings file (default ~/.nilstalk)."
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="Log computations to stderr."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    orbits = sub.add_parser("orbits", help="Nilpotent orbits of sl_n.")
    orbits.add_argument("--n", type=int)
    orbits.add_argument("--closure", type=partition)

    stalks = sub.add_parser("stalks", help="IC stalk tables of a case study.")
    stalks.add_argument("--case", required=True, choices=[c.value for c in CaseKind])
    stalks.add_argument("--n", type=int)
    stalks.add_argument(
        "--coeff", type=coefficients, default=CoefficientSpec.rational()
    )
    stalks.add_argument(
        "--perversity", choices=[p.value for p in Perversity], default="p"
    )
    stalks.add_argument("--sweep", type=sweep, nargs="?", const=(), default=None)

    cohom = sub.add_parser(
        "cohom", help="Cohomology of a space or a bundle complement."
    )
    cohom.add_argument(
        "--space", required=True, type=_argument_type(_space_syntax), dest="space"
    )
    cohom.add_argument("--coeff", type=coefficients, default=CoefficientSpec.integers())

    for name, help_text in (
        ("kostka", "Kostka-Foulkes polynomial."),
        ("ic0", "Rational IC stalk polynomial."),
    ):
        poly = sub.add_parser(name, help=help_text)
        poly.add_argument("--lambda", dest="lam", required=True, type=partition)
        poly.add_argument("--mu", required=True, type=partition)

    dec = sub.add_parser("decmatrix", help="Decomposition matrices.")
    dec.add_argument("--case", required=True, choices=decomposition_case_names())
    dec.add_argument("--p", type=int)
    dec.add_argument("--n", type=int)
    dec.add_argument("--symmetric-group", action="store_true")
    dec.add_argument("--sweep", type=sweep, nargs="?", const=(), default=None)
    return parser


def _check_args(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    if args.command == "orbits" and args.n is None and args.closure is None:
        parser.error("orbits needs --n or --closure")
    if args.command == "stalks" and args.n is None:
        if CaseId.parse(args.case, 2).is_parametric:
            parser.error(f"--case {args.case} needs --n")
    if args.command == "decmatrix":
        if args.case == "sln-minimal" and args.n is None:
            parser.error("--case sln-minimal needs --n")
        if args.p is None and args.sweep is None:
            parser.error("decmatrix needs --p or --sweep")


def main(
    argv: Sequence[str] | None = None,
    out: TextIO | None = None,
    err: TextIO | None = None,
) -> int:
    """Runs the command line; returns the exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _check_args(parser, args)
    except SystemExit as ex:
        return ex.code if isinstance(ex.code, int) else 2
    if args.verbose:
        logging.basicConfig(level=logging.DEBUG)
    try:
        settings = load_settings(args.config)
        fmt = OutputFormat(args.format) if args.format else settings.format
        if getattr(args, "sweep", None) is not None:
            bounds = args.sweep or settings.sweep
            if bounds is None:
                raise DomainError("No sweep range given and none configured")
            primes = [int(p) for p in primerange(bounds[0], bounds[1] + 1)]
            _LOGGER.debug("Sweeping %s over %s", args.command, primes)
            task = _SWEEP_TASKS[args.command](args)
            results = asyncio.run(run_sweep(primes, task, n=args.n))
            return _write_sweep(results, fmt, out, err)
        out.write(write(_COMMANDS[args.command](args), fmt))
    except Error as ex:
        print(f"{PROG}: error: {ex}", file=err)
        return 3
    return 0
