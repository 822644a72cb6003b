"""Command-line interface for checking, generating and drawing multibranched surfaces."""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING

from .generation import FamilySpec, get_surface, parse_family_spec
from .neighborhood import count_assignments, enumerate_dual_graphs
from .obstruction import BudgetExceededError, EvaluationSettings, evaluate
from .report import render_dot, render_structured, render_text, write_dot_files
from .surface import SurfaceError, read_mbs, serialize_mbs
from .utils import get_supported_families, get_version_header

if TYPE_CHECKING:  # pragma: no cover
    from collections.abc import Sequence

    from .surface import MultibranchedSurface

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_BUDGET_EXCEEDED = 3


class CustomArgumentParser(argparse.ArgumentParser):
    """Custom argument parser that includes version information in the help message."""

    def format_help(self) -> str:
        """Include version information in the help message."""
        return super().format_help() + "\n" + get_version_header()


@dataclass
class RunConfig:
    """Data class for one CLI run.

    Attributes:
        input_path: ``.mbs`` file to read
        family: generated family member, used instead of ``input_path``
        settings: evaluation settings
        output_format: ``text``, ``structured`` or ``dot``
        output_path: report file, or target directory for DOT files; stdout if ``None``
    """

    input_path: Path | None = None
    family: FamilySpec | None = None
    settings: EvaluationSettings = field(default_factory=EvaluationSettings)
    output_format: str = "text"
    output_path: Path | None = None

    def __post_init__(self) -> None:
        """Require exactly one input source and a known format."""
        if (self.input_path is None) == (self.family is None):
            msg = "Exactly one of an input file and --family must be given."
            raise ValueError(msg)
        if self.output_format not in {"text", "structured", "dot"}:
            msg = f"Unknown output format '{self.output_format}'."
            raise ValueError(msg)

    def load_surface(self) -> MultibranchedSurface:
        """Read the input file or generate the family member."""
        if self.family is not None:
            return get_surface(self.family)
        assert self.input_path is not None
        return read_mbs(self.input_path)


def _emit(text: str, path: Path | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text, encoding="utf-8")


def cmd_check(config: RunConfig) -> int:
    """Evaluate the obstruction and write the report; the verdict is part of the output, not the exit code."""
    verdict = evaluate(config.load_surface(), config.settings)
    if config.output_format == "dot":
        _emit("".join(render_dot(report.graph) for report in verdict.reports), config.output_path)
    elif config.output_format == "structured":
        _emit(render_structured(verdict), config.output_path)
    else:
        _emit(render_text(verdict), config.output_path)
    return EXIT_OK


def cmd_gen(spec: FamilySpec, output_path: Path | None = None) -> int:
    """Write the ``.mbs`` text of a family member; only connected surfaces can be read back by ``check``."""
    surface = get_surface(spec)
    if not surface.is_connected:
        params = ",".join(str(p) for p in spec.params)
        msg = (
            f"{spec.family} with parameters {params} is disconnected; "
            f"use check --family {spec.family} --params={params}"
        )
        raise ValueError(msg)
    _emit(serialize_mbs(surface), output_path)
    return EXIT_OK


def cmd_dot(config: RunConfig) -> int:
    """Write one DOT file per distinct dual graph into ``config.output_path`` (default: working directory)."""
    surface = config.load_surface()
    count = count_assignments(surface, limit=config.settings.budget)
    if count > config.settings.budget:
        raise BudgetExceededError(count, config.settings.budget)
    classes = enumerate_dual_graphs(
        surface, workers=config.settings.workers, chunk_size=config.settings.chunk_size
    )
    graphs = [found.graph for found in classes]
    paths = write_dot_files(graphs, config.output_path or Path())
    sys.stdout.write("".join(f"{path} {graph.label}\n" for path, graph in zip(paths, graphs)))
    return EXIT_OK


def _add_input_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("input", type=Path, nargs="?", help="Path of a .mbs file")
    parser.add_argument("--family", type=str, choices=get_supported_families(), help="Generate the input instead")
    parser.add_argument(
        "--params", type=str, help='Comma separated family parameters, e.g. "4" or "--params=-1,3"'
    )


def _add_evaluation_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--assume-connected-duals", action="store_true", help="Skip dual graphs with more than one component"
    )
    parser.add_argument(
        "--fast-single-tree", action="store_true", help="Check only the first spanning forest of every dual graph"
    )
    parser.add_argument("--budget", type=int, default=1_000_000, help="Maximal number of cyclic assignments")
    parser.add_argument("--workers", type=int, default=1, help="Number of worker processes")
    parser.add_argument("--chunk-size", type=int, default=2048, help="Assignments per work chunk")


def build_parser() -> CustomArgumentParser:
    """Build the argument parser with the subcommands ``check``, ``gen`` and ``dot``."""
    parser = CustomArgumentParser(
        prog="mbs-obstruction", description="Homological obstruction to embedding multibranched surfaces in S^3"
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="Log more (repeatable)")
    subparsers = parser.add_subparsers(dest="command", required=True)

    check = subparsers.add_parser("check", help="Evaluate the obstruction for a surface")
    _add_input_arguments(check)
    _add_evaluation_arguments(check)
    check.add_argument("--format", choices=["text", "structured", "dot"], default="text", help="Report format")
    check.add_argument("--output", type=Path, help="Report file (default: standard output)")

    gen = subparsers.add_parser("gen", help="Write a family member as .mbs text")
    gen.add_argument("family", choices=get_supported_families(), help="Name of the family")
    gen.add_argument("params", nargs="?", help='Comma separated parameters, e.g. "4" or "1,-1"')
    gen.add_argument("--output", type=Path, help="Target .mbs file (default: standard output)")

    dot = subparsers.add_parser("dot", help="Write one DOT file per distinct dual graph")
    _add_input_arguments(dot)
    _add_evaluation_arguments(dot)
    dot.add_argument("--output", type=Path, help="Target directory (default: working directory)")
    return parser


def _run_config(args: argparse.Namespace, output_format: str) -> RunConfig:
    family = parse_family_spec(args.family, args.params) if args.family is not None else None
    return RunConfig(
        input_path=args.input,
        family=family,
        settings=EvaluationSettings(
            assume_connected_duals=args.assume_connected_duals,
            fast_single_tree=args.fast_single_tree,
            budget=args.budget,
            workers=args.workers,
            chunk_size=args.chunk_size,
        ),
        output_format=output_format,
        output_path=args.output,
    )


def main(argv: Sequence[str] | None = None) -> int:
    """Parse the arguments, run one subcommand and return the exit code.

    Exit codes: 0 the command ran (the verdict is in the output), 2 input error, 3 budget exceeded.
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=[logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)],
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    logger.debug("Running subcommand %s", args.command)
    try:
        if args.command == "gen":
            return cmd_gen(parse_family_spec(args.family, args.params), args.output)
        if args.command == "dot":
            return cmd_dot(_run_config(args, "dot"))
        return cmd_check(_run_config(args, args.format))
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET_EXCEEDED
    except (SurfaceError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
