"""Command-line entry points: replay a journal, run synthetic-teacher
experiments, or serve the game over HTTP.

Reports are printed as an aligned table followed by one JSON object per
row, so runs can be diffed and parsed.  Exit code 2 flags malformed input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .harness import GRID_ALL, Report, TeacherConfig, replay, run_synthetic
from .session import SessionConfig


def _add_model_flags(parser: argparse.ArgumentParser, max_size_default: int,
                     beam_default: int = 100) -> None:
    parser.add_argument("--eta", type=float, default=None, help="learning rate")
    parser.add_argument("--l2", type=float, default=0.0, help="L2 coefficient")
    parser.add_argument("--beta", type=float, default=3.0, help="pragmatics sharpening")
    parser.add_argument("--alpha", type=float, default=1.0, help="pragmatics smoothing")
    parser.add_argument("--epsilon", type=float, default=0.01, help="pragmatics Q initializer")
    parser.add_argument("--beam", type=int, default=beam_default,
                        help="beam width per size and category")
    parser.add_argument("--max-size", type=int, default=max_size_default,
                        help="largest logical form size")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shrdlurn")
    sub = parser.add_subparsers(dest="command", required=True)

    rp = sub.add_parser("replay", help="replay a session journal through a model variant")
    rp.add_argument("--log", required=True, help="path to a session journal (JSONL)")
    rp.add_argument("--variant", required=True, choices=("full", "half", "memorize"))
    rp.add_argument("--prag", action="store_true", help="rank with the pragmatic listener")
    _add_model_flags(rp, max_size_default=8)
    rp.add_argument("--dump-model", help="write the final model weights to this path")

    sy = sub.add_parser("synth", help="run the synthetic-teacher comparison grid")
    sy.add_argument("--rho", type=float, default=1.0, help="teacher consistency in [0,1]")
    sy.add_argument("--seeds", type=int, default=5)
    sy.add_argument("--interactions", type=int, default=200)
    sy.add_argument(
        "--grid",
        default="all",
        help="'all' or comma-separated settings like full,full+prag,half,memorize",
    )
    # synthetic plans stop at size-5 forms, so the search stays small; the
    # wider beam keeps every plannable action on it (replay keeps live defaults)
    _add_model_flags(sy, max_size_default=5, beam_default=160)

    sv = sub.add_parser("serve", help="serve the game over HTTP")
    sv.add_argument("--port", type=int, default=None,
                    help="default: $SHRDLURN_PORT or 8711")
    sv.add_argument("--data-dir", default=None,
                    help="journal directory; default: $SHRDLURN_DATA_DIR or ./shrdlurn-data")
    return parser


def _parse_grid(text: str) -> tuple[tuple[str, bool], ...]:
    if text == "all":
        return GRID_ALL
    grid = []
    for part in text.split(","):
        part = part.strip()
        prag = part.endswith("+prag")
        variant = part[: -len("+prag")].strip() if prag else part
        if variant not in ("full", "half", "memorize"):
            raise ValueError(f"bad grid entry {part!r}")
        grid.append((variant, prag))
    return tuple(grid)


def _print_report(report: Report) -> None:
    print(report.table())
    print()
    print(report.machine_lines())


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "replay":
        path = Path(args.log)
        if not path.is_file():
            print(f"error: no such log: {path}", file=sys.stderr)
            return 2
        config = SessionConfig(
            variant=args.variant, pragmatics=args.prag, eta=args.eta, l2=args.l2,
            alpha=args.alpha, beta=args.beta, epsilon=args.epsilon,
            beam_width=args.beam, max_size=args.max_size,
        )
        try:
            row = replay(path.read_text(), config)
        except ValueError as err:
            print(f"error: {err}", file=sys.stderr)
            return 2
        if args.dump_model:
            Path(args.dump_model).write_text(row.final_model_dump or "")
        _print_report(Report([row]))
        return 0

    if args.command == "synth":
        try:
            teacher = TeacherConfig(rho=args.rho)
            grid = _parse_grid(args.grid)
        except ValueError as err:
            print(f"error: {err}", file=sys.stderr)
            return 2
        overrides = dict(beam_width=args.beam, max_size=args.max_size, l2=args.l2,
                         alpha=args.alpha, beta=args.beta, epsilon=args.epsilon)
        if args.eta is not None:
            overrides["eta"] = args.eta
        report = run_synthetic(
            teacher,
            grid=grid,
            seeds=args.seeds,
            interactions=args.interactions,
            config_overrides=overrides,
        )
        _print_report(report)
        return 0

    if args.command == "serve":
        from .server import serve

        serve(port=args.port, data_dir=args.data_dir)
        return 0

    return 2


if __name__ == "__main__":
    sys.exit(main())
