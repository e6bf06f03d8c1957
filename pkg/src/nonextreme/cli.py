"""``nonextreme`` command-line interface.

Exit codes: 0 success, 2 usage error, 3 data error, 4 numeric/degeneracy error.
Angles are given in degrees.
"""

from __future__ import annotations

import argparse
import contextlib
import math
import sys
from typing import IO, Iterator, Sequence

import numpy as np

from . import formats
from .algorithm import box_mask, filter_box, knee_point, neim, nondominated_mask, standard_payoff
from .core import UtopiaNadirBox
from .errors import AlphaOutOfRange, DataError, NumericError
from .geometry import AlphaSpec, rotated_weights, weight_ratio_bound
from .problems import EllipsoidProblem, PointCloudProblem
from .scalarization import WsProblem

EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 2, 3, 4


class UsageError(Exception):
    pass


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got {text!r}") from None


def _grid(text: str) -> list[float]:
    parts = text.split(":")
    try:
        start, step, end = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected start:step:end, got {text!r}") from None
    if step <= 0 or end < start:
        raise argparse.ArgumentTypeError("grid needs step > 0 and end >= start")
    count = int(math.floor((end - start) / step + 1e-9)) + 1
    return [start + k * step for k in range(count)]


@contextlib.contextmanager
def _output(path: str | None) -> Iterator[IO[str]]:
    if path is None or path == "-":
        yield sys.stdout
    else:
        try:
            fh = open(path, "w", encoding="utf-8", newline="")
        except OSError as exc:
            raise DataError(f"cannot write {path}: {exc.strerror}") from exc
        with fh:
            yield fh


def _alpha(args: argparse.Namespace, n: int) -> AlphaSpec:
    if args.alpha_vec is not None:
        degrees = args.alpha_vec
        if len(degrees) != n:
            raise UsageError(f"--alpha-vec needs {n} angles, got {len(degrees)}")
    elif args.alpha is not None:
        degrees = [args.alpha] * n
    else:
        raise UsageError("an angle is required (--alpha or --alpha-vec)")
    if any(not (0 <= d < 90) for d in degrees):
        raise UsageError(f"angles must lie in [0, 90) degrees, got {degrees}")
    return AlphaSpec.from_degrees(degrees)


def _load_problem(args: argparse.Namespace) -> tuple[WsProblem, formats.Cloud | None, dict]:
    if (args.cloud is None) == (args.problem is None):
        raise UsageError("give exactly one problem source: --cloud FILE or --problem ellipsoid")
    if args.cloud is not None:
        cloud = formats.read_cloud(args.cloud)
        return PointCloudProblem(cloud.points, cloud.ids), cloud, {"cloud": args.cloud, "labels": cloud.labels}
    if not args.semi_axes:
        raise UsageError("--problem ellipsoid needs --semi-axes")
    try:
        problem = EllipsoidProblem(args.semi_axes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return problem, None, {"problem": "ellipsoid", "semi_axes": list(args.semi_axes)}


def _decision_labels(problem: WsProblem, decisions: Sequence) -> list:
    if isinstance(problem, PointCloudProblem):
        return [problem.label(d) if problem.ids is not None else int(d) for d in decisions]
    return [np.asarray(d).tolist() for d in decisions]


def cmd_weights(args: argparse.Namespace) -> int:
    if args.dim < 2:
        raise UsageError("--dim must be at least 2")
    alpha = _alpha(args, args.dim)
    spans, weights = rotated_weights(alpha)
    ratios = [float(w.max() / w.min()) if np.all(w > 0) else None for w in weights]
    doc = {
        "command": "weights",
        "dim": args.dim,
        "alpha_deg": alpha.degrees.tolist(),
        "spanning": [[c.tolist() for c in s.columns.T] for s in spans],
        "weights": [w.tolist() for w in weights],
        "lbar": None if None in ratios else max(ratios),
    }
    with _output(args.output) as out:
        out.write(formats.dumps_report(doc))
    return 0


def cmd_lbar(args: argparse.Namespace) -> int:
    if args.dim < 2:
        raise UsageError("--dim must be at least 2")
    grid = args.alpha_grid
    if any(not (0 < a < 90) for a in grid):
        raise UsageError("--alpha-grid values must lie in (0, 90) degrees")
    with _output(args.output) as out:
        out.write("alpha_deg,lbar\n")
        for a in grid:
            out.write(f"{a!r},{weight_ratio_bound(math.radians(a), args.dim)!r}\n")
    return 0


def _run_neim(args: argparse.Namespace, problem: WsProblem):
    alpha = _alpha(args, problem.n_objectives)
    if not alpha.all_positive and not args.allow_standard:
        raise UsageError(
            "alpha must be > 0: zero angles give the standard individual minima, whose trade-off "
            "ratio is unbounded (pass --allow-standard to compute them anyway)"
        )
    return neim(
        problem,
        alpha,
        normalize=not args.no_normalize,
        allow_standard=args.allow_standard,
        allow_degenerate=args.allow_degenerate,
    )


def cmd_neim(args: argparse.Namespace) -> int:
    problem, cloud, source = _load_problem(args)
    report = _run_neim(args, problem)
    doc = {"command": "neim", **source}
    doc.update(
        formats.neim_doc(
            report,
            (_decision_labels(problem, report.standard_decisions), _decision_labels(problem, report.nonextreme_decisions)),
        )
    )
    if cloud is not None:
        _, stats = filter_box(cloud.points, report.nonextreme_box, use_utopia=args.use_utopia)
        doc["stats"] = formats.stats_doc(stats)
    with _output(args.output) as out:
        out.write(formats.dumps_report(doc))
    return 0


def cmd_filter(args: argparse.Namespace) -> int:
    cloud = formats.read_cloud(args.cloud)
    if (args.report is None) == (args.nadir is None):
        raise UsageError("give exactly one box source: --report FILE or --nadir LIST")
    use_utopia = args.use_utopia
    if args.report is not None:
        if args.utopia is not None:
            raise UsageError("--utopia only applies together with --nadir")
        box = formats.box_from_doc(formats.read_report(args.report), args.box)
    else:
        nadir = np.array(args.nadir)
        if nadir.size != cloud.points.shape[1]:
            raise DataError(f"--nadir has {nadir.size} components, cloud has {cloud.points.shape[1]} objectives")
        if args.utopia is not None:
            utopia = np.array(args.utopia)
            if utopia.size != nadir.size:
                raise DataError("--utopia and --nadir differ in length")
            use_utopia = True
        else:
            utopia = np.minimum(cloud.points.min(axis=0), nadir)
        box = UtopiaNadirBox(utopia, nadir)
    if box.n_objectives != cloud.points.shape[1]:
        raise DataError(f"box has {box.n_objectives} objectives, cloud has {cloud.points.shape[1]}")
    mask = box_mask(cloud.points, box, use_utopia)
    with _output(args.output) as out:
        formats.write_cloud_rows(cloud, mask, out)
    kept, total = int(mask.sum()), len(cloud)
    print(f"kept {kept} of {total} ({100 * kept / total:.2f}%)", file=sys.stderr)
    return 0


def cmd_knee(args: argparse.Namespace) -> int:
    problem, _, source = _load_problem(args)
    which = ["standard", "non-extreme"] if args.payoff == "both" else [args.payoff]
    doc: dict = {"command": "knee", **source, "strict": args.strict, "clamp": args.clamp}
    payoffs = {}
    if "non-extreme" in which:
        report = _run_neim(args, problem)
        payoffs["standard"] = report.standard_payoff
        payoffs["non-extreme"] = report.nonextreme_payoff
        doc.update(formats.neim_doc(
            report,
            (_decision_labels(problem, report.standard_decisions), _decision_labels(problem, report.nonextreme_decisions)),
        ))
    else:
        payoffs["standard"] = standard_payoff(problem)
        doc["payoff_standard"] = formats.payoff_doc(payoffs["standard"])
    knees = {}
    for name in which:
        kp = knee_point(problem, payoffs[name], strict=args.strict, clamp=args.clamp)
        knees[name.replace("-", "")] = {
            "weight": kp.weights.tolist(),
            "has_negative_components": kp.has_negative_components,
            "clamped": kp.clamped,
            "pareto_guaranteed": kp.pareto_guaranteed,
            "dominated": kp.dominated,
            "point": kp.objectives.tolist(),
            "decision": _decision_labels(problem, [kp.decision])[0],
        }
    doc["knee"] = knees
    with _output(args.output) as out:
        out.write(formats.dumps_report(doc))
    return 0


def cmd_pareto(args: argparse.Namespace) -> int:
    cloud = formats.read_cloud(args.cloud)
    mask = nondominated_mask(cloud.points)
    with _output(args.output) as out:
        formats.write_cloud_rows(cloud, mask, out)
    print(f"kept {int(mask.sum())} of {len(cloud)} nondominated", file=sys.stderr)
    return 0


def _add_alpha(p: argparse.ArgumentParser, required: bool = False) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--alpha", type=float, help="common rotation angle in degrees")
    g.add_argument("--alpha-vec", type=_floats, help="per-objective angles in degrees, comma-separated")


def _add_problem(p: argparse.ArgumentParser) -> None:
    p.add_argument("--cloud", help="CSV point cloud (header row, optional leading id column)")
    p.add_argument("--problem", choices=["ellipsoid"], help="built-in analytic problem")
    p.add_argument("--semi-axes", type=_floats, help="ellipsoid semi-axes, comma-separated")


def _add_neim_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--no-normalize", action="store_true", help="use the rotated weights without range normalization")
    p.add_argument("--allow-standard", action="store_true", help="accept zero angles (standard individual minima)")
    p.add_argument("--allow-degenerate", action="store_true", help="use unit scale for objectives with zero range")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nonextreme", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("weights", help="rotated spanning matrices and weight vectors")
    p.add_argument("--dim", type=int, required=True)
    _add_alpha(p, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("lbar", help="worst weight ratio over an angle grid (CSV)")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--alpha-grid", type=_grid, required=True, metavar="START:STEP:END")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_lbar)

    p = sub.add_parser("neim", help="standard and non-extreme individual minima")
    _add_problem(p)
    _add_alpha(p, required=True)
    _add_neim_flags(p)
    p.add_argument("--use-utopia", action="store_true", help="also bound the cloud statistics by the utopia")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_neim)

    p = sub.add_parser("filter", help="keep cloud rows inside a utopia/nadir box")
    p.add_argument("--cloud", required=True)
    p.add_argument("--report", help="report written by 'neim'")
    p.add_argument("--box", choices=["nonextreme", "standard"], default="nonextreme", help="which report box")
    p.add_argument("--nadir", type=_floats, help="comma-separated; write --nadir=-1,-2 for negative values")
    p.add_argument("--utopia", type=_floats, help="comma-separated; write --utopia=-1,-2 for negative values")
    p.add_argument("--use-utopia", action="store_true", help="also require rows to lie above the utopia")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_filter)

    p = sub.add_parser("knee", help="knee weights and points from standard and/or non-extreme minima")
    _add_problem(p)
    p.add_argument("--payoff", choices=["standard", "non-extreme", "both"], default="both")
    _add_alpha(p)
    _add_neim_flags(p)
    p.add_argument("--strict", action="store_true", help="reject knee weights with negative components")
    p.add_argument("--clamp", action="store_true", help="zero negative knee-weight components and renormalize")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_knee)

    p = sub.add_parser("pareto", help="nondominated rows of a cloud")
    p.add_argument("--cloud", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_pareto)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, AlphaOutOfRange) as exc:
        parser.print_usage(sys.stderr)
        print(f"nonextreme {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"nonextreme {args.command}: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NumericError as exc:
        print(f"nonextreme {args.command}: numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"nonextreme {args.command}: data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
