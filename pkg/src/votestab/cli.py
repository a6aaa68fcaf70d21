"""Command-line surface: generate, curves, verify, select.

Every output file embeds the resolved run configuration (including the
seed) as leading comment lines, so re-running a command with the same
arguments reproduces the file byte for byte.

Exit codes: 0 ok, 1 verification failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import sys

from . import blackbox, curves, selection, verify
from .estimators import estimate_noise_heuristic
from .exceptions import SingularityError, VotestabError

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def _parse_grid(text: str, cast):
    try:
        return [cast(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}: {exc}")


def _config_comments(command: str, args: argparse.Namespace, keys) -> list[str]:
    parts = [f"command={command}"]
    parts += [f"{key}={getattr(args, key)}" for key in keys]
    return [" ".join(parts)]


def cmd_generate(args) -> int:
    f = blackbox.family(args.family, args.r, seed=args.seed)
    if args.n == 2**args.r:
        X = blackbox.all_inputs(args.r)
    else:
        X = blackbox.uniform_inputs(
            args.r, args.n, blackbox.spawn_seeds(args.seed, 2)[0]
        )
    noise = blackbox.NoiseSpec(p=args.p, seed=blackbox.spawn_seeds(args.seed, 2)[1])
    exp = blackbox.draw_experiment(f, X, noise)
    comments = _config_comments(
        "generate", args, ["family", "r", "n", "p", "seed"]
    )
    blackbox.write_dataset(args.out, exp.X, exp.y1, comments=comments)
    print(f"wrote {args.n} rows to {args.out}")
    return EXIT_OK


def cmd_curves(args) -> int:
    figures = tuple(args.figures)
    comments = _config_comments("curves", args, ["figures"])
    curves.write_curves_csv(args.out, figures=figures, comments=comments)
    print(f"wrote curve data to {args.out}")
    if args.plot:
        import os

        outdir = os.path.dirname(os.path.abspath(args.out)) or "."
        for path in curves.render_figures(outdir, figures=figures):
            print(f"rendered {path}")
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = verify.VerifyConfig(
        trials=args.trials, seed=args.seed, fault=args.inject_fault
    )
    results = verify.run_battery(cfg)
    failed = 0
    for res in results:
        verdict = "PASS" if res.passed else "FAIL"
        failed += not res.passed
        print(f"{res.theorem} [{res.method}] {verdict}: {res.statistic}")
    print(f"{len(results) - failed}/{len(results)} theorems pass")
    return EXIT_OK if failed == 0 else EXIT_CHECK_FAILED


def cmd_select(args) -> int:
    X, y = blackbox.read_dataset(args.dataset)
    if args.p is None:
        if not args.estimate_p:
            print(
                "error: supply --p or opt into the --estimate-p heuristic",
                file=sys.stderr,
            )
            return EXIT_USAGE
        p = estimate_noise_heuristic(X, y)
        print(f"heuristic noise estimate p={p:.4g} (not ground truth)")
    else:
        p = args.p
    try:
        result = selection.select(
            X, y, p, k_grid=args.k_grid, t_grid=args.t_grid, rule=args.rule
        )
    except SingularityError:
        print(
            "error: p = 0.5 makes the neighborhood-frequency estimator "
            "degenerate (1 - 2p = 0); rho cannot be recovered from the data",
            file=sys.stderr,
        )
        return EXIT_USAGE
    comments = _config_comments(
        "select", args, ["dataset", "k_grid", "t_grid", "rule", "seed"]
    ) + [f"p={p}"]
    if args.out:
        selection.write_selection_csv(result, args.out, comments=comments)
        print(f"wrote selection grid to {args.out}")
    k, t = result.chosen
    print(f"chosen k={k} t={t}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="votestab",
        description=(
            "Cross-validation error and voting-stability analysis for "
            "boolean k-nearest-neighbor models."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate a synthetic dataset CSV")
    gen.add_argument("--family", default="parity",
                     help="constant0|constant1|projection0|parity|majority|random")
    gen.add_argument("--r", type=int, required=True, help="attribute count")
    gen.add_argument("--n", type=int, required=True, help="row count")
    gen.add_argument("--p", type=float, default=0.0, help="label noise rate")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=cmd_generate)

    cur = sub.add_parser("curves", help="emit the closed-form curve CSV")
    cur.add_argument("--figures", type=lambda s: _parse_grid(s, int),
                     default=[1, 2, 3, 4])
    cur.add_argument("--out", required=True)
    cur.add_argument("--plot", action="store_true",
                     help="also render PNG figures next to the CSV")
    cur.set_defaults(func=cmd_curves)

    ver = sub.add_parser("verify", help="run the theorem battery")
    ver.add_argument("--trials", type=int, default=10_000)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--inject-fault", choices=verify.FAULTS, default=None,
                     help="mutation sanity mode; the battery must fail")
    ver.set_defaults(func=cmd_verify)

    sel = sub.add_parser("select", help="pick k and t from a dataset")
    sel.add_argument("--dataset", required=True)
    sel.add_argument("--p", type=float, default=None, help="known noise rate")
    sel.add_argument("--estimate-p", action="store_true",
                     help="fall back to the neighborhood heuristic for p")
    sel.add_argument("--k-grid", type=lambda s: _parse_grid(s, int),
                     default=None)
    sel.add_argument("--t-grid", type=lambda s: _parse_grid(s, float),
                     default=[0.5])
    sel.add_argument("--rule", choices=selection.RULES,
                     default=selection.RULE_INDEPENDENT)
    sel.add_argument("--seed", type=int, default=0)
    sel.add_argument("--out", default=None)
    sel.set_defaults(func=cmd_select)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except VotestabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
