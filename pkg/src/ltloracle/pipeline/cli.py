"""``ltloracle`` command line.

Exit codes: 0 success, 1 generic, 2 bad input or spec, 3 file format,
4 checker resource/witness, 5-6 external tool (6 = timeout), 7 training,
8 single-class data, 9 I/O.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict

from ..errors import LtlOracleError
from ..learners.model import ALGORITHMS
from . import commands
from .config import DEFAULTS, Config


def _flag(key: str) -> str:
    return "--" + key.replace("_", "-")


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--show-config", action="store_true", help="print the effective config and exit")
    group = p.add_argument_group("config overrides")
    for key, default in DEFAULTS.items():
        group.add_argument(_flag(key), dest=key, default=None, metavar="V",
                           help=f"(default: {default})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ltloracle", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write random (K, f) instances")
    p.add_argument("-o", "--out", required=True)

    p = sub.add_parser("label", help="model-check every instance")
    p.add_argument("instances")
    p.add_argument("-o", "--out", required=True)

    p = sub.add_parser("features", help="export the feature CSV of a labeled dataset")
    p.add_argument("dataset")
    p.add_argument("-o", "--out", required=True)

    p = sub.add_parser("train-eval", help="split, train one learner, evaluate")
    p.add_argument("dataset")
    p.add_argument("-a", "--algorithm", choices=ALGORITHMS, required=True)
    p.add_argument("-o", "--out", required=True, help="report JSON")
    p.add_argument("--model", help="also write the trained model here")

    p = sub.add_parser("bench", help="checking time vs prediction time")
    p.add_argument("dataset")
    p.add_argument("report")
    p.add_argument("-o", "--out")

    p = sub.add_parser("sweep", help="grid over split fractions and seeds")
    p.add_argument("dataset")
    p.add_argument("-a", "--algorithm", choices=ALGORITHMS, required=True)
    p.add_argument("-o", "--out", required=True, help="best report JSON")
    p.add_argument("--grid", required=True, help="full grid CSV")

    p = sub.add_parser("e2e", help="full experiment from a config file")
    p.add_argument("--outdir", required=True)

    for name in sub.choices:
        _add_config_flags(sub.choices[name])
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        overrides = {k: getattr(args, k) for k in DEFAULTS}
        cfg = Config.load(args.config, overrides)
        if args.show_config:
            sys.stdout.write(cfg.dump())
            return 0
        return _dispatch(args, cfg)
    except LtlOracleError as exc:
        print(f"error [{type(exc).__name__}]: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error [io]: {exc}", file=sys.stderr)
        return 9


def _dispatch(args, cfg: Config) -> int:
    if args.command == "generate":
        instances = commands.cmd_generate(cfg, args.out)
        print(f"wrote {len(instances)} instances to {args.out}")
    elif args.command == "label":
        summary = commands.cmd_label(cfg, args.instances, args.out)
        for failure in summary.failures:
            print(f"warning: {failure}", file=sys.stderr)
        print("\n".join(summary.lines()))
    elif args.command == "features":
        commands.cmd_features(args.dataset, args.out)
        print(f"wrote {args.out}")
    elif args.command == "train-eval":
        report = commands.cmd_train_eval(cfg, args.dataset, args.algorithm, args.out, args.model)
        print(json.dumps(asdict(report), indent=2, sort_keys=True))
    elif args.command == "bench":
        b = commands.cmd_bench(args.dataset, args.report, args.out)
        print(json.dumps(asdict(b), indent=2, sort_keys=True))
    elif args.command == "sweep":
        best = commands.cmd_sweep(cfg, args.dataset, args.algorithm, args.out, args.grid)
        print(json.dumps(asdict(best), indent=2, sort_keys=True))
    elif args.command == "e2e":
        result = commands.run_e2e(cfg, args.outdir)
        print("\n".join(result.label_summary.lines()))
        print(f"majority-class prevalence: {result.prevalence:.4f}\n")
        print(commands.summary_table(result.best, result.benches), end="")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
