"""Command-line entry point.

Verbs:
    run <config-file> [--out DIR]      run one experiment config
    preset <name> [--out DIR] [--desk] run a named preset (desk = reduced N)
    list-presets                       print available preset names
    oracle-check                       run the small-size cross-oracle suite

Exit codes: 0 success, 2 usage/config error, 3 I/O error, 4 numeric failure.
`THERMOGA_OUTPUT_DIR` overrides the output directory for all verbs.
"""

from __future__ import annotations

import argparse
import sys

from . import experiment

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_NUMERIC = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="thermoga",
                                     description="GA effective-temperature experiments "
                                                 "on solvable spin-glass models")
    sub = parser.add_subparsers(dest="verb", required=True)

    p_run = sub.add_parser("run", help="run an experiment from a config file")
    p_run.add_argument("config")
    p_run.add_argument("--out", default=None)

    p_preset = sub.add_parser("preset", help="run a named preset")
    p_preset.add_argument("name")
    p_preset.add_argument("--out", default=None)
    p_preset.add_argument("--desk", action="store_true",
                          help="reduced system size for quick runs")

    sub.add_parser("list-presets", help="list preset names")
    p_oracle = sub.add_parser("oracle-check", help="run the cross-oracle suite")
    p_oracle.add_argument("--out", default=None)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.verb == "list-presets":
            for name in experiment.list_presets():
                print(name)
            return EXIT_OK

        if args.verb == "oracle-check":
            ok, lines = experiment.oracle_check(output_dir=args.out)
            print("\n".join(lines))
            return EXIT_OK if ok else EXIT_NUMERIC

        if args.verb == "preset":
            written = experiment.run_preset(args.name, desk=args.desk, output_dir=args.out)
            for path in written:
                print(path)
            return EXIT_OK

        # run
        cfg = experiment.load_config(args.config)
        if isinstance(cfg, experiment.ExperimentConfig):
            summary = experiment.run_experiment(cfg, output_dir=args.out)
            experiment.emit_plot_data(summary)
            print(summary.output_dir)
        elif isinstance(cfg, experiment.McmcCurveConfig):
            paths = experiment.run_mcmc_curve(cfg, output_dir=args.out)
            print(paths[0].parent)
        else:
            out = experiment.resolve_output_dir(cfg, args.out)
            ok, lines = experiment.oracle_check(cfg.seed, output_dir=out)
            print("\n".join(lines))
            return EXIT_OK if ok else EXIT_NUMERIC
        return EXIT_OK
    except KeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, TypeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ArithmeticError, RuntimeError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
