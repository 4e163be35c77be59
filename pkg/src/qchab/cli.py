"""Command-line entry point: ``qchab check|diagnose|bound|oracle``."""
import argparse
import sys
from importlib import resources
from pathlib import Path

from .app import check_conditions, load_instance, report_json, run_pipeline
from .errors import QchabError

SAMPLES = ("bundled", "rigged")


def sample_path(name):
    """Path of a packaged sample instance ("bundled" or "rigged")."""
    if name not in SAMPLES:
        raise KeyError(f"unknown sample {name!r}; choose from {', '.join(SAMPLES)}")
    return resources.files("qchab") / "data" / f"{name}.json"


def _resolve(arg):
    if arg in SAMPLES and not Path(arg).exists():
        return sample_path(arg)
    return arg


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qchab",
        description="Residue-disk bounds for rational points via biextension torsors.")
    parser.add_argument("command", choices=["check", "diagnose", "bound", "oracle"])
    parser.add_argument("--instance", required=True,
                        help="instance JSON, or the name of a packaged sample (bundled, rigged)")
    parser.add_argument("--precision", type=int, help="override the p-adic precision N")
    parser.add_argument("--degree", type=int, help="override the degree cap D")
    parser.add_argument("--depth", type=int, help="Hensel oracle depth (default N)")
    parser.add_argument("--json", metavar="OUT", help="also write the report to this file")
    parser.add_argument("--force", action="store_true",
                        help="run even when the geometric condition fails")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        inst = load_instance(_resolve(args.instance), precision=args.precision, degree_cap=args.degree)
        if args.command == "check":
            report = {"instance": inst.name, "conditions": check_conditions(inst), "flags": inst.flags}
        else:
            report = run_pipeline(inst, depth=args.depth, check_only=args.command == "diagnose",
                                  force=args.force, oracle=args.command == "oracle")
    except (QchabError, OSError) as exc:
        print(f"qchab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text = report_json(report)
    sys.stdout.write(text)
    if args.json:
        Path(args.json).write_text(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
