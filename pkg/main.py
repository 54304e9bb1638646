import argparse
import sys

from src.logging import logging
from src.exception import ConfigError, CustomException
from src.configurations.run_config import parse_config
from src.suites.runner import SUITE_CHOICES, run_suite
from src.utils.report_writer import write_reports

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


class _UsageParser(argparse.ArgumentParser):
    """argparse already exits with 2 on usage errors; keep the message in the log too."""

    def error(self, message):
        logging.error(f"Usage error: {message}")
        super().error(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _UsageParser(
        prog="pblab",
        description="Verify nonlinear pseudo-boson structures of the regularized PT-symmetric oscillator.",
    )
    parser.add_argument("suite", choices=SUITE_CHOICES, help="suite to run; 'all' runs every suite in order")
    parser.add_argument("--config", default=None, help="flat 'key = value' config file")
    parser.add_argument("--out", default=None, help="report directory (overrides output_dir)")
    parser.add_argument("--format", dest="output_format", choices=("csv", "json"), default=None,
                        help="report format (overrides output_format)")
    parser.add_argument("--parallel", action="store_true", help="run the suites of 'all' in worker processes")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    try:
        config = parse_config(args.config)
        overrides = {}
        if args.out is not None:
            overrides["output_dir"] = args.out
        if args.output_format is not None:
            overrides["output_format"] = args.output_format
        if overrides:
            config = config.model_validate({**config.model_dump(), **overrides})
    except ConfigError as e:
        logging.error(f"Configuration error: {e}")
        print(f"pblab: {e}", file=sys.stderr)
        return EXIT_USAGE

    reports = run_suite(config, args.suite, parallel=args.parallel)
    try:
        path = write_reports(reports, config.output_dir, config.output_format, stem=args.suite)
    except CustomException as e:
        print(f"pblab: {e}", file=sys.stderr)
        return EXIT_USAGE

    failed = [report.check for report in reports if not report.passed]
    print(f"{len(reports)} checks, {len(failed)} failed; report written to {path}")
    for check in failed:
        print(f"  FAIL {check}")
    logging.info(f"pblab {args.suite}: {len(reports)} checks, {len(failed)} failed")
    return EXIT_CHECK_FAILED if failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
