#!/usr/bin/env python3

import argparse
import logging
import sys
import textwrap

from elementary_groups import specs, suites, utils
from elementary_groups.argparse import ArgumentParser as SafeParser
from elementary_groups.finite import DEFAULT_CAP, FiniteRingError
from elementary_groups.formring import UndecidableStrategyError
from elementary_groups.rings import DEFAULT_TRIALS, UnsupportedRingOperation
from elementary_groups.tokeniser import TokeniserException

logger = logging.getLogger(__name__)

DEFAULT_LOG_FILE = "/tmp/elementary_groups.log"

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2

# Raised for bad input before any report exists
CONFIG_ERRORS = (
    specs.ConfigError,
    TokeniserException,
    FiniteRingError,
    UndecidableStrategyError,
    UnsupportedRingOperation,
)


class Cli(object):
    DESCRIPTION = textwrap.dedent(
        """
        Exact verification of identities in elementary and unitary elementary
        groups, and finite-ring oracles for closures, stable range and K_1.
        """
    )

    def __init__(self, configure_logging=True):
        self.configure_logging = configure_logging
        self._parsers = []
        self.parser = self._build_parser()

    @staticmethod
    def _err(msg):
        """Print a message in red"""
        print("\x1b[31m{}\x1b[0m".format(msg), file=sys.stderr)

    def _common_flags(self):
        common = argparse.ArgumentParser(add_help=False)
        specs_group = common.add_mutually_exclusive_group()
        specs_group.add_argument(
            "--ring",
            type=str,
            default=None,
            help='Ring spec as JSON or @file, e.g. \'{"kind": "modular", "m": 5}\'',
        )
        specs_group.add_argument(
            "--form",
            type=str,
            default=None,
            help="Form ring spec as JSON or @file: base, epsilon and lambda",
        )
        common.add_argument(
            "--n", type=int, default=3, help="Matrix size (2n for unitary)"
        )
        common.add_argument(
            "--cap",
            type=int,
            default=DEFAULT_CAP,
            help="Largest table a finite closure may build",
        )
        common.add_argument(
            "--trials",
            type=int,
            default=DEFAULT_TRIALS,
            help="Random samples per identity over infinite rings",
        )
        common.add_argument("--seed", type=int, default=0)
        common.add_argument(
            "--json",
            dest="output",
            type=str,
            default=None,
            help="Write the JSON report to this path ('-' for stdout)",
        )
        common.add_argument(
            "--timings",
            action="store_true",
            default=False,
            help="Include wall times in the JSON report",
        )
        common.add_argument(
            "-v",
            "--verbose",
            action="store_true",
            default=False,
            help="List every check, not only those which didn't pass",
        )
        common.add_argument(
            "--debug",
            dest="debug",
            action="store_true",
            default=False,
            help="Turn on debug mode, logging to the log file",
        )
        common.add_argument("--log-file", type=str, default=DEFAULT_LOG_FILE)
        return common

    def _build_parser(self):
        parser = SafeParser("egroups", description=self.DESCRIPTION)
        self._parsers.append(parser)
        common = self._common_flags()
        commands = parser.add_subparsers(dest="command")

        verify = commands.add_parser(
            "verify",
            parents=[common],
            help="Verify identities symbolically or exhaustively",
        )
        verify.add_argument(
            "suites",
            nargs="*",
            help="Any of {} or all".format(", ".join(sorted(suites.VERIFY_SUITES))),
        )
        self._parsers.append(verify)

        for name in sorted(suites.FINITE_SUITES):
            sub = commands.add_parser(
                name, parents=[common], help="Finite-ring oracle: {}".format(name)
            )
            if name in ("sr", "lambda-sr"):
                sub.add_argument("--m", type=int, default=1, help="Stable range index")
            self._parsers.append(sub)

        return parser

    @property
    def exited(self):
        return any(p.exited for p in self._parsers)

    def load_specs(self, args):
        ring = specs.load_ring(args.ring) if args.ring else None
        form = specs.load_form(args.form) if args.form else None
        return ring, form

    def verify(self, args, config):
        unknown = [
            s for s in args.suites if s != "all" and s not in suites.VERIFY_SUITES
        ]
        if unknown:
            raise specs.ConfigError("Unknown suite(s): {}".format(", ".join(unknown)))
        return suites.run_suites(args.suites, config)

    def oracle(self, args, config):
        return suites.run_suite(config)

    def write_report(self, report, args):
        if args.output == "-":
            print(report.dumps(timings=args.timings))
            return
        if args.output:
            report.save(args.output, timings=args.timings)
        utils.print_report(report, verbose=args.verbose)

    def run(self, argv):
        """Parse, run and report; returns the exit status"""
        try:
            args = self.parser.parse_args(argv)
        except specs.ConfigError as e:
            if self.exited:
                return EXIT_PASS
            self._err(str(e))
            return EXIT_CONFIG

        if self.exited:
            return EXIT_PASS
        if not args.command:
            self.parser.print_help()
            return EXIT_CONFIG

        if self.configure_logging:
            if args.debug:
                configure_debug_logging(args.log_file)
                logger.info("Starting %s in debug mode", args.command)
            else:
                logging.disable(logging.CRITICAL)

        try:
            ring, form = self.load_specs(args)
            name = "+".join(args.suites) if args.command == "verify" else args.command
            config = suites.SuiteConfig(
                name or "verify",
                ring=ring,
                form=form,
                n=args.n,
                trials=args.trials,
                seed=args.seed,
                cap=args.cap,
                m=getattr(args, "m", 1),
                output=args.output,
                timings=args.timings,
            )

            f = {"verify": self.verify}.get(args.command, self.oracle)
            report = f(args, config)
        except CONFIG_ERRORS as e:
            self._err(str(e))
            logger.exception("Configuration error")
            return EXIT_CONFIG
        except Exception as e:
            self._err(str(e))
            logger.exception("Unexpected error")
            return EXIT_FAIL

        logger.info("Finished: %s", utils.summarise(report))
        self.write_report(report, args)
        return report.exit_code


def configure_debug_logging(log_file=DEFAULT_LOG_FILE):
    logging.basicConfig(
        filename=log_file,
        format="%(asctime)s %(levelname)s %(module)s:%(funcName)s %(message)s",
        level=logging.INFO,
    )

    logging.getLogger("elementary_groups").setLevel(logging.DEBUG)
    logger.setLevel(logging.DEBUG)


def main():
    sys.exit(Cli().run(sys.argv[1:]))


if __name__ == "__main__":
    main()
