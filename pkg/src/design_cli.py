import argparse
import sys

import yaml
from loguru import logger
from pydantic import ValidationError

from design_engine.common.design_errors import DesignProblemError, EnumerationCapError, ProblemFileError
from design_engine.data_models.search_config_data import InitStrategy
from service.design_runner import gen, solve, sweep, verify
from service.service_data_models.logger_config_data import LoggerConfigData
from service.service_utils.logger_utils import config_loggers
from service.service_utils.service_config_loader import load_configs

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CAP_REFUSED = 3


def add_config_args(parser: argparse.ArgumentParser):
    parser.add_argument("--config", type=str, default="config/solver_default.yaml", help="config file to use")
    parser.add_argument("--env", type=str, default="default", help="environment to use in config file")
    parser.add_argument("--log-level", type=str, help="override the configured log level")


def add_search_args(parser: argparse.ArgumentParser):
    parser.add_argument("--time-limit", type=float, help="seconds per independent search")
    parser.add_argument("--back-max", type=int, help="backward steps before an excursion fails")
    parser.add_argument("--n-round", type=int, help="significant digits of the tabu attribute")
    parser.add_argument("--seed", type=int, help="random seed of the run")
    parser.add_argument("--restarts", type=int, help="number of independent searches")
    parser.add_argument("--stall-limit", type=int, help="stop a search after this many steps without improvement")
    parser.add_argument("--init", type=str, choices=[s.value for s in InitStrategy], help="initial design")
    parser.add_argument("--walk-length", type=int, help="forward steps of the random initial walk")
    parser.add_argument("--workers", type=int, help="threads running independent searches")
    parser.add_argument("--out", type=str, help="write the result here instead of stdout")


def parse_param(text: str):
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"Expected KEY=VALUE, got {text!r}")
    return key, yaml.safe_load(value)


def parse_values(text: str):
    """Either START:STOP[:STEP], inclusive, or a comma separated list."""
    if ":" in text:
        parts = [yaml.safe_load(p) for p in text.split(":")]
        if len(parts) not in (2, 3) or not all(isinstance(p, int) for p in parts):
            raise argparse.ArgumentTypeError(f"Expected integer START:STOP[:STEP], got {text!r}")
        start, stop = parts[0], parts[1]
        step = parts[2] if len(parts) == 3 else 1
        if step <= 0:
            raise argparse.ArgumentTypeError(f"Step must be positive, got {step}")
        return list(range(start, stop + 1, step))
    return [yaml.safe_load(v) for v in text.split(",") if v.strip()]


def parse_args(argv=None):
    parser = argparse.ArgumentParser(description="Exact designs of experiments under resource constraints")
    subparsers = parser.add_subparsers(dest="command", required=True)

    solve_parser = subparsers.add_parser("solve", help="run the tabu excursion heuristic on a problem file")
    solve_parser.add_argument("problem", type=str, help="problem file")
    solve_parser.add_argument("--trace", type=str, help="write step events as CSV to this file")
    add_search_args(solve_parser)
    add_config_args(solve_parser)

    verify_parser = subparsers.add_parser("verify", help="enumerate a small problem exhaustively")
    verify_parser.add_argument("problem", type=str, help="problem file")
    verify_parser.add_argument("--compare", action="store_true", help="also run the heuristic and compare")
    verify_parser.add_argument("--cap", type=int, default=10 ** 7, help="largest candidate box to enumerate")
    add_search_args(verify_parser)
    add_config_args(verify_parser)

    gen_parser = subparsers.add_parser("gen", help="write a problem file for a problem family")
    gen_parser.add_argument("family", type=str, choices=["toy", "block", "quadratic", "fluoranthene"])
    gen_parser.add_argument("-p", "--param", type=parse_param, action="append", default=[],
                            help="family parameter as KEY=VALUE, e.g. -p v=16 -p N=40")
    gen_parser.add_argument("--explicit", action="store_true", help="expand into explicit arrays")
    gen_parser.add_argument("--out", type=str, help="write the problem file here instead of stdout")
    gen_parser.add_argument("--log-level", type=str, default="INFO", help="log level")

    sweep_parser = subparsers.add_parser("sweep", help="solve a family over a range of one parameter, as CSV")
    sweep_parser.add_argument("family", type=str, choices=["toy", "block", "quadratic", "fluoranthene"])
    sweep_parser.add_argument("parameter", type=str, help="family parameter to vary, e.g. N, budget or s")
    sweep_parser.add_argument("values", type=parse_values, help="values, e.g. 15:120 or 1100:3900:50 or 40,48,72")
    sweep_parser.add_argument("-p", "--param", type=parse_param, action="append", default=[],
                              help="fixed family parameter as KEY=VALUE")
    sweep_parser.add_argument("--reference", type=str,
                              help="YAML mapping parameter values to approximate designs for efficiencies")
    add_search_args(sweep_parser)
    add_config_args(sweep_parser)
    return parser.parse_args(argv)


def main(argv=None) -> int:
    args = parse_args(argv)
    try:
        if args.command == "gen":
            config_loggers(LoggerConfigData(log_level=args.log_level))
            gen(args.family, dict(args.param), explicit=args.explicit, out=args.out)
            return EXIT_OK
        logger_config, search_config = load_configs(args)
        config_loggers(logger_config)
        if args.command == "solve":
            solve(args.problem, search_config, out=args.out, trace_path=args.trace)
        elif args.command == "sweep":
            sweep(args.family, dict(args.param), args.parameter, args.values, search_config, out=args.out,
                  reference_path=args.reference)
        else:
            verify(args.problem, search_config, compare=args.compare, out=args.out, cap=args.cap)
    except EnumerationCapError as e:
        logger.error(str(e))
        return EXIT_CAP_REFUSED
    except (ProblemFileError, DesignProblemError, ValidationError, FileNotFoundError, ZeroDivisionError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_INVALID
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
