# =============================================================================
# Apery Congruences - Command-Line Entry Point
# =============================================================================
# This module is the main entry point of the verifier.
#
# Subcommands:
#   verify    run one congruence check over a grid (exact, fast or both)
#   identity  run one identity suite over its bounded grid
#   scan      scan a conjecture (1.2 over primes, 4.4 over n)
#   rep       print the representation p = x^2 + 2y^2 of a prime
#   checks    list the registered checks and identity suites
#   config    show, change or reset the user defaults in config.json
#
# Exit Codes:
#   0  everything passed
#   1  a theorem check failed or the fast and exact paths diverged
#   2  usage or configuration error, unwritable output
#   3  a conjecture counterexample was found (and nothing failed)
#
# Configuration:
#   --config FILE loads a JSON object with the SweepConfig / IdentityConfig
#   field names; flags given on the command line override file values, and
#   the user Config (config.json) supplies jobs, chunk size and the prime
#   power limit when neither does.
#
# Usage:
#   apery-congruences verify --check thm3 --primes 5:200 --x -5:5 --path both
#   apery-congruences rep --prime 41
#   apery-congruences config --set jobs=8 --set chunk_size=32
# =============================================================================

import argparse
import json
import logging
import re
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from apery_congruences import __version__
from apery_congruences.config import Config
from apery_congruences.controllers.congruences import (
    CHECKS,
    CONJECTURE_ALIASES,
    get_check,
)
from apery_congruences.controllers.identities import IDENTITY_SUITES
from apery_congruences.exceptions import ArithmeticInputError, ConfigError
from apery_congruences.models.sweep import (
    IdentityConfig,
    PathChoice,
    SweepConfig,
    SweepSummary,
)
from apery_congruences.services.sweep_service import (
    cross_check,
    run_identities,
    run_sweep,
)
from apery_congruences.utils.primes import brute_force_x2_2y2, represent_x2_2y2
from apery_congruences.utils.validators import (
    parse_int_list,
    parse_range,
    parse_signs,
)

try:
    from pythonjsonlogger.json import JsonFormatter
except ImportError:  # python-json-logger < 3
    from pythonjsonlogger.jsonlogger import JsonFormatter  # type: ignore

# Configure module logger
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

NEGATIVE_VALUE = re.compile(r"^-\d")
RANGE_FIELDS = ("primes", "n")
LIST_FIELDS = ("x", "r", "a", "m")

# Config properties settable with `config --set`, and their value parsers.
# An empty log_file restores the default location.
CONFIG_KEYS: Dict[str, Callable[[str], Any]] = {
    "jobs": int,
    "chunk_size": int,
    "prime_power_limit": int,
    "log_file": lambda value: Path(value) if value else None,
    "lagrange_seed": int,
    "lagrange_samples": int,
}

# Handlers installed by setup_logging, replaced on the next call
_handlers: List[logging.Handler] = []


def setup_logging(
    console_level: int = logging.WARNING, log_file: Optional[Path] = None
) -> None:
    """
    Configure logging.

    Console output is human-readable on stderr (stdout carries results).
    The log file, when given, gets every record at DEBUG as one JSON object
    per line.

    Args:
        console_level: Logging level for console output (default: WARNING)
        log_file: JSON log file, or None for console only
    """
    root_logger = logging.getLogger()
    for handler in _handlers:
        root_logger.removeHandler(handler)
        handler.close()
    _handlers.clear()

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(console_level)
    console_handler.setFormatter(
        logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
    )
    _handlers.append(console_handler)

    if log_file is not None:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(
            JsonFormatter("%(asctime)s %(name)s %(levelname)s %(message)s")
        )
        _handlers.append(file_handler)

    root_logger.setLevel(logging.DEBUG)
    for handler in _handlers:
        root_logger.addHandler(handler)

    logger.debug(f"Logging configured (log file: {log_file})")


# =============================================================================
# Argument parsing
# =============================================================================


def _add_output_args(parser: argparse.ArgumentParser) -> None:
    """Flags shared by verify, identity and scan (all default to None)."""
    parser.add_argument("--config", type=Path, help="JSON file with run settings")
    parser.add_argument("--jobs", type=int, help="Worker processes")
    parser.add_argument(
        "--chunk-size", type=int, help="Outer-axis values per work chunk"
    )
    parser.add_argument("--out", type=Path, help="Record file (JSONL or CSV)")
    parser.add_argument("--checkpoint", type=Path, help="Checkpoint file")
    parser.add_argument("--format", choices=["jsonl", "csv"])
    parser.add_argument(
        "--summary", type=Path, help="Summary CSV (default: <out>.summary.csv)"
    )
    parser.add_argument(
        "--timestamps",
        action="store_true",
        default=None,
        help="Add a wall-clock timestamp to every record",
    )


def _add_grid_args(parser: argparse.ArgumentParser) -> None:
    """Parameter flags of congruence checks."""
    parser.add_argument("--primes", type=parse_range, help="Prime range lo:hi")
    parser.add_argument("--n", type=parse_range, help="Range of n, lo:hi")
    parser.add_argument("--x", type=parse_int_list, help="x values, e.g. -5:5,7")
    parser.add_argument("--r", type=parse_int_list, help="Schmidt exponents")
    parser.add_argument("--a", type=parse_int_list, help="Exponents a")
    parser.add_argument("--m", type=parse_int_list, help="Powers m")
    parser.add_argument("--eps", type=parse_signs, help="Signs, e.g. +1,-1")
    parser.add_argument(
        "--variant",
        type=lambda s: [v.strip() for v in s.split(",") if v.strip()],
        help="Weight variants: kk1, odd_power",
    )
    parser.add_argument("--path", choices=[p.value for p in PathChoice])
    parser.add_argument(
        "--prime-power-limit", type=int, help="Upper bound for p^a"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="apery-congruences",
        description=(
            "Exact verification of congruences for Apery, Schmidt and "
            "Delannoy polynomial sums"
        ),
    )
    parser.add_argument(
        "--log-level",
        choices=["debug", "info", "warning", "error"],
        default="warning",
        help="Console log level (default: warning). The log file logs debug.",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        help="Enable verbose output (same as --log-level=debug)",
    )
    parser.add_argument("--log-file", type=Path, help="JSON log file")
    parser.add_argument(
        "--version", action="version", version=f"Apery Congruences {__version__}"
    )

    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="Run a congruence check")
    verify.add_argument("--check", help="Check id (see `checks`)")
    _add_grid_args(verify)
    _add_output_args(verify)

    identity = commands.add_parser("identity", help="Run an identity suite")
    identity.add_argument("--suite", help="Suite name (see `checks`)")
    for axis in ("ell", "m", "n", "k", "r", "eps"):
        identity.add_argument(
            f"--{axis}", type=parse_range, help=f"Bounds of {axis}, lo:hi"
        )
    identity.add_argument("--seed", type=int, help="Seed for sampled suites")
    identity.add_argument("--samples", type=int, help="Samples per outer value")
    _add_output_args(identity)

    scan = commands.add_parser("scan", help="Scan a conjecture")
    scan.add_argument(
        "--conjecture",
        required=True,
        choices=sorted(CONJECTURE_ALIASES),
        help="1.2 (over primes) or 4.4 (over n)",
    )
    _add_grid_args(scan)
    _add_output_args(scan)

    rep = commands.add_parser("rep", help="Write a prime as x^2 + 2y^2")
    rep.add_argument("--prime", type=int, required=True)
    rep.add_argument(
        "--brute", action="store_true", help="Also print the exhaustive search"
    )

    commands.add_parser("checks", help="List checks and identity suites")

    config = commands.add_parser("config", help="Show or change the user defaults")
    config.add_argument(
        "--set",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help=f"Store a default (keys: {', '.join(CONFIG_KEYS)}); repeatable",
    )
    config.add_argument(
        "--reset", action="store_true", help="Restore every default first"
    )
    return parser


# =============================================================================
# Config assembly
# =============================================================================


def _load_config_file(path: Optional[Path]) -> Dict[str, Any]:
    """
    Read a --config file; string ranges and lists are parsed like flags.

    Raises:
        ConfigError: If the file is not a JSON object
        OSError: If it cannot be read
    """
    if path is None:
        return {}
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"{path} is not valid JSON: {e}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must hold a JSON object")
    for name in RANGE_FIELDS:
        if isinstance(data.get(name), str):
            data[name] = parse_range(data[name])
    for name in LIST_FIELDS:
        if isinstance(data.get(name), str):
            data[name] = parse_int_list(data[name])
    if isinstance(data.get("eps"), str):
        data["eps"] = parse_signs(data["eps"])
    if isinstance(data.get("bounds"), dict):
        data["bounds"] = {
            k: parse_range(v) if isinstance(v, str) else v
            for k, v in data["bounds"].items()
        }
    return data


def _merge(args: argparse.Namespace, names: Sequence[str]) -> Dict[str, Any]:
    """File values overridden by the flags that were actually given."""
    values = _load_config_file(args.config)
    for name in names:
        value = getattr(args, name, None)
        if value is not None:
            values[name] = value
    config = Config.get_instance()
    values.setdefault("jobs", config.jobs)
    values.setdefault("chunk_size", config.chunk_size)
    return values


OUTPUT_NAMES = ("jobs", "chunk_size", "out", "checkpoint", "format", "summary")
GRID_NAMES = ("primes", "n", "x", "r", "a", "m", "eps", "variant", "path")


def _build(model: Callable[..., Any], values: Dict[str, Any]) -> Any:
    try:
        return model(**values)
    except ValidationError as e:
        raise ConfigError(str(e)) from None


def sweep_config_from_args(
    args: argparse.Namespace, check: Optional[str] = None
) -> SweepConfig:
    """
    Build a SweepConfig from parsed flags (and --config).

    Raises:
        ConfigError: On missing or invalid settings
    """
    values = _merge(
        args, OUTPUT_NAMES + GRID_NAMES + ("prime_power_limit", "timestamps")
    )
    if check is not None:
        values["check"] = check
    elif getattr(args, "check", None):
        values["check"] = args.check
    if "check" not in values:
        raise ConfigError("no check given (--check or a config file)")
    values.setdefault("prime_power_limit", Config.get_instance().prime_power_limit)
    return _build(SweepConfig, values)


def identity_config_from_args(args: argparse.Namespace) -> IdentityConfig:
    """
    Build an IdentityConfig from parsed flags (and --config).

    Raises:
        ConfigError: On missing or invalid settings
    """
    values = _merge(args, OUTPUT_NAMES + ("suite", "seed", "samples", "timestamps"))
    bounds = dict(values.get("bounds", {}))
    for axis in ("ell", "m", "n", "k", "r", "eps"):
        value = getattr(args, axis, None)
        if value is not None:
            bounds[axis] = value
    values["bounds"] = bounds
    if "suite" not in values:
        raise ConfigError("no suite given (--suite or a config file)")
    config = Config.get_instance()
    values.setdefault("seed", config.lagrange_seed)
    values.setdefault("samples", config.lagrange_samples)
    return _build(IdentityConfig, values)


# =============================================================================
# Subcommands
# =============================================================================


def _report(summary: SweepSummary) -> int:
    print(
        f"{summary.check}: {summary.tuples} tuples, {summary.passes} pass, "
        f"{summary.fails} fail, {summary.skips} skip, "
        f"{summary.counterexamples} counterexamples, "
        f"{summary.divergences} divergences ({summary.wall_ms} ms)"
    )
    if summary.first_failure is not None:
        print("first failure: " + json.dumps(summary.first_failure))
    return summary.exit_code


def cmd_verify(args: argparse.Namespace) -> int:
    config = sweep_config_from_args(args)
    if config.path is PathChoice.BOTH:
        return _report(cross_check(config))
    return _report(run_sweep(config))


def cmd_identity(args: argparse.Namespace) -> int:
    return _report(run_identities(identity_config_from_args(args)))


def cmd_scan(args: argparse.Namespace) -> int:
    check = CONJECTURE_ALIASES[args.conjecture]
    config = sweep_config_from_args(args, check=check)
    # Scans default to the fast path where one exists
    if "path" not in config.model_fields_set and get_check(check).has_fast:
        config = config.model_copy(update={"path": PathChoice.FAST})
    if config.path is PathChoice.BOTH:
        return _report(cross_check(config))
    return _report(run_sweep(config))


def cmd_rep(args: argparse.Namespace) -> int:
    rep = represent_x2_2y2(args.prime)
    print(rep.describe())
    if args.brute:
        print("brute force: " + brute_force_x2_2y2(args.prime).describe())
    return EXIT_OK


def cmd_checks(args: argparse.Namespace) -> int:
    print("checks:")
    for check_id, definition in sorted(CHECKS.items()):
        fast = ", fast" if definition.has_fast else ""
        axis = definition.axis.value
        inner = "".join(f", {name}" for name in definition.params)
        print(f"  {check_id} ({axis}{inner}; {definition.kind.value}{fast})")
    print("identity suites:")
    for name, suite in sorted(IDENTITY_SUITES.items()):
        print(f"  {name} ({', '.join(suite.axes)})")
    return EXIT_OK


def _parse_setting(text: str) -> Tuple[str, Any]:
    """
    Split a `--set KEY=VALUE` argument and parse the value.

    Raises:
        ConfigError: On an unknown key, a missing "=" or an unparsable value
    """
    key, sep, raw = text.partition("=")
    key = key.strip().replace("-", "_")
    if not sep or key not in CONFIG_KEYS:
        raise ConfigError(
            f"expected KEY=VALUE with KEY one of {', '.join(CONFIG_KEYS)}, "
            f"got {text!r}"
        )
    try:
        return key, CONFIG_KEYS[key](raw.strip())
    except ValueError:
        raise ConfigError(f"invalid value for {key}: {raw!r}") from None


def cmd_config(args: argparse.Namespace) -> int:
    """
    Print the user defaults, after applying --reset and --set if given.

    Nothing is saved unless every setting is valid.
    """
    config = Config.get_instance()
    updates = [_parse_setting(text) for text in args.set]
    if args.reset:
        config.reset_to_defaults()
    for key, value in updates:
        try:
            setattr(config, key, value)
        except ValueError as e:
            raise ConfigError(str(e)) from None
    if args.reset or updates:
        config.save()
        logger.info(f"Saved user defaults to {config.get_config_dir()}")

    print(f"config dir: {config.get_config_dir()}")
    for key in CONFIG_KEYS:
        print(f"  {key} = {getattr(config, key)}")
    return EXIT_OK


def _join_negative_values(argv: Sequence[str]) -> List[str]:
    """
    Turn "--x -5:5" into "--x=-5:5".

    argparse reads a value starting with "-" as an option unless it is a
    plain negative number, which ranges like -5:5 are not.
    """
    joined: List[str] = []
    for token in argv:
        if joined and NEGATIVE_VALUE.match(token):
            previous = joined[-1]
            if previous.startswith("--") and "=" not in previous:
                joined[-1] = f"{previous}={token}"
                continue
        joined.append(token)
    return joined


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "verify": cmd_verify,
    "identity": cmd_identity,
    "scan": cmd_scan,
    "rep": cmd_rep,
    "checks": cmd_checks,
    "config": cmd_config,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Main entry point.

    Returns:
        int: Exit code (see the module header)
    """
    if argv is None:
        argv = sys.argv[1:]
    args = build_parser().parse_args(_join_negative_values(argv))

    if args.verbose:
        console_level = logging.DEBUG
    else:
        console_level = getattr(logging, args.log_level.upper())

    try:
        log_file = args.log_file or Config.get_instance().log_file
        setup_logging(console_level, log_file)
        logger.info(f"apery-congruences {__version__}: {args.command}")
        return COMMANDS[args.command](args)
    except (ConfigError, ArithmeticInputError) as e:
        logger.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, RuntimeError) as e:
        logger.error(f"I/O error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
