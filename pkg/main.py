# main.py
import logging
import sys
from pathlib import Path

ROOT_DIR = Path(__file__).resolve().parent
DEFAULT_CONFIG_PATH = ROOT_DIR / "config" / "json_config" / "config.json"


def resolve_log_level(verbose: int, config: dict) -> int:
    if verbose >= 2:
        return logging.DEBUG
    if verbose == 1:
        return logging.INFO
    # RADIOMATCH_LOG_LEVEL lands in config["log_level"]
    return getattr(logging, config.get("log_level", "WARNING"), logging.WARNING)


def main(argv=None) -> int:
    from cli.cli_interface import CLIInterface
    from cli.commands import dispatch, parse_args
    from config.config_loader import load_config, validate_config
    from config.runtime_config import RuntimeConfig

    args = parse_args(argv)

    config = load_config(args.config or DEFAULT_CONFIG_PATH)
    validate_config(config)

    # stderr keeps stdout clean for reports written with --output -
    logging.basicConfig(
        level=resolve_log_level(args.verbose, config),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    to_stdout = getattr(args, "output", None) == "-"
    RuntimeConfig.config_data = config
    RuntimeConfig.cli_interface = CLIInterface(
        quiet=args.quiet, stream=sys.stderr if to_stdout else None
    )
    return dispatch(args, config, RuntimeConfig.cli_interface)


if __name__ == "__main__":
    from core.errors import RadioMatchError

    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\nInterrupted.")
        sys.exit(1)
    except RadioMatchError as exc:
        print(f"Error: {exc}", file=sys.stderr)
        sys.exit(2)
