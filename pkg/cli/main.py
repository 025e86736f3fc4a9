import argparse
import logging
import os
import sys
from typing import Optional, Sequence

from dotenv import load_dotenv
from rich.logging import RichHandler

from cli.config import PipelineConfig, load_config
from cli.formats import ReportFormat
from cli.pipeline import Pipeline

logger = logging.getLogger(__name__)

LOG_LEVEL_ENV = "AUTOLABEL_LOG_LEVEL"


def configure_logging(verbose: bool = False) -> None:
    load_dotenv()
    level = logging.DEBUG if verbose else os.environ.get(LOG_LEVEL_ENV, "INFO").upper()
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[
            RichHandler(
                rich_tracebacks=True,
                show_path=False,
            )
        ],
        force=True,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="autolabel", description="Automatic author-name disambiguation labeling and supervised disambiguation.")
    parser.add_argument("--config", help="pipeline config JSON")
    parser.add_argument("--seed", type=int, help="override every seed in the config")
    parser.add_argument("--out", help="override the output directory")
    parser.add_argument("--format", choices=[f.value for f in ReportFormat], default=ReportFormat.CSV.value, help="report format")
    parser.add_argument("--verbose", "-v", action="store_true", help="debug logging")

    subparsers = parser.add_subparsers(dest="command", required=True)
    for spec in Pipeline(PipelineConfig()).commands:
        subparser = subparsers.add_parser(spec.name, help=spec.description.splitlines()[0] if spec.description else None)
        for name, field in spec.input_schema.model_fields.items():
            subparser.add_argument(f"--{name.replace('_', '-')}", dest=name, default=field.default)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)

    try:
        config = load_config(args.config, seed=args.seed, output_dir=args.out)
        pipeline = Pipeline(config, ReportFormat(args.format))
        spec = next(c for c in pipeline.commands if c.name == args.command)
        command_args = {name: getattr(args, name) for name in spec.input_schema.model_fields}
        outputs = pipeline.run(args.command, command_args)
    except Exception as e:
        logger.error(f"{args.command} failed: {e}")
        logger.debug("Traceback", exc_info=True)
        return 1

    logger.info(f"{args.command}: wrote {len(outputs)} output(s) to {config.output_dir} (config {config.config_hash[:12]})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
