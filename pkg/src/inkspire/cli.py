"""Command-line entry points: serve the API, analyze exported event logs."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .service.config import load_config
from .stats import compute_log_stats, events_from_jsonl


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s %(message)s",
    )


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import create_app

    config = load_config(args.config)
    if args.mock:
        for backend in config.backends.values():
            backend.endpoint = "mock"
        config.backends["llm"].endpoint = "synthetic"
    if args.store:
        config.storage_dir = Path(args.store)
    app = create_app(config)
    uvicorn.run(app, host=args.host, port=args.port, log_config=None)
    return 0


def _cmd_stats(args: argparse.Namespace) -> int:
    text = Path(args.events).read_text(encoding="utf-8")
    stats = compute_log_stats(events_from_jsonl(text))
    json.dump(stats.to_dict(), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="inkspire")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP API server")
    serve.add_argument("--config", type=Path, default=None, help="YAML config file")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument(
        "--mock",
        action="store_true",
        help="force all backends to in-process mocks (fixture-free LLM)",
    )
    serve.add_argument("--store", type=Path, default=None, help="session storage directory")
    serve.set_defaults(fn=_cmd_serve)

    stats = sub.add_parser("stats", help="compute sketching statistics from an events JSONL file")
    stats.add_argument("events", type=Path)
    stats.set_defaults(fn=_cmd_stats)

    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
