"""Headless command-line runner and API server launcher.

Runs a scripted session from a config file, writing the metrics-history
CSV, the final importance table JSON, and the exported best dataset into
the output directory; or serves the HTTP API.  Log level comes from the
FEATBENCH_LOG_LEVEL environment variable (default WARNING).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import jsonio
from .session import Session, SessionConfig, SessionError

log = logging.getLogger("featbench")

HISTORY_COLUMNS = (
    "ordinal",
    "kind",
    "subject",
    "accuracy_mean",
    "accuracy_std",
    "wprecision_mean",
    "wprecision_std",
    "wrecall_mean",
    "wrecall_std",
    "combined",
    "became_best",
    "n_active",
)


def _history_csv(history: list[dict]) -> str:
    lines = [",".join(HISTORY_COLUMNS)]
    for row in history:
        cells = []
        for col in HISTORY_COLUMNS:
            v = row[col]
            if isinstance(v, bool):
                cells.append("true" if v else "false")
            elif isinstance(v, float):
                cells.append(f"{v:.{jsonio.SIGNIFICANT_DIGITS}g}")
            else:
                cells.append(str(v))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def write_outputs(session: Session, out_dir: Path) -> dict:
    out_dir.mkdir(parents=True, exist_ok=True)
    history_path = out_dir / "metrics_history.csv"
    history_path.write_text(_history_csv(session.metrics_history), encoding="utf-8")
    table_path = out_dir / "importance.json"
    table_path.write_text(jsonio.dumps(session.table.to_dict()), encoding="utf-8")
    csv_path, sidecar_path = session.export_best(out_dir)
    return {
        "history": history_path,
        "importance": table_path,
        "best_csv": csv_path,
        "best_sidecar": sidecar_path,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="featbench",
        description="Scripted feature-engineering sessions and API server.",
    )
    parser.add_argument("--config", required=True, help="session config JSON")
    parser.add_argument("--script", help="JSON list of action requests to apply")
    parser.add_argument("--out", default=".", help="output directory for reports")
    parser.add_argument("--seed", type=int, help="override the config rng seed")
    parser.add_argument("--serve", metavar="ADDR:PORT", help="serve the HTTP API instead")
    return parser


def load_script(path: str) -> list[dict]:
    try:
        requests = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SessionError(f"script file {path} is not valid JSON: {exc}") from exc
    if not isinstance(requests, list):
        raise SessionError(f"script file {path} must hold a JSON list of actions")
    return requests


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("FEATBENCH_LOG_LEVEL", "WARNING").upper())
    args = build_parser().parse_args(argv)

    try:
        config = SessionConfig.from_file(args.config)
        if args.seed is not None:
            config = SessionConfig.from_dict({**config.to_dict(), "seed": args.seed})

        if args.serve:
            return _serve(config, args.serve)

        log.info("building session from %s", config.csv_path)
        session = Session.from_config(config)
        if args.script:
            requests = load_script(args.script)
            log.info("applying %d scripted steps", len(requests))
            session.apply_script(requests)
        paths = write_outputs(session, Path(args.out))
    except (SessionError, ValueError, OSError) as exc:
        print(f"featbench: {exc}", file=sys.stderr)
        return 1

    for name, path in paths.items():
        log.info("wrote %s: %s", name, path)
    print(
        f"actions={len(session.actions)} n_active={len(session.dataset.active_names)} "
        f"best_ordinal={session.best.ordinal} combined={session.best.combined:.{jsonio.SIGNIFICANT_DIGITS}g}"
    )
    return 0


def _serve(config: SessionConfig, addr: str) -> int:
    import uvicorn

    from .service import create_app

    host, _, port = addr.rpartition(":")
    if not host or not port.isdigit():
        print(f"featbench: --serve expects ADDR:PORT, got {addr!r}", file=sys.stderr)
        return 1
    session = Session.from_config(config)
    app = create_app(session, static_dir=os.environ.get("FEATBENCH_UI_DIR"))
    uvicorn.run(app, host=host, port=int(port), log_level="warning")
    return 0


if __name__ == "__main__":
    sys.exit(main())
