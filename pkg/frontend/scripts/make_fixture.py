"""Regenerate test/fixture.json from live API responses.

Builds the red-wine session (baseline plus one Exclude so the fixture
contains an inactive feature and a two-entry action log), then captures
every read endpoint through the HTTP layer so the frozen payloads carry
exactly the bytes the UI would see.

Run from the repository root:  python3 frontend/scripts/make_fixture.py
Takes a couple of minutes; the result is committed, not rebuilt in CI.
"""

import json
import sys
from pathlib import Path

from fastapi.testclient import TestClient

from featbench.service import create_app
from featbench.session import Session, SessionConfig

ROOT = Path(__file__).resolve().parents[2]
OUT = ROOT / "frontend" / "test" / "fixture.json"


def main() -> int:
    config = SessionConfig.from_file(ROOT / "tests" / "data" / "wine_config.json")
    print("building baseline session...", flush=True)
    session = Session.from_config(config)
    print("applying Exclude F4...", flush=True)
    session.apply_action({"kind": "Exclude", "feature": "F4"})

    client = TestClient(create_app(session))
    fixture = {}
    for key, path in [
        ("session", "/session"),
        ("probabilities", "/probabilities"),
        ("importance", "/importance"),
        ("statistics", "/statistics"),
        # Worst slice: the full dataset is nearly decorrelated, so the
        # default view would freeze an empty edge list
        ("graph", "/graph?slice=Worst&min_cor=0.15"),
        ("transforms", "/transforms/F1"),
        ("log", "/log"),
    ]:
        r = client.get(path)
        r.raise_for_status()
        fixture[key] = r.json()

    OUT.write_text(json.dumps(fixture, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {OUT} ({OUT.stat().st_size} bytes)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
