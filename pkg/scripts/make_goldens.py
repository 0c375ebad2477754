"""Regenerate tests/golden/*.json from the CLI.

Only run this after checking that a change in output is intended; the
acceptance suite compares against these files byte for byte.
"""

import contextlib
import io
import json
import sys
from pathlib import Path

from conelab.cli import main as cli_main

GOLDEN = Path(__file__).resolve().parents[1] / "tests" / "golden"


def capture(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main(argv)
    return code, buf.getvalue()


def main() -> int:
    cases = json.loads((GOLDEN / "cases.json").read_text())
    for name, argv in cases.items():
        code, out = capture(argv)
        (GOLDEN / f"{name}.out").write_text(out, encoding="utf-8")
        print(f"{name}: exit {code}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
