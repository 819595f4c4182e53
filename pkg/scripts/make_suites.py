"""Build the six shipped instance suites under problems/.

Each suite matches the published contest configuration: instance count,
total wall-clock budget (split as evenly as integers allow), and the
submission frequency in minutes. All shipped instances are public, which
mirrors how the original contest ran. Re-running is idempotent: the seeds
are fixed, so files come out byte-identical.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from optjudge.cli import main as cli_main

SUITES = {
    "ruins": {"count": 61, "total_seconds": 2690, "frequency": 180, "seed": 101},
    "painter": {"count": 51, "total_seconds": 2090, "frequency": 180, "seed": 202},
    "chains": {"count": 50, "total_seconds": 2662, "frequency": 180, "seed": 303},
    "fire": {"count": 40, "total_seconds": 13920, "frequency": 360, "seed": 404},
    "knap3d": {"count": 40, "total_seconds": 9600, "frequency": 0, "seed": 505},
    "shop": {"count": 34, "total_seconds": 918, "frequency": 120, "seed": 606},
}


def build(root: Path) -> int:
    for problem_id, cfg in SUITES.items():
        rc = cli_main(
            [
                "generate",
                problem_id,
                "--out", str(root / problem_id),
                "--seed", str(cfg["seed"]),
                "--count", str(cfg["count"]),
                "--total-time", str(cfg["total_seconds"]),
                "--frequency", str(cfg["frequency"]),
            ]
        )
        if rc != 0:
            return rc
        rc = cli_main(["verify", problem_id, "--suite", str(root / problem_id)])
        if rc != 0:
            return rc
    return 0


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--root",
        type=Path,
        default=Path(__file__).resolve().parents[1] / "problems",
        help="directory that receives one suite subdirectory per problem",
    )
    sys.exit(build(parser.parse_args().root))
