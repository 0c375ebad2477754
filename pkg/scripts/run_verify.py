"""Sampled image verification for every bundled representation.

Each sample draws a random rational nu, reconstructs Q[nu] from the orbit of
c_eps and checks the certificate independently.
"""

import argparse
import json
import time

from conelab import io
from conelab.orbit import verify_image

REPS = ["sym2-col", "sym3-col", "sym4-col", "sym3-2col", "dual-vinberg-square"]


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true", help="print one JSON object per rep")
    args = p.parse_args()

    for name in REPS:
        t0 = time.perf_counter()
        report = verify_image(io.load_rep(name), args.samples, args.seed)
        dt = time.perf_counter() - t0
        if args.json:
            print(json.dumps({"rep": name, **report}, sort_keys=True))
        else:
            print(f"{name:<22} eps={report['epsilon']} exact={report['exact']:>4} "
                  f"boundary={report['boundary']:>3} failed={report['failed']} "
                  f"{'ok' if report['ok'] else 'FAILED'}  ({dt:.1f}s)")


if __name__ == "__main__":
    main()
