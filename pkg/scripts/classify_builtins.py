"""Print eps, block dimensions and weight-space dimensions for the bundled representations."""

import argparse

from conelab import io
from conelab.orbit import classify, epsilon_by_dimension, rep_dimensions

REPS = ["sym2-col", "sym3-col", "sym4-col", "sym3-2col", "dual-vinberg-square"]


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("reps", nargs="*", default=REPS)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    print(f"{'rep':<22}{'blocks':<14}{'eps':<16}{'eps (dims)':<16}")
    for name in args.reps:
        R = io.load_rep(name)
        d, vdims = rep_dimensions(R)
        eps = classify(R, seed=args.seed)
        print(f"{name:<22}{str(tuple(d)):<14}{str(eps):<16}{str(epsilon_by_dimension(d, vdims)):<16}")


if __name__ == "__main__":
    main()
