"""Residuals of the limiting family for a boundary point Q[nu] (E_1 part of nu is zero)."""

import argparse

from conelab import io
from conelab.orbit import reconstruct


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--rep", default="sym3-2col")
    p.add_argument("--nu", default="sym3-2col-nu-boundary")
    p.add_argument("--tol", type=float, default=1e-9)
    args = p.parse_args()

    R = io.load_rep(args.rep)
    cert = reconstruct(R, io.vector_from_file(args.nu, "nu"), tol=args.tol)
    print(f"eps={cert.epsilon} kind={cert.kind}")
    for s, r in zip(cert.schedule, cert.residuals):
        print(f"s={str(s):>14}  residual={r:.3e}")


if __name__ == "__main__":
    main()
