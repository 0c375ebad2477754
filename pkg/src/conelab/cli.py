"""``conelab`` command line interface.

Exit status: 0 on success, 1 on a validation failure, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from . import io
from .clan import ClanError, dual_algebra, dual_product, normal_decomposition, validate_axioms
from .group import peel_membership
from .orbit import ClassificationError, classify, reconstruct, verify_image
from .quadratic import RepresentationError, validate_rep
from . import linalg as la

COMMANDS = ("validate", "decompose", "dual", "member", "classify", "reconstruct", "verify", "example")


class UsageError(Exception):
    code = "usage_error"


@dataclass
class RunConfig:
    command: str
    clan: str | None = None
    rep: str | None = None
    x: str | None = None
    nu: str | None = None
    samples: int = 100
    seed: int = 0
    format: str = "json"
    skip_validate: bool = False


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="conelab", description="Homogeneous cones via clans.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--clan", help="builtin name (sym:m, dual-vinberg, rank1, diag:r) or JSON file")
    p.add_argument("--rep", help="representation JSON file or bundled fixture name")
    p.add_argument("--x", help="JSON file with an element of V (key 'x')")
    p.add_argument("--nu", help="JSON file with a vector of E (key 'nu')")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--skip-validate", action="store_true")
    return p


def _clan(cfg: RunConfig):
    if cfg.clan is None:
        if cfg.rep is None:
            raise UsageError("--clan is required")
        return None
    return io.load_clan(cfg.clan)


def _rep(cfg: RunConfig):
    if cfg.rep is None:
        raise UsageError("--rep is required")
    clan = _clan(cfg)
    R = io.load_rep(cfg.rep, clan)
    if not cfg.skip_validate:
        report = validate_rep(R, samples=10, seed=cfg.seed)
        if not report.ok:
            return R, report
    return R, None


def _text(obj, indent: str = "") -> str:
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{indent}{k}:")
                lines.append(_text(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {_flat_str(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(_text(v, indent) if isinstance(v, dict) else f"{indent}- {_flat_str(v)}" for v in obj)
    return f"{indent}{obj}"


def _flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _flat_str(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(str(x) for x in v) + "]"
    return str(v)


def run(cfg: RunConfig) -> tuple[int, dict]:
    cmd = cfg.command
    if cfg.samples < 1:
        raise UsageError("--samples must be at least 1")

    if cmd == "validate":
        A = _clan(cfg)
        out = {}
        if A is not None:
            out["clan"] = validate_axioms(A).to_dict()
        if cfg.rep is not None:
            R = io.load_rep(cfg.rep, A)
            out["rep"] = validate_rep(R, samples=10, seed=cfg.seed).to_dict()
        ok = all(v["ok"] for v in out.values())
        return (0 if ok else 1), out

    if cmd == "decompose":
        A = _clan(cfg)
        g = normal_decomposition(A)
        dims = [{"weight": [j, k], "dim": d} for (k, j), d in sorted(g.dims().items())]
        return 0, {"clan": A.name, "rank": g.rank, "dim": A.dim, "weight_spaces": dims}

    if cmd == "dual":
        A = _clan(cfg)
        D = dual_algebra(A)
        n = A.dim
        relation = all(
            la.equal(
                A.product(la.unit(n, a), la.unit(n, b)) - A.product(la.unit(n, b), la.unit(n, a)),
                dual_product(A, la.unit(n, b), la.unit(n, a)) - dual_product(A, la.unit(n, a), la.unit(n, b)),
            )
            for a in range(n)
            for b in range(n)
        )
        report = validate_axioms(D)
        return (0 if relation and report.ok else 1), {
            "dual": io.clan_to_json(D),
            "commutator_relation": relation,
            "axioms_ok": report.ok,
        }

    if cmd == "member":
        A = _clan(cfg)
        if cfg.x is None:
            raise UsageError("--x is required")
        x = io.vector_from_file(cfg.x, "x")
        if len(x) != A.dim:
            raise UsageError(f"x has {len(x)} coordinates, clan has dimension {A.dim}")
        res = peel_membership(A, x)
        out = {"status": res.status.value}
        if res.level is not None:
            out["failed_level"] = res.level
        if res.element is not None:
            out["element"] = io.element_to_json(res.element)
        return 0, out

    if cmd == "example":
        if cfg.rep is not None:
            R = io.load_rep(cfg.rep, _clan(cfg) if cfg.clan else None)
            return 0, io.rep_to_json(R)
        return 0, io.clan_to_json(_clan(cfg))

    R, failed = _rep(cfg)
    if failed is not None:
        return 1, {"error": {"code": "invalid_representation", "message": str(failed)},
                   "report": failed.to_dict()}

    if cmd == "classify":
        eps = classify(R, seed=cfg.seed)
        return 0, {"epsilon": list(eps)}

    if cmd == "reconstruct":
        if cfg.nu is None:
            raise UsageError("--nu is required")
        nu = io.vector_from_file(cfg.nu, "nu")
        if len(nu) != R.dimE:
            raise UsageError(f"nu has {len(nu)} coordinates, E has dimension {R.dimE}")
        return 0, io.certificate_to_json(reconstruct(R, nu))

    if cmd == "verify":
        report = verify_image(R, cfg.samples, cfg.seed)
        return (0 if report["ok"] else 1), report

    raise UsageError(f"unknown command {cmd}")  # pragma: no cover


def emit(payload: dict, fmt: str, stream) -> None:
    if fmt == "json":
        stream.write(io.dumps(payload))
    else:
        stream.write(_text(payload) + "\n")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        clan=args.clan,
        rep=args.rep,
        x=args.x,
        nu=args.nu,
        samples=args.samples,
        seed=args.seed,
        format=args.format,
        skip_validate=args.skip_validate,
    )
    try:
        status, payload = run(cfg)
    except UsageError as exc:
        status, payload = 2, {"error": {"code": "usage_error", "message": str(exc)}}
    except io.ParseError as exc:
        status, payload = 2, {"error": {"code": "parse_error", "field": exc.field, "message": str(exc)}}
    except (ClanError, RepresentationError, ClassificationError) as exc:
        status, payload = 1, {"error": {"code": type(exc).__name__, "message": str(exc)}}
    if status == 2 and cfg.format == "text":
        sys.stderr.write(f"conelab: {payload['error']['message']}\n")
    emit(payload, cfg.format, sys.stdout)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
