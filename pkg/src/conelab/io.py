"""JSON formats for clans, representations, group elements and certificates.

Exact quantities are written as ``"p/q"`` strings (``"3"`` when ``q = 1``);
floats only appear in residual arrays.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np

from . import linalg as la
from .builtins import builtin_clan
from .clan import Algebra, Clan, ClanError, graded_clan
from .group import GroupElement
from .orbit import OrbitCertificate
from .quadratic import QuadraticRep

FIXTURE_DIR = Path(__file__).parent / "fixtures"


class ParseError(ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def fixture_dir() -> Path:
    return Path(os.environ.get("CONELAB_FIXTURES", FIXTURE_DIR))


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def rat(value: str | int, field: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(field, f"expected a 'p/q' string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str) or "." in value or "e" in value.lower():
        raise ParseError(field, f"expected a decimal-free 'p/q' string, got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(field, f"bad rational {value!r} ({exc})") from None


def rat_str(q) -> str:
    return str(Fraction(q))


def rat_vector(values, field: str) -> np.ndarray:
    if not isinstance(values, list):
        raise ParseError(field, "expected a list")
    return la.vector([rat(v, f"{field}[{i}]") for i, v in enumerate(values)])


def rat_matrix(rows, field: str) -> np.ndarray:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError(field, "expected a list of rows")
    if rows and len({len(r) for r in rows}) != 1:
        raise ParseError(field, "ragged matrix")
    out = la.zeros(len(rows), len(rows[0]) if rows else 0)
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            out[i, j] = rat(v, f"{field}[{i}][{j}]")
    return out


def _require(data: dict, key: str, where: str):
    if key not in data:
        raise ParseError(f"{where}.{key}", "missing field")
    return data[key]


def read_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(str(path), f"invalid JSON at line {exc.lineno}: {exc.msg}") from None


def resolve(name: str) -> Path | None:
    """A path as given, or a bundled fixture name."""
    p = Path(name)
    if p.is_file():
        return p
    for cand in (fixture_dir() / name, fixture_dir() / f"{name}.json"):
        if cand.is_file():
            return cand
    return None


# ---------------------------------------------------------------------------
# clans


def clan_to_json(A: Clan) -> dict:
    n = A.dim
    consts = [
        {"a": a, "b": b, "c": c, "value": rat_str(A.constants[a, b, c])}
        for a in range(n)
        for b in range(n)
        for c in range(n)
        if A.constants[a, b, c] != 0
    ]
    return {
        "name": A.name,
        "rank": A.rank,
        "dim": n,
        "basis": [{"weight": [j, k]} for k, j in A.weights],
        "structure_constants": consts,
        "s0": [rat_str(v) for v in A.s0],
    }


def clan_from_json(data: dict, where: str = "clan") -> Clan:
    if not isinstance(data, dict):
        raise ParseError(where, "expected an object")
    n = _require(data, "dim", where)
    if not isinstance(n, int) or n < 0:
        raise ParseError(f"{where}.dim", "expected a nonnegative integer")
    consts = la.zeros(n, n, n)
    for i, entry in enumerate(_require(data, "structure_constants", where)):
        f = f"{where}.structure_constants[{i}]"
        try:
            a, b, c = entry["a"], entry["b"], entry["c"]
        except (KeyError, TypeError):
            raise ParseError(f, "need integer fields a, b, c") from None
        if not all(isinstance(t, int) and 0 <= t < n for t in (a, b, c)):
            raise ParseError(f, "index out of range")
        consts[a, b, c] = rat(_require(entry, "value", f), f"{f}.value")
    s0 = rat_vector(_require(data, "s0", where), f"{where}.s0")
    if len(s0) != n:
        raise ParseError(f"{where}.s0", f"expected {n} entries")
    name = data.get("name", "")

    if "idempotents" in data:
        cs = [rat_vector(c, f"{where}.idempotents[{i}]") for i, c in enumerate(data["idempotents"])]
        clan, _ = graded_clan(Algebra(consts, s0), cs, name)
        return clan

    basis = _require(data, "basis", where)
    if len(basis) != n:
        raise ParseError(f"{where}.basis", f"expected {n} entries")
    weights = []
    for i, b in enumerate(basis):
        w = b.get("weight") if isinstance(b, dict) else None
        if not (isinstance(w, list) and len(w) == 2 and all(isinstance(t, int) for t in w)):
            raise ParseError(f"{where}.basis[{i}].weight", "expected [j, k]")
        j, k = w
        weights.append((k, j))
    if "rank" in data and data["rank"] != sum(1 for k, j in weights if k == j):
        raise ParseError(f"{where}.rank", "does not match the number of (j, j) weights")
    try:
        return Clan(consts, s0, tuple(weights), name)
    except ClanError as exc:
        raise ParseError(where, str(exc)) from None


def load_clan(name: str) -> Clan:
    """Built-in name (``sym:m``, ``dual-vinberg``, ``rank1``, ``diag:r``) or a JSON path."""
    try:
        return builtin_clan(name)
    except ClanError:
        pass
    path = resolve(name)
    if path is None:
        raise ParseError("clan", f"no builtin or file named {name!r}")
    return clan_from_json(read_json(path))


# ---------------------------------------------------------------------------
# representations


def rep_to_json(R: QuadraticRep, clan_ref: str | dict | None = None) -> dict:
    m = R.dimE
    out = {
        "name": R.name,
        "clan": clan_ref if clan_ref is not None else R.clan.name,
        "dimE": m,
        "basis_blocks": list(R.blocks),
        "phi": [[[rat_str(v) for v in row] for row in p] for p in R.phi],
    }
    if not la.equal(R.gram, la.identity(m)):
        out["gramE"] = [[rat_str(v) for v in row] for row in R.gram]
    return out


def rep_from_json(data: dict, clan: Clan | None = None) -> QuadraticRep:
    where = "rep"
    if not isinstance(data, dict):
        raise ParseError(where, "expected an object")
    if clan is None:
        ref = _require(data, "clan", where)
        clan = clan_from_json(ref, "rep.clan") if isinstance(ref, dict) else load_clan(ref)
    m = _require(data, "dimE", where)
    if not isinstance(m, int) or m < 0:
        raise ParseError("rep.dimE", "expected a nonnegative integer")
    phi_raw = _require(data, "phi", where)
    if len(phi_raw) != clan.dim:
        raise ParseError("rep.phi", f"expected {clan.dim} matrices, one per clan basis vector")
    phi = []
    for i, p in enumerate(phi_raw):
        mat = rat_matrix(p, f"rep.phi[{i}]") if m else la.zeros(0, 0)
        if mat.shape != (m, m):
            raise ParseError(f"rep.phi[{i}]", f"expected a {m} x {m} matrix")
        phi.append(mat)
    blocks = _require(data, "basis_blocks", where)
    if len(blocks) != clan.rank or sum(blocks) != m:
        raise ParseError("rep.basis_blocks", f"need {clan.rank} sizes summing to {m}")
    gram = rat_matrix(data["gramE"], "rep.gramE") if "gramE" in data else la.identity(m)
    if gram.shape != (m, m):
        raise ParseError("rep.gramE", f"expected a {m} x {m} matrix")
    return QuadraticRep(clan, tuple(phi), tuple(blocks), gram, data.get("name", ""))


def load_rep(name: str, clan: Clan | None = None) -> QuadraticRep:
    path = resolve(name)
    if path is None:
        raise ParseError("rep", f"no file or bundled fixture named {name!r}")
    return rep_from_json(read_json(path), clan)


# ---------------------------------------------------------------------------
# group elements and certificates


def sparse(v) -> list[dict]:
    return [{"i": i, "value": rat_str(c)} for i, c in enumerate(v) if c != 0]


def from_sparse(entries, n: int, field: str) -> np.ndarray:
    out = la.zeros(n)
    for k, e in enumerate(entries):
        f = f"{field}[{k}]"
        if not isinstance(e, dict) or not isinstance(e.get("i"), int) or not 0 <= e["i"] < n:
            raise ParseError(f, "expected {'i': index, 'value': 'p/q'}")
        out[e["i"]] = rat(_require(e, "value", f), f"{f}.value")
    return out


def element_to_json(g: GroupElement) -> dict:
    """Exact mode stores ``h_j^2`` and the scaled nilpotent parts ``h_j v_j``."""
    if g.exact:
        return {"h_squared": [rat_str(h) for h in g.h_squared], "v": [sparse(p) for p in g.scaled]}
    return {
        "h": [float(g.h(j)) for j in range(1, g.rank + 1)],
        "v": [[float(c) for c in g.v(j)] for j in range(1, g.rank)],
    }


def element_from_json(data: dict, A: Clan) -> GroupElement:
    if "h_squared" in data:
        h2 = tuple(rat(v, f"h_squared[{i}]") for i, v in enumerate(data["h_squared"]))
        vs = tuple(from_sparse(v, A.dim, f"v[{i}]") for i, v in enumerate(data.get("v", [])))
        return GroupElement(h2, vs)
    h = [float(x) for x in _require(data, "h", "element")]
    vs = [np.array([float(c) for c in v], dtype=object) for v in data.get("v", [])]
    return GroupElement(tuple(x * x for x in h), tuple(h[j] * vs[j] for j in range(len(vs))))


def certificate_to_json(cert: OrbitCertificate) -> dict:
    g = cert.final_element
    return {
        "epsilon": list(cert.epsilon),
        "kind": cert.kind,
        "h_squared": [rat_str(h) for h in g.h_squared],
        "v": [sparse(p) for p in g.scaled],
        "q_nu": [rat_str(c) for c in cert.target],
        "schedule": [rat_str(s) for s in cert.schedule],
        "residuals": list(cert.residuals),
    }


def vector_from_file(path: str, key: str) -> np.ndarray:
    p = resolve(path)
    if p is None:
        raise ParseError(key, f"no file named {path!r}")
    data = read_json(p)
    if isinstance(data, dict):
        data = _require(data, key, str(p))
    return rat_vector(data, key)
