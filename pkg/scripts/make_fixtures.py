"""Regenerate the bundled fixture files in src/conelab/fixtures."""

from pathlib import Path

from conelab import io
from conelab.builtins import build_dual_vinberg_clan
from conelab.quadratic import QuadraticRep, subclan_square_rep, sym_column_rep

OUT = Path(__file__).resolve().parents[1] / "src" / "conelab" / "fixtures"


def write(name: str, payload) -> None:
    (OUT / name).write_text(io.dumps(payload), encoding="utf-8")
    print("wrote", name)


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    for m, cols in [(2, 1), (3, 1), (4, 1), (3, 2)]:
        R = sym_column_rep(m, cols)
        write(f"{R.name}.json", io.rep_to_json(R, f"sym:{m}"))

    sq = subclan_square_rep(build_dual_vinberg_clan())
    write("dual-vinberg-square.json", io.rep_to_json(sq, io.clan_to_json(sq.clan)))

    R = sym_column_rep(2)
    bad = QuadraticRep(R.clan, tuple(2 * p for p in R.phi), R.blocks, R.gram, "sym2-col-doubled")
    write("bad-unit.json", io.rep_to_json(bad, "sym:2"))

    # c1 + 2 a21 + 2 c2 + 2 c3: 2 x1 x2 = u^2, on the boundary
    write("dual-vinberg-boundary-x.json", {"x": ["1", "2", "2", "0", "2"]})
    write("dual-vinberg-interior-x.json", {"x": ["1", "1", "2", "1", "2"]})
    write("sym2-nu.json", {"nu": ["3", "2"]})
    write("sym2-nu-boundary.json", {"nu": ["0", "1"]})
    write("sym3-2col-nu.json", {"nu": ["1", "2", "-1/2", "3", "2", "-1"]})
    write("sym3-2col-nu-boundary.json", {"nu": ["0", "0", "1", "2", "1/3", "-1"]})


if __name__ == "__main__":
    main()
