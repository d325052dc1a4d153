"""Regenerate the fixture session and the golden CLI reports.

    python tests/fixtures/make_fixtures.py

Goldens are written under golden/<command>/<case>.json.  Review a diff of
them before committing: the acceptance suite compares against these bytes.
"""
from __future__ import annotations

import json
import pathlib
import sys
import tempfile

from hfpkit.cli import Session, main, serialize
from hfpkit.descent import principal_from_cocycle
from hfpkit.equivariant import eg_pullback
from hfpkit.groups import FiniteGroup, GroupAction
from hfpkit.homalg.chain import ChainComplex, ChainMap
from hfpkit.homalg.modules import GModule
from hfpkit.homalg.nonabelian import Cocycle1
from hfpkit.localglobal import PlaceFamily
from hfpkit.simplicial.constructions import circle

HERE = pathlib.Path(__file__).resolve().parent
SESSION = HERE / "session.json"
COMMANDS = HERE / "commands.json"
GOLDEN = HERE / "golden"


def _model(kind, **kw):
    # model entries are rebuilt by the session loader from their descriptors
    return {"kind": kind, **kw}


def build_session() -> dict:
    Z2, Z3, Z4 = FiniteGroup.cyclic(2), FiniteGroup.cyclic(3), FiniteGroup.cyclic(4)
    S3, V4 = FiniteGroup.symmetric(3), FiniteGroup.klein()
    s = Session()
    for name, G in [("Z2", Z2), ("Z3", Z3), ("Z4", Z4), ("S3", S3), ("V4", V4)]:
        G.name = name
        s.add("groups", name, G)

    triv = GroupAction.trivial(Z2, Z2)
    inv3 = GroupAction(Z2, Z3, [(0, 1, 2), (0, 2, 1)])
    t = S3.index("(1 2)")
    conj = GroupAction(Z2, S3, [tuple(S3.elements),
                                tuple(S3.mul(S3.mul(t, x), t) for x in S3.elements)])
    s.add("actions", "z2_on_z2", triv, "trivial action")
    s.add("actions", "z2_inv_z3", inv3, "inversion")
    s.add("actions", "z2_conj_s3", conj, "conjugation by a transposition")

    s.add("modules", "z2_triv", GModule(Z2, [2], None, name="z2_triv"))
    s.add("modules", "z3_inv", GModule(Z2, [3], [[[1]], [[-1]]], name="z3_inv"))
    s.add("modules", "v4_z2", GModule(V4, [2], None, name="v4_z2"))

    A = ChainComplex(0, 0, {0: [2]}, {}, group=Z2, name="A")
    B = ChainComplex(0, 0, {0: [4]}, {}, group=Z2, name="B")
    C = ChainComplex(0, 0, {0: [2]}, {}, group=Z2, name="C")
    D = ChainComplex(0, 1, {0: [2], 1: [2]}, {1: [[0]]}, group=Z2, name="D")
    for name, K in [("A", A), ("B", B), ("C", C), ("D", D)]:
        s.add("complexes", name, K)
    s.add("maps", "i", ChainMap(A, B, {0: [[2]]}), "Z/2 -> Z/4")
    s.add("maps", "p", ChainMap(B, C, {0: [[1]]}), "Z/4 -> Z/2")

    s.add("spaces", "circle", circle(3))
    sign = tuple(0 if S3.labels[g] in ("()", "(1 2 3)", "(1 3 2)") else 1 for g in S3.elements)
    s.add("spaces", "eg_sign", eg_pullback(S3, Z2, sign, 2), "E(Z2) with S3 acting through the sign")

    specs = {
        "bz2": _model("bg", action="z2_on_z2", dim=3),
        "k_z3inv_2": _model("em", module="z3_inv", degree=2),
        "twisted": _model("twisted", pi="Z2", module="z2_triv", group="Z2", kappa=[1]),
        "p1_z4": _model("p1", group="Z4", normal=["0", "2"]),
        "k_v4_1": _model("em", module="v4_z2", degree=1),
        "swap": _model("discrete", group="Z2", perms={"0": [0, 1], "1": [1, 0]}),
    }
    data = json.loads(serialize(s))
    data["models"] = specs

    cyc = PlaceFamily.cyclic(V4)
    two = PlaceFamily.unramified(V4, [H for H, _ in cyc.places
                                      if V4.labels[H[1]] in ("(0,1)", "(1,0)")])
    fam = {"v4_cyclic": cyc.to_json(), "v4_axes": two.to_json()}
    for d in fam.values():
        d["group"] = "V4"
    data["families"] = fam

    tors = principal_from_cocycle(inv3, (0, 1)).to_json()
    tors.update(group="Z3", galois="Z2")
    tors3 = principal_from_cocycle(conj, (0, t)).to_json()
    tors3.update(group="S3", galois="Z2")
    data["torsors"] = {"z3_twisted": tors, "s3_conj": tors3}
    data["cocycles"] = {
        "alpha_s3": {"action": "z2_conj_s3", "values": Cocycle1(conj, (0, t)).to_json()},
        "u_z3": {"action": "z2_inv_z3", "values": Cocycle1(inv3, (0, 1)).to_json()},
    }
    data["towers"] = {"chain": {"sizes": [2, 3, 2, 2], "maps": [[0, 1, 1], [0, 2], [1, 0]]},
                      "dead_end": {"sizes": [1, 2, 0], "maps": [[0, 0], []]}}
    return data


# (case name, argv after the command)
CASES = {
    "cosk": [("circle_1", ["--space", "circle", "--level", "1"])],
    "postnikov": [("circle_1", ["--space", "circle", "--level", "1"])],
    "eg": [("s3", ["--group", "S3"])],
    "bg": [("z3", ["--group", "Z3"])],
    "pi1": [("bz2", ["--space", "bz2"])],
    "quotient-pi1": [("eg_sign", ["--space", "eg_sign"])],
    "hfp": [("bz2", ["--space", "bz2"]), ("twisted", ["--space", "twisted"])],
    "hfp-brute": [("bz2", ["--space", "bz2"]), ("swap", ["--space", "swap"])],
    "sections": [("z4", ["--group", "Z4", "--normal", "0,2"]),
                 ("s3_conj", ["--action", "z2_conj_s3"])],
    "obstruction": [("twisted", ["--space", "twisted"])],
    "e2": [("k_z3inv_2", ["--space", "k_z3inv_2"])],
    "cohomology": [("z3_inv_2", ["--module", "z3_inv", "--degree", "2"]),
                   ("z2_2", ["--module", "z2_triv", "--degree", "2"])],
    "h1na": [("s3_conj", ["--action", "z2_conj_s3"])],
    "twist": [("alpha_s3", ["--cocycle", "alpha_s3"])],
    "dold-kan": [("D", ["--complex", "D", "--dim", "3"])],
    "hyperc": [("D_1", ["--complex", "D", "--degree", "1"])],
    "les": [("z2_z4_z2", ["--inclusion", "i", "--projection", "p", "--degrees", "0..2"])],
    "classify-torsor": [("z3_twisted", ["--torsor", "z3_twisted"]),
                        ("s3_conj", ["--torsor", "s3_conj"])],
    "cocycle-extract": [("u_z3", ["--cocycle", "u_z3"])],
    "localize": [("k_v4_1", ["--space", "k_v4_1", "--family", "v4_cyclic"])],
    "sha": [("n1", ["--module", "v4_z2", "--degree", "1", "--family", "v4_cyclic"]),
            ("n2", ["--module", "v4_z2", "--degree", "2", "--family", "v4_cyclic"]),
            ("n2_axes", ["--module", "v4_z2", "--degree", "2", "--family", "v4_axes"])],
    "obstruction-set": [("k_v4_1", ["--space", "k_v4_1", "--family", "v4_cyclic"])],
    "limit": [("chain", ["--tower", "chain"]), ("dead_end", ["--tower", "dead_end"])],
    "selftest": [("seed0", [])],
}


def run_case(command: str, argv: list, session=SESSION) -> tuple:
    """(exit code, report bytes) of one CLI invocation."""
    with tempfile.TemporaryDirectory() as d:
        out = pathlib.Path(d) / "out.json"
        code = main(["--session", str(session), "--out", str(out), command, *argv])
        return code, out.read_bytes() if out.exists() else b""


def write_all() -> None:
    data = build_session()
    # canonical text is whatever the loader serializes back
    from hfpkit.cli import session_from_dict
    SESSION.write_text(serialize(session_from_dict(data)), encoding="utf-8")
    COMMANDS.write_text(json.dumps(CASES, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    for command, cases in CASES.items():
        folder = GOLDEN / command
        folder.mkdir(parents=True, exist_ok=True)
        for case, argv in cases:
            code, text = run_case(command, argv)
            if code != 0:
                print(f"{command}/{case}: exit {code}", file=sys.stderr)
            (folder / f"{case}.json").write_bytes(text)


if __name__ == "__main__":
    write_all()
