import io
import json
import shutil
import subprocess
import sys

import pytest

from imean import bim, rook
from imean.affine import AFFINE, AffineMap
from imean.cli import run
from imean.paradox import ParadoxCertificate
from imean.typemonoid import TypePresentation


def call(tmp_path, args, payload=None):
    if payload is not None:
        path = tmp_path / "in.json"
        path.write_text(json.dumps(payload))
        args = [a if a != "@" else str(path) for a in args]
    buf = io.StringIO()
    code = run(args, out=buf)
    text = buf.getvalue()
    return code, (json.loads(text) if code == 0 and "--format" not in args else text)


def test_solve(tmp_path):
    code, out = call(tmp_path, ["solve", "@"], {"semisimple": [3]})
    assert code == 0 and out["status"] == "unique" and out["witness"] == {"g0": "1/3"}
    code, out = call(tmp_path, ["solve", "@"], {"ground": 3, "generators": [[[0, 1]], [[1, 2]]]})
    assert code == 0 and out["status"] in ("unique", "polytope")


def test_monoid_and_check(tmp_path):
    code, out = call(tmp_path, ["monoid", "@"], {"semisimple": [1, 2]})
    assert code == 0 and out["size"] == 14 and not out["zero_simplifying"]
    code, out = call(tmp_path, ["check", "@", "--seed", "3"], {"semisimple": [3]})
    assert code == 0 and out["axioms"]["ok"] and out["kuratowski"] and out["rook_round_trip"]


def test_tower(tmp_path):
    t2 = {"levels": [[1], [2], [4], [8]], "maps": [[[2]], [[2]], [[2]]]}
    code, out = call(tmp_path, ["tower", "uhf", "@", "--depth", "3"], t2)
    assert code == 0 and out["values"] == ["1", "1/2", "1/4", "1/8"]
    code, out = call(tmp_path, ["tower", "mean", "@", "--depth", "3"], dict(t2, seed=["1/8"]))
    assert out["levels"] == [["1"], ["1/2"], ["1/4"], ["1/8"]]
    code, _ = call(tmp_path, ["tower", "validate", "@"], {"levels": [[1], [1, 2]], "maps": [[[1], [1]]]})
    assert code == 1
    code, _ = call(tmp_path, ["tower", "mean", "@"], t2)
    assert code == 2


def test_type(tmp_path):
    code, out = call(tmp_path, ["type", "present", "@"], {"semisimple": [2, 1]})
    assert out == {"generators": ["g0", "g1"], "relations": [], "unit": {"g0": 2, "g1": 1}}
    P = TypePresentation.from_json(out)
    assert P.unit.coeffs == (2, 1)
    code, out = call(tmp_path, ["type", "leq", "@"], {"monoid": {"semisimple": [3]}, "x": {"g0": 2}, "y": {"g0": 3}})
    assert out["leq"] == "true"
    pres = {"generators": ["u"], "relations": [[{"u": 1}, {"u": 2}]], "unit": {"u": 1}}
    code, out = call(tmp_path, ["type", "obstruction", "@", "--n-max", "3"], pres)
    assert out["n"] == 1
    code, out = call(tmp_path, ["type", "obstruction", "@"], {"semisimple": [3]})
    assert out["n"] is None


def test_rook(tmp_path):
    S = bim.symmetric(3)
    A = rook.RookMatrix(S, 1, 2, {(0, 0): bim.PartialBijection(3, [(0, 1)])})
    payload = {"monoid": {"semisimple": [3]}, "A": A.to_json(), "B": rook.star(A).to_json()}
    code, out = call(tmp_path, ["rook", "star", "@"], payload)
    assert rook.from_json(out, S) == rook.star(A)
    code, out = call(tmp_path, ["rook", "mul", "@"], payload)
    assert rook.from_json(out, S) == A * rook.star(A)
    code, out = call(tmp_path, ["rook", "validate", "@"], payload)
    assert out == {"valid": True}
    T = rook.RookMatrix(AFFINE, 1, 2, {(0, 0): AffineMap.affine(2), (0, 1): AffineMap.affine(2, 1)})
    code, out = call(tmp_path, ["rook", "tarski", "@"], {"monoid": "affine", "A": T.to_json(), "m": 1})
    assert out["tarski"] is True


def test_paradox(tmp_path):
    gens = {"generators": [AffineMap.affine(2).to_json(), AffineMap.affine(2, 1).to_json()]}
    code, out = call(tmp_path, ["paradox", "detect", "@", "--max-word", "1"], gens)
    assert code == 0 and out["found"] and out["certificate"]["kind"] == "weak"
    cert = ParadoxCertificate.from_json(out["certificate"])
    assert cert.verify()
    code, out = call(tmp_path, ["paradox", "detect", "@", "--max-word", "2"],
                     {"generators": [AffineMap.identity().to_json()]})
    assert out == {"found": False, "summary": "not found <= 2"}
    code, out = call(tmp_path, ["paradox", "upgrade", "@"],
                     {"certificate": cert.to_json(), "witness": AffineMap.affine(2, 1).to_json()})
    assert out["certificate"]["kind"] == "strong"
    code, out = call(tmp_path, ["paradox", "amplify", "@"],
                     {"a": AffineMap.affine(2).to_json(), "pencil": [AffineMap.affine(2, 1).to_json()]})
    assert ParadoxCertificate.from_json(out["certificate"]).verify()
    kur = {"E": [0, 1], "M": [0], "N": [1], "phi": [[0, 1]], "E2": [0, 1], "P": [0], "Q": [1],
           "psi": [[0, 1]], "alpha": [[0, 0], [1, 1]]}
    code, out = call(tmp_path, ["paradox", "kuratowski", "@"], kur)
    assert out["bijection"] == [[0, 1]] and out["pieces"][0]["word"] == ["psi", "alpha"]


def test_exit_codes(tmp_path):
    code, _ = call(tmp_path, ["solve", str(tmp_path / "missing.json")])
    assert code == 2
    (tmp_path / "bad.json").write_text("{not json")
    assert call(tmp_path, ["solve", str(tmp_path / "bad.json")])[0] == 2
    assert call(tmp_path, ["solve", "@", "--bogus"], {"semisimple": [2]})[0] == 2
    assert call(tmp_path, ["paradox", "upgrade", "@"],
                {"certificate": ParadoxCertificate("weak", AffineMap.affine(2), AffineMap.affine(2, 1)).to_json(),
                 "witness": AffineMap.affine(4, 1).to_json()})[0] == 1
    assert call(tmp_path, ["rook", "validate", "@"], {"A": {"rows": 1, "cols": 1, "entries": []},
                                                       "monoid": {"ground": 4, "generators": [], "cap": 1}})[0] == 1


def test_text_format(tmp_path):
    code, out = call(tmp_path, ["solve", "@", "--format", "text"], {"semisimple": [2]})
    assert code == 0 and "status: unique" in out


@pytest.mark.skipif(shutil.which("imean") is None, reason="console script not installed")
def test_console_script(tmp_path):
    path = tmp_path / "i3.json"
    path.write_text(json.dumps({"semisimple": [3]}))
    res = subprocess.run(["imean", "solve", str(path)], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["witness"] == {"g0": "1/3"}


def test_module_entry_point(tmp_path):
    path = tmp_path / "i2.json"
    path.write_text(json.dumps({"semisimple": [2]}))
    res = subprocess.run([sys.executable, "-m", "imean.cli", "solve", str(path)], capture_output=True, text=True)
    assert res.returncode == 0
