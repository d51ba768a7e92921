"""``imean`` command line: read a JSON description, run one computation, print a report.

Exit status is 0 on success, 1 on a domain error and 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import af_tower, bim, means, paradox, rook, typemonoid
from .affine import AFFINE, AffineMap
from .errors import ImeanError
from .exact import fmt
from .pbij import points_of

DEFAULT_SEED = 20240501


class InputError(Exception):
    """Malformed input; maps to exit status 2."""


def _load(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _monoid(spec, cap):
    if spec == "affine":
        return AFFINE
    if not isinstance(spec, dict):
        raise InputError("a monoid spec must be an object or the string 'affine'")
    if cap is not None and "semisimple" not in spec:
        spec = dict(spec, cap=cap)
    return bim.from_spec(spec)


def _is_presentation(obj) -> bool:
    return isinstance(obj, dict) and "generators" in obj and "unit" in obj


# -- verbs --------------------------------------------------------------------

def cmd_monoid(args):
    S = _monoid(_load(args.input), args.cap)
    return {
        "ground": S.n,
        "size": S.size,
        "idempotents": len(S.idempotents),
        "atoms": [points_of(a) for a in S.atoms],
        "atom_classes": [[points_of(a) for a in cls] for cls in S.atom_classes],
        "d_equals_j": bim.check_d_eq_j(S),
        "zero_simplifying": bim.is_zero_simplifying(S),
    }


def cmd_solve(args):
    S = _monoid(_load(args.input), args.cap)
    sol = means.solve(S)
    out = sol.to_json()
    if sol.witness is not None:
        out["faithful"] = means.is_faithful(S, sol.witness)
    return out


def _presentation(obj, cap):
    if _is_presentation(obj):
        return typemonoid.TypePresentation.from_json(obj)
    return typemonoid.present(_monoid(obj, cap))


def cmd_type(args):
    obj = _load(args.input)
    if args.action == "present":
        return _presentation(obj, args.cap).to_json()
    if args.action == "leq":
        src = obj.get("presentation", obj.get("monoid"))
        if src is None or "x" not in obj or "y" not in obj:
            raise InputError("leq needs 'presentation' or 'monoid', plus 'x' and 'y'")
        P = _presentation(src, args.cap)
        x, y = P.element(obj["x"]), P.element(obj["y"])
        return {"leq": typemonoid.leq(P, x, y, args.bound).value, "bound": args.bound}
    P = _presentation(obj, args.cap)
    ob = typemonoid.tarski_obstruction(P, args.n_max, args.bound)
    return {"n": ob.n, "n_max": ob.n_max, "inconclusive": list(ob.inconclusive), "summary": ob.describe()}


def cmd_rook(args):
    obj = _load(args.input)
    base = _monoid(obj.get("monoid", "affine"), args.cap)
    A = rook.from_json(obj["A"], base)
    if args.action == "mul":
        B = rook.from_json(obj["B"], base)
        return rook.product(A, B).to_json()
    if args.action == "star":
        return rook.star(A).to_json()
    if args.action == "validate":
        return {"valid": rook.validate(A)}
    m = int(obj.get("m", A.rows if A.rows != rook.OMEGA else 1))
    return {"tarski": rook.is_tarski(A, m), "degree": m}


def cmd_tower(args):
    obj = _load(args.input)
    T = af_tower.AFTower.from_json(obj)
    if args.action == "validate":
        return {"valid": af_tower.validate_tower(T), "depth": T.depth}
    depth = T.depth if args.depth is None else args.depth
    if args.action == "uhf":
        mu = af_tower.uhf_unique_mean(T, depth)
    else:
        if "seed" not in obj:
            raise InputError("tower mean needs a 'seed' vector for the top level")
        mu = af_tower.tower_mean(T, depth, obj["seed"])
    out = mu.to_json()
    out["values"] = [fmt(x[0]) for x in mu.values] if all(len(x) == 1 for x in mu.values) else None
    return out


def _affine_list(obj):
    items = obj["generators"] if isinstance(obj, dict) else obj
    return [AffineMap.from_json(g) for g in items]


def cmd_paradox(args):
    obj = _load(args.input)
    if args.action == "detect":
        cert = paradox.detect_weak(_affine_list(obj), args.max_word)
        if cert is None:
            return {"found": False, "summary": f"not found <= {args.max_word}"}
        return {"found": True, "certificate": cert.to_json(), "strong_as_found": cert.is_strong}
    if args.action == "amplify":
        amp = paradox.bike_amplify(AffineMap.from_json(obj["a"]), _affine_list(obj["pencil"]))
        return {"certificate": amp.certificate.to_json(), "family": [s.to_json() for s in amp.family]}
    if args.action == "upgrade":
        cert = paradox.ParadoxCertificate.from_json(obj["certificate"])
        return {"certificate": paradox.arden_upgrade(cert, AffineMap.from_json(obj["witness"])).to_json()}
    pairs = lambda k: {x: y for x, y in obj[k]}  # noqa: E731
    res = paradox.kuratowski_bijection(
        obj["E"], obj["M"], obj["N"], pairs("phi"), obj["E2"], obj["P"], obj["Q"], pairs("psi"),
        pairs("alpha"),
    )
    return {
        "bijection": sorted([x, y] for x, y in res.bijection.items()),
        "pieces": [{"word": list(w), "pairs": sorted([x, y] for x, y in p.items())}
                   for w, p in sorted(res.pieces.items())],
    }


def cmd_check(args):
    """Run the structural audits on one monoid."""
    S = _monoid(_load(args.input), args.cap)
    rng = random.Random(args.seed)
    sol = means.solve(S)
    report = {"size": S.size}
    if sol.witness is not None:
        ax = means.check_axioms(S, sol.witness)
        report["axioms"] = {"ok": ax.ok, "checked": ax.checked, "first": str(ax.first) if ax.first else None}
        report["faithful"] = means.is_faithful(S, sol.witness)
    report["d_equals_j"] = bim.check_d_eq_j(S)
    report["zero_simplifying"] = bim.is_zero_simplifying(S)
    report["kuratowski"] = paradox.check_kuratowski_property(S)
    report["tarski_degree1"] = rook.search_tarski_degree1(S) is not None if S.size <= 500 else None
    # a random rook round trip as a smoke test of the matrix layer
    A = rook.random_rook(S, 2, 2, rng)
    B = rook.bijection_to_rook(*rook.rook_to_bijection(A), S)
    report["rook_round_trip"] = A == B
    return report


# -- text rendering -----------------------------------------------------------

def _text(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(f"{pad}- {_inline(v)}" if _flat(v) else _text(v, indent + 1) for v in obj)
    return pad + _inline(obj)


def _flat(v) -> bool:
    if isinstance(v, dict):
        return all(not isinstance(x, (dict, list)) for x in v.values())
    if isinstance(v, list):
        return all(not isinstance(x, dict) for x in v)
    return True


def _inline(v) -> str:
    if isinstance(v, bool) or v is None:
        return json.dumps(v)
    if isinstance(v, (list, dict)):
        return json.dumps(v)
    return str(v)


def _default(o):
    if isinstance(o, Fraction):
        return fmt(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=None, help="element cap for closures")
    common.add_argument("--depth", type=int, default=None)
    common.add_argument("--max-word", type=int, default=2)
    common.add_argument("--bound", type=int, default=None, help="degree bound for type searches")
    common.add_argument("--n-max", type=int, default=10)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--format", choices=["json", "text"], default="json")

    p = argparse.ArgumentParser(prog="imean", description="Invariant means on Boolean inverse monoids.")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, func, actions=None, help=None):
        sp = sub.add_parser(name, parents=[common], help=help)
        if actions:
            sp.add_argument("action", choices=actions)
        sp.add_argument("input", help="JSON file, or - for standard input")
        sp.set_defaults(func=func)

    verb("monoid", cmd_monoid, help="close generators and describe the monoid")
    verb("solve", cmd_solve, help="solve for invariant means")
    verb("type", cmd_type, ["present", "leq", "obstruction"], help="type monoid computations")
    verb("rook", cmd_rook, ["mul", "star", "validate", "tarski"], help="rook matrix algebra")
    verb("tower", cmd_tower, ["validate", "mean", "uhf"], help="AF towers and their means")
    verb("paradox", cmd_paradox, ["detect", "amplify", "upgrade", "kuratowski"], help="paradoxical pairs")
    verb("check", cmd_check, help="run structural audits on a monoid")
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.func(args)
    except ImeanError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (InputError, KeyError, ValueError, TypeError) as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        out.write(json.dumps(result, default=_default) + "\n")
    else:
        out.write(_text(result) + "\n")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
