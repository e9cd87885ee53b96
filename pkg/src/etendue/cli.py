"""Command line: ``etendue validate | translate | check``.

Exit codes: 0 when every check passes, 1 when a check fails (the report
carries witnesses), 2 when an input cannot be read or does not validate.
Reports are deterministic: no timings, sorted keys.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ._verdict import Check, TooLarge, ValidationError, Verdict, jsonable
from .bridge import (
    G,
    L,
    check_pseudo_inverse_eta,
    check_pseudo_inverse_kappa,
    check_triangle_identities,
    eta,
    gl,
    kappa,
    kappa_descent_witnesses,
)
from .fincat import FiniteCategory, Functor, check_weak_equivalence, is_isomorphism, is_left_cancellative
from .formats import ParseError, Workspace, dump, kind_of
from .ogpd import DoubleFunctor, OrderedGroupoid, check_double_weak_equivalence, find_max_objects
from .sheaves import (
    DoublePresheaf,
    Presheaf,
    is_sheaf_ehresmann,
    is_sheaf_grothendieck,
    presheaf_transfer_L,
    transfer_tilde,
    validate_double_presheaf,
    validate_presheaf,
)
from .sites import (
    GrothendieckSiteMorphism,
    check_conditions,
    comparison_verdict,
    is_covering_flat_e,
    is_covering_flat_g,
    is_covering_preserving_e,
    is_covering_preserving_g,
)
from .topology import (
    EhresmannTopology,
    GrothendieckTopology,
    ehresmann_to_grothendieck,
    ehresmann_to_grothendieck_on_G,
    grothendieck_to_ehresmann_on_G,
    grothendieck_to_ehresmann_on_L,
    validate_ehresmann,
    validate_grothendieck,
)


class InputError(Exception):
    pass


def _report(command, verdict: Verdict, **extra) -> dict:
    out = {"command": command, "ok": verdict.ok, "checks": [c.to_dict() for c in verdict]}
    out.update({k: jsonable(v) for k, v in extra.items()})
    return out


def _render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=1, sort_keys=True)
    lines = [" ".join(report["command"])]
    for key in sorted(k for k in report if k not in ("command", "ok", "checks", "output")):
        lines.append(f"  {key}: {json.dumps(report[key], sort_keys=True)}")
    for c in report["checks"]:
        line = f"  {'PASS' if c['ok'] else 'FAIL'} {c['name']}"
        if not c["ok"] and "witness" in c:
            line += " " + json.dumps(c["witness"], sort_keys=True)
        lines.append(line)
    lines.append("OK" if report["ok"] else "FAILED")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# validate


def cmd_validate(ws: Workspace, path) -> dict:
    """Load and validate; a structure that breaks its laws yields a failing report."""
    command = ["validate", str(path)]
    try:
        obj = ws.load(path)
    except ValidationError as e:
        return _report(command, Verdict([Check(v.code, False, v.witness, v.message) for v in e.violations]),
                       kind=_declared_kind(path))
    kind = kind_of(obj)
    info = {}
    if kind == "category":
        verdict = Verdict([Check("category", True)])
        info["left_cancellative"] = is_left_cancellative(obj).ok
    elif kind == "ordered_groupoid":
        verdict = Verdict([Check("ordered_groupoid", True)])
        mx = find_max_objects(obj)
        info["max_objects"] = not isinstance(mx, Check)
    elif kind == "grothendieck_topology":
        verdict = validate_grothendieck(obj)
    elif kind == "ehresmann_topology":
        verdict = validate_ehresmann(obj)
    elif kind == "presheaf":
        verdict = validate_presheaf(obj)
    elif kind == "double_presheaf":
        verdict = validate_double_presheaf(obj)
    else:
        verdict = Verdict([Check(kind, True)])
    return _report(command, verdict, kind=kind, name=getattr(obj, "name", ""), **info)


def _declared_kind(path):
    try:
        return json.loads(Path(path).read_text()).get("kind")
    except (OSError, ValueError, AttributeError):
        return None


# ---------------------------------------------------------------------------
# translate


TRANSLATIONS = ("l", "g", "lg", "gl", "topology", "presheaf")


def translate(ws: Workspace, what: str, path):
    obj = ws.load(path)
    if what == "l":
        return L(_expect(obj, OrderedGroupoid))
    if what == "g":
        return G(_expect(obj, FiniteCategory))
    if what == "lg":
        return L(G(_expect(obj, FiniteCategory)))
    if what == "gl":
        return gl(_expect(obj, OrderedGroupoid))
    if what == "topology":
        if isinstance(obj, GrothendieckTopology):
            return grothendieck_to_ehresmann_on_G(obj)
        return ehresmann_to_grothendieck(_expect(obj, EhresmannTopology))
    if what == "presheaf":
        if isinstance(obj, Presheaf):
            return transfer_tilde(obj)
        return presheaf_transfer_L(_expect(obj, DoublePresheaf))
    raise InputError(f"unknown translation {what!r}")


def _expect(obj, cls):
    if not isinstance(obj, cls):
        names = " or ".join(c.__name__ for c in (cls if isinstance(cls, tuple) else (cls,)))
        raise InputError(f"expected {names}, found {type(obj).__name__}")
    return obj


def cmd_translate(ws: Workspace, what: str, path, out=None) -> dict:
    result = translate(ws, what, path)
    # revalidate through the file format
    again = Workspace().build(json.loads(json.dumps(result.to_json())), Path(path).resolve().parent)
    command = ["translate", what, str(path)] + (["--out", str(out)] if out else [])
    extra = {"kind": kind_of(result), "name": result.name}
    if out:
        dump(result, out)
    else:
        extra["output"] = result.to_json()
    return _report(command, Verdict([Check("revalidated", kind_of(again) == kind_of(result))]), **extra)


# ---------------------------------------------------------------------------
# check


CHECKS = ("eta", "kappa", "triangles", "weq", "topology", "sheaf", "site", "comparison")


def cmd_check(ws: Workspace, what: str, paths, oracle_bound=None, sheaf_universe=3) -> dict:
    command = ["check", what] + [str(p) for p in paths]
    if oracle_bound is not None:
        command += ["--oracle-bound", str(oracle_bound)]
    if what == "comparison":
        command += ["--sheaf-universe", str(sheaf_universe)]
    if what == "sheaf":
        if len(paths) != 2:
            raise InputError("check sheaf needs a topology file and a presheaf file")
    elif len(paths) != 1:
        raise InputError(f"check {what} needs exactly one file")
    obj = ws.load(paths[0])

    if what == "eta":
        C = _expect(obj, FiniteCategory)
        e = eta(C)
        checks = list(check_weak_equivalence(e))
        checks += [Check("pseudo_inverse", check_pseudo_inverse_eta(C).ok)]
        return _report(command, Verdict(checks), isomorphism=is_isomorphism(e))
    if what == "kappa":
        Gp = _expect(obj, OrderedGroupoid)
        checks = list(check_double_weak_equivalence(kappa(Gp), kappa_descent_witnesses(Gp)))
        if not isinstance(find_max_objects(Gp), Check):
            checks.append(Check("pseudo_inverse", check_pseudo_inverse_kappa(Gp).ok))
        return _report(command, Verdict(checks))
    if what == "triangles":
        return _report(command, check_triangle_identities(_expect(obj, (FiniteCategory, OrderedGroupoid))))
    if what == "weq":
        if isinstance(obj, Functor):
            return _report(command, check_weak_equivalence(obj))
        return _report(command, check_double_weak_equivalence(_expect(obj, DoubleFunctor)))
    if what == "topology":
        return _report(command, _topology_checks(obj))
    if what == "sheaf":
        top, P = obj, ws.load(paths[1])
        if isinstance(top, GrothendieckTopology):
            return _report(command, is_sheaf_grothendieck(_expect(P, Presheaf), top))
        return _report(command, is_sheaf_ehresmann(_expect(P, DoublePresheaf), _expect(top, EhresmannTopology)))
    if what == "site":
        if isinstance(obj, GrothendieckSiteMorphism):
            checks = list(is_covering_preserving_g(obj)) + list(is_covering_flat_g(obj, oracle_bound))
        else:
            checks = list(is_covering_preserving_e(obj)) + list(is_covering_flat_e(obj, oracle_bound))
        return _report(command, Verdict(checks + list(check_conditions(obj))))
    if what == "comparison":
        return _report(command, comparison_verdict(obj, k=sheaf_universe))
    raise InputError(f"unknown check {what!r}")


def _topology_checks(top) -> Verdict:
    """Axioms plus the round trip through the other kind of topology."""
    if isinstance(top, GrothendieckTopology):
        C = top.category
        checks = list(validate_grothendieck(top))
        if is_left_cancellative(C).ok:
            T = grothendieck_to_ehresmann_on_G(top)
            checks.append(Check("translation_valid", validate_ehresmann(T).ok))
            checks.append(Check("round_trip", ehresmann_to_grothendieck_on_G(T) == top))
        return Verdict(checks)
    top = _expect(top, EhresmannTopology)
    checks = list(validate_ehresmann(top))
    J = ehresmann_to_grothendieck(top)
    checks.append(Check("translation_valid", validate_grothendieck(J).ok))
    checks.append(Check("round_trip", grothendieck_to_ehresmann_on_L(J) == top))
    return Verdict(checks)


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="etendue", description="Check finite sites, ordered groupoids and sheaves.")
    p.add_argument("--format", choices=("json", "text"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="validate a structure file")
    v.add_argument("path")

    t = sub.add_parser("translate", help="translate a structure across the correspondence")
    t.add_argument("what", choices=TRANSLATIONS)
    t.add_argument("path")
    t.add_argument("--out")

    c = sub.add_parser("check", help="run a check")
    c.add_argument("what", choices=CHECKS)
    c.add_argument("paths", nargs="+")
    c.add_argument("--oracle-bound", type=int, default=None)
    c.add_argument("--sheaf-universe", type=int, default=3)

    for sp in (v, t, c):
        sp.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    ws = Workspace()
    try:
        if args.command == "validate":
            report = cmd_validate(ws, args.path)
        elif args.command == "translate":
            report = cmd_translate(ws, args.what, args.path, args.out)
        else:
            report = cmd_check(ws, args.what, args.paths, args.oracle_bound, args.sheaf_universe)
    except (ParseError, InputError, ValidationError, TooLarge) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    print(_render(report, args.format))
    return 0 if report["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
