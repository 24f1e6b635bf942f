"""Command-line entry point: ``lrmkit VERB ...``.

Structure arguments are JSON files or generator specs such as ``pt2``.
Exit status: 0 when every check passes, 1 on an axiom failure (the report
carries witnesses), 2 on malformed input or misuse.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from . import actions as act_mod
from . import em_sets, etale, formats
from .core import (
    AxiomReport,
    BooleanAlgebra,
    FiniteMonoid,
    Semilattice,
    SearchLimitExceeded,
    StructureError,
    check_boolean_algebra,
    check_monoid,
    check_semilattice,
)
from .matched_pair import (
    LawViolation,
    MatchedPair,
    build_lrm,
    check_pair,
    from_lrm,
    reconstruction_iso,
)
from .restriction import (
    LeftRestrictionMonoid,
    NotBoolean,
    NotFactorizable,
    as_boolean,
    check_boolean_lrm,
    check_lrm,
)

DEFAULT_FIXTURES = "pt2,pt3,sym_inv2,boolean_lrm1,boolean_lrm2,boolean_lrm3,trivial_plus(transformations2)"


class Failure(Exception):
    """A mathematical check failed; carries the payload to print."""

    def __init__(self, payload):
        super().__init__("check failed")
        self.payload = payload


def load(arg: str, expect: str | None = None):
    if os.path.exists(arg):
        with open(arg, encoding="utf-8") as fh:
            return formats.parse(fh.read(), expect)
    obj = formats.fixture(arg)
    if expect is not None and formats.kind_of(obj) != expect:
        raise StructureError(f"{arg} is a {formats.kind_of(obj)}, expected {expect}")
    return obj


def check_any(obj, boolean: bool = False) -> AxiomReport:
    if isinstance(obj, FiniteMonoid):
        return check_monoid(obj)
    if isinstance(obj, BooleanAlgebra):
        return check_boolean_algebra(obj)
    if isinstance(obj, Semilattice):
        return check_semilattice(obj)
    if isinstance(obj, LeftRestrictionMonoid):
        rep = check_lrm(obj)
        if boolean:
            if obj.zero is None:
                raise NotBoolean("--boolean needs a zero element")
            rep.extend(check_boolean_lrm(obj))
        return rep
    if isinstance(obj, MatchedPair):
        return check_pair(obj)
    if isinstance(obj, act_mod.SupportedAction):
        if boolean and not obj.boolean_mode:
            obj = act_mod.SupportedAction(obj.S, obj.act, obj.support, as_boolean(obj.S))
        return act_mod.check_action(obj)
    if isinstance(obj, em_sets.EMSet):
        if boolean and not obj.boolean:
            obj = em_sets.EMSet(obj.pair, obj.act, obj.eq, True)
        return em_sets.check_em_set(obj)
    raise StructureError(f"cannot check {type(obj).__name__}")


def _require(rep: AxiomReport) -> None:
    if not rep.ok:
        raise Failure(rep.to_dict())


def _valid(obj, boolean=False):
    _require(check_any(obj, boolean))
    return obj


def _read_map(arg: str) -> list[int]:
    with open(arg, encoding="utf-8") as fh:
        doc = formats.loads(fh.read())
    m = doc.get("map")
    if not isinstance(m, list) or any(isinstance(v, bool) or not isinstance(v, int) for v in m):
        raise formats.ParseError(f"{arg}: expected {{\"map\": [integers]}}")
    return m


# --------------------------------------------------------------------------
# verbs


def cmd_check(a):
    obj = load(a.structure, a.kind)
    rep = check_any(obj, a.boolean)
    if not rep.ok:
        raise Failure(rep.to_dict())
    return rep.to_dict()


def cmd_build(a):
    P = _valid(load(a.pair, "matched_pair"))
    return formats.to_document(build_lrm(P))


def cmd_extract(a):
    S = _valid(load(a.lrm, "lrm"), a.boolean)
    return formats.to_document(from_lrm(S, True if a.boolean else None))


def cmd_act(a):
    Y = _valid(load(a.em_set, "em_set"))
    S = _valid(load(a.over, "lrm"))
    return formats.to_document(em_sets.to_action(Y, S))


def cmd_unact(a):
    A = _valid(load(a.action, "action"))
    return formats.to_document(em_sets.from_action(A))


def cmd_hom(a):
    A = _valid(load(a.source, "action"))
    B = _valid(load(a.target, "action"))
    homs = act_mod.enumerate_homs(A, B, a.max_search)
    return {"count": len(homs), "homs": [list(h) for h in homs]}


def cmd_product(a):
    A = _valid(load(a.left, "action"))
    B = _valid(load(a.right, "action"))
    return formats.to_document(act_mod.box_product(A, B))


def cmd_exp(a):
    A = _valid(load(a.base, "action"))
    B = _valid(load(a.target, "action"))
    return formats.to_document(act_mod.exponential(A, B, a.max_search).action)


def cmd_curry(a):
    Z = _valid(load(a.z, "action"))
    A = _valid(load(a.a, "action"))
    B = _valid(load(a.b, "action"))
    g = _read_map(a.map)
    ok, w = act_mod.check_action_hom(act_mod.box_product(Z, A), B, g)
    if not ok:
        raise Failure({"hom": False, "witness": list(w)})
    E = act_mod.exponential(A, B, a.max_search)
    h = act_mod.curry(E, Z, g)
    if list(act_mod.uncurry(E, Z, h)) != list(g):
        raise LawViolation("uncurry(curry(g)) != g")
    return {"map": list(h), "exponential": formats.to_document(E.action)}


def cmd_inv(a):
    S = _valid(load(a.lrm, "lrm"))
    V = etale.inverse_view(S)
    return {"elements": list(V.elems), "inverse": list(V.units.inverse_witness),
            "lrm": formats.to_document(V.lrm)}


def cmd_etale(a):
    S = _valid(load(a.lrm, "lrm"), True)
    res = etale.is_etale(S)
    out = {"etale": res.ok, "witness": res.witness,
           "decompositions": {str(k): list(v) for k, v in sorted(res.decompositions.items())}}
    if not res.ok:
        raise Failure(out)
    return out


def cmd_extend(a):
    S = _valid(load(a.over, "lrm"), True)
    V = etale.inverse_view(S)
    A = load(a.action, "action")
    if A.S != V.lrm:
        raise StructureError("the action is not over Inv(S) of the given monoid")
    A = act_mod.SupportedAction(V.lrm, A.act, A.support, V)
    _require(etale.check_inv_supported(A))
    return formats.to_document(etale.extend_action(A, S))


def cmd_catiso(a):
    S = _valid(load(a.lrm, "lrm"), True)
    fixtures = None
    if a.fixtures:
        B = as_boolean(S)
        fixtures = [_valid(_with_structure(load(f, "action"), B)) for f in _split(a.fixtures)]
    rep = etale.check_category_iso(S, fixtures, a.max_carrier, a.max_search)
    _require(rep)
    return rep.to_dict()


def _with_structure(A, B):
    return act_mod.SupportedAction(A.S, A.act, A.support, B)


def cmd_roundtrip(a):
    obj = load(a.structure)
    if isinstance(obj, LeftRestrictionMonoid):
        _valid(obj)
        R = reconstruction_iso(obj, True if a.boolean else None)
        return {"kind": "lrm", "size": len(R.theta), "iso": list(R.theta),
                "target": formats.to_document(R.target)}
    if isinstance(obj, act_mod.SupportedAction):
        _valid(obj)
        R = em_sets.roundtrip_action_iso(obj)
        return {"kind": "action", "size": len(R.theta), "iso": list(R.theta)}
    if isinstance(obj, em_sets.EMSet):
        _valid(obj)
        if not a.over:
            raise StructureError("roundtrip of an [E|M]-set needs --over")
        R = em_sets.roundtrip_em_iso(obj, load(a.over, "lrm"))
        return {"kind": "em_set", "size": len(R.alpha), "iso": list(R.alpha)}
    raise StructureError("roundtrip takes an lrm, action or em_set")


def cmd_report(a):
    out = {}
    failed = False
    for spec in _split(a.fixtures or DEFAULT_FIXTURES):
        obj = load(spec)
        lrm = isinstance(obj, LeftRestrictionMonoid) and obj.zero is not None
        rep = check_any(obj, lrm and obj.boolean is not None)
        if lrm and obj.boolean is None and len(etale.partial_units(obj).elements) == obj.size:
            rep.extend(etale.check_boolean_inverse_monoid(obj))
        out[spec] = {"ok": rep.ok, "laws": len(rep.laws), "failed": rep.failed(),
                     "seconds": round(rep.elapsed, 3)}
        failed |= not rep.ok
    if failed:
        raise Failure(out)
    return out


def _split(s: str) -> list[str]:
    # commas inside parentheses belong to the fixture name
    out, depth, cur = [], 0, ""
    for ch in s:
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lrmkit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_, *args):
        q = sub.add_parser(name, help=help_)
        for arg in args:
            q.add_argument(arg)
        q.add_argument("--out", help="write the result here instead of standard output")
        q.add_argument("--max-search", type=int, default=act_mod.DEFAULT_MAX_SEARCH,
                       help="cap on tentative assignments in searches")
        q.set_defaults(fn=fn)
        return q

    q = verb("check", cmd_check, "run the axiom checks for a structure", "structure")
    q.add_argument("--kind", choices=formats.KINDS)
    q.add_argument("--boolean", action="store_true", help="also run the Boolean axioms")
    verb("build", cmd_build, "the LRM of a matched pair", "pair")
    q = verb("extract", cmd_extract, "the matched pair [Proj|Tot] of an LRM", "lrm")
    q.add_argument("--boolean", action="store_true")
    q = verb("act", cmd_act, "supported action of an [E|M]-set", "em_set")
    q.add_argument("--over", required=True, help="the LRM the pair was extracted from")
    verb("unact", cmd_unact, "[E|M]-set of a factorizable action", "action")
    verb("hom", cmd_hom, "enumerate homomorphisms of actions", "source", "target")
    verb("product", cmd_product, "box product of two actions", "left", "right")
    verb("exp", cmd_exp, "exponential TARGET^BASE", "base", "target")
    verb("curry", cmd_curry, "transpose a map Z[]A -> B", "z", "a", "b", "map")
    verb("inv", cmd_inv, "the inverse monoid of partial units", "lrm")
    verb("etale", cmd_etale, "decompose every element into partial units", "lrm")
    q = verb("extend", cmd_extend, "extend an action of Inv(S) to S", "action")
    q.add_argument("--over", required=True, help="the étale LRM S")
    q = verb("catiso", cmd_catiso, "compare actions of S and of Inv(S)", "lrm")
    q.add_argument("--fixtures", help="comma-separated action files (default: enumerate)")
    q.add_argument("--max-carrier", type=int, default=4)
    q = verb("roundtrip", cmd_roundtrip, "round-trip isomorphism of an LRM, action or [E|M]-set",
             "structure")
    q.add_argument("--boolean", action="store_true")
    q.add_argument("--over", help="LRM for an [E|M]-set")
    q = verb("report", cmd_report, "axiom report for built-in fixtures")
    q.add_argument("--fixtures", help=f"comma-separated generator specs (default {DEFAULT_FIXTURES})")
    return p


def _emit(payload, out: str | None) -> None:
    text = formats.dumps(payload)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload = args.fn(args)
    except Failure as f:
        _emit(f.payload, args.out)
        return 1
    except (NotBoolean, NotFactorizable, etale.NotEtale, LawViolation,
            em_sets.InadmissibleMap) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, args.out)
        return 1
    except (StructureError, SearchLimitExceeded, ValueError, LookupError, OSError) as exc:
        print(f"lrmkit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    _emit(payload, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
