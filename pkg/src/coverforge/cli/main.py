"""``coverforge`` command line."""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from pathlib import Path

import numpy as np

from coverforge import cover as cv
from coverforge.cocycle import (
    CocycleError,
    add,
    cocycle_from_extension,
    cocycle_from_json,
    cyclic_pardini,
    extension_from_cocycle,
    pardini_epsilon,
    validate,
)
from coverforge.cli.report import Report
from coverforge.fpmonoid import (
    MonoidPresentation,
    cancellation_certificate,
    groupification,
    is_integral_up_to,
    sharp_by_grading,
    unit_search,
)
from coverforge.group import AbelianGroup, GroupHom
from coverforge.hopf import (
    AlgebraError,
    FiniteAlgebra,
    GroupAlgebraStructure,
    base_directions,
    grouplike_residue_compare,
    grouplike_search,
    ideal_closure,
    is_grouplike_mod,
    is_hopf_ideal,
    stabilizer_ideal,
)
from coverforge.kahler import ann_snf, change_base, discriminant_in_annihilator, omega_presentation
from coverforge.ring import GF, QQ, ParseError, parse_ring
from coverforge.universal import universal, universal_factor, universal_morphisms
from coverforge.verdict import failed, passed


class UsageError(ValueError):
    pass


# -- input helpers ---------------------------------------------------------------------
def load_json(arg: str):
    """Inline JSON (starting with ``{`` or ``[``) or a path to a JSON file."""
    text = arg if arg.lstrip()[:1] in "{[" else Path(arg).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{arg if len(arg) < 60 else 'input'}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def parse_group(text: str) -> AbelianGroup:
    data = load_json(text) if text.lstrip()[:1] in "{[" else [int(x) for x in re.split(r"[,\sx]+", text) if x]
    return AbelianGroup.from_json(data)


def parse_vector(text: str) -> tuple:
    return tuple(int(x) for x in re.split(r"[,\s]+", text.strip().strip("()[]")) if x)


def parse_hom(source: AbelianGroup, target: AbelianGroup, images: str) -> GroupHom:
    imgs = [target.parse(x) for x in images.split(";")]
    return GroupHom(source, target, imgs)


_GA_TERM = re.compile(r"\s*([+-]?)\s*(?:\(([^()]*)\)|([A-Za-z_0-9]+)\s*\*?)?\s*\[([^\]]*)\]")


def parse_ga_element(S: GroupAlgebraStructure, text: str) -> np.ndarray:
    """Sums of ``coeff[g]`` terms, e.g. ``(1+ac)[(0,0)] + ac[(1,0)]``."""
    out = S.zero()
    pos, text = 0, text.strip()
    while pos < len(text):
        m = _GA_TERM.match(text, pos)
        if not m or m.end() == pos:
            raise UsageError(f"cannot read group-algebra element at column {pos + 1}: {text!r}")
        sign, paren, label, g = m.groups()
        coeff = paren if paren is not None else (label or "1")
        lam = S.A.parse(g) if g.strip() else S.A.zero
        term = S.element({lam: S.base.vec(coeff)})
        out = (out - term if sign == "-" else out + term) % S.p
        pos = m.end()
    return out


def _fmt_vec(P: MonoidPresentation, x) -> str:
    return f"{P.format(x)}  {list(x)}"


# -- monoid -----------------------------------------------------------------------------
def _monoid_source(args):
    if args.group:
        U = universal(parse_group(args.group))
        return U.P, U
    if not args.presentation:
        raise UsageError("give a presentation file or --group")
    return MonoidPresentation.from_json(load_json(args.presentation)), None


def cmd_monoid(args, rep: Report):
    P, U = _monoid_source(args)
    if args.action == "complete":
        rs = P.system
        rep.put("rules", [f"{P.format(u)} -> {P.format(v)}" for u, v in rs.pairs()])
        rep.add("confluent", passed("CONFLUENT") if rs.is_confluent() else failed("NOT-CONFLUENT"))
        rep.add("traces", passed("REPLAYED") if rs.verify_traces() else failed("BAD-TRACE"))
    elif args.action == "nf":
        if not args.vector:
            raise UsageError("nf needs --vector")
        for v in args.vector:
            x = parse_vector(v)
            rep.put(f"nf {list(x)}", _fmt_vec(P, P.normal_form(x)))
    elif args.action == "gp":
        gp = groupification(P)
        rep.put("free_rank", gp.free_rank)
        rep.put("torsion", list(gp.torsion))
        rep.put("generator_images", [list(g) for g in gp.gen_images])
    elif args.action == "props":
        rep.put("generators", P.rank)
        rep.put("rules", len(P.system))
        if U is not None:
            t = time.perf_counter()
            rep.add("sharp", sharp_by_grading(P, U.pa_grading()), time.perf_counter() - t)
        else:
            t = time.perf_counter()
            rep.add("units", unit_search(P, args.unit_bound), time.perf_counter() - t)
        t = time.perf_counter()
        v = is_integral_up_to(P, args.integrality_bound)
        rep.add("integral-bounded", v, time.perf_counter() - t)
        if v.ok and args.certificate:
            weights = args.weights and parse_vector(args.weights)
            if weights is None and U is not None:
                weights = U.generator_weights
            if weights:
                t = time.perf_counter()
                rep.add("cancellation-certificate", cancellation_certificate(P, weights), time.perf_counter() - t)


# -- universal --------------------------------------------------------------------------
def cmd_universal(args, rep: Report):
    A = parse_group(args.group)
    U = universal(A)
    if args.action == "build":
        rep.put("group", str(A))
        rep.put("generators", U.P.rank)
        rep.put("relations", len(U.P.relations))
        rep.put("rules", len(U.P.system))
        rep.put("generator_classes", [U.P.format(c) for c in U.generator_classes])
    elif args.action == "value":
        if not args.pair:
            raise UsageError("value needs at least one --pair a,b")
        p = U.pa_zero()
        for text in args.pair:
            a, b = (A.parse(x) for x in text.split(";")) if ";" in text else _split_pair(A, text)
            p = U.pa_add(p, U.e(a, b))
        rep.put("element", U.pa_format(p))
        rep.put("phi", list(U.phi(p)))
        rep.put("value", U.value(p))
    elif args.action == "intgens":
        p_gens, q_gens = U.int_generators()
        rep.put("P_int", [list(g) for g in p_gens])
        rep.put("Q_int", [list(g) for g in q_gens])
    elif args.action == "morphisms":
        inc = U.int_inclusion()
        mor = universal_morphisms(inc, A, U.m_vec, args.bound, value=sum)
        rep.put("iota", {A.format(a): list(v) for a, v in mor.iota.items()})
        rep.put("P_A -> P_int", {f"{A.format(a)},{A.format(b)}": list(v) for (a, b), v in mor.pa_hom.images_by_pair.items()})
        rep.add("commuting-square", passed("COMMUTES", bound=args.bound))


def _split_pair(A, text):
    from coverforge.cocycle import split_pair_key

    return split_pair_key(A, text)


# -- cocycle ----------------------------------------------------------------------------
def _cocycle_table(f) -> dict:
    A = f.A
    return {f"{A.format(a)},{A.format(b)}": f.target.format(v) for (a, b), v in f.nonzero_table().items()}


def cmd_cocycle(args, rep: Report):
    if args.action == "pardini":
        f = pardini_epsilon(cyclic_pardini(args.n, args.psi))
        rep.put("epsilon", _cocycle_table(f))
        return
    if not args.files:
        raise UsageError(f"cocycle {args.action} needs a cocycle file")
    f = cocycle_from_json(load_json(args.files[0]))
    if args.action == "validate":
        v = validate(f)
        rep.add("cocycle", passed("VALID") if v is None else failed("INVALID", witness=v.witness, detail=str(v)))
        if v is None and args.factor:
            h = universal_factor(f)
            rep.put("P_A images", {f"{f.A.format(a)},{f.A.format(b)}": f.target.format(x) for (a, b), x in h.images_by_pair.items()})
    elif args.action == "add":
        if len(args.files) != 2:
            raise UsageError("add needs two cocycle files")
        g = cocycle_from_json(load_json(args.files[1]))
        rep.put("sum", _cocycle_table(add(f, g)))
    elif args.action == "extension":
        E = extension_from_cocycle(f)
        back = cocycle_from_extension(E)
        A = f.A
        rep.put("iota sums", {f"{A.format(a)}+{A.format(b)}": f"gamma({f.target.format(back(a, b))}) + iota({A.format(A.add(a, b))})"
                              for (a, b) in back.nonzero_table()})
        rep.add("round-trip", passed("ROUND-TRIP") if back == f else failed("MISMATCH"))


# -- cover ------------------------------------------------------------------------------
def _datum(arg):
    return cv.datum_from_json(load_json(arg))


def cmd_cover(args, rep: Report):
    act = args.action
    if act == "cyclic":
        d = cv.standard_cyclic(args.n, args.psi)
        rep.put("datum", d.to_json())
        return
    if act == "monomial":
        if not args.files or not args.ring or not args.t:
            raise UsageError("monomial needs a cocycle file, --ring and --t")
        R = parse_ring(args.ring)
        ts = [R(t) for t in args.t]
        d = cv.monomial_cover(R, ts[0] if len(ts) == 1 else ts, cocycle_from_json(load_json(args.files[0])))
        rep.put("datum", d.to_json())
        return
    if not args.files:
        raise UsageError(f"cover {act} needs a building-datum file")
    d = _datum(args.files[0])
    if act == "validate":
        v = cv.validate_datum(d)
        rep.add("datum", passed("VALID") if v is None else failed("INVALID", witness=v.witness, detail=str(v)))
    elif act == "torsor":
        rep.put("torsor", cv.is_torsor(d))
        non_units = [f"{d.A.format(a)},{d.A.format(b)}" for (a, b), s in d.table().items() if not s.is_unit()]
        if non_units:
            rep.put("non-unit sections", non_units)
    elif act == "wedge":
        if len(args.files) != 2:
            raise UsageError("wedge needs two building-datum files")
        e = _datum(args.files[1])
        if args.group:
            B = parse_group(args.group)
            w = cv.wedge(d, e, parse_hom(B, d.A, args.map1), parse_hom(B, e.A, args.map2))
        else:
            w = cv.wedge_same(d, e)
        rep.put("datum", w.to_json())
    elif act == "induced":
        B = parse_group(args.group)
        rep.put("datum", cv.induced(d, parse_hom(B, d.A, args.map1)).to_json())
    elif act == "quotient":
        subset = [d.A.parse(x) for x in args.subgroup.split(";")]
        rep.put("datum", cv.quotient_sub(d, subset).to_json())
    elif act == "disc":
        f, t = cv.discriminant_formula(d), cv.discriminant_trace(d)
        rep.put("formula", str(f))
        rep.put("trace determinant", str(t))
        rep.add("formula-vs-trace", passed("MATCH") if t in (f, -f) else failed("MISMATCH", witness=(str(f), str(t))))
    elif act in ("ord", "cocycle"):
        if not args.t:
            raise UsageError(f"{act} needs --t (a prime element of the base)")
        ts = [d.R(t) for t in args.t]
        if act == "cocycle":
            rep.put("cocycle", _cocycle_table(cv.cover_cocycle(d, ts)))
        else:
            table = {}
            for (a, b) in d.table():
                key = f"{d.A.format(a)},{d.A.format(b)}"
                table[key] = [cv.ord_section(d, cv.Valuation(t), a, b) for t in ts]
                if args.bound is not None:
                    table[key].append(cv.ideal_quotient_ord(d, ts[0], a, b, args.bound))
            rep.put("orders", table)


# -- hopf -------------------------------------------------------------------------------
def _hopf_setup(args):
    """Returns the group-algebra structure and the starting ideal generators."""
    from coverforge import catalog

    if args.builtin:
        datum = {"klein": catalog.klein_datum, "dual-numbers": catalog.dual_numbers_sqrt}[args.builtin]()
        S, I = stabilizer_ideal(datum)
        return S, list(I.basis())
    if args.cover:
        data = load_json(args.cover)
        unknown = set(data) - {"algebra", "group", "sections"}
        if unknown:
            raise UsageError(f"unknown fields in cover: {sorted(unknown)}")
        R = FiniteAlgebra.from_json(data["algebra"]).ring()
        A = AbelianGroup.from_json(data["group"])
        entries = {cv.split_pair_key(A, k): R(str(v)) for k, v in data["sections"].items()}
        S, I = stabilizer_ideal(cv.BuildingDatum.from_table(A, R, entries))
        return S, list(I.basis())
    if not (args.algebra and args.group):
        raise UsageError("give --builtin, --cover, or --algebra with --group")
    S = GroupAlgebraStructure(FiniteAlgebra.from_json(load_json(args.algebra)), parse_group(args.group))
    return S, []


def cmd_hopf(args, rep: Report):
    S, gens = _hopf_setup(args)
    gens = gens + [parse_ga_element(S, g) for g in args.gen or []]
    t = time.perf_counter()
    I = ideal_closure(S, gens)
    rep.put("algebra", repr(S))
    rep.put("ideal dimension", I.dim)
    if args.action in ("ideal", "stabilizer"):
        if args.show_basis:
            rep.put("ideal basis", [S.format(x) for x in I.basis()])
        if args.action == "stabilizer":
            bad = is_hopf_ideal(S, I)
            rep.add("hopf-ideal", passed("HOPF-IDEAL") if bad is None else failed("NOT-HOPF", witness=bad.vector, detail=str(bad)),
                    time.perf_counter() - t)
        for text in args.element or []:
            x = parse_ga_element(S, text)
            rep.put(f"{text} in ideal", I.contains(x))
        return
    bad = is_hopf_ideal(S, I)
    rep.add("hopf-ideal", passed("HOPF-IDEAL") if bad is None else failed("NOT-HOPF", witness=bad.vector, detail=str(bad)),
            time.perf_counter() - t)
    if args.action == "hopfcheck" or bad is not None:
        return
    if args.action == "grouplike":
        for text in args.element or []:
            g = parse_ga_element(S, text)
            ok = is_grouplike_mod(S, I, g)
            trivial = I.contains(g - S.one())
            rep.add(f"grouplike {text}", passed("GROUPLIKE", detail="trivial mod I" if trivial else "nontrivial mod I")
                    if ok else failed("NOT-GROUPLIKE", witness=text))
    elif args.action == "search":
        if args.maximal_ideal is not None:
            dirs = base_directions(S, args.maximal_ideal)
        else:
            dirs = [parse_ga_element(S, x) for x in args.direction or []]
        t = time.perf_counter()
        if args.compare:
            rep.add("residue-compare", grouplike_residue_compare(S, I, args.maximal_ideal or [], cap=args.cap),
                    time.perf_counter() - t)
            return
        found = grouplike_search(S, I, dirs, cap=args.cap)
        rep.put("searched directions", len(dirs))
        rep.put("group-like classes", [S.format(g) for g in found])


# -- kahler -----------------------------------------------------------------------------
def cmd_kahler(args, rep: Report):
    d = _datum(args.file)
    if args.coeffs:
        K = QQ if args.coeffs.upper() == "QQ" else GF(int(re.sub(r"\D", "", args.coeffs)))
        d = change_base(d, K)
    om = omega_presentation(d)
    if args.action == "omega":
        rep.put("generators", [om.label(j) for j in range(len(om.labels))])
        rep.put("relations", [om.format_row(r) for r in om.rows])
    elif args.action == "ann":
        if not om.ring.base.is_field:
            raise UsageError("ann needs field coefficients; pass --coeffs QQ or --coeffs GF(p)")
        gen, divs = ann_snf(om)
        rep.put("elementary divisors", [str(x) for x in divs])
        rep.put("annihilator", str(gen))
    elif args.action == "lemma228":
        t = time.perf_counter()
        rep.add("discriminant-annihilates", discriminant_in_annihilator(d, args.degree), time.perf_counter() - t)


# -- verify-paper -----------------------------------------------------------------------
def cmd_verify(args, rep: Report):
    from coverforge.cli.suite import CHECKS, run_suite

    if args.list:
        rep.put("checks", list(CHECKS))
        return
    try:
        results = run_suite(args.only, workers=args.workers)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from exc
    for cid, verdict, secs in results:
        rep.add(cid, verdict, secs)


# -- parser -----------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--strict", action="store_true", help="inconclusive checks fail the run")

    p = argparse.ArgumentParser(prog="coverforge", description="Abelian covers, universal monoids and their checks.")
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("monoid", parents=[common], help="finitely presented commutative monoids")
    m.add_argument("action", choices=["complete", "nf", "props", "gp"])
    m.add_argument("presentation", nargs="?", help="presentation JSON {rank, relations, names?}")
    m.add_argument("--group", help="use P_A of this group, e.g. '[2,2,2]'")
    m.add_argument("--vector", action="append", help="vector for nf, e.g. '1,0,2'")
    m.add_argument("--integrality-bound", type=int, default=3)
    m.add_argument("--unit-bound", type=int, default=3)
    m.add_argument("--certificate", action=argparse.BooleanOptionalAction, default=True,
                   help="attempt a cancellation certificate after a bounded YES (default on)")
    m.add_argument("--weights", help="homogeneous generator weights for the certificate")
    m.set_defaults(func=cmd_monoid)

    u = sub.add_parser("universal", parents=[common], help="universal monoids P_A and Q_A")
    u.add_argument("action", choices=["build", "value", "intgens", "morphisms"])
    u.add_argument("--group", required=True)
    u.add_argument("--pair", action="append", help="generator e_{a,b} as 'a,b'")
    u.add_argument("--bound", type=int, default=6, help="search bound for morphisms")
    u.set_defaults(func=cmd_universal)

    c = sub.add_parser("cocycle", parents=[common], help="monoid-valued 2-cocycles")
    c.add_argument("action", choices=["validate", "add", "pardini", "extension"])
    c.add_argument("files", nargs="*")
    c.add_argument("--n", type=int, default=2)
    c.add_argument("--psi", type=int, default=1)
    c.add_argument("--factor", action="store_true", help="also print the factorization through P_A")
    c.set_defaults(func=cmd_cocycle)

    v = sub.add_parser("cover", parents=[common], help="building data of covers")
    v.add_argument("action", choices=["validate", "torsor", "wedge", "induced", "quotient", "disc", "ord", "cocycle", "monomial", "cyclic"])
    v.add_argument("files", nargs="*")
    v.add_argument("--group", help="source group for wedge/induced")
    v.add_argument("--map1", help="images of the source generators, ';'-separated")
    v.add_argument("--map2")
    v.add_argument("--subgroup", help="subgroup elements, ';'-separated")
    v.add_argument("--t", action="append", help="prime element(s) of the base")
    v.add_argument("--bound", type=int, help="also compute the ideal-quotient order up to this power")
    v.add_argument("--ring", help="base ring for monomial covers")
    v.add_argument("--n", type=int, default=2)
    v.add_argument("--psi", type=int, default=1)
    v.set_defaults(func=cmd_cover)

    h = sub.add_parser("hopf", parents=[common], help="group algebras over finite algebras")
    h.add_argument("action", choices=["ideal", "hopfcheck", "grouplike", "search", "stabilizer"])
    h.add_argument("--algebra", help="finite algebra JSON {p, basis, mult}")
    h.add_argument("--group")
    h.add_argument("--cover", help="cover over a finite algebra {algebra, group, sections}; starts from its stabilizer ideal")
    h.add_argument("--builtin", choices=["klein", "dual-numbers"], help="a built-in cover; starts from its stabilizer ideal")
    h.add_argument("--gen", action="append", help="extra ideal generator, e.g. 'x[1] - x[0]'")
    h.add_argument("--element", action="append", help="element to test")
    h.add_argument("--direction", action="append", help="search direction")
    h.add_argument("--maximal-ideal", nargs="*", help="generators of the base ideal m; directions span m*E")
    h.add_argument("--compare", action="store_true", help="compare group-likes with the residue fiber")
    h.add_argument("--cap", type=int, default=24)
    h.add_argument("--show-basis", action="store_true")
    h.set_defaults(func=cmd_hopf)

    k = sub.add_parser("kahler", parents=[common], help="relative differentials of covers")
    k.add_argument("action", choices=["omega", "ann", "lemma228"])
    k.add_argument("file")
    k.add_argument("--coeffs", help="change coefficients to QQ or GF(p) first")
    k.add_argument("--degree", type=int, help="multiplier degree bound over Z[s] (default deg(disc) + 2)")
    k.set_defaults(func=cmd_kahler)

    vp = sub.add_parser("verify-paper", parents=[common], help="run the pinned example suite")
    vp.add_argument("--only", action="append", help="check id (repeatable)")
    vp.add_argument("--list", action="store_true")
    vp.add_argument("--workers", type=int, default=4)
    vp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    rep = Report(["coverforge", *argv])
    try:
        args.func(args, rep)
    except (UsageError, ParseError, AlgebraError, CocycleError, cv.CoverError, ValueError, TypeError, KeyError, OSError) as exc:
        print(f"coverforge: error: {exc}", file=sys.stderr)
        return 2
    print(rep.render(args.format))
    return rep.exit_code(args.strict)


if __name__ == "__main__":
    sys.exit(main())
