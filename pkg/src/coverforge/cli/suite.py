"""Pinned reproductions of the worked examples, runnable as one suite."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from math import gcd

from coverforge import catalog
from coverforge.cocycle import cyclic_pardini, pardini_epsilon
from coverforge.cover import (
    cover_cocycle,
    discriminant_formula,
    discriminant_trace,
    inverse_torsor,
    is_torsor,
    is_trivial,
    standard_cyclic,
    wedge_same,
)
from coverforge.fpmonoid import cancellation_certificate, is_integral_up_to
from coverforge.group import AbelianGroup
from coverforge.hopf import base_directions, grouplike_search, is_grouplike_mod, is_hopf_ideal, stabilizer_ideal
from coverforge.kahler import example_bundle_mu3
from coverforge.ring import QQ, ZZ
from coverforge.universal import cocycle_hom_bijection, pa_int_contains_both_ways, universal
from coverforge.verdict import Verdict, failed, inconclusive, passed


def _all(kind: str, verdicts, detail: str = "") -> Verdict:
    verdicts = list(verdicts)
    for v in verdicts:
        if not v.ok:
            return v
    return passed(kind, detail=detail or "; ".join(str(v) for v in verdicts))


def universal_z3() -> Verdict:
    U = universal(AbelianGroup.cyclic(3))
    p_gens, q_gens = U.int_generators()
    want_p, want_q = [(-1, 2), (2, -1)], [(-1, 2), (0, 1), (1, 0), (2, -1)]
    if sorted(p_gens) != want_p or sorted(q_gens) != want_q:
        return failed("GENERATORS", witness=(p_gens, q_gens))
    if not pa_int_contains_both_ways(U, want_p):
        return failed("MEMBERSHIP", witness=want_p)
    return passed("MATCH", detail=f"P_int {sorted(p_gens)}, Q_int {sorted(q_gens)}")


def klein_cube_integrality(bound: int = 4) -> Verdict:
    U = universal(AbelianGroup((2, 2, 2)))
    bounded = is_integral_up_to(U.P, bound)
    if not bounded.ok:
        return bounded
    cert = cancellation_certificate(U.P, U.generator_weights)
    if cert.status == "fail":
        return cert
    if cert.ok:
        return passed("INTEGRAL", bound=bound, detail=f"no collision up to degree {bound}; cancellation certificate holds")
    return inconclusive("NO-COUNTEREXAMPLE", bound=bound, detail=bounded.detail)


def nodal_discriminant() -> Verdict:
    d = catalog.nodal_mu3(ZZ)
    s = d.R.gen(0)
    formula, trace = discriminant_formula(d), discriminant_trace(d)
    if formula != 27 * s**4 or trace not in (27 * s**4, -27 * s**4):
        return failed("MISMATCH", witness=(str(formula), str(trace)))
    return passed("MATCH", detail=f"formula {formula}, trace determinant {trace}")


def nodal_annihilator() -> Verdict:
    return _all("BUNDLE", example_bundle_mu3())


def pardini_orders(max_n: int = 8) -> Verdict:
    count = 0
    for n in range(2, max_n + 1):
        for psi in range(1, n):
            if gcd(psi, n) != 1:
                continue
            d = standard_cyclic(n, psi)
            if cover_cocycle(d, [d.R.gen(0)]) != pardini_epsilon(cyclic_pardini(n, psi)):
                return failed("MISMATCH", witness=(n, psi))
            count += 1
    return passed("MATCH", detail=f"{count} cyclic data up to n = {max_n}")


def wedge_decompositions() -> Verdict:
    w1 = wedge_same(standard_cyclic(3, 1), standard_cyclic(3, 2))
    if w1 != catalog.nodal_mu3(QQ):
        return failed("MISMATCH", witness=str(w1))
    w2 = wedge_same(catalog.mu2("x", "x"), catalog.mu2("x", "x"))
    if w2 != catalog.mu2("x^2", "x"):
        return failed("MISMATCH", witness=str(w2))
    return passed("MATCH", detail="twisted cyclic pair gives the nodal datum; doubled root gives z^2 = x^2")


def klein_grouplike() -> Verdict:
    S, I, g = catalog.klein_witness()
    if S.dim != 144 or S.base.dim != 36:
        return failed("DIMENSION", witness=(S.base.dim, S.dim))
    bad = is_hopf_ideal(S, I)
    if bad is not None:
        return failed("NOT-HOPF", witness=str(bad))
    if not is_grouplike_mod(S, I, g):
        return failed("NOT-GROUPLIKE", witness=S.format(g))
    if I.contains(g - S.one()):
        return failed("TRIVIAL", witness=S.format(g))
    return passed("WITNESS", detail=f"ideal of dim {I.dim}; {S.format(g)} is group-like and not 1", ideal_dim=I.dim)


def dual_numbers_grouplikes() -> Verdict:
    S, I = stabilizer_ideal(catalog.dual_numbers_sqrt(3))
    dirs = base_directions(S, ["x1"])
    found = grouplike_search(S, I, dirs)
    if len(found) != 1 or I.reduce(found[0] - S.one()).any():
        return failed("EXTRA", witness=[S.format(g) for g in found])
    return passed("ONLY-ONE", detail=f"searched {3 ** len(dirs)} elements over {len(dirs)} directions")


def cyclotomic_five() -> Verdict:
    bad = [k for k, (lhs, rhs) in catalog.cyclotomic_products().items() if lhs != rhs]
    if bad:
        return failed("PRODUCTS", witness=bad)
    d2, d10 = catalog.cyclotomic_datum(2), catalog.cyclotomic_datum(10)
    if is_torsor(d2) or not is_torsor(d10):
        return failed("TORSOR", witness=(is_torsor(d2), is_torsor(d10)))
    if not is_trivial(wedge_same(inverse_torsor(d10), d10)):
        return failed("INVERSE")
    return passed("MATCH", detail="six products match; torsor only after inverting 5; inverse wedge trivial")


def cocycle_bijection(bound: int = 2) -> Verdict:
    groups = [AbelianGroup(o) for o in [(2,), (3,), (4,), (2, 2)]]
    return _all("BIJECTION", [cocycle_hom_bijection(A, bound) for A in groups])


CHECKS = {
    "universal-z3-integral": universal_z3,
    "klein-cube-integrality": klein_cube_integrality,
    "nodal-discriminant": nodal_discriminant,
    "nodal-annihilator": nodal_annihilator,
    "pardini-orders": pardini_orders,
    "wedge-decompositions": wedge_decompositions,
    "klein-grouplike": klein_grouplike,
    "dual-numbers-grouplikes": dual_numbers_grouplikes,
    "cyclotomic-five": cyclotomic_five,
    "cocycle-hom-bijection": cocycle_bijection,
}


def _timed(fn):
    t = time.perf_counter()
    try:
        v = fn()
    except Exception as exc:  # a crash is reported as a failed check
        v = failed("ERROR", witness=type(exc).__name__, detail=str(exc))
    return v, time.perf_counter() - t


def run_suite(only=None, workers: int = 4) -> list:
    """Run the selected checks concurrently; results come back in registry order."""
    ids = list(CHECKS) if not only else list(only)
    unknown = [i for i in ids if i not in CHECKS]
    if unknown:
        raise KeyError(f"unknown check id(s): {', '.join(unknown)}")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_timed, CHECKS[i]) for i in ids]
        return [(i, *f.result()) for i, f in zip(ids, futures)]
