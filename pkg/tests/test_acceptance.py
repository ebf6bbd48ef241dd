"""Acceptance criteria, one block per criterion.

Every test carries ``@pytest.mark.criterion(n)``; the terminal summary prints
one pass/fail line per criterion.  Where a stated value is wrong the
literal form is kept as a strict xfail next to a test of the corrected value.
"""

import itertools
import time
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coverforge import catalog
from coverforge.cocycle import (
    cocycle_from_extension,
    cyclic_pardini,
    extension_from_cocycle,
    pardini_epsilon,
)
from coverforge.cover import (
    BuildingDatum,
    cover_cocycle,
    discriminant_formula,
    discriminant_trace,
    inverse_torsor,
    is_torsor,
    is_trivial,
    standard_cyclic,
    validate_datum,
    wedge_same,
)
from coverforge.fpmonoid import cancellation_certificate, is_integral_up_to
from coverforge.group import AbelianGroup
from coverforge.hopf import base_directions, grouplike_search, is_grouplike_mod, is_hopf_ideal, stabilizer_ideal
from coverforge.kahler import ann_snf, annihilator_certificates, change_base, omega_presentation
from coverforge.ring import GF, QQ, ZZ, Localization, PolynomialRing
from coverforge.universal import (
    cocycle_hom_bijection,
    cocycle_of_hom,
    hom_vector,
    natural_cocycles,
    pa_int_contains_both_ways,
    universal,
)
import property_suites as ps

QS = PolynomialRing(QQ, ["s"])
SUITE = settings(max_examples=1000)


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


# -- 1 -------------------------------------------------------------------------------------
@pytest.mark.criterion(1)
def test_z3_integral_generators():
    with Timer() as t:
        U = universal(AbelianGroup.cyclic(3))
        p, q = U.int_generators()
        assert set(p) == {(2, -1), (-1, 2)}
        assert set(q) == {(1, 0), (0, 1), (2, -1), (-1, 2)}
        assert pa_int_contains_both_ways(U, [(2, -1), (-1, 2)])
    assert t.seconds < 1


# -- 2 -------------------------------------------------------------------------------------
@pytest.mark.criterion(2)
@pytest.mark.xfail(strict=True, reason="P_A for (Z/2)^3 is cancellative: no counterexample exists at any degree")
def test_cube_counterexample_as_stated():
    U = universal(AbelianGroup((2, 2, 2)))
    v = is_integral_up_to(U.P, 6)
    assert v.kind == "COUNTEREXAMPLE"


@pytest.mark.criterion(2)
def test_cube_bounded_search_and_certificate():
    U = universal(AbelianGroup((2, 2, 2)))
    with Timer() as t:
        v = is_integral_up_to(U.P, 4)
    assert v.kind == "YES" and t.seconds < 300
    assert cancellation_certificate(U.P, U.generator_weights).kind == "INTEGRAL"


@pytest.mark.criterion(2)
@pytest.mark.parametrize("orders", [(8,), (2, 4)])
def test_non_integral_witness_verified(orders):
    U = universal(AbelianGroup(orders))
    v = cancellation_certificate(U.P, U.generator_weights)
    x, y = v.witness[:2]
    assert U.phi(x) == U.phi(y)
    assert U.P.normal_form(x) != U.P.normal_form(y)
    # some generator g gives x + g = y + g
    assert any(U.P.equal(U.P.add(x, U.P.gen(i)), U.P.add(y, U.P.gen(i))) for i in range(U.P.rank))


# -- 3 -------------------------------------------------------------------------------------
@pytest.mark.criterion(3)
def test_nodal_discriminant():
    with Timer() as t:
        d = catalog.nodal_mu3()
        assert discriminant_formula(d) == QS("27*s^4")
        assert discriminant_trace(d) in (QS("27*s^4"), QS("-27*s^4"))
    assert t.seconds < 1


@pytest.mark.criterion(3)
def test_nodal_annihilator_bundle():
    dz = catalog.nodal_mu3(ZZ)
    with Timer() as t:
        assert ann_snf(omega_presentation(change_base(dz, QQ)))[0] == QS("s^2")
        v = annihilator_certificates(omega_presentation(dz), "3*s^2", 3)
        assert v.kind == "CERTIFIED" and v.bound == 3
        f3 = change_base(dz, GF(3))
        gen3, _ = ann_snf(omega_presentation(f3))
        assert f3.R.divides(gen3, f3.R("s^2")) is None
    assert t.seconds < 30


@pytest.mark.criterion(3)
@pytest.mark.xfail(strict=True, reason="over F_2[s] the annihilator is (s): s already kills every generator")
def test_nodal_annihilator_f2_as_stated():
    f2 = change_base(catalog.nodal_mu3(ZZ), GF(2))
    assert ann_snf(omega_presentation(f2))[0] == f2.R("s^2")


@pytest.mark.criterion(3)
def test_nodal_annihilator_f2_corrected():
    f2 = change_base(catalog.nodal_mu3(ZZ), GF(2))
    assert ann_snf(omega_presentation(f2))[0] == f2.R("s")


# -- 4 -------------------------------------------------------------------------------------
@pytest.mark.criterion(4)
def test_cyclic_orders_match_epsilon():
    with Timer() as t:
        for n in range(1, 9):
            for psi in range(1, max(n, 2)):
                if gcd(psi, n) != 1:
                    continue
                d = standard_cyclic(n, psi, QS)
                assert cover_cocycle(d, [QS("s")]) == pardini_epsilon(cyclic_pardini(n, psi))
    assert t.seconds < 10


# -- 5 -------------------------------------------------------------------------------------
@pytest.mark.criterion(5)
def test_wedge_decompositions():
    with Timer() as t:
        w = wedge_same(standard_cyclic(3, 1, QS), standard_cyclic(3, 2, QS))
        assert w.table() == catalog.nodal_mu3().table()
        r = catalog.mu2("x")
        assert wedge_same(r, r).table() == catalog.mu2("x^2").table()
    assert t.seconds < 1


# -- 6 -------------------------------------------------------------------------------------
@pytest.mark.criterion(6)
def test_klein_grouplike_witness():
    with Timer() as t:
        assert catalog.klein_base().dim == 9
        S, I, g = catalog.klein_witness()
        assert S.dim == 144
        assert is_hopf_ideal(S, I) is None
        assert is_grouplike_mod(S, I, g)
        assert not I.contains(g - S.one())
    assert t.seconds < 120


# -- 7 -------------------------------------------------------------------------------------
@pytest.mark.criterion(7)
def test_dual_numbers_only_trivial_grouplike():
    with Timer() as t:
        S, I = stabilizer_ideal(catalog.dual_numbers_sqrt(3))
        found = grouplike_search(S, I, base_directions(S, ["x1"]))
        assert len(found) == 1
        assert np.array_equal(found[0], I.reduce(S.one()))
    assert t.seconds < 10


# -- 8 -------------------------------------------------------------------------------------
LITERAL = {(1, 1): "-1-2*i", (1, 2): "1+2*i", (1, 3): "5", (2, 2): "5", (2, 3): "1-2*i", (3, 3): "-1+2*i"}


def product_mismatches(table):
    R = catalog.cyclotomic()
    ds = (R.one,) + catalog.cyclotomic_d()
    return [(a, b) for (a, b), s in table.items() if ds[a] * ds[b] != R(s) * ds[(a + b) % 4]]


@pytest.mark.criterion(8)
@pytest.mark.xfail(strict=True, reason="d_1 d_3 = -5 in Z[i, xi]; the literal +5 also breaks the cocycle identity")
def test_cyclotomic_table_as_stated():
    assert product_mismatches(LITERAL) == []


@pytest.mark.criterion(8)
def test_cyclotomic_table_corrected():
    with Timer() as t:
        corrected = {**LITERAL, (1, 3): "-5"}
        assert product_mismatches(corrected) == []
        assert corrected == catalog.CYCLOTOMIC_SECTIONS
        d2, d10 = catalog.cyclotomic_datum(2), catalog.cyclotomic_datum(10)
        assert validate_datum(d2) is None
        assert not is_torsor(d2) and is_torsor(d10)
        assert is_trivial(wedge_same(inverse_torsor(d10), d10))
    assert t.seconds < 1


@pytest.mark.criterion(8)
def test_literal_table_is_not_a_cocycle():
    R = Localization(catalog.gaussian(), 2)
    d = BuildingDatum.from_table(AbelianGroup.cyclic(4), R, dict(LITERAL))
    v = validate_datum(d)
    assert v is not None and v.witness == ((1,), (1,), (2,))


# -- 9 -------------------------------------------------------------------------------------
GROUPS_9 = [(1,), (2,), (3,), (4,), (2, 2)]


def brute_cocycles(A, bound):
    """Tables on nonzero pairs checked against the three axioms by hand."""
    keys = [(a, b) for a, b in itertools.combinations_with_replacement(A.nonzero(), 2)]
    out = []
    for vals in itertools.product(range(bound + 1), repeat=len(keys)):
        t = dict(zip(keys, vals))

        def f(a, b):
            if a == A.zero or b == A.zero:
                return 0
            return t[(a, b)] if (a, b) in t else t[(b, a)]

        if all(f(a, b) + f(A.add(a, b), c) == f(b, c) + f(a, A.add(b, c)) for a in A for b in A for c in A):
            out.append(vals)
    return out


def brute_homs(U, bound):
    """Values on ``e_{a,b}`` (``a <= b`` nonzero) extended symmetrically, checked on every relation."""
    A = U.A
    keys = [(a, b) for a, b in itertools.combinations_with_replacement(A.nonzero(), 2)]
    out = []
    for vals in itertools.product(range(bound + 1), repeat=len(keys)):
        t = dict(zip(keys, vals))
        w = [0 if A.zero in (a, b) else t.get((a, b), t.get((b, a))) for a, b in U.pairs]
        if all(np.dot(w, u) == np.dot(w, v) for u, v in U.P.relations):
            out.append(tuple(w))
    return out


@pytest.mark.criterion(9)
@pytest.mark.parametrize("orders", GROUPS_9)
def test_cocycles_biject_with_homs(orders):
    A = AbelianGroup(orders)
    U = universal(A)
    with Timer() as t:
        assert cocycle_hom_bijection(A, 2).kind == "BIJECTION"
        cocycles = natural_cocycles(A, 2)
        assert len(cocycles) == len(brute_cocycles(A, 2))
        homs = set(brute_homs(U, 2))
        images = [hom_vector(U, f) for f in cocycles]
        assert len(set(images)) == len(images) and set(images) == homs
        for f, w in zip(cocycles, images):
            assert cocycle_of_hom(U, w) == f
            assert cocycle_from_extension(extension_from_cocycle(f)) == f
    assert t.seconds < 60


# -- 10 ------------------------------------------------------------------------------------
@pytest.mark.criterion(10)
@SUITE
@given(ps.presentations())
def test_suite_completion_vs_bfs(data):
    ps.check_completion_vs_bfs(*data)


@pytest.mark.criterion(10)
@SUITE
@given(ps.section_tables())
def test_suite_validity_vs_associativity(d):
    ps.check_validity_vs_associativity(d)


@pytest.mark.criterion(10)
@SUITE
@given(ps.valid_data(ps.UP_TO_SIX))
def test_suite_discriminant_formula_vs_trace(d):
    ps.check_discriminant(d)


@pytest.mark.criterion(10)
@SUITE
@given(ps.wedge_inputs())
def test_suite_wedge_additivity(data):
    ps.check_wedge_additivity(*data)


@pytest.mark.criterion(10)
@SUITE
@given(st.sampled_from(ps.UP_TO_SIX), st.data())
def test_suite_kummer_multiples(orders, data):
    U = universal(AbelianGroup(orders))
    ps.check_kummer_multiple(U, data.draw(ps.qa_elements(orders)))


@pytest.mark.criterion(10)
@SUITE
@given(st.sampled_from(ps.UP_TO_SIX), st.data())
def test_suite_h_identity(orders, data):
    U = universal(AbelianGroup(orders))
    ps.check_h_identity(U, data.draw(ps.qplus_vectors(orders)), data.draw(ps.qplus_vectors(orders)))


@pytest.mark.criterion(10)
@SUITE
@given(st.sampled_from(ps.UP_TO_SIX), st.data())
def test_suite_tau_eta_round_trip(orders, data):
    U = universal(AbelianGroup(orders))
    x = data.draw(ps.qa_elements(orders))
    p = data.draw(ps.qa_elements(orders)).p
    ps.check_tau_eta(U, x, p, data.draw(ps.qplus_vectors(orders)))
