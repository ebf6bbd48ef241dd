from math import gcd

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from coverforge import catalog
from coverforge.cocycle import Cocycle, Naturals, cyclic_pardini, pardini_epsilon
from coverforge.cover import BuildingDatum, monomial_cover, standard_cyclic
from coverforge.group import AbelianGroup
from coverforge.kahler import (
    UnsupportedBase,
    ann_snf,
    annihilator_bundle,
    annihilator_certificates,
    change_base,
    discriminant_in_annihilator,
    membership_certificate,
    omega_presentation,
    replay,
)
from coverforge.ring import GF, QQ, ZZ, PolynomialRing, parse_ring
from oracles import S, gcd_of_minors_divisors, to_sympy

QS = PolynomialRing(QQ, ["s"])
ZS = PolynomialRing(ZZ, ["s"])


def nodal_z():
    return catalog.nodal_mu3(ZZ)


def target(om, label, factor):
    R = om.ring
    t = [R.zero] * len(om.labels)
    t[om.labels.index(label)] = R(factor)
    return t


def test_mu2_rows():
    om = omega_presentation(catalog.mu2("x"))
    assert om.labels == [((0,), (1,)), ((1,), (1,))]
    assert [[str(c) for c in r] for r in om.rows] == [["0", "2"], ["2*x", "0"]]
    assert om.label(0) == "dv1" and om.label(1) == "v1 dv1"


def test_nodal_rows_include_differentiated_relations():
    om = omega_presentation(catalog.nodal_mu3())
    assert len(om.labels) == 6
    rows = {tuple(str(c) for c in r) for r in om.rows}
    # d(x^2 - s y) = 2 x dx - s dy, on the generators dv1, dv2, v1 dv1, ...
    j = {lab: k for k, lab in enumerate(om.labels)}
    want = ["0"] * 6
    want[j[((1,), (1,))]] = "2"
    want[j[((0,), (2,))]] = "-s"
    assert tuple(want) in rows


def test_ann_over_q_is_s_squared():
    gen, divs = ann_snf(omega_presentation(catalog.nodal_mu3()))
    assert gen == QS("s^2")
    sym = [[to_sympy(c) for c in row] for row in omega_presentation(catalog.nodal_mu3()).rows]
    assert sympy.expand(gcd_of_minors_divisors(sym, S)[-1] - S**2) == 0
    assert [str(x) for x in divs] == ["1", "1", "1", "s", "s^2", "s^2"]


def test_ann_mu2_is_s():
    gen, _ = ann_snf(omega_presentation(catalog.mu2("s", var="s")))
    assert gen == QS("s")


def test_ann_over_f2_and_f3():
    f2 = change_base(nodal_z(), GF(2))
    f3 = change_base(nodal_z(), GF(3))
    assert str(ann_snf(omega_presentation(f2))[0]) == "s"
    # 3 = 0 kills the relation that made dv torsion: a free summand appears
    assert ann_snf(omega_presentation(f3))[0].is_zero()


def test_ann_needs_field():
    with pytest.raises(UnsupportedBase):
        ann_snf(omega_presentation(nodal_z()))


def test_unsupported_bases():
    with pytest.raises(UnsupportedBase):
        omega_presentation(catalog.sqrt_two())
    R = parse_ring("QQ[x,y]")
    with pytest.raises(UnsupportedBase):
        omega_presentation(BuildingDatum.from_table(AbelianGroup.cyclic(2), R, {(1, 1): "x"}))


# -- certificates over Z[s] ------------------------------------------------------------
def test_three_s_squared_certified():
    om = omega_presentation(nodal_z())
    v = annihilator_certificates(om, "3*s^2", 2)
    assert v.kind == "CERTIFIED"
    assert all(replay(om, c) for c in v.witness.values())


def test_discriminant_certificate():
    om = omega_presentation(nodal_z())
    v = membership_certificate(om, target(om, ((0,), (1,)), "27*s^4"), 6)
    assert v.ok and replay(om, v.witness)


@pytest.mark.parametrize("degree", [0, 1, 2, 3])
def test_s_squared_not_found(degree):
    om = omega_presentation(nodal_z())
    v = membership_certificate(om, target(om, ((0,), (1,)), "s^2"), degree)
    assert v.kind == "NOT-FOUND" and v.status == "inconclusive"


def test_certificate_json():
    om = omega_presentation(nodal_z())
    v = membership_certificate(om, target(om, ((0,), (1,)), "3*s^2"), 2)
    doc = v.witness.to_json(om)
    assert doc["target"] == "(3*s^2)*dv1"
    assert doc["combination"]


def test_certificates_need_integers():
    om = omega_presentation(catalog.nodal_mu3())
    with pytest.raises(UnsupportedBase):
        membership_certificate(om, target(om, ((0,), (1,)), "1"), 1)


def test_bundle_pins_three_s_squared():
    kinds = [v.kind for v in annihilator_bundle(nodal_z(), "3*s^2", ["3*s", "s^2"])]
    assert kinds == ["ANN-Q", "CERTIFIED", "EXCLUDED", "EXCLUDED"]
    last = annihilator_bundle(nodal_z(), "3*s^2", ["s^2"])[-1]
    assert "GF(3)" in last.detail


# -- discriminant in the annihilator -------------------------------------------------------
@pytest.mark.parametrize(
    "datum",
    [catalog.nodal_mu3(), nodal_z(), standard_cyclic(2, 1, PolynomialRing(QQ, ["x"])),
     BuildingDatum.from_table(AbelianGroup.cyclic(2), QS, {(1, 1): "1"}), standard_cyclic(4, 1)],
)
def test_discriminant_annihilates(datum):
    assert discriminant_in_annihilator(datum).kind == "CONTAINED"


def test_torsor_omega_vanishes():
    d = BuildingDatum.from_table(AbelianGroup.cyclic(3), QS, {(1, 1): "1", (1, 2): "1", (2, 2): "1"})
    gen, divs = ann_snf(omega_presentation(d))
    assert gen == QS.one and all(x == QS.one for x in divs)


# -- properties -------------------------------------------------------------------------------
def monomial(n, counts):
    f = Cocycle.zero(AbelianGroup.cyclic(n), Naturals())
    units = [p for p in range(1, n) if gcd(p, n) == 1]
    for p, k in zip(units, counts):
        for _ in range(k):
            f = f + pardini_epsilon(cyclic_pardini(n, p))
    return f


@settings(max_examples=25)
@given(st.sampled_from([2, 3, 4]), st.lists(st.integers(0, 2), min_size=2, max_size=2))
def test_monomial_annihilator_is_power_of_s(n, counts):
    f = monomial(n, counts)
    gen, _ = ann_snf(omega_presentation(monomial_cover(QS, QS("s"), f)))
    if not gen.is_zero():
        assert gen == QS("s") ** QS.degree(gen)


@settings(max_examples=15)
@given(st.sampled_from([2, 3]), st.lists(st.integers(0, 2), min_size=2, max_size=2))
def test_q_annihilator_divides_integer_certificates(n, counts):
    f = monomial(n, counts)
    dz = monomial_cover(ZS, ZS("s"), f)
    gen, _ = ann_snf(omega_presentation(change_base(dz, QQ)))
    disc = discriminant_in_annihilator(dz)
    if disc.ok:
        d = QS(str(disc.data["discriminant"]))
        assert QS.divides(gen, d) is not None
