import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coverforge import catalog
from coverforge.cover import BuildingDatum
from coverforge.group import AbelianGroup
from coverforge.hopf import (
    AlgebraError,
    FiniteAlgebra,
    GroupAlgebraStructure,
    SearchCapExceeded,
    base_directions,
    cover_algebra,
    grouplike_residue_compare,
    grouplike_search,
    ideal_closure,
    is_grouplike_mod,
    is_hopf_ideal,
    stabilizer_ideal,
)
from oracles import rank_mod, span_contains

Z2 = AbelianGroup.cyclic(2)


def prime_field(p):
    return FiniteAlgebra(p, ["1"], [[[1]]])


def group_algebra(p, A):
    return GroupAlgebraStructure(prime_field(p), A)


def test_closure_of_zero_and_one():
    S = group_algebra(3, AbelianGroup.cyclic(3))
    assert ideal_closure(S, [S.zero()]).dim == 0
    assert ideal_closure(S, [S.one()]).dim == S.dim


def test_closure_is_closed_and_matches_oracle():
    S = group_algebra(3, Z2)
    t = S.group_element((1,))
    I = ideal_closure(S, [t - S.one()])
    assert I.is_closed() and I.dim == 1
    assert rank_mod(list(I.basis()), 3) == 1


def test_zero_ideal_is_hopf():
    S = group_algebra(3, Z2)
    assert is_hopf_ideal(S, ideal_closure(S, [])) is None


def test_augmentation_ideal_is_hopf():
    S = group_algebra(3, Z2)
    I = ideal_closure(S, [S.group_element((1,)) - S.one()])
    assert is_hopf_ideal(S, I) is None


def test_unit_ideal_fails_counit():
    S = group_algebra(3, Z2)
    bad = is_hopf_ideal(S, ideal_closure(S, [S.one()]))
    assert bad.axiom == "counit"


def test_grouplike_examples():
    S = group_algebra(5, AbelianGroup.cyclic(3))
    I = ideal_closure(S, [])
    assert is_grouplike_mod(S, I, S.one())
    assert all(is_grouplike_mod(S, I, S.group_element(lam)) for lam in S.A)
    two = S.group_element((1,)) + S.group_element((2,))
    assert not is_grouplike_mod(S, I, two)


def test_search_without_directions():
    S = group_algebra(3, Z2)
    found = grouplike_search(S, ideal_closure(S, []), [])
    assert len(found) == 1 and np.array_equal(found[0], S.one())


def test_search_cap():
    S = group_algebra(3, Z2)
    with pytest.raises(SearchCapExceeded):
        grouplike_search(S, ideal_closure(S, []), [S.one()] * 3, cap=2)


def test_search_finds_group_elements():
    # over F_5 with all coordinate directions, 1 + c_1 ([1] - 1) + ... hits every [lam]
    S = group_algebra(5, AbelianGroup.cyclic(3))
    dirs = [S.group_element(lam) - S.one() for lam in S.A.nonzero()]
    found = grouplike_search(S, ideal_closure(S, []), dirs)
    want = {S.group_element(lam).tobytes() for lam in S.A}
    assert {g.tobytes() for g in found} == want


def test_structure_maps_are_algebra_maps():
    assert group_algebra(3, AbelianGroup((2, 2))).check_structure() is None
    S, _ = stabilizer_ideal(catalog.dual_numbers_sqrt(3))
    assert S.check_structure() is None


# -- residue comparison --------------------------------------------------------------------
def test_dual_numbers_residue_bijection():
    S, I = stabilizer_ideal(catalog.dual_numbers_sqrt(3))
    v = grouplike_residue_compare(S, I, ["a"])
    assert v.kind == "BIJECTION"


def test_dual_numbers_only_one_near_identity():
    S, I = stabilizer_ideal(catalog.dual_numbers_sqrt(3))
    found = grouplike_search(S, I, base_directions(S, ["x1"]))
    assert len(found) == 1
    assert not I.reduce(found[0] - S.one()).any()


def test_residue_field_base_is_identity():
    S = group_algebra(3, Z2)
    v = grouplike_residue_compare(S, ideal_closure(S, []), [])
    assert v.kind == "BIJECTION" and v.data["residue_classes"] == 2


def test_residue_refused_in_characteristic_two():
    S = group_algebra(2, Z2)
    v = grouplike_residue_compare(S, ideal_closure(S, []), [])
    assert v.kind == "REFUSED" and v.status == "inconclusive"


# -- stabilizers ------------------------------------------------------------------------------
def test_torsor_stabilizer_is_trivial():
    R = prime_field(3).ring()
    d = BuildingDatum.from_table(Z2, R, {(1, 1): 1})
    S, I = stabilizer_ideal(d)
    # v_1 is a unit, so [1] - 1 lies in I and the quotient is O_X
    assert I.contains(S.group_element((1,)) - S.one())
    assert I.codim == cover_algebra(d).dim


def test_zero_sections_stabilizer():
    R = prime_field(2).ring()
    d = BuildingDatum.from_table(Z2, R, {(1, 1): 0})
    S, I = stabilizer_ideal(d)
    x = S.base.basis("x1")
    gen = S.element({(1,): x, (0,): x})
    # x(T + 1) spans the ideal: T fixes it and x kills it
    assert I.dim == 1 and I.contains(gen)
    assert np.array_equal(S.base.mul(x, x), S.base.zero())


def test_klein_ideal_matches_generators():
    S, I, g = catalog.klein_witness()
    assert (S.base.dim, S.dim) == (36, 144)
    gens = []
    for lam in [(1, 0), (0, 1), (1, 1)]:
        x = S.base.basis("x" + "".join(map(str, lam)))
        gens.append(S.element({lam: x, (0, 0): -x}))
    J = ideal_closure(S, gens)
    assert J.dim == I.dim == 71
    assert all(I.contains(b) for b in J.basis())


def test_klein_witness_is_grouplike_and_not_one():
    S, I, g = catalog.klein_witness()
    assert is_hopf_ideal(S, I) is None
    assert is_grouplike_mod(S, I, g)
    assert not I.contains(g - S.one())


def test_klein_search_finds_witness():
    S, I, g = catalog.klein_witness()
    t = S.base.vec("ac")
    d = S.element({(1, 0): t, (0, 0): -t})
    found = grouplike_search(S, I, [d])
    assert len(found) == 2
    assert any(np.array_equal(x, I.reduce(g)) for x in found)


# -- finite algebras --------------------------------------------------------------------------
def test_finite_algebra_json_round_trip():
    data = {"p": 3, "basis": ["1", "a"], "mult": {"a*a": "0"}}
    E = FiniteAlgebra.from_json(data)
    assert E.dim == 2 and not E.mul(E.basis("a"), E.basis("a")).any()
    assert FiniteAlgebra.from_json(E.to_json()).to_json() == E.to_json()


def test_finite_algebra_rejects():
    with pytest.raises(AlgebraError):
        FiniteAlgebra.from_json({"p": 2, "basis": ["a", "1"], "mult": {}})
    with pytest.raises(AlgebraError):
        FiniteAlgebra.from_json({"p": 2, "basis": ["1", "a"], "mult": {}, "zeta": 1})
    # a*b = a but b*a = b: the reversed product disagrees
    with pytest.raises(AlgebraError):
        FiniteAlgebra.from_json({"p": 2, "basis": ["1", "a", "b"], "mult": {"a*b": "a", "b*a": "b"}})


def test_non_associative_table_rejected():
    # a^2 = b, ab = 0, b^2 = 1 gives (aa)b = 1 but a(ab) = 0
    with pytest.raises(AlgebraError):
        FiniteAlgebra.from_json({"p": 3, "basis": ["1", "a", "b"], "mult": {"a*a": "b", "b*b": "1"}})


def test_klein_base_dimension():
    E = catalog.klein_base()
    assert E.dim == 9
    assert np.array_equal(E.mul(E.vec("b"), E.vec("c")), E.vec("ab + ac"))


@settings(max_examples=60)
@given(st.lists(st.integers(0, 2), min_size=4, max_size=4), st.lists(st.integers(0, 2), min_size=4, max_size=4))
def test_closure_contains_products(u, v):
    S = group_algebra(3, AbelianGroup((2, 2)))
    x, y = np.array(u), np.array(v)
    I = ideal_closure(S, [x])
    assert I.contains(S.mul(x, y))
    assert span_contains(list(I.basis()), S.mul(x, y), 3) if I.dim else not S.mul(x, y).any()


def test_dual_numbers_algebra():
    E = catalog.dual_numbers(5)
    a = E.basis("a")
    assert not E.mul(a, a).any()
    assert E.is_unit(E.one() + a) and not E.is_unit(a)
    O = cover_algebra(catalog.dual_numbers_sqrt(5))
    x = O.basis("x1")
    assert np.array_equal(O.mul(x, x), O.basis("a"))
    assert O.dim == 4
