import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from coverforge import catalog
from coverforge.ring import (
    GF,
    QQ,
    ZZ,
    CapabilityError,
    Localization,
    Matrix,
    ParseError,
    PolynomialRing,
    RingMismatchError,
    elementary_divisors,
    parse_element,
    parse_ring,
    smith_normal_form,
    solve_integer,
)
from oracles import S, gcd_of_minors_divisors, to_sympy

QS = PolynomialRing(QQ, ["s"])
ZS = PolynomialRing(ZZ, ["s"])


def test_expand_difference_of_squares():
    R = parse_ring("ZZ[x]")
    x = R("x")
    assert (x + 1) * (x - 1) == x**2 - 1
    assert str((x + 1) * (x - 1)) == "x^2 - 1"


def test_fifth_root_reduces_by_modulus():
    R = parse_ring("ZZ[xi]/(xi^4+xi^3+xi^2+xi+1)")
    xi = R("xi")
    assert xi**4 == -1 - xi - xi**2 - xi**3
    assert xi**5 == R.one


def test_sqrt_five_in_cyclotomic_ring():
    _, d2, _ = catalog.cyclotomic_d()
    assert d2 * d2 == d2.ring(5)


def test_mixed_rings_rejected():
    with pytest.raises(RingMismatchError):
        ZZ(1) + QS(1)


@pytest.mark.parametrize(
    "ring, text, unit",
    [(ZS, "1", True), (ZS, "s", False), (ZS, "-1", True), (ZS, "2", False), (QS, "2", True), (GF(7), "3", True)],
)
def test_is_unit_polynomial(ring, text, unit):
    assert ring(text).is_unit() is unit


@pytest.mark.parametrize("text, unit", [("5", False), ("1+2*i", False), ("2", True), ("i", True), ("1+i", True)])
def test_is_unit_gaussian_localized_at_two(text, unit):
    R = parse_ring("ZZ[i]/(i^2+1)[1/2]")
    assert R(text).is_unit() is unit


def test_localization_bounded_inverse_search_agrees():
    # N(1+2i) = 5 is not a power of 2: no (a + b i)/2^k times 1+2i gives 1 for small a, b, k
    R = Localization(catalog.gaussian(), 2)
    z = R("1+2*i")
    for k in range(4):
        for a in range(-8, 9):
            for b in range(-8, 9):
                cand = R(f"{a}+{b}*i") * R.inverse(R(2)) ** k
                assert cand * z != R.one
    assert (R(2) * R.inverse(R(2))) == R.one


def test_localization_equality_is_cross_multiplied():
    R = Localization(ZZ, 2)
    half = R.inverse(R(2))
    assert R(3) * half == R(6) * half * half
    assert R(3) * half != R(3)


def test_is_unit_unsupported_ring_is_capability_error():
    R = parse_ring("ZZ[i]/(i^2+1)[x]")
    with pytest.raises(CapabilityError):
        R("x + i").is_unit()


@pytest.mark.parametrize(
    "ring, a, b, q",
    [(QS, "s", "s^3", "s^2"), (QS, "s^2", "s", None), (ZS, "3", "27*s^4", "9*s^4"), (ZZ, "0", "0", "0"), (ZZ, "0", "5", None)],
)
def test_divides(ring, a, b, q):
    got = ring.divides(ring(a), ring(b))
    assert (got is None) if q is None else got == ring(q)


def test_snf_identity():
    D, U, V = smith_normal_form(Matrix.identity(ZZ, 3))
    assert D == Matrix.identity(ZZ, 3)


def test_snf_integer_example():
    M = Matrix(ZZ, [[2, 4], [6, 8]])
    D, U, V = smith_normal_form(M)
    assert D == Matrix(ZZ, [[2, 0], [0, 4]])
    assert U * M * V == D
    assert gcd_of_minors_divisors([[2, 4], [6, 8]]) == [2, 4]


def test_snf_polynomial_example():
    s = QS.gen(0)
    M = Matrix(QS, [[s, s**2], [0, s]])
    D, U, V = smith_normal_form(M)
    assert D == Matrix(QS, [[s, 0], [0, s]])
    assert U * M * V == D
    assert gcd_of_minors_divisors([[S, S**2], [0, S]], S) == [S, S]


def test_snf_unsupported_ring():
    R = parse_ring("ZZ[x,y]")
    with pytest.raises(CapabilityError):
        smith_normal_form(Matrix(R, [[R("x")]]))


def test_solve_integer():
    assert solve_integer([[2, 0], [0, 3]], [4, 9]) == [2, 3]
    assert solve_integer([[2]], [3]) is None


@pytest.mark.parametrize(
    "text, describe",
    [("ZZ", "ZZ"), ("QQ", "QQ"), ("GF(5)", "GF(5)"), ("ZZ[s]", "ZZ[s]"), ("QQ[x,y]", "QQ[x,y]"),
     ("ZZ[i]/(i^2+1)", "ZZ[i]/(i^2+1)"), ("ZZ[i]/(i^2+1)[1/2]", "ZZ[i]/(i^2+1)[1/2]")],
)
def test_ring_grammar_round_trip(text, describe):
    assert parse_ring(text).describe() == describe


@pytest.mark.parametrize("bad", ["ZZ[", "GF(4)", "RR", "ZZ[s]/(", ""])
def test_ring_grammar_rejects(bad):
    with pytest.raises((ParseError, ValueError)):
        parse_ring(bad)


def test_polynomial_parsing_implicit_product():
    R = parse_ring("QQ[x,y]")
    assert parse_element(R, "2x^2y") == R("2*x^2*y")
    assert R("3/2*x") * 2 == R("3*x")


def test_prime_field_and_rational_canonical():
    assert GF(5)(7) == GF(5)(2)
    q = QQ("6/-4")
    assert str(q) == "-3/2"


# -- properties ------------------------------------------------------------------------
small_poly = st.lists(st.integers(-4, 4), min_size=1, max_size=4)


def poly(R, coeffs):
    s = R.gen(0)
    out = R.zero
    for k, c in enumerate(coeffs):
        out = out + R(c) * s**k
    return out


@given(small_poly, small_poly, small_poly)
def test_ring_axioms_polynomials(a, b, c):
    for R in (ZS, QS, PolynomialRing(GF(3), ["s"])):
        x, y, z = poly(R, a), poly(R, b), poly(R, c)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x * y == y * x
        assert x + (-x) == R.zero


gauss = st.tuples(st.integers(-5, 5), st.integers(-5, 5))


@given(gauss, gauss, gauss, st.integers(0, 3), st.integers(0, 3))
def test_ring_axioms_localized_gaussian(a, b, c, j, k):
    R = parse_ring("ZZ[i]/(i^2+1)[1/2]")
    h = R.inverse(R(2))
    x, y, z = R(f"{a[0]}+{a[1]}*i") * h**j, R(f"{b[0]}+{b[1]}*i") * h**k, R(f"{c[0]}+{c[1]}*i")
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    # equality is compatible with arithmetic
    assert x * R(2) ** 3 * h**3 == x


@given(small_poly, small_poly)
def test_divides_returns_exact_quotient(a, b):
    x, y = poly(ZS, a), poly(ZS, b)
    q = ZS.divides(x, x * y)
    assert q is not None and x * q == x * y
    q2 = ZS.divides(x, y)
    if q2 is not None:
        assert x * q2 == y


int_matrix = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


@settings(max_examples=200)
@given(int_matrix, st.randoms(use_true_random=False))
def test_snf_integer_properties(rows, rnd):
    M = Matrix(ZZ, rows)
    D, U, V = smith_normal_form(M)
    assert U * M * V == D and D.is_diagonal()
    divs = [d for d in D.diagonal() if not d.is_zero()]
    for a, b in zip(divs, divs[1:]):
        assert ZZ.divides(a, b) is not None
    assert [int(str(d)) for d in divs] == [int(v) for v in gcd_of_minors_divisors(rows)]
    perm = rows[:]
    rnd.shuffle(perm)
    assert elementary_divisors(Matrix(ZZ, perm)) == elementary_divisors(M)


poly_matrix = st.integers(1, 3).flatmap(
    lambda m: st.integers(1, 3).flatmap(
        lambda n: st.lists(st.lists(st.lists(st.integers(-2, 2), min_size=1, max_size=3), min_size=n, max_size=n),
                           min_size=m, max_size=m)
    )
)


@settings(max_examples=100)
@given(poly_matrix)
def test_snf_polynomial_properties(rows):
    M = Matrix(QS, [[poly(QS, c) for c in row] for row in rows])
    D, U, V = smith_normal_form(M)
    assert U * M * V == D and D.is_diagonal()
    divs = [d for d in D.diagonal() if not d.is_zero()]
    for a, b in zip(divs, divs[1:]):
        assert QS.divides(a, b) is not None
    expect = gcd_of_minors_divisors([[to_sympy(poly(QS, c)) for c in row] for row in rows], S)
    got = [sympy.Poly(to_sympy(d), S).monic().as_expr() for d in divs]
    assert [sympy.expand(g - e) for g, e in zip(got, expect)] == [0] * len(expect)
    assert len(got) == len(expect)
