import pytest
from hypothesis import given, strategies as st

from qrr.checker.catalogue import exact_eq29x, exact_eq317x
from qrr.polynomials import ARITY, POLYNOMIALS, SOURCES, derived, get
from qrr.polyring import (
    MultiPoly, QPoly, UnassignedVariable, coeff_substitute, compose, eval_series, exact_equal, gens,
    parse_poly, rename, to_string,
)
from qrr.products import euler_f, poch, pochhammer
from qrr.rrcf import rr_at
from qrr.series import LaurentSeries, invert, mul, pow, shift

from conftest import series

q, a, b, c, d, e = gens()


def R(m, n):
    return rr_at(m, n).series


class TestArithmetic:
    def test_square(self):
        assert (a + b) ** 2 == a**2 + 2*a*b + b**2

    def test_zero(self):
        assert (P := get("P")) * MultiPoly() == MultiPoly() and not (P * 0).flat_terms

    def test_pow_zero(self):
        assert (a + q) ** 0 == MultiPoly.constant(1)

    def test_sub_and_neg(self):
        assert (a - a).is_zero() and -(a - b) == b - a

    def test_views(self):
        p = 3*q**2*a*c - q*a + 5
        assert p.coefficient((1, 0, 1, 0, 0)) == QPoly({2: 3})
        assert p.variables() == ("a", "c")
        assert p.degree("q") == 2 and p.degree("a") == 1 and p.degree("e") == 0
        assert len(p) == 3

    def test_to_string_round_trip(self):
        p = get("B")
        assert parse_poly(to_string(p)) == p


class TestTranscription:
    def test_term_counts(self):
        counts = {name: len(p) for name, p in POLYNOMIALS.items()}
        assert counts == {"P": 27, "Q": 22, "X": 15, "Y": 5, "A": 9, "B": 35, "Z0": 3, "F": 27,
                          "C": 52, "G0": 11, "G1": 10}

    def test_arity_covers_sources(self):
        assert set(ARITY) == set(SOURCES)
        for name, p in POLYNOMIALS.items():
            assert all(p.degree(v) == 0 for v in "abcde"[ARITY[name]:]), name

    def test_x_coefficients(self):
        X = get("X")
        assert X.coefficient((7, 0, 2, 0, 0)).terms == {2: 1}
        assert X.coefficient((8, 1, 0, 0, 0)).terms == {1: 1}
        assert X.coefficient((0, 1, 2, 0, 0)).terms == {1: -1}
        assert all(vec[0] > 0 or vec == (0, 1, 2, 0, 0) for vec in X.terms)

    def test_p_coefficients(self):
        P = get("P")
        assert P.coefficient((4, 0, 0, 0, 0)).terms == {0: 5}
        assert P.coefficient((8, 0, 4, 0, 0)).terms == {4: 1}
        assert P.coefficient((0, 0, 1, 0, 0)).terms == {0: -2}
        assert P.degree("q") == 4

    def test_q_factored_form(self):
        expanded = a**2*b**6*(b + a**2)**4*(c - b**2) + c**3*(c + b**2)**2*(b - a**2)**3
        assert get("Q") == expanded and get("Q").degree("q") == 0

    def test_degrees(self):
        assert get("C").degree("q") == 16 and get("B").degree("q") == 8 and get("F").degree("q") == 8
        assert max(get(n).degree(v) for n in SOURCES for v in "abcde") == 12  # b^12 in Q

    def test_g_and_z0(self):
        assert get("Z0") == q**2*a*b**5 + 3*q*b**3 + 3*a
        assert get("G1").coefficient((1, 3, 5, 0, 0)).terms == {5: 2}

    def test_unknown_name(self):
        with pytest.raises(KeyError):
            get("W")


class TestCoeffSubstitute:
    def test_identity(self):
        assert coeff_substitute(get("P"), 1) == get("P")

    def test_y_doubling(self):
        expected = q**2*(-a**7 + 2*a**5*b + 5*a**3*b**2) - 3*a**2 + b
        assert coeff_substitute(get("Y"), 2) == expected == derived("Y", 2)

    def test_commutes_with_mul(self):
        X, Y = get("X"), get("Y")
        assert coeff_substitute(X * Y, 3) == coeff_substitute(X, 3) * coeff_substitute(Y, 3)

    def test_p0_eta_quotient(self):
        n = 300
        P0 = derived("P", 2)
        num = eval_series(P0, {"a": R(2, n), "b": R(4, n), "c": R(8, n)}, n)
        lhs = mul(num, invert(mul(mul(pow(R(2, n), 4), R(4, n)), pow(R(8, n), 2))))
        rhs = shift(mul(pow(pochhammer(poch(2, base=2), n), 6), pow(pochhammer(poch(10, base=10), n), -6)), 2)
        assert lhs.truncate(n) == rhs.truncate(n)


class TestRenameCompose:
    def test_simultaneous_rename(self):
        assert rename(a**2*b, {"a": "b", "b": "a"}) == b**2*a

    def test_compose(self):
        assert compose(a*b + c, {"a": q*b, "c": MultiPoly.constant(2)}) == q*b**2 + 2


class TestEval:
    def test_simple(self):
        r = eval_series(a + b, {"a": LaurentSeries.one(10), "b": LaurentSeries.monomial(1, 10)}, 10)
        assert r.to_dict() == {0: 1, 1: 1}

    def test_unassigned(self):
        with pytest.raises(UnassignedVariable):
            eval_series(a * c, {"a": LaurentSeries.one(5)}, 5)

    def test_theorem_eta_quotient(self):
        n = 300
        r1, r2, r4 = R(1, n), R(2, n), R(4, n)
        num = eval_series(get("P"), {"a": r1, "b": r2, "c": r4}, n)
        lhs = mul(num, invert(mul(mul(pow(r1, 4), r2), pow(r4, 2))))
        rhs = shift(mul(pow(euler_f(n), 6), pow(pochhammer(poch(5, base=5), n), -6)), 1)
        assert lhs.truncate(n) == rhs.truncate(n)

    def test_x_both_sides_of_reduction(self):
        n = 60
        env = {"a": R(1, n), "b": R(2, n), "c": R(4, n)}
        lhs, rhs = exact_eq29x()
        assert eval_series(lhs, env, n) == eval_series(rhs, env, n)

    @given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 2), st.integers(0, 2), st.integers(-3, 3)),
                    max_size=4),
           st.lists(st.tuples(st.integers(0, 3), st.integers(0, 2), st.integers(0, 2), st.integers(-3, 3)),
                    max_size=4),
           series(min_valuation=0, max_order=20), series(min_valuation=0, max_order=20))
    def test_homomorphism(self, t1, t2, s1, s2):
        def build(ts):
            return MultiPoly({(k, (i, j, 0, 0, 0)): c for k, i, j, c in ts})
        p, r = build(t1), build(t2)
        env = {"a": s1, "b": s2}
        n = 25
        assert eval_series(p * r, env, n) == mul(eval_series(p, env, n), eval_series(r, env, n))


class TestExactEqual:
    def test_perturbation(self):
        P = get("P")
        ok, diff = exact_equal(P, P + q*a)
        assert not ok
        assert (diff.q_exponent, diff.exponents, diff.delta) == (1, (1, 0, 0, 0, 0), -1)

    def test_equal(self):
        assert exact_equal(get("C"), get("C")) == (True, None)

    def test_reduction_identity_with_typo_fails(self):
        # the last factor's fifth term must be q^2 a^2 c^2 e; b^2 in its place breaks exactness
        lhs, rhs = exact_eq317x()
        assert exact_equal(lhs, rhs) == (True, None)
        K = q**4*b*c*d*e*(1 + 2*q**4*c**5)
        typo = rhs - K*(q**2*a**2*c**2*e - q**2*a**2*b**2*e)
        ok, diff = exact_equal(lhs, typo)
        assert not ok
        assert (diff.q_exponent, diff.exponents, diff.delta) == (6, (2, 1, 3, 1, 2), 1)


class TestParsePoly:
    def test_implicit_multiplication(self):
        assert parse_poly("2q^3a b^2(c - 1)") == 2*q**3*a*b**2*(c - 1)

    def test_unary_minus_and_parens(self):
        assert parse_poly("-(a+b)^2 + q") == -(a + b)**2 + q

    @pytest.mark.parametrize("bad", ["a +", "x", "(a", "a^"])
    def test_errors(self, bad):
        with pytest.raises(ValueError):
            parse_poly(bad)
