"""Tests for j-invariant family matching: constants, curves, and points."""

import random
from fractions import Fraction

import pytest

from isogate.exact import PolyQ, parse_rational
from isogate.jmatch import (
    BivariatePoly,
    JFamily,
    MatchOutcome,
    Verdict,
    builtin_family,
    match_constant,
    match_families,
    verify_match_points,
)

FAMILY_NAMES = ["j13", "j7", "j5", "j3cube", "j2disc", "j2iso", "jNs7"]

# the rational j-invariants admitting a rational q-isogeny, for the three
# prime levels whose eliminations run on constants
J_CONSTANTS = {
    "q37": [Fraction(-9317), Fraction(-162677523113838677)],
    "q17": [Fraction(-882216989, 131072), Fraction(-297756989, 2)],
    "q11": [Fraction(-24729001), Fraction(-121)],
}

# frozen elimination data: family -> (elimination degree, quadratic field d
# of the unique degree-2 factor, or None when the polynomial is irreducible
# of degree > 2)
BATTERY_SHAPE = {
    "j7": (8, None),
    "j5": (6, None),
    "j3cube": (3, None),
    "j2disc": (2, "per-level"),
}

J2DISC_FIELD_D = {"q37": -5, "q17": -10, "q11": -1}


class TestBuiltinFamilies:
    def test_known_values(self):
        assert builtin_family("j5").eval(1) == 4096
        assert builtin_family("j2iso").eval(16) == 2048
        assert builtin_family("j3cube").eval(0) == 0
        assert builtin_family("j13").eval(1) == 2101248
        assert builtin_family("j2disc").eval(0) == 1728

    def test_cm_values_on_j7(self):
        # h = +-7 give the two curves with extra endomorphisms on this family
        assert builtin_family("j7").eval(7) == 16581375
        assert builtin_family("j7").eval(-7) == -3375

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            builtin_family("j6")

    def test_pole(self):
        with pytest.raises(ZeroDivisionError):
            builtin_family("j5").eval(0)

    def test_factored_forms_re_expand(self):
        for name in FAMILY_NAMES:
            fam = builtin_family(name)
            num = PolyQ([1])
            for base, exp in fam.numerator_factors:
                num = num * base ** exp
            assert num == fam.numerator
            if fam.denominator_factors is not None:
                den = PolyQ([1])
                for base, exp in fam.denominator_factors:
                    den = den * base ** exp
                assert den == fam.denominator

    def test_numerator_denominator_coprime(self):
        from isogate.exact import factor_over_Q
        for name in FAMILY_NAMES:
            fam = builtin_family(name)
            if fam.denominator.degree < 1:
                continue
            num_factors = {f.coeffs for f, _ in
                           factor_over_Q(fam.numerator).factors}
            den_factors = {f.coeffs for f, _ in
                           factor_over_Q(fam.denominator).factors}
            assert not (num_factors & den_factors)

    def test_degrees(self):
        expected = {"j13": (14, 1), "j7": (8, 1), "j5": (6, 1),
                    "j3cube": (3, 0), "j2disc": (2, 0), "j2iso": (3, 1),
                    "jNs7": (28, 21)}
        for name, (dn, dd) in expected.items():
            fam = builtin_family(name)
            assert fam.numerator.degree == dn
            assert fam.denominator.degree == dd

    def test_immutable(self):
        fam = builtin_family("j5")
        with pytest.raises(AttributeError):
            fam.name = "other"


class TestMatchConstant:
    def test_elimination_battery(self):
        """Every level-q constant against every small-prime family."""
        for qname, constants in J_CONSTANTS.items():
            for c in constants:
                for fname, (deg, _) in BATTERY_SHAPE.items():
                    out = match_constant(builtin_family(fname), c)
                    assert out.elimination.degree == deg, (qname, fname)
                    assert out.verdict == Verdict("NoDegreeLE2Root"), \
                        (qname, fname, c)
                    if fname in ("j7", "j5"):
                        # irreducible beyond quadratic: empty factor report
                        assert out.factors == []
                    if fname == "j3cube":
                        assert all(f.poly.degree != 1 for f in out.factors)

    def test_j2disc_imaginary_fields_reported(self):
        """The p = 2 eliminations stay quadratic but imaginary."""
        for qname, constants in J_CONSTANTS.items():
            for c in constants:
                out = match_constant(builtin_family("j2disc"), c)
                assert len(out.factors) == 1
                fac = out.factors[0]
                assert fac.poly.degree == 2
                assert fac.field_d == J2DISC_FIELD_D[qname]
                assert fac.field_d < 0
                assert out.verdict == Verdict("NoDegreeLE2Root")

    def test_q11_example(self):
        out = match_constant(builtin_family("j2disc"), -121)
        assert out.elimination == PolyQ([1849, 0, 1])
        assert out.verdict == Verdict("NoDegreeLE2Root")
        assert out.factors[0].field_d == -1

    def test_rational_root_reported(self):
        fam = builtin_family("j5")
        out = match_constant(fam, fam.eval(3))
        assert out.verdict.kind == "RationalRoot"
        assert Fraction(3) in out.verdict.values

    def test_real_quadratic_root_reported(self):
        # plant h = sqrt(2): j2disc gives j = 2 + 1728 = 1730, elimination
        # h^2 - 2 cuts out the real field d = 2
        out = match_constant(builtin_family("j2disc"), 1730)
        assert out.verdict == Verdict("QuadraticRoot", [2])

    def test_verdict_stable_under_representation(self):
        fam = builtin_family("j3cube")
        a = match_constant(fam, Fraction(-121))
        b = match_constant(fam, "-242/2")
        c = match_constant(fam, Fraction(242, -2))
        assert a.verdict == b.verdict == c.verdict
        assert a.elimination == b.elimination == c.elimination

    def test_string_input(self):
        out = match_constant(builtin_family("j2disc"), "-882216989/131072")
        assert out.elimination.degree == 2
        assert out.factors[0].field_d == -10

    def test_constant_j_sets_disjoint(self):
        assert not (set(J_CONSTANTS["q37"]) & set(J_CONSTANTS["q17"]))
        assert not (set(J_CONSTANTS["q37"]) & set(J_CONSTANTS["q11"]))
        assert not (set(J_CONSTANTS["q17"]) & set(J_CONSTANTS["q11"]))

    def test_elimination_degree_never_cancels(self):
        for name in FAMILY_NAMES:
            fam = builtin_family(name)
            want = max(fam.numerator.degree, fam.denominator.degree)
            for c in (Fraction(5), Fraction(-7, 3)):
                out = match_constant(fam, c)
                assert out.elimination.degree == want, name

    def test_round_trip_random(self):
        """A planted rational parameter is always recovered."""
        rng = random.Random(20210917)
        for name in FAMILY_NAMES:
            fam = builtin_family(name)
            found = 0
            while found < 100:
                h0 = Fraction(rng.randint(-40, 40), rng.randint(1, 12))
                if fam.denominator.eval(h0) == 0:
                    continue
                out = match_constant(fam, fam.eval(h0))
                assert out.verdict.kind == "RationalRoot", (name, h0)
                assert h0 in out.verdict.values, (name, h0)
                found += 1


class TestMatchFamilies:
    def test_symmetric_family_gives_difference_of_cubes(self):
        fam = builtin_family("j3cube")
        curve = match_families(fam, fam)
        assert curve.degree_t == 3
        assert curve.degree_s == 3
        assert sorted(curve.terms()) == [(0, 3, -1), (3, 0, 1)]

    def test_level13_vs_cube(self):
        curve = match_families(builtin_family("j3cube"),
                               builtin_family("j13"))
        assert curve.degree_t == 3
        assert curve.degree_s == 14
        assert curve.term_count == 16

    def test_level13_vs_disc(self):
        curve = match_families(builtin_family("j13"),
                               builtin_family("j2disc"))
        assert curve.degree_t == 14
        assert curve.degree_s == 2
        assert curve.term_count == 16

    def test_deg14_curve_shape(self):
        curve = match_families(builtin_family("jNs7"),
                               builtin_family("j2iso"))
        assert curve.degree_t == 28
        assert curve.degree_s == 3
        assert curve.total_degree == 29
        assert curve.term_count == 95

    def test_matches_pair_evaluations(self):
        rng = random.Random(7)
        fa, fb = builtin_family("j5"), builtin_family("j2iso")
        curve = match_families(fa, fb)
        for _ in range(20):
            t0 = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
            s0 = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
            if fa.denominator.eval(t0) == 0 or fb.denominator.eval(s0) == 0:
                continue
            vanishes = curve.eval(t0, s0) == 0
            agrees = fa.eval(t0) == fb.eval(s0)
            assert vanishes == agrees

    def test_primitive_and_sign_normalized(self):
        curve = match_families(builtin_family("jNs7"),
                               builtin_family("j2iso"))
        from math import gcd
        g = 0
        for _, _, c in curve.terms():
            assert c.denominator == 1
            g = gcd(g, abs(c.numerator))
        assert g == 1
        # lexicographically leading coefficient is positive
        i, j, c = max(curve.terms(), key=lambda term: (term[0], term[1]))
        assert c > 0


DEG14_POINTS = [(2, -256, 1), (-1, -16, 1), (0, -16, 1), (0, 1, 0),
                (1, 0, 0)]


class TestVerifyMatchPoints:
    def curve(self):
        return match_families(builtin_family("jNs7"),
                              builtin_family("j2iso"))

    def test_all_listed_points_on_curve(self):
        reports = verify_match_points(self.curve(), DEG14_POINTS,
                                      builtin_family("j2iso"))
        assert all(r.on_curve for r in reports)

    def test_affine_j_values(self):
        reports = verify_match_points(self.curve(), DEG14_POINTS,
                                      builtin_family("j2iso"))
        assert reports[0].j_value == 54000
        assert reports[1].j_value == 0
        assert reports[2].j_value == 0
        assert {r.j_value for r in reports[:3]} == {0, 54000}

    def test_infinite_points_have_no_j(self):
        reports = verify_match_points(self.curve(), DEG14_POINTS,
                                      builtin_family("j2iso"))
        for r in reports[3:]:
            assert r.at_infinity
            assert r.j_value is None
            assert "no j-value" in r.note

    def test_point_off_curve_is_report_not_exception(self):
        reports = verify_match_points(self.curve(), [(1, 1, 1)],
                                      builtin_family("j2iso"))
        assert len(reports) == 1
        assert not reports[0].on_curve
        assert reports[0].residual != 0

    def test_scaled_points_agree(self):
        reports = verify_match_points(self.curve(), [(4, -512, 2)],
                                      builtin_family("j2iso"))
        assert reports[0].on_curve
        assert reports[0].j_value == 54000

    def test_zero_triple_rejected(self):
        with pytest.raises(ValueError):
            self.curve().eval_projective(0, 0, 0)


class TestBivariatePoly:
    def test_eval_projective_matches_affine(self):
        curve = match_families(builtin_family("j3cube"),
                               builtin_family("j2disc"))
        rng = random.Random(11)
        for _ in range(10):
            t0 = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            s0 = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            assert (curve.eval_projective(t0, s0, 1) == 0) == \
                (curve.eval(t0, s0) == 0)

    def test_terms_sorted_and_exact(self):
        curve = match_families(builtin_family("j3cube"),
                               builtin_family("j3cube"))
        assert curve.terms() == [(0, 3, -1), (3, 0, 1)]
