"""Tests for modular-polynomial loading, specialization, and degree witnesses.

Frozen values come from two independently checkable fixtures: the level-2
polynomial is small enough to verify by hand expansion (its specialization
at 0 is the perfect cube (X - 54000)^3, at 1728 the product
(X - 287496)^2 (X - 1728)), and the level-49 database ships with the
package and certifies factor degrees {14, 21, 21} at the recorded
j-invariant via complete factorization.
"""

import random
from fractions import Fraction
from pathlib import Path

import pytest

from isogate.exact import PolyQ
from isogate.modpoly import (
    DegreeWitness,
    ModPolyFormatError,
    ModPolyIntegrityError,
    ModularPolynomial,
    NonSquarefreeSpecializationError,
    isogeny_degree_witness,
    load_modpoly,
    psi,
    specialize,
)

DATA = Path(__file__).resolve().parents[1] / "data"

# specialization of the level-2 polynomial at 0: (X - 54000)^3
CUBE_AT_ZERO = PolyQ([-157464000000000, 8748000000, -162000, 1])
# and at 1728: (X - 287496)^2 (X - 1728)
SQUARE_WITNESS_1728 = PolyQ([-287496, 1])
CUBE_WITNESS_0 = PolyQ([2916000000, -108000, 1])

# a j-invariant with one rational 2-isogeny and a conjugate quadratic pair
SQUAREFREE_J2 = Fraction(2048, 3)
RATIONAL_TWO_ISOGENY_ROOT = Fraction(35152, 9)

# j-invariant whose level-49 specialization factors as 14 + 21 + 21
J49 = Fraction(2268945, 128)


@pytest.fixture(scope="module")
def phi2():
    return load_modpoly(DATA / "phi2.txt", 2)


@pytest.fixture(scope="module")
def phi49():
    return load_modpoly(DATA / "phi49.txt", 49)


class TestPsi:
    def test_known_values(self):
        known = {1: 1, 2: 3, 3: 4, 5: 6, 7: 8, 9: 12, 13: 14,
                 25: 30, 27: 36, 49: 56}
        for n, value in known.items():
            assert psi(n) == value

    def test_multiplicative_on_coprime_arguments(self):
        rng = random.Random(1105)
        for _ in range(40):
            m = rng.randint(1, 300)
            n = rng.randint(1, 300)
            from math import gcd
            if gcd(m, n) == 1:
                assert psi(m * n) == psi(m) * psi(n)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            psi(0)


class TestLoading:
    def test_level2_shape(self, phi2):
        assert phi2.level == 2
        assert phi2.degree == 3
        assert len(phi2.table) == 7

    def test_symmetry_of_coefficient_lookup(self, phi2):
        assert phi2.coefficient(2, 1) == 1488
        assert phi2.coefficient(1, 2) == 1488
        assert phi2.coefficient(3, 0) == 1
        assert phi2.coefficient(0, 3) == 1
        assert phi2.coefficient(2, 2) == -1
        assert phi2.coefficient(5, 0) == 0

    def test_known_two_isogenous_pair(self, phi2):
        # 1728 and 287496 are joined by a rational 2-isogeny
        assert phi2.evaluate(1728, 287496) == 0
        assert phi2.evaluate(287496, 1728) == 0
        assert phi2.evaluate(54000, 0) == 0

    def test_level49_shape(self, phi49):
        assert phi49.level == 49
        assert phi49.degree == 56
        assert len(phi49.table) == 1583
        assert phi49.coefficient(56, 0) == 1

    def test_blank_and_comment_lines_ignored(self, tmp_path):
        f = tmp_path / "tiny.txt"
        f.write_text("# header\n\n[3,0] 1\n  \n[2,1] 5\n# tail\n[0,0] -7\n")
        phi = load_modpoly(f, 2)
        assert phi.coefficient(1, 2) == 5
        assert phi.coefficient(0, 0) == -7

    def test_lower_triangle_entry_rejected_with_line_number(self, tmp_path):
        f = tmp_path / "bad.txt"
        f.write_text("[3,0] 1\n[1,2] 5\n")
        with pytest.raises(ModPolyFormatError) as err:
            load_modpoly(f, 2)
        assert err.value.line_number == 2
        assert ":2:" in str(err.value)

    def test_malformed_line_rejected_with_line_number(self, tmp_path):
        f = tmp_path / "bad.txt"
        f.write_text("# ok\n[3,0] 1\n[2,0 11\n")
        with pytest.raises(ModPolyFormatError) as err:
            load_modpoly(f, 2)
        assert err.value.line_number == 3

    def test_non_integer_coefficient_rejected(self, tmp_path):
        f = tmp_path / "bad.txt"
        f.write_text("[3,0] x\n")
        with pytest.raises(ModPolyFormatError) as err:
            load_modpoly(f, 2)
        assert err.value.line_number == 1

    def test_missing_coefficient_rejected(self, tmp_path):
        f = tmp_path / "bad.txt"
        f.write_text("[3,0]\n")
        with pytest.raises(ModPolyFormatError):
            load_modpoly(f, 2)

    def test_duplicate_entry_rejected(self, tmp_path):
        f = tmp_path / "bad.txt"
        f.write_text("[3,0] 1\n[3,0] 2\n")
        with pytest.raises(ModPolyFormatError) as err:
            load_modpoly(f, 2)
        assert err.value.line_number == 2
        assert "duplicate" in str(err.value)

    def test_negative_exponent_rejected(self, tmp_path):
        f = tmp_path / "bad.txt"
        f.write_text("[3,-1] 1\n")
        with pytest.raises(ModPolyFormatError):
            load_modpoly(f, 2)

    def test_empty_file_rejected(self, tmp_path):
        f = tmp_path / "empty.txt"
        f.write_text("# nothing but comments\n\n")
        with pytest.raises(ModPolyIntegrityError) as err:
            load_modpoly(f, 2)
        assert "no coefficient" in str(err.value)

    def test_wrong_level_names_degree_invariant(self, tmp_path):
        f = tmp_path / "tiny.txt"
        f.write_text("[3,0] 1\n[0,0] -7\n")
        with pytest.raises(ModPolyIntegrityError) as err:
            load_modpoly(f, 3)
        assert "psi(3)" in str(err.value)

    def test_non_monic_names_invariant(self, tmp_path):
        f = tmp_path / "bad.txt"
        f.write_text("[3,0] 4\n[0,0] -7\n")
        with pytest.raises(ModPolyIntegrityError) as err:
            load_modpoly(f, 2)
        assert "monic" in str(err.value)

    def test_table_constructor_rejects_lower_triangle(self):
        with pytest.raises(ModPolyIntegrityError):
            ModularPolynomial(2, {(3, 0): 1, (0, 3): 1})

    def test_immutable(self, phi2):
        with pytest.raises(AttributeError):
            phi2.level = 3


class TestSpecialize:
    def test_at_zero_is_perfect_cube(self, phi2):
        spec = specialize(phi2, 0)
        assert spec.poly == CUBE_AT_ZERO
        assert spec.monic_poly == CUBE_AT_ZERO
        assert spec.level == 2
        assert spec.j_value == 0
        cube = PolyQ([-54000, 1]) ** 3
        assert spec.poly == cube

    def test_at_1728_has_double_root(self, phi2):
        spec = specialize(phi2, 1728)
        expected = PolyQ([-287496, 1]) ** 2 * PolyQ([-1728, 1])
        assert spec.poly == expected
        assert spec.poly.eval(Fraction(287496)) == 0
        assert spec.poly.eval(Fraction(1728)) == 0

    def test_fractional_j_gives_primitive_integer_form(self, phi2):
        spec = specialize(phi2, SQUAREFREE_J2)
        assert spec.poly.degree == 3
        ints = [c for c in spec.poly.coeffs]
        assert all(c.denominator == 1 for c in ints)
        from math import gcd
        g = 0
        for c in ints:
            g = gcd(g, int(c))
        assert g == 1
        assert spec.poly.leading > 0
        assert spec.poly.eval(RATIONAL_TWO_ISOGENY_ROOT) == 0
        assert spec.monic_poly.leading == 1

    def test_degree_always_matches_index(self, phi2):
        rng = random.Random(7321)
        for _ in range(10):
            j = Fraction(rng.randint(-10 ** 6, 10 ** 6),
                         rng.randint(1, 999))
            assert specialize(phi2, j).poly.degree == 3


class TestDegreeWitness:
    def test_rejects_cube_at_zero_with_gcd_witness(self, phi2):
        with pytest.raises(NonSquarefreeSpecializationError) as err:
            isogeny_degree_witness(phi2, 0)
        assert err.value.witness == CUBE_WITNESS_0
        assert err.value.level == 2
        assert err.value.j_value == 0
        assert "gcd" in str(err.value)

    def test_rejects_double_root_at_1728(self, phi2):
        with pytest.raises(NonSquarefreeSpecializationError) as err:
            isogeny_degree_witness(phi2, 1728)
        assert err.value.witness == SQUARE_WITNESS_1728

    def test_certifies_linear_plus_quadratic(self, phi2):
        w = isogeny_degree_witness(phi2, SQUAREFREE_J2)
        assert w.certified
        assert w.factor_degrees == (1, 2)
        assert w.min_degree == 1
        assert not w.full_factorization_used
        assert w.primes_used
        assert all(p >= 11 for p in w.primes_used)
        assert w.min_degree <= psi(2)

    def test_exhausted_cap_is_explicitly_indeterminate(self, phi49):
        w = isogeny_degree_witness(phi49, J49, prime_cap=2)
        assert isinstance(w, DegreeWitness)
        assert not w.certified
        assert w.factor_degrees is None
        assert w.min_degree is None
        assert len(w.primes_used) == 2
        # the truth and its merges always stay feasible
        assert (14, 21, 21) in w.feasible
        assert (56,) in w.feasible

    def test_full_factorization_settles_level49(self, phi49):
        w = isogeny_degree_witness(phi49, J49, prime_cap=3,
                                   full_factorization=True)
        assert w.certified
        assert w.full_factorization_used
        assert w.factor_degrees == (14, 21, 21)
        assert w.min_degree == 14
        assert w.min_degree <= psi(49)
        assert sum(w.factor_degrees) == psi(49)


class TestProperties:
    def test_specialize_matches_double_substitution(self, phi2):
        rng = random.Random(2045)
        for _ in range(20):
            j = Fraction(rng.randint(-500, 500), rng.randint(1, 40))
            jp = Fraction(rng.randint(-500, 500), rng.randint(1, 40))
            spec = specialize(phi2, j)
            assert spec.monic_poly.eval(jp) == phi2.evaluate(jp, j)

    def test_evaluation_is_symmetric(self, phi2):
        rng = random.Random(90210)
        for _ in range(20):
            a = Fraction(rng.randint(-10 ** 4, 10 ** 4), rng.randint(1, 100))
            b = Fraction(rng.randint(-10 ** 4, 10 ** 4), rng.randint(1, 100))
            assert phi2.evaluate(a, b) == phi2.evaluate(b, a)

    def test_level49_symmetry_spot_check(self, phi49):
        rng = random.Random(4242)
        for _ in range(3):
            a = Fraction(rng.randint(-50, 50), rng.randint(1, 8))
            b = Fraction(rng.randint(-50, 50), rng.randint(1, 8))
            assert phi49.evaluate(a, b) == phi49.evaluate(b, a)
