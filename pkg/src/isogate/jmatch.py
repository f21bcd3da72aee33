"""Matching j-invariant families against constants and against each other.

A family is a univariate rational function f/g parametrizing the j-invariants
of curves with some level structure.  Matching against a constant c builds
the elimination polynomial f - c*g, whose degree <= 2 roots are exactly the
parameters rational or quadratic over Q; matching two families builds the
bivariate curve f_A(t)*g_B(s) - f_B(s)*g_A(t) whose points pair up parameters
producing a common j-invariant.  The verdict layer reports rational roots
first, then quadratic roots by their real quadratic field; factors cutting
out imaginary quadratic fields stay visible in the raw factor report but do
not flip a verdict, because a parameter generating an imaginary field never
produces the real-quadratic point the callers are hunting for.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import (
    PolyQ,
    low_degree_factors,
    parse_rational,
    primitive_int_poly,
)

_FAMILY_NAMES = ("j13", "j7", "j5", "j3cube", "j2disc", "j2iso", "jNs7")


def _poly(*coeffs_high_to_low):
    return PolyQ(list(reversed(coeffs_high_to_low)))


class JFamily:
    """A one-parameter family of j-invariants j = f(h) / g(h)."""

    __slots__ = ("name", "numerator", "denominator", "parameter",
                 "numerator_factors", "denominator_factors")

    def __init__(self, name, numerator, denominator, parameter,
                 numerator_factors=None, denominator_factors=None):
        if denominator.is_zero:
            raise ValueError("family denominator must be nonzero")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "denominator", denominator)
        object.__setattr__(self, "parameter", parameter)
        object.__setattr__(self, "numerator_factors", numerator_factors)
        object.__setattr__(self, "denominator_factors", denominator_factors)

    def __setattr__(self, name, value):
        raise AttributeError("JFamily is immutable")

    def eval(self, x):
        """The j-invariant at parameter x; raises at poles."""
        x = Fraction(x)
        den = self.denominator.eval(x)
        if den == 0:
            raise ZeroDivisionError(
                "family %s has a pole at %s" % (self.name, x))
        return self.numerator.eval(x) / den

    def __repr__(self):
        return "JFamily(%s in %s)" % (self.name, self.parameter)


def _expand_factors(factors):
    out = PolyQ([1])
    for base, exp in factors:
        out = out * base ** exp
    return out


_X = _poly(1, 0)          # the parameter variable as a polynomial
_ONE = PolyQ([1])


def _family_table():
    h2_5h_13 = _poly(1, 5, 13)
    h4_7h3 = _poly(1, 7, 20, 19, 1)
    j13_fac = [(h2_5h_13, 1), (h4_7h3, 3)]
    j7_fac = [(_poly(1, 13, 49), 1), (_poly(1, 5, 1), 3)]
    j5_fac = [(_poly(1, 10, 5), 3)]
    jns7_fac = [(_X, 1), (_poly(1, 1), 3), (_poly(1, -5, 1), 3),
                (_poly(1, -5, 8), 3), (_poly(1, -5, 8, -7, 7), 3)]
    jns7_den_fac = [(_poly(1, -4, 3, 1), 7)]
    table = {
        "j13": JFamily("j13", _expand_factors(j13_fac), _X, "h", j13_fac),
        "j7": JFamily("j7", _expand_factors(j7_fac), _X, "h", j7_fac),
        "j5": JFamily("j5", _expand_factors(j5_fac), _X, "h", j5_fac),
        "j3cube": JFamily("j3cube", _poly(1, 0, 0, 0), _ONE, "h",
                          [(_X, 3)]),
        "j2disc": JFamily("j2disc", _poly(1, 0, 1728), _ONE, "h",
                          [(_poly(1, 0, 1728), 1)]),
        "j2iso": JFamily("j2iso", _expand_factors([(_poly(1, 16), 3)]), _X,
                         "s", [(_poly(1, 16), 3)]),
        "jNs7": JFamily("jNs7", _expand_factors(jns7_fac),
                        _expand_factors(jns7_den_fac), "t",
                        jns7_fac, jns7_den_fac),
    }
    return table


_FAMILIES = _family_table()


def builtin_family(name):
    """One of the seven built-in families, by name."""
    try:
        return _FAMILIES[name]
    except KeyError:
        raise ValueError("unknown family %r (have %s)"
                         % (name, ", ".join(_FAMILY_NAMES))) from None


class Verdict:
    """Outcome of the degree <= 2 root hunt on an elimination polynomial.

    kind is one of "RationalRoot" (values = the roots), "QuadraticRoot"
    (values = squarefree d > 0 of the real quadratic fields cut out), or
    "NoDegreeLE2Root" (values empty).
    """

    __slots__ = ("kind", "values")

    def __init__(self, kind, values=()):
        self.kind = kind
        self.values = tuple(values)

    def __eq__(self, other):
        if not isinstance(other, Verdict):
            return NotImplemented
        return self.kind == other.kind and self.values == other.values

    def __repr__(self):
        if self.values:
            return "Verdict(%s, %s)" % (self.kind, list(self.values))
        return "Verdict(%s)" % self.kind


class MatchOutcome:
    """Elimination polynomial, its degree <= 2 factors, and the verdict."""

    __slots__ = ("family", "constant", "elimination", "factors", "verdict")

    def __init__(self, family, constant, elimination, factors, verdict):
        self.family = family
        self.constant = constant
        self.elimination = elimination
        self.factors = factors
        self.verdict = verdict

    def __repr__(self):
        return ("MatchOutcome(%s, c=%s, deg=%d, %r)"
                % (self.family, self.constant, self.elimination.degree,
                   self.verdict))


def _canonical_rational(c):
    if isinstance(c, str):
        return parse_rational(c)
    return Fraction(c)


def _primitive_polyq(f):
    """f scaled to primitive integer coefficients with positive leading."""
    _, coeffs = primitive_int_poly(f)
    if coeffs[-1] < 0:
        coeffs = [-a for a in coeffs]
    return PolyQ(coeffs)


def match_constant(fam, c):
    """Match the family against a constant j-invariant.

    The elimination polynomial is the primitive integer form of
    f(h) - c*g(h).  Rational roots at poles of the family are discarded
    (they cannot occur when gcd(f, g) = 1, but the filter keeps the contract
    explicit).  The verdict reports rational roots first; otherwise the real
    quadratic fields cut out by quadratic factors; otherwise NoDegreeLE2Root.
    """
    c = _canonical_rational(c)
    elim = _primitive_polyq(fam.numerator - fam.denominator * c)
    factors = low_degree_factors(elim, 2)
    roots = sorted({-f.poly[0] / f.poly[1] for f in factors
                    if f.poly.degree == 1})
    roots = [r for r in roots if fam.denominator.eval(r) != 0]
    if roots:
        verdict = Verdict("RationalRoot", sorted(roots))
    else:
        real_fields = sorted({f.field_d for f in factors
                              if f.poly.degree == 2 and f.field_d > 0})
        if real_fields:
            verdict = Verdict("QuadraticRoot", real_fields)
        else:
            verdict = Verdict("NoDegreeLE2Root")
    return MatchOutcome(fam.name, c, elim, factors, verdict)


class BivariatePoly:
    """An integer polynomial in two variables t and s.

    Stored dense in t: coefficient i is a PolyQ in s multiplying t^i.
    Supports exact evaluation, affine or projective through the
    homogenization of total degree `total_degree`.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = list(coeffs)
        while len(coeffs) > 1 and coeffs[-1].is_zero:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @property
    def degree_t(self):
        return len(self.coeffs) - 1

    @property
    def degree_s(self):
        return max(c.degree for c in self.coeffs if not c.is_zero)

    @property
    def total_degree(self):
        return max(i + c.degree for i, c in enumerate(self.coeffs)
                   if not c.is_zero)

    def terms(self):
        """Nonzero terms as (t-power, s-power, coefficient), sorted."""
        out = []
        for i, c in enumerate(self.coeffs):
            for j in range(c.degree + 1):
                if c[j]:
                    out.append((i, j, c[j]))
        return out

    @property
    def term_count(self):
        return len(self.terms())

    def eval(self, t0, s0):
        t0, s0 = Fraction(t0), Fraction(s0)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t0 + c.eval(s0)
        return acc

    def eval_projective(self, T, S, Z):
        """The total-degree homogenization evaluated at (T : S : Z)."""
        T, S, Z = Fraction(T), Fraction(S), Fraction(Z)
        if T == S == Z == 0:
            raise ValueError("(0 : 0 : 0) is not a projective point")
        d = self.total_degree
        acc = Fraction(0)
        for i, j, c in self.terms():
            acc += c * T ** i * S ** j * Z ** (d - i - j)
        return acc

    def __eq__(self, other):
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self):
        return ("BivariatePoly(deg_t=%d, deg_s=%d, %d terms)"
                % (self.degree_t, self.degree_s, self.term_count))


def match_families(fam_a, fam_b):
    """The plane curve pairing parameters of two families with equal j.

    Returns the primitive integer numerator of fam_a(t) - fam_b(s) as a
    BivariatePoly with fam_a in t and fam_b in s.  No point solving is
    attempted here.
    """
    fa, ga = fam_a.numerator, fam_a.denominator
    fb, gb = fam_b.numerator, fam_b.denominator
    # rows[i] = coefficient of t^i, a polynomial in s
    zero = PolyQ([0])
    rows = [zero] * (max(fa.degree, ga.degree) + 1)
    for i in range(fa.degree + 1):
        if fa[i]:
            rows[i] = rows[i] + gb * fa[i]
    for i in range(ga.degree + 1):
        if ga[i]:
            rows[i] = rows[i] - fb * ga[i]
    # clear a common rational content, normalizing the sign by the
    # lexicographically leading term (highest t-power, then s-power)
    content = Fraction(0)
    for row in rows:
        for j in range(row.degree + 1):
            if row[j]:
                num = abs(row[j].numerator)
                den = row[j].denominator
                if content == 0:
                    content = Fraction(num, den)
                else:
                    content = Fraction(
                        _gcd(content.numerator * den,
                             num * content.denominator),
                        content.denominator * den)
    if content == 0:
        raise ValueError("the two families are identical")
    lead = None
    for i in range(len(rows) - 1, -1, -1):
        if not rows[i].is_zero:
            lead = rows[i].leading
            break
    scale = 1 / content if lead > 0 else -1 / content
    return BivariatePoly([row * PolyQ([scale]) for row in rows])


def _gcd(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


class PointReport:
    """Verification record for one projective point on a match curve."""

    __slots__ = ("point", "on_curve", "residual", "at_infinity", "j_value",
                 "note")

    def __init__(self, point, on_curve, residual, at_infinity, j_value,
                 note):
        self.point = point
        self.on_curve = on_curve
        self.residual = residual
        self.at_infinity = at_infinity
        self.j_value = j_value
        self.note = note

    def __repr__(self):
        status = "on curve" if self.on_curve else "NOT on curve"
        return "PointReport(%s: %s, %s)" % (self.point, status, self.note)


def verify_match_points(curve, points, fam_b):
    """Check listed projective points against a match curve.

    Points are (t : s : z) triples with the affine chart at z = 1.  A point
    failing the curve equation produces a failed report, never an exception.
    Affine points get their j-invariant through fam_b's parameter s when
    fam_b has no pole there.
    """
    reports = []
    for point in points:
        t, s, z = (Fraction(v) for v in point)
        residual = curve.eval_projective(t, s, z)
        on_curve = residual == 0
        at_infinity = z == 0
        j_value = None
        if at_infinity:
            note = "no j-value (point at infinity)"
        elif not on_curve:
            note = "curve equation does not vanish"
        else:
            try:
                j_value = fam_b.eval(s / z)
                note = "j = %s" % j_value
            except ZeroDivisionError:
                note = "no j-value (family pole)"
        reports.append(PointReport(tuple(point), on_curve, residual,
                                   at_infinity, j_value, note))
    return reports
