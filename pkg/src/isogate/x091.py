"""Exact model data for the level-91 modular curve and its quotient.

The curve is embedded in P^6 as the common zero locus of ten quadrics.
Negating the last two coordinates is an involution of the model (the
level-91 Atkin-Lehner operator); the quotient is a genus-2 hyperelliptic
curve y^2 = f(x) whose Jacobian orders over small prime fields bound the
rational torsion relevant to ruling out cyclic 91-isogenies.

All model data is transcribed once into canonical source constants; the
quadrics are parsed from a single text block so a silent typo in any
coefficient breaks evaluation loudly (the test suite re-derives the
tables independently and pins a checksum of the block).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .exact import (
    PolyQ,
    QuadExtElem,
    _fderiv,
    _fgcd,
    _ftrim,
    _yun_squarefree,
    is_prime,
    primitive_int_poly,
)

# ---------------------------------------------------------------------------
# canonical model text: ten quadrics in x0..x6, one per line

MODEL_TEXT = """\
x0^2 - 12*x1*x2 + 4*x1*x4 - 14*x2^2 + 12*x2*x3 + 24*x2*x4 - 14*x3^2 + 16*x3*x4 - 23*x4^2 - x5^2 - 4*x6^2
x0*x1 - 6*x1*x2 + 6*x1*x4 - 3*x2^2 + 2*x2*x3 + 7*x2*x4 - 5*x3^2 + 8*x3*x4 - 7*x4^2 - x5*x6 - x6^2
x0*x2 - 2*x1*x2 + x1*x4 - 3*x2^2 + 6*x2*x3 + 4*x2*x4 - 5*x3^2 + 4*x3*x4 - 3*x4^2 - x6^2
x0*x3 - x1*x2 + x1*x4 + 2*x2*x3 - x2*x4 - x3^2 + x3*x4 + x4^2
x0*x4 - x2^2 + 2*x2*x3 - x3^2 + 2*x4^2
x0*x6 - x1*x5 + x2*x5 + x4*x6
x1^2 - 2*x1*x2 - 3*x2^2 + 4*x2*x3 + 4*x2*x4 - 4*x3^2 + 4*x3*x4 - 4*x4^2 - x6^2
x1*x3 - x1*x4 - x2^2 + x2*x3 + x2*x4 - x3*x4
x1*x6 - x2*x5 + x3*x5
x2*x6 - x3*x5 + x4*x5 - x4*x6
"""

VARIABLE_COUNT = 7

# hyperelliptic quotient: y^2 = x^6 + 2x^5 - x^4 - 8x^3 - x^2 + 2x + 1
QUOTIENT_COEFFS = (1, 2, -1, -8, -1, 2, 1)  # lowest degree first


class ModelIntegrityError(ValueError):
    """The embedded model data violates one of its own invariants."""


class MixedFieldError(ValueError):
    """Point coordinates come from two different quadratic fields."""


class BadReductionError(ValueError):
    """The requested prime does not preserve the curve's smoothness."""

    def __init__(self, p, detail):
        super().__init__("bad reduction at p = %d: %s" % (p, detail))
        self.prime = p


class CountingError(RuntimeError):
    """A computed count violates a structural bound (internal bug)."""


def _parse_quadric(line, line_number):
    """One text line -> symmetric coefficient table {(i, j): Fraction}."""
    table = {}
    for raw in line.replace("-", "+-").split("+"):
        term = raw.strip()
        if not term:
            continue
        sign = 1
        if term.startswith("-"):
            sign = -1
            term = term[1:].strip()
        coeff = Fraction(sign)
        indices = []
        for factor in term.split("*"):
            factor = factor.strip()
            if factor.startswith("x"):
                if "^" in factor:
                    base, power = factor.split("^")
                    indices.extend([int(base[1:])] * int(power))
                else:
                    indices.append(int(factor[1:]))
            else:
                coeff *= Fraction(factor)
        if len(indices) != 2:
            raise ModelIntegrityError(
                "line %d: term %r is not quadratic" % (line_number, term))
        if any(i < 0 or i >= VARIABLE_COUNT for i in indices):
            raise ModelIntegrityError(
                "line %d: variable index out of range in %r"
                % (line_number, term))
        key = tuple(sorted(indices))
        if key in table:
            raise ModelIntegrityError(
                "line %d: monomial %r repeated" % (line_number, term))
        table[key] = coeff
    if not table:
        raise ModelIntegrityError("line %d is empty" % line_number)
    return table


class QuadricModel:
    """A projective model cut out by symmetric quadric coefficient tables."""

    __slots__ = ("quadrics",)

    def __init__(self, quadrics):
        if len(quadrics) != 10:
            raise ModelIntegrityError(
                "expected 10 quadrics, got %d" % len(quadrics))
        object.__setattr__(self, "quadrics", tuple(dict(q) for q in quadrics))

    def __setattr__(self, name, value):
        raise AttributeError("QuadricModel is immutable")

    @classmethod
    def from_text(cls, text=MODEL_TEXT):
        lines = [l for l in text.splitlines() if l.strip()]
        return cls([_parse_quadric(l, k + 1) for k, l in enumerate(lines)])

    def residues(self, point):
        """Exact value of every quadric at the point (its stored coords)."""
        coords = point.coords
        out = []
        for table in self.quadrics:
            acc = Fraction(0)
            for (i, j), c in table.items():
                acc = acc + c * coords[i] * coords[j]
            out.append(acc)
        return tuple(out)


_MODEL_CACHE = None


def model():
    """The parsed ten-quadric model (cached)."""
    global _MODEL_CACHE
    if _MODEL_CACHE is None:
        _MODEL_CACHE = QuadricModel.from_text()
    return _MODEL_CACHE


class ProjPoint:
    """A point of P^6 with rational or quadratic-field coordinates.

    Coordinates may mix rationals with elements of a single quadratic
    field Q(sqrt(d)); two different fields in one point are rejected.
    Equality is projective: points compare via their canonical forms,
    which scale the last nonzero coordinate to 1.
    """

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = tuple(coords)
        if len(coords) != VARIABLE_COUNT:
            raise ValueError(
                "expected %d coordinates, got %d"
                % (VARIABLE_COUNT, len(coords)))
        fields = set()
        norm = []
        for c in coords:
            if isinstance(c, QuadExtElem):
                if not c.is_rational:
                    fields.add(c.d)
                norm.append(c)
            else:
                norm.append(Fraction(c))
        if len(fields) > 1:
            raise MixedFieldError(
                "coordinates mix quadratic fields: sqrt(%s)"
                % ", sqrt(".join(str(d) for d in sorted(fields)))
        if not any(norm):
            raise ValueError("all coordinates are zero")
        object.__setattr__(self, "coords", tuple(norm))

    def __setattr__(self, name, value):
        raise AttributeError("ProjPoint is immutable")

    @property
    def field_d(self):
        """d of the quadratic field the coordinates live in, or None."""
        for c in self.coords:
            if isinstance(c, QuadExtElem) and not c.is_rational:
                return c.d
        return None

    def canonical(self):
        """Rescale so the last nonzero coordinate becomes 1."""
        last = max(i for i, c in enumerate(self.coords) if c)
        scale = self.coords[last]
        return ProjPoint(tuple(c / scale for c in self.coords))

    def conjugate(self):
        """Apply sqrt(d) -> -sqrt(d) to every coordinate."""
        return ProjPoint(tuple(
            c.conjugate() if isinstance(c, QuadExtElem) else c
            for c in self.coords))

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.canonical().coords == other.canonical().coords

    def __hash__(self):
        return hash(self.canonical().coords)

    def __repr__(self):
        return "ProjPoint(%s)" % (" : ".join(str(c) for c in self.coords))


def cusps():
    """The four rational cusps of the model."""
    return (
        ProjPoint((1, 0, 0, 0, 0, 1, 0)),
        ProjPoint((-1, 0, 0, 0, 0, 1, 0)),
        ProjPoint((2, 0, -1, -1, -1, 1, 1)),
        ProjPoint((-2, 0, 1, 1, 1, 1, 1)),
    )


def cm_point(conjugate=False):
    """The quadratic point with x-parameter (17 +- 5*sqrt(13))/18.

    Together with its field conjugate it is fixed by the involution; both
    lie on the model with complex multiplication by an order of Q(sqrt(-91)).
    """
    alpha = QuadExtElem(Fraction(17, 18), Fraction(-5 if conjugate else 5, 18), 13)
    return ProjPoint((
        (-8 * alpha + 7) / 5,
        (3 * alpha - 7) / 5,
        (-alpha + 9) / 5,
        alpha,
        Fraction(1),
        Fraction(0),
        Fraction(0),
    ))


class ResidueReport:
    """Per-quadric exact residues of a point against the model."""

    __slots__ = ("point", "residues", "on_model")

    def __init__(self, point, residues):
        self.point = point
        self.residues = tuple(residues)
        self.on_model = all(r == 0 for r in self.residues)

    def __repr__(self):
        status = "on model" if self.on_model else "OFF model"
        return "ResidueReport(%s, %s)" % (status, list(self.residues))


def verify_model_point(M, P):
    """Evaluate all quadrics of M at P exactly; passes iff all vanish."""
    if not isinstance(P, ProjPoint):
        P = ProjPoint(P)
    return ResidueReport(P, M.residues(P))


def atkin_lehner(P):
    """The model involution: negate the last two coordinates."""
    if not isinstance(P, ProjPoint):
        P = ProjPoint(P)
    c = P.coords
    return ProjPoint(c[:5] + (-c[5], -c[6]))


def involution_consistency(M):
    """Sign of each quadric under the involution; must be +-1 for all.

    A monomial picks up (-1)^k where k counts its indices among {5, 6}:
    quadrics with every monomial even in those variables are invariant
    (+1), quadrics with every monomial odd are anti-invariant (-1), and a
    quadric mixing the two parities would not map to a multiple of itself,
    which breaks the quotient construction and is rejected.
    """
    signs = []
    for k, table in enumerate(M.quadrics):
        parities = {((i in (5, 6)) + (j in (5, 6))) % 2 for i, j in table}
        if len(parities) != 1:
            raise ModelIntegrityError(
                "quadric %d mixes monomials even and odd in the last two "
                "variables; it cannot map to a multiple of itself" % (k + 1))
        signs.append(-1 if parities.pop() else 1)
    return tuple(signs)


# ---------------------------------------------------------------------------
# the genus-2 quotient


class HypCurve:
    """Hyperelliptic curve y^2 = f(x) with f of degree 6 and squarefree."""

    __slots__ = ("f",)

    def __init__(self, f):
        if not isinstance(f, PolyQ):
            f = PolyQ(f)
        if f.degree != 6:
            raise ValueError("defining polynomial must have degree 6, got %d"
                             % f.degree)
        _, F = primitive_int_poly(f)
        if F[-1] < 0:
            F = [-c for c in F]
        if any(mult > 1 for _, mult in _yun_squarefree(F)):
            raise ValueError("defining polynomial must be squarefree")
        object.__setattr__(self, "f", f)

    def __setattr__(self, name, value):
        raise AttributeError("HypCurve is immutable")

    def __repr__(self):
        return "HypCurve(y^2 = %r)" % (self.f,)


def quotient_curve():
    """The genus-2 quotient of the model by its involution."""
    return HypCurve(PolyQ(QUOTIENT_COEFFS))


def _reduce_coeffs(curve, p):
    """Coefficients of f mod p (lowest first), or a bad-reduction error."""
    if p == 2 or not is_prime(p):
        raise BadReductionError(p, "only odd primes are supported")
    out = []
    for c in curve.f.coeffs:
        if c.denominator % p == 0:
            raise BadReductionError(p, "a coefficient denominator vanishes")
        out.append(c.numerator * pow(c.denominator, -1, p) % p)
    if out[-1] == 0:
        raise BadReductionError(p, "the leading coefficient vanishes")
    # squarefree-ness mod p  <=>  p does not divide the discriminant
    reduced = _ftrim(list(out))
    if len(_fgcd(reduced, _fderiv(reduced, p), p)) != 1:
        raise BadReductionError(p, "the reduction is not squarefree")
    return out


def count_points(C, p, k=1):
    """#C(F_{p^k}) for k in {1, 2} by exact enumeration.

    Affine solutions of y^2 = f(x) are counted with the full square table
    of the field; the two points at infinity are included whenever the
    leading coefficient is a square there (it always is for this model's
    quotient, whose f is monic).
    """
    coeffs = _reduce_coeffs(C, p)
    if k == 1:
        squares = {(i * i) % p for i in range(p)}
        total = 2 if coeffs[-1] in squares else 0
        for a in range(p):
            v = 0
            for c in reversed(coeffs):
                v = (v * a + c) % p
            if v == 0:
                total += 1
            elif v in squares:
                total += 2
        return total
    if k != 2:
        raise ValueError("only k in {1, 2} is supported")
    r = _least_nonresidue(p)

    def mul(u, v):
        return ((u[0] * v[0] + u[1] * v[1] * r) % p,
                (u[0] * v[1] + u[1] * v[0]) % p)

    squares = set()
    for a in range(p):
        for b in range(p):
            squares.add(mul((a, b), (a, b)))
    total = 2 if (coeffs[-1] % p, 0) in squares else 0
    rev = list(reversed(coeffs))
    for a in range(p):
        for b in range(p):
            z = (a, b)
            v = (0, 0)
            for c in rev:
                v = mul(v, z)
                v = ((v[0] + c) % p, v[1])
            if v == (0, 0):
                total += 1
            elif v in squares:
                total += 2
    return total


def _least_nonresidue(p):
    squares = {(i * i) % p for i in range(p)}
    for r in range(2, p):
        if r not in squares:
            return r
    raise CountingError("no quadratic non-residue found mod %d" % p)


class ZetaData:
    """Genus-2 point counts and the derived Jacobian order at one prime."""

    __slots__ = ("prime", "n1", "n2", "c1", "c2", "jacobian_order")

    def __init__(self, prime, n1, n2):
        c1 = n1 - prime - 1
        numerator = n2 - prime * prime - 1 + c1 * c1
        if numerator % 2:
            raise CountingError(
                "second zeta coefficient is not integral at p = %d" % prime)
        c2 = numerator // 2
        order = 1 + c1 + c2 + prime * c1 + prime * prime
        if c1 * c1 > 16 * prime:
            raise CountingError(
                "|c1| = %d violates the Weil bound at p = %d"
                % (abs(c1), prime))
        if order <= 0:
            raise CountingError("non-positive group order at p = %d" % prime)
        self.prime = prime
        self.n1 = n1
        self.n2 = n2
        self.c1 = c1
        self.c2 = c2
        self.jacobian_order = order

    def __repr__(self):
        return ("ZetaData(p=%d, N1=%d, N2=%d, c1=%d, c2=%d, |J|=%d)"
                % (self.prime, self.n1, self.n2, self.c1, self.c2,
                   self.jacobian_order))


def jacobian_order(C, p):
    """Point counts over F_p and F_{p^2} assembled into ZetaData."""
    n1 = count_points(C, p, 1)
    n2 = count_points(C, p, 2)
    return ZetaData(p, n1, n2)


def torsion_multiple(C, primes):
    """gcd of Jacobian orders: a multiple of the rational torsion order."""
    primes = sorted(set(primes))
    if not primes:
        raise ValueError("at least one good odd prime is required")
    out = 0
    for p in primes:
        out = gcd(out, jacobian_order(C, p).jacobian_order)
    return out
