"""Classical modular polynomials: file ingestion, specialization, degrees.

A level-N modular polynomial is a symmetric bivariate integer polynomial,
monic of degree psi(N) in each variable, vanishing exactly at pairs of
j-invariants joined by a cyclic N-isogeny.  Files store the upper triangle
sparsely, one "[i,j] c" line per coefficient.  Specializing the second
variable at a rational j-value and certifying the factor degrees of the
result bounds the degree of the smallest field over which an N-isogeny from
a curve with that j-invariant can live.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import (
    DegreeCertifier,
    PolyQ,
    _fderiv,
    _fgcd,
    _ftrim,
    _yun_squarefree,
    factor_int,
    factor_over_Q,
    next_prime,
    primitive_int_poly,
)


def psi(n):
    """The index [SL2(Z) : Gamma_0(n)] = n * prod_{p | n} (1 + 1/p)."""
    if n < 1:
        raise ValueError("psi needs a positive integer")
    out = n
    for p in factor_int(n):
        out += out // p
    return out


class ModPolyFormatError(ValueError):
    """A database line violates the sparse text format."""

    def __init__(self, path, line_number, message):
        super().__init__("%s:%d: %s" % (path, line_number, message))
        self.path = path
        self.line_number = line_number


class ModPolyIntegrityError(ValueError):
    """Parsed data violates a modular-polynomial invariant."""


class NonSquarefreeSpecializationError(ValueError):
    """A specialization shares a factor with its derivative.

    Happens exactly when the j-value has two distinct cyclic N-isogenies
    landing on one target j-invariant (possible at CM j-values), which makes
    factor degrees meaningless as field-degree witnesses.  Carries the gcd
    with the derivative as the witness.
    """

    def __init__(self, level, j_value, witness):
        super().__init__(
            "specialization of level %d at j = %s is not squarefree; "
            "gcd with derivative is %r" % (level, j_value, witness))
        self.level = level
        self.j_value = j_value
        self.witness = witness


class ModularPolynomial:
    """Symmetric bivariate integer polynomial, stored triangularly."""

    __slots__ = ("level", "table", "degree")

    def __init__(self, level, table):
        degree = psi(level)
        if not table:
            raise ModPolyIntegrityError("coefficient table is empty")
        for (i, j) in table:
            if i < j:
                raise ModPolyIntegrityError(
                    "exponent pair (%d, %d) breaks triangular storage"
                    % (i, j))
        max_x = max(i for i, _ in table)
        if max_x != degree:
            raise ModPolyIntegrityError(
                "X-degree %d does not equal psi(%d) = %d"
                % (max_x, level, degree))
        if table.get((degree, 0)) != 1:
            raise ModPolyIntegrityError(
                "not monic: coefficient of X^%d is %s"
                % (degree, table.get((degree, 0))))
        if any(j > degree for _, j in table):
            raise ModPolyIntegrityError("Y-degree exceeds psi(%d)" % level)
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "table", dict(table))
        object.__setattr__(self, "degree", degree)

    def __setattr__(self, name, value):
        raise AttributeError("ModularPolynomial is immutable")

    def coefficient(self, i, j):
        """The coefficient of X^i Y^j, symmetry included."""
        if i < j:
            i, j = j, i
        return self.table.get((i, j), 0)

    def evaluate(self, x, y):
        """Exact double substitution straight off the triangular table."""
        x, y = Fraction(x), Fraction(y)
        acc = Fraction(0)
        for (i, j), c in self.table.items():
            if i == j:
                acc += c * x ** i * y ** j
            else:
                acc += c * (x ** i * y ** j + x ** j * y ** i)
        return acc

    def __repr__(self):
        return ("ModularPolynomial(level=%d, degree=%d, %d entries)"
                % (self.level, self.degree, len(self.table)))


def load_modpoly(path, level):
    """Parse a sparse "[i,j] c" database file for the given level.

    Blank lines and lines starting with '#' are ignored.  Upper-triangle
    entries only (i >= j); the mirrored coefficients are implied by
    symmetry.  Malformed lines are reported with their line number;
    integrity violations (missing monic head, wrong degree) name the
    broken invariant.
    """
    table = {}
    with open(path, "r", encoding="ascii") as handle:
        for line_number, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            head, _, tail = line.partition("]")
            tail = tail.strip()
            if not head.startswith("[") or not tail:
                raise ModPolyFormatError(
                    path, line_number, "expected '[i,j] c', got %r" % line)
            parts = head[1:].split(",")
            if len(parts) != 2:
                raise ModPolyFormatError(
                    path, line_number, "expected two exponents in %r" % line)
            try:
                i, j = int(parts[0]), int(parts[1])
                c = int(tail)
            except ValueError:
                raise ModPolyFormatError(
                    path, line_number,
                    "non-integer field in %r" % line) from None
            if i < 0 or j < 0:
                raise ModPolyFormatError(
                    path, line_number, "negative exponent in %r" % line)
            if i < j:
                raise ModPolyFormatError(
                    path, line_number,
                    "exponents must satisfy i >= j, got (%d, %d)" % (i, j))
            if (i, j) in table:
                raise ModPolyFormatError(
                    path, line_number, "duplicate entry for (%d, %d)" % (i, j))
            table[(i, j)] = c
    if not table:
        raise ModPolyIntegrityError("%s: no coefficient entries" % path)
    return ModularPolynomial(level, table)


class SpecializedPoly:
    """A modular polynomial with the second variable pinned to a rational."""

    __slots__ = ("level", "j_value", "poly", "monic_poly")

    def __init__(self, level, j_value, poly, monic_poly):
        self.level = level
        self.j_value = j_value
        self.poly = poly
        self.monic_poly = monic_poly

    def __repr__(self):
        return ("SpecializedPoly(level=%d, j=%s, degree=%d)"
                % (self.level, self.j_value, self.poly.degree))


def specialize(phi, j):
    """Substitute Y := j exactly, clearing to primitive integer form.

    `poly` is the primitive integer polynomial (a positive rational multiple
    of the exact substitution), `monic_poly` the exact monic substitution.
    """
    j = Fraction(j)
    coeffs = [Fraction(0)] * (phi.degree + 1)
    for (i, k), c in phi.table.items():
        coeffs[i] += c * j ** k
        if i != k:
            coeffs[k] += c * j ** i
    monic = PolyQ(coeffs)
    _, primitive = primitive_int_poly(monic)
    poly = PolyQ(primitive)
    if poly.degree != phi.degree:
        raise ModPolyIntegrityError(
            "specialization degree %d != psi(%d)" % (poly.degree, phi.level))
    return SpecializedPoly(phi.level, j, poly, monic)


class DegreeWitness:
    """Certified (or explicitly indeterminate) factor-degree multiset."""

    __slots__ = ("level", "j_value", "certified", "factor_degrees",
                 "min_degree", "feasible", "primes_used",
                 "full_factorization_used")

    def __init__(self, level, j_value, certified, factor_degrees, min_degree,
                 feasible, primes_used, full_factorization_used):
        self.level = level
        self.j_value = j_value
        self.certified = certified
        self.factor_degrees = factor_degrees
        self.min_degree = min_degree
        self.feasible = feasible
        self.primes_used = primes_used
        self.full_factorization_used = full_factorization_used

    def __repr__(self):
        if self.certified:
            return ("DegreeWitness(level=%d, j=%s, degrees=%s, min=%d)"
                    % (self.level, self.j_value, list(self.factor_degrees),
                       self.min_degree))
        return ("DegreeWitness(level=%d, j=%s, INDETERMINATE, %d feasible)"
                % (self.level, self.j_value, len(self.feasible)))


def _squarefree_witness(poly):
    """gcd(F, F') as a primitive PolyQ, or None when squarefree.

    Works off the squarefree decomposition F = prod G_i^m_i, for which
    gcd(F, F') = prod G_i^(m_i - 1); the decomposition short-circuits
    cheaply in the (typical) squarefree case.
    """
    _, coeffs = primitive_int_poly(poly)
    if coeffs[-1] < 0:
        coeffs = [-c for c in coeffs]
    parts = _yun_squarefree(coeffs)
    if all(mult == 1 for _, mult in parts):
        return None
    witness = PolyQ([1])
    for part, mult in parts:
        if mult > 1:
            witness = witness * PolyQ(part) ** (mult - 1)
    return witness


def _is_good_prime(coeffs, p):
    """p keeps the degree and the squarefree-ness of the integer poly."""
    if coeffs[-1] % p == 0:
        return False
    reduced = _ftrim([c % p for c in coeffs])
    return len(_fgcd(reduced, _fderiv(reduced, p), p)) == 1


def isogeny_degree_witness(phi, j, prime_cap=25, full_factorization=False):
    """Certify the factor degrees of the specialization at j.

    Escalates through good primes starting at the least good prime >= 11,
    intersecting feasible degree multisets until a singleton certifies the
    answer or `prime_cap` good primes are exhausted.  Exhaustion returns an
    explicitly indeterminate witness unless `full_factorization` is set, in
    which case a complete factorization settles the degrees exactly.
    Non-squarefree specializations are rejected with the gcd witness.
    """
    spec = specialize(phi, j)
    witness = _squarefree_witness(spec.poly)
    if witness is not None:
        raise NonSquarefreeSpecializationError(phi.level, j, witness)
    coeffs = [int(c) for c in spec.poly.coeffs]
    certifier = DegreeCertifier(spec.poly)
    primes_used = []
    feasible = None
    p = 11
    while len(primes_used) < prime_cap:
        if _is_good_prime(coeffs, p):
            primes_used.append(p)
            feasible = certifier.add_prime(p)
            if len(feasible) == 1:
                degrees = tuple(sorted(next(iter(feasible))))
                return DegreeWitness(
                    phi.level, spec.j_value, True, degrees, min(degrees),
                    frozenset(feasible), tuple(primes_used), False)
        p = next_prime(p)
    if full_factorization:
        degrees = factor_over_Q(spec.poly).degrees()
        return DegreeWitness(
            phi.level, spec.j_value, True, degrees, min(degrees),
            frozenset({degrees}), tuple(primes_used), True)
    return DegreeWitness(
        phi.level, spec.j_value, False, None, None,
        frozenset(feasible if feasible is not None else set()),
        tuple(primes_used), False)
