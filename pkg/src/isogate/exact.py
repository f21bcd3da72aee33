"""Exact arithmetic: rationals, quadratic field elements, and polynomials.

Rationals are `fractions.Fraction`, re-exported as `Rational`; everything in
this module is built on exact integer arithmetic.  The factorization engine
works over the integers (contents are pulled out first) with a classical
mod-p / Hensel-lift / recombination strategy, and a separate degree
certification path that never needs the full lift.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import combinations

Rational = Fraction


class UnsupportedModulusError(ValueError):
    """A modulus outside the supported range (e.g. p = 2) was requested."""


class BadPrimeError(ValueError):
    """A prime of bad reduction was used where good reduction is required."""

    def __init__(self, prime, reason=""):
        self.prime = prime
        msg = "bad prime %d" % prime
        if reason:
            msg += ": " + reason
        super().__init__(msg)


def parse_rational(text):
    """Parse 'n' or 'n/d' into a Rational."""
    return Fraction(text.strip())


# ---------------------------------------------------------------------------
# integer utilities

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin, valid for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n):
    """Smallest prime strictly greater than n."""
    k = n + 1
    if k <= 2:
        return 2
    if k % 2 == 0:
        k += 1
    while not is_prime(k):
        k += 2
    return k


def _pollard_rho(n):
    # n odd composite, not a prime power issue here; returns a proper factor
    if n % 3 == 0:
        return 3
    for c in range(1, 50):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError("rho failed on %d" % n)


def factor_int(n):
    """Prime factorization of |n| as {prime: exponent}; n must be nonzero."""
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    out = {}
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        root = math.isqrt(m)
        if root * root == m:
            stack.extend([root, root])
            continue
        d = _pollard_rho(m)
        stack.extend([d, m // d])
    return out


def is_squarefree(n):
    if n == 0:
        return False
    return all(e == 1 for e in factor_int(n).values())


def squarefree_part(n):
    """Squarefree integer d with n = d * (square); sign of n is kept."""
    if n == 0:
        return 0
    d = -1 if n < 0 else 1
    for p, e in factor_int(n).items():
        if e % 2:
            d *= p
    return d


def radical(n):
    """Product of the distinct primes dividing n."""
    r = 1
    for p in factor_int(n):
        r *= p
    return r


def _divisors(n):
    out = [1]
    for p, e in factor_int(n).items():
        out = [d * p ** k for d in out for k in range(e + 1)]
    return sorted(out)


# ---------------------------------------------------------------------------
# quadratic field elements

class QuadExtElem:
    """Element a + b*sqrt(d) of a real or imaginary quadratic field.

    d is a squarefree integer other than 0 and 1.  Purely rational values
    (b = 0) are canonicalized to d = -1 so that equality and hashing are
    structural.  Mixed arithmetic with Rational/int promotes automatically.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d=-1):
        a = Fraction(a)
        b = Fraction(b)
        if not isinstance(d, int):
            raise TypeError("d must be an integer")
        if b == 0:
            d = -1
        elif d in (0, 1) or not is_squarefree(d):
            raise ValueError("d must be squarefree and not 0 or 1, got %d" % d)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExtElem is immutable")

    @property
    def is_rational(self):
        return self.b == 0

    def _coerce(self, other):
        if isinstance(other, QuadExtElem):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExtElem(other)
        return None

    def _join_d(self, other):
        # field of the result; rational operands are field-agnostic
        if self.b == 0:
            return other.d
        if other.b == 0:
            return self.d
        if self.d != other.d:
            raise ValueError("cannot mix sqrt(%d) and sqrt(%d)" % (self.d, other.d))
        return self.d

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExtElem(self.a + o.a, self.b + o.b, self._join_d(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadExtElem(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._join_d(o)
        return QuadExtElem(self.a * o.a + d * self.b * o.b,
                           self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("element has norm 0")
        return QuadExtElem(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def conjugate(self):
        return QuadExtElem(self.a, -self.b, self.d)

    def norm(self):
        """a^2 - d*b^2, the product with the conjugate."""
        return self.a * self.a - self.d * self.b * self.b

    def trace(self):
        return 2 * self.a

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self.a, self.b, self.d) == (o.a, o.b, o.d)

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __repr__(self):
        if self.b == 0:
            return "QuadExtElem(%s)" % self.a
        return "QuadExtElem(%s, %s, d=%d)" % (self.a, self.b, self.d)


# ---------------------------------------------------------------------------
# polynomials over Q

class PolyQ:
    """Univariate polynomial over Q, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("PolyQ is immutable")

    @classmethod
    def monomial(cls, degree, coeff=1):
        return cls([0] * degree + [coeff])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, PolyQ):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, PolyQ):
            other = PolyQ([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyQ([self[i] + other[i] for i in range(n)])

    def __neg__(self):
        return PolyQ([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, PolyQ):
            other = PolyQ([other])
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PolyQ([c * other for c in self.coeffs])
        if not isinstance(other, PolyQ):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return PolyQ([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return PolyQ(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = PolyQ([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        if not isinstance(other, PolyQ) or other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return PolyQ([]), self
        quot = [Fraction(0)] * (dq + 1)
        dlc = other.leading
        for i in range(dq, -1, -1):
            c = rem[i + other.degree] / dlc
            quot[i] = c
            if c:
                for k, b in enumerate(other.coeffs):
                    rem[i + k] -= c * b
        return PolyQ(quot), PolyQ(rem[:other.degree])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self):
        return PolyQ([i * c for i, c in enumerate(self.coeffs)][1:])

    def eval(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self):
        if self.is_zero:
            return self
        lc = self.leading
        return PolyQ([c / lc for c in self.coeffs])

    def __repr__(self):
        if self.is_zero:
            return "PolyQ(0)"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append("%s*x" % c if c != 1 else "x")
            else:
                terms.append("%s*x^%d" % (c, i) if c != 1 else "x^%d" % i)
        return "PolyQ(%s)" % " + ".join(terms)


def poly_eval(f, x):
    """Evaluate f at x (Rational or QuadExtElem) in Horner order."""
    return f.eval(x)


def primitive_int_poly(f):
    """Write f = content * F with F a primitive integer polynomial, lc > 0.

    Returns (content: Rational, F: list of int, low degree first).  The zero
    polynomial is rejected.
    """
    if f.is_zero:
        raise ValueError("zero polynomial has no primitive part")
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in f.coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    if ints[-1] < 0:
        g = -g
    return Fraction(g, den), [c // g for c in ints]


# integer polynomial helpers (lists of int, low degree first, trimmed)

def _itrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a

def _ideg(a):
    return len(a) - 1

def _imul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out

def _iadd(a, b):
    n = max(len(a), len(b))
    return _itrim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                   for i in range(n)])

def _isub(a, b):
    n = max(len(a), len(b))
    return _itrim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
                   for i in range(n)])

def _iscale(a, c):
    return [x * c for x in a] if c else []

def _icontent(a):
    g = 0
    for x in a:
        g = math.gcd(g, x)
    return g

def _iprimitive(a):
    a = _itrim(list(a))
    if not a:
        return []
    g = _icontent(a)
    if a[-1] < 0:
        g = -g
    return [x // g for x in a]

def _ideriv(a):
    return [i * a[i] for i in range(1, len(a))]

def _idiv_exact(a, b):
    """Exact division in Z[x]; returns quotient or None if it fails."""
    a = list(a)
    if not b:
        raise ZeroDivisionError
    da, db = _ideg(a), _ideg(b)
    if da < db:
        return None if _itrim(a) else []
    lc = b[-1]
    quot = [0] * (da - db + 1)
    for i in range(da - db, -1, -1):
        head = a[i + db]
        if head % lc:
            return None
        q = head // lc
        quot[i] = q
        if q:
            for k in range(db + 1):
                a[i + k] -= q * b[k]
    return quot if not _itrim(a) else None

def _ipseudo_rem(a, b):
    """lc(b)^(da-db+1) * a mod b over Z."""
    a = list(a)
    da, db = _ideg(a), _ideg(b)
    lc = b[-1]
    for i in range(da - db, -1, -1):
        a = _iscale(a, lc)
        head = a[i + db]
        if head:
            q = head // lc  # exact: head is divisible after the scale
            for k in range(db + 1):
                a[i + k] -= q * b[k]
    return _itrim(a[:db])

def _igcd(a, b):
    """Primitive gcd in Z[x] via the primitive pseudo-remainder sequence."""
    a = _iprimitive(a)
    b = _iprimitive(b)
    if _ideg(a) < _ideg(b):
        a, b = b, a
    while b:
        if _ideg(b) == 0:
            return [1]
        r = _ipseudo_rem(a, b)
        a, b = b, _iprimitive(r)
    return _iprimitive(a)


def _yun_squarefree(F):
    """Squarefree decomposition of a primitive integer polynomial.

    Returns [(G, multiplicity)] with each G primitive, squarefree, positive
    leading coefficient, and F = prod G^mult (F must have positive lc).
    """
    if _ideg(F) == 0:
        return []
    dF = _ideriv(F)
    # cheap certificate first: the rational gcd of F and F' reduces into
    # the mod-p gcd whenever p keeps the leading coefficient, so a single
    # unit mod-p gcd proves F squarefree without the (potentially very
    # expensive, for large coefficients) integer remainder sequence
    p, tried = 11, 0
    while tried < 10:
        if F[-1] % p:
            tried += 1
            Fp = _ftrim([c % p for c in F])
            if len(_fgcd(Fp, _fderiv(Fp, p), p)) == 1:
                return [(list(F), 1)]
        p = next_prime(p)
    g = _igcd(F, dF)
    if _ideg(g) == 0:
        return [(list(F), 1)]
    out = []
    c = _idiv_exact(F, g)
    d = _isub(_idiv_exact(dF, g), _ideriv(c))
    i = 1
    while _ideg(c) > 0:
        p = _igcd(c, d)
        if _ideg(p) > 0:
            out.append((p, i))
        c = _idiv_exact(c, p)
        d = _isub(_idiv_exact(d, p), _ideriv(c))
        i += 1
    return out


# ---------------------------------------------------------------------------
# polynomials over F_p

class PolyFp:
    """Polynomial over F_p (p an odd prime for factorization purposes)."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p, coeffs):
        cs = [c % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("PolyFp is immutable")

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, PolyFp):
            return self.p == other.p and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def eval(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def __repr__(self):
        return "PolyFp(p=%d, %s)" % (self.p, list(self.coeffs))


def polyq_mod_p(f, p):
    """Reduce a PolyQ mod p; denominators must be invertible mod p."""
    out = []
    for c in f.coeffs:
        if c.denominator % p == 0:
            raise BadPrimeError(p, "divides a coefficient denominator")
        out.append(c.numerator * pow(c.denominator, p - 2, p) % p)
    return PolyFp(p, out)


# low-level F_p polynomial helpers on plain lists

def _ftrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a

def _fmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ftrim(out)

def _fsub(a, b, p):
    n = max(len(a), len(b))
    return _ftrim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                   for i in range(n)])

def _fdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError
    a = list(a)
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return [], _ftrim(a)
    inv = pow(b[-1], p - 2, p)
    quot = [0] * (da - db + 1)
    for i in range(da - db, -1, -1):
        c = a[i + db] * inv % p
        quot[i] = c
        if c:
            for k in range(db + 1):
                a[i + k] = (a[i + k] - c * b[k]) % p
    return _ftrim(quot), _ftrim(a[:db])

def _fgcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _fdivmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a

def _fmonic(a, p):
    if not a:
        return []
    inv = pow(a[-1], p - 2, p)
    return [c * inv % p for c in a]

def _fpowmod(a, e, mod, p):
    result = [1]
    base = _fdivmod(a, mod, p)[1]
    while e:
        if e & 1:
            result = _fdivmod(_fmul(result, base, p), mod, p)[1]
        base = _fdivmod(_fmul(base, base, p), mod, p)[1]
        e >>= 1
    return result

def _fderiv(a, p):
    return _ftrim([i * a[i] % p for i in range(1, len(a))])


def _sqfree_fp(f, p):
    """Squarefree decomposition of a monic polynomial over F_p."""
    out = []
    c = _fgcd(f, _fderiv(f, p), p)
    w = _fdivmod(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = _fgcd(w, c, p)
        z = _fdivmod(w, y, p)[0]
        if len(z) > 1:
            out.append((z, i))
        w = y
        c = _fdivmod(c, y, p)[0]
        i += 1
    if len(c) > 1:
        # c is a p-th power: its nonzero terms sit at exponents divisible by p
        root = [c[k] for k in range(0, len(c), p)]
        for g, m in _sqfree_fp(root, p):
            out.append((g, m * p))
    return out


def _ddf(f, p):
    """Distinct-degree splitting of a monic squarefree polynomial."""
    out = []
    h = [0, 1]  # x
    d = 0
    while len(f) - 1 > 2 * d + 1:
        d += 1
        h = _fpowmod(h, p, f, p)
        g = _fgcd(_fsub(h, [0, 1], p), f, p)
        if len(g) > 1:
            out.append((d, g))
            f = _fdivmod(f, g, p)[0]
            h = _fdivmod(h, f, p)[1]
    if len(f) > 1:
        out.append((len(f) - 1, f))
    return out


def _edf(f, d, p, rng):
    """Equal-degree splitting: f monic squarefree, all factors of degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    e = (pow(p, d) - 1) // 2
    while True:
        r = [rng.randrange(p) for _ in range(n)]
        if not _ftrim(list(r)):
            continue
        h = _fsub(_fpowmod(r, e, f, p), [1], p)
        g = _fgcd(h, f, p)
        if 1 < len(g) < len(f):
            other = _fdivmod(f, g, p)[0]
            return _edf(g, d, p, rng) + _edf(other, d, p, rng)


def factor_mod_p(f):
    """Factor a nonzero PolyFp into irreducibles.

    Returns a list of (PolyFp monic irreducible, multiplicity), sorted by
    (degree, coefficient tuple); the product times the leading coefficient
    of f reconstructs f.  p = 2 is rejected.
    """
    if f.p == 2:
        raise UnsupportedModulusError("factorization mod 2 is not supported")
    if not is_prime(f.p):
        raise UnsupportedModulusError("modulus %d is not prime" % f.p)
    if f.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    p = f.p
    monic = _fmonic(list(f.coeffs), p)
    seed = p
    for c in f.coeffs:
        seed = (seed * 1000003 + c) % (1 << 63)
    rng = random.Random(seed)
    out = []
    for sq, mult in _sqfree_fp(monic, p):
        for d, block in _ddf(sq, p):
            for irr in _edf(block, d, p, rng):
                out.append((PolyFp(p, irr), mult))
    out.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return out


# ---------------------------------------------------------------------------
# Hensel lifting and factorization over Q

def _fbezout(a, b, p):
    """s, t with s*a + t*b = 1 over F_p (a, b coprime)."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _fdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _fsub(s0, _fmul(q, s1, p), p)
        t0, t1 = t1, _fsub(t0, _fmul(q, t1, p), p)
    if len(r0) != 1:
        raise ArithmeticError("polynomials are not coprime mod %d" % p)
    inv = pow(r0[0], p - 2, p)
    return [c * inv % p for c in s0], [c * inv % p for c in t0]


def _mmul(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % m
    while out and out[-1] == 0:
        out.pop()
    return out

def _msub(a, b, m):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % m
           for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out

def _mdivmod_monic(a, b, m):
    # b monic
    a = list(a)
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return [], a
    quot = [0] * (da - db + 1)
    for i in range(da - db, -1, -1):
        c = a[i + db] % m
        quot[i] = c
        if c:
            for k in range(db + 1):
                a[i + k] = (a[i + k] - c * b[k]) % m
    while quot and quot[-1] == 0:
        quot.pop()
    rem = a[:db]
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem


def _madd(a, b, m):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % m
           for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def _hensel_pair(f, g, h, s, t, p, target):
    """Lift f = g*h from mod p to mod p^target (all monic, g,h coprime mod p).

    s*g + t*h = 1 mod p.  Returns (g, h) mod p^target.
    """
    m = p
    pt = p ** target
    while m < pt:
        m2 = min(m * m, pt)
        fm = [c % m2 for c in f]
        e = _msub(fm, _mmul(g, h, m2), m2)
        q, r = _mdivmod_monic(_mmul(s, e, m2), h, m2)
        g = _madd(_madd(g, _mmul(t, e, m2), m2), _mmul(q, g, m2), m2)
        h = _madd(h, r, m2)
        b = _msub(_madd(_mmul(s, g, m2), _mmul(t, h, m2), m2), [1], m2)
        c2, d2 = _mdivmod_monic(_mmul(s, b, m2), h, m2)
        s = _msub(s, d2, m2)
        t = _msub(t, _madd(_mmul(t, b, m2), _mmul(c2, g, m2), m2), m2)
        m = m2
    return g, h


def _hensel_tree(f, facs, p, target):
    """Lift monic f = prod(facs) from mod p to mod p^target."""
    if len(facs) == 1:
        return [[c % p ** target for c in f]]
    mid = len(facs) // 2
    g0 = [1]
    for fa in facs[:mid]:
        g0 = _fmul(g0, fa, p)
    h0 = [1]
    for fa in facs[mid:]:
        h0 = _fmul(h0, fa, p)
    s, t = _fbezout(g0, h0, p)
    g, h = _hensel_pair(f, g0, h0, s, t, p, target)
    return (_hensel_tree(g, facs[:mid], p, target)
            + _hensel_tree(h, facs[mid:], p, target))


def _symmetric(c, m):
    c %= m
    return c - m if c > m // 2 else c


def _pick_working_prime(F):
    """Smallest odd prime >= 5 with good reduction for the integer poly F."""
    p = 5
    while True:
        if F[-1] % p:
            Fp = _ftrim([c % p for c in F])
            if len(Fp) == len(F) and len(_fgcd(Fp, _fderiv(Fp, p), p)) == 1:
                return p
        p = next_prime(p)


def _landau_mignotte_bound(F):
    # bound on coefficients of lc(F) * (any monic-normalized factor of F)
    n = _ideg(F)
    norm2 = math.isqrt(sum(c * c for c in F)) + 1
    return (1 << n) * norm2 * abs(F[-1])


def _factor_squarefree_int(G):
    """Irreducible factors of a primitive squarefree integer polynomial.

    Classical strategy: factor mod a good prime, Hensel-lift to above twice
    the coefficient bound, then recombine subsets in ascending cardinality
    (lexicographic within a cardinality) with early trial division.
    """
    if _ideg(G) == 1:
        return [_iprimitive(G)]
    p = _pick_working_prime(G)
    Gp = PolyFp(p, G)
    modular = [list(fac.coeffs) for fac, _ in factor_mod_p(Gp)]
    if len(modular) == 1:
        return [_iprimitive(G)]
    bound = 2 * _landau_mignotte_bound(G) + 1
    target = 1
    while p ** target < bound:
        target += 1
    pk = p ** target
    inv_lc = pow(G[-1], -1, pk)
    monic_G = [c * inv_lc % pk for c in G]
    lifted = _hensel_tree(monic_G, modular, p, target)

    found = []
    current = list(G)
    remaining = list(range(len(lifted)))
    card = 1
    while 2 * card <= len(remaining):
        hit = False
        for subset in combinations(remaining, card):
            prod = [current[-1]]
            for i in subset:
                prod = _mmul(prod, lifted[i], pk)
            cand = _iprimitive([_symmetric(c, pk) for c in prod])
            quot = _idiv_exact(current, cand)
            if quot is not None:
                found.append(cand)
                current = quot
                remaining = [i for i in remaining if i not in subset]
                hit = True
                break
        if not hit:
            card += 1
    if _ideg(current) > 0:
        found.append(_iprimitive(current))
    return found


class FactorizationQ:
    """content * prod(factor^multiplicity) = the factored polynomial."""

    __slots__ = ("content", "factors")

    def __init__(self, content, factors):
        object.__setattr__(self, "content", Fraction(content))
        object.__setattr__(self, "factors", tuple(factors))

    def __setattr__(self, name, value):
        raise AttributeError("FactorizationQ is immutable")

    def expand(self):
        out = PolyQ([self.content])
        for f, m in self.factors:
            out = out * f ** m
        return out

    def degrees(self):
        """Multiset of irreducible factor degrees, with multiplicity."""
        out = []
        for f, m in self.factors:
            out.extend([f.degree] * m)
        return tuple(sorted(out))

    def __repr__(self):
        return "FactorizationQ(content=%s, factors=%s)" % (self.content, list(self.factors))


def factor_over_Q(f):
    """Complete factorization of a nonzero PolyQ into irreducibles over Q.

    Factors are primitive integer polynomials with positive leading
    coefficient, sorted by (degree, coefficient sequence).
    """
    if f.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    content, F = primitive_int_poly(f)
    if _ideg(F) == 0:
        return FactorizationQ(content, [])
    factors = []
    for part, mult in _yun_squarefree(F):
        for irr in _factor_squarefree_int(part):
            factors.append((PolyQ(irr), mult))
    factors.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return FactorizationQ(content, factors)


class LowDegreeFactor:
    """An irreducible factor of degree <= 2, with quadratic field data."""

    __slots__ = ("poly", "multiplicity", "discriminant", "field_d")

    def __init__(self, poly, multiplicity, discriminant=None, field_d=None):
        self.poly = poly
        self.multiplicity = multiplicity
        self.discriminant = discriminant
        self.field_d = field_d

    def __repr__(self):
        if self.poly.degree == 2:
            return ("LowDegreeFactor(%r, mult=%d, disc=%s, field_d=%s)"
                    % (self.poly, self.multiplicity, self.discriminant, self.field_d))
        return "LowDegreeFactor(%r, mult=%d)" % (self.poly, self.multiplicity)


def low_degree_factors(f, dmax):
    """Irreducible factors of degree <= dmax (dmax in {1, 2}).

    Quadratic factors come with their discriminant and the squarefree d of
    the quadratic field cut out by their roots (d = -1 for factors whose
    roots are imaginary quadratic but the field marker is only meaningful
    through its squarefree part).
    """
    if dmax not in (1, 2):
        raise ValueError("dmax must be 1 or 2")
    out = []
    for poly, mult in factor_over_Q(f).factors:
        if poly.degree > dmax:
            continue
        if poly.degree == 2:
            a, b, c = poly[2], poly[1], poly[0]
            disc = b * b - 4 * a * c
            d = squarefree_part(disc.numerator * disc.denominator)
            out.append(LowDegreeFactor(poly, mult, disc, d))
        else:
            out.append(LowDegreeFactor(poly, mult))
    return out


def rational_roots(f):
    """All rational roots of f, by search over divisors of the end coefficients."""
    if f.is_zero:
        raise ValueError("zero polynomial")
    _, F = primitive_int_poly(f)
    k = 0
    while F[k] == 0:
        k += 1
    roots = set()
    if k:
        roots.add(Fraction(0))
    for a in _divisors(F[k]):
        for b in _divisors(F[-1]):
            for r in (Fraction(a, b), Fraction(-a, b)):
                if f.eval(r) == 0:
                    roots.add(r)
    return sorted(roots)


# ---------------------------------------------------------------------------
# degree certification without full recombination

def _rational_reconstruct(x, modulus, bound):
    """a/b with a = b*x mod modulus, |a| <= bound, 0 < b <= bound, or None."""
    r0, r1 = modulus, x % modulus
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    a, b = (r1, s1) if s1 > 0 else (-r1, -s1)
    return a, b


def _count_linear_factors(F, p):
    """Exact number of linear factors of a primitive integer polynomial.

    Works for coefficient sizes where divisor search is hopeless: each simple
    root mod p is Newton-lifted far enough that a rational root, if the lift
    comes from one, can be recognized by rational reconstruction and then
    verified exactly.  Requires p of good reduction (so all mod-p roots are
    simple); a rational root reduces to exactly one of them.
    """
    n = _ideg(F)
    fp = PolyFp(p, F)
    roots_mod_p = [r for r in range(p) if fp.eval(r) == 0]
    if not roots_mod_p:
        return 0
    bound = _landau_mignotte_bound(F)
    k = 1
    while p ** k <= 2 * bound * bound:
        k += 1
    pk = p ** k
    dF = _ideriv(F)
    count = 0
    for r in roots_mod_p:
        x, m = r, p
        while m < pk:
            m = min(m * m, pk)
            fx = 0
            for c in reversed(F):
                fx = (fx * x + c) % m
            dfx = 0
            for c in reversed(dF):
                dfx = (dfx * x + c) % m
            x = (x - fx * pow(dfx, -1, m)) % m
        recon = _rational_reconstruct(x, pk, bound)
        if recon is None:
            continue
        a, b = recon
        # exact check: b^n * F(a/b) = 0
        if sum(F[i] * a ** i * b ** (n - i) for i in range(n + 1)) == 0:
            count += 1
    return count


def _mod_p_degree_pattern(F, p):
    """Sorted factor-degree pattern of a primitive integer poly mod p."""
    if p == 2:
        raise UnsupportedModulusError("degree patterns mod 2 are not supported")
    if F[-1] % p == 0:
        raise BadPrimeError(p, "divides the leading coefficient")
    Fp = _ftrim([c % p for c in F])
    if len(_fgcd(Fp, _fderiv(Fp, p), p)) != 1:
        raise BadPrimeError(p, "divides the discriminant")
    pattern = []
    for fac, mult in factor_mod_p(PolyFp(p, F)):
        pattern.extend([fac.degree] * mult)
    return tuple(sorted(pattern))


def _sum_coarsenings(parts, _memo=None):
    """All multisets obtainable by merging parts of the given multiset."""
    if _memo is None:
        _memo = {}
    parts = tuple(sorted(parts))
    if parts in _memo:
        return _memo[parts]
    if not parts:
        return {()}
    biggest = parts[-1]
    rest = list(parts[:-1])
    out = set()
    # the block containing the largest part takes some sub-multiset of the rest
    distinct = sorted(set(rest))
    counts = [rest.count(v) for v in distinct]

    def submultisets(idx, chosen):
        if idx == len(distinct):
            yield list(chosen)
            return
        for k in range(counts[idx] + 1):
            yield from submultisets(idx + 1, chosen + [distinct[idx]] * k)

    for sub in submultisets(0, []):
        leftover = list(rest)
        for v in sub:
            leftover.remove(v)
        block = biggest + sum(sub)
        for tail in _sum_coarsenings(tuple(leftover), _memo):
            out.add(tuple(sorted(tail + (block,))))
    _memo[parts] = out
    return out


def _refines(pattern, target):
    """Can `pattern` be partitioned into groups summing to `target`?"""
    if sum(pattern) != sum(target):
        return False
    parts = sorted(pattern, reverse=True)
    bins = sorted(target, reverse=True)

    def place(i, space):
        if i == len(parts):
            return all(s == 0 for s in space)
        seen = set()
        for b in range(len(space)):
            if space[b] >= parts[i] and space[b] not in seen:
                seen.add(space[b])
                space[b] -= parts[i]
                if place(i + 1, space):
                    space[b] += parts[i]
                    return True
                space[b] += parts[i]
        return False

    return place(0, bins)


def certify_factor_degrees(f, primes):
    """Degree multisets over Q consistent with every mod-p pattern.

    Factors over Q reduce mod a good prime to products of mod-p factors, so
    the true degree multiset is a coarsening of every pattern; the feasible
    set is the intersection of the coarsening sets, further cut down by the
    exact number of linear factors (a rational-root search is cheap and
    definitive, and mod-p patterns alone can never rule out an irreducible
    quadratic masquerading as two linears).  A singleton certifies the
    factor degrees without any lifting or recombination.
    """
    if f.is_zero:
        raise ValueError("zero polynomial")
    primes = list(primes)
    if not primes:
        raise ValueError("at least one prime is required")
    _, F = primitive_int_poly(f)
    if _ideg(F) == 0:
        return {()}
    patterns = [_mod_p_degree_pattern(F, p) for p in primes]
    patterns.sort(key=len)
    feasible = _sum_coarsenings(patterns[0])
    for pat in patterns[1:]:
        feasible = {m for m in feasible if _refines(pat, m)}
    nlinear = _count_linear_factors(F, primes[0])
    return {m for m in feasible if m.count(1) == nlinear}


class DegreeCertifier:
    """Incremental form of certify_factor_degrees.

    Feeding primes one at a time through add_prime keeps the running
    feasible set equal to certify_factor_degrees(f, primes-so-far) while
    computing each mod-p pattern once and the exact linear-factor count
    once, so a caller can escalate primes until the set is a singleton
    without re-certifying the whole list every round.  The candidate set
    is (re)expanded only from the shortest pattern seen, which keeps the
    coarsening enumeration small.
    """

    __slots__ = ("_F", "_patterns", "_shortest", "_nlinear", "_feasible")

    def __init__(self, f):
        if f.is_zero:
            raise ValueError("zero polynomial")
        _, self._F = primitive_int_poly(f)
        self._patterns = []
        self._shortest = None
        self._nlinear = None
        self._feasible = None

    @property
    def feasible(self):
        """The current feasible set (None before the first prime)."""
        return None if self._feasible is None else set(self._feasible)

    def add_prime(self, p):
        """Fold one good prime in; returns the new feasible set."""
        if _ideg(self._F) == 0:
            self._feasible = {()}
            return set(self._feasible)
        pattern = _mod_p_degree_pattern(self._F, p)
        if self._nlinear is None:
            self._nlinear = _count_linear_factors(self._F, p)
        self._patterns.append(pattern)
        if self._shortest is None or len(pattern) < len(self._shortest):
            self._shortest = pattern
            feasible = _sum_coarsenings(pattern)
            for other in self._patterns:
                feasible = {m for m in feasible if _refines(other, m)}
            feasible = {m for m in feasible
                        if m.count(1) == self._nlinear}
        else:
            feasible = {m for m in self._feasible if _refines(pattern, m)}
        self._feasible = feasible
        return set(feasible)
