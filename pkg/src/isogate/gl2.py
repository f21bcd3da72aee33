"""Subgroups of GL2(Z/mZ): closure, reduction, conjugacy, and orbit analysis.

Groups are realized as explicit element sets (every modulus used here is at
most 49, where the full group has about 4.8 million elements).  Elements are
stored internally as plain (a, b, c, d) tuples; `MatZmod` wraps them at API
boundaries.  Orbits of a group on cyclic order-m subgroups of (Z/mZ)^2 give
the degrees of the fields of definition of cyclic m-isogenies, and orbits on
order-m vectors do the same for points.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .exact import UnsupportedModulusError, factor_int, is_prime, radical

SIZE_CAP = 10 ** 7

_ID = (1, 0, 0, 1)


class InvalidGeneratorError(ValueError):
    """A generator is not an invertible matrix over the stated modulus."""


class GroupSizeLimitError(RuntimeError):
    """An operation would realize more elements than the explicit cap."""


class MatZmod:
    """An invertible 2x2 matrix over Z/mZ."""

    __slots__ = ("m", "a", "b", "c", "d")

    def __init__(self, m, a, b, c, d):
        if m < 2:
            raise ValueError("modulus must be at least 2")
        a, b, c, d = a % m, b % m, c % m, d % m
        if math.gcd((a * d - b * c) % m, m) != 1:
            raise InvalidGeneratorError(
                "matrix [[%d,%d],[%d,%d]] is not invertible mod %d" % (a, b, c, d, m))
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("MatZmod is immutable")

    @classmethod
    def from_rows(cls, m, rows):
        (a, b), (c, d) = rows
        return cls(m, a, b, c, d)

    @property
    def tuple(self):
        return (self.a, self.b, self.c, self.d)

    @property
    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]

    def det(self):
        return (self.a * self.d - self.b * self.c) % self.m

    def trace(self):
        return (self.a + self.d) % self.m

    def __mul__(self, other):
        if not isinstance(other, MatZmod):
            return NotImplemented
        if self.m != other.m:
            raise ValueError("modulus mismatch")
        return MatZmod(self.m, *_mul4(self.tuple, other.tuple, self.m))

    def inverse(self):
        return MatZmod(self.m, *_inv4(self.tuple, self.m))

    def __eq__(self, other):
        if isinstance(other, MatZmod):
            return self.m == other.m and self.tuple == other.tuple
        return NotImplemented

    def __hash__(self):
        return hash((self.m, self.tuple))

    def __repr__(self):
        return "MatZmod(%d, [[%d,%d],[%d,%d]])" % (self.m, self.a, self.b, self.c, self.d)


def _mul4(x, y, m):
    return ((x[0] * y[0] + x[1] * y[2]) % m,
            (x[0] * y[1] + x[1] * y[3]) % m,
            (x[2] * y[0] + x[3] * y[2]) % m,
            (x[2] * y[1] + x[3] * y[3]) % m)


def _inv4(x, m):
    di = pow((x[0] * x[3] - x[1] * x[2]) % m, -1, m)
    return ((x[3] * di) % m, (-x[1] * di) % m, (-x[2] * di) % m, (x[0] * di) % m)


def _pow4(x, e, m):
    r = _ID
    while e:
        if e & 1:
            r = _mul4(r, x, m)
        x = _mul4(x, x, m)
        e >>= 1
    return r


def gl2_order(m):
    """|GL2(Z/mZ)| = m^4 * prod over p|m of (1 - 1/p)(1 - 1/p^2)."""
    n = m ** 4
    for p in factor_int(m):
        n = n // p ** 3 * (p - 1) * (p * p - 1)
    return n


def cyclic_subgroup_count(m):
    """Number of cyclic order-m subgroups of (Z/mZ)^2: m * prod(1 + 1/p)."""
    n = m
    for p in factor_int(m):
        n = n // p * (p + 1)
    return n


def _vector_order(x, y, m):
    return m // math.gcd(math.gcd(x, y), m)


@lru_cache(maxsize=None)
def cyclic_subgroup_reps(m):
    """Canonical generators for the cyclic order-m subgroups of (Z/mZ)^2.

    For prime powers these are the two families (1, y) and (x, 1) with
    x = 0 mod p; for other moduli the lexicographically least generator of
    each subgroup is used.  The count is m * prod(1 + 1/p) either way.
    """
    if len(factor_int(m)) == 1:
        p = radical(m)
        reps = [(1, y) for y in range(m)]
        reps += [(x, 1) for x in range(0, m, p)]
        return tuple(reps)
    seen = set()
    reps = []
    units = [u for u in range(1, m) if math.gcd(u, m) == 1]
    for x in range(m):
        for y in range(m):
            if _vector_order(x, y, m) != m or (x, y) in seen:
                continue
            gens = sorted(((u * x) % m, (u * y) % m) for u in units)
            seen.update(gens)
            reps.append(gens[0])
    assert len(reps) == cyclic_subgroup_count(m)
    return tuple(reps)


def _canonical_rep(x, y, m, prime_power):
    # canonical generator of the cyclic subgroup spanned by (x, y) of order m
    if prime_power:
        if math.gcd(x, m) == 1:
            return (1, (pow(x, -1, m) * y) % m)
        return ((pow(y, -1, m) * x) % m, 1)
    best = None
    for u in range(1, m):
        if math.gcd(u, m) != 1:
            continue
        cand = ((u * x) % m, (u * y) % m)
        if best is None or cand < best:
            best = cand
    return best


class OrbitReport:
    """Orbit lengths of a finite group action, with the counts tied out."""

    __slots__ = ("group_order", "acted_on", "lengths")

    def __init__(self, group_order, acted_on, lengths):
        self.group_order = group_order
        self.acted_on = acted_on
        self.lengths = tuple(sorted(lengths))
        if sum(self.lengths) != acted_on:
            raise ValueError("orbit lengths do not sum to the acted-on count")
        for n in self.lengths:
            if group_order % n != 0:
                raise ValueError("orbit length %d does not divide the group order" % n)

    def min_length(self):
        return self.lengths[0]

    def __eq__(self, other):
        if isinstance(other, OrbitReport):
            return (self.group_order, self.acted_on, self.lengths) == \
                   (other.group_order, other.acted_on, other.lengths)
        return NotImplemented

    def __repr__(self):
        return "OrbitReport(|G|=%d, n=%d, lengths=%s)" % (
            self.group_order, self.acted_on, list(self.lengths))


class MatrixGroup:
    """A realized subgroup of GL2(Z/mZ).

    The element set is stored as plain 4-tuples; `elements()` yields wrapped
    matrices.  The fingerprint (order, element-order histogram, scalar count,
    cyclic-orbit signature) is conjugation-invariant; it is computed on first
    use and cached, since eager computation would cost minutes on the full
    mod-49 group, which is only ever asked for cheap counts.
    """

    __slots__ = ("modulus", "generators", "_elems", "_fingerprint", "_ocache")

    def __init__(self, modulus, generators, elems):
        self.modulus = modulus
        self.generators = tuple(generators)
        self._elems = frozenset(elems)
        self._fingerprint = None
        self._ocache = {}

    @property
    def order(self):
        return len(self._elems)

    @property
    def element_tuples(self):
        return self._elems

    def elements(self):
        m = self.modulus
        for t in sorted(self._elems):
            yield MatZmod(m, *t)

    def __contains__(self, mat):
        if isinstance(mat, MatZmod):
            return mat.m == self.modulus and mat.tuple in self._elems
        return tuple(mat) in self._elems

    def __eq__(self, other):
        if isinstance(other, MatrixGroup):
            return self.modulus == other.modulus and self._elems == other._elems
        return NotImplemented

    def __hash__(self):
        return hash((self.modulus, self._elems))

    def scalar_tuples(self):
        return sorted(t for t in self._elems
                      if t[1] == 0 and t[2] == 0 and t[0] == t[3])

    def element_order(self, t):
        t = tuple(t)
        cached = self._ocache.get(t)
        if cached is not None:
            return cached
        m = self.modulus
        order = 1
        e = gl2_order(m)
        for q, a in factor_int(e).items():
            # q-part of the order: q-th powers of t^(e/q^a) walk down to I
            s = _pow4(t, e // q ** a, m)
            while s != _ID:
                s = _pow4(s, q, m)
                order *= q
        self._ocache[t] = order
        return order

    @property
    def fingerprint(self):
        if self._fingerprint is None:
            hist = {}
            for t in self._elems:
                o = self.element_order(t)
                hist[o] = hist.get(o, 0) + 1
            self._fingerprint = (self.order,
                                 tuple(sorted(hist.items())),
                                 len(self.scalar_tuples()),
                                 cyclic_subgroup_orbits(self).lengths)
        return self._fingerprint

    def __repr__(self):
        return "MatrixGroup(mod %d, order %d, %d generators)" % (
            self.modulus, self.order, len(self.generators))


def _as_tuple_gen(g, m):
    if isinstance(g, MatZmod):
        if g.m != m:
            raise InvalidGeneratorError("generator modulus %d != %d" % (g.m, m))
        return g.tuple
    if isinstance(g, (tuple, list)):
        if len(g) == 2:
            flat = list(g[0]) + list(g[1])
        else:
            flat = list(g)
        a, b, c, d = (x % m for x in flat)
        if math.gcd((a * d - b * c) % m, m) != 1:
            raise InvalidGeneratorError(
                "matrix [[%d,%d],[%d,%d]] is not invertible mod %d" % (a, b, c, d, m))
        return (a, b, c, d)
    raise InvalidGeneratorError("unsupported generator %r" % (g,))


def group_closure(gens, m, cap=SIZE_CAP):
    """Breadth-first closure of the subgroup generated inside GL2(Z/mZ).

    Deterministic; refuses to realize more than `cap` elements.
    """
    gen_tuples = [_as_tuple_gen(g, m) for g in gens]
    seen = {_ID}
    frontier = [_ID]
    while frontier:
        new = []
        for x in frontier:
            for g in gen_tuples:
                y = ((x[0] * g[0] + x[1] * g[2]) % m,
                     (x[0] * g[1] + x[1] * g[3]) % m,
                     (x[2] * g[0] + x[3] * g[2]) % m,
                     (x[2] * g[1] + x[3] * g[3]) % m)
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        if len(seen) > cap:
            raise GroupSizeLimitError(
                "closure exceeds the %d-element realization cap" % cap)
        frontier = new
    return MatrixGroup(m, [MatZmod(m, *t) for t in gen_tuples], seen)


def least_nonresidue(p):
    """Least positive quadratic non-residue modulo an odd prime p."""
    for e in range(2, p):
        if pow(e, (p - 1) // 2, p) == p - 1:
            return e
    raise ValueError("no non-residue mod %d" % p)


def _unit_gens(m):
    """A small deterministic generating set of the unit group (Z/mZ)^*."""
    have = {1}
    gens = []
    for u in range(2, m):
        if math.gcd(u, m) != 1 or u in have:
            continue
        gens.append(u)
        frontier = [u]
        while frontier:
            x = frontier.pop()
            for h in list(have):
                y = (x * h) % m
                if y not in have:
                    have.add(y)
                    frontier.append(y)
    return gens


STANDARD_NAMES = ("full", "borel", "split_cartan_normalizer",
                  "nonsplit_cartan_normalizer", "scalars")


def standard_group(name, m):
    """One of the standard subgroups of GL2(Z/mZ), realized directly.

    Cartan constructors require an odd prime-power modulus; `full`, `borel`
    and `scalars` accept any modulus.
    """
    if name not in STANDARD_NAMES:
        raise ValueError("unknown standard group %r" % (name,))
    units = [u for u in range(1, m) if math.gcd(u, m) == 1]
    ugens = _unit_gens(m)
    if name == "scalars":
        elems = {(u, 0, 0, u) for u in units}
        gens = [MatZmod(m, u, 0, 0, u) for u in ugens]
        return MatrixGroup(m, gens, elems)
    if name == "full":
        unitset = set(units)
        elems = set()
        for a in range(m):
            for b in range(m):
                for c in range(m):
                    bc = b * c
                    for d in range(m):
                        if (a * d - bc) % m in unitset:
                            elems.add((a, b, c, d))
        gens = [MatZmod(m, 1, 1, 0, 1), MatZmod(m, 1, 0, 1, 1)]
        gens += [MatZmod(m, u, 0, 0, 1) for u in ugens]
        return MatrixGroup(m, gens, elems)
    if name == "borel":
        elems = {(a, b, 0, d) for a in units for d in units for b in range(m)}
        gens = [MatZmod(m, 1, 1, 0, 1)]
        gens += [MatZmod(m, u, 0, 0, 1) for u in ugens]
        gens += [MatZmod(m, 1, 0, 0, u) for u in ugens]
        return MatrixGroup(m, gens, elems)
    fac = factor_int(m)
    if len(fac) != 1:
        raise UnsupportedModulusError(
            "Cartan constructors need a prime-power modulus, got %d" % m)
    p = next(iter(fac))
    if p == 2:
        raise UnsupportedModulusError(
            "Cartan constructors are defined here for odd p, got %d" % m)
    if name == "split_cartan_normalizer":
        diag = {(a, 0, 0, d) for a in units for d in units}
        anti = {(0, b, c, 0) for b in units for c in units}
        gens = [MatZmod(m, 0, 1, 1, 0)]
        gens += [MatZmod(m, u, 0, 0, 1) for u in ugens]
        gens += [MatZmod(m, 1, 0, 0, u) for u in ugens]
        return MatrixGroup(m, gens, diag | anti)
    # nonsplit: the units of Z[sqrt(eps)] reduced mod m, eps the least
    # non-residue mod p, as matrices (a, b*eps; b, a); the normalizer adds
    # the coset by diag(1, -1)
    eps = least_nonresidue(p)
    cartan = set()
    for a in range(m):
        for b in range(m):
            if math.gcd((a * a - eps * b * b) % m, m) == 1:
                cartan.add((a, (b * eps) % m, b, a))
    w = (1, 0, 0, m - 1)
    elems = cartan | {_mul4(w, t, m) for t in cartan}
    gens = [MatZmod(m, *t) for t in _greedy_gens(cartan, m)]
    gens.append(MatZmod(m, *w))
    return MatrixGroup(m, gens, elems)


def _greedy_gens(elems, m):
    """A small generating set for a realized subgroup, found greedily."""
    target = len(elems)
    have = {_ID}
    gens = []
    for t in sorted(elems):
        if t in have:
            continue
        gens.append(t)
        have = set(group_closure(gens, m).element_tuples)
        if len(have) == target:
            break
    return gens


def reduce_mod(G, m2):
    """Entrywise reduction of a realized group to a divisor modulus."""
    m = G.modulus
    if m2 < 2 or m % m2 != 0:
        raise ValueError("%d does not divide the modulus %d" % (m2, m))
    elems = {(a % m2, b % m2, c % m2, d % m2) for (a, b, c, d) in G.element_tuples}
    gens = []
    seen_gens = set()
    for g in G.generators:
        t = tuple(x % m2 for x in g.tuple)
        if t not in seen_gens:
            seen_gens.add(t)
            gens.append(MatZmod(m2, *t))
    return MatrixGroup(m2, gens, elems)


def index_two_subgroups_without_minus_one(G):
    """Index-2 subgroups of G that do not contain -I.

    Every index-2 subgroup is the kernel of a surjective character
    G -> {+1, -1}, and such a character is pinned down by its values on a
    generating set.  Each nontrivial sign assignment on the generators is
    propagated from the identity across the Cayley graph; assignments that
    stay consistent define a character, and the kernels not containing -I
    are realized as groups.  Distinct characters have distinct kernels, so
    no deduplication is needed.
    """
    m = G.modulus
    minus_one = ((m - 1) % m, 0, 0, (m - 1) % m)
    gens = []
    for g in G.generators:
        t = _as_tuple_gen(g, m)
        if t != _ID and t not in gens:
            gens.append(t)
    out = []
    for mask in range(1, 1 << len(gens)):
        signs = [-1 if (mask >> i) & 1 else 1 for i in range(len(gens))]
        chi = {_ID: 1}
        frontier = [_ID]
        consistent = True
        while frontier and consistent:
            new = []
            for x in frontier:
                for t, s in zip(gens, signs):
                    y = _mul4(x, t, m)
                    v = chi[x] * s
                    known = chi.get(y)
                    if known is None:
                        chi[y] = v
                        new.append(y)
                    elif known != v:
                        consistent = False
                        break
                if not consistent:
                    break
            frontier = new
        if not consistent:
            continue
        kernel = frozenset(t for t, v in chi.items() if v == 1)
        if 2 * len(kernel) != G.order or minus_one in kernel:
            continue
        kgens = [MatZmod(m, *t) for t in _greedy_gens(kernel, m)]
        out.append(MatrixGroup(m, kgens, kernel))
    out.sort(key=lambda H: sorted(H.element_tuples))
    return out


def scalar_count(G, p):
    """Number of scalar matrices lambda*I in G with lambda = 1 mod p.

    All such scalars are present exactly when the count is modulus/p.
    """
    if not is_prime(p) or G.modulus % p != 0:
        raise ValueError("p must be a prime dividing the modulus")
    return sum(1 for t in G.scalar_tuples() if t[0] % p == 1)


def cyclic_subgroup_orbits(G, n=None):
    """Orbit lengths of G on the cyclic order-m subgroups of (Z/mZ)^2.

    The action is g . <v> = <g v> on the canonical representatives; the
    minimal orbit length is the minimal degree of a field of definition of
    a cyclic m-isogeny realizing that image.
    """
    m = G.modulus
    if n is not None and n != m:
        raise ValueError("the action is defined at the group's own modulus")
    prime_power = len(factor_int(m)) == 1
    reps = cyclic_subgroup_reps(m)
    index = {r: i for i, r in enumerate(reps)}
    gen_tuples = [g.tuple for g in G.generators] or [_ID]
    seen = [False] * len(reps)
    lengths = []
    for start in range(len(reps)):
        if seen[start]:
            continue
        seen[start] = True
        stack = [reps[start]]
        size = 0
        while stack:
            x, y = stack.pop()
            size += 1
            for (a, b, c, d) in gen_tuples:
                rep = _canonical_rep((a * x + b * y) % m, (c * x + d * y) % m,
                                     m, prime_power)
                i = index[rep]
                if not seen[i]:
                    seen[i] = True
                    stack.append(rep)
        lengths.append(size)
    return OrbitReport(G.order, len(reps), lengths)


def point_orbits(G, m=None):
    """Orbit lengths of G on the vectors of exact additive order m."""
    if m is not None and m != G.modulus:
        raise ValueError("the action is defined at the group's own modulus")
    m = G.modulus
    pts = [(x, y) for x in range(m) for y in range(m)
           if _vector_order(x, y, m) == m]
    index = {v: i for i, v in enumerate(pts)}
    gen_tuples = [g.tuple for g in G.generators] or [_ID]
    seen = [False] * len(pts)
    lengths = []
    for start in range(len(pts)):
        if seen[start]:
            continue
        seen[start] = True
        stack = [pts[start]]
        size = 0
        while stack:
            x, y = stack.pop()
            size += 1
            for (a, b, c, d) in gen_tuples:
                v = ((a * x + b * y) % m, (c * x + d * y) % m)
                i = index[v]
                if not seen[i]:
                    seen[i] = True
                    stack.append(v)
        lengths.append(size)
    return OrbitReport(G.order, len(pts), lengths)


# ---------------------------------------------------------------------------
# conjugacy

def _diagonalize(rows, nvars):
    """Integer row/column reduction of a small linear system to diagonal form.

    Returns (diag, V) where the input matrix A satisfies U*A*V = diag(...)
    for invertible integer matrices U, V; only V is tracked.  The solution
    set of A x = 0 mod m is then {V y : diag[i]*y[i] = 0 mod m}.
    """
    A = [list(r) for r in rows]
    nrows = len(A)
    V = [[1 if i == j else 0 for j in range(nvars)] for i in range(nvars)]
    k = 0
    while k < min(nrows, nvars):
        piv = None
        for i in range(k, nrows):
            for j in range(k, nvars):
                if A[i][j] and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        pi, pj = piv
        A[k], A[pi] = A[pi], A[k]
        for row in A:
            row[k], row[pj] = row[pj], row[k]
        for vrow in V:
            vrow[k], vrow[pj] = vrow[pj], vrow[k]
        clean = True
        for i in range(k + 1, nrows):
            if A[i][k]:
                q = A[i][k] // A[k][k]
                for j in range(k, nvars):
                    A[i][j] -= q * A[k][j]
                if A[i][k]:
                    clean = False
        for j in range(k + 1, nvars):
            if A[k][j]:
                q = A[k][j] // A[k][k]
                for i in range(nrows):
                    A[i][j] -= q * A[i][k]
                for i in range(nvars):
                    V[i][j] -= q * V[i][k]
                if A[k][j]:
                    clean = False
        if clean:
            k += 1
    diag = [A[i][i] if i < nrows else 0 for i in range(nvars)]
    return diag, V


def _solutions_mod(rows, m, nvars):
    """All x in (Z/m)^nvars with rows . x = 0 mod m, in deterministic order."""
    diag, V = _diagonalize(rows, nvars)
    choices = []
    for d in diag:
        g = math.gcd(d % m, m)
        step = m // g
        choices.append([k * step for k in range(g)])
    total = 1
    for c in choices:
        total *= len(c)
    out = []
    for count in range(total):
        y = []
        t = count
        for c in choices:
            y.append(c[t % len(c)])
            t //= len(c)
        out.append(tuple(sum(V[i][j] * y[j] for j in range(nvars)) % m
                         for i in range(nvars)))
    return out


def _intertwiners(g, t, m):
    """All X (as 4-vectors X11,X12,X21,X22) with X*g = t*X over Z/m."""
    ga, gb, gc, gd = g
    ta, tb, tc, td = t
    rows = [
        (ga - ta, gc, -tb, 0),
        (gb, gd - ta, 0, -tb),
        (-tc, 0, ga - td, gc),
        (0, -tc, gb, gd - td),
    ]
    return _solutions_mod(rows, m, 4)


_PIVOT_SCAN_CAP = 4096


def _pick_pivot(G):
    """A deterministic non-scalar element of large order, or None if all
    elements are scalar.  Any non-scalar element is a valid search pivot;
    larger order just narrows the set of candidate conjugate targets."""
    best = None
    best_order = -1
    scanned = 0
    for t in sorted(G.element_tuples):
        if t[1] == 0 and t[2] == 0 and t[0] == t[3]:
            continue
        o = G.element_order(t)
        if o > best_order:
            best, best_order = t, o
        scanned += 1
        if scanned >= _PIVOT_SCAN_CAP:
            break
    return best


def _find_conjugator(G, T):
    """First X in scan order with X G X^-1 inside T, or None.

    Complete: any conjugator must send the pivot to an element of T with the
    same determinant, trace and order, and is then an invertible solution of
    the linear system X*pivot = target*X, all of which are enumerated.
    """
    m = G.modulus
    if T.order % G.order != 0:
        return None
    pivot = _pick_pivot(G)
    if pivot is None:
        # all-scalar groups are fixed pointwise by conjugation
        return MatZmod(m, *_ID) if G.element_tuples <= T.element_tuples else None
    pdet = (pivot[0] * pivot[3] - pivot[1] * pivot[2]) % m
    ptrace = (pivot[0] + pivot[3]) % m
    porder = G.element_order(pivot)
    gens = [g.tuple for g in G.generators if g.tuple != _ID]
    for target in sorted(T.element_tuples):
        if (target[0] * target[3] - target[1] * target[2]) % m != pdet:
            continue
        if (target[0] + target[3]) % m != ptrace:
            continue
        if T.element_order(target) != porder:
            continue
        for X in _intertwiners(pivot, target, m):
            if math.gcd((X[0] * X[3] - X[1] * X[2]) % m, m) != 1:
                continue
            Xi = _inv4(X, m)
            if all(_mul4(_mul4(X, g, m), Xi, m) in T.element_tuples
                   for g in gens):
                return MatZmod(m, *X)
    return None


def is_conjugate(G1, G2):
    """A witness X with X G1 X^-1 = G2, or None.

    The conjugation-invariant fingerprint filters first; the search then
    runs over matrices intertwining a fixed high-order element of G1 with
    each invariant-matched element of G2.
    """
    if G1.modulus != G2.modulus:
        raise ValueError("modulus mismatch")
    if G1.element_tuples == G2.element_tuples:
        return MatZmod(G1.modulus, *_ID)
    if G1.fingerprint != G2.fingerprint:
        return None
    # equal orders, so containment after conjugation forces equality
    return _find_conjugator(G1, G2)


def conjugate_into(G, T):
    """A witness X with X G X^-1 a subgroup of T, or None (certified absence)."""
    if G.modulus != T.modulus:
        raise ValueError("modulus mismatch")
    if gl2_order(G.modulus) > SIZE_CAP:
        raise GroupSizeLimitError(
            "conjugacy search ambient GL2(Z/%d) exceeds the realization cap"
            % G.modulus)
    if G.element_tuples <= T.element_tuples:
        return MatZmod(G.modulus, *_ID)
    return _find_conjugator(G, T)


# ---------------------------------------------------------------------------
# JSON interchange (shared with the pipeline config)

def group_from_json(obj):
    """Build a group from {"modulus": m, "generators": [[[a,b],[c,d]], ...]}."""
    m = obj["modulus"]
    gens = [MatZmod.from_rows(m, rows) for rows in obj["generators"]]
    return group_closure(gens, m)


def group_to_json(G):
    return {"modulus": G.modulus,
            "generators": [g.rows for g in G.generators]}
