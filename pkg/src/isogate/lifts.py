"""Enumeration of subgroup lifts from GL2(Z/pZ) to GL2(Z/p^2 Z).

Given a realized group G mod p, this module lists, up to GL2(Z/p^2)-conjugacy,
all subgroups H of GL2(Z/p^2) whose mod-p reduction is exactly G, and
classifies each by a three-way decision ladder (missing scalars / conjugate
into the split-Cartan normalizer / orbit bound).

The enumeration walks the kernel V of the reduction map, the elementary
abelian group {I + pA : A in M2(F_p)} of size p^4, on which conjugation acts
through the mod-p matrices.  For every target used here the order of G is
coprime to p, which makes the group extension theory trivial: a complement S
of V in the full preimage exists and is unique up to conjugacy, and can be
written down directly by averaging the multiplication defect of an arbitrary
set-theoretic lift over G.  Each lift class is then the product set S * K~
for a G-stable subspace K of V, and distinct stable subspaces give the
complete, possibly redundant, list of classes (redundancy removed by
conjugacy tests).  A brute-force bottom-up subgroup enumeration provides an
independent oracle for the mod-9 case.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import combinations, product

from .exact import UnsupportedModulusError
from .gl2 import (
    GroupSizeLimitError,
    MatrixGroup,
    MatZmod,
    _inv4,
    _mul4,
    cyclic_subgroup_orbits,
    is_conjugate,
    conjugate_into,
    scalar_count,
    standard_group,
)

_ID = (1, 0, 0, 1)

LIFT_PRIMES = (3, 5, 7)


# ---------------------------------------------------------------------------
# the reduction kernel V = {I + pA} and its subspaces

class KernelSpace:
    """A subspace of the reduction kernel V = {I + pA : A in M2(F_p)}.

    Vectors are matrices A flattened to (a, b, c, d) over F_p; the basis is
    kept in reduced row-echelon form, so equal subspaces compare equal.
    The full space has dimension 4 and p^4 elements.
    """

    __slots__ = ("p", "basis")

    def __init__(self, p, basis):
        self.p = p
        self.basis = tuple(tuple(v) for v in basis)

    @classmethod
    def full(cls, p):
        return cls(p, ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)))

    @classmethod
    def zero(cls, p):
        return cls(p, ())

    @property
    def dimension(self):
        return len(self.basis)

    def size(self):
        return self.p ** len(self.basis)

    def vectors(self):
        """All p^dim vectors of the subspace, deterministically ordered."""
        p = self.p
        out = []
        for coeffs in product(range(p), repeat=len(self.basis)):
            v = [0, 0, 0, 0]
            for t, b in zip(coeffs, self.basis):
                for i in range(4):
                    v[i] = (v[i] + t * b[i]) % p
            out.append(tuple(v))
        return out

    def reduce_vector(self, v):
        """Residue of v after elimination by the RREF basis."""
        p = self.p
        v = list(x % p for x in v)
        for b in self.basis:
            lead = next(i for i, x in enumerate(b) if x)
            if v[lead]:
                t = v[lead]  # basis rows have unit leading entry
                for i in range(4):
                    v[i] = (v[i] - t * b[i]) % p
        return tuple(v)

    def contains(self, v):
        return self.reduce_vector(v) == (0, 0, 0, 0)

    def kernel_elements(self, m2):
        """The subgroup K~ = {I + pA : A in K} as tuples mod p^2."""
        p = self.p
        assert m2 == p * p
        out = []
        for (a, b, c, d) in self.vectors():
            out.append(((1 + p * a) % m2, (p * b) % m2,
                        (p * c) % m2, (1 + p * d) % m2))
        return out

    def __eq__(self, other):
        if isinstance(other, KernelSpace):
            return self.p == other.p and self.basis == other.basis
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.basis))

    def __repr__(self):
        return "KernelSpace(p=%d, dim %d)" % (self.p, self.dimension)


def _rref(vectors, p):
    """Reduced row-echelon basis of the span of the given 4-vectors."""
    rows = [list(x % p for x in v) for v in vectors]
    basis = []
    for col in range(4):
        piv = None
        for r in rows:
            if r[col] % p:
                piv = r
                break
        if piv is None:
            continue
        rows.remove(piv)
        inv = pow(piv[col], -1, p)
        piv = [(x * inv) % p for x in piv]
        rows = [[(r[i] - r[col] * piv[i]) % p for i in range(4)] for r in rows]
        basis = [[(b[i] - b[col] * piv[i]) % p for i in range(4)] for b in basis]
        basis.append(piv)
    basis.sort(key=lambda b: next(i for i, x in enumerate(b) if x))
    return tuple(tuple(b) for b in basis)


@lru_cache(maxsize=None)
def _all_subspaces(p):
    """Every subspace of F_p^4 as a KernelSpace, sorted by (dim, basis).

    Enumerated directly as reduced row-echelon forms: one per subspace.
    """
    spaces = [KernelSpace.zero(p)]
    for k in range(1, 5):
        for pivots in combinations(range(4), k):
            free = []
            for i in range(k):
                for j in range(pivots[i] + 1, 4):
                    if j not in pivots:
                        free.append((i, j))
            for fill in product(range(p), repeat=len(free)):
                rows = [[0] * 4 for _ in range(k)]
                for i in range(k):
                    rows[i][pivots[i]] = 1
                for (pos, val) in zip(free, fill):
                    rows[pos[0]][pos[1]] = val
                spaces.append(KernelSpace(p, tuple(tuple(r) for r in rows)))
    spaces.sort(key=lambda s: (s.dimension, s.basis))
    return tuple(spaces)


def _conj_vector(g, v, p):
    """Conjugation action on kernel coordinates: A -> g A g^-1 over F_p."""
    gi = _inv4(g, p)
    w = _mul4(_mul4(g, tuple(v), p), gi, p)
    return w


def stable_subspaces(G, p):
    """All subspaces of the reduction kernel invariant under conjugation by G.

    Always contains the zero space and the full space.  Enumerated by
    filtering the complete subspace list of F_p^4 (for p = 3 that list has
    212 entries) against the generators of G.
    """
    if G.modulus != p:
        raise ValueError("G must be realized at modulus p")
    gens = [g.tuple for g in G.generators if g.tuple != _ID]
    out = []
    for K in _all_subspaces(p):
        ok = True
        for g in gens:
            for b in K.basis:
                if not K.contains(_conj_vector(g, b, p)):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(K)
    return out


# ---------------------------------------------------------------------------
# the canonical complement (splitting) for |G| coprime to p

def _splitting_section(G, p):
    """A homomorphic section psi: G -> GL2(Z/p^2) of the reduction map.

    Requires gcd(|G|, p) = 1.  Start with the entrywise lift phi0 and measure
    its multiplication defect phi0(g) phi0(h) = phi0(gh) (I + p c(g,h));
    averaging beta(h) = -(1/|G|) * sum_x c(x, h) corrects phi0 to the
    homomorphism psi(h) = phi0(h)(I + p beta(h)).  The correctness of the
    formula is asserted on every generator pair at runtime.
    """
    n = G.order
    if math.gcd(n, p) != 1:
        raise UnsupportedModulusError(
            "lift enumeration needs |G| coprime to p, got |G| = %d, p = %d"
            % (n, p))
    m2 = p * p
    elems = sorted(G.element_tuples)
    # entrywise lift and multiplication table mod p
    phi0 = {g: g for g in elems}  # entries already in [0, p) represent mod p^2
    betas = {g: [0, 0, 0, 0] for g in elems}
    for x in elems:
        for h in elems:
            xh = _mul4(x, h, p)
            t = _mul4(_inv4(phi0[xh], m2), _mul4(phi0[x], phi0[h], m2), m2)
            # t = I + p*c with c the defect cocycle
            bh = betas[h]
            bh[0] += (t[0] - 1) // p
            bh[1] += t[1] // p
            bh[2] += t[2] // p
            bh[3] += (t[3] - 1) // p
    ninv = pow(n % p, -1, p)
    psi = {}
    for g in elems:
        beta = [(-ninv * x) % p for x in betas[g]]
        lift = phi0[g]
        corr = ((1 + p * beta[0]) % m2, (p * beta[1]) % m2,
                (p * beta[2]) % m2, (1 + p * beta[3]) % m2)
        psi[g] = _mul4(lift, corr, m2)
    for g in (h.tuple for h in G.generators):
        for h in elems:
            if _mul4(psi[g], psi[h], m2) != psi[_mul4(g, h, p)]:
                raise RuntimeError("splitting construction failed to verify")
    return psi


# ---------------------------------------------------------------------------
# lift classes

class LiftOutcome:
    """Result of the three-way classification of a lift class."""

    __slots__ = ("kind", "orbits", "witness")

    def __init__(self, kind, orbits=None, witness=None):
        if kind not in ("ScalarFail", "ConjugateIntoSplitNormalizer",
                        "OrbitBound", "Unclassified"):
            raise ValueError("unknown outcome kind %r" % (kind,))
        self.kind = kind
        self.orbits = None if orbits is None else tuple(sorted(orbits))
        self.witness = witness

    def __eq__(self, other):
        if isinstance(other, LiftOutcome):
            return self.kind == other.kind and self.orbits == other.orbits
        return NotImplemented

    def __hash__(self):
        return hash((self.kind, self.orbits))

    def __repr__(self):
        if self.kind == "OrbitBound":
            return "OrbitBound(%s)" % (list(self.orbits),)
        return self.kind


class LiftClass:
    """One conjugacy class of lifts: a representative subgroup mod p^2,
    the dimension of its intersection with the reduction kernel, and the
    classification outcome (set by classify_lift)."""

    __slots__ = ("representative", "kernel_dim", "outcome")

    def __init__(self, representative, kernel_dim, outcome=None):
        self.representative = representative
        self.kernel_dim = kernel_dim
        self.outcome = outcome if outcome is not None else LiftOutcome("Unclassified")

    @property
    def order(self):
        return self.representative.order

    def __repr__(self):
        return "LiftClass(order %d, kernel dim %d, %r)" % (
            self.order, self.kernel_dim, self.outcome)


def _class_key(H):
    """Conjugation-invariant bucket key, cheap enough to compute always."""
    return (H.order,
            tuple(H.scalar_tuples()),
            cyclic_subgroup_orbits(H).lengths)


def lift_subgroups(G, p):
    """All subgroups of GL2(Z/p^2) reducing onto G, up to conjugacy.

    Requires p in {3, 5, 7} and |G| coprime to p.  For each G-stable
    subspace K of the reduction kernel there is exactly one class with
    kernel intersection K (the extension theory is trivial when |G| is
    coprime to p), realized as the product of the canonical complement
    with K~; classes from different K that happen to be conjugate are
    merged by conjugacy tests, bucketed by invariants.
    """
    if p not in LIFT_PRIMES:
        raise ValueError("lift enumeration is provided for p in %s" % (LIFT_PRIMES,))
    if G.modulus != p:
        raise ValueError("G must be realized at modulus p")
    m2 = p * p
    psi = _splitting_section(G, p)
    section = sorted(psi.values())
    gen_images = [MatZmod(m2, *psi[g.tuple]) for g in G.generators
                  if g.tuple != _ID]
    candidates = []
    for K in stable_subspaces(G, p):
        kelems = K.kernel_elements(m2)
        elems = set()
        for s in section:
            for k in kelems:
                elems.add(_mul4(s, k, m2))
        gens = list(gen_images)
        gens += [MatZmod(m2, (1 + p * b[0]) % m2, (p * b[1]) % m2,
                         (p * b[2]) % m2, (1 + p * b[3]) % m2)
                 for b in K.basis]
        H = MatrixGroup(m2, gens, elems)
        assert H.order == G.order * K.size()
        candidates.append((K, H))
    # deduplicate: bucket by cheap conjugation invariants, then prove
    kept = []
    for K, H in candidates:
        key = _class_key(H)
        duplicate = False
        for (okey, _, oH) in kept:
            if okey == key and is_conjugate(oH, H) is not None:
                duplicate = True
                break
        if not duplicate:
            kept.append((key, K, H))
    kept.sort(key=lambda t: (t[2].order, t[1].dimension, t[0], t[1].basis))
    return [LiftClass(H, K.dimension) for (_, K, H) in kept]


def classify_lift(H, p):
    """Three-way classification of a lifted subgroup mod p^2.

    Ladder: (1) fewer than p scalars congruent to 1 mod p -> ScalarFail;
    (2) conjugate into the split-Cartan normalizer mod p^2 -> that outcome;
    (3) otherwise an orbit bound, carrying the cyclic-subgroup orbit lengths.
    """
    rep = H.representative if isinstance(H, LiftClass) else H
    if scalar_count(rep, p) < p:
        return LiftOutcome("ScalarFail")
    w = conjugate_into(rep, standard_group("split_cartan_normalizer", p * p))
    if w is not None:
        return LiftOutcome("ConjugateIntoSplitNormalizer", witness=w)
    return LiftOutcome("OrbitBound", orbits=cyclic_subgroup_orbits(rep).lengths)


# ---------------------------------------------------------------------------
# independent brute-force oracle

BRUTE_CAP = 5000


def brute_force_subgroups(A, cap=BRUTE_CAP):
    """All subgroups of the realized group A, up to GL2(Z/m)-conjugacy.

    Exhaustive and independent of the lift machinery: enumerate cyclic
    subgroups, then close the collection under pairwise joins until a
    fixpoint, and deduplicate by conjugacy at the end.  Multiplication runs
    over an index table of A's elements, so joins cost array lookups.
    """
    if A.order > cap:
        raise GroupSizeLimitError(
            "brute force is capped at %d elements, got %d" % (cap, A.order))
    m = A.modulus
    elems = sorted(A.element_tuples)
    index = {t: i for i, t in enumerate(elems)}
    id_idx = index[_ID]
    # right-multiplication tables, one per element actually used as generator
    tables = {}

    def table(gi):
        t = tables.get(gi)
        if t is None:
            g = elems[gi]
            t = [index[_mul4(x, g, m)] for x in elems]
            tables[gi] = t
        return t

    def close(gen_indices):
        seen = {id_idx}
        frontier = [id_idx]
        tabs = [table(gi) for gi in gen_indices]
        while frontier:
            new = []
            for i in frontier:
                for t in tabs:
                    j = t[i]
                    if j not in seen:
                        seen.add(j)
                        new.append(j)
            frontier = new
        return frozenset(seen)

    cyclics = {}
    for i in range(len(elems)):
        fs = close((i,))
        if fs not in cyclics:
            cyclics[fs] = i
    cyclic_list = sorted(cyclics.items(), key=lambda kv: (len(kv[0]), kv[1]))
    subgroups = {frozenset({id_idx}): ()}
    frontier = []
    for fs, gi in cyclic_list:
        if fs not in subgroups:
            subgroups[fs] = (gi,)
            frontier.append((fs, (gi,)))
    while frontier:
        new = []
        for fs, gens in frontier:
            for cfs, cgi in cyclic_list:
                if cgi in fs:
                    continue
                joined = close(gens + (cgi,))
                if joined not in subgroups:
                    jgens = gens + (cgi,)
                    subgroups[joined] = jgens
                    new.append((joined, jgens))
        frontier = new
    # wrap and deduplicate by conjugacy
    groups = []
    for fs, gens in sorted(subgroups.items(),
                           key=lambda kv: (len(kv[0]), sorted(elems[i] for i in kv[0]))):
        gmats = [MatZmod(m, *elems[i]) for i in gens]
        groups.append(MatrixGroup(m, gmats, {elems[i] for i in fs}))
    kept = []
    for H in groups:
        key = _class_key(H)
        if not any(okey == key and is_conjugate(oH, H) is not None
                   for okey, oH in kept):
            kept.append((key, H))
    return [H for _, H in kept]
