"""The verification registry: every claim of the degree classification.

The toolkit's purpose is an auditable ledger for the classification of
cyclic-isogeny degrees available over quadratic number fields to non-CM
elliptic curves with rational j-invariant.  The argument decomposes into
nine stages, and each stage contributes registry rows of three sorts:

* recomputation rows rebuild a claimed object from scratch with the exact
  arithmetic modules and compare it against a frozen declarative
  expectation -- a mismatch is reported as a diff, never patched over;
* consequence rows re-derive the small arithmetic closures combining
  earlier stages (which prime-power products survive the stage bounds);
* literature rows record published inputs whose verification is beyond
  desk scale (quadratic-point tables of ten auxiliary modular curves, a
  Mordell-Weil rank, one Chabauty computation), each carrying its claim
  and citation so the dependency ledger stays complete.

Row ids are stable "step{n}.{case}.{sub}" strings so that reports can be
diffed across runs and releases.
"""

from __future__ import annotations

import hashlib
from fractions import Fraction

from .exact import parse_rational
from .gl2 import (
    conjugate_into,
    cyclic_subgroup_orbits,
    index_two_subgroups_without_minus_one,
    standard_group,
)
from .jmatch import (
    builtin_family,
    match_constant,
    match_families,
    verify_match_points,
)
from .lifts import classify_lift, lift_subgroups
from .modpoly import isogeny_degree_witness, psi
from .x091 import (
    MODEL_TEXT,
    VARIABLE_COUNT,
    atkin_lehner,
    cm_point,
    cusps,
    involution_consistency,
    jacobian_order,
    model,
    quotient_curve,
    torsion_multiple,
    verify_model_point,
)

CHECK_KINDS = ("jmatch", "lift", "orbit", "modpoly", "curve", "literature")

STEP_PREFIXES = tuple("step%d" % n for n in range(1, 10))


class CheckCase:
    """One registry row: an executable claim with a frozen expectation.

    `run` is the executor `f(case, config) -> payload dict`; literature
    rows have no executor and are resolved by the runner from `inputs`
    and `citation` alone.  `requires` lists configuration resources as
    ("group", name) / ("modpoly", level) pairs; a missing resource turns
    the row Indeterminate instead of executing it.
    """

    __slots__ = ("id", "kind", "inputs", "expectation", "citation",
                 "requires", "run")

    def __init__(self, id, kind, inputs=None, expectation=None,
                 citation=None, requires=(), run=None):
        if kind not in CHECK_KINDS:
            raise ValueError("unknown check kind %r" % (kind,))
        if kind == "literature":
            if citation is None:
                raise ValueError("literature rows must carry a citation")
        elif run is None:
            raise ValueError("computable rows must carry an executor")
        self.id = id
        self.kind = kind
        self.inputs = dict(inputs or {})
        self.expectation = dict(expectation or {})
        self.citation = citation
        self.requires = tuple(requires)
        self.run = run

    def __repr__(self):
        return "CheckCase(%s, %s)" % (self.id, self.kind)


def plain(value):
    """Recursively coerce a value into JSON-safe plain data.

    Fractions become "num/den" strings, tuples become lists, booleans and
    ints pass through, and anything else falls back to str().
    """
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        return value
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    return str(value)


def _covers(want, got):
    """Whether the computed value satisfies the expected one.

    Dicts match when every expected key matches recursively (computed
    values may carry extra informational keys); lists match elementwise
    with equal length; scalars compare on their JSON-plain forms, so
    tuples/lists and Fractions/strings agree.
    """
    if isinstance(want, dict):
        if not isinstance(got, dict):
            return False
        return all(key in got and _covers(value, got[key])
                   for key, value in want.items())
    if isinstance(want, (list, tuple)):
        if not isinstance(got, (list, tuple)) or len(want) != len(got):
            return False
        return all(_covers(w, g) for w, g in zip(want, got))
    return plain(want) == plain(got)


def compare_payload(expectation, computed):
    """Keys of the expectation that the computed payload misses.

    Returns {} when everything matches; otherwise a dict mapping each
    mismatched key to {"expected": ..., "computed": ...} in JSON-plain
    form.
    """
    diff = {}
    for key, want in expectation.items():
        got = computed.get(key, "<missing expected key>")
        if not _covers(want, got):
            diff[key] = {"expected": plain(want), "computed": plain(got)}
    return diff


# ---------------------------------------------------------------------------
# executors


def run_constant_matches(case, config):
    """Match one family against each constant j-invariant of the row."""
    fam = builtin_family(case.inputs["family"])
    matches = []
    for raw in case.inputs["constants"]:
        out = match_constant(fam, raw)
        matches.append({
            "constant": str(out.constant),
            "elimination_degree": out.elimination.degree,
            "elimination": [str(c) for c in out.elimination.coeffs],
            "verdict": out.verdict.kind,
            "verdict_values": [str(v) for v in out.verdict.values],
            "low_degree_factors": [
                {"degree": f.poly.degree,
                 "multiplicity": f.multiplicity,
                 "field_d": f.field_d}
                for f in out.factors],
        })
    return {"family": fam.name, "matches": matches}


def run_family_curve(case, config):
    """Build the parameter-matching curve of two families; verify points."""
    fam_t = builtin_family(case.inputs["family_t"])
    fam_s = builtin_family(case.inputs["family_s"])
    curve = match_families(fam_t, fam_s)
    payload = {
        "family_t": fam_t.name,
        "family_s": fam_s.name,
        "degree_t": curve.degree_t,
        "degree_s": curve.degree_s,
        "total_degree": curve.total_degree,
        "term_count": curve.term_count,
    }
    points = case.inputs.get("points")
    if points is not None:
        reports = verify_match_points(curve, [tuple(pt) for pt in points],
                                      fam_s)
        payload["point_count"] = len(reports)
        payload["points_on_curve"] = sum(1 for r in reports if r.on_curve)
        payload["affine_j_values"] = sorted(
            {str(r.j_value) for r in reports if r.j_value is not None})
    return payload


def _base_group(case, config, modulus):
    name = case.inputs["base_group"]
    if name == "split_cartan_normalizer":
        return standard_group(name, modulus)
    return config.groups[name]


def run_lift_classification(case, config):
    """Enumerate lift classes of a base group and classify each one."""
    p = case.inputs["prime"]
    base = _base_group(case, config, p)
    classes = lift_subgroups(base, p)
    tally = {"ScalarFail": 0, "ConjugateIntoSplitNormalizer": 0,
             "OrbitBound": 0}
    orbit_multisets = []
    sums_ok = True
    for cls in classes:
        outcome = classify_lift(cls.representative, p)
        cls.outcome = outcome
        tally[outcome.kind] += 1
        if outcome.kind == "OrbitBound":
            orbit_multisets.append(list(outcome.orbits))
            if sum(outcome.orbits) != psi(p * p):
                sums_ok = False
    return {
        "base_order": base.order,
        "class_count": len(classes),
        "orders": sorted(cls.order for cls in classes),
        "kernel_dims": sorted(cls.kernel_dim for cls in classes),
        "outcomes": tally,
        "orbit_bound_multisets": sorted(orbit_multisets),
        "orbit_sums_equal_cyclic_count": sums_ok,
    }


def run_mod9_containment(case, config):
    """Classify the mod-9 lift classes by containment in the normalizer.

    A class conjugate into the split-Cartan normalizer mod 9 keeps the
    short orbits; every class outside it has all cyclic-subgroup orbits
    of length 6, too long for a quadratic field of definition.
    """
    base = standard_group("split_cartan_normalizer", 3)
    classes = lift_subgroups(base, 3)
    target = standard_group("split_cartan_normalizer", 9)
    inside = outside = 0
    outside_all_six = True
    sums = set()
    for cls in classes:
        lengths = cyclic_subgroup_orbits(cls.representative).lengths
        sums.add(sum(lengths))
        if conjugate_into(cls.representative, target) is not None:
            inside += 1
        else:
            outside += 1
            if set(lengths) != {6}:
                outside_all_six = False
    return {
        "class_count": len(classes),
        "orders": sorted(cls.order for cls in classes),
        "inside_normalizer": inside,
        "outside_normalizer": outside,
        "outside_all_orbits_length_6": outside_all_six,
        "orbit_sums": sorted(sums),
    }


def run_level27_orbits(case, config):
    """Orbit lengths on cyclic order-27 subgroups for the supplied group.

    The group arrives through the configuration (it is an explicit list
    of generators, not a standard shape).  Both the group itself and its
    index-2 subgroups without -I are measured; short orbits certify that
    a cyclic 27-isogeny can exist over a quadratic field.
    """
    group = config.groups[case.inputs["group"]]
    subs = index_two_subgroups_without_minus_one(group)
    return {
        "group_order": group.order,
        "group_orbits": sorted(cyclic_subgroup_orbits(group).lengths),
        "index2_without_minus_one_count": len(subs),
        "index2_orders": sorted(sub.order for sub in subs),
        "index2_orbits": sorted(
            sorted(cyclic_subgroup_orbits(sub).lengths) for sub in subs),
        "cyclic_subgroup_count": psi(group.modulus),
    }


def run_degree_closure(case, config):
    """Products of two prime powers surviving the stage bounds.

    Candidates are p^a * q^b with both exponents at least 1 and at most
    the per-prime bounds established earlier; multiples of the separately
    excluded levels are then removed.
    """
    (p, q) = case.inputs["primes"]
    (amax, bmax) = case.inputs["exponent_bounds"]
    excluded = case.inputs["excluded_divisors"]
    candidates = sorted(p ** a * q ** b
                        for a in range(1, amax + 1)
                        for b in range(1, bmax + 1))
    allowed = [n for n in candidates
               if not any(n % d == 0 for d in excluded)]
    return {"candidates": candidates, "excluded_divisors": list(excluded),
            "allowed": allowed}


def run_modpoly_certificate(case, config):
    """Factor degrees of the classical modular polynomial at a fixed j."""
    level = case.inputs["level"]
    phi = config.modular_polynomial(level)
    j = parse_rational(case.inputs["j"])
    cap = config.prime_caps.get("degree_certificate_primes", 25)
    witness = isogeny_degree_witness(phi, j, prime_cap=cap,
                                     full_factorization=True)
    return {
        "level": witness.level,
        "j": str(witness.j_value),
        "certified": witness.certified,
        "factor_degrees": list(witness.factor_degrees),
        "min_degree": witness.min_degree,
        "degree_sum": sum(witness.factor_degrees),
        "cyclic_subgroup_count": psi(level),
        "full_factorization_used": witness.full_factorization_used,
        "primes_used": list(witness.primes_used),
    }


def run_model_shape(case, config):
    """Shape and checksum of the canonical level-91 quadric model."""
    quadrics = model().quadrics
    return {
        "quadric_count": len(quadrics),
        "variable_count": VARIABLE_COUNT,
        "monomial_count": sum(len(q) for q in quadrics),
        "text_sha256": hashlib.sha256(MODEL_TEXT.encode()).hexdigest(),
    }


def run_model_points(case, config):
    """All known special points satisfy every quadric exactly."""
    M = model()
    cusp_reports = [verify_model_point(M, P) for P in cusps()]
    cm_points = (cm_point(), cm_point(conjugate=True))
    cm_reports = [verify_model_point(M, P) for P in cm_points]
    return {
        "cusp_count": len(cusp_reports),
        "cusps_on_model": sum(1 for r in cusp_reports if r.on_model),
        "cusps_rational": all(P.field_d is None for P in cusps()),
        "cm_points_on_model": sum(1 for r in cm_reports if r.on_model),
        "cm_field_d": cm_points[0].field_d,
        "cm_points_conjugate": cm_points[0].conjugate() == cm_points[1],
    }


def run_involution(case, config):
    """Sign pattern and point action of the canonical involution."""
    M = model()
    signs = involution_consistency(M)
    cusp_list = list(cusps())
    images = [atkin_lehner(P) for P in cusp_list]
    permutation = [cusp_list.index(img) for img in images]
    cm_pair = (cm_point(), cm_point(conjugate=True))
    return {
        "sign_pattern": list(signs),
        "cusp_permutation": permutation,
        "cusp_set_preserved": sorted(permutation) == [0, 1, 2, 3],
        "cm_points_fixed": all(atkin_lehner(P) == P for P in cm_pair),
    }


def run_zeta_table(case, config):
    """Point counts and Jacobian orders of the quotient curve."""
    C = quotient_curve()
    table = {}
    weil_ok = True
    for p in case.inputs["primes"]:
        z = jacobian_order(C, p)
        table[str(p)] = {"n1": z.n1, "n2": z.n2, "c1": z.c1, "c2": z.c2,
                         "jacobian_order": z.jacobian_order}
        if z.c1 * z.c1 > 16 * p:
            weil_ok = False
    return {"table": table, "weil_bound_holds": weil_ok}


def run_torsion_gcds(case, config):
    """Torsion multiples of the quotient Jacobian from reduction gcds."""
    C = quotient_curve()
    out = {}
    for primes in case.inputs["prime_sets"]:
        key = "gcd_" + "_".join(str(p) for p in primes)
        out[key] = torsion_multiple(C, primes)
    return out


# ---------------------------------------------------------------------------
# registry rows

# the rational j-invariants of non-CM curves carrying a rational q-isogeny,
# for the three prime levels whose eliminations run against constants
_J_CONSTANTS = {
    37: (Fraction(-162677523113838677), Fraction(-9317)),
    17: (Fraction(-297756989, 2), Fraction(-882216989, 131072)),
    11: (Fraction(-24729001), Fraction(-121)),
}

_PRIME_FAMILY = {7: "j7", 5: "j5", 3: "j3cube", 2: "j2disc"}

_ELIMINATION_DEGREE = {"j7": 8, "j5": 6, "j3cube": 3, "j2disc": 2}

# the imaginary quadratic field cut out by the p = 2 discriminant
# elimination at each constant pair (identical within a level)
_DISC_FIELD_D = {37: -5, 17: -10, 11: -1}

_BOX = ("Box, 'Quadratic points on modular curves with infinite "
        "Mordell-Weil group' (Math. Comp. 90, 2021)")
_BN = ("Bruin and Najman, 'Hyperelliptic modular curves X0(n) and "
       "isogenies of elliptic curves over quadratic fields' "
       "(LMS J. Comput. Math. 18, 2015)")
_OS = ("Ozman and Siksek, 'Quadratic points on modular curves' "
       "(Math. Comp. 88, 2019)")


def _constant_rows():
    rows = []
    for q in sorted(_J_CONSTANTS):
        constants = _J_CONSTANTS[q]
        for p in (2, 3, 5, 7):
            family = _PRIME_FAMILY[p]
            factors = []
            if p == 2:
                factors = [{"degree": 2, "multiplicity": 1,
                            "field_d": _DISC_FIELD_D[q]}]
            expectation = {"matches": [
                {"constant": str(c),
                 "elimination_degree": _ELIMINATION_DEGREE[family],
                 "verdict": "NoDegreeLE2Root",
                 "low_degree_factors": factors}
                for c in constants]}
            rows.append(CheckCase(
                "step1.q%d.p%d" % (q, p), "jmatch",
                inputs={"family": family,
                        "constants": [str(c) for c in constants]},
                expectation=expectation,
                run=run_constant_matches))
    return rows


def _literature(id_, claim, citation):
    return CheckCase(id_, "literature", inputs={"claim": claim},
                     citation=citation)


_DEG14_POINTS = ((2, -256, 1), (-1, -16, 1), (0, -16, 1), (0, 1, 0),
                 (1, 0, 0))

_ZETA_PRIMES = (3, 5, 11, 17, 19, 23, 29, 31)

_ZETA_EXPECTED = {
    "3": {"n1": 6, "n2": 18, "c1": 2, "c2": 6, "jacobian_order": 24},
    "5": {"n1": 12, "n2": 28, "c1": 6, "c2": 19, "jacobian_order": 81},
    "11": {"n1": 18, "n2": 130, "c1": 6, "c2": 22, "jacobian_order": 216},
    "17": {"n1": 20, "n2": 306, "c1": 2, "c2": 10, "jacobian_order": 336},
    "19": {"n1": 22, "n2": 364, "c1": 2, "c2": 3, "jacobian_order": 405},
    "23": {"n1": 18, "n2": 604, "c1": -6, "c2": 55, "jacobian_order": 441},
    "29": {"n1": 44, "n2": 852, "c1": 14, "c2": 103, "jacobian_order": 1365},
    "31": {"n1": 30, "n2": 1052, "c1": -2, "c2": 47, "jacobian_order": 945},
}


def _distinct_prime_rows():
    """Stage 1: no degree p*q beyond the surviving products.

    For q in {11, 17, 37} the finitely many rational j-invariants with a
    rational q-isogeny feed constant matches against the p-parameter
    families.  For q = 13 the j-line of level 13 is a rational curve, so
    the p in {2, 3} matches become explicit plane curves; p = 5 and the
    level-65 and level-35 products rest on quadratic-point literature,
    and p = 7 (level 91) has its own stage.
    """
    rows = _constant_rows()
    rows.append(CheckCase(
        "step1.q13.p3", "curve",
        inputs={"family_t": "j3cube", "family_s": "j13"},
        expectation={"degree_t": 3, "degree_s": 14, "term_count": 16},
        run=run_family_curve))
    rows.append(CheckCase(
        "step1.q13.p2", "curve",
        inputs={"family_t": "j13", "family_s": "j2disc"},
        expectation={"degree_t": 14, "degree_s": 2, "term_count": 16},
        run=run_family_curve))
    rows.append(_literature(
        "step1.x065.literature",
        "Every quadratic point on the level-65 modular curve is the "
        "pullback of a rational point of its canonical-involution "
        "quotient, and the curve has no non-cuspidal rational points; "
        "pulled-back points pair each curve with its Galois conjugate, "
        "which forces CM whenever the j-invariant is rational.  Degree "
        "65 is therefore impossible for non-CM rational j.",
        _BOX + ", Section 4"))
    rows.append(_literature(
        "step1.x035.literature",
        "The only exceptional quadratic point of the level-35 modular "
        "curve is CM, the curve has no non-cuspidal rational points, and "
        "non-exceptional quadratic points are swapped with their Galois "
        "conjugates by the canonical involution; a rational j would make "
        "the underlying curve 35-isogenous to itself, hence CM.  Degree "
        "35 is therefore impossible for non-CM rational j.",
        _BN + ", Table 9"))
    return rows


def _stage2_rows():
    """Stage 2: degree 49 needs a field of degree at least 3."""
    return [
        CheckCase(
            "step2.p7.lifts", "lift",
            inputs={"prime": 7, "base_group": "split_cartan_normalizer"},
            expectation={
                "class_count": 8,
                "orders": [72, 504, 504, 3528, 3528, 24696, 24696, 172872],
                "kernel_dims": [0, 1, 1, 2, 2, 3, 3, 4],
                "outcomes": {"ScalarFail": 4,
                             "ConjugateIntoSplitNormalizer": 2,
                             "OrbitBound": 2},
                "orbit_bound_multisets": [[14, 42], [14, 42]],
                "orbit_sums_equal_cyclic_count": True,
            },
            run=run_lift_classification),
        CheckCase(
            "step2.p7.modpoly", "modpoly",
            inputs={"level": 49, "j": "2268945/128"},
            expectation={
                "certified": True,
                "factor_degrees": [14, 14, 21],
                "min_degree": 14,
            },
            requires=(("modpoly", 49),),
            run=run_modpoly_certificate),
    ]


def _stage3_rows():
    """Stage 3: 3-power and 5-power degrees stop at 9 and 25, except 27."""
    return [
        CheckCase(
            "step3.p3.mod9", "lift",
            inputs={"prime": 3, "base_group": "split_cartan_normalizer"},
            expectation={
                "class_count": 12,
                "orders": [8, 24, 24, 24, 72, 72, 72, 72, 216, 216, 216,
                           648],
                "inside_normalizer": 4,
                "outside_normalizer": 8,
                "outside_all_orbits_length_6": True,
                "orbit_sums": [12],
            },
            run=run_mod9_containment),
        CheckCase(
            "step3.p5.ns25", "lift",
            inputs={"prime": 5, "base_group": "split_cartan_normalizer"},
            expectation={
                "class_count": 8,
                "orders": [32, 160, 160, 800, 800, 4000, 4000, 20000],
                "kernel_dims": [0, 1, 1, 2, 2, 3, 3, 4],
                "outcomes": {"ScalarFail": 4,
                             "ConjugateIntoSplitNormalizer": 2,
                             "OrbitBound": 2},
                "orbit_bound_multisets": [[10, 20], [10, 20]],
                "orbit_sums_equal_cyclic_count": True,
            },
            run=run_lift_classification),
        CheckCase(
            "step3.p5.g3mod25", "lift",
            inputs={"prime": 5, "base_group": "mod5_split_index2"},
            expectation={
                "base_order": 16,
                "class_count": 12,
                "orders": [16, 80, 80, 80, 400, 400, 400, 400, 2000, 2000,
                           2000, 10000],
                "kernel_dims": [0, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3, 4],
                "outcomes": {"ScalarFail": 6,
                             "ConjugateIntoSplitNormalizer": 2,
                             "OrbitBound": 4},
                "orbit_bound_multisets": [[10, 20], [10, 20], [10, 20],
                                          [10, 20]],
                "orbit_sums_equal_cyclic_count": True,
            },
            requires=(("group", "mod5_split_index2"),),
            run=run_lift_classification),
        CheckCase(
            "step3.level27.orbits", "orbit",
            inputs={"group": "mod27_exceptional"},
            expectation={
                "group_order": 8748,
                "group_orbits": [3, 6, 27],
                "index2_without_minus_one_count": 2,
                "index2_orders": [4374, 4374],
                "index2_orbits": [[3, 6, 27], [3, 6, 27]],
                "cyclic_subgroup_count": 36,
            },
            requires=(("group", "mod27_exceptional"),),
            run=run_level27_orbits),
    ]


def _stage4_rows():
    """Stage 4: 2-power degrees stop at 32."""
    return [_literature(
        "step4.mod32.literature",
        "For every non-CM elliptic curve over the rationals the 2-adic "
        "Galois image is already determined modulo 32.  Combined with the "
        "field-degree doubling per extra 2-power level, a cyclic 2-power "
        "isogeny over a quadratic field has degree at most 32.",
        "Rouse and Zureick-Brown, 'Elliptic curves over Q and 2-adic "
        "images of Galois' (Res. Number Theory 1, 2015), Corollary 1.3")]


def _stage5_rows():
    """Stage 5: products of 2-power and 3-power degrees."""
    return [
        CheckCase(
            "step5.composite23.closure", "orbit",
            inputs={"primes": [2, 3], "exponent_bounds": [5, 2],
                    "excluded_divisors": [48, 72]},
            expectation={"allowed": [6, 12, 18, 24, 36]},
            run=run_degree_closure),
        _literature(
            "step5.x072.literature",
            "The level-72 modular curve has no quadratic point producing "
            "a rational non-CM j-invariant, so degree 72 (and with it "
            "every multiple) is impossible.",
            _OS + ", Table 8.13"),
        _literature(
            "step5.x048.literature",
            "All exceptional quadratic points of the level-48 modular "
            "curve are CM, and the hyperelliptic involution pairs every "
            "non-exceptional quadratic point with its Galois conjugate, "
            "so degree 48 is impossible for non-CM rational j.",
            _BN + ", Table 15"),
    ]


def _stage6_rows():
    """Stage 6: products of 2-power and 5-power degrees."""
    return [
        CheckCase(
            "step6.composite25.closure", "orbit",
            inputs={"primes": [2, 5], "exponent_bounds": [5, 2],
                    "excluded_divisors": [40, 50]},
            expectation={"allowed": [10, 20]},
            run=run_degree_closure),
        _literature(
            "step6.x050.literature",
            "The exceptional quadratic points of the level-50 modular "
            "curve are two CM points and four points with irrational "
            "j-invariant; remaining quadratic points are paired with "
            "their conjugates by the hyperelliptic involution, so degree "
            "50 is impossible for non-CM rational j.",
            _BN + ", Table 16"),
        _literature(
            "step6.x040.literature",
            "All exceptional quadratic points of the level-40 modular "
            "curve are CM; the rest have rational x-coordinate, so the "
            "hyperelliptic involution acts as Galois conjugation on them, "
            "and degree 40 is impossible for non-CM rational j.",
            _BN + ", Table 11"),
    ]


def _stage7_rows():
    """Stage 7: products of 3-power and 5-power degrees."""
    return [
        CheckCase(
            "step7.composite35.closure", "orbit",
            inputs={"primes": [3, 5], "exponent_bounds": [2, 2],
                    "excluded_divisors": [45, 75]},
            expectation={"allowed": [15]},
            run=run_degree_closure),
        _literature(
            "step7.x045.literature",
            "The level-45 modular curve has two quadratic CM points and "
            "four quadratic points with irrational j-invariant as its "
            "only exceptional points, so degree 45 is impossible for "
            "non-CM rational j.",
            _OS + ", Table 8.5"),
        _literature(
            "step7.x075.literature",
            "The level-75 modular curve has no non-cuspidal non-CM "
            "quadratic points, so degree 75 is impossible.",
            _OS + ", Table 8.14"),
    ]


def _stage8_rows():
    """Stage 8: three-prime products and the excluded degree 14."""
    return [
        CheckCase(
            "step8.deg14.curve", "curve",
            inputs={"family_t": "jNs7", "family_s": "j2iso"},
            expectation={"degree_t": 28, "degree_s": 3, "total_degree": 29,
                         "term_count": 95},
            run=run_family_curve),
        CheckCase(
            "step8.deg14.points", "curve",
            inputs={"family_t": "jNs7", "family_s": "j2iso",
                    "points": [list(pt) for pt in _DEG14_POINTS]},
            expectation={"point_count": 5, "points_on_curve": 5,
                         "affine_j_values": ["0", "54000"]},
            run=run_family_curve),
        _literature(
            "step8.x030.literature",
            "The level-30 modular curve has six exceptional quadratic "
            "points: two CM and four with irrational j-invariant; the "
            "non-exceptional quadratic points are paired with their "
            "Galois conjugates by the hyperelliptic involution, so "
            "degree 30 is impossible for non-CM rational j.",
            _BN + ", Table 6"),
        _literature(
            "step8.x063.literature",
            "The level-63 modular curve has no non-CM non-cuspidal "
            "quadratic points, so degree 63 is impossible.",
            _OS + ", Table 8.11"),
    ]


def _stage9_rows():
    """Stage 9: degree 91 through the canonical quadric model."""
    return [
        CheckCase(
            "step9.x091.model", "curve",
            inputs={},
            expectation={
                "quadric_count": 10,
                "variable_count": 7,
                "text_sha256": ("d41c3d7844f0b0be491edd77ae9385dc"
                                "1176bcd5069bc0f016e3a118227a6fcd"),
            },
            run=run_model_shape),
        CheckCase(
            "step9.x091.points", "curve",
            inputs={},
            expectation={
                "cusp_count": 4,
                "cusps_on_model": 4,
                "cusps_rational": True,
                "cm_points_on_model": 2,
                "cm_field_d": 13,
                "cm_points_conjugate": True,
            },
            run=run_model_points),
        CheckCase(
            "step9.x091.involution", "curve",
            inputs={},
            expectation={
                "sign_pattern": [1, 1, 1, 1, 1, -1, 1, 1, -1, -1],
                "cusp_permutation": [1, 0, 3, 2],
                "cusp_set_preserved": True,
                "cm_points_fixed": True,
            },
            run=run_involution),
        CheckCase(
            "step9.x091.zeta", "curve",
            inputs={"primes": list(_ZETA_PRIMES)},
            expectation={"table": _ZETA_EXPECTED, "weil_bound_holds": True},
            run=run_zeta_table),
        CheckCase(
            "step9.x091.torsion", "curve",
            inputs={"prime_sets": [[3], [3, 5], [3, 5, 11]]},
            expectation={"gcd_3": 24, "gcd_3_5": 3, "gcd_3_5_11": 3},
            run=run_torsion_gcds),
        _literature(
            "step9.x091.jacobian",
            "The rational points of the level-91 Jacobian form the group "
            "Z x Z x Z/2 x Z/168: rank 2 from modular symbols with the "
            "analytic-rank criterion, and the torsion bound 336 from "
            "point counts at the primes 3, 5 and 19 (the genus-7 counts "
            "are beyond this toolkit's quotient-curve machinery).",
            "Stein, 'Modular Forms: A Computational Approach' (AMS GSM "
            "79, 2007) for the modular-symbols rank; Kolyvagin and "
            "Logachev, 'Finiteness of the Shafarevich-Tate group and the "
            "group of rational points for some modular abelian varieties' "
            "(Leningrad Math. J. 1, 1990)"),
        _literature(
            "step9.chabauty.literature",
            "Relative symmetric Chabauty on the degree-2 quotient map "
            "shows the only quadratic points of the level-91 curve are "
            "the four rational cusps, pullbacks of the rational points "
            "of the quotient, and the conjugate CM pair fixed by the "
            "canonical involution; the quotient's rational points were "
            "determined by explicit quadratic Chabauty.  Pulled-back "
            "points pair each curve with its conjugate, forcing CM for "
            "rational j, so degree 91 is impossible.",
            "Siksek, 'Chabauty for symmetric powers of curves' (Algebra "
            "Number Theory 3, 2009); " + _BOX + ", Theorems 2.1 and 2.4, "
            "Proposition 3.1, Lemma 3.4; Balakrishnan, Besser, Bianchi "
            "and Mueller, 'Explicit quadratic Chabauty over number "
            "fields' (Israel J. Math. 243, 2021), Example 7.1"),
    ]


def registry():
    """All registry rows, in stage order, with unique ids."""
    rows = (_distinct_prime_rows() + _stage2_rows() + _stage3_rows()
            + _stage4_rows() + _stage5_rows() + _stage6_rows()
            + _stage7_rows() + _stage8_rows() + _stage9_rows())
    seen = set()
    for row in rows:
        if row.id in seen:
            raise ValueError("duplicate check id %r" % (row.id,))
        seen.add(row.id)
    return rows
