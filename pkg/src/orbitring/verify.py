"""End-to-end verifiers with machine-readable reports and certificates.

Each report carries one verdict per (statement, parameter) pair, so a
failure pinpoints both the violated statement and a concrete
counterexample that re-fails in isolation.  All sampling is seeded and
the seed is recorded in the report.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor

from .errors import ScenarioError
from .exact import GE, Vector, format_rat, lp_feasible, vdot, vector, vscale
from .roots import (
    RootDatum,
    WeightPoint,
    ambient,
    decompose,
    height,
    in_fundamental_domain,
    zero_weight,
)
from .weyl import Group, dominant_representative, preserves
from .characters import (
    Character,
    InvariantCharacter,
    psi,
    psi_inverse,
    psi_linear,
    support_check,
    to_orbit_basis,
)
from .polytopes import (
    GradedSemigroup,
    LatticePolytope,
    check_saturated,
    lattice_points,
    member,
    restriction_check,
    slice_by_domain,
)
from . import fixtures


@dataclass
class CheckResult:
    name: str
    passed: bool
    params: dict = field(default_factory=dict)
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "verdict": "pass" if self.passed else "fail",
            "params": self.params,
            "detail": self.detail,
        }


@dataclass
class VerificationReport:
    scenario: str
    group_summary: dict
    object_summary: dict
    seed: int | None
    checks: list[CheckResult]
    elapsed_seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "group": self.group_summary,
            "object": self.object_summary,
            "seed": self.seed,
            "passed": self.passed,
            "elapsed_seconds": round(self.elapsed_seconds, 6),
            "checks": [c.to_dict() for c in sorted(self.checks, key=lambda c: c.name)],
        }

    def to_text(self) -> str:
        lines = [
            f"scenario: {self.scenario}",
            f"group:    {self.group_summary}",
            f"object:   {self.object_summary}",
            f"seed:     {self.seed}",
            f"elapsed:  {self.elapsed_seconds:.3f}s",
            "",
        ]
        width = max((len(c.name) for c in self.checks), default=10)
        for c in sorted(self.checks, key=lambda c: c.name):
            mark = "pass" if c.passed else "FAIL"
            lines.append(f"  {c.name:<{width}}  {mark}")
            if not c.passed:
                lines.append(f"    params: {c.params}")
                lines.append(f"    detail: {c.detail}")
        lines.append("")
        lines.append(f"result: {'PASS' if self.passed else 'FAIL'} "
                     f"({len(self.checks)} checks, {len(self.failures)} failures)")
        return "\n".join(lines)


def _fmt_vec(v) -> str:
    return "(" + ",".join(format_rat(x) for x in v) + ")"


def _fmt_wp(wp: WeightPoint) -> str:
    return f"z{_fmt_vec(wp.z_part)}+b{list(wp.lambda_coords)}"


def _group_summary(datum: RootDatum, group: Group) -> dict:
    return {
        "rank": datum.rank,
        "dimension": datum.dimension,
        "order": group.order,
        "roots": len(datum.all_roots),
    }


# ---------------------------------------------------------------------------
# enumeration and sampling helpers


def enumerate_dominant_weights(datum: RootDatum, height_bound) -> list[WeightPoint]:
    """All dominant weights with zero z-part and height at most the bound."""
    bound = Fraction(height_bound)
    if datum.rank == 0:
        return [zero_weight(datum)]
    hts = [height(datum, w) for w in datum.fundamental_weights]
    out: list[WeightPoint] = []
    zero = zero_weight(datum)

    def rec(i: int, remaining: Fraction, acc: list[int]):
        if i == datum.rank:
            out.append(WeightPoint(zero.z_part, tuple(acc)))
            return
        b = 0
        while b * hts[i] <= remaining:
            rec(i + 1, remaining - b * hts[i], acc + [b])
            b += 1

    rec(0, bound, [])
    return sorted(out, key=lambda wp: wp.sort_key())


def positive_functional(S: GradedSemigroup) -> Vector | None:
    """A functional strictly positive on every generator, when one exists."""
    if S.generators is None or not S.generators:
        return None
    return lp_feasible([(g, Fraction(1), GE) for g in S.generators])


def enumerate_dominant_semigroup_points(
    datum: RootDatum,
    S: GradedSemigroup,
    height_bound,
    degree_cap: int | None = None,
) -> list[Vector]:
    """Dominant semigroup elements with bounded height.

    The height functional vanishes on the invariant subspace, so this
    set can be infinite; the scan is truncated at degree_cap along a
    strictly positive functional (pointed cones) or to a bounded window
    of weight coordinates (sign-symmetric generator sets), and the cap
    is part of every report that uses the enumeration.
    """
    bound = Fraction(height_bound)
    if degree_cap is None:
        degree_cap = 2 * int(ceil(bound))
    if S.generators is None:
        raise ScenarioError("domain enumeration needs a generator-mode semigroup")

    h = positive_functional(S)
    if h is not None:
        region = [vscale(Fraction(0), S.generators[0])]
        region += [vscale(Fraction(degree_cap) / vdot(h, g), g) for g in S.generators]
        coords = [S.lattice.coords(v) for v in region]
        n = S.lattice.dimension
        ranges = [
            range(ceil(min(c[j] for c in coords)), floor(max(c[j] for c in coords)) + 1)
            for j in range(n)
        ]
        out = []
        for cand in itertools.product(*ranges):
            x = S.lattice.from_coords(cand)
            if vdot(h, x) > degree_cap:
                continue
            if not in_fundamental_domain(datum, x):
                continue
            if height(datum, x) > bound:
                continue
            if not S.cone_contains(x):
                continue
            out.append(x)
        return sorted(out)

    # sign-symmetric generators: the semigroup is a group; walk the
    # dominant weights directly and keep the lattice points.
    out = []
    z_windows: list[Vector]
    if datum.z_basis:
        coeff_range = range(-degree_cap, degree_cap + 1)
        z_windows = [
            datum.lattice.from_coords([0] * datum.dimension) if False else z
            for z in _z_window(datum, coeff_range)
        ]
    else:
        z_windows = [vector([0] * datum.dimension)]
    for wp in enumerate_dominant_weights(datum, bound):
        for z in z_windows:
            x = vector([a + b for a, b in zip(ambient(datum, wp), z)])
            if S.contains(x):
                out.append(x)
    return sorted(set(out))


def _z_window(datum: RootDatum, coeff_range) -> list[Vector]:
    out = []
    for combo in itertools.product(coeff_range, repeat=len(datum.z_basis)):
        z = vector([0] * datum.dimension)
        for c, b in zip(combo, datum.z_basis):
            z = vector([x + c * y for x, y in zip(z, b)])
        out.append(z)
    return out


def sample_dominant_weight(
    rng: random.Random,
    datum: RootDatum,
    height_bound,
    z_coeff_range: int = 2,
) -> WeightPoint:
    """Seeded random dominant weight of bounded height.

    Weight coordinates are rejected until the height bound holds; the
    z-part is an integer combination of the z-basis within the window.
    """
    bound = Fraction(height_bound)
    hts = [height(datum, w) for w in datum.fundamental_weights]
    caps = [int(floor(bound / h)) for h in hts]
    for _ in range(1000):
        coords = tuple(rng.randint(0, c) for c in caps)
        if sum(b * h for b, h in zip(coords, hts)) <= bound:
            break
    else:
        coords = (0,) * datum.rank
    z = vector([0] * datum.dimension)
    for b in datum.z_basis:
        c = rng.randint(-z_coeff_range, z_coeff_range)
        z = vector([x + c * y for x, y in zip(z, b)])
    return WeightPoint(z, coords)


def sample_invariant_character(
    rng: random.Random,
    datum: RootDatum,
    height_bound,
    max_terms: int = 5,
    z_coeff_range: int = 2,
) -> InvariantCharacter:
    terms: dict[WeightPoint, int] = {}
    for _ in range(rng.randint(1, max_terms)):
        wp = sample_dominant_weight(rng, datum, height_bound, z_coeff_range)
        coeff = rng.choice([-3, -2, -1, 1, 2, 3])
        terms[wp] = coeff
    return InvariantCharacter(terms)


def sample_weight_outside(
    rng: random.Random,
    datum: RootDatum,
    S: GradedSemigroup,
    height_bound,
    z_coeff_range: int = 3,
) -> WeightPoint:
    """A dominant weight whose ambient point is not a semigroup element."""
    for _ in range(2000):
        wp = sample_dominant_weight(rng, datum, height_bound, z_coeff_range)
        if not S.contains(ambient(datum, wp)):
            return wp
    raise ScenarioError("could not sample a dominant weight outside the semigroup")


# ---------------------------------------------------------------------------
# verifiers


def brute_force_invariants(datum: RootDatum, group: Group, points) -> list[Character]:
    """Invariant-span basis by raw orbit symmetrization.

    Walks the point set, symmetrizes each point over the group, and
    deduplicates whole orbits.  Uses no dominance machinery and no
    product expansion, so it is an independent oracle for orbit counts
    and the orbit-sum change of basis.
    """
    pts = sorted(vector(p) for p in points)
    pt_set = set(pts)
    for g in group.generators:
        if {g.apply(p) for p in pt_set} != pt_set:
            raise ScenarioError("point set is not stable under the group")
    seen: set[frozenset[Vector]] = set()
    basis: list[Character] = []
    for p in pts:
        orb = group.orbit(p)
        if orb in seen:
            continue
        seen.add(orb)
        terms = {}
        for q in orb:
            wp = decompose(datum, q)
            assert wp is not None
            terms[wp] = 1
        basis.append(Character(terms))
    return basis


def verify_affine(
    datum: RootDatum,
    group: Group,
    S: GradedSemigroup,
    height_bound: int = 6,
    sample_count: int = 100,
    seed: int = 0,
    degree_cap: int | None = None,
    scenario_name: str = "affine",
    saturation_bound: int = 8,
) -> VerificationReport:
    """Verify the affine isomorphism statement on a semigroup scenario.

    Runs, exactly: the support lemma on every dominant weight of bounded
    height, the restriction lemma on the bounded dominant slice of S,
    multiplicativity and inverse round trips on seeded samples, and the
    containment argument separating the slice algebra from everything
    else.  Preconditions (saturated, group-stable) raise ScenarioError.
    """
    start = time.perf_counter()
    rng = random.Random(seed)

    if S.generators is not None:
        sat = check_saturated(S, saturation_bound)
        if not sat:
            raise ScenarioError(
                "semigroup is not saturated "
                f"(countereexample {_fmt_vec(sat.counterexample)}, "
                f"degree bound {sat.degree_bound})",
                counterexample=sat.counterexample,
                degree_bound=sat.degree_bound,
            )
    if not preserves(group, S):
        raise ScenarioError("semigroup is not stable under the group")

    checks: list[CheckResult] = []

    for wp in enumerate_dominant_weights(datum, height_bound):
        sc = support_check(datum, group, wp)
        checks.append(
            CheckResult(
                name=f"psi-support[u={_fmt_wp(wp)}]",
                passed=sc.all_true,
                params={"u": _fmt_wp(wp)},
                detail={
                    "max_coeff_one": sc.max_coeff_one,
                    "all_below": sc.all_below,
                    "delta_integrality": sc.delta_integrality,
                },
            )
        )

    domain_points = enumerate_dominant_semigroup_points(
        datum, S, height_bound, degree_cap
    )
    for x in domain_points:
        ok = restriction_check(datum, group, S, x)
        checks.append(
            CheckResult(
                name=f"restriction[u={_fmt_vec(x)}]",
                passed=ok,
                params={"u": _fmt_vec(x)},
                detail={"height": format_rat(height(datum, x))},
            )
        )

    for k in range(sample_count):
        u = sample_dominant_weight(rng, datum, height_bound)
        v = sample_dominant_weight(rng, datum, height_bound)
        ok = psi(datum, group, u) * psi(datum, group, v) == psi(datum, group, u + v)
        checks.append(
            CheckResult(
                name=f"psi-multiplicative[{k:04d}]",
                passed=ok,
                params={"u": _fmt_wp(u), "v": _fmt_wp(v)},
            )
        )

    for k in range(sample_count):
        g = sample_invariant_character(rng, datum, height_bound)
        f = psi_inverse(datum, group, g)
        back = to_orbit_basis(datum, group, psi_linear(datum, group, f))
        dom = all(wp.is_dominant for wp in f.support)
        checks.append(
            CheckResult(
                name=f"psi-inverse-round-trip[{k:04d}]",
                passed=back == g and dom,
                params={"terms": len(g)},
                detail={"preimage_terms": len(f), "preimage_dominant": dom},
            )
        )

    inside_pool = [decompose(datum, x) for x in domain_points]
    inside_pool = [wp for wp in inside_pool if wp is not None]
    for k in range(sample_count):
        outside = sample_weight_outside(rng, datum, S, height_bound)
        terms: dict[WeightPoint, int] = {outside: rng.choice([-2, -1, 1, 2])}
        for _ in range(rng.randint(0, 3)):
            if inside_pool:
                terms[rng.choice(inside_pool)] = rng.choice([-2, -1, 1, 2])
        f = Character(terms)
        image = psi_linear(datum, group, f)
        escaped = [
            p for p in image.support if not S.contains(ambient(datum, p))
        ]
        checks.append(
            CheckResult(
                name=f"containment-outside[{k:04d}]",
                passed=bool(escaped),
                params={"f_terms": len(f)},
                detail={"escaping_points": len(escaped)},
            )
        )

    for k in range(sample_count):
        if not inside_pool:
            break
        picks = rng.sample(inside_pool, min(len(inside_pool), rng.randint(1, 4)))
        f = Character({wp: rng.choice([-2, -1, 1, 2]) for wp in picks})
        image = psi_linear(datum, group, f)
        ok = all(S.contains(ambient(datum, p)) for p in image.support)
        checks.append(
            CheckResult(
                name=f"containment-inside[{k:04d}]",
                passed=ok,
                params={"f_terms": len(f)},
            )
        )

    return VerificationReport(
        scenario=scenario_name,
        group_summary=_group_summary(datum, group),
        object_summary={
            "kind": "semigroup",
            "generators": [_fmt_vec(g) for g in (S.generators or ())],
            "height_bound": int(height_bound),
            "degree_cap": degree_cap if degree_cap is not None
            else 2 * int(ceil(Fraction(height_bound))),
            "domain_points": len(domain_points),
        },
        seed=seed,
        checks=checks,
        elapsed_seconds=time.perf_counter() - start,
    )


def graded_counts(datum: RootDatum, group: Group, P: LatticePolytope, t: int) -> dict:
    """Total points, orbit count, and domain-slice count of the t-th dilate."""
    pts = lattice_points(P, t)
    reps = {dominant_representative(datum, None, p)[0] for p in pts}
    sliced = slice_by_domain(datum, pts)
    return {
        "t": t,
        "total_points": len(pts),
        "orbit_count": len(reps),
        "domain_slice_count": len(sliced),
    }


def verify_projective(
    datum: RootDatum,
    group: Group,
    P: LatticePolytope,
    t_max: int = 4,
    sample_count: int = 20,
    seed: int = 0,
    scenario_name: str = "projective",
) -> VerificationReport:
    """Verify the graded isomorphism on the cone semigroup over a polytope.

    Per degree: orbit count equals the domain-slice count, the dilate of
    the sliced polytope equals the sliced dilate, and the symmetrization
    oracle agrees with both counts.  Sampled products check the graded
    multiplication and that supports stay in the right graded piece.
    """
    start = time.perf_counter()
    rng = random.Random(seed)
    if not preserves(group, P):
        raise ScenarioError("polytope is not stable under the group")

    checks: list[CheckResult] = []
    slices: dict[int, list[Vector]] = {}

    for t in range(t_max + 1):
        pts = lattice_points(P, t)
        reps = {dominant_representative(datum, None, p)[0] for p in pts}
        sliced = slice_by_domain(datum, pts)
        slices[t] = sorted(sliced)
        checks.append(
            CheckResult(
                name=f"graded-dimension[t={t}]",
                passed=len(reps) == len(sliced),
                params={"t": t},
                detail={
                    "total_points": len(pts),
                    "orbit_count": len(reps),
                    "domain_slice_count": len(sliced),
                },
            )
        )

        # second path for t(P cap D) = (tP) cap D: rescale by 1/t instead
        # of dilating the vertex set (for t=0 both sides are the origin).
        if t == 0:
            alt = {p for p in pts if in_fundamental_domain(datum, p)}
        else:
            alt = {
                p
                for p in _scan_dilate(P, t)
                if member(P, vscale(Fraction(1, t), p))
                and in_fundamental_domain(datum, p)
            }
        checks.append(
            CheckResult(
                name=f"cone-identity[t={t}]",
                passed=alt == sliced,
                params={"t": t},
                detail={"lhs": len(alt), "rhs": len(sliced)},
            )
        )

        oracle = brute_force_invariants(datum, group, pts)
        checks.append(
            CheckResult(
                name=f"invariant-dimension[t={t}]",
                passed=len(oracle) == len(sliced) == len(reps),
                params={"t": t},
                detail={
                    "symmetrized_basis": len(oracle),
                    "orbit_count": len(reps),
                    "domain_slice_count": len(sliced),
                },
            )
        )

    pairs = [
        (t1, t2)
        for t1 in range(1, t_max + 1)
        for t2 in range(1, t_max + 1)
        if t1 + t2 <= t_max and slices[t1] and slices[t2]
    ]
    for k in range(sample_count if pairs else 0):
        t1, t2 = rng.choice(pairs)
        u = rng.choice(slices[t1])
        v = rng.choice(slices[t2])
        wu, wv = decompose(datum, u), decompose(datum, v)
        assert wu is not None and wv is not None
        product_ok = psi(datum, group, wu) * psi(datum, group, wv) == psi(
            datum, group, wu + wv
        )
        target = lattice_points(P, t1 + t2)
        support_ok = all(
            ambient(datum, p) in target
            for p in psi(datum, group, wu + wv).support
        )
        checks.append(
            CheckResult(
                name=f"graded-product[{k:04d}]",
                passed=product_ok and support_ok,
                params={"t1": t1, "t2": t2, "u": _fmt_vec(u), "v": _fmt_vec(v)},
                detail={"product": product_ok, "graded_support": support_ok},
            )
        )

    return VerificationReport(
        scenario=scenario_name,
        group_summary=_group_summary(datum, group),
        object_summary={
            "kind": "polytope",
            "vertices": len(P.vertices),
            "full_dimensional": P.full_dimensional,
            "t_max": t_max,
        },
        seed=seed,
        checks=checks,
        elapsed_seconds=time.perf_counter() - start,
    )


def _scan_dilate(P: LatticePolytope, t: int):
    """Lattice points of the bounding box of the t-th dilate (no hull test)."""
    coords = [P.lattice.coords(vscale(t, v)) for v in P.vertices]
    n = P.lattice.dimension
    ranges = [
        range(ceil(min(c[j] for c in coords)), floor(max(c[j] for c in coords)) + 1)
        for j in range(n)
    ]
    for cand in itertools.product(*ranges):
        yield P.lattice.from_coords(cand)


def figure1_fixture() -> VerificationReport:
    """The worked one-reflection example, checked term by term."""
    start = time.perf_counter()
    scen = fixtures.figure1_scenario()
    datum, group, S = scen.datum, scen.group, scen.semigroup
    checks: list[CheckResult] = []

    lam = vector([Fraction(-1, 2), Fraction(1, 2)])
    zvec = vector([Fraction(1, 2), Fraction(1, 2)])
    checks.append(
        CheckResult(
            name="fundamental-weight",
            passed=datum.fundamental_weights == (lam,),
            detail={"lambda": _fmt_vec(datum.fundamental_weights[0])},
        )
    )
    checks.append(
        CheckResult(
            name="z-basis",
            passed=datum.z_basis == (vector([1, 1]),),
            detail={"z_basis": [_fmt_vec(z) for z in datum.z_basis]},
        )
    )

    u_vec = vector([1, 3])
    wp = decompose(datum, u_vec)
    decomposition_ok = (
        wp is not None
        and wp.lambda_coords == (2,)
        and wp.z_part == vscale(4, zvec)
    )
    checks.append(
        CheckResult(
            name="decomposition-4z+2lambda",
            passed=decomposition_ok,
            detail={"z_part": _fmt_vec(wp.z_part), "lambda_coords": list(wp.lambda_coords)},
        )
    )

    image = psi(datum, group, wp)
    expanded = {ambient(datum, p): c for p, c in image.terms().items()}
    expected = {
        vector([1, 3]): 1,
        vector([2, 2]): 2,
        vector([3, 1]): 1,
    }
    checks.append(
        CheckResult(
            name="psi-expansion",
            passed=expanded == expected,
            detail={
                "terms": {
                    _fmt_vec(p): c for p, c in sorted(expanded.items())
                }
            },
        )
    )

    basis_form = to_orbit_basis(datum, group, image)
    expected_basis = {
        WeightPoint(vscale(4, zvec), (2,)): 1,
        WeightPoint(vscale(4, zvec), (0,)): 2,
    }
    checks.append(
        CheckResult(
            name="orbit-basis-support",
            passed=basis_form is not None and basis_form.terms() == expected_basis,
            detail={
                "support": {
                    _fmt_wp(p): c for p, c in (basis_form.terms() if basis_form else {}).items()
                }
            },
        )
    )

    checks.append(
        CheckResult(
            name="restriction-orthant",
            passed=restriction_check(datum, group, S, u_vec),
            params={"u": _fmt_vec(u_vec)},
        )
    )
    checks.append(
        CheckResult(
            name="domain-membership",
            passed=in_fundamental_domain(datum, u_vec)
            and not in_fundamental_domain(datum, vector([3, 1])),
        )
    )

    return VerificationReport(
        scenario="figure1",
        group_summary=_group_summary(datum, group),
        object_summary={"kind": "semigroup", "generators": ["(1,0)", "(0,1)"]},
        seed=None,
        checks=checks,
        elapsed_seconds=time.perf_counter() - start,
    )
