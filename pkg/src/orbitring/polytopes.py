"""Lattice polytopes, affine semigroups, and the graded cone over a polytope.

Lattice-point enumeration works from the vertex presentation alone:
scan the coordinate bounding box, prune with the affine-hull equations,
and decide membership by exact LP.  No facet enumeration is performed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import ceil, floor
from typing import Sequence

from .errors import GeometryError, NotDominant, ScenarioError
from .exact import (
    GE,
    Vector,
    convex_combination,
    feasible_nonneg,
    identity_matrix,
    integer_kernel_basis,
    lp_feasible,
    matrix,
    rank,
    solve_linear,
    vdot,
    vector,
    vscale,
    vsub,
    zero_vector,
)
from .roots import Lattice, RootDatum, decompose, in_fundamental_domain, ambient


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of lattice points, presented by its vertices."""

    vertices: tuple[Vector, ...]
    lattice: Lattice

    def __post_init__(self):
        verts = tuple(dict.fromkeys(vector(v) for v in self.vertices))
        object.__setattr__(self, "vertices", verts)
        if not verts:
            raise GeometryError("a polytope needs at least one vertex")
        n = self.lattice.dimension
        for v in verts:
            if len(v) != n:
                raise GeometryError("vertex dimension differs from the lattice")
            if not self.lattice.contains(v):
                raise GeometryError(f"vertex {v} is not a lattice point")
        for i, v in enumerate(verts):
            others = verts[:i] + verts[i + 1 :]
            if others and convex_combination(others, v) is not None:
                raise GeometryError(f"vertex {v} lies in the hull of the others")

    @property
    def dimension(self) -> int:
        return self.lattice.dimension

    @cached_property
    def full_dimensional(self) -> bool:
        if len(self.vertices) <= self.dimension:
            return False
        v0 = self.vertices[0]
        diffs = matrix([vsub(v, v0) for v in self.vertices[1:]])
        return rank(diffs) == self.dimension

    def contains(self, x: Vector) -> bool:
        return member(self, x)


def member(P: LatticePolytope, x: Vector) -> bool:
    """Exact hull membership: x is a convex combination of the vertices."""
    return convex_combination(P.vertices, vector(x)) is not None


def _affine_equations(vertices: Sequence[Vector]) -> list[tuple[Vector, Fraction]]:
    """Equations <a, x> = c cutting out the affine hull of the vertices."""
    v0 = vertices[0]
    diffs = [vsub(v, v0) for v in vertices[1:]]
    if not diffs:
        eqs = identity_matrix(len(v0))
    else:
        sol = solve_linear(matrix(diffs), zero_vector(len(diffs)))
        eqs = sol.kernel
    return [(a, vdot(a, v0)) for a in eqs]


def _box_lattice_scan(lattice: Lattice, hull_vertices: Sequence[Vector]):
    """Yield lattice points inside the hull of the given (rational) vertices.

    Bounding box in lattice coordinates, affine-hull equation pruning,
    then exact LP membership.
    """
    verts = [vector(v) for v in hull_vertices]
    coords = [lattice.coords(v) for v in verts]
    n = lattice.dimension
    ranges = []
    for j in range(n):
        lo = min(c[j] for c in coords)
        hi = max(c[j] for c in coords)
        ranges.append(range(ceil(lo), floor(hi) + 1))
    equations = _affine_equations(verts)
    for cand in itertools.product(*ranges):
        x = lattice.from_coords(cand)
        if any(vdot(a, x) != c for a, c in equations):
            continue
        if convex_combination(verts, x) is not None:
            yield x


def lattice_points(P: LatticePolytope, t: int) -> frozenset[Vector]:
    """All lattice points of the t-th dilate of P."""
    if t < 0:
        raise ValueError("dilation factor must be nonnegative")
    if t == 0:
        return frozenset({zero_vector(P.dimension)})
    scaled = [vscale(t, v) for v in P.vertices]
    return frozenset(_box_lattice_scan(P.lattice, scaled))


def slice_by_domain(datum: RootDatum, points) -> frozenset[Vector]:
    """Keep the points lying in the fundamental domain."""
    return frozenset(p for p in points if in_fundamental_domain(datum, p))


@dataclass(frozen=True)
class GradedSemigroup:
    """Affine semigroup by generators, or the graded cone over a polytope.

    In polytope mode the elements are pairs (t, p) with p in the t-th
    dilate, encoded as vectors whose first coordinate is the degree t.
    Polytope-mode semigroups are saturated by construction; generator
    mode is checked separately (see check_saturated).
    """

    lattice: Lattice
    generators: tuple[Vector, ...] | None = None
    polytope: LatticePolytope | None = None

    def __post_init__(self):
        if (self.generators is None) == (self.polytope is None):
            raise GeometryError("give exactly one of generators or polytope")
        if self.generators is not None:
            gens = tuple(dict.fromkeys(vector(g) for g in self.generators))
            object.__setattr__(self, "generators", gens)
            for g in gens:
                if not self.lattice.contains(g):
                    raise GeometryError(f"generator {g} is not a lattice point")
        else:
            if self.polytope.lattice != self.lattice:
                raise GeometryError("polytope lattice differs from the semigroup lattice")

    @property
    def dimension(self) -> int:
        """Dimension of the space the elements live in."""
        if self.generators is not None:
            return self.lattice.dimension
        return self.lattice.dimension + 1

    def cone_contains(self, x: Vector) -> bool:
        """Membership in the real cone spanned by the semigroup."""
        x = vector(x)
        if self.generators is not None:
            if not self.generators:
                return all(c == 0 for c in x)
            rows = [[g[i] for g in self.generators] for i in range(len(x))]
            return feasible_nonneg(rows, list(x)) is not None
        t, p = x[0], x[1:]
        if t < 0:
            return False
        if t == 0:
            return all(c == 0 for c in p)
        return member(self.polytope, vscale(Fraction(1, 1) / t, p))

    def contains(self, x: Vector) -> bool:
        """Exact semigroup membership (cone and lattice for saturated input)."""
        x = vector(x)
        if self.generators is not None:
            return self.lattice.contains(x) and self.cone_contains(x)
        t, p = x[0], x[1:]
        if t.denominator != 1 or t < 0:
            return False
        if not self.lattice.contains(p):
            return False
        return self.cone_contains(x)

    def graded_piece(self, t: int) -> frozenset[Vector]:
        if self.polytope is None:
            raise GeometryError("graded pieces need polytope mode")
        return lattice_points(self.polytope, t)


@dataclass(frozen=True)
class SaturationCheck:
    """Outcome of the bounded saturation verification.

    The degree bound is reported so the scope of the (non-exhaustive)
    check stays explicit; counterexample is a cone lattice point that
    the generators fail to reach.
    """

    saturated: bool
    mode: str
    degree_bound: int | None
    counterexample: Vector | None = None

    def __bool__(self) -> bool:
        return self.saturated


def check_saturated(S: GradedSemigroup, degree_bound: int = 8) -> SaturationCheck:
    """Bounded saturation test for a generator-mode semigroup.

    Pointed cones: exhaustively compare cone lattice points against
    generator sums, up to the degree bound along a strictly positive
    functional.  Sign-symmetric generator sets span a group, which is
    saturated exactly when it is a saturated sublattice; that case is
    decided exactly.  Mixed lineality is not supported.
    """
    if S.generators is None:
        return SaturationCheck(True, "polytope", None)
    gens = S.generators
    if not gens:
        return SaturationCheck(True, "pointed", degree_bound)

    if frozenset(gens) == frozenset(vscale(-1, g) for g in gens):
        return _check_group_saturated(S)

    h = lp_feasible([(g, Fraction(1), GE) for g in gens])
    if h is None:
        raise GeometryError(
            "generator set has lineality but is not sign-symmetric; "
            "saturation checking supports pointed cones and full groups only"
        )
    region = [zero_vector(S.lattice.dimension)]
    region += [vscale(Fraction(degree_bound) / vdot(h, g), g) for g in gens]
    cone_points = set(_box_lattice_scan(S.lattice, region))

    reachable = {zero_vector(S.lattice.dimension)}
    frontier = list(reachable)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = tuple(a + b for a, b in zip(x, g))
            if y not in reachable and vdot(h, y) <= degree_bound:
                reachable.add(y)
                frontier.append(y)
    missing = sorted(cone_points - reachable)
    if missing:
        return SaturationCheck(False, "pointed", degree_bound, missing[0])
    return SaturationCheck(True, "pointed", degree_bound)


def _check_group_saturated(S: GradedSemigroup) -> SaturationCheck:
    lat = S.lattice
    gen_coords = [lat.coords(g) for g in S.generators]
    sol = solve_linear(matrix(gen_coords), zero_vector(len(gen_coords)))
    equations = sol.kernel  # functionals vanishing on the span
    if equations:
        span_basis = integer_kernel_basis(matrix(equations))
    else:
        span_basis = identity_matrix(lat.dimension)
    columns = [[int(c) for c in g] for g in gen_coords]
    for t in span_basis:
        if not _in_integer_column_span(columns, [int(c) for c in t]):
            return SaturationCheck(False, "group", None, lat.from_coords(t))
    return SaturationCheck(True, "group", None)


def _in_integer_column_span(columns, target) -> bool:
    from .exact import in_integer_span

    return in_integer_span(columns, target)


def restriction_check(datum: RootDatum, group, S: GradedSemigroup, u: Vector) -> bool:
    """Whether the expanded psi image of a dominant semigroup point stays in S.

    Preconditions are enforced: u must be dominant and in S, and S must
    be stable under the group.
    """
    from .characters import psi
    from .weyl import preserves

    u = vector(u)
    if not in_fundamental_domain(datum, u):
        raise NotDominant(f"{u} is outside the fundamental domain")
    if not S.contains(u):
        raise ScenarioError(f"{u} is not a semigroup element", point=u)
    if not preserves(group, S):
        raise ScenarioError("the semigroup is not stable under the group")
    wp = decompose(datum, u)
    if wp is None:
        raise ScenarioError(f"{u} is not a weight for this datum", point=u)
    image = psi(datum, group, wp)
    return all(S.contains(ambient(datum, p)) for p in image.support)
