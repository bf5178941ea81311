"""Root systems adapted to a lattice, fundamental weights, and dominance.

A reflection group is specified by a positive definite form, a full-rank
lattice it must preserve, and a simple system of roots.  Construction
rescales each simple root to the primitive lattice generator on its
line, derives the fundamental weights and the orthogonal-subspace
lattice, and validates the root-system axioms exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    LatticeError,
    LatticeNotPreserved,
    NotDominant,
    RootSystemError,
)
from .exact import (
    UNIQUE,
    BilinearForm,
    Matrix,
    Vector,
    identity_matrix,
    inner,
    integer_kernel_basis,
    is_zero_vector,
    mat_vec,
    matrix,
    rank,
    rat,
    solve_linear,
    standard_form,
    transpose,
    vadd,
    vector,
    vscale,
    vsub,
    zero_vector,
    convex_combination,
)

DEFAULT_ROOT_LIMIT = 10_000


@dataclass(frozen=True)
class Lattice:
    """Full-rank lattice in the ambient space, given by a basis."""

    basis: tuple[Vector, ...]

    def __post_init__(self):
        n = len(self.basis)
        if n == 0:
            raise LatticeError("empty lattice basis")
        if any(len(b) != n for b in self.basis):
            raise LatticeError("lattice basis must be square (full rank)")
        if rank(self.basis) != n:
            raise LatticeError("lattice basis vectors are linearly dependent")

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @cached_property
    def _basis_columns(self) -> Matrix:
        return transpose(matrix(self.basis))

    def coords(self, v: Vector) -> Vector:
        """Exact coordinates of v in the lattice basis."""
        sol = solve_linear(self._basis_columns, vector(v))
        assert sol.status == UNIQUE
        return sol.solution

    def contains(self, v: Vector) -> bool:
        return all(c.denominator == 1 for c in self.coords(v))

    def from_coords(self, c: Sequence) -> Vector:
        out = zero_vector(self.dimension)
        for ci, b in zip(c, self.basis):
            out = vadd(out, vscale(ci, b))
        return out


def standard_lattice(n: int) -> Lattice:
    return Lattice(identity_matrix(n))


@dataclass(frozen=True)
class WeightPoint:
    """A weight split into its invariant-subspace part and weight coordinates.

    z_part lives in the common kernel of the simple-root pairings (in
    ambient coordinates); lambda_coords are the integer coefficients on
    the fundamental weights.
    """

    z_part: Vector
    lambda_coords: tuple[int, ...]

    def __add__(self, other: "WeightPoint") -> "WeightPoint":
        return WeightPoint(
            vadd(self.z_part, other.z_part),
            tuple(a + b for a, b in zip(self.lambda_coords, other.lambda_coords)),
        )

    def __sub__(self, other: "WeightPoint") -> "WeightPoint":
        return WeightPoint(
            vsub(self.z_part, other.z_part),
            tuple(a - b for a, b in zip(self.lambda_coords, other.lambda_coords)),
        )

    @property
    def is_dominant(self) -> bool:
        return all(b >= 0 for b in self.lambda_coords)

    def sort_key(self):
        return (self.z_part, self.lambda_coords)


def zero_weight(datum: "RootDatum") -> WeightPoint:
    return WeightPoint(zero_vector(datum.dimension), (0,) * datum.rank)


@dataclass(frozen=True)
class RootDatum:
    """Simple roots in the lattice, the full root set, and derived weight data.

    Built through adapt_simple_system (or a named-type constructor);
    direct construction skips validation.
    """

    form: BilinearForm
    lattice: Lattice
    simple_roots: tuple[Vector, ...]
    all_roots: tuple[Vector, ...]
    fundamental_weights: tuple[Vector, ...]
    z_basis: tuple[Vector, ...]

    @property
    def dimension(self) -> int:
        return self.form.dimension

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @cached_property
    def rho(self) -> Vector:
        """Sum of the fundamental weights; strictly positive on the root cone."""
        out = zero_vector(self.dimension)
        for w in self.fundamental_weights:
            out = vadd(out, w)
        return out

    @cached_property
    def _simple_gram(self) -> Matrix:
        return tuple(
            tuple(inner(self.form, a, b) for b in self.simple_roots)
            for a in self.simple_roots
        )

    @cached_property
    def simple_reflections(self) -> tuple[Matrix, ...]:
        return tuple(
            reflection_matrix(self.form, a, self.dimension) for a in self.simple_roots
        )

    def pairing(self, v: Vector, i: int) -> Fraction:
        """2<v, alpha_i> / <alpha_i, alpha_i>."""
        a = self.simple_roots[i]
        return 2 * inner(self.form, v, a) / inner(self.form, a, a)


def reflect(form: BilinearForm, alpha: Vector, v: Vector) -> Vector:
    """s_alpha(v) = v - 2<v,alpha>/<alpha,alpha> * alpha."""
    alpha = vector(alpha)
    v = vector(v)
    if is_zero_vector(alpha):
        raise ValueError("cannot reflect by the zero vector")
    c = 2 * inner(form, v, alpha) / inner(form, alpha, alpha)
    return vsub(v, vscale(c, alpha))


def reflection_matrix(form: BilinearForm, alpha: Vector, dim: int) -> Matrix:
    cols = [reflect(form, alpha, basis_vec) for basis_vec in identity_matrix(dim)]
    return transpose(matrix(cols))


def _primitive_on_line(lattice: Lattice, alpha: Vector) -> Vector:
    """Primitive generator of (lattice intersect R*alpha) with <alpha, .> > 0.

    With rational data the intersection is never zero, so the generator
    always exists; the scale is the least t > 0 making t*alpha integral
    in the lattice basis.
    """
    c = lattice.coords(alpha)
    nums = [x.numerator for x in c if x != 0]
    dens = [x.denominator for x in c if x != 0]
    if not nums:
        raise ValueError("cannot rescale the zero vector")
    t = Fraction(lcm(*dens), gcd(*nums))
    return vscale(t, alpha)


def _close_under_reflections(
    form: BilinearForm, simple_roots: Sequence[Vector], limit: int
) -> tuple[Vector, ...]:
    """Orbit of the simple system under the group its reflections generate."""
    roots = set(simple_roots)
    frontier = list(simple_roots)
    while frontier:
        beta = frontier.pop()
        for alpha in simple_roots:
            gamma = reflect(form, alpha, beta)
            if gamma not in roots:
                roots.add(gamma)
                frontier.append(gamma)
                if len(roots) > limit:
                    raise RootSystemError(
                        f"root closure exceeded {limit} elements; "
                        "the generated group is infinite or the cap is too low"
                    )
    return tuple(sorted(roots))


def _check_root_axiom(roots: Sequence[Vector]):
    """Each line meets the root set in exactly one +/- pair."""
    lines: dict[Vector, list[Vector]] = {}
    for beta in roots:
        lead = next(x for x in beta if x != 0)
        key = vscale(1 / lead, beta)
        lines.setdefault(key, []).append(beta)
    for key, members in lines.items():
        if len(members) != 2 or vadd(members[0], members[1]) != zero_vector(len(key)):
            raise RootSystemError(
                f"roots on the line of {key} are {sorted(members)}, "
                "expected exactly one opposite pair"
            )


def adapt_simple_system(
    form: BilinearForm,
    lattice: Lattice,
    raw_simple_roots: Iterable[Vector],
    root_limit: int = DEFAULT_ROOT_LIMIT,
) -> RootDatum:
    """Build a validated RootDatum from possibly unscaled simple roots.

    Each raw root is replaced by the primitive lattice generator on its
    line (same side), fundamental weights are solved from their defining
    pairings, and all invariants are checked: lattice preservation by the
    simple reflections, the +/- pair axiom for the closed root set, weight
    duality, and integrality of the lattice inside the weight group.
    """
    raw = [vector(a) for a in raw_simple_roots]
    n = lattice.dimension
    if form.dimension != n:
        raise DimensionMismatch("form and lattice dimensions differ")
    for a in raw:
        if len(a) != n:
            raise DimensionMismatch("simple root dimension differs from the lattice")
        if is_zero_vector(a):
            raise RootSystemError("zero vector offered as a simple root")
    if rank(matrix(raw) if raw else ()) != len(raw):
        raise RootSystemError("simple roots must be linearly independent")

    simple = tuple(_primitive_on_line(lattice, a) for a in raw)

    for a in simple:
        for b in lattice.basis:
            if not lattice.contains(reflect(form, a, b)):
                raise LatticeNotPreserved(
                    f"reflection by {a} maps lattice vector {b} outside the lattice"
                )

    all_roots = _close_under_reflections(form, simple, root_limit)
    if all_roots:
        _check_root_axiom(all_roots)
        for beta in all_roots:
            if not lattice.contains(beta):
                raise LatticeNotPreserved(f"root {beta} is not a lattice point")

    r = len(simple)
    weights: list[Vector] = []
    if r:
        gram = tuple(
            tuple(inner(form, a, b) for b in simple) for a in simple
        )
        for i in range(r):
            rhs = vector(
                inner(form, simple[i], simple[i]) / 2 if j == i else 0
                for j in range(r)
            )
            sol = solve_linear(gram, rhs)
            assert sol.status == UNIQUE  # Gram of independent roots is invertible
            w = zero_vector(n)
            for cj, a in zip(sol.solution, simple):
                w = vadd(w, vscale(cj, a))
            weights.append(w)

    pairing_rows = tuple(
        tuple(inner(form, a, b) for b in lattice.basis) for a in simple
    )
    z_basis = tuple(
        lattice.from_coords(c) for c in integer_kernel_basis(pairing_rows)
    ) if r else tuple(lattice.basis)

    datum = RootDatum(
        form=form,
        lattice=lattice,
        simple_roots=simple,
        all_roots=all_roots,
        fundamental_weights=tuple(weights),
        z_basis=z_basis,
    )
    _validate_datum(datum)
    return datum


def _validate_datum(datum: RootDatum):
    form = datum.form
    for i, w in enumerate(datum.fundamental_weights):
        for j, a in enumerate(datum.simple_roots):
            expected = 1 if i == j else 0
            if 2 * inner(form, w, a) / inner(form, a, a) != expected:
                raise RootSystemError("fundamental-weight duality failed")
        for z in datum.z_basis:
            if inner(form, w, z) != 0:
                raise RootSystemError("fundamental weight not orthogonal to z part")
    for m in datum.lattice.basis:
        for i in range(datum.rank):
            if datum.pairing(m, i).denominator != 1:
                raise LatticeError(
                    "lattice is not contained in the weight group: "
                    f"pairing of {m} with simple root {i} is {datum.pairing(m, i)}"
                )


def trivial_datum(dim: int) -> RootDatum:
    """Rank-0 datum: the trivial group acting on the standard lattice."""
    return adapt_simple_system(standard_form(dim), standard_lattice(dim), ())


def standard_datum(family: str, rnk: int) -> RootDatum:
    """Named crystallographic types with explicit rational realizations.

    A_r acts on Z^(r+1) by coordinate permutations; B_r and D_r act on
    Z^r by signed permutations (all, resp. evenly many, sign changes);
    C_r is the same group on the index-2 even-sum sublattice, where the
    long root stays primitive; G_2 acts on Z^2 with a hexagonal form.
    """
    family = family.upper()
    if rnk < 1:
        raise ValueError("rank must be positive")
    if family == "A":
        n = rnk + 1
        roots = [_diff(n, i + 1, i) for i in range(rnk)]
        return adapt_simple_system(standard_form(n), standard_lattice(n), roots)
    if family == "B":
        n = rnk
        roots = [_unit(n, 0)] + [_diff(n, i + 1, i) for i in range(rnk - 1)]
        return adapt_simple_system(standard_form(n), standard_lattice(n), roots)
    if family == "C":
        if rnk < 2:
            raise ValueError("type C needs rank >= 2")
        n = rnk
        basis = [vadd(_unit(n, 0), _unit(n, 1))]
        basis += [_diff(n, i + 1, i) for i in range(n - 1)]
        lattice = Lattice(tuple(basis))
        roots = [vscale(2, _unit(n, 0))] + [_diff(n, i + 1, i) for i in range(rnk - 1)]
        return adapt_simple_system(standard_form(n), lattice, roots)
    if family == "D":
        if rnk < 2:
            raise ValueError("type D needs rank >= 2")
        n = rnk
        roots = [vadd(_unit(n, 0), _unit(n, 1))]
        roots += [_diff(n, i + 1, i) for i in range(rnk - 1)]
        return adapt_simple_system(standard_form(n), standard_lattice(n), roots)
    if family == "G":
        if rnk != 2:
            raise ValueError("type G exists only in rank 2")
        form = BilinearForm(matrix([[2, -3], [-3, 6]]))
        return adapt_simple_system(form, standard_lattice(2), [_unit(2, 0), _unit(2, 1)])
    raise ValueError(f"unknown family {family!r} (expected A, B, C, D, or G)")


def _unit(n: int, i: int) -> Vector:
    return tuple(Fraction(1) if j == i else Fraction(0) for j in range(n))


def _diff(n: int, i: int, j: int) -> Vector:
    return vsub(_unit(n, i), _unit(n, j))


# ---------------------------------------------------------------------------
# weight decomposition and dominance


def decompose(datum: RootDatum, v: Vector) -> WeightPoint | None:
    """Split v into z_part + sum(b_i * lambda_i), or None if v is not a weight."""
    v = vector(v)
    if len(v) != datum.dimension:
        raise DimensionMismatch("point dimension differs from the datum")
    coords = []
    for i in range(datum.rank):
        b = datum.pairing(v, i)
        if b.denominator != 1:
            return None
        coords.append(int(b))
    z = v
    for b, w in zip(coords, datum.fundamental_weights):
        z = vsub(z, vscale(b, w))
    return WeightPoint(z, tuple(coords))


def ambient(datum: RootDatum, point: WeightPoint) -> Vector:
    """Reconstruct the ambient vector of a weight point."""
    out = point.z_part
    for b, w in zip(point.lambda_coords, datum.fundamental_weights):
        out = vadd(out, vscale(b, w))
    return out


def in_fundamental_domain(datum: RootDatum, v: Vector) -> bool:
    """Whether <v, alpha_i> >= 0 for every simple root."""
    return all(inner(datum.form, v, a) >= 0 for a in datum.simple_roots)


def delta_coordinates(datum: RootDatum, w: Vector) -> tuple[Fraction, ...] | None:
    """Coordinates of w on the simple roots, or None if w is outside their span.

    Solves the Gram system and verifies the reconstruction exactly, so it
    is valid when the simple roots do not span the ambient space.
    """
    w = vector(w)
    if datum.rank == 0:
        return () if is_zero_vector(w) else None
    rhs = vector(inner(datum.form, w, a) for a in datum.simple_roots)
    sol = solve_linear(datum._simple_gram, rhs)
    assert sol.status == UNIQUE
    recon = zero_vector(datum.dimension)
    for c, a in zip(sol.solution, datum.simple_roots):
        recon = vadd(recon, vscale(c, a))
    if recon != w:
        return None
    return sol.solution


def dominates(datum: RootDatum, u: Vector, v: Vector) -> bool:
    """u >= v in dominance order: u - v is a nonnegative combination of simple roots."""
    c = delta_coordinates(datum, vsub(vector(u), vector(v)))
    return c is not None and all(x >= 0 for x in c)


def height(datum: RootDatum, v: Vector) -> Fraction:
    """<v, rho> with rho the sum of the fundamental weights.

    Strictly monotone along dominance: u > v implies height(u) > height(v),
    because each simple root pairs positively with rho.
    """
    return inner(datum.form, vector(v), datum.rho)


def hull_membership(datum: RootDatum, group, u: Vector, v: Vector) -> bool:
    """Whether v lies in the convex hull of the orbit of u.

    Both points must be in the fundamental domain.  Decided by exact LP
    over the orbit points; deliberately shares no code with dominates().
    """
    u = vector(u)
    v = vector(v)
    for name, point in (("u", u), ("v", v)):
        if not in_fundamental_domain(datum, point):
            raise NotDominant(f"{name}={point} is outside the fundamental domain")
    orbit = sorted(group.orbit(u))
    return convex_combination(orbit, v) is not None
