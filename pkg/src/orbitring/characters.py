"""The character algebra of the weight group and the orbit-sum change of basis.

Characters are finitely supported integer combinations of weight points,
multiplied by adding exponents.  Invariant characters are expressed on
the orbit-sum basis, keyed by dominant representatives.  The central
map sends a dominant weight to the product of orbit sums of fundamental
weights; its inverse is a triangular elimination ordered by height.
"""

from __future__ import annotations

from typing import Iterable, Mapping, NamedTuple

from .errors import NotDominant
from .exact import Vector, zero_vector
from .roots import (
    RootDatum,
    WeightPoint,
    ambient,
    decompose,
    delta_coordinates,
    height,
    zero_weight,
)
from .weyl import Group, dominant_representative


class _TermMap:
    """Shared implementation: an immutable weight-point -> integer mapping."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[WeightPoint, int] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[WeightPoint, int] = {}
        for point, coeff in items:
            if not isinstance(coeff, int):
                raise TypeError("coefficients must be integers")
            if coeff:
                acc[point] = acc.get(point, 0) + coeff
                if acc[point] == 0:
                    del acc[point]
        self._terms = acc
        self._check_points()

    def _check_points(self):
        pass

    def terms(self) -> dict[WeightPoint, int]:
        return dict(self._terms)

    def items(self) -> list[tuple[WeightPoint, int]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def coefficient(self, point: WeightPoint) -> int:
        return self._terms.get(point, 0)

    @property
    def support(self) -> frozenset[WeightPoint]:
        return frozenset(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self._terms == other._terms

    def __hash__(self):
        return hash((type(self).__name__, frozenset(self._terms.items())))

    def _coerce(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {other!r}")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for p, c in other._terms.items():
            out[p] = out.get(p, 0) + c
        return type(self)(out)

    def __sub__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for p, c in other._terms.items():
            out[p] = out.get(p, 0) - c
        return type(self)(out)

    def __neg__(self):
        return type(self)({p: -c for p, c in self._terms.items()})

    def scaled(self, k: int):
        return type(self)({p: k * c for p, c in self._terms.items()})

    def __repr__(self):
        if not self._terms:
            return f"{type(self).__name__}(0)"
        parts = [f"{c}*x^{p.lambda_coords}@{p.z_part}" for p, c in self.items()]
        return f"{type(self).__name__}({' + '.join(parts)})"


class Character(_TermMap):
    """Element of the integer group algebra of the weight group."""

    @classmethod
    def zero(cls) -> "Character":
        return cls()

    @classmethod
    def monomial(cls, point: WeightPoint, coeff: int = 1) -> "Character":
        return cls({point: coeff})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scaled(other)
        if not isinstance(other, Character):
            return NotImplemented
        out: dict[WeightPoint, int] = {}
        for p, c in self._terms.items():
            for q, d in other._terms.items():
                s = p + q
                out[s] = out.get(s, 0) + c * d
        return Character(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Character":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        if n == 0:
            if not self._terms:
                raise ValueError("the empty product needs an explicit identity point")
            some = next(iter(self._terms))
            ident = WeightPoint(
                zero_vector(len(some.z_part)), (0,) * len(some.lambda_coords)
            )
            return Character.monomial(ident)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result


class InvariantCharacter(_TermMap):
    """Invariant element written on the orbit-sum basis; keys are dominant."""

    def _check_points(self):
        for p in self._terms:
            if not p.is_dominant:
                raise NotDominant(f"orbit-basis key {p} is not dominant")


def orbit_sum(datum: RootDatum, group: Group, u: WeightPoint) -> Character:
    """The expanded orbit sum of a dominant weight: every coefficient is 1."""
    if not u.is_dominant:
        raise NotDominant(f"{u} is not dominant")
    out: dict[WeightPoint, int] = {}
    for p in group.orbit(ambient(datum, u)):
        wp = decompose(datum, p)
        assert wp is not None  # the group preserves the weight group
        out[wp] = 1
    return Character(out)


def to_orbit_basis(
    datum: RootDatum, group: Group, f: Character
) -> InvariantCharacter | None:
    """Rewrite an invariant character on the orbit-sum basis.

    Returns None when f is not invariant, i.e. when some orbit is hit
    with unequal (or missing) coefficients.
    """
    remaining = f.terms()
    out: dict[WeightPoint, int] = {}
    while remaining:
        v = max(remaining, key=lambda wp: wp.sort_key())
        c = remaining[v]
        rep, _ = dominant_representative(datum, None, ambient(datum, v))
        for p in group.orbit(rep):
            wp = decompose(datum, p)
            if remaining.get(wp) != c:
                return None
            del remaining[wp]
        rep_wp = decompose(datum, rep)
        assert rep_wp is not None
        out[rep_wp] = c
    return InvariantCharacter(out)


def psi(datum: RootDatum, group: Group, u: WeightPoint) -> Character:
    """Image of the monomial at a dominant weight: the product expansion.

    The z component rides along as a label; each unit of the i-th weight
    coordinate contributes one factor equal to the orbit sum of the i-th
    fundamental weight.  The result is invariant by construction.
    """
    if not u.is_dominant:
        raise NotDominant(f"{u} is not dominant")
    result = Character.monomial(
        WeightPoint(u.z_part, (0,) * datum.rank)
    )
    for i, b in enumerate(u.lambda_coords):
        if b:
            lam = WeightPoint(zero_vector(datum.dimension), _unit_coords(datum.rank, i))
            result = result * orbit_sum(datum, group, lam) ** b
    return result


def _unit_coords(rank: int, i: int) -> tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(rank))


def psi_linear(datum: RootDatum, group: Group, f: Character) -> Character:
    """Linear extension of psi over the terms of f (all terms must be dominant)."""
    out = Character.zero()
    for u, c in f.items():
        out = out + psi(datum, group, u).scaled(c)
    return out


def psi_inverse(datum: RootDatum, group: Group, g: InvariantCharacter) -> Character:
    """Constructive inverse of psi on the orbit-sum basis.

    Triangular elimination: take a term of maximal height (ties broken
    lexicographically), emit it, subtract its psi image in orbit-basis
    form, and repeat.  Supports stay inside the finite lower set of the
    initial terms, and the eliminated term has coefficient exactly 1 in
    its own image, so the loop terminates with psi_linear(result) == g.
    """
    work = g.terms()
    out: dict[WeightPoint, int] = {}

    def elimination_key(wp: WeightPoint):
        return (height(datum, ambient(datum, wp)), wp.sort_key())

    while work:
        u = max(work, key=elimination_key)
        a = work[u]
        out[u] = out.get(u, 0) + a
        image = to_orbit_basis(datum, group, psi(datum, group, u))
        assert image is not None
        for wp, c in image.items():
            newc = work.get(wp, 0) - a * c
            if newc:
                work[wp] = newc
            else:
                work.pop(wp, None)
    return Character(out)


class SupportCheck(NamedTuple):
    max_coeff_one: bool
    all_below: bool
    delta_integrality: bool

    @property
    def all_true(self) -> bool:
        return self.max_coeff_one and self.all_below and self.delta_integrality


def support_check(datum: RootDatum, group: Group, u: WeightPoint) -> SupportCheck:
    """Verify the support shape of the psi image of a dominant weight.

    Checks that the orbit sum of u itself appears with coefficient 1 and
    that every orbit-basis support point sits below u by a nonnegative
    integer combination of simple roots.
    """
    if not u.is_dominant:
        raise NotDominant(f"{u} is not dominant")
    image = to_orbit_basis(datum, group, psi(datum, group, u))
    if image is None:
        return SupportCheck(False, False, False)
    coeff_one = image.coefficient(u) == 1
    below = True
    integral = True
    amb_u = ambient(datum, u)
    for wp in image.support:
        diff = delta_coordinates(
            datum, tuple(a - b for a, b in zip(amb_u, ambient(datum, wp)))
        )
        if diff is None:
            below = False
            integral = False
            continue
        below = below and all(x >= 0 for x in diff)
        integral = integral and all(x.denominator == 1 for x in diff)
    return SupportCheck(coeff_one, below, integral)
