"""Bundled scenarios: named groups, polytopes, and semigroups.

Every named fixture resolves to fully explicit data (vertices,
generators, Gram matrices), so any run that mentions a name is
reproducible from the serialized form alone.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import ScenarioError
from .exact import Fraction, Vector, identity_matrix, vector
from .roots import Lattice, RootDatum, standard_datum, standard_lattice, trivial_datum
from .polytopes import GradedSemigroup, LatticePolytope
from .weyl import DEFAULT_MAX_ORDER, Group, generate


@dataclass(frozen=True)
class Scenario:
    """A group together with the object it acts on."""

    name: str
    datum: RootDatum
    group: Group
    semigroup: GradedSemigroup | None = None
    polytope: LatticePolytope | None = None

    @property
    def kind(self) -> str:
        if self.polytope is not None:
            return "polytope"
        if self.semigroup is not None:
            return "semigroup"
        return "group-only"


def datum_and_group(family: str, rank: int, max_order: int = DEFAULT_MAX_ORDER):
    datum = standard_datum(family, rank)
    return datum, generate(datum, max_order)


def _unit(n, i) -> Vector:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def orthant_semigroup(n: int) -> GradedSemigroup:
    return GradedSemigroup(
        lattice=standard_lattice(n),
        generators=tuple(_unit(n, i) for i in range(n)),
    )


def full_lattice_semigroup(n: int) -> GradedSemigroup:
    gens = [_unit(n, i) for i in range(n)]
    gens += [vector([-x for x in g]) for g in gens]
    return GradedSemigroup(lattice=standard_lattice(n), generators=tuple(gens))


def square_polytope() -> LatticePolytope:
    return LatticePolytope(
        vertices=tuple(vector(v) for v in [(0, 0), (1, 0), (0, 1), (1, 1)]),
        lattice=standard_lattice(2),
    )


def simplex_polytope() -> LatticePolytope:
    return LatticePolytope(
        vertices=(_unit(3, 0), _unit(3, 1), _unit(3, 2)),
        lattice=standard_lattice(3),
    )


def cross_polytope() -> LatticePolytope:
    return LatticePolytope(
        vertices=tuple(vector(v) for v in [(1, 0), (-1, 0), (0, 1), (0, -1)]),
        lattice=standard_lattice(2),
    )


def permutohedron_polytope() -> LatticePolytope:
    verts = sorted(set(itertools.permutations((1, 2, 3, 4))))
    return LatticePolytope(
        vertices=tuple(vector(v) for v in verts),
        lattice=standard_lattice(4),
    )


def figure1_scenario() -> Scenario:
    datum, group = datum_and_group("A", 1)
    return Scenario("figure1", datum, group, semigroup=orthant_semigroup(2))


def _scenario_square() -> Scenario:
    datum, group = datum_and_group("A", 1)
    return Scenario("square-s2", datum, group, polytope=square_polytope())


def _scenario_simplex() -> Scenario:
    datum, group = datum_and_group("A", 2)
    return Scenario("simplex-s3", datum, group, polytope=simplex_polytope())


def _scenario_cross() -> Scenario:
    datum, group = datum_and_group("B", 2)
    return Scenario("cross-b2", datum, group, polytope=cross_polytope())


def _scenario_permutohedron() -> Scenario:
    datum, group = datum_and_group("A", 3)
    return Scenario("permutohedron-a3", datum, group, polytope=permutohedron_polytope())


def _scenario_orthant(rank: int) -> Scenario:
    datum, group = datum_and_group("A", rank)
    return Scenario(
        f"orthant{rank + 1}-a{rank}", datum, group,
        semigroup=orthant_semigroup(rank + 1),
    )


def _scenario_b2_lattice() -> Scenario:
    datum, group = datum_and_group("B", 2)
    return Scenario("lattice-b2", datum, group, semigroup=full_lattice_semigroup(2))


SCENARIOS = {
    "figure1": figure1_scenario,
    "square-s2": _scenario_square,
    "simplex-s3": _scenario_simplex,
    "cross-b2": _scenario_cross,
    "permutohedron-a3": _scenario_permutohedron,
    "orthant2-a1": lambda: _scenario_orthant(1),
    "orthant3-a2": lambda: _scenario_orthant(2),
    "orthant4-a3": lambda: _scenario_orthant(3),
    "lattice-b2": _scenario_b2_lattice,
}

POLYTOPES = {
    "square2": square_polytope,
    "simplex3": simplex_polytope,
    "cross2": cross_polytope,
    "permutohedron4": permutohedron_polytope,
}

SEMIGROUPS = {
    "orthant1": lambda: orthant_semigroup(1),
    "orthant2": lambda: orthant_semigroup(2),
    "orthant3": lambda: orthant_semigroup(3),
    "orthant4": lambda: orthant_semigroup(4),
    "lattice2": lambda: full_lattice_semigroup(2),
}

#: (family, rank) pairs exercised by the lemma suites.
LEMMA_SUITE_TYPES = (("A", 2), ("B", 2), ("A", 3), ("B", 3), ("C", 3))


def scenario(name: str) -> Scenario:
    try:
        return SCENARIOS[name]()
    except KeyError:
        raise ScenarioError(
            f"unknown fixture {name!r}; available: {', '.join(sorted(SCENARIOS))}"
        ) from None
