"""Finite reflection groups: generation, orbits, dominant representatives."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import LatticeNotPreserved, OrderCapExceeded
from .exact import (
    BilinearForm,
    Matrix,
    Vector,
    identity_matrix,
    inner,
    mat_mul,
    mat_vec,
    matrix,
    vector,
)
from .roots import Lattice, RootDatum

DEFAULT_MAX_ORDER = 2_000_000


@dataclass(frozen=True)
class GroupElement:
    """Orthogonal lattice-preserving transformation, keyed by its exact matrix.

    The word (indices of simple reflections, applied right to left) is
    diagnostic only and does not participate in equality.
    """

    matrix: Matrix
    word: tuple[int, ...] | None = field(default=None, compare=False)

    def apply(self, v: Vector) -> Vector:
        return mat_vec(self.matrix, v)

    @property
    def dimension(self) -> int:
        return len(self.matrix)


@dataclass(frozen=True)
class Group:
    """A finite reflection group, closed under composition."""

    dimension: int
    generators: tuple[GroupElement, ...]
    elements: tuple[GroupElement, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def _matrices(self) -> frozenset[Matrix]:
        return frozenset(e.matrix for e in self.elements)

    @cached_property
    def identity(self) -> GroupElement:
        ident = identity_matrix(self.dimension)
        for e in self.elements:
            if e.matrix == ident:
                return e
        raise AssertionError("group without identity")

    def __contains__(self, element: GroupElement) -> bool:
        return element.matrix in self._matrices

    def element_for(self, m: Matrix) -> GroupElement:
        for e in self.elements:
            if e.matrix == m:
                return e
        raise KeyError("matrix is not a group element")

    def orbit(self, v: Vector) -> frozenset[Vector]:
        """Exact orbit of a vector under the group (generator closure)."""
        v = vector(v)
        seen = {v}
        frontier = [v]
        while frontier:
            x = frontier.pop()
            for g in self.generators:
                y = g.apply(x)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return frozenset(seen)


def generate(datum: RootDatum, max_order: int = DEFAULT_MAX_ORDER) -> Group:
    """Breadth-first closure of the simple reflections under composition.

    Elements are deduplicated by exact matrix equality.  Raises once the
    closure grows past max_order, which signals a non-finite group or a
    cap set too low.
    """
    if max_order < 1:
        raise ValueError("max_order must be at least 1")
    n = datum.dimension
    gens = []
    for i, m in enumerate(datum.simple_reflections):
        _check_lattice_preserved(m, datum.lattice)
        gens.append(GroupElement(m, word=(i,)))

    ident = identity_matrix(n)
    elements: dict[Matrix, GroupElement] = {ident: GroupElement(ident, word=())}
    frontier = [elements[ident]]
    while frontier:
        nxt = []
        for e in frontier:
            for i, g in enumerate(gens):
                m2 = mat_mul(g.matrix, e.matrix)
                if m2 not in elements:
                    elements[m2] = GroupElement(m2, word=(i,) + (e.word or ()))
                    nxt.append(elements[m2])
                    if len(elements) > max_order:
                        raise OrderCapExceeded(
                            f"group closure exceeded max_order={max_order}"
                        )
        frontier = nxt
    ordered = tuple(elements[m] for m in sorted(elements))
    return Group(dimension=n, generators=tuple(gens), elements=ordered)


def _check_lattice_preserved(m: Matrix, lattice: Lattice):
    for b in lattice.basis:
        if not lattice.contains(mat_vec(m, b)):
            raise LatticeNotPreserved(
                f"transformation maps lattice vector {b} outside the lattice"
            )


def orbit(group: Group, v: Vector) -> frozenset[Vector]:
    return group.orbit(v)


def dominant_representative(
    datum: RootDatum, group: Group | None, v: Vector
) -> tuple[Vector, GroupElement]:
    """The unique orbit point in the fundamental domain, with a witness.

    Ascent algorithm: apply the reflection of any simple root pairing
    negatively until none does.  Each step strictly increases the height,
    so the walk terminates; the endpoint does not depend on the order of
    the applied reflections.
    """
    x = vector(v)
    w = identity_matrix(datum.dimension)
    word: tuple[int, ...] = ()
    while True:
        i = next(
            (
                k
                for k, a in enumerate(datum.simple_roots)
                if inner(datum.form, x, a) < 0
            ),
            None,
        )
        if i is None:
            break
        s = datum.simple_reflections[i]
        x = mat_vec(s, x)
        w = mat_mul(s, w)
        word = (i,) + word
    witness = GroupElement(w, word=word)
    if group is not None:
        try:
            witness = group.element_for(w)
        except KeyError:
            pass
    return x, witness


def average_form(group: Group, form: BilinearForm) -> BilinearForm:
    """Sum of the pullbacks of the form over the group: W-invariant by construction."""
    n = form.dimension
    total = [[0] * n for _ in range(n)]
    for e in group.elements:
        mt = tuple(zip(*e.matrix))
        pulled = mat_mul(matrix(mt), mat_mul(form.gram, e.matrix))
        for i in range(n):
            for j in range(n):
                total[i][j] += pulled[i][j]
    return BilinearForm(matrix(total))


def preserves(group_or_element, obj) -> bool:
    """Whether every generator (or the single element) maps obj into itself.

    Accepts a Lattice, a LatticePolytope (generators must permute the
    vertex set: linear maps preserve extreme points), or a semigroup
    (every image of a semigroup generator must be a member).
    """
    if isinstance(group_or_element, Group):
        gens = group_or_element.generators or group_or_element.elements
    else:
        gens = (group_or_element,)

    if isinstance(obj, Lattice):
        return all(
            obj.contains(g.apply(b)) for g in gens for b in obj.basis
        )

    from .polytopes import GradedSemigroup, LatticePolytope

    if isinstance(obj, LatticePolytope):
        vertex_set = frozenset(obj.vertices)
        return all(
            frozenset(g.apply(v) for v in vertex_set) == vertex_set for g in gens
        )
    if isinstance(obj, GradedSemigroup):
        if obj.generators is not None:
            return all(obj.contains(g.apply(s)) for g in gens for s in obj.generators)
        return preserves(group_or_element, obj.polytope)
    raise TypeError(f"cannot test preservation of {type(obj).__name__}")
