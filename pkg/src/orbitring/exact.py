"""Exact rational arithmetic, linear algebra, and LP feasibility.

Everything downstream computes over `fractions.Fraction`; no floating
point is used anywhere.  Vectors and matrices are plain tuples so they
are hashable and compare exactly componentwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotPositiveDefinite

Rat = Fraction
Vector = tuple[Fraction, ...]
Matrix = tuple[tuple[Fraction, ...], ...]

GE = ">="
EQ = "=="

UNIQUE = "unique"
NO_SOLUTION = "no solution"
NON_UNIQUE = "non-unique"


def rat(x) -> Fraction:
    """Coerce ints, strings like "p/q", and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rat(x)
    if isinstance(x, float):
        raise TypeError("floating point is not allowed in exact arithmetic")
    return Fraction(x)


def parse_rat(s: str) -> Fraction:
    """Parse "p/q" or "p" (used by every file format)."""
    s = s.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def format_rat(q: Fraction) -> str:
    """Render as "p/q", or "p" when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vector(xs: Iterable) -> Vector:
    return tuple(rat(x) for x in xs)


def matrix(rows: Iterable[Iterable]) -> Matrix:
    out = tuple(vector(r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise DimensionMismatch("ragged matrix rows")
    return out


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def vadd(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch(f"{len(u)} vs {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch(f"{len(u)} vs {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def vneg(u: Vector) -> Vector:
    return tuple(-a for a in u)


def vscale(c, u: Vector) -> Vector:
    c = rat(c)
    return tuple(c * a for a in u)


def vdot(u: Vector, v: Vector) -> Fraction:
    if len(u) != len(v):
        raise DimensionMismatch(f"{len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def is_zero_vector(u: Vector) -> bool:
    return all(a == 0 for a in u)


def identity_matrix(n: int) -> Matrix:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n))
        for i in range(n)
    )


def mat_vec(m: Matrix, v: Vector) -> Vector:
    return tuple(vdot(row, v) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise DimensionMismatch("matrix product shape mismatch")
    bt = transpose(b)
    return tuple(tuple(vdot(row, col) for col in bt) for row in a)


def transpose(m: Matrix) -> Matrix:
    if not m:
        return ()
    return tuple(tuple(row[j] for row in m) for j in range(len(m[0])))


def determinant(m: Matrix) -> Fraction:
    """Exact determinant by fraction Gaussian elimination."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionMismatch("determinant of a non-square matrix")
    a = [list(row) for row in m]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] * inv
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


def rank(m: Matrix) -> int:
    """Exact rank via Gaussian elimination."""
    if not m:
        return 0
    a = [list(row) for row in m]
    rows, cols = len(a), len(a[0])
    r = 0
    for col in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][col]
        for i in range(r + 1, rows):
            if a[i][col] != 0:
                f = a[i][col] * inv
                for c in range(col, cols):
                    a[i][c] -= f * a[r][c]
        r += 1
        if r == rows:
            break
    return r


@dataclass(frozen=True)
class BilinearForm:
    """A symmetric positive definite Gram matrix on the ambient space."""

    gram: Matrix

    def __post_init__(self):
        g = self.gram
        n = len(g)
        if any(len(row) != n for row in g):
            raise DimensionMismatch("Gram matrix must be square")
        if g != transpose(g):
            raise NotPositiveDefinite("Gram matrix is not symmetric")
        # leading principal minors, all exactly positive
        for k in range(1, n + 1):
            minor = determinant(tuple(row[:k] for row in g[:k]))
            if minor <= 0:
                raise NotPositiveDefinite(
                    f"leading principal minor of order {k} is {minor}"
                )

    @property
    def dimension(self) -> int:
        return len(self.gram)

    def inner(self, u: Vector, v: Vector) -> Fraction:
        return inner(self, u, v)


def standard_form(n: int) -> BilinearForm:
    return BilinearForm(identity_matrix(n))


def inner(form: BilinearForm, u: Vector, v: Vector) -> Fraction:
    """u' * gram * v, exactly."""
    n = form.dimension
    if len(u) != n or len(v) != n:
        raise DimensionMismatch(
            f"vectors of length {len(u)}, {len(v)} against form of dimension {n}"
        )
    return vdot(u, mat_vec(form.gram, v))


@dataclass(frozen=True)
class LinearSolution:
    """Outcome of an exact linear solve.

    status is one of UNIQUE, NO_SOLUTION, NON_UNIQUE.  For NON_UNIQUE the
    solution field holds a particular solution and kernel a basis of the
    homogeneous solution space.
    """

    status: str
    solution: Vector | None
    kernel: tuple[Vector, ...] = ()


def solve_linear(a: Matrix, b: Vector) -> LinearSolution:
    """Exact Gaussian elimination for A x = b.

    Accepts any rectangular A.  Pivot selection is the first nonzero
    entry, so the result is deterministic.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if len(b) != rows:
        raise DimensionMismatch(f"A has {rows} rows but b has {len(b)} entries")
    aug = [list(row) + [b[i]] for i, row in enumerate(a)]
    pivot_cols: list[int] = []
    r = 0
    for col in range(cols):
        pivot = next((i for i in range(r, rows) if aug[i][col] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivot_cols.append(col)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if aug[i][cols] != 0:
            return LinearSolution(NO_SOLUTION, None)
    particular = [Fraction(0)] * cols
    for i, col in enumerate(pivot_cols):
        particular[col] = aug[i][cols]
    free_cols = [c for c in range(cols) if c not in pivot_cols]
    if not free_cols:
        return LinearSolution(UNIQUE, tuple(particular))
    kernel = []
    for fc in free_cols:
        vec = [Fraction(0)] * cols
        vec[fc] = Fraction(1)
        for i, col in enumerate(pivot_cols):
            vec[col] = -aug[i][fc]
        kernel.append(tuple(vec))
    return LinearSolution(NON_UNIQUE, tuple(particular), tuple(kernel))


# ---------------------------------------------------------------------------
# integer (unimodular) column reduction, for lattice kernels and spans


def _integerize_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        row = [Fraction(x) for x in row]
        scale = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * scale) for x in row])
    return out


def _column_reduce(int_rows: list[list[int]]):
    """Unimodular column reduction A*U = H.

    Returns (H, U, pivots) where U is unimodular, pivots is a list of
    (row, col) pairs in processing order, and every column of H that is
    not a pivot column is identically zero.
    """
    m = len(int_rows)
    n = len(int_rows[0]) if m else 0
    h = [list(r) for r in int_rows]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def col_addmul(dst: int, src: int, q: int):
        for i in range(m):
            h[i][dst] -= q * h[i][src]
        for i in range(n):
            u[i][dst] -= q * u[i][src]

    def col_negate(j: int):
        for i in range(m):
            h[i][j] = -h[i][j]
        for i in range(n):
            u[i][j] = -u[i][j]

    active = list(range(n))
    pivots: list[tuple[int, int]] = []
    for row in range(m):
        nonzero = [j for j in active if h[row][j] != 0]
        while len(nonzero) > 1:
            j0 = min(nonzero, key=lambda j: (abs(h[row][j]), j))
            if h[row][j0] < 0:
                col_negate(j0)
            for j in nonzero:
                if j != j0:
                    col_addmul(j, j0, h[row][j] // h[row][j0])
            nonzero = [j for j in active if h[row][j] != 0]
        if nonzero:
            j0 = nonzero[0]
            if h[row][j0] < 0:
                col_negate(j0)
            pivots.append((row, j0))
            active.remove(j0)
    return h, u, pivots, active


def integer_kernel_basis(rows: Matrix) -> tuple[Vector, ...]:
    """Basis of {c integral : rows * c = 0}.

    The result spans the full (saturated) integer kernel, not just a
    finite-index sublattice.
    """
    if not rows:
        return ()
    n = len(rows[0])
    int_rows = _integerize_rows(rows)
    _, u, _, active = _column_reduce(int_rows)
    basis = []
    for j in sorted(active):
        col = [u[i][j] for i in range(n)]
        # sign-normalize for determinism
        lead = next((x for x in col if x != 0), 1)
        if lead < 0:
            col = [-x for x in col]
        basis.append(tuple(Fraction(x) for x in col))
    return tuple(basis)


def in_integer_span(columns: Sequence[Sequence[int]], target: Sequence[int]) -> bool:
    """Whether target is an integer combination of the given columns."""
    if not columns:
        return all(x == 0 for x in target)
    m = len(columns[0])
    int_rows = [[int(col[i]) for col in columns] for i in range(m)]
    h, _, pivots, _ = _column_reduce(int_rows)
    residual = [int(x) for x in target]
    for row, col in pivots:
        if residual[row] % h[row][col] != 0:
            return False
        q = residual[row] // h[row][col]
        for i in range(m):
            residual[i] -= q * h[i][col]
    return all(x == 0 for x in residual)


# ---------------------------------------------------------------------------
# exact LP feasibility (phase-I simplex with Bland's anti-cycling rule)


def feasible_nonneg(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """Find x >= 0 with A x = b, or None if the system is infeasible.

    Phase-I simplex over exact rationals.  Bland's rule (lowest eligible
    index enters; ties in the ratio test break toward the lowest basic
    index) guarantees termination and determinism.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    tab: list[list[Fraction]] = []
    for i in range(m):
        row = [rat(x) for x in rows[i]]
        if len(row) != n:
            raise DimensionMismatch("ragged constraint rows")
        b = rat(rhs[i])
        if b < 0:
            row = [-x for x in row]
            b = -b
        art = [Fraction(1) if k == i else Fraction(0) for k in range(m)]
        tab.append(row + art + [b])
    width = n + m
    basis = [n + i for i in range(m)]
    alive = [True] * width  # artificial columns die once they leave the basis
    cost = [Fraction(0)] * (width + 1)
    for j in range(n):
        cost[j] = -sum(tab[i][j] for i in range(m))
    cost[width] = -sum(tab[i][width] for i in range(m))

    while True:
        enter = next(
            (j for j in range(width) if alive[j] and j not in basis and cost[j] < 0),
            None,
        )
        if enter is None:
            break
        best = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][width] / tab[i][enter]
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            # phase-I objective is bounded below by zero; unreachable
            raise AssertionError("unbounded phase-I pivot")
        row = best[1]
        leaving = basis[row]
        piv = tab[row][enter]
        tab[row] = [x / piv for x in tab[row]]
        for i in range(m):
            if i != row and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[row])]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, tab[row])]
        basis[row] = enter
        if leaving >= n:
            alive[leaving] = False

    if -cost[width] != 0:
        return None
    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = tab[i][width]
    return x


Constraint = tuple[Vector, Fraction, str]


def lp_feasible(constraints: Sequence[Constraint]) -> Vector | None:
    """Exact feasibility for a system of >= and == constraints on free variables.

    Each constraint is (a, b, rel) encoding a.x >= b or a.x == b.  Returns
    an exact witness vector, or None when the system is infeasible.  The
    verdict and the witness are deterministic.
    """
    if not constraints:
        return ()
    dim = len(constraints[0][0])
    for a, _, rel in constraints:
        if len(a) != dim:
            raise DimensionMismatch("constraint vectors of mixed dimension")
        if rel not in (GE, EQ):
            raise ValueError(f"unknown relation {rel!r}")
    n_slack = sum(1 for _, _, rel in constraints if rel == GE)
    width = 2 * dim + n_slack
    rows = []
    rhs = []
    slack_at = 0
    for a, b, rel in constraints:
        row = [Fraction(0)] * width
        for j, coeff in enumerate(a):
            row[j] = rat(coeff)
            row[dim + j] = -rat(coeff)
        if rel == GE:
            row[2 * dim + slack_at] = Fraction(-1)
            slack_at += 1
        rows.append(row)
        rhs.append(rat(b))
    sol = feasible_nonneg(rows, rhs)
    if sol is None:
        return None
    return tuple(sol[j] - sol[dim + j] for j in range(dim))


def convex_combination(points: Sequence[Vector], target: Vector) -> list[Fraction] | None:
    """Coefficients c >= 0, sum 1, with sum c_i p_i = target, or None."""
    if not points:
        return None
    dim = len(points[0])
    if len(target) != dim:
        raise DimensionMismatch("target dimension differs from the points")
    rows = [[rat(p[i]) for p in points] for i in range(dim)]
    rows.append([Fraction(1)] * len(points))
    rhs = list(target) + [Fraction(1)]
    return feasible_nonneg(rows, rhs)
