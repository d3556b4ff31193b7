"""Exact integer matrix algebra: Smith normal form, integer linear
systems, lattice quotients, and finitely generated abelian groups with
automorphisms.

Everything uses Python big integers; matrices are immutable row tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import inf


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.rows and any(len(r) != len(self.rows[0]) for r in self.rows):
            raise ValueError("ragged matrix")

    @staticmethod
    def of(rows) -> IntMatrix:
        return IntMatrix(tuple(tuple(int(x) for x in r) for r in rows))

    @staticmethod
    def identity(n: int) -> IntMatrix:
        return IntMatrix(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @staticmethod
    def zero(n: int, m: int) -> IntMatrix:
        return IntMatrix(tuple((0,) * m for _ in range(n)))

    @staticmethod
    def from_columns(cols) -> IntMatrix:
        cols = [tuple(c) for c in cols]
        if not cols:
            return IntMatrix(())
        return IntMatrix(tuple(tuple(c[i] for c in cols) for i in range(len(cols[0]))))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> IntMatrix:
        return IntMatrix(tuple(zip(*self.rows))) if self.rows else self

    def __mul__(self, other: IntMatrix) -> IntMatrix:
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        ot = other.transpose().rows
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in ot) for row in self.rows)
        )

    def __add__(self, other: IntMatrix) -> IntMatrix:
        return IntMatrix(
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows))
        )

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return IntMatrix(
            tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows))
        )

    def __neg__(self) -> IntMatrix:
        return IntMatrix(tuple(tuple(-a for a in r) for r in self.rows))

    def apply(self, vector) -> tuple[int, ...]:
        v = tuple(vector)
        if self.ncols != len(v):
            raise ValueError("dimension mismatch")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.rows)

    def hstack(self, other: IntMatrix) -> IntMatrix:
        if self.nrows != other.nrows:
            raise ValueError("dimension mismatch")
        return IntMatrix(tuple(r1 + r2 for r1, r2 in zip(self.rows, other.rows)))

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("determinant of non-square matrix")
        if n == 0:
            return 1
        m = [list(r) for r in self.rows]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.rows) + "]"


@dataclass(frozen=True)
class SmithDecomposition:
    """U * M * V == S with U, V unimodular and S diagonal, d1 | d2 | ..."""

    u: IntMatrix
    s: IntMatrix
    v: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.s.rows[i][i] for i in range(min(self.s.nrows, self.s.ncols)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d != 0)


def smith_normal_form(m: IntMatrix) -> SmithDecomposition:
    """Diagonalize an integer matrix by unimodular row/column operations."""
    n, c = m.nrows, m.ncols
    s = [list(r) for r in m.rows]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    v = [[1 if i == j else 0 for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        s[dst] = [a + q * b for a, b in zip(s[dst], s[src])]
        u[dst] = [a + q * b for a, b in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in s:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i):
        s[i] = [-a for a in s[i]]
        u[i] = [-a for a in u[i]]

    t = 0
    while t < min(n, c):
        # Re-pick the smallest nonzero entry of the trailing block as pivot
        # on every pass; this keeps coefficient growth under control.
        pivot = None
        for i in range(t, n):
            for j in range(t, c):
                if s[i][j] != 0 and (pivot is None or abs(s[i][j]) < abs(s[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        if s[t][t] < 0:
            negate_row(t)
        p = s[t][t]
        # One nearest-integer reduction pass over column t and row t; any
        # nonzero residue is strictly smaller than p, so looping back to
        # the pivot re-pick makes progress.
        residue = False
        for i in range(t + 1, n):
            if s[i][t] != 0:
                q = (s[i][t] + (p >> 1)) // p
                if q:
                    add_row(i, t, -q)
                if s[i][t] != 0:
                    residue = True
        for j in range(t + 1, c):
            if s[t][j] != 0:
                q = (s[t][j] + (p >> 1)) // p
                if q:
                    add_col(j, t, -q)
                if s[t][j] != 0:
                    residue = True
        if residue:
            continue
        # Row and column t are clear; enforce divisibility of the rest.
        culprit = None
        for i in range(t + 1, n):
            if any(s[i][j] % p != 0 for j in range(t + 1, c)):
                culprit = i
                break
        if culprit is not None:
            add_row(t, culprit, 1)
            continue
        t += 1
    return SmithDecomposition(IntMatrix.of(u), IntMatrix.of(s), IntMatrix.of(v))


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Inverse of an integer matrix with determinant +-1, exactly."""
    n = m.nrows
    if n != m.ncols:
        raise ValueError("not square")
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m.rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    out = []
    for row in a:
        vals = row[n:]
        if any(x.denominator != 1 for x in vals):
            raise ValueError("matrix is not unimodular")
        out.append(tuple(int(x) for x in vals))
    return IntMatrix(tuple(out))


def solve_integer(m: IntMatrix, b) -> tuple[int, ...] | None:
    """One integer solution x of M x = b, or None if none exists."""
    snf = smith_normal_form(m)
    c = snf.u.apply(tuple(b))
    d = snf.diagonal
    y = [0] * m.ncols
    for i, ci in enumerate(c):
        if i < len(d) and d[i] != 0:
            if ci % d[i] != 0:
                return None
            y[i] = ci // d[i]
        elif ci != 0:
            return None
    return snf.v.apply(y)


def kernel_basis(m: IntMatrix) -> list[tuple[int, ...]]:
    """Basis of the integer kernel {x : M x = 0}."""
    snf = smith_normal_form(m)
    r = snf.rank
    return [snf.v.column(j) for j in range(r, m.ncols)]


def _primitive(vec: tuple[int, ...]) -> tuple[int, ...]:
    from math import gcd

    g = 0
    for x in vec:
        g = gcd(g, x)
    return vec if g in (0, 1) else tuple(x // g for x in vec)


@dataclass(frozen=True)
class GroupStructure:
    """Invariant-factor description of a finitely generated abelian group."""

    torsion: tuple[int, ...]  # invariant factors > 1, divisibility chain
    free_rank: int

    @property
    def order(self) -> int | float:
        if self.free_rank > 0:
            return inf
        out = 1
        for d in self.torsion:
            out *= d
        return out

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def lattice_quotient(gens: list[tuple[int, ...]], rels: list[tuple[int, ...]], n: int) -> GroupStructure:
    """Structure of span(gens)/span(rels) inside Z^n.

    Requires span(rels) <= span(gens); generator lists may be redundant.
    """
    if not gens:
        if any(any(x != 0 for x in r) for r in rels):
            raise ValueError("relations not contained in the generated lattice")
        return GroupStructure((), 0)
    a = IntMatrix.from_columns(gens)
    snf = smith_normal_form(a)
    r = snf.rank
    d = snf.diagonal
    # Lattice basis is U^-1 * diag(d) restricted to the first r columns;
    # a relator b has basis coordinates ((U b)_i / d_i)_{i<r}.
    coords = []
    for b in rels:
        c = snf.u.apply(b)
        if any(c[i] != 0 for i in range(r, n)):
            raise ValueError("relation lies outside the generated lattice")
        if any(c[i] % d[i] != 0 for i in range(r)):
            raise ValueError("relation lies outside the generated lattice")
        coords.append(tuple(c[i] // d[i] for i in range(r)))
    if not coords:
        return GroupStructure((), r)
    csnf = smith_normal_form(IntMatrix.from_columns(coords))
    torsion = tuple(x for x in csnf.invariant_factors() if x > 1)
    return GroupStructure(torsion, r - csnf.rank)


@dataclass(frozen=True)
class FGAbelianGroup:
    """Z^n modulo the column span of a relator matrix."""

    n: int
    relators: IntMatrix  # n x k, columns are relators

    def __post_init__(self) -> None:
        if self.relators.rows and self.relators.nrows != self.n:
            raise ValueError("relator matrix has wrong height")

    @staticmethod
    def free(n: int) -> FGAbelianGroup:
        return FGAbelianGroup(n, IntMatrix(tuple(() for _ in range(n))))

    @staticmethod
    def from_relator_columns(n: int, cols) -> FGAbelianGroup:
        cols = list(cols)
        if not cols:
            return FGAbelianGroup.free(n)
        return FGAbelianGroup(n, IntMatrix.from_columns(cols))

    def structure(self) -> GroupStructure:
        basis = [tuple(int(i == j) for j in range(self.n)) for i in range(self.n)]
        return lattice_quotient(basis, self.relators.columns(), self.n)

    def contains_in_relator_span(self, vec: tuple[int, ...]) -> bool:
        if not self.relators.columns():
            return all(x == 0 for x in vec)
        return solve_integer(self.relators, vec) is not None

    def element_key(self, vec) -> tuple:
        """Canonical form of an element: coordinates in the Smith basis,
        reduced modulo the invariant factors."""
        snf = smith_normal_form(self.relators) if self.relators.columns() else None
        v = tuple(vec)
        if snf is None:
            return v
        c = snf.u.apply(v)
        d = snf.diagonal
        out = []
        for i, ci in enumerate(c):
            if i < len(d) and d[i] != 0:
                out.append(ci % d[i])
            else:
                out.append(ci)
        return tuple(out)


@dataclass(frozen=True)
class AbelianAuto:
    """Automorphism of Z^n / relators, given by an integer matrix that
    descends to the quotient and is invertible on it."""

    group: FGAbelianGroup
    matrix: IntMatrix

    def __post_init__(self) -> None:
        n = self.group.n
        if self.matrix.nrows != n or self.matrix.ncols != n:
            raise ValueError("matrix must be n x n")
        for col in self.group.relators.columns():
            if not self.group.contains_in_relator_span(self.matrix.apply(col)):
                raise ValueError("matrix does not stabilize the relator lattice")
        if not self._is_surjective():
            raise ValueError("matrix is not invertible on the quotient")

    def _is_surjective(self) -> bool:
        # Surjective iff im(M) + span(relators) = Z^n; f.g. abelian groups
        # are Hopfian, so surjective implies bijective.
        cols = self.matrix.columns() + self.group.relators.columns()
        return lattice_quotient(
            [tuple(int(i == j) for j in range(self.group.n)) for i in range(self.group.n)],
            cols,
            self.group.n,
        ).is_trivial


@dataclass(frozen=True)
class FixedSubgroup:
    structure: GroupStructure
    generators: tuple[tuple[int, ...], ...]  # ambient representatives

    @property
    def order(self) -> int | float:
        return self.structure.order


def fix_subgroup(auto: AbelianAuto) -> FixedSubgroup:
    """Kernel of (M - I) on the quotient: {x : (M - I)x in span(relators)}."""
    n = auto.group.n
    mi = auto.matrix - IntMatrix.identity(n)
    rel_cols = auto.group.relators.columns()
    stacked = mi.hstack(IntMatrix.from_columns(rel_cols)) if rel_cols else mi
    gens = [k[:n] for k in kernel_basis(stacked)]
    gens += rel_cols
    structure = lattice_quotient(gens, rel_cols, n)
    return FixedSubgroup(structure, tuple(_primitive(g) for g in gens if any(g)))


def reidemeister_number_abelian(auto: AbelianAuto) -> int | float:
    """Number of twisted conjugacy classes of the automorphism: the order
    of the quotient by the image of (M - I).  Infinite iff that image
    drops free rank, which happens iff the fixed subgroup is infinite."""
    n = auto.group.n
    mi = auto.matrix - IntMatrix.identity(n)
    cols = mi.columns() + auto.group.relators.columns()
    basis = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return lattice_quotient(basis, cols, n).order
