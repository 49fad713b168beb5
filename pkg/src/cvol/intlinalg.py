"""Exact linear algebra over the integers and over GF(2).

Matrices are lists of lists of Python ints, so intermediate entries can grow
without overflow.  Provides Hermite normal form with transform, solution of
A x = b over Z with kernel basis, Smith normal form invariant factors, and a
small descriptor type for finitely generated abelian groups.
"""

from __future__ import annotations

from dataclasses import dataclass, field


def _copy(m: list[list[int]]) -> list[list[int]]:
    return [list(map(int, row)) for row in m]


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(m: list[list[int]]) -> list[list[int]]:
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def matmul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    if not a or not b:
        return [[0] * (len(b[0]) if b else 0) for _ in a]
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: list[list[int]], v: list[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def row_hnf(m: list[list[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Row-style Hermite normal form.

    Returns (H, U) with H = U * m, U unimodular, H in row echelon form with
    positive pivots and entries above each pivot reduced into [0, pivot).
    """
    h = _copy(m)
    rows = len(h)
    cols = len(h[0]) if rows else 0
    u = _identity(rows)
    pivot_row = 0
    for col in range(cols):
        if pivot_row >= rows:
            break
        # eliminate below via gcd row operations
        nonzero = [r for r in range(pivot_row, rows) if h[r][col] != 0]
        if not nonzero:
            continue
        while True:
            nonzero = [r for r in range(pivot_row, rows) if h[r][col] != 0]
            if len(nonzero) == 1:
                break
            nonzero.sort(key=lambda r: abs(h[r][col]))
            r0 = nonzero[0]
            for r in nonzero[1:]:
                f = h[r][col] // h[r0][col]
                h[r] = [a - f * b for a, b in zip(h[r], h[r0])]
                u[r] = [a - f * b for a, b in zip(u[r], u[r0])]
        r0 = nonzero[0]
        if r0 != pivot_row:
            h[r0], h[pivot_row] = h[pivot_row], h[r0]
            u[r0], u[pivot_row] = u[pivot_row], u[r0]
        if h[pivot_row][col] < 0:
            h[pivot_row] = [-a for a in h[pivot_row]]
            u[pivot_row] = [-a for a in u[pivot_row]]
        piv = h[pivot_row][col]
        for r in range(pivot_row):
            f = h[r][col] // piv
            if f:
                h[r] = [a - f * b for a, b in zip(h[r], h[pivot_row])]
                u[r] = [a - f * b for a, b in zip(u[r], u[pivot_row])]
        pivot_row += 1
    return h, u


def rank(m: list[list[int]]) -> int:
    if not m or not m[0]:
        return 0
    h, _ = row_hnf(m)
    return sum(1 for row in h if any(row))


@dataclass
class IntegerSolution:
    """Particular solution plus a basis of the integer kernel lattice."""

    particular: list[int]
    kernel: list[list[int]] = field(default_factory=list)


def solve_integer_system(
    a: list[list[int]], b: list[int]
) -> IntegerSolution | None:
    """Solve a x = b over Z.  Returns None when the system is inconsistent.

    Uses a column Hermite form a * U^T = C: forward substitution on the
    echelon columns with exact divisibility checks yields a particular
    solution, and the columns of U^T beyond the rank span the kernel.
    """
    m = len(a)
    n = len(a[0]) if a else 0
    if n == 0:
        if any(b):
            return None
        return IntegerSolution([], [])
    h, u = row_hnf(transpose(a))           # h = u * a^T, so a * u^T = h^T
    c = transpose(h)                       # m x n, columns in echelon order
    ut = transpose(u)                      # columns are the change of basis
    y = [0] * n
    used_rows: set[int] = set()
    r = 0
    for j in range(n):
        col = [c[i][j] for i in range(m)]
        if not any(col):
            break
        pivot_row = next(i for i in range(m) if col[i] != 0)
        residual = b[pivot_row] - sum(
            c[pivot_row][jj] * y[jj] for jj in range(j)
        )
        if residual % col[pivot_row]:
            return None
        y[j] = residual // col[pivot_row]
        used_rows.add(pivot_row)
        r = j + 1
    x = matvec(ut, y)
    if matvec(a, x) != list(map(int, b)):
        return None
    kernel = [[ut[i][j] for i in range(n)] for j in range(r, n)]
    return IntegerSolution(x, kernel)


def reduce_mod_lattice(x: list[int], basis: list[list[int]]) -> list[int]:
    """Canonical representative of x modulo the lattice spanned by basis.

    The basis is brought to row HNF; each pivot coordinate of x is reduced
    into [0, pivot) from the top row down, which is deterministic.
    """
    if not basis:
        return list(map(int, x))
    h, _ = row_hnf(basis)
    out = list(map(int, x))
    for row in h:
        piv_col = next((j for j, v in enumerate(row) if v != 0), None)
        if piv_col is None:
            continue
        f = out[piv_col] // row[piv_col]
        if f:
            out = [a - f * b for a, b in zip(out, row)]
    return out


def smith_invariant_factors(m: list[list[int]]) -> list[int]:
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix.

    Classic diagonalization with a minimal pivot re-selected after every
    Euclidean round, which keeps the entries from blowing up.
    """
    a = _copy(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    factors: list[int] = []
    t = 0
    while t < min(rows, cols):
        while True:
            # move a minimal nonzero entry of the remaining block to (t, t)
            pivot = None
            for i in range(t, rows):
                for j in range(t, cols):
                    v = a[i][j]
                    if v and (pivot is None or abs(v) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                return factors
            i0, j0 = pivot
            if i0 != t:
                a[t], a[i0] = a[i0], a[t]
            if j0 != t:
                for row in a:
                    row[t], row[j0] = row[j0], row[t]
            piv = a[t][t]
            # one Euclidean reduction round on column t and row t
            exact = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    f = a[i][t] // piv
                    if f:
                        a[i] = [x - f * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        exact = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    f = a[t][j] // piv
                    if f:
                        for row in a:
                            row[j] -= f * row[t]
                    if a[t][j]:
                        exact = False
            if not exact:
                continue  # smaller remainders exist; re-select the pivot
            # column and row are clear; enforce divisibility of the block
            piv = abs(a[t][t])
            offender = next(
                (
                    i
                    for i in range(t + 1, rows)
                    if any(a[i][j] % piv for j in range(t + 1, cols))
                ),
                None,
            )
            if offender is not None:
                a[t] = [x + y for x, y in zip(a[t], a[offender])]
                continue
            factors.append(piv)
            t += 1
            break
    return factors


def gf2_rank(m: list[list[int]]) -> int:
    """Rank over GF(2); rows are given as integer vectors taken mod 2."""
    rows = [sum((v & 1) << j for j, v in enumerate(row)) for row in m]
    r = 0
    for col in range(len(m[0]) if m else 0):
        mask = 1 << col
        pivot = next((i for i in range(r, len(rows)) if rows[i] & mask), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & mask:
                rows[i] ^= rows[r]
        r += 1
    return r


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group Z^free + sum Z/d_i."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    @classmethod
    def from_presentation(
        cls, ambient_nullity: int, relations: list[list[int]]
    ) -> "AbelianGroup":
        """Group ker/im for a chain spot: ambient_nullity = dim ker of the
        outgoing map, relations = matrix of the incoming map."""
        factors = smith_invariant_factors(relations) if relations else []
        torsion = tuple(sorted(f for f in factors if f > 1))
        return cls(ambient_nullity - len(factors), torsion)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def lattice_equal(basis_a: list[list[int]], basis_b: list[list[int]]) -> bool:
    """Whether two integer row spans define the same lattice."""
    ha, _ = row_hnf(basis_a)
    hb, _ = row_hnf(basis_b)
    ha = [row for row in ha if any(row)]
    hb = [row for row in hb if any(row)]
    return ha == hb

