"""Exact rational linear algebra on plain Python lists.

Vectors are row vectors; a matrix ``A`` acts on the right (``v -> v A``),
which matches the right actions used throughout the package.  Entries are
``int`` or :class:`fractions.Fraction`; nothing here ever produces a float.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = list
Matrix = list


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(n: int, m: int | None = None) -> Matrix:
    return [[0] * (n if m is None else m) for _ in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col) if x and y) for col in cols] for row in a]


def vecmat(v: Sequence, a: Matrix) -> Vector:
    n = len(a[0]) if a else 0
    out = [0] * n
    for i, x in enumerate(v):
        if x:
            row = a[i]
            for j in range(n):
                if row[j]:
                    out[j] += x * row[j]
    return out


def add(a: Matrix, b: Matrix, scale: int = 1) -> Matrix:
    return [[x + scale * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def trace(a: Matrix):
    return sum(a[i][i] for i in range(len(a)))


def normalize(x):
    """Turn integral Fractions back into ints so outputs stay readable."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form, pivoting on the leftmost column with the first
    nonzero entry.  Returns ``(nonzero rows, pivot columns)``."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [[normalize(x) for x in row] for row in m[:r]], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(a: Matrix, ncols: int | None = None) -> list[Vector]:
    """Basis of ``{x : a x = 0}`` (column-vector kernel), one vector per free column."""
    if not a:
        n = ncols or 0
        return [[int(i == j) for j in range(n)] for i in range(n)]
    n = len(a[0])
    red, piv = rref(a)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        x = [0] * n
        x[f] = 1
        for row, p in zip(red, piv):
            x[p] = normalize(-Fraction(row[f]))
        basis.append(x)
    return basis


def left_nullspace(a: Matrix) -> list[Vector]:
    """Basis of ``{v : v a = 0}``."""
    return nullspace(transpose(a), len(a))


def solve_coordinates(basis: Sequence[Sequence], v: Sequence) -> list | None:
    """Coefficients ``c`` with ``sum c_k basis_k = v``, or None if ``v`` is outside the span."""
    k = len(basis)
    if k == 0:
        return [] if not any(v) else None
    # columns are basis vectors, augmented with v
    aug = [[basis[j][i] for j in range(k)] + [v[i]] for i in range(len(v))]
    red, piv = rref(aug)
    if k in piv:
        return None
    if len(piv) != k:
        raise ValueError("basis vectors are linearly dependent")
    coords = [0] * k
    for row, p in zip(red, piv):
        coords[p] = normalize(Fraction(row[k]))
    return coords


class EchelonBasis:
    """Incrementally grown row-echelon basis over Q with sparse rows.

    Each stored row is a dict ``column -> Fraction`` whose smallest column is
    its pivot, with coefficient 1 there.
    """

    def __init__(self):
        self.rows: dict[int, dict[int, Fraction]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict[int, Fraction]) -> dict[int, Fraction]:
        v = dict(vec)
        while v:
            c = min(v)
            row = self.rows.get(c)
            if row is None:
                return v
            f = v[c]
            for j, y in row.items():
                z = v.get(j, 0) - f * y
                if z:
                    v[j] = z
                else:
                    v.pop(j, None)
        return v

    def add(self, vec: dict[int, Fraction] | Sequence) -> bool:
        """Insert ``vec``; return True iff it was independent of the current rows."""
        if not isinstance(vec, dict):
            vec = {j: Fraction(x) for j, x in enumerate(vec) if x}
        v = self.reduce(vec)
        if not v:
            return False
        c = min(v)
        inv = 1 / Fraction(v[c])
        self.rows[c] = {j: Fraction(x) * inv for j, x in v.items()}
        return True

    def contains(self, vec: dict | Sequence) -> bool:
        if not isinstance(vec, dict):
            vec = {j: Fraction(x) for j, x in enumerate(vec) if x}
        return not self.reduce(vec)
