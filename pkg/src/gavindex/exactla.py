"""Exact integer and rational linear algebra.

Everything in this module works over plain Python integers and
:class:`fractions.Fraction`; no floating point is used anywhere.
Matrices are immutable tuples of row tuples, vectors are plain tuples.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import sympy
from sympy.matrices.normalforms import smith_normal_decomp

Rat = Fraction

IntVec = tuple[int, ...]
IntMat = tuple[IntVec, ...]
RatVec = tuple[Rat, ...]


def as_matrix(rows: Iterable[Sequence[int]]) -> IntMat:
    return tuple(tuple(int(x) for x in row) for row in rows)


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def mat_vec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    cols = tuple(zip(*b)) if b else ()
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def primitive(v: Sequence[int]) -> IntVec:
    """Scale an integer vector by 1/gcd of its entries.

    The zero vector is returned unchanged.
    """
    g = math.gcd(*(abs(x) for x in v)) if v else 0
    if g in (0, 1):
        return tuple(int(x) for x in v)
    return tuple(int(x) // g for x in v)


def clear_denominators(v: Sequence[Rat | int]) -> IntVec:
    """Scale a rational vector by a positive integer to the primitive integer vector on the same ray."""
    den = math.lcm(*(Fraction(x).denominator for x in v)) if v else 1
    return primitive(tuple(int(Fraction(x) * den) for x in v))


def identity(k: int) -> IntMat:
    return tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))


def _swap(rows: list[list[int]], i: int, j: int) -> None:
    rows[i], rows[j] = rows[j], rows[i]


def hnf(m: Sequence[Sequence[int]]) -> tuple[IntMat, IntMat]:
    """Row Hermite normal form with transformation.

    Returns (H, U) with U unimodular, H = U @ m, H upper triangular in
    echelon shape, pivots positive and entries above each pivot reduced
    into [0, pivot).
    """
    rows = [list(int(x) for x in row) for row in m]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    u = [list(row) for row in identity(nrows)]
    pivot_row = 0
    for col in range(ncols):
        if pivot_row >= nrows:
            break
        while True:
            nonzero = [i for i in range(pivot_row, nrows) if rows[i][col] != 0]
            if not nonzero:
                break
            best = min(nonzero, key=lambda i: abs(rows[i][col]))
            if best != pivot_row:
                _swap(rows, pivot_row, best)
                _swap(u, pivot_row, best)
            if len(nonzero) == 1:
                # after the swap the single nonzero entry sits in the pivot row
                break
            p = rows[pivot_row][col]
            done = True
            for i in range(pivot_row + 1, nrows):
                if rows[i][col] != 0:
                    q = rows[i][col] // p
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[pivot_row])]
                    u[i] = [a - q * b for a, b in zip(u[i], u[pivot_row])]
                    if rows[i][col] != 0:
                        done = False
            if done:
                break
        if rows[pivot_row][col] == 0:
            continue
        if rows[pivot_row][col] < 0:
            rows[pivot_row] = [-a for a in rows[pivot_row]]
            u[pivot_row] = [-a for a in u[pivot_row]]
        p = rows[pivot_row][col]
        for i in range(pivot_row):
            q = rows[i][col] // p
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[pivot_row])]
                u[i] = [a - q * b for a, b in zip(u[i], u[pivot_row])]
        pivot_row += 1
    h = tuple(tuple(row) for row in rows)
    return h, tuple(tuple(row) for row in u)


def snf(m: Sequence[Sequence[int]]) -> tuple[IntMat, IntMat, IntMat]:
    """Smith normal form with transformations.

    Returns (S, U, V) with U, V unimodular and S = U @ m @ V diagonal,
    diagonal entries nonnegative and each dividing the next.
    """
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    if nrows == 0 or ncols == 0:
        return tuple(tuple(row) for row in m), identity(nrows), identity(ncols)
    s_sym, u_sym, v_sym = smith_normal_decomp(sympy.Matrix([list(row) for row in m]))
    s = [[int(x) for x in row] for row in s_sym.tolist()]
    u = [[int(x) for x in row] for row in u_sym.tolist()]
    v = [[int(x) for x in row] for row in v_sym.tolist()]
    for i in range(min(nrows, ncols)):
        if s[i][i] < 0:
            s[i][i] = -s[i][i]
            u[i] = [-x for x in u[i]]
    st = tuple(tuple(row) for row in s)
    ut = tuple(tuple(row) for row in u)
    vt = tuple(tuple(row) for row in v)
    if mat_mul(mat_mul(ut, as_matrix(m)), vt) != st:
        raise AssertionError("smith decomposition certificate failed")
    diag = [st[i][i] for i in range(min(nrows, ncols))]
    for a, b in zip(diag, diag[1:]):
        if a != 0 and b % a != 0:
            raise AssertionError("smith diagonal divisibility failed")
        if a == 0 and b != 0:
            raise AssertionError("smith diagonal ordering failed")
    return st, ut, vt


def rank(m: Sequence[Sequence[int | Rat]]) -> int:
    """Rank of a rational matrix, by fraction-free style Gaussian elimination over Fraction."""
    rows = [[Fraction(x) for x in row] for row in m]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [a * inv for a in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == nrows:
            break
    return r


def transpose(m: Sequence[Sequence]) -> tuple:
    return tuple(zip(*m)) if m else ()


def integer_kernel(m: Sequence[Sequence[int]]) -> IntMat:
    """Basis of the saturated lattice {x integral : m @ x = 0}.

    The basis spans the full rational kernel intersected with the integer
    lattice, so any integral kernel element is an integer combination of
    it. Computed from a Hermite form of the transpose: rows of the
    transformation matrix opposite the zero rows of H form such a basis.
    """
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    if nrows == 0:
        return identity(ncols)
    h, u = hnf(transpose(m))
    return tuple(u[i] for i in range(ncols) if not any(h[i]))


def saturate(vectors: Sequence[Sequence[int]]) -> IntMat:
    """Basis of the saturation of the lattice spanned by the given vectors.

    The saturation is the set of integer points in the rational span; it
    contains the original lattice with finite index.
    """
    if not vectors:
        return ()
    ambient = len(vectors[0])
    inner = integer_kernel(vectors)
    if not inner:
        return identity(ambient)
    return integer_kernel(inner)


def solve_rational(m: Sequence[Sequence[int | Rat]], b: Sequence[int | Rat]) -> RatVec | None:
    """One rational solution of m @ x = b, or None when the system is inconsistent.

    Free variables are set to zero.
    """
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    if len(b) != nrows:
        raise ValueError("right hand side length does not match row count")
    rows = [[Fraction(x) for x in row] + [Fraction(bv)] for row, bv in zip(m, b)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [a * inv for a in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * w for a, w in zip(rows[i], rows[r])]
        pivots.append((r, col))
        r += 1
    for i in range(r, nrows):
        if rows[i][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for row_i, col_i in pivots:
        x[col_i] = rows[row_i][ncols]
    return tuple(x)


def min_integral_multiplier(m: Sequence[Sequence[int]], b: Sequence[int | Rat]) -> int | None:
    """Smallest t > 0 such that m @ x = t * b has an integral solution x.

    The right hand side may be rational. Returns None when no positive
    multiple of b lies in the column lattice of m. Solvability for a given
    t is governed by the Smith form: with S = U m V and c = U b, an
    integral solution exists iff s_i divides t * c_i on the diagonal part
    and t * c_i = 0 beyond it.
    """
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    if len(b) != nrows:
        raise ValueError("right hand side length does not match row count")
    if nrows == 0:
        return 1
    if ncols == 0:
        return 1 if all(x == 0 for x in b) else None
    s, u, _ = snf(m)
    c = mat_vec(u, tuple(Fraction(x) for x in b))
    rho = sum(1 for i in range(min(nrows, ncols)) if s[i][i] != 0)
    t = 1
    for i in range(nrows):
        ci = Fraction(c[i])
        if i >= rho or i >= ncols:
            if ci != 0:
                return None
            continue
        if ci == 0:
            continue
        # need s_i | t * (p/q), i.e. t divisible by s_i q / gcd(p, s_i q)
        den = s[i][i] * ci.denominator
        t = math.lcm(t, den // math.gcd(abs(ci.numerator), den))
    return t


def det_int(m: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free Bareiss elimination."""
    k = len(m)
    if any(len(row) != k for row in m):
        raise ValueError("matrix is not square")
    if k == 0:
        return 1
    a = [list(int(x) for x in row) for row in m]
    sign = 1
    prev = 1
    for i in range(k - 1):
        if a[i][i] == 0:
            piv = next((j for j in range(i + 1, k) if a[j][i] != 0), None)
            if piv is None:
                return 0
            a[i], a[piv] = a[piv], a[i]
            sign = -sign
        for j in range(i + 1, k):
            for col in range(i + 1, k):
                a[j][col] = (a[j][col] * a[i][i] - a[j][i] * a[i][col]) // prev
            a[j][i] = 0
        prev = a[i][i]
    return sign * a[k - 1][k - 1]


def lattice_key(vectors: Sequence[Sequence[int]]) -> IntMat:
    """Canonical form for the lattice generated by the vectors (HNF with zero rows dropped)."""
    if not vectors:
        return ()
    h, _ = hnf(vectors)
    return tuple(row for row in h if any(row))
