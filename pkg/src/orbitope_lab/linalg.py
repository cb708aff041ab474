"""Exact linear algebra over the rationals.

Vectors are tuples of ``fractions.Fraction``; matrices are tuples of row
tuples.  Everything in this module is exact.  It is the arithmetic bedrock
for the exact side of the package (root systems, reflection groups,
polytopes).  Floating point lives in :mod:`orbitope_lab.matmodel` only.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

Vec = tuple
Mat = tuple

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    """Coerce ints, strings like '2/3', floats-free input to Fraction."""
    return x if isinstance(x, Fraction) else Fraction(x)


def vec(entries) -> Vec:
    return tuple(frac(x) for x in entries)


def mat(rows) -> Mat:
    return tuple(vec(r) for r in rows)


def zeros(n: int) -> Vec:
    return (ZERO,) * n


def identity(n: int) -> Mat:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def transpose(a: Mat) -> Mat:
    return tuple(zip(*a)) if a else ()


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(x + y for x, y in zip(u, v, strict=True))


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(x - y for x, y in zip(u, v, strict=True))


def vec_scale(c, v: Vec) -> Vec:
    c = frac(c)
    return tuple(c * x for x in v)


def dot(u: Vec, v: Vec) -> Fraction:
    return sum((x * y for x, y in zip(u, v, strict=True)), ZERO)


def is_zero_vec(v: Vec) -> bool:
    return all(x == 0 for x in v)


def matvec(a: Mat, v: Vec) -> Vec:
    return tuple(dot(row, v) for row in a)


def matmul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def outer(u: Vec, v: Vec) -> Mat:
    return tuple(tuple(x * y for y in v) for x in u)


def rref(a) -> tuple[list, list[int]]:
    """Reduced row echelon form.  Returns (rows, pivot_columns)."""
    rows = [list(r) for r in a]
    m = len(rows)
    n = len(rows[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(a) -> int:
    if not a:
        return 0
    return len(rref(a)[1])


def solve(a: Mat, b: Vec):
    """One exact solution of ``a @ x = b`` (free variables set to 0), or None.

    ``a`` has one row per equation.  Returns None when the system is
    inconsistent.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    aug = [list(row) + [rhs] for row, rhs in zip(a, b, strict=True)]
    rows, pivots = rref(aug)
    if n in pivots:
        return None
    x = [ZERO] * n
    for i, c in enumerate(pivots):
        x[c] = rows[i][n]
    return tuple(x)


def nullspace(a) -> list[Vec]:
    """Basis of the exact kernel of a (rows are equations)."""
    m = len(a)
    n = len(a[0]) if m else 0
    rows, pivots = rref(a)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for i, c in enumerate(pivots):
            v[c] = -rows[i][f]
        basis.append(tuple(v))
    return basis


def inverse(a: Mat) -> Mat:
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("inverse requires a square matrix")
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(a)]
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(rows[i][n:]) for i in range(n))


def det(a: Mat) -> Fraction:
    n = len(a)
    rows = [list(r) for r in a]
    sign = 1
    result = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return ZERO
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            sign = -sign
        pv = rows[c][c]
        result *= pv
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] / pv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return result * sign


def primitive(values) -> tuple[int, ...]:
    """Scale a rational vector by a positive rational to coprime integers.

    The direction (overall sign) is preserved; the zero vector maps to
    integer zeros.
    """
    fr = [frac(x) for x in values]
    if all(x == 0 for x in fr):
        return tuple(0 for _ in fr)
    denom_lcm = lcm(*(x.denominator for x in fr))
    ints = [int(x * denom_lcm) for x in fr]
    g = gcd(*ints)
    return tuple(x // g for x in ints)


def independent_rows(rows) -> list[int]:
    """Indices of a maximal linearly independent subset, scanned in order."""
    picked: list[int] = []
    state: list[list[Fraction]] = []
    for idx, row in enumerate(rows):
        work = list(row)
        for srow in state:
            lead = next((c for c in range(len(srow)) if srow[c] != 0), None)
            if lead is not None and work[lead] != 0:
                f = work[lead] / srow[lead]
                work = [x - f * y for x, y in zip(work, srow)]
        if any(x != 0 for x in work):
            state.append(work)
            picked.append(idx)
    return picked
