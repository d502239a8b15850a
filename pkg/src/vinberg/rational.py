"""Exact linear algebra over the rationals.

Matrices are tuples of row tuples of :class:`fractions.Fraction`; vectors are
plain tuples.  Everything here is small-matrix, pure-Python and exact: the
instances this package cares about have dimension below twenty, and every
verdict built on top of these routines is meant to be a certificate.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Iterable, Sequence

Matrix = tuple[tuple[Fraction, ...], ...]
Vector = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    """Parse an int, Fraction or "p/q" string into a Fraction.

    Floats are refused: a float has already lost the information we need.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if hasattr(x, "numerator") and hasattr(x, "denominator") and not isinstance(x, float):
        return Fraction(int(x.numerator), int(x.denominator))
    raise TypeError(f"cannot read {x!r} as an exact rational")


def fmt(q: Fraction) -> str:
    q = frac(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def matrix(rows: Iterable[Iterable]) -> Matrix:
    out = tuple(tuple(frac(x) for x in row) for row in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    return out


def vector(xs: Iterable) -> Vector:
    return tuple(frac(x) for x in xs)


def shape(a: Matrix) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def zeros(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return tuple(tuple(ZERO for _ in range(m)) for _ in range(n))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), ZERO) for col in bt) for row in a)


def matvec(a: Matrix, v: Sequence[Fraction]) -> Vector:
    return tuple(sum((x * y for x, y in zip(row, v)), ZERO) for row in a)


def vecmat(v: Sequence[Fraction], a: Matrix) -> Vector:
    """Row vector times matrix."""
    return tuple(sum((x * row[j] for x, row in zip(v, a)), ZERO) for j in range(len(a[0])))


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(u, v)), ZERO)


def outer(col: Sequence[Fraction], row: Sequence[Fraction]) -> Matrix:
    return tuple(tuple(c * r for r in row) for c in col)


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def scale(c, a: Matrix) -> Matrix:
    c = frac(c)
    return tuple(tuple(c * x for x in row) for row in a)


def mat_power(a: Matrix, k: int) -> Matrix:
    result = identity(len(a))
    base = a
    while k:
        if k & 1:
            result = matmul(result, base)
        k >>= 1
        if k:
            base = matmul(base, base)
    return result


def is_identity(a: Matrix) -> bool:
    return all(x == (ONE if i == j else ZERO) for i, row in enumerate(a) for j, x in enumerate(row))


def is_integral(a: Matrix) -> bool:
    return all(x.denominator == 1 for row in a for x in row)


def trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), ZERO)


def common_denominator(entries: Iterable[Fraction]) -> int:
    return reduce(lcm, (frac(x).denominator for x in entries), 1)


def _integer_rows(a: Matrix) -> tuple[list[list[int]], Fraction]:
    """Scale each row to integers; return rows and the product of the scales."""
    rows = []
    scale_product = ONE
    for row in a:
        d = common_denominator(row)
        rows.append([int(x * d) for x in row])
        scale_product *= d
    return rows, scale_product


def _bareiss(rows: list[list[int]]) -> tuple[int, int]:
    """Fraction-free elimination in place; returns (rank, signed last pivot).

    For a square full-rank input the second value is the determinant.
    """
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    sign = 1
    prev = 1
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        pivot = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        if pivot != r:
            rows[r], rows[pivot] = rows[pivot], rows[r]
            sign = -sign
        p = rows[r][c]
        for i in range(r + 1, n_rows):
            ri = rows[i]
            f = ri[c]
            for j in range(c + 1, n_cols):
                ri[j] = (p * ri[j] - f * rows[r][j]) // prev
            ri[c] = 0
        prev = p
        r += 1
    return r, sign * prev


def rank(a: Matrix) -> int:
    if not a or not a[0]:
        return 0
    rows, _ = _integer_rows(a)
    return _bareiss(rows)[0]


def det(a: Matrix) -> Fraction:
    n, m = shape(a)
    if n != m:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return ONE
    rows, s = _integer_rows(a)
    r, d = _bareiss(rows)
    if r < n:
        return ZERO
    return Fraction(d) / s


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    rows = [list(r) for r in a]
    n_rows, n_cols = shape(a)
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in rows), pivots


def nullspace(a: Matrix, n_cols: int | None = None) -> list[Vector]:
    """Basis of {x : a x = 0}, one vector per free column, in column order."""
    if not a:
        n = n_cols or 0
        return [tuple(ONE if i == j else ZERO for i in range(n)) for j in range(n)]
    r, pivots = rref(a)
    n = len(a[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * n
        x[f] = ONE
        for row_idx, pc in enumerate(pivots):
            x[pc] = -r[row_idx][f]
        basis.append(tuple(x))
    return basis


def left_nullspace(a: Matrix) -> list[Vector]:
    return nullspace(transpose(a), n_cols=len(a))


def independent_subset(vectors: Sequence[Sequence[Fraction]]) -> list[int]:
    """Indices of a greedily chosen maximal independent subfamily, in order."""
    chosen: list[int] = []
    basis: list[Vector] = []
    for idx, v in enumerate(vectors):
        trial = basis + [tuple(v)]
        if rank(tuple(trial)) == len(trial):
            basis = trial
            chosen.append(idx)
    return chosen


def span_basis(vectors: Sequence[Sequence[Fraction]]) -> list[Vector]:
    return [tuple(vectors[i]) for i in independent_subset(vectors)]


def solve(a: Matrix, b: Sequence[Fraction]) -> Vector:
    """Unique solution of a x = b for invertible square a."""
    n = len(a)
    aug = tuple(tuple(row) + (frac(bi),) for row, bi in zip(a, b))
    r, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("singular system")
    return tuple(r[i][n] for i in range(n))


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = tuple(tuple(row) + id_row for row, id_row in zip(a, identity(n)))
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is not invertible")
    return tuple(tuple(row[n:]) for row in r)


# -- polynomials (coefficient lists, highest degree first) ------------------

Poly = list[Fraction]


def charpoly(a: Matrix) -> Poly:
    """Characteristic polynomial det(x I - a) by Faddeev-LeVerrier."""
    n = len(a)
    coeffs = [ONE]
    m = zeros(n)
    c = ONE
    for k in range(1, n + 1):
        m = add(matmul(a, m), scale(c, identity(n)))
        c = -trace(matmul(a, m)) / k
        coeffs.append(c)
    return coeffs


def _trim(p: Poly) -> Poly:
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return p[i:]


def poly_eval(p: Poly, x) -> Fraction:
    acc = ZERO
    for c in p:
        acc = acc * x + c
    return acc


def poly_deriv(p: Poly) -> Poly:
    d = len(p) - 1
    return _trim([c * (d - i) for i, c in enumerate(p[:-1])]) or [ZERO]


def poly_divmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    p = _trim(list(p))
    q = _trim(list(q))
    if q == [ZERO]:
        raise ZeroDivisionError("polynomial division by zero")
    if len(p) < len(q):
        return [ZERO], p
    rem = list(p)
    quot = []
    steps = len(p) - len(q) + 1
    for i in range(steps):
        f = rem[i] / q[0]
        quot.append(f)
        for j, c in enumerate(q):
            rem[i + j] -= f * c
    return quot, _trim(rem[steps:]) or [ZERO]


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [_trim(list(p)), poly_deriv(p)]
    while seq[-1] != [ZERO]:
        _, r = poly_divmod(seq[-2], seq[-1])
        r = [-c for c in r]
        if _trim(r) == [ZERO]:
            break
        seq.append(_trim(r))
    return [s for s in seq if s != [ZERO]]


def _sign_changes(values: Iterable[Fraction]) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for x, y in zip(signs, signs[1:]) if x != y)


def count_roots_above(p: Poly, a) -> int:
    """Number of distinct real roots of p strictly greater than a."""
    p = _trim(list(p))
    a = frac(a)
    # divide out the root at a so the Sturm count is taken at a non-root
    while len(p) > 1 and poly_eval(p, a) == 0:
        p, _ = poly_divmod(p, [ONE, -a])
    if len(p) == 1:
        return 0
    seq = sturm_sequence(p)
    at_a = _sign_changes(poly_eval(s, a) for s in seq)
    at_inf = _sign_changes(s[0] for s in seq)
    return at_a - at_inf


class IncrementalSpan:
    """Grow the span of a family of vectors one vector at a time.

    Keeps a reduced echelon basis keyed by pivot position, so membership
    tests cost one sweep over the current basis.
    """

    def __init__(self, length: int):
        self.length = length
        self._rows: dict[int, list[Fraction]] = {}

    @property
    def dim(self) -> int:
        return len(self._rows)

    def _reduce(self, v: Sequence[Fraction]) -> list[Fraction]:
        w = [frac(x) for x in v]
        for p, row in self._rows.items():
            c = w[p]
            if c:
                w = [x - c * y for x, y in zip(w, row)]
        return w

    def add(self, v: Sequence[Fraction]) -> bool:
        """Insert v; return True if it enlarged the span."""
        w = self._reduce(v)
        p = next((i for i, x in enumerate(w) if x != 0), None)
        if p is None:
            return False
        inv = 1 / w[p]
        w = [x * inv for x in w]
        for q, row in self._rows.items():
            c = row[p]
            if c:
                self._rows[q] = [x - c * y for x, y in zip(row, w)]
        self._rows[p] = w
        return True

    def contains(self, v: Sequence[Fraction]) -> bool:
        return all(x == 0 for x in self._reduce(v))


def coordinates(basis: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    """Coefficients of v in the given independent family (v must lie in its span)."""
    k = len(basis)
    n = len(v)
    aug = tuple(tuple(basis[c][r] for c in range(k)) + (frac(v[r]),) for r in range(n))
    red, pivots = rref(aug)
    if k in pivots:
        raise ValueError("vector is not in the span")
    out = [ZERO] * k
    for row_idx, pc in enumerate(pivots):
        out[pc] = red[row_idx][k]
    return tuple(out)
