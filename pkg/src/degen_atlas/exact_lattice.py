"""Exact integer linear algebra for lattice computations.

Everything here works over plain Python integers (arbitrary precision), so
there is no floating point state anywhere.  Matrices are tuples of tuples of
ints, vectors are tuples of ints.  The three workhorses are

* row Hermite / Smith normal forms with unimodular transforms,
* saturated kernels and integer span membership, and
* complete short-vector enumeration in a negative definite Gram form
  (Fincke-Pohst style with an exact rational Cholesky decomposition).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Iterable, Optional, Sequence

Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


def mat(rows: Iterable[Iterable[int]]) -> Matrix:
    """Freeze an iterable of iterables of ints into a Matrix."""
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if m:
        assert all(len(row) == len(m[0]) for row in m), "ragged matrix"
    return m


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(ra, cb)) for cb in bt) for ra in a)


def matvec(m: Matrix, v: Vector) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def vecmat(v: Vector, m: Matrix) -> Vector:
    return tuple(sum(v[i] * m[i][j] for i in range(len(v))) for j in range(len(m[0])))


def add_vec(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def sub_vec(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def scale_vec(k: int, v: Vector) -> Vector:
    return tuple(k * x for x in v)


def content(v: Sequence[int]) -> int:
    """gcd of the entries (0 for the zero vector)."""
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def is_primitive(v: Sequence[int]) -> bool:
    return content(v) == 1


def det(m: Matrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(m)
    assert all(len(row) == n for row in m), "det of a non-square matrix"
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1] if n else 1


def _exgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def _gcd_transform(a: int, b: int) -> tuple[int, int, int, int, int]:
    """Unimodular 2x2 transform sending (a, b) to (g, 0) with g = gcd >= 0.

    Returns (g, x, y, u, v) for the matrix [[x, y], [u, v]].  When a already
    divides b the transform is elementary (y = 0), which is what makes the
    normal-form eliminations terminate.
    """
    if a != 0 and b % a == 0:
        s = 1 if a > 0 else -1
        return abs(a), s, 0, -(b // a) * s, s
    if a == 0:
        s = 1 if b > 0 else -1
        return abs(b), 0, s, 1, 0
    g, x, y = _exgcd(a, b)
    return g, x, y, -(b // g), a // g


def hnf(m: Matrix) -> tuple[Matrix, Matrix]:
    """Row Hermite normal form.

    Returns (H, U) with H = U @ m, U unimodular.  Pivots are positive, sit on
    a staircase of strictly increasing column indices, and the entries above
    each pivot are reduced into [0, pivot).
    """
    m = mat(m)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    h = [list(r) for r in m]
    u = [list(r) for r in identity(rows)]

    def rowop(i: int, j: int, a: int, b: int, c: int, d: int) -> None:
        # (row_i, row_j) <- (a*row_i + b*row_j, c*row_i + d*row_j); ad-bc = +-1
        h[i], h[j] = (
            [a * x + b * y for x, y in zip(h[i], h[j])],
            [c * x + d * y for x, y in zip(h[i], h[j])],
        )
        u[i], u[j] = (
            [a * x + b * y for x, y in zip(u[i], u[j])],
            [c * x + d * y for x, y in zip(u[i], u[j])],
        )

    pivot_row = 0
    for col in range(cols):
        pr = next((r for r in range(pivot_row, rows) if h[r][col] != 0), None)
        if pr is None:
            continue
        if pr != pivot_row:
            rowop(pivot_row, pr, 0, 1, 1, 0)
        for r in range(pivot_row + 1, rows):
            if h[r][col] == 0:
                continue
            _, x, y, p, q = _gcd_transform(h[pivot_row][col], h[r][col])
            rowop(pivot_row, r, x, y, p, q)
        if h[pivot_row][col] < 0:
            h[pivot_row] = [-x for x in h[pivot_row]]
            u[pivot_row] = [-x for x in u[pivot_row]]
        p = h[pivot_row][col]
        for r in range(pivot_row):
            q = h[r][col] // p
            if q:
                h[r] = [x - q * y for x, y in zip(h[r], h[pivot_row])]
                u[r] = [x - q * y for x, y in zip(u[r], u[pivot_row])]
        pivot_row += 1
        if pivot_row == rows:
            break
    return mat(h), mat(u)


def snf(m: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form.

    Returns (D, U, V) with D = U @ m @ V diagonal, d1 | d2 | ..., dk >= 0,
    and U, V unimodular.
    """
    m = mat(m)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    d = [list(r) for r in m]
    u = [list(r) for r in identity(rows)]
    v = [list(r) for r in identity(cols)]

    def rowop(i, j, a, b, c, e):
        d[i], d[j] = (
            [a * x + b * y for x, y in zip(d[i], d[j])],
            [c * x + e * y for x, y in zip(d[i], d[j])],
        )
        u[i], u[j] = (
            [a * x + b * y for x, y in zip(u[i], u[j])],
            [c * x + e * y for x, y in zip(u[i], u[j])],
        )

    def colop(i, j, a, b, c, e):
        for row in d:
            row[i], row[j] = a * row[i] + b * row[j], c * row[i] + e * row[j]
        for row in v:
            row[i], row[j] = a * row[i] + b * row[j], c * row[i] + e * row[j]

    def clear_position(k: int) -> None:
        # Make d[k][k] the gcd of row k / column k and zero out the rest.
        while True:
            pr = pc = None
            for i in range(k, rows):
                for j in range(k, cols):
                    if d[i][j] != 0:
                        pr, pc = i, j
                        break
                if pr is not None:
                    break
            if pr is None:
                return
            if pr != k:
                rowop(k, pr, 0, 1, 1, 0)
            if pc != k:
                colop(k, pc, 0, 1, 1, 0)
            dirty = True
            while dirty:
                dirty = False
                for i in range(k + 1, rows):
                    if d[i][k]:
                        _, x, y, p, q = _gcd_transform(d[k][k], d[i][k])
                        rowop(k, i, x, y, p, q)
                        dirty = True
                for j in range(k + 1, cols):
                    if d[k][j]:
                        _, x, y, p, q = _gcd_transform(d[k][k], d[k][j])
                        colop(k, j, x, y, p, q)
                        dirty = True
            # Divisibility: d[k][k] must divide everything below-right.
            pivot = d[k][k]
            bad = None
            for i in range(k + 1, rows):
                for j in range(k + 1, cols):
                    if d[i][j] % pivot:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                return
            rowop(k, bad, 1, 1, 0, 1)  # fold the offending row in and retry

    for k in range(min(rows, cols)):
        clear_position(k)
        if d[k][k] < 0:
            d[k] = [-x for x in d[k]]
            u[k] = [-x for x in u[k]]
    return mat(d), mat(u), mat(v)


def kernel_basis(m: Matrix) -> tuple[Vector, ...]:
    """Basis of the saturated integer kernel {v : m @ v = 0}.

    The basis is saturated: every integer solution is an integer combination
    of the returned vectors.
    """
    m = mat(m)
    if not m:
        return ()
    cols = len(m[0])
    d, _, v = snf(m)
    diag = [d[i][i] for i in range(min(len(d), cols))]
    free = [j for j in range(cols) if j >= len(diag) or diag[j] == 0]
    vt = transpose(v)  # columns of V
    return tuple(vt[j] for j in free)


def solve_integer(columns: Sequence[Vector], target: Vector) -> Optional[Vector]:
    """Integer coefficients c with sum c_i * columns_i = target, or None.

    Membership is tested over the integers, not the rationals.
    """
    if not columns:
        return () if all(x == 0 for x in target) else None
    n = len(target)
    assert all(len(c) == n for c in columns), "dimension mismatch"
    m = transpose(mat(columns))  # n x k, generators as columns
    d, u, v = snf(m)
    ut = matvec(u, target)
    k = len(columns)
    y = [0] * k
    for i in range(n):
        di = d[i][i] if i < min(n, k) else 0
        if di == 0:
            if ut[i] != 0:
                return None
        else:
            if ut[i] % di:
                return None
            y[i] = ut[i] // di
    c = matvec(v, tuple(y))
    return c


def solve_rational(columns: Sequence[Vector], target: Vector) -> bool:
    """True when target lies in the rational span of the columns."""
    if not columns:
        return all(x == 0 for x in target)
    stacked = mat(list(columns))
    return rank(stacked) == rank(mat(list(columns) + [list(target)]))


def in_span(target: Vector, generators: Sequence[Vector]) -> Optional[Vector]:
    """Integer span membership; returns the coefficient vector or None."""
    coeffs = solve_integer(list(generators), target)
    if coeffs is None:
        return None
    # Exactness guard: the certificate must re-expand to the target.
    acc = (0,) * len(target)
    for c, g in zip(coeffs, generators):
        acc = add_vec(acc, scale_vec(c, g))
    assert acc == tuple(target)
    return coeffs


def rank(m: Matrix) -> int:
    h, _ = hnf(m)
    return sum(1 for row in h if any(row))


def row_span_basis(vectors: Sequence[Vector]) -> tuple[Vector, ...]:
    """HNF basis of the lattice generated by the vectors (not saturated)."""
    if not vectors:
        return ()
    h, _ = hnf(mat(vectors))
    return tuple(row for row in h if any(row))


@dataclass(frozen=True)
class GramForm:
    """A symmetric integer bilinear form."""

    gram: Matrix

    def __post_init__(self) -> None:
        g = self.gram
        assert all(len(row) == len(g) for row in g), "gram must be square"
        assert g == transpose(g), "gram must be symmetric"

    @property
    def dim(self) -> int:
        return len(self.gram)

    def pairing(self, v: Vector, w: Vector) -> int:
        g = self.gram
        return sum(v[i] * sum(g[i][j] * w[j] for j in range(len(g))) for i in range(len(g)))

    def norm(self, v: Vector) -> int:
        return self.pairing(v, v)

    def is_negative_definite(self) -> bool:
        """Check via the leading principal minors of -gram."""
        neg = mat([[-x for x in row] for row in self.gram])
        for k in range(1, self.dim + 1):
            minor = det(mat([row[:k] for row in neg[:k]]))
            if minor <= 0:
                return False
        return True


@dataclass(frozen=True)
class Sublattice:
    """A finite-index-free sublattice of an ambient quadratic lattice.

    rows are basis vectors written in ambient coordinates.
    """

    ambient: GramForm
    rows: Matrix

    @property
    def rank(self) -> int:
        return len(self.rows)

    def gram(self) -> GramForm:
        g = tuple(
            tuple(self.ambient.pairing(a, b) for b in self.rows) for a in self.rows
        )
        return GramForm(g)

    def coordinates(self, v: Vector) -> Optional[Vector]:
        """Express an ambient vector in this basis (integer coordinates)."""
        return solve_integer(list(self.rows), v)


@dataclass(frozen=True)
class QuotientLattice:
    """S / Z*xi for an isotropic xi orthogonal to all of S.

    reps are coset representatives in ambient coordinates; the induced gram
    does not depend on the representative choice because xi pairs to zero
    with everything in S.
    """

    ambient: GramForm
    xi: Vector
    reps: Matrix
    gram: GramForm
    _project_mat: Matrix  # S-coordinates -> (xi-coordinate, quotient coords)
    _sub_rows: Matrix

    @property
    def rank(self) -> int:
        return len(self.reps)

    def project(self, v: Vector) -> Vector:
        """Quotient coordinates of an ambient vector lying in S."""
        c = solve_integer(list(self._sub_rows), v)
        if c is None:
            raise ValueError("vector does not lie in the sublattice")
        full = vecmat(c, self._project_mat)
        return full[1:]

    def lift(self, coords: Vector) -> Vector:
        """A coset representative in ambient coordinates."""
        acc = (0,) * len(self.reps[0])
        for c, r in zip(coords, self.reps):
            acc = add_vec(acc, scale_vec(c, r))
        return acc


def quotient_by_isotropic(sub: Sublattice, xi: Vector) -> QuotientLattice:
    """Quotient of a sublattice by an isotropic primitive vector.

    Requires xi in S, xi orthogonal to all of S, and xi primitive in S.
    """
    coords = sub.coordinates(xi)
    if coords is None:
        raise ValueError("xi does not lie in the sublattice")
    if not is_primitive(coords):
        raise ValueError("xi is not primitive in the sublattice")
    for row in sub.rows:
        if sub.ambient.pairing(xi, row) != 0:
            raise ValueError("xi is not isotropic on the sublattice")

    # Complete +-coords to a basis: snf([coords]) gives coords @ V = (+-1,0,..),
    # so the rows of V^-1 start with +-coords and form a unimodular matrix.
    k = sub.rank
    _, _, v = snf(mat([coords]))
    first = vecmat(coords, v)
    assert first[0] in (1, -1) and all(x == 0 for x in first[1:])
    w, wu = hnf(v)  # wu = V^-1 since V is unimodular and hnf(V) = I
    assert w == identity(k)
    basis_rows = wu
    if first[0] == -1:
        basis_rows = mat([[-x for x in basis_rows[0]]] + [list(r) for r in basis_rows[1:]])
    assert tuple(basis_rows[0]) == coords

    new_rows = matmul(basis_rows, sub.rows)  # rows in ambient; row 0 = xi
    assert new_rows[0] == tuple(xi)
    reps = new_rows[1:]
    gram = GramForm(
        tuple(tuple(sub.ambient.pairing(a, b) for b in reps) for a in reps)
    )
    # v = c @ sub.rows = n @ (basis_rows @ sub.rows) forces n = c @ basis_rows^-1.
    _, inv = hnf(basis_rows)  # hnf of a unimodular matrix is I, so U = inverse
    project_mat = inv
    return QuotientLattice(
        ambient=sub.ambient,
        xi=xi,
        reps=reps,
        gram=gram,
        _project_mat=project_mat,
        _sub_rows=sub.rows,
    )


def orthogonal_complement(g: GramForm, vectors: Sequence[Vector]) -> tuple[Vector, ...]:
    """Saturated basis of {w : (w, v) = 0 for all given v}."""
    if not vectors:
        return tuple(identity(g.dim))
    pairing_rows = mat([matvec(g.gram, v) for v in vectors])
    return kernel_basis(pairing_rows)


def enumerate_short(g: GramForm, bound: int) -> tuple[Vector, ...]:
    """All v (one per antipodal pair) with -bound <= (v, v) < 0.

    g must be negative definite.  The search is a depth-first Fincke-Pohst
    walk over the exact rational Cholesky decomposition of -gram, with the
    rationals cleared to integers once up front, so the enumeration is both
    exact and complete.  Vectors are canonicalized so their first nonzero
    coordinate is positive and returned sorted.
    """
    if bound < 1:
        raise ValueError("bound must be a positive integer")
    if not g.is_negative_definite():
        raise ValueError("form is not negative definite")
    n = g.dim
    if n == 0:
        return ()
    q = [[Fraction(-g.gram[i][j]) for j in range(n)] for i in range(n)]
    # Cholesky-style reduction: Q(x) = sum_i A[i] * (x_i + sum_{j>i} C[i][j] x_j)^2
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] = q[k][l] - q[k][i] * q[i][l]
    a = [q[i][i] for i in range(n)]
    assert all(x > 0 for x in a)
    c = [[q[i][j] for j in range(n)] for i in range(n)]

    # Clear denominators: per level i let L_i = lcm of den(C[i][j]); then
    # u_i = sum_j Cint[i][j] x_j is an integer and the term is
    # A_i (L_i x_i + u_i)^2 / L_i^2.  Scale the budget by M = lcm(b_i L_i^2).
    lden = [1] * n
    for i in range(n):
        for j in range(i + 1, n):
            lden[i] = lcm(lden[i], c[i][j].denominator)
    cint = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            cint[i][j] = int(c[i][j] * lden[i])
    m_scale = 1
    for i in range(n):
        m_scale = lcm(m_scale, a[i].denominator * lden[i] * lden[i])
    kcoef = [int(Fraction(m_scale) * a[i] / (lden[i] * lden[i])) for i in range(n)]

    found: list[Vector] = []
    x = [0] * n
    u = [[0] * n for _ in range(n + 1)]  # u[level][i]: center accumulators

    def dfs(level: int, budget: int, all_zero_above: bool) -> None:
        if level < 0:
            if not all_zero_above:
                v = tuple(x)
                norm = -g.norm(v)
                assert 1 <= norm <= bound
                found.append(v)
            return
        li = lden[level]
        ui = u[level + 1][level]
        r = isqrt(budget // kcoef[level])  # |li*xi + ui| <= r, exact
        lo = -((r + ui) // li)  # ceil((-r - ui)/li)
        hi = (r - ui) // li  # floor((r - ui)/li)
        if all_zero_above and lo < 0:
            lo = 0  # one vector per antipodal pair
        row = u[level + 1]
        dst = u[level]
        for xi in range(lo, hi + 1):
            t = li * xi + ui
            used = kcoef[level] * t * t
            if used > budget:
                continue
            x[level] = xi
            for i in range(level):
                dst[i] = row[i] + cint[i][level] * xi
            dfs(level - 1, budget - used, all_zero_above and xi == 0)
        x[level] = 0

    dfs(n - 1, m_scale * bound, True)

    def canonical(v: Vector) -> Vector:
        for x0 in v:
            if x0 != 0:
                return v if x0 > 0 else tuple(-y for y in v)
        return v

    return tuple(sorted(canonical(v) for v in found))
