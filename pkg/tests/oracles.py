"""Independent brute-force oracles used to pin expected values.

These deliberately avoid the code paths they check: short vectors come from
an exhaustive coefficient box, determinants from permutation expansion, and
elementary divisors from gcds of minors.
"""

from fractions import Fraction
from itertools import combinations, permutations, product
from math import gcd, isqrt


def box_short_vectors(gram, bound):
    """All v (one per +-pair) with -bound <= v^T gram v < 0, by brute force.

    Coordinate boxes come from the diagonal of the inverse of -gram: any v
    with Q(v) <= bound has |v_i| <= sqrt(bound * (Q^-1)_ii).
    """
    n = len(gram)
    q = [[Fraction(-gram[i][j]) for j in range(n)] for i in range(n)]
    qinv = _invert(q)
    limits = []
    for i in range(n):
        r2 = Fraction(bound) * qinv[i][i]
        limits.append(isqrt((r2.numerator + r2.denominator - 1) // r2.denominator) + 1)
    out = []
    for v in product(*[range(-l, l + 1) for l in limits]):
        norm = -sum(v[i] * gram[i][j] * v[j] for i in range(n) for j in range(n))
        if 1 <= norm <= bound:
            for x in v:
                if x != 0:
                    if x > 0:
                        out.append(v)
                    break
    return sorted(out)


def _invert(a):
    n = len(a)
    m = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def perm_det(m):
    """Determinant by permutation expansion (tiny matrices only)."""
    n = len(m)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = 1
        for i in range(n):
            term *= m[i][perm[i]]
        total += sign * term
    return total


def minor_gcd_divisors(m):
    """Elementary divisors d1 | d2 | ... via gcds of k x k minors."""
    rows, cols = len(m), len(m[0])
    divisors = []
    prev = 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                sub = [[m[r][c] for c in cs] for r in rs]
                g = gcd(g, perm_det(sub))
        if g == 0:
            break
        divisors.append(g // prev)
        prev = g
    return divisors


def classical_root_count(letter, rank):
    """Number of roots (both signs) of an ADE root system."""
    if letter == "A":
        return rank * (rank + 1)
    if letter == "D":
        return 2 * rank * (rank - 1)
    return {6: 72, 7: 126, 8: 240}[rank]


def box_volume(gram, bound):
    """Number of candidate vectors the box oracle would scan."""
    n = len(gram)
    q = [[Fraction(-gram[i][j]) for j in range(n)] for i in range(n)]
    qinv = _invert(q)
    vol = 1
    for i in range(n):
        r2 = Fraction(bound) * qinv[i][i]
        vol *= 2 * (isqrt((r2.numerator + r2.denominator - 1) // r2.denominator) + 1) + 1
    return vol


def random_negative_definite(rng, n, entry_bound=4, max_box=200_000):
    """Random negative definite symmetric integer matrix, rejection sampled.

    Forms whose brute-force box at bound 4 would be too large to scan are
    rejected so the oracle stays exhaustive yet affordable.
    """
    while True:
        g = [[0] * n for _ in range(n)]
        for i in range(n):
            g[i][i] = -rng.randint(1, entry_bound)
            for j in range(i + 1, n):
                g[i][j] = g[j][i] = rng.randint(-2, 2)
        if _is_neg_def(g) and box_volume(g, 4) <= max_box:
            return [tuple(r) for r in g]


def _is_neg_def(g):
    n = len(g)
    neg = [[-x for x in row] for row in g]
    for k in range(1, n + 1):
        if perm_det([row[:k] for row in neg[:k]]) <= 0:
            return False
    return True


def signature(gram):
    """(positives, negatives) of a nondegenerate symmetric integer form.

    Symmetric Gaussian congruence diagonalization over the rationals; when
    every remaining diagonal entry is zero, a hyperbolic pair is split by a
    basis shear first.
    """
    n = len(gram)
    a = [[Fraction(gram[i][j]) for j in range(n)] for i in range(n)]
    pos = neg = 0
    live = list(range(n))
    while live:
        piv = next((i for i in live if a[i][i] != 0), None)
        if piv is None:
            i = live[0]
            j = next(k for k in live if a[i][k] != 0)
            # e_i <- e_i + e_j makes the diagonal entry 2 a_ij != 0
            for k in range(n):
                a[i][k] = a[i][k] + a[j][k]
            for k in range(n):
                a[k][i] = a[k][i] + a[k][j]
            piv = i
        d = a[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        live.remove(piv)
        for i in live:
            f = a[i][piv] / d
            if f:
                for k in range(n):
                    a[i][k] -= f * a[piv][k]
                for k in range(n):
                    a[k][i] -= f * a[k][piv]
    return pos, neg
