"""Small exact linear algebra over Z and Q, on lists of rows."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence


def rank(rows: Sequence[Sequence]) -> int:
    m = [[Fraction(v) for v in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rk = 0
    for col in range(ncols):
        piv = next((r for r in range(rk, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        for r in range(rk + 1, len(m)):
            if m[r][col] != 0:
                f = m[r][col] / m[rk][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rk])]
        rk += 1
        if rk == len(m):
            break
    return rk


def det_int(mat: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (Bareiss)."""
    n = len(mat)
    if n == 0:
        return 1
    m = [list(r) for r in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def solve_int(a: Sequence[Sequence[int]], b: Sequence[int]):
    """Solve the square integer system ``a x = b``.

    Returns ``(y, d)`` with ``x = y / d`` and ``d > 0``, or ``None`` when ``a`` is singular.
    Fraction-free Gauss-Jordan elimination.
    """
    n = len(a)
    m = [list(a[i]) + [b[i]] for i in range(n)]
    for k in range(n):
        piv = next((r for r in range(k, n) if m[r][k] != 0), None)
        if piv is None:
            return None
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
        pk = m[k]
        p = pk[k]
        for i in range(n):
            if i == k:
                continue
            row = m[i]
            f = row[k]
            if f:
                m[i] = [p * x - f * y for x, y in zip(row, pk)]
            elif p != 1:
                m[i] = [p * x for x in row]
        # keep entries small
        for i in range(n):
            g = 0
            for v in m[i]:
                g = gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                m[i] = [v // g for v in m[i]]
    # diagonal system now: m[i][i] * x_i = m[i][n]
    nums = [Fraction(m[i][n], m[i][i]) for i in range(n)]
    d = 1
    for q in nums:
        d = d * q.denominator // gcd(d, q.denominator)
    return [int(q * d) for q in nums], d


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of the right null space over Q."""
    m = [[Fraction(v) for v in r] for r in rows]
    pivots: list[int] = []
    rk = 0
    for col in range(ncols):
        piv = next((r for r in range(rk, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        inv = 1 / m[rk][col]
        m[rk] = [v * inv for v in m[rk]]
        for r in range(len(m)):
            if r != rk and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rk])]
        pivots.append(col)
        rk += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][fc]
        basis.append(v)
    return basis


def primitive(v: Sequence) -> tuple[int, ...]:
    """Smallest positive multiple of a rational vector that is integral and primitive."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def gcd_maximal_minors(mat: Sequence[Sequence[int]]) -> int:
    """gcd of the k x k minors of a k x n integer matrix (k <= n).

    Equals 1 exactly when the rows extend to a basis of Z^n, i.e. they form a
    basis of the saturated lattice they span.
    """
    k = len(mat)
    if k == 0:
        return 1
    n = len(mat[0])
    g = 0
    for cols in combinations(range(n), k):
        g = gcd(g, det_int([[row[c] for c in cols] for row in mat]))
        if g == 1:
            return 1
    return g
