"""Independent reference computations used to pin expected test values.

Nothing here imports from the package internals beyond the Partition type;
each oracle recomputes its target through a different formula than the
implementation under test.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from toda_crystal import Partition


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n) by the Euler pentagonal-number recurrence."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > n and g2 > n:
            break
        sign = -1 if k % 2 == 0 else 1
        total += sign * (partition_count(n - g1) + partition_count(n - g2))
        k += 1
    return total


def kappa_by_cells(mu: Partition) -> int:
    """kappa as twice the total content sum over diagram cells."""
    return 2 * sum(j - i for i, j in mu.cells())


def hooks_by_grid(mu: Partition) -> tuple[int, ...]:
    """Hook lengths from an explicit boolean Young diagram."""
    rows = list(mu.parts)
    hooks = []
    for i, m in enumerate(rows):
        for j in range(m):
            arm = m - j - 1
            leg = sum(1 for r in rows[i + 1:] if r > j)
            hooks.append(arm + leg + 1)
    return tuple(sorted(hooks, reverse=True))


def exact_det(matrix: list[list[Fraction]]) -> Fraction:
    """Determinant by fraction Gaussian elimination with row swaps."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] for row in matrix]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                factor = a[r][col] * inv
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return det


def h_principal(n: int, p: Fraction) -> Fraction:
    """Complete homogeneous h_n at the alphabet (p, p^3, p^5, ...):
    geometric tails sum to p^n / prod_{j<=n} (1 - p^{2j})."""
    if n < 0:
        return Fraction(0)
    out = Fraction(p) ** n
    for j in range(1, n + 1):
        out /= 1 - Fraction(p) ** (2 * j)
    return out


def schur_jacobi_trudi(mu: Partition, p: Fraction) -> Fraction:
    """Principal specialization via det(h_{mu_i - i + j})."""
    ell = len(mu.parts)
    if ell == 0:
        return Fraction(1)
    mat = [[h_principal(mu.parts[i] - (i + 1) + (j + 1), p) for j in range(ell)]
           for i in range(ell)]
    return exact_det(mat)
