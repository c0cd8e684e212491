"""Closed-form query bounds, in exact integer arithmetic.

Half-integer coefficients are carried as numerators over 2, so every ceiling
is an integer ceiling division.
"""

from __future__ import annotations

import enum


class BoundName(enum.Enum):
    POHL_MAXMIN = "pohl"
    RGL_MAX = "rgl_max"
    THM1_MAXMIN_LOWER = "thm1_lower"
    COROLLARY_2K_PLUS_1 = "corollary"


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def pohl(n: int) -> int:
    """Optimal error-free max+min comparisons: ceil(3n/2) - 2."""
    if n < 2:
        raise ValueError(f"pohl bound needs n >= 2, got {n}")
    return _ceil_div(3 * n, 2) - 2


def rgl_max(n: int, k: int) -> int:
    """(k+1)n - 1 comparisons find the maximum with k lies; 0 for a singleton."""
    if n < 1 or k < 0:
        raise ValueError(f"need n >= 1 and k >= 0, got n={n}, k={k}")
    if n == 1:
        return 0
    return (k + 1) * n - 1


def corollary(k: int) -> int:
    """Any non-trivial target needs at least 2k+1 questions."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return 2 * k + 1


def thm1_lower(n: int, k: int) -> int:
    """ceil((k + 3/2)(n - 1) - 1/2), the max+min lower bound with k lies."""
    if n < 2 or k < 0:
        raise ValueError(f"need n >= 2 and k >= 0, got n={n}, k={k}")
    return _ceil_div((2 * k + 3) * (n - 1) - 1, 2)


def thm1_identity_rhs(n: int, k: int) -> int:
    """ceil((k + 3/2) n) - k - 2."""
    return _ceil_div((2 * k + 3) * n, 2) - k - 2


def thm1_identity_check(n: int, k: int) -> bool:
    return thm1_lower(n, k) == thm1_identity_rhs(n, k)


def bound(name: BoundName, n: int, k: int) -> int:
    if name is BoundName.POHL_MAXMIN:
        return pohl(n)
    if name is BoundName.RGL_MAX:
        return rgl_max(n, k)
    if name is BoundName.THM1_MAXMIN_LOWER:
        return thm1_lower(n, k)
    return corollary(k)


def bounds_table(n_max: int, k_max: int, n_min: int = 2) -> list[dict]:
    rows = []
    for n in range(n_min, n_max + 1):
        for k in range(k_max + 1):
            rows.append({
                "n": n,
                "k": k,
                "pohl": pohl(n),
                "rgl_max": rgl_max(n, k),
                "thm1_lower": thm1_lower(n, k),
                "identity_ok": thm1_identity_check(n, k),
            })
    return rows


def identity_audit(n_range=range(2, 51), k_range=range(0, 6)) -> list[tuple[int, int, int, int]]:
    """Every (n, k, lhs, rhs) where the two closed forms of the bound disagree."""
    return [
        (n, k, thm1_lower(n, k), thm1_identity_rhs(n, k))
        for n in n_range
        for k in k_range
        if not thm1_identity_check(n, k)
    ]
