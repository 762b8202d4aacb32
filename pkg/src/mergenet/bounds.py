"""Closed-form bounds on the extremal merging numbers."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class BoundTable:
    kind: str  # 'm' | 'mstar' | 'm3n'
    params: tuple[int, ...]
    lower: int
    upper: int
    formulas: tuple[str, str]

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("lower bound exceeds upper bound")

    def contains(self, value: int) -> bool:
        return self.lower <= value <= self.upper


def bound_m(m: int, n: int) -> BoundTable:
    """2mn-m-n+1 <= M(m,n) <= (m+n-1)+(mn-2)*floor((m+n-2)/2)."""
    if m < 1 or n < 1:
        raise ValueError("parameters must be positive")
    lower = 2 * m * n - m - n + 1
    upper = (m + n - 1) + (m * n - 2) * ((m + n - 2) // 2)
    return BoundTable("m", (m, n), lower, upper, ("2mn-m-n+1", "(m+n-1)+(mn-2)*floor((m+n-2)/2)"))


def bound_m_star(n: int) -> BoundTable:
    """(n-1)^2 <= M*(n,n) <= ceil(n/2)*(n^2-4n+5)."""
    if n < 1:
        raise ValueError("parameter must be positive")
    lower = (n - 1) ** 2
    upper = -(-n // 2) * (n * n - 4 * n + 5)
    return BoundTable("mstar", (n, n), lower, upper, ("(n-1)^2", "ceil(n/2)*(n^2-4n+5)"))


def upper_m_3n(n: int) -> int:
    """M(3,n) <= 14n."""
    if n < 1:
        raise ValueError("parameter must be positive")
    return 14 * n


def lower_m_nn_via_identical(mstar_nn: int, n: int) -> int:
    """M(n,n) >= 2*M*(n,n) + n (back-to-back concatenation)."""
    return 2 * mstar_nn + n


def lower_m_nn_via_shifted(mstar_up: int, mstar_down: int, n: int) -> int:
    """M(n,n) >= M*(n+1,n+1) + M*(n-1,n-1) + (n-1) (shifted concatenation)."""
    return mstar_up + mstar_down + (n - 1)


def lower_m_star_multi(mstar_values: list[int]) -> int:
    """M*(n1..nk) >= sum of M*(ni,ni) for i < k (chain concatenation)."""
    return sum(mstar_values)
