"""The infinite family C(F(2i+2)F(2i+3), F(2i)F(2i+3)) = C(same - 1, same + 1)."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import ConfigurationError
from ..exact_arith import binom_exact


def fibonacci(index: int) -> int:
    """F(0) = 0, F(1) = 1, F(i+1) = F(i) + F(i-1)."""
    a, b = 0, 1
    for _ in range(index):
        a, b = b, a + b
    return a


@dataclass(frozen=True)
class FibonacciFamilyMember:
    i: int
    n: int
    k: int

    @property
    def m(self) -> int:
        return self.n - 1

    @property
    def l(self) -> int:
        return self.k + 1

    @property
    def criterion_holds(self) -> bool:
        # C(n, k) = C(n-1, k+1)  <=>  n(k+1) = (n-k)(n-k-1)
        return self.n * (self.k + 1) == (self.n - self.k) * (self.n - self.k - 1)

    def quadruple(self) -> tuple[int, int, int, int]:
        return self.n, self.k, self.m, self.l


def fibonacci_member(i: int) -> FibonacciFamilyMember:
    if i < 1:
        raise ConfigurationError(f"family index must be at least 1, got {i}")
    f = fibonacci(2 * i + 3)
    return FibonacciFamilyMember(i, fibonacci(2 * i + 2) * f, fibonacci(2 * i) * f)


@dataclass(frozen=True)
class FibonacciReport:
    member: FibonacciFamilyMember
    criterion: bool
    exact_checked: bool
    exact_equal: bool | None = None
    value: int | None = None

    @property
    def ok(self) -> bool:
        return self.criterion and self.exact_equal is not False


def verify_fibonacci(i: int, exact: bool = False) -> FibonacciReport:
    member = fibonacci_member(i)
    if not exact:
        return FibonacciReport(member, member.criterion_holds, exact_checked=False)
    left = binom_exact(member.n, member.k)
    right = binom_exact(member.m, member.l)
    return FibonacciReport(member, member.criterion_holds, True, left == right, left)


__all__ = [
    "FibonacciFamilyMember",
    "FibonacciReport",
    "fibonacci",
    "fibonacci_member",
    "verify_fibonacci",
]
