"""Balancing-family integer sequences and the identities connecting them.

A balancing number is a natural number N for which 8*N**2 + 1 is a perfect
square; the square roots of those discriminants are the Lucas-balancing
numbers.  Cobalancing numbers satisfy the shifted condition
8*N**2 + 8*N + 1 = square.  All of these, and the Pell numbers, come out of
one second-order recurrence engine with exact arbitrary-precision integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

__all__ = [
    "RecurrenceSpec",
    "SequenceKind",
    "BALANCING",
    "LUCAS_BALANCING",
    "COBALANCING",
    "LUCAS_COBALANCING",
    "PELL",
    "NAMED_KINDS",
    "balancing_like",
    "term",
    "sequence",
    "integer_sqrt",
    "is_balancing",
    "is_cobalancing",
    "check_sum_identity",
    "check_pell_links",
    "balancing_matrix_power",
]


@dataclass(frozen=True)
class RecurrenceSpec:
    """Engine parameters for x[k+1] = coeff*x[k] + back*x[k-1] + shift.

    ``back`` is -1 for every balancing-type sequence and +1 for Pell, so a
    single signed engine covers both recurrence shapes.
    """

    coeff: int
    shift: int
    x0: int
    x1: int
    back: int = -1


@dataclass(frozen=True)
class SequenceKind:
    """A named sequence together with the recurrence that generates it."""

    name: str
    recurrence: RecurrenceSpec


BALANCING = SequenceKind("balancing", RecurrenceSpec(6, 0, 0, 1))
LUCAS_BALANCING = SequenceKind("lucas-balancing", RecurrenceSpec(6, 0, 1, 3))
COBALANCING = SequenceKind("cobalancing", RecurrenceSpec(6, 2, 0, 0))
LUCAS_COBALANCING = SequenceKind("lucas-cobalancing", RecurrenceSpec(6, 0, 1, 7))
PELL = SequenceKind("pell", RecurrenceSpec(2, 0, 0, 1, back=1))

NAMED_KINDS = {
    kind.name: kind
    for kind in (BALANCING, LUCAS_BALANCING, COBALANCING, LUCAS_COBALANCING, PELL)
}


def balancing_like(a: int) -> SequenceKind:
    """Sequence x[k+1] = a*x[k] - x[k-1] with x0=0, x1=1 for a fixed a >= 2.

    a=2 gives the natural numbers, a=3 the even-indexed Fibonacci numbers,
    and a=6 the balancing numbers.
    """
    if a < 2:
        raise ValueError(f"multiplier must be >= 2, got {a}")
    return SequenceKind(f"balancing-like({a})", RecurrenceSpec(a, 0, 0, 1))


def term(kind: SequenceKind, n: int) -> int:
    """n-th term of the sequence, 0-indexed."""
    if n < 0:
        raise ValueError(f"index must be >= 0, got {n}")
    r = kind.recurrence
    if n == 0:
        return r.x0
    prev, cur = r.x0, r.x1
    for _ in range(n - 1):
        prev, cur = cur, r.coeff * cur + r.back * prev + r.shift
    return cur


def sequence(kind: SequenceKind, count: int) -> list[int]:
    """First ``count`` terms, starting at index 0."""
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    r = kind.recurrence
    out: list[int] = []
    prev, cur = r.x0, r.x1
    for _ in range(count):
        out.append(prev)
        prev, cur = cur, r.coeff * cur + r.back * prev + r.shift
    return out


def integer_sqrt(n: int) -> tuple[int, bool]:
    """Floor square root and an exactness flag: (isqrt(n), isqrt(n)**2 == n)."""
    if n < 0:
        raise ValueError(f"square root of negative integer {n}")
    root = isqrt(n)
    return root, root * root == n


def is_balancing(n: int) -> tuple[bool, int | None]:
    """Whether 8*n**2 + 1 is a perfect square; the root is the witness."""
    if n < 1:
        raise ValueError(f"argument must be >= 1, got {n}")
    root, exact = integer_sqrt(8 * n * n + 1)
    return (True, root) if exact else (False, None)


def is_cobalancing(n: int) -> tuple[bool, int | None]:
    """Whether 8*n**2 + 8*n + 1 is a perfect square; the root is the witness."""
    if n < 0:
        raise ValueError(f"argument must be >= 0, got {n}")
    root, exact = integer_sqrt(8 * n * n + 8 * n + 1)
    return (True, root) if exact else (False, None)


def check_sum_identity(n: int) -> bool:
    """True iff twice the sum of the first n-1 balancing numbers equals b[n]."""
    if n < 1:
        raise ValueError(f"index must be >= 1, got {n}")
    total = sum(sequence(BALANCING, n))
    return 2 * total == term(COBALANCING, n)


def check_pell_links(n: int) -> tuple[bool, bool]:
    """Check P[2n] == 2*B[n] and P[2n+1] == B[n+1] - B[n]."""
    if n < 0:
        raise ValueError(f"index must be >= 0, got {n}")
    b_n = term(BALANCING, n)
    b_next = term(BALANCING, n + 1)
    even_ok = term(PELL, 2 * n) == 2 * b_n
    odd_ok = term(PELL, 2 * n + 1) == b_next - b_n
    return even_ok, odd_ok


Matrix2 = tuple[tuple[int, int], tuple[int, int]]

_BALANCING_BASE: Matrix2 = ((6, 1), (-1, 0))


def _mul2(x: Matrix2, y: Matrix2) -> Matrix2:
    return (
        (x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]),
        (x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]),
    )


def balancing_matrix_power(n: int) -> Matrix2:
    """n-th power of ((6, 1), (-1, 0)) by repeated multiplication.

    The result carries consecutive balancing numbers:
    ((B[n+1], B[n]), (-B[n], -B[n-1])).
    """
    if n < 1:
        raise ValueError(f"exponent must be >= 1, got {n}")
    out = _BALANCING_BASE
    for _ in range(n - 1):
        out = _mul2(out, _BALANCING_BASE)
    return out
