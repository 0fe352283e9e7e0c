"""Stationary distributions by three independent routes.

* solve_exact    -- fraction Gaussian elimination on the balance equations
* power_iteration -- float fixed-point iteration of v <- v*P
* simulate       -- seeded Monte Carlo trajectory counting

plus exact matrix powers for the n-step transition law.  The three routes
share no code, so agreement between them is a meaningful check.
"""

from __future__ import annotations

import json
import random
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .chains import StochasticMatrix

__all__ = [
    "SolverError",
    "ConvergenceError",
    "SimulationResult",
    "solve_exact",
    "power_iteration",
    "n_step",
    "simulate",
    "vector_to_csv",
    "exact_vector_to_json",
    "float_vector_to_json",
]

RNG_ALGORITHM = "mt19937"


class SolverError(Exception):
    """The balance system is singular: the chain is reducible or periodic."""


class ConvergenceError(Exception):
    """Power iteration ran out of iterations; carries the last iterate."""

    def __init__(self, message: str, vector: list[float], iterations: int):
        super().__init__(message)
        self.vector = vector
        self.iterations = iterations


@dataclass(frozen=True)
class SimulationResult:
    """Visit counts of one seeded trajectory and their frequencies."""

    visits: tuple[int, ...]
    steps: int
    seed: int
    empirical: tuple[float, ...]
    rng: str = RNG_ALGORITHM


def solve_exact(m: StochasticMatrix) -> list[Fraction]:
    """Unique probability vector with pi*P == pi, as exact fractions.

    Builds the transposed balance system (P^T - I) pi = 0, replaces the
    first (redundant) equation with the normalization sum(pi) == 1, and
    runs fraction Gaussian elimination with partial pivoting on magnitude.
    """
    n = m.n
    one = Fraction(1)
    zero = Fraction(0)
    a = [[m.entry(i, j) - (one if i == j else zero) for i in range(n)] for j in range(n)]
    rhs = [zero] * n
    a[0] = [one] * n
    rhs[0] = one

    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(a[r][col]))
        if a[pivot][col] == 0:
            raise SolverError(
                "singular balance system; the chain is not irreducible/aperiodic"
            )
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            rhs[col], rhs[pivot] = rhs[pivot], rhs[col]
        pivot_row = a[col]
        for r in range(col + 1, n):
            factor = a[r][col] / pivot_row[col]
            if factor:
                row = a[r]
                for k in range(col, n):
                    row[k] -= factor * pivot_row[k]
                rhs[r] -= factor * rhs[col]

    pi = [zero] * n
    for r in range(n - 1, -1, -1):
        acc = rhs[r]
        row = a[r]
        for k in range(r + 1, n):
            acc -= row[k] * pi[k]
        pi[r] = acc / row[r]
    return pi


def power_iteration(
    m: StochasticMatrix, tol: float = 1e-12, max_iter: int = 10**6
) -> tuple[list[float], int]:
    """Iterate v <- v*P from the uniform vector until the L1 change < tol."""
    if tol <= 0:
        raise ValueError(f"tol must be > 0, got {tol}")
    if max_iter < 1:
        raise ValueError(f"max_iter must be >= 1, got {max_iter}")
    n = m.n
    rows = [[float(x) for x in m.row(i)] for i in range(n)]
    v = [1.0 / n] * n
    for iteration in range(1, max_iter + 1):
        w = [0.0] * n
        for i, weight in enumerate(v):
            if weight:
                row = rows[i]
                for j in range(n):
                    w[j] += weight * row[j]
        delta = sum(abs(w[j] - v[j]) for j in range(n))
        v = w
        if delta < tol:
            return v, iteration
    raise ConvergenceError(
        f"no convergence within {max_iter} iterations (tol={tol})", v, max_iter
    )


def _mat_mul(x: list[list[Fraction]], y: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(x)
    out = []
    for i in range(n):
        xi = x[i]
        row = [Fraction(0)] * n
        for k in range(n):
            xik = xi[k]
            if xik:
                yk = y[k]
                for j in range(n):
                    if yk[j]:
                        row[j] += xik * yk[j]
        out.append(row)
    return out


def n_step(m: StochasticMatrix, n: int) -> StochasticMatrix:
    """Exact n-th matrix power (square-and-multiply); rows stay stochastic."""
    if n < 1:
        raise ValueError(f"exponent must be >= 1, got {n}")
    base = [list(m.row(i)) for i in range(m.n)]
    result: list[list[Fraction]] | None = None
    e = n
    while e:
        if e & 1:
            result = base if result is None else _mat_mul(result, base)
        e >>= 1
        if e:
            base = _mat_mul(base, base)
    label = f"pow({m.label},{n})" if m.label else ""
    return StochasticMatrix.from_rows(result, label=label)


def simulate(
    m: StochasticMatrix, steps: int, seed: int, start: int = 0
) -> SimulationResult:
    """Run one seeded trajectory and count visits after each transition."""
    n = m.n
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    if not 0 <= start < n:
        raise ValueError(f"start state {start} outside 0..{n - 1}")
    cumulative = []
    for i in range(n):
        acc = 0.0
        cum = []
        for x in m.row(i):
            acc += float(x)
            cum.append(acc)
        cum[-1] = 1.0  # guard against float drift at the top end
        cumulative.append(cum)
    rng = random.Random(seed)
    draw = rng.random
    visits = [0] * n
    state = start
    for _ in range(steps):
        state = bisect_right(cumulative[state], draw())
        visits[state] += 1
    empirical = tuple(v / steps for v in visits)
    return SimulationResult(
        visits=tuple(visits), steps=steps, seed=seed, empirical=empirical
    )


def vector_to_csv(values: list) -> str:
    """One probability per line; fractions as num/den, floats as repr."""
    return "\n".join(str(x) if isinstance(x, Fraction) else repr(x) for x in values)


def exact_vector_to_json(pi: list[Fraction]) -> str:
    return json.dumps({"pi": [str(x) for x in pi]})


def float_vector_to_json(pi: list[float], tol: float) -> str:
    return json.dumps({"pi": list(pi), "tol": tol})
