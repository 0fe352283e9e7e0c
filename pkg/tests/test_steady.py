from fractions import Fraction

import pytest

from balchain.chains import (
    StochasticMatrix,
    balancing_chain,
    balancing_like_chain,
    build,
    lucas_chain,
    lucas_chain_q,
    lucas_cobalancing_chain,
    pell_ratio_chain,
)
from balchain.steady import (
    ConvergenceError,
    SolverError,
    n_step,
    power_iteration,
    simulate,
    solve_exact,
)

R = Fraction


def symmetric_two_state():
    half = R(1, 2)
    return StochasticMatrix.from_rows([[half, half], [half, half]])


def linf(float_vec, exact_vec):
    return max(abs(a - float(b)) for a, b in zip(float_vec, exact_vec))


SOLVE_CASES = [
    balancing_chain(3),
    balancing_chain(9),
    pell_ratio_chain(7),
    lucas_chain(6),
    lucas_cobalancing_chain(5),
    balancing_like_chain(8, 3),
    balancing_like_chain(6, 2),
]


def test_solve_exact_frozen_vectors():
    # hand derivation for size 3: pi2 = k, pi1 = 6k, pi0 = 35k, k = 1/42
    assert solve_exact(build(balancing_chain(3))) == [R(5, 6), R(1, 7), R(1, 42)]
    # lucas variant: proportions (17, 3, 1), total 21
    assert solve_exact(build(lucas_chain(3))) == [R(17, 21), R(1, 7), R(1, 21)]
    assert solve_exact(symmetric_two_state()) == [R(1, 2), R(1, 2)]


@pytest.mark.parametrize("family", SOLVE_CASES, ids=lambda f: f.label)
def test_solution_is_an_exact_fixed_point(family):
    m = build(family)
    pi = solve_exact(m)
    assert sum(pi) == 1
    assert all(p > 0 for p in pi)
    for j in range(m.n):
        assert sum(pi[i] * m.entry(i, j) for i in range(m.n)) == pi[j]


@pytest.mark.parametrize(
    "family,ratio",
    [
        (balancing_chain(8), 6),
        (pell_ratio_chain(8), 5),
        (lucas_chain(8), 3),
        (lucas_cobalancing_chain(8), 7),
        (balancing_like_chain(8, 4), 4),
        (balancing_like_chain(8, 10), 10),
    ],
    ids=lambda v: str(v),
)
def test_boundary_balance_ratio(family, ratio):
    pi = solve_exact(build(family))
    assert pi[-2] == ratio * pi[-1]


def test_interior_balance_recursion():
    n = 10
    pi = solve_exact(build(balancing_chain(n)))
    for i in range(1, n - 1):
        assert pi[i - 1] == 6 * pi[i] - pi[i + 1]


def test_solver_rejects_reducible_chain():
    identity = StochasticMatrix.from_rows([[R(1), R(0)], [R(0), R(1)]])
    with pytest.raises(SolverError):
        solve_exact(identity)


def test_dense_and_banded_solves_are_identical():
    for family in (balancing_chain(9), lucas_cobalancing_chain(9)):
        dense = solve_exact(build(family, layout="dense"))
        banded = solve_exact(build(family, layout="banded"))
        assert dense == banded


def test_power_iteration_matches_exact():
    m = build(balancing_chain(5))
    vector, iterations = power_iteration(m, tol=1e-12)
    assert iterations < 10**4
    assert linf(vector, solve_exact(m)) < 1e-10


def test_power_iteration_symmetric_two_state():
    vector, iterations = power_iteration(symmetric_two_state(), tol=1e-12)
    assert iterations <= 2
    assert vector == [0.5, 0.5]


def test_power_iteration_slow_chain_still_matches_base():
    # small q slows mixing but cannot change the stationary vector
    exact = solve_exact(build(lucas_chain(8)))
    vector, _ = power_iteration(build(lucas_chain_q(8, R(1, 100))), tol=1e-12)
    assert linf(vector, exact) < 1e-10


def test_power_iteration_reports_non_convergence():
    m = build(lucas_chain_q(8, R(1, 100)))
    with pytest.raises(ConvergenceError) as excinfo:
        power_iteration(m, tol=1e-12, max_iter=3)
    assert excinfo.value.iterations == 3
    assert len(excinfo.value.vector) == 8
    assert abs(sum(excinfo.value.vector) - 1.0) < 1e-9


def test_power_iteration_parameter_checks():
    m = build(balancing_chain(3))
    with pytest.raises(ValueError):
        power_iteration(m, tol=0.0)
    with pytest.raises(ValueError):
        power_iteration(m, max_iter=0)


def test_n_step_one_is_the_matrix_itself():
    m = build(balancing_chain(4))
    assert n_step(m, 1) == m
    with pytest.raises(ValueError):
        n_step(m, 0)


def test_n_step_rows_stay_stochastic():
    m = build(balancing_chain(3))
    squared = n_step(m, 2)
    for i in range(3):
        row = squared.row(i)
        assert sum(row) == 1
        assert all(x >= 0 for x in row)
    # direct check of one product entry
    assert squared.entry(0, 0) == sum(
        m.entry(0, k) * m.entry(k, 0) for k in range(3)
    )


def test_n_step_converges_to_stationary_rows():
    m = build(balancing_chain(3))
    pi = solve_exact(m)
    p64 = n_step(m, 64)
    for i in range(3):
        assert linf([float(x) for x in p64.row(i)], pi) < 1e-9


def test_n_step_powers_of_two_converge_geometrically():
    m = build(lucas_chain(5))
    pi = solve_exact(m)
    distances = []
    for k in range(1, 7):
        p = n_step(m, 2**k)
        distances.append(max(abs(p.entry(0, j) - pi[j]) for j in range(5)))
    assert all(later < earlier for earlier, later in zip(distances, distances[1:]))
    assert float(distances[-1]) < 1e-9


def test_simulate_is_deterministic():
    m = build(balancing_chain(4))
    first = simulate(m, steps=2000, seed=7)
    second = simulate(m, steps=2000, seed=7)
    assert first == second
    different = simulate(m, steps=2000, seed=8)
    assert first.visits != different.visits


def test_simulate_single_step():
    m = build(balancing_chain(4))
    result = simulate(m, steps=1, seed=3)
    assert sum(result.visits) == 1
    assert result.steps == 1
    assert result.rng == "mt19937"


def test_simulate_counts_and_frequencies():
    m = build(balancing_chain(4))
    result = simulate(m, steps=5000, seed=11, start=2)
    assert sum(result.visits) == 5000
    assert result.empirical == tuple(v / 5000 for v in result.visits)


def test_simulate_converges_statistically():
    m = build(balancing_chain(4))
    pi = solve_exact(m)
    for seed in (1, 2, 3):
        result = simulate(m, steps=10**6, seed=seed)
        assert linf(result.empirical, pi) < 0.01


def test_simulate_parameter_checks():
    m = build(balancing_chain(4))
    with pytest.raises(ValueError):
        simulate(m, steps=0, seed=1)
    with pytest.raises(ValueError):
        simulate(m, steps=10, seed=1, start=4)
