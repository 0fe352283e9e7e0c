from fractions import Fraction

import pytest

from balchain.chains import (
    DENSE_LIMIT,
    ParameterError,
    StochasticMatrix,
    balancing_chain,
    balancing_chain_q,
    balancing_like_chain,
    balancing_like_chain_q,
    build,
    lucas_chain,
    lucas_chain_q,
    lucas_cobalancing_chain,
    matrix_from_json,
    matrix_to_csv,
    matrix_to_json,
    pell_ratio_chain,
    truncated_infinite_chain,
    truncated_infinite_chain_q,
    validate,
)

R = Fraction


def frac_rows(m):
    return [[str(x) for x in m.row(i)] for i in range(m.n)]


def all_families(n=8):
    return [
        balancing_chain(n),
        balancing_chain_q(n, R(1, 7)),
        pell_ratio_chain(n),
        lucas_chain(n),
        lucas_chain_q(n, R(1, 10)),
        lucas_cobalancing_chain(n),
        truncated_infinite_chain(n),
        truncated_infinite_chain_q(n, R(1, 9)),
        balancing_like_chain(n, 4),
        balancing_like_chain_q(n, 4, R(1, 5)),
    ]


def test_balancing_3_rows():
    m = build(balancing_chain(3))
    assert frac_rows(m) == [
        ["5/6", "1/6", "0"],
        ["5/6", "0", "1/6"],
        ["5/6", "1/6", "0"],
    ]


def test_balancing_5_structure():
    m = build(balancing_chain(5))
    assert frac_rows(m) == [
        ["5/6", "1/6", "0", "0", "0"],
        ["5/6", "0", "1/6", "0", "0"],
        ["2/3", "1/6", "0", "1/6", "0"],
        ["2/3", "0", "1/6", "0", "1/6"],
        ["5/6", "0", "0", "1/6", "0"],
    ]


def test_lucas_3_rows():
    m = build(lucas_chain(3))
    assert frac_rows(m) == [
        ["5/6", "1/6", "0"],
        ["5/6", "0", "1/6"],
        ["1/3", "1/6", "1/2"],
    ]


def test_pell_ratio_last_row_reflects():
    m = build(pell_ratio_chain(3))
    assert frac_rows(m)[2] == ["2/3", "1/6", "1/6"]


def test_lucas_cobalancing_4_rows():
    m = build(lucas_cobalancing_chain(4))
    assert frac_rows(m) == [
        ["5/6", "1/6", "0", "0"],
        ["5/6", "0", "1/6", "0"],
        ["16/21", "1/6", "0", "1/14"],
        ["1/3", "0", "1/6", "1/2"],
    ]


def test_balancing_like_degenerate_multiplier():
    m = build(balancing_like_chain(4, 2))
    assert frac_rows(m)[2] == ["0", "1/2", "0", "1/2"]


def test_q_one_sixth_specializes_to_base():
    for n in (3, 5, 9):
        assert build(balancing_chain_q(n, R(1, 6))) == build(balancing_chain(n))
        assert build(lucas_chain_q(n, R(1, 6))) == build(lucas_chain(n))
        assert build(truncated_infinite_chain_q(n, R(1, 6))) == build(
            truncated_infinite_chain(n)
        )


def test_truncated_infinite_equals_pell_ratio():
    for n in (3, 7, 12):
        assert build(truncated_infinite_chain(n)) == build(pell_ratio_chain(n))


def test_multiplier_six_specializes_to_balancing():
    for n in (3, 6, 10):
        assert build(balancing_like_chain(n, 6)) == build(balancing_chain(n))
        assert build(balancing_like_chain_q(n, 6, R(1, 7))) == build(
            balancing_chain_q(n, R(1, 7))
        )


@pytest.mark.parametrize("family", all_families(), ids=lambda f: f.label)
def test_rows_are_exact_distributions(family):
    m = build(family)
    for i in range(m.n):
        row = m.row(i)
        assert sum(row) == 1
        assert all(x >= 0 for x in row)


@pytest.mark.parametrize("family", all_families(), ids=lambda f: f.label)
def test_built_families_validate(family):
    report = validate(build(family))
    assert report.ok
    assert report.irreducible
    assert report.period == 1


@pytest.mark.parametrize("family", all_families(), ids=lambda f: f.label)
def test_sparsity_pattern(family):
    m = build(family)
    assert m.nonzero_count() <= 4 * m.n
    for i in range(m.n):
        for j, value in enumerate(m.row(i)):
            if value:
                assert j == 0 or abs(i - j) <= 1


def test_size_minimums_rejected():
    with pytest.raises(ParameterError):
        balancing_chain(2)
    with pytest.raises(ParameterError):
        pell_ratio_chain(2)
    with pytest.raises(ParameterError):
        lucas_chain(2)
    with pytest.raises(ParameterError):
        lucas_cobalancing_chain(3)
    with pytest.raises(ParameterError):
        truncated_infinite_chain(2)
    with pytest.raises(ParameterError):
        balancing_like_chain(2, 5)


def test_q_bounds_rejected():
    for bad in (R(0), R(-1, 6), R(1, 5), R(7, 6)):
        with pytest.raises(ParameterError):
            balancing_chain_q(5, bad)
    with pytest.raises(ParameterError):
        balancing_like_chain_q(5, 4, R(1, 3))  # above 1/a
    balancing_like_chain_q(5, 4, R(1, 4))  # boundary value is allowed


def test_multiplier_bound_rejected():
    with pytest.raises(ParameterError):
        balancing_like_chain(5, 1)
    with pytest.raises(ParameterError):
        balancing_like_chain_q(5, 1, R(1, 2))


def test_dense_and_banded_layouts_agree():
    for family in all_families(6):
        dense = build(family, layout="dense")
        banded = build(family, layout="banded")
        assert dense.is_dense and not banded.is_dense
        assert dense == banded
        assert banded.rows() == dense.rows()


def test_layout_switches_at_dense_limit():
    assert build(balancing_chain(DENSE_LIMIT)).is_dense
    assert not build(balancing_chain(DENSE_LIMIT + 1)).is_dense


def test_unknown_layout_rejected():
    with pytest.raises(ParameterError):
        build(balancing_chain(4), layout="sparse")


def test_validate_reports_bad_row_sum():
    rows = [
        [R(1, 2), R(1, 2), R(0)],
        [R(1, 3), R(1, 3), R(1, 3)],
        [R(1, 6), R(1, 6), R(9, 14)],  # sums to 41/42
    ]
    report = validate(StochasticMatrix.from_rows(rows))
    assert [i for i, _ in report.bad_row_sums] == [2]
    assert report.bad_row_sums[0][1] == R(41, 42)
    assert not report.ok


def test_validate_reports_negative_entry():
    rows = [[R(3, 2), R(-1, 2)], [R(1, 2), R(1, 2)]]
    report = validate(StochasticMatrix.from_rows(rows))
    assert report.negative_entries == [(0, 1)]
    assert not report.ok


def test_validate_reports_unreachable_state():
    rows = [[R(1), R(0)], [R(1, 2), R(1, 2)]]
    report = validate(StochasticMatrix.from_rows(rows))
    assert report.unreachable == [1]
    assert not report.irreducible
    assert not report.ok


def test_validate_reports_periodicity():
    rows = [[R(0), R(1)], [R(1), R(0)]]
    report = validate(StochasticMatrix.from_rows(rows))
    assert report.irreducible
    assert report.period == 2
    assert report.aperiodic is False
    assert not report.ok


def test_csv_serialization():
    text = matrix_to_csv(build(balancing_chain(3)))
    assert text == "5/6,1/6,0\n5/6,0,1/6\n5/6,1/6,0"


def test_json_round_trip():
    for family in (balancing_chain(5), lucas_cobalancing_chain(6)):
        m = build(family)
        restored = matrix_from_json(matrix_to_json(m))
        assert restored == m
        assert restored.label == family.label


def test_json_round_trip_banded():
    m = build(balancing_chain(70))
    assert not m.is_dense
    assert matrix_from_json(matrix_to_json(m)) == m
    assert validate(m).ok


def test_entry_bounds_checked():
    m = build(balancing_chain(3))
    with pytest.raises(IndexError):
        m.entry(3, 0)
    with pytest.raises(IndexError):
        m.entry(0, -1)
