import pytest

from tridet import families, reduction
from tridet.matrix import RingMatrix, det_bareiss, identity, matmul
from tridet.reduction import (
    ReductionError,
    build_c,
    chain_matrix,
    delete_unique_pair,
    deletion_step,
    reduce_and_evaluate,
)


def rows(m):
    return [list(r) for r in m.rows]


def test_c_at_three():
    assert rows(build_c(3)) == [[1, 0, 1], [0, 0, -1], [1, -1, 0]]


def test_c_determinant_and_pattern():
    assert det_bareiss(build_c(4)) == 1
    assert build_c(9) == reduction.c_pattern(9)


@pytest.mark.parametrize("n", range(3, 10))
def test_chain_is_the_literal_product(n):
    # T_{j,j+1} read with the -1 at (j+1, j): families.t takes (row, col)
    p = identity(n)
    for j in range(1, n):
        p = matmul(p, families.t(n, j + 1, j))
    assert p == chain_matrix(n)
    assert matmul(matmul(p, families.b(n)), p.transpose()) == build_c(n)


@pytest.mark.parametrize("n", [5, 8])
def test_untransposed_product_does_not_give_c(n):
    p = identity(n)
    for j in range(1, n):
        p = matmul(p, families.t(n, j, j + 1))
    assert matmul(matmul(p, families.b(n)), p.transpose()) != reduction.c_pattern(n)


def test_first_step_at_nine():
    c = build_c(9)
    step, labels = deletion_step(c, 0, 9)
    assert step.matrix.n_rows == 7
    assert sorted(set(range(1, 10)) - set(labels)) == [6, 9]
    assert step.sign * det_bareiss(step.matrix) == det_bareiss(c)
    assert step.sign == -1


def test_delete_unique_pair_guard():
    with pytest.raises(ReductionError) as err:
        delete_unique_pair(RingMatrix([[1, 1], [1, 0]]), 0)
    assert err.value.matrix is not None
    with pytest.raises(ReductionError):
        delete_unique_pair(RingMatrix([[0, 1, 0], [1, 0, 0], [1, 0, 0]]), 0)


def test_delete_unique_pair_sign():
    m = RingMatrix([[0, 0, 1], [0, 5, 0], [1, 0, 0]])
    d = delete_unique_pair(m, 0)
    assert d.matrix == RingMatrix([[5]])
    assert d.sign * 5 == det_bareiss(m)


def test_chain_of_steps_at_twelve():
    trace = reduce_and_evaluate(12)
    assert trace.ok
    assert trace.steps[-1].dims == 6
    assert trace.final_value == 1


@pytest.mark.parametrize("n, value", [(5, 3), (6, 0), (7, -3), (8, 1), (9, 5)])
def test_small_values(n, value):
    trace = reduce_and_evaluate(n)
    assert trace.ok and trace.final_value == value == reduction.case_value(n)


@pytest.mark.parametrize("n", range(3, 41))
def test_replay_matches_closed_form(n):
    trace = reduce_and_evaluate(n)
    assert trace.ok, trace.failure
    assert trace.final_value == det_bareiss(families.b(n))
    assert all(s.note == "" for s in trace.steps)


def test_stage_relation_holds_at_every_stage():
    trace = reduce_and_evaluate(17)
    det_b = trace.steps[0].det
    for s in trace.steps:
        assert s.sign * s.det == det_b


def test_failure_is_recorded(monkeypatch):
    monkeypatch.setattr(reduction, "terminal_form", lambda n: identity(1))
    trace = reduce_and_evaluate(10)
    assert not trace.ok and "terminal" in trace.failure
    assert trace.to_json()["ok"] is False


def test_trace_json():
    obj = reduce_and_evaluate(7).to_json()
    assert obj["final_value"] == "-3" and obj["final_case"] == "n≡3 mod 4"
