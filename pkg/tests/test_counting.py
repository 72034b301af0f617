"""Count bookkeeping: the (m, g) matrix, the high-multiplicity recurrence,
and the totals."""

import pytest

from sgtrim.counting import (
    EXPLORED,
    RECURRENCE,
    STRUCTURAL_ZERO,
    CountMatrix,
    kaplan_extend,
    recurrence_value,
    theta,
    total_by_genus,
)
from sgtrim.errors import CapacityExceeded, GuardViolation
from sgtrim.explorer import COUNT_ALL, ExplorationTask, explore, plan_roots


@pytest.fixture(scope="module")
def explored12():
    task = ExplorationTask(roots=plan_roots(12, COUNT_ALL), max_genus=12)
    return explore(task, engine="python").counts


def test_matrix_basics():
    m = CountMatrix(max_multiplicity=4, max_genus=6)
    assert m.in_range(1, 0) and m.in_range(4, 6)
    assert not m.in_range(0, 0) and not m.in_range(5, 0) and not m.in_range(2, 7)
    assert m.get(3, 3) is None and m.provenance(3, 3) is None
    m.set_cell(3, 3, 42, EXPLORED)
    assert m.get(3, 3) == 42
    assert m.provenance(3, 3) == EXPLORED


def test_matrix_bounds_validation():
    with pytest.raises(ValueError):
        CountMatrix(max_multiplicity=0, max_genus=3)
    with pytest.raises(ValueError):
        CountMatrix(max_multiplicity=3, max_genus=-1)


def test_set_cell_validation():
    m = CountMatrix(max_multiplicity=3, max_genus=3)
    with pytest.raises(ValueError):
        m.set_cell(4, 0, 1, EXPLORED)
    with pytest.raises(ValueError):
        m.set_cell(1, 1, 1, "guessed")
    with pytest.raises(CapacityExceeded):
        m.set_cell(1, 1, 1 << 128, EXPLORED)
    with pytest.raises(CapacityExceeded):
        m.set_cell(1, 1, -1, EXPLORED)


def test_seed_and_csv():
    m = CountMatrix(max_multiplicity=2, max_genus=2)
    m.seed_trivial_row()
    m.set_cell(2, 1, 1, EXPLORED)
    m.set_cell(2, 2, 1, RECURRENCE)
    assert m.to_csv() == (
        "m,g,count,provenance\n"
        "1,0,1,explored\n"
        "1,1,0,structural_zero\n"
        "1,2,0,structural_zero\n"
        "2,1,1,explored\n"
        "2,2,1,recurrence\n"
    )
    assert [c[:2] for c in m.cells()] == [(1, 0), (1, 1), (1, 2), (2, 1), (2, 2)]


# -- recurrence ---------------------------------------------------------------

def test_recurrence_guard():
    m = CountMatrix(max_multiplicity=40, max_genus=60)
    m.seed_trivial_row()
    for bad in ((2, 3), (10, 15), (36, 54)):
        with pytest.raises(GuardViolation):
            recurrence_value(m, *bad)


def test_recurrence_small_cells():
    m = CountMatrix(max_multiplicity=3, max_genus=3)
    m.seed_trivial_row()
    # g-2 underflows for (2, 1); only N(1, 0) contributes
    assert recurrence_value(m, 2, 1) == 1
    # both dependencies underflow at (2, 0): empty sum, and indeed N(2,0) = 0
    assert recurrence_value(m, 2, 0) == 0
    with pytest.raises(ValueError):
        recurrence_value(m, 3, 2)  # row 2 unfilled


def test_recurrence_reproduces_explored_cells(explored12):
    hits = 0
    for m, g, value, _ in explored12.cells():
        if m >= 2 and 2 * g < 3 * m:
            assert recurrence_value(explored12, m, g) == value, (m, g)
            hits += 1
    assert hits > 30


# -- kaplan-style extension ---------------------------------------------------

def test_kaplan_extend_matches_exploration(explored12):
    gamma = 12
    boundary = -(-2 * gamma // 3)  # 8
    roots = [r for r in plan_roots(gamma, COUNT_ALL) if r.multiplicity <= boundary]
    partial = explore(ExplorationTask(roots=roots, max_genus=gamma),
                      engine="python").counts
    assert partial.get(boundary + 1, gamma) is None
    kaplan_extend(partial, gamma)

    for m in range(1, gamma + 2):
        for g in range(gamma + 1):
            assert partial.get(m, g) == explored12.get(m, g), (m, g)
    # provenance flips past the boundary, values don't
    flips = [
        (m, g)
        for m, g, _, prov in partial.cells()
        if prov == RECURRENCE and explored12.provenance(m, g) == EXPLORED
    ]
    assert flips and all(m > boundary for m, g in flips)


def test_kaplan_extend_is_idempotent_on_full(explored12):
    before = explored12.to_csv()
    kaplan_extend(explored12, 12)
    assert explored12.to_csv() == before


def test_kaplan_extend_validation(explored12):
    with pytest.raises(ValueError):
        kaplan_extend(explored12, 0)
    with pytest.raises(ValueError):
        kaplan_extend(explored12, 13)


# -- totals --------------------------------------------------------------------

def test_totals(explored12, known_counts):
    assert total_by_genus(explored12) == known_counts[:13]
    assert theta(explored12, 12) == sum(known_counts[:13])
    assert theta(explored12, 0) == 1
    with pytest.raises(ValueError):
        theta(explored12, 13)


def test_totals_refuse_incomplete():
    m = CountMatrix(max_multiplicity=3, max_genus=2)
    m.seed_trivial_row()
    with pytest.raises(ValueError):
        total_by_genus(m)
    narrow = CountMatrix(max_multiplicity=2, max_genus=2)
    narrow.seed_trivial_row()
    with pytest.raises(ValueError):
        total_by_genus(narrow)  # genus 2 needs the m = 3 row
