import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lattice_euclid import (
    EuclidState,
    IntegralPivotError,
    Matrix,
    SingularMatrixError,
    SpanMismatchError,
    bareiss_det,
    basic_basis,
    choose_pivot_argmin,
    exchange_step,
    find_independent_columns,
    frac_part,
    hnf,
    lattice_equal,
    member,
    mod_parallelepiped,
    mod_prime,
    next_int,
    solve_in_span,
    solve_system,
)

from _oracles import random_int_matrix

B23 = Matrix.from_rows([[2, 1], [1, 3]])  # det 5, used throughout


# --- rounding helpers ------------------------------------------------------


def test_next_int_examples():
    assert next_int(Fraction(3, 2)) == 2
    assert next_int(Fraction(-3, 2)) == -1
    assert next_int(Fraction(7, 3)) == 2
    assert next_int(5) == 5


@given(st.fractions(min_value=-100, max_value=100, max_denominator=64))
def test_next_int_is_nearest_with_ties_up(q):
    n = next_int(q)
    assert abs(q - n) <= Fraction(1, 2)
    if frac_part(q) == Fraction(1, 2):
        assert n == math.floor(q) + 1
    assert 0 <= frac_part(q) < 1


# --- residue operators -----------------------------------------------------


def test_mod_parallelepiped_entrywise():
    assert mod_parallelepiped(Matrix.from_rows([[2, 0], [0, 2]]), (3, 5)) == (1, 1)


def test_mod_parallelepiped_lattice_member_is_zero():
    a = B23.mat_vec((2, -3))
    assert mod_parallelepiped(B23, a) == (0, 0)


def test_mod_parallelepiped_hand_checked():
    r = mod_parallelepiped(B23, (1, 0))
    assert r == (2, 3)
    # the drop (1,0) - (2,3) must be a lattice vector
    assert member(B23, (1 - 2, 0 - 3))
    # residue coordinates lie inside the half-open unit box
    assert all(0 <= e < 1 for e in solve_system(B23, r))


def test_mod_parallelepiped_singular():
    with pytest.raises(SingularMatrixError):
        mod_parallelepiped(Matrix.from_rows([[1, 1], [1, 1]]), (1, 0))


def test_mod_prime_scalar():
    b = Matrix.from_rows([[4]])
    x = solve_system(b, (7,))
    assert x == (Fraction(7, 4),)
    assert mod_prime(b, (7,), x, 0) == (-1,)


def test_mod_prime_single_fractional_coordinate():
    b = Matrix.from_rows([[2, 0], [0, 2]])
    x = solve_system(b, (1, 0))
    assert mod_prime(b, (1, 0), x, 0) == (-1, 0)


def test_mod_prime_hand_checked_with_det_ratio():
    x = solve_system(B23, (1, 0))
    r = mod_prime(B23, (1, 0), x, 0)
    assert r == (0, 2)
    replaced = B23.with_column(0, r)
    assert bareiss_det(replaced) == -2
    assert Fraction(bareiss_det(replaced), bareiss_det(B23)) == x[0] - next_int(x[0])


def test_mod_prime_integral_pivot_rejected():
    x = solve_system(Matrix.identity(2), (3, 4))
    with pytest.raises(IntegralPivotError):
        mod_prime(Matrix.identity(2), (3, 4), x, 0)


def test_mod_prime_consistency_random():
    # r' = a - B*xt with xt floored except the rounded pivot, and equally
    # B applied to the fractional vector with the pivot entry recentred
    rng = random.Random(11)
    done = 0
    while done < 30:
        n = rng.randint(1, 5)
        b = random_int_matrix(rng, n, n, 9)
        if bareiss_det(b) == 0:
            continue
        a = tuple(rng.randint(-30, 30) for _ in range(n))
        x = solve_system(b, a)
        i = choose_pivot_argmin(x)
        if i is None:
            continue
        r = mod_prime(b, a, x, i)
        rounded = [next_int(q) if k == i else math.floor(q) for k, q in enumerate(x)]
        assert r == tuple(v - w for v, w in zip(a, b.mat_vec(rounded)))
        recentered = [
            x[k] - next_int(x[k]) if k == i else frac_part(x[k]) for k in range(n)
        ]
        assert b.mat_vec(recentered) == r
        done += 1


# --- pivot and column selection --------------------------------------------


def test_choose_pivot_examples():
    assert choose_pivot_argmin((1, Fraction(3, 5), Fraction(-1, 5))) == 2
    assert choose_pivot_argmin((2, -7)) is None
    assert choose_pivot_argmin((Fraction(1, 2), Fraction(1, 2))) == 0


def test_find_independent_columns_examples():
    assert find_independent_columns(Matrix.from_rows([[1, 0, 1], [0, 1, 1]])) == [0, 1]
    assert find_independent_columns(Matrix.from_rows([[1, 2], [2, 4]])) == [0]
    assert find_independent_columns(Matrix.from_rows([[0, 1, 1], [0, 0, 1]])) == [1, 2]


def test_find_independent_columns_rank_matches_hnf():
    rng = random.Random(22)
    for _ in range(25):
        n, m = rng.randint(1, 5), rng.randint(1, 7)
        a = random_int_matrix(rng, n, m, 6)
        assert len(find_independent_columns(a)) == hnf(a).cols


def test_solve_in_span_guards_off_pivot_rows():
    basis = Matrix.from_rows([[1], [2]])
    assert solve_in_span(basis, (0,), (3, 6)) == (3,)
    with pytest.raises(SpanMismatchError):
        solve_in_span(basis, (0,), (3, 5))


# --- exchange step ----------------------------------------------------------


def _state(basis, pool):
    return EuclidState(
        basis=basis,
        pool=tuple(tuple(v) for v in pool),
        pivot_rows=tuple(range(basis.rows)),
        det=bareiss_det(basis),
    )


def test_exchange_step_hand_checked():
    state = _state(B23, [(1, 0)])
    x = solve_system(B23, (1, 0))
    nxt = exchange_step(state, (1, 0), x, 0)
    assert nxt.basis == Matrix.from_rows([[0, 1], [2, 3]])
    assert nxt.pool == ((2, 1),)
    assert nxt.det == -2
    rec = nxt.trace[0]
    assert (rec.pivot_row, rec.column) == (0, 0)
    assert rec.factor == Fraction(-2, 5)
    assert rec.det_after == -2


def test_exchange_step_gcd_trace():
    b = Matrix.from_rows([[12]])
    state = _state(b, [(18,)])
    x = solve_system(b, (18,))
    nxt = exchange_step(state, (18,), x, 0)
    assert nxt.basis.to_rows() == [[-6]]
    assert nxt.pool == ((12,),)


def test_exchange_step_rejects_integral_pivot():
    state = _state(Matrix.identity(2), [(3, 4)])
    x = solve_system(Matrix.identity(2), (3, 4))
    with pytest.raises(IntegralPivotError):
        exchange_step(state, (3, 4), x, 0)


def test_exchange_step_requires_pool_membership():
    state = _state(B23, [(1, 0)])
    x = solve_system(B23, (2, 0))
    with pytest.raises(ValueError):
        exchange_step(state, (2, 0), x, 0)


def test_exchange_step_preserves_generated_lattice():
    rng = random.Random(33)
    done = 0
    while done < 25:
        n = rng.randint(1, 5)
        basis = random_int_matrix(rng, n, n, 8)
        if bareiss_det(basis) == 0:
            continue
        vec = tuple(rng.randint(-20, 20) for _ in range(n))
        x = solve_system(basis, vec)
        i = choose_pivot_argmin(x)
        if i is None:
            continue
        state = _state(basis, [vec])
        nxt = exchange_step(state, vec, x, i)
        before = basis.hstack(Matrix((vec,), rows=n))
        after = nxt.basis.hstack(Matrix(nxt.pool, rows=n))
        assert lattice_equal(before, after)
        assert 0 < abs(nxt.trace[0].factor) <= Fraction(1, 2)
        done += 1


# --- full runs --------------------------------------------------------------


def test_basic_basis_gcd_instance():
    res = basic_basis(Matrix.from_rows([[12, 18]]))
    assert res.basis.to_rows() == [[-6]]
    assert (res.exchanges, res.discards) == (1, 1)
    assert res.det_trajectory == (12, -6)
    assert hnf(res.basis).to_rows() == [[6]]


def test_basic_basis_merges_to_unit_lattice():
    a = Matrix.from_rows([[2, 0, 1], [0, 3, 1]])
    res = basic_basis(a)
    assert abs(res.det_trajectory[-1]) == 1
    assert lattice_equal(res.basis, Matrix.identity(2))
    assert res.det_trajectory == (6, 2, -1)
    assert res.exchanges == 2 and res.discards == 1


def test_basic_basis_already_a_basis():
    res = basic_basis(Matrix.identity(2))
    assert res.basis == Matrix.identity(2)
    assert res.exchanges == 0 and res.discards == 0
    assert res.det_trajectory == (1,)


def test_basic_basis_degenerate_inputs():
    res = basic_basis(Matrix.from_rows([[0, 0], [0, 0]]))
    assert res.basis.cols == 0 and res.basis.rows == 2
    assert res.discards == 2 and res.exchanges == 0

    mixed = basic_basis(Matrix.from_rows([[0, 3], [0, 0]]))
    assert mixed.basis.to_rows() == [[3], [0]]
    assert mixed.discards == 1


def test_basic_basis_rank_deficient():
    # rank-1 plane inside Z^2: generators all multiples of (2, 4)
    a = Matrix.from_rows([[2, 6], [4, 12]])
    res = basic_basis(a)
    assert res.basis.cols == 1
    assert lattice_equal(res.basis, a)


def test_basic_basis_gcd_property():
    rng = random.Random(44)
    for _ in range(60):
        m = rng.randint(1, 6)
        entries = [rng.randint(-40, 40) for _ in range(m)]
        res = basic_basis(Matrix.from_rows([entries]))
        g = math.gcd(*entries)
        if g == 0:
            assert res.basis.cols == 0
        else:
            assert [abs(e) for e in res.basis.row(0)] == [g]


def test_basic_basis_random_runs_preserve_lattice_and_halve():
    rng = random.Random(55)
    for _ in range(50):
        n = rng.randint(1, 6)
        m = rng.randint(n, n + 4)
        a = random_int_matrix(rng, n, m, 15)
        res = basic_basis(a)
        assert lattice_equal(a, res.basis)
        # trajectory halves exactly and matches the recorded factors
        for prev, rec in zip(res.det_trajectory, res.trace):
            assert 2 * abs(rec.det_after) <= abs(prev)
            assert Fraction(rec.det_after, prev) == rec.factor
        start = abs(res.det_trajectory[0])
        assert res.exchanges <= (start.bit_length() - 1 if start else 0)
        assert res.discards <= a.cols - res.basis.cols
        assert res.max_abs_entry == int(res.basis.max_abs())
        # stop condition: every original column divides evenly at the end
        if res.basis.cols:
            pivots = tuple(range(res.basis.rows)) if res.basis.cols == res.basis.rows else None
            for j in range(a.cols):
                assert member(res.basis, a.column(j))
                if pivots:
                    x = solve_system(res.basis, a.column(j))
                    assert all(frac_part(e) == 0 for e in x)
