import numpy as np
import pytest

from jetframe.errors import (
    DegeneratePointError,
    SingularFrameError,
    UnsupportedFrameError,
    UsageError,
)
from jetframe.frame import FrameKind, moving_frame, pivot_value
from jetframe.group import prolong_act
from jetframe.invariants import (
    InvDirection,
    SolutionGerm,
    _guard_denominator,
    commutator_coefficients,
    invariant_commutator,
    invariant_derivative,
    invariant_table,
    normalized_invariant,
    reconstruct_generators,
    recurrence_rhs,
)
from jetframe.jets import Jet, multi_indices
from jetframe.solutions import Constant, Rational, Soliton, jet_of_solution
from jetframe.verify import (
    random_free_jet,
    random_group_element,
    random_soliton_point,
)

KINDS = (FrameKind.T_NORMALIZED, FrameKind.X_NORMALIZED)


def rel(a, b):
    return abs(a - b) / max(1.0, abs(a), abs(b))


def unit_jet():
    values = {a: 0.0 for a in multi_indices(2)}
    values[(1, 0)] = 1.0
    values[(0, 1)] = 1.0
    values[(0, 2)] = 2.0
    return Jet(order=2, t=0.0, x=0.0, u=values)


def test_closed_form_spot_values():
    jet = unit_jet()
    assert normalized_invariant(jet, (0, 1), FrameKind.T_NORMALIZED) == pytest.approx(1.0)
    assert normalized_invariant(jet, (0, 2), FrameKind.T_NORMALIZED) == pytest.approx(2.0)
    assert normalized_invariant(jet, (1, 0), FrameKind.X_NORMALIZED) == pytest.approx(1.0)
    assert normalized_invariant(jet, (0, 2), FrameKind.X_NORMALIZED) == pytest.approx(2.0)


def test_invariantized_u_vanishes_and_pivot_entry_is_branch():
    rng = np.random.default_rng(3)
    for branch in (1, -1):
        for kind in KINDS:
            jet = random_free_jet(
                rng,
                3,
                t_branch=branch if kind is FrameKind.T_NORMALIZED else None,
                x_branch=branch if kind is FrameKind.X_NORMALIZED else None,
            )
            assert normalized_invariant(jet, (0, 0), kind) == 0.0
            pivot_alpha = (1, 0) if kind is FrameKind.T_NORMALIZED else (0, 1)
            assert normalized_invariant(jet, pivot_alpha, kind) == pytest.approx(branch)


def test_alpha_beyond_jet_order_rejected():
    with pytest.raises(UsageError):
        normalized_invariant(unit_jet(), (0, 3), FrameKind.X_NORMALIZED)


def test_invariance_under_random_group_elements():
    rng = np.random.default_rng(5)
    for i in range(60):
        if i % 2:
            jet = random_free_jet(rng, 6)
        else:
            sol, t0, x0 = random_soliton_point(rng)
            jet = jet_of_solution(sol, t0, x0, 6)
        moved = prolong_act(random_group_element(rng), jet)
        for kind in KINDS:
            for alpha in multi_indices(6):
                a = normalized_invariant(jet, alpha, kind)
                b = normalized_invariant(moved, alpha, kind)
                assert rel(a, b) <= 1e-8, (alpha, kind)


def test_closed_form_equals_invariantization_by_frame():
    rng = np.random.default_rng(6)
    for _ in range(30):
        jet = random_free_jet(rng, 6)
        for kind in KINDS:
            moved = prolong_act(moving_frame(jet, kind).rho, jet)
            for alpha in multi_indices(6):
                want = moved.u[alpha] if alpha != (0, 0) else 0.0
                got = normalized_invariant(jet, alpha, kind)
                assert rel(got, want) <= 1e-10, (alpha, kind)


def test_table_phantoms_and_invariantized_equation():
    rng = np.random.default_rng(7)
    for _ in range(25):
        sol, t0, x0 = random_soliton_point(rng)
        jet = jet_of_solution(sol, t0, x0, 3)
        t_table = invariant_table(jet, FrameKind.T_NORMALIZED, 3)
        x_table = invariant_table(jet, FrameKind.X_NORMALIZED, 3)
        for table, pivot_key in ((t_table, "u_t"), (x_table, "u_x")):
            assert table.phantoms["t"] == 0.0
            assert table.phantoms["x"] == 0.0
            assert table.phantoms["u"] == 0.0
            assert table.phantoms[pivot_key] == table.branch
        assert abs(t_table.branch + t_table.value((0, 3))) <= 1e-9
        assert abs(x_table.value((1, 0)) + x_table.value((0, 3))) <= 1e-9


def test_constant_solution_is_singular_for_both_frames():
    jet = jet_of_solution(Constant(u0=5.0), 0.0, 0.0, 3)
    for kind in KINDS:
        with pytest.raises(SingularFrameError):
            invariant_table(jet, kind, 3)


def test_table_missing_entry_rejected():
    jet = unit_jet()
    table = invariant_table(jet, FrameKind.X_NORMALIZED, 2)
    with pytest.raises(UsageError):
        table.value((0, 3))


def fd_invariant_derivative(sol, t0, x0, alpha, direction, kind, h=1e-5):
    # independent oracle: finite differences of the closed-form invariant
    # along the solution, then the operator's total-derivative combination
    order = alpha[0] + alpha[1]

    def F(t, x):
        return normalized_invariant(jet_of_solution(sol, t, x, order), alpha, kind)

    jet = jet_of_solution(sol, t0, x0, 1)
    p = abs(pivot_value(jet, kind))
    dFdx = (F(t0, x0 + h) - F(t0, x0 - h)) / (2 * h)
    if direction is InvDirection.X:
        exponent = -1.0 / 5.0 if kind is FrameKind.T_NORMALIZED else -1.0 / 3.0
        return p**exponent * dFdx
    dFdt = (F(t0 + h, x0) - F(t0 - h, x0)) / (2 * h)
    prefactor = p ** (-3.0 / 5.0) if kind is FrameKind.T_NORMALIZED else 1.0 / p
    return prefactor * (dFdt + jet.u[(0, 0)] * dFdx)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("direction", [InvDirection.T, InvDirection.X])
def test_invariant_derivative_against_finite_differences(kind, direction):
    rng = np.random.default_rng(11)
    for _ in range(8):
        sol, t0, x0 = random_soliton_point(rng, kind)
        for alpha in [(0, 1), (1, 0), (0, 2)]:
            got = invariant_derivative(sol, t0, x0, alpha, direction, kind)
            want = fd_invariant_derivative(sol, t0, x0, alpha, direction, kind)
            assert rel(got, want) <= 1e-6, (alpha, direction, kind)


def test_derivative_of_phantom_is_zero():
    sol = Soliton(c=1.2)
    for direction in InvDirection:
        for kind in KINDS:
            assert invariant_derivative(sol, 0.4, 1.1, (0, 0), direction, kind) == 0.0


def test_time_frame_generator_derivative_relation():
    # on the positive branch the derivative of the generating invariant
    # collapses onto three table entries
    rng = np.random.default_rng(13)
    for _ in range(10):
        sol, t0, x0 = random_soliton_point(rng, FrameKind.T_NORMALIZED, +1)
        table = invariant_table(jet_of_solution(sol, t0, x0, 2), FrameKind.T_NORMALIZED, 2)
        assert table.branch == 1
        i01, i11, i20 = table.value((0, 1)), table.value((1, 1)), table.value((2, 0))
        lhs = invariant_derivative(sol, t0, x0, (0, 1), InvDirection.T, FrameKind.T_NORMALIZED)
        assert rel(lhs, -0.6 * i01**2 + i11 - 0.6 * i01 * i20) <= 1e-6


def test_time_frame_relation_branch_aware():
    rng = np.random.default_rng(14)
    for _ in range(10):
        sol, t0, x0 = random_soliton_point(rng, FrameKind.T_NORMALIZED, -1)
        table = invariant_table(jet_of_solution(sol, t0, x0, 2), FrameKind.T_NORMALIZED, 2)
        assert table.branch == -1
        i01, i11, i20 = table.value((0, 1)), table.value((1, 1)), table.value((2, 0))
        lhs = invariant_derivative(sol, t0, x0, (0, 1), InvDirection.T, FrameKind.T_NORMALIZED)
        assert rel(lhs, -0.6 * i01**2 + i11 - 0.6 * table.branch * i01 * i20) <= 1e-6


def test_recurrence_rhs_frozen_instance():
    rng = np.random.default_rng(15)
    sol, t0, x0 = random_soliton_point(rng, FrameKind.X_NORMALIZED, +1)
    table = invariant_table(jet_of_solution(sol, t0, x0, 4), FrameKind.X_NORMALIZED, 4)
    got = recurrence_rhs(table, (0, 2), InvDirection.X)
    want = table.value((0, 3)) - (4.0 / 3.0) * table.value((0, 2)) ** 2
    assert got == pytest.approx(want, rel=1e-13)
    got_t = recurrence_rhs(table, (1, 0), InvDirection.T)
    want_t = (
        table.value((2, 0))
        - (5.0 / 3.0) * table.value((1, 1)) * table.value((1, 0))
        + table.value((1, 0)) * table.value((0, 1))
    )
    assert got_t == pytest.approx(want_t, rel=1e-13)


@pytest.mark.parametrize("branch", [1, -1])
def test_recurrences_match_derivatives(branch):
    rng = np.random.default_rng(16 + branch)
    alphas = [a for a in multi_indices(3) if a[0] > 0 or a[1] > 1]
    for _ in range(10):
        sol, t0, x0 = random_soliton_point(rng, FrameKind.X_NORMALIZED, branch)
        table = invariant_table(jet_of_solution(sol, t0, x0, 4), FrameKind.X_NORMALIZED, 4)
        assert table.branch == branch
        for alpha in alphas:
            for direction in InvDirection:
                lhs = invariant_derivative(sol, t0, x0, alpha, direction, FrameKind.X_NORMALIZED)
                rhs = recurrence_rhs(table, alpha, direction)
                assert rel(lhs, rhs) <= 1e-6, (alpha, direction, branch)


def test_recurrence_usage_errors():
    rng = np.random.default_rng(19)
    sol, t0, x0 = random_soliton_point(rng)
    x_table = invariant_table(jet_of_solution(sol, t0, x0, 2), FrameKind.X_NORMALIZED, 2)
    t_table = invariant_table(jet_of_solution(sol, t0, x0, 2), FrameKind.T_NORMALIZED, 2)
    with pytest.raises(UnsupportedFrameError):
        recurrence_rhs(t_table, (0, 2), InvDirection.X)
    with pytest.raises(UsageError):
        recurrence_rhs(x_table, (0, 1), InvDirection.X)  # phantom index
    with pytest.raises(UsageError):
        recurrence_rhs(x_table, (0, 2), InvDirection.X)  # needs order 3 entries


def test_commutator_coefficients_from_table():
    rng = np.random.default_rng(21)
    sol, t0, x0 = random_soliton_point(rng)
    for kind in KINDS:
        table = invariant_table(jet_of_solution(sol, t0, x0, 2), kind, 2)
        s = table.branch
        a_t, a_x = commutator_coefficients(table)
        if kind is FrameKind.T_NORMALIZED:
            i01, i11, i20 = (table.value(a) for a in ((0, 1), (1, 1), (2, 0)))
            assert a_t == pytest.approx(0.6 * s * (i11 + i01**2))
            assert a_x == pytest.approx(-0.2 * (s * i20 + 6 * i01))
        else:
            assert a_t == pytest.approx(-s * table.value((0, 2)))
            assert a_x == pytest.approx(s * (1 + table.value((1, 1)) / 3))


def test_commutator_coefficients_need_order_two():
    rng = np.random.default_rng(22)
    sol, t0, x0 = random_soliton_point(rng)
    table = invariant_table(jet_of_solution(sol, t0, x0, 1), FrameKind.X_NORMALIZED, 1)
    with pytest.raises(UsageError):
        commutator_coefficients(table)


@pytest.mark.parametrize("kind", KINDS)
def test_commutator_reproduces_nested_derivatives(kind):
    rng = np.random.default_rng(23)
    for _ in range(8):
        sol, t0, x0 = random_soliton_point(rng, kind)
        table = invariant_table(jet_of_solution(sol, t0, x0, 2), kind, 2)
        a_t, a_x = commutator_coefficients(table)
        for alpha in [(0, 1), (0, 2), (1, 0)]:
            lhs = invariant_commutator(sol, t0, x0, alpha, kind)
            rhs = a_t * invariant_derivative(sol, t0, x0, alpha, InvDirection.T, kind)
            rhs += a_x * invariant_derivative(sol, t0, x0, alpha, InvDirection.X, kind)
            assert rel(lhs, rhs) <= 1e-5, (alpha, kind)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("branch", [1, -1])
def test_reconstruction_matches_direct_value(kind, branch):
    rng = np.random.default_rng(29)
    done = 0
    while done < 10:
        sol, t0, x0 = random_soliton_point(rng, kind, branch)
        try:
            rec, direct = reconstruct_generators(sol, t0, x0, kind)
        except DegeneratePointError:
            continue
        assert rel(rec, direct) <= 1e-5
        done += 1


def test_second_generator_identity():
    # the mixed second invariant is one derivative of the generator plus a
    # product correction; branch-aware form, literal on the positive branch
    rng = np.random.default_rng(31)
    for branch in (1, -1):
        for _ in range(10):
            sol, t0, x0 = random_soliton_point(rng, FrameKind.X_NORMALIZED, branch)
            table = invariant_table(jet_of_solution(sol, t0, x0, 2), FrameKind.X_NORMALIZED, 2)
            dx10 = invariant_derivative(sol, t0, x0, (1, 0), InvDirection.X, FrameKind.X_NORMALIZED)
            i11 = dx10 + (5.0 / 3.0) * branch * table.value((1, 0)) * table.value((0, 2)) - 1.0
            assert rel(i11, table.value((1, 1))) <= 1e-6


def test_degenerate_denominator_guard():
    with pytest.raises(DegeneratePointError):
        _guard_denominator(1e-12, (0.5, 2.0, 1.0))
    _guard_denominator(1e-3, (0.5, 2.0, 1.0))  # comfortably regular


def test_singular_set_inclusion_on_rational_family():
    # the time-normalized pivot vanishes identically on u = x/t while the
    # space-normalized frame stays regular away from t = 0
    rng = np.random.default_rng(33)
    for _ in range(20):
        t0 = float(rng.uniform(0.4, 2.0)) * (1 if rng.uniform() < 0.5 else -1)
        x0 = float(rng.uniform(-2.0, 2.0))
        jet = jet_of_solution(Rational(), t0, x0, 3)
        with pytest.raises(SingularFrameError):
            invariant_table(jet, FrameKind.T_NORMALIZED, 3)
        table = invariant_table(jet, FrameKind.X_NORMALIZED, 3)
        assert table.branch == (1 if t0 > 0 else -1)


def test_germ_orders_are_validated():
    germ = SolutionGerm(Soliton(), 0.3, 0.8, 2)
    with pytest.raises(UsageError):
        germ.invariant_series((1, 0), FrameKind.X_NORMALIZED, 2)
    series = germ.invariant_series((1, 0), FrameKind.X_NORMALIZED, 1)
    with pytest.raises(UsageError):
        germ.differentiate(series.truncated(0), InvDirection.X, FrameKind.X_NORMALIZED)
